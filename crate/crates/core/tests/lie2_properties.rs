use lie2ext::lie2::{check_morphism, string_lie2, string_lie2_unchecked, Lie2Algebra, Lie2Morphism, LieAlgebra};
use lie2ext::linalg::QMat;
use lie2ext::rational::Rational;
use proptest::prelude::*;

fn verdicts(l: &Lie2Algebra) -> Vec<(usize, bool)> {
    l.check_homotopy_jacobi().identities.iter().map(|c| (c.k, c.passed)).collect()
}

fn invertible(entries: &[i64]) -> Option<QMat> {
    let p = QMat::from_ints(3, 3, entries);
    p.inverse().map(|_| p)
}

#[test]
fn string_algebras_pass() {
    for g in [LieAlgebra::so3(), LieAlgebra::sl2()] {
        let l = string_lie2(&g, &g.killing_form()).unwrap();
        assert!(l.check_homotopy_jacobi().all_passed());
        let r = check_morphism(&Lie2Morphism::identity(&l), &l, &l).unwrap();
        assert!(r.all_passed());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn jacobi_verdicts_are_basis_independent(
        entries in proptest::collection::vec(-2i64..=2, 9),
        perturb in proptest::bool::ANY,
        scale in 1i64..4,
    ) {
        let Some(p) = invertible(&entries) else { return Ok(()) };
        let g = LieAlgebra::so3();
        let mut form = g.killing_form().scale(&Rational::from_int(scale));
        if perturb {
            form.set(0, 2, Rational::one());
            form.set(2, 0, Rational::one());
        }
        let l = string_lie2_unchecked(&g, &form).unwrap();
        let moved = l.change_basis0(&p).unwrap();
        prop_assert_eq!(verdicts(&l), verdicts(&moved));
    }

    #[test]
    fn identity_morphism_passes(form in proptest::collection::vec(-3i64..=3, 6), l1 in proptest::collection::vec(-2i64..=2, 3)) {
        // any symmetric form and any l1, Jacobi or not
        let [a, b, c, d, e, f] = [form[0], form[1], form[2], form[3], form[4], form[5]];
        let sym = QMat::from_ints(3, 3, &[a, b, c, b, d, e, c, e, f]);
        let mut l = string_lie2_unchecked(&LieAlgebra::sl2(), &sym).unwrap();
        for (i, v) in l1.iter().enumerate() {
            l.set_l1(i, 0, Rational::from_int(*v));
        }
        let r = check_morphism(&Lie2Morphism::identity(&l), &l, &l).unwrap();
        prop_assert!(r.all_passed());
    }
}
