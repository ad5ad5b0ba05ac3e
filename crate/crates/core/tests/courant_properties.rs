use lie2ext::courant::{check_jacobi_defect, compare_with_extension, courant_bracket, CourantSection, SeveraForm};
use lie2ext::ext::{courant_cocycle, ExtensionData};
use lie2ext::forms::PolyForm;
use lie2ext::linalg::PMat;
use lie2ext::poly::Poly;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn closed_h(n: usize, rng: &mut ChaCha8Rng) -> SeveraForm {
    let h = if n == 3 {
        PolyForm::monomial(Poly::random(n, 2, 4, 0.6, rng), &[0, 1, 2]).unwrap()
    } else {
        PolyForm::random(n, 2, 2, rng).d()
    };
    SeveraForm::new(h).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn bracket_is_antisymmetric_with_vector_bracket_anchor(seed in any::<u64>(), n in 3usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = SeveraForm::new(PolyForm::random(n, 3, 1, &mut rng)).unwrap();
        let a = CourantSection::random(n, 2, &mut rng);
        let b = CourantSection::random(n, 2, &mut rng);
        let ab = courant_bracket(&a, &b, &h).unwrap();
        let ba = courant_bracket(&b, &a, &h).unwrap();
        prop_assert!(ab.add(&ba).is_zero());
        prop_assert_eq!(ab.vf, a.vf.bracket(&b.vf));
    }

    #[test]
    fn jacobi_defect_passes_for_closed_h(seed in any::<u64>(), n in 3usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = closed_h(n, &mut rng);
        prop_assert!(h.is_closed());
        let [a, b, c] = [(); 3].map(|_| CourantSection::random(n, 2, &mut rng));
        let r = check_jacobi_defect(&a, &b, &c, &h).unwrap();
        prop_assert!(r.passed, "{:?}", r.witness);
    }

    #[test]
    fn leibniz_defect_has_no_vector_part(seed in any::<u64>()) {
        let n = 3;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = closed_h(n, &mut rng);
        let a = CourantSection::random(n, 2, &mut rng);
        let b = CourantSection::random(n, 2, &mut rng);
        let f = Poly::random(n, 2, 3, 0.5, &mut rng);
        let lhs = courant_bracket(&a, &b.scale(&f), &h).unwrap();
        let rhs = courant_bracket(&a, &b, &h).unwrap().scale(&f).add(&b.scale(&a.vf.apply(&f)));
        prop_assert!(lhs.sub(&rhs).vf.is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn extension_comparison_has_no_vector_part(seed in any::<u64>()) {
        let n = 3;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = closed_h(n, &mut rng);
        let (rep, c) = courant_cocycle(h.h(), vec![PMat::zeros(n, n, n); n]).unwrap();
        let e = ExtensionData::extend(&rep, &c).unwrap();
        let a = CourantSection::random(n, 2, &mut rng);
        let b = CourantSection::random(n, 2, &mut rng);
        prop_assert!(compare_with_extension(&e, &a, &b, &h).unwrap().vf.is_zero());
    }
}
