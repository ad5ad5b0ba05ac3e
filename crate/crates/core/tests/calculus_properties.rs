use lie2ext::forms::{d_koszul_eval, PolyForm, PolyVectorField};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn d_squared_vanishes(seed in any::<u64>(), n in 1usize..5, degree in 0usize..5) {
        let degree = degree % (n + 1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = PolyForm::random(n, degree, 3, &mut rng);
        prop_assert!(w.d().d().is_zero());
    }

    #[test]
    fn vector_field_bracket_satisfies_jacobi(seed in any::<u64>(), n in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let [x, y, z] = [(); 3].map(|_| PolyVectorField::random(n, 2, &mut rng));
        let j = x.bracket(&y.bracket(&z)).add(&y.bracket(&z.bracket(&x))).add(&z.bracket(&x.bracket(&y)));
        prop_assert!(j.is_zero());
    }

    #[test]
    fn lie_derivative_of_one_form_is_leibniz(seed in any::<u64>(), n in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = PolyForm::random(n, 1, 2, &mut rng);
        let x = PolyVectorField::random(n, 2, &mut rng);
        let y = PolyVectorField::random(n, 2, &mut rng);
        let lhs = a.lie_derivative(&x).eval(&[y.clone()]).unwrap();
        let rhs = x.apply(&a.eval(&[y.clone()]).unwrap()) - a.eval(&[x.bracket(&y)]).unwrap();
        prop_assert_eq!(lhs, rhs);
        let cartan = a.d().interior(&x).add(&a.interior(&x).d());
        prop_assert_eq!(a.lie_derivative(&x), cartan);
    }

    #[test]
    fn lie_derivative_and_interior_commutator(seed in any::<u64>(), n in 2usize..4, degree in 1usize..4) {
        let degree = degree.min(n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = PolyForm::random(n, degree, 2, &mut rng);
        let x = PolyVectorField::random(n, 2, &mut rng);
        let y = PolyVectorField::random(n, 2, &mut rng);
        let lhs = w.interior(&y).lie_derivative(&x).sub(&w.lie_derivative(&x).interior(&y));
        prop_assert_eq!(lhs, w.interior(&x.bracket(&y)));
    }

    #[test]
    fn exterior_derivative_matches_koszul_formula(seed in any::<u64>(), n in 1usize..4, degree in 0usize..3) {
        let degree = degree.min(n - 1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = PolyForm::random(n, degree, 2, &mut rng);
        let xs: Vec<_> = (0..=degree)
            .map(|i| if i % 2 == 0 { PolyVectorField::coordinate(n, i % n) } else { PolyVectorField::random(n, 1, &mut rng) })
            .collect();
        prop_assert_eq!(d_koszul_eval(&w, &xs).unwrap(), w.d().eval(&xs).unwrap());
    }
}
