use lie2ext::perm::{all_permutations, koszul_sign};
use lie2ext::poly::Poly;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn degree_vectors(k: usize) -> Vec<Vec<i32>> {
    (0..3usize.pow(k as u32))
        .map(|mut code| {
            (0..k)
                .map(|_| {
                    let d = (code % 3) as i32;
                    code /= 3;
                    d
                })
                .collect()
        })
        .collect()
}

#[test]
fn koszul_sign_is_multiplicative() {
    for k in 0..=4 {
        let perms = all_permutations(k);
        for degrees in degree_vectors(k) {
            for sigma in &perms {
                for tau in &perms {
                    let composite = koszul_sign(&sigma.compose(tau).unwrap(), &degrees).unwrap();
                    let split = koszul_sign(sigma, &tau.place(&degrees)).unwrap() * koszul_sign(tau, &degrees).unwrap();
                    assert_eq!(composite, split, "σ = {:?}, τ = {:?}, degrees {degrees:?}", sigma.images(), tau.images());
                }
            }
        }
    }
}

#[test]
fn even_elements_commute_with_everything() {
    for sigma in all_permutations(4) {
        assert_eq!(koszul_sign(&sigma, &[0, 2, 0, 2]).unwrap(), 1);
        assert_eq!(koszul_sign(&sigma, &[1, 0, 2, 0]).unwrap(), 1);
    }
}

fn polys(seed: u64, n: usize, count: usize) -> Vec<Poly> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| Poly::random(n, 3, 5, 0.4, &mut rng)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn polynomials_form_a_commutative_ring(seed in any::<u64>(), n in 1usize..4) {
        let p = polys(seed, n, 3);
        let (a, b, c) = (&p[0], &p[1], &p[2]);
        prop_assert_eq!(a + b, b + a);
        prop_assert_eq!(a * b, b * a);
        prop_assert_eq!(&(a + b) + c, a + &(b + c));
        prop_assert_eq!(&(a * b) * c, a * &(b * c));
        prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
        prop_assert_eq!(a * &Poly::one(n), a.clone());
        prop_assert!((a - a).is_zero());
        prop_assert_eq!(a + &(-a), Poly::zero(n));
    }

    #[test]
    fn partial_derivatives_commute(seed in any::<u64>(), n in 1usize..4, i in 0usize..4, j in 0usize..4) {
        let (i, j) = (i % n, j % n);
        let p = &polys(seed, n, 1)[0];
        prop_assert_eq!(p.partial(i).partial(j), p.partial(j).partial(i));
    }

    #[test]
    fn partial_is_a_derivation(seed in any::<u64>(), n in 1usize..4, i in 0usize..4) {
        let i = i % n;
        let p = polys(seed, n, 2);
        let lhs = (&p[0] * &p[1]).partial(i);
        let rhs = &(&p[0].partial(i) * &p[1]) + &(&p[0] * &p[1].partial(i));
        prop_assert_eq!(lhs, rhs);
    }
}
