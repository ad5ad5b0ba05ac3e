use lie2ext::ext::{differential, homological_check, is_cocycle, trivialize, Cochain, ExtensionData};
use lie2ext::forms::{MatForm, PolyForm};
use lie2ext::lie2::TwoTerm;
use lie2ext::linalg::PMat;
use lie2ext::poly::Poly;
use lie2ext::report::all_passed;
use lie2ext::rep::{check_dual_pairing, random_connection, RepUH2};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn coadjoint(n: usize, rng: &mut ChaCha8Rng) -> RepUH2 {
    RepUH2::coadjoint(n, random_connection(n, n, 2, rng)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn coadjoint_reps_pass_and_dualize(seed in any::<u64>(), n in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rep = coadjoint(n, &mut rng);
        prop_assert!(rep.check().all_passed());
        let dual = rep.dual();
        prop_assert!(dual.check().all_passed());
        prop_assert!(check_dual_pairing(&rep, &dual).passed);
    }

    #[test]
    fn differential_squares_to_zero(seed in any::<u64>(), n in 1usize..4, k in 0usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rep = coadjoint(n, &mut rng);
        let c = Cochain::random(&rep, k, 2, &mut rng);
        let dd = differential(&rep, &differential(&rep, &c).unwrap()).unwrap();
        prop_assert!(dd.is_zero());
    }

    #[test]
    fn trivialize_inverts_the_differential(seed in any::<u64>(), n in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rep = coadjoint(n, &mut rng);
        let c = differential(&rep, &Cochain::random(&rep, 1, 2, &mut rng)).unwrap();
        let b = trivialize(&rep, &c).unwrap();
        prop_assert_eq!(differential(&rep, &b).unwrap(), c);
    }

    #[test]
    fn zero_extension_is_semidirect(seed in any::<u64>()) {
        let n = 2;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rep = coadjoint(n, &mut rng);
        let a = ExtensionData::semidirect(&rep).unwrap();
        let b = ExtensionData::extend(&rep, &Cochain::zero(&rep, 2)).unwrap();
        let (p0, p1) = a.probes(seed, 2);
        for x in &p0 {
            for y in &p0 {
                prop_assert_eq!(a.l2_00(&x.value, &y.value), b.l2_00(&x.value, &y.value));
            }
            for m in &p1 {
                prop_assert_eq!(a.l2_01(&x.value, &m.value), b.l2_01(&x.value, &m.value));
            }
        }
    }
}

/// A representation with a nonzero `ω` on a flat connection fails the
/// curvature condition.
fn broken_rep(n: usize) -> RepUH2 {
    let omega = MatForm::from_entries(
        n,
        2,
        n,
        n,
        (0..n * n).map(|i| if i == 0 { PolyForm::basis(n, &[0, 1]) } else { PolyForm::zero(n, 2) }).collect(),
    )
    .unwrap();
    RepUH2::new(PMat::identity(n, n), vec![PMat::zeros(n, n, n); n], vec![PMat::zeros(n, n, n); n], omega).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn homological_check_iff_cocycle_and_rep(seed in any::<u64>(), variant in 0usize..4) {
        // on R^2 every 2-cochain is closed, so the base is R^3
        let n = 3;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (rep, c) = match variant {
            0 => {
                let rep = coadjoint(n, &mut rng);
                let c = differential(&rep, &Cochain::random(&rep, 1, 1, &mut rng)).unwrap();
                (rep, c)
            }
            1 => {
                let rep = coadjoint(n, &mut rng);
                let c = Cochain::random(&rep, 2, 1, &mut rng);
                (rep, c)
            }
            2 => {
                let rep = broken_rep(n);
                let c = Cochain::zero(&rep, 2);
                (rep, c)
            }
            _ => {
                let rep = coadjoint(n, &mut rng);
                let mut c = differential(&rep, &Cochain::random(&rep, 1, 1, &mut rng)).unwrap();
                let bump = MatForm::from_entries(
                    n,
                    2,
                    n,
                    1,
                    vec![PolyForm::monomial(Poly::var(n, 2), &[0, 1]).unwrap(), PolyForm::zero(n, 2), PolyForm::zero(n, 2)],
                )
                .unwrap();
                c = Cochain::new(2, c.part0().add(&bump), c.part1().clone()).unwrap();
                (rep, c)
            }
        };
        let expected = rep.check().all_passed() && all_passed(&is_cocycle(&rep, &c).unwrap());
        match variant {
            0 => prop_assert!(expected),
            2 | 3 => prop_assert!(!expected),
            _ => {}
        }
        let report = homological_check(&ExtensionData::new_unchecked(&rep, &c));
        prop_assert_eq!(report.all_passed(), expected, "variant {}", variant);
    }
}
