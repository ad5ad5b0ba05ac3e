use lie2ext::twogroup::{abelian_2gpd, cases, gpd_diff, Ext2Group, GpdCochain};
use lie2ext::linalg::qvec_unit;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn verdicts(e: &Ext2Group) -> Vec<(String, bool)> {
    e.verify_coherence().into_iter().map(|c| (c.name, c.passed)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn cohomologous_cocycles_share_verdicts(seed in any::<u64>(), pick in 0usize..18, negate in proptest::bool::ANY) {
        let case = cases().unwrap().swap_remove(pick);
        let rep = case.ext.rep().clone();
        let b = GpdCochain::random(&rep, 1, &mut ChaCha8Rng::seed_from_u64(seed));
        let shifted = case.ext.cocycle().add(&gpd_diff(&rep, &b).unwrap()).unwrap();
        let mut a = case.ext.clone();
        let mut c = Ext2Group::build(rep, shifted).unwrap();
        if negate {
            a = a.with_negated_associator_c3();
            c = c.with_negated_associator_c3();
        }
        let (va, vc) = (verdicts(&a), verdicts(&c));
        if !negate {
            prop_assert!(va.iter().all(|(_, p)| *p));
        }
        prop_assert_eq!(
            va.iter().map(|(n, _)| n).collect::<Vec<_>>(),
            vc.iter().map(|(n, _)| n).collect::<Vec<_>>()
        );
        if !negate {
            prop_assert_eq!(va, vc);
        }
    }

    #[test]
    fn kernel_multiplication_is_abelian(pick in 0usize..18, i in 0usize..2, j in 0usize..2) {
        let case = cases().unwrap().swap_remove(pick);
        let ext = &case.ext;
        let rep = ext.rep();
        let objs = ext.base().num_objects();
        let ab = abelian_2gpd(rep.ranks0().to_vec(), rep.ranks1().to_vec(), (0..objs).map(|x| rep.boundary(x).clone()).collect()).unwrap();
        for x in 0..objs {
            let (r0, r1) = (rep.r0(x), rep.r1(x));
            let (u, v) = (qvec_unit(r0, i % r0), qvec_unit(r0, j % r0));
            let m = qvec_unit(r1, j % r1);
            let here = ext.horizontal1(&ext.iota1(x, &u), &ext.iota1(x, &v)).unwrap();
            let there = ab.horizontal1(&ab.iota1(x, &u), &ab.iota1(x, &v)).unwrap();
            prop_assert_eq!(&here.xi, &there.xi);
            prop_assert_eq!(ext.phi(&here), ext.base().identity(x));
            let here2 = ext.horizontal2(&ext.iota2(x, &u, &m), &ext.iota2(x, &v, &m)).unwrap();
            let there2 = ab.horizontal2(&ab.iota2(x, &u, &m), &ab.iota2(x, &v, &m)).unwrap();
            prop_assert_eq!(&here2.xi, &there2.xi);
            prop_assert_eq!(&here2.m, &there2.m);
        }
    }
}
