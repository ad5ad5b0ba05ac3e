//! The standard test corpus: the trivial group, Z/2, Z/3 and S3, each with
//! two representations and a small family of 2-cocycles.
//!
//! `unit_rep` is the rank-1 complex `E_{−1} = E_0 = Q` with `∂ = Id`,
//! `F1 = Id`, `F2 = 0`. `twisted_rep` is rank 2 with `∂ = 2·Id` and
//! `F1(g) = λ(g)ρ(g)` on both levels, where `ρ` is a genuine 2-dimensional
//! representation and `λ(1) = 1`, `λ(g) = 2` otherwise. Since `λ` is not
//! multiplicative, `F2(g1,g2) = (λ(g1)λ(g2) − λ(g1g2)) ∂⁻¹ ρ(g1g2)` is
//! nonzero.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::extension::Ext2Group;
use super::rep::{gpd_diff, GpdCochain, GpdRep};
use super::{s3_permutations, FinGroupoid};
use crate::error::{Error, Result};
use crate::linalg::{qvec_unit, QMat};
use crate::rational::Rational;

#[derive(Clone, Debug)]
pub struct CorpusGroup {
    pub name: &'static str,
    pub groupoid: FinGroupoid,
    /// A 2-dimensional representation, one matrix per arrow.
    pub rho: Vec<QMat>,
    /// Odd arrows of a surjection onto Z/2, when there is one.
    pub odd: Option<Vec<bool>>,
}

fn q(n: i64) -> Rational {
    Rational::from_int(n)
}

pub fn groups() -> Vec<CorpusGroup> {
    let rotation = QMat::from_ints(2, 2, &[0, -1, 1, -1]);
    let s3 = s3_permutations();
    // S3 on the sum-zero plane, basis e1 − e3, e2 − e3
    let coords = |i: usize| -> [i64; 2] {
        match i {
            0 => [1, 0],
            1 => [0, 1],
            _ => [0, 0],
        }
    };
    let s3_rho = s3
        .iter()
        .map(|p| {
            let col = |k: usize| {
                let (a, b) = (coords(p[k]), coords(p[2]));
                [a[0] - b[0], a[1] - b[1]]
            };
            let (c0, c1) = (col(0), col(1));
            QMat::from_ints(2, 2, &[c0[0], c1[0], c0[1], c1[1]])
        })
        .collect();
    let parity = s3
        .iter()
        .map(|p| (0..3).flat_map(|i| (i + 1..3).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count() % 2 == 1)
        .collect();
    vec![
        CorpusGroup { name: "trivial", groupoid: FinGroupoid::trivial(), rho: vec![QMat::identity(2)], odd: None },
        CorpusGroup {
            name: "Z/2",
            groupoid: FinGroupoid::cyclic(2),
            rho: vec![QMat::identity(2), QMat::from_ints(2, 2, &[0, 1, 1, 0])],
            odd: Some(vec![false, true]),
        },
        CorpusGroup {
            name: "Z/3",
            groupoid: FinGroupoid::cyclic(3),
            rho: vec![QMat::identity(2), rotation.clone(), rotation.mul(&rotation)],
            odd: None,
        },
        CorpusGroup { name: "S3", groupoid: FinGroupoid::symmetric3(), rho: s3_rho, odd: Some(parity) },
    ]
}

pub fn unit_rep(g: &FinGroupoid) -> Result<GpdRep> {
    let objs = g.num_objects();
    GpdRep::trivial(g.clone(), vec![1; objs], vec![1; objs], vec![QMat::identity(1); objs])
}

pub fn twisted_rep(group: &CorpusGroup) -> Result<GpdRep> {
    let g = &group.groupoid;
    if g.num_objects() != 1 {
        return Err(Error::structural("the twisted representation is defined for groups"));
    }
    let lambda = |a: usize| if g.is_identity(a) { q(1) } else { q(2) };
    let f1: Vec<QMat> = (0..g.num_arrows()).map(|a| group.rho[a].scale(&lambda(a))).collect();
    let half = Rational::frac(1, 2);
    let mut f2 = BTreeMap::new();
    for a in 0..g.num_arrows() {
        for b in 0..g.num_arrows() {
            let ab = g.compose(a, b).expect("group");
            let c = &(&lambda(a) * &lambda(b)) - &lambda(ab);
            if !c.is_zero() {
                f2.insert((a, b), group.rho[ab].scale(&(&c * &half)));
            }
        }
    }
    GpdRep::new(g.clone(), vec![2], vec![2], vec![QMat::scalar(2, q(2))], f1.clone(), f1, f2)
}

/// `C2(g,h) = e_0` when both arrows are odd, `C3 = 0`: the pullback of the
/// Z/2 cocycle along `odd`.
pub fn sign_cocycle(rep: &GpdRep, odd: &[bool]) -> Result<GpdCochain> {
    let g = rep.base();
    let mut part0 = BTreeMap::new();
    for key in g.strings(2) {
        if odd[key[0]] && odd[key[1]] {
            part0.insert(key.clone(), qvec_unit(rep.r0(g.base_of(2, &key)), 0));
        }
    }
    GpdCochain::new(rep, 2, part0, BTreeMap::new())
}

/// `D` of a seeded random normalized 1-cochain.
pub fn coboundary_cocycle(rep: &GpdRep, seed: u64) -> Result<GpdCochain> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    gpd_diff(rep, &GpdCochain::random(rep, 1, &mut rng))
}

#[derive(Clone, Debug)]
pub struct CorpusCase {
    pub group: &'static str,
    pub rep: &'static str,
    pub cocycle: &'static str,
    pub ext: Ext2Group,
}

impl CorpusCase {
    pub fn name(&self) -> String {
        format!("{} / {} / {}", self.group, self.rep, self.cocycle)
    }
}

/// Every group with the zero cocycle on both representations, the Z/2
/// cocycle where the group maps onto Z/2, and one coboundary per
/// representation.
pub fn cases() -> Result<Vec<CorpusCase>> {
    let mut out = Vec::new();
    for (i, group) in groups().into_iter().enumerate() {
        let reps = [("unit", unit_rep(&group.groupoid)?), ("twisted", twisted_rep(&group)?)];
        for (rep_name, rep) in reps {
            let mut cocycles = vec![("zero", GpdCochain::zero(2))];
            if let (Some(odd), "unit") = (&group.odd, rep_name) {
                cocycles.push(("sign", sign_cocycle(&rep, odd)?));
            }
            cocycles.push(("coboundary", coboundary_cocycle(&rep, 100 + i as u64)?));
            for (name, c) in cocycles {
                out.push(CorpusCase {
                    group: group.name,
                    rep: rep_name,
                    cocycle: name,
                    ext: Ext2Group::build(rep.clone(), c)?,
                });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::{all_passed, find};
    use crate::twogroup::{check_gpd_cocycle, Nerve};

    #[test]
    fn corpus_builds_and_is_coherent() {
        let cases = cases().unwrap();
        assert_eq!(cases.len(), 4 * 4 + 2);
        for case in &cases {
            for c in case.ext.verify_coherence() {
                assert!(c.passed, "{}: {} {:?}", case.name(), c.name, c.witness);
            }
        }
    }

    #[test]
    fn twisted_rep_has_nonzero_f2() {
        for group in groups().iter().skip(1) {
            let rep = twisted_rep(group).unwrap();
            assert!(!rep.f2_entries().is_empty(), "{}", group.name);
        }
    }

    #[test]
    fn negated_c3_breaks_pentagon() {
        // with F2 = 0 the cocycle condition makes C3 closed and the pentagon
        // cannot see its sign, so the twisted representation is used
        let twisted = cases()
            .unwrap()
            .into_iter()
            .filter(|c| c.cocycle == "coboundary" && c.rep == "twisted" && c.group != "trivial");
        for case in twisted {
            let checks = case.ext.clone().with_negated_associator_c3().verify_coherence();
            let p = find(&checks, "pentagon").unwrap();
            assert!(!p.passed, "{}", case.name());
            assert!(p.witness.is_some());
        }
    }

    #[test]
    fn sign_cocycle_on_s3() {
        let s3 = &groups()[3];
        let rep = unit_rep(&s3.groupoid).unwrap();
        let c = sign_cocycle(&rep, s3.odd.as_ref().unwrap()).unwrap();
        assert_eq!(c.part0().len(), 9);
        assert!(all_passed(&check_gpd_cocycle(&rep, &c).unwrap()));
    }

    #[test]
    fn nerve_identities_on_corpus() {
        for case in cases().unwrap() {
            for c in Nerve::new(&case.ext).check() {
                assert!(c.passed, "{}: {} {:?}", case.name(), c.name, c.witness);
            }
        }
    }

    #[test]
    fn nerve_examples() {
        let rep = unit_rep(&FinGroupoid::cyclic(2)).unwrap();
        let e = Ext2Group::build(rep, GpdCochain::zero(2)).unwrap();
        let n = Nerve::new(&e);
        let x = |g: usize, v: i64| crate::twogroup::Morphism1 { arrow: g, xi: vec![q(v)] };
        let t = n.x_simplex(0, vec![x(1, 2), x(1, 3)], vec![vec![q(5)]]).unwrap();
        // trivial data: d1 = (γ01γ12, ξ0 + ξ1 + m)
        let d1 = n.face_x(&t, 1).unwrap();
        assert_eq!(d1.spine, vec![x(0, 10)]);
        assert_eq!(n.face_x(&t, 0).unwrap().spine, vec![x(1, 3)]);
        assert_eq!(n.face_x(&t, 2).unwrap().spine, vec![x(1, 2)]);
        let edge = n.x_simplex(0, vec![x(1, 4)], vec![]).unwrap();
        let s0 = n.degeneracy_x(&edge, 0).unwrap();
        assert_eq!(n.face_x(&s0, 0).unwrap(), edge);
        // d0 d2 = d1 d0 on level 2
        let a = n.face_x(&n.face_x(&t, 2).unwrap(), 0).unwrap();
        let b = n.face_x(&n.face_x(&t, 0).unwrap(), 1).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn differential_squares_to_zero_on_twisted_reps() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for group in groups() {
            let rep = twisted_rep(&group).unwrap();
            for k in 0..3 {
                let c = GpdCochain::random(&rep, k, &mut rng);
                let dd = gpd_diff(&rep, &gpd_diff(&rep, &c).unwrap()).unwrap();
                assert!(dd.is_zero(), "{} k = {k}", group.name);
            }
        }
    }
}
