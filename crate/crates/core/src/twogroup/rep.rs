//! Representations up to homotopy of a finite groupoid on a 2-term complex
//! `E_{−1} → E_0`, and normalized cochains with values in them.
//!
//! A representation is a nonassociative action `F1(g)` on both levels that
//! commutes with `∂`, plus a homotopy `F2(g1, g2): E_0 → E_{−1}` with
//!
//! ```text
//! F1(g1) F1(g2) − F1(g1g2) = ∂∘F2(g1,g2)   on E_0
//!                          = F2(g1,g2)∘∂   on E_{−1}
//! F1(g1) F2(g2,g3) − F2(g1g2,g3) + F2(g1,g2g3) − F2(g1,g2) F1(g3) = 0
//! ```
//!
//! A degree-`k` cochain pairs an `E_0`-valued function on `k`-strings with an
//! `E_{−1}`-valued function on `(k+1)`-strings. The differential is
//! `D = ∂̃ + F̃1 + F̃2`, where for `η` on `a`-strings with values in `E_l`
//!
//! ```text
//! F̃1η(g1..g_{a+1}) = (−1)^{a+l} [ F1(g1) η(g2..) + Σ_i (−1)^i η(.., g_i g_{i+1}, ..)
//!                                  + (−1)^{a+1} η(g1..g_a) ]
//! F̃2η(g1..g_{a+2}) = F2(g1,g2) η(g3..g_{a+2})
//! ```

use std::collections::BTreeMap;

use rand::Rng;
use rayon::prelude::*;

use super::FinGroupoid;
use crate::error::{Error, Result};
use crate::linalg::{qvec_add, qvec_is_zero, qvec_neg, qvec_sub, qvec_zero, QMat, QVec};
use crate::rational::Rational;
use crate::report::Check;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GpdRep {
    base: FinGroupoid,
    r0: Vec<usize>,
    r1: Vec<usize>,
    boundary: Vec<QMat>,
    f1_0: Vec<QMat>,
    f1_1: Vec<QMat>,
    // dense over arrow pairs; None where not composable
    f2: Vec<Option<QMat>>,
}

impl GpdRep {
    /// Checked constructor: shapes, invertibility of `F1`, unitality and all
    /// homotopy identities. Missing `F2` entries are zero.
    pub fn new(
        base: FinGroupoid,
        r0: Vec<usize>,
        r1: Vec<usize>,
        boundary: Vec<QMat>,
        f1_0: Vec<QMat>,
        f1_1: Vec<QMat>,
        f2: BTreeMap<(usize, usize), QMat>,
    ) -> Result<Self> {
        let rep = GpdRep::new_unchecked(base, r0, r1, boundary, f1_0, f1_1, f2)?;
        if let Some(bad) = rep.check().into_iter().find(|c| !c.passed) {
            return Err(Error::validation(format!("groupoid representation: {}", bad.name), bad.witness));
        }
        Ok(rep)
    }

    /// Only shapes are checked.
    pub fn new_unchecked(
        base: FinGroupoid,
        r0: Vec<usize>,
        r1: Vec<usize>,
        boundary: Vec<QMat>,
        f1_0: Vec<QMat>,
        f1_1: Vec<QMat>,
        f2: BTreeMap<(usize, usize), QMat>,
    ) -> Result<Self> {
        let objs = base.num_objects();
        let arrows = base.num_arrows();
        if r0.len() != objs || r1.len() != objs || boundary.len() != objs {
            return Err(Error::structural("fiber data must be given per object"));
        }
        for x in 0..objs {
            if boundary[x].rows() != r0[x] || boundary[x].cols() != r1[x] {
                return Err(Error::structural(format!("boundary at object {x} has the wrong shape")));
            }
        }
        if f1_0.len() != arrows || f1_1.len() != arrows {
            return Err(Error::structural("F1 must be given per arrow"));
        }
        for g in 0..arrows {
            let (s, t) = (base.source(g), base.target(g));
            if f1_0[g].rows() != r0[t] || f1_0[g].cols() != r0[s] || f1_1[g].rows() != r1[t] || f1_1[g].cols() != r1[s] {
                return Err(Error::structural(format!("F1({}) has the wrong shape", base.label(g))));
            }
        }
        let mut dense = vec![None; arrows * arrows];
        for a in 0..arrows {
            for b in 0..arrows {
                if base.compose(a, b).is_some() {
                    dense[a * arrows + b] = Some(QMat::zeros(r1[base.target(a)], r0[base.source(b)]));
                }
            }
        }
        for ((a, b), m) in f2 {
            if a >= arrows || b >= arrows || base.compose(a, b).is_none() {
                return Err(Error::structural(format!("F2 given on a non-composable pair ({a}, {b})")));
            }
            if m.rows() != r1[base.target(a)] || m.cols() != r0[base.source(b)] {
                return Err(Error::structural(format!("F2({a}, {b}) has the wrong shape")));
            }
            dense[a * arrows + b] = Some(m);
        }
        Ok(GpdRep { base, r0, r1, boundary, f1_0, f1_1, f2: dense })
    }

    /// `F1 = Id`, `F2 = 0`. Ranks and boundary must agree across arrows.
    pub fn trivial(base: FinGroupoid, r0: Vec<usize>, r1: Vec<usize>, boundary: Vec<QMat>) -> Result<Self> {
        let arrows = base.num_arrows();
        let f1_0 = (0..arrows).map(|g| QMat::identity(r0[base.source(g)])).collect();
        let f1_1 = (0..arrows).map(|g| QMat::identity(r1[base.source(g)])).collect();
        GpdRep::new(base, r0, r1, boundary, f1_0, f1_1, BTreeMap::new())
    }

    pub fn base(&self) -> &FinGroupoid {
        &self.base
    }

    pub fn r0(&self, x: usize) -> usize {
        self.r0[x]
    }

    pub fn r1(&self, x: usize) -> usize {
        self.r1[x]
    }

    pub fn ranks0(&self) -> &[usize] {
        &self.r0
    }

    pub fn ranks1(&self) -> &[usize] {
        &self.r1
    }

    /// Rank of `E_0` (level 0) or `E_{−1}` (level 1) at `x`.
    pub fn rank(&self, level: usize, x: usize) -> usize {
        if level == 0 {
            self.r0[x]
        } else {
            self.r1[x]
        }
    }

    pub fn boundary(&self, x: usize) -> &QMat {
        &self.boundary[x]
    }

    pub fn f1(&self, level: usize, g: usize) -> &QMat {
        if level == 0 {
            &self.f1_0[g]
        } else {
            &self.f1_1[g]
        }
    }

    pub fn f2(&self, a: usize, b: usize) -> Option<&QMat> {
        self.f2[a * self.base.num_arrows() + b].as_ref()
    }

    /// Nonzero `F2` entries.
    pub fn f2_entries(&self) -> BTreeMap<(usize, usize), QMat> {
        let n = self.base.num_arrows();
        self.f2
            .iter()
            .enumerate()
            .filter_map(|(i, m)| m.as_ref().filter(|m| !m.is_zero()).map(|m| ((i / n, i % n), m.clone())))
            .collect()
    }

    pub fn check(&self) -> Vec<Check> {
        let g = &self.base;
        let pairs = g.strings(2);
        let label = |k: &[usize]| g.describe(k.len(), k);
        let first = |arity: usize, bad: &(dyn Fn(&[usize]) -> bool + Sync)| {
            g.strings(arity).into_iter().find(|k| bad(k)).map(|k| label(&k))
        };
        let mut checks = Vec::new();
        checks.push(Check::from_witness(
            "invertible",
            first(1, &|k| self.f1_0[k[0]].inverse().is_none() || self.f1_1[k[0]].inverse().is_none()),
        ));
        checks.push(Check::from_witness(
            "unital",
            (0..g.num_objects())
                .find(|&x| {
                    let e = g.identity(x);
                    self.f1_0[e] != QMat::identity(self.r0[x]) || self.f1_1[e] != QMat::identity(self.r1[x])
                })
                .map(|x| format!("object {x}")),
        ));
        checks.push(Check::from_witness(
            "boundary_commutes",
            first(1, &|k| {
                let h = k[0];
                self.boundary[g.target(h)].mul(&self.f1_1[h]) != self.f1_0[h].mul(&self.boundary[g.source(h)])
            }),
        ));
        checks.push(Check::from_witness(
            "normalized",
            pairs
                .iter()
                .find(|k| (g.is_identity(k[0]) || g.is_identity(k[1])) && !self.f2_at(k).is_zero())
                .map(|k| label(k)),
        ));
        let defect = |level: usize, k: &[usize]| -> QMat {
            let ab = g.compose(k[0], k[1]).expect("composable");
            self.f1(level, k[0]).mul(self.f1(level, k[1])).sub(self.f1(level, ab))
        };
        checks.push(Check::from_witness(
            "multiplicativity_e0",
            pairs
                .iter()
                .find(|k| defect(0, k) != self.boundary[g.target(k[0])].mul(self.f2_at(k)))
                .map(|k| label(k)),
        ));
        checks.push(Check::from_witness(
            "multiplicativity_e1",
            pairs
                .iter()
                .find(|k| defect(1, k) != self.f2_at(k).mul(&self.boundary[g.source(k[1])]))
                .map(|k| label(k)),
        ));
        let triples = g.strings(3);
        let witness = triples.par_iter().find_map_first(|k| {
            let (a, b, c) = (k[0], k[1], k[2]);
            let ab = g.compose(a, b).expect("composable");
            let bc = g.compose(b, c).expect("composable");
            let r = self.f1_1[a]
                .mul(self.f2_at(&[b, c]))
                .sub(self.f2_at(&[ab, c]))
                .add(self.f2_at(&[a, bc]))
                .sub(&self.f2_at(&[a, b]).mul(&self.f1_0[c]));
            (!r.is_zero()).then(|| label(k))
        });
        checks.push(Check::from_witness("f2_closed", witness));
        checks
    }

    fn f2_at(&self, k: &[usize]) -> &QMat {
        self.f2(k[0], k[1]).expect("composable pair")
    }
}

/// A normalized cochain of degree `k`: `part0` on `k`-strings into `E_0`,
/// `part1` on `(k+1)`-strings into `E_{−1}`. Zero values are not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GpdCochain {
    k: usize,
    part0: BTreeMap<Vec<usize>, QVec>,
    part1: BTreeMap<Vec<usize>, QVec>,
}

impl GpdCochain {
    /// Checks keys, value dimensions and normalization.
    pub fn new(
        rep: &GpdRep,
        k: usize,
        part0: BTreeMap<Vec<usize>, QVec>,
        part1: BTreeMap<Vec<usize>, QVec>,
    ) -> Result<Self> {
        let g = rep.base();
        for (level, arity, part) in [(0, k, &part0), (1, k + 1, &part1)] {
            for (key, v) in part {
                if !g.is_string(arity, key) {
                    return Err(Error::structural(format!("{key:?} is not a composable string of length {arity}")));
                }
                if v.len() != rep.rank(level, g.base_of(arity, key)) {
                    return Err(Error::structural(format!("value at {key:?} has the wrong dimension")));
                }
                if arity > 0 && key.iter().any(|&a| g.is_identity(a)) && !qvec_is_zero(v) {
                    return Err(Error::validation("non-normalized cochain", Some(g.describe(arity, key))));
                }
            }
        }
        Ok(GpdCochain { k, part0: strip(part0), part1: strip(part1) })
    }

    pub fn zero(k: usize) -> Self {
        GpdCochain { k, part0: BTreeMap::new(), part1: BTreeMap::new() }
    }

    /// Random normalized cochain with small integer entries.
    pub fn random<R: Rng + ?Sized>(rep: &GpdRep, k: usize, rng: &mut R) -> Self {
        let g = rep.base();
        let mut parts = [BTreeMap::new(), BTreeMap::new()];
        for (level, part) in parts.iter_mut().enumerate() {
            let arity = k + level;
            for key in g.strings(arity) {
                if arity > 0 && key.iter().any(|&a| g.is_identity(a)) {
                    continue;
                }
                let dim = rep.rank(level, g.base_of(arity, &key));
                let v: QVec = (0..dim).map(|_| Rational::from_int(rng.gen_range(-3..=3))).collect();
                part.insert(key, v);
            }
        }
        let [part0, part1] = parts;
        GpdCochain { k, part0: strip(part0), part1: strip(part1) }
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn part0(&self) -> &BTreeMap<Vec<usize>, QVec> {
        &self.part0
    }

    pub fn part1(&self) -> &BTreeMap<Vec<usize>, QVec> {
        &self.part1
    }

    pub fn is_zero(&self) -> bool {
        self.part0.is_empty() && self.part1.is_empty()
    }

    /// Value of level `level` at `key`; zero of the right size when absent.
    pub fn value(&self, rep: &GpdRep, level: usize, key: &[usize]) -> QVec {
        let (arity, part) = if level == 0 { (self.k, &self.part0) } else { (self.k + 1, &self.part1) };
        part.get(key)
            .cloned()
            .unwrap_or_else(|| qvec_zero(rep.rank(level, rep.base().base_of(arity, key))))
    }

    pub fn add(&self, other: &GpdCochain) -> Result<GpdCochain> {
        if self.k != other.k {
            return Err(Error::structural("adding cochains of different degrees"));
        }
        Ok(GpdCochain {
            k: self.k,
            part0: merge(&self.part0, &other.part0, qvec_add),
            part1: merge(&self.part1, &other.part1, qvec_add),
        })
    }

    pub fn sub(&self, other: &GpdCochain) -> Result<GpdCochain> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> GpdCochain {
        let n = |p: &BTreeMap<Vec<usize>, QVec>| p.iter().map(|(k, v)| (k.clone(), qvec_neg(v))).collect();
        GpdCochain { k: self.k, part0: n(&self.part0), part1: n(&self.part1) }
    }

    /// Replaces one value, keeping the cochain canonical. No checks.
    pub fn with_value(mut self, level: usize, key: Vec<usize>, v: QVec) -> Self {
        let part = if level == 0 { &mut self.part0 } else { &mut self.part1 };
        if qvec_is_zero(&v) {
            part.remove(&key);
        } else {
            part.insert(key, v);
        }
        self
    }

    fn is_normalized(&self, g: &FinGroupoid) -> Option<String> {
        for (arity, part) in [(self.k, &self.part0), (self.k + 1, &self.part1)] {
            if arity == 0 {
                continue;
            }
            if let Some(key) = part.keys().find(|key| key.iter().any(|&a| g.is_identity(a))) {
                return Some(g.describe(arity, key));
            }
        }
        None
    }
}

fn strip(part: BTreeMap<Vec<usize>, QVec>) -> BTreeMap<Vec<usize>, QVec> {
    part.into_iter().filter(|(_, v)| !qvec_is_zero(v)).collect()
}

fn merge(
    a: &BTreeMap<Vec<usize>, QVec>,
    b: &BTreeMap<Vec<usize>, QVec>,
    f: fn(&[Rational], &[Rational]) -> QVec,
) -> BTreeMap<Vec<usize>, QVec> {
    let mut out = a.clone();
    for (k, v) in b {
        let w = match out.get(k) {
            Some(u) => f(u, v),
            None => f(&qvec_zero(v.len()), v),
        };
        out.insert(k.clone(), w);
    }
    strip(out)
}

/// `F̃1` applied to the level-`level` component of arity `arity`, at `key`
/// (a string of length `arity + 1`).
fn tilde_f1(rep: &GpdRep, level: usize, arity: usize, eta: &dyn Fn(&[usize]) -> QVec, key: &[usize]) -> QVec {
    let g = rep.base();
    let head = if arity == 0 { vec![g.source(key[0])] } else { key[1..].to_vec() };
    let mut acc = rep.f1(level, key[0]).apply(&eta(&head));
    for i in 1..=arity {
        let mut merged = key[..i - 1].to_vec();
        merged.push(g.compose(key[i - 1], key[i]).expect("composable string"));
        merged.extend_from_slice(&key[i + 1..]);
        let term = eta(&merged);
        acc = if i % 2 == 0 { qvec_add(&acc, &term) } else { qvec_sub(&acc, &term) };
    }
    let tail = if arity == 0 { vec![g.target(key[0])] } else { key[..arity].to_vec() };
    let term = eta(&tail);
    acc = if (arity + 1) % 2 == 0 { qvec_add(&acc, &term) } else { qvec_sub(&acc, &term) };
    // l = 0 on E_0 and l = −1 on E_{−1}
    if (arity + level) % 2 == 1 {
        qvec_neg(&acc)
    } else {
        acc
    }
}

/// `F̃2` applied to an `E_0` component of arity `arity`, at a string of length `arity + 2`.
fn tilde_f2(rep: &GpdRep, arity: usize, eta: &dyn Fn(&[usize]) -> QVec, key: &[usize]) -> QVec {
    let g = rep.base();
    let rest = if arity == 0 { vec![g.source(key[1])] } else { key[2..].to_vec() };
    rep.f2(key[0], key[1]).expect("composable pair").apply(&eta(&rest))
}

/// The differential `D(η0, η1) = (F̃1η0 + ∂η1, F̃1η1 + F̃2η0)`, evaluated on
/// every composable string. The output is checked to be normalized.
pub fn gpd_diff(rep: &GpdRep, c: &GpdCochain) -> Result<GpdCochain> {
    let g = rep.base();
    let k = c.k;
    let eta0 = |key: &[usize]| c.value(rep, 0, key);
    let eta1 = |key: &[usize]| c.value(rep, 1, key);
    let part0: BTreeMap<Vec<usize>, QVec> = g
        .strings(k + 1)
        .into_par_iter()
        .map(|key| {
            let x = g.base_of(k + 1, &key);
            let v = qvec_add(&tilde_f1(rep, 0, k, &eta0, &key), &rep.boundary(x).apply(&eta1(&key)));
            (key, v)
        })
        .collect();
    let part1: BTreeMap<Vec<usize>, QVec> = g
        .strings(k + 2)
        .into_par_iter()
        .map(|key| {
            let v = qvec_add(&tilde_f1(rep, 1, k + 1, &eta1, &key), &tilde_f2(rep, k, &eta0, &key));
            (key, v)
        })
        .collect();
    let out = GpdCochain { k: k + 1, part0: strip(part0), part1: strip(part1) };
    if let Some(w) = out.is_normalized(g) {
        return Err(Error::Internal(format!("differential produced a non-normalized value at {w}")));
    }
    Ok(out)
}

/// The cocycle conditions on a degree-2 cochain `(C2, C3)`:
/// `F̃1C2 + ∂∘C3 = 0` and `F̃1C3 + F̃2C2 = 0`, plus normalization.
pub fn check_gpd_cocycle(rep: &GpdRep, c: &GpdCochain) -> Result<Vec<Check>> {
    if c.k != 2 {
        return Err(Error::structural(format!("a 2-cocycle has degree 2, got {}", c.k)));
    }
    let g = rep.base();
    let eta0 = |key: &[usize]| c.value(rep, 0, key);
    let eta1 = |key: &[usize]| c.value(rep, 1, key);
    let normalized = Check::from_witness("normalized", c.is_normalized(g));
    let first = g.strings(3).into_par_iter().find_map_first(|key| {
        let x = g.base_of(3, &key);
        let v = qvec_add(&tilde_f1(rep, 0, 2, &eta0, &key), &rep.boundary(x).apply(&eta1(&key)));
        (!qvec_is_zero(&v)).then(|| g.describe(3, &key))
    });
    let second = g.strings(4).into_par_iter().find_map_first(|key| {
        let v = qvec_add(&tilde_f1(rep, 1, 3, &eta1, &key), &tilde_f2(rep, 2, &eta0, &key));
        (!qvec_is_zero(&v)).then(|| g.describe(4, &key))
    });
    Ok(vec![
        normalized,
        Check::from_witness("closed_e0", first),
        Check::from_witness("closed_e1", second),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::all_passed;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn z2_unit() -> GpdRep {
        GpdRep::trivial(FinGroupoid::cyclic(2), vec![1], vec![1], vec![QMat::identity(1)]).unwrap()
    }

    #[test]
    fn trivial_reps_pass() {
        for g in [FinGroupoid::trivial(), FinGroupoid::cyclic(3), FinGroupoid::symmetric3(), FinGroupoid::pair(2)] {
            let objs = g.num_objects();
            let rep = GpdRep::trivial(g, vec![2; objs], vec![1; objs], vec![QMat::from_ints(2, 1, &[1, 0]); objs]);
            assert!(all_passed(&rep.unwrap().check()));
        }
        assert!(all_passed(&z2_unit().check()));
    }

    #[test]
    fn perturbed_f2_breaks_multiplicativity() {
        let mut f2 = BTreeMap::new();
        f2.insert((1, 1), QMat::identity(1));
        let g = FinGroupoid::cyclic(2);
        let id = || vec![QMat::identity(1); 2];
        let rep = GpdRep::new_unchecked(g.clone(), vec![1], vec![1], vec![QMat::identity(1)], id(), id(), f2.clone())
            .unwrap();
        let checks = rep.check();
        let c = crate::report::find(&checks, "multiplicativity_e0").unwrap();
        assert!(!c.passed);
        assert_eq!(c.witness.as_deref(), Some("(r1, r1)"));
        assert!(GpdRep::new(g, vec![1], vec![1], vec![QMat::identity(1)], id(), id(), f2).is_err());
    }

    #[test]
    fn zero_cochain_differential() {
        let rep = z2_unit();
        assert!(gpd_diff(&rep, &GpdCochain::zero(1)).unwrap().is_zero());
    }

    #[test]
    fn z2_cocycle() {
        let rep = z2_unit();
        let mut c2 = BTreeMap::new();
        c2.insert(vec![1, 1], vec![q(1)]);
        let c = GpdCochain::new(&rep, 2, c2, BTreeMap::new()).unwrap();
        assert!(all_passed(&check_gpd_cocycle(&rep, &c).unwrap()));
        assert!(all_passed(&check_gpd_cocycle(&rep, &GpdCochain::zero(2)).unwrap()));
        // perturb C3 at one triple
        let bad = c.with_value(1, vec![1, 1, 1], vec![q(1)]);
        let checks = check_gpd_cocycle(&rep, &bad).unwrap();
        let failed: Vec<_> = checks.iter().filter(|c| !c.passed).collect();
        assert!(!failed.is_empty());
        assert!(failed.iter().all(|c| c.witness.as_deref().unwrap().contains("r1")));
    }

    #[test]
    fn normalization_enforced() {
        let rep = z2_unit();
        let mut c2 = BTreeMap::new();
        c2.insert(vec![0, 1], vec![q(1)]);
        let err = GpdCochain::new(&rep, 2, c2, BTreeMap::new()).unwrap_err();
        assert!(matches!(err, Error::Validation { .. }));
    }

    #[test]
    fn differential_squares_to_zero_trivial_rep() {
        let rep = GpdRep::trivial(FinGroupoid::symmetric3(), vec![2], vec![1], vec![QMat::from_ints(2, 1, &[1, 1])])
            .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for k in 0..3 {
            let c = GpdCochain::random(&rep, k, &mut rng);
            let dd = gpd_diff(&rep, &gpd_diff(&rep, &c).unwrap()).unwrap();
            assert!(dd.is_zero(), "k = {k}");
        }
    }

    #[test]
    fn coboundaries_are_cocycles_on_pair_groupoid() {
        let g = FinGroupoid::pair(2);
        let rep = GpdRep::trivial(g, vec![1, 1], vec![1, 1], vec![QMat::scalar(1, q(3)); 2]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let eta = GpdCochain::random(&rep, 1, &mut rng);
        let c = gpd_diff(&rep, &eta).unwrap();
        assert!(!c.is_zero());
        assert!(all_passed(&check_gpd_cocycle(&rep, &c).unwrap()));
    }
}
