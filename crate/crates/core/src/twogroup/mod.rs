//! Finite models of groupoid integration: finite groupoids, their 2-term
//! representations up to homotopy, normalized groupoid cochains, the
//! extension 2-groupoid built from a 2-cocycle, and its nerve up to level 3.
//!
//! Conventions. An arrow `g` goes from `source(g)` to `target(g)`. The
//! product `g1 g2` means "`g2` first", so it is defined when
//! `source(g1) = target(g2)`. A composable `k`-string `(g1, …, gk)` satisfies
//! `source(g_i) = target(g_{i+1})`; its base object is `target(g1)`, which is
//! where cochain values live. Strings of length 0 are objects and are keyed
//! as `[x]`.
//!
//! Every coherence law is affine in the fiber variables, so the verifiers
//! check each law at the zero vector and at each basis vector of each slot.
//! Equality at those points gives equality everywhere.

mod corpus;
mod extension;
mod nerve;
mod rep;

pub use corpus::{cases, groups, sign_cocycle, coboundary_cocycle, twisted_rep, unit_rep, CorpusCase, CorpusGroup};
pub use extension::{abelian_2gpd, Ext2Group, Morphism1, Morphism2};
pub use nerve::{Nerve, XSimplex, YSimplex};
pub use rep::{check_gpd_cocycle, gpd_diff, GpdCochain, GpdRep};

use crate::error::{Error, Result};
use crate::linalg::{qvec_unit, qvec_zero, QVec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinGroupoid {
    objects: usize,
    source: Vec<usize>,
    target: Vec<usize>,
    // compose[a * arrows + b] = a∘b when source(a) = target(b)
    compose: Vec<Option<usize>>,
    identity: Vec<usize>,
    inverse: Vec<usize>,
    labels: Vec<String>,
}

impl FinGroupoid {
    /// Builds a groupoid from its composition table. `table[a][b]` must be
    /// `Some` exactly when `source(a) = target(b)`. All groupoid laws are
    /// checked exhaustively.
    pub fn new(
        objects: usize,
        source: Vec<usize>,
        target: Vec<usize>,
        table: Vec<Vec<Option<usize>>>,
    ) -> Result<Self> {
        let n = source.len();
        if target.len() != n || table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::structural("groupoid table sizes disagree"));
        }
        if source.iter().chain(&target).any(|&x| x >= objects) {
            return Err(Error::structural("arrow endpoint out of range"));
        }
        let mut compose = vec![None; n * n];
        for a in 0..n {
            for b in 0..n {
                let entry = table[a][b];
                if (source[a] == target[b]) != entry.is_some() {
                    return Err(Error::structural(format!(
                        "composite of arrows {a} and {b} is defined iff they are composable"
                    )));
                }
                if let Some(c) = entry {
                    if c >= n || source[c] != source[b] || target[c] != target[a] {
                        return Err(Error::validation(
                            "composite has wrong endpoints",
                            Some(format!("({a}, {b})")),
                        ));
                    }
                }
                compose[a * n + b] = entry;
            }
        }
        let mut g = FinGroupoid {
            objects,
            source,
            target,
            compose,
            identity: Vec::new(),
            inverse: Vec::new(),
            labels: (0..n).map(|i| format!("g{i}")).collect(),
        };
        g.validate()?;
        Ok(g)
    }

    fn validate(&mut self) -> Result<()> {
        let n = self.num_arrows();
        for a in 0..n {
            for b in 0..n {
                let Some(ab) = self.compose(a, b) else { continue };
                for c in 0..n {
                    let Some(bc) = self.compose(b, c) else { continue };
                    if self.compose(ab, c) != self.compose(a, bc) {
                        return Err(Error::validation(
                            "groupoid associativity",
                            Some(format!("({a}, {b}, {c})")),
                        ));
                    }
                }
            }
        }
        let mut identity = Vec::with_capacity(self.objects);
        for x in 0..self.objects {
            let unit = (0..n).find(|&e| {
                self.source[e] == x
                    && self.target[e] == x
                    && (0..n).all(|g| {
                        (self.target[g] != x || self.compose(e, g) == Some(g))
                            && (self.source[g] != x || self.compose(g, e) == Some(g))
                    })
            });
            match unit {
                Some(e) => identity.push(e),
                None => return Err(Error::validation("identity arrow", Some(format!("object {x}")))),
            }
        }
        self.identity = identity;
        let mut inverse = Vec::with_capacity(n);
        for g in 0..n {
            let inv = (0..n).find(|&h| {
                self.compose(g, h) == Some(self.identity[self.target[g]])
                    && self.compose(h, g) == Some(self.identity[self.source[g]])
            });
            match inv {
                Some(h) => inverse.push(h),
                None => return Err(Error::validation("inverse arrow", Some(format!("arrow {g}")))),
            }
        }
        self.inverse = inverse;
        Ok(())
    }

    /// A group as a one-object groupoid. `table[a][b] = a·b`.
    pub fn from_group(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        let table = table.into_iter().map(|row| row.into_iter().map(Some).collect()).collect();
        FinGroupoid::new(1, vec![0; n], vec![0; n], table)
    }

    pub fn trivial() -> Self {
        FinGroupoid::from_group(vec![vec![0]]).expect("trivial group").with_labels(&["1"])
    }

    pub fn cyclic(order: usize) -> Self {
        assert!(order > 0);
        let table = (0..order).map(|a| (0..order).map(|b| (a + b) % order).collect()).collect();
        let labels: Vec<String> = (0..order).map(|k| if k == 0 { "1".into() } else { format!("r{k}") }).collect();
        let mut g = FinGroupoid::from_group(table).expect("cyclic group");
        g.labels = labels;
        g
    }

    /// The symmetric group on three letters. Arrow `i` is the `i`-th
    /// permutation of `s3_permutations`, the identity first.
    pub fn symmetric3() -> Self {
        let perms = s3_permutations();
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("closed under composition");
        let table = perms
            .iter()
            .map(|p| perms.iter().map(|q| index([p[q[0]], p[q[1]], p[q[2]]])).collect())
            .collect();
        let mut g = FinGroupoid::from_group(table).expect("symmetric group");
        g.labels = perms.iter().map(|p| format!("[{}{}{}]", p[0] + 1, p[1] + 1, p[2] + 1)).collect();
        g
    }

    /// Objects `0..objects` with identity arrows only.
    pub fn discrete(objects: usize) -> Self {
        let table = (0..objects)
            .map(|a| (0..objects).map(|b| (a == b).then_some(a)).collect())
            .collect();
        let mut g = FinGroupoid::new(objects, (0..objects).collect(), (0..objects).collect(), table)
            .expect("discrete groupoid");
        g.labels = (0..objects).map(|x| format!("1_{x}")).collect();
        g
    }

    /// The pair groupoid: one arrow `x ← y` for each ordered pair. Arrow
    /// `i * objects + j` has target `i` and source `j`.
    pub fn pair(objects: usize) -> Self {
        let n = objects * objects;
        let target: Vec<usize> = (0..n).map(|a| a / objects).collect();
        let source: Vec<usize> = (0..n).map(|a| a % objects).collect();
        let table = (0..n)
            .map(|a| (0..n).map(|b| (source[a] == target[b]).then(|| target[a] * objects + source[b])).collect())
            .collect();
        let mut g = FinGroupoid::new(objects, source.clone(), target.clone(), table).expect("pair groupoid");
        g.labels = (0..n).map(|a| format!("({}<-{})", target[a], source[a])).collect();
        g
    }

    pub fn with_labels(mut self, labels: &[&str]) -> Self {
        assert_eq!(labels.len(), self.num_arrows());
        self.labels = labels.iter().map(|s| s.to_string()).collect();
        self
    }

    pub fn num_objects(&self) -> usize {
        self.objects
    }

    pub fn num_arrows(&self) -> usize {
        self.source.len()
    }

    pub fn source(&self, g: usize) -> usize {
        self.source[g]
    }

    pub fn target(&self, g: usize) -> usize {
        self.target[g]
    }

    /// `a∘b`, when `source(a) = target(b)`.
    pub fn compose(&self, a: usize, b: usize) -> Option<usize> {
        self.compose[a * self.num_arrows() + b]
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identity[x]
    }

    pub fn is_identity(&self, g: usize) -> bool {
        self.identity[self.source[g]] == g
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// The composition table in the form accepted by `new`.
    pub fn table(&self) -> Vec<Vec<Option<usize>>> {
        let n = self.num_arrows();
        (0..n).map(|a| (0..n).map(|b| self.compose(a, b)).collect()).collect()
    }

    pub fn sources(&self) -> &[usize] {
        &self.source
    }

    pub fn targets(&self) -> &[usize] {
        &self.target
    }

    /// All composable strings of length `k`; for `k = 0`, one `[x]` per object.
    pub fn strings(&self, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return (0..self.objects).map(|x| vec![x]).collect();
        }
        let mut out: Vec<Vec<usize>> = (0..self.num_arrows()).map(|g| vec![g]).collect();
        for _ in 1..k {
            let mut next = Vec::new();
            for s in &out {
                let last = *s.last().expect("non-empty");
                for g in 0..self.num_arrows() {
                    if self.source[last] == self.target[g] {
                        let mut t = s.clone();
                        t.push(g);
                        next.push(t);
                    }
                }
            }
            out = next;
        }
        out
    }

    /// Base object of a string of the given length: `target(g1)`, or `x` for `[x]`.
    pub fn base_of(&self, len: usize, key: &[usize]) -> usize {
        if len == 0 {
            key[0]
        } else {
            self.target[key[0]]
        }
    }

    /// Whether a key is a composable string of length `len`.
    pub fn is_string(&self, len: usize, key: &[usize]) -> bool {
        if len == 0 {
            return key.len() == 1 && key[0] < self.objects;
        }
        key.len() == len
            && key.iter().all(|&g| g < self.num_arrows())
            && key.windows(2).all(|w| self.source[w[0]] == self.target[w[1]])
    }

    pub(crate) fn describe(&self, len: usize, key: &[usize]) -> String {
        if len == 0 {
            format!("object {}", key[0])
        } else {
            let names: Vec<&str> = key.iter().map(|&g| self.label(g)).collect();
            format!("({})", names.join(", "))
        }
    }
}

/// Zero configuration, then one basis vector in one slot at a time.
pub(crate) fn probes(dims: &[usize]) -> Vec<(String, Vec<QVec>)> {
    let zero: Vec<QVec> = dims.iter().map(|&d| qvec_zero(d)).collect();
    let mut out = vec![("zero".to_string(), zero.clone())];
    for (slot, &d) in dims.iter().enumerate() {
        for b in 0..d {
            let mut p = zero.clone();
            p[slot] = qvec_unit(d, b);
            out.push((format!("slot {slot} basis {b}"), p));
        }
    }
    out
}

pub(crate) fn s3_permutations() -> Vec<[usize; 3]> {
    vec![[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_groupoids_validate() {
        assert_eq!(FinGroupoid::trivial().num_arrows(), 1);
        let z3 = FinGroupoid::cyclic(3);
        assert_eq!(z3.compose(1, 2), Some(0));
        assert_eq!(z3.inverse(1), 2);
        let s3 = FinGroupoid::symmetric3();
        assert_eq!(s3.identity(0), 0);
        assert!((0..6).all(|g| s3.compose(g, s3.inverse(g)) == Some(0)));
        // S3 is not abelian
        assert!((0..6).any(|a| (0..6).any(|b| s3.compose(a, b) != s3.compose(b, a))));
        let p = FinGroupoid::pair(2);
        assert_eq!(p.compose(1, 2), Some(0));
        assert_eq!(p.inverse(1), 2);
        assert_eq!(FinGroupoid::discrete(3).strings(2).len(), 3);
    }

    #[test]
    fn string_counts() {
        let s3 = FinGroupoid::symmetric3();
        assert_eq!(s3.strings(0), vec![vec![0]]);
        assert_eq!(s3.strings(3).len(), 216);
        let p = FinGroupoid::pair(2);
        assert_eq!(p.strings(2).len(), 8);
        assert!(p.strings(3).iter().all(|s| p.is_string(3, s)));
    }

    #[test]
    fn broken_tables_rejected() {
        // "group" of order 2 with no identity
        let err = FinGroupoid::from_group(vec![vec![1, 0], vec![1, 0]]);
        assert!(err.is_err());
        let err = FinGroupoid::from_group(vec![vec![0, 1], vec![1, 1]]);
        assert!(err.is_err());
    }
}
