//! Permutations, Koszul signs and unshuffles for graded multilinear algebra.
//!
//! A permutation `σ` of `{0..k}` is stored by its images. Two readings of a
//! permutation acting on a word `x_0 … x_{k-1}` occur:
//! * placement: `x_i` moves to slot `σ(i)` (used by [`koszul_sign`]);
//! * selection: the word `x_{σ(0)} … x_{σ(k-1)}` (used by [`word_sign`] and the
//!   unshuffle sums of the L∞ identities).

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let k = images.len();
        let mut seen = vec![false; k];
        for &i in &images {
            if i >= k || seen[i] {
                return Err(Error::structural(format!("{images:?} is not a permutation of 0..{k}")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(k: usize) -> Self {
        Permutation {
            images: (0..k).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.len() != other.len() {
            return Err(Error::structural("composing permutations of different sizes"));
        }
        Ok(Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    /// Ordinary sign `sgn(σ)`.
    pub fn sign(&self) -> i32 {
        let mut s = 1;
        for a in 0..self.len() {
            for b in a + 1..self.len() {
                if self.images[a] > self.images[b] {
                    s = -s;
                }
            }
        }
        s
    }

    /// Selection: `out[i] = items[σ(i)]`.
    pub fn select<T: Clone>(&self, items: &[T]) -> Vec<T> {
        self.images.iter().map(|&i| items[i].clone()).collect()
    }

    /// Placement: `out[σ(i)] = items[i]`.
    pub fn place<T: Clone>(&self, items: &[T]) -> Vec<T> {
        self.inverse().select(items)
    }
}

/// Koszul sign of moving each `x_i` (of degree `degrees[i]`) to slot `σ(i)` in
/// a graded-commutative algebra.
///
/// Every pair that changes relative order contributes `(-1)^{|a||b|}`;
/// elements of even degree commute with everything.
pub fn koszul_sign(sigma: &Permutation, degrees: &[i32]) -> Result<i32> {
    if sigma.len() != degrees.len() {
        return Err(Error::structural(format!(
            "permutation of {} elements with {} degrees",
            sigma.len(),
            degrees.len()
        )));
    }
    let mut s = 1;
    for a in 0..sigma.len() {
        for b in a + 1..sigma.len() {
            if sigma.image(a) > sigma.image(b) && degrees[a].rem_euclid(2) == 1 && degrees[b].rem_euclid(2) == 1 {
                s = -s;
            }
        }
    }
    Ok(s)
}

/// Koszul sign `ε` with `x_0 ∧ … ∧ x_{k-1} = ε · x_{σ(0)} ∧ … ∧ x_{σ(k-1)}`.
pub fn word_sign(sigma: &Permutation, degrees: &[i32]) -> Result<i32> {
    koszul_sign(&sigma.inverse(), degrees)
}

/// All `(i, k-i)`-unshuffles: permutations increasing on the first `i` slots
/// and on the last `k-i` slots. There are `binomial(k, i)` of them, listed in
/// lexicographic order of the first block.
pub fn unshuffles(i: usize, k: usize) -> Result<Vec<Permutation>> {
    if i < 1 || i > k {
        return Err(Error::structural(format!("unshuffle block size {i} outside 1..={k}")));
    }
    let mut out = Vec::new();
    for first in combinations(k, i) {
        let mut images = first.clone();
        images.extend((0..k).filter(|x| !first.contains(x)));
        out.push(Permutation { images });
    }
    Ok(out)
}

/// Strictly increasing `r`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            if n - x < r - cur.len() {
                break;
            }
            cur.push(x);
            rec(x + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, r, &mut Vec::with_capacity(r), &mut out);
    out
}

/// All permutations of `0..k` (Heap order is not needed; lexicographic).
pub fn all_permutations(k: usize) -> Vec<Permutation> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
        if cur.len() == used.len() {
            out.push(Permutation { images: cur.clone() });
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                rec(cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

/// Sorts `indices` in place and returns the sign of the sorting permutation,
/// or `None` if an index repeats.
pub fn sort_with_sign(indices: &mut [usize]) -> Option<i32> {
    let mut sign = 1;
    for a in 0..indices.len() {
        for b in 0..indices.len() - 1 - a {
            if indices[b] > indices[b + 1] {
                indices.swap(b, b + 1);
                sign = -sign;
            } else if indices[b] == indices[b + 1] {
                return None;
            }
        }
    }
    if indices.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some(sign)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn koszul_examples() {
        let id = Permutation::identity(2);
        assert_eq!(koszul_sign(&id, &[1, 2]).unwrap(), 1);
        let swap = Permutation::new(vec![1, 0]).unwrap();
        assert_eq!(koszul_sign(&swap, &[1, 1]).unwrap(), -1);
        // cycle (2,3,1) in 1-based notation
        let cyc = Permutation::new(vec![1, 2, 0]).unwrap();
        assert_eq!(koszul_sign(&cyc, &[1, 1, 2]).unwrap(), 1);
    }

    #[test]
    fn word_sign_reads_selected_word() {
        // x0 x1 x2 -> x1 x2 x0 moves the odd x0 past odd x1
        let cyc = Permutation::new(vec![1, 2, 0]).unwrap();
        assert_eq!(word_sign(&cyc, &[1, 1, 2]).unwrap(), -1);
        assert_eq!(cyc.select(&['a', 'b', 'c']), vec!['b', 'c', 'a']);
        assert_eq!(cyc.place(&['a', 'b', 'c']), vec!['c', 'a', 'b']);
    }

    #[test]
    fn koszul_length_mismatch() {
        assert!(koszul_sign(&Permutation::identity(3), &[1, 1]).is_err());
    }

    #[test]
    fn unshuffle_counts() {
        assert_eq!(unshuffles(1, 2).unwrap().len(), 2);
        let u23 = unshuffles(2, 3).unwrap();
        let imgs: Vec<_> = u23.iter().map(|p| p.images().to_vec()).collect();
        assert_eq!(imgs, vec![vec![0, 1, 2], vec![0, 2, 1], vec![1, 2, 0]]);
        assert_eq!(unshuffles(3, 3).unwrap(), vec![Permutation::identity(3)]);
        assert!(unshuffles(0, 3).is_err());
        assert!(unshuffles(4, 3).is_err());
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Permutation::new(vec![0, 0, 1]).is_err());
        assert!(Permutation::new(vec![0, 3]).is_err());
    }

    #[test]
    fn sort_sign() {
        let mut v = vec![2, 0, 1];
        assert_eq!(sort_with_sign(&mut v), Some(1));
        assert_eq!(v, vec![0, 1, 2]);
        let mut w = vec![1, 0];
        assert_eq!(sort_with_sign(&mut w), Some(-1));
        assert_eq!(sort_with_sign(&mut vec![1, 1]), None);
    }

    /// Multiplicativity over every σ, τ with k ≤ 4 and degrees in {0,1,2}:
    /// placing by τ and then by σ is placing by σ∘τ.
    #[test]
    fn koszul_multiplicative_exhaustive() {
        for k in 1..=4 {
            let perms = all_permutations(k);
            let mut degree_vectors = vec![vec![]];
            for _ in 0..k {
                degree_vectors = degree_vectors
                    .into_iter()
                    .flat_map(|v: Vec<i32>| (0..3).map(move |d| [v.clone(), vec![d]].concat()))
                    .collect();
            }
            for d in &degree_vectors {
                for sigma in &perms {
                    for tau in &perms {
                        let composite = sigma.compose(tau).unwrap();
                        let permuted = tau.place(d);
                        let lhs = koszul_sign(&composite, d).unwrap();
                        let rhs = koszul_sign(sigma, &permuted).unwrap() * koszul_sign(tau, d).unwrap();
                        assert_eq!(lhs, rhs, "σ={sigma:?} τ={tau:?} d={d:?}");
                    }
                }
            }
        }
    }
}
