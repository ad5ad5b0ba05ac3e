//! The degree-1 vector field of an extension, acting on the graded algebra
//! of functions on `T[1]M ⊕ E_0[1] ⊕ E_{−1}[2]`.
//!
//! Generators are the coordinates `q^i` (degree 0), `x^i` dual to `∂_i` and
//! `y^a` dual to `e_a` (degree 1), and `z^b` dual to `f_b` (degree 2).
//! Writing `ξ^α` for the degree-1 generators and `E_α` for the dual basis of
//! `TM ⊕ E_0`, the vector field is
//!
//! ```text
//! Q(g)   = Σ_i ∂_i g x^i
//! Q(ξ^γ) = −Σ_{α<β} l_2(E_α, E_β)^γ ξ^α ξ^β + Σ_b (l_1 f_b)^γ z^b
//! Q(z^c) = −Σ_{α,b} l_2(E_α, f_b)^c ξ^α z^b + Σ_{α<β<δ} l_3(E_α, E_β, E_δ)^c ξ^α ξ^β ξ^δ
//! ```
//!
//! extended to products as a degree-1 derivation. `Q² = 0` holds exactly
//! when the brackets form a split Lie 2-algebroid.

use std::collections::BTreeMap;
use std::fmt;

use super::extension::{ExtensionData, Section};
use crate::forms::PolyVectorField;
use crate::lie2::TwoTerm;
use crate::linalg::pvec_zero;
use crate::poly::Poly;
use crate::report::Check;

/// Odd generators as a bitmask, even generators by exponent.
type Monomial = (u64, Vec<u32>);

/// Shape of the algebra: `num_vars` coordinates, `n_odd` degree-1 and
/// `n_even` degree-2 generators. The first `num_vars` odd generators are the
/// `x^i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GradedAlgebra {
    pub num_vars: usize,
    pub n_odd: usize,
    pub n_even: usize,
}

/// An element of the graded algebra with polynomial coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgElem {
    alg: GradedAlgebra,
    terms: BTreeMap<Monomial, Poly>,
}

fn odd_merge_sign(a: u64, b: u64) -> Option<i32> {
    if a & b != 0 {
        return None;
    }
    // count pairs (i in a, j in b) with i > j
    let mut inv = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        inv += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    Some(if inv % 2 == 0 { 1 } else { -1 })
}

impl AlgElem {
    pub fn zero(alg: GradedAlgebra) -> Self {
        AlgElem {
            alg,
            terms: BTreeMap::new(),
        }
    }

    pub fn function(alg: GradedAlgebra, f: Poly) -> Self {
        let mut e = AlgElem::zero(alg);
        e.add_term((0, vec![0; alg.n_even]), f);
        e
    }

    pub fn odd(alg: GradedAlgebra, i: usize) -> Self {
        let mut e = AlgElem::zero(alg);
        e.add_term((1 << i, vec![0; alg.n_even]), Poly::one(alg.num_vars));
        e
    }

    pub fn even(alg: GradedAlgebra, c: usize) -> Self {
        let mut z = vec![0; alg.n_even];
        z[c] = 1;
        let mut e = AlgElem::zero(alg);
        e.add_term((0, z), Poly::one(alg.num_vars));
        e
    }

    fn add_term(&mut self, m: Monomial, c: Poly) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = &*v + &c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &AlgElem) -> AlgElem {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, f: &Poly) -> AlgElem {
        let mut out = AlgElem::zero(self.alg);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * f);
        }
        out
    }

    pub fn mul(&self, other: &AlgElem) -> AlgElem {
        let mut out = AlgElem::zero(self.alg);
        for ((ma, za), ca) in &self.terms {
            for ((mb, zb), cb) in &other.terms {
                let Some(s) = odd_merge_sign(*ma, *mb) else {
                    continue;
                };
                let z: Vec<u32> = za.iter().zip(zb).map(|(a, b)| a + b).collect();
                let c = ca * cb;
                out.add_term((ma | mb, z), if s > 0 { c } else { -c });
            }
        }
        out
    }

    /// Coefficient of the monomial with the given odd and even generators.
    pub fn coefficient(&self, odd: &[usize], even: &[u32]) -> Poly {
        let mask = odd.iter().fold(0u64, |m, &i| m | (1 << i));
        let mut sorted = odd.to_vec();
        let sign = crate::perm::sort_with_sign(&mut sorted).unwrap_or(0);
        let c = self
            .terms
            .get(&(mask, even.to_vec()))
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.alg.num_vars));
        if sign < 0 {
            -c
        } else if sign == 0 {
            Poly::zero(self.alg.num_vars)
        } else {
            c
        }
    }

    /// The part with exactly `odd_x` generators among the `x^i`, `odd_y`
    /// among the rest, and total even degree `even`.
    pub fn component(&self, odd_x: u32, odd_y: u32, even: u32) -> AlgElem {
        let xmask = (1u64 << self.alg.num_vars) - 1;
        let mut out = AlgElem::zero(self.alg);
        for ((m, z), c) in &self.terms {
            if (m & xmask).count_ones() == odd_x
                && (m & !xmask).count_ones() == odd_y
                && z.iter().sum::<u32>() == even
            {
                out.add_term((*m, z.clone()), c.clone());
            }
        }
        out
    }

    fn gen_name(&self, i: usize) -> String {
        if i < self.alg.num_vars {
            format!("x{}", i + 1)
        } else {
            format!("y{}", i - self.alg.num_vars + 1)
        }
    }
}

impl fmt::Debug for AlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((m, z), c)| {
                let mut gens: Vec<String> = (0..self.alg.n_odd)
                    .filter(|i| m & (1 << i) != 0)
                    .map(|i| self.gen_name(i))
                    .collect();
                for (b, e) in z.iter().enumerate() {
                    match e {
                        0 => {}
                        1 => gens.push(format!("z{}", b + 1)),
                        _ => gens.push(format!("z{}^{e}", b + 1)),
                    }
                }
                format!("({c})*{}", gens.join("*"))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Images of the generators under the degree-1 vector field.
#[derive(Clone, Debug)]
pub struct QOperator {
    alg: GradedAlgebra,
    odd_images: Vec<AlgElem>,
    even_images: Vec<AlgElem>,
}

impl QOperator {
    pub fn from_extension(e: &ExtensionData) -> Self {
        let (n, r0, r1) = (e.n(), e.rep().r0(), e.rep().r1());
        let alg = GradedAlgebra {
            num_vars: n,
            n_odd: n + r0,
            n_even: r1,
        };
        let basis0: Vec<Section> = (0..n + r0)
            .map(|a| {
                if a < n {
                    Section::new(PolyVectorField::coordinate(n, a), pvec_zero(n, r0))
                } else {
                    let mut u = pvec_zero(n, r0);
                    u[a - n] = Poly::one(n);
                    Section::new(PolyVectorField::zero(n), u)
                }
            })
            .collect();
        let basis1: Vec<Vec<Poly>> = (0..r1)
            .map(|b| {
                let mut m = pvec_zero(n, r1);
                m[b] = Poly::one(n);
                m
            })
            .collect();
        // component γ of a degree-0 section
        let comp = |s: &Section, g: usize| -> Poly {
            if g < n {
                s.field.comp(g).clone()
            } else {
                s.fiber[g - n].clone()
            }
        };
        let mono = |odd: &[usize], even: Option<usize>| -> Monomial {
            let mut z = vec![0; r1];
            if let Some(b) = even {
                z[b] = 1;
            }
            (odd.iter().fold(0u64, |m, &i| m | (1 << i)), z)
        };

        let mut odd_images = vec![AlgElem::zero(alg); n + r0];
        for a in 0..n + r0 {
            for b in a + 1..n + r0 {
                let l2 = e.l2_00(&basis0[a], &basis0[b]);
                for (g, img) in odd_images.iter_mut().enumerate() {
                    img.add_term(mono(&[a, b], None), -comp(&l2, g));
                }
            }
        }
        for (b, fb) in basis1.iter().enumerate() {
            let l1 = e.l1(fb);
            for (g, img) in odd_images.iter_mut().enumerate() {
                img.add_term(mono(&[], Some(b)), comp(&l1, g));
            }
        }

        let mut even_images = vec![AlgElem::zero(alg); r1];
        for (a, ea) in basis0.iter().enumerate() {
            for (b, fb) in basis1.iter().enumerate() {
                let l2 = e.l2_01(ea, fb);
                for (c, img) in even_images.iter_mut().enumerate() {
                    img.add_term(mono(&[a], Some(b)), -l2[c].clone());
                }
            }
        }
        for a in 0..n + r0 {
            for b in a + 1..n + r0 {
                for d in b + 1..n + r0 {
                    let l3 = e.l3(&basis0[a], &basis0[b], &basis0[d]);
                    for (c, img) in even_images.iter_mut().enumerate() {
                        img.add_term(mono(&[a, b, d], None), l3[c].clone());
                    }
                }
            }
        }
        QOperator {
            alg,
            odd_images,
            even_images,
        }
    }

    pub fn algebra(&self) -> GradedAlgebra {
        self.alg
    }

    /// `Q(ξ^γ)`; `γ < n` are the `x^i`.
    pub fn odd_image(&self, g: usize) -> &AlgElem {
        &self.odd_images[g]
    }

    pub fn even_image(&self, c: usize) -> &AlgElem {
        &self.even_images[c]
    }

    /// `Q` applied to an arbitrary element as a degree-1 derivation.
    pub fn apply(&self, e: &AlgElem) -> AlgElem {
        let alg = self.alg;
        let mut out = AlgElem::zero(alg);
        for ((m, z), c) in &e.terms {
            let mono = {
                let mut t = AlgElem::zero(alg);
                t.add_term((*m, z.clone()), Poly::one(alg.num_vars));
                t
            };
            // Q(c) · mono
            for i in 0..alg.num_vars {
                let dc = c.partial(i);
                if !dc.is_zero() {
                    out = out.add(&AlgElem::odd(alg, i).mul(&mono).scale(&dc));
                }
            }
            // c · Q(mono), odd generators first then even ones
            let odds: Vec<usize> = (0..alg.n_odd).filter(|i| m & (1 << i) != 0).collect();
            for (j, &g) in odds.iter().enumerate() {
                let left = odds[..j].iter().fold(0u64, |acc, &i| acc | (1 << i));
                let right = odds[j + 1..].iter().fold(0u64, |acc, &i| acc | (1 << i));
                let mut l = AlgElem::zero(alg);
                l.add_term((left, vec![0; alg.n_even]), Poly::one(alg.num_vars));
                let mut r = AlgElem::zero(alg);
                r.add_term((right, z.clone()), Poly::one(alg.num_vars));
                let sign = if j % 2 == 0 { Poly::one(alg.num_vars) } else { Poly::from_int(alg.num_vars, -1) };
                let t = l.mul(&self.odd_images[g]).mul(&r).scale(&(c * &sign));
                out = out.add(&t);
            }
            let odd_part = AlgElem {
                alg,
                terms: BTreeMap::from([((*m, vec![0; alg.n_even]), Poly::one(alg.num_vars))]),
            };
            let parity = if odds.len() % 2 == 0 { 1 } else { -1 };
            for (b, &eb) in z.iter().enumerate() {
                if eb == 0 {
                    continue;
                }
                let mut rest = z.clone();
                rest[b] -= 1;
                let mut r = AlgElem::zero(alg);
                r.add_term((0, rest), Poly::from_int(alg.num_vars, eb as i64 * parity));
                let t = odd_part.mul(&self.even_images[b]).mul(&r).scale(c);
                out = out.add(&t);
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct NqReport {
    pub q: QOperator,
    /// `Q² = 0` on each generator.
    pub checks: Vec<Check>,
}

impl NqReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Builds `Q` from the brackets of `e` and checks `Q² = 0` on every
/// generator.
pub fn homological_check(e: &ExtensionData) -> NqReport {
    let q = QOperator::from_extension(e);
    let alg = q.alg;
    let mut checks = Vec::new();
    let square = |x: &AlgElem| q.apply(&q.apply(x));
    for i in 0..alg.num_vars {
        let r = square(&AlgElem::function(alg, Poly::var(alg.num_vars, i)));
        checks.push(verdict(format!("q{}", i + 1), &r));
    }
    for g in 0..alg.n_odd {
        let name = AlgElem::zero(alg).gen_name(g);
        checks.push(verdict(name, &square(&AlgElem::odd(alg, g))));
    }
    for c in 0..alg.n_even {
        checks.push(verdict(format!("z{}", c + 1), &square(&AlgElem::even(alg, c))));
    }
    NqReport { q, checks }
}

fn verdict(generator: String, r: &AlgElem) -> Check {
    if r.is_zero() {
        Check::pass(format!("q_squared_{generator}"))
    } else {
        let first = r.terms.iter().next().map(|(m, c)| {
            let mut t = AlgElem::zero(r.alg);
            t.add_term(m.clone(), c.clone());
            format!("{t:?}")
        });
        Check::fail(
            format!("q_squared_{generator}"),
            format!("Q^2({generator}) has term {}", first.unwrap_or_default()),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ext::{courant_cocycle, Cochain};
    use crate::forms::{MatForm, PolyForm};
    use crate::linalg::PMat;
    use crate::rep::{random_connection, RepUH2};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn flat(n: usize) -> Vec<PMat> {
        vec![PMat::zeros(n, n, n); n]
    }

    #[test]
    fn merge_sign() {
        assert_eq!(odd_merge_sign(0b01, 0b10), Some(1));
        assert_eq!(odd_merge_sign(0b10, 0b01), Some(-1));
        assert_eq!(odd_merge_sign(0b1, 0b1), None);
        assert_eq!(odd_merge_sign(0b110, 0b001), Some(1));
    }

    #[test]
    fn flat_semidirect_is_standard() {
        let n = 3;
        let e = ExtensionData::semidirect(&RepUH2::coadjoint(n, flat(n)).unwrap()).unwrap();
        let r = homological_check(&e);
        assert!(r.all_passed(), "{:?}", r.checks);
        let alg = r.q.algebra();
        for a in 0..n {
            assert_eq!(r.q.odd_image(n + a), &AlgElem::even(alg, a));
            assert!(r.q.odd_image(a).is_zero());
            assert!(r.q.even_image(a).is_zero());
        }
        let f = Poly::var(n, 0) * Poly::var(n, 1);
        let qf = r.q.apply(&AlgElem::function(alg, f));
        assert_eq!(qf.coefficient(&[0], &[0, 0, 0]), Poly::var(n, 1));
    }

    #[test]
    fn curved_and_twisted_pass() {
        let n = 2;
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..2 {
            let rep = RepUH2::coadjoint(n, random_connection(n, n, 1, &mut rng)).unwrap();
            let r = homological_check(&ExtensionData::semidirect(&rep).unwrap());
            assert!(r.all_passed(), "{:?}", r.checks);
        }
        let h = PolyForm::monomial(Poly::var(3, 0), &[0, 1, 2]).unwrap();
        let (rep, c) = courant_cocycle(&h, flat(3)).unwrap();
        let e = ExtensionData::extend(&rep, &c).unwrap();
        let r = homological_check(&e);
        assert!(r.all_passed(), "{:?}", r.checks);
        // the Λ²x part of Q(y^a) is −c2
        let c2_12 = e.c2(&PolyVectorField::coordinate(3, 0), &PolyVectorField::coordinate(3, 1));
        for a in 0..3 {
            assert_eq!(r.q.odd_image(3 + a).coefficient(&[0, 1], &[0, 0, 0]), -c2_12[a].clone());
        }
    }

    #[test]
    fn non_cocycle_fails_on_degree_one() {
        let n = 3;
        let rep = RepUH2::coadjoint(n, flat(n)).unwrap();
        let c2 = MatForm::from_column(
            n,
            2,
            vec![
                PolyForm::monomial(Poly::var(n, 2), &[0, 1]).unwrap(),
                PolyForm::zero(n, 2),
                PolyForm::zero(n, 2),
            ],
        )
        .unwrap();
        let c = Cochain::new(2, c2, MatForm::zero(n, 3, n, 1)).unwrap();
        let r = homological_check(&ExtensionData::new_unchecked(&rep, &c));
        let failed: Vec<&str> = r.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
        assert!(failed.iter().any(|f| f.starts_with("q_squared_y")), "{failed:?}");
    }
}
