//! Sparse multivariate polynomials over [`Rational`].
//!
//! A [`Poly`] lives in the function ring of the base model `R^n` with
//! coordinates `q1..qn`. Variable indices are 0-based in the API; `Display`
//! prints them 1-based to match the usual `q1, q2, ...` naming.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

pub type Exponents = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    num_vars: usize,
    terms: BTreeMap<Exponents, Rational>,
}

/// Wire form of one monomial: `{"exponents": [..], "coeff": "p/q"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub exponents: Vec<u32>,
    pub coeff: Rational,
}

impl Poly {
    pub fn zero(num_vars: usize) -> Self {
        Poly {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(num_vars: usize, c: Rational) -> Self {
        let mut p = Poly::zero(num_vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; num_vars], c);
        }
        p
    }

    pub fn one(num_vars: usize) -> Self {
        Poly::constant(num_vars, Rational::one())
    }

    pub fn from_int(num_vars: usize, c: i64) -> Self {
        Poly::constant(num_vars, Rational::from_int(c))
    }

    /// The coordinate function `q_{i+1}`.
    pub fn var(num_vars: usize, i: usize) -> Self {
        assert!(i < num_vars, "variable index {i} out of range for {num_vars} vars");
        let mut e = vec![0; num_vars];
        e[i] = 1;
        Poly::monomial(e, Rational::one())
    }

    pub fn monomial(exponents: Exponents, coeff: Rational) -> Self {
        let num_vars = exponents.len();
        let mut p = Poly::zero(num_vars);
        if !coeff.is_zero() {
            p.terms.insert(exponents, coeff);
        }
        p
    }

    pub fn from_terms(num_vars: usize, terms: impl IntoIterator<Item = (Exponents, Rational)>) -> Result<Self> {
        let mut p = Poly::zero(num_vars);
        for (e, c) in terms {
            if e.len() != num_vars {
                return Err(Error::structural(format!(
                    "exponent vector of length {} in a polynomial of {num_vars} variables",
                    e.len()
                )));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// The constant term.
    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&vec![0; self.num_vars])
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    fn add_term(&mut self, e: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &Poly) -> Result<()> {
        if self.num_vars != other.num_vars {
            return Err(Error::structural(format!(
                "polynomials over {} and {} variables",
                self.num_vars, other.num_vars
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_same(other)?;
        let mut out = Poly::zero(self.num_vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.num_vars);
        }
        Poly {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// `∂/∂q_{i+1}`.
    pub fn try_partial(&self, i: usize) -> Result<Poly> {
        if i >= self.num_vars {
            return Err(Error::structural(format!(
                "partial derivative index {i} out of range for {} variables",
                self.num_vars
            )));
        }
        let mut out = Poly::zero(self.num_vars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            let k = e2[i];
            e2[i] -= 1;
            out.add_term(e2, c * &Rational::from_int(k as i64));
        }
        Ok(out)
    }

    pub fn partial(&self, i: usize) -> Poly {
        self.try_partial(i).expect("partial derivative index in range")
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.num_vars {
            return Err(Error::structural(format!(
                "evaluation point of dimension {} for {} variables",
                point.len(),
                self.num_vars
            )));
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                t *= &x.pow(k);
            }
            acc += &t;
        }
        Ok(acc)
    }

    pub fn to_records(&self) -> Vec<TermRecord> {
        self.terms
            .iter()
            .map(|(e, c)| TermRecord {
                exponents: e.clone(),
                coeff: c.clone(),
            })
            .collect()
    }

    pub fn from_records(num_vars: usize, records: &[TermRecord]) -> Result<Poly> {
        Poly::from_terms(num_vars, records.iter().map(|r| (r.exponents.clone(), r.coeff.clone())))
    }

    /// A random polynomial of total degree `<= max_degree` with small integer
    /// coefficients in `[-bound, bound]`; each monomial is kept with
    /// probability `density`.
    pub fn random<R: Rng + ?Sized>(num_vars: usize, max_degree: u32, bound: i64, density: f64, rng: &mut R) -> Poly {
        let mut p = Poly::zero(num_vars);
        for e in monomials_up_to(num_vars, max_degree) {
            if rng.gen_bool(density) {
                let c = rng.gen_range(-bound..=bound);
                p.add_term(e, Rational::from_int(c));
            }
        }
        p
    }
}

/// All exponent vectors of total degree `<= max_degree`, in lexicographic order.
pub fn monomials_up_to(num_vars: usize, max_degree: u32) -> Vec<Exponents> {
    fn rec(prefix: &mut Vec<u32>, left: usize, budget: u32, out: &mut Vec<Exponents>) {
        if left == 0 {
            out.push(prefix.clone());
            return;
        }
        for k in 0..=budget {
            prefix.push(k);
            rec(prefix, left - 1, budget - k, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), num_vars, max_degree, &mut out);
    out
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).expect("polynomials share num_vars")
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.try_sub(rhs).expect("polynomials share num_vars")
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).expect("polynomials share num_vars")
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("q{}", i + 1) } else { format!("q{}^{}", i + 1, k) })
                .collect();
            if mono.is_empty() {
                write!(f, "{abs:?}")?;
            } else if abs.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{abs:?}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(i: usize) -> Poly {
        Poly::var(2, i)
    }

    #[test]
    fn additive_inverse_cancels() {
        assert!((&q(0) + &(-&q(0))).is_zero());
    }

    #[test]
    fn first_order_partial() {
        assert_eq!((&q(0) * &q(1)).partial(0), q(1));
    }

    #[test]
    fn difference_of_squares() {
        let one = Poly::one(2);
        let lhs = &(&q(0) + &one) * &(&q(0) - &one);
        let expected = Poly::from_terms(2, [(vec![2, 0], Rational::one()), (vec![0, 0], Rational::from_int(-1))]).unwrap();
        assert_eq!(lhs, expected);
        assert_eq!(lhs.to_string(), "q1^2 - 1");
    }

    #[test]
    fn mismatched_vars_is_structural() {
        let a = Poly::var(2, 0);
        let b = Poly::var(3, 0);
        assert!(matches!(a.try_add(&b), Err(Error::Structural(_))));
        assert!(matches!(a.try_mul(&b), Err(Error::Structural(_))));
        assert!(a.try_partial(2).is_err());
    }

    #[test]
    fn eval_matches_expansion() {
        let p = &(&q(0) * &q(0)) - &q(1);
        let v = p.eval(&[Rational::from_int(3), Rational::from_int(2)]).unwrap();
        assert_eq!(v, Rational::from_int(7));
    }

    #[test]
    fn monomial_enumeration_counts() {
        // binomial(n + d, d)
        assert_eq!(monomials_up_to(3, 2).len(), 10);
        assert_eq!(monomials_up_to(2, 3).len(), 10);
    }
}
