//! The cochain complex of `TM` with coefficients in a 2-term representation
//! up to homotopy, abelian extensions built from its 2-cocycles, and the
//! isomorphisms that relate them.
//!
//! A `k`-cochain is a pair `(ϖ_1, ϖ_2)` of an `E_0`-valued `k`-form and an
//! `E_{−1}`-valued `(k+1)`-form. The differential is
//!
//! ```text
//! D(ϖ_1, ϖ_2) = (d_∇ϖ_1 + (−1)^{k+1} ∂∘ϖ_2,  d_∇ϖ_2 + (−1)^{k+1} ω∧ϖ_1)
//! ```
//!
//! with `d_∇ϖ = dϖ + Γ∧ϖ`. On a 2-cochain `(c_2, c_3)` this reads
//! `(d_∇c_2 − ∂c_3, d_∇c_3 − ω∧c_2)`.

mod extension;
mod nq;

pub use extension::{
    coboundary_iso, connection_change_iso, ExtensionData, SectionMorphism, Section,
};
pub use nq::{homological_check, AlgElem, GradedAlgebra, NqReport, QOperator};

use rand::Rng;

use crate::error::{Error, Result};
use crate::forms::{MatForm, PolyForm, PolyVectorField};
use crate::linalg::PMat;
use crate::poly::Poly;
use crate::rep::{form_witness, Level, RepUH2};
use crate::report::Check;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    k: usize,
    part0: MatForm,
    part1: MatForm,
}

impl Cochain {
    pub fn new(k: usize, part0: MatForm, part1: MatForm) -> Result<Self> {
        if part0.degree() != k || part1.degree() != k + 1 || part0.cols() != 1 || part1.cols() != 1 {
            return Err(Error::structural(format!(
                "a {k}-cochain needs a {k}-form and a {}-form, both vector-valued",
                k + 1
            )));
        }
        if part0.n() != part1.n() {
            return Err(Error::structural("cochain parts over different bases"));
        }
        Ok(Cochain { k, part0, part1 })
    }

    pub fn zero(rep: &RepUH2, k: usize) -> Self {
        Cochain {
            k,
            part0: MatForm::zero(rep.n(), k, rep.r0(), 1),
            part1: MatForm::zero(rep.n(), k + 1, rep.r1(), 1),
        }
    }

    /// Random coefficients of degree `<= max_degree` in every component.
    pub fn random<R: Rng + ?Sized>(rep: &RepUH2, k: usize, max_degree: u32, rng: &mut R) -> Self {
        let n = rep.n();
        let mut col = |r: usize, deg: usize| {
            let comps = (0..r).map(|_| PolyForm::random(n, deg, max_degree, rng)).collect();
            MatForm::from_column(n, deg, comps).expect("uniform degree")
        };
        let part0 = col(rep.r0(), k);
        let part1 = col(rep.r1(), k + 1);
        Cochain { k, part0, part1 }
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn part0(&self) -> &MatForm {
        &self.part0
    }

    pub fn part1(&self) -> &MatForm {
        &self.part1
    }

    pub fn is_zero(&self) -> bool {
        self.part0.is_zero() && self.part1.is_zero()
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        Cochain {
            k: self.k,
            part0: self.part0.add(&other.part0),
            part1: self.part1.add(&other.part1),
        }
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Cochain {
        Cochain {
            k: self.k,
            part0: self.part0.neg(),
            part1: self.part1.neg(),
        }
    }

    fn fits(&self, rep: &RepUH2) -> Result<()> {
        if self.part0.n() != rep.n() || self.part0.rows() != rep.r0() || self.part1.rows() != rep.r1() {
            return Err(Error::structural(format!(
                "cochain with ranks ({}, {}) over R^{} does not fit a representation with ranks ({}, {}) over R^{}",
                self.part0.rows(),
                self.part1.rows(),
                self.part0.n(),
                rep.r0(),
                rep.r1(),
                rep.n()
            )));
        }
        Ok(())
    }
}

/// `d_∇ϖ = dϖ + Γ∧ϖ` for a form valued in the given level.
pub fn d_nabla(rep: &RepUH2, level: Level, w: &MatForm) -> MatForm {
    w.d().add(&rep.connection_form(level).wedge(w))
}

/// The differential `D` on `k`-cochains.
pub fn differential(rep: &RepUH2, c: &Cochain) -> Result<Cochain> {
    c.fits(rep)?;
    let sign = if c.k % 2 == 0 { -1 } else { 1 };
    let bd = MatForm::from_pmat(rep.boundary());
    let signed = |m: MatForm| if sign > 0 { m } else { m.neg() };
    let part0 = d_nabla(rep, Level::Zero, &c.part0).add(&signed(bd.wedge(&c.part1)));
    let part1 = d_nabla(rep, Level::MinusOne, &c.part1).add(&signed(rep.omega().wedge(&c.part0)));
    Ok(Cochain {
        k: c.k + 1,
        part0,
        part1,
    })
}

/// The two cocycle conditions on a 2-cochain `(c_2, c_3)`:
/// `d_∇c_2 − ∂c_3 = 0` and `d_∇c_3 − ω∧c_2 = 0`.
pub fn is_cocycle(rep: &RepUH2, c: &Cochain) -> Result<Vec<Check>> {
    if c.k != 2 {
        return Err(Error::structural(format!("cocycle check needs a 2-cochain, got degree {}", c.k)));
    }
    let dc = differential(rep, c)?;
    Ok(vec![
        Check::from_witness("d_nabla_c2_minus_boundary_c3", form_witness(&dc.part0)),
        Check::from_witness("d_nabla_c3_minus_omega_c2", form_witness(&dc.part1)),
    ])
}

/// The 2-cochain of a 3-form `H` over the coadjoint representation of
/// `gamma`: `c_2(X, Y) = i_{X∧Y}H` read as a section of `T*M`, and
/// `c_3 = d_∇c_2`.
pub fn courant_cocycle(h: &PolyForm, gamma: Vec<PMat>) -> Result<(RepUH2, Cochain)> {
    if h.degree() != 3 {
        return Err(Error::structural(format!("expected a 3-form, got degree {}", h.degree())));
    }
    let n = h.n();
    let rep = RepUH2::coadjoint(n, gamma)?;
    // c2(X,Y)^a = H(X, Y, ∂_a) = (i_{∂_a} H)(X, Y)
    let comps = (0..n).map(|a| h.interior(&PolyVectorField::coordinate(n, a))).collect();
    let c2 = MatForm::from_column(n, 2, comps)?;
    let c3 = d_nabla(&rep, Level::MinusOne, &c2);
    let c = Cochain::new(2, c2, c3)?;
    Ok((rep, c))
}

/// A primitive of a `k`-cocycle over a representation with `∂ = Id`:
/// `(0, (−1)^k ϖ_1)`, checked against `D` before it is returned.
pub fn trivialize(rep: &RepUH2, c: &Cochain) -> Result<Cochain> {
    c.fits(rep)?;
    if c.k == 0 {
        return Err(Error::validation("0-cochains have no primitive", None));
    }
    if rep.r0() != rep.r1() || *rep.boundary() != PMat::identity(rep.n(), rep.r0()) {
        return Err(Error::validation(
            "trivialization needs the boundary to be the identity",
            Some(format!("{:?}", rep.boundary())),
        ));
    }
    let dc = differential(rep, c)?;
    if !dc.is_zero() {
        let w = form_witness(&dc.part0).or_else(|| form_witness(&dc.part1));
        return Err(Error::validation("input is not a cocycle", w));
    }
    let p = if c.k % 2 == 0 { c.part0.clone() } else { c.part0.neg() };
    let primitive = Cochain {
        k: c.k - 1,
        part0: MatForm::zero(rep.n(), c.k - 1, rep.r0(), 1),
        part1: p,
    };
    let back = differential(rep, &primitive)?;
    if back != *c {
        return Err(Error::Internal("primitive does not reproduce the cocycle".into()));
    }
    Ok(primitive)
}

/// Coordinate functions and constants used to scale basis probes.
pub(crate) fn probe_coefficients(n: usize) -> Vec<(String, Poly)> {
    let mut out = vec![("1".to_string(), Poly::one(n))];
    out.extend((0..n).map(|j| (format!("q{}", j + 1), Poly::var(n, j))));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::random_connection;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn vol(f: Poly) -> PolyForm {
        PolyForm::monomial(f, &[0, 1, 2]).unwrap()
    }

    fn fields(n: usize) -> Vec<PolyVectorField> {
        (0..n).map(|i| PolyVectorField::coordinate(n, i)).collect()
    }

    #[test]
    fn flat_constant_cochain() {
        let n = 2;
        let rep = RepUH2::flat(PMat::identity(n, 1));
        let p0 = MatForm::from_column(n, 1, vec![PolyForm::basis(n, &[0])]).unwrap();
        let p1 = MatForm::from_column(n, 2, vec![PolyForm::basis(n, &[0, 1])]).unwrap();
        let c = Cochain::new(1, p0, p1.clone()).unwrap();
        let dc = differential(&rep, &c).unwrap();
        // k = 1: sign +, part0 = ∂∘part1
        assert_eq!(dc.part0(), &p1);
        assert!(dc.part1().is_zero());
    }

    #[test]
    fn d_squared_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..3 {
            let rep = RepUH2::coadjoint(2, random_connection(2, 2, 1, &mut rng)).unwrap();
            for k in 0..=1 {
                let c = Cochain::random(&rep, k, 2, &mut rng);
                let ddc = differential(&rep, &differential(&rep, &c).unwrap()).unwrap();
                assert!(ddc.is_zero(), "k={k}");
            }
        }
    }

    #[test]
    fn zero_is_cocycle() {
        let rep = RepUH2::flat(PMat::identity(3, 3));
        assert!(is_cocycle(&rep, &Cochain::zero(&rep, 2)).unwrap().iter().all(|c| c.passed));
    }

    #[test]
    fn courant_cocycle_examples() {
        let n = 3;
        let flat = vec![PMat::zeros(n, n, n); n];
        let (rep, c) = courant_cocycle(&vol(Poly::one(n)), flat.clone()).unwrap();
        let f = fields(n);
        let v = c.part0().eval_vec(&[f[0].clone(), f[1].clone()]).unwrap();
        assert_eq!(v, vec![Poly::zero(n), Poly::zero(n), Poly::one(n)]);
        assert!(c.part1().is_zero());
        assert!(is_cocycle(&rep, &c).unwrap().iter().all(|c| c.passed));

        let (rep, c) = courant_cocycle(&vol(Poly::var(n, 0)), flat).unwrap();
        let v = c.part1().eval_vec(&f).unwrap();
        assert_eq!(v, vec![Poly::one(n), Poly::zero(n), Poly::zero(n)]);
        assert!(is_cocycle(&rep, &c).unwrap().iter().all(|c| c.passed));

        let zero = PolyForm::zero(n, 3);
        let (_, c) = courant_cocycle(&zero, vec![PMat::zeros(n, n, n); n]).unwrap();
        assert!(c.is_zero());
    }

    #[test]
    fn nonconstant_c2_without_c3_fails() {
        let n = 3;
        let rep = RepUH2::flat(PMat::identity(n, 1));
        let c2 = MatForm::from_column(n, 2, vec![PolyForm::basis(n, &[0, 1])]).unwrap();
        let ok = Cochain::new(2, c2, MatForm::zero(n, 3, 1, 1)).unwrap();
        assert!(is_cocycle(&rep, &ok).unwrap().iter().all(|c| c.passed));
        let c2 = MatForm::from_column(n, 2, vec![PolyForm::monomial(Poly::var(n, 2), &[0, 1]).unwrap()]).unwrap();
        let bad = Cochain::new(2, c2, MatForm::zero(n, 3, 1, 1)).unwrap();
        let r = is_cocycle(&rep, &bad).unwrap();
        assert!(!r[0].passed);
        assert!(r[0].witness.is_some());
    }

    #[test]
    fn trivialize_examples() {
        let n = 3;
        let flat = vec![PMat::zeros(n, n, n); n];
        let rep = RepUH2::coadjoint(n, flat.clone()).unwrap();
        assert!(trivialize(&rep, &Cochain::zero(&rep, 2)).unwrap().is_zero());
        for f in [Poly::one(n), Poly::var(n, 0)] {
            let (rep, c) = courant_cocycle(&vol(f), flat.clone()).unwrap();
            let p = trivialize(&rep, &c).unwrap();
            assert_eq!(p.part1(), c.part0());
            assert_eq!(differential(&rep, &p).unwrap(), c);
        }
    }

    #[test]
    fn trivialize_refuses_degenerate_boundary() {
        let n = 3;
        let rep = RepUH2::flat(PMat::zeros(n, 1, 1));
        assert!(matches!(
            trivialize(&rep, &Cochain::zero(&rep, 2)),
            Err(Error::Validation { .. })
        ));
    }

    #[test]
    fn rank_mismatch_is_structural() {
        let rep = RepUH2::flat(PMat::identity(2, 1));
        let other = RepUH2::flat(PMat::identity(2, 2));
        assert!(matches!(
            differential(&rep, &Cochain::zero(&other, 1)),
            Err(Error::Structural(_))
        ));
    }
}
