//! The exact Courant algebroid `TM ⊕ T*M` over `R^n` twisted by a 3-form.
//!
//! Pairing `⟨X+ξ, Y+η⟩ = ½(ξ(Y) + η(X))`, anchor `X+ξ ↦ X` and the
//! antisymmetric bracket
//!
//! ```text
//! ⟦X+ξ, Y+η⟧ = [X,Y] + L_X η − L_Y ξ + ½ d(ξ(Y) − η(X)) + i_{X∧Y} H
//! ```
//!
//! The Jacobiator equals `dT` with `T = ⅓(⟨⟦e1,e2⟧,e3⟩ + c.p.)` when `dH = 0`.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::ext::{ExtensionData, Section};
use crate::forms::{PolyForm, PolyVectorField};
use crate::lie2::TwoTerm;
use crate::poly::Poly;
use crate::rational::Rational;
use crate::report::Check;

#[derive(Clone, PartialEq, Eq)]
pub struct CourantSection {
    pub vf: PolyVectorField,
    pub form: PolyForm,
}

impl CourantSection {
    pub fn new(vf: PolyVectorField, form: PolyForm) -> Result<Self> {
        if form.degree() != 1 || form.n() != vf.n() {
            return Err(Error::structural("a section needs a vector field and a 1-form on the same R^n"));
        }
        Ok(CourantSection { vf, form })
    }

    pub fn zero(n: usize) -> Self {
        CourantSection {
            vf: PolyVectorField::zero(n),
            form: PolyForm::zero(n, 1),
        }
    }

    pub fn field(vf: PolyVectorField) -> Self {
        let n = vf.n();
        CourantSection {
            vf,
            form: PolyForm::zero(n, 1),
        }
    }

    pub fn one_form(form: PolyForm) -> Self {
        CourantSection {
            vf: PolyVectorField::zero(form.n()),
            form,
        }
    }

    pub fn n(&self) -> usize {
        self.vf.n()
    }

    pub fn add(&self, other: &CourantSection) -> CourantSection {
        CourantSection {
            vf: self.vf.add(&other.vf),
            form: self.form.add(&other.form),
        }
    }

    pub fn sub(&self, other: &CourantSection) -> CourantSection {
        CourantSection {
            vf: self.vf.sub(&other.vf),
            form: self.form.sub(&other.form),
        }
    }

    pub fn scale(&self, f: &Poly) -> CourantSection {
        CourantSection {
            vf: self.vf.scale(f),
            form: self.form.scale(f),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.vf.is_zero() && self.form.is_zero()
    }

    pub fn random<R: Rng + ?Sized>(n: usize, max_degree: u32, rng: &mut R) -> Self {
        CourantSection {
            vf: PolyVectorField::random(n, max_degree, rng),
            form: PolyForm::random(n, 1, max_degree, rng),
        }
    }

    /// The 1-form part as a section of `E_0 = T*M` in the basis `dq^a`.
    pub fn to_extension_section(&self) -> Section {
        let n = self.n();
        let fiber = (0..n).map(|a| self.form.coeff(&[a])).collect();
        Section::new(self.vf.clone(), fiber)
    }

    pub fn from_extension_section(s: &Section) -> Result<Self> {
        let n = s.field.n();
        if s.fiber.len() != n {
            return Err(Error::structural("fiber is not a 1-form on the base"));
        }
        let form = PolyForm::from_coeffs(n, 1, s.fiber.iter().enumerate().map(|(a, p)| (vec![a], p.clone())))?;
        CourantSection::new(s.field.clone(), form)
    }
}

impl fmt::Debug for CourantSection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}", self.vf, self.form)
    }
}

/// A 3-form with its closedness recomputed on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeveraForm {
    h: PolyForm,
    closed: bool,
}

impl SeveraForm {
    pub fn new(h: PolyForm) -> Result<Self> {
        if h.degree() != 3 {
            return Err(Error::structural(format!("expected a 3-form, got degree {}", h.degree())));
        }
        let closed = h.d().is_zero();
        Ok(SeveraForm { h, closed })
    }

    pub fn zero(n: usize) -> Self {
        SeveraForm {
            h: PolyForm::zero(n, 3),
            closed: true,
        }
    }

    pub fn h(&self) -> &PolyForm {
        &self.h
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }
}

fn same_base(n: usize, sections: &[&CourantSection]) -> Result<()> {
    if sections.iter().any(|s| s.n() != n) {
        return Err(Error::structural("sections over different bases"));
    }
    Ok(())
}

fn half() -> Rational {
    Rational::frac(1, 2)
}

pub fn pairing(e1: &CourantSection, e2: &CourantSection) -> Result<Poly> {
    same_base(e1.n(), &[e2])?;
    let a = e1.form.interior(&e2.vf).as_function();
    let b = e2.form.interior(&e1.vf).as_function();
    Ok((&a + &b).scale(&half()))
}

pub fn courant_bracket(e1: &CourantSection, e2: &CourantSection, s: &SeveraForm) -> Result<CourantSection> {
    same_base(s.h.n(), &[e1, e2])?;
    let (x, xi) = (&e1.vf, &e1.form);
    let (y, eta) = (&e2.vf, &e2.form);
    let f = &xi.interior(y).as_function() - &eta.interior(x).as_function();
    let form = eta
        .lie_derivative(x)
        .sub(&xi.lie_derivative(y))
        .add(&PolyForm::function(f).d().scale_q(&half()))
        .add(&s.h.try_interior_many(&[x.clone(), y.clone()])?);
    Ok(CourantSection {
        vf: x.bracket(y),
        form,
    })
}

/// `T(e1, e2, e3) = ⅓(⟨⟦e1,e2⟧, e3⟩ + c.p.)`.
pub fn jacobiator_t(e1: &CourantSection, e2: &CourantSection, e3: &CourantSection, s: &SeveraForm) -> Result<Poly> {
    let mut acc = Poly::zero(s.h.n());
    for (a, b, c) in [(e1, e2, e3), (e2, e3, e1), (e3, e1, e2)] {
        acc = &acc + &pairing(&courant_bracket(a, b, s)?, c)?;
    }
    Ok(acc.scale(&Rational::frac(1, 3)))
}

/// `⟦⟦e1,e2⟧,e3⟧ + c.p. − dT(e1,e2,e3)`.
pub fn jacobi_residual(
    e1: &CourantSection,
    e2: &CourantSection,
    e3: &CourantSection,
    s: &SeveraForm,
) -> Result<CourantSection> {
    let mut jac = CourantSection::zero(s.h.n());
    for (a, b, c) in [(e1, e2, e3), (e2, e3, e1), (e3, e1, e2)] {
        jac = jac.add(&courant_bracket(&courant_bracket(a, b, s)?, c, s)?);
    }
    let dt = PolyForm::function(jacobiator_t(e1, e2, e3, s)?).d();
    Ok(jac.sub(&CourantSection::one_form(dt)))
}

pub fn check_jacobi_defect(e1: &CourantSection, e2: &CourantSection, e3: &CourantSection, s: &SeveraForm) -> Result<Check> {
    let r = jacobi_residual(e1, e2, e3, s)?;
    Ok(if r.is_zero() {
        Check::pass("jacobi_defect")
    } else {
        Check::fail(
            "jacobi_defect",
            format!("on ({e1:?}), ({e2:?}), ({e3:?}) residual {r:?}"),
        )
    })
}

/// Constant basis sections `∂_i` and `dq^i`, labelled.
pub fn basis_sections(n: usize) -> Vec<(String, CourantSection)> {
    let mut out: Vec<(String, CourantSection)> = (0..n)
        .map(|i| (format!("d/dq{}", i + 1), CourantSection::field(PolyVectorField::coordinate(n, i))))
        .collect();
    out.extend((0..n).map(|i| (format!("dq{}", i + 1), CourantSection::one_form(PolyForm::basis(n, &[i])))));
    out
}

/// First basis triple (increasing order) with a nonzero Jacobi residual.
pub fn find_residual_witness(s: &SeveraForm) -> Result<Option<(String, CourantSection)>> {
    let b = basis_sections(s.h.n());
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            for k in j + 1..b.len() {
                let r = jacobi_residual(&b[i].1, &b[j].1, &b[k].1, s)?;
                if !r.is_zero() {
                    return Ok(Some((format!("({}, {}, {})", b[i].0, b[j].0, b[k].0), r)));
                }
            }
        }
    }
    Ok(None)
}

/// `l_2(e1, e2) − ⟦e1, e2⟧` for an extension over the coadjoint
/// representation, with 1-forms read as sections of `E_0 = T*M`.
pub fn compare_with_extension(
    e: &ExtensionData,
    e1: &CourantSection,
    e2: &CourantSection,
    s: &SeveraForm,
) -> Result<CourantSection> {
    if e.rep().r0() != e.n() || e1.n() != e.n() {
        return Err(Error::structural("extension is not over the coadjoint representation of this base"));
    }
    let l2 = e.l2_00(&e1.to_extension_section(), &e2.to_extension_section());
    Ok(CourantSection::from_extension_section(&l2)?.sub(&courant_bracket(e1, e2, s)?))
}
