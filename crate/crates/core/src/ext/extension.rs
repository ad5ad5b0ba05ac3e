//! Brackets of abelian extensions `TM ⊕ E_0 ⊕ E_{−1}` evaluated on
//! polynomial sections, and the morphisms between them.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{is_cocycle, probe_coefficients, Cochain};
use crate::error::{Error, Result};
use crate::forms::{MatForm, PolyVectorField};
use crate::lie2::{
    check_identities, check_morphism_maps, JacobiReport, MorphismMaps, MorphismReport, Probe, TupleMode, TwoTerm,
};
use crate::linalg::{pvec_add, pvec_is_zero, pvec_neg, pvec_scale, pvec_sub, pvec_zero, PVec};
use crate::poly::Poly;
use crate::rep::{Level, RepUH2};
use crate::report::Check;

/// A degree-0 section `X + u` of `TM ⊕ E_0`.
#[derive(Clone, PartialEq, Eq)]
pub struct Section {
    pub field: PolyVectorField,
    pub fiber: PVec,
}

impl Section {
    pub fn new(field: PolyVectorField, fiber: PVec) -> Self {
        Section { field, fiber }
    }

    pub fn scale(&self, f: &Poly) -> Section {
        Section {
            field: self.field.scale(f),
            fiber: pvec_scale(&self.fiber, f),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.field.is_zero() && pvec_is_zero(&self.fiber)
    }
}

impl fmt::Debug for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fib: Vec<String> = self.fiber.iter().map(|p| p.to_string()).collect();
        write!(f, "({}; [{}])", self.field, fib.join(", "))
    }
}

/// The 2-term L∞ structure on sections of `(TM ⊕ E_0) ⊕ E_{−1}` given by a
/// representation and a 2-cochain `(c_2, c_3)`:
///
/// * `ρ(X + u) = X`, `l_1(m) = ∂m`;
/// * `l_2(X + u, Y + v) = [X, Y] + ∇_X v − ∇_Y u + c_2(X, Y)`;
/// * `l_2(X + u, m) = ∇_X m`;
/// * `l_3(X + u, Y + v, Z + w) = c_3(X, Y, Z) + ω(X, Y)w + ω(Y, Z)u + ω(Z, X)v`.
///
/// With a zero cochain this is the semidirect product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionData {
    rep: RepUH2,
    cocycle: Cochain,
}

impl ExtensionData {
    pub fn semidirect(rep: &RepUH2) -> Result<Self> {
        ExtensionData::extend(rep, &Cochain::zero(rep, 2))
    }

    /// Rejects an invalid representation or a cochain that is not a cocycle,
    /// naming the failed condition.
    pub fn extend(rep: &RepUH2, c: &Cochain) -> Result<Self> {
        let report = rep.check();
        if let Some(bad) = report.checks.iter().find(|c| !c.passed) {
            return Err(Error::validation(
                format!("representation fails {}", bad.name),
                bad.witness.clone(),
            ));
        }
        if let Some(bad) = is_cocycle(rep, c)?.into_iter().find(|c| !c.passed) {
            return Err(Error::validation(format!("cochain fails {}", bad.name), bad.witness));
        }
        Ok(ExtensionData::new_unchecked(rep, c))
    }

    /// No validation beyond shapes; used to exhibit failures.
    pub fn new_unchecked(rep: &RepUH2, c: &Cochain) -> Self {
        ExtensionData {
            rep: rep.clone(),
            cocycle: c.clone(),
        }
    }

    pub fn rep(&self) -> &RepUH2 {
        &self.rep
    }

    pub fn cocycle(&self) -> &Cochain {
        &self.cocycle
    }

    pub fn n(&self) -> usize {
        self.rep.n()
    }

    pub fn anchor<'a>(&self, x: &'a Section) -> &'a PolyVectorField {
        &x.field
    }

    pub fn c2(&self, x: &PolyVectorField, y: &PolyVectorField) -> PVec {
        self.cocycle.part0().eval_vec(&[x.clone(), y.clone()]).expect("degree 2")
    }

    pub fn c3(&self, x: &PolyVectorField, y: &PolyVectorField, z: &PolyVectorField) -> PVec {
        self.cocycle
            .part1()
            .eval_vec(&[x.clone(), y.clone(), z.clone()])
            .expect("degree 3")
    }

    /// Probes `∂_i`, `e_a` and `f_b` times `1` and each coordinate, plus
    /// `randoms` seeded random sections of degree `<= 2` per level.
    pub fn probes(&self, seed: u64, randoms: usize) -> (Vec<Probe<Section>>, Vec<Probe<PVec>>) {
        let (n, r0, r1) = (self.n(), self.rep.r0(), self.rep.r1());
        let coeffs = probe_coefficients(n);
        let mut p0 = Vec::new();
        for i in 0..n {
            for (cl, c) in &coeffs {
                let s = Section::new(PolyVectorField::coordinate(n, i).scale(c), pvec_zero(n, r0));
                p0.push(Probe::new(format!("{cl}*d/dq{}", i + 1), s));
            }
        }
        let unit = |r: usize, a: usize, c: &Poly| {
            let mut v = pvec_zero(n, r);
            v[a] = c.clone();
            v
        };
        for a in 0..r0 {
            for (cl, c) in &coeffs {
                p0.push(Probe::new(
                    format!("{cl}*e{}", a + 1),
                    Section::new(PolyVectorField::zero(n), unit(r0, a, c)),
                ));
            }
        }
        let mut p1 = Vec::new();
        for b in 0..r1 {
            for (cl, c) in &coeffs {
                p1.push(Probe::new(format!("{cl}*f{}", b + 1), unit(r1, b, c)));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for t in 0..randoms {
            let field = PolyVectorField::random(n, 2, &mut rng);
            let fiber = (0..r0).map(|_| Poly::random(n, 2, 3, 0.4, &mut rng)).collect();
            p0.push(Probe::new(format!("random{}", t + 1), Section::new(field, fiber)));
            let m = (0..r1).map(|_| Poly::random(n, 2, 3, 0.4, &mut rng)).collect();
            p1.push(Probe::new(format!("random{}", t + 1), m));
        }
        (p0, p1)
    }

    /// The L∞ identities `k = 1..=4`, the Leibniz rule against each
    /// coordinate function, and function-linearity of `l_1` and `l_3`.
    pub fn check_l_infinity(&self, probes0: &[Probe<Section>], probes1: &[Probe<PVec>]) -> (JacobiReport, Vec<Check>) {
        let identities = check_identities(self, probes0, probes1, TupleMode::Combinations);
        let n = self.n();
        let fns: Vec<(String, Poly)> = (0..n).map(|j| (format!("q{}", j + 1), Poly::var(n, j))).collect();

        let mut leibniz = None;
        'outer: for a in probes0 {
            for (fl, f) in &fns {
                let xf = a.value.field.apply(f);
                for b in probes0 {
                    let lhs = self.l2_00(&a.value, &b.value.scale(f));
                    let rhs = self.add0(&self.l2_00(&a.value, &b.value).scale(f), &b.value.scale(&xf));
                    if lhs != rhs {
                        leibniz = Some(format!("l2({}, {fl}*{})", a.label, b.label));
                        break 'outer;
                    }
                }
                for m in probes1 {
                    let lhs = self.l2_01(&a.value, &pvec_scale(&m.value, f));
                    let rhs = pvec_add(&pvec_scale(&self.l2_01(&a.value, &m.value), f), &pvec_scale(&m.value, &xf));
                    if lhs != rhs {
                        leibniz = Some(format!("l2({}, {fl}*{})", a.label, m.label));
                        break 'outer;
                    }
                }
            }
        }

        let mut tensorial = None;
        'l1: for m in probes1 {
            for (fl, f) in &fns {
                if self.l1(&pvec_scale(&m.value, f)) != self.l1(&m.value).scale(f) {
                    tensorial = Some(format!("l1({fl}*{})", m.label));
                    break 'l1;
                }
            }
        }
        if tensorial.is_none() {
            let k = probes0.len().min(8);
            'l3: for a in &probes0[..k] {
                for b in &probes0[..k] {
                    for c in &probes0[..k] {
                        for (fl, f) in &fns {
                            let lhs = self.l3(&a.value.scale(f), &b.value, &c.value);
                            let rhs = pvec_scale(&self.l3(&a.value, &b.value, &c.value), f);
                            if lhs != rhs {
                                tensorial = Some(format!("l3({fl}*{}, {}, {})", a.label, b.label, c.label));
                                break 'l3;
                            }
                        }
                    }
                }
            }
        }
        (
            identities,
            vec![
                Check::from_witness("leibniz", leibniz),
                Check::from_witness("tensoriality", tensorial),
            ],
        )
    }
}

impl TwoTerm for ExtensionData {
    type V0 = Section;
    type V1 = PVec;

    fn zero0(&self) -> Section {
        Section::new(PolyVectorField::zero(self.n()), pvec_zero(self.n(), self.rep.r0()))
    }
    fn zero1(&self) -> PVec {
        pvec_zero(self.n(), self.rep.r1())
    }
    fn add0(&self, a: &Section, b: &Section) -> Section {
        Section::new(a.field.add(&b.field), pvec_add(&a.fiber, &b.fiber))
    }
    fn add1(&self, a: &PVec, b: &PVec) -> PVec {
        pvec_add(a, b)
    }
    fn neg0(&self, a: &Section) -> Section {
        Section::new(a.field.neg(), pvec_neg(&a.fiber))
    }
    fn neg1(&self, a: &PVec) -> PVec {
        pvec_neg(a)
    }
    fn is_zero0(&self, a: &Section) -> bool {
        a.is_zero()
    }
    fn is_zero1(&self, a: &PVec) -> bool {
        pvec_is_zero(a)
    }

    fn l1(&self, m: &PVec) -> Section {
        Section::new(PolyVectorField::zero(self.n()), self.rep.boundary().apply(m))
    }

    fn l2_00(&self, x: &Section, y: &Section) -> Section {
        let mut fiber = pvec_sub(
            &self.rep.nabla(Level::Zero, &x.field, &y.fiber),
            &self.rep.nabla(Level::Zero, &y.field, &x.fiber),
        );
        if !x.field.is_zero() && !y.field.is_zero() {
            fiber = pvec_add(&fiber, &self.c2(&x.field, &y.field));
        }
        Section::new(x.field.bracket(&y.field), fiber)
    }

    fn l2_01(&self, x: &Section, m: &PVec) -> PVec {
        self.rep.nabla(Level::MinusOne, &x.field, m)
    }

    fn l3(&self, x: &Section, y: &Section, z: &Section) -> PVec {
        let mut out = self.zero1();
        if !x.field.is_zero() && !y.field.is_zero() && !z.field.is_zero() {
            out = self.c3(&x.field, &y.field, &z.field);
        }
        for (a, b, c) in [(x, y, z), (y, z, x), (z, x, y)] {
            if !a.field.is_zero() && !b.field.is_zero() && !pvec_is_zero(&c.fiber) {
                out = pvec_add(&out, &self.rep.omega_apply(&a.field, &b.field, &c.fiber));
            }
        }
        out
    }
}

/// A morphism between extensions over the same representation ranks, with
/// identity base map and `f_1 = id`:
///
/// * `f_0(X + u) = X + u + e_1(X)`;
/// * `f_2(X + u, Y + v) = e_2(X, Y) + B(X)v − B(Y)u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionMorphism {
    /// `E_0`-valued 1-form.
    pub e1: MatForm,
    /// `E_{−1}`-valued 2-form.
    pub e2: MatForm,
    /// 1-form valued in maps `E_0 → E_{−1}`.
    pub b: MatForm,
}

impl SectionMorphism {
    pub fn identity(rep: &RepUH2) -> Self {
        let (n, r0, r1) = (rep.n(), rep.r0(), rep.r1());
        SectionMorphism {
            e1: MatForm::zero(n, 1, r0, 1),
            e2: MatForm::zero(n, 2, r1, 1),
            b: MatForm::zero(n, 1, r1, r0),
        }
    }

    /// The four morphism equations on the given probes.
    pub fn check(
        &self,
        src: &ExtensionData,
        dst: &ExtensionData,
        probes0: &[Probe<Section>],
        probes1: &[Probe<PVec>],
    ) -> MorphismReport {
        check_morphism_maps(self, src, dst, probes0, probes1, TupleMode::Combinations)
    }

    fn b_at(&self, x: &PolyVectorField) -> crate::linalg::PMat {
        self.b.eval(&[x.clone()]).expect("degree 1")
    }
}

impl MorphismMaps<ExtensionData, ExtensionData> for SectionMorphism {
    fn f0(&self, x: &Section) -> Section {
        let e = self.e1.eval_vec(&[x.field.clone()]).expect("degree 1");
        Section::new(x.field.clone(), pvec_add(&x.fiber, &e))
    }

    fn f1(&self, m: &PVec) -> PVec {
        m.clone()
    }

    fn f2(&self, x: &Section, y: &Section) -> PVec {
        let e = self.e2.eval_vec(&[x.field.clone(), y.field.clone()]).expect("degree 2");
        let bx = self.b_at(&x.field).apply(&y.fiber);
        let by = self.b_at(&y.field).apply(&x.fiber);
        pvec_add(&e, &pvec_sub(&bx, &by))
    }
}

/// The isomorphism `extend(R, c' + D e) → extend(R, c')` for a 1-cochain
/// `e = (e_1, e_2)`.
pub fn coboundary_iso(rep: &RepUH2, e: &Cochain) -> Result<SectionMorphism> {
    if e.degree() != 1 || e.part0().rows() != rep.r0() || e.part1().rows() != rep.r1() {
        return Err(Error::structural("coboundary isomorphism needs a 1-cochain of matching ranks"));
    }
    let mut f = SectionMorphism::identity(rep);
    f.e1 = e.part0().clone();
    f.e2 = e.part1().clone();
    Ok(f)
}

/// The isomorphism between the semidirect products of the coadjoint
/// representations of two connections: `f_0 = f_1 = id`, `B = Γ − Γ'`.
pub fn connection_change_iso(
    n: usize,
    gamma: Vec<crate::linalg::PMat>,
    gamma_prime: Vec<crate::linalg::PMat>,
) -> Result<(ExtensionData, ExtensionData, SectionMorphism)> {
    let src = ExtensionData::semidirect(&RepUH2::coadjoint(n, gamma)?)?;
    let dst = ExtensionData::semidirect(&RepUH2::coadjoint(n, gamma_prime)?)?;
    let mut f = SectionMorphism::identity(src.rep());
    f.b = src
        .rep()
        .connection_form(Level::Zero)
        .sub(&dst.rep().connection_form(Level::Zero));
    Ok((src, dst, f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ext::{courant_cocycle, trivialize};
    use crate::forms::PolyForm;
    use crate::linalg::PMat;
    use crate::rep::random_connection;

    fn flat(n: usize) -> Vec<PMat> {
        vec![PMat::zeros(n, n, n); n]
    }

    fn vol(f: Poly) -> PolyForm {
        PolyForm::monomial(f, &[0, 1, 2]).unwrap()
    }

    fn vf(n: usize, i: usize) -> Section {
        Section::new(PolyVectorField::coordinate(n, i), pvec_zero(n, n))
    }

    #[test]
    fn semidirect_examples() {
        let n = 3;
        let e = ExtensionData::semidirect(&RepUH2::coadjoint(n, flat(n)).unwrap()).unwrap();
        assert!(e.l2_00(&vf(n, 0), &vf(n, 1)).is_zero());
        let mut u = pvec_zero(n, n);
        u[1] = Poly::var(n, 0);
        let s = Section::new(PolyVectorField::zero(n), u);
        let mut dq2 = pvec_zero(n, n);
        dq2[1] = Poly::one(n);
        assert_eq!(e.l2_00(&vf(n, 0), &s).fiber, dq2);
        assert!(pvec_is_zero(&e.l3(&vf(n, 0), &vf(n, 1), &s)));
    }

    #[test]
    fn courant_extension_bracket() {
        let n = 3;
        let (rep, c) = courant_cocycle(&vol(Poly::one(n)), flat(n)).unwrap();
        let e = ExtensionData::extend(&rep, &c).unwrap();
        let b = e.l2_00(&vf(n, 0), &vf(n, 1));
        assert_eq!(b.fiber, vec![Poly::zero(n), Poly::zero(n), Poly::one(n)]);
        assert!(pvec_is_zero(&e.l3(&vf(n, 0), &vf(n, 1), &vf(n, 2))));
    }

    #[test]
    fn extension_identities_hold() {
        let n = 2;
        let rep = RepUH2::coadjoint(n, random_connection(n, n, 1, &mut ChaCha8Rng::seed_from_u64(4))).unwrap();
        let e = ExtensionData::semidirect(&rep).unwrap();
        let (p0, p1) = e.probes(1, 1);
        let (ids, extra) = e.check_l_infinity(&p0, &p1);
        assert!(ids.all_passed(), "{ids:?}");
        assert!(extra.iter().all(|c| c.passed), "{extra:?}");
    }

    #[test]
    fn non_cocycle_breaks_k3() {
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
        assert!(ExtensionData::extend(&rep, &c).is_err());
        let e = ExtensionData::new_unchecked(&rep, &c);
        let (p0, p1) = e.probes(0, 0);
        let (ids, _) = e.check_l_infinity(&p0, &p1);
        assert!(!ids.passed(3));
        assert!(ids.identities[2].witness.is_some());
    }

    #[test]
    fn extend_zero_is_semidirect() {
        let n = 2;
        let rep = RepUH2::coadjoint(n, random_connection(n, n, 1, &mut ChaCha8Rng::seed_from_u64(9))).unwrap();
        let a = ExtensionData::semidirect(&rep).unwrap();
        let b = ExtensionData::extend(&rep, &Cochain::zero(&rep, 2)).unwrap();
        let (p0, p1) = a.probes(2, 2);
        for x in &p0 {
            for y in &p0 {
                assert_eq!(a.l2_00(&x.value, &y.value), b.l2_00(&x.value, &y.value));
            }
            for m in &p1 {
                assert_eq!(a.l2_01(&x.value, &m.value), b.l2_01(&x.value, &m.value));
            }
        }
    }

    #[test]
    fn coboundary_iso_to_semidirect() {
        let n = 3;
        let (rep, c) = courant_cocycle(&vol(Poly::var(n, 0)), flat(n)).unwrap();
        let prim = trivialize(&rep, &c).unwrap();
        let f = coboundary_iso(&rep, &prim).unwrap();
        let src = ExtensionData::extend(&rep, &c).unwrap();
        let dst = ExtensionData::semidirect(&rep).unwrap();
        let (p0, p1) = src.probes(3, 1);
        let r = f.check(&src, &dst, &p0, &p1);
        assert!(r.all_passed(), "{r:?}");
        // the identity does not relate them
        let r = SectionMorphism::identity(&rep).check(&src, &dst, &p0, &p1);
        assert!(!r.all_passed());
    }

    #[test]
    fn coboundary_iso_zero_is_identity() {
        let rep = RepUH2::coadjoint(2, flat(2)).unwrap();
        let f = coboundary_iso(&rep, &Cochain::zero(&rep, 1)).unwrap();
        assert_eq!(f, SectionMorphism::identity(&rep));
    }

    #[test]
    fn opposite_coboundaries_invert() {
        let n = 2;
        let rep = RepUH2::coadjoint(n, flat(n)).unwrap();
        let e = Cochain::random(&rep, 1, 1, &mut ChaCha8Rng::seed_from_u64(5));
        let f = coboundary_iso(&rep, &e).unwrap();
        let g = coboundary_iso(&rep, &e.neg()).unwrap();
        let ext = ExtensionData::semidirect(&rep).unwrap();
        let (p0, p1) = ext.probes(6, 2);
        for x in &p0 {
            let y = <SectionMorphism as MorphismMaps<ExtensionData, ExtensionData>>::f0(&f, &x.value);
            assert_eq!(g.f0(&y), x.value);
        }
        for m in &p1 {
            assert_eq!(g.f1(&f.f1(&m.value)), m.value);
        }
    }

    #[test]
    fn connection_change_passes() {
        let n = 2;
        let mut g1 = flat(n);
        g1[0].set(0, 1, Poly::var(n, 1));
        let (src, dst, f) = connection_change_iso(n, flat(n), g1).unwrap();
        assert!(!f.b.is_zero());
        let (p0, p1) = src.probes(8, 1);
        let r = f.check(&src, &dst, &p0, &p1);
        assert!(r.all_passed(), "{r:?}");

        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let (src, dst, f) =
            connection_change_iso(n, random_connection(n, n, 1, &mut rng), random_connection(n, n, 1, &mut rng))
                .unwrap();
        let (p0, p1) = src.probes(8, 1);
        let r = f.check(&src, &dst, &p0, &p1);
        assert!(r.all_passed(), "{r:?}");

        let same = random_connection(n, n, 1, &mut rng);
        let (_, _, f) = connection_change_iso(n, same.clone(), same).unwrap();
        assert!(f.b.is_zero());
    }
}
