//! 2-term representations up to homotopy of `TM` over `R^n`.
//!
//! Bundles are trivial: `E_0 = R^n × Q^r0`, `E_{−1} = R^n × Q^r1`. A
//! connection is stored as Christoffel matrices `Γ_i`, one per coordinate
//! direction, acting on component columns: `∇_X u = X(u) + Σ_i X^i Γ_i u`.
//! As a matrix-valued 1-form `Γ = Σ dq^i Γ_i` the curvature is
//! `R = dΓ + Γ ∧ Γ`.

use rand::Rng;

use crate::error::{Error, Result};
use crate::forms::{index_label, MatForm, PolyVectorField};
use crate::linalg::{pvec_add, PMat, PVec};
use crate::poly::Poly;
use crate::report::{all_passed, Check};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepUH2 {
    n: usize,
    r0: usize,
    r1: usize,
    boundary: PMat,
    gamma0: Vec<PMat>,
    gamma1: Vec<PMat>,
    omega: MatForm,
}

/// Which level of the complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    Zero,
    MinusOne,
}

/// First nonzero entry of a matrix-valued form, described on coordinate
/// fields and basis sections.
pub fn form_witness(m: &MatForm) -> Option<String> {
    m.first_nonzero().map(|(r, c, idx, v)| {
        if idx.is_empty() {
            format!("section e{}: component {} is {v}", c + 1, r + 1)
        } else {
            format!("fields {} on section e{}: component {} is {v}", index_label(&idx), c + 1, r + 1)
        }
    })
}

impl RepUH2 {
    pub fn new(boundary: PMat, gamma0: Vec<PMat>, gamma1: Vec<PMat>, omega: MatForm) -> Result<Self> {
        let n = omega.n();
        let (r0, r1) = (boundary.rows(), boundary.cols());
        if boundary.num_vars() != n {
            return Err(Error::structural("boundary and omega live over different bases"));
        }
        if gamma0.len() != n || gamma1.len() != n {
            return Err(Error::structural(format!("connections need {n} Christoffel matrices per level")));
        }
        for (g, r) in gamma0.iter().map(|g| (g, r0)).chain(gamma1.iter().map(|g| (g, r1))) {
            if g.rows() != r || g.cols() != r || g.num_vars() != n {
                return Err(Error::structural("Christoffel matrix of the wrong shape"));
            }
        }
        if omega.degree() != 2 || omega.rows() != r1 || omega.cols() != r0 {
            return Err(Error::structural(format!(
                "omega must be a 2-form valued in {r1}x{r0} matrices"
            )));
        }
        Ok(RepUH2 {
            n,
            r0,
            r1,
            boundary,
            gamma0,
            gamma1,
            omega,
        })
    }

    /// `Γ = 0`, `ω = 0` with the given boundary.
    pub fn flat(boundary: PMat) -> Self {
        let n = boundary.num_vars();
        let (r0, r1) = (boundary.rows(), boundary.cols());
        RepUH2 {
            n,
            r0,
            r1,
            gamma0: vec![PMat::zeros(n, r0, r0); n],
            gamma1: vec![PMat::zeros(n, r1, r1); n],
            omega: MatForm::zero(n, 2, r1, r0),
            boundary,
        }
    }

    /// The coadjoint representation: `E_0 = E_{−1} = T*M`, `∂ = Id`, the same
    /// connection on both levels and `ω` its curvature.
    pub fn coadjoint(n: usize, gamma: Vec<PMat>) -> Result<Self> {
        let g = MatForm::from_one_form_components(n, &gamma)?;
        if g.rows() != n || g.cols() != n {
            return Err(Error::structural("coadjoint connection must act on rank-n sections"));
        }
        let omega = curvature_of(&g);
        RepUH2::new(PMat::identity(n, n), gamma.clone(), gamma, omega)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r0(&self) -> usize {
        self.r0
    }

    pub fn r1(&self) -> usize {
        self.r1
    }

    pub fn boundary(&self) -> &PMat {
        &self.boundary
    }

    pub fn gamma(&self, level: Level) -> &[PMat] {
        match level {
            Level::Zero => &self.gamma0,
            Level::MinusOne => &self.gamma1,
        }
    }

    pub fn omega(&self) -> &MatForm {
        &self.omega
    }

    pub fn rank(&self, level: Level) -> usize {
        match level {
            Level::Zero => self.r0,
            Level::MinusOne => self.r1,
        }
    }

    /// `Γ` as a matrix-valued 1-form.
    pub fn connection_form(&self, level: Level) -> MatForm {
        let comps = self.gamma(level);
        if comps.is_empty() || self.rank(level) == 0 {
            let r = self.rank(level);
            return MatForm::zero(self.n, 1, r, r);
        }
        MatForm::from_one_form_components(self.n, comps).expect("validated shapes")
    }

    pub fn curvature(&self, level: Level) -> MatForm {
        curvature_of(&self.connection_form(level))
    }

    /// `∇_X u` on a section given by its components.
    pub fn nabla(&self, level: Level, x: &PolyVectorField, u: &[Poly]) -> PVec {
        let du: PVec = u.iter().map(|c| x.apply(c)).collect();
        let mut gx = PMat::zeros(self.n, self.rank(level), self.rank(level));
        for (i, g) in self.gamma(level).iter().enumerate() {
            gx = gx.add(&g.scale(x.comp(i)));
        }
        pvec_add(&du, &gx.apply(u))
    }

    /// `ω(X, Y)` applied to a section of `E_0`.
    pub fn omega_apply(&self, x: &PolyVectorField, y: &PolyVectorField, u: &[Poly]) -> PVec {
        self.omega
            .eval(&[x.clone(), y.clone()])
            .expect("omega has degree 2")
            .apply(u)
    }

    /// The four axioms, named `chain_compat`, `curvature0`, `curvature1`,
    /// `d_nabla_omega`.
    pub fn check(&self) -> RepReport {
        let g0 = self.connection_form(Level::Zero);
        let g1 = self.connection_form(Level::MinusOne);
        let bd = MatForm::from_pmat(&self.boundary);
        // d∂ + Γ0 ∂ − ∂ Γ1
        let chain = bd.d().add(&g0.wedge(&bd)).sub(&bd.wedge(&g1));
        let curv0 = curvature_of(&g0).sub(&bd.wedge(&self.omega));
        let curv1 = curvature_of(&g1).sub(&self.omega.wedge(&bd));
        let dw = self.omega.d().add(&g1.wedge(&self.omega)).sub(&self.omega.wedge(&g0));
        RepReport {
            checks: vec![
                Check::from_witness("chain_compat", form_witness(&chain)),
                Check::from_witness("curvature0", form_witness(&curv0)),
                Check::from_witness("curvature1", form_witness(&curv1)),
                Check::from_witness("d_nabla_omega", form_witness(&dw)),
            ],
        }
    }

    /// The dual representation on `E*[1]`: `F_0 = E_{−1}*`, `F_{−1} = E_0*`,
    /// `∂* = −∂ᵀ`, dual connections `−Γᵀ` and `ω* = ωᵀ`.
    pub fn dual(&self) -> RepUH2 {
        let neg_t = |gs: &[PMat]| gs.iter().map(|g| g.transpose().neg()).collect::<Vec<_>>();
        RepUH2 {
            n: self.n,
            r0: self.r1,
            r1: self.r0,
            boundary: self.boundary.transpose().neg(),
            gamma0: neg_t(&self.gamma1),
            gamma1: neg_t(&self.gamma0),
            omega: self.omega.transpose(),
        }
    }

    /// Tensor product with `other`, as a 3-term complex.
    pub fn tensor(&self, other: &RepUH2) -> Result<TensorRep> {
        TensorRep::new(self, other)
    }
}

pub fn curvature_of(g: &MatForm) -> MatForm {
    g.d().add(&g.wedge(g))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepReport {
    pub checks: Vec<Check>,
}

impl RepReport {
    pub fn all_passed(&self) -> bool {
        all_passed(&self.checks)
    }

    pub fn passed(&self, name: &str) -> bool {
        self.checks.iter().any(|c| c.name == name && c.passed)
    }
}

/// Random Christoffel matrices with entries of degree `<= max_degree`.
pub fn random_connection<R: Rng + ?Sized>(n: usize, r: usize, max_degree: u32, rng: &mut R) -> Vec<PMat> {
    (0..n)
        .map(|_| {
            let data = (0..r * r).map(|_| Poly::random(n, max_degree, 3, 0.4, rng)).collect();
            PMat::from_entries(n, r, r, data).expect("square")
        })
        .collect()
}

/// Compatibility of `dual` with `rep` under the canonical pairing, on basis
/// sections times `{1, q^j}` and coordinate fields:
/// `X⟨η, u⟩ = ⟨∇*_X η, u⟩ + ⟨η, ∇_X u⟩` on both levels,
/// `⟨∂*η, m⟩ + ⟨η, ∂m⟩ = 0` and `⟨ω*(X,Y)η, u⟩ = ⟨η, ω(X,Y)u⟩`.
pub fn check_dual_pairing(rep: &RepUH2, dual: &RepUH2) -> Check {
    let n = rep.n;
    let pair = |a: &[Poly], b: &[Poly]| -> Poly { a.iter().zip(b).fold(Poly::zero(n), |acc, (x, y)| &acc + &(x * y)) };
    let sections = |r: usize| -> Vec<(String, PVec)> {
        let mut out = Vec::new();
        for a in 0..r {
            let mut coeffs = vec![("1".to_string(), Poly::one(n))];
            coeffs.extend((0..n).map(|j| (format!("q{}", j + 1), Poly::var(n, j))));
            for (cl, c) in coeffs {
                let mut v = vec![Poly::zero(n); r];
                v[a] = c;
                out.push((format!("{cl}*e{}", a + 1), v));
            }
        }
        out
    };
    let fields: Vec<PolyVectorField> = (0..n).map(|i| PolyVectorField::coordinate(n, i)).collect();
    // (dual level, rep level) pairs
    let levels = [(Level::Zero, Level::MinusOne), (Level::MinusOne, Level::Zero)];
    for (dl, rl) in levels {
        for (el, eta) in sections(dual.rank(dl)) {
            for (ul, u) in sections(rep.rank(rl)) {
                for (i, x) in fields.iter().enumerate() {
                    let lhs = x.apply(&pair(&eta, &u));
                    let rhs = &pair(&dual.nabla(dl, x, &eta), &u) + &pair(&eta, &rep.nabla(rl, x, &u));
                    if lhs != rhs {
                        return Check::fail(
                            "dual_pairing",
                            format!("connection along d/dq{} on ({el}, {ul})", i + 1),
                        );
                    }
                }
            }
        }
    }
    for (el, eta) in sections(rep.r0) {
        for (ml, m) in sections(rep.r1) {
            let lhs = &pair(&dual.boundary.apply(&eta), &m) + &pair(&eta, &rep.boundary.apply(&m));
            if !lhs.is_zero() {
                return Check::fail("dual_pairing", format!("boundary on ({el}, {ml})"));
            }
        }
    }
    for (el, eta) in sections(rep.r1) {
        for (ul, u) in sections(rep.r0) {
            for i in 0..n {
                for j in i + 1..n {
                    let (x, y) = (&fields[i], &fields[j]);
                    let lhs = pair(&dual.omega_apply(x, y, &eta), &u);
                    let rhs = pair(&eta, &rep.omega_apply(x, y, &u));
                    if lhs != rhs {
                        return Check::fail(
                            "dual_pairing",
                            format!("omega on fields (d/dq{}, d/dq{}) and ({el}, {ul})", i + 1, j + 1),
                        );
                    }
                }
            }
        }
    }
    Check::pass("dual_pairing")
}

/// The graded tensor product `E ⊗ F` of two 2-term representations, a
/// 3-term complex in degrees 0, −1, −2 stored on the total space
/// `(E_0⊗F_0) ⊕ (E_0⊗F_{−1} ⊕ E_{−1}⊗F_0) ⊕ (E_{−1}⊗F_{−1})`.
///
/// `∂(u⊗v) = ∂u⊗v + (−1)^{|u|} u⊗∂v`, `∇ = ∇⊗1 + 1⊗∇` and
/// `ω(u⊗v) = ωu⊗v + (−1)^{|u|} u⊗ωv`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorRep {
    n: usize,
    /// Dimensions of degrees 0, −1, −2.
    dims: [usize; 3],
    boundary: MatForm,
    gamma: MatForm,
    omega: MatForm,
}

impl TensorRep {
    fn new(e: &RepUH2, f: &RepUH2) -> Result<Self> {
        if e.n != f.n {
            return Err(Error::structural("tensor product of representations over different bases"));
        }
        let n = e.n;
        let (e0, e1, f0, f1) = (e.r0, e.r1, f.r0, f.r1);
        let dims = [e0 * f0, e0 * f1 + e1 * f0, e1 * f1];
        let total = dims.iter().sum();
        let off = [0, dims[0], dims[0] + dims[1]];
        // offsets of E0⊗F−1 and E−1⊗F0 inside degree −1
        let (a_off, b_off) = (off[1], off[1] + e0 * f1);
        let id = |r: usize| MatForm::from_pmat(&PMat::identity(n, r));
        let de = MatForm::from_pmat(&e.boundary);
        let df = MatForm::from_pmat(&f.boundary);

        let boundary = MatForm::zero(n, 0, total, total)
            .with_block(off[0], a_off, &id(e0).kron(&df))
            .with_block(off[0], b_off, &de.kron(&id(f0)))
            .with_block(a_off, off[2], &de.kron(&id(f1)))
            .with_block(b_off, off[2], &id(e1).kron(&df).neg());

        let ge0 = e.connection_form(Level::Zero);
        let ge1 = e.connection_form(Level::MinusOne);
        let gf0 = f.connection_form(Level::Zero);
        let gf1 = f.connection_form(Level::MinusOne);
        let sum = |ga: &MatForm, ra: usize, gb: &MatForm, rb: usize| ga.kron(&id(rb)).add(&id(ra).kron(gb));
        let gamma = MatForm::zero(n, 1, total, total)
            .with_block(off[0], off[0], &sum(&ge0, e0, &gf0, f0))
            .with_block(a_off, a_off, &sum(&ge0, e0, &gf1, f1))
            .with_block(b_off, b_off, &sum(&ge1, e1, &gf0, f0))
            .with_block(off[2], off[2], &sum(&ge1, e1, &gf1, f1));

        let omega = MatForm::zero(n, 2, total, total)
            .with_block(a_off, off[0], &id(e0).kron(&f.omega))
            .with_block(b_off, off[0], &e.omega.kron(&id(f0)))
            .with_block(off[2], a_off, &e.omega.kron(&id(f1)))
            .with_block(off[2], b_off, &id(e1).kron(&f.omega).neg());

        Ok(TensorRep {
            n,
            dims,
            boundary,
            gamma,
            omega,
        })
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    pub fn boundary(&self) -> &MatForm {
        &self.boundary
    }

    /// Axioms of a 3-term representation with vanishing `ω_3`:
    /// `∂² = 0`, `d∂ + [Γ, ∂] = 0`, `R = ∂ω + ω∂`, `d_∇ω = 0`, `ω ∧ ω = 0`.
    pub fn check(&self) -> Vec<Check> {
        let b = &self.boundary;
        let g = &self.gamma;
        let w = &self.omega;
        vec![
            Check::from_witness("boundary_squared", form_witness(&b.wedge(b))),
            Check::from_witness("chain_compat", form_witness(&b.d().add(&g.wedge(b)).sub(&b.wedge(g)))),
            Check::from_witness("curvature", form_witness(&curvature_of(g).sub(&b.wedge(w)).sub(&w.wedge(b)))),
            Check::from_witness("d_nabla_omega", form_witness(&w.d().add(&g.wedge(w)).sub(&w.wedge(g)))),
            Check::from_witness("omega_squared", form_witness(&w.wedge(w))),
        ]
    }

    /// The degree 0 and −1 part as a 2-term representation. It satisfies
    /// the axioms when the degree −2 part is zero.
    pub fn truncated(&self) -> RepUH2 {
        let [d0, d1, _] = self.dims;
        let to_pmat = |m: MatForm| -> PMat {
            let vals = m.entries().iter().map(|w| w.as_function()).collect();
            PMat::from_entries(self.n, m.rows(), m.cols(), vals).expect("shape")
        };
        let comps = |m: MatForm| -> Vec<PMat> {
            (0..self.n).map(|i| m.component(&[i])).collect()
        };
        RepUH2 {
            n: self.n,
            r0: d0,
            r1: d1,
            boundary: to_pmat(self.boundary.block(0, d0, d0, d1)),
            gamma0: comps(self.gamma.block(0, 0, d0, d0)),
            gamma1: comps(self.gamma.block(d0, d0, d1, d1)),
            omega: self.omega.block(d0, 0, d1, d0),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::PolyForm;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(n: usize, i: usize) -> Poly {
        Poly::var(n, i)
    }

    #[test]
    fn scalar_curvature_example() {
        let n = 2;
        let g0 = vec![
            PMat::from_entries(n, 1, 1, vec![q(n, 1)]).unwrap(),
            PMat::zeros(n, 1, 1),
        ];
        let rep = RepUH2::new(PMat::zeros(n, 1, 0), g0, vec![PMat::zeros(n, 0, 0); 2], MatForm::zero(n, 2, 0, 1))
            .unwrap();
        let r = rep.curvature(Level::Zero);
        assert_eq!(r.component(&[0, 1]).get(0, 0), &Poly::from_int(n, -1));
        let x = PolyVectorField::coordinate(n, 0);
        let y = PolyVectorField::coordinate(n, 1);
        let rxy = r.eval(&[x.clone(), y.clone()]).unwrap();
        let ryx = r.eval(&[y, x]).unwrap();
        assert_eq!(rxy, ryx.neg());
    }

    #[test]
    fn flat_rep_passes() {
        let n = 2;
        let bd = PMat::from_entries(n, 2, 1, vec![Poly::from_int(n, 1), Poly::from_int(n, 3)]).unwrap();
        assert!(RepUH2::flat(bd).check().all_passed());
        assert!(RepUH2::coadjoint(3, vec![PMat::zeros(3, 3, 3); 3]).unwrap().omega().is_zero());
    }

    #[test]
    fn flat_with_omega_fails_curvature() {
        let n = 2;
        let mut rep = RepUH2::flat(PMat::identity(n, 1));
        rep.omega = MatForm::from_entries(n, 2, 1, 1, vec![PolyForm::basis(n, &[0, 1])]).unwrap();
        let rpt = rep.check();
        assert!(!rpt.passed("curvature0"));
        assert!(!rpt.passed("curvature1"));
        assert!(rpt.passed("chain_compat"));
    }

    #[test]
    fn coadjoint_random_passes() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..3 {
            let rep = RepUH2::coadjoint(2, random_connection(2, 2, 1, &mut rng)).unwrap();
            let r = rep.check();
            assert!(r.all_passed(), "{r:?}");
        }
    }

    #[test]
    fn dual_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let rep = RepUH2::coadjoint(2, random_connection(2, 2, 1, &mut rng)).unwrap();
        let d = rep.dual();
        assert_eq!(d.boundary(), &PMat::identity(2, 2).neg());
        assert!(d.check().all_passed());
        assert_eq!(d.dual(), rep);
        assert!(check_dual_pairing(&rep, &d).passed);
        let mut wrong = d.clone();
        wrong.boundary = wrong.boundary.neg();
        assert!(!check_dual_pairing(&rep, &wrong).passed);
    }

    #[test]
    fn tensor_with_unit_is_copy() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let rep = RepUH2::coadjoint(2, random_connection(2, 2, 1, &mut rng)).unwrap();
        let unit = RepUH2::flat(PMat::zeros(2, 1, 0));
        let t = rep.tensor(&unit).unwrap();
        assert!(crate::report::all_passed(&t.check()));
        assert_eq!(t.truncated(), rep);
    }

    #[test]
    fn tensor_of_curved_reps_is_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = RepUH2::coadjoint(2, random_connection(2, 2, 1, &mut rng)).unwrap();
        let b = RepUH2::coadjoint(2, random_connection(2, 2, 1, &mut rng)).unwrap();
        let t = a.tensor(&b).unwrap();
        let checks = t.check();
        assert!(crate::report::all_passed(&checks), "{checks:?}");
    }

    #[test]
    fn tensor_boundary_leibniz_sign() {
        let n = 1;
        let e = RepUH2::flat(PMat::identity(n, 1));
        let f = RepUH2::flat(PMat::from_entries(n, 1, 1, vec![Poly::from_int(n, 2)]).unwrap());
        let t = e.tensor(&f).unwrap();
        // m⊗n sits in degree −2 at index 3; ∂ sends it to ∂m⊗n − m⊗∂n
        let b = t.boundary();
        assert_eq!(b.entry(1, 3).as_function(), Poly::from_int(n, 1));
        assert_eq!(b.entry(2, 3).as_function(), Poly::from_int(n, -2));
        // u⊗n at index 1 maps to u⊗∂n with sign +1
        assert_eq!(b.entry(0, 1).as_function(), Poly::from_int(n, 2));
    }

    #[test]
    fn tensor_of_flat_reps_is_flat() {
        let e = RepUH2::flat(PMat::identity(2, 1));
        let t = e.tensor(&e).unwrap();
        assert!(t.omega.is_zero());
    }

    #[test]
    fn structural_errors() {
        let n = 2;
        assert!(RepUH2::new(PMat::identity(n, 1), vec![], vec![], MatForm::zero(n, 2, 1, 1)).is_err());
        assert!(RepUH2::new(
            PMat::identity(n, 1),
            vec![PMat::zeros(n, 1, 1); 2],
            vec![PMat::zeros(n, 1, 1); 2],
            MatForm::zero(n, 1, 1, 1)
        )
        .is_err());
    }
}
