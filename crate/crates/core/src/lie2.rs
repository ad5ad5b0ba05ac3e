//! 2-term L∞-algebras and their homotopy Jacobi identities.
//!
//! Brackets have degrees `|l_i| = 2 − i` on a space `V_0 ⊕ V_{−1}`. The k-th
//! identity is
//!
//! ```text
//! Σ_{i+j=k+1} Σ_{σ ∈ Sh(i,k−i)} (−1)^{i(j−1)} sgn(σ) ε(σ) l_j(l_i(x_σ(1),…,x_σ(i)), x_σ(i+1),…,x_σ(k)) = 0
//! ```
//!
//! with `ε` the Koszul sign of the selected word. For two terms only `l_1`,
//! `l_2`, `l_3` are nonzero and the identities reduce to:
//!
//! * k = 1: `l_1 l_1 = 0`, vacuous since `l_1` lands in degree 0.
//! * k = 2: `l_1 l_2(x, m) = l_2(x, l_1 m)` and `l_2(l_1 m, n) = l_2(m, l_1 n)`.
//! * k = 3: `l_2(l_2(x,y),z) − l_2(l_2(x,z),y) + l_2(l_2(y,z),x) + l_1 l_3(x,y,z) = 0`
//!   on three degree-0 inputs, and the analogous identity with `l_3(x,y,l_1 m)`
//!   when one input has degree −1.
//! * k = 4: `Σ_{Sh(2,2)} sgn(σ) l_3(l_2(x_σ1,x_σ2), x_σ3, x_σ4) − Σ_{Sh(3,1)} sgn(σ) l_2(l_3(x_σ1,x_σ2,x_σ3), x_σ4) = 0`.
//!
//! Brackets that vanish for degree reasons are not representable.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{qvec_add, qvec_is_zero, qvec_neg, qvec_unit, qvec_zero, QMat, QVec};
use crate::report::Check;
use crate::perm::{combinations, unshuffles, word_sign, Permutation};
use crate::rational::Rational;

/// The bracket data of a 2-term L∞-algebra, finite-dimensional or not.
pub trait TwoTerm: Sync {
    type V0: Clone + Send + Sync + fmt::Debug;
    type V1: Clone + Send + Sync + fmt::Debug;

    fn zero0(&self) -> Self::V0;
    fn zero1(&self) -> Self::V1;
    fn add0(&self, a: &Self::V0, b: &Self::V0) -> Self::V0;
    fn add1(&self, a: &Self::V1, b: &Self::V1) -> Self::V1;
    fn neg0(&self, a: &Self::V0) -> Self::V0;
    fn neg1(&self, a: &Self::V1) -> Self::V1;
    fn is_zero0(&self, a: &Self::V0) -> bool;
    fn is_zero1(&self, a: &Self::V1) -> bool;

    fn l1(&self, m: &Self::V1) -> Self::V0;
    fn l2_00(&self, x: &Self::V0, y: &Self::V0) -> Self::V0;
    fn l2_01(&self, x: &Self::V0, m: &Self::V1) -> Self::V1;
    fn l3(&self, x: &Self::V0, y: &Self::V0, z: &Self::V0) -> Self::V1;

    fn sub0(&self, a: &Self::V0, b: &Self::V0) -> Self::V0 {
        self.add0(a, &self.neg0(b))
    }

    fn sub1(&self, a: &Self::V1, b: &Self::V1) -> Self::V1 {
        self.add1(a, &self.neg1(b))
    }
}

/// A homogeneous element.
#[derive(Clone, Debug)]
pub enum Graded<A, B> {
    Deg0(A),
    DegM1(B),
}

impl<A, B> Graded<A, B> {
    pub fn degree(&self) -> i32 {
        match self {
            Graded::Deg0(_) => 0,
            Graded::DegM1(_) => -1,
        }
    }
}

type Elem<L> = Graded<<L as TwoTerm>::V0, <L as TwoTerm>::V1>;

fn bracket<L: TwoTerm>(l: &L, args: &[Elem<L>]) -> Option<Elem<L>> {
    use Graded::*;
    match args {
        [DegM1(m)] => Some(Deg0(l.l1(m))),
        [Deg0(x), Deg0(y)] => Some(Deg0(l.l2_00(x, y))),
        [Deg0(x), DegM1(m)] => Some(DegM1(l.l2_01(x, m))),
        [DegM1(m), Deg0(x)] => Some(DegM1(l.neg1(&l.l2_01(x, m)))),
        [Deg0(x), Deg0(y), Deg0(z)] => Some(DegM1(l.l3(x, y, z))),
        _ => None,
    }
}

/// Left side of the k-th identity on `inputs`, as `(degree-0 part, degree −1 part)`.
pub fn jacobiator<L: TwoTerm>(l: &L, inputs: &[Elem<L>], shuffles: &ShuffleTable) -> (L::V0, L::V1) {
    let k = inputs.len();
    let degrees: Vec<i32> = inputs.iter().map(Graded::degree).collect();
    let mut acc0 = l.zero0();
    let mut acc1 = l.zero1();
    for i in 1..=k.min(3) {
        let j = k + 1 - i;
        if j > 3 {
            continue;
        }
        let base = if (i * (j - 1)) % 2 == 0 { 1 } else { -1 };
        for sigma in shuffles.get(i, k) {
            let picked = sigma.select(inputs);
            let Some(inner) = bracket(l, &picked[..i]) else {
                continue;
            };
            let mut outer_args = vec![inner];
            outer_args.extend(picked[i..].iter().cloned());
            let Some(out) = bracket(l, &outer_args) else {
                continue;
            };
            let sign = base * sigma.sign() * word_sign(sigma, &degrees).expect("matching lengths");
            match out {
                Graded::Deg0(v) => {
                    acc0 = if sign > 0 { l.add0(&acc0, &v) } else { l.sub0(&acc0, &v) };
                }
                Graded::DegM1(v) => {
                    acc1 = if sign > 0 { l.add1(&acc1, &v) } else { l.sub1(&acc1, &v) };
                }
            }
        }
    }
    (acc0, acc1)
}

/// Precomputed unshuffles for k ≤ 4.
pub struct ShuffleTable {
    table: Vec<Vec<Vec<Permutation>>>,
}

impl ShuffleTable {
    pub fn new(max_k: usize) -> Self {
        let table = (0..=max_k)
            .map(|k| {
                (0..=k)
                    .map(|i| if i == 0 { Vec::new() } else { unshuffles(i, k).expect("1 <= i <= k") })
                    .collect()
            })
            .collect();
        ShuffleTable { table }
    }

    pub fn get(&self, i: usize, k: usize) -> &[Permutation] {
        &self.table[k][i]
    }
}

/// A labelled test vector.
#[derive(Clone, Debug)]
pub struct Probe<V> {
    pub label: String,
    pub value: V,
}

impl<V> Probe<V> {
    pub fn new(label: impl Into<String>, value: V) -> Self {
        Probe {
            label: label.into(),
            value,
        }
    }
}

/// How input tuples are enumerated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TupleMode {
    /// Every ordered tuple of probes. Complete for bases under multilinearity,
    /// and makes no antisymmetry assumption on the brackets.
    Ordered,
    /// Strictly increasing degree-0 probes followed by a multiset of degree
    /// −1 probes. Sound when the identities are graded antisymmetric.
    Combinations,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub k: usize,
    pub passed: bool,
    pub tuples_checked: usize,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiReport {
    pub identities: Vec<IdentityCheck>,
}

impl JacobiReport {
    pub fn all_passed(&self) -> bool {
        self.identities.iter().all(|c| c.passed)
    }

    pub fn passed(&self, k: usize) -> bool {
        self.identities.iter().find(|c| c.k == k).is_some_and(|c| c.passed)
    }

    /// The `k` values whose identity failed.
    pub fn failing(&self) -> Vec<usize> {
        self.identities.iter().filter(|c| !c.passed).map(|c| c.k).collect()
    }
}

fn multisets(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            rec(x, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, r, &mut Vec::new(), &mut out);
    out
}

fn ordered_tuples(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..r {
        out = out
            .into_iter()
            .flat_map(|t: Vec<usize>| {
                (0..n).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

/// Index tuples into the concatenation `probes0 ++ probes1` for identity `k`,
/// keeping only those whose output degree can be nonzero.
pub fn input_tuples(k: usize, n0: usize, n1: usize, mode: TupleMode) -> Vec<Vec<usize>> {
    // output degree = 3 − k − (#degree −1 inputs) must be 0 or −1
    let admissible = |d: usize| {
        let out = 3 - k as i64 - d as i64;
        out == 0 || out == -1
    };
    match mode {
        TupleMode::Ordered => ordered_tuples(n0 + n1, k)
            .into_iter()
            .filter(|t| admissible(t.iter().filter(|&&x| x >= n0).count()))
            .collect(),
        TupleMode::Combinations => {
            let mut out = Vec::new();
            for d in 0..=k {
                if !admissible(d) {
                    continue;
                }
                for c0 in combinations(n0, k - d) {
                    for c1 in multisets(n1, d) {
                        let mut t = c0.clone();
                        t.extend(c1.iter().map(|x| x + n0));
                        out.push(t);
                    }
                }
            }
            out
        }
    }
}

/// Checks the identities `k = 1..=4` on tuples of probes.
pub fn check_identities<L: TwoTerm>(
    l: &L,
    probes0: &[Probe<L::V0>],
    probes1: &[Probe<L::V1>],
    mode: TupleMode,
) -> JacobiReport {
    let shuffles = ShuffleTable::new(4);
    let n0 = probes0.len();
    let elem = |idx: usize| -> (String, Elem<L>) {
        if idx < n0 {
            (probes0[idx].label.clone(), Graded::Deg0(probes0[idx].value.clone()))
        } else {
            let p = &probes1[idx - n0];
            (p.label.clone(), Graded::DegM1(p.value.clone()))
        }
    };
    let identities = (1..=4)
        .map(|k| {
            let tuples = input_tuples(k, n0, probes1.len(), mode);
            let witness = tuples.par_iter().find_map_first(|t| {
                let (labels, inputs): (Vec<String>, Vec<Elem<L>>) = t.iter().map(|&i| elem(i)).unzip();
                let (r0, r1) = jacobiator(l, &inputs, &shuffles);
                if l.is_zero0(&r0) && l.is_zero1(&r1) {
                    None
                } else {
                    let residual = if l.is_zero0(&r0) {
                        format!("{r1:?}")
                    } else {
                        format!("{r0:?}")
                    };
                    Some(format!("inputs ({}) give residual {residual}", labels.join(", ")))
                }
            });
            IdentityCheck {
                k,
                passed: witness.is_none(),
                tuples_checked: tuples.len(),
                witness,
            }
        })
        .collect();
    JacobiReport { identities }
}

/// A morphism of 2-term L∞-algebras given by its three components.
pub trait MorphismMaps<A: TwoTerm, B: TwoTerm>: Sync {
    fn f0(&self, x: &A::V0) -> B::V0;
    fn f1(&self, m: &A::V1) -> B::V1;
    fn f2(&self, x: &A::V0, y: &A::V0) -> B::V1;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismReport {
    pub equations: Vec<Check>,
}

impl MorphismReport {
    pub fn all_passed(&self) -> bool {
        self.equations.iter().all(|e| e.passed)
    }

    pub fn passed(&self, name: &str) -> bool {
        self.equations.iter().find(|e| e.name == name).is_some_and(|e| e.passed)
    }
}

fn pairs(n: usize, mode: TupleMode) -> Vec<Vec<usize>> {
    match mode {
        TupleMode::Ordered => ordered_tuples(n, 2),
        TupleMode::Combinations => combinations(n, 2),
    }
}

fn triples(n: usize, mode: TupleMode) -> Vec<Vec<usize>> {
    match mode {
        TupleMode::Ordered => ordered_tuples(n, 3),
        TupleMode::Combinations => combinations(n, 3),
    }
}

/// Checks the four morphism equations:
///
/// * chain: `f0 l1 = l1' f1`;
/// * `f0 l2(x,y) − l2'(f0 x, f0 y) = l1' f2(x,y)`;
/// * `f1 l2(x,m) − l2'(f0 x, f1 m) = f2(x, l1 m)`;
/// * `l3'(f0 x, f0 y, f0 z) − f1 l3(x,y,z) = Σ_cyc [l2'(f2(x,y), f0 z) + f2(l2(x,y), z)]`.
pub fn check_morphism_maps<A: TwoTerm, B: TwoTerm, F: MorphismMaps<A, B>>(
    f: &F,
    src: &A,
    dst: &B,
    probes0: &[Probe<A::V0>],
    probes1: &[Probe<A::V1>],
    mode: TupleMode,
) -> MorphismReport {
    let chain = probes1.par_iter().find_map_first(|m| {
        let lhs = f.f0(&src.l1(&m.value));
        let rhs = dst.l1(&f.f1(&m.value));
        let r = dst.sub0(&lhs, &rhs);
        (!dst.is_zero0(&r)).then(|| format!("on {} residual {r:?}", m.label))
    });

    let l2l2 = pairs(probes0.len(), mode).par_iter().find_map_first(|t| {
        let (x, y) = (&probes0[t[0]], &probes0[t[1]]);
        let lhs = dst.sub0(
            &f.f0(&src.l2_00(&x.value, &y.value)),
            &dst.l2_00(&f.f0(&x.value), &f.f0(&y.value)),
        );
        let rhs = dst.l1(&f.f2(&x.value, &y.value));
        let r = dst.sub0(&lhs, &rhs);
        (!dst.is_zero0(&r)).then(|| format!("on ({}, {}) residual {r:?}", x.label, y.label))
    });

    let mixed: Vec<(usize, usize)> = (0..probes0.len())
        .flat_map(|i| (0..probes1.len()).map(move |a| (i, a)))
        .collect();
    let f2l2 = mixed.par_iter().find_map_first(|&(i, a)| {
        let (x, m) = (&probes0[i], &probes1[a]);
        let lhs = dst.sub1(
            &f.f1(&src.l2_01(&x.value, &m.value)),
            &dst.l2_01(&f.f0(&x.value), &f.f1(&m.value)),
        );
        let rhs = f.f2(&x.value, &src.l1(&m.value));
        let r = dst.sub1(&lhs, &rhs);
        (!dst.is_zero1(&r)).then(|| format!("on ({}, {}) residual {r:?}", x.label, m.label))
    });

    let l3l3 = triples(probes0.len(), mode).par_iter().find_map_first(|t| {
        let (x, y, z) = (&probes0[t[0]].value, &probes0[t[1]].value, &probes0[t[2]].value);
        let lhs = dst.sub1(&dst.l3(&f.f0(x), &f.f0(y), &f.f0(z)), &f.f1(&src.l3(x, y, z)));
        let mut rhs = dst.zero1();
        for (a, b, c) in [(x, y, z), (y, z, x), (z, x, y)] {
            // l2'(f2(a,b), f0 c) = −l2'(f0 c, f2(a,b))
            rhs = dst.sub1(&rhs, &dst.l2_01(&f.f0(c), &f.f2(a, b)));
            rhs = dst.add1(&rhs, &f.f2(&src.l2_00(a, b), c));
        }
        let r = dst.sub1(&lhs, &rhs);
        (!dst.is_zero1(&r)).then(|| {
            format!(
                "on ({}, {}, {}) residual {r:?}",
                probes0[t[0]].label, probes0[t[1]].label, probes0[t[2]].label
            )
        })
    });

    let eq = Check::from_witness;
    MorphismReport {
        equations: vec![
            eq("chain_map", chain),
            eq("l2_l2", l2l2),
            eq("f2_l2", f2l2),
            eq("l3_l3", l3l3),
        ],
    }
}

/// A finite-dimensional Lie algebra given by structure constants
/// `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    consts: Vec<Rational>,
}

impl LieAlgebra {
    /// Dense structure constants indexed `(i * dim + j) * dim + k`; checks
    /// antisymmetry and Jacobi.
    pub fn new(dim: usize, consts: Vec<Rational>) -> Result<Self> {
        let g = LieAlgebra::new_unchecked(dim, consts)?;
        g.validate()?;
        Ok(g)
    }

    pub fn new_unchecked(dim: usize, consts: Vec<Rational>) -> Result<Self> {
        if consts.len() != dim * dim * dim {
            return Err(Error::structural(format!(
                "{} structure constants for a {dim}-dimensional algebra",
                consts.len()
            )));
        }
        Ok(LieAlgebra { dim, consts })
    }

    pub fn abelian(dim: usize) -> Self {
        LieAlgebra {
            dim,
            consts: vec![Rational::zero(); dim * dim * dim],
        }
    }

    /// `so(3)`: `[e_i, e_j] = ε_{ijk} e_k`.
    pub fn so3() -> Self {
        let mut c = vec![Rational::zero(); 27];
        for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            c[(i * 3 + j) * 3 + k] = Rational::one();
            c[(j * 3 + i) * 3 + k] = Rational::from_int(-1);
        }
        LieAlgebra { dim: 3, consts: c }
    }

    /// `sl(2)` in the basis `(h, e, f)`.
    pub fn sl2() -> Self {
        let mut g = LieAlgebra::abelian(3);
        let (h, e, f) = (0, 1, 2);
        g.set_bracket(h, e, e, Rational::from_int(2));
        g.set_bracket(h, f, f, Rational::from_int(-2));
        g.set_bracket(e, f, h, Rational::one());
        g
    }

    fn set_bracket(&mut self, i: usize, j: usize, k: usize, v: Rational) {
        let d = self.dim;
        self.consts[(j * d + i) * d + k] = -&v;
        self.consts[(i * d + j) * d + k] = v;
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.consts[(i * self.dim + j) * self.dim + k]
    }

    pub fn constants(&self) -> &[Rational] {
        &self.consts
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> QVec {
        let d = self.dim;
        let mut out = qvec_zero(d);
        for i in 0..d {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..d {
                if y[j].is_zero() {
                    continue;
                }
                let xy = &x[i] * &y[j];
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.constant(i, j, k);
                    if !c.is_zero() {
                        *o += &(&xy * c);
                    }
                }
            }
        }
        out
    }

    /// Antisymmetry and Jacobi on basis triples.
    pub fn validate(&self) -> Result<()> {
        let d = self.dim;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    if self.constant(i, j, k) != &-self.constant(j, i, k) {
                        return Err(Error::validation(
                            "structure constants are not antisymmetric",
                            Some(format!("(e{}, e{})", i + 1, j + 1)),
                        ));
                    }
                }
            }
        }
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let (x, y, z) = (qvec_unit(d, i), qvec_unit(d, j), qvec_unit(d, k));
                    let a = self.bracket(&self.bracket(&x, &y), &z);
                    let b = self.bracket(&self.bracket(&y, &z), &x);
                    let c = self.bracket(&self.bracket(&z, &x), &y);
                    if !qvec_is_zero(&qvec_add(&qvec_add(&a, &b), &c)) {
                        return Err(Error::validation(
                            "Jacobi identity fails",
                            Some(format!("(e{}, e{}, e{})", i + 1, j + 1, k + 1)),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Matrix of `ad_x` in the basis.
    pub fn ad(&self, i: usize) -> QMat {
        let d = self.dim;
        let mut m = QMat::zeros(d, d);
        for j in 0..d {
            for k in 0..d {
                m.set(k, j, self.constant(i, j, k).clone());
            }
        }
        m
    }

    /// `K(x, y) = tr(ad_x ad_y)`.
    pub fn killing_form(&self) -> QMat {
        let d = self.dim;
        let mut k = QMat::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                let p = self.ad(i).mul(&self.ad(j));
                let tr: Rational = (0..d).map(|a| p.get(a, a).clone()).sum();
                k.set(i, j, tr);
            }
        }
        k
    }

    /// First basis triple with `B([x,y],z) + B(y,[x,z]) ≠ 0`.
    pub fn invariance_witness(&self, form: &QMat) -> Option<(usize, usize, usize)> {
        let d = self.dim;
        let pair = |u: &QVec, v: &QVec| -> Rational { form.apply(v).iter().zip(u).map(|(a, b)| a * b).sum() };
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let (x, y, z) = (qvec_unit(d, i), qvec_unit(d, j), qvec_unit(d, k));
                    let s = pair(&self.bracket(&x, &y), &z) + pair(&y, &self.bracket(&x, &z));
                    if !s.is_zero() {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }
}

/// A 2-term L∞-algebra with structure constants stored as dense tensors.
///
/// `l2_00` and `l3` are evaluated literally from their tensors, so an
/// unchecked value may carry non-alternating constants; the checked
/// constructor rejects those.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lie2Algebra {
    dim0: usize,
    dim1: usize,
    labels0: Vec<String>,
    labels1: Vec<String>,
    l1: QMat,
    l2_00: Vec<Rational>,
    l2_01: Vec<Rational>,
    l3: Vec<Rational>,
}

impl Lie2Algebra {
    /// Zero brackets on `V_0 = Q^dim0`, `V_{−1} = Q^dim1`.
    pub fn zero(dim0: usize, dim1: usize) -> Self {
        Lie2Algebra {
            dim0,
            dim1,
            labels0: (1..=dim0).map(|i| format!("e{i}")).collect(),
            labels1: (1..=dim1).map(|a| format!("f{a}")).collect(),
            l1: QMat::zeros(dim0, dim1),
            l2_00: vec![Rational::zero(); dim0 * dim0 * dim0],
            l2_01: vec![Rational::zero(); dim0 * dim1 * dim1],
            l3: vec![Rational::zero(); dim0 * dim0 * dim0 * dim1],
        }
    }

    pub fn new(
        dim0: usize,
        dim1: usize,
        l1: QMat,
        l2_00: Vec<Rational>,
        l2_01: Vec<Rational>,
        l3: Vec<Rational>,
    ) -> Result<Self> {
        let l = Lie2Algebra::new_unchecked(dim0, dim1, l1, l2_00, l2_01, l3)?;
        l.validate_antisymmetry()?;
        Ok(l)
    }

    pub fn new_unchecked(
        dim0: usize,
        dim1: usize,
        l1: QMat,
        l2_00: Vec<Rational>,
        l2_01: Vec<Rational>,
        l3: Vec<Rational>,
    ) -> Result<Self> {
        if l1.rows() != dim0 || l1.cols() != dim1 {
            return Err(Error::structural(format!(
                "l1 is {}x{}, expected {dim0}x{dim1}",
                l1.rows(),
                l1.cols()
            )));
        }
        let checks = [
            ("l2 on V0 x V0", l2_00.len(), dim0 * dim0 * dim0),
            ("l2 on V0 x V-1", l2_01.len(), dim0 * dim1 * dim1),
            ("l3", l3.len(), dim0 * dim0 * dim0 * dim1),
        ];
        for (what, got, want) in checks {
            if got != want {
                return Err(Error::structural(format!("{what}: {got} constants, expected {want}")));
            }
        }
        let mut l = Lie2Algebra::zero(dim0, dim1);
        l.l1 = l1;
        l.l2_00 = l2_00;
        l.l2_01 = l2_01;
        l.l3 = l3;
        Ok(l)
    }

    /// A Lie algebra with `V_{−1} = 0`.
    pub fn from_lie_algebra(g: &LieAlgebra) -> Self {
        let mut l = Lie2Algebra::zero(g.dim(), 0);
        l.l2_00 = g.constants().to_vec();
        l
    }

    /// The strict Lie 2-algebra of the identity crossed module `g → g`:
    /// `l1 = id`, `l2` the bracket on both levels, `l3 = 0`.
    pub fn identity_crossed_module(g: &LieAlgebra) -> Self {
        let d = g.dim();
        let mut l = Lie2Algebra::zero(d, d);
        l.l1 = QMat::identity(d);
        l.l2_00 = g.constants().to_vec();
        l.l2_01 = g.constants().to_vec();
        l
    }

    pub fn with_labels(mut self, labels0: Vec<String>, labels1: Vec<String>) -> Result<Self> {
        if labels0.len() != self.dim0 || labels1.len() != self.dim1 {
            return Err(Error::structural("label count does not match dimensions"));
        }
        self.labels0 = labels0;
        self.labels1 = labels1;
        Ok(self)
    }

    pub fn dim0(&self) -> usize {
        self.dim0
    }

    pub fn dim1(&self) -> usize {
        self.dim1
    }

    pub fn labels0(&self) -> &[String] {
        &self.labels0
    }

    pub fn labels1(&self) -> &[String] {
        &self.labels1
    }

    pub fn l1_matrix(&self) -> &QMat {
        &self.l1
    }

    fn i2(&self, i: usize, j: usize, m: usize) -> usize {
        (i * self.dim0 + j) * self.dim0 + m
    }

    fn i01(&self, i: usize, a: usize, b: usize) -> usize {
        (i * self.dim1 + a) * self.dim1 + b
    }

    fn i3(&self, i: usize, j: usize, k: usize, a: usize) -> usize {
        ((i * self.dim0 + j) * self.dim0 + k) * self.dim1 + a
    }

    pub fn l2_00_const(&self, i: usize, j: usize, m: usize) -> &Rational {
        &self.l2_00[self.i2(i, j, m)]
    }

    pub fn l2_01_const(&self, i: usize, a: usize, b: usize) -> &Rational {
        &self.l2_01[self.i01(i, a, b)]
    }

    pub fn l3_const(&self, i: usize, j: usize, k: usize, a: usize) -> &Rational {
        &self.l3[self.i3(i, j, k, a)]
    }

    pub fn set_l2_00(&mut self, i: usize, j: usize, m: usize, v: Rational) {
        let idx = self.i2(i, j, m);
        self.l2_00[idx] = v;
    }

    pub fn set_l2_01(&mut self, i: usize, a: usize, b: usize, v: Rational) {
        let idx = self.i01(i, a, b);
        self.l2_01[idx] = v;
    }

    pub fn set_l3(&mut self, i: usize, j: usize, k: usize, a: usize, v: Rational) {
        let idx = self.i3(i, j, k, a);
        self.l3[idx] = v;
    }

    pub fn set_l1(&mut self, i: usize, a: usize, v: Rational) {
        self.l1.set(i, a, v);
    }

    pub fn l2_00_tensor(&self) -> &[Rational] {
        &self.l2_00
    }

    pub fn l2_01_tensor(&self) -> &[Rational] {
        &self.l2_01
    }

    pub fn l3_tensor(&self) -> &[Rational] {
        &self.l3
    }

    /// `l2` on `V0 ∧ V0` and `l3` must be alternating.
    pub fn validate_antisymmetry(&self) -> Result<()> {
        let (d0, d1) = (self.dim0, self.dim1);
        for i in 0..d0 {
            for j in 0..d0 {
                for m in 0..d0 {
                    if self.l2_00_const(i, j, m) != &-self.l2_00_const(j, i, m) {
                        return Err(Error::validation(
                            "l2 on V0 is not antisymmetric",
                            Some(format!("({}, {})", self.labels0[i], self.labels0[j])),
                        ));
                    }
                }
            }
        }
        let perms: [([usize; 3], i32); 5] = [
            ([1, 0, 2], -1),
            ([0, 2, 1], -1),
            ([2, 1, 0], -1),
            ([1, 2, 0], 1),
            ([2, 0, 1], 1),
        ];
        for i in 0..d0 {
            for j in 0..d0 {
                for k in 0..d0 {
                    let t = [i, j, k];
                    for a in 0..d1 {
                        let v = self.l3_const(i, j, k, a);
                        for (p, s) in &perms {
                            let w = self.l3_const(t[p[0]], t[p[1]], t[p[2]], a);
                            let expected = if *s > 0 { v.clone() } else { -v };
                            if w != &expected {
                                return Err(Error::validation(
                                    "l3 is not totally antisymmetric",
                                    Some(format!(
                                        "({}, {}, {})",
                                        self.labels0[i], self.labels0[j], self.labels0[k]
                                    )),
                                ));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn basis_probes(&self) -> (Vec<Probe<QVec>>, Vec<Probe<QVec>>) {
        let p0 = (0..self.dim0)
            .map(|i| Probe::new(self.labels0[i].clone(), qvec_unit(self.dim0, i)))
            .collect();
        let p1 = (0..self.dim1)
            .map(|a| Probe::new(self.labels1[a].clone(), qvec_unit(self.dim1, a)))
            .collect();
        (p0, p1)
    }

    /// The generalized Jacobi identities `k = 1..=4` on all ordered basis tuples.
    pub fn check_homotopy_jacobi(&self) -> JacobiReport {
        let (p0, p1) = self.basis_probes();
        check_identities(self, &p0, &p1, TupleMode::Ordered)
    }

    /// The algebra transported along an invertible change of basis `P` of
    /// `V_0`: `l'(x, …) = P l(P⁻¹x, …)` on degree-0 outputs.
    pub fn change_basis0(&self, p: &QMat) -> Result<Lie2Algebra> {
        let pinv = p
            .inverse()
            .ok_or_else(|| Error::validation("change of basis is not invertible", None))?;
        if p.rows() != self.dim0 {
            return Err(Error::structural("change of basis has the wrong size"));
        }
        let (d0, d1) = (self.dim0, self.dim1);
        let col = |m: &QMat, j: usize| -> QVec { (0..m.rows()).map(|i| m.get(i, j).clone()).collect() };
        let mut out = Lie2Algebra::zero(d0, d1);
        out.labels0 = self.labels0.clone();
        out.labels1 = self.labels1.clone();
        out.l1 = p.mul(&self.l1);
        for i in 0..d0 {
            let xi = col(&pinv, i);
            for j in 0..d0 {
                let xj = col(&pinv, j);
                let v = p.apply(&self.l2_00(&xi, &xj));
                for (m, c) in v.into_iter().enumerate() {
                    out.set_l2_00(i, j, m, c);
                }
                for k in 0..d0 {
                    let xk = col(&pinv, k);
                    for (a, c) in self.l3(&xi, &xj, &xk).into_iter().enumerate() {
                        out.set_l3(i, j, k, a, c);
                    }
                }
            }
            for a in 0..d1 {
                for (b, c) in self.l2_01(&xi, &qvec_unit(d1, a)).into_iter().enumerate() {
                    out.set_l2_01(i, a, b, c);
                }
            }
        }
        Ok(out)
    }
}

impl TwoTerm for Lie2Algebra {
    type V0 = QVec;
    type V1 = QVec;

    fn zero0(&self) -> QVec {
        qvec_zero(self.dim0)
    }
    fn zero1(&self) -> QVec {
        qvec_zero(self.dim1)
    }
    fn add0(&self, a: &QVec, b: &QVec) -> QVec {
        qvec_add(a, b)
    }
    fn add1(&self, a: &QVec, b: &QVec) -> QVec {
        qvec_add(a, b)
    }
    fn neg0(&self, a: &QVec) -> QVec {
        qvec_neg(a)
    }
    fn neg1(&self, a: &QVec) -> QVec {
        qvec_neg(a)
    }
    fn is_zero0(&self, a: &QVec) -> bool {
        qvec_is_zero(a)
    }
    fn is_zero1(&self, a: &QVec) -> bool {
        qvec_is_zero(a)
    }

    fn l1(&self, m: &QVec) -> QVec {
        self.l1.apply(m)
    }

    fn l2_00(&self, x: &QVec, y: &QVec) -> QVec {
        let d = self.dim0;
        let mut out = qvec_zero(d);
        for i in 0..d {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..d {
                if y[j].is_zero() {
                    continue;
                }
                let xy = &x[i] * &y[j];
                for (m, o) in out.iter_mut().enumerate() {
                    let c = self.l2_00_const(i, j, m);
                    if !c.is_zero() {
                        *o += &(&xy * c);
                    }
                }
            }
        }
        out
    }

    fn l2_01(&self, x: &QVec, m: &QVec) -> QVec {
        let (d0, d1) = (self.dim0, self.dim1);
        let mut out = qvec_zero(d1);
        for i in 0..d0 {
            if x[i].is_zero() {
                continue;
            }
            for a in 0..d1 {
                if m[a].is_zero() {
                    continue;
                }
                let xm = &x[i] * &m[a];
                for (b, o) in out.iter_mut().enumerate() {
                    let c = self.l2_01_const(i, a, b);
                    if !c.is_zero() {
                        *o += &(&xm * c);
                    }
                }
            }
        }
        out
    }

    fn l3(&self, x: &QVec, y: &QVec, z: &QVec) -> QVec {
        let (d0, d1) = (self.dim0, self.dim1);
        let mut out = qvec_zero(d1);
        for i in 0..d0 {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..d0 {
                if y[j].is_zero() {
                    continue;
                }
                for k in 0..d0 {
                    if z[k].is_zero() {
                        continue;
                    }
                    let c = &(&x[i] * &y[j]) * &z[k];
                    for (a, o) in out.iter_mut().enumerate() {
                        let s = self.l3_const(i, j, k, a);
                        if !s.is_zero() {
                            *o += &(&c * s);
                        }
                    }
                }
            }
        }
        out
    }
}

/// `V_0 = g`, `V_{−1}` a line, `l1 = 0`, `l2` the bracket of `g` and
/// `l3(x,y,z) = ⟨[x,y], z⟩`. Rejects a non-Lie bracket or a non-invariant
/// form, naming a basis triple.
pub fn string_lie2(g: &LieAlgebra, form: &QMat) -> Result<Lie2Algebra> {
    g.validate()?;
    if form.rows() != g.dim() || form.cols() != g.dim() {
        return Err(Error::structural("bilinear form does not match the algebra dimension"));
    }
    if form.transpose() != *form {
        return Err(Error::validation("bilinear form is not symmetric", None));
    }
    if let Some((i, j, k)) = g.invariance_witness(form) {
        return Err(Error::validation(
            "bilinear form is not invariant",
            Some(format!("(e{}, e{}, e{})", i + 1, j + 1, k + 1)),
        ));
    }
    string_lie2_unchecked(g, form)
}

/// [`string_lie2`] without validating the inputs; `l3` is then only
/// antisymmetric in its first two slots in general.
pub fn string_lie2_unchecked(g: &LieAlgebra, form: &QMat) -> Result<Lie2Algebra> {
    let d = g.dim();
    if form.rows() != d || form.cols() != d {
        return Err(Error::structural("bilinear form does not match the algebra dimension"));
    }
    let mut l = Lie2Algebra::from_lie_algebra(g);
    l.dim1 = 1;
    l.labels1 = vec!["c".into()];
    l.l1 = QMat::zeros(d, 1);
    l.l2_01 = vec![Rational::zero(); d];
    l.l3 = vec![Rational::zero(); d * d * d];
    for i in 0..d {
        for j in 0..d {
            let xy = g.bracket(&qvec_unit(d, i), &qvec_unit(d, j));
            for k in 0..d {
                let v: Rational = form
                    .apply(&qvec_unit(d, k))
                    .iter()
                    .zip(&xy)
                    .map(|(a, b)| a * b)
                    .sum();
                l.set_l3(i, j, k, 0, v);
            }
        }
    }
    Ok(l)
}

/// A morphism of finite-dimensional 2-term L∞-algebras.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lie2Morphism {
    pub f0: QMat,
    pub f1: QMat,
    /// `f2(e_i, e_j) = Σ_a f2[(i * dim0 + j) * dim1' + a] f'_a`.
    pub f2: Vec<Rational>,
}

impl Lie2Morphism {
    pub fn identity(l: &Lie2Algebra) -> Self {
        Lie2Morphism {
            f0: QMat::identity(l.dim0),
            f1: QMat::identity(l.dim1),
            f2: vec![Rational::zero(); l.dim0 * l.dim0 * l.dim1],
        }
    }

    fn f2_apply(&self, d0: usize, d1t: usize, x: &QVec, y: &QVec) -> QVec {
        let mut out = qvec_zero(d1t);
        for i in 0..d0 {
            for j in 0..d0 {
                let c = &x[i] * &y[j];
                if c.is_zero() {
                    continue;
                }
                for (a, o) in out.iter_mut().enumerate() {
                    let s = &self.f2[(i * d0 + j) * d1t + a];
                    if !s.is_zero() {
                        *o += &(&c * s);
                    }
                }
            }
        }
        out
    }

    pub fn validate(&self, src: &Lie2Algebra, dst: &Lie2Algebra) -> Result<()> {
        let ok = self.f0.rows() == dst.dim0
            && self.f0.cols() == src.dim0
            && self.f1.rows() == dst.dim1
            && self.f1.cols() == src.dim1
            && self.f2.len() == src.dim0 * src.dim0 * dst.dim1;
        if !ok {
            return Err(Error::structural("morphism components do not match the algebra dimensions"));
        }
        let d0 = src.dim0;
        for i in 0..d0 {
            for j in 0..d0 {
                for a in 0..dst.dim1 {
                    if self.f2[(i * d0 + j) * dst.dim1 + a] != -&self.f2[(j * d0 + i) * dst.dim1 + a] {
                        return Err(Error::validation(
                            "f2 is not antisymmetric",
                            Some(format!("(e{}, e{})", i + 1, j + 1)),
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

struct BoundMorphism<'a> {
    f: &'a Lie2Morphism,
    d0: usize,
    d1t: usize,
}

impl MorphismMaps<Lie2Algebra, Lie2Algebra> for BoundMorphism<'_> {
    fn f0(&self, x: &QVec) -> QVec {
        self.f.f0.apply(x)
    }
    fn f1(&self, m: &QVec) -> QVec {
        self.f.f1.apply(m)
    }
    fn f2(&self, x: &QVec, y: &QVec) -> QVec {
        self.f.f2_apply(self.d0, self.d1t, x, y)
    }
}

/// The four morphism equations on all ordered basis tuples.
pub fn check_morphism(f: &Lie2Morphism, src: &Lie2Algebra, dst: &Lie2Algebra) -> Result<MorphismReport> {
    f.validate(src, dst)?;
    let (p0, p1) = src.basis_probes();
    let bound = BoundMorphism {
        f,
        d0: src.dim0,
        d1t: dst.dim1,
    };
    Ok(check_morphism_maps(&bound, src, dst, &p0, &p1, TupleMode::Ordered))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn killing_string_so3() -> Lie2Algebra {
        let g = LieAlgebra::so3();
        string_lie2(&g, &g.killing_form()).unwrap()
    }

    #[test]
    fn so3_killing_value() {
        let g = LieAlgebra::so3();
        let k = g.killing_form();
        assert_eq!(k.get(2, 2), &Rational::from_int(-2));
        let l = killing_string_so3();
        assert_eq!(l.l3_const(0, 1, 2, 0), &Rational::from_int(-2));
    }

    #[test]
    fn string_so3_passes_all_identities() {
        let r = killing_string_so3().check_homotopy_jacobi();
        assert!(r.all_passed(), "{r:?}");
    }

    #[test]
    fn abelian_string_is_zero() {
        let g = LieAlgebra::abelian(3);
        let l = string_lie2(&g, &QMat::identity(3)).unwrap();
        assert!(l.l2_00_tensor().iter().all(Rational::is_zero));
        assert!(l.l3_tensor().iter().all(Rational::is_zero));
    }

    #[test]
    fn lie_algebra_as_lie2() {
        assert!(Lie2Algebra::from_lie_algebra(&LieAlgebra::sl2()).check_homotopy_jacobi().all_passed());
        let mut bad = LieAlgebra::abelian(3);
        bad.set_bracket(0, 1, 1, Rational::one());
        bad.set_bracket(1, 2, 0, Rational::one());
        assert!(bad.validate().is_err());
        let r = Lie2Algebra::from_lie_algebra(&bad).check_homotopy_jacobi();
        assert_eq!(r.failing(), vec![3]);
    }

    #[test]
    fn doubled_l3_constant_breaks_k4_only() {
        let mut l = killing_string_so3();
        let v = l.l3_const(0, 1, 2, 0).clone();
        l.set_l3(0, 1, 2, 0, &v + &v);
        let r = l.check_homotopy_jacobi();
        assert_eq!(r.failing(), vec![4], "{r:?}");
        assert!(r.identities[3].witness.is_some());
    }

    #[test]
    fn non_invariant_form_breaks_k4_only() {
        let g = LieAlgebra::so3();
        let mut form = g.killing_form();
        form.set(0, 2, Rational::one());
        form.set(2, 0, Rational::one());
        assert!(matches!(string_lie2(&g, &form), Err(Error::Validation { .. })));
        let l = string_lie2_unchecked(&g, &form).unwrap();
        let r = l.check_homotopy_jacobi();
        assert_eq!(r.failing(), vec![4], "{r:?}");
    }

    #[test]
    fn crossed_module_is_strict_lie2() {
        let l = Lie2Algebra::identity_crossed_module(&LieAlgebra::so3());
        assert!(l.check_homotopy_jacobi().all_passed());
    }

    #[test]
    fn identity_morphism_passes() {
        let l = killing_string_so3();
        let r = check_morphism(&Lie2Morphism::identity(&l), &l, &l).unwrap();
        assert!(r.all_passed(), "{r:?}");
    }

    #[test]
    fn perturbed_f2_breaks_l2_equation() {
        let l = Lie2Algebra::identity_crossed_module(&LieAlgebra::so3());
        let mut f = Lie2Morphism::identity(&l);
        let d = 3;
        f.f2[(0 * d + 1) * d + 2] = Rational::one();
        f.f2[(1 * d + 0) * d + 2] = Rational::from_int(-1);
        let r = check_morphism(&f, &l, &l).unwrap();
        assert!(!r.passed("l2_l2"), "{r:?}");
    }

    #[test]
    fn morphism_dimension_mismatch() {
        let l = killing_string_so3();
        let other = Lie2Algebra::zero(2, 1);
        assert!(matches!(
            check_morphism(&Lie2Morphism::identity(&l), &l, &other),
            Err(Error::Structural(_))
        ));
    }

    #[test]
    fn tuple_counts() {
        // k = 4 needs four degree-0 inputs
        assert_eq!(input_tuples(4, 5, 2, TupleMode::Combinations).len(), 5);
        assert_eq!(input_tuples(1, 3, 2, TupleMode::Ordered).len(), 0);
    }
}
