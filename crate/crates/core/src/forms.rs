//! Cartan calculus on `R^n` with polynomial coefficients.
//!
//! Forms are evaluated with the determinant convention, so that
//! `(α∧β)(X,Y) = α(X)β(Y) − α(Y)β(X)` for 1-forms, and interior products are
//! `i_{X1∧…∧Xp} w = w(X1,…,Xp,·)`.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{PMat, PVec};
use crate::perm::{combinations, sort_with_sign};
use crate::poly::Poly;
use crate::rational::Rational;

/// `X = Σ X^i ∂/∂q^i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyVectorField {
    n: usize,
    comps: Vec<Poly>,
}

impl PolyVectorField {
    pub fn zero(n: usize) -> Self {
        PolyVectorField {
            n,
            comps: vec![Poly::zero(n); n],
        }
    }

    /// The coordinate field `∂/∂q^{i+1}`.
    pub fn coordinate(n: usize, i: usize) -> Self {
        let mut x = PolyVectorField::zero(n);
        x.comps[i] = Poly::one(n);
        x
    }

    pub fn new(comps: Vec<Poly>) -> Result<Self> {
        let n = comps.len();
        if comps.iter().any(|c| c.num_vars() != n) {
            return Err(Error::structural("vector field component over the wrong number of variables"));
        }
        Ok(PolyVectorField { n, comps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn comps(&self) -> &[Poly] {
        &self.comps
    }

    pub fn comp(&self, i: usize) -> &Poly {
        &self.comps[i]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Poly::is_zero)
    }

    /// `X(f) = Σ X^i ∂_i f`.
    pub fn apply(&self, f: &Poly) -> Poly {
        let mut acc = Poly::zero(self.n);
        for (i, c) in self.comps.iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &(c * &f.partial(i));
            }
        }
        acc
    }

    fn check(&self, other: &PolyVectorField) -> Result<()> {
        if self.n != other.n {
            return Err(Error::structural(format!("vector fields on R^{} and R^{}", self.n, other.n)));
        }
        Ok(())
    }

    /// `[X,Y]^i = X(Y^i) − Y(X^i)`.
    pub fn try_bracket(&self, other: &PolyVectorField) -> Result<PolyVectorField> {
        self.check(other)?;
        Ok(PolyVectorField {
            n: self.n,
            comps: (0..self.n)
                .map(|i| &self.apply(&other.comps[i]) - &other.apply(&self.comps[i]))
                .collect(),
        })
    }

    pub fn bracket(&self, other: &PolyVectorField) -> PolyVectorField {
        self.try_bracket(other).expect("same base dimension")
    }

    pub fn add(&self, other: &PolyVectorField) -> PolyVectorField {
        self.check(other).expect("same base dimension");
        PolyVectorField {
            n: self.n,
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &PolyVectorField) -> PolyVectorField {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> PolyVectorField {
        self.scale(&Poly::from_int(self.n, -1))
    }

    pub fn scale(&self, f: &Poly) -> PolyVectorField {
        PolyVectorField {
            n: self.n,
            comps: self.comps.iter().map(|c| c * f).collect(),
        }
    }

    pub fn random<R: Rng + ?Sized>(n: usize, max_degree: u32, rng: &mut R) -> Self {
        PolyVectorField {
            n,
            comps: (0..n).map(|_| Poly::random(n, max_degree, 3, 0.5, rng)).collect(),
        }
    }
}

impl fmt::Display for PolyVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .comps
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c})d/dq{}", i + 1))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Debug for PolyVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A `k`-form `Σ_I w_I dq^I` over strictly increasing index tuples.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyForm {
    n: usize,
    degree: usize,
    coeffs: BTreeMap<Vec<usize>, Poly>,
}

/// Sign of `dq^I ∧ dq^J` relative to the sorted merge, or `None` on overlap.
fn merge_sign(a: &[usize], b: &[usize]) -> Option<(Vec<usize>, i32)> {
    let mut inversions = 0usize;
    for &x in a {
        for &y in b {
            if x == y {
                return None;
            }
            if x > y {
                inversions += 1;
            }
        }
    }
    let mut merged: Vec<usize> = a.iter().chain(b).copied().collect();
    merged.sort_unstable();
    Some((merged, if inversions % 2 == 0 { 1 } else { -1 }))
}

impl PolyForm {
    pub fn zero(n: usize, degree: usize) -> Self {
        PolyForm {
            n,
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    /// A function viewed as a 0-form.
    pub fn function(f: Poly) -> Self {
        let mut w = PolyForm::zero(f.num_vars(), 0);
        if !f.is_zero() {
            w.coeffs.insert(vec![], f);
        }
        w
    }

    /// `f · dq^{i1}∧…∧dq^{ik}` for an arbitrary index list; repeated
    /// indices give zero.
    pub fn monomial(f: Poly, indices: &[usize]) -> Result<Self> {
        let n = f.num_vars();
        if let Some(&bad) = indices.iter().find(|&&i| i >= n) {
            return Err(Error::structural(format!("form index {bad} out of range for R^{n}")));
        }
        let mut w = PolyForm::zero(n, indices.len());
        let mut idx = indices.to_vec();
        if let Some(sign) = sort_with_sign(&mut idx) {
            let c = if sign > 0 { f } else { -f };
            w.add_coeff(idx, c);
        }
        Ok(w)
    }

    /// The constant form `dq^{i1}∧…∧dq^{ik}`.
    pub fn basis(n: usize, indices: &[usize]) -> Self {
        PolyForm::monomial(Poly::one(n), indices).expect("indices in range")
    }

    pub fn from_coeffs(n: usize, degree: usize, coeffs: impl IntoIterator<Item = (Vec<usize>, Poly)>) -> Result<Self> {
        let mut w = PolyForm::zero(n, degree);
        for (idx, c) in coeffs {
            if idx.len() != degree {
                return Err(Error::structural(format!(
                    "index tuple {idx:?} in a form of degree {degree}"
                )));
            }
            if c.num_vars() != n {
                return Err(Error::structural("form coefficient over the wrong number of variables"));
            }
            w = w.add(&PolyForm::monomial(c, &idx)?);
        }
        Ok(w)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&Vec<usize>, &Poly)> {
        self.coeffs.iter()
    }

    /// Coefficient on a strictly increasing tuple.
    pub fn coeff(&self, idx: &[usize]) -> Poly {
        self.coeffs.get(idx).cloned().unwrap_or_else(|| Poly::zero(self.n))
    }

    /// The function of a 0-form.
    pub fn as_function(&self) -> Poly {
        debug_assert_eq!(self.degree, 0);
        self.coeff(&[])
    }

    fn add_coeff(&mut self, idx: Vec<usize>, c: Poly) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(idx);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check(&self, other: &PolyForm) -> Result<()> {
        if self.n != other.n || self.degree != other.degree {
            return Err(Error::structural(format!(
                "adding a {}-form on R^{} to a {}-form on R^{}",
                self.degree, self.n, other.degree, other.n
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &PolyForm) -> Result<PolyForm> {
        self.check(other)?;
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            out.add_coeff(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn add(&self, other: &PolyForm) -> PolyForm {
        self.try_add(other).expect("forms of equal degree and base")
    }

    pub fn sub(&self, other: &PolyForm) -> PolyForm {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> PolyForm {
        PolyForm {
            n: self.n,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, f: &Poly) -> PolyForm {
        let mut out = PolyForm::zero(self.n, self.degree);
        for (k, c) in &self.coeffs {
            out.add_coeff(k.clone(), c * f);
        }
        out
    }

    pub fn scale_q(&self, c: &Rational) -> PolyForm {
        let mut out = PolyForm::zero(self.n, self.degree);
        for (k, x) in &self.coeffs {
            out.add_coeff(k.clone(), x.scale(c));
        }
        out
    }

    pub fn wedge(&self, other: &PolyForm) -> PolyForm {
        assert_eq!(self.n, other.n, "forms on different bases");
        let mut out = PolyForm::zero(self.n, self.degree + other.degree);
        if self.degree + other.degree > self.n {
            return out;
        }
        for (i, a) in &self.coeffs {
            for (j, b) in &other.coeffs {
                if let Some((idx, s)) = merge_sign(i, j) {
                    let c = a * b;
                    out.add_coeff(idx, if s > 0 { c } else { -c });
                }
            }
        }
        out
    }

    /// `dw = Σ ∂_i(w_J) dq^i∧dq^J`.
    pub fn d(&self) -> PolyForm {
        let mut out = PolyForm::zero(self.n, self.degree + 1);
        for (j, c) in &self.coeffs {
            for i in 0..self.n {
                let dc = c.partial(i);
                if dc.is_zero() {
                    continue;
                }
                if let Some((idx, s)) = merge_sign(&[i], j) {
                    out.add_coeff(idx, if s > 0 { dc } else { -dc });
                }
            }
        }
        out
    }

    /// `i_X w = w(X, ·)`.
    pub fn interior(&self, x: &PolyVectorField) -> PolyForm {
        assert_eq!(self.n, x.n(), "field and form on different bases");
        if self.degree == 0 {
            return PolyForm::zero(self.n, 0);
        }
        let mut out = PolyForm::zero(self.n, self.degree - 1);
        for (idx, c) in &self.coeffs {
            for (r, &i) in idx.iter().enumerate() {
                let xi = x.comp(i);
                if xi.is_zero() {
                    continue;
                }
                let mut rest = idx.clone();
                rest.remove(r);
                let t = c * xi;
                out.add_coeff(rest, if r % 2 == 0 { t } else { -t });
            }
        }
        out
    }

    /// `i_{X1∧…∧Xp} w = w(X1,…,Xp,·)`.
    pub fn try_interior_many(&self, xs: &[PolyVectorField]) -> Result<PolyForm> {
        if xs.len() > self.degree {
            return Err(Error::structural(format!(
                "contracting {} fields into a {}-form",
                xs.len(),
                self.degree
            )));
        }
        let mut w = self.clone();
        for x in xs {
            w = w.interior(x);
        }
        Ok(w)
    }

    /// Full evaluation `w(X1,…,Xk)`.
    pub fn eval(&self, xs: &[PolyVectorField]) -> Result<Poly> {
        if xs.len() != self.degree {
            return Err(Error::structural(format!(
                "evaluating a {}-form on {} fields",
                self.degree,
                xs.len()
            )));
        }
        Ok(self.try_interior_many(xs)?.as_function())
    }

    /// `L_X w = i_X dw + d i_X w`.
    pub fn lie_derivative(&self, x: &PolyVectorField) -> PolyForm {
        if self.degree == 0 {
            return PolyForm::function(x.apply(&self.as_function()));
        }
        let a = self.d().interior(x);
        let b = self.interior(x).d();
        a.add(&b)
    }

    pub fn first_nonzero(&self) -> Option<(&Vec<usize>, &Poly)> {
        self.coeffs.iter().next()
    }

    /// A random form with each coordinate coefficient of degree `<= max_degree`.
    pub fn random<R: Rng + ?Sized>(n: usize, degree: usize, max_degree: u32, rng: &mut R) -> Self {
        let mut w = PolyForm::zero(n, degree);
        for idx in combinations(n, degree) {
            w.add_coeff(idx, Poly::random(n, max_degree, 3, 0.5, rng));
        }
        w
    }
}

impl fmt::Display for PolyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(idx, c)| {
                if idx.is_empty() {
                    format!("{c}")
                } else {
                    let basis: Vec<String> = idx.iter().map(|i| format!("dq{}", i + 1)).collect();
                    format!("({c}){}", basis.join("^"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for PolyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `dw(X0,…,Xk)` through the invariant (Koszul) formula
/// `Σ (−1)^i X_i(w(…X̂_i…)) + Σ_{i<j} (−1)^{i+j} w([X_i,X_j],…X̂_i…X̂_j…)`.
pub fn d_koszul_eval(w: &PolyForm, xs: &[PolyVectorField]) -> Result<Poly> {
    let k = w.degree();
    if xs.len() != k + 1 {
        return Err(Error::structural("wrong number of fields for the Koszul formula"));
    }
    let n = w.n();
    let mut acc = Poly::zero(n);
    for i in 0..=k {
        let rest: Vec<PolyVectorField> = xs.iter().enumerate().filter(|(a, _)| *a != i).map(|(_, x)| x.clone()).collect();
        let t = xs[i].apply(&w.eval(&rest)?);
        acc = if i % 2 == 0 { &acc + &t } else { &acc - &t };
    }
    for i in 0..=k {
        for j in i + 1..=k {
            let mut args = vec![xs[i].bracket(&xs[j])];
            args.extend(xs.iter().enumerate().filter(|(a, _)| *a != i && *a != j).map(|(_, x)| x.clone()));
            let t = w.eval(&args)?;
            acc = if (i + j) % 2 == 0 { &acc + &t } else { &acc - &t };
        }
    }
    Ok(acc)
}

/// A `rows × cols` matrix whose entries are `degree`-forms; the value on
/// fields is the polynomial matrix of entrywise evaluations. Vector-valued
/// forms are the `cols = 1` case.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatForm {
    rows: usize,
    cols: usize,
    n: usize,
    degree: usize,
    entries: Vec<PolyForm>,
}

impl MatForm {
    pub fn zero(n: usize, degree: usize, rows: usize, cols: usize) -> Self {
        MatForm {
            rows,
            cols,
            n,
            degree,
            entries: vec![PolyForm::zero(n, degree); rows * cols],
        }
    }

    pub fn from_pmat(m: &PMat) -> Self {
        let n = m.num_vars();
        MatForm {
            rows: m.rows(),
            cols: m.cols(),
            n,
            degree: 0,
            entries: m.entries().iter().map(|p| PolyForm::function(p.clone())).collect(),
        }
    }

    /// `Σ_i dq^i ⊗ M_i` for a list of `n` matrices.
    pub fn from_one_form_components(n: usize, comps: &[PMat]) -> Result<Self> {
        if comps.len() != n {
            return Err(Error::structural(format!("{} matrices for a 1-form on R^{n}", comps.len())));
        }
        let (rows, cols) = comps.first().map_or((0, 0), |m| (m.rows(), m.cols()));
        let mut out = MatForm::zero(n, 1, rows, cols);
        for (i, m) in comps.iter().enumerate() {
            if m.rows() != rows || m.cols() != cols {
                return Err(Error::structural("1-form components of different shapes"));
            }
            let dqi = PolyForm::basis(n, &[i]);
            for r in 0..rows {
                for c in 0..cols {
                    let e = dqi.scale(m.get(r, c));
                    out.entries[r * cols + c] = out.entries[r * cols + c].add(&e);
                }
            }
        }
        Ok(out)
    }

    /// Vector-valued form from its components.
    pub fn from_column(n: usize, degree: usize, comps: Vec<PolyForm>) -> Result<Self> {
        if comps.iter().any(|w| w.n() != n || w.degree() != degree) {
            return Err(Error::structural("vector-valued form components of mixed degree or base"));
        }
        Ok(MatForm {
            rows: comps.len(),
            cols: 1,
            n,
            degree,
            entries: comps,
        })
    }

    pub fn from_entries(n: usize, degree: usize, rows: usize, cols: usize, entries: Vec<PolyForm>) -> Result<Self> {
        if entries.len() != rows * cols || entries.iter().any(|w| w.n() != n || w.degree() != degree) {
            return Err(Error::structural("matrix-valued form entries do not fit the declared shape"));
        }
        Ok(MatForm {
            rows,
            cols,
            n,
            degree,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn entry(&self, r: usize, c: usize) -> &PolyForm {
        &self.entries[r * self.cols + c]
    }

    pub fn entries(&self) -> &[PolyForm] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(PolyForm::is_zero)
    }

    fn zip_with(&self, other: &MatForm, f: impl Fn(&PolyForm, &PolyForm) -> PolyForm) -> MatForm {
        assert!(
            self.rows == other.rows && self.cols == other.cols && self.degree == other.degree && self.n == other.n,
            "matrix-valued forms of different shapes"
        );
        MatForm {
            rows: self.rows,
            cols: self.cols,
            n: self.n,
            degree: self.degree,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, other: &MatForm) -> MatForm {
        self.zip_with(other, PolyForm::add)
    }

    pub fn sub(&self, other: &MatForm) -> MatForm {
        self.zip_with(other, PolyForm::sub)
    }

    pub fn neg(&self) -> MatForm {
        self.map(PolyForm::neg)
    }

    pub fn scale_q(&self, c: &Rational) -> MatForm {
        self.map(|w| w.scale_q(c))
    }

    pub fn map(&self, f: impl Fn(&PolyForm) -> PolyForm) -> MatForm {
        let entries: Vec<PolyForm> = self.entries.iter().map(f).collect();
        let degree = entries.first().map_or(self.degree, PolyForm::degree);
        MatForm {
            rows: self.rows,
            cols: self.cols,
            n: self.n,
            degree,
            entries,
        }
    }

    /// Entrywise `d`.
    pub fn d(&self) -> MatForm {
        MatForm {
            rows: self.rows,
            cols: self.cols,
            n: self.n,
            degree: self.degree + 1,
            entries: self.entries.iter().map(PolyForm::d).collect(),
        }
    }

    /// Entrywise transpose of the matrix (form parts untouched).
    pub fn transpose(&self) -> MatForm {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.entry(r, c).clone());
            }
        }
        MatForm {
            rows: self.cols,
            cols: self.rows,
            n: self.n,
            degree: self.degree,
            entries,
        }
    }

    /// Matrix product with wedge on the form parts.
    pub fn wedge(&self, other: &MatForm) -> MatForm {
        assert_eq!(self.cols, other.rows, "matrix-valued wedge shape mismatch");
        assert_eq!(self.n, other.n, "forms on different bases");
        let mut out = MatForm::zero(self.n, self.degree + other.degree, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.entry(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.entry(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.entries[idx] = out.entries[idx].add(&a.wedge(b));
                }
            }
        }
        out
    }

    pub fn left_mul(&self, m: &PMat) -> MatForm {
        MatForm::from_pmat(m).wedge(self)
    }

    pub fn right_mul(&self, m: &PMat) -> MatForm {
        self.wedge(&MatForm::from_pmat(m))
    }

    pub fn interior(&self, x: &PolyVectorField) -> MatForm {
        self.map(|w| w.interior(x))
    }

    /// Entrywise evaluation on `degree` fields.
    pub fn eval(&self, xs: &[PolyVectorField]) -> Result<PMat> {
        let vals = self.entries.iter().map(|w| w.eval(xs)).collect::<Result<Vec<_>>>()?;
        PMat::from_entries(self.n, self.rows, self.cols, vals)
    }

    /// Column vector of a vector-valued form evaluated on fields.
    pub fn eval_vec(&self, xs: &[PolyVectorField]) -> Result<PVec> {
        Ok(self.eval(xs)?.column(0))
    }

    /// The coefficient matrix on a strictly increasing index tuple.
    pub fn component(&self, idx: &[usize]) -> PMat {
        let vals = self.entries.iter().map(|w| w.coeff(idx)).collect();
        PMat::from_entries(self.n, self.rows, self.cols, vals).expect("consistent shape")
    }

    /// The first nonzero coefficient as `(row, col, index tuple, value)`.
    pub fn first_nonzero(&self) -> Option<(usize, usize, Vec<usize>, Poly)> {
        for (k, w) in self.entries.iter().enumerate() {
            if let Some((idx, c)) = w.first_nonzero() {
                return Some((k / self.cols, k % self.cols, idx.clone(), c.clone()));
            }
        }
        None
    }

    /// Kronecker product, entries combined by wedge. Row `(i, k)` of the
    /// result is `i * other.rows + k`.
    pub fn kron(&self, other: &MatForm) -> MatForm {
        assert_eq!(self.n, other.n, "forms on different bases");
        let (rows, cols) = (self.rows * other.rows, self.cols * other.cols);
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..self.rows {
            for k in 0..other.rows {
                for j in 0..self.cols {
                    for l in 0..other.cols {
                        entries.push(self.entry(i, j).wedge(other.entry(k, l)));
                    }
                }
            }
        }
        MatForm {
            rows,
            cols,
            n: self.n,
            degree: self.degree + other.degree,
            entries,
        }
    }

    /// Adds `block` into the submatrix starting at `(r_off, c_off)`.
    pub fn with_block(mut self, r_off: usize, c_off: usize, block: &MatForm) -> MatForm {
        assert!(
            r_off + block.rows <= self.rows && c_off + block.cols <= self.cols && block.degree == self.degree,
            "block does not fit"
        );
        for r in 0..block.rows {
            for c in 0..block.cols {
                let idx = (r + r_off) * self.cols + c + c_off;
                self.entries[idx] = self.entries[idx].add(block.entry(r, c));
            }
        }
        self
    }

    /// The `rows × cols` submatrix starting at `(r_off, c_off)`.
    pub fn block(&self, r_off: usize, c_off: usize, rows: usize, cols: usize) -> MatForm {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(self.entry(r + r_off, c + c_off).clone());
            }
        }
        MatForm {
            rows,
            cols,
            n: self.n,
            degree: self.degree,
            entries,
        }
    }
}

impl fmt::Debug for MatForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.entry(i, j).to_string()).collect())
            .collect();
        write!(f, "{rows:?}")
    }
}

/// Human-readable name of a strictly increasing index tuple, 1-based.
pub fn index_label(idx: &[usize]) -> String {
    let parts: Vec<String> = idx.iter().map(|i| format!("d/dq{}", i + 1)).collect();
    format!("({})", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: usize, i: usize) -> Poly {
        Poly::var(n, i)
    }

    fn dd(n: usize, i: usize) -> PolyVectorField {
        PolyVectorField::coordinate(n, i)
    }

    #[test]
    fn bracket_examples() {
        let n = 2;
        assert!(dd(n, 0).bracket(&dd(n, 1)).is_zero());
        let x = dd(n, 1).scale(&q(n, 0));
        assert_eq!(x.bracket(&dd(n, 0)), dd(n, 1).neg());
        let a = dd(n, 0).scale(&q(n, 1));
        let b = dd(n, 1).scale(&q(n, 0));
        let expected = dd(n, 1).scale(&q(n, 1)).sub(&dd(n, 0).scale(&q(n, 0)));
        assert_eq!(a.bracket(&b), expected);
    }

    #[test]
    fn de_rham_examples() {
        let n = 2;
        assert_eq!(PolyForm::function(q(n, 0)).d(), PolyForm::basis(n, &[0]));
        assert!(PolyForm::basis(n, &[0]).d().is_zero());
        let w = PolyForm::monomial(q(n, 0), &[1]).unwrap();
        assert_eq!(w.d(), PolyForm::basis(n, &[0, 1]));
    }

    #[test]
    fn lie_derivative_examples() {
        let n = 2;
        assert!(PolyForm::basis(n, &[0]).lie_derivative(&dd(n, 0)).is_zero());
        let w = PolyForm::monomial(q(n, 0), &[1]).unwrap();
        assert_eq!(w.lie_derivative(&dd(n, 0)), PolyForm::basis(n, &[1]));
        let euler = dd(n, 0).scale(&q(n, 0));
        assert_eq!(PolyForm::basis(n, &[0]).lie_derivative(&euler), PolyForm::basis(n, &[0]));
    }

    #[test]
    fn interior_examples() {
        let n = 3;
        assert_eq!(PolyForm::basis(n, &[0]).interior(&dd(n, 0)), PolyForm::function(Poly::one(n)));
        let vol = PolyForm::basis(n, &[0, 1, 2]);
        assert_eq!(vol.try_interior_many(&[dd(n, 0), dd(n, 1)]).unwrap(), PolyForm::basis(n, &[2]));
        assert_eq!(
            vol.try_interior_many(&[dd(n, 1), dd(n, 0)]).unwrap(),
            PolyForm::basis(n, &[2]).neg()
        );
        assert!(PolyForm::basis(n, &[0]).try_interior_many(&[dd(n, 0), dd(n, 1)]).is_err());
    }

    #[test]
    fn wedge_determinant_convention() {
        let n = 2;
        let a = PolyForm::basis(n, &[0]);
        let b = PolyForm::basis(n, &[1]);
        let x = dd(n, 0).add(&dd(n, 1).scale(&q(n, 0)));
        let y = dd(n, 1);
        let lhs = a.wedge(&b).eval(&[x.clone(), y.clone()]).unwrap();
        let rhs = &(&a.eval(&[x.clone()]).unwrap() * &b.eval(&[y.clone()]).unwrap())
            - &(&a.eval(&[y]).unwrap() * &b.eval(&[x]).unwrap());
        assert_eq!(lhs, rhs);
        assert!(b.wedge(&a).add(&a.wedge(&b)).is_zero());
    }

    #[test]
    fn monomial_sorts_with_sign() {
        let n = 3;
        assert_eq!(
            PolyForm::monomial(Poly::one(n), &[2, 0]).unwrap(),
            PolyForm::basis(n, &[0, 2]).neg()
        );
        assert!(PolyForm::monomial(Poly::one(n), &[1, 1]).unwrap().is_zero());
        assert!(PolyForm::monomial(Poly::one(n), &[3]).is_err());
    }

    #[test]
    fn matrix_form_curvature_of_scalar_connection() {
        let n = 2;
        let gamma = vec![
            PMat::from_entries(n, 1, 1, vec![q(n, 1)]).unwrap(),
            PMat::zeros(n, 1, 1),
        ];
        let g = MatForm::from_one_form_components(n, &gamma).unwrap();
        let curv = g.d().add(&g.wedge(&g));
        let val = curv.eval(&[dd(n, 0), dd(n, 1)]).unwrap();
        assert_eq!(val.get(0, 0), &Poly::from_int(n, -1));
    }
}
