//! JSON input documents, command dispatch and verification reports.
//!
//! A document is `{"kind": ..., "seed": optional, "payload": {...}}`. Rationals
//! are strings `"p/q"` (or bare integers in a string), polynomials are lists of
//! `{"exponents": [...], "coeff": "p/q"}`, forms are lists of
//! `{"indices": [...], "coeff": <poly>}`, and sparse tensors are lists of
//! `{"index": [...], "value": "p/q"}`. All indices are 0-based.
//!
//! Parse errors carry the JSON path of the offending field.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::courant::{basis_sections, compare_with_extension, find_residual_witness, CourantSection, SeveraForm};
use crate::error::{Error, Result};
use crate::ext::{courant_cocycle, differential, homological_check, is_cocycle, trivialize, Cochain, ExtensionData};
use crate::forms::{MatForm, PolyForm};
use crate::lie2::Lie2Algebra;
use crate::linalg::{PMat, QMat, QVec};
use crate::poly::{Poly, TermRecord};
use crate::rational::Rational;
use crate::rep::{check_dual_pairing, Level, RepUH2};
use crate::report::{all_passed, Check};
use crate::twogroup::{check_gpd_cocycle, Ext2Group, FinGroupoid, GpdCochain, GpdRep, Nerve};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Body {
    Lie2Algebra(Lie2Algebra),
    RepUth(RepUH2),
    Cochain { rep: RepUH2, cochain: Cochain },
    Courant(SeveraForm),
    Fin2Group { rep: GpdRep, cocycle: GpdCochain },
    Extension { rep: RepUH2, cochain: Cochain },
}

impl Body {
    pub fn kind(&self) -> &'static str {
        match self {
            Body::Lie2Algebra(_) => "lie2_algebra",
            Body::RepUth(_) => "rep_uth",
            Body::Cochain { .. } => "cochain",
            Body::Courant(_) => "courant",
            Body::Fin2Group { .. } => "fin2group",
            Body::Extension { .. } => "extension",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub seed: Option<u64>,
    pub body: Body,
}

#[derive(Deserialize)]
struct RawDocument {
    kind: String,
    #[serde(default)]
    seed: Option<u64>,
    payload: Value,
}

type PolyWire = Vec<TermRecord>;

#[derive(Serialize, Deserialize)]
struct FormTerm {
    indices: Vec<usize>,
    coeff: PolyWire,
}

type FormWire = Vec<FormTerm>;

#[derive(Serialize, Deserialize)]
struct MatFormWire {
    degree: usize,
    rows: usize,
    cols: usize,
    /// Row-major.
    entries: Vec<FormWire>,
}

#[derive(Serialize, Deserialize)]
struct SparseEntry {
    index: Vec<usize>,
    value: Rational,
}

fn yes() -> bool {
    true
}

#[derive(Serialize, Deserialize)]
struct Lie2Wire {
    dim0: usize,
    dim1: usize,
    #[serde(default)]
    labels0: Option<Vec<String>>,
    #[serde(default)]
    labels1: Option<Vec<String>>,
    /// Require `l2` on `V0 ∧ V0` and `l3` to be alternating.
    #[serde(default = "yes")]
    alternating: bool,
    #[serde(default)]
    l1: Vec<SparseEntry>,
    #[serde(default)]
    l2_00: Vec<SparseEntry>,
    #[serde(default)]
    l2_01: Vec<SparseEntry>,
    #[serde(default)]
    l3: Vec<SparseEntry>,
}

#[derive(Serialize, Deserialize)]
struct RepWire {
    n: usize,
    r0: usize,
    r1: usize,
    boundary: Vec<Vec<PolyWire>>,
    gamma0: Vec<Vec<Vec<PolyWire>>>,
    gamma1: Vec<Vec<Vec<PolyWire>>>,
    omega: MatFormWire,
}

#[derive(Serialize, Deserialize)]
struct CochainWire {
    rep: RepWire,
    k: usize,
    part0: MatFormWire,
    part1: MatFormWire,
}

#[derive(Serialize, Deserialize)]
struct CourantWire {
    n: usize,
    h: FormWire,
}

#[derive(Serialize, Deserialize)]
struct F2Entry {
    arrows: [usize; 2],
    matrix: Vec<Vec<Rational>>,
}

#[derive(Serialize, Deserialize)]
struct ValueEntry {
    arrows: Vec<usize>,
    value: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct Fin2GroupWire {
    objects: usize,
    source: Vec<usize>,
    target: Vec<usize>,
    /// `table[a][b]` is the index of `a∘b`, or null when not composable.
    table: Vec<Vec<Option<usize>>>,
    #[serde(default)]
    labels: Option<Vec<String>>,
    r0: Vec<usize>,
    r1: Vec<usize>,
    boundary: Vec<Vec<Vec<Rational>>>,
    /// Defaults to identities.
    #[serde(default)]
    f1_0: Option<Vec<Vec<Vec<Rational>>>>,
    #[serde(default)]
    f1_1: Option<Vec<Vec<Vec<Rational>>>>,
    #[serde(default)]
    f2: Vec<F2Entry>,
    #[serde(default)]
    c2: Vec<ValueEntry>,
    #[serde(default)]
    c3: Vec<ValueEntry>,
}

fn at(loc: impl Into<String>, e: Error) -> Error {
    match e {
        Error::Parse { .. } => e,
        other => Error::parse(loc, other.to_string()),
    }
}

fn typed<T: DeserializeOwned>(payload: Value) -> Result<T> {
    serde_path_to_error::deserialize(payload).map_err(|e| {
        let path = e.path().to_string();
        let loc = if path == "." { "payload".to_string() } else { format!("payload.{path}") };
        Error::parse(loc, e.into_inner().to_string())
    })
}

fn poly_in(n: usize, w: &PolyWire, loc: &str) -> Result<Poly> {
    Poly::from_records(n, w).map_err(|e| at(loc, e))
}

fn form_in(n: usize, degree: usize, w: &FormWire, loc: &str) -> Result<PolyForm> {
    let mut coeffs = Vec::with_capacity(w.len());
    for (i, t) in w.iter().enumerate() {
        coeffs.push((t.indices.clone(), poly_in(n, &t.coeff, &format!("{loc}[{i}].coeff"))?));
    }
    PolyForm::from_coeffs(n, degree, coeffs).map_err(|e| at(loc, e))
}

fn matform_in(n: usize, w: &MatFormWire, loc: &str) -> Result<MatForm> {
    let entries = w
        .entries
        .iter()
        .enumerate()
        .map(|(i, f)| form_in(n, w.degree, f, &format!("{loc}.entries[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    MatForm::from_entries(n, w.degree, w.rows, w.cols, entries).map_err(|e| at(loc, e))
}

fn pmat_in(n: usize, rows: usize, cols: usize, w: &[Vec<PolyWire>], loc: &str) -> Result<PMat> {
    if w.len() != rows || w.iter().any(|r| r.len() != cols) {
        return Err(Error::parse(loc, format!("expected a {rows}x{cols} matrix")));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for (i, row) in w.iter().enumerate() {
        for (j, p) in row.iter().enumerate() {
            data.push(poly_in(n, p, &format!("{loc}[{i}][{j}]"))?);
        }
    }
    PMat::from_entries(n, rows, cols, data).map_err(|e| at(loc, e))
}

fn qmat_in(rows: usize, cols: usize, w: &[Vec<Rational>], loc: &str) -> Result<QMat> {
    if w.len() != rows || w.iter().any(|r| r.len() != cols) {
        return Err(Error::parse(loc, format!("expected a {rows}x{cols} matrix")));
    }
    let mut m = QMat::zeros(rows, cols);
    for (i, row) in w.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            m.set(i, j, v.clone());
        }
    }
    Ok(m)
}

fn poly_out(p: &Poly) -> PolyWire {
    p.to_records()
}

fn form_out(w: &PolyForm) -> FormWire {
    w.coeffs().map(|(idx, c)| FormTerm { indices: idx.clone(), coeff: poly_out(c) }).collect()
}

fn matform_out(m: &MatForm) -> MatFormWire {
    MatFormWire { degree: m.degree(), rows: m.rows(), cols: m.cols(), entries: m.entries().iter().map(form_out).collect() }
}

fn pmat_out(m: &PMat) -> Vec<Vec<PolyWire>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| poly_out(m.get(i, j))).collect()).collect()
}

fn qmat_out(m: &QMat) -> Vec<Vec<Rational>> {
    m.to_rows()
}

fn lie2_in(w: Lie2Wire) -> Result<Lie2Algebra> {
    let (d0, d1) = (w.dim0, w.dim1);
    let mut l = Lie2Algebra::zero(d0, d1);
    let bounds = |name: &str, e: &SparseEntry, i: usize, dims: &[usize]| -> Result<()> {
        if e.index.len() != dims.len() || e.index.iter().zip(dims).any(|(x, d)| x >= d) {
            return Err(Error::parse(format!("payload.{name}[{i}].index"), "index out of range"));
        }
        Ok(())
    };
    for (i, e) in w.l1.iter().enumerate() {
        bounds("l1", e, i, &[d0, d1])?;
        l.set_l1(e.index[0], e.index[1], e.value.clone());
    }
    for (i, e) in w.l2_00.iter().enumerate() {
        bounds("l2_00", e, i, &[d0, d0, d0])?;
        l.set_l2_00(e.index[0], e.index[1], e.index[2], e.value.clone());
    }
    for (i, e) in w.l2_01.iter().enumerate() {
        bounds("l2_01", e, i, &[d0, d1, d1])?;
        l.set_l2_01(e.index[0], e.index[1], e.index[2], e.value.clone());
    }
    for (i, e) in w.l3.iter().enumerate() {
        bounds("l3", e, i, &[d0, d0, d0, d1])?;
        l.set_l3(e.index[0], e.index[1], e.index[2], e.index[3], e.value.clone());
    }
    if w.labels0.is_some() || w.labels1.is_some() {
        let l0 = w.labels0.unwrap_or_else(|| l.labels0().to_vec());
        let l1 = w.labels1.unwrap_or_else(|| l.labels1().to_vec());
        l = l.with_labels(l0, l1).map_err(|e| at("payload.labels0", e))?;
    }
    if w.alternating {
        l.validate_antisymmetry().map_err(|e| at("payload", e))?;
    }
    Ok(l)
}

fn lie2_out(l: &Lie2Algebra) -> Lie2Wire {
    let (d0, d1) = (l.dim0(), l.dim1());
    let nz = |index: Vec<usize>, v: &Rational| (!v.is_zero()).then(|| SparseEntry { index, value: v.clone() });
    let mut w = Lie2Wire {
        dim0: d0,
        dim1: d1,
        labels0: Some(l.labels0().to_vec()),
        labels1: Some(l.labels1().to_vec()),
        alternating: l.validate_antisymmetry().is_ok(),
        l1: vec![],
        l2_00: vec![],
        l2_01: vec![],
        l3: vec![],
    };
    for i in 0..d0 {
        for a in 0..d1 {
            w.l1.extend(nz(vec![i, a], l.l1_matrix().get(i, a)));
            for b in 0..d1 {
                w.l2_01.extend(nz(vec![i, a, b], l.l2_01_const(i, a, b)));
            }
        }
        for j in 0..d0 {
            for m in 0..d0 {
                w.l2_00.extend(nz(vec![i, j, m], l.l2_00_const(i, j, m)));
                for a in 0..d1 {
                    w.l3.extend(nz(vec![i, j, m, a], l.l3_const(i, j, m, a)));
                }
            }
        }
    }
    w
}

fn rep_in(w: &RepWire, loc: &str) -> Result<RepUH2> {
    let n = w.n;
    let boundary = pmat_in(n, w.r0, w.r1, &w.boundary, &format!("{loc}.boundary"))?;
    let gammas = |g: &[Vec<Vec<PolyWire>>], r: usize, name: &str| -> Result<Vec<PMat>> {
        g.iter().enumerate().map(|(i, m)| pmat_in(n, r, r, m, &format!("{loc}.{name}[{i}]"))).collect()
    };
    let gamma0 = gammas(&w.gamma0, w.r0, "gamma0")?;
    let gamma1 = gammas(&w.gamma1, w.r1, "gamma1")?;
    let omega = matform_in(n, &w.omega, &format!("{loc}.omega"))?;
    RepUH2::new(boundary, gamma0, gamma1, omega).map_err(|e| at(loc, e))
}

fn rep_out(r: &RepUH2) -> RepWire {
    RepWire {
        n: r.n(),
        r0: r.r0(),
        r1: r.r1(),
        boundary: pmat_out(r.boundary()),
        gamma0: r.gamma(Level::Zero).iter().map(pmat_out).collect(),
        gamma1: r.gamma(Level::MinusOne).iter().map(pmat_out).collect(),
        omega: matform_out(r.omega()),
    }
}

fn cochain_in(w: &CochainWire) -> Result<(RepUH2, Cochain)> {
    let rep = rep_in(&w.rep, "payload.rep")?;
    let p0 = matform_in(rep.n(), &w.part0, "payload.part0")?;
    let p1 = matform_in(rep.n(), &w.part1, "payload.part1")?;
    if p0.rows() != rep.r0() || p1.rows() != rep.r1() {
        return Err(Error::parse("payload", "cochain values do not match the representation ranks"));
    }
    let c = Cochain::new(w.k, p0, p1).map_err(|e| at("payload", e))?;
    Ok((rep, c))
}

fn cochain_out(rep: &RepUH2, c: &Cochain) -> CochainWire {
    CochainWire { rep: rep_out(rep), k: c.degree(), part0: matform_out(c.part0()), part1: matform_out(c.part1()) }
}

fn fin2group_in(w: Fin2GroupWire) -> Result<(GpdRep, GpdCochain)> {
    let mut g = FinGroupoid::new(w.objects, w.source, w.target, w.table).map_err(|e| at("payload.table", e))?;
    if let Some(labels) = &w.labels {
        if labels.len() != g.num_arrows() {
            return Err(Error::parse("payload.labels", "one label per arrow"));
        }
        let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
        g = g.with_labels(&refs);
    }
    let objs = g.num_objects();
    let arrows = g.num_arrows();
    if w.r0.len() != objs || w.r1.len() != objs || w.boundary.len() != objs {
        return Err(Error::parse("payload.r0", "ranks and boundaries are given per object"));
    }
    let boundary = (0..objs)
        .map(|x| qmat_in(w.r0[x], w.r1[x], &w.boundary[x], &format!("payload.boundary[{x}]")))
        .collect::<Result<Vec<_>>>()?;
    let f1 = |given: &Option<Vec<Vec<Vec<Rational>>>>, ranks: &[usize], name: &str| -> Result<Vec<QMat>> {
        match given {
            None => (0..arrows)
                .map(|a| {
                    let (s, t) = (ranks[g.source(a)], ranks[g.target(a)]);
                    if s != t {
                        return Err(Error::parse(format!("payload.{name}"), "identity default needs equal ranks"));
                    }
                    Ok(QMat::identity(s))
                })
                .collect(),
            Some(ms) => {
                if ms.len() != arrows {
                    return Err(Error::parse(format!("payload.{name}"), "one matrix per arrow"));
                }
                (0..arrows)
                    .map(|a| {
                        qmat_in(ranks[g.target(a)], ranks[g.source(a)], &ms[a], &format!("payload.{name}[{a}]"))
                    })
                    .collect()
            }
        }
    };
    let f1_0 = f1(&w.f1_0, &w.r0, "f1_0")?;
    let f1_1 = f1(&w.f1_1, &w.r1, "f1_1")?;
    let mut f2 = BTreeMap::new();
    for (i, e) in w.f2.iter().enumerate() {
        let [a, b] = e.arrows;
        if a >= arrows || b >= arrows || g.compose(a, b).is_none() {
            return Err(Error::parse(format!("payload.f2[{i}].arrows"), "not a composable pair"));
        }
        let m = qmat_in(w.r1[g.target(a)], w.r0[g.source(b)], &e.matrix, &format!("payload.f2[{i}].matrix"))?;
        f2.insert((a, b), m);
    }
    let rep = GpdRep::new_unchecked(g, w.r0.clone(), w.r1.clone(), boundary, f1_0, f1_1, f2)
        .map_err(|e| at("payload", e))?;
    let collect = |entries: &[ValueEntry]| -> BTreeMap<Vec<usize>, QVec> {
        entries.iter().map(|e| (e.arrows.clone(), e.value.clone())).collect()
    };
    let part0 = collect(&w.c2);
    let part1 = collect(&w.c3);
    for (name, entries, len) in [("c2", &w.c2, 2), ("c3", &w.c3, 3)] {
        if let Some(i) = entries.iter().position(|e| e.arrows.len() != len) {
            return Err(Error::parse(format!("payload.{name}[{i}].arrows"), format!("expected {len} arrows")));
        }
    }
    let cocycle = GpdCochain::new(&rep, 2, part0, part1).map_err(|e| {
        let loc = match &e {
            Error::Validation { witness: Some(w), .. } if w.split(", ").count() == 3 => "payload.c3",
            _ => "payload.c2",
        };
        at(loc, e)
    })?;
    Ok((rep, cocycle))
}

fn fin2group_out(rep: &GpdRep, c: &GpdCochain) -> Fin2GroupWire {
    let g = rep.base();
    let arrows = g.num_arrows();
    let values = |part: &BTreeMap<Vec<usize>, QVec>| {
        part.iter().map(|(k, v)| ValueEntry { arrows: k.clone(), value: v.clone() }).collect()
    };
    Fin2GroupWire {
        objects: g.num_objects(),
        source: g.sources().to_vec(),
        target: g.targets().to_vec(),
        table: g.table(),
        labels: Some(g.labels().to_vec()),
        r0: rep.ranks0().to_vec(),
        r1: rep.ranks1().to_vec(),
        boundary: (0..g.num_objects()).map(|x| qmat_out(rep.boundary(x))).collect(),
        f1_0: Some((0..arrows).map(|a| qmat_out(rep.f1(0, a))).collect()),
        f1_1: Some((0..arrows).map(|a| qmat_out(rep.f1(1, a))).collect()),
        f2: rep
            .f2_entries()
            .into_iter()
            .map(|((a, b), m)| F2Entry { arrows: [a, b], matrix: qmat_out(&m) })
            .collect(),
        c2: values(c.part0()),
        c3: values(c.part1()),
    }
}

pub fn parse_input(text: &str) -> Result<Document> {
    let raw: RawDocument = serde_json::from_str(text).map_err(|e| Error::parse(format!("line {}", e.line()), e.to_string()))?;
    let body = match raw.kind.as_str() {
        "lie2_algebra" => Body::Lie2Algebra(lie2_in(typed(raw.payload)?)?),
        "rep_uth" => Body::RepUth(rep_in(&typed::<RepWire>(raw.payload)?, "payload")?),
        "cochain" => {
            let (rep, cochain) = cochain_in(&typed(raw.payload)?)?;
            Body::Cochain { rep, cochain }
        }
        "extension" => {
            let (rep, cochain) = cochain_in(&typed(raw.payload)?)?;
            Body::Extension { rep, cochain }
        }
        "courant" => {
            let w: CourantWire = typed(raw.payload)?;
            let h = form_in(w.n, 3, &w.h, "payload.h")?;
            Body::Courant(SeveraForm::new(h).map_err(|e| at("payload.h", e))?)
        }
        "fin2group" => {
            let (rep, cocycle) = fin2group_in(typed(raw.payload)?)?;
            Body::Fin2Group { rep, cocycle }
        }
        other => return Err(Error::parse("kind", format!("unknown kind {other:?}"))),
    };
    Ok(Document { seed: raw.seed, body })
}

/// The JSON form of a document; `parse_input` inverts it.
pub fn to_json(doc: &Document) -> Value {
    let payload = match &doc.body {
        Body::Lie2Algebra(l) => serde_json::to_value(lie2_out(l)),
        Body::RepUth(r) => serde_json::to_value(rep_out(r)),
        Body::Cochain { rep, cochain } | Body::Extension { rep, cochain } => {
            serde_json::to_value(cochain_out(rep, cochain))
        }
        Body::Courant(s) => serde_json::to_value(CourantWire { n: s.h().n(), h: form_out(s.h()) }),
        Body::Fin2Group { rep, cocycle } => serde_json::to_value(fin2group_out(rep, cocycle)),
    }
    .expect("wire types serialize");
    let mut obj = serde_json::Map::new();
    obj.insert("kind".into(), Value::String(doc.body.kind().into()));
    if let Some(seed) = doc.seed {
        obj.insert("seed".into(), Value::from(seed));
    }
    obj.insert("payload".into(), payload);
    Value::Object(obj)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    CheckLie2,
    CheckRep,
    CheckCocycle,
    Extend,
    Trivialize,
    CheckCourant,
    Integrate,
    Nerve,
}

impl Command {
    pub const ALL: [Command; 8] = [
        Command::CheckLie2,
        Command::CheckRep,
        Command::CheckCocycle,
        Command::Extend,
        Command::Trivialize,
        Command::CheckCourant,
        Command::Integrate,
        Command::Nerve,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::CheckLie2 => "check-lie2",
            Command::CheckRep => "check-rep",
            Command::CheckCocycle => "check-cocycle",
            Command::Extend => "extend",
            Command::Trivialize => "trivialize",
            Command::CheckCourant => "check-courant",
            Command::Integrate => "integrate",
            Command::Nerve => "nerve",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::parse("command", format!("unknown command {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

fn mismatch(cmd: Command, expected: &str, body: &Body) -> Error {
    Error::structural(format!("{cmd} expects a {expected} document, got {}", body.kind()))
}

fn jacobi_checks(r: &crate::lie2::JacobiReport) -> Vec<Check> {
    r.identities
        .iter()
        .map(|c| Check::from_witness(format!("homotopy_jacobi_{}", c.k), c.witness.clone()))
        .collect()
}

/// Random sections used by the section-level checks.
const RANDOM_PROBES: usize = 2;

/// Runs one command. `seed` overrides the document's seed; the default is 0.
pub fn run_command(cmd: Command, doc: &Document, seed: Option<u64>) -> Result<Report> {
    let seed = seed.or(doc.seed).unwrap_or(0);
    let mut result = None;
    let checks = match (cmd, &doc.body) {
        (Command::CheckLie2, Body::Lie2Algebra(l)) => {
            let mut checks = vec![Check::from_witness(
                "alternating",
                l.validate_antisymmetry().err().map(|e| e.to_string()),
            )];
            checks.extend(jacobi_checks(&l.check_homotopy_jacobi()));
            checks
        }
        (Command::CheckLie2, b) => return Err(mismatch(cmd, "lie2_algebra", b)),
        (Command::CheckRep, Body::RepUth(rep)) => {
            let mut checks = rep.check().checks;
            let dual = rep.dual();
            checks.extend(dual.check().checks.into_iter().map(|c| Check { name: format!("dual_{}", c.name), ..c }));
            checks.push(check_dual_pairing(rep, &dual));
            checks
        }
        (Command::CheckRep, b) => return Err(mismatch(cmd, "rep_uth", b)),
        (Command::CheckCocycle, Body::Cochain { rep, cochain } | Body::Extension { rep, cochain }) => {
            let mut checks = rep.check().checks;
            checks.extend(is_cocycle(rep, cochain)?);
            checks
        }
        (Command::CheckCocycle, Body::Fin2Group { rep, cocycle }) => {
            let mut checks = rep.check();
            checks.extend(check_gpd_cocycle(rep, cocycle)?);
            checks
        }
        (Command::CheckCocycle, b) => return Err(mismatch(cmd, "cochain, extension or fin2group", b)),
        (Command::Extend, Body::Cochain { rep, cochain } | Body::Extension { rep, cochain }) => {
            if cochain.degree() != 2 {
                return Err(Error::structural("extensions are built from 2-cochains"));
            }
            let mut checks = rep.check().checks;
            checks.extend(is_cocycle(rep, cochain)?);
            let e = ExtensionData::new_unchecked(rep, cochain);
            let (p0, p1) = e.probes(seed, RANDOM_PROBES);
            let (jacobi, extra) = e.check_l_infinity(&p0, &p1);
            checks.extend(jacobi_checks(&jacobi));
            checks.extend(extra);
            checks.extend(homological_check(&e).checks);
            checks
        }
        (Command::Extend, b) => return Err(mismatch(cmd, "cochain or extension", b)),
        (Command::Trivialize, Body::Cochain { rep, cochain } | Body::Extension { rep, cochain }) => {
            let mut checks = is_cocycle(rep, cochain)?;
            if all_passed(&checks) {
                let b = trivialize(rep, cochain)?;
                let db = differential(rep, &b)?;
                checks.push(if db == *cochain {
                    Check::pass("primitive")
                } else {
                    Check::fail("primitive", "D of the returned cochain differs from the input")
                });
                result = Some(serde_json::to_value(cochain_out(rep, &b)).expect("wire types serialize"));
            }
            checks
        }
        (Command::Trivialize, b) => return Err(mismatch(cmd, "cochain", b)),
        (Command::CheckCourant, Body::Courant(s)) => courant_checks(s, seed)?,
        (Command::CheckCourant, b) => return Err(mismatch(cmd, "courant", b)),
        (Command::Integrate, Body::Fin2Group { rep, cocycle }) => {
            let mut checks = rep.check();
            checks.extend(check_gpd_cocycle(rep, cocycle)?);
            if all_passed(&checks) {
                checks.extend(Ext2Group::build(rep.clone(), cocycle.clone())?.verify_coherence());
            }
            checks
        }
        (Command::Nerve, Body::Fin2Group { rep, cocycle }) => {
            let mut checks = rep.check();
            checks.extend(check_gpd_cocycle(rep, cocycle)?);
            if all_passed(&checks) {
                let e = Ext2Group::build(rep.clone(), cocycle.clone())?;
                checks.extend(Nerve::new(&e).check());
            }
            checks
        }
        (Command::Integrate | Command::Nerve, b) => return Err(mismatch(cmd, "fin2group", b)),
    };
    Ok(Report { command: cmd.name().into(), seed, passed: all_passed(&checks), checks, result })
}

fn courant_checks(s: &SeveraForm, seed: u64) -> Result<Vec<Check>> {
    use rand::SeedableRng;
    let n = s.h().n();
    let mut checks = vec![if s.is_closed() {
        Check::pass("h_closed")
    } else {
        Check::fail("h_closed", "dH is nonzero")
    }];
    let mut witness = find_residual_witness(s)?.map(|(label, r)| format!("basis {label}: residual {r:?}"));
    if witness.is_none() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for t in 0..RANDOM_PROBES {
            let es: Vec<CourantSection> = (0..3).map(|_| CourantSection::random(n, 2, &mut rng)).collect();
            let c = crate::courant::check_jacobi_defect(&es[0], &es[1], &es[2], s)?;
            if !c.passed {
                witness = Some(format!("random triple {t}: {}", c.witness.unwrap_or_default()));
                break;
            }
        }
    }
    checks.push(Check::from_witness("jacobi_defect", witness));
    let zero_connection = vec![PMat::zeros(n, n, n); n];
    let (rep, c) = courant_cocycle(s.h(), zero_connection)?;
    checks.extend(is_cocycle(&rep, &c)?);
    let e = ExtensionData::new_unchecked(&rep, &c);
    let basis = basis_sections(n);
    let mut agree = None;
    'outer: for (la, a) in &basis {
        for (lb, b) in &basis {
            let d = compare_with_extension(&e, a, b, s)?;
            if !d.is_zero() {
                agree = Some(format!("({la}, {lb}): difference {d:?}"));
                break 'outer;
            }
        }
    }
    checks.push(Check::from_witness("bracket_matches_extension", agree));
    Ok(checks)
}

/// Stable-keyed JSON or a plain table.
pub fn emit_report(r: &Report, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(r).expect("reports serialize"),
        Format::Text => {
            let width = r.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
            let mut out = format!("{} (seed {})\n", r.command, r.seed);
            for c in &r.checks {
                let verdict = if c.passed { "pass" } else { "FAIL" };
                let line = format!("  {verdict}  {:width$}  {}", c.name, c.witness.as_deref().unwrap_or(""));
                out.push_str(line.trim_end());
                out.push('\n');
            }
            out.push_str(if r.passed { "all checks passed\n" } else { "some checks failed\n" });
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie2::{string_lie2, LieAlgebra};
    use crate::twogroup::{cases, unit_rep};

    fn wrap(kind: &str, payload: &str) -> String {
        format!(r#"{{"kind": "{kind}", "payload": {payload}}}"#)
    }

    #[test]
    fn minimal_lie2_parses() {
        let doc = parse_input(&wrap("lie2_algebra", r#"{"dim0": 2, "dim1": 1}"#)).unwrap();
        let Body::Lie2Algebra(l) = &doc.body else { panic!() };
        assert_eq!(l, &Lie2Algebra::zero(2, 1));
        let r = run_command(Command::CheckLie2, &doc, None).unwrap();
        assert!(r.passed);
    }

    #[test]
    fn zero_denominator_names_field() {
        let text = wrap("lie2_algebra", r#"{"dim0": 2, "dim1": 1, "l1": [{"index": [0, 0], "value": "3/0"}]}"#);
        match parse_input(&text).unwrap_err() {
            Error::Parse { location, .. } => assert!(location.contains("l1[0].value"), "{location}"),
            e => panic!("{e:?}"),
        }
    }

    #[test]
    fn unknown_kind_and_non_alternating() {
        assert!(matches!(parse_input(&wrap("nope", "{}")), Err(Error::Parse { .. })));
        let bad = r#"{"dim0": 2, "dim1": 0, "l2_00": [{"index": [0, 1, 0], "value": "1"}]}"#;
        assert!(matches!(parse_input(&wrap("lie2_algebra", bad)), Err(Error::Parse { .. })));
        let raw = r#"{"dim0": 2, "dim1": 0, "alternating": false, "l2_00": [{"index": [0, 1, 0], "value": "1"}]}"#;
        assert!(parse_input(&wrap("lie2_algebra", raw)).is_ok());
    }

    #[test]
    fn non_normalized_fin2group_rejected() {
        let rep = unit_rep(&FinGroupoid::cyclic(2)).unwrap();
        let doc = Document { seed: None, body: Body::Fin2Group { rep, cocycle: GpdCochain::zero(2) } };
        let mut v = to_json(&doc);
        v["payload"]["c2"] = serde_json::json!([{"arrows": [0, 1], "value": ["1"]}]);
        match parse_input(&v.to_string()).unwrap_err() {
            Error::Parse { location, message } => {
                assert_eq!(location, "payload.c2");
                assert!(message.contains("non-normalized"), "{message}");
            }
            e => panic!("{e:?}"),
        }
    }

    #[test]
    fn round_trips() {
        let so3 = LieAlgebra::so3();
        let l = string_lie2(&so3, &so3.killing_form()).unwrap();
        let docs = vec![
            Document { seed: Some(4), body: Body::Lie2Algebra(l) },
            Document {
                seed: None,
                body: Body::Courant(SeveraForm::new(PolyForm::basis(3, &[0, 1, 2])).unwrap()),
            },
        ];
        for doc in docs.into_iter().chain(cases().unwrap().into_iter().map(|c| Document {
            seed: None,
            body: Body::Fin2Group { rep: c.ext.rep().clone(), cocycle: c.ext.cocycle().clone() },
        })) {
            let text = to_json(&doc).to_string();
            assert_eq!(parse_input(&text).unwrap(), doc);
        }
    }

    #[test]
    fn kind_mismatch_is_an_error() {
        let doc = parse_input(&wrap("lie2_algebra", r#"{"dim0": 1, "dim1": 0}"#)).unwrap();
        assert!(run_command(Command::Integrate, &doc, None).is_err());
    }

    #[test]
    fn courant_report() {
        let doc = Document { seed: None, body: Body::Courant(SeveraForm::new(PolyForm::basis(3, &[0, 1, 2])).unwrap()) };
        let r = run_command(Command::CheckCourant, &doc, Some(1)).unwrap();
        assert!(r.passed, "{}", emit_report(&r, Format::Text));
        assert_eq!(r.seed, 1);
        let json: Value = serde_json::from_str(&emit_report(&r, Format::Json)).unwrap();
        assert_eq!(json["command"], "check-courant");
        assert_eq!(json["passed"], true);
    }
}
