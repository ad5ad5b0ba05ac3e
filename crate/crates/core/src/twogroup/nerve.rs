//! The nerve of an extension 2-groupoid up to level 3, in two models.
//!
//! In the X-model an `n`-simplex has vertices `x_0..x_n`, spine edges
//! `(γ_{i,i+1}, ξ_{i,i+1})` with `γ_{i,i+1}: x_{i+1} → x_i`, and 2-morphism
//! parts on triangles. Level 2 stores `m012`; level 3 stores `m012`, `m123`,
//! `m023`, and the remaining triangle is the filler
//!
//! ```text
//! m013 = m012 + m023 − F1(γ01) m123 − (F2(γ01,γ12) ξ23 − C3(γ01,γ12,γ23))
//! ```
//!
//! which makes the tetrahedron commute up to the associator. The long edge
//! of a triangle `(a,b,c)` is `(x_ab · x_bc) + ∂m_abc`, and every non-spine
//! edge `(a,b)` is read off the triangle `(a, b−1, b)`. Degenerate triangles
//! carry `m = 0`.
//!
//! In the Y-model an `n`-simplex is its 1-skeleton: spine arrows and one
//! `ξ^{ij} ∈ E_0(x_i)` per pair `i < j`. Faces compose spine arrows and drop
//! the `ξ`'s touching the removed vertex; degeneracies insert identities and
//! zero `ξ`'s. The nerve is 3-coskeletal, so nothing above level 3 is built.
//!
//! Both models act on simplices by pulling back along monotone maps
//! `θ: [k] → [n]`; faces and degeneracies are the usual cofaces and
//! codegeneracies.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::extension::{Ext2Group, Morphism1};
use super::{probes, FinGroupoid};
use crate::error::{Error, Result};
use crate::linalg::{qvec_add, qvec_sub, qvec_zero, QVec};
use crate::report::Check;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XSimplex {
    pub dim: usize,
    /// The vertex of a 0-simplex; unused otherwise.
    pub vertex: usize,
    pub spine: Vec<Morphism1>,
    /// `[m012]` at level 2, `[m012, m123, m023]` at level 3.
    pub fill: Vec<QVec>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YSimplex {
    pub dim: usize,
    pub vertex: usize,
    pub arrows: Vec<usize>,
    pub xi: BTreeMap<(usize, usize), QVec>,
}

pub struct Nerve<'a> {
    ext: &'a Ext2Group,
}

fn face_map(n: usize, i: usize) -> Vec<usize> {
    (0..=n).filter(|&v| v != i).collect()
}

fn degeneracy_map(n: usize, i: usize) -> Vec<usize> {
    let mut out: Vec<usize> = (0..=n).collect();
    out.insert(i, i);
    out
}

trait Model: Sync {
    type S: PartialEq + std::fmt::Debug + Send + Clone;
    fn base(&self) -> &FinGroupoid;
    fn slot_dims(&self, n: usize, key: &[usize]) -> Vec<usize>;
    fn build(&self, n: usize, key: &[usize], slots: &[QVec]) -> Self::S;
    fn pull(&self, s: &Self::S, theta: &[usize]) -> Result<Self::S>;
}

impl<'a> Nerve<'a> {
    pub fn new(ext: &'a Ext2Group) -> Self {
        Nerve { ext }
    }

    fn vertex_of(&self, s: &XSimplex, a: usize) -> usize {
        let g = self.ext.base();
        if s.dim == 0 {
            s.vertex
        } else if a < s.dim {
            g.target(s.spine[a].arrow)
        } else {
            g.source(s.spine[s.dim - 1].arrow)
        }
    }

    /// Builds an X-simplex from spine data; the spine must be composable.
    pub fn x_simplex(&self, vertex: usize, spine: Vec<Morphism1>, fill: Vec<QVec>) -> Result<XSimplex> {
        let g = self.ext.base();
        let dim = spine.len();
        let expected = match dim {
            0 | 1 => 0,
            2 => 1,
            3 => 3,
            _ => return Err(Error::structural("the nerve is built up to level 3")),
        };
        if fill.len() != expected {
            return Err(Error::structural(format!("a {dim}-simplex has {expected} triangle parts")));
        }
        if spine.windows(2).any(|w| g.source(w[0].arrow) != g.target(w[1].arrow)) {
            return Err(Error::structural("spine arrows are not composable"));
        }
        Ok(XSimplex { dim, vertex: if dim == 0 { vertex } else { g.target(spine[0].arrow) }, spine, fill })
    }

    /// The edge `(a, b)` of an X-simplex, `a ≤ b`.
    pub fn edge(&self, s: &XSimplex, a: usize, b: usize) -> Result<Morphism1> {
        if a == b {
            return Ok(self.ext.identity1(self.vertex_of(s, a)));
        }
        if b == a + 1 {
            return Ok(s.spine[a].clone());
        }
        let (ab, bc, m) = self.triangle(s, a, b - 1, b)?;
        self.long_edge(&ab, &bc, &m)
    }

    fn long_edge(&self, ab: &Morphism1, bc: &Morphism1, m: &QVec) -> Result<Morphism1> {
        let prod = self.ext.horizontal1(ab, bc)?;
        let x = self.ext.base().target(prod.arrow);
        Ok(Morphism1 { arrow: prod.arrow, xi: qvec_add(&prod.xi, &self.ext.rep().boundary(x).apply(m)) })
    }

    /// The triangle `(a, b, c)` of an X-simplex, `a ≤ b ≤ c`: its two short
    /// edges and its 2-morphism part.
    pub fn triangle(&self, s: &XSimplex, a: usize, b: usize, c: usize) -> Result<(Morphism1, Morphism1, QVec)> {
        let ab = self.edge(s, a, b)?;
        let bc = self.edge(s, b, c)?;
        let m = if a == b || b == c {
            qvec_zero(self.ext.rep().r1(self.vertex_of(s, a)))
        } else {
            match (s.dim, a, b, c) {
                (2, 0, 1, 2) => s.fill[0].clone(),
                (3, 0, 1, 2) => s.fill[0].clone(),
                (3, 1, 2, 3) => s.fill[1].clone(),
                (3, 0, 2, 3) => s.fill[2].clone(),
                (3, 0, 1, 3) => self.filler(s)?,
                _ => return Err(Error::structural(format!("no triangle ({a},{b},{c}) in a {}-simplex", s.dim))),
            }
        };
        Ok((ab, bc, m))
    }

    fn filler(&self, s: &XSimplex) -> Result<QVec> {
        let (x01, x12, x23) = (&s.spine[0], &s.spine[1], &s.spine[2]);
        let assoc = self.ext.associator(x01, x12, x23)?;
        let moved = self.ext.rep().f1(1, x01.arrow).apply(&s.fill[1]);
        Ok(qvec_sub(&qvec_sub(&qvec_add(&s.fill[0], &s.fill[2]), &moved), &assoc.m))
    }

    /// Pullback along a monotone `θ: [k] → [dim]`.
    pub fn pull_x(&self, s: &XSimplex, theta: &[usize]) -> Result<XSimplex> {
        let k = theta.len() - 1;
        let spine = (0..k).map(|i| self.edge(s, theta[i], theta[i + 1])).collect::<Result<Vec<_>>>()?;
        let tri = |a: usize, b: usize, c: usize| self.triangle(s, theta[a], theta[b], theta[c]).map(|t| t.2);
        let fill = match k {
            0 | 1 => vec![],
            2 => vec![tri(0, 1, 2)?],
            3 => vec![tri(0, 1, 2)?, tri(1, 2, 3)?, tri(0, 2, 3)?],
            _ => return Err(Error::structural("the nerve is built up to level 3")),
        };
        Ok(XSimplex { dim: k, vertex: self.vertex_of(s, theta[0]), spine, fill })
    }

    pub fn face_x(&self, s: &XSimplex, i: usize) -> Result<XSimplex> {
        self.pull_x(s, &face_map(s.dim, i))
    }

    pub fn degeneracy_x(&self, s: &XSimplex, i: usize) -> Result<XSimplex> {
        self.pull_x(s, &degeneracy_map(s.dim, i))
    }

    fn y_vertex(&self, s: &YSimplex, a: usize) -> usize {
        let g = self.ext.base();
        if s.dim == 0 {
            s.vertex
        } else if a < s.dim {
            g.target(s.arrows[a])
        } else {
            g.source(s.arrows[s.dim - 1])
        }
    }

    /// The 1-skeleton of an X-simplex.
    pub fn to_y(&self, s: &XSimplex) -> Result<YSimplex> {
        let mut xi = BTreeMap::new();
        for a in 0..=s.dim {
            for b in a + 1..=s.dim {
                xi.insert((a, b), self.edge(s, a, b)?.xi);
            }
        }
        Ok(YSimplex { dim: s.dim, vertex: s.vertex, arrows: s.spine.iter().map(|e| e.arrow).collect(), xi })
    }

    pub fn pull_y(&self, s: &YSimplex, theta: &[usize]) -> Result<YSimplex> {
        let g = self.ext.base();
        let k = theta.len() - 1;
        let mut arrows = Vec::with_capacity(k);
        for i in 0..k {
            let (a, b) = (theta[i], theta[i + 1]);
            let mut arrow = g.identity(self.y_vertex(s, a));
            for j in a..b {
                arrow = g
                    .compose(arrow, s.arrows[j])
                    .ok_or_else(|| Error::structural("spine arrows are not composable"))?;
            }
            arrows.push(arrow);
        }
        let mut xi = BTreeMap::new();
        for i in 0..=k {
            for j in i + 1..=k {
                let v = if theta[i] == theta[j] {
                    qvec_zero(self.ext.rep().r0(self.y_vertex(s, theta[i])))
                } else {
                    s.xi[&(theta[i], theta[j])].clone()
                };
                xi.insert((i, j), v);
            }
        }
        Ok(YSimplex { dim: k, vertex: self.y_vertex(s, theta[0]), arrows, xi })
    }

    pub fn face_y(&self, s: &YSimplex, i: usize) -> Result<YSimplex> {
        self.pull_y(s, &face_map(s.dim, i))
    }

    pub fn degeneracy_y(&self, s: &YSimplex, i: usize) -> Result<YSimplex> {
        self.pull_y(s, &degeneracy_map(s.dim, i))
    }

    /// Simplicial identities of both models at levels ≤ 3, and naturality of
    /// the map from X to Y, exhaustively over base strings and on fiber bases.
    pub fn check(&self) -> Vec<Check> {
        let x = XModel(self);
        let y = YModel(self);
        let mut checks = simplicial_checks(&x, "x");
        checks.extend(simplicial_checks(&y, "y"));
        checks.push(self.check_x_to_y());
        checks
    }

    fn check_x_to_y(&self) -> Check {
        let x = XModel(self);
        let g = self.ext.base();
        let mut witness = None;
        for n in 0..=3 {
            let mut maps: Vec<(String, Vec<usize>)> = Vec::new();
            if n > 0 {
                maps.extend((0..=n).map(|i| (format!("d{i}"), face_map(n, i))));
            }
            if n < 3 {
                maps.extend((0..=n).map(|i| (format!("s{i}"), degeneracy_map(n, i))));
            }
            witness = g.strings(n).into_par_iter().find_map_first(|key| {
                for (label, slots) in probes(&x.slot_dims(n, &key)) {
                    let s = x.build(n, &key, &slots);
                    for (name, theta) in &maps {
                        let lhs = self.pull_x(&s, theta).and_then(|t| self.to_y(&t));
                        let rhs = self.to_y(&s).and_then(|t| self.pull_y(&t, theta));
                        let ok = matches!((&lhs, &rhs), (Ok(a), Ok(b)) if a == b);
                        if !ok {
                            return Some(format!("{name} on level {n} at {} {label}", g.describe(n, &key)));
                        }
                    }
                }
                None
            });
            if witness.is_some() {
                break;
            }
        }
        Check::from_witness("x_to_y_natural", witness)
    }
}

struct XModel<'n, 'a>(&'n Nerve<'a>);
struct YModel<'n, 'a>(&'n Nerve<'a>);

impl Model for XModel<'_, '_> {
    type S = XSimplex;

    fn base(&self) -> &FinGroupoid {
        self.0.ext.base()
    }

    fn slot_dims(&self, n: usize, key: &[usize]) -> Vec<usize> {
        let ext = self.0.ext;
        let g = ext.base();
        let r0 = |a: usize| ext.rep().r0(g.target(a));
        let r1 = |a: usize| ext.rep().r1(g.target(a));
        match n {
            0 => vec![],
            1 => vec![r0(key[0])],
            2 => vec![r0(key[0]), r0(key[1]), r1(key[0])],
            _ => vec![r0(key[0]), r0(key[1]), r0(key[2]), r1(key[0]), r1(key[1]), r1(key[0])],
        }
    }

    fn build(&self, n: usize, key: &[usize], slots: &[QVec]) -> XSimplex {
        let spine = (0..n).map(|i| Morphism1 { arrow: key[i], xi: slots[i].clone() }).collect();
        let fill = slots[n.min(slots.len())..].to_vec();
        self.0.x_simplex(if n == 0 { key[0] } else { 0 }, spine, fill).expect("composable string")
    }

    fn pull(&self, s: &XSimplex, theta: &[usize]) -> Result<XSimplex> {
        self.0.pull_x(s, theta)
    }
}

impl Model for YModel<'_, '_> {
    type S = YSimplex;

    fn base(&self) -> &FinGroupoid {
        self.0.ext.base()
    }

    fn slot_dims(&self, n: usize, key: &[usize]) -> Vec<usize> {
        let ext = self.0.ext;
        let g = ext.base();
        let vertex = |a: usize| if a < n { g.target(key[a]) } else { g.source(key[n - 1]) };
        let mut dims = Vec::new();
        for i in 0..=n {
            for _ in i + 1..=n {
                dims.push(ext.rep().r0(vertex(i)));
            }
        }
        dims
    }

    fn build(&self, n: usize, key: &[usize], slots: &[QVec]) -> YSimplex {
        let mut xi = BTreeMap::new();
        let mut it = slots.iter();
        for i in 0..=n {
            for j in i + 1..=n {
                xi.insert((i, j), it.next().expect("slot per pair").clone());
            }
        }
        let g = self.0.ext.base();
        YSimplex {
            dim: n,
            vertex: if n == 0 { key[0] } else { g.target(key[0]) },
            arrows: if n == 0 { vec![] } else { key.to_vec() },
            xi,
        }
    }

    fn pull(&self, s: &YSimplex, theta: &[usize]) -> Result<YSimplex> {
        self.0.pull_y(s, theta)
    }
}

/// One composite of cofaces/codegeneracies applied right to left, as a list
/// of `(is_face, index)` steps applied in order to the simplex.
type Path = Vec<(bool, usize)>;

fn apply<M: Model>(m: &M, s: &M::S, path: &Path, mut n: usize) -> Result<M::S> {
    let mut cur = s.clone();
    for &(face, i) in path {
        let theta = if face { face_map(n, i) } else { degeneracy_map(n, i) };
        cur = m.pull(&cur, &theta)?;
        n = if face { n - 1 } else { n + 1 };
    }
    Ok(cur)
}

fn describe(path: &Path) -> String {
    path.iter().rev().map(|&(f, i)| format!("{}{i}", if f { 'd' } else { 's' })).collect::<Vec<_>>().join("∘")
}

/// The standard relations at levels ≤ 3, as pairs of paths from level `n`.
fn relations() -> Vec<(&'static str, usize, Path, Path)> {
    let mut out = Vec::new();
    // d_i d_j = d_{j−1} d_i, i < j
    for n in 2..=3 {
        for j in 0..=n {
            for i in 0..j {
                out.push(("face_face", n, vec![(true, j), (true, i)], vec![(true, i), (true, j - 1)]));
            }
        }
    }
    // s_i s_j = s_{j+1} s_i, i ≤ j
    for n in 0..=1 {
        for j in 0..=n {
            for i in 0..=j {
                out.push(("degeneracy_degeneracy", n, vec![(false, j), (false, i)], vec![(false, i), (false, j + 1)]));
            }
        }
    }
    // d_i s_j
    for n in 0..=2 {
        for j in 0..=n {
            for i in 0..=n + 1 {
                let lhs = vec![(false, j), (true, i)];
                let rhs = if i < j {
                    vec![(true, i), (false, j - 1)]
                } else if i == j || i == j + 1 {
                    vec![]
                } else {
                    vec![(true, i - 1), (false, j)]
                };
                out.push(("face_degeneracy", n, lhs, rhs));
            }
        }
    }
    out
}

fn simplicial_checks<M: Model>(m: &M, prefix: &str) -> Vec<Check> {
    let rels = relations();
    let names = ["face_face", "degeneracy_degeneracy", "face_degeneracy"];
    names
        .iter()
        .map(|&name| {
            let mut witness = None;
            for (_, n, lhs, rhs) in rels.iter().filter(|r| r.0 == name) {
                let n = *n;
                let g = m.base();
                witness = g.strings(n).into_par_iter().find_map_first(|key| {
                    for (label, slots) in probes(&m.slot_dims(n, &key)) {
                        let s = m.build(n, &key, &slots);
                        let a = apply(m, &s, lhs, n);
                        let b = apply(m, &s, rhs, n);
                        let ok = matches!((&a, &b), (Ok(x), Ok(y)) if x == y);
                        if !ok {
                            return Some(format!(
                                "{} = {} on level {n} at {} {label}",
                                describe(lhs),
                                describe(rhs),
                                g.describe(n, &key)
                            ));
                        }
                    }
                    None
                });
                if witness.is_some() {
                    break;
                }
            }
            Check::from_witness(format!("{prefix}_{name}"), witness)
        })
        .collect()
}
