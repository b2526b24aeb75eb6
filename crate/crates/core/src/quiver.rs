//! Quivers, paths, and finitely supported elements of the path algebra `KQ`.
//!
//! A path stores its endpoints and its arrow word; composition is partial
//! (mismatched endpoints give the zero of the algebra, reported as `None`).
//! `Path` deliberately implements `Ord` as the admissible length-lexicographic
//! order used by the Groebner machinery — see [`crate::order`] — so the
//! maximal key of a [`PathElement`]'s term map is its tip.

use crate::scalar::{FieldSpec, Scalar};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct ArrowId(pub usize);

#[derive(Clone, Debug)]
pub struct Arrow {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("duplicate identifier `{0}`")]
    DuplicateIdentifier(String),
    #[error("arrow `{arrow}` references undeclared vertex `{vertex}`")]
    UndeclaredVertex { arrow: String, vertex: String },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("arrows do not compose at position {0}")]
    NonComposable(usize),
}

/// A finite quiver. Declaration order of vertices and arrows is significant:
/// it seeds the monomial order and every deterministic enumeration.
#[derive(Clone, Debug)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_lookup: HashMap<String, VertexId>,
    arrow_lookup: HashMap<String, ArrowId>,
}

impl Quiver {
    pub fn new(
        vertices: Vec<String>,
        arrows: Vec<(String, String, String)>,
    ) -> Result<Arc<Quiver>, QuiverError> {
        let mut vertex_lookup = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_lookup.insert(v.clone(), VertexId(i)).is_some() {
                return Err(QuiverError::DuplicateIdentifier(v.clone()));
            }
        }
        let mut arrow_lookup = HashMap::new();
        let mut arrs = Vec::new();
        for (i, (name, src, tgt)) in arrows.into_iter().enumerate() {
            if vertex_lookup.contains_key(&name) || arrow_lookup.contains_key(&name) {
                return Err(QuiverError::DuplicateIdentifier(name));
            }
            let source = *vertex_lookup.get(&src).ok_or_else(|| QuiverError::UndeclaredVertex {
                arrow: name.clone(),
                vertex: src.clone(),
            })?;
            let target = *vertex_lookup.get(&tgt).ok_or_else(|| QuiverError::UndeclaredVertex {
                arrow: name.clone(),
                vertex: tgt.clone(),
            })?;
            arrow_lookup.insert(name.clone(), ArrowId(i));
            arrs.push(Arrow { name, source, target });
        }
        Ok(Arc::new(Quiver {
            vertices,
            arrows: arrs,
            vertex_lookup,
            arrow_lookup,
        }))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a.0]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn arrow_ids(&self) -> impl Iterator<Item = ArrowId> {
        (0..self.arrows.len()).map(ArrowId)
    }

    pub fn lookup_vertex(&self, name: &str) -> Result<VertexId, QuiverError> {
        self.vertex_lookup
            .get(name)
            .copied()
            .ok_or_else(|| QuiverError::UnknownVertex(name.to_string()))
    }

    pub fn lookup_arrow(&self, name: &str) -> Result<ArrowId, QuiverError> {
        self.arrow_lookup
            .get(name)
            .copied()
            .ok_or_else(|| QuiverError::UnknownArrow(name.to_string()))
    }

    /// Arrows leaving `v`, in declaration order.
    pub fn arrows_from(&self, v: VertexId) -> impl Iterator<Item = ArrowId> + '_ {
        self.arrows
            .iter()
            .enumerate()
            .filter(move |(_, a)| a.source == v)
            .map(|(i, _)| ArrowId(i))
    }
}

/// A path in a quiver: the trivial path at `source` when `word` is empty,
/// otherwise the composable arrow word read left to right.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Path {
    source: VertexId,
    target: VertexId,
    word: Vec<ArrowId>,
}

impl Path {
    pub fn trivial(v: VertexId) -> Path {
        Path { source: v, target: v, word: Vec::new() }
    }

    pub fn arrow(q: &Quiver, a: ArrowId) -> Path {
        let arr = q.arrow(a);
        Path { source: arr.source, target: arr.target, word: vec![a] }
    }

    pub fn from_arrows(q: &Quiver, arrows: &[ArrowId]) -> Result<Path, QuiverError> {
        match arrows.split_first() {
            None => panic!("from_arrows requires at least one arrow; use Path::trivial"),
            Some((first, rest)) => {
                let mut p = Path::arrow(q, *first);
                for (k, a) in rest.iter().enumerate() {
                    let arr = q.arrow(*a);
                    if arr.source != p.target {
                        return Err(QuiverError::NonComposable(k + 1));
                    }
                    p.word.push(*a);
                    p.target = arr.target;
                }
                Ok(p)
            }
        }
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.word.is_empty()
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn target(&self) -> VertexId {
        self.target
    }

    pub fn word(&self) -> &[ArrowId] {
        &self.word
    }

    /// `pq` when `t(p) = o(q)`, otherwise `None` (the zero of `KQ`).
    pub fn compose(&self, other: &Path) -> Option<Path> {
        if self.target != other.source {
            return None;
        }
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        Some(Path { source: self.source, target: other.target, word })
    }

    /// The subpath on arrow positions `[from, to)`. For `from == to` this is
    /// the trivial path at the vertex between positions.
    pub fn slice(&self, q: &Quiver, from: usize, to: usize) -> Path {
        assert!(from <= to && to <= self.word.len());
        if from == to {
            let v = if from == 0 { self.source } else { q.arrow(self.word[from - 1]).target };
            return Path::trivial(v);
        }
        Path::from_arrows(q, &self.word[from..to]).expect("subword of a path composes")
    }

    pub fn display<'a>(&'a self, q: &'a Quiver) -> PathDisplay<'a> {
        PathDisplay { path: self, quiver: q }
    }
}

/// `Ord` on paths is the admissible length-lexicographic order: shorter paths
/// first, ties broken lexicographically by arrow declaration order, and
/// trivial paths ordered by vertex declaration order.
impl Ord for Path {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.word
            .len()
            .cmp(&other.word.len())
            .then_with(|| self.word.cmp(&other.word))
            .then_with(|| self.source.cmp(&other.source))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

pub struct PathDisplay<'a> {
    path: &'a Path,
    quiver: &'a Quiver,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_trivial() {
            write!(f, "e_{}", self.quiver.vertex_name(self.path.source))
        } else {
            let names: Vec<&str> =
                self.path.word.iter().map(|a| self.quiver.arrow(*a).name.as_str()).collect();
            write!(f, "{}", names.join("*"))
        }
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ElementError {
    #[error("operation is not defined on the zero element")]
    ZeroElement,
}

/// A finite linear combination of paths with nonzero exact coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PathElement {
    field: FieldSpec,
    terms: BTreeMap<Path, Scalar>,
}

impl PathElement {
    pub fn zero(field: FieldSpec) -> PathElement {
        PathElement { field, terms: BTreeMap::new() }
    }

    pub fn from_path(field: FieldSpec, p: Path) -> PathElement {
        let mut terms = BTreeMap::new();
        terms.insert(p, field.one());
        PathElement { field, terms }
    }

    pub fn vertex(field: FieldSpec, v: VertexId) -> PathElement {
        PathElement::from_path(field, Path::trivial(v))
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> std::collections::btree_map::Iter<'_, Path, Scalar> {
        self.terms.iter()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, p: &Path) -> Option<&Scalar> {
        self.terms.get(p)
    }

    /// The maximal support path under the admissible order.
    pub fn tip(&self) -> Option<(&Path, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, p: Path, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(p) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &PathElement) -> PathElement {
        assert_eq!(self.field, other.field, "field mismatch");
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &PathElement) -> PathElement {
        self.add(&other.scale(&self.field.integer(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> PathElement {
        if c.is_zero() {
            return PathElement::zero(self.field);
        }
        let terms = self.terms.iter().map(|(p, d)| (p.clone(), d.mul(c))).collect();
        PathElement { field: self.field, terms }
    }

    /// Bilinear extension of path composition; non-composable products drop out.
    pub fn multiply(&self, other: &PathElement) -> PathElement {
        assert_eq!(self.field, other.field, "field mismatch");
        let mut out = PathElement::zero(self.field);
        for (p, c) in &self.terms {
            for (q, d) in &other.terms {
                if let Some(pq) = p.compose(q) {
                    out.add_term(pq, c.mul(d));
                }
            }
        }
        out
    }

    /// Left and right truncation: `u * self * v` for paths `u`, `v`.
    pub fn frame(&self, u: &Path, v: &Path) -> PathElement {
        let mut out = PathElement::zero(self.field);
        for (p, c) in &self.terms {
            if let Some(up) = u.compose(p) {
                if let Some(upv) = up.compose(v) {
                    out.add_term(upv, c.clone());
                }
            }
        }
        out
    }

    pub fn classify(&self) -> Result<Classification, ElementError> {
        let mut it = self.terms.iter();
        let (first, _) = it.next().ok_or(ElementError::ZeroElement)?;
        let mut uniform = Some((first.source(), first.target()));
        let mut degree = Some(first.len());
        for (p, _) in it {
            if uniform.is_some_and(|(s, t)| s != p.source() || t != p.target()) {
                uniform = None;
            }
            if degree.is_some_and(|d| d != p.len()) {
                degree = None;
            }
        }
        Ok(Classification {
            uniform,
            homogeneous_degree: degree,
            monomial: self.terms.len() == 1,
        })
    }

    pub fn display<'a>(&'a self, q: &'a Quiver) -> ElementDisplay<'a> {
        ElementDisplay { element: self, quiver: q }
    }
}

/// Structural flags of a nonzero element of `KQ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    /// `Some((v, v'))` when the element is uniform with source `v`, target `v'`.
    pub uniform: Option<(VertexId, VertexId)>,
    /// `Some(d)` when every support path has length `d`.
    pub homogeneous_degree: Option<usize>,
    /// Support size one.
    pub monomial: bool,
}

pub struct ElementDisplay<'a> {
    element: &'a PathElement,
    quiver: &'a Quiver,
}

impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.element.is_zero() {
            return write!(f, "0");
        }
        // Largest term first.
        for (i, (p, c)) in self.element.terms.iter().rev().enumerate() {
            let neg = crate::scalar::is_negative(c);
            let abs = if neg { c.neg() } else { c.clone() };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if !abs.is_one() {
                write!(f, "{abs} * ")?;
            }
            write!(f, "{}", p.display(self.quiver))?;
        }
        Ok(())
    }
}

/// The identity of `KQ` restricted to finitely supported elements: the sum of
/// all trivial paths.
pub fn vertex_sum(field: FieldSpec, q: &Quiver) -> PathElement {
    let mut out = PathElement::zero(field);
    for v in q.vertex_ids() {
        out.add_term(Path::trivial(v), field.one());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_loop_quiver() -> Arc<Quiver> {
        Quiver::new(
            vec!["v".into()],
            vec![
                ("x".into(), "v".into(), "v".into()),
                ("y".into(), "v".into(), "v".into()),
            ],
        )
        .unwrap()
    }

    fn el(q: &Quiver, field: FieldSpec, word: &[usize]) -> PathElement {
        let p = if word.is_empty() {
            Path::trivial(VertexId(0))
        } else {
            Path::from_arrows(q, &word.iter().map(|i| ArrowId(*i)).collect::<Vec<_>>()).unwrap()
        };
        PathElement::from_path(field, p)
    }

    #[test]
    fn trivial_paths_compose_as_identities() {
        let v = VertexId(0);
        let t = Path::trivial(v);
        assert_eq!(t.compose(&t), Some(t.clone()));
    }

    #[test]
    fn loops_compose_with_additive_length() {
        let q = two_loop_quiver();
        let x = Path::arrow(&q, ArrowId(0));
        let y = Path::arrow(&q, ArrowId(1));
        let xy = x.compose(&y).unwrap();
        assert_eq!(xy.len(), 2);
        assert_eq!(xy.word(), &[ArrowId(0), ArrowId(1)]);
    }

    #[test]
    fn mismatched_endpoints_give_zero() {
        let q = Quiver::new(
            vec!["1".into(), "2".into()],
            vec![("a".into(), "1".into(), "2".into())],
        )
        .unwrap();
        let a = Path::arrow(&q, ArrowId(0));
        assert_eq!(a.compose(&a), None);
    }

    #[test]
    fn multiplication_is_bilinear() {
        let q = two_loop_quiver();
        let f = FieldSpec::Rationals;
        let x = el(&q, f, &[0]);
        let y = el(&q, f, &[1]);
        let sum = x.add(&y);
        let prod = sum.multiply(&x);
        // (x + y) * x = x^2 + yx
        assert_eq!(prod, el(&q, f, &[0, 0]).add(&el(&q, f, &[1, 0])));
    }

    #[test]
    fn vertex_acts_as_idempotent() {
        let q = two_loop_quiver();
        let f = FieldSpec::Rationals;
        let v = PathElement::vertex(f, VertexId(0));
        let x = el(&q, f, &[0]);
        assert_eq!(v.multiply(&x), x);
        assert_eq!(vertex_sum(f, &q).multiply(&x), x);
    }

    #[test]
    fn commutator_times_y_expands() {
        let q = two_loop_quiver();
        let f = FieldSpec::Rationals;
        let xy = el(&q, f, &[0, 1]);
        let yx = el(&q, f, &[1, 0]);
        let y = el(&q, f, &[1]);
        let out = xy.sub(&yx).multiply(&y);
        // (xy - yx) y = xy^2 - yxy
        assert_eq!(out, el(&q, f, &[0, 1, 1]).sub(&el(&q, f, &[1, 0, 1])));
    }

    #[test]
    fn classify_flags() {
        let q = two_loop_quiver();
        let f = FieldSpec::Rationals;
        let xy = el(&q, f, &[0, 1]);
        let yx = el(&q, f, &[1, 0]);
        let c = xy.sub(&yx).classify().unwrap();
        assert_eq!(c.uniform, Some((VertexId(0), VertexId(0))));
        assert_eq!(c.homogeneous_degree, Some(2));
        assert!(!c.monomial);

        let x2 = el(&q, f, &[0, 0]).classify().unwrap();
        assert!(x2.monomial);
        assert_eq!(x2.homogeneous_degree, Some(2));

        let mixed = el(&q, f, &[0]).add(&el(&q, f, &[0, 0])).classify().unwrap();
        assert!(mixed.uniform.is_some());
        assert_eq!(mixed.homogeneous_degree, None);

        assert_eq!(
            PathElement::zero(f).classify(),
            Err(ElementError::ZeroElement)
        );
    }

    #[test]
    fn degree_is_additive_on_homogeneous_products() {
        let q = two_loop_quiver();
        let f = FieldSpec::Rationals;
        let a = el(&q, f, &[0, 1]).add(&el(&q, f, &[1, 0]));
        let b = el(&q, f, &[0]).add(&el(&q, f, &[1]));
        let prod = a.multiply(&b);
        assert_eq!(prod.classify().unwrap().homogeneous_degree, Some(3));
    }
}
