//! Finite-dimensional quotients `KQ/I` presented by a reduced Groebner basis.
//!
//! A [`QuotientAlgebra`] owns the normal-word basis (all paths with no tip as
//! a subword), a full multiplication table, dimension tables per vertex pair,
//! and the radical. Construction fails unless the finiteness certificate holds
//! and the arrow ideal is nilpotent in the quotient, which together certify
//! that the input ideal is admissible.

use crate::groebner::{
    self, buchberger, enumerate_normal_words, normal_form, Completeness, GroebnerBasis,
    IdealError,
};
use crate::linalg::{RowSpace, SparseVec};
use crate::order;
use crate::quiver::{Path, PathElement, Quiver, VertexId};
use crate::scalar::FieldSpec;
use std::collections::HashMap;
use std::sync::Arc;

/// A quiver, a field, and a list of uniform relations: the input data of
/// every construction in the crate.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub quiver: Arc<Quiver>,
    pub field: FieldSpec,
    pub relations: Vec<PathElement>,
}

/// `KQ/I` with multiplication by tip reduction on the normal-word basis.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    quiver: Arc<Quiver>,
    field: FieldSpec,
    gb: GroebnerBasis,
    certificate: Completeness,
    basis: Vec<Path>,
    index: HashMap<Path, usize>,
    /// Flattened `dim x dim` table of basis products in basis coordinates.
    table: Vec<SparseVec>,
    graded: bool,
    monomial: bool,
}

impl QuotientAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn groebner_basis(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn certificate(&self) -> &Completeness {
        &self.certificate
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn basis_word(&self, i: usize) -> &Path {
        &self.basis[i]
    }

    pub fn basis_index(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// The ideal is generated by length-homogeneous elements.
    pub fn is_graded(&self) -> bool {
        self.graded
    }

    pub fn is_monomial(&self) -> bool {
        self.monomial
    }

    /// Indices of the trivial paths; the complete set of primitive orthogonal
    /// idempotents.
    pub fn vertex_indices(&self) -> Vec<usize> {
        self.quiver
            .vertex_ids()
            .map(|v| self.index[&Path::trivial(v)])
            .collect()
    }

    /// Indices of normal words of length at least one; a basis of the radical.
    pub fn radical_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.basis[i].len() >= 1).collect()
    }

    pub fn dim_between(&self, source: VertexId, target: VertexId) -> usize {
        self.basis
            .iter()
            .filter(|w| w.source() == source && w.target() == target)
            .count()
    }

    /// Dimension of `v * Lambda`: normal words starting at `v`.
    pub fn dim_starting_at(&self, v: VertexId) -> usize {
        self.basis.iter().filter(|w| w.source() == v).count()
    }

    /// Dimension of `Lambda * v`: normal words ending at `v`.
    pub fn dim_ending_at(&self, v: VertexId) -> usize {
        self.basis.iter().filter(|w| w.target() == v).count()
    }

    /// Canonical coordinates of an arbitrary `KQ` element.
    pub fn reduce(&self, x: &PathElement) -> SparseVec {
        let nf = normal_form(x, &self.gb);
        SparseVec::from_entries(
            nf.terms()
                .map(|(p, c)| (self.index[p], c.clone()))
                .collect(),
        )
    }

    pub fn vec_to_element(&self, v: &SparseVec) -> PathElement {
        let mut out = PathElement::zero(self.field);
        for (i, c) in v.iter() {
            out.add_term(self.basis[*i].clone(), c.clone());
        }
        out
    }

    /// Product of two basis words, in basis coordinates.
    pub fn mul_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim() + j]
    }

    pub fn mul_vec(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::zero();
        for (i, c) in a.iter() {
            for (j, d) in b.iter() {
                acc = acc.add_scaled(self.mul_basis(*i, *j), &c.mul(d));
            }
        }
        acc
    }

    /// Normal words grouped by `(source, target, length)`.
    pub fn grouped_basis(
        &self,
    ) -> std::collections::BTreeMap<(VertexId, VertexId, usize), Vec<Path>> {
        groebner::group_normal_words(&self.basis)
    }
}

/// Builds the quotient algebra: Buchberger completion, certification, basis
/// enumeration, multiplication table, and the nilpotence check on the arrow
/// ideal.
pub fn quotient_algebra(
    presentation: &Presentation,
    degree_cap: Option<usize>,
) -> Result<QuotientAlgebra, IdealError> {
    let cap = degree_cap.unwrap_or_else(|| groebner::default_degree_cap(&presentation.relations));
    let out = buchberger(&presentation.quiver, &presentation.relations, cap)?;
    match out.certificate {
        Completeness::Complete { .. } => {}
        Completeness::Incomplete { cap } => {
            // Distinguish "no finiteness in sight" from "certificate needs a
            // larger cap": rerun certification bookkeeping via errors.
            return Err(IdealError::PossiblyInfinite { cap });
        }
    }
    let basis = enumerate_normal_words(&out.basis, &out.certificate)?;
    let index: HashMap<Path, usize> =
        basis.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    let dim = basis.len();
    let field = presentation.field;
    let graded = out.basis.is_homogeneous();
    let monomial = out.basis.is_monomial();

    let mut table = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            let prod = match basis[i].compose(&basis[j]) {
                None => SparseVec::zero(),
                Some(p) => {
                    let nf = normal_form(&PathElement::from_path(field, p), &out.basis);
                    SparseVec::from_entries(
                        nf.terms().map(|(w, c)| (index[w], c.clone())).collect(),
                    )
                }
            };
            table.push(prod);
        }
    }

    let alg = QuotientAlgebra {
        quiver: presentation.quiver.clone(),
        field,
        gb: out.basis,
        certificate: out.certificate,
        basis,
        index,
        table,
        graded,
        monomial,
    };

    // Admissibility: the arrow ideal must be nilpotent in the quotient.
    if !radical_is_nilpotent(&alg) {
        return Err(IdealError::NotAdmissible { index: 0, length: 0 });
    }
    Ok(alg)
}

/// Checks that iterated products of radical basis words eventually vanish.
fn radical_is_nilpotent(alg: &QuotientAlgebra) -> bool {
    let rad = alg.radical_indices();
    let max_len = alg.basis().iter().map(|p| p.len()).max().unwrap_or(0);
    // Right multiplication by arrows at most max_len + 1 times must kill
    // every radical word.
    let arrow_indices: Vec<usize> = alg
        .quiver
        .arrow_ids()
        .filter_map(|a| alg.basis_index(&Path::arrow(&alg.quiver, a)))
        .collect();
    let mut layer: Vec<SparseVec> = rad.iter().map(|&i| SparseVec::unit(i, alg.field)).collect();
    for _ in 0..=max_len + 1 {
        if layer.is_empty() {
            return true;
        }
        let mut next: Vec<SparseVec> = Vec::new();
        let mut span = RowSpace::new();
        for v in &layer {
            for &a in &arrow_indices {
                let mut prod = SparseVec::zero();
                for (i, c) in v.iter() {
                    prod = prod.add_scaled(alg.mul_basis(*i, a), c);
                }
                if !prod.is_zero() && span.insert(&prod) {
                    next.push(prod);
                }
            }
        }
        layer = next;
    }
    layer.is_empty()
}

/// Verdict of the generator-minimality check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalityReport {
    /// Indices of relations whose image in `I/(rI + Ir)` is dependent on the
    /// earlier ones (in input order).
    pub redundant: Vec<usize>,
    pub all_uniform: bool,
}

impl MinimalityReport {
    pub fn is_minimal(&self) -> bool {
        self.redundant.is_empty() && self.all_uniform
    }
}

/// Verifies that the given relations are uniform and minimally generate their
/// ideal: their images in `I/(rI + Ir)` must be linearly independent.
///
/// The subspace `rI + Ir` is spanned by `p * g * q` over Groebner-basis
/// elements `g` and paths `p`, `q` not both trivial; the computation truncates
/// everything to degree at most the largest relation degree. For
/// length-homogeneous input the truncation is exact; for inhomogeneous input
/// the verdict is relative to the degree filtration.
pub fn check_minimal_uniform(
    relations: &[PathElement],
    algebra: &QuotientAlgebra,
) -> MinimalityReport {
    let all_uniform = relations
        .iter()
        .all(|g| g.classify().map(|c| c.uniform.is_some()).unwrap_or(false));

    let cap = relations
        .iter()
        .flat_map(|g| g.terms().map(|(p, _)| p.len()))
        .max()
        .unwrap_or(0);

    // Enumerate all paths of length <= cap once, for framing.
    let quiver = algebra.quiver();
    let mut paths_by_len: Vec<Vec<Path>> = vec![quiver.vertex_ids().map(Path::trivial).collect()];
    for _ in 1..=cap {
        let prev = paths_by_len.last().unwrap();
        let mut next = Vec::new();
        for p in prev {
            for a in quiver.arrows_from(p.target()) {
                next.push(p.compose(&Path::arrow(quiver, a)).unwrap());
            }
        }
        paths_by_len.push(next);
    }
    let all_paths: Vec<Path> = paths_by_len.concat();

    // Coordinates on paths of length <= cap.
    let mut coords: HashMap<Path, usize> = HashMap::new();
    for p in &all_paths {
        let n = coords.len();
        coords.entry(p.clone()).or_insert(n);
    }
    let truncate = |x: &PathElement| -> SparseVec {
        SparseVec::from_entries(
            x.terms()
                .filter(|(p, _)| p.len() <= cap)
                .map(|(p, c)| (coords[p], c.clone()))
                .collect(),
        )
    };

    // Span of r*I + I*r, degree-truncated.
    let mut span = RowSpace::new();
    for g in algebra.groebner_basis().elements() {
        let min_deg = g.terms().map(|(p, _)| p.len()).min().unwrap_or(0);
        for left in &all_paths {
            if left.len() + min_deg > cap {
                continue;
            }
            for right in &all_paths {
                if left.len() + right.len() == 0 || left.len() + min_deg + right.len() > cap {
                    continue;
                }
                let framed = g.frame(left, right);
                if !framed.is_zero() {
                    span.insert(&truncate(&framed));
                }
            }
        }
    }

    let mut redundant = Vec::new();
    for (k, g) in relations.iter().enumerate() {
        if !span.insert(&truncate(g)) {
            redundant.push(k);
        }
    }
    MinimalityReport { redundant, all_uniform }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::ArrowId;

    fn two_loops() -> Arc<Quiver> {
        Quiver::new(
            vec!["v".into()],
            vec![
                ("x".into(), "v".into(), "v".into()),
                ("y".into(), "v".into(), "v".into()),
            ],
        )
        .unwrap()
    }

    fn mono(q: &Quiver, ids: &[usize]) -> PathElement {
        PathElement::from_path(
            FieldSpec::Rationals,
            Path::from_arrows(q, &ids.iter().map(|i| ArrowId(*i)).collect::<Vec<_>>()).unwrap(),
        )
    }

    fn commutator_presentation() -> Presentation {
        let q = two_loops();
        let xy = mono(&q, &[0, 1]);
        let yx = mono(&q, &[1, 0]);
        let relations = vec![mono(&q, &[0, 0]), xy.sub(&yx), mono(&q, &[1, 1])];
        Presentation { quiver: q, field: FieldSpec::Rationals, relations }
    }

    fn two_cycle_presentation() -> Presentation {
        let q = Quiver::new(
            vec!["1".into(), "2".into()],
            vec![
                ("a".into(), "1".into(), "2".into()),
                ("b".into(), "2".into(), "1".into()),
            ],
        )
        .unwrap();
        let relations = vec![mono(&q, &[0, 1, 0]), mono(&q, &[1, 0, 1])];
        Presentation { quiver: q, field: FieldSpec::Rationals, relations }
    }

    #[test]
    fn commutator_algebra_has_dimension_four() {
        let alg = quotient_algebra(&commutator_presentation(), None).unwrap();
        assert_eq!(alg.dim(), 4);
        assert!(alg.is_graded());
        assert!(!alg.is_monomial());
        assert_eq!(alg.radical_indices().len(), 3);
    }

    #[test]
    fn two_cycle_algebra_has_dimension_six() {
        let alg = quotient_algebra(&two_cycle_presentation(), None).unwrap();
        assert_eq!(alg.dim(), 6);
        assert!(alg.is_monomial());
        let v1 = VertexId(0);
        assert_eq!(alg.dim_between(v1, v1), 1);
        assert_eq!(alg.dim_starting_at(v1), 3); // e1, a, ab
    }

    #[test]
    fn truncated_polynomial_algebra() {
        let q = Quiver::new(vec!["v".into()], vec![("x".into(), "v".into(), "v".into())]).unwrap();
        let pres = Presentation {
            quiver: q.clone(),
            field: FieldSpec::Rationals,
            relations: vec![mono(&q, &[0, 0, 0])],
        };
        let alg = quotient_algebra(&pres, None).unwrap();
        assert_eq!(alg.dim(), 3);
    }

    #[test]
    fn quiver_with_no_arrows_gives_semisimple_basis() {
        let q = Quiver::new(vec!["1".into(), "2".into()], vec![]).unwrap();
        let pres = Presentation { quiver: q, field: FieldSpec::Rationals, relations: vec![] };
        let alg = quotient_algebra(&pres, None).unwrap();
        assert_eq!(alg.dim(), 2);
        assert!(alg.radical_indices().is_empty());
    }

    #[test]
    fn infinite_dimensional_input_is_rejected() {
        let q = two_loops();
        let pres = Presentation {
            quiver: q.clone(),
            field: FieldSpec::Rationals,
            relations: vec![mono(&q, &[0, 0])], // y stays free
        };
        assert!(matches!(
            quotient_algebra(&pres, Some(8)),
            Err(IdealError::PossiblyInfinite { .. })
        ));
    }

    #[test]
    fn non_admissible_quotient_is_rejected() {
        // x^2 + x^3 has a finite-dimensional quotient, but the arrow ideal is
        // not nilpotent in it (x becomes invertible on a factor).
        let q = Quiver::new(vec!["v".into()], vec![("x".into(), "v".into(), "v".into())]).unwrap();
        let rel = mono(&q, &[0, 0]).add(&mono(&q, &[0, 0, 0]));
        let pres =
            Presentation { quiver: q, field: FieldSpec::Rationals, relations: vec![rel] };
        assert!(matches!(
            quotient_algebra(&pres, None),
            Err(IdealError::NotAdmissible { .. })
        ));
    }

    #[test]
    fn multiplication_table_is_associative_and_unital() {
        let alg = quotient_algebra(&commutator_presentation(), None).unwrap();
        let dim = alg.dim();
        let unit: SparseVec = {
            let mut acc = SparseVec::zero();
            for i in alg.vertex_indices() {
                acc = acc.add(&SparseVec::unit(i, alg.field()));
            }
            acc
        };
        for i in 0..dim {
            let e = SparseVec::unit(i, alg.field());
            assert_eq!(alg.mul_vec(&unit, &e), e);
            assert_eq!(alg.mul_vec(&e, &unit), e);
            for j in 0..dim {
                for k in 0..dim {
                    let ej = SparseVec::unit(j, alg.field());
                    let ek = SparseVec::unit(k, alg.field());
                    let left = alg.mul_vec(&alg.mul_vec(&e, &ej), &ek);
                    let right = alg.mul_vec(&e, &alg.mul_vec(&ej, &ek));
                    assert_eq!(left, right);
                }
            }
        }
    }

    #[test]
    fn independent_dimension_oracle_agrees() {
        // Reduce every path of length < certificate bound; the rank of the
        // reduced vectors equals the dimension.
        for pres in [commutator_presentation(), two_cycle_presentation()] {
            let alg = quotient_algebra(&pres, None).unwrap();
            let Completeness::Complete { bound } = *alg.certificate() else {
                panic!("expected complete basis")
            };
            let mut frontier: Vec<Path> =
                pres.quiver.vertex_ids().map(Path::trivial).collect();
            let mut span = RowSpace::new();
            for _ in 0..bound {
                for p in &frontier {
                    span.insert(&alg.reduce(&PathElement::from_path(pres.field, p.clone())));
                }
                let mut next = Vec::new();
                for p in &frontier {
                    for a in pres.quiver.arrows_from(p.target()) {
                        next.push(p.compose(&Path::arrow(&pres.quiver, a)).unwrap());
                    }
                }
                frontier = next;
            }
            assert_eq!(span.rank(), alg.dim());
        }
    }

    #[test]
    fn radical_products_vanish() {
        let alg = quotient_algebra(&commutator_presentation(), None).unwrap();
        let max_len = alg.basis().iter().map(|p| p.len()).max().unwrap();
        let rad = alg.radical_indices();
        // Every product of max_len + 1 radical basis words reduces to zero.
        let mut layer: Vec<SparseVec> =
            rad.iter().map(|&i| SparseVec::unit(i, alg.field())).collect();
        for _ in 0..max_len {
            let mut next = Vec::new();
            for v in &layer {
                for &r in &rad {
                    let mut prod = SparseVec::zero();
                    for (i, c) in v.iter() {
                        prod = prod.add_scaled(alg.mul_basis(*i, r), c);
                    }
                    if !prod.is_zero() {
                        next.push(prod);
                    }
                }
            }
            layer = next;
        }
        assert!(layer.is_empty());
    }

    #[test]
    fn minimality_detects_redundancy() {
        let pres = commutator_presentation();
        let alg = quotient_algebra(&pres, None).unwrap();
        let report = check_minimal_uniform(&pres.relations, &alg);
        assert!(report.is_minimal());

        let q = pres.quiver.clone();
        let extra = mono(&q, &[0, 0]).add(&mono(&q, &[1, 1]));
        let mut relations = pres.relations.clone();
        relations.push(extra);
        let pres2 = Presentation { quiver: q, field: pres.field, relations };
        let alg2 = quotient_algebra(&pres2, None).unwrap();
        let report2 = check_minimal_uniform(&pres2.relations, &alg2);
        assert_eq!(report2.redundant, vec![3]);

        let cyc = two_cycle_presentation();
        let alg3 = quotient_algebra(&cyc, None).unwrap();
        assert!(check_minimal_uniform(&cyc.relations, &alg3).is_minimal());
    }
}
