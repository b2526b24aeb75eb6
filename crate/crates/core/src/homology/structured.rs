//! Basis-and-structure-constant algebras.
//!
//! A [`StructuredAlgebra`] is a finite-dimensional algebra given by a labelled
//! basis in which
//!
//! * a subset of basis elements forms a complete set of orthogonal primitive
//!   idempotents summing to 1,
//! * every basis element has a unique source and target idempotent,
//! * the non-idempotent basis elements span the Jacobson radical, and the
//!   radical is generated as a right ideal by a recorded list of basis
//!   elements ("radical generators" — the arrows, for a quotient algebra),
//! * every basis element factors as `parent * generator` and as
//!   `generator * parent` over strictly smaller basis elements.
//!
//! Quotient algebras, their opposites, and enveloping algebras all fit this
//! shape, and it is exactly what the resolution engine consumes. Enveloping
//! algebras store no multiplication table; products of basis pairs are
//! computed from the factor tables on demand, which keeps the memory
//! footprint linear even when the dimension squares.

use crate::algebra::QuotientAlgebra;
use crate::linalg::SparseVec;
use crate::scalar::FieldSpec;
use std::sync::Arc;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("enveloping algebra dimension {dim} exceeds the budget {budget}")]
    BudgetExceeded { dim: usize, budget: usize },
    #[error("operation requires a dense multiplication table")]
    NeedsDenseTable,
    #[error("graded Betti data required but the algebra is ungraded")]
    Ungraded,
    #[error("insufficient resolution data: need n_max >= {needed}, have {have}")]
    InsufficientData { needed: usize, have: usize },
}

/// How a basis element decomposes over the generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Factor {
    /// The element is the idempotent at this position of the idempotent list.
    Idem(usize),
    /// `basis[self] = basis[parent] * radgen[gen]` (for the last-step table)
    /// or `radgen[gen] * basis[parent]` (for the first-step table).
    Ext { parent: usize, gen: usize },
}

enum MulSource {
    /// Flattened `dim x dim` table.
    Dense(Vec<SparseVec>),
    /// Tensor pairs over a base algebra with an opposite twist on the left
    /// factor: index `i * base.dim + j` is `base[i] (x) base[j]`.
    Pair(Arc<StructuredAlgebra>),
}

pub struct StructuredAlgebra {
    field: FieldSpec,
    dim: usize,
    labels: Vec<String>,
    /// Basis indices of the orthogonal primitive idempotents.
    idems: Vec<usize>,
    /// Per basis element: position into `idems` of its source idempotent
    /// (`e * b = b`) and target idempotent (`b * e = b`).
    source: Vec<u32>,
    target: Vec<u32>,
    degrees: Option<Vec<i64>>,
    /// Basis indices generating the radical as a right ideal.
    radgens: Vec<usize>,
    factor_last: Vec<Factor>,
    factor_first: Vec<Factor>,
    mul: MulSource,
}

impl std::fmt::Debug for StructuredAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("StructuredAlgebra")
            .field("dim", &self.dim)
            .field("idempotents", &self.idems.len())
            .field("graded", &self.degrees.is_some())
            .finish()
    }
}

impl StructuredAlgebra {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn idempotents(&self) -> &[usize] {
        &self.idems
    }

    pub fn idempotent_count(&self) -> usize {
        self.idems.len()
    }

    pub fn source_idem(&self, i: usize) -> usize {
        self.source[i] as usize
    }

    pub fn target_idem(&self, i: usize) -> usize {
        self.target[i] as usize
    }

    pub fn is_graded(&self) -> bool {
        self.degrees.is_some()
    }

    pub fn degree(&self, i: usize) -> Option<i64> {
        self.degrees.as_ref().map(|d| d[i])
    }

    pub fn radical_generators(&self) -> &[usize] {
        &self.radgens
    }

    /// Basis indices spanning the radical.
    pub fn radical_indices(&self) -> Vec<usize> {
        let idem: std::collections::HashSet<usize> = self.idems.iter().copied().collect();
        (0..self.dim).filter(|i| !idem.contains(i)).collect()
    }

    pub fn radical_dim(&self) -> usize {
        self.dim - self.idems.len()
    }

    pub fn factor_last(&self, i: usize) -> Factor {
        self.factor_last[i]
    }

    pub fn factor_first(&self, i: usize) -> Factor {
        self.factor_first[i]
    }

    /// Product of two basis elements, in basis coordinates.
    pub fn mul_basis(&self, i: usize, j: usize) -> SparseVec {
        match &self.mul {
            MulSource::Dense(table) => table[i * self.dim + j].clone(),
            MulSource::Pair(base) => {
                let d = base.dim();
                let (a, b) = (i / d, i % d);
                let (c, e) = (j / d, j % d);
                // (a (x) b) * (c (x) e) = (c *base* a) (x) (b *base* e):
                // the left factor multiplies through the opposite.
                let left = base.mul_basis(c, a);
                let right = base.mul_basis(b, e);
                let mut entries = Vec::new();
                for (x, cx) in left.iter() {
                    for (y, cy) in right.iter() {
                        entries.push((x * d + y, cx.mul(cy)));
                    }
                }
                SparseVec::from_entries(entries)
            }
        }
    }

    pub fn mul_vec(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::zero();
        for (i, c) in a.iter() {
            for (j, d) in b.iter() {
                acc = acc.add_scaled(&self.mul_basis(*i, *j), &c.mul(d));
            }
        }
        acc
    }

    pub fn unit(&self) -> SparseVec {
        let mut acc = SparseVec::zero();
        for &i in &self.idems {
            acc = acc.add(&SparseVec::unit(i, self.field));
        }
        acc
    }

    /// Basis indices with the given source idempotent position, ascending.
    pub fn basis_with_source(&self, idem_pos: usize) -> Vec<usize> {
        (0..self.dim).filter(|&i| self.source[i] as usize == idem_pos).collect()
    }

    /// Spot-checks associativity and unitality: exhaustive up to dimension 64,
    /// a deterministic stride sample above.
    pub fn validate(&self) -> bool {
        let unit = self.unit();
        for i in 0..self.dim {
            let e = SparseVec::unit(i, self.field);
            if self.mul_vec(&unit, &e) != e || self.mul_vec(&e, &unit) != e {
                return false;
            }
        }
        let indices: Vec<usize> = if self.dim <= 64 {
            (0..self.dim).collect()
        } else {
            (0..self.dim).step_by(self.dim / 16 + 1).collect()
        };
        for &i in &indices {
            for &j in &indices {
                let ij = self.mul_basis(i, j);
                for &k in &indices {
                    let jk = self.mul_basis(j, k);
                    let mut left = SparseVec::zero();
                    for (x, c) in ij.iter() {
                        left = left.add_scaled(&self.mul_basis(*x, k), c);
                    }
                    let mut right = SparseVec::zero();
                    for (y, c) in jk.iter() {
                        right = right.add_scaled(&self.mul_basis(i, *y), c);
                    }
                    if left != right {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Converts a quotient algebra into structured form. Basis order is the
/// admissible order on normal words, so the idempotents come first.
pub fn from_quotient(alg: &QuotientAlgebra) -> Arc<StructuredAlgebra> {
    let dim = alg.dim();
    let quiver = alg.quiver();
    let labels: Vec<String> =
        alg.basis().iter().map(|p| p.display(quiver).to_string()).collect();
    let idems = alg.vertex_indices();
    let idem_pos_of_vertex: Vec<usize> = {
        // idems[k] is the basis index of the trivial path at vertex k.
        (0..quiver.vertex_count()).collect()
    };
    let source: Vec<u32> = alg
        .basis()
        .iter()
        .map(|p| idem_pos_of_vertex[p.source().0] as u32)
        .collect();
    let target: Vec<u32> = alg
        .basis()
        .iter()
        .map(|p| idem_pos_of_vertex[p.target().0] as u32)
        .collect();
    let degrees = alg
        .is_graded()
        .then(|| alg.basis().iter().map(|p| p.len() as i64).collect());

    let radgens: Vec<usize> = quiver
        .arrow_ids()
        .map(|a| {
            alg.basis_index(&crate::quiver::Path::arrow(quiver, a))
                .expect("arrows are normal words of an admissible quotient")
        })
        .collect();
    let gen_pos_of_arrow: std::collections::HashMap<usize, usize> =
        radgens.iter().enumerate().map(|(pos, &idx)| (idx, pos)).collect();

    let mut factor_last = Vec::with_capacity(dim);
    let mut factor_first = Vec::with_capacity(dim);
    for (i, p) in alg.basis().iter().enumerate() {
        if p.is_trivial() {
            factor_last.push(Factor::Idem(source[i] as usize));
            factor_first.push(Factor::Idem(source[i] as usize));
        } else {
            let n = p.len();
            let prefix = p.slice(quiver, 0, n - 1);
            let last = crate::quiver::Path::arrow(quiver, p.word()[n - 1]);
            factor_last.push(Factor::Ext {
                parent: alg.basis_index(&prefix).expect("prefix of normal word is normal"),
                gen: gen_pos_of_arrow[&alg.basis_index(&last).unwrap()],
            });
            let suffix = p.slice(quiver, 1, n);
            let first = crate::quiver::Path::arrow(quiver, p.word()[0]);
            factor_first.push(Factor::Ext {
                parent: alg.basis_index(&suffix).expect("suffix of normal word is normal"),
                gen: gen_pos_of_arrow[&alg.basis_index(&first).unwrap()],
            });
        }
    }

    let mut table = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            table.push(alg.mul_basis(i, j).clone());
        }
    }

    Arc::new(StructuredAlgebra {
        field: alg.field(),
        dim,
        labels,
        idems,
        source,
        target,
        degrees,
        radgens,
        factor_last,
        factor_first,
        mul: MulSource::Dense(table),
    })
}

/// The opposite algebra: transposed table, swapped endpoints, swapped factor
/// tables. Requires a dense table.
pub fn opposite_algebra(alg: &Arc<StructuredAlgebra>) -> Result<Arc<StructuredAlgebra>, HomologyError> {
    let MulSource::Dense(table) = &alg.mul else {
        return Err(HomologyError::NeedsDenseTable);
    };
    let dim = alg.dim;
    let mut transposed = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            transposed.push(table[j * dim + i].clone());
        }
    }
    Ok(Arc::new(StructuredAlgebra {
        field: alg.field,
        dim,
        labels: alg.labels.iter().map(|l| format!("op({l})")).collect(),
        idems: alg.idems.clone(),
        source: alg.target.clone(),
        target: alg.source.clone(),
        degrees: alg.degrees.clone(),
        radgens: alg.radgens.clone(),
        factor_last: alg.factor_first.clone(),
        factor_first: alg.factor_last.clone(),
        mul: MulSource::Dense(transposed),
    }))
}

/// The enveloping algebra `base^op (x) base` with the pair basis. Fails when
/// the squared dimension exceeds `budget`. Idempotents are the vertex pairs;
/// they are primitive because the semisimple quotient is split (one copy of
/// the ground field per vertex).
pub fn enveloping_algebra(
    base: &Arc<StructuredAlgebra>,
    budget: usize,
) -> Result<Arc<StructuredAlgebra>, HomologyError> {
    let d = base.dim;
    let dim = d * d;
    if dim > budget {
        return Err(HomologyError::BudgetExceeded { dim, budget });
    }
    let pair = |i: usize, j: usize| i * d + j;

    let mut labels = Vec::with_capacity(dim);
    for i in 0..d {
        for j in 0..d {
            labels.push(format!("{} (x) {}", base.labels[i], base.labels[j]));
        }
    }

    let mut idems = Vec::new();
    let mut idem_pos = vec![vec![usize::MAX; base.idems.len()]; base.idems.len()];
    for (pi, &ei) in base.idems.iter().enumerate() {
        for (pj, &ej) in base.idems.iter().enumerate() {
            idem_pos[pi][pj] = idems.len();
            idems.push(pair(ei, ej));
        }
    }

    // Source of (a (x) b): the pair (t(a), o(b)); target: (o(a), t(b)).
    // The left factor lives in the opposite algebra.
    let mut source = Vec::with_capacity(dim);
    let mut target = Vec::with_capacity(dim);
    let mut degrees = base.degrees.as_ref().map(|_| Vec::with_capacity(dim));
    for i in 0..d {
        for j in 0..d {
            source.push(idem_pos[base.target[i] as usize][base.source[j] as usize] as u32);
            target.push(idem_pos[base.source[i] as usize][base.target[j] as usize] as u32);
            if let (Some(out), Some(db)) = (degrees.as_mut(), base.degrees.as_ref()) {
                out.push(db[i] + db[j]);
            }
        }
    }

    // Radical generators: (arrow, vertex) pairs act by left multiplication,
    // (vertex, arrow) pairs by right multiplication.
    let mut radgens = Vec::new();
    let mut gen_pos: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
    for &a in &base.radgens {
        for &e in &base.idems {
            let idx = pair(a, e);
            gen_pos.insert(idx, radgens.len());
            radgens.push(idx);
        }
    }
    for &e in &base.idems {
        for &a in &base.radgens {
            let idx = pair(e, a);
            gen_pos.insert(idx, radgens.len());
            radgens.push(idx);
        }
    }

    let mut factor_last = Vec::with_capacity(dim);
    let mut factor_first = Vec::with_capacity(dim);
    for i in 0..d {
        for j in 0..d {
            // Last step: extend the right component if possible, else the left.
            let last = match base.factor_last[j] {
                Factor::Ext { parent, gen } => {
                    let src_i = base.idems[base.source[i] as usize];
                    Factor::Ext {
                        parent: pair(i, parent),
                        gen: gen_pos[&pair(src_i, base.radgens[gen])],
                    }
                }
                Factor::Idem(_) => match base.factor_first[i] {
                    Factor::Ext { parent, gen } => Factor::Ext {
                        parent: pair(parent, j),
                        gen: gen_pos[&pair(base.radgens[gen], base.idems[base.source[j] as usize])],
                    },
                    Factor::Idem(_) => {
                        Factor::Idem(idem_pos[base.source[i] as usize][base.source[j] as usize])
                    }
                },
            };
            factor_last.push(last);
            // First step symmetric: strip the left component's last arrow,
            // else the right component's first arrow.
            let first = match base.factor_last[i] {
                Factor::Ext { parent, gen } => {
                    let src_j = base.idems[base.source[j] as usize];
                    Factor::Ext {
                        parent: pair(parent, j),
                        gen: gen_pos[&pair(base.radgens[gen], src_j)],
                    }
                }
                Factor::Idem(_) => match base.factor_first[j] {
                    Factor::Ext { parent, gen } => Factor::Ext {
                        parent: pair(i, parent),
                        gen: gen_pos[&pair(base.idems[base.source[i] as usize], base.radgens[gen])],
                    },
                    Factor::Idem(_) => {
                        Factor::Idem(idem_pos[base.source[i] as usize][base.source[j] as usize])
                    }
                },
            };
            factor_first.push(first);
        }
    }

    Ok(Arc::new(StructuredAlgebra {
        field: base.field,
        dim,
        labels,
        idems,
        source,
        target,
        degrees,
        radgens,
        factor_last,
        factor_first,
        mul: MulSource::Pair(base.clone()),
    }))
}
