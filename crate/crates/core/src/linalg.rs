//! Sparse exact linear algebra: row spaces, ranks, kernels.
//!
//! Vectors are sorted sparse lists of `(index, scalar)`. A [`RowSpace`] keeps
//! an echelon set of rows keyed by pivot (the smallest support index, matching
//! the deterministic pivot rule used everywhere), each row monic at its pivot.
//! Reduction against a `RowSpace` is therefore canonical, which makes every
//! rank, kernel and generator choice in the crate reproducible.

use crate::scalar::{FieldSpec, Scalar};
use std::collections::BTreeMap;

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn zero() -> SparseVec {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(index: usize, field: FieldSpec) -> SparseVec {
        SparseVec { entries: vec![(index, field.one())] }
    }

    /// Builds from possibly unsorted, possibly repeated entries.
    pub fn from_entries(mut entries: Vec<(usize, Scalar)>) -> SparseVec {
        entries.sort_by_key(|e| e.0);
        let mut out: Vec<(usize, Scalar)> = Vec::with_capacity(entries.len());
        for (i, c) in entries {
            if let Some(last) = out.last_mut() {
                if last.0 == i {
                    last.1 = last.1.add(&c);
                    if last.1.is_zero() {
                        out.pop();
                    }
                    continue;
                }
            }
            if !c.is_zero() {
                out.push((i, c));
            }
        }
        SparseVec { entries: out }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, Scalar)> {
        self.entries.iter()
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, index: usize) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&index, |e| e.0)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    /// Smallest-index entry.
    pub fn leading(&self) -> Option<(usize, &Scalar)> {
        self.entries.first().map(|(i, c)| (*i, c))
    }

    pub fn scaled(&self, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::zero();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, d)| (*i, d.mul(c))).collect(),
        }
    }

    /// `self + c * other`, merging sorted entry lists.
    pub fn add_scaled(&self, other: &SparseVec, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        while i < self.entries.len() || j < other.entries.len() {
            let take_left = match (self.entries.get(i), other.entries.get(j)) {
                (Some(a), Some(b)) => {
                    if a.0 == b.0 {
                        let s = a.1.add(&b.1.mul(c));
                        if !s.is_zero() {
                            out.push((a.0, s));
                        }
                        i += 1;
                        j += 1;
                        continue;
                    }
                    a.0 < b.0
                }
                (Some(_), None) => true,
                (None, Some(_)) => false,
                (None, None) => break,
            };
            if take_left {
                out.push(self.entries[i].clone());
                i += 1;
            } else {
                let (idx, d) = &other.entries[j];
                let s = d.mul(c);
                if !s.is_zero() {
                    out.push((*idx, s));
                }
                j += 1;
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        match (self.entries.first(), other.entries.first()) {
            (_, None) => self.clone(),
            (None, _) => other.clone(),
            _ => {
                let one = self.entries[0].1.field().one();
                self.add_scaled(other, &one)
            }
        }
    }

    /// Restricts to indices for which `keep` holds.
    pub fn filter(&self, keep: impl Fn(usize) -> bool) -> SparseVec {
        SparseVec {
            entries: self.entries.iter().filter(|(i, _)| keep(*i)).cloned().collect(),
        }
    }

    /// Applies an index translation, dropping entries mapped to `None`.
    pub fn remap(&self, map: impl Fn(usize) -> Option<usize>) -> SparseVec {
        SparseVec::from_entries(
            self.entries
                .iter()
                .filter_map(|(i, c)| map(*i).map(|j| (j, c.clone())))
                .collect(),
        )
    }
}

/// Echelon row space with pivot-indexed rows.
#[derive(Clone, Debug, Default)]
pub struct RowSpace {
    rows: BTreeMap<usize, SparseVec>,
}

impl RowSpace {
    pub fn new() -> RowSpace {
        RowSpace { rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Fully reduces `v` against the stored rows.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut cur = v.clone();
        let mut pos = 0;
        while pos < cur.entries.len() {
            let idx = cur.entries[pos].0;
            if let Some(row) = self.rows.get(&idx) {
                let c = cur.entries[pos].1.neg();
                cur = cur.add_scaled(row, &c);
                // Entries before `pos` have indices smaller than any pivot we
                // may hit next, so scanning resumes at the same position.
            } else {
                pos += 1;
            }
        }
        cur
    }

    /// Inserts `v`; returns `true` when the rank grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        match r.leading() {
            None => false,
            Some((pivot, c)) => {
                let monic = r.scaled(&c.inv());
                self.rows.insert(pivot, monic);
                true
            }
        }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> {
        self.rows.values()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }
}

/// Rank of a spanning set.
pub fn rank_of(vectors: impl IntoIterator<Item = SparseVec>) -> usize {
    let mut space = RowSpace::new();
    for v in vectors {
        space.insert(&v);
    }
    space.rank()
}

/// Kernel basis of the linear map sending the `j`-th standard basis vector to
/// `columns[j]`. Columns are processed in order; each kernel vector is
/// supported on columns `<= j` with coefficient 1 at its own column, so the
/// basis is deterministic and in column-echelon form.
pub fn kernel_basis(columns: &[SparseVec], field: FieldSpec) -> Vec<SparseVec> {
    let mut space: BTreeMap<usize, (SparseVec, SparseVec)> = BTreeMap::new();
    let mut kernel = Vec::new();
    for (j, col) in columns.iter().enumerate() {
        let mut vec = col.clone();
        let mut combo = SparseVec::unit(j, field);
        let mut pos = 0;
        while pos < vec.entries.len() {
            let idx = vec.entries[pos].0;
            if let Some((row, row_combo)) = space.get(&idx) {
                let c = vec.entries[pos].1.neg();
                vec = vec.add_scaled(row, &c);
                combo = combo.add_scaled(row_combo, &c);
            } else {
                pos += 1;
            }
        }
        match vec.leading() {
            None => kernel.push(combo),
            Some((pivot, c)) => {
                let inv = c.inv();
                space.insert(pivot, (vec.scaled(&inv), combo.scaled(&inv)));
            }
        }
    }
    kernel
}
