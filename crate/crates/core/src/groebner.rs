//! Noncommutative Groebner bases for path-algebra ideals.
//!
//! Generators must be uniform elements of the square of the arrow ideal
//! (the admissibility precondition). Completion processes overlap
//! S-polynomials by increasing overlap-word degree up to a cap, then
//! inter-reduces. The finiteness certificate is the classical one: if some
//! length `L` has every path of length `L` tip-reducible, the normal words are
//! finite, the reduced basis has tips of length at most `L`, and resolving all
//! overlap ambiguities of degree `< 2L` (all processed once the cap is at
//! least `2L`) proves the basis complete.
//!
//! Monomial generator sets skip completion entirely: a reduced set of paths is
//! its own Groebner basis.

use crate::order;
use crate::quiver::{Path, PathElement, Quiver, VertexId};
use crate::scalar::FieldSpec;
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum IdealError {
    #[error("generator {index} is not uniform")]
    NonUniform { index: usize },
    #[error("generator {index} has a component of length {length}; admissible ideals sit inside the arrow-ideal square")]
    NotAdmissible { index: usize, length: usize },
    #[error("generator {index} is zero")]
    ZeroGenerator { index: usize },
    #[error("field mismatch between generators")]
    FieldMismatch,
    #[error("no finiteness certificate up to degree {cap}: the quotient may be infinite-dimensional")]
    PossiblyInfinite { cap: usize },
    #[error("normal words stop at length {bound} but overlap processing reached only degree {cap} < {}; raise the degree cap", 2 * bound)]
    CapTooSmall { bound: usize, cap: usize },
    #[error("basis enumeration requires a COMPLETE certificate")]
    IncompleteBasis,
}

/// Outcome of the finiteness certification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Completeness {
    /// Every path of length `bound` is tip-reducible and all overlaps of
    /// degree `<= 2 * bound` were processed.
    Complete { bound: usize },
    /// Certification failed within the processed degree.
    Incomplete { cap: usize },
}

impl Completeness {
    pub fn is_complete(&self) -> bool {
        matches!(self, Completeness::Complete { .. })
    }
}

/// An inter-reduced set of monic uniform elements tagged with their tips.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    quiver: Arc<Quiver>,
    field: FieldSpec,
    elements: Vec<PathElement>,
    tips: Vec<Path>,
}

impl GroebnerBasis {
    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn elements(&self) -> &[PathElement] {
        &self.elements
    }

    pub fn tips(&self) -> &[Path] {
        &self.tips
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// All elements length-homogeneous (the quotient is then length-graded).
    pub fn is_homogeneous(&self) -> bool {
        self.elements
            .iter()
            .all(|g| g.classify().map(|c| c.homogeneous_degree.is_some()).unwrap_or(true))
    }

    pub fn is_monomial(&self) -> bool {
        self.elements.iter().all(|g| g.support_len() == 1)
    }

    fn first_divisible(&self, word: &Path) -> Option<(usize, usize)> {
        for (k, tip) in self.tips.iter().enumerate() {
            if let Some(pos) = order::find_subword(word.word(), tip.word()) {
                return Some((k, pos));
            }
        }
        None
    }

    /// True when no tip divides the word.
    pub fn is_normal_word(&self, word: &Path) -> bool {
        self.first_divisible(word).is_none()
    }
}

/// Canonical representative of `x` modulo the ideal: every support path is
/// replaced until none is divisible by a tip. Idempotent by construction.
pub fn normal_form(x: &PathElement, gb: &GroebnerBasis) -> PathElement {
    let mut cur = x.clone();
    loop {
        // Largest reducible support word first keeps the trace canonical.
        let hit = cur
            .terms()
            .rev()
            .find_map(|(p, c)| gb.first_divisible(p).map(|(k, pos)| (p.clone(), c.clone(), k, pos)));
        let Some((word, coeff, k, pos)) = hit else {
            return cur;
        };
        let g = &gb.elements[k];
        let tip_len = gb.tips[k].len();
        let left = word.slice(&gb.quiver, 0, pos);
        let right = word.slice(&gb.quiver, pos + tip_len, word.len());
        // Subtract coeff * left * g * right; the tip term cancels `word`.
        let framed = g.frame(&left, &right);
        cur = cur.sub(&framed.scale(&coeff));
    }
}

/// Result of Buchberger completion together with its certificate and the
/// highest overlap degree actually processed.
#[derive(Clone, Debug)]
pub struct CompletionOutcome {
    pub basis: GroebnerBasis,
    pub certificate: Completeness,
    pub processed_degree: usize,
}

fn validate_generators(gens: &[PathElement]) -> Result<(), IdealError> {
    let mut field: Option<FieldSpec> = None;
    for (index, g) in gens.iter().enumerate() {
        if g.is_zero() {
            return Err(IdealError::ZeroGenerator { index });
        }
        match field {
            None => field = Some(g.field()),
            Some(f) if f != g.field() => return Err(IdealError::FieldMismatch),
            _ => {}
        }
        let cls = g.classify().expect("nonzero");
        if cls.uniform.is_none() {
            return Err(IdealError::NonUniform { index });
        }
        for (p, _) in g.terms() {
            if p.len() < 2 {
                return Err(IdealError::NotAdmissible { index, length: p.len() });
            }
        }
    }
    Ok(())
}

/// Default processing cap: generous multiple of the longest generator.
pub fn default_degree_cap(gens: &[PathElement]) -> usize {
    let max_len = gens
        .iter()
        .filter_map(|g| g.tip().map(|(p, _)| p.len()))
        .max()
        .unwrap_or(0);
    (4 * max_len).max(12)
}

/// Runs completion, taking the monomial shortcut when every generator is a
/// single path.
pub fn buchberger(
    quiver: &Arc<Quiver>,
    generators: &[PathElement],
    degree_cap: usize,
) -> Result<CompletionOutcome, IdealError> {
    completion(quiver, generators, degree_cap, false)
}

/// Completion with the monomial shortcut disabled; used to cross-check that
/// the shortcut and the general algorithm agree on monomial input.
pub fn buchberger_general(
    quiver: &Arc<Quiver>,
    generators: &[PathElement],
    degree_cap: usize,
) -> Result<CompletionOutcome, IdealError> {
    completion(quiver, generators, degree_cap, true)
}

fn completion(
    quiver: &Arc<Quiver>,
    generators: &[PathElement],
    degree_cap: usize,
    force_general: bool,
) -> Result<CompletionOutcome, IdealError> {
    validate_generators(generators)?;
    let field = generators.first().map(|g| g.field()).unwrap_or(FieldSpec::Rationals);
    let monomial = generators.iter().all(|g| g.support_len() == 1);

    let mut basis: Vec<PathElement> = Vec::new();
    let mut gb = GroebnerBasis {
        quiver: quiver.clone(),
        field,
        elements: Vec::new(),
        tips: Vec::new(),
    };

    let mut push = |gb: &mut GroebnerBasis, g: PathElement| {
        let (tip, coeff) = {
            let (p, c) = g.tip().expect("nonzero");
            (p.clone(), c.clone())
        };
        let monic = g.scale(&coeff.inv());
        gb.tips.push(tip);
        gb.elements.push(monic);
    };

    // Seed with reduced input generators.
    for g in generators {
        let r = normal_form(g, &gb);
        if !r.is_zero() {
            push(&mut gb, r);
        }
    }

    if !(monomial && !force_general) {
        // Overlap queue ordered by (overlap-word length, i, j, overlap size).
        // Processing strictly by degree makes the run reproducible and lets
        // the certificate claim "all overlaps of degree <= cap processed".
        let mut seen: std::collections::BTreeSet<(usize, usize, usize)> =
            std::collections::BTreeSet::new();
        loop {
            let mut queue: BTreeMap<(usize, usize, usize, usize), (Path, Path)> = BTreeMap::new();
            let n = gb.elements.len();
            for i in 0..n {
                for j in 0..n {
                    let ti = gb.tips[i].clone();
                    let tj = gb.tips[j].clone();
                    for k in order::proper_overlaps(ti.word(), tj.word()) {
                        if seen.contains(&(i, j, k)) {
                            continue;
                        }
                        // tip_i = u o, tip_j = o v with |o| = k.
                        let u = ti.slice(quiver, 0, ti.len() - k);
                        let v = tj.slice(quiver, k, tj.len());
                        let degree = ti.len() + tj.len() - k;
                        if degree > degree_cap {
                            continue;
                        }
                        queue.insert((degree, i, j, k), (u, v));
                    }
                }
            }
            if queue.is_empty() {
                break;
            }
            for ((_deg, i, j, k), (u, v)) in queue {
                seen.insert((i, j, k));
                // S = g_i * v - u * g_j ; the common tip word cancels.
                let left = gb.elements[i].frame(&Path::trivial(gb.tips[i].source()), &v);
                let right = gb.elements[j].frame(&u, &Path::trivial(gb.tips[j].target()));
                let s = left.sub(&right);
                let r = normal_form(&s, &gb);
                if !r.is_zero() {
                    push(&mut gb, r);
                }
            }
        }
    }

    let gb = inter_reduce(gb);
    let certificate = certify(&gb, degree_cap);
    Ok(CompletionOutcome { basis: gb, certificate, processed_degree: degree_cap })
}

/// Removes elements whose tip is divisible by another tip, then tail-reduces
/// every survivor against the others.
fn inter_reduce(gb: GroebnerBasis) -> GroebnerBasis {
    let GroebnerBasis { quiver, field, elements, tips } = gb;
    let mut order_idx: Vec<usize> = (0..elements.len()).collect();
    order_idx.sort_by(|&a, &b| tips[a].cmp(&tips[b]).then(a.cmp(&b)));

    let mut kept_elements: Vec<PathElement> = Vec::new();
    let mut kept_tips: Vec<Path> = Vec::new();
    for idx in order_idx {
        let tip = &tips[idx];
        let divisible = kept_tips
            .iter()
            .any(|t| order::is_subword(tip.word(), t.word()));
        if !divisible {
            kept_elements.push(elements[idx].clone());
            kept_tips.push(tip.clone());
        }
    }

    let mut gb = GroebnerBasis { quiver, field, elements: kept_elements, tips: kept_tips };
    // Tail-reduce until stable.
    loop {
        let mut changed = false;
        for k in 0..gb.elements.len() {
            let g = gb.elements[k].clone();
            let others = GroebnerBasis {
                quiver: gb.quiver.clone(),
                field: gb.field,
                elements: gb
                    .elements
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != k)
                    .map(|(_, e)| e.clone())
                    .collect(),
                tips: gb
                    .tips
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != k)
                    .map(|(_, t)| t.clone())
                    .collect(),
            };
            let r = normal_form(&g, &others);
            if r != g {
                // The tip itself is irreducible (tips form an antichain), so
                // the reduction only rewrites tail terms.
                let (_, c) = r.tip().expect("tip survives tail reduction");
                gb.elements[k] = r.scale(&c.inv());
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    gb
}

/// Counts normal words length by length; the first empty length certifies
/// finiteness because normal words are closed under taking prefixes.
fn certify(gb: &GroebnerBasis, cap: usize) -> Completeness {
    let mut frontier: Vec<Path> = gb.quiver.vertex_ids().map(Path::trivial).collect();
    frontier.retain(|p| gb.is_normal_word(p));
    for length in 1..=cap + 1 {
        let mut next = Vec::new();
        for p in &frontier {
            for a in gb.quiver.arrows_from(p.target()) {
                let ext = p.compose(&Path::arrow(&gb.quiver, a)).expect("composable");
                // Only a suffix of the extension can become newly divisible.
                if gb.is_normal_word(&ext) {
                    next.push(ext);
                }
            }
        }
        if next.is_empty() {
            let bound = length;
            return if 2 * bound <= cap || gb.is_empty() {
                Completeness::Complete { bound }
            } else {
                Completeness::Incomplete { cap }
            };
        }
        frontier = next;
    }
    Completeness::Incomplete { cap }
}

/// BFS enumeration of all normal words, in admissible order. Requires a
/// COMPLETE certificate so that termination is guaranteed.
pub fn enumerate_normal_words(
    gb: &GroebnerBasis,
    certificate: &Completeness,
) -> Result<Vec<Path>, IdealError> {
    let Completeness::Complete { bound } = certificate else {
        return Err(IdealError::IncompleteBasis);
    };
    let mut all: Vec<Path> = Vec::new();
    let mut frontier: Vec<Path> = gb.quiver.vertex_ids().map(Path::trivial).collect();
    frontier.retain(|p| gb.is_normal_word(p));
    let mut length = 0;
    while !frontier.is_empty() {
        assert!(length <= *bound, "certificate bound violated");
        all.extend(frontier.iter().cloned());
        let mut next = Vec::new();
        for p in &frontier {
            for a in gb.quiver.arrows_from(p.target()) {
                let ext = p.compose(&Path::arrow(&gb.quiver, a)).expect("composable");
                if gb.is_normal_word(&ext) {
                    next.push(ext);
                }
            }
        }
        frontier = next;
        length += 1;
    }
    all.sort();
    Ok(all)
}

/// Normal words grouped by `(source, target, length)`.
pub fn group_normal_words(
    words: &[Path],
) -> BTreeMap<(VertexId, VertexId, usize), Vec<Path>> {
    let mut out: BTreeMap<(VertexId, VertexId, usize), Vec<Path>> = BTreeMap::new();
    for w in words {
        out.entry((w.source(), w.target(), w.len())).or_default().push(w.clone());
    }
    out
}
