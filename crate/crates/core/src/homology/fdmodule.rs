//! Finite-dimensional right modules over a [`StructuredAlgebra`].
//!
//! A module stores action matrices only for the algebra's idempotents and
//! radical generators; every other basis element acts through its
//! factorization chain. This keeps bimodules over large enveloping algebras
//! cheap: the module of interest is the base algebra itself, not a vector
//! space of the enveloping dimension.

use super::structured::{enveloping_algebra, opposite_algebra, HomologyError, StructuredAlgebra};
use crate::linalg::{RowSpace, SparseVec};
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct FDModule {
    pub algebra: Arc<StructuredAlgebra>,
    pub dim: usize,
    /// Internal degree per basis vector, when the action is graded.
    pub degrees: Option<Vec<i64>>,
    /// Column-major action of each idempotent (by position in the idempotent
    /// list).
    idem_act: Vec<Vec<SparseVec>>,
    /// Column-major action of each radical generator (by position).
    gen_act: Vec<Vec<SparseVec>>,
}

impl FDModule {
    pub fn new(
        algebra: Arc<StructuredAlgebra>,
        dim: usize,
        degrees: Option<Vec<i64>>,
        idem_act: Vec<Vec<SparseVec>>,
        gen_act: Vec<Vec<SparseVec>>,
    ) -> FDModule {
        assert_eq!(idem_act.len(), algebra.idempotent_count());
        assert_eq!(gen_act.len(), algebra.radical_generators().len());
        FDModule { algebra, dim, degrees, idem_act, gen_act }
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    fn apply(matrix: &[SparseVec], v: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::zero();
        for (i, c) in v.iter() {
            acc = acc.add_scaled(&matrix[*i], c);
        }
        acc
    }

    pub fn act_idem(&self, v: &SparseVec, idem_pos: usize) -> SparseVec {
        Self::apply(&self.idem_act[idem_pos], v)
    }

    pub fn act_gen(&self, v: &SparseVec, gen_pos: usize) -> SparseVec {
        Self::apply(&self.gen_act[gen_pos], v)
    }

    /// Action of an arbitrary algebra basis element via its factorization.
    pub fn act_basis(&self, v: &SparseVec, b: usize) -> SparseVec {
        use super::structured::Factor;
        match self.algebra.factor_last(b) {
            Factor::Idem(pos) => self.act_idem(v, pos),
            Factor::Ext { parent, gen } => {
                let mid = self.act_basis(v, parent);
                self.act_gen(&mid, gen)
            }
        }
    }

    pub fn act_vec(&self, v: &SparseVec, a: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::zero();
        for (b, c) in a.iter() {
            acc = acc.add_scaled(&self.act_basis(v, *b), c);
        }
        acc
    }

    /// Consistency spot-check: `m * (b * c) == (m * b) * c` over a
    /// deterministic sample of basis triples.
    pub fn validate(&self) -> bool {
        let alg = &self.algebra;
        let stride = |n: usize| -> Vec<usize> {
            if n <= 8 {
                (0..n).collect()
            } else {
                (0..n).step_by(n / 8 + 1).collect()
            }
        };
        for &m in &stride(self.dim) {
            let mv = SparseVec::unit(m, alg.field());
            for &b in &stride(alg.dim()) {
                let mb = self.act_basis(&mv, b);
                for &c in &stride(alg.dim()) {
                    let lhs = self.act_basis(&mb, c);
                    let rhs = self.act_vec(&mv, &alg.mul_basis(b, c));
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// The semisimple top `A / rad A`: one simple per idempotent, radical acting
/// by zero.
pub fn simple_top(alg: &Arc<StructuredAlgebra>) -> FDModule {
    let n = alg.idempotent_count();
    let mut idem_act = Vec::with_capacity(n);
    for pos in 0..n {
        let cols = (0..n)
            .map(|i| if i == pos { SparseVec::unit(i, alg.field()) } else { SparseVec::zero() })
            .collect();
        idem_act.push(cols);
    }
    let gen_act = alg
        .radical_generators()
        .iter()
        .map(|_| vec![SparseVec::zero(); n])
        .collect();
    FDModule::new(alg.clone(), n, Some(vec![0; n]), idem_act, gen_act)
}

/// The regular right module: the algebra acting on itself.
pub fn regular_module(alg: &Arc<StructuredAlgebra>) -> FDModule {
    let dim = alg.dim();
    let idem_act = alg
        .idempotents()
        .iter()
        .map(|&e| (0..dim).map(|i| alg.mul_basis(i, e)).collect())
        .collect();
    let gen_act = alg
        .radical_generators()
        .iter()
        .map(|&g| (0..dim).map(|i| alg.mul_basis(i, g)).collect())
        .collect();
    let degrees = alg.is_graded().then(|| (0..dim).map(|i| alg.degree(i).unwrap()).collect());
    FDModule::new(alg.clone(), dim, degrees, idem_act, gen_act)
}

/// The linear dual of the regular right module, as a right module over the
/// opposite algebra. Its projective dimension there is the injective
/// dimension of the regular module.
pub fn dual_regular(
    alg: &Arc<StructuredAlgebra>,
) -> Result<(Arc<StructuredAlgebra>, FDModule), HomologyError> {
    let op = opposite_algebra(alg)?;
    let dim = alg.dim();
    // (f ._op z)(x) = f(x * z): the action matrix on dual coordinates is the
    // transpose of right multiplication by z on the algebra.
    let transpose_of_right_mul = |z: usize| -> Vec<SparseVec> {
        let mut cols: Vec<Vec<(usize, crate::scalar::Scalar)>> = vec![Vec::new(); dim];
        for j in 0..dim {
            for (i, c) in alg.mul_basis(j, z).iter() {
                cols[*i].push((j, c.clone()));
            }
        }
        cols.into_iter().map(SparseVec::from_entries).collect()
    };
    // Positions line up: op keeps the same idempotent and generator lists.
    let idem_act = alg.idempotents().iter().map(|&e| transpose_of_right_mul(e)).collect();
    let gen_act = alg
        .radical_generators()
        .iter()
        .map(|&g| transpose_of_right_mul(g))
        .collect();
    let degrees = alg.is_graded().then(|| (0..dim).map(|i| -alg.degree(i).unwrap()).collect());
    let module = FDModule::new(op.clone(), dim, degrees, idem_act, gen_act);
    Ok((op, module))
}

/// The base algebra viewed as a right module over its enveloping algebra:
/// `x * (a (x) b) = a x b`.
pub fn bimodule_of(
    base: &Arc<StructuredAlgebra>,
    env: &Arc<StructuredAlgebra>,
) -> FDModule {
    let dim = base.dim();
    let d = base.dim();
    let act_of_pair = |p: usize| -> Vec<SparseVec> {
        let (a, b) = (p / d, p % d);
        (0..dim)
            .map(|x| {
                let ax = base.mul_basis(a, x);
                let mut acc = SparseVec::zero();
                for (y, c) in ax.iter() {
                    acc = acc.add_scaled(&base.mul_basis(*y, b), c);
                }
                acc
            })
            .collect()
    };
    let idem_act = env.idempotents().iter().map(|&p| act_of_pair(p)).collect();
    let gen_act = env.radical_generators().iter().map(|&p| act_of_pair(p)).collect();
    let degrees = base.is_graded().then(|| (0..dim).map(|i| base.degree(i).unwrap()).collect());
    FDModule::new(env.clone(), dim, degrees, idem_act, gen_act)
}

/// Quotient of the base algebra (as a bimodule over its enveloping algebra)
/// by the two-sided ideal spanned by `ideal_span`, exposed as a right module
/// over the enveloping algebra. The spanning set is closed under the
/// two-sided action internally. Returns the enveloping algebra, the quotient
/// module, and the dimension of the closed ideal.
pub fn quotient_by_ideal_module(
    base: &Arc<StructuredAlgebra>,
    ideal_span: &[SparseVec],
    budget: usize,
) -> Result<(Arc<StructuredAlgebra>, FDModule, usize), HomologyError> {
    let env = enveloping_algebra(base, budget)?;
    let ambient = bimodule_of(base, &env);

    // Close the span under the enveloping action.
    let mut space = RowSpace::new();
    for v in ideal_span {
        space.insert(v);
    }
    let mut queue: Vec<SparseVec> = ideal_span.to_vec();
    while let Some(v) = queue.pop() {
        for pos in 0..env.idempotent_count() {
            let u = ambient.act_idem(&v, pos);
            if space.insert(&u) {
                queue.push(u);
            }
        }
        for pos in 0..env.radical_generators().len() {
            let u = ambient.act_gen(&v, pos);
            if space.insert(&u) {
                queue.push(u);
            }
        }
    }
    let ideal_dim = space.rank();

    // Complement basis: unit vectors at non-pivot coordinates.
    let pivots: std::collections::HashSet<usize> = space.pivots().collect();
    let complement: Vec<usize> = (0..base.dim()).filter(|i| !pivots.contains(i)).collect();
    let coord_of: std::collections::HashMap<usize, usize> =
        complement.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let project = |v: &SparseVec| -> SparseVec {
        space.reduce(v).remap(|i| coord_of.get(&i).copied())
    };

    let dim = complement.len();
    let act_cols = |matrix_apply: &dyn Fn(&SparseVec) -> SparseVec| -> Vec<SparseVec> {
        complement
            .iter()
            .map(|&i| {
                let unit = SparseVec::unit(i, base.field());
                project(&matrix_apply(&unit))
            })
            .collect()
    };
    let idem_act: Vec<Vec<SparseVec>> = (0..env.idempotent_count())
        .map(|pos| act_cols(&|v| ambient.act_idem(v, pos)))
        .collect();
    let gen_act: Vec<Vec<SparseVec>> = (0..env.radical_generators().len())
        .map(|pos| act_cols(&|v| ambient.act_gen(v, pos)))
        .collect();
    let degrees = base
        .is_graded()
        .then(|| complement.iter().map(|&i| base.degree(i).unwrap()).collect());

    let module = FDModule::new(env.clone(), dim, degrees, idem_act, gen_act);
    Ok((env, module, ideal_dim))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{quotient_algebra, Presentation};
    use crate::homology::structured::from_quotient;
    use crate::quiver::{ArrowId, Path, PathElement, Quiver};
    use crate::scalar::FieldSpec;

    fn mono(q: &Quiver, ids: &[usize]) -> PathElement {
        PathElement::from_path(
            FieldSpec::Rationals,
            Path::from_arrows(q, &ids.iter().map(|i| ArrowId(*i)).collect::<Vec<_>>()).unwrap(),
        )
    }

    fn two_cycle() -> Arc<StructuredAlgebra> {
        let q = Quiver::new(
            vec!["1".into(), "2".into()],
            vec![
                ("a".into(), "1".into(), "2".into()),
                ("b".into(), "2".into(), "1".into()),
            ],
        )
        .unwrap();
        let relations = vec![mono(&q, &[0, 1, 0]), mono(&q, &[1, 0, 1])];
        from_quotient(
            &quotient_algebra(
                &Presentation { quiver: q, field: FieldSpec::Rationals, relations },
                None,
            )
            .unwrap(),
        )
    }

    #[test]
    fn simple_top_has_one_simple_per_vertex() {
        let alg = two_cycle();
        let m = simple_top(&alg);
        assert_eq!(m.dim, 2);
        assert!(m.validate());
        // Radical acts by zero.
        let v = SparseVec::unit(0, alg.field());
        for g in 0..alg.radical_generators().len() {
            assert!(m.act_gen(&v, g).is_zero());
        }
    }

    #[test]
    fn regular_module_matches_table() {
        let alg = two_cycle();
        let m = regular_module(&alg);
        assert_eq!(m.dim, 6);
        assert!(m.validate());
        for i in 0..alg.dim() {
            for b in 0..alg.dim() {
                let v = SparseVec::unit(i, alg.field());
                assert_eq!(m.act_basis(&v, b), alg.mul_basis(i, b));
            }
        }
    }

    #[test]
    fn dual_regular_of_semisimple_is_regular_like() {
        let q = Quiver::new(vec!["1".into(), "2".into()], vec![]).unwrap();
        let pres = Presentation { quiver: q, field: FieldSpec::Rationals, relations: vec![] };
        let alg = from_quotient(&quotient_algebra(&pres, None).unwrap());
        let (_op, dual) = dual_regular(&alg).unwrap();
        assert_eq!(dual.dim, 2);
        assert!(dual.validate());
    }

    #[test]
    fn dual_regular_action_is_consistent() {
        let alg = two_cycle();
        let (_op, dual) = dual_regular(&alg).unwrap();
        assert_eq!(dual.dim, 6);
        assert!(dual.validate());
    }

    #[test]
    fn bimodule_action_is_two_sided_multiplication() {
        let alg = two_cycle();
        let env = enveloping_algebra(&alg, 4096).unwrap();
        let m = bimodule_of(&alg, &env);
        assert_eq!(m.dim, 6);
        assert!(m.validate());
    }

    #[test]
    fn quotient_by_full_ideal_is_zero_module() {
        let alg = two_cycle();
        let span: Vec<SparseVec> =
            alg.idempotents().iter().map(|&e| SparseVec::unit(e, alg.field())).collect();
        let (_env, m, ideal_dim) = quotient_by_ideal_module(&alg, &span, 4096).unwrap();
        assert_eq!(ideal_dim, 6);
        assert!(m.is_zero());
    }

    #[test]
    fn quotient_by_socle_like_span() {
        // Quotient by the span of the length-2 words; closure keeps it
        // two-sided already, the module has dimension 4.
        let alg = two_cycle();
        let span = vec![SparseVec::unit(4, alg.field()), SparseVec::unit(5, alg.field())];
        let (_env, m, ideal_dim) = quotient_by_ideal_module(&alg, &span, 4096).unwrap();
        assert_eq!(ideal_dim, 2);
        assert_eq!(m.dim, 4);
        assert!(m.validate());
    }
}
