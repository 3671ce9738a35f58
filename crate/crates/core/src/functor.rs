//! Linear functors between skeletal semisimple categories.
//!
//! A functor `vect^m → vect^n` is determined up to natural isomorphism by
//! its multiplicity matrix `M` (`n × m`), where `M[j][i]` counts copies of
//! target simple `j` in the image of source simple `i`.
//!
//! Basis ordering: block `j` of `F(a)` lists, for each source simple `i` in
//! ascending order, `M[j][i]` copies of the `a[i]`-dimensional block, copy
//! index major. On morphisms block `j` of `F(f)` is therefore the
//! block-diagonal over `i` of `I_{M[j][i]} ⊗ f_i`. Every construction in
//! this crate uses that ordering, which makes functoriality and naturality
//! hold on the nose.

use crate::category::{Morphism, ObjectExpr, SemisimpleCategory};
use crate::error::{CatError, Result};
use crate::linalg::{checked_sum, to_usize, CMatrix, IntMatrix, Tolerance};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearFunctor {
    src: SemisimpleCategory,
    tgt: SemisimpleCategory,
    matrix: IntMatrix,
}

impl LinearFunctor {
    pub fn new(src: &SemisimpleCategory, tgt: &SemisimpleCategory, matrix: IntMatrix) -> Result<Self> {
        if matrix.shape() != (tgt.simple_count(), src.simple_count()) {
            return Err(CatError::Shape(format!(
                "multiplicity matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                tgt.simple_count(),
                src.simple_count()
            )));
        }
        Ok(Self {
            src: src.clone(),
            tgt: tgt.clone(),
            matrix,
        })
    }

    /// Endofunctor of `vect^n` from row data, row index = target simple.
    pub fn endo_from_rows(rows: Vec<Vec<u64>>) -> Result<Self> {
        let n = rows.len();
        let x = SemisimpleCategory::vect(n);
        Self::new(&x, &x, IntMatrix::from_rows(rows, n)?)
    }

    pub fn src(&self) -> &SemisimpleCategory {
        &self.src
    }

    pub fn tgt(&self) -> &SemisimpleCategory {
        &self.tgt
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn mult(&self, j: usize, i: usize) -> u64 {
        self.matrix.get(j, i)
    }

    pub fn is_endo(&self) -> bool {
        self.src == self.tgt
    }

    /// Same multiplicity data viewed between relabelled categories of the
    /// same size.
    pub fn relabelled(&self, src: &SemisimpleCategory, tgt: &SemisimpleCategory) -> Result<Self> {
        self.src.check_same(src)?;
        self.tgt.check_same(tgt)?;
        Ok(Self {
            src: src.clone(),
            tgt: tgt.clone(),
            matrix: self.matrix.clone(),
        })
    }
}

pub fn identity_functor(x: &SemisimpleCategory) -> LinearFunctor {
    LinearFunctor {
        src: x.clone(),
        tgt: x.clone(),
        matrix: IntMatrix::identity(x.simple_count()),
    }
}

/// `- ⊗ V` on `vect`, for `dim V = dim_v`.
pub fn tensor_functor(dim_v: u64) -> LinearFunctor {
    let v = SemisimpleCategory::vect(1);
    LinearFunctor {
        src: v.clone(),
        tgt: v,
        matrix: IntMatrix::from_fn(1, 1, |_, _| dim_v),
    }
}

pub fn apply_to_object(f: &LinearFunctor, a: &ObjectExpr) -> Result<ObjectExpr> {
    f.src.check_same(a.category())?;
    ObjectExpr::new(&f.tgt, f.matrix.checked_mul_vec(a.mult())?)
}

pub fn apply_to_morphism(f: &LinearFunctor, m: &Morphism) -> Result<Morphism> {
    f.src.check_same(m.category())?;
    let src = apply_to_object(f, m.src())?;
    let tgt = apply_to_object(f, m.tgt())?;
    let blocks = (0..f.tgt.simple_count())
        .map(|j| {
            let parts = m
                .blocks()
                .iter()
                .enumerate()
                .map(|(i, block)| Ok(CMatrix::identity(to_usize(f.mult(j, i))?).kron(block)))
                .collect::<Result<Vec<_>>>()?;
            Ok(CMatrix::block_diag(&parts))
        })
        .collect::<Result<Vec<_>>>()?;
    Morphism::new(src, tgt, blocks)
}

/// The skeletal composite `G ∘ F` (apply `F` first).
pub fn compose_functors(g: &LinearFunctor, f: &LinearFunctor) -> Result<LinearFunctor> {
    f.tgt.check_same(&g.src)?;
    Ok(LinearFunctor {
        src: f.src.clone(),
        tgt: g.tgt.clone(),
        matrix: g.matrix.checked_mul(&f.matrix)?,
    })
}

/// Per-simple basis permutations between two orderings of one object.
///
/// `perms[j][p]` is the position, in the skeletal ordering of block `j`, of
/// the basis vector sitting at position `p` in the alternative ordering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisReindexing {
    perms: Vec<Vec<usize>>,
}

impl BasisReindexing {
    pub(crate) fn from_perms(perms: Vec<Vec<usize>>) -> Self {
        Self { perms }
    }

    pub fn perms(&self) -> &[Vec<usize>] {
        &self.perms
    }

    /// Each block map is a bijection onto `0..len`.
    pub fn is_bijective(&self) -> bool {
        self.perms.iter().all(|p| {
            let mut seen = vec![false; p.len()];
            p.iter()
                .all(|&q| q < seen.len() && !std::mem::replace(&mut seen[q], true))
        })
    }
}

/// Rewrites a morphism given in skeletal bases into the alternative bases
/// described by `src` and `tgt`.
pub fn reindex_morphism(
    m: &Morphism,
    src: &BasisReindexing,
    tgt: &BasisReindexing,
) -> Result<Morphism> {
    let n = m.blocks().len();
    if src.perms.len() != n || tgt.perms.len() != n {
        return Err(CatError::Shape("reindexing has the wrong number of blocks".into()));
    }
    let blocks = m
        .blocks()
        .iter()
        .enumerate()
        .map(|(j, b)| b.permuted(&tgt.perms[j], &src.perms[j]))
        .collect::<Result<Vec<_>>>()?;
    Morphism::new(m.src().clone(), m.tgt().clone(), blocks)
}

/// Relates `G(F(a))` to `(G∘F)(a)`.
///
/// In `G(F(a))` block `j` is ordered by (middle simple `k`, copy `c'` of
/// `k` inside `G`, then `F(a)_k`'s own order `(i, c, v)`). The skeletal
/// composite orders by `(i, c'', v)`; the copies `c''` of source simple `i`
/// are matched to triples `(k, c', c)` lexicographically.
pub fn composite_reindexing(
    g: &LinearFunctor,
    f: &LinearFunctor,
    a: &ObjectExpr,
) -> Result<BasisReindexing> {
    f.tgt.check_same(&g.src)?;
    f.src.check_same(a.category())?;
    let gf = compose_functors(g, f)?;
    let m = f.src.simple_count();
    let mid = f.tgt.simple_count();
    let dims: Vec<usize> = a.mult().iter().map(|&x| to_usize(x)).collect::<Result<_>>()?;

    let mut perms = Vec::with_capacity(g.tgt.simple_count());
    for j in 0..g.tgt.simple_count() {
        // start of source simple i inside the skeletal block j
        let mut offset = Vec::with_capacity(m);
        let mut acc = 0usize;
        for i in 0..m {
            offset.push(acc);
            acc += to_usize(gf.mult(j, i))? * dims[i];
        }
        let mut perm = Vec::with_capacity(acc);
        for k in 0..mid {
            for c_outer in 0..to_usize(g.mult(j, k))? {
                for i in 0..m {
                    let f_ki = to_usize(f.mult(k, i))?;
                    let mut before = 0usize;
                    for kk in 0..k {
                        before += to_usize(g.mult(j, kk))? * to_usize(f.mult(kk, i))?;
                    }
                    for c_inner in 0..f_ki {
                        let copy = before + c_outer * f_ki + c_inner;
                        for v in 0..dims[i] {
                            perm.push(offset[i] + copy * dims[i] + v);
                        }
                    }
                }
            }
        }
        perms.push(perm);
    }
    Ok(BasisReindexing { perms })
}

/// A morphism `F ⇒ G` in `Fun(X, Y)`: block `(j, i)` has shape
/// `G[j][i] × F[j][i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct NaturalTransformation {
    source: LinearFunctor,
    target: LinearFunctor,
    blocks: Vec<CMatrix>,
}

impl NaturalTransformation {
    /// `blocks` is indexed row-major by `(j, i)`.
    pub fn new(source: LinearFunctor, target: LinearFunctor, blocks: Vec<CMatrix>) -> Result<Self> {
        check_parallel(&source, &target)?;
        let (n, m) = source.matrix.shape();
        if blocks.len() != n * m {
            return Err(CatError::Shape(format!(
                "{} blocks, expected {}",
                blocks.len(),
                n * m
            )));
        }
        for j in 0..n {
            for i in 0..m {
                let want = (to_usize(target.mult(j, i))?, to_usize(source.mult(j, i))?);
                if blocks[j * m + i].shape() != want {
                    return Err(CatError::Shape(format!(
                        "block ({j},{i}) is {:?}, expected {want:?}",
                        blocks[j * m + i].shape()
                    )));
                }
            }
        }
        Ok(Self {
            source,
            target,
            blocks,
        })
    }

    pub fn identity(f: &LinearFunctor) -> Self {
        Self {
            source: f.clone(),
            target: f.clone(),
            blocks: f
                .matrix
                .entries()
                .iter()
                .map(|&k| CMatrix::identity(k as usize))
                .collect(),
        }
    }

    pub fn source(&self) -> &LinearFunctor {
        &self.source
    }

    pub fn target(&self) -> &LinearFunctor {
        &self.target
    }

    pub fn block(&self, j: usize, i: usize) -> &CMatrix {
        &self.blocks[j * self.source.src.simple_count() + i]
    }

    pub fn blocks(&self) -> &[CMatrix] {
        &self.blocks
    }

    pub fn entry_count(&self) -> usize {
        self.blocks.iter().map(CMatrix::len).sum()
    }

    pub fn approx_eq(&self, other: &Self, tol: Tolerance) -> bool {
        self.source == other.source
            && self.target == other.target
            && self
                .blocks
                .iter()
                .zip(&other.blocks)
                .all(|(a, b)| a.approx_eq(b, tol))
    }
}

fn check_parallel(f: &LinearFunctor, g: &LinearFunctor) -> Result<()> {
    if f.src != g.src || f.tgt != g.tgt {
        return Err(CatError::FunctorMismatch(format!(
            "functors {} → {} and {} → {} are not parallel",
            f.src, f.tgt, g.src, g.tgt
        )));
    }
    Ok(())
}

/// `β ∘ α` for `α: F ⇒ G`, `β: G ⇒ H`.
pub fn vertical_compose(
    beta: &NaturalTransformation,
    alpha: &NaturalTransformation,
) -> Result<NaturalTransformation> {
    if alpha.target != beta.source {
        return Err(CatError::FunctorMismatch(
            "target of α differs from source of β".into(),
        ));
    }
    let blocks = beta
        .blocks
        .iter()
        .zip(&alpha.blocks)
        .map(|(b, a)| b.matmul(a))
        .collect::<Result<Vec<_>>>()?;
    Ok(NaturalTransformation {
        source: alpha.source.clone(),
        target: beta.target.clone(),
        blocks,
    })
}

/// The component `α_a: F(a) → G(a)`. Block `j` is the block-diagonal over
/// `i` of `α_{j,i} ⊗ I_{a[i]}`.
pub fn evaluate_at(alpha: &NaturalTransformation, a: &ObjectExpr) -> Result<Morphism> {
    let f = &alpha.source;
    f.src.check_same(a.category())?;
    let src = apply_to_object(f, a)?;
    let tgt = apply_to_object(&alpha.target, a)?;
    let blocks = (0..f.tgt.simple_count())
        .map(|j| {
            let parts = a
                .mult()
                .iter()
                .enumerate()
                .map(|(i, &ai)| Ok(alpha.block(j, i).kron(&CMatrix::identity(to_usize(ai)?))))
                .collect::<Result<Vec<_>>>()?;
            Ok(CMatrix::block_diag(&parts))
        })
        .collect::<Result<Vec<_>>>()?;
    Morphism::new(src, tgt, blocks)
}

/// `dim Hom(F, G) = Σ_{j,i} F[j][i]·G[j][i]`.
pub fn nat_hom_dim(f: &LinearFunctor, g: &LinearFunctor) -> Result<u64> {
    check_parallel(f, g)?;
    let products = f
        .matrix
        .entries()
        .iter()
        .zip(g.matrix.entries())
        .map(|(x, y)| x.checked_mul(*y).ok_or(CatError::Overflow("nat_hom_dim")))
        .collect::<Result<Vec<_>>>()?;
    checked_sum(products)
}
