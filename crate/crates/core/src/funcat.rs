//! `Fun(X, Y)` as a semisimple category, and the multi-fusion diagnostics
//! of `Fun(X, X)`.

use serde::Serialize;

use crate::category::{ObjectExpr, SemisimpleCategory};
use crate::error::Result;
use crate::functor::{compose_functors, LinearFunctor};
use crate::linalg::IntMatrix;

/// `Fun(X, Y) ≃ vect^(n·m)` with its simple functors `E_{ji}`.
#[derive(Debug, Clone)]
pub struct FunctorCategory {
    pub source: SemisimpleCategory,
    pub target: SemisimpleCategory,
    pub category: SemisimpleCategory,
    /// Simple `j·m + i` is the elementary functor `E_{ji}`.
    pub simples: Vec<LinearFunctor>,
}

pub fn elementary_functor(
    x: &SemisimpleCategory,
    y: &SemisimpleCategory,
    j: usize,
    i: usize,
) -> Result<LinearFunctor> {
    LinearFunctor::new(
        x,
        y,
        IntMatrix::from_fn(y.simple_count(), x.simple_count(), |r, c| {
            u64::from(r == j && c == i)
        }),
    )
}

pub fn functor_category(x: &SemisimpleCategory, y: &SemisimpleCategory) -> Result<FunctorCategory> {
    let (m, n) = (x.simple_count(), y.simple_count());
    let labels = (0..n)
        .flat_map(|j| (0..m).map(move |i| format!("E[{},{}]", y.label(j), x.label(i))))
        .collect::<Vec<_>>();
    let category = SemisimpleCategory::with_labels(labels)
        .unwrap_or_else(|_| SemisimpleCategory::vect(n * m));
    let simples = (0..n)
        .flat_map(|j| (0..m).map(move |i| (j, i)))
        .map(|(j, i)| elementary_functor(x, y, j, i))
        .collect::<Result<Vec<_>>>()?;
    Ok(FunctorCategory {
        source: x.clone(),
        target: y.clone(),
        category,
        simples,
    })
}

impl FunctorCategory {
    pub fn decompose(&self, f: &LinearFunctor) -> Result<ObjectExpr> {
        self.source.check_same(f.src())?;
        self.target.check_same(f.tgt())?;
        ObjectExpr::new(&self.category, f.matrix().entries().to_vec())
    }

    /// Inverse of [`decompose`](Self::decompose).
    pub fn recompose(&self, a: &ObjectExpr) -> Result<LinearFunctor> {
        self.category.check_same(a.category())?;
        let (n, m) = (self.target.simple_count(), self.source.simple_count());
        LinearFunctor::new(
            &self.source,
            &self.target,
            IntMatrix::from_fn(n, m, |j, i| a.mult()[j * m + i]),
        )
    }
}

/// The object of `Fun(F.src, F.tgt)` corresponding to `F`: its
/// multiplicity matrix flattened row-major.
pub fn decompose(f: &LinearFunctor) -> Result<ObjectExpr> {
    functor_category(f.src(), f.tgt())?.decompose(f)
}

/// `dim End(id_X)`, the number of simples of `X`.
pub fn end_of_identity_dim(x: &SemisimpleCategory) -> u64 {
    x.simple_count() as u64
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    pub criterion: String,
    pub end_identity_dim: u64,
    pub stable: bool,
    pub degenerate: bool,
    pub detail: String,
}

/// `Fun(X, X)` is fusion (stable) iff `End(id_X) ≅ ℂ`.
pub fn is_stable(x: &SemisimpleCategory) -> StabilityReport {
    let dim = end_of_identity_dim(x);
    let stable = dim == 1;
    let detail = match dim {
        0 => "degenerate: X is the zero category, Fun(X,X) has no simple objects".to_string(),
        1 => "End(id_X) is one-dimensional: Fun(X,X) is a fusion category".to_string(),
        d => format!(
            "End(id_X) has dimension {d}: id_X is not simple and Fun(X,X) is multi-fusion"
        ),
    };
    StabilityReport {
        criterion: "dim End(id_X) == 1".to_string(),
        end_identity_dim: dim,
        stable,
        degenerate: dim == 0,
        detail,
    }
}

/// Fusion of bulk defects: `F ⋅ G = F ∘ G`.
pub fn fusion_product(f: &LinearFunctor, g: &LinearFunctor) -> Result<LinearFunctor> {
    compose_functors(f, g)
}
