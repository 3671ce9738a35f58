//! Skeletal finite semisimple categories `vect^n`.
//!
//! An object is a multiplicity vector over the simples and a morphism
//! `a → b` is one complex block of shape `b[i] × a[i]` per simple `i`.
//! Composition is blockwise matrix product, so the category axioms reduce
//! to those of matrix multiplication.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{CatError, Result};
use crate::linalg::{checked_sum, to_usize, CMatrix, Tolerance};

/// The category `vect^n`, stored as the labels of its simple objects.
///
/// Cloning is cheap. Equality is equivalence of skeletal categories: two
/// categories with the same number of simples compare equal, labels are
/// presentation only.
#[derive(Clone)]
pub struct SemisimpleCategory {
    labels: Arc<[String]>,
}

impl SemisimpleCategory {
    /// `vect^n` with labels `s0 .. s{n-1}`.
    pub fn vect(n: usize) -> Self {
        Self {
            labels: (0..n).map(|i| format!("s{i}")).collect(),
        }
    }

    pub fn with_labels<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut seen = HashSet::with_capacity(labels.len());
        for l in &labels {
            if l.is_empty() {
                return Err(CatError::Labels("empty label".into()));
            }
            if !seen.insert(l.as_str()) {
                return Err(CatError::Labels(format!("duplicate label {l:?}")));
            }
        }
        Ok(Self {
            labels: labels.into(),
        })
    }

    pub fn simple_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub(crate) fn check_same(&self, other: &SemisimpleCategory) -> Result<()> {
        if self.simple_count() != other.simple_count() {
            return Err(CatError::CategoryMismatch {
                expected: self.simple_count(),
                found: other.simple_count(),
            });
        }
        Ok(())
    }
}

impl PartialEq for SemisimpleCategory {
    fn eq(&self, other: &Self) -> bool {
        self.simple_count() == other.simple_count()
    }
}

impl Eq for SemisimpleCategory {}

impl fmt::Debug for SemisimpleCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "vect^{}", self.simple_count())
    }
}

impl fmt::Display for SemisimpleCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "vect^{}", self.simple_count())
    }
}

/// An object of `vect^n`: a multiplicity for each simple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObjectExpr {
    category: SemisimpleCategory,
    mult: Vec<u64>,
}

impl ObjectExpr {
    pub fn new(category: &SemisimpleCategory, mult: Vec<u64>) -> Result<Self> {
        if mult.len() != category.simple_count() {
            return Err(CatError::Shape(format!(
                "multiplicity vector of length {} for {category}",
                mult.len()
            )));
        }
        Ok(Self {
            category: category.clone(),
            mult,
        })
    }

    pub fn zero(category: &SemisimpleCategory) -> Self {
        Self {
            category: category.clone(),
            mult: vec![0; category.simple_count()],
        }
    }

    /// The simple object with index `i`.
    pub fn simple(category: &SemisimpleCategory, i: usize) -> Result<Self> {
        if i >= category.simple_count() {
            return Err(CatError::Shape(format!(
                "simple index {i} out of range for {category}"
            )));
        }
        let mut mult = vec![0; category.simple_count()];
        mult[i] = 1;
        Ok(Self {
            category: category.clone(),
            mult,
        })
    }

    pub fn category(&self) -> &SemisimpleCategory {
        &self.category
    }

    pub fn mult(&self) -> &[u64] {
        &self.mult
    }

    pub fn is_zero(&self) -> bool {
        self.mult.iter().all(|&m| m == 0)
    }

    /// Total dimension, the sum of multiplicities.
    pub fn rank(&self) -> Result<u64> {
        checked_sum(self.mult.iter().copied())
    }
}

/// Dimension of `hom(a, b)`: `Σ_i a[i]·b[i]`.
pub fn hom_dim(a: &ObjectExpr, b: &ObjectExpr) -> Result<u64> {
    a.category.check_same(&b.category)?;
    let products = a
        .mult
        .iter()
        .zip(&b.mult)
        .map(|(x, y)| x.checked_mul(*y).ok_or(CatError::Overflow("hom_dim")))
        .collect::<Result<Vec<_>>>()?;
    checked_sum(products)
}

pub fn direct_sum_objects(a: &ObjectExpr, b: &ObjectExpr) -> Result<ObjectExpr> {
    a.category.check_same(&b.category)?;
    let mult = a
        .mult
        .iter()
        .zip(&b.mult)
        .map(|(x, y)| x.checked_add(*y).ok_or(CatError::Overflow("direct sum")))
        .collect::<Result<Vec<_>>>()?;
    Ok(ObjectExpr {
        category: a.category.clone(),
        mult,
    })
}

/// `X1 ⊕ X2` together with the embeddings of simple indices.
#[derive(Debug, Clone, PartialEq)]
pub struct DisjointUnion {
    pub category: SemisimpleCategory,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

/// Direct sum of categories; the simples of `x1` come first. Labels get a
/// `1.` or `2.` prefix so they remain distinct.
pub fn disjoint_union(x1: &SemisimpleCategory, x2: &SemisimpleCategory) -> DisjointUnion {
    let n1 = x1.simple_count();
    let labels: Arc<[String]> = x1
        .labels()
        .iter()
        .map(|l| format!("1.{l}"))
        .chain(x2.labels().iter().map(|l| format!("2.{l}")))
        .collect();
    DisjointUnion {
        category: SemisimpleCategory { labels },
        left: (0..n1).collect(),
        right: (n1..n1 + x2.simple_count()).collect(),
    }
}

/// A morphism `src → tgt`, one block per simple.
#[derive(Debug, Clone, PartialEq)]
pub struct Morphism {
    src: ObjectExpr,
    tgt: ObjectExpr,
    blocks: Vec<CMatrix>,
}

impl Morphism {
    pub fn new(src: ObjectExpr, tgt: ObjectExpr, blocks: Vec<CMatrix>) -> Result<Self> {
        src.category.check_same(&tgt.category)?;
        if blocks.len() != src.mult.len() {
            return Err(CatError::Shape(format!(
                "{} blocks for {}",
                blocks.len(),
                src.category
            )));
        }
        for (i, b) in blocks.iter().enumerate() {
            let want = (to_usize(tgt.mult[i])?, to_usize(src.mult[i])?);
            if b.shape() != want {
                return Err(CatError::Shape(format!(
                    "block {i} is {}x{}, expected {}x{}",
                    b.rows(),
                    b.cols(),
                    want.0,
                    want.1
                )));
            }
        }
        Ok(Self { src, tgt, blocks })
    }

    pub fn zero(src: &ObjectExpr, tgt: &ObjectExpr) -> Result<Self> {
        src.category.check_same(&tgt.category)?;
        let blocks = src
            .mult
            .iter()
            .zip(&tgt.mult)
            .map(|(&s, &t)| Ok(CMatrix::zeros(to_usize(t)?, to_usize(s)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            src: src.clone(),
            tgt: tgt.clone(),
            blocks,
        })
    }

    pub fn src(&self) -> &ObjectExpr {
        &self.src
    }

    pub fn tgt(&self) -> &ObjectExpr {
        &self.tgt
    }

    pub fn blocks(&self) -> &[CMatrix] {
        &self.blocks
    }

    pub fn category(&self) -> &SemisimpleCategory {
        &self.src.category
    }

    /// Number of scalar entries across all blocks.
    pub fn entry_count(&self) -> usize {
        self.blocks.iter().map(CMatrix::len).sum()
    }

    pub fn approx_eq(&self, other: &Morphism, tol: Tolerance) -> bool {
        self.src == other.src
            && self.tgt == other.tgt
            && self
                .blocks
                .iter()
                .zip(&other.blocks)
                .all(|(a, b)| a.approx_eq(b, tol))
    }

    pub fn scale(&self, z: Complex64) -> Morphism {
        Morphism {
            src: self.src.clone(),
            tgt: self.tgt.clone(),
            blocks: self.blocks.iter().map(|b| b.scale(z)).collect(),
        }
    }
}

/// The identity `1_a`.
pub fn identity(a: &ObjectExpr) -> Morphism {
    let blocks = a
        .mult
        .iter()
        .map(|&m| CMatrix::identity(m as usize))
        .collect();
    Morphism {
        src: a.clone(),
        tgt: a.clone(),
        blocks,
    }
}

/// `g ∘ f`, requiring `f.tgt == g.src`.
pub fn compose(g: &Morphism, f: &Morphism) -> Result<Morphism> {
    f.category().check_same(g.category())?;
    if f.tgt != g.src {
        return Err(CatError::ObjectMismatch(format!(
            "cannot compose: target {:?} of f differs from source {:?} of g",
            f.tgt.mult, g.src.mult
        )));
    }
    let blocks = g
        .blocks
        .iter()
        .zip(&f.blocks)
        .map(|(gb, fb)| gb.matmul(fb))
        .collect::<Result<Vec<_>>>()?;
    Ok(Morphism {
        src: f.src.clone(),
        tgt: g.tgt.clone(),
        blocks,
    })
}

/// `Σ coeffs[k] · ms[k]` for morphisms sharing source and target.
pub fn linear_combine(coeffs: &[Complex64], ms: &[Morphism]) -> Result<Morphism> {
    if coeffs.len() != ms.len() {
        return Err(CatError::Shape(format!(
            "{} coefficients for {} morphisms",
            coeffs.len(),
            ms.len()
        )));
    }
    let (first, rest) = ms.split_first().ok_or(CatError::EmptyCombination)?;
    let mut acc = first.scale(coeffs[0]);
    for (m, &z) in rest.iter().zip(&coeffs[1..]) {
        if m.src != first.src || m.tgt != first.tgt {
            return Err(CatError::ObjectMismatch(
                "linear combination of morphisms with different source or target".into(),
            ));
        }
        acc.blocks = acc
            .blocks
            .iter()
            .zip(&m.blocks)
            .map(|(a, b)| a.add(&b.scale(z)))
            .collect::<Result<Vec<_>>>()?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn obj(cat: &SemisimpleCategory, m: &[u64]) -> ObjectExpr {
        ObjectExpr::new(cat, m.to_vec()).unwrap()
    }

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn hom_dim_examples() {
        let v2 = SemisimpleCategory::vect(2);
        assert_eq!(hom_dim(&obj(&v2, &[1, 0]), &obj(&v2, &[0, 1])).unwrap(), 0);
        assert_eq!(hom_dim(&obj(&v2, &[1, 1]), &obj(&v2, &[1, 1])).unwrap(), 2);
        // 2·1 + 3·4 entries across the two blocks
        let a = obj(&v2, &[2, 3]);
        let b = obj(&v2, &[1, 4]);
        assert_eq!(hom_dim(&a, &b).unwrap(), 14);
        assert_eq!(Morphism::zero(&a, &b).unwrap().entry_count(), 14);
    }

    #[test]
    fn hom_dim_rejects_mismatch() {
        let a = obj(&SemisimpleCategory::vect(1), &[1]);
        let b = obj(&SemisimpleCategory::vect(2), &[1, 0]);
        assert!(matches!(
            hom_dim(&a, &b),
            Err(CatError::CategoryMismatch { .. })
        ));
    }

    #[test]
    fn identity_examples() {
        let v2 = SemisimpleCategory::vect(2);
        let id = identity(&obj(&v2, &[1, 0]));
        assert_eq!(id.blocks()[0], CMatrix::identity(1));
        assert_eq!(id.blocks()[1].shape(), (0, 0));

        let zero = identity(&obj(&v2, &[0, 0]));
        assert!(zero.blocks().iter().all(CMatrix::is_empty));

        let id = identity(&obj(&v2, &[2, 1]));
        assert_eq!(id.blocks(), &[CMatrix::identity(2), CMatrix::identity(1)]);
    }

    #[test]
    fn compose_scalars_and_units() {
        let v1 = SemisimpleCategory::vect(1);
        let a = obj(&v1, &[1]);
        let f = Morphism::new(a.clone(), a.clone(), vec![CMatrix::scalar(c(2.0))]).unwrap();
        let g = Morphism::new(a.clone(), a.clone(), vec![CMatrix::scalar(c(3.0))]).unwrap();
        assert_eq!(compose(&g, &f).unwrap().blocks()[0], CMatrix::scalar(c(6.0)));
        assert_eq!(compose(&identity(&a), &f).unwrap(), f);
        assert_eq!(compose(&f, &identity(&a)).unwrap(), f);
    }

    #[test]
    fn compose_rejects_middle_mismatch() {
        let v1 = SemisimpleCategory::vect(1);
        let f = Morphism::zero(&obj(&v1, &[1]), &obj(&v1, &[2])).unwrap();
        let g = Morphism::zero(&obj(&v1, &[3]), &obj(&v1, &[1])).unwrap();
        assert!(matches!(compose(&g, &f), Err(CatError::ObjectMismatch(_))));
    }

    #[test]
    fn empty_blocks_compose_to_zero() {
        let v1 = SemisimpleCategory::vect(1);
        let f = Morphism::zero(&obj(&v1, &[2]), &obj(&v1, &[0])).unwrap();
        let g = Morphism::zero(&obj(&v1, &[0]), &obj(&v1, &[3])).unwrap();
        let gf = compose(&g, &f).unwrap();
        assert_eq!(gf.blocks()[0], CMatrix::zeros(3, 2));
    }

    #[test]
    fn morphism_rejects_bad_block_shape() {
        let v1 = SemisimpleCategory::vect(1);
        let err = Morphism::new(
            obj(&v1, &[1]),
            obj(&v1, &[2]),
            vec![CMatrix::zeros(1, 2)],
        );
        assert!(matches!(err, Err(CatError::Shape(_))));
    }

    #[test]
    fn linear_combine_examples() {
        let v2 = SemisimpleCategory::vect(2);
        let a = obj(&v2, &[1, 2]);
        let b = obj(&v2, &[2, 1]);
        let f = Morphism::new(
            a.clone(),
            b.clone(),
            vec![
                CMatrix::from_fn(2, 1, |r, _| c(r as f64 + 1.0)),
                CMatrix::from_fn(1, 2, |_, col| Complex64::new(0.5, col as f64)),
            ],
        )
        .unwrap();
        let g = Morphism::new(
            a.clone(),
            b.clone(),
            vec![
                CMatrix::from_fn(2, 1, |_, _| c(-1.0)),
                CMatrix::from_fn(1, 2, |_, col| c(col as f64)),
            ],
        )
        .unwrap();
        assert_eq!(linear_combine(&[c(1.0)], &[f.clone()]).unwrap(), f);
        let z = linear_combine(&[c(1.0), c(-1.0)], &[f.clone(), f.clone()]).unwrap();
        assert_eq!(z, Morphism::zero(&a, &b).unwrap());

        let h = linear_combine(&[c(2.0), c(3.0)], &[f.clone(), g.clone()]).unwrap();
        // entrywise: 2f + 3g
        assert_eq!(h.blocks()[0].get(0, 0), c(2.0 * 1.0 + 3.0 * -1.0));
        assert_eq!(h.blocks()[0].get(1, 0), c(2.0 * 2.0 + 3.0 * -1.0));
        assert_eq!(h.blocks()[1].get(0, 0), c(1.0));
        assert_eq!(h.blocks()[1].get(0, 1), Complex64::new(1.0 + 3.0, 2.0));
    }

    #[test]
    fn linear_combine_errors() {
        let v1 = SemisimpleCategory::vect(1);
        assert_eq!(linear_combine(&[], &[]), Err(CatError::EmptyCombination));
        let f = Morphism::zero(&obj(&v1, &[1]), &obj(&v1, &[1])).unwrap();
        let g = Morphism::zero(&obj(&v1, &[1]), &obj(&v1, &[2])).unwrap();
        assert!(linear_combine(&[c(1.0), c(1.0)], &[f, g]).is_err());
    }

    #[test]
    fn direct_sum_examples() {
        let v2 = SemisimpleCategory::vect(2);
        let s = |x: &[u64], y: &[u64]| {
            direct_sum_objects(&obj(&v2, x), &obj(&v2, y))
                .unwrap()
                .mult()
                .to_vec()
        };
        assert_eq!(s(&[1, 0], &[0, 1]), vec![1, 1]);
        assert_eq!(s(&[0, 0], &[4, 5]), vec![4, 5]);
        assert_eq!(s(&[2, 3], &[1, 1]), vec![3, 4]);
    }

    #[test]
    fn disjoint_union_examples() {
        let u = disjoint_union(&SemisimpleCategory::vect(1), &SemisimpleCategory::vect(1));
        assert_eq!(u.category.simple_count(), 2);
        assert_eq!((u.left.clone(), u.right.clone()), (vec![0], vec![1]));
        assert_eq!(u.category.labels(), &["1.s0".to_string(), "2.s0".to_string()]);

        let u = disjoint_union(&SemisimpleCategory::vect(2), &SemisimpleCategory::vect(3));
        assert_eq!(u.category.simple_count(), 5);
        let mut all: Vec<usize> = u.left.iter().chain(&u.right).copied().collect();
        all.sort_unstable();
        assert_eq!(all, (0..5).collect::<Vec<_>>());

        let u = disjoint_union(&SemisimpleCategory::vect(0), &SemisimpleCategory::vect(2));
        assert_eq!(u.category.simple_count(), 2);
        assert!(u.left.is_empty());
        assert_eq!(u.right, vec![0, 1]);
    }

    #[test]
    fn labels_must_be_distinct_and_nonempty() {
        assert!(SemisimpleCategory::with_labels(["a", "a"]).is_err());
        assert!(SemisimpleCategory::with_labels(["a", ""]).is_err());
        let x = SemisimpleCategory::with_labels(["a", "b"]).unwrap();
        assert_eq!(x, SemisimpleCategory::vect(2));
    }
}
