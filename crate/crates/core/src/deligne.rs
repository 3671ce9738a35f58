//! Deligne tensor product on skeletal categories, objects, morphisms and
//! functors.
//!
//! The simple `(i1, i2)` of `vect^m ⊠ vect^n` has flat index `i1·n + i2`
//! (leftmost factor most significant), so every operation here is a
//! Kronecker product.

use crate::category::{Morphism, ObjectExpr, SemisimpleCategory};
use crate::error::{CatError, Result};
use crate::functor::{apply_to_object, BasisReindexing, LinearFunctor};
use crate::linalg::{checked_kron_vec, to_usize};

pub fn deligne_category(x1: &SemisimpleCategory, x2: &SemisimpleCategory) -> SemisimpleCategory {
    let labels: Vec<String> = x1
        .labels()
        .iter()
        .flat_map(|l1| x2.labels().iter().map(move |l2| format!("{l1}⊠{l2}")))
        .collect();
    // labels already containing ⊠ can collide; fall back to plain names
    SemisimpleCategory::with_labels(labels)
        .unwrap_or_else(|_| SemisimpleCategory::vect(x1.simple_count() * x2.simple_count()))
}

/// Left fold of [`deligne_category`]; the empty product is `vect`.
pub fn deligne_category_all(factors: &[SemisimpleCategory]) -> SemisimpleCategory {
    match factors.split_first() {
        None => SemisimpleCategory::vect(1),
        Some((first, rest)) => rest
            .iter()
            .fold(first.clone(), |acc, x| deligne_category(&acc, x)),
    }
}

pub fn deligne_object(a1: &ObjectExpr, a2: &ObjectExpr) -> Result<ObjectExpr> {
    let cat = deligne_category(a1.category(), a2.category());
    ObjectExpr::new(&cat, checked_kron_vec(a1.mult(), a2.mult())?)
}

pub fn deligne_morphism(f1: &Morphism, f2: &Morphism) -> Result<Morphism> {
    let src = deligne_object(f1.src(), f2.src())?;
    let tgt = deligne_object(f1.tgt(), f2.tgt())?;
    let blocks = f1
        .blocks()
        .iter()
        .flat_map(|b1| f2.blocks().iter().map(move |b2| b1.kron(b2)))
        .collect();
    Morphism::new(src, tgt, blocks)
}

pub fn deligne_functor(f1: &LinearFunctor, f2: &LinearFunctor) -> Result<LinearFunctor> {
    LinearFunctor::new(
        &deligne_category(f1.src(), f2.src()),
        &deligne_category(f1.tgt(), f2.tgt()),
        f1.matrix().checked_kron(f2.matrix())?,
    )
}

/// Left fold of [`deligne_functor`]; the empty product is the identity of
/// `vect`.
pub fn deligne_functor_all(factors: &[LinearFunctor]) -> Result<LinearFunctor> {
    match factors.split_first() {
        None => Ok(crate::functor::identity_functor(&SemisimpleCategory::vect(1))),
        Some((first, rest)) => rest
            .iter()
            .try_fold(first.clone(), |acc, f| deligne_functor(&acc, f)),
    }
}

/// Mixed-radix flat index, leftmost digit most significant.
pub fn flat_index(digits: &[usize], radices: &[usize]) -> Result<usize> {
    if digits.len() != radices.len() {
        return Err(CatError::Shape("digit and radix counts differ".into()));
    }
    digits
        .iter()
        .zip(radices)
        .try_fold(0usize, |acc, (&d, &r)| {
            if d >= r {
                return Err(CatError::Shape(format!("digit {d} out of range for radix {r}")));
            }
            Ok(acc * r + d)
        })
}

/// Inverse of [`flat_index`].
pub fn unflatten(mut index: usize, radices: &[usize]) -> Vec<usize> {
    let mut digits = vec![0; radices.len()];
    for (slot, &r) in digits.iter_mut().zip(radices).rev() {
        if r > 0 {
            *slot = index % r;
            index /= r;
        }
    }
    digits
}

/// Relates `F1(a1) ⊠ F2(a2)` to `(F1 ⊠ F2)(a1 ⊠ a2)`.
///
/// In the product, block `(j1, j2)` is ordered by `(p1, p2)` row-major where
/// `p1 = (i1, c1, v1)` and `p2 = (i2, c2, v2)` follow the functor ordering
/// in each factor. The skeletal side orders by `(i1, i2, c, v)` with copy
/// `c = c1·M2[j2][i2] + c2` and basis `v = v1·a2[i2] + v2`.
pub fn deligne_reindexing(
    f1: &LinearFunctor,
    f2: &LinearFunctor,
    a1: &ObjectExpr,
    a2: &ObjectExpr,
) -> Result<BasisReindexing> {
    f1.src().check_same(a1.category())?;
    f2.src().check_same(a2.category())?;
    let (m1, m2) = (f1.src().simple_count(), f2.src().simple_count());
    let d1: Vec<usize> = a1.mult().iter().map(|&x| to_usize(x)).collect::<Result<_>>()?;
    let d2: Vec<usize> = a2.mult().iter().map(|&x| to_usize(x)).collect::<Result<_>>()?;
    let image1 = apply_to_object(f1, a1)?;
    let image2 = apply_to_object(f2, a2)?;

    let mut perms = Vec::new();
    for j1 in 0..f1.tgt().simple_count() {
        for j2 in 0..f2.tgt().simple_count() {
            // skeletal offsets of each source pair (i1, i2)
            let mut offset = vec![0usize; m1 * m2];
            let mut acc = 0usize;
            for i1 in 0..m1 {
                for i2 in 0..m2 {
                    offset[i1 * m2 + i2] = acc;
                    let copies = to_usize(f1.mult(j1, i1))? * to_usize(f2.mult(j2, i2))?;
                    acc += copies * d1[i1] * d2[i2];
                }
            }
            let left = ordered_labels(f1, j1, &d1)?;
            let right = ordered_labels(f2, j2, &d2)?;
            debug_assert_eq!(left.len() as u64, image1.mult()[j1]);
            debug_assert_eq!(right.len() as u64, image2.mult()[j2]);
            let mut perm = Vec::with_capacity(left.len() * right.len());
            for &(i1, c1, v1) in &left {
                for &(i2, c2, v2) in &right {
                    let copies2 = to_usize(f2.mult(j2, i2))?;
                    let c = c1 * copies2 + c2;
                    let v = v1 * d2[i2] + v2;
                    perm.push(offset[i1 * m2 + i2] + c * d1[i1] * d2[i2] + v);
                }
            }
            perms.push(perm);
        }
    }
    Ok(BasisReindexing::from_perms(perms))
}

/// `(source simple, copy, basis)` labels of block `j` of `F(a)` in order.
fn ordered_labels(f: &LinearFunctor, j: usize, dims: &[usize]) -> Result<Vec<(usize, usize, usize)>> {
    let mut out = Vec::new();
    for (i, &d) in dims.iter().enumerate() {
        for c in 0..to_usize(f.mult(j, i))? {
            for v in 0..d {
                out.push((i, c, v));
            }
        }
    }
    Ok(out)
}
