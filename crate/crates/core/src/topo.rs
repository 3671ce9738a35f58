//! Defect fusion onto a 0d boundary `(X, x)` of the 1d phase `Fun(X, X)`.
//!
//! A bulk defect is an endofunctor `F` of `X`; pushing it onto the
//! boundary replaces the boundary particle `x` by `F(x)`. Scripts fuse
//! their defects earliest first, so `[F1, .., Fk]` realizes `Fk ∘ … ∘ F1`.

use serde::Serialize;

use crate::category::{ObjectExpr, SemisimpleCategory};
use crate::error::{CatError, Result};
use crate::funcat::{functor_category, is_stable, StabilityReport};
use crate::functor::{apply_to_object, compose_functors, identity_functor, LinearFunctor};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryState {
    category: SemisimpleCategory,
    particle: ObjectExpr,
    history: Vec<String>,
}

impl BoundaryState {
    pub fn new(particle: ObjectExpr) -> Self {
        Self {
            category: particle.category().clone(),
            particle,
            history: Vec::new(),
        }
    }

    pub fn with_history(particle: ObjectExpr, history: Vec<String>) -> Self {
        Self {
            history,
            ..Self::new(particle)
        }
    }

    pub fn category(&self) -> &SemisimpleCategory {
        &self.category
    }

    pub fn particle(&self) -> &ObjectExpr {
        &self.particle
    }

    pub fn history(&self) -> &[String] {
        &self.history
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Defect {
    pub name: String,
    pub functor: LinearFunctor,
}

impl Defect {
    pub fn new(name: impl Into<String>, functor: LinearFunctor) -> Result<Self> {
        if !functor.is_endo() {
            return Err(CatError::FunctorMismatch(format!(
                "defect must be an endofunctor, got {} → {}",
                functor.src(),
                functor.tgt()
            )));
        }
        Ok(Self {
            name: name.into(),
            functor,
        })
    }
}

/// Defects fused in order, all endofunctors of one category.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DefectScript {
    defects: Vec<Defect>,
}

impl DefectScript {
    pub fn new(defects: Vec<Defect>) -> Result<Self> {
        if let Some(first) = defects.first() {
            for d in &defects[1..] {
                first.functor.src().check_same(d.functor.src())?;
            }
        }
        Ok(Self { defects })
    }

    pub fn defects(&self) -> &[Defect] {
        &self.defects
    }

    pub fn len(&self) -> usize {
        self.defects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.defects.is_empty()
    }

    /// `Fk ∘ … ∘ F1` on `x`.
    pub fn composite(&self, x: &SemisimpleCategory) -> Result<LinearFunctor> {
        self.defects
            .iter()
            .try_fold(identity_functor(x), |acc, d| compose_functors(&d.functor, &acc))
    }
}

pub fn fuse_to_boundary(name: &str, f: &LinearFunctor, s: &BoundaryState) -> Result<BoundaryState> {
    if !f.is_endo() {
        return Err(CatError::FunctorMismatch(
            "only endofunctors of the boundary category can fuse".into(),
        ));
    }
    s.category.check_same(f.src())?;
    let particle = ObjectExpr::new(&s.category, apply_to_object(f, &s.particle)?.mult().to_vec())?;
    let mut history = s.history.clone();
    history.push(name.to_string());
    Ok(BoundaryState {
        category: s.category.clone(),
        particle,
        history,
    })
}

pub fn run_script(script: &DefectScript, s: &BoundaryState) -> Result<BoundaryState> {
    script
        .defects
        .iter()
        .try_fold(s.clone(), |state, d| fuse_to_boundary(&d.name, &d.functor, &state))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BulkReport {
    pub boundary_simples: usize,
    pub bulk_simples: usize,
    pub end_identity_dim: u64,
    pub stable: bool,
    pub stability: StabilityReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub caveat: Option<String>,
}

pub const UNSTABLE_CAVEAT: &str = "multi-fusion bulk: the phase is unstable and demands fine tuning; \
perturbations flow it to a stable phase, so this realization is not fault tolerant";

pub const DEGENERATE_CAVEAT: &str = "degenerate: the zero category has no boundary particles and an empty bulk";

/// Bulk description `Fun(X, X)` of the boundary category `X`.
pub fn bulk_report(x: &SemisimpleCategory) -> BulkReport {
    let bulk = functor_category(x, x)
        .map(|fc| fc.category.simple_count())
        .unwrap_or(x.simple_count() * x.simple_count());
    let stability = is_stable(x);
    let caveat = if stability.degenerate {
        Some(DEGENERATE_CAVEAT.to_string())
    } else if !stability.stable {
        Some(UNSTABLE_CAVEAT.to_string())
    } else {
        None
    };
    BulkReport {
        boundary_simples: x.simple_count(),
        bulk_simples: bulk,
        end_identity_dim: stability.end_identity_dim,
        stable: stability.stable,
        stability,
        caveat,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcat::elementary_functor;

    fn state(m: &[u64]) -> BoundaryState {
        let x = SemisimpleCategory::vect(m.len());
        BoundaryState::new(ObjectExpr::new(&x, m.to_vec()).unwrap())
    }

    #[test]
    fn fuse_examples() {
        let s = state(&[3, 1]);
        let id = identity_functor(s.category());
        let t = fuse_to_boundary("id", &id, &s).unwrap();
        assert_eq!(t.particle(), s.particle());
        assert_eq!(t.history(), &["id".to_string()]);

        let swap = LinearFunctor::endo_from_rows(vec![vec![0, 1], vec![1, 0]]).unwrap();
        let t = fuse_to_boundary("swap", &swap, &state(&[1, 0])).unwrap();
        assert_eq!(t.particle().mult(), &[0, 1]);

        let x = SemisimpleCategory::vect(2);
        let e00 = elementary_functor(&x, &x, 0, 0).unwrap();
        let t = fuse_to_boundary("e00", &e00, &state(&[0, 1])).unwrap();
        assert!(t.particle().is_zero());
    }

    #[test]
    fn fuse_rejects_mismatch() {
        let f = identity_functor(&SemisimpleCategory::vect(3));
        assert!(fuse_to_boundary("f", &f, &state(&[1, 0])).is_err());
    }

    #[test]
    fn script_examples() {
        let s = state(&[1, 2]);
        assert_eq!(run_script(&DefectScript::default(), &s).unwrap(), s);

        let f = LinearFunctor::endo_from_rows(vec![vec![1, 1], vec![0, 1]]).unwrap();
        let g = LinearFunctor::endo_from_rows(vec![vec![0, 1], vec![2, 0]]).unwrap();
        let script = DefectScript::new(vec![
            Defect::new("F", f.clone()).unwrap(),
            Defect::new("G", g.clone()).unwrap(),
        ])
        .unwrap();
        let out = run_script(&script, &s).unwrap();
        let gf = compose_functors(&g, &f).unwrap();
        assert_eq!(out.particle(), &apply_to_object(&gf, s.particle()).unwrap());
        assert_eq!(out.history(), &["F".to_string(), "G".to_string()]);

        let script = DefectScript::new(vec![Defect::new("F", f.clone()).unwrap(); 3]).unwrap();
        let f3 = compose_functors(&f, &compose_functors(&f, &f).unwrap()).unwrap();
        assert_eq!(f3.matrix().to_rows(), vec![vec![1, 3], vec![0, 1]]);
        assert_eq!(
            run_script(&script, &s).unwrap().particle(),
            &apply_to_object(&f3, s.particle()).unwrap()
        );
    }

    #[test]
    fn bulk_report_examples() {
        let r = bulk_report(&SemisimpleCategory::vect(1));
        assert!(r.stable && r.caveat.is_none());
        assert_eq!(r.bulk_simples, 1);

        let r = bulk_report(&SemisimpleCategory::vect(2));
        assert!(!r.stable);
        assert_eq!((r.bulk_simples, r.end_identity_dim), (4, 2));
        assert!(r.caveat.as_deref().unwrap().contains("fine tuning"));

        let r = bulk_report(&SemisimpleCategory::vect(3));
        assert_eq!((r.bulk_simples, r.end_identity_dim), (9, 3));
    }

    #[test]
    fn script_rejects_mixed_categories() {
        let a = Defect::new("a", identity_functor(&SemisimpleCategory::vect(1))).unwrap();
        let b = Defect::new("b", identity_functor(&SemisimpleCategory::vect(2))).unwrap();
        assert!(DefectScript::new(vec![a, b]).is_err());
    }
}
