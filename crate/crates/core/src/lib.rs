//! Executable model of 1-categorical computation.
//!
//! Finite semisimple categories are stored skeletally as `vect^n`, linear
//! functors as multiplicity matrices, and categorical circuits over the
//! categorical bit `vect^2` elaborate to a single endofunctor of
//! `(vect^2)^{⊠n}`. Decategorification ([`circuit::k0_of_functor`])
//! recovers the underlying integer matrix.

pub mod category;
pub mod circuit;
pub mod cli;
pub mod deligne;
pub mod error;
pub mod funcat;
pub mod functor;
pub mod linalg;
pub mod topo;

pub use category::{Morphism, ObjectExpr, SemisimpleCategory};
pub use error::{CatError, Result};
pub use functor::{LinearFunctor, NaturalTransformation};
pub use linalg::{CMatrix, IntMatrix, Tolerance};
