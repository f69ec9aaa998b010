//! Finite topological quivers, regular quiver morphisms and the
//! Cuntz–Pimsner machinery they induce, checked with exact arithmetic.
//!
//! A finite quiver carries a positive weight on every edge; the weights on
//! the edges into a vertex `v` form the measure `λ^v` on the range fiber
//! `r⁻¹(v)`. From this data the crate builds the correspondence `X_E` over the
//! vertex functions, checks the regularity conditions of a morphism, builds
//! the pullback correspondence morphism and its covariance conditions, and
//! decides the defining relations of the induced homomorphism between
//! Cuntz–Pimsner algebras.
//!
//! ```
//! use topquiver::{fixtures, pimsner::verify_induced};
//!
//! let m = fixtures::m_collapse();
//! assert!(m.check_regular().unwrap().is_regular());
//! assert!(verify_induced(&m).unwrap().all_hold());
//! ```

pub mod correspondence;
pub mod corrmorphism;
pub mod error;
pub mod factor;
pub mod fixtures;
pub mod gen;
pub mod linalg;
pub mod morphism;
pub mod pimsner;
pub mod quiver;
pub mod scalar;

pub use correspondence::{
    EdgeVector, FiberBlockOperator, IdMap, QuiverCorrespondence, VertexFunction,
};
pub use corrmorphism::{CorrMorphism, CovarianceReport, Verdict};
pub use error::Error;
pub use factor::{check_factor_map, equivalence_check, FactorMapReport};
pub use morphism::{MorphismData, QuiverMorphism, RegularityReport};
pub use pimsner::{Fragment, GeneratorMap, Presentation};
pub use quiver::{validate, FiniteQuiver, QuiverData};
pub use scalar::ScalarQ;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/quivers.md")]
    mod quivers {}
    #[doc = include_str!("../../../book/src/correspondence.md")]
    mod correspondence {}
    #[doc = include_str!("../../../book/src/morphisms.md")]
    mod morphisms {}
    #[doc = include_str!("../../../book/src/covariance.md")]
    mod covariance {}
    #[doc = include_str!("../../../book/src/presentation.md")]
    mod presentation {}
    #[doc = include_str!("../../../book/src/factor-maps.md")]
    mod factor_maps {}
    #[doc = include_str!("../../../book/src/generators.md")]
    mod generators {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
