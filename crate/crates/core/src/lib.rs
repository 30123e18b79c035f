//! Admissible ideals in k-linear categorifications of quivers.
//!
//! The finite side works with exact rational path combinations: quotient
//! Hom spaces come from degree-bounded rewriting, and admissibility is
//! decided from normal forms. The continuous side evaluates closed-form Hom
//! dimensions on a catalogue of parametric models.

pub mod continuous;
pub mod error;
pub mod ideal;
pub mod length;
mod linalg;
pub mod point;
pub mod quiver;
pub mod rewrite;

pub use error::{Error, Result};
pub use ideal::{
    build_rewrite_system, check_admissible, double_quotient_dim, is_connected_quotient, normal_form,
    quotient_hom_basis, radical_dim, stack_ideals, AdmissibilityReport, IdealPresentation, Quotient, Verdict,
};
pub use linalg::{Echelon, Row};
pub use quiver::{
    compose_lincombs, compose_paths, enumerate_paths, int, is_radical_morphism, rat, ArrowId, Coeff, FiniteQuiver,
    HomBasis, LinComb, Path, VertexId,
};
pub use rewrite::RewriteSystem;
