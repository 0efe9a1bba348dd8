//! Exact rational polyhedral geometry for asymptotic invariants of graded
//! systems of monomial ideals: polyhedra and their dual descriptions, an exact
//! simplex solver, cones and fans, and a verifier for the fan decomposition of
//! finitely generated graded systems.

pub mod error;
pub mod exact;
pub mod fans;
pub mod graded;
pub mod lp;
pub mod polyhedra;

pub use error::{Error, Result};
pub use exact::{ExtRat, QMatrix, QVector, Rat};
pub use fans::{Cone, Fan};
pub use graded::{GradedSystem, MonomialIdeal, WeightValuation};
pub use polyhedra::{HPolyhedron, VRepresentation};
