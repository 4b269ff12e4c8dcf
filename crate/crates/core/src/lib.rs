//! Exact verification engine for parity-sheaf complexes on stratified affine
//! space and on the global Schubert variety for the first fundamental coweight.

pub mod complex;
pub mod exec;
pub mod geometry;
pub mod linalg;
pub mod monodromy;
pub mod morph;
pub mod nearby;
pub mod report;
pub mod ring;
pub mod scalar;
pub mod strata;
pub mod weyl;
