//! Exact arithmetic for even integral lattices and their discriminant forms.
//!
//! The crate is layered bottom-up:
//!
//! * [`exactlinalg`]: integer/rational dense matrices, Hermite and Smith normal
//!   forms, saturated kernels, exact signatures and univariate rational functions.
//! * [`lattice`]: Gram-matrix lattices, duals, discriminant groups, sublattices,
//!   complements and the Nikulin existence/uniqueness predicates.
//! * [`discform`]: finite quadratic modules, isotropic enumeration, overlattices
//!   and isomorphism search.
//! * [`curveconfig`]: configurations of smooth rational curves, double covers,
//!   involution quotients, reconstruction of the triple-double K3 configurations
//!   and even-four certificates.
//! * [`paperverify`]: the verification harness that recomputes every lattice
//!   statement about triple-double K3 surfaces and their quotients.
//!
//! No floating point is used anywhere.

pub mod curveconfig;
pub mod discform;
pub mod error;
pub mod exactlinalg;
pub mod json;
pub mod lattice;
pub mod paperverify;

pub use error::{Error, Result};
