//! Configurations of smooth rational curves: Gram matrices, double covers,
//! quotients by free involutions, reconstruction of the 24-curve and
//! 20-curve configurations, and even-four certificates.

mod certificate;
mod config;
mod cover;
mod curvelattice;
pub mod data;
mod quotient;
mod reconstruct;
mod xprime;

pub use certificate::{
    find_even_four_certificate, halfset_for_class, replay, two_divisible_basis, Certificate,
    CertificateStep, TwoDivisible, EVEN_SET_AXIOM,
};
pub use config::{CurveConfig, InvolutionAction};
pub use cover::{double_cover_pullback, BranchPoint, CoverStep, Pullback};
pub use curvelattice::{half_sum, CurveLattice};
pub use quotient::{quotient_by_involution, FixedPointData, Quotient};
pub use reconstruct::{
    reconstruct_24, Census, Constraints, DeckInvolution, Reconstruction, Solution24, TierPolicy,
};
pub use xprime::{incidence_census, reconstruct_xprime, term_vector, IncidenceCensus, XPrime};
