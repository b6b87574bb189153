//! Exact computation with truncated `q`-series over a graded ring of
//! characteristic classes, modular forms and theta functions, the verifier
//! for the twelve-dimensional anomaly cancellation identities, and the
//! algebra of cubic forms on lattices.

pub mod exactmath;

pub use exactmath::{QExpSeries, Rat, RatSeries, SeriesError, ZMod};
pub mod charring;
pub mod thetamod;
pub mod anomaly;
pub mod cubiclattice;

pub use charring::{ClassError, CohomQSeries, Gen, GradedPoly, VirtualBundle};
pub use thetamod::ThetaError;
pub use anomaly::{AnomalyError, IdentityId, VerificationReport};
