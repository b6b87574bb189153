//! Twisted Witten classes and the registry of identities they imply:
//! modular factorizations, the degree-12 anomaly cancellation formulas,
//! their degree-8 cores, bundle identities, mod-2 reductions and the
//! restriction to a characteristic submanifold.

mod classes;
mod differ;
mod mod2;
mod registry;
mod theorems;

pub use classes::{
    build_twisted_class, cap_c, cap_c_c, cap_c_tilde, cap_c_tilde_c, cap_d, cap_d_tilde, component_series,
    cosh_half, exp_half, lambda, lambda_c, p_c, p_spin, p_tilde, p_tilde_c, Route, TwistParams, TwistedKind,
};
pub use differ::{differ_display, differ_parts, restrict_to_u, verify_differ, DifferId, DifferParts, U_CAP};
pub use mod2::{reduce_mod2, verify_mod2_orientable, verify_pc, verify_pc_and_mod2, Mod2Poly, W};
pub use registry::{verify_all, verify_factorization, verify_identity, IdentityId, Status, VerificationReport};
pub use theorems::{
    bundle_xi_minus, bundle_xi_plus, deg8_core, deg8_identity, factorization_split, identity_difference,
    theorem_sides, Deg8Id, TheoremId,
};

use crate::charring::ClassError;
use crate::exactmath::SeriesError;
use crate::thetamod::ThetaError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AnomalyError {
    #[error("invalid argument: {0}")]
    ArgumentError(String),
    #[error("generator {0} has no image on the submanifold")]
    UnsupportedGenerator(String),
    #[error("cannot reduce mod 2: {0}")]
    NotIntegral(String),
    #[error(transparent)]
    Class(#[from] ClassError),
    #[error(transparent)]
    Theta(#[from] ThetaError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}
