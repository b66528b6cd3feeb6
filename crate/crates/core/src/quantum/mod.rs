//! Quantum-achievable points and quantum-eavesdropper rates.
//!
//! Complex amplitudes stay inside this module; the rest of the crate only
//! sees [`CorrelationTable`](crate::correlations::CorrelationTable) values
//! and real rates.

mod attack;
mod devetak_winter;
pub mod linalg;
mod qudit;
mod schmidt;

pub use attack::{channel_from_disturbance, spin_projector, BellDiagonalAttack, Q0};
pub use devetak_winter::{
    bb84_critical_qber, bb84_crossover, bb84_flip_from_chsh, bb84_opt, bb84_rate, chsh_rate_for,
    dw_chsh_opt, dw_critical_disturbance, dw_rate_chsh, equivalence_check, DwOptimum,
    EquivalenceReport, Side, ALICE_ANGLES, BOB_ANGLES,
};
pub use qudit::{
    probs_gamma, qudit_distribution, qudit_slice, QuditSettings, SchmidtState, GAMMA_KEY, GAMMA_KL,
    GAMMA_MAX_VIOLATION,
};
pub use schmidt::{nelder_mead, optimize_schmidt, schmidt_rate, SchmidtOptimum, SchmidtSearch};
