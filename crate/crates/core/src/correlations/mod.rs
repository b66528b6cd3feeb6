//! No-signalling correlations with two binary inputs and `d`-ary outputs.
//!
//! Only `PR_{2,d}` is modelled as the nonlocal component of points on the
//! symmetric slice; other extremal nonlocal points are available as named
//! tables but never appear in a decomposition.

mod bell;
mod decompose;
mod depolarize;
pub mod io;
mod named;
pub mod random;
mod slice;
mod strategy;
mod table;

pub use bell::{
    cglmp_coefficients, cglmp_value, cglmp_value_tilde, chsh_value, deterministic_cglmp, CglmpArray,
};
pub use decompose::{
    decompose, decompose_chsh, decompose_slice, decompose_slice_with, EveDecomposition, M2Family,
    FACET_TOL,
};
pub use depolarize::{depolarize, depolarize_table, shift_average};
pub use named::{
    alternative_pr23_mixture, bb84_noiseless, embedded_pr, isotropic, m_pr_mixture, pr_2d, pr_box,
    quantum_chsh_point, shift_box, NamedTable,
};
pub use slice::SlicePoint;
pub use strategy::{
    chsh_facet_strategy, d3_facet_strategies, enumerate_saturating, natural_relation_points,
    scan_saturating, ClassifiedStrategy, D3Label, DeterministicStrategy, FacetClass, KnowledgeSet,
};
pub use table::{CorrelationTable, ValidationReport, VALIDATION_TOL};
