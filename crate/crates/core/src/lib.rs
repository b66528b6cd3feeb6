//! Secrecy extraction from no-signalling correlations.
//!
//! The crate is organised around [`correlations::CorrelationTable`], the
//! conditional distribution `P(a,b|x,y)` for two binary inputs and `d`-ary
//! outputs. Everything else consumes or produces tables:
//!
//! * [`correlations`]: Bell functionals (CHSH, CGLMP), deterministic
//!   strategies on the CGLMP facet, depolarization onto the symmetric slice
//!   and Eve's extremal decompositions.
//! * [`protocol`]: pseudo-sifting and the Alice-Bob-Eve tables it produces.
//! * [`keyrate`]: one-way (Csiszár-Körner) rates, advantage distillation,
//!   intrinsic information and the generic-`d` bounds.
//! * [`quantum`]: qudit correlations on Schmidt states and the
//!   Devetak-Winter rates of the qubit CHSH and BB84 protocols.
//! * [`figures`]: sweeps and threshold tables consumed by the CLI.

pub mod correlations;
pub mod error;
pub mod figures;
pub mod fmt;
pub mod keyrate;
pub mod parallel;
pub mod protocol;
pub mod quantum;

pub use error::{Error, Result};
