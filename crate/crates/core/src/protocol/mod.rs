//! Pseudo-sifting and the Alice-Bob-Eve tables it produces.
//!
//! After Alice announces `x`, Bob replaces his output by `b' = b - xy`
//! (a bit flip when `d = 2`). Eve's symbol for each component of her
//! decomposition follows from what that component fixes: a nonlocal
//! component fixes nothing, a deterministic one always fixes `a(x)` and
//! also fixes `b'` when it does not depend on `y`.

mod sift;
mod tripartite;

pub use sift::{pseudo_sift, pseudo_sift_decomposition, SiftedDistribution, DEFAULT_XI};
pub use tripartite::{
    build_tripartite, build_tripartite_with, preprocess_tripartite, uncertainty_relation,
    EveSymbol, TripartiteTable, UncertaintyCheck,
};
