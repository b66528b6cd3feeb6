//! Key rates, advantage distillation and intrinsic information.
//!
//! Binary quantities are in bits, ternary ones in trits and generic-`d`
//! ones in dits; [`KeyRateReport::rate_bits`] converts.

mod advantage;
pub mod entropy;
mod generic;
mod intrinsic;
mod oneway;
pub mod optimize;
mod report;

pub use advantage::{
    ad_block_errors, ad_condition, ad_d3, ad_d3_margin, ad_isotropic, ad_isotropic_margin,
    ad_isotropic_threshold, ad_preprocessed_margin, ad_preprocessed_opt, ad_preprocessed_threshold,
    generic_ad_margin, generic_d_ad, AdDeltas, AdOptimum, AD_GRID_STEP, AD_ISOTROPIC_THRESHOLD,
};
pub use generic::{generic_d_oneway, white_noise_ad_threshold, white_noise_mixture};
pub use intrinsic::{
    conditional_mi_under, d3_intrinsic_line, d3_intrinsic_upper, d3_intrinsic_zero_region,
    d3_lambda_map, d3_lambda_scan, d3_lambda_star, d3_tripartite, intrinsic_info_chsh,
    intrinsic_info_numeric, merging_map, EveChannel, IntrinsicConfig, IntrinsicReport,
};
pub use oneway::{
    ck_bell_limit, ck_d3, ck_d3_opt, ck_isotropic, ck_isotropic_opt, ck_isotropic_threshold,
    ck_tripartite, Q3_MAX, Q_MAX,
};
pub use optimize::OptConfig;
pub use report::{KeyRateReport, RateUnit, Threshold};
