//! Advantage distillation, judged by comparing the exponential decay of
//! Bob's and Eve's block errors.

use super::oneway::Q_MAX;
use super::optimize::{bisect, maximize_2d};
use super::report::Threshold;
use crate::correlations::SlicePoint;
use crate::error::{check_range, Result};

/// Exact isotropic threshold `p_NL > p_L/4`.
pub const AD_ISOTROPIC_THRESHOLD: f64 = 0.2;

/// Grid step of the `(q_A, q_B)` search.
pub const AD_GRID_STEP: f64 = 0.005;

/// `f > e/(1-e)`.
pub fn ad_condition(e_ab: f64, f: f64) -> Result<bool> {
    check_range("e_ab", e_ab, 0.0, 0.5 - f64::EPSILON, "[0, 1/2)")?;
    Ok(f > e_ab / (1.0 - e_ab))
}

/// `p_NL/(1-e) - e/(1-e)` for the isotropic family, `e = p_L/4`.
pub fn ad_isotropic_margin(p_nl: f64) -> Result<f64> {
    check_range("p_nl", p_nl, 0.0, 1.0, "[0, 1]")?;
    let e = (1.0 - p_nl) / 4.0;
    Ok((p_nl - e) / (1.0 - e))
}

pub fn ad_isotropic(p_nl: f64) -> Result<bool> {
    let e = (1.0 - p_nl) / 4.0;
    check_range("p_nl", p_nl, 0.0, 1.0, "[0, 1]")?;
    ad_condition(e, p_nl / (1.0 - e))
}

pub fn ad_isotropic_threshold(tol: f64) -> Result<Threshold> {
    bisect(
        |p| ad_isotropic_margin(p).unwrap_or(f64::NAN),
        0.0,
        1.0,
        tol,
    )
}

/// Probabilities of Eve's symbol classes jointly with acceptance, after
/// bit flips `q_A`, `q_B`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdDeltas {
    pub delta_nothing: f64,
    pub delta_1: f64,
    pub delta_2: f64,
    pub e_prime: f64,
}

impl AdDeltas {
    pub fn new(p_nl: f64, q_a: f64, q_b: f64) -> Result<Self> {
        check_range("p_nl", p_nl, 0.0, 1.0, "[0, 1]")?;
        check_range("q_a", q_a, 0.0, 0.5, "[0, 1/2]")?;
        check_range("q_b", q_b, 0.0, 0.5, "[0, 1/2]")?;
        let p_l = 1.0 - p_nl;
        let (qa_, qb_) = (1.0 - q_a, 1.0 - q_b);
        let sa = (qa_ * q_a).sqrt();
        let sb = (qb_ * q_b).sqrt();
        Ok(Self {
            delta_nothing: p_nl * (qa_ * qb_ + q_a * q_b),
            delta_1: p_l / 4.0 * sa,
            delta_2: p_l / 2.0 * sa * sb,
            e_prime: (p_nl + p_l / 2.0) * (q_a * qb_ + qa_ * q_b) + p_l / 4.0,
        })
    }

    /// `δ_N + 2δ_1 + 2δ_2 - e'`; positive means AD succeeds.
    pub fn margin(&self) -> f64 {
        self.delta_nothing + 2.0 * self.delta_1 + 2.0 * self.delta_2 - self.e_prime
    }
}

pub fn ad_preprocessed_margin(p_nl: f64, q_a: f64, q_b: f64) -> Result<f64> {
    Ok(AdDeltas::new(p_nl, q_a, q_b)?.margin())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdOptimum {
    pub q_a: f64,
    pub q_b: f64,
    pub margin: f64,
}

/// Best margin over `(q_A, q_B) ∈ [0, Q_MAX]²`.
pub fn ad_preprocessed_opt(p_nl: f64, step: f64, tol: f64) -> Result<AdOptimum> {
    check_range("p_nl", p_nl, 0.0, 1.0, "[0, 1]")?;
    let f = |a: f64, b: f64| ad_preprocessed_margin(p_nl, a, b).unwrap_or(f64::NEG_INFINITY);
    let (q_a, q_b, margin) = maximize_2d(f, 0.0, Q_MAX, step, tol);
    Ok(AdOptimum { q_a, q_b, margin })
}

pub fn ad_preprocessed_threshold(step: f64, tol: f64) -> Result<Threshold> {
    bisect(
        |p| ad_preprocessed_opt(p, step, tol).map_or(f64::NAN, |o| o.margin),
        0.0,
        1.0,
        tol,
    )
}

/// `(ẽ_AB, ẽ_E)` after `N`-blocks for the isotropic family, with
/// `ẽ_E` the random-guess lower estimate.
pub fn ad_block_errors(p_nl: f64, n: u32) -> Result<(f64, f64)> {
    check_range("p_nl", p_nl, 0.0, 1.0, "[0, 1]")?;
    let e = (1.0 - p_nl) / 4.0;
    let en = e.powi(n as i32);
    let e_ab = en / ((1.0 - e).powi(n as i32) + en);
    let e_e = 0.5 * (p_nl / (1.0 - e)).powi(n as i32);
    Ok((e_ab, e_e))
}

/// `5p_0 - 4p_1 - 3`; AD works on the ternary slice when positive.
pub fn ad_d3_margin(p0: f64, p1: f64) -> f64 {
    5.0 * p0 - 4.0 * p1 - 3.0
}

pub fn ad_d3(p0: f64, p1: f64) -> Result<bool> {
    check_range("p0", p0, 0.0, 1.0, "[0, 1]")?;
    check_range("p1", p1, 0.0, 1.0 - p0 + 1e-12, "[0, 1 - p0]")?;
    Ok(ad_d3_margin(p0, p1) > 0.0)
}

/// `p_NL - max_{Δ≥1} e_AB(Δ)` on a slice point, `e_AB(Δ) = (p_Δ + p_{-Δ})/2`.
pub fn generic_ad_margin(point: &SlicePoint) -> f64 {
    let d = point.d();
    let worst = (1..d)
        .map(|delta| 0.5 * (point.p(delta) + point.p(d - delta)))
        .fold(0.0, f64::max);
    point.p_nl() - worst
}

pub fn generic_d_ad(point: &SlicePoint) -> bool {
    generic_ad_margin(point) > 0.0
}
