//! One-way (Csiszár-Körner) rates with Bob's flip pre-processing.
//!
//! Every rate here vanishes identically at full randomization (`q = 1/2`
//! for bits, `q = 1/3` for trits), and the optimal `q` drifts toward that
//! point as the noise grows. Searches therefore stop a little short of it,
//! at [`Q_MAX`] and [`Q3_MAX`].

use super::entropy::{binary_h, h3};
use super::optimize::{bisect, maximize_1d, OptConfig};
use super::report::{KeyRateReport, RateUnit, Threshold};
use crate::error::{check_range, Error, Result};
use crate::protocol::TripartiteTable;

/// Upper end of the binary flip-probability search.
pub const Q_MAX: f64 = 0.5 - 1e-3;
/// Upper end of the ternary shift-probability search.
pub const Q3_MAX: f64 = 1.0 / 3.0 - 1e-3;

/// Isotropic binary rate at flip probability `q`:
/// `1 - h(e') - (p_L/2)(1 - h(q))`, `e' = (1-q)e + q(1-e)`, `e = p_L/4`.
pub fn ck_isotropic(p_nl: f64, q: f64) -> Result<KeyRateReport> {
    check_range("p_nl", p_nl, 0.0, 1.0, "[0, 1]")?;
    check_range("q", q, 0.0, 0.5, "[0, 1/2]")?;
    let p_l = 1.0 - p_nl;
    let e = p_l / 4.0;
    let e_prime = (1.0 - q) * e + q * (1.0 - e);
    let i_ab = 1.0 - binary_h(e_prime);
    let i_be = 0.5 * p_l * (1.0 - binary_h(q));
    Ok(KeyRateReport::new(i_ab - i_be, RateUnit::Bits)
        .with_q(q)
        .with_entropy("e_ab", e)
        .with_entropy("e_ab_prime", e_prime)
        .with_entropy("i_ab_prime", i_ab)
        .with_entropy("i_b_prime_e", i_be))
}

pub fn ck_isotropic_opt(p_nl: f64, cfg: &OptConfig) -> Result<KeyRateReport> {
    check_range("p_nl", p_nl, 0.0, 1.0, "[0, 1]")?;
    let (q, _) = maximize_1d(
        |q| ck_isotropic(p_nl, q).map_or(f64::NEG_INFINITY, |r| r.rate),
        0.0,
        Q_MAX,
        cfg,
    );
    let at_zero = ck_isotropic(p_nl, 0.0)?;
    let best = ck_isotropic(p_nl, q)?;
    Ok(if at_zero.rate >= best.rate {
        at_zero
    } else {
        best
    })
}

/// `1 - h(p_L/2)/2 - p_L/2`.
pub fn ck_bell_limit(p_l: f64) -> Result<f64> {
    check_range("p_l", p_l, 0.0, 1.0, "[0, 1]")?;
    Ok(1.0 - 0.5 * binary_h(p_l / 2.0) - p_l / 2.0)
}

fn check_triangle(p0: f64, p1: f64) -> Result<f64> {
    check_range("p0", p0, 0.0, 1.0, "[0, 1]")?;
    check_range("p1", p1, 0.0, 1.0 - p0 + 1e-12, "[0, 1 - p0]")?;
    let p_nl = 2.0 * (p0 - p1) - 1.0;
    if p_nl < -1e-12 {
        return Err(Error::domain("p_nl", p_nl, "[0, 1] (facet sector)"));
    }
    Ok(p_nl)
}

/// Ternary rate in trits with equal shift probabilities `q` for `b → b ± 1`.
pub fn ck_d3(p0: f64, p1: f64, q: f64) -> Result<KeyRateReport> {
    let p_nl = check_triangle(p0, p1)?;
    check_range("q", q, 0.0, 1.0 / 3.0, "[0, 1/3]")?;
    let p_l = 1.0 - p_nl;
    let e_prime = (1.0 - p0) + q * (3.0 * p0 - 1.0);
    let i_ab = 1.0 - h3([1.0 - e_prime, e_prime / 2.0, e_prime / 2.0]);
    let h1 = h3([1.0 - 2.0 * q, q, q]);
    let h2 = h3([(1.0 - q) / 2.0, (1.0 - q) / 2.0, q]);
    let i_be = p_l * (1.0 - 0.5 * (h1 + h2));
    Ok(KeyRateReport::new(i_ab - i_be, RateUnit::Trits)
        .with_q(q)
        .with_entropy("p_nl", p_nl)
        .with_entropy("e_ab_prime", e_prime)
        .with_entropy("i_ab_prime", i_ab)
        .with_entropy("i_b_prime_e", i_be))
}

pub fn ck_d3_opt(p0: f64, p1: f64, cfg: &OptConfig) -> Result<KeyRateReport> {
    let at_zero = ck_d3(p0, p1, 0.0)?;
    let (q, _) = maximize_1d(
        |q| ck_d3(p0, p1, q).map_or(f64::NEG_INFINITY, |r| r.rate),
        0.0,
        Q3_MAX,
        cfg,
    );
    let best = ck_d3(p0, p1, q)?;
    Ok(if at_zero.rate >= best.rate {
        at_zero
    } else {
        best
    })
}

/// `I(A:B') - I(B':E)` in bits computed on a binary tripartite table after
/// Bob flips with probability `q`, averaged over Alice's input.
pub fn ck_tripartite(t: &TripartiteTable, q: f64) -> Result<f64> {
    let pp = crate::protocol::preprocess_tripartite(t, 0.0, q)?;
    let mut total = 0.0;
    for x in 0..2 {
        let ab = pp.marginal_ab(x);
        let i_ab = super::entropy::mutual_information(&ab, 2, 2);
        let (_, i_be) = pp.eve_information(x);
        total += 0.5 * (i_ab - i_be);
    }
    Ok(total)
}

/// Zero of the isotropic rate in `p_nl`, without (`optimal = false`) or
/// with the `q` search.
pub fn ck_isotropic_threshold(optimal: bool, tol: f64, cfg: &OptConfig) -> Result<Threshold> {
    let rate = |p: f64| {
        if optimal {
            ck_isotropic_opt(p, cfg).map_or(f64::NAN, |r| r.rate)
        } else {
            ck_isotropic(p, 0.0).map_or(f64::NAN, |r| r.rate)
        }
    };
    bisect(rate, 0.0, 1.0, tol)
}
