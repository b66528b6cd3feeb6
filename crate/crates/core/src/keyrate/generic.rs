//! Bounds for arbitrary `d` that need only the slice point.

use super::advantage::generic_ad_margin;
use super::entropy::entropy_bits_unchecked;
use super::optimize::bisect;
use super::report::{KeyRateReport, RateUnit, Threshold};
use crate::correlations::SlicePoint;
use crate::error::{check_range, Result};

/// `1 - h({e_AB(Δ)}) - I_E` in dits, with
/// `I_E = p_L/2 + (p_L/2)(1 - log_d 2)` and `e_AB(Δ) = (p_Δ + p_{-Δ})/2`.
pub fn generic_d_oneway(point: &SlicePoint) -> KeyRateReport {
    let d = point.d();
    let log_d = (d as f64).log2();
    let errors: Vec<f64> = (0..d)
        .map(|delta| 0.5 * (point.p(delta) + point.p(d - delta)))
        .collect();
    let h = entropy_bits_unchecked(&errors) / log_d;
    let p_l = 1.0 - point.p_nl();
    let i_e = p_l / 2.0 + p_l / 2.0 * (1.0 - 1.0 / log_d);
    KeyRateReport::new(1.0 - h - i_e, RateUnit::Dits(d))
        .with_entropy("p_nl", point.p_nl())
        .with_entropy("h_errors", h)
        .with_entropy("i_e", i_e)
}

/// `w · point + (1 - w) · uniform`.
pub fn white_noise_mixture(point: &SlicePoint, w: f64) -> Result<SlicePoint> {
    check_range("w", w, 0.0, 1.0, "[0, 1]")?;
    let d = point.d() as f64;
    SlicePoint::new(point.pf().iter().map(|p| w * p + (1.0 - w) / d).collect())
}

/// Smallest visibility `w` for which the generic AD condition holds.
pub fn white_noise_ad_threshold(point: &SlicePoint, tol: f64) -> Result<Threshold> {
    bisect(
        |w| white_noise_mixture(point, w).map_or(f64::NAN, |p| generic_ad_margin(&p)),
        0.0,
        1.0,
        tol,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::keyrate::{ck_d3, generic_d_ad};

    #[test]
    fn pure_pr_point_is_one() {
        for d in 2..=7 {
            let mut pf = vec![0.0; d];
            pf[0] = 1.0;
            let r = generic_d_oneway(&SlicePoint::new(pf).unwrap());
            assert!((r.rate - 1.0).abs() < 1e-15);
            assert!(generic_d_ad(
                &SlicePoint::new({
                    let mut v = vec![0.0; d];
                    v[0] = 1.0;
                    v
                })
                .unwrap()
            ));
        }
    }

    #[test]
    fn ternary_matches_ck_d3() {
        for &(p0, p1) in &[(0.9, 0.05), (0.8286, 0.1093), (0.7, 0.15)] {
            let g = generic_d_oneway(&SlicePoint::ternary(p0, p1).unwrap()).rate;
            let c = ck_d3(p0, p1, 0.0).unwrap().rate;
            assert!((g - c).abs() < 1e-14);
        }
    }

    #[test]
    fn white_noise_threshold_brackets() {
        let s = SlicePoint::new(vec![0.7, 0.1, 0.05, 0.05, 0.1]).unwrap();
        let t = white_noise_ad_threshold(&s, 1e-9).unwrap();
        let below = white_noise_mixture(&s, t.lo).unwrap();
        let above = white_noise_mixture(&s, t.hi).unwrap();
        assert!(!generic_d_ad(&below) && generic_d_ad(&above));
    }
}
