//! Qudit correlations from Schmidt-diagonal states under the CGLMP
//! measurement settings.

use crate::correlations::{CorrelationTable, SlicePoint};
use crate::error::{Error, Result};
use rand::Rng;
use std::f64::consts::PI;

/// `γ` maximizing the d=3 CGLMP violation.
pub const GAMMA_MAX_VIOLATION: f64 = 0.792_286_991_393_261_3; // (√11 − √3)/2
/// Kullback-Leibler optimal `γ` for d=3; not derived here.
pub const GAMMA_KL: f64 = 0.6529;
/// `γ` at which the d=3 one-way rate peaks on the quantum curve.
pub const GAMMA_KEY: f64 = 0.9875;

const NORM_TOL: f64 = 1e-12;

/// `Σ_k c_k |kk⟩` with `c_k ≥ 0`, `Σ c_k² = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtState {
    coeffs: Vec<f64>,
}

impl SchmidtState {
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::Dimension(format!("d = {} < 2", coeffs.len())));
        }
        if let Some(&c) = coeffs.iter().find(|c| !(**c >= 0.0)) {
            return Err(Error::domain("Schmidt coefficient", c, "[0, ∞)"));
        }
        let norm: f64 = coeffs.iter().map(|c| c * c).sum();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::domain("Σ c_k²", norm, "1 ± 1e-12"));
        }
        Ok(Self { coeffs })
    }

    /// Takes absolute values and rescales to unit norm.
    pub fn normalized(raw: &[f64]) -> Result<Self> {
        let norm = raw.iter().map(|c| c * c).sum::<f64>().sqrt();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::domain("‖c‖", norm, "(0, ∞)"));
        }
        Self::new(raw.iter().map(|c| c.abs() / norm).collect())
    }

    pub fn maximally_entangled(d: usize) -> Self {
        Self {
            coeffs: vec![1.0 / (d as f64).sqrt(); d],
        }
    }

    /// `(|00⟩ + γ|11⟩ + |22⟩)/√(2+γ²)`.
    pub fn psi_gamma(gamma: f64) -> Result<Self> {
        Self::normalized(&[1.0, gamma, 1.0])
    }

    pub fn random(d: usize, rng: &mut impl Rng) -> Self {
        let raw: Vec<f64> = (0..d).map(|_| rng.gen_range(0.0..1.0) + 1e-9).collect();
        Self::normalized(&raw).expect("positive coefficients")
    }

    pub fn d(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// `⟨ψ|Φ_d⟩` with the maximally entangled state.
    pub fn overlap_max_entangled(&self) -> f64 {
        self.coeffs.iter().sum::<f64>() / (self.d() as f64).sqrt()
    }

    /// `max_k |c_k − c_{d−1−k}|`.
    pub fn asymmetry(&self) -> f64 {
        let d = self.d();
        (0..d)
            .map(|k| (self.coeffs[k] - self.coeffs[d - 1 - k]).abs())
            .fold(0.0, f64::max)
    }
}

/// Phases `φ_x` (Alice) and `θ_y` (Bob).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuditSettings {
    pub phi: [f64; 2],
    pub theta: [f64; 2],
}

impl QuditSettings {
    /// `φ = (0, π/d)`, `θ = (−π/2d, π/2d)`.
    pub fn cglmp(d: usize) -> Self {
        let d = d as f64;
        Self {
            phi: [0.0, PI / d],
            theta: [-PI / (2.0 * d), PI / (2.0 * d)],
        }
    }
}

/// `P(a,b|x,y) = d⁻² Σ_{k,k'} c_k c_k' cos[(2πΔ/d + φ_x + θ_y)(k − k')]`
/// with `Δ = a − b`.
pub fn qudit_distribution(state: &SchmidtState, settings: &QuditSettings) -> CorrelationTable {
    let d = state.d();
    let c = state.coeffs();
    let df = d as f64;
    let mut profile = [[vec![0.0; d], vec![0.0; d]], [vec![0.0; d], vec![0.0; d]]];
    for (x, row) in profile.iter_mut().enumerate() {
        for (y, prof) in row.iter_mut().enumerate() {
            for (delta, slot) in prof.iter_mut().enumerate() {
                let angle = 2.0 * PI * delta as f64 / df + settings.phi[x] + settings.theta[y];
                let mut s = 0.0;
                for k in 0..d {
                    for kp in 0..d {
                        s += c[k] * c[kp] * (angle * (k as f64 - kp as f64)).cos();
                    }
                }
                *slot = s / (df * df);
            }
        }
    }
    CorrelationTable::from_fn(d, |a, b, x, y| profile[x][y][(a + d - b) % d])
}

/// The default-settings point, read off as a slice point.
pub fn qudit_slice(state: &SchmidtState) -> Result<SlicePoint> {
    let t = qudit_distribution(state, &QuditSettings::cglmp(state.d()));
    SlicePoint::from_table(&t, 1e-10)
}

/// Closed-form `(p_0, p_1, p_2)` for `|ψ(γ)⟩`.
pub fn probs_gamma(gamma: f64) -> [f64; 3] {
    let s3 = 3f64.sqrt();
    let n = 2.0 + gamma * gamma;
    [
        (1.0 + (1.0 + 2.0 * s3 * gamma) / n) / 3.0,
        (1.0 - 2.0 / n) / 3.0,
        (1.0 + (1.0 - 2.0 * s3 * gamma) / n) / 3.0,
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlations::random::seeded;
    use num_complex::Complex64;

    /// `|⟨α_x(a) β_y(b)|ψ⟩|²` with Fourier-type measurement vectors.
    fn amplitude_table(state: &SchmidtState, s: &QuditSettings) -> CorrelationTable {
        let d = state.d();
        let df = d as f64;
        CorrelationTable::from_fn(d, |a, b, x, y| {
            let amp: Complex64 = (0..d)
                .map(|k| {
                    let kf = k as f64;
                    let alice = Complex64::from_polar(
                        1.0 / df.sqrt(),
                        kf * (2.0 * PI * a as f64 / df + s.phi[x]),
                    );
                    let bob = Complex64::from_polar(
                        1.0 / df.sqrt(),
                        kf * (-2.0 * PI * b as f64 / df + s.theta[y]),
                    );
                    state.coeffs()[k] * (alice * bob).conj()
                })
                .sum();
            amp.norm_sqr()
        })
    }

    #[test]
    fn gamma_constant() {
        assert!((GAMMA_MAX_VIOLATION - (11f64.sqrt() - 3f64.sqrt()) / 2.0).abs() < 1e-10);
    }

    #[test]
    fn cosine_sum_matches_amplitudes() {
        let mut rng = seeded(5);
        for d in 2..=5 {
            let st = SchmidtState::random(d, &mut rng);
            let s = QuditSettings {
                phi: [0.3, -1.1],
                theta: [0.7, 2.0],
            };
            let diff = qudit_distribution(&st, &s).max_abs_diff(&amplitude_table(&st, &s));
            assert!(diff < 1e-13, "d={d} diff={diff}");
        }
    }

    #[test]
    fn probs_gamma_matches_cosine_sum() {
        for i in 0..=20 {
            let g = i as f64 / 20.0;
            let p = qudit_slice(&SchmidtState::psi_gamma(g).unwrap()).unwrap();
            let c = probs_gamma(g);
            for f in 0..3 {
                assert!((p.p(f) - c[f]).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn named_p_nl_values() {
        let me = qudit_slice(&SchmidtState::maximally_entangled(3)).unwrap();
        assert!((me.p_nl() - 0.4365).abs() < 5e-4);
        let mv = qudit_slice(&SchmidtState::psi_gamma(GAMMA_MAX_VIOLATION).unwrap()).unwrap();
        assert!((mv.p_nl() - 0.4574).abs() < 5e-4);
        assert!(mv.p_nl() > me.p_nl());
        let q2 = qudit_slice(&SchmidtState::maximally_entangled(2)).unwrap();
        assert!((q2.p_nl() - (2f64.sqrt() - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn rejects_unnormalized() {
        assert!(SchmidtState::new(vec![0.5, 0.5]).is_err());
        assert!(SchmidtState::new(vec![-0.6, 0.8]).is_err());
        assert!(SchmidtState::normalized(&[0.0, 0.0]).is_err());
    }
}
