//! Bell-diagonal two-qubit attacks and Eve's conditional states.

use super::linalg::CMatrix;
use crate::error::{check_range, Error, Result};
use num_complex::Complex64;
use std::f64::consts::FRAC_1_SQRT_2;

/// Intrinsic QBER of the CHSH settings on `|Φ+⟩`, `sin²(π/8)`.
pub const Q0: f64 = 0.146_446_609_406_726_24;

const SIMPLEX_TOL: f64 = 1e-12;

/// `λ1 Φ+ + λ2 (Φ− + Ψ+) + λ4 Ψ−`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellDiagonalAttack {
    pub lambda1: f64,
    pub lambda2: f64,
    pub lambda4: f64,
}

impl BellDiagonalAttack {
    pub fn new(lambda1: f64, lambda2: f64, lambda4: f64) -> Result<Self> {
        for (name, v) in [("λ1", lambda1), ("λ2", lambda2), ("λ4", lambda4)] {
            check_range(name, v, 0.0, 1.0, "[0, 1]")?;
        }
        let total = lambda1 + 2.0 * lambda2 + lambda4;
        if (total - 1.0).abs() > SIMPLEX_TOL {
            return Err(Error::domain("λ1 + 2λ2 + λ4", total, "1 ± 1e-12"));
        }
        Ok(Self {
            lambda1,
            lambda2,
            lambda4,
        })
    }

    pub fn disturbance(&self) -> f64 {
        self.lambda2 + self.lambda4
    }

    /// Error rate of the pseudo-sifted CHSH key.
    pub fn qber_chsh(&self) -> f64 {
        0.5 * (1.0 - (self.lambda1 - self.lambda4) * FRAC_1_SQRT_2)
    }

    /// Error rate when both parties measure in the same Pauli basis.
    pub fn qber_bb84(&self) -> f64 {
        self.disturbance()
    }

    /// Weights in the order Φ+, Φ−, Ψ+, Ψ−.
    pub fn weights(&self) -> [f64; 4] {
        [self.lambda1, self.lambda2, self.lambda2, self.lambda4]
    }

    /// `Σ_k √λ_k |Bell_k⟩_AB |k⟩_E`, indexed `(2a + b)·4 + e`.
    pub fn purification(&self) -> Vec<Complex64> {
        let s = FRAC_1_SQRT_2;
        let bell: [[f64; 4]; 4] = [
            [s, 0.0, 0.0, s],
            [s, 0.0, 0.0, -s],
            [0.0, s, s, 0.0],
            [0.0, s, -s, 0.0],
        ];
        let mut psi = vec![Complex64::new(0.0, 0.0); 16];
        for (k, (&w, vec)) in self.weights().iter().zip(&bell).enumerate() {
            for (ab, &amp) in vec.iter().enumerate() {
                psi[ab * 4 + k] += Complex64::new(w.sqrt() * amp, 0.0);
            }
        }
        psi
    }

    /// `ρ_AB`, 4 × 4.
    pub fn rho_ab(&self) -> CMatrix {
        let psi = self.purification();
        CMatrix::from_fn(4, |i, j| {
            (0..4).map(|e| psi[i * 4 + e] * psi[j * 4 + e].conj()).sum()
        })
    }

    /// Unnormalized `tr_AB[(M ⊗ 1)|ψ⟩⟨ψ|]` for a 4 × 4 operator `M` on AB.
    pub fn eve_state(&self, m: &CMatrix) -> CMatrix {
        let psi = self.purification();
        let w = m.kron(&CMatrix::identity(4)).apply(&psi);
        CMatrix::from_fn(4, |e, f| {
            (0..4).map(|ab| w[ab * 4 + e] * w[ab * 4 + f].conj()).sum()
        })
    }

    /// `tr[M ρ_AB]`.
    pub fn prob(&self, m: &CMatrix) -> f64 {
        (m * &self.rho_ab()).trace().re
    }
}

/// `λ = ((1−D)², D(1−D), D²)`.
pub fn channel_from_disturbance(d: f64) -> Result<BellDiagonalAttack> {
    check_range("D", d, 0.0, 0.5, "[0, 1/2]")?;
    Ok(BellDiagonalAttack {
        lambda1: (1.0 - d) * (1.0 - d),
        lambda2: d * (1.0 - d),
        lambda4: d * d,
    })
}

/// Projector onto outcome `o` of the spin measurement at angle `theta` in the
/// x-z plane: `|0⟩_θ = (cos θ/2, sin θ/2)`, `|1⟩_θ = (−sin θ/2, cos θ/2)`.
pub fn spin_projector(theta: f64, o: usize) -> CMatrix {
    let (s, c) = (0.5 * theta).sin_cos();
    let v = if o == 0 { [c, s] } else { [-s, c] };
    CMatrix::from_fn(2, |i, j| Complex64::new(v[i] * v[j], 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::linalg::von_neumann_entropy;

    #[test]
    fn optimal_family_examples() {
        let a = channel_from_disturbance(0.0).unwrap();
        assert_eq!((a.lambda1, a.lambda2, a.lambda4), (1.0, 0.0, 0.0));
        assert!((a.qber_chsh() - Q0).abs() < 1e-15);
        assert!((Q0 - (1.0 - FRAC_1_SQRT_2) / 2.0).abs() < 1e-16);
        let b = channel_from_disturbance(0.11).unwrap();
        assert!((b.lambda1 - 0.7921).abs() < 1e-12);
        assert!((b.lambda2 - 0.0979).abs() < 1e-12);
        assert!((b.lambda4 - 0.0121).abs() < 1e-12);
        assert!(channel_from_disturbance(0.6).is_err());
        assert!(BellDiagonalAttack::new(0.5, 0.2, 0.2).is_err());
    }

    #[test]
    fn qber_relation() {
        for i in 0..=10 {
            let a = channel_from_disturbance(0.05 * i as f64).unwrap();
            let lhs = a.qber_bb84();
            let rhs = 2f64.sqrt() * (a.qber_chsh() - Q0);
            assert!((lhs - rhs).abs() < 1e-14);
        }
    }

    #[test]
    fn purification_marginals() {
        let a = channel_from_disturbance(0.13).unwrap();
        let rho = a.rho_ab();
        assert!((rho.trace().re - 1.0).abs() < 1e-14);
        let eve = a.eve_state(&CMatrix::identity(4));
        let ev = eve.hermitian_eigenvalues();
        let mut w = a.weights();
        w.sort_by(f64::total_cmp);
        for (l, x) in ev.iter().zip(w) {
            assert!((l - x).abs() < 1e-12);
        }
        assert!((von_neumann_entropy(&eve) - von_neumann_entropy(&rho)).abs() < 1e-12);
    }

    #[test]
    fn same_basis_error_is_disturbance() {
        let a = channel_from_disturbance(0.07).unwrap();
        for theta in [0.0, std::f64::consts::FRAC_PI_2] {
            let err: f64 = (0..2)
                .map(|o| a.prob(&spin_projector(theta, o).kron(&spin_projector(theta, 1 - o))))
                .sum();
            assert!((err - 0.07).abs() < 1e-13);
        }
    }
}
