//! Small dense complex matrices and Hermitian spectra.

use num_complex::Complex64;
use std::ops::{Add, Mul};

pub const JACOBI_TOL: f64 = 1e-12;

/// Square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// `|v⟩⟨v|`.
    pub fn outer(v: &[Complex64]) -> Self {
        Self::from_fn(v.len(), |i, j| v[i] * v[j].conj())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    pub fn kron(&self, other: &Self) -> Self {
        let m = other.n;
        Self::from_fn(self.n * m, |i, j| {
            self[(i / m, j / m)] * other[(i % m, j % m)]
        })
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    pub fn hermiticity_residual(&self) -> f64 {
        let mut r: f64 = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                r = r.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        r
    }

    /// Eigenvalues in ascending order. The matrix is assumed Hermitian; only
    /// its Hermitian part is diagonalized.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        // H = A + iB  ->  [[A, -B], [B, A]] has each eigenvalue of H twice.
        let n = self.n;
        let m = 2 * n;
        let mut s = vec![0.0; m * m];
        for i in 0..n {
            for j in 0..n {
                let h = 0.5 * (self[(i, j)] + self[(j, i)].conj());
                s[i * m + j] = h.re;
                s[(i + n) * m + j + n] = h.re;
                s[i * m + j + n] = -h.im;
                s[(i + n) * m + j] = h.im;
            }
        }
        let mut ev = jacobi_eigenvalues(&mut s, m);
        ev.sort_by(f64::total_cmp);
        ev.into_iter().step_by(2).collect()
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n);
        CMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n);
        CMatrix::from_fn(self.n, |i, j| {
            (0..self.n).map(|k| self[(i, k)] * rhs[(k, j)]).sum()
        })
    }
}

/// Cyclic Jacobi on a real symmetric row-major `m × m` matrix, in place.
fn jacobi_eigenvalues(a: &mut [f64], m: usize) -> Vec<f64> {
    let scale = a.iter().map(|v| v * v).sum::<f64>().sqrt().max(1e-300);
    for _sweep in 0..100 {
        let off: f64 = (0..m)
            .flat_map(|i| (0..m).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * m + j] * a[i * m + j])
            .sum::<f64>()
            .sqrt();
        if off <= JACOBI_TOL * scale {
            break;
        }
        for p in 0..m {
            for q in p + 1..m {
                let apq = a[p * m + q];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q * m + q] - a[p * m + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..m {
                    let akp = a[k * m + p];
                    let akq = a[k * m + q];
                    a[k * m + p] = c * akp - s * akq;
                    a[k * m + q] = s * akp + c * akq;
                }
                for k in 0..m {
                    let apk = a[p * m + k];
                    let aqk = a[q * m + k];
                    a[p * m + k] = c * apk - s * aqk;
                    a[q * m + k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..m).map(|i| a[i * m + i]).collect()
}

/// Von Neumann entropy in bits of `rho / tr(rho)`; zero for a null matrix.
pub fn von_neumann_entropy(rho: &CMatrix) -> f64 {
    let tr = rho.trace().re;
    if tr <= 0.0 {
        return 0.0;
    }
    rho.hermitian_eigenvalues()
        .into_iter()
        .map(|l| l / tr)
        .filter(|&l| l > 1e-15)
        .map(|l| -l * l.log2())
        .sum()
}

/// Holevo quantity of the ensemble given by unnormalized states `rho_i`
/// (weights are their traces).
pub fn holevo(states: &[CMatrix]) -> f64 {
    let total_tr: f64 = states.iter().map(|r| r.trace().re).sum();
    let mut sum = states[0].clone();
    for r in &states[1..] {
        sum = &sum + r;
    }
    let conditional: f64 = states
        .iter()
        .map(|r| r.trace().re / total_tr * von_neumann_entropy(r))
        .sum();
    von_neumann_entropy(&sum) - conditional
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn pauli_y_spectrum() {
        let y = CMatrix::from_fn(2, |i, j| match (i, j) {
            (0, 1) => c(0.0, -1.0),
            (1, 0) => c(0.0, 1.0),
            _ => c(0.0, 0.0),
        });
        let ev = y.hermitian_eigenvalues();
        assert!((ev[0] + 1.0).abs() < 1e-12 && (ev[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn complex_hermitian_trace_and_det() {
        let h = CMatrix::from_fn(3, |i, j| match (i, j) {
            (0, 0) => c(2.0, 0.0),
            (1, 1) => c(-1.0, 0.0),
            (2, 2) => c(0.5, 0.0),
            (0, 1) => c(0.3, 0.7),
            (1, 0) => c(0.3, -0.7),
            (1, 2) => c(-0.2, 0.1),
            (2, 1) => c(-0.2, -0.1),
            (0, 2) => c(0.0, 0.4),
            (2, 0) => c(0.0, -0.4),
            _ => unreachable!(),
        });
        let ev = h.hermitian_eigenvalues();
        assert!((ev.iter().sum::<f64>() - 1.5).abs() < 1e-12);
        let h2 = &h * &h;
        let sq: f64 = ev.iter().map(|l| l * l).sum();
        assert!((sq - h2.trace().re).abs() < 1e-12);
    }

    #[test]
    fn pure_state_entropy_is_zero() {
        let s = 0.5f64.sqrt();
        let rho = CMatrix::outer(&[c(s, 0.0), c(0.0, s)]);
        assert!(von_neumann_entropy(&rho).abs() < 1e-12);
        assert!((von_neumann_entropy(&CMatrix::identity(4)) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn holevo_of_orthogonal_pure_states_is_one() {
        let r0 = CMatrix::outer(&[c(1.0, 0.0), c(0.0, 0.0)]).scale(0.5);
        let r1 = CMatrix::outer(&[c(0.0, 0.0), c(1.0, 0.0)]).scale(0.5);
        assert!((holevo(&[r0.clone(), r1]) - 1.0).abs() < 1e-12);
        assert!(holevo(&[r0.clone(), r0]).abs() < 1e-12);
    }

    #[test]
    fn kron_dimensions() {
        let k = CMatrix::identity(2).kron(&CMatrix::identity(3));
        assert_eq!(k.dim(), 6);
        assert_eq!(k, CMatrix::identity(6));
    }
}
