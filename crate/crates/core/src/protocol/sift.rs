use crate::correlations::{CorrelationTable, EveDecomposition};
use crate::error::{check_range, Result};

/// `P(y = 0)`; every rate in the crate assumes this value.
pub const DEFAULT_XI: f64 = 0.5;

/// `P(a, b' | x)` after Bob's correction, for each of Alice's inputs.
#[derive(Debug, Clone, PartialEq)]
pub struct SiftedDistribution {
    d: usize,
    xi: f64,
    /// `per_x[x][a * d + b']`
    per_x: [Vec<f64>; 2],
}

impl SiftedDistribution {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn get(&self, a: usize, b: usize, x: usize) -> f64 {
        self.per_x[x][a * self.d + b]
    }

    pub fn joint(&self, x: usize) -> &[f64] {
        &self.per_x[x]
    }

    /// `P(a - b' = Δ | x)`.
    pub fn delta_prob(&self, delta: usize, x: usize) -> f64 {
        let d = self.d;
        (0..d)
            .map(|a| self.get(a, (a + d - delta % d) % d, x))
            .sum()
    }

    /// `e_AB(Δ)` for `Δ = 0..d-1`, averaged over `x`.
    pub fn delta_profile(&self) -> Vec<f64> {
        (0..self.d)
            .map(|delta| 0.5 * (self.delta_prob(delta, 0) + self.delta_prob(delta, 1)))
            .collect()
    }

    /// `P(a ≠ b' | x)`.
    pub fn error_rate(&self, x: usize) -> f64 {
        1.0 - self.delta_prob(0, x)
    }
}

/// Average over Bob's input with `P(y=0) = xi`, applying `b → b - xy`.
pub fn pseudo_sift(table: &CorrelationTable, xi: f64) -> Result<SiftedDistribution> {
    check_range("xi", xi, 0.0, 1.0, "[0, 1]")?;
    let d = table.d();
    let per_x = [0, 1].map(|x| {
        let mut m = vec![0.0; d * d];
        for (y, wy) in [(0, xi), (1, 1.0 - xi)] {
            for a in 0..d {
                for b in 0..d {
                    let bp = (b + d - (x * y) % d) % d;
                    m[a * d + bp] += wy * table.get(a, b, x, y);
                }
            }
        }
        m
    });
    Ok(SiftedDistribution { d, xi, per_x })
}

pub fn pseudo_sift_decomposition(dec: &EveDecomposition, xi: f64) -> Result<SiftedDistribution> {
    pseudo_sift(&dec.recombine(), xi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlations::{isotropic, pr_box, SlicePoint};

    #[test]
    fn pr_box_becomes_perfect_correlation() {
        let s = pseudo_sift(&pr_box(), DEFAULT_XI).unwrap();
        for x in 0..2 {
            assert!(s.error_rate(x).abs() < 1e-15);
            assert!((s.get(0, 0, x) - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn isotropic_error_is_quarter_of_local_weight() {
        let p_nl = 0.3;
        let s = pseudo_sift(&isotropic(p_nl).unwrap(), DEFAULT_XI).unwrap();
        for x in 0..2 {
            assert!((s.error_rate(x) - (1.0 - p_nl) / 4.0).abs() < 1e-15);
        }
    }

    #[test]
    fn slice_profile_is_symmetrized() {
        let p = SlicePoint::new(vec![0.6, 0.25, 0.1, 0.05]).unwrap();
        let s = pseudo_sift(&p.table(), DEFAULT_XI).unwrap();
        for x in 0..2 {
            for delta in 0..4 {
                let want = (p.p(delta) + p.p(4 - delta)) / 2.0;
                assert!((s.delta_prob(delta, x) - want).abs() < 1e-15);
                for a in 0..4 {
                    let b = (a + 4 - delta) % 4;
                    assert!((s.get(a, b, x) - want / 4.0).abs() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn ternary_error_split() {
        let p = SlicePoint::ternary(0.8, 0.15).unwrap();
        let prof = pseudo_sift(&p.table(), DEFAULT_XI).unwrap().delta_profile();
        assert!((prof[1] - 0.1).abs() < 1e-15);
        assert!((prof[2] - 0.1).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_xi() {
        assert!(pseudo_sift(&pr_box(), 1.5).is_err());
    }
}
