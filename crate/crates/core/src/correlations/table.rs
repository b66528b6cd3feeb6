use crate::error::{Error, Result};

/// Tolerance for normalization, no-signalling and positivity residuals.
pub const VALIDATION_TOL: f64 = 1e-12;

/// `P(a,b|x,y)` for `x, y ∈ {0,1}` and `a, b ∈ {0..d-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationTable {
    d: usize,
    probs: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationReport {
    /// `max_{x,y} |Σ_{a,b} P(a,b|x,y) - 1|`
    pub normalization: f64,
    /// Largest difference between marginals that should not depend on the
    /// remote input.
    pub no_signalling: f64,
    /// Magnitude of the most negative entry (0 when all are nonnegative).
    pub positivity: f64,
}

impl ValidationReport {
    pub fn passes(&self) -> bool {
        self.passes_with(VALIDATION_TOL)
    }

    pub fn passes_with(&self, tol: f64) -> bool {
        self.normalization <= tol && self.no_signalling <= tol && self.positivity <= tol
    }

    pub fn max_residual(&self) -> f64 {
        self.normalization
            .max(self.no_signalling)
            .max(self.positivity)
    }
}

#[inline]
fn index(d: usize, a: usize, b: usize, x: usize, y: usize) -> usize {
    ((x * 2 + y) * d + a) * d + b
}

impl CorrelationTable {
    /// Build from a flat vector indexed as `((x*2 + y)*d + a)*d + b`.
    pub fn new(d: usize, probs: Vec<f64>) -> Result<Self> {
        if d < 2 {
            return Err(Error::Dimension(format!("output cardinality d = {d} < 2")));
        }
        if probs.len() != 4 * d * d {
            return Err(Error::Dimension(format!(
                "expected {} entries for d = {d}, got {}",
                4 * d * d,
                probs.len()
            )));
        }
        if let Some(v) = probs.iter().find(|v| !v.is_finite()) {
            return Err(Error::domain("probability", *v, "finite reals"));
        }
        Ok(Self { d, probs })
    }

    pub fn zeros(d: usize) -> Self {
        assert!(d >= 2, "d must be at least 2");
        Self {
            d,
            probs: vec![0.0; 4 * d * d],
        }
    }

    /// Build from `f(a, b, x, y)`.
    pub fn from_fn(d: usize, mut f: impl FnMut(usize, usize, usize, usize) -> f64) -> Self {
        let mut t = Self::zeros(d);
        for x in 0..2 {
            for y in 0..2 {
                for a in 0..d {
                    for b in 0..d {
                        t.probs[index(d, a, b, x, y)] = f(a, b, x, y);
                    }
                }
            }
        }
        t
    }

    /// Table whose `P(a,b|x,y)` depends only on `Δ = a - b (mod d)`:
    /// `P(a, a-Δ|x,y) = profile(x, y)[Δ] / d`.
    pub fn from_delta_profiles(d: usize, profile: impl Fn(usize, usize) -> Vec<f64>) -> Self {
        let mut t = Self::zeros(d);
        for x in 0..2 {
            for y in 0..2 {
                let p = profile(x, y);
                assert_eq!(p.len(), d);
                for a in 0..d {
                    for (delta, v) in p.iter().enumerate() {
                        let b = (a + d - delta) % d;
                        t.probs[index(d, a, b, x, y)] = v / d as f64;
                    }
                }
            }
        }
        t
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.probs
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize, x: usize, y: usize) -> f64 {
        self.probs[index(self.d, a, b, x, y)]
    }

    #[inline]
    pub fn set(&mut self, a: usize, b: usize, x: usize, y: usize, v: f64) {
        let d = self.d;
        self.probs[index(d, a, b, x, y)] = v;
    }

    #[inline]
    pub fn add(&mut self, a: usize, b: usize, x: usize, y: usize, v: f64) {
        let d = self.d;
        self.probs[index(d, a, b, x, y)] += v;
    }

    /// `P(a|x)` computed with Bob's input `y`.
    pub fn marginal_a(&self, a: usize, x: usize, y: usize) -> f64 {
        (0..self.d).map(|b| self.get(a, b, x, y)).sum()
    }

    /// `P(b|y)` computed with Alice's input `x`.
    pub fn marginal_b(&self, b: usize, x: usize, y: usize) -> f64 {
        (0..self.d).map(|a| self.get(a, b, x, y)).sum()
    }

    /// `P(a - b = Δ mod d | x, y)`.
    pub fn delta_prob(&self, delta: usize, x: usize, y: usize) -> f64 {
        let d = self.d;
        let delta = delta % d;
        (0..d).map(|a| self.get(a, (a + d - delta) % d, x, y)).sum()
    }

    pub fn validate(&self) -> ValidationReport {
        let d = self.d;
        let mut normalization = 0.0_f64;
        let mut no_signalling = 0.0_f64;
        let mut positivity = 0.0_f64;
        for x in 0..2 {
            for y in 0..2 {
                let total: f64 = (0..d)
                    .flat_map(|a| (0..d).map(move |b| (a, b)))
                    .map(|(a, b)| self.get(a, b, x, y))
                    .sum();
                normalization = normalization.max((total - 1.0).abs());
            }
        }
        for i in 0..d {
            for x in 0..2 {
                let diff = (self.marginal_a(i, x, 0) - self.marginal_a(i, x, 1)).abs();
                no_signalling = no_signalling.max(diff);
            }
            for y in 0..2 {
                let diff = (self.marginal_b(i, 0, y) - self.marginal_b(i, 1, y)).abs();
                no_signalling = no_signalling.max(diff);
            }
        }
        for v in &self.probs {
            positivity = positivity.max(-v);
        }
        ValidationReport {
            normalization,
            no_signalling,
            positivity,
        }
    }

    /// Convex (or affine) combination `Σ w_i T_i`; all tables must share `d`.
    pub fn mix<'a, I>(d: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (f64, &'a CorrelationTable)>,
    {
        let mut out = Self::zeros(d);
        for (w, t) in terms {
            if t.d != d {
                return Err(Error::Dimension(format!(
                    "cannot mix a d = {} table into d = {d}",
                    t.d
                )));
            }
            for (o, v) in out.probs.iter_mut().zip(&t.probs) {
                *o += w * v;
            }
        }
        Ok(out)
    }

    /// Largest entrywise difference.
    pub fn max_abs_diff(&self, other: &CorrelationTable) -> f64 {
        if self.d != other.d {
            return f64::INFINITY;
        }
        self.probs
            .iter()
            .zip(&other.probs)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}
