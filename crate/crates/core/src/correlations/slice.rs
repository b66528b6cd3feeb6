use super::table::CorrelationTable;
use crate::error::{Error, Result};

/// Point on the symmetric slice: `P(a, a-Δ | x,y) = p_f / d` with
/// `f = (-1)^{x+y} Δ + xy (mod d)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SlicePoint {
    pf: Vec<f64>,
}

const SUM_TOL: f64 = 1e-12;

/// Index `f` of the slice weight used by `(Δ, x, y)`.
pub(crate) fn slice_index(d: usize, delta: usize, x: usize, y: usize) -> usize {
    let delta = delta % d;
    let signed = if (x + y).is_multiple_of(2) {
        delta
    } else {
        (d - delta) % d
    };
    (signed + x * y) % d
}

impl SlicePoint {
    pub fn new(pf: Vec<f64>) -> Result<Self> {
        let d = pf.len();
        if d < 2 {
            return Err(Error::Dimension(format!("slice needs d ≥ 2, got {d}")));
        }
        for v in &pf {
            if !v.is_finite() || *v < -SUM_TOL {
                return Err(Error::domain("p_f", *v, "[0, 1]"));
            }
        }
        let total: f64 = pf.iter().sum();
        if (total - 1.0).abs() > SUM_TOL {
            return Err(Error::domain("Σ p_f", total, "1"));
        }
        Ok(Self { pf })
    }

    /// Ternary point from `(p0, p1)`, with `p2 = 1 - p0 - p1`.
    pub fn ternary(p0: f64, p1: f64) -> Result<Self> {
        Self::new(vec![p0, p1, 1.0 - p0 - p1])
    }

    /// Binary point with CHSH violation `p_nl`: `p0 = (3 + p_nl)/4`.
    pub fn binary_from_pnl(p_nl: f64) -> Result<Self> {
        crate::error::check_range("p_nl", p_nl, -3.0, 1.0, "[-3, 1]")?;
        let p0 = (3.0 + p_nl) / 4.0;
        Self::new(vec![p0, 1.0 - p0])
    }

    pub fn d(&self) -> usize {
        self.pf.len()
    }

    pub fn pf(&self) -> &[f64] {
        &self.pf
    }

    pub fn p(&self, f: usize) -> f64 {
        self.pf[f % self.pf.len()]
    }

    /// `P(a - b = Δ | x,y)`.
    pub fn delta_prob(&self, delta: usize, x: usize, y: usize) -> f64 {
        self.pf[slice_index(self.d(), delta, x, y)]
    }

    pub fn table(&self) -> CorrelationTable {
        let d = self.d();
        CorrelationTable::from_delta_profiles(d, |x, y| {
            (0..d).map(|delta| self.delta_prob(delta, x, y)).collect()
        })
    }

    /// Closed-form nonlocal weight
    /// `-2 + Σ_Δ (1 - Δ/(d-1)) [3 p_{-Δ} - p_{Δ+1}]`.
    pub fn p_nl(&self) -> f64 {
        let d = self.d();
        let mut s = -2.0;
        for delta in 0..d {
            let w = 1.0 - delta as f64 / (d as f64 - 1.0);
            s += w * (3.0 * self.p((d - delta) % d) - self.p(delta + 1));
        }
        s
    }

    /// `⟨I_d, P⟩ = (d-1)/d · p_nl`.
    pub fn cglmp(&self) -> f64 {
        let d = self.d() as f64;
        (d - 1.0) / d * self.p_nl()
    }

    /// Read a slice point off a table, failing if the table deviates from the
    /// slice by more than `tol` anywhere.
    pub fn from_table(table: &CorrelationTable, tol: f64) -> Result<Self> {
        let d = table.d();
        let pf: Vec<f64> = (0..d).map(|delta| table.delta_prob(delta, 0, 0)).collect();
        let point = Self { pf };
        let dev = point.table().max_abs_diff(table);
        if dev > tol {
            return Err(Error::Domain {
                name: "slice deviation",
                value: dev,
                range: "≤ tolerance",
            });
        }
        Ok(point)
    }

    pub fn is_on_slice(table: &CorrelationTable, tol: f64) -> bool {
        Self::from_table(table, tol).is_ok()
    }

    pub fn max_abs_diff(&self, other: &SlicePoint) -> f64 {
        if self.d() != other.d() {
            return f64::INFINITY;
        }
        self.pf
            .iter()
            .zip(&other.pf)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}
