use super::strategy::DeterministicStrategy;
use super::table::CorrelationTable;
use crate::error::{Error, Result};

/// `Σ_{x,y} P(a ⊕ b = xy | x,y)`; local points are bounded by 3.
pub fn chsh_value(table: &CorrelationTable) -> Result<f64> {
    if table.d() != 2 {
        return Err(Error::Dimension(format!(
            "CHSH needs binary outputs, got d = {}",
            table.d()
        )));
    }
    let mut s = 0.0;
    for x in 0..2 {
        for y in 0..2 {
            for a in 0..2 {
                s += table.get(a, a ^ (x & y), x, y);
            }
        }
    }
    Ok(s)
}

/// Full `2d × 2d` CGLMP coefficient array, same layout as [`CorrelationTable`].
///
/// The constant offset of the inequality is spread over the four blocks
/// (`-1/2` per entry), so on normalized tables `⟨I_d, P⟩` is a plain
/// elementwise sum.
#[derive(Debug, Clone, PartialEq)]
pub struct CglmpArray {
    d: usize,
    coeffs: Vec<f64>,
}

impl CglmpArray {
    pub fn new(d: usize) -> Self {
        assert!(d >= 2, "d must be at least 2");
        let c = CorrelationTable::from_fn(d, |a, b, x, y| {
            let raw = match (x, y) {
                (0, 0) => f64::from(u8::from(b >= a)),
                (0, 1) | (1, 0) => f64::from(u8::from(a >= b)),
                _ => -f64::from(u8::from(a >= b)),
            };
            raw - 0.5
        });
        Self {
            d,
            coeffs: c.as_slice().to_vec(),
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize, x: usize, y: usize) -> f64 {
        let d = self.d;
        self.coeffs[((x * 2 + y) * d + a) * d + b]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn dot(&self, table: &CorrelationTable) -> Result<f64> {
        if table.d() != self.d {
            return Err(Error::Dimension(format!(
                "array is d = {}, table is d = {}",
                self.d,
                table.d()
            )));
        }
        Ok(self
            .coeffs
            .iter()
            .zip(table.as_slice())
            .map(|(c, p)| c * p)
            .sum())
    }
}

pub fn cglmp_coefficients(d: usize) -> CglmpArray {
    CglmpArray::new(d)
}

/// `⟨I_d, P⟩`; nonpositive on the local polytope, `(d-1)/d` on `PR_{2,d}`.
pub fn cglmp_value(table: &CorrelationTable) -> f64 {
    CglmpArray::new(table.d())
        .dot(table)
        .expect("array built for the table's own d")
}

/// The same quantity through the `Ĩ_d` form, written with
/// `P(Δ|xy) = P(a - b = Δ mod d | x,y)` and rescaled by `(d-1)/(2d)·(Ĩ_d - 2)`.
pub fn cglmp_value_tilde(table: &CorrelationTable) -> f64 {
    let d = table.d();
    let di = d as i64;
    let p = |delta: i64, x: usize, y: usize| table.delta_prob(delta.rem_euclid(di) as usize, x, y);
    let mut tilde = 0.0;
    for k in 0..(d / 2) as i64 {
        let w = 1.0 - 2.0 * k as f64 / (d as f64 - 1.0);
        let plus = p(-k, 0, 0) + p(k, 0, 1) + p(k, 1, 0) + p(-k - 1, 1, 1);
        let minus = p(k + 1, 0, 0) + p(-k - 1, 0, 1) + p(-k - 1, 1, 0) + p(k, 1, 1);
        tilde += w * (plus - minus);
    }
    (d as f64 - 1.0) / (2.0 * d as f64) * (tilde - 2.0)
}

/// CGLMP value of a deterministic point.
pub fn deterministic_cglmp(s: &DeterministicStrategy) -> f64 {
    let ind = |c: bool| f64::from(u8::from(c));
    -2.0 + ind(s.b0 >= s.a0) + ind(s.a0 >= s.b1) + ind(s.a1 >= s.b0) - ind(s.a1 >= s.b1)
}
