use std::collections::BTreeMap;

use super::named::{pr_2d, pr_box};
use super::slice::SlicePoint;
use super::strategy::{chsh_facet_strategy, D3Label, DeterministicStrategy};
use super::table::CorrelationTable;
use crate::error::{Error, Result};

/// Slack allowed on weights before a point counts as outside the sector.
pub const FACET_TOL: f64 = 1e-10;

/// Eve's mixture: one nonlocal extremal point plus deterministic strategies.
#[derive(Debug, Clone, PartialEq)]
pub struct EveDecomposition {
    pub d: usize,
    pub p_nl: f64,
    pub nonlocal: CorrelationTable,
    pub local_weights: BTreeMap<DeterministicStrategy, f64>,
}

impl EveDecomposition {
    pub fn p_local(&self) -> f64 {
        self.local_weights.values().sum()
    }

    pub fn total_weight(&self) -> f64 {
        self.p_nl + self.p_local()
    }

    pub fn weight(&self, s: &DeterministicStrategy) -> f64 {
        self.local_weights.get(s).copied().unwrap_or(0.0)
    }

    pub fn recombine(&self) -> CorrelationTable {
        let tables: Vec<(f64, CorrelationTable)> = self
            .local_weights
            .iter()
            .map(|(s, w)| (*w, s.table(self.d)))
            .collect();
        CorrelationTable::mix(
            self.d,
            std::iter::once((self.p_nl, &self.nonlocal)).chain(tables.iter().map(|(w, t)| (*w, t))),
        )
        .expect("components share d")
    }

    pub fn min_weight(&self) -> f64 {
        self.local_weights
            .values()
            .copied()
            .fold(self.p_nl, f64::min)
    }
}

/// Choice of Eve's decomposition of the two-relation part of a ternary point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum M2Family {
    /// All weight on the six knowledge-set points.
    LOptimal,
    /// Free parameters `p_2^r` and `p_{e,1}^r`, `r = 0, 1, 2`.
    General { p2: [f64; 3], pe1: [f64; 3] },
}

impl M2Family {
    /// Weights (summing to 1) on strategies reproducing `(1/2, 0, 1/2)`.
    pub fn weights(&self) -> Result<Vec<(DeterministicStrategy, f64)>> {
        let (p2, pe1) = match *self {
            M2Family::LOptimal => ([1.0 / 6.0; 3], [0.0; 3]),
            M2Family::General { p2, pe1 } => (p2, pe1),
        };
        let sixth = 1.0 / 6.0;
        let mut out = Vec::with_capacity(18);
        for r in 0..3 {
            let next = pe1[(r + 1) % 3];
            let ws = [
                (D3Label::Two(1), p2[r]),
                (D3Label::Two(2), p2[r]),
                (D3Label::Outside(1), pe1[r]),
                (D3Label::Outside(2), sixth - p2[r] - pe1[r]),
                (D3Label::Outside(3), sixth - p2[r] - next),
                (D3Label::Outside(4), next),
            ];
            for (label, w) in ws {
                if w < -FACET_TOL {
                    return Err(Error::DecompositionInfeasible(format!(
                        "{label:?}^{r} would get weight {w}"
                    )));
                }
                if w != 0.0 {
                    out.push((label.strategy(r), w));
                }
            }
        }
        Ok(out)
    }
}

/// Binary decomposition on the PR box and the eight facet strategies.
pub fn decompose_chsh(table: &CorrelationTable) -> Result<EveDecomposition> {
    if table.d() != 2 {
        return Err(Error::Dimension(format!(
            "binary decomposition needs d = 2, got {}",
            table.d()
        )));
    }
    let strategies: Vec<DeterministicStrategy> = (1..=4)
        .flat_map(|j| (0..2).map(move |r| chsh_facet_strategy(j, r)))
        .collect();
    let pr = pr_box();
    let mut columns: Vec<Vec<f64>> = vec![with_norm_row(&pr)];
    columns.extend(strategies.iter().map(|s| with_norm_row(&s.table(2))));
    let mut rhs = table.as_slice().to_vec();
    rhs.push(1.0);

    let w = least_squares(&columns, &rhs)?;
    let dec = EveDecomposition {
        d: 2,
        p_nl: w[0],
        nonlocal: pr,
        local_weights: strategies.into_iter().zip(w[1..].iter().copied()).collect(),
    };
    let residual = dec.recombine().max_abs_diff(table);
    if residual > FACET_TOL {
        return Err(Error::DecompositionInfeasible(format!(
            "table is not in the span of the facet sector (residual {residual:e})"
        )));
    }
    if dec.min_weight() < -FACET_TOL {
        return Err(Error::DecompositionInfeasible(format!(
            "point lies outside the facet sector (minimum weight {:e})",
            dec.min_weight()
        )));
    }
    Ok(dec)
}

fn with_norm_row(t: &CorrelationTable) -> Vec<f64> {
    let mut v = t.as_slice().to_vec();
    v.push(1.0);
    v
}

/// Solves `min ‖Σ_j w_j c_j - rhs‖` through the normal equations.
fn least_squares(columns: &[Vec<f64>], rhs: &[f64]) -> Result<Vec<f64>> {
    let n = columns.len();
    let dot = |u: &[f64], v: &[f64]| u.iter().zip(v).map(|(a, b)| a * b).sum::<f64>();
    let mut m: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut row: Vec<f64> = (0..n).map(|j| dot(&columns[i], &columns[j])).collect();
            row.push(dot(&columns[i], rhs));
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))
            .expect("nonempty range");
        if m[pivot][col].abs() < 1e-14 {
            return Err(Error::DecompositionInfeasible(
                "extremal points are linearly dependent".into(),
            ));
        }
        m.swap(col, pivot);
        for row in 0..n {
            if row != col {
                let f = m[row][col] / m[col][col];
                if f != 0.0 {
                    for k in col..=n {
                        m[row][k] -= f * m[col][k];
                    }
                }
            }
        }
    }
    Ok((0..n).map(|i| m[i][n] / m[i][i]).collect())
}

/// Decomposition of a slice point with Eve's preferred two-relation split.
pub fn decompose_slice(point: &SlicePoint) -> Result<EveDecomposition> {
    decompose_slice_with(point, &M2Family::LOptimal)
}

/// Ternary slice point as `p_nl PR_{2,3} + 2p_2 M_2 + 4p_1 M_3`, where
/// `M_2 = (1/2, 0, 1/2)` is split by `family` and `M_3 = (3/4, 1/4, 0)`
/// spreads evenly over the twelve three-relation strategies.
pub fn decompose_slice_with(point: &SlicePoint, family: &M2Family) -> Result<EveDecomposition> {
    match point.d() {
        2 => decompose_chsh(&point.table()),
        3 => {
            let (p1, p2) = (point.pf()[1], point.pf()[2]);
            let p_nl = point.p_nl();
            if p_nl < -FACET_TOL || p1 < -FACET_TOL || p2 < -FACET_TOL {
                return Err(Error::DecompositionInfeasible(format!(
                    "ternary point {:?} lies outside the triangle (p_nl = {p_nl})",
                    point.pf()
                )));
            }
            let mut local_weights = BTreeMap::new();
            for j in 1..=4u8 {
                for r in 0..3 {
                    *local_weights
                        .entry(D3Label::Three(j).strategy(r))
                        .or_insert(0.0) += p1 / 3.0;
                }
            }
            for (s, w) in family.weights()? {
                *local_weights.entry(s).or_insert(0.0) += 2.0 * p2 * w;
            }
            local_weights.retain(|_, w| *w != 0.0);
            Ok(EveDecomposition {
                d: 3,
                p_nl,
                nonlocal: pr_2d(3)?,
                local_weights,
            })
        }
        d => Err(Error::Unsupported(format!(
            "slice decomposition is implemented for d = 2, 3 (got {d})"
        ))),
    }
}

/// Dispatch on the table's dimension.
pub fn decompose(table: &CorrelationTable) -> Result<EveDecomposition> {
    match table.d() {
        2 => decompose_chsh(table),
        3 => decompose_slice(&SlicePoint::from_table(table, 1e-12)?),
        d => Err(Error::Unsupported(format!(
            "decomposition is implemented for d = 2, 3 (got {d})"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlations::{chsh_value, isotropic, FacetClass};

    #[test]
    fn isotropic_weights_are_equal() {
        for &p in &[0.0, 0.2, 0.5, 1.0] {
            let t = isotropic(p).unwrap();
            let dec = decompose_chsh(&t).unwrap();
            assert!((dec.p_nl - p).abs() < 1e-12);
            for w in dec.local_weights.values() {
                assert!((w - (1.0 - p) / 8.0).abs() < 1e-12);
            }
            assert!((dec.p_nl - (chsh_value(&t).unwrap() - 3.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn point_below_other_facet_is_rejected() {
        // PR box with relabelled Bob output violates a different facet.
        let t =
            CorrelationTable::from_fn(2, |a, b, x, y| if a ^ b ^ 1 == x & y { 0.5 } else { 0.0 });
        assert!(matches!(
            decompose_chsh(&t),
            Err(Error::DecompositionInfeasible(_))
        ));
    }

    #[test]
    fn m3_unique_twelfths() {
        let s = SlicePoint::ternary(0.75, 0.25).unwrap();
        let dec = decompose_slice(&s).unwrap();
        assert!(dec.p_nl.abs() < 1e-15);
        assert_eq!(dec.local_weights.len(), 12);
        for (strat, w) in &dec.local_weights {
            assert_eq!(FacetClass::of(strat, 3), FacetClass::Three);
            assert!((w - 1.0 / 12.0).abs() < 1e-15);
        }
        assert!(dec.recombine().max_abs_diff(&s.table()) < 1e-12);
    }

    #[test]
    fn m2_family_recombines() {
        let m2 = SlicePoint::new(vec![0.5, 0.0, 0.5]).unwrap();
        let general = M2Family::General {
            p2: [0.1, 0.05, 0.12],
            pe1: [0.02, 0.03, 0.01],
        };
        for fam in [M2Family::LOptimal, general] {
            let dec = decompose_slice_with(&m2, &fam).unwrap();
            assert!(dec.recombine().max_abs_diff(&m2.table()) < 1e-12, "{fam:?}");
            assert!((dec.total_weight() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn m2_family_rejects_negative_weights() {
        let bad = M2Family::General {
            p2: [0.2, 0.1, 0.1],
            pe1: [0.0; 3],
        };
        assert!(bad.weights().is_err());
    }

    #[test]
    fn outside_triangle_rejected() {
        let s = SlicePoint::ternary(0.3, 0.4).unwrap();
        assert!(decompose_slice(&s).is_err());
        assert!(decompose(&pr_2d(4).unwrap()).is_err());
    }
}
