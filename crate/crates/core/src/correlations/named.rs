use super::slice::SlicePoint;
use super::strategy::{chsh_facet_strategy, DeterministicStrategy};
use super::table::CorrelationTable;
use crate::error::{check_range, Error, Result};

/// Binary PR box: `P(a,b|x,y) = 1/2` when `a ⊕ b = xy`.
pub fn pr_box() -> CorrelationTable {
    CorrelationTable::from_fn(2, |a, b, x, y| if a ^ b == x & y { 0.5 } else { 0.0 })
}

/// `P(a,b|x,y) = 1/d` when `b - a = xy (mod d)`.
pub fn pr_2d(d: usize) -> Result<CorrelationTable> {
    if d < 2 {
        return Err(Error::Dimension(format!("d = {d} < 2")));
    }
    Ok(shift_box(d, d, |x, y| x * y))
}

/// Box on outputs `0..dp` with `b - a = g(x,y) (mod dp)`, embedded in `d` outputs.
pub fn shift_box(d: usize, dp: usize, g: impl Fn(usize, usize) -> usize) -> CorrelationTable {
    let w = 1.0 / dp as f64;
    CorrelationTable::from_fn(d, |a, b, x, y| {
        if a < dp && b < dp && b == (a + g(x, y)) % dp {
            w
        } else {
            0.0
        }
    })
}

/// `PR_{2,dp}` on the first `dp` of `d` outputs: identity blocks except
/// the cyclic shift `b = a + 1 (mod dp)` at `x = y = 1`.
pub fn embedded_pr(d: usize, dp: usize) -> Result<CorrelationTable> {
    if dp < 2 || dp > d {
        return Err(Error::Dimension(format!(
            "embedded dimension {dp} must lie in 2..={d}"
        )));
    }
    Ok(shift_box(d, dp, |x, y| x * y))
}

/// Binary isotropic point: `p_nl` on the PR box, `(1 - p_nl)/8` on each
/// facet strategy.
pub fn isotropic(p_nl: f64) -> Result<CorrelationTable> {
    check_range("p_nl", p_nl, 0.0, 1.0, "[0, 1]")?;
    let pr = pr_box();
    let locals: Vec<CorrelationTable> = (1..=4)
        .flat_map(|j| (0..2).map(move |r| chsh_facet_strategy(j, r).table(2)))
        .collect();
    let wl = (1.0 - p_nl) / 8.0;
    CorrelationTable::mix(
        2,
        std::iter::once((p_nl, &pr)).chain(locals.iter().map(|t| (wl, t))),
    )
}

/// Noiseless BB84 statistics, with Alice's input `0 = X, 1 = Z` and Bob's
/// `0 = Z, 1 = X`: perfectly correlated uniform bits in equal bases,
/// independent uniform bits otherwise.
pub fn bb84_noiseless() -> CorrelationTable {
    CorrelationTable::from_fn(2, |a, b, x, y| {
        if x != y {
            if a == b {
                0.5
            } else {
                0.0
            }
        } else {
            0.25
        }
    })
}

/// Equal mixture of the three binary PR-like boxes living on output pairs
/// `{0,1}, {0,2}, {1,2}` of a ternary system.
pub fn m_pr_mixture() -> CorrelationTable {
    let pairs = [(0usize, 1usize), (0, 2), (1, 2)];
    CorrelationTable::from_fn(3, |a, b, x, y| {
        pairs
            .iter()
            .map(|&(i, j)| {
                let inside = |v: usize| v == i || v == j;
                if !inside(a) || !inside(b) {
                    return 0.0;
                }
                let equal = a == b;
                if equal == (x * y == 0) {
                    0.5
                } else {
                    0.0
                }
            })
            .sum::<f64>()
            / 3.0
    })
}

/// Equal mixture of four ternary PR-type boxes with
/// `b - a ∈ {-xy, x(2-y), y(2-x), (x+y+1) mod 2}`; lands on the slice.
pub fn alternative_pr23_mixture() -> CorrelationTable {
    let shifts: [fn(usize, usize) -> usize; 4] = [
        |x, y| (3 - x * y) % 3,
        |x, y| x * (2 - y),
        |x, y| y * (2 - x),
        |x, y| (x + y + 1) % 2,
    ];
    let boxes: Vec<CorrelationTable> = shifts.iter().map(|g| shift_box(3, 3, g)).collect();
    CorrelationTable::mix(3, boxes.iter().map(|t| (0.25, t))).expect("all ternary")
}

/// Binary quantum point with CHSH value `2 + √2`.
pub fn quantum_chsh_point() -> CorrelationTable {
    let p0 = (2.0 + std::f64::consts::SQRT_2) / 4.0;
    SlicePoint::new(vec![p0, 1.0 - p0]).unwrap().table()
}

/// Named constructors, for callers that select a table by name.
#[derive(Debug, Clone, PartialEq)]
pub enum NamedTable {
    PrBox,
    Pr2d {
        d: usize,
    },
    EmbeddedPr {
        d: usize,
        dp: usize,
    },
    Isotropic {
        p_nl: f64,
    },
    Bb84Noiseless,
    Slice(SlicePoint),
    MPrMixture,
    AlternativePr23,
    QuantumChsh,
    Deterministic {
        d: usize,
        strategy: DeterministicStrategy,
    },
}

impl NamedTable {
    pub fn build(&self) -> Result<CorrelationTable> {
        match self {
            Self::PrBox => Ok(pr_box()),
            Self::Pr2d { d } => pr_2d(*d),
            Self::EmbeddedPr { d, dp } => embedded_pr(*d, *dp),
            Self::Isotropic { p_nl } => isotropic(*p_nl),
            Self::Bb84Noiseless => Ok(bb84_noiseless()),
            Self::Slice(s) => Ok(s.table()),
            Self::MPrMixture => Ok(m_pr_mixture()),
            Self::AlternativePr23 => Ok(alternative_pr23_mixture()),
            Self::QuantumChsh => Ok(quantum_chsh_point()),
            Self::Deterministic { d, strategy } => {
                if !strategy.in_range(*d) {
                    return Err(Error::Dimension(format!("{strategy:?} has outputs ≥ {d}")));
                }
                Ok(strategy.table(*d))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlations::{cglmp_value, chsh_value};

    #[test]
    fn named_tables_validate() {
        let tables = [
            pr_box(),
            pr_2d(5).unwrap(),
            embedded_pr(4, 3).unwrap(),
            isotropic(0.3).unwrap(),
            bb84_noiseless(),
            m_pr_mixture(),
            alternative_pr23_mixture(),
            quantum_chsh_point(),
        ];
        for t in &tables {
            assert!(t.validate().passes(), "{t:?}");
        }
    }

    #[test]
    fn bb84_is_local_at_the_bound() {
        assert!((chsh_value(&bb84_noiseless()).unwrap() - 3.0).abs() < 1e-15);
    }

    #[test]
    fn quantum_point_at_tsirelson() {
        let v = chsh_value(&quantum_chsh_point()).unwrap();
        assert!((v - (2.0 + 2f64.sqrt())).abs() < 1e-14);
    }

    #[test]
    fn isotropic_is_on_slice() {
        let t = isotropic(0.4).unwrap();
        let s = SlicePoint::from_table(&t, 1e-14).unwrap();
        assert!((s.pf()[0] - 0.85).abs() < 1e-15);
        assert!(isotropic(1.5).is_err());
    }

    #[test]
    fn m_pr_is_off_slice_with_uniform_marginals() {
        let t = m_pr_mixture();
        for x in 0..2 {
            for y in 0..2 {
                for a in 0..3 {
                    assert!((t.marginal_a(a, x, y) - 1.0 / 3.0).abs() < 1e-15);
                    assert!((t.marginal_b(a, x, y) - 1.0 / 3.0).abs() < 1e-15);
                }
            }
        }
        assert!(!SlicePoint::is_on_slice(&t, 1e-9));
        assert!((cglmp_value(&t) - 0.5).abs() < 1e-14);
    }

    #[test]
    fn alternative_mixture_point() {
        let s = SlicePoint::from_table(&alternative_pr23_mixture(), 1e-14).unwrap();
        assert!((s.pf()[0] - 0.75).abs() < 1e-15);
        assert!(s.pf()[1].abs() < 1e-15);
        assert!((s.cglmp() - 1.0 / 3.0).abs() < 1e-14);
    }
}
