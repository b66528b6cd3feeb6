use std::collections::BTreeMap;
use std::fmt;

use super::sift::{pseudo_sift, DEFAULT_XI};
use crate::correlations::EveDecomposition;
use crate::error::{check_range, Error, Result};
use crate::fmt::sig12;
use crate::keyrate::entropy::{entropy_of_weights, mutual_information};

/// What Eve knows about `(a, b')` for one component of her mixture.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EveSymbol {
    /// Both outputs.
    Full { a: usize, b: usize },
    /// Alice's output; Bob's is one of two values (binary outputs).
    Alice { a: usize },
    /// Alice's output; Bob's is one of two of the three values.
    AliceTwo { a: usize },
    /// Nothing: the nonlocal component.
    Nothing,
}

impl EveSymbol {
    /// Number of values of `b'` compatible with the symbol.
    pub fn candidates(&self, d: usize) -> usize {
        match self {
            EveSymbol::Full { .. } => 1,
            EveSymbol::Alice { .. } | EveSymbol::AliceTwo { .. } => 2,
            EveSymbol::Nothing => d,
        }
    }

    pub fn alice(&self) -> Option<usize> {
        match *self {
            EveSymbol::Full { a, .. } | EveSymbol::Alice { a } | EveSymbol::AliceTwo { a } => {
                Some(a)
            }
            EveSymbol::Nothing => None,
        }
    }
}

impl fmt::Display for EveSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EveSymbol::Full { a, b } => write!(f, "F:{a}:{b}"),
            EveSymbol::Alice { a } => write!(f, "A:{a}"),
            EveSymbol::AliceTwo { a } => write!(f, "A2:{a}"),
            EveSymbol::Nothing => write!(f, "N"),
        }
    }
}

/// `P(a, b', e | x)` for both of Alice's inputs.
#[derive(Debug, Clone, PartialEq)]
pub struct TripartiteTable {
    d: usize,
    /// `per_x[x][e][a * d + b']`
    per_x: [BTreeMap<EveSymbol, Vec<f64>>; 2],
}

impl TripartiteTable {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn get(&self, x: usize, a: usize, b: usize, e: &EveSymbol) -> f64 {
        self.per_x[x].get(e).map_or(0.0, |m| m[a * self.d + b])
    }

    /// Eve's symbols with nonzero weight at input `x`, in order.
    pub fn symbols(&self, x: usize) -> Vec<EveSymbol> {
        self.per_x[x].keys().copied().collect()
    }

    /// `(symbol, d×d block)` pairs at input `x`.
    pub fn blocks(&self, x: usize) -> impl Iterator<Item = (&EveSymbol, &[f64])> {
        self.per_x[x].iter().map(|(e, m)| (e, m.as_slice()))
    }

    pub fn eve_marginal(&self, x: usize) -> BTreeMap<EveSymbol, f64> {
        self.per_x[x]
            .iter()
            .map(|(e, m)| (*e, m.iter().sum()))
            .collect()
    }

    /// `P(a, b' | x)` row-major.
    pub fn marginal_ab(&self, x: usize) -> Vec<f64> {
        let mut out = vec![0.0; self.d * self.d];
        for m in self.per_x[x].values() {
            for (o, v) in out.iter_mut().zip(m) {
                *o += v;
            }
        }
        out
    }

    pub fn error_rate(&self, x: usize) -> f64 {
        let m = self.marginal_ab(x);
        1.0 - (0..self.d).map(|a| m[a * self.d + a]).sum::<f64>()
    }

    pub fn total(&self, x: usize) -> f64 {
        self.per_x[x].values().flatten().sum()
    }

    /// `H(B'|E, x)` in bits.
    pub fn h_b_given_e(&self, x: usize) -> f64 {
        let d = self.d;
        self.per_x[x]
            .values()
            .map(|m| {
                let pb: Vec<f64> = (0..d).map(|b| (0..d).map(|a| m[a * d + b]).sum()).collect();
                pb.iter().sum::<f64>() * entropy_of_weights(&pb)
            })
            .sum()
    }

    /// `I(A:B'|E, x)` in bits.
    pub fn conditional_mutual_info(&self, x: usize) -> f64 {
        conditional_mi_blocks(self.d, self.per_x[x].values().map(|m| m.as_slice()))
    }

    /// `I(A:E|x)` and `I(B':E|x)` in bits.
    pub fn eve_information(&self, x: usize) -> (f64, f64) {
        let d = self.d;
        let syms: Vec<&Vec<f64>> = self.per_x[x].values().collect();
        let n = syms.len();
        let mut ae = vec![0.0; d * n];
        let mut be = vec![0.0; d * n];
        for (j, m) in syms.iter().enumerate() {
            for a in 0..d {
                for b in 0..d {
                    ae[a * n + j] += m[a * d + b];
                    be[b * n + j] += m[a * d + b];
                }
            }
        }
        (mutual_information(&ae, d, n), mutual_information(&be, d, n))
    }

    /// CSV with header `x,a,b,eve_symbol,probability`; zero cells omitted.
    pub fn to_csv(&self) -> String {
        let d = self.d;
        let mut out = String::from("x,a,b,eve_symbol,probability\n");
        for x in 0..2 {
            for a in 0..d {
                for b in 0..d {
                    for (e, m) in &self.per_x[x] {
                        let v = m[a * d + b];
                        if v != 0.0 {
                            out.push_str(&format!("{x},{a},{b},{e},{}\n", sig12(v)));
                        }
                    }
                }
            }
        }
        out
    }
}

/// `Σ_e P(e) I(A:B|E=e)` over `d×d` blocks, in bits.
pub(crate) fn conditional_mi_blocks<'a>(d: usize, blocks: impl Iterator<Item = &'a [f64]>) -> f64 {
    blocks
        .map(|m| {
            let w: f64 = m.iter().sum();
            if w <= 0.0 {
                return 0.0;
            }
            let norm: Vec<f64> = m.iter().map(|v| v / w).collect();
            w * mutual_information(&norm, d, d)
        })
        .sum()
}

pub fn build_tripartite(dec: &EveDecomposition) -> Result<TripartiteTable> {
    build_tripartite_with(dec, DEFAULT_XI)
}

/// Exact tripartite table from Eve's decomposition with `P(y=0) = xi`.
pub fn build_tripartite_with(dec: &EveDecomposition, xi: f64) -> Result<TripartiteTable> {
    let d = dec.d;
    if d != 2 && d != 3 {
        return Err(Error::Unsupported(format!(
            "explicit tripartite tables exist for d = 2, 3 (got {d})"
        )));
    }
    check_range("xi", xi, 0.0, 1.0, "[0, 1]")?;
    let nonlocal = pseudo_sift(&dec.nonlocal, xi)?;
    let per_x = [0, 1].map(|x| {
        let mut map: BTreeMap<EveSymbol, Vec<f64>> = BTreeMap::new();
        {
            let slot = map
                .entry(EveSymbol::Nothing)
                .or_insert_with(|| vec![0.0; d * d]);
            for (o, v) in slot.iter_mut().zip(nonlocal.joint(x)) {
                *o += dec.p_nl * v;
            }
        }
        for (s, &w) in &dec.local_weights {
            let a = s.a(x);
            let bp = |y: usize| (s.b(y) + d - (x * y) % d) % d;
            let (b0, b1) = (bp(0), bp(1));
            if b0 == b1 {
                let slot = map
                    .entry(EveSymbol::Full { a, b: b0 })
                    .or_insert_with(|| vec![0.0; d * d]);
                slot[a * d + b0] += w;
            } else {
                let sym = if d == 2 {
                    EveSymbol::Alice { a }
                } else {
                    EveSymbol::AliceTwo { a }
                };
                let slot = map.entry(sym).or_insert_with(|| vec![0.0; d * d]);
                slot[a * d + b0] += w * xi;
                slot[a * d + b1] += w * (1.0 - xi);
            }
        }
        map.retain(|_, m| m.iter().any(|v| *v != 0.0));
        map
    });
    Ok(TripartiteTable { d, per_x })
}

/// Independent bit flips of Alice's and Bob's outputs; Eve's labels unchanged.
pub fn preprocess_tripartite(t: &TripartiteTable, q_a: f64, q_b: f64) -> Result<TripartiteTable> {
    if t.d != 2 {
        return Err(Error::Unsupported(format!(
            "bitwise pre-processing needs d = 2 (got {})",
            t.d
        )));
    }
    check_range("q_a", q_a, 0.0, 0.5, "[0, 1/2]")?;
    check_range("q_b", q_b, 0.0, 0.5, "[0, 1/2]")?;
    let flip = |q: f64, from: usize, to: usize| if from == to { 1.0 - q } else { q };
    let per_x = [0, 1].map(|x| {
        t.per_x[x]
            .iter()
            .map(|(e, m)| {
                let mut out = vec![0.0; 4];
                for a in 0..2 {
                    for b in 0..2 {
                        for a0 in 0..2 {
                            for b0 in 0..2 {
                                out[a * 2 + b] +=
                                    m[a0 * 2 + b0] * flip(q_a, a0, a) * flip(q_b, b0, b);
                            }
                        }
                    }
                }
                (*e, out)
            })
            .collect()
    });
    Ok(TripartiteTable { d: 2, per_x })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UncertaintyCheck {
    /// `H(B'|E, x)` in bits.
    pub h_b_given_e: f64,
    /// Alice-Bob error at the other input.
    pub error_other: f64,
}

impl UncertaintyCheck {
    /// `H(B'|E,x) + 2 e_{AB|x+1} - 1`.
    pub fn residual(&self) -> f64 {
        self.h_b_given_e + 2.0 * self.error_other - 1.0
    }
}

pub fn uncertainty_relation(t: &TripartiteTable, x: usize) -> Result<UncertaintyCheck> {
    if t.d != 2 {
        return Err(Error::Unsupported(
            "the uncertainty relation is stated for binary outputs".into(),
        ));
    }
    if x > 1 {
        return Err(Error::Dimension(format!("input x = {x} is not binary")));
    }
    Ok(UncertaintyCheck {
        h_b_given_e: t.h_b_given_e(x),
        error_other: t.error_rate(1 - x),
    })
}
