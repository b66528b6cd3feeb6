//! Intrinsic information: closed forms under Eve's merging maps and a
//! numeric minimization over channels on her symbol alphabet.
//!
//! Alice's input is public, so the channel may depend on `x`; the result is
//! the average over `x` of the per-input minima.

use rand::Rng;

use super::entropy::{binary_h, h3};
use crate::correlations::{decompose_slice, SlicePoint};
use crate::error::{check_range, Error, Result};
use crate::parallel::Exec;
use crate::protocol::{build_tripartite, EveSymbol, TripartiteTable};

/// `(1 - p_L/2)(1 - h(p_L/(4 - 2p_L)))`, the value under the map sending
/// Eve's Alice-only symbols to `Nothing`.
pub fn intrinsic_info_chsh(p_nl: f64) -> Result<f64> {
    check_range("p_nl", p_nl, 0.0, 1.0, "[0, 1]")?;
    let p_l = 1.0 - p_nl;
    Ok((1.0 - p_l / 2.0) * (1.0 - binary_h(p_l / (4.0 - 2.0 * p_l))))
}

/// Row-stochastic matrix from Eve's symbols to an alphabet of the same size.
#[derive(Debug, Clone, PartialEq)]
pub struct EveChannel {
    n: usize,
    m: Vec<f64>,
}

impl EveChannel {
    pub fn new(n: usize, m: Vec<f64>) -> Result<Self> {
        if m.len() != n * n {
            return Err(Error::Dimension(format!(
                "channel needs {} entries, got {}",
                n * n,
                m.len()
            )));
        }
        for i in 0..n {
            let row = &m[i * n..(i + 1) * n];
            if row.iter().any(|v| !(*v >= -1e-12)) {
                return Err(Error::domain("channel entry", row[0], "[0, 1]"));
            }
            let s: f64 = row.iter().sum();
            if (s - 1.0).abs() > 1e-12 {
                return Err(Error::domain("channel row sum", s, "1"));
            }
        }
        Ok(Self { n, m })
    }

    pub fn identity(n: usize) -> Self {
        let mut m = vec![0.0; n * n];
        for i in 0..n {
            m[i * n + i] = 1.0;
        }
        Self { n, m }
    }

    /// Deterministic map `i → target(i)`.
    pub fn from_map(n: usize, target: impl Fn(usize) -> usize) -> Self {
        let mut m = vec![0.0; n * n];
        for i in 0..n {
            m[i * n + target(i)] = 1.0;
        }
        Self { n, m }
    }

    fn random<R: Rng>(n: usize, rng: &mut R) -> Self {
        let mut m = vec![0.0; n * n];
        for i in 0..n {
            let row: Vec<f64> = (0..n).map(|_| -rng.gen::<f64>().max(1e-300).ln()).collect();
            let s: f64 = row.iter().sum();
            for j in 0..n {
                m[i * n + j] = row[j] / s;
            }
        }
        Self { n, m }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.m[i * self.n + j]
    }

    pub fn max_row_residual(&self) -> f64 {
        (0..self.n)
            .map(|i| (self.m[i * self.n..(i + 1) * self.n].iter().sum::<f64>() - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

/// `w · I(A:B)` of an unnormalized `d×d` block, in bits.
fn weighted_mi(d: usize, block: &[f64]) -> f64 {
    let w: f64 = block.iter().sum();
    if w <= 0.0 {
        return 0.0;
    }
    let mut s = 0.0;
    for a in 0..d {
        let ra: f64 = block[a * d..(a + 1) * d].iter().sum();
        for b in 0..d {
            let v = block[a * d + b];
            if v > 0.0 {
                let cb: f64 = (0..d).map(|k| block[k * d + b]).sum();
                s += v * (v * w / (ra * cb)).log2();
            }
        }
    }
    s.max(0.0)
}

/// `I(A:B|Ē)` in bits for `blocks[e]` pushed through `ch`.
pub fn conditional_mi_under(d: usize, blocks: &[Vec<f64>], ch: &EveChannel) -> f64 {
    output_blocks(d, blocks, ch)
        .iter()
        .map(|b| weighted_mi(d, b))
        .sum()
}

fn output_blocks(d: usize, blocks: &[Vec<f64>], ch: &EveChannel) -> Vec<Vec<f64>> {
    let n = blocks.len();
    let mut out = vec![vec![0.0; d * d]; n];
    for (i, blk) in blocks.iter().enumerate() {
        for (j, o) in out.iter_mut().enumerate() {
            let c = ch.get(i, j);
            if c != 0.0 {
                for (ov, bv) in o.iter_mut().zip(blk) {
                    *ov += c * bv;
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntrinsicConfig {
    /// Random starting channels, in addition to the identity and the
    /// merging map.
    pub starts: usize,
    /// Line searches allowed per start.
    pub budget: usize,
    pub seed: u64,
    pub exec: Exec,
}

impl Default for IntrinsicConfig {
    fn default() -> Self {
        Self {
            starts: 50,
            budget: 10_000,
            seed: crate::correlations::random::DEFAULT_SEED,
            exec: Exec::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntrinsicReport {
    /// Average over `x` of the minimized `I(A:B|Ē)`, in bits.
    pub value: f64,
    pub per_x: [f64; 2],
    /// `I(A:B|E)` without any channel.
    pub unprocessed: f64,
    /// Value under the merging map used to seed the search.
    pub merging_map: f64,
    pub channels: [EveChannel; 2],
    pub symbols: [Vec<EveSymbol>; 2],
    /// `false` when some start ran out of budget before settling.
    pub converged: bool,
}

/// Map sending every Alice-only symbol to `Nothing`.
pub fn merging_map(symbols: &[EveSymbol]) -> EveChannel {
    let n = symbols.len();
    let target = symbols.iter().position(|s| *s == EveSymbol::Nothing);
    EveChannel::from_map(n, |i| match (symbols[i], target) {
        (EveSymbol::Alice { .. } | EveSymbol::AliceTwo { .. }, Some(t)) => t,
        _ => i,
    })
}

/// Pairwise mass transfers within each row, each optimized by a coarse scan
/// followed by golden section.
fn descend(
    d: usize,
    blocks: &[Vec<f64>],
    mut ch: EveChannel,
    budget: usize,
) -> (EveChannel, f64, bool) {
    let n = blocks.len();
    let mut out = output_blocks(d, blocks, &ch);
    let mut obj: Vec<f64> = out.iter().map(|b| weighted_mi(d, b)).collect();
    let mut used = 0;
    loop {
        let mut gain = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in (j + 1)..n {
                    if used >= budget {
                        return (ch, obj.iter().sum(), false);
                    }
                    used += 1;
                    let (cij, cik) = (ch.get(i, j), ch.get(i, k));
                    if cij + cik <= 0.0 {
                        continue;
                    }
                    let m = &blocks[i];
                    let eval = |t: f64| {
                        let bj: Vec<f64> = out[j].iter().zip(m).map(|(o, v)| o - t * v).collect();
                        let bk: Vec<f64> = out[k].iter().zip(m).map(|(o, v)| o + t * v).collect();
                        weighted_mi(d, &bj) + weighted_mi(d, &bk)
                    };
                    let (lo, hi) = (-cik, cij);
                    let base = obj[j] + obj[k];
                    let mut best = (0.0, base);
                    const SCAN: usize = 8;
                    for s in 0..=SCAN {
                        let t = lo + (hi - lo) * s as f64 / SCAN as f64;
                        let v = eval(t);
                        if v < best.1 {
                            best = (t, v);
                        }
                    }
                    let span = (hi - lo) / SCAN as f64;
                    let (a, b) = ((best.0 - span).max(lo), (best.0 + span).min(hi));
                    let (t, v) =
                        super::optimize::golden_max(&|t| -eval(t), a, b, 1e-10 * (1.0 + hi - lo));
                    if -v < best.1 {
                        best = (t, -v);
                    }
                    if best.1 < base - 1e-15 {
                        let t = best.0;
                        for (o, v) in out[j].iter_mut().zip(m) {
                            *o -= t * v;
                        }
                        for (o, v) in out[k].iter_mut().zip(m) {
                            *o += t * v;
                        }
                        ch.m[i * n + j] = (cij - t).max(0.0);
                        ch.m[i * n + k] = (cik + t).max(0.0);
                        obj[j] = weighted_mi(d, &out[j]);
                        obj[k] = weighted_mi(d, &out[k]);
                        gain += base - best.1;
                    }
                }
            }
        }
        if gain < 1e-13 {
            return (ch, obj.iter().sum(), true);
        }
    }
}

fn minimize_blocks(
    d: usize,
    symbols: &[EveSymbol],
    blocks: &[Vec<f64>],
    cfg: &IntrinsicConfig,
    stream: u64,
) -> (EveChannel, f64, bool) {
    let n = blocks.len();
    let mut rng = crate::correlations::random::seeded(cfg.seed ^ stream.wrapping_mul(0x9e37_79b9));
    let mut starts = vec![EveChannel::identity(n), merging_map(symbols)];
    starts.extend((0..cfg.starts).map(|_| EveChannel::random(n, &mut rng)));
    let results = cfg
        .exec
        .map(&starts, |c| descend(d, blocks, c.clone(), cfg.budget));
    let converged = results.iter().all(|r| r.2);
    let (ch, v, _) = results
        .into_iter()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("at least two starts");
    (ch, v, converged)
}

/// Numeric `min_{E→Ē} I(A:B|Ē)` in bits over same-size channels.
pub fn intrinsic_info_numeric(t: &TripartiteTable, cfg: &IntrinsicConfig) -> IntrinsicReport {
    let d = t.d();
    let mut per_x = [0.0; 2];
    let mut unprocessed = 0.0;
    let mut merged = 0.0;
    let mut converged = true;
    let mut channels = [EveChannel::identity(1), EveChannel::identity(1)];
    let mut symbols: [Vec<EveSymbol>; 2] = [Vec::new(), Vec::new()];
    for x in 0..2 {
        let syms = t.symbols(x);
        let blocks: Vec<Vec<f64>> = t.blocks(x).map(|(_, b)| b.to_vec()).collect();
        unprocessed += 0.5 * conditional_mi_under(d, &blocks, &EveChannel::identity(blocks.len()));
        merged += 0.5 * conditional_mi_under(d, &blocks, &merging_map(&syms));
        let (ch, v, ok) = minimize_blocks(d, &syms, &blocks, cfg, x as u64);
        per_x[x] = v;
        converged &= ok;
        channels[x] = ch;
        symbols[x] = syms;
    }
    IntrinsicReport {
        value: 0.5 * (per_x[0] + per_x[1]),
        per_x,
        unprocessed,
        merging_map: merged,
        channels,
        symbols,
        converged,
    }
}

/// Ternary upper bound in trits:
/// `P(?,?) [1 - h((2p_0 - p_L)/(2 - p_L), (1-p_0)/(2-p_L), (1-p_0)/(2-p_L))]`.
pub fn d3_intrinsic_upper(p0: f64, p1: f64) -> Result<f64> {
    let p_nl = check_d3(p0, p1)?;
    let p_l = 1.0 - p_nl;
    let z = 2.0 - p_l;
    let p_nothing = z / 2.0;
    let off = (1.0 - p0) / z;
    Ok(p_nothing * (1.0 - h3([(2.0 * p0 - p_l) / z, off, off])).max(0.0))
}

/// `5p_0 - 2p_1 - 3`; the intrinsic information vanishes where it is `≤ 0`.
pub fn d3_intrinsic_line(p0: f64, p1: f64) -> f64 {
    5.0 * p0 - 2.0 * p1 - 3.0
}

pub fn d3_intrinsic_zero_region(p0: f64, p1: f64) -> Result<bool> {
    check_d3(p0, p1)?;
    Ok(d3_intrinsic_line(p0, p1) <= 1e-12)
}

fn check_d3(p0: f64, p1: f64) -> Result<f64> {
    check_range("p0", p0, 0.0, 1.0, "[0, 1]")?;
    check_range("p1", p1, 0.0, 1.0 - p0 + 1e-12, "[0, 1 - p0]")?;
    let p_nl = 2.0 * (p0 - p1) - 1.0;
    if p_nl < -1e-12 {
        return Err(Error::domain("p_nl", p_nl, "[0, 1] (facet sector)"));
    }
    Ok(p_nl.max(0.0))
}

/// Ternary tripartite table built from Eve's preferred decomposition.
pub fn d3_tripartite(p0: f64, p1: f64) -> Result<TripartiteTable> {
    check_d3(p0, p1)?;
    build_tripartite(&decompose_slice(&SlicePoint::ternary(p0, p1)?)?)
}

/// `I(A:B|Ē)` in trits when Eve sends each `(i,?_2)` to `Nothing` with
/// probability `lambda`.
pub fn d3_lambda_map(p0: f64, p1: f64, lambda: f64) -> Result<f64> {
    check_range("lambda", lambda, 0.0, 1.0, "[0, 1]")?;
    let t = d3_tripartite(p0, p1)?;
    let mut total = 0.0;
    for x in 0..2 {
        let syms = t.symbols(x);
        let blocks: Vec<Vec<f64>> = t.blocks(x).map(|(_, b)| b.to_vec()).collect();
        let n = syms.len();
        let target = syms.iter().position(|s| *s == EveSymbol::Nothing);
        let mut m = vec![0.0; n * n];
        for (i, s) in syms.iter().enumerate() {
            match (s, target) {
                (EveSymbol::AliceTwo { .. }, Some(t)) => {
                    m[i * n + t] += lambda;
                    m[i * n + i] += 1.0 - lambda;
                }
                _ => m[i * n + i] = 1.0,
            }
        }
        let ch = EveChannel::new(n, m)?;
        total += 0.5 * conditional_mi_under(3, &blocks, &ch);
    }
    Ok(total / 3f64.log2())
}

/// Probability making the merged block's diagonal mass exactly `1/3`, when
/// it lies in `[0, 1]`.
pub fn d3_lambda_star(p0: f64, p1: f64) -> Result<Option<f64>> {
    let p_nl = check_d3(p0, p1)?;
    let p_l = 1.0 - p_nl;
    let p2 = 1.0 - p0 - p1;
    let denom = 1.5 * p2 - p_l / 4.0;
    if denom <= 0.0 {
        return Ok(None);
    }
    let lam = 2.0 * p_nl / denom;
    Ok((0.0..=1.0).contains(&lam).then_some(lam))
}

/// Minimum of [`d3_lambda_map`] over a `steps`-point grid plus `λ*`.
pub fn d3_lambda_scan(p0: f64, p1: f64, steps: usize) -> Result<(f64, f64)> {
    let mut best = (0.0, d3_lambda_map(p0, p1, 0.0)?);
    let mut candidates: Vec<f64> = (0..steps.max(2))
        .map(|i| i as f64 / (steps.max(2) - 1) as f64)
        .collect();
    if let Some(l) = d3_lambda_star(p0, p1)? {
        candidates.push(l);
    }
    for lam in candidates {
        let v = d3_lambda_map(p0, p1, lam)?;
        if v < best.1 {
            best = (lam, v);
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlations::{decompose_chsh, isotropic};

    fn iso_table(p: f64) -> TripartiteTable {
        build_tripartite(&decompose_chsh(&isotropic(p).unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn closed_form_values() {
        assert!((intrinsic_info_chsh(1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(intrinsic_info_chsh(0.0).unwrap().abs() < 1e-15);
        let want = 0.75 * (1.0 - binary_h(1.0 / 6.0));
        assert!((intrinsic_info_chsh(0.5).unwrap() - want).abs() < 1e-15);
        assert!((want - 0.262483).abs() < 1e-6);
    }

    #[test]
    fn merging_map_reproduces_closed_form() {
        for &p in &[0.1, 0.4, 0.8] {
            let t = iso_table(p);
            let mut v = 0.0;
            for x in 0..2 {
                let syms = t.symbols(x);
                let blocks: Vec<Vec<f64>> = t.blocks(x).map(|(_, b)| b.to_vec()).collect();
                v += 0.5 * conditional_mi_under(2, &blocks, &merging_map(&syms));
            }
            assert!((v - intrinsic_info_chsh(p).unwrap()).abs() < 1e-14);
        }
    }

    #[test]
    fn identity_channel_gives_conditional_mi() {
        let t = iso_table(0.35);
        let blocks: Vec<Vec<f64>> = t.blocks(0).map(|(_, b)| b.to_vec()).collect();
        let v = conditional_mi_under(2, &blocks, &EveChannel::identity(blocks.len()));
        assert!((v - 0.35).abs() < 1e-14);
    }

    #[test]
    fn numeric_minimum_is_bounded() {
        let cfg = IntrinsicConfig {
            starts: 6,
            ..IntrinsicConfig::default()
        };
        let t = iso_table(0.5);
        let r = intrinsic_info_numeric(&t, &cfg);
        assert!(r.value <= r.unprocessed + 1e-12);
        assert!(r.value <= r.merging_map + 1e-12);
        assert!(r.value >= 0.0);
        for c in &r.channels {
            assert!(c.max_row_residual() < 1e-12);
        }
    }

    #[test]
    fn channel_validation() {
        assert!(EveChannel::new(2, vec![0.5, 0.5, 0.2, 0.7]).is_err());
        assert!(EveChannel::new(2, vec![1.5, -0.5, 0.0, 1.0]).is_err());
        assert!(EveChannel::new(2, vec![0.5, 0.5, 0.0, 1.0]).is_ok());
    }

    #[test]
    fn ternary_bound_vanishes_on_line() {
        for &p1 in &[0.0, 0.05, 0.1, 1.0 / 6.0] {
            let p0 = (3.0 + 2.0 * p1) / 5.0;
            assert!(d3_intrinsic_upper(p0, p1).unwrap() < 1e-12);
            let via_map = d3_lambda_map(p0, p1, 1.0).unwrap();
            assert!((via_map - d3_intrinsic_upper(p0, p1).unwrap()).abs() < 1e-12);
        }
        assert!(!d3_intrinsic_zero_region(0.75, 0.25).unwrap());
        assert!(d3_intrinsic_upper(0.75, 0.25).unwrap() > 0.0);
        assert!(!d3_intrinsic_zero_region(0.7, 0.18).unwrap());
    }

    #[test]
    fn lambda_scan_reaches_zero_below_line() {
        let (p0, p1) = (0.61, 0.05);
        assert!(d3_intrinsic_line(p0, p1) < 0.0);
        let lam = d3_lambda_star(p0, p1).unwrap().expect("λ* in range");
        assert!(d3_lambda_map(p0, p1, lam).unwrap() < 1e-12);
        let (_, v) = d3_lambda_scan(p0, p1, 11).unwrap();
        assert!(v < 1e-12);
    }
}
