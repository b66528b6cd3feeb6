//! Parameter sweeps, the ternary slice map and the threshold table.
//!
//! Rows are computed through [`Exec`] and always come back in parameter
//! order. Values that are undefined at a row (for example a no-signalling
//! rate where the point is local) are `NaN`.

use crate::correlations::SlicePoint;
use crate::error::{Error, Result};
use crate::keyrate::{
    ad_d3_margin, ad_isotropic_margin, ad_isotropic_threshold, ad_preprocessed_threshold, ck_d3,
    ck_d3_opt, ck_isotropic, ck_isotropic_opt, ck_isotropic_threshold, d3_intrinsic_upper,
    d3_intrinsic_zero_region, intrinsic_info_chsh, white_noise_mixture, OptConfig, Threshold,
    AD_GRID_STEP,
};
use crate::parallel::Exec;
use crate::quantum::{
    bb84_critical_qber, bb84_crossover, dw_chsh_opt, dw_critical_disturbance, probs_gamma, Side,
};
use std::f64::consts::SQRT_2;
use std::fmt;
use std::str::FromStr;

/// `p_NL = √2(1 − 2D) − 1` on the quantum CHSH line.
pub fn p_nl_from_disturbance(d: f64) -> f64 {
    SQRT_2 * (1.0 - 2.0 * d) - 1.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParam {
    /// Binary isotropic family.
    PNl,
    /// Disturbance on the quantum CHSH line.
    D,
    /// d=3 quantum curve through `|ψ(γ)⟩`.
    Gamma,
    /// White-noise visibility of the d=3 maximally entangled point.
    W,
    /// `t ∈ [0, 1]` from `(p0, p1) = (1, 0)` to the centre `(1/3, 1/3)`.
    P0P1Path,
}

impl SweepParam {
    pub fn name(self) -> &'static str {
        match self {
            Self::PNl => "p_nl",
            Self::D => "D",
            Self::Gamma => "gamma",
            Self::W => "w",
            Self::P0P1Path => "p0p1-path",
        }
    }

    pub fn default_range(self) -> (f64, f64) {
        match self {
            Self::D => (0.0, 0.15),
            _ => (0.0, 1.0),
        }
    }

    fn is_binary(self) -> bool {
        matches!(self, Self::PNl | Self::D)
    }
}

impl FromStr for SweepParam {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "p_nl" => Self::PNl,
            "D" => Self::D,
            "gamma" => Self::Gamma,
            "w" => Self::W,
            "p0p1-path" => Self::P0P1Path,
            other => return Err(Error::Sweep(format!("unknown parameter `{other}`"))),
        })
    }
}

impl fmt::Display for SweepParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Variant {
    CkQ0,
    /// Also contributes a `q_opt` column.
    CkOpt,
    /// Margin of the AD condition without pre-processing.
    Ad,
    Intrinsic,
    DwQuantum,
}

impl Variant {
    fn columns(self) -> &'static [&'static str] {
        match self {
            Self::CkQ0 => &["rate_q0"],
            Self::CkOpt => &["rate_opt", "q_opt"],
            Self::Ad => &["ad_margin"],
            Self::Intrinsic => &["intrinsic"],
            Self::DwQuantum => &["dw_quantum_opt"],
        }
    }
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "ck_q0" => Self::CkQ0,
            "ck_opt" => Self::CkOpt,
            "ad" => Self::Ad,
            "intrinsic" => Self::Intrinsic,
            "dw_quantum" => Self::DwQuantum,
            other => return Err(Error::Sweep(format!("unknown variant `{other}`"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub param: SweepParam,
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
    pub variants: Vec<Variant>,
}

impl SweepSpec {
    pub fn new(
        param: SweepParam,
        lo: f64,
        hi: f64,
        steps: usize,
        variants: Vec<Variant>,
    ) -> Result<Self> {
        if !(lo < hi) {
            return Err(Error::Sweep(format!("need lo < hi, got [{lo}, {hi}]")));
        }
        if steps < 2 {
            return Err(Error::Sweep(format!("need at least 2 steps, got {steps}")));
        }
        let mut variants = variants;
        variants.sort();
        variants.dedup();
        if variants.is_empty() {
            variants = vec![Variant::CkQ0, Variant::CkOpt];
        }
        Ok(Self {
            param,
            lo,
            hi,
            steps,
            variants,
        })
    }

    pub fn values(&self) -> Vec<f64> {
        let n = self.steps - 1;
        (0..=n)
            .map(|i| {
                if i == n {
                    self.hi
                } else {
                    self.lo + (self.hi - self.lo) * i as f64 / n as f64
                }
            })
            .collect()
    }
}

/// Header plus rows of numbers, in emission order.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl SweepTable {
    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| crate::fmt::sig12(*v)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }

    /// Linear interpolation of the first sign change of `name` against the
    /// first column.
    pub fn zero_crossing(&self, name: &str) -> Option<f64> {
        let ys = self.column(name)?;
        let xs: Vec<f64> = self.rows.iter().map(|r| r[0]).collect();
        xs.windows(2).zip(ys.windows(2)).find_map(|(x, y)| {
            if y[0].is_finite() && y[1].is_finite() && (y[0] > 0.0) != (y[1] > 0.0) {
                Some(x[0] + (x[1] - x[0]) * y[0] / (y[0] - y[1]))
            } else {
                None
            }
        })
    }
}

/// Ternary point for a non-binary sweep parameter.
fn ternary_point(param: SweepParam, t: f64) -> Result<(f64, f64)> {
    match param {
        SweepParam::Gamma => {
            let p = probs_gamma(t);
            Ok((p[0], p[1]))
        }
        SweepParam::W => {
            let me = probs_gamma(1.0);
            let s = white_noise_mixture(&SlicePoint::new(me.to_vec())?, t)?;
            Ok((s.p(0), s.p(1)))
        }
        SweepParam::P0P1Path => {
            crate::error::check_range("t", t, 0.0, 1.0, "[0, 1]")?;
            Ok((1.0 - 2.0 * t / 3.0, t / 3.0))
        }
        _ => unreachable!("binary parameter"),
    }
}

fn sweep_row(spec: &SweepSpec, t: f64, cfg: &OptConfig) -> Vec<f64> {
    let mut row = vec![t];
    let nan = f64::NAN;
    if spec.param.is_binary() {
        let p_nl = match spec.param {
            SweepParam::D => p_nl_from_disturbance(t),
            _ => t,
        };
        for v in &spec.variants {
            match v {
                Variant::CkQ0 => row.push(ck_isotropic(p_nl, 0.0).map_or(nan, |r| r.rate)),
                Variant::CkOpt => match ck_isotropic_opt(p_nl, cfg) {
                    Ok(r) => row.extend([r.rate, r.q.unwrap_or(0.0)]),
                    Err(_) => row.extend([nan, nan]),
                },
                Variant::Ad => row.push(ad_isotropic_margin(p_nl).unwrap_or(nan)),
                Variant::Intrinsic => row.push(intrinsic_info_chsh(p_nl).unwrap_or(nan)),
                Variant::DwQuantum => row.push(match spec.param {
                    SweepParam::D => dw_chsh_opt(t, Side::Bob, cfg).map_or(nan, |o| o.rate),
                    _ => nan,
                }),
            }
        }
    } else {
        let point = ternary_point(spec.param, t);
        for v in &spec.variants {
            let Ok((p0, p1)) = point else {
                row.extend(std::iter::repeat_n(nan, v.columns().len()));
                continue;
            };
            match v {
                Variant::CkQ0 => row.push(ck_d3(p0, p1, 0.0).map_or(nan, |r| r.rate)),
                Variant::CkOpt => match ck_d3_opt(p0, p1, cfg) {
                    Ok(r) => row.extend([r.rate, r.q.unwrap_or(0.0)]),
                    Err(_) => row.extend([nan, nan]),
                },
                Variant::Ad => row.push(ad_d3_margin(p0, p1)),
                Variant::Intrinsic => row.push(d3_intrinsic_upper(p0, p1).unwrap_or(nan)),
                Variant::DwQuantum => row.push(nan),
            }
        }
    }
    row
}

pub fn sweep(spec: &SweepSpec, cfg: &OptConfig, exec: Exec) -> SweepTable {
    let mut header = vec![spec.param.name().to_string()];
    for v in &spec.variants {
        header.extend(v.columns().iter().map(|c| c.to_string()));
    }
    let rows = exec.map(&spec.values(), |&t| sweep_row(spec, t, cfg));
    SweepTable { header, rows }
}

/// `(D, r_ck_nosig_q0, r_ck_nosig_opt, r_dw_quantum_opt)` over `D ∈ [lo, hi]`.
pub fn rates_figure(
    lo: f64,
    hi: f64,
    steps: usize,
    cfg: &OptConfig,
    exec: Exec,
) -> Result<SweepTable> {
    let spec = SweepSpec::new(
        SweepParam::D,
        lo,
        hi,
        steps,
        vec![Variant::CkQ0, Variant::CkOpt, Variant::DwQuantum],
    )?;
    let full = sweep(&spec, cfg, exec);
    let rows = full
        .rows
        .into_iter()
        .map(|r| vec![r[0], r[1], r[2], r[4]])
        .collect();
    Ok(SweepTable {
        header: ["D", "r_ck_nosig_q0", "r_ck_nosig_opt", "r_dw_quantum_opt"]
            .map(String::from)
            .to_vec(),
        rows,
    })
}

/// One slice-map row. Flags are only raised for nonlocal points
/// (`p_nl ≥ 0`); `ck_q0` is `NaN` elsewhere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SliceMapRow {
    pub p0: f64,
    pub p1: f64,
    pub p_nl: f64,
    pub ck_q0: f64,
    pub ck_opt_positive: bool,
    pub ad_positive: bool,
    pub intrinsic_zero: bool,
}

impl SliceMapRow {
    pub fn at(p0: f64, p1: f64, cfg: &OptConfig) -> Self {
        let p_nl = 2.0 * (p0 - p1) - 1.0;
        let nonlocal = p_nl >= -1e-12;
        let ck_q0 = ck_d3(p0, p1, 0.0).map_or(f64::NAN, |r| r.rate);
        Self {
            p0,
            p1,
            p_nl,
            ck_q0,
            ck_opt_positive: nonlocal && ck_d3_opt(p0, p1, cfg).is_ok_and(|r| r.rate > 0.0),
            ad_positive: nonlocal && ad_d3_margin(p0, p1) > 0.0,
            intrinsic_zero: nonlocal && d3_intrinsic_zero_region(p0, p1).unwrap_or(false),
        }
    }

    fn values(&self) -> Vec<f64> {
        let b = |f: bool| if f { 1.0 } else { 0.0 };
        vec![
            self.p0,
            self.p1,
            self.p_nl,
            self.ck_q0,
            b(self.ck_opt_positive),
            b(self.ad_positive),
            b(self.intrinsic_zero),
        ]
    }
}

/// Grid `p0 = i/n`, `p1 = j/n` with `i + j ≤ n`, p0 major.
pub fn slice_map(n: usize, cfg: &OptConfig, exec: Exec) -> Result<SweepTable> {
    if n < 1 {
        return Err(Error::Sweep("slice-map resolution must be ≥ 1".into()));
    }
    let points: Vec<(usize, usize)> = (0..=n)
        .flat_map(|i| (0..=n - i).map(move |j| (i, j)))
        .collect();
    let nf = n as f64;
    let rows = exec.map(&points, |&(i, j)| {
        SliceMapRow::at(i as f64 / nf, j as f64 / nf, cfg).values()
    });
    Ok(SweepTable {
        header: [
            "p0",
            "p1",
            "p_nl",
            "ck_q0",
            "ck_opt_positive",
            "ad_positive",
            "intrinsic_zero",
        ]
        .map(String::from)
        .to_vec(),
        rows,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThresholdKind {
    CkQ0,
    CkOpt,
    CkOptDisturbance,
    Ad,
    AdPreprocessed,
    Bb84Q0,
    Crossover,
    ChshQ0,
    ChshOpt,
    Bb84Opt,
}

impl ThresholdKind {
    pub const ALL: [ThresholdKind; 10] = [
        Self::CkQ0,
        Self::CkOpt,
        Self::CkOptDisturbance,
        Self::Ad,
        Self::AdPreprocessed,
        Self::Bb84Q0,
        Self::Crossover,
        Self::ChshQ0,
        Self::ChshOpt,
        Self::Bb84Opt,
    ];

    pub fn group(self) -> &'static str {
        match self {
            Self::CkQ0 | Self::CkOpt | Self::CkOptDisturbance | Self::Ad | Self::AdPreprocessed => {
                "nosig_d2"
            }
            _ => "quantum",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::CkQ0 => "ck_q0_p_nl",
            Self::CkOpt => "ck_opt_p_nl",
            Self::CkOptDisturbance => "ck_opt_D",
            Self::Ad => "ad_p_nl",
            Self::AdPreprocessed => "ad_preprocessed_p_nl",
            Self::Bb84Q0 => "bb84_q0_D",
            Self::Crossover => "bb84_crossover_D",
            Self::ChshQ0 => "chsh_q0_D",
            Self::ChshOpt => "chsh_opt_D",
            Self::Bb84Opt => "bb84_opt_D",
        }
    }

    pub fn compute(self, tol: f64, cfg: &OptConfig) -> Result<Threshold> {
        match self {
            Self::CkQ0 => ck_isotropic_threshold(false, tol, cfg),
            Self::CkOpt => ck_isotropic_threshold(true, tol, cfg),
            Self::CkOptDisturbance => {
                let t = ck_isotropic_threshold(true, tol, cfg)?;
                // D is decreasing in p_nl, so the bracket flips.
                let d = |p: f64| (1.0 - (1.0 + p) / SQRT_2) / 2.0;
                Ok(Threshold {
                    value: d(t.value),
                    lo: d(t.hi),
                    hi: d(t.lo),
                    tol: t.tol / SQRT_2,
                    rising: !t.rising,
                })
            }
            Self::Ad => ad_isotropic_threshold(tol),
            Self::AdPreprocessed => ad_preprocessed_threshold(AD_GRID_STEP, tol),
            Self::Bb84Q0 => bb84_critical_qber(false, tol, cfg),
            Self::Crossover => bb84_crossover(tol, cfg),
            Self::ChshQ0 => dw_critical_disturbance(false, Side::Bob, tol, cfg),
            Self::ChshOpt => dw_critical_disturbance(true, Side::Bob, tol, cfg),
            Self::Bb84Opt => bb84_critical_qber(true, tol, cfg),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdRow {
    pub kind: ThresholdKind,
    pub threshold: Threshold,
}

pub fn thresholds(tol: f64, cfg: &OptConfig, exec: Exec) -> Result<Vec<ThresholdRow>> {
    exec.map(&ThresholdKind::ALL, |&kind| {
        kind.compute(tol, cfg)
            .map(|threshold| ThresholdRow { kind, threshold })
    })
    .into_iter()
    .collect()
}
