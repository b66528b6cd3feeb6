//! Grid-seeded golden-section search, bisection, and a 2-D grid plus
//! coordinate-descent maximizer.

use super::report::Threshold;
use crate::error::{Error, Result};

const INV_PHI: f64 = 0.618_033_988_749_894_8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptConfig {
    pub grid: usize,
    pub tol: f64,
}

impl Default for OptConfig {
    fn default() -> Self {
        Self {
            grid: 101,
            tol: 1e-6,
        }
    }
}

/// Golden-section maximum of `f` on `[lo, hi]`.
pub fn golden_max(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    while hi - lo > tol {
        if fc >= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - INV_PHI * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + INV_PHI * (hi - lo);
            fd = f(d);
        }
    }
    let x = 0.5 * (lo + hi);
    let fx = f(x);
    [(x, fx), (c, fc), (d, fd)].into_iter().fold(
        (x, fx),
        |best, cand| if cand.1 > best.1 { cand } else { best },
    )
}

/// Maximum of `f` on `[lo, hi]`: best point of a uniform grid, refined by
/// golden section between its neighbours. Endpoints are always candidates.
pub fn maximize_1d(f: impl Fn(f64) -> f64, lo: f64, hi: f64, cfg: &OptConfig) -> (f64, f64) {
    let n = cfg.grid.max(3);
    let step = (hi - lo) / (n - 1) as f64;
    let (mut bi, mut bv) = (0, f64::NEG_INFINITY);
    for i in 0..n {
        let v = f(lo + step * i as f64);
        if v > bv {
            bi = i;
            bv = v;
        }
    }
    let a = lo + step * bi.saturating_sub(1) as f64;
    let b = (lo + step * (bi + 1) as f64).min(hi);
    let (x, fx) = golden_max(&f, a, b, cfg.tol);
    if fx >= bv {
        (x, fx)
    } else {
        (lo + step * bi as f64, bv)
    }
}

/// Bisection for a sign change of `f` on `[lo, hi]`.
pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> Result<Threshold> {
    let (flo, fhi) = (f(lo), f(hi));
    let pos = |v: f64| v > 0.0;
    if pos(flo) == pos(fhi) {
        return Err(Error::Sweep(format!(
            "no sign change on [{lo}, {hi}]: f = {flo}, {fhi}"
        )));
    }
    let rising = pos(fhi);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if pos(f(mid)) == rising {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Threshold {
        value: 0.5 * (lo + hi),
        lo,
        hi,
        tol,
        rising,
    })
}

/// Maximum of `f(u, v)` over `[lo, hi]²`: grid with spacing `step`, then
/// alternating golden-section line searches until the gain drops below `tol`.
pub fn maximize_2d(
    f: impl Fn(f64, f64) -> f64,
    lo: f64,
    hi: f64,
    step: f64,
    tol: f64,
) -> (f64, f64, f64) {
    let n = ((hi - lo) / step).round() as usize + 1;
    let at = |i: usize| (lo + step * i as f64).min(hi);
    let mut best = (lo, lo, f(lo, lo));
    for i in 0..n {
        for j in 0..n {
            let (u, v) = (at(i), at(j));
            let val = f(u, v);
            if val > best.2 {
                best = (u, v, val);
            }
        }
    }
    let (mut u, mut v, mut fv) = best;
    for _ in 0..200 {
        let before = fv;
        let (nu, fu) = golden_max(
            &|t| f(t, v),
            (u - step).max(lo),
            (u + step).min(hi),
            tol * 1e-1,
        );
        if fu > fv {
            u = nu;
            fv = fu;
        }
        let (nv, fvv) = golden_max(
            &|t| f(u, t),
            (v - step).max(lo),
            (v + step).min(hi),
            tol * 1e-1,
        );
        if fvv > fv {
            v = nv;
            fv = fvv;
        }
        if fv - before < tol * 1e-3 {
            break;
        }
    }
    (u, v, fv)
}
