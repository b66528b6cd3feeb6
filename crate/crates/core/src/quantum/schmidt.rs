//! Search over Schmidt coefficients for the largest generic-`d` one-way rate
//! on the quantum slice.

use super::qudit::{qudit_slice, SchmidtState, GAMMA_KEY};
use crate::correlations::random::seeded;
use crate::error::Result;
use crate::keyrate::generic_d_oneway;
use crate::parallel::Exec;
use rand::Rng;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchmidtSearch {
    /// Restrict to `c_k = c_{d−1−k}`.
    pub symmetric: bool,
    /// Random starts in addition to the two fixed ones.
    pub random_starts: usize,
    pub seed: u64,
    pub max_iter: usize,
    pub exec: Exec,
}

impl Default for SchmidtSearch {
    fn default() -> Self {
        Self {
            symmetric: true,
            random_starts: 4,
            seed: crate::correlations::random::DEFAULT_SEED,
            max_iter: 20_000,
            exec: Exec::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtOptimum {
    pub state: SchmidtState,
    /// In dits.
    pub rate: f64,
    pub rate_bits: f64,
    pub eta: f64,
}

fn expand(u: &[f64], d: usize, symmetric: bool) -> Vec<f64> {
    if !symmetric {
        return u.to_vec();
    }
    (0..d).map(|k| u[k.min(d - 1 - k)]).collect()
}

/// One-way rate in dits of the state with (unnormalized) coefficients `raw`.
pub fn schmidt_rate(raw: &[f64]) -> Result<f64> {
    let state = SchmidtState::normalized(raw)?;
    Ok(generic_d_oneway(&qudit_slice(&state)?).rate)
}

pub fn optimize_schmidt(d: usize, cfg: &SchmidtSearch) -> Result<SchmidtOptimum> {
    let m = if cfg.symmetric { d.div_ceil(2) } else { d };
    let mut starts = vec![vec![1.0; m], {
        let mut v = vec![GAMMA_KEY; m];
        v[0] = 1.0;
        if !cfg.symmetric {
            v[m - 1] = 1.0;
        }
        v
    }];
    let mut rng = seeded(cfg.seed);
    for _ in 0..cfg.random_starts {
        starts.push((0..m).map(|_| rng.gen_range(0.7..1.0)).collect());
    }
    let objective = |u: &[f64]| -> f64 {
        schmidt_rate(&expand(u, d, cfg.symmetric)).map_or(f64::INFINITY, |r| -r)
    };
    let results = cfg
        .exec
        .map(&starts, |s| nelder_mead(&objective, s, 0.05, cfg.max_iter));
    let (best, fbest) = results
        .into_iter()
        .fold((starts[0].clone(), f64::INFINITY), |acc, r| {
            if r.1 < acc.1 {
                r
            } else {
                acc
            }
        });
    let state = SchmidtState::normalized(&expand(&best, d, cfg.symmetric))?;
    let rate = -fbest;
    Ok(SchmidtOptimum {
        eta: state.overlap_max_entangled(),
        state,
        rate,
        rate_bits: rate * (d as f64).log2(),
    })
}

/// Minimizes `f` from `x0` with an axis-aligned initial simplex of size `step`.
pub fn nelder_mead(
    f: &impl Fn(&[f64]) -> f64,
    x0: &[f64],
    step: f64,
    max_iter: usize,
) -> (Vec<f64>, f64) {
    let n = x0.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = (0..=n)
        .map(|i| {
            let mut x = x0.to_vec();
            if i > 0 {
                x[i - 1] += step;
            }
            let fx = f(&x);
            (x, fx)
        })
        .collect();
    let lerp = |a: &[f64], b: &[f64], t: f64| -> Vec<f64> {
        a.iter().zip(b).map(|(ai, bi)| ai + t * (bi - ai)).collect()
    };
    for _ in 0..max_iter {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let spread = simplex[n].1 - simplex[0].1;
        let size = simplex[1..]
            .iter()
            .flat_map(|(x, _)| x.iter().zip(&simplex[0].0).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max);
        if spread.abs() < 1e-14 && size < 1e-10 {
            break;
        }
        let mut centroid = vec![0.0; n];
        for (x, _) in &simplex[..n] {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi / n as f64;
            }
        }
        let worst = simplex[n].clone();
        let reflected = lerp(&centroid, &worst.0, -1.0);
        let fr = f(&reflected);
        if fr < simplex[0].1 {
            let expanded = lerp(&centroid, &worst.0, -2.0);
            let fe = f(&expanded);
            simplex[n] = if fe < fr {
                (expanded, fe)
            } else {
                (reflected, fr)
            };
        } else if fr < simplex[n - 1].1 {
            simplex[n] = (reflected, fr);
        } else {
            let contracted = if fr < worst.1 {
                lerp(&centroid, &reflected, 0.5)
            } else {
                lerp(&centroid, &worst.0, 0.5)
            };
            let fc = f(&contracted);
            if fc < worst.1.min(fr) {
                simplex[n] = (contracted, fc);
            } else {
                let best = simplex[0].0.clone();
                for v in simplex.iter_mut().skip(1) {
                    v.0 = lerp(&best, &v.0, 0.5);
                    v.1 = f(&v.0);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    simplex.swap_remove(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nelder_mead_quadratic() {
        let f = |x: &[f64]| (x[0] - 1.0).powi(2) + 3.0 * (x[1] + 0.5).powi(2) + 0.5 * x[0] * x[1];
        let (x, _) = nelder_mead(&f, &[0.0, 0.0], 0.1, 5000);
        // grad: 2(x−1) + 0.5y = 0, 6(y+0.5) + 0.5x = 0
        let det = 2.0 * 6.0 - 0.25;
        let xs = (12.0 + 1.5) / det;
        let ys = (-6.0 - 1.0) / det;
        assert!(
            (x[0] - xs).abs() < 1e-6 && (x[1] - ys).abs() < 1e-6,
            "{x:?} {xs} {ys}"
        );
    }

    #[test]
    fn d3_symmetric_optimum() {
        let o = optimize_schmidt(3, &SchmidtSearch::default()).unwrap();
        assert!((o.rate - 0.0908).abs() < 5e-4, "{o:?}");
        let c = o.state.coeffs();
        assert!((c[1] / c[0] - GAMMA_KEY).abs() < 3e-3);
    }

    #[test]
    fn full_search_not_worse_in_d4() {
        let sym = optimize_schmidt(4, &SchmidtSearch::default()).unwrap();
        let full = optimize_schmidt(
            4,
            &SchmidtSearch {
                symmetric: false,
                ..SchmidtSearch::default()
            },
        )
        .unwrap();
        assert!(full.rate >= sym.rate - 1e-7);
        assert!(full.state.asymmetry() < 1e-3, "{full:?}");
    }
}
