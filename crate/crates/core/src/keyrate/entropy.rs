//! Shannon entropies. `h` is always in bits unless a base is given.

use crate::error::{Error, Result};

const MASS_TOL: f64 = 1e-12;

fn plogp(v: f64) -> f64 {
    if v <= 0.0 {
        0.0
    } else {
        -v * v.log2()
    }
}

/// `-Σ v log_base v`, `0 log 0 = 0`.
pub fn entropy(dist: &[f64], base: f64) -> Result<f64> {
    let mut sum = 0.0;
    for &v in dist {
        if v.is_nan() || v < -MASS_TOL {
            return Err(Error::domain("probability", v, "[0, 1]"));
        }
        sum += v.max(0.0);
    }
    if sum > 1.0 + MASS_TOL {
        return Err(Error::domain("total mass", sum, "≤ 1"));
    }
    if !(base > 0.0 && base != 1.0) {
        return Err(Error::domain("base", base, "(0, 1) ∪ (1, ∞)"));
    }
    Ok(entropy_bits_unchecked(dist) / base.log2())
}

/// Entropy in bits without validation; negative entries count as zero.
pub fn entropy_bits_unchecked(dist: &[f64]) -> f64 {
    dist.iter().map(|&v| plogp(v)).sum()
}

/// Binary entropy in bits.
pub fn binary_h(q: f64) -> f64 {
    plogp(q) + plogp(1.0 - q)
}

/// Entropy of a triple in base 3.
pub fn h3(p: [f64; 3]) -> f64 {
    entropy_bits_unchecked(&p) / 3f64.log2()
}

/// `H(X)` of an unnormalized weight vector, renormalized; returns 0 for
/// zero total mass.
pub fn entropy_of_weights(w: &[f64]) -> f64 {
    let s: f64 = w.iter().sum();
    if s <= 0.0 {
        return 0.0;
    }
    w.iter().map(|&v| plogp(v / s)).sum()
}

/// Mutual information `I(A:B)` in bits of a joint `n_a × n_b` matrix given
/// row-major.
pub fn mutual_information(joint: &[f64], n_a: usize, n_b: usize) -> f64 {
    assert_eq!(joint.len(), n_a * n_b);
    let pa: Vec<f64> = (0..n_a)
        .map(|a| (0..n_b).map(|b| joint[a * n_b + b]).sum())
        .collect();
    let pb: Vec<f64> = (0..n_b)
        .map(|b| (0..n_a).map(|a| joint[a * n_b + b]).sum())
        .collect();
    entropy_bits_unchecked(&pa) + entropy_bits_unchecked(&pb) - entropy_bits_unchecked(joint)
}
