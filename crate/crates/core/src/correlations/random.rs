//! Seeded generators for valid no-signalling tables.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::named::shift_box;
use super::slice::SlicePoint;
use super::strategy::DeterministicStrategy;
use super::table::CorrelationTable;

/// Seed used by the bundled property checks.
pub const DEFAULT_SEED: u64 = 0x6e6f_7369_6701;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform point of the probability simplex with `n` vertices.
pub fn simplex_weights<R: Rng>(n: usize, rng: &mut R) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| -rng.gen::<f64>().max(1e-300).ln()).collect();
    let s: f64 = raw.iter().sum();
    raw.into_iter().map(|v| v / s).collect()
}

/// Random PR-type vertex: `b - a = c·xy + α_x + β_y (mod d)`.
pub fn random_pr_type<R: Rng>(d: usize, rng: &mut R) -> CorrelationTable {
    let c = rng.gen_range(1..d);
    let alpha = [rng.gen_range(0..d), rng.gen_range(0..d)];
    let beta = [rng.gen_range(0..d), rng.gen_range(0..d)];
    shift_box(d, d, move |x, y| (c * x * y + alpha[x] + beta[y]) % d)
}

pub fn random_strategy<R: Rng>(d: usize, rng: &mut R) -> DeterministicStrategy {
    DeterministicStrategy::new(
        rng.gen_range(0..d),
        rng.gen_range(0..d),
        rng.gen_range(0..d),
        rng.gen_range(0..d),
    )
}

/// Mixture of four random deterministic strategies and two random PR-type
/// points with simplex-uniform weights.
pub fn random_table<R: Rng>(d: usize, rng: &mut R) -> CorrelationTable {
    let mut parts: Vec<CorrelationTable> =
        (0..4).map(|_| random_strategy(d, rng).table(d)).collect();
    parts.push(random_pr_type(d, rng));
    parts.push(random_pr_type(d, rng));
    let w = simplex_weights(parts.len(), rng);
    CorrelationTable::mix(d, w.into_iter().zip(parts.iter())).expect("shared d")
}

pub fn random_slice_point<R: Rng>(d: usize, rng: &mut R) -> SlicePoint {
    SlicePoint::new(simplex_weights(d, rng)).expect("simplex weights are normalized")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_tables_are_valid() {
        let mut rng = seeded(DEFAULT_SEED);
        for d in 2..=6 {
            for _ in 0..20 {
                assert!(random_table(d, &mut rng).validate().passes());
            }
        }
    }

    #[test]
    fn same_seed_same_table() {
        let a = random_table(4, &mut seeded(7));
        let b = random_table(4, &mut seeded(7));
        assert_eq!(a, b);
    }
}
