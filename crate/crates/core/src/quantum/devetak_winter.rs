//! Devetak-Winter one-way rates `I(A:B) − χ(·:E)` for the qubit CHSH and
//! BB84 protocols under the Bell-diagonal attack, with noisy pre-processing.

use super::attack::{channel_from_disturbance, spin_projector, BellDiagonalAttack, Q0};
use super::linalg::{holevo, CMatrix};
use crate::error::{check_range, Result};
use crate::keyrate::entropy::mutual_information;
use crate::keyrate::optimize::{bisect, maximize_1d, OptConfig};
use crate::keyrate::{Threshold, Q_MAX};
use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};

/// Alice's measurement angles for `x = 0, 1`.
pub const ALICE_ANGLES: [f64; 2] = [FRAC_PI_2, 0.0];
/// Bob's measurement angles for `y = 0, 1`.
pub const BOB_ANGLES: [f64; 2] = [FRAC_PI_4, 3.0 * FRAC_PI_4];

/// Whose bit is the key reference and is flipped with probability `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Side {
    Alice,
    #[default]
    Bob,
}

fn flip_pair(r0: &CMatrix, r1: &CMatrix, q: f64) -> [CMatrix; 2] {
    [
        &r0.scale(1.0 - q) + &r1.scale(q),
        &r1.scale(1.0 - q) + &r0.scale(q),
    ]
}

/// `I − χ` for one round type, given `joint[a][b]` and the reference
/// party's Eve states before flipping.
fn round_rate(joint: [[f64; 2]; 2], states: [CMatrix; 2], q: f64, side: Side) -> f64 {
    let mut j = [0.0; 4];
    for a in 0..2 {
        for b in 0..2 {
            let p = joint[a][b];
            let (fa, fb) = match side {
                Side::Bob => (a, 1 - b),
                Side::Alice => (1 - a, b),
            };
            j[a * 2 + b] += (1.0 - q) * p;
            j[fa * 2 + fb] += q * p;
        }
    }
    let [r0, r1] = states;
    let flipped = flip_pair(&r0, &r1, q);
    mutual_information(&j, 2, 2) - holevo(&flipped)
}

/// CHSH protocol rate at disturbance `D`, flip probability `q` on `side`.
///
/// Bob's key bit is `b ⊕ xy`; with `Side::Bob`, Eve's states for Bob's
/// value `i` average over his two bases.
pub fn dw_rate_chsh(d: f64, q: f64, side: Side) -> Result<f64> {
    check_range("q", q, 0.0, 0.5, "[0, 1/2]")?;
    let attack = channel_from_disturbance(d)?;
    Ok(chsh_rate_for(&attack, q, side))
}

pub fn chsh_rate_for(attack: &BellDiagonalAttack, q: f64, side: Side) -> f64 {
    let id2 = CMatrix::identity(2);
    let mut total = 0.0;
    for x in 0..2 {
        let mut joint = [[0.0; 2]; 2];
        for y in 0..2 {
            for a in 0..2 {
                for b in 0..2 {
                    let m =
                        spin_projector(ALICE_ANGLES[x], a).kron(&spin_projector(BOB_ANGLES[y], b));
                    joint[a][b ^ (x * y)] += 0.5 * attack.prob(&m);
                }
            }
        }
        let states = match side {
            Side::Bob => [0, 1].map(|i| {
                let s0 = attack.eve_state(&id2.kron(&spin_projector(BOB_ANGLES[0], i)));
                let s1 = attack.eve_state(&id2.kron(&spin_projector(BOB_ANGLES[1], i ^ x)));
                (&s0 + &s1).scale(0.5)
            }),
            Side::Alice => {
                [0, 1].map(|a| attack.eve_state(&spin_projector(ALICE_ANGLES[x], a).kron(&id2)))
            }
        };
        total += 0.5 * round_rate(joint, states, q, side);
    }
    total
}

/// BB84 rate at QBER `Q_B` (the disturbance of the same attack family),
/// with Bob flipping his bit with probability `q_b`.
pub fn bb84_rate(q_bb84: f64, q_b: f64) -> Result<f64> {
    check_range("q_B", q_b, 0.0, 0.5, "[0, 1/2]")?;
    let attack = channel_from_disturbance(q_bb84)?;
    let id2 = CMatrix::identity(2);
    let mut total = 0.0;
    for theta in [0.0, FRAC_PI_2] {
        let mut joint = [[0.0; 2]; 2];
        for (a, row) in joint.iter_mut().enumerate() {
            for (b, v) in row.iter_mut().enumerate() {
                *v = attack.prob(&spin_projector(theta, a).kron(&spin_projector(theta, b)));
            }
        }
        let states = [0, 1].map(|i| attack.eve_state(&id2.kron(&spin_projector(theta, i))));
        total += 0.5 * round_rate(joint, states, q_b, Side::Bob);
    }
    Ok(total)
}

/// Rate and flip probability at the optimum over `q ∈ [0, Q_MAX]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DwOptimum {
    pub rate: f64,
    pub q: f64,
}

pub fn dw_chsh_opt(d: f64, side: Side, cfg: &OptConfig) -> Result<DwOptimum> {
    let attack = channel_from_disturbance(d)?;
    let (q, rate) = maximize_1d(|q| chsh_rate_for(&attack, q, side), 0.0, Q_MAX, cfg);
    Ok(DwOptimum { rate, q })
}

pub fn bb84_opt(q_bb84: f64, cfg: &OptConfig) -> Result<DwOptimum> {
    channel_from_disturbance(q_bb84)?;
    let (q, rate) = maximize_1d(
        |q| bb84_rate(q_bb84, q).unwrap_or(f64::NAN),
        0.0,
        Q_MAX,
        cfg,
    );
    Ok(DwOptimum { rate, q })
}

/// Zero-rate disturbance of the CHSH protocol; `optimal` maximizes over `q`.
pub fn dw_critical_disturbance(
    optimal: bool,
    side: Side,
    tol: f64,
    cfg: &OptConfig,
) -> Result<Threshold> {
    bisect(
        |d| {
            if optimal {
                dw_chsh_opt(d, side, cfg).map_or(f64::NAN, |o| o.rate)
            } else {
                dw_rate_chsh(d, 0.0, side).unwrap_or(f64::NAN)
            }
        },
        0.0,
        0.2,
        tol,
    )
}

pub fn bb84_critical_qber(optimal: bool, tol: f64, cfg: &OptConfig) -> Result<Threshold> {
    bisect(
        |d| {
            if optimal {
                bb84_opt(d, cfg).map_or(f64::NAN, |o| o.rate)
            } else {
                bb84_rate(d, 0.0).unwrap_or(f64::NAN)
            }
        },
        0.0,
        0.2,
        tol,
    )
}

/// `q_B = Q0 + q_C/√2`.
pub fn bb84_flip_from_chsh(q_c: f64) -> f64 {
    Q0 + q_c * FRAC_1_SQRT_2
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquivalenceReport {
    pub disturbance: f64,
    pub q_chsh: f64,
    pub q_bb84: f64,
    pub qber_chsh: f64,
    pub qber_bb84: f64,
    pub rate_chsh: f64,
    pub rate_bb84: f64,
}

impl EquivalenceReport {
    pub fn difference(&self) -> f64 {
        self.rate_chsh - self.rate_bb84
    }
}

/// Both rates when `Q_B = √2(Q_C − Q0)` and `q_B = Q0 + q_C/√2`.
pub fn equivalence_check(d: f64, q_c: f64) -> Result<EquivalenceReport> {
    let attack = channel_from_disturbance(d)?;
    let q_b = bb84_flip_from_chsh(q_c);
    Ok(EquivalenceReport {
        disturbance: d,
        q_chsh: q_c,
        q_bb84: q_b,
        qber_chsh: attack.qber_chsh(),
        qber_bb84: attack.qber_bb84(),
        rate_chsh: dw_rate_chsh(d, q_c, Side::Bob)?,
        rate_bb84: bb84_rate(attack.qber_bb84(), q_b.min(0.5))?,
    })
}

/// Disturbance at which BB84's optimal flip probability reaches `Q0`.
pub fn bb84_crossover(tol: f64, cfg: &OptConfig) -> Result<Threshold> {
    bisect(
        |d| bb84_opt(d, cfg).map_or(f64::NAN, |o| o.q - Q0),
        0.05,
        0.124,
        tol,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::keyrate::entropy::binary_h;

    fn cfg() -> OptConfig {
        OptConfig {
            grid: 101,
            tol: 1e-9,
        }
    }

    #[test]
    fn noiseless_rate() {
        let r = dw_rate_chsh(0.0, 0.0, Side::Bob).unwrap();
        let expect = 1.0 - binary_h((1.0 + FRAC_1_SQRT_2) / 2.0);
        assert!((r - expect).abs() < 1e-10, "{r} vs {expect}");
        assert!((bb84_rate(0.0, 0.0).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn mutual_information_display() {
        for &d in &[0.02, 0.08, 0.15] {
            let a = channel_from_disturbance(d).unwrap();
            let arg = (1.0 + (a.lambda1 - a.lambda4) * FRAC_1_SQRT_2) / 2.0;
            // At q = 0 the rate minus I(A:B) is −χ ≤ 0.
            let r = dw_rate_chsh(d, 0.0, Side::Bob).unwrap();
            assert!(r <= 1.0 - binary_h(arg) + 1e-12);
        }
    }

    #[test]
    fn bb84_is_shor_preskill() {
        for &d in &[0.01, 0.05, 0.1] {
            let r = bb84_rate(d, 0.0).unwrap();
            assert!((r - (1.0 - 2.0 * binary_h(d))).abs() < 1e-10);
        }
        let t = bb84_critical_qber(false, 1e-6, &cfg()).unwrap();
        assert!((t.value - 0.110).abs() < 1e-3);
    }

    #[test]
    fn chsh_thresholds() {
        let t0 = dw_critical_disturbance(false, Side::Bob, 1e-6, &cfg()).unwrap();
        assert!((t0.value - 0.1206).abs() < 5e-4, "{}", t0.value);
        let t1 = dw_critical_disturbance(true, Side::Bob, 1e-6, &cfg()).unwrap();
        assert!((t1.value - 0.1241).abs() < 5e-4, "{}", t1.value);
    }

    #[test]
    fn identity_along_relations() {
        for &d in &[0.0, 0.04, 0.09, 0.12] {
            for &qc in &[0.0, 0.1, 0.25, 0.4] {
                let e = equivalence_check(d, qc).unwrap();
                assert!(e.difference().abs() < 1e-8, "{e:?}");
            }
        }
    }

    #[test]
    fn alice_side_differs_but_agrees_on_noiseless_mi() {
        let a = dw_rate_chsh(0.0, 0.0, Side::Alice).unwrap();
        assert!(a <= dw_rate_chsh(0.0, 0.0, Side::Bob).unwrap() + 1e-12);
    }
}
