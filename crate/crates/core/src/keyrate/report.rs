use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RateUnit {
    Bits,
    Trits,
    /// Base-`d` logarithms.
    Dits(usize),
}

impl RateUnit {
    /// Number of bits per unit.
    pub fn bits_per_unit(&self) -> f64 {
        match *self {
            RateUnit::Bits => 1.0,
            RateUnit::Trits => 3f64.log2(),
            RateUnit::Dits(d) => (d as f64).log2(),
        }
    }
}

/// Zero crossing located by bisection: the function is `≤ 0` at `lo` and
/// `> 0` at `hi` (or the reverse orientation, recorded by `rising`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Threshold {
    pub value: f64,
    pub lo: f64,
    pub hi: f64,
    pub tol: f64,
    pub rising: bool,
}

impl Threshold {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KeyRateReport {
    pub rate: f64,
    pub unit: RateUnit,
    /// Flip probability of a single party, when one is used.
    pub q: Option<f64>,
    /// `(q_A, q_B)` for two-party pre-processing.
    pub q_ab: Option<(f64, f64)>,
    pub threshold: Option<Threshold>,
    pub entropies: BTreeMap<&'static str, f64>,
}

impl KeyRateReport {
    pub fn new(rate: f64, unit: RateUnit) -> Self {
        Self {
            rate,
            unit,
            q: None,
            q_ab: None,
            threshold: None,
            entropies: BTreeMap::new(),
        }
    }

    pub fn rate_bits(&self) -> f64 {
        self.rate * self.unit.bits_per_unit()
    }

    pub fn with_q(mut self, q: f64) -> Self {
        self.q = Some(q);
        self
    }

    pub fn with_entropy(mut self, name: &'static str, v: f64) -> Self {
        self.entropies.insert(name, v);
        self
    }
}
