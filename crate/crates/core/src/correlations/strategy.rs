use super::bell::deterministic_cglmp;
use super::table::CorrelationTable;
use crate::error::{Error, Result};

/// Local deterministic point `a = a(x)`, `b = b(y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DeterministicStrategy {
    pub a0: usize,
    pub a1: usize,
    pub b0: usize,
    pub b1: usize,
}

impl DeterministicStrategy {
    pub const fn new(a0: usize, a1: usize, b0: usize, b1: usize) -> Self {
        Self { a0, a1, b0, b1 }
    }

    /// Build from `a(x) = ra + sa·x`, `b(y) = rb + sb·y` reduced mod `d`.
    pub fn affine(d: usize, ra: i64, sa: i64, rb: i64, sb: i64) -> Self {
        let m = |v: i64| v.rem_euclid(d as i64) as usize;
        Self::new(m(ra), m(ra + sa), m(rb), m(rb + sb))
    }

    pub fn a(&self, x: usize) -> usize {
        if x == 0 {
            self.a0
        } else {
            self.a1
        }
    }

    pub fn b(&self, y: usize) -> usize {
        if y == 0 {
            self.b0
        } else {
            self.b1
        }
    }

    pub fn in_range(&self, d: usize) -> bool {
        self.a0 < d && self.a1 < d && self.b0 < d && self.b1 < d
    }

    pub fn table(&self, d: usize) -> CorrelationTable {
        assert!(self.in_range(d), "{self:?} out of range for d = {d}");
        CorrelationTable::from_fn(d, |a, b, x, y| {
            f64::from(u8::from(a == self.a(x) && b == self.b(y)))
        })
    }

    /// Every one of the `d⁴` strategies, in lexicographic `(a0, a1, b0, b1)` order.
    pub fn all(d: usize) -> impl Iterator<Item = Self> {
        (0..d * d * d * d)
            .map(move |i| Self::new(i / (d * d * d), (i / (d * d)) % d, (i / d) % d, i % d))
    }

    /// Which of `a0=b0`, `a0=b1`, `a1=b0`, `a1=b1-1` hold, in that order.
    pub fn natural_relations(&self, d: usize) -> [bool; 4] {
        [
            self.a0 == self.b0,
            self.a0 == self.b1,
            self.a1 == self.b0,
            (self.a1 + 1) % d == self.b1,
        ]
    }

    pub fn relation_count(&self, d: usize) -> usize {
        self.natural_relations(d).iter().filter(|r| **r).count()
    }

    pub fn knowledge_set(&self, d: usize) -> Option<KnowledgeSet> {
        if self.b0 == self.b1 && self.b0 == self.a0 {
            Some(KnowledgeSet::Zero)
        } else if self.a1 == self.b0 && (self.b0 + 1) % d == self.b1 {
            Some(KnowledgeSet::One)
        } else {
            None
        }
    }

    pub fn saturates(&self) -> bool {
        deterministic_cglmp(self) == 0.0
    }
}

/// The two families of local points on the CGLMP facet built from
/// `b(0) = b(1) = a(0)` and `a(1) = b(0) = b(1) - 1`. Each has `d²` members.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum KnowledgeSet {
    Zero,
    One,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FacetClass {
    /// Three natural relations.
    Three,
    /// In the `Zero` knowledge set with exactly two relations.
    TwoZero,
    /// In the `One` knowledge set with exactly two relations.
    TwoOne,
    /// Exactly two relations, outside both knowledge sets.
    TwoOutside,
    /// Saturating with fewer than two relations.
    Other,
}

impl FacetClass {
    pub fn of(s: &DeterministicStrategy, d: usize) -> Self {
        match (s.relation_count(d), s.knowledge_set(d)) {
            (3, _) => Self::Three,
            (2, Some(KnowledgeSet::Zero)) => Self::TwoZero,
            (2, Some(KnowledgeSet::One)) => Self::TwoOne,
            (2, None) => Self::TwoOutside,
            _ => Self::Other,
        }
    }

    /// Member of the union of the two knowledge sets.
    pub fn in_knowledge_sets(&self) -> bool {
        matches!(self, Self::Three | Self::TwoZero | Self::TwoOne)
    }

    /// Coarse label: `L3`, `L2` or `Other` (outside the knowledge sets).
    pub fn label(&self) -> &'static str {
        match self {
            Self::Three => "L3",
            Self::TwoZero | Self::TwoOne => "L2",
            Self::TwoOutside | Self::Other => "Other",
        }
    }

    pub fn detail(&self) -> &'static str {
        match self {
            Self::Three => "three-relations",
            Self::TwoZero => "two-relations-set0",
            Self::TwoOne => "two-relations-set1",
            Self::TwoOutside => "two-relations-outside",
            Self::Other => "fewer-relations",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassifiedStrategy {
    pub strategy: DeterministicStrategy,
    pub class: FacetClass,
}

/// All saturating strategies found by the full `d⁴` scan, with their classes.
pub fn scan_saturating(d: usize) -> Vec<ClassifiedStrategy> {
    DeterministicStrategy::all(d)
        .filter(DeterministicStrategy::saturates)
        .map(|s| ClassifiedStrategy {
            strategy: s,
            class: FacetClass::of(&s, d),
        })
        .collect()
}

/// Saturating strategies. Uses the exhaustive scan up to `d = 12`; beyond
/// that only points with at least two natural relations are listed.
pub fn enumerate_saturating(d: usize) -> Result<Vec<ClassifiedStrategy>> {
    if d < 2 {
        return Err(Error::Dimension(format!("d = {d} < 2")));
    }
    if d <= 12 {
        return Ok(scan_saturating(d));
    }
    let mut out: Vec<_> = natural_relation_points(d)
        .into_iter()
        .filter(DeterministicStrategy::saturates)
        .map(|s| ClassifiedStrategy {
            strategy: s,
            class: FacetClass::of(&s, d),
        })
        .collect();
    out.sort_by_key(|c| c.strategy);
    Ok(out)
}

/// Strategies satisfying at least two natural relations; `6d² - 8d` of them.
pub fn natural_relation_points(d: usize) -> Vec<DeterministicStrategy> {
    let mut out = Vec::with_capacity(6 * d * d);
    // Each pair of relations leaves two free outputs.
    for u in 0..d {
        for v in 0..d {
            let cands = [
                DeterministicStrategy::new(u, v, u, u),
                DeterministicStrategy::new(u, v, u, (v + 1) % d),
                DeterministicStrategy::new(u, u, u, v),
                DeterministicStrategy::new(u, v, v, u),
                DeterministicStrategy::new(v, u, u, (u + 1) % d),
                DeterministicStrategy::new(u, (u + d - 1) % d, v, u),
            ];
            out.extend(cands.into_iter().filter(|s| s.relation_count(d) >= 2));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// The eight binary facet points `L_j^r`, `j ∈ 1..=4`, `r ∈ {0,1}`.
pub fn chsh_facet_strategy(j: usize, r: usize) -> DeterministicStrategy {
    assert!((1..=4).contains(&j) && r < 2, "j in 1..=4, r in 0..2");
    let r = r as i64;
    match j {
        1 => DeterministicStrategy::affine(2, r, 0, r, 0),
        2 => DeterministicStrategy::affine(2, r, 1, r, 0),
        3 => DeterministicStrategy::affine(2, r, 0, r, 1),
        _ => DeterministicStrategy::affine(2, r, 1, r + 1, 1),
    }
}

/// Named ternary facet families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum D3Label {
    /// `j ∈ 1..=4`, three relations.
    Three(u8),
    /// `j ∈ 1..=2`, two relations inside the knowledge sets.
    Two(u8),
    /// `j ∈ 1..=4`, two relations outside the knowledge sets.
    Outside(u8),
}

impl D3Label {
    pub const ALL: [D3Label; 10] = [
        D3Label::Three(1),
        D3Label::Three(2),
        D3Label::Three(3),
        D3Label::Three(4),
        D3Label::Two(1),
        D3Label::Two(2),
        D3Label::Outside(1),
        D3Label::Outside(2),
        D3Label::Outside(3),
        D3Label::Outside(4),
    ];

    pub fn strategy(&self, r: usize) -> DeterministicStrategy {
        let r = r as i64;
        let aff = |sa, rb, sb| DeterministicStrategy::affine(3, r, sa, rb, sb);
        match *self {
            D3Label::Three(1) => aff(0, r, 0),
            D3Label::Three(2) => aff(-1, r, 0),
            D3Label::Three(3) => aff(0, r, 1),
            D3Label::Three(4) => aff(-1, r - 1, 1),
            D3Label::Two(1) => aff(1, r, 0),
            D3Label::Two(2) => aff(1, r + 1, 1),
            D3Label::Outside(1) => aff(0, r, -1),
            D3Label::Outside(2) => aff(1, r, -1),
            D3Label::Outside(3) => aff(1, r + 1, -1),
            D3Label::Outside(4) => aff(-1, r + 1, -1),
            other => panic!("no such ternary family: {other:?}"),
        }
    }
}

/// The 30 ternary saturating strategies keyed by family and shift `r`.
pub fn d3_facet_strategies() -> Vec<(D3Label, usize, DeterministicStrategy)> {
    D3Label::ALL
        .iter()
        .flat_map(|l| (0..3).map(move |r| (*l, r, l.strategy(r))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlations::chsh_value;
    use std::collections::BTreeSet;

    #[test]
    fn binary_facet_has_eight_points() {
        let scan = scan_saturating(2);
        assert_eq!(scan.len(), 8);
        assert!(scan.iter().all(|c| c.class == FacetClass::Three));
        let named: BTreeSet<_> = (1..=4)
            .flat_map(|j| (0..2).map(move |r| chsh_facet_strategy(j, r)))
            .collect();
        let scanned: BTreeSet<_> = scan.iter().map(|c| c.strategy).collect();
        assert_eq!(named, scanned);
        for s in named {
            assert!((chsh_value(&s.table(2)).unwrap() - 3.0).abs() < 1e-15);
        }
    }

    #[test]
    fn ternary_counts() {
        let scan = scan_saturating(3);
        assert_eq!(scan.len(), 30);
        let count = |f: fn(&FacetClass) -> bool| scan.iter().filter(|c| f(&c.class)).count();
        assert_eq!(count(|c| *c == FacetClass::Three), 12);
        assert_eq!(
            count(|c| matches!(c, FacetClass::TwoZero | FacetClass::TwoOne)),
            6
        );
        assert_eq!(count(|c| !c.in_knowledge_sets()), 12);
    }

    #[test]
    fn ternary_named_lists_match_scan() {
        let named = d3_facet_strategies();
        let set: BTreeSet<_> = named.iter().map(|(_, _, s)| *s).collect();
        assert_eq!(set.len(), 30);
        let scanned: BTreeSet<_> = scan_saturating(3).iter().map(|c| c.strategy).collect();
        assert_eq!(set, scanned);
        for (label, _, s) in named {
            let class = FacetClass::of(&s, 3);
            match label {
                D3Label::Three(_) => assert_eq!(class, FacetClass::Three),
                D3Label::Two(_) => {
                    assert!(matches!(class, FacetClass::TwoZero | FacetClass::TwoOne))
                }
                D3Label::Outside(_) => assert_eq!(class, FacetClass::TwoOutside),
            }
        }
    }

    #[test]
    fn knowledge_sets_have_d_squared_points() {
        for d in 2..=6 {
            let all: Vec<_> = DeterministicStrategy::all(d).collect();
            for k in [KnowledgeSet::Zero, KnowledgeSet::One] {
                let n = all.iter().filter(|s| s.knowledge_set(d) == Some(k)).count();
                assert_eq!(n, d * d);
            }
            let three = all.iter().filter(|s| s.relation_count(d) == 3).count();
            assert_eq!(three, 4 * d);
            assert!(all
                .iter()
                .filter(|s| s.relation_count(d) == 3)
                .all(|s| s.knowledge_set(d).is_some()));
        }
    }

    #[test]
    fn relation_points_count() {
        for d in 2..=7 {
            let pts = natural_relation_points(d);
            assert_eq!(pts.len(), 6 * d * d - 8 * d, "d = {d}");
            let brute = DeterministicStrategy::all(d)
                .filter(|s| s.relation_count(d) >= 2)
                .count();
            assert_eq!(pts.len(), brute);
        }
    }

    #[test]
    fn zero_relation_saturating_point() {
        let s = DeterministicStrategy::new(4, 1, 5, 3);
        assert_eq!(s.relation_count(6), 0);
        assert!(s.saturates());
    }
}
