use super::slice::SlicePoint;
use super::table::CorrelationTable;

/// `(1/d) Σ_k P(a+k, b+k | x,y)`.
pub fn shift_average(table: &CorrelationTable) -> CorrelationTable {
    let d = table.d();
    CorrelationTable::from_fn(d, |a, b, x, y| {
        (0..d)
            .map(|k| table.get((a + k) % d, (b + k) % d, x, y))
            .sum::<f64>()
            / d as f64
    })
}

/// Both averaging steps; the output lies on the symmetric slice and keeps the
/// CGLMP value.
pub fn depolarize_table(table: &CorrelationTable) -> CorrelationTable {
    let d = table.d();
    let p1 = shift_average(table);
    let n = |v: usize| (d - v % d) % d;
    let s = |v: usize| (v + 1) % d;
    let g = |a: usize, b: usize, x: usize, y: usize| p1.get(a % d, b % d, x, y);
    CorrelationTable::from_fn(d, |a, b, x, y| {
        let sum = match (x, y) {
            (0, 0) => g(a, b, 0, 0) + g(n(a), n(b), 0, 1) + g(n(a), n(b), 1, 0) + g(a, s(b), 1, 1),
            (0, 1) => g(a, b, 0, 1) + g(n(a), s(n(b)), 1, 1) + g(n(a), n(b), 0, 0) + g(a, b, 1, 0),
            (1, 0) => {
                g(a, b, 1, 0) + g(n(s(a)), n(b), 1, 1) + g(n(a), n(b), 0, 0) + g(s(a), s(b), 0, 1)
            }
            _ => g(a, b, 1, 1) + g(n(a), s(n(b)), 0, 1) + g(n(s(a)), n(b), 1, 0) + g(s(a), b, 0, 0),
        };
        sum / 4.0
    })
}

pub fn depolarize(table: &CorrelationTable) -> SlicePoint {
    let d = table.d();
    let t = depolarize_table(table);
    let pf = (0..d).map(|delta| t.delta_prob(delta, 0, 0)).collect();
    SlicePoint::new(pf).expect("depolarized valid table lies on the slice")
}
