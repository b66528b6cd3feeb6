use nosig_secrecy::correlations::{
    bb84_noiseless, cglmp_value, decompose_chsh, enumerate_saturating, natural_relation_points,
    scan_saturating,
};
use nosig_secrecy::figures::{rates_figure, slice_map, thresholds, ThresholdKind};
use nosig_secrecy::keyrate::{
    ad_block_errors, ad_d3_margin, ck_d3, ck_d3_opt, ck_isotropic_threshold, OptConfig,
};
use nosig_secrecy::parallel::Exec;
use nosig_secrecy::protocol::build_tripartite;
use nosig_secrecy::quantum::{optimize_schmidt, SchmidtSearch};
use std::collections::BTreeSet;

#[test]
fn exhaustive_enumeration_agrees_with_relation_points() {
    for d in 2..=4 {
        let scan = scan_saturating(d);
        assert!(scan
            .iter()
            .all(|c| cglmp_value(&c.strategy.table(d)).abs() < 1e-14));
        let with_two: BTreeSet<_> = scan
            .iter()
            .filter(|c| c.strategy.relation_count(d) >= 2)
            .map(|c| c.strategy)
            .collect();
        let natural: BTreeSet<_> = natural_relation_points(d).into_iter().collect();
        assert_eq!(with_two, natural, "d={d}");
        assert_eq!(natural.len(), 6 * d * d - 8 * d);
        assert_eq!(enumerate_saturating(d).unwrap(), scan);
    }
}

#[test]
fn threshold_brackets_are_tight() {
    let rows = thresholds(1e-6, &OptConfig::default(), Exec::default()).unwrap();
    assert_eq!(rows.len(), ThresholdKind::ALL.len());
    for r in &rows {
        let t = r.threshold;
        assert!(t.lo <= t.value && t.value <= t.hi, "{}", r.kind.name());
        assert!(t.width() <= 1e-5, "{} width {}", r.kind.name(), t.width());
    }
}

#[test]
fn one_way_thresholds_are_ordered() {
    let cfg = OptConfig::default();
    let q0 = ck_isotropic_threshold(false, 1e-6, &cfg).unwrap().value;
    let opt = ck_isotropic_threshold(true, 1e-6, &cfg).unwrap().value;
    assert!(0.2 < opt && opt < q0);
    assert!((q0 - 0.317857).abs() < 1e-5);
    assert!((opt - 0.236068).abs() < 1e-5);
}

#[test]
fn ad_block_errors_decay_geometrically() {
    let p = 0.25;
    let e = (1.0 - p) / 4.0;
    let mut prev = ad_block_errors(p, 1).unwrap();
    for n in 2..=30 {
        let cur = ad_block_errors(p, n).unwrap();
        assert!(cur.0 < prev.0 && cur.1 < prev.1);
        let ratio_e = cur.1 / prev.1;
        assert!((ratio_e - p / (1.0 - e)).abs() < 1e-12);
        prev = cur;
    }
    // Bob's block error eventually falls below Eve's.
    let (ab, ev) = ad_block_errors(p, 30).unwrap();
    assert!(ab < ev);
}

#[test]
fn ternary_slice_rates() {
    let cfg = OptConfig::default();
    let r0 = ck_d3(0.8286, 0.1093, 0.0).unwrap().rate;
    assert!((r0 - 0.09076).abs() < 2e-4, "{r0}");
    assert!(ck_d3_opt(0.8286, 0.1093, &cfg).unwrap().rate >= r0);
    assert!(ad_d3_margin(0.8286, 0.1093) > 0.0);
    assert!(ad_d3_margin(0.6, 0.1) < 0.0);
}

#[test]
fn noiseless_bb84_gives_eve_everything() {
    let dec = decompose_chsh(&bb84_noiseless()).unwrap();
    assert!(dec.p_nl.abs() < 1e-12);
    let t = build_tripartite(&dec).unwrap();
    for x in 0..2 {
        assert!(t.conditional_mutual_info(x).abs() < 1e-12);
    }
}

#[test]
fn sequential_and_parallel_agree() {
    let cfg = OptConfig::default();
    let a = rates_figure(0.0, 0.15, 16, &cfg, Exec::Sequential).unwrap();
    let b = rates_figure(0.0, 0.15, 16, &cfg, Exec::Parallel).unwrap();
    assert_eq!(a.to_csv(), b.to_csv());
    let a = slice_map(6, &cfg, Exec::Sequential).unwrap();
    let b = slice_map(6, &cfg, Exec::Parallel).unwrap();
    assert_eq!(a.to_csv(), b.to_csv());
    let search = |exec| SchmidtSearch {
        exec,
        ..SchmidtSearch::default()
    };
    let a = optimize_schmidt(4, &search(Exec::Sequential)).unwrap();
    let b = optimize_schmidt(4, &search(Exec::Parallel)).unwrap();
    assert_eq!(a.rate.to_bits(), b.rate.to_bits());
}
