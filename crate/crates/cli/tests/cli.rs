use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

fn nosig(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nosig"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = nosig(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name]
        .iter()
        .collect();
    p.to_str().unwrap().to_string()
}

/// `quantity,value` records as a lookup.
fn record(csv: &str, key: &str) -> String {
    csv.lines()
        .find_map(|l| l.strip_prefix(&format!("{key},")))
        .unwrap_or_else(|| panic!("no {key} in\n{csv}"))
        .to_string()
}

#[test]
fn enumerate_d3_split() {
    let out = stdout(&["--csv", "enumerate", "3"]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("a0,a1,b0,b1,class,detail"));
    let classes: Vec<&str> = lines.map(|l| l.split(',').nth(4).unwrap()).collect();
    let count = |c: &str| classes.iter().filter(|&&x| x == c).count();
    assert_eq!((count("L3"), count("L2"), count("Other")), (12, 6, 12));
}

#[test]
fn depolarize_embedded_pr() {
    let out = stdout(&["--csv", "depolarize", &data("pr22_in_d3.txt")]);
    assert_eq!(record(&out, "p0"), "0.875");
    assert_eq!(record(&out, "p1"), "0");
    assert_eq!(record(&out, "p2"), "0.125");
    assert_eq!(record(&out, "cglmp"), record(&out, "cglmp_input"));
}

#[test]
fn thresholds_table() {
    let out = stdout(&["--csv", "thresholds"]);
    let value = |name: &str| -> f64 {
        out.lines()
            .find(|l| l.split(',').nth(1) == Some(name))
            .and_then(|l| l.split(',').nth(2))
            .unwrap()
            .parse()
            .unwrap()
    };
    assert!((value("ck_q0_p_nl") - 0.317857).abs() < 1e-5);
    assert!((value("ck_opt_p_nl") - 0.236068).abs() < 1e-5);
    assert!((value("ad_p_nl") - 0.2).abs() < 1e-5);
    assert!((value("bb84_q0_D") - 0.110028).abs() < 1e-5);
    assert!((value("chsh_opt_D") - value("bb84_opt_D")).abs() < 1e-6);
    assert_eq!(out.lines().count(), 11);
}

#[test]
fn csv_is_byte_stable() {
    let args = ["--csv", "--steps", "21", "rates"];
    assert_eq!(stdout(&args), stdout(&args));
    let seq = stdout(&["--csv", "--steps", "21", "--sequential", "rates"]);
    assert_eq!(seq, stdout(&args));
    let map = ["--csv", "--steps", "6", "slice-map"];
    assert_eq!(stdout(&map), stdout(&map));
}

#[test]
fn slice_map_centre() {
    let out = stdout(&["--csv", "--steps", "3", "slice-map"]);
    let row = out
        .lines()
        .find(|l| l.starts_with("0.333333333333,0.333333333333,"))
        .unwrap();
    let cells: Vec<&str> = row.split(',').collect();
    assert!((cells[2].parse::<f64>().unwrap() + 1.0).abs() < 1e-11);
    assert_eq!(&cells[4..], ["0", "0", "0"]);
}

#[test]
fn isotropic_file_intrinsic() {
    let out = stdout(&["--csv", "intrinsic", &data("isotropic_half.txt")]);
    assert!(out.starts_with("quantity,value\n"));
    assert!(out.lines().count() > 2);
}

#[test]
fn bad_range_fails() {
    let out = nosig(&["rates", "--lo", "0.2", "--hi", "0.1"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}

#[test]
fn missing_file_fails() {
    let out = nosig(&["depolarize", "/definitely/not/here.txt"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("/definitely/not/here.txt"));
}

#[test]
fn malformed_file_fails() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "d=2\n0.25 0.25 x 0.25").unwrap();
    let out = nosig(&["intrinsic", f.path().to_str().unwrap()]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("parse error"));
}

#[test]
fn signalling_file_fails() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "d=2\n1 0 0 0\n0 0 0 1\n1 0 0 0\n0 0 0 1").unwrap();
    let out = nosig(&["depolarize", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("invalid table"));
}
