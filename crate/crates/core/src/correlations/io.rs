//! Plain-text distribution files.
//!
//! ```text
//! d=2
//! 1/2 0   1/2 0
//! 0   1/2 0   1/2
//! 1/2 0   0   1/2
//! 0   1/2 1/2 0
//! ```
//!
//! Row `x·d + a`, column `y·d + b`. Entries are decimals or `p/q` rationals;
//! blank lines and anything after `#` are ignored.

use super::table::CorrelationTable;
use crate::error::{Error, Result};
use crate::fmt::sig12;

/// Validation tolerance for loaded tables; entries are often rounded to
/// 12 significant digits.
const FILE_TOL: f64 = 1e-9;

fn parse_number(tok: &str, line: usize) -> Result<f64> {
    let bad = |msg: String| Error::Parse { line, msg };
    let v = match tok.split_once('/') {
        Some((p, q)) => {
            let p: f64 = p
                .parse()
                .map_err(|_| bad(format!("bad numerator in {tok:?}")))?;
            let q: f64 = q
                .parse()
                .map_err(|_| bad(format!("bad denominator in {tok:?}")))?;
            if q == 0.0 {
                return Err(bad(format!("zero denominator in {tok:?}")));
            }
            p / q
        }
        None => tok
            .parse()
            .map_err(|_| bad(format!("not a number: {tok:?}")))?,
    };
    if !v.is_finite() {
        return Err(bad(format!("non-finite entry {tok:?}")));
    }
    Ok(v)
}

pub fn parse_distribution(text: &str) -> Result<CorrelationTable> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "empty file".into(),
    })?;
    let d: usize = header
        .strip_prefix("d=")
        .and_then(|v| v.trim().parse().ok())
        .ok_or_else(|| Error::Parse {
            line: hline,
            msg: format!("expected header `d=<int>`, found {header:?}"),
        })?;
    if d < 2 {
        return Err(Error::Parse {
            line: hline,
            msg: format!("d = {d} < 2"),
        });
    }

    let mut table = CorrelationTable::zeros(d);
    let mut rows = 0;
    for (ln, l) in lines {
        if rows == 2 * d {
            return Err(Error::Parse {
                line: ln,
                msg: format!("more than {} rows", 2 * d),
            });
        }
        let vals: Vec<f64> = l
            .split_whitespace()
            .map(|t| parse_number(t, ln))
            .collect::<Result<_>>()?;
        if vals.len() != 2 * d {
            return Err(Error::Parse {
                line: ln,
                msg: format!("expected {} columns, found {}", 2 * d, vals.len()),
            });
        }
        let (x, a) = (rows / d, rows % d);
        for (c, v) in vals.into_iter().enumerate() {
            table.set(a, c % d, x, c / d, v);
        }
        rows += 1;
    }
    if rows != 2 * d {
        return Err(Error::Parse {
            line: text.lines().count().max(1),
            msg: format!("expected {} rows, found {rows}", 2 * d),
        });
    }
    let r = table.validate();
    if !r.passes_with(FILE_TOL) {
        return Err(Error::InvalidTable(format!(
            "normalization {:.1e}, no-signalling {:.1e}, positivity {:.1e} (tolerance {FILE_TOL:.0e})",
            r.normalization,
            r.no_signalling,
            r.positivity.abs()
        )));
    }
    Ok(table)
}

pub fn read_distribution(path: &std::path::Path) -> Result<CorrelationTable> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::File {
        path: path.display().to_string(),
        source,
    })?;
    parse_distribution(&text)
}

pub fn write_distribution(table: &CorrelationTable) -> String {
    let d = table.d();
    let mut out = format!("d={d}\n");
    for x in 0..2 {
        for a in 0..d {
            let row: Vec<String> = (0..2)
                .flat_map(|y| (0..d).map(move |b| (y, b)))
                .map(|(y, b)| sig12(table.get(a, b, x, y)))
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlations::{pr_2d, pr_box};

    #[test]
    fn parses_doc_example_as_pr_box() {
        let text = "d=2\n1/2 0 1/2 0\n0 1/2 0 1/2\n1/2 0 0 1/2\n0 1/2 1/2 0\n";
        let t = parse_distribution(text).unwrap();
        assert_eq!(t, pr_box());
    }

    #[test]
    fn round_trip() {
        let t = pr_2d(3).unwrap();
        let back = parse_distribution(&write_distribution(&t)).unwrap();
        assert!(back.max_abs_diff(&t) < 1e-12);
    }

    #[test]
    fn rejects_invalid_tables() {
        let unnormalized = "d=2\n1 0 0 0\n0 0 0 0\n1 0 0 0\n0 0 0 0\n";
        assert!(matches!(
            parse_distribution(unnormalized),
            Err(Error::InvalidTable(_))
        ));
        let signalling = "d=2\n1 0 0 0\n0 0 0 1\n1 0 0 0\n0 0 0 1\n";
        assert!(matches!(
            parse_distribution(signalling),
            Err(Error::InvalidTable(_))
        ));
    }

    #[test]
    fn comments_and_blank_lines() {
        let text =
            "# header\n\nd=2  # binary\n0.5 0 0.5 0\n0 0.5 0 0.5\n\n0.5 0 0 0.5\n0 0.5 0.5 0\n";
        assert!(parse_distribution(text).is_ok());
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad_header = parse_distribution("n=2\n").unwrap_err();
        assert!(matches!(bad_header, Error::Parse { line: 1, .. }));
        let short = "d=2\n0.5 0 0.5 0\n0 0.5 0 x\n";
        assert!(matches!(
            parse_distribution(short),
            Err(Error::Parse { line: 3, .. })
        ));
        let few_rows = "d=2\n0.5 0 0.5 0\n";
        assert!(parse_distribution(few_rows).is_err());
        assert!(parse_distribution("d=2\n1/0 0 0 0\n").is_err());
    }
}
