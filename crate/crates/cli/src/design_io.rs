//! Reading and writing design files.
//!
//! A design file is a CSV of runs: one run per line, m fields per line. The
//! levels accept three spellings per field: `-1`/`+1` (or `1`), bare `-`/`+`,
//! and `0`/`1` with 0 meaning the low level. An optional header line is
//! skipped when its fields do not parse as levels. Repeated runs are kept as
//! multiplicities.

use regulith_core::{Fraction, Point};
use thiserror::Error;

/// Largest supported factor count, mirroring the core limit.
pub const MAX_FACTORS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DesignParseError {
    #[error("no runs found")]
    Empty,

    #[error("line {line}: {got} fields, expected {expected}")]
    Ragged { line: usize, got: usize, expected: usize },

    #[error("line {line}, field {field}: cannot read level from {value:?}")]
    BadValue { line: usize, field: usize, value: String },

    #[error("{m} factors exceed the supported maximum of {MAX_FACTORS}")]
    TooManyFactors { m: usize },
}

fn parse_level(field: &str) -> Option<i8> {
    match field.trim() {
        "+1" | "1" | "+" => Some(1),
        "-1" | "0" | "-" => Some(-1),
        _ => None,
    }
}

fn parse_row(line: &str) -> Result<Vec<i8>, usize> {
    line.split(',')
        .enumerate()
        .map(|(i, field)| parse_level(field).ok_or(i + 1))
        .collect()
}

/// Parse a design file into a fraction. Line numbers in errors are 1-based
/// over the whole file, header and blank lines included.
pub fn parse_design(text: &str) -> Result<Fraction, DesignParseError> {
    let mut rows: Vec<(usize, Vec<i8>)> = Vec::new();
    let mut header_allowed = true;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        if raw.trim().is_empty() {
            continue;
        }
        match parse_row(raw) {
            Ok(levels) => {
                rows.push((line, levels));
                header_allowed = false;
            }
            Err(field) => {
                if header_allowed {
                    header_allowed = false; // the one permitted header line
                } else {
                    return Err(DesignParseError::BadValue {
                        line,
                        field,
                        value: raw.split(',').nth(field - 1).unwrap_or("").trim().to_string(),
                    });
                }
            }
        }
    }
    let Some((_, first)) = rows.first() else {
        return Err(DesignParseError::Empty);
    };
    let m = first.len();
    if m > MAX_FACTORS {
        return Err(DesignParseError::TooManyFactors { m });
    }
    let mut fraction = Fraction::new(m);
    for (line, levels) in &rows {
        if levels.len() != m {
            return Err(DesignParseError::Ragged { line: *line, got: levels.len(), expected: m });
        }
        fraction.insert(Point::from_levels(levels));
    }
    Ok(fraction)
}

/// Render a fraction as CSV, runs ascending by point mask, replicated runs
/// repeated. The output reparses to the same fraction.
pub fn write_design_csv(fraction: &Fraction) -> String {
    let mut out = String::new();
    for (point, count) in fraction.points() {
        for _ in 0..count {
            let row: Vec<String> = point.levels().iter().map(|l| l.to_string()).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_signed_plusminus_and_binary_spellings() {
        for text in ["-1,1\n-1,-1\n", "-,+\n-,-\n", "0,1\n0,0\n"] {
            let f = parse_design(text).unwrap();
            assert_eq!(f.m(), 2);
            assert_eq!(f.total_runs(), 2);
            assert!(f.contains(Point::from_levels(&[-1, 1])));
            assert!(f.contains(Point::from_levels(&[-1, -1])));
        }
    }

    #[test]
    fn header_line_is_skipped() {
        let f = parse_design("A,B\n1,1\n-1,1\n").unwrap();
        assert_eq!(f.total_runs(), 2);
    }

    #[test]
    fn bad_value_reports_line_and_field() {
        let err = parse_design("1,1\n1,x\n").unwrap_err();
        assert_eq!(
            err,
            DesignParseError::BadValue { line: 2, field: 2, value: "x".into() }
        );
    }

    #[test]
    fn second_bad_line_is_not_a_header() {
        let err = parse_design("A,B\nC,D\n1,1\n").unwrap_err();
        assert!(matches!(err, DesignParseError::BadValue { line: 2, .. }));
    }

    #[test]
    fn ragged_rows_rejected() {
        let err = parse_design("1,1\n1,1,1\n").unwrap_err();
        assert_eq!(err, DesignParseError::Ragged { line: 2, got: 3, expected: 2 });
    }

    #[test]
    fn empty_input_rejected() {
        assert_eq!(parse_design("\n\n"), Err(DesignParseError::Empty));
    }

    #[test]
    fn too_many_factors_rejected() {
        let row = vec!["1"; 17].join(",");
        assert_eq!(
            parse_design(&format!("{row}\n")),
            Err(DesignParseError::TooManyFactors { m: 17 })
        );
    }

    #[test]
    fn replicated_runs_become_multiplicities() {
        let f = parse_design("1,1\n1,1\n-1,1\n").unwrap();
        assert_eq!(f.total_runs(), 3);
        assert_eq!(f.distinct_runs(), 2);
        assert_eq!(f.multiplicity(Point::from_levels(&[1, 1])), 2);
    }

    #[test]
    fn csv_roundtrip() {
        let f = parse_design("1,-1,1\n-1,-1,-1\n1,-1,1\n").unwrap();
        assert_eq!(parse_design(&write_design_csv(&f)).unwrap(), f);
    }
}
