//! JSON file formats shared with the CLI.
//!
//! * matrix: `{"rows": r, "cols": c, "data": [[re, im], ...]}` row-major
//! * group signal: `{"factors": [N_1, ...], "values": [[re, im], ...]}`
//! * vector family: `{"ambient_dim": d, "vectors": [[[re, im], ...], ...]}`
//! * circle signal: `[[re, im], ...]`
//!
//! Writers print every number with 17 significant digits, which round-trips
//! any `f64` exactly.

use std::fmt::Write as _;
use std::path::Path;

use serde::Deserialize;

use crate::abelian::{FiniteAbelianGroup, GroupSignal};
use crate::circle::CircleSignal;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, C64};
use crate::riesz::VectorFamily;

/// Fixed 17-significant-digit scientific notation.
pub fn format_number(x: f64) -> String {
    format!("{x:.16e}")
}

fn push_pair(out: &mut String, z: C64) {
    let _ = write!(out, "[{}, {}]", format_number(z.re), format_number(z.im));
}

fn push_pairs(out: &mut String, values: &[C64], indent: &str) {
    out.push('[');
    for (i, z) in values.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push('\n');
        out.push_str(indent);
        push_pair(out, *z);
    }
    out.push('\n');
    out.push_str(&indent[..indent.len().saturating_sub(2)]);
    out.push(']');
}

fn parse_json<'a, T: Deserialize<'a>>(text: &'a str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| {
        Error::Parse(format!(
            "{what} at line {} column {}: {e}",
            e.line(),
            e.column()
        ))
    })
}

fn to_complex(pairs: &[[f64; 2]]) -> Vec<C64> {
    pairs.iter().map(|&[re, im]| C64::new(re, im)).collect()
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixDoc {
    rows: usize,
    cols: usize,
    data: Vec<[f64; 2]>,
}

pub fn parse_matrix(text: &str) -> Result<Matrix> {
    let doc: MatrixDoc = parse_json(text, "matrix")?;
    Matrix::new(doc.rows, doc.cols, to_complex(&doc.data))
}

pub fn write_matrix(m: &Matrix) -> String {
    let mut out = format!("{{\n  \"rows\": {},\n  \"cols\": {},\n  \"data\": ", m.rows(), m.cols());
    push_pairs(&mut out, m.data(), "    ");
    out.push_str("\n}\n");
    out
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SignalDoc {
    factors: Vec<u64>,
    values: Vec<[f64; 2]>,
}

pub fn parse_group_signal(text: &str) -> Result<GroupSignal> {
    let doc: SignalDoc = parse_json(text, "group signal")?;
    let group = FiniteAbelianGroup::new(doc.factors)?;
    GroupSignal::new(group, to_complex(&doc.values))
}

pub fn write_group_signal(s: &GroupSignal) -> String {
    let factors: Vec<String> = s.group().factors().iter().map(u64::to_string).collect();
    let mut out = format!("{{\n  \"factors\": [{}],\n  \"values\": ", factors.join(", "));
    push_pairs(&mut out, s.values(), "    ");
    out.push_str("\n}\n");
    out
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyDoc {
    ambient_dim: usize,
    vectors: Vec<Vec<[f64; 2]>>,
}

pub fn parse_vector_family(text: &str) -> Result<VectorFamily> {
    let doc: FamilyDoc = parse_json(text, "vector family")?;
    let vectors: Vec<Vec<C64>> = doc.vectors.iter().map(|v| to_complex(v)).collect();
    VectorFamily::from_slices(doc.ambient_dim, &vectors)
}

pub fn write_vector_family(fam: &VectorFamily) -> String {
    let mut out = format!("{{\n  \"ambient_dim\": {},\n  \"vectors\": [", fam.ambient_dim());
    for (i, v) in fam.vectors().iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str("\n    ");
        push_pairs(&mut out, v.data(), "      ");
    }
    out.push_str("\n  ]\n}\n");
    out
}

pub fn parse_circle_signal(text: &str) -> Result<CircleSignal> {
    let pairs: Vec<[f64; 2]> = parse_json(text, "circle signal")?;
    CircleSignal::new(to_complex(&pairs))
}

pub fn write_circle_signal(s: &CircleSignal) -> String {
    let mut out = String::new();
    push_pairs(&mut out, s.samples(), "  ");
    out.push('\n');
    out
}

/// Reads a file and parses it, prefixing errors with the path.
pub fn read_with<T>(path: &Path, parse: impl Fn(&str) -> Result<T>) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| match e {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_round_trip_is_exact() {
        let m = Matrix::from_fn(2, 3, |i, j| C64::new(0.1 * i as f64 - 1.0 / 3.0, (j as f64).exp()));
        let back = parse_matrix(&write_matrix(&m)).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn matrix_length_mismatch_rejected() {
        let text = r#"{"rows": 2, "cols": 2, "data": [[1, 0], [0, 0], [0, 0]]}"#;
        assert!(matches!(parse_matrix(text), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn parse_error_reports_line() {
        let text = "{\n  \"rows\": 1,\n  \"cols\": x\n}";
        match parse_matrix(text) {
            Err(Error::Parse(msg)) => assert!(msg.contains("line 3"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn signal_and_family_round_trip() {
        let g = FiniteAbelianGroup::new(vec![2, 3]).unwrap();
        let s = GroupSignal::new(g, (0..6).map(|k| C64::new(k as f64, -0.5)).collect()).unwrap();
        assert_eq!(parse_group_signal(&write_group_signal(&s)).unwrap(), s);

        let fam = VectorFamily::adjacent_sums(3);
        assert_eq!(parse_vector_family(&write_vector_family(&fam)).unwrap(), fam);

        let c = CircleSignal::new(vec![C64::new(1e-300, 2.5), C64::new(-7.0, 0.0)]).unwrap();
        assert_eq!(parse_circle_signal(&write_circle_signal(&c)).unwrap(), c);
    }
}
