//! Parsing of the JSON input formats.

use crate::cutpoly::Graph;
use crate::exact::{IntMatrix, Rational};
use crate::margins::SimplicialComplex;
use crate::polytope::LatticeMode;
use num_bigint::BigInt;
use serde_json::Value;
use std::fmt;

#[derive(Debug)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

type Parsed<T> = std::result::Result<T, InputError>;

fn bad(msg: impl Into<String>) -> InputError {
    InputError(msg.into())
}

pub fn parse_json(text: &str, source: &str) -> Parsed<Value> {
    serde_json::from_str(text).map_err(|e| {
        let msg = e.to_string();
        let reason = msg.split(" at line ").next().unwrap_or(&msg);
        bad(format!(
            "{source}: malformed JSON at line {}, column {}: {reason}",
            e.line(),
            e.column()
        ))
    })
}

pub fn read_json(path: &str) -> Parsed<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| bad(format!("{path}: {e}")))?;
    parse_json(&text, path)
}

/// An integer given as a JSON number or a decimal string.
pub fn integer(v: &Value, what: &str) -> Parsed<BigInt> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(bad(format!("{what}: expected an integer, got {n}")))
            }
        }
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| bad(format!("{what}: expected an integer, got {s:?}"))),
        other => Err(bad(format!("{what}: expected an integer, got {other}"))),
    }
}

fn index(v: &Value, what: &str) -> Parsed<usize> {
    let i = integer(v, what)?;
    usize::try_from(i).map_err(|_| bad(format!("{what}: expected a nonnegative integer")))
}

fn array<'a>(v: &'a Value, what: &str) -> Parsed<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(format!("{what}: expected an array")))
}

fn field<'a>(v: &'a Value, key: &str) -> Parsed<&'a Value> {
    v.get(key).ok_or_else(|| bad(format!("missing field {key:?}")))
}

fn integer_rows(v: &Value, what: &str) -> Parsed<Vec<Vec<BigInt>>> {
    array(v, what)?
        .iter()
        .enumerate()
        .map(|(i, row)| {
            array(row, what)?
                .iter()
                .map(|x| integer(x, &format!("{what}[{i}]")))
                .collect()
        })
        .collect()
}

pub struct PolytopeInput {
    pub points: Vec<Vec<BigInt>>,
    pub mode: LatticeMode,
}

/// `{"points": [[ints]], "lattice": "auto" | "generated" | "integer"}`.
pub fn polytope(v: &Value) -> Parsed<PolytopeInput> {
    let points = integer_rows(field(v, "points")?, "points")?;
    let mode = match v.get("lattice").map(|l| l.as_str()) {
        None | Some(Some("auto")) | Some(Some("generated")) => LatticeMode::Generated,
        Some(Some("integer")) => LatticeMode::Integer,
        Some(other) => return Err(bad(format!("unknown lattice {other:?}"))),
    };
    Ok(PolytopeInput { points, mode })
}

/// `{"n": int, "edges": [[i, j]]}` with 1-based vertices.
pub fn graph(v: &Value) -> Parsed<Graph> {
    let n = index(field(v, "n")?, "n")?;
    let edges = array(field(v, "edges")?, "edges")?
        .iter()
        .map(|e| {
            let e = array(e, "edge")?;
            if e.len() != 2 {
                return Err(bad("edge: expected two endpoints"));
            }
            let a = index(&e[0], "edge")?;
            let b = index(&e[1], "edge")?;
            if a == 0 || b == 0 {
                return Err(bad("edge: vertices are numbered from 1"));
            }
            Ok((a - 1, b - 1))
        })
        .collect::<Parsed<Vec<_>>>()?;
    Graph::new(n, &edges).map_err(|e| bad(e.to_string()))
}

/// `{"n": int, "facets": [[ints]], "d": [ints]}` with 1-based vertices.
pub fn model(v: &Value) -> Parsed<(SimplicialComplex, Vec<usize>)> {
    let n = index(field(v, "n")?, "n")?;
    let facets = array(field(v, "facets")?, "facets")?
        .iter()
        .map(|f| {
            array(f, "facet")?
                .iter()
                .map(|x| {
                    let i = index(x, "facet")?;
                    i.checked_sub(1).ok_or_else(|| bad("facet: vertices are numbered from 1"))
                })
                .collect::<Parsed<Vec<_>>>()
        })
        .collect::<Parsed<Vec<_>>>()?;
    let d = array(field(v, "d")?, "d")?
        .iter()
        .map(|x| index(x, "d"))
        .collect::<Parsed<Vec<_>>>()?;
    let delta = SimplicialComplex::new(n, &facets).map_err(|e| bad(e.to_string()))?;
    Ok((delta, d))
}

/// A bare array of rows, or `{"matrix": [[ints]]}`.
pub fn matrix(v: &Value) -> Parsed<IntMatrix> {
    let rows = match v {
        Value::Array(_) => integer_rows(v, "matrix")?,
        Value::Object(_) => integer_rows(field(v, "matrix")?, "matrix")?,
        _ => return Err(bad("matrix: expected an array of rows")),
    };
    if rows.is_empty() {
        return Err(bad("matrix: no rows"));
    }
    IntMatrix::from_rows(rows).map_err(|e| bad(e.to_string()))
}

/// Comma-separated integers.
pub fn integer_list(s: &str, what: &str) -> Parsed<Vec<BigInt>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| bad(format!("{what}: {x:?} is not an integer")))
        })
        .collect()
}

pub fn index_list(s: &str, what: &str) -> Parsed<Vec<usize>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| bad(format!("{what}: {x:?} is not an index")))
        })
        .collect()
}

pub fn rational_string(x: &Rational) -> String {
    crate::exact::format_rational(x)
}
