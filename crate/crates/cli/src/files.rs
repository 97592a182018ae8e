//! Structured-text file formats (JSON with exact integers).
//!
//! Presentation file:
//! ```text
//! { "name": "rp3", "n": 1, "B": [[2]], "c": [1] }
//! ```
//! Scheme file:
//! ```text
//! { "name": "...", "base_size": 1, "B_full": [[2, 2], [2, 0]], "c_base": [1], "extras_c": [1] }
//! ```
//! Seifert file: `{ "name": "trefoil", "V": [[-1, 1], [0, -1]] }`.
//! Knot table: `{ "trefoil": [[-1, 1], [0, -1]], ... }`.

use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use serde_json::{Map, Number, Value};
use spinsurgery::exactlin::{BitVector, IntMatrix, IntSymMatrix};
use spinsurgery::invariants::{SeifertMatrix, SurgeryScheme};
use spinsurgery::presentation::characteristic_vectors;
use spinsurgery::SpinPresentation;

use crate::error::CliError;

pub const KNOT_TABLE: &str = include_str!("../../../corpus/knots.json");

pub fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn parse_json(text: &str) -> Result<Value, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn object<'a>(v: &'a Value, allowed: &[&str]) -> Result<&'a Map<String, Value>, CliError> {
    let obj = v
        .as_object()
        .ok_or_else(|| CliError::field("<root>", "expected an object"))?;
    if let Some(key) = obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(CliError::field(key.clone(), "unknown field"));
    }
    Ok(obj)
}

fn required<'a>(obj: &'a Map<String, Value>, field: &str) -> Result<&'a Value, CliError> {
    obj.get(field).ok_or_else(|| CliError::field(field, "missing"))
}

fn integer(v: &Value, field: &str) -> Result<BigInt, CliError> {
    match v {
        Value::Number(n) => n
            .to_string()
            .parse::<BigInt>()
            .map_err(|_| CliError::field(field, format!("`{n}` is not an integer"))),
        other => Err(CliError::field(field, format!("expected an integer, found {other}"))),
    }
}

fn count(v: &Value, field: &str) -> Result<usize, CliError> {
    integer(v, field)?
        .try_into()
        .map_err(|_| CliError::field(field, "expected a non-negative count"))
}

fn int_rows(v: &Value, field: &str) -> Result<Vec<Vec<BigInt>>, CliError> {
    let rows = v
        .as_array()
        .ok_or_else(|| CliError::field(field, "expected an array of rows"))?;
    let width = rows.len();
    rows.iter()
        .enumerate()
        .map(|(r, row)| {
            let row = row
                .as_array()
                .ok_or_else(|| CliError::field(field, format!("row {r} is not an array")))?;
            if row.len() != width {
                return Err(CliError::field(
                    field,
                    format!("row {r} has {} entries, expected {width}", row.len()),
                ));
            }
            row.iter().map(|e| integer(e, field)).collect()
        })
        .collect()
}

fn bits(v: &Value, field: &str) -> Result<BitVector, CliError> {
    let arr = v
        .as_array()
        .ok_or_else(|| CliError::field(field, "expected an array of 0/1"))?;
    arr.iter()
        .map(|e| match e.as_u64() {
            Some(0) => Ok(false),
            Some(1) => Ok(true),
            _ => Err(CliError::field(field, format!("entry {e} is not 0 or 1"))),
        })
        .collect()
}

fn sym_matrix(rows: Vec<Vec<BigInt>>) -> Result<IntSymMatrix, CliError> {
    IntSymMatrix::from_rows(rows).map_err(|e| CliError::Presentation(e.into()))
}

/// A parsed presentation file; `c` may be absent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationFile {
    pub name: Option<String>,
    pub b: IntSymMatrix,
    pub c: Option<BitVector>,
}

impl PresentationFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let root = parse_json(text)?;
        let obj = object(&root, &["name", "n", "B", "c"])?;
        let name = match obj.get("name") {
            None => None,
            Some(Value::String(s)) => Some(s.clone()),
            Some(_) => return Err(CliError::field("name", "expected a string")),
        };
        let n = count(required(obj, "n")?, "n")?;
        let rows = int_rows(required(obj, "B")?, "B")?;
        if rows.len() != n {
            return Err(CliError::field("B", format!("has {} rows, but n = {n}", rows.len())));
        }
        let b = sym_matrix(rows)?;
        let c = match obj.get("c") {
            None => None,
            Some(v) => {
                let c = bits(v, "c")?;
                if c.len() != n {
                    return Err(CliError::field("c", format!("has length {}, but n = {n}", c.len())));
                }
                Some(c)
            }
        };
        if let Some(c) = &c {
            SpinPresentation::validate(b.clone(), c.clone())?;
        }
        Ok(Self { name, b, c })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        Self::parse(&read(path)?)
    }

    pub fn from_presentation(name: Option<String>, p: &SpinPresentation) -> Self {
        Self {
            name,
            b: p.matrix().clone(),
            c: Some(p.characteristic().clone()),
        }
    }

    /// The presentation, defaulting `c` to the unique spin structure when absent.
    pub fn presentation(&self) -> Result<SpinPresentation, CliError> {
        let c = match &self.c {
            Some(c) => c.clone(),
            None => {
                let all = characteristic_vectors(&self.b);
                match all.as_list() {
                    Some([only]) => only.clone(),
                    _ => {
                        return Err(CliError::MissingCharacteristicVector {
                            count: all.count().to_string(),
                        })
                    }
                }
            }
        };
        Ok(SpinPresentation::validate(self.b.clone(), c)?)
    }

    /// Canonical text form; `parse(print(f)) == f`.
    pub fn print(&self) -> String {
        let mut out = String::from("{\n");
        if let Some(name) = &self.name {
            let _ = writeln!(out, "  \"name\": {},", Value::String(name.clone()));
        }
        let n = self.b.dim();
        let _ = write!(out, "  \"n\": {n},\n  \"B\": ");
        write_rows(&mut out, &self.b.to_rows());
        match &self.c {
            Some(c) => {
                let _ = write!(out, ",\n  \"c\": {}\n", bit_list(c));
            }
            None => out.push('\n'),
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        if let Some(name) = &self.name {
            obj.insert("name".into(), Value::String(name.clone()));
        }
        obj.insert("n".into(), Value::from(self.b.dim()));
        obj.insert("B".into(), rows_json(&self.b.to_rows()));
        if let Some(c) = &self.c {
            obj.insert("c".into(), Value::from(c.to_u8s()));
        }
        Value::Object(obj)
    }
}

fn write_rows(out: &mut String, rows: &[Vec<BigInt>]) {
    if rows.is_empty() {
        out.push_str("[]");
        return;
    }
    out.push_str("[\n");
    for (i, row) in rows.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(BigInt::to_string).collect();
        let _ = write!(out, "    [{}]", cells.join(", "));
        out.push_str(if i + 1 < rows.len() { ",\n" } else { "\n" });
    }
    out.push_str("  ]");
}

fn bit_list(c: &BitVector) -> String {
    let cells: Vec<String> = c.iter().map(|b| u8::from(b).to_string()).collect();
    format!("[{}]", cells.join(", "))
}

pub fn big_json(v: &BigInt) -> Value {
    Value::Number(v.to_string().parse::<Number>().expect("integer literal"))
}

pub fn rows_json(rows: &[Vec<BigInt>]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| Value::Array(r.iter().map(big_json).collect()))
            .collect(),
    )
}

/// A parsed scheme file.
#[derive(Clone, Debug)]
pub struct SchemeFile {
    pub name: Option<String>,
    pub scheme: SurgeryScheme,
}

impl SchemeFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let root = parse_json(text)?;
        let obj = object(&root, &["name", "base_size", "B_full", "c_base", "extras_c"])?;
        let name = obj.get("name").and_then(Value::as_str).map(str::to_owned);
        let base_size = count(required(obj, "base_size")?, "base_size")?;
        let full = sym_matrix(int_rows(required(obj, "B_full")?, "B_full")?)?;
        if full.dim() < base_size {
            return Err(CliError::field(
                "B_full",
                format!("smaller than base_size = {base_size}"),
            ));
        }
        let c_base = bits(required(obj, "c_base")?, "c_base")?;
        if c_base.len() != base_size {
            return Err(CliError::field(
                "c_base",
                format!("has length {}, expected {base_size}", c_base.len()),
            ));
        }
        let base_idx: Vec<usize> = (0..base_size).collect();
        let base = SpinPresentation::validate(full.principal_submatrix(&base_idx), c_base)?;
        let declared = obj.get("extras_c").map(|v| bits(v, "extras_c")).transpose()?;
        let scheme = SurgeryScheme::new(base, full, declared)?;
        Ok(Self { name, scheme })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        Self::parse(&read(path)?)
    }
}

/// A Seifert matrix file.
pub fn parse_seifert(text: &str) -> Result<(Option<String>, SeifertMatrix), CliError> {
    let root = parse_json(text)?;
    let obj = object(&root, &["name", "V"])?;
    let name = obj.get("name").and_then(Value::as_str).map(str::to_owned);
    let v = seifert_from_rows(required(obj, "V")?, "V")?;
    Ok((name, v))
}

fn seifert_from_rows(v: &Value, field: &str) -> Result<SeifertMatrix, CliError> {
    let rows = int_rows(v, field)?;
    let m = IntMatrix::from_rows(rows).map_err(|e| CliError::field(field, e.to_string()))?;
    Ok(SeifertMatrix::new(m)?)
}

/// Knot name to Seifert matrix, in file order.
pub fn parse_knot_table(text: &str) -> Result<Vec<(String, SeifertMatrix)>, CliError> {
    let root = parse_json(text)?;
    let obj = root
        .as_object()
        .ok_or_else(|| CliError::field("<root>", "expected an object of knots"))?;
    obj.iter()
        .map(|(name, v)| Ok((name.clone(), seifert_from_rows(v, name)?)))
        .collect()
}
