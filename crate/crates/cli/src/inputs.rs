//! Loading fans, algebras and matrices from presets or UTF-8 JSON files.

use std::path::Path;

use extconv::algebra::Algebra;
use extconv::linalg::{Field, Matrix, Scalar};
use extconv::sheaves::Space;
use extconv::toric::Fan;
use serde_json::Value;

use crate::failure::Failure;

fn read(path: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::validation(format!("{path}: {e}")))
}

/// A preset name (`p1`, `p2`, `p3`, `p1xp1`, `f2`, `blp2`) or a fan JSON file.
pub fn load_fan(arg: &str) -> Result<Fan, Failure> {
    if let Some(f) = Fan::preset(arg) {
        return Ok(f);
    }
    if !Path::new(arg).exists() {
        return Err(Failure::validation(format!(
            "fan: '{arg}' is neither a file nor a preset ({})",
            Fan::PRESETS.join(", ")
        )));
    }
    Fan::from_json(&read(arg)?).map_err(|e| Failure::from(e).context(arg))
}

/// A preset name (`k2`, `k3`, `dual2`, `dual3`, `msq`, `mat2`, `ut2`) or an algebra JSON file.
/// A file's own `field` entry takes precedence over `field`.
pub fn load_algebra(arg: &str, field: Field) -> Result<Algebra, Failure> {
    if let Some(a) = Algebra::preset(arg, field) {
        return Ok(a);
    }
    if !Path::new(arg).exists() {
        return Err(Failure::validation(format!(
            "algebra: '{arg}' is neither a file nor a preset ({})",
            Algebra::PRESETS.join(", ")
        )));
    }
    Algebra::from_json(&read(arg)?, field).map_err(|e| Failure::from(e).context(arg))
}

pub enum FanOrAlgebra {
    Fan(Fan),
    Algebra(Algebra),
}

/// Presets are resolved by name; files by their top-level keys.
pub fn load_fan_or_algebra(arg: &str, field: Field) -> Result<FanOrAlgebra, Failure> {
    if let Some(f) = Fan::preset(arg) {
        return Ok(FanOrAlgebra::Fan(f));
    }
    if let Some(a) = Algebra::preset(arg, field) {
        return Ok(FanOrAlgebra::Algebra(a));
    }
    if !Path::new(arg).exists() {
        return Err(Failure::validation(format!("input: '{arg}' is neither a file nor a fan or algebra preset")));
    }
    let text = read(arg)?;
    let value: Value = serde_json::from_str(&text).map_err(|e| Failure::validation(format!("{arg}: {e}")))?;
    if value.get("lattice_rank").is_some() {
        Ok(FanOrAlgebra::Fan(Fan::from_json(&text).map_err(|e| Failure::from(e).context(arg))?))
    } else if value.get("dim").is_some() {
        Ok(FanOrAlgebra::Algebra(Algebra::from_json(&text, field).map_err(|e| Failure::from(e).context(arg))?))
    } else {
        Err(Failure::validation(format!("{arg}: expected a 'lattice_rank' (fan) or 'dim' (algebra) field")))
    }
}

/// `P<n>` for projective space, or `pA:<algebra>` for `P(A)`.
pub fn load_space(arg: &str, field: Field) -> Result<Space, Failure> {
    if let Some(rest) = arg.strip_prefix("pA:") {
        return Ok(Space::Algebra(load_algebra(rest, field)?));
    }
    if let Some(n) = arg.strip_prefix('P').or_else(|| arg.strip_prefix('p')) {
        if let Ok(n) = n.parse::<usize>() {
            if n >= 1 {
                return Ok(Space::Projective { n, field });
            }
        }
    }
    Err(Failure::validation(format!("space: '{arg}' is not of the form P<n> or pA:<algebra>")))
}

fn entry(field: Field, v: &Value, what: &str) -> Result<Scalar, Failure> {
    match v {
        Value::String(s) => Scalar::parse(field, s).map_err(|e| Failure::from(e).context(what)),
        Value::Number(n) => n
            .as_i64()
            .map(|x| Scalar::from_i64(field, x))
            .ok_or_else(|| Failure::validation(format!("{what}: non-integer number {n}"))),
        other => Err(Failure::validation(format!("{what}: expected string or integer, got {other}"))),
    }
}

/// A matrix file: a JSON array of rows whose entries are integers or rational strings.
pub fn load_matrix(path: &str, field: Field) -> Result<Matrix, Failure> {
    let text = read(path)?;
    let value: Value = serde_json::from_str(&text).map_err(|e| Failure::validation(format!("{path}: {e}")))?;
    let rows = value.as_array().ok_or_else(|| Failure::validation(format!("{path}: expected an array of rows")))?;
    let mut data = Vec::new();
    let mut cols = None;
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| Failure::validation(format!("{path}: rows[{i}]: expected an array")))?;
        if *cols.get_or_insert(row.len()) != row.len() {
            return Err(Failure::validation(format!("{path}: rows[{i}]: ragged row")));
        }
        for (j, v) in row.iter().enumerate() {
            data.push(entry(field, v, &format!("{path}: rows[{i}][{j}]"))?);
        }
    }
    Matrix::new(field, rows.len(), cols.unwrap_or(0), data).map_err(|e| Failure::from(e).context(path))
}
