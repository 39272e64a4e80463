//! Reading lattices, generator lists and configurations from disk.

use std::fs;
use std::path::Path;

use evenlat::curveconfig::{CoverStep, CurveConfig, FixedPointData, InvolutionAction};
use evenlat::exactlinalg::IntMat;
use evenlat::json::{JsonInt, SCHEMA_VERSION};
use evenlat::lattice::{make_named, Lattice};
use num_bigint::BigInt;
use serde::Deserialize;
use serde_json::Value;

use crate::error::CliError;

/// Prefix selecting a lattice by name instead of by file.
pub const NAME_PREFIX: &str = "name:";

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GramFile {
    #[serde(default)]
    pub schema: Option<u32>,
    pub gram: Vec<Vec<JsonInt>>,
    #[serde(default)]
    pub name: Option<String>,
}

impl GramFile {
    /// The square, symmetric Gram matrix.
    pub fn matrix(&self) -> Result<IntMat, CliError> {
        if let Some(s) = self.schema {
            if s != SCHEMA_VERSION {
                return Err(CliError::Parse(format!("unsupported schema {s}")));
            }
        }
        let n = self.gram.len();
        let mut rows = Vec::with_capacity(n);
        for (i, r) in self.gram.iter().enumerate() {
            if r.len() != n {
                return Err(CliError::Parse(format!(
                    "gram row {} has {} entries, expected {n}",
                    i + 1,
                    r.len()
                )));
            }
            rows.push(r.iter().map(|x| x.0.clone()).collect::<Vec<BigInt>>());
        }
        let m = IntMat::try_from_big_rows(rows, n)?;
        if let Some((r, c)) = m.symmetry_defect() {
            return Err(CliError::Parse(format!(
                "gram is not symmetric at row {}, column {}",
                r + 1,
                c + 1
            )));
        }
        Ok(m)
    }
}

pub fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

pub fn parse_gram_file(v: Value) -> Result<GramFile, CliError> {
    serde_json::from_value(v).map_err(|e| CliError::Parse(format!("gram file: {e}")))
}

/// A lattice from a GramFile path, or from `name:<NAME>`.
pub fn lattice(arg: &str) -> Result<Lattice, CliError> {
    if let Some(name) = arg.strip_prefix(NAME_PREFIX) {
        return Ok(make_named(name)?);
    }
    let f = parse_gram_file(read_json(Path::new(arg))?)?;
    let l = Lattice::new(f.matrix()?)?;
    Ok(match f.name {
        Some(n) => l.with_name(n),
        None => l,
    })
}

/// Generator rows, inline as a JSON array or from a file holding an array or
/// `{"gens": [...]}`.
pub fn generators(arg: &str, rank: usize) -> Result<IntMat, CliError> {
    let v = if arg.trim_start().starts_with('[') {
        serde_json::from_str(arg).map_err(|e| CliError::Parse(format!("generators: {e}")))?
    } else {
        read_json(Path::new(arg))?
    };
    let v = match v {
        Value::Object(mut o) => o
            .remove("gens")
            .ok_or_else(|| CliError::Parse("generator file has no `gens` field".into()))?,
        v => v,
    };
    let rows: Vec<Vec<JsonInt>> =
        serde_json::from_value(v).map_err(|e| CliError::Parse(format!("generators: {e}")))?;
    if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != rank) {
        return Err(CliError::Parse(format!(
            "generator {} has {} coordinates, the lattice has rank {rank}",
            i + 1,
            r.len()
        )));
    }
    let rows = rows
        .into_iter()
        .map(|r| r.into_iter().map(|x| x.0).collect())
        .collect();
    Ok(IntMat::try_from_big_rows(rows, rank)?)
}

pub fn config(path: &Path) -> Result<CurveConfig, CliError> {
    Ok(CurveConfig::from_json(&read_json(path)?)?)
}

pub fn involution(path: &Path) -> Result<InvolutionAction, CliError> {
    Ok(InvolutionAction::from_json(&read_json(path)?)?)
}

pub fn cover_step(path: &Path) -> Result<CoverStep, CliError> {
    serde_json::from_value(read_json(path)?)
        .map_err(|e| CliError::Parse(format!("cover step: {e}")))
}

pub fn fixed_points(path: Option<&Path>) -> Result<FixedPointData, CliError> {
    match path {
        None => Ok(FixedPointData::default()),
        Some(p) => serde_json::from_value(read_json(p)?)
            .map_err(|e| CliError::Parse(format!("fixed point data: {e}"))),
    }
}
