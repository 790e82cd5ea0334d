//! Form sources and output sinks.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use parallelotope::exact::{self, Rational};
use parallelotope::lattice::{self, FormDocument};
use parallelotope::{QuadForm, Vector};
use serde::Serialize;
use serde_json::Value;

/// A form plus the catalog label it came from, if any.
pub struct Source {
    pub form: QuadForm,
    pub label: Option<String>,
}

pub fn from_catalog(name: &str, n: Option<usize>) -> Result<Source> {
    let (canon, k) = match lattice::parse_catalog_name(name) {
        Some((canon, k)) => (canon, k.or(n)),
        None => (name.to_string(), n),
    };
    let form = lattice::catalog(&canon, k)?;
    Ok(Source {
        form,
        label: Some(lattice::catalog_label(&canon, k)),
    })
}

/// Reads a form from JSON. Accepts `{dim, gram}`, a bare Gram matrix, or any
/// document with a `form` member (such as the output of `cell`).
pub fn form_from_value(v: &Value) -> Result<QuadForm> {
    let doc = match v {
        Value::Array(_) => {
            let gram = serde_json::from_value::<parallelotope::Matrix>(v.clone())?;
            FormDocument { dim: gram.rows(), gram }
        }
        Value::Object(map) if map.contains_key("gram") => {
            let gram = serde_json::from_value(map["gram"].clone()).context("reading gram")?;
            let dim = match map.get("dim") {
                Some(d) => serde_json::from_value(d.clone())?,
                None => parallelotope::Matrix::rows(&gram),
            };
            FormDocument { dim, gram }
        }
        Value::Object(map) if map.contains_key("form") => return form_from_value(&map["form"]),
        _ => bail!("expected a Gram matrix or an object with a `gram` member"),
    };
    Ok(QuadForm::from_document(doc)?)
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn resolve(form: Option<&Path>, lattice: Option<&str>, n: Option<usize>) -> Result<Source> {
    match (form, lattice) {
        (Some(_), Some(_)) => bail!("give exactly one of --form and --lattice"),
        (Some(path), None) => Ok(Source {
            form: form_from_value(&read_json(path)?)?,
            label: None,
        }),
        (None, Some(name)) => from_catalog(name, n),
        (None, None) => bail!("an input is required: --form <file> or --lattice <name>"),
    }
}

pub fn parse_rational_list(csv: &str) -> Result<Vec<Rational>> {
    csv.split(',')
        .map(|s| exact::parse_rational(s.trim()).map_err(|e| anyhow!("`{s}`: {e}")))
        .collect()
}

pub fn parse_vector(csv: &str) -> Result<Vector> {
    Ok(Vector(parse_rational_list(csv)?))
}

/// Entries of a JSON array given as integers or rational strings.
pub fn rationals_from_value(v: &Value) -> Result<Vec<Rational>> {
    let items = v.as_array().ok_or_else(|| anyhow!("expected an array"))?;
    items
        .iter()
        .map(|x| match x {
            Value::Number(n) => n
                .as_i64()
                .map(exact::int)
                .ok_or_else(|| anyhow!("`{n}` is not an integer; use a rational string")),
            Value::String(s) => exact::parse_rational(s).map_err(|e| anyhow!("`{s}`: {e}")),
            other => Err(anyhow!("unexpected value {other}")),
        })
        .collect()
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// Writes to `path` when given, stdout otherwise.
pub fn emit(text: &str, path: Option<&PathBuf>) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
