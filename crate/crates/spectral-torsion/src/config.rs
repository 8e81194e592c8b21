//! Plain-text run configuration: `key = value` lines with `#` comments.
//! Values reuse the numeric grammar of the complex file format, so metric
//! entries may be decimals or exact rationals (`3/2`).
//!
//! Recognized keys (all optional; command-line flags override them):
//!
//! ```text
//! kind      = selfdual          # real | complex | selfdual | antiselfdual | quaternionic
//! model     = t4                # circle | t2 | t3 | t4
//! dimension = 4                 # explicit torus dimension (instead of model)
//! gram      = 1 0 0 0; 0 1 0 0; 0 0 2 0; 0 0 0 1   # row-major metric entries
//! theta     = 0.5, 0, 0, 0      # twist; `;` separates sweep points
//! length    = 1                 # torus side length, > 0; `;` separates sweep points
//! scale     = 3                 # conformal factor, > 0; `;` separates sweep points
//! seed      = 42                # recorded in every artifact
//! method    = epstein           # zeta backend: hurwitz | epstein | mellin
//! format    = json              # artifact format: json | csv (verify: table | json)
//! output    = report.json       # artifact path
//! suite     = ladder, zeta      # verify suite filter
//! h         = 1e-3, 1e-4, 1e-5  # finite-difference steps for verify
//! complex   = complex.txt       # complex file for the verify `file` suite
//! ```

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num::ToPrimitive;

use crate::error::{Error, Result};
use crate::hodge::io::parse_rational;

const KNOWN_KEYS: [&str; 14] = [
    "kind",
    "model",
    "dimension",
    "gram",
    "theta",
    "length",
    "scale",
    "seed",
    "method",
    "format",
    "output",
    "suite",
    "h",
    "complex",
];

/// A parsed configuration file: a flat string-to-string map with known
/// keys only.
#[derive(Debug, Clone, Default)]
pub struct ConfigMap {
    entries: BTreeMap<String, String>,
}

impl ConfigMap {
    pub fn parse(text: &str) -> Result<ConfigMap> {
        let mut entries = BTreeMap::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("line {}: expected `key = value`, got `{line}`", no + 1))
            })?;
            let key = key.trim().to_ascii_lowercase();
            let value = value.trim().to_string();
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(Error::Config(format!(
                    "line {}: unknown key `{key}` (known: {})",
                    no + 1,
                    KNOWN_KEYS.join(", ")
                )));
            }
            if entries.insert(key.clone(), value).is_some() {
                return Err(Error::Config(format!(
                    "line {}: key `{key}` given more than once",
                    no + 1
                )));
            }
        }
        Ok(ConfigMap { entries })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(|s| s.as_str())
    }
}

/// One number in the config grammar: decimal or rational literal.
pub fn parse_number(tok: &str) -> Result<f64> {
    let r = parse_rational(tok)?;
    r.to_f64()
        .filter(|v| v.is_finite())
        .ok_or_else(|| Error::Config(format!("number `{tok}` does not fit an f64")))
}

/// A list of numbers separated by commas and/or whitespace.
pub fn parse_number_list(text: &str) -> Result<Vec<f64>> {
    let toks: Vec<&str> = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .collect();
    if toks.is_empty() {
        return Err(Error::Config(format!("no numbers in `{text}`")));
    }
    toks.into_iter().map(parse_number).collect()
}

/// Row-major square matrix; rows may be separated by `;` (checked against
/// the expected dimension) or run together as n² entries.
pub fn parse_gram(text: &str, n: usize) -> Result<DMatrix<f64>> {
    let entries: Vec<f64> = if text.contains(';') {
        let rows: Vec<Vec<f64>> = text
            .split(';')
            .map(parse_number_list)
            .collect::<Result<_>>()?;
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Config(format!(
                "metric must be {n}x{n}; got rows of lengths {:?}",
                rows.iter().map(|r| r.len()).collect::<Vec<_>>()
            )));
        }
        rows.into_iter().flatten().collect()
    } else {
        let flat = parse_number_list(text)?;
        if flat.len() != n * n {
            return Err(Error::Config(format!(
                "metric needs {n}x{n} = {} entries, got {}",
                n * n,
                flat.len()
            )));
        }
        flat
    };
    Ok(DMatrix::from_row_slice(n, n, &entries))
}
