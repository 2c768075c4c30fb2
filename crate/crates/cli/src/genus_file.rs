//! Custom genera from JSON:
//!
//! ```json
//! {"name": "sinh", "b": ["1", "1/6", "1/120", "1/5040"]}
//! ```
//!
//! `b` lists `b_0 = 1, b_1, b_2, ...` as decimal `p/q` strings.

use std::fs;
use std::path::Path;

use lgenus::exact::{PowerSeries, Rational};
use lgenus::genus::GenusSpec;
use serde::Deserialize;

use crate::Failure;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GenusFile {
    name: String,
    b: Vec<String>,
}

pub fn load(path: &Path, order: usize) -> Result<GenusSpec, Failure> {
    let bad = |msg: String| Failure::usage(format!("genus file {}: {msg}", path.display()));
    let text = fs::read_to_string(path).map_err(|e| bad(e.to_string()))?;
    let file: GenusFile = serde_json::from_str(&text).map_err(|e| bad(e.to_string()))?;
    if file.b.len() <= order {
        return Err(bad(format!(
            "{} coefficients given, degree {order} needs b_0..b_{order}",
            file.b.len()
        )));
    }
    let coeffs = file.b[..=order]
        .iter()
        .map(|s| {
            s.trim()
                .parse::<Rational>()
                .map_err(|_| bad(format!("not a rational: {s:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let series = PowerSeries::from_coeffs(coeffs)?;
    Ok(GenusSpec::new(file.name, series)?)
}
