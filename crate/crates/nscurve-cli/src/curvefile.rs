//! JSON curve description files.
//!
//! ```json
//! { "n": 2, "s": 3, "mode": "symbolic",
//!   "lambda": { "1,0": "symbolic", "0,0": "-1/4" } }
//! ```
//!
//! Keys are `"i,j"` index pairs; values are exact rationals (`"p/q"`) or the
//! sentinel `"symbolic"`. Coefficients not listed are zero. Numeric mode
//! requires every listed coefficient to be rational.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use nscurve::rational::parse_rational;
use nscurve::{CurveSpec, LambdaValue};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CurveFile {
    pub n: u32,
    pub s: u32,
    #[serde(default = "default_mode")]
    pub mode: String,
    #[serde(default)]
    pub lambda: BTreeMap<String, String>,
}

fn default_mode() -> String {
    "symbolic".to_string()
}

impl CurveFile {
    pub fn to_spec(&self) -> Result<CurveSpec, String> {
        if self.mode != "symbolic" && self.mode != "numeric" {
            return Err(format!("unknown mode '{}'", self.mode));
        }
        let mut lambda = BTreeMap::new();
        for (key, value) in &self.lambda {
            let (i, j) = key
                .split_once(',')
                .ok_or_else(|| format!("bad lambda key '{key}': expected \"i,j\""))?;
            let i: u32 = i.trim().parse().map_err(|_| format!("bad lambda index '{key}'"))?;
            let j: u32 = j.trim().parse().map_err(|_| format!("bad lambda index '{key}'"))?;
            let v = if value.trim() == "symbolic" {
                if self.mode == "numeric" {
                    return Err(format!(
                        "numeric mode requires rational values, but lambda[{key}] is symbolic"
                    ));
                }
                LambdaValue::Symbolic
            } else {
                LambdaValue::Value(parse_rational(value).map_err(|e| e.to_string())?)
            };
            lambda.insert((i, j), v);
        }
        CurveSpec::new(self.n, self.s, lambda).map_err(|e| e.to_string())
    }
}

pub fn load(path: &std::path::Path) -> Result<CurveSpec, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let file: CurveFile =
        serde_json::from_str(&text).map_err(|e| format!("cannot parse {}: {e}", path.display()))?;
    file.to_spec()
}
