//! Machine- and human-readable output structures. JSON output is
//! deterministic: every collection is ordered before serialization, and the
//! coefficient report round-trips through `serde_json` and the canonical
//! polynomial parser.

use serde::{Deserialize, Serialize};

use nscurve::lambda::LambdaPoly;
use nscurve::{GapData, SigmaExpansion};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientEntry {
    pub alpha: Vec<u32>,
    pub weight: i64,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientReport {
    pub n: u32,
    pub s: u32,
    pub genus: u32,
    pub gaps: Vec<u32>,
    pub nongaps: Vec<u32>,
    pub partition: Vec<u32>,
    pub degree: i64,
    pub n_points: usize,
    pub coefficients: Vec<CoefficientEntry>,
}

impl CoefficientReport {
    pub fn from_expansion(expansion: &SigmaExpansion, gaps: &GapData) -> CoefficientReport {
        let mut coefficients: Vec<CoefficientEntry> = expansion
            .coeffs
            .iter()
            .map(|(alpha, value)| CoefficientEntry {
                alpha: alpha.clone(),
                weight: expansion.alpha_weight(alpha),
                value: value.canonical_string(),
            })
            .collect();
        coefficients.sort_by(|a, b| (a.weight, &a.alpha).cmp(&(b.weight, &b.alpha)));
        CoefficientReport {
            n: expansion.n,
            s: expansion.s,
            genus: expansion.genus,
            gaps: expansion.gaps.clone(),
            nongaps: gaps.nongaps.clone(),
            partition: expansion.partition.parts().to_vec(),
            degree: expansion.degree,
            n_points: expansion.n_points,
            coefficients,
        }
    }

    /// Parses every coefficient string back into a polynomial; used by the
    /// round-trip test and by consumers that want exact values.
    pub fn parsed_values(&self) -> Result<Vec<(Vec<u32>, LambdaPoly)>, String> {
        self.coefficients
            .iter()
            .map(|e| {
                LambdaPoly::parse_canonical(&e.value)
                    .map(|p| (e.alpha.clone(), p))
                    .map_err(|err| err.to_string())
            })
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "curve (n,s) = ({},{}), genus {}, degree {} with {} points\n",
            self.n, self.s, self.genus, self.degree, self.n_points
        ));
        out.push_str(&format!(
            "gaps w = {:?}, partition = {:?} (weight {})\n",
            self.gaps,
            self.partition,
            self.partition.iter().sum::<u32>()
        ));
        out.push_str("coefficients (deg u_i = -w_i, deg l[i,j] = ns-ni-sj):\n");
        for e in &self.coefficients {
            let alpha = e
                .alpha
                .iter()
                .map(|a| a.to_string())
                .collect::<Vec<_>>()
                .join(",");
            out.push_str(&format!(
                "  a[{alpha}]  |alpha| = {:>3}  {}\n",
                e.weight, e.value
            ));
        }
        out
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GapsReport {
    pub n: u32,
    pub s: u32,
    pub genus: u32,
    pub gaps: Vec<u32>,
    pub nongaps: Vec<u32>,
    pub partition: Vec<u32>,
    pub partition_weight: u32,
}

impl GapsReport {
    pub fn new(n: u32, s: u32, data: &GapData) -> GapsReport {
        GapsReport {
            n,
            s,
            genus: data.genus,
            gaps: data.gaps.clone(),
            nongaps: data.nongaps.clone(),
            partition: data.partition.parts().to_vec(),
            partition_weight: data.partition.weight(),
        }
    }

    pub fn to_text(&self) -> String {
        format!(
            "n = {}, s = {}, genus = {}\nw  = {:?}\nw* = {:?}\npartition = {:?}, weight = {}\n",
            self.n, self.s, self.genus, self.gaps, self.nongaps, self.partition, self.partition_weight
        )
    }
}
