//! The full invariant suite behind the `verify` command: gap-sequence
//! duality, fundamental-form symmetry and homogeneity, the symplectic
//! pairing, and the Schur/parity/homogeneity properties of the sigma
//! expansion. Each check reports independently so failures are diagnosable.

use crate::curve::{gap_sequence, holomorphic_differentials, CurveSpec};
use crate::error::Result;
use crate::fundform::{dr_differentials, omega_hat_series, residue_pairing, solve_c, CTable};
use crate::lambda::LambdaPoly;
use crate::sigma::{
    homogeneity_check, leading_layer_is_schur, parity_check, sigma_expansion,
};

/// Outcome of one named check.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub outcome: std::result::Result<(), String>,
}

impl Check {
    fn pass(name: &str) -> Check {
        Check { name: name.to_string(), outcome: Ok(()) }
    }

    fn fail(name: &str, detail: String) -> Check {
        Check { name: name.to_string(), outcome: Err(detail) }
    }

    pub fn passed(&self) -> bool {
        self.outcome.is_ok()
    }
}

#[derive(Debug, Clone, Default)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}

/// Runs every invariant at the given expansion degree. Uses the curve's own
/// coefficient table (symbolic entries included).
pub fn run_suite(spec: &CurveSpec, degree: i64) -> Result<VerifyReport> {
    let c_table = solve_c(spec)?;
    Ok(run_suite_with(spec, degree, &c_table))
}

/// Same as [`run_suite`] but with a caller-supplied coefficient table, so
/// tests can inject a corrupted table and watch the checks fail.
pub fn run_suite_with(spec: &CurveSpec, degree: i64, c_table: &CTable) -> VerifyReport {
    let mut report = VerifyReport::default();
    let gaps = spec.gap_data();
    let g = gaps.genus;

    // Gap-sequence duality and partition facts.
    {
        let name = "gap-sequence";
        match gap_sequence(spec.n(), spec.s()) {
            Ok(d) => {
                let mut dual: Vec<u32> = d.nongaps.iter().map(|&w| 2 * g - 1 - w).collect();
                dual.sort_unstable();
                let weight_ok = d.partition.weight() as u64
                    == (spec.n() as u64 * spec.n() as u64 - 1)
                        * (spec.s() as u64 * spec.s() as u64 - 1)
                        / 24;
                if dual != d.gaps {
                    report.checks.push(Check::fail(name, "duality violated".into()));
                } else if !weight_ok {
                    report.checks.push(Check::fail(name, "partition weight mismatch".into()));
                } else if d.partition.conjugate() != d.partition {
                    report.checks.push(Check::fail(name, "partition not self-conjugate".into()));
                } else {
                    report.checks.push(Check::pass(name));
                }
            }
            Err(e) => report.checks.push(Check::fail(name, e.to_string())),
        }
    }

    // Fundamental-form symmetry and homogeneity.
    let a_cutoff = (degree + 2 * g as i64).max(6);
    let a_table = match omega_hat_series(spec, c_table, a_cutoff) {
        Ok(a) => {
            let mut ok = Ok(());
            for (&(i, j), v) in &a.entries {
                if !v.is_homogeneous_of(&spec.weight_fn(), (i + j + 2) as i64) {
                    ok = Err(format!("a_{i}{j} not homogeneous of weight {}", i + j + 2));
                    break;
                }
            }
            report.checks.push(match ok {
                Ok(()) => Check::pass("omega-hat"),
                Err(detail) => Check::fail("omega-hat", detail),
            });
            Some(a)
        }
        Err(e) => {
            report.checks.push(Check::fail("omega-hat", e.to_string()));
            None
        }
    };

    // Symplectic pairing.
    {
        let name = "symplectic-pairing";
        let max_ord = c_table
            .entries()
            .map(|(&(_, (k, l)), _)| (spec.n() * k + spec.s() * l) as i64)
            .max()
            .unwrap_or(0);
        let max_pole = (max_ord - (2 * g as i64 - 2)).max(1);
        let cutoff = 2 * max_pole + 2;
        let outcome = (|| -> std::result::Result<(), String> {
            let du = holomorphic_differentials(spec, cutoff).map_err(|e| e.to_string())?;
            let dr = dr_differentials(spec, c_table, cutoff).map_err(|e| e.to_string())?;
            for i in 0..g as usize {
                for j in 0..g as usize {
                    let p1 = residue_pairing(&du[i], &du[j]).map_err(|e| e.to_string())?;
                    let p2 = residue_pairing(&dr[i], &dr[j]).map_err(|e| e.to_string())?;
                    let p3 = residue_pairing(&du[i], &dr[j]).map_err(|e| e.to_string())?;
                    let want = if i == j { LambdaPoly::one() } else { LambdaPoly::zero() };
                    if !p1.is_zero() || !p2.is_zero() || p3 != want {
                        return Err(format!("pairing broken at (i,j)=({i},{j})"));
                    }
                }
            }
            Ok(())
        })();
        report.checks.push(match outcome {
            Ok(()) => Check::pass(name),
            Err(detail) => Check::fail(name, detail),
        });
    }

    // Sigma expansion: Schur leading layer, parity, homogeneity, residual.
    if a_table.is_some() {
        let name = "sigma-expansion";
        let min_degree = gaps.partition.weight() as i64;
        let d = degree.max(min_degree);
        match sigma_expansion(spec, d) {
            Ok(e) => {
                if !leading_layer_is_schur(&e) {
                    report.checks.push(Check::fail(name, "leading layer is not the Schur polynomial".into()));
                } else if !parity_check(&e) {
                    report.checks.push(Check::fail(name, "parity violated".into()));
                } else if !homogeneity_check(spec, &e) {
                    report.checks.push(Check::fail(name, "coefficient not homogeneous".into()));
                } else {
                    report.checks.push(Check::pass(name));
                }
            }
            Err(e) => report.checks.push(Check::fail(name, e.to_string())),
        }
    }

    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;

    #[test]
    fn suite_passes_for_small_curves() {
        let spec = CurveSpec::symbolic_with_support(2, 3, &[(1, 0), (0, 0)]).unwrap();
        let report = run_suite(&spec, 5).unwrap();
        assert!(report.all_passed(), "{report:?}");
    }

    #[test]
    fn corrupted_c_table_is_detected() {
        let spec = CurveSpec::symbolic_with_support(2, 3, &[(1, 0), (0, 0)]).unwrap();
        let c = solve_c(&spec).unwrap();
        let bad = c.with_entry((0, 0), (1, 0), LambdaPoly::constant(rat_int(2)));
        let report = run_suite_with(&spec, 5, &bad);
        assert!(!report.all_passed());
        let omega = report.checks.iter().find(|c| c.name == "omega-hat").unwrap();
        assert!(
            omega.outcome.as_ref().err().map(|d| d.contains("asymmetric")).unwrap_or(false),
            "{omega:?}"
        );
    }
}
