//! Command-line surface of the sigma-expansion library.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error, 3 internal
//! identity violation. Output is buffered and written whole, so failure
//! paths emit no partial output.

use nscurve_cli::{curvefile, report};

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use nscurve::curve::{gap_sequence, monomial_basis, CurveSpec};
use nscurve::fundform::{c_weight, omega_hat_series, solve_c};
use nscurve::schur::schur_s_powersum;
use nscurve::sigma::{constant_cn, prime_function_series, sigma_expansion, sigma_expansion_with};
use nscurve::verify::run_suite;
use report::{CoefficientReport, GapsReport};

#[derive(Parser)]
#[command(name = "nscurve", version, about = "Exact sigma-function expansions of plane (n,s)-curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct CurveArgs {
    /// Curve description file (JSON); mutually exclusive with --n/--s.
    #[arg(long)]
    curve: Option<PathBuf>,
    /// First exponent of the curve (all coefficients symbolic).
    #[arg(long)]
    n: Option<u32>,
    /// Second exponent of the curve.
    #[arg(long)]
    s: Option<u32>,
}

impl CurveArgs {
    fn resolve(&self) -> Result<CurveSpec, CliError> {
        match (&self.curve, self.n, self.s) {
            (Some(path), None, None) => curvefile::load(path).map_err(CliError::input),
            (None, Some(n), Some(s)) => CurveSpec::symbolic(n, s).map_err(CliError::from_lib),
            _ => Err(CliError::input("pass either --curve FILE or both --n and --s")),
        }
    }
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write the output to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Gap sequence, non-gaps, and the partition of the curve.
    Gaps {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        s: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Monomial basis ordered by pole order at infinity.
    Basis {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        s: u32,
        /// Largest pole order to list (default 2g).
        #[arg(long)]
        cutoff: Option<u32>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// The Schur polynomial of the curve partition in the power sums T_k.
    Schur {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        s: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Correction coefficients and the regular expansion table of the
    /// fundamental bilinear form.
    OmegaHat {
        #[command(flatten)]
        curve: CurveArgs,
        /// Largest i+j in the expansion table.
        #[arg(long, default_value_t = 6)]
        cutoff: i64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Expansion coefficients of the two-point prime function at infinity.
    Prime {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, default_value_t = 6)]
        cutoff: i64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// The sigma expansion through a weighted degree.
    Sigma {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        degree: i64,
        /// Number of points in the product formula (default max(1, 2g-1)).
        #[arg(long)]
        n_points: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// The proportionality constant of the two-point formula (numeric).
    Cn {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        s: u32,
        #[arg(long, default_value_t = 1)]
        n_points: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Runs the full invariant suite and reports each check.
    Verify {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        degree: i64,
    },
}

struct CliError {
    code: i32,
    message: String,
}

impl CliError {
    fn input(message: impl ToString) -> CliError {
        CliError { code: 2, message: message.to_string() }
    }

    fn from_lib(err: nscurve::Error) -> CliError {
        CliError {
            code: if err.is_theorem_violation() { 3 } else { 2 },
            message: err.to_string(),
        }
    }
}

fn emit(output: &OutputArgs, text: String) -> Result<(), CliError> {
    match &output.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|e| CliError::input(e.to_string()))
        }
    }
}

fn json_or<T: serde::Serialize>(format: Format, value: &T, text: String) -> Result<String, CliError> {
    match format {
        Format::Json => serde_json::to_string_pretty(value)
            .map(|mut s| {
                s.push('\n');
                s
            })
            .map_err(|e| CliError::input(e.to_string())),
        Format::Text => Ok(text),
    }
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Gaps { n, s, output } => {
            let data = gap_sequence(n, s).map_err(CliError::from_lib)?;
            let report = GapsReport::new(n, s, &data);
            let text = report.to_text();
            emit(&output, json_or(output.format, &report, text)?)?;
            Ok(0)
        }
        Command::Basis { n, s, cutoff, output } => {
            let data = gap_sequence(n, s).map_err(CliError::from_lib)?;
            let spec = CurveSpec::symbolic(n, s).map_err(CliError::from_lib)?;
            let bound = cutoff.unwrap_or(2 * data.genus);
            // Collect entries with pole order at most `bound`.
            let mut count = 1usize;
            loop {
                let basis = monomial_basis(&spec, count);
                if basis.last().map_or(true, |e| e.order > bound) || basis.len() < count {
                    break;
                }
                count += 1;
            }
            let entries: Vec<_> = monomial_basis(&spec, count)
                .into_iter()
                .filter(|e| e.order <= bound)
                .collect();
            #[derive(serde::Serialize)]
            struct BasisReport {
                n: u32,
                s: u32,
                cutoff: u32,
                entries: Vec<(u32, u32, u32)>,
            }
            let report = BasisReport {
                n,
                s,
                cutoff: bound,
                entries: entries.iter().map(|e| (e.i, e.j, e.order)).collect(),
            };
            let mut text = format!("monomials x^i y^j with pole order <= {bound}:\n");
            for e in &entries {
                text.push_str(&format!("  f: i = {}, j = {}, order = {}\n", e.i, e.j, e.order));
            }
            emit(&output, json_or(output.format, &report, text)?)?;
            Ok(0)
        }
        Command::Schur { n, s, output } => {
            let data = gap_sequence(n, s).map_err(CliError::from_lib)?;
            let schur = schur_s_powersum(&data.partition);
            #[derive(serde::Serialize)]
            struct SchurReport {
                n: u32,
                s: u32,
                partition: Vec<u32>,
                weight: u32,
                schur: String,
                support: Vec<u32>,
            }
            let report = SchurReport {
                n,
                s,
                partition: data.partition.parts().to_vec(),
                weight: data.partition.weight(),
                schur: schur.to_string_pretty(),
                support: schur.support(),
            };
            let text = format!(
                "partition = {:?} (weight {})\nS = {}\nvariables: T_k for k in {:?}\n",
                report.partition, report.weight, report.schur, report.support
            );
            emit(&output, json_or(output.format, &report, text)?)?;
            Ok(0)
        }
        Command::OmegaHat { curve, cutoff, output } => {
            let spec = curve.resolve()?;
            let c_table = solve_c(&spec).map_err(CliError::from_lib)?;
            let a_table = omega_hat_series(&spec, &c_table, cutoff).map_err(CliError::from_lib)?;
            #[derive(serde::Serialize)]
            struct OmegaReport {
                n: u32,
                s: u32,
                cutoff: i64,
                c_table: Vec<(Vec<u32>, Vec<u32>, i64, String)>,
                a_table: Vec<(u32, u32, String)>,
            }
            let report = OmegaReport {
                n: spec.n(),
                s: spec.s(),
                cutoff,
                c_table: c_table
                    .entries()
                    .map(|(&((i1, j1), (i2, j2)), v)| {
                        (
                            vec![i1, j1],
                            vec![i2, j2],
                            c_weight(&spec, (i1, j1), (i2, j2)),
                            v.canonical_string(),
                        )
                    })
                    .collect(),
                a_table: a_table
                    .entries
                    .iter()
                    .map(|(&(i, j), v)| (i, j, v.canonical_string()))
                    .collect(),
            };
            let mut text = String::new();
            text.push_str("correction coefficients c[(i1,j1);(i2,j2)]:\n");
            for (a, b, w, v) in &report.c_table {
                text.push_str(&format!("  c[{},{};{},{}] (weight {w}) = {v}\n", a[0], a[1], b[0], b[1]));
            }
            text.push_str("expansion table a[i,j] of the regular part:\n");
            for (i, j, v) in &report.a_table {
                text.push_str(&format!("  a[{i},{j}] = {v}\n"));
            }
            emit(&output, json_or(output.format, &report, text)?)?;
            Ok(0)
        }
        Command::Prime { curve, cutoff, output } => {
            let spec = curve.resolve()?;
            let c_table = solve_c(&spec).map_err(CliError::from_lib)?;
            let a_table =
                omega_hat_series(&spec, &c_table, cutoff - 2).map_err(CliError::from_lib)?;
            let prime =
                prime_function_series(&spec, &a_table, cutoff).map_err(CliError::from_lib)?;
            #[derive(serde::Serialize)]
            struct PrimeReport {
                n: u32,
                s: u32,
                genus: u32,
                cutoff: i64,
                core: Vec<(i32, i32, String)>,
                at_infinity: Vec<(i32, String)>,
            }
            let report = PrimeReport {
                n: spec.n(),
                s: spec.s(),
                genus: prime.genus,
                cutoff,
                core: prime
                    .core
                    .terms()
                    .map(|(e, c)| (e[0], e[1], c.canonical_string()))
                    .collect(),
                at_infinity: prime
                    .core_at_infinity
                    .terms()
                    .map(|(e, c)| (e[0], c.canonical_string()))
                    .collect(),
            };
            let mut text = format!(
                "prime function core (degree <= {cutoff}); full form is (t1-t2)(t1 t2)^(g-1) * core\n"
            );
            for (i, j, v) in &report.core {
                text.push_str(&format!("  core[t1^{i} t2^{j}] = {v}\n"));
            }
            text.push_str("one-point core (full form t^g * core):\n");
            for (j, v) in &report.at_infinity {
                text.push_str(&format!("  core[t^{j}] = {v}\n"));
            }
            emit(&output, json_or(output.format, &report, text)?)?;
            Ok(0)
        }
        Command::Sigma { curve, degree, n_points, output } => {
            let spec = curve.resolve()?;
            let data = spec.gap_data();
            if degree < data.partition.weight() as i64 {
                return Err(CliError::input(format!(
                    "degree must be at least the partition weight {}",
                    data.partition.weight()
                )));
            }
            let expansion = match n_points {
                Some(np) => sigma_expansion_with(&spec, degree, np),
                None => sigma_expansion(&spec, degree),
            }
            .map_err(CliError::from_lib)?;
            let report = CoefficientReport::from_expansion(&expansion, &data);
            let text = report.to_text();
            emit(&output, json_or(output.format, &report, text)?)?;
            Ok(0)
        }
        Command::Cn { n, s, n_points, output } => {
            gap_sequence(n, s).map_err(CliError::from_lib)?;
            let c = constant_cn(n, s, n_points);
            #[derive(serde::Serialize)]
            struct CnReport {
                n: u32,
                s: u32,
                n_points: u32,
                re: f64,
                im: f64,
                abs: f64,
            }
            let report = CnReport { n, s, n_points, re: c.re, im: c.im, abs: c.norm() };
            let text = format!("C_N = {:+.12} {:+.12} i  (|C_N| = {:.12})\n", c.re, c.im, c.norm());
            emit(&output, json_or(output.format, &report, text)?)?;
            Ok(0)
        }
        Command::Verify { n, s, degree } => {
            let spec = CurveSpec::symbolic(n, s).map_err(CliError::from_lib)?;
            let report = run_suite(&spec, degree).map_err(CliError::from_lib)?;
            let mut text = String::new();
            for check in &report.checks {
                match &check.outcome {
                    Ok(()) => text.push_str(&format!("check {}: PASS\n", check.name)),
                    Err(detail) => text.push_str(&format!("check {}: FAIL ({detail})\n", check.name)),
                }
            }
            print!("{text}");
            Ok(if report.all_passed() { 0 } else { 1 })
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {}", err.message);
            std::process::exit(err.code);
        }
    }
}
