//! The `dtc` command line: argument parsing, the subcommands and the
//! reproduction table. `run` returns the exit code and both output streams so
//! the binary and the tests share one code path.

mod table;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{Field, F2, Q};
use crate::geometry::{point_from_json, point_to_json, sampled_path_json, space_from_json, space_to_json};
use crate::homology::{bounds_report, fixtures, SimplicialComplex};
use crate::planners::{planner_by_name, Planner};
use crate::rational::format_fraction;
use crate::symsquare::{
    diagonal_check_on, dold_check_on, expected_euler_characteristic, sp2_bound_check, SymmetricSquare,
};
use crate::verify::{
    audit_planner, branch_cut_circle_planner, constant_output_planner, continuity_profile, swapped_endpoint_planner,
    ContinuitySettings,
};

pub use table::{reproduction_table, ReproductionRow, TableReport, Witness};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAILURE: i32 = 2;

/// Samples per piece in the `plan` trace.
pub const TRACE_SAMPLES: usize = 64;

/// Largest continuity modulus at the finest scale that `audit --continuity`
/// accepts.
pub const CONTINUITY_THRESHOLD: f64 = 0.05;

/// Input formats and subcommands, printed on usage errors.
pub const SCHEMA: &str = r#"{
  "commands": {
    "plan": {"--space": "space JSON (optional, defaults to the planner's space)", "--from": "point JSON", "--to": "point JSON", "--planner": "planner name"},
    "audit": {"--planner": "planner name", "--samples": "integer, default 10000", "--continuity": "flag"},
    "bounds": {"--complex": "complex JSON, file path or fixture name", "--field": "Q | Z2 (optional)"},
    "sp2": {"--complex": "complex JSON, file path or fixture name", "--field": "Q | Z2, default Q", "--check": "dold | diag | bound (optional)", "--max-dim": "integer (optional)", "--basepoint": "vertex, default 0"},
    "table": {"--samples": "audit samples per witness, default 2000"}
  },
  "global": {"--seed": "integer, default 0", "--out": "file path", "--format": "json"},
  "planners": ["rpn(n)", "circle", "odd_sphere(n)", "even_sphere(n)", "group_translation(T2)", "product(circle,circle)", "swapped_endpoints", "branch_cut_geodesic", "constant_output"],
  "space": {"type": "circle | sphere | projective | torus | graph | product | wedge", "n": "for sphere and projective", "m": "for torus"},
  "point": "coordinate array for circle, sphere, projective and torus",
  "complex": {"vertices": "N", "maximal": "[[v, ...], ...] simplices on vertices 0..N-1"},
  "fixtures": ["point", "S1", "S2", "S3", "T2", "RP2", "Sigma2", "CP2", "figure_eight", "S1xS1", "S1xS1xS1"],
  "exit_codes": {"0": "clean report", "1": "usage error", "2": "violation or failed check"}
}"#;

#[derive(Parser, Debug)]
#[command(name = "dtc", version, about = "Distributed motion planners and bounds for distributional topological complexity")]
pub struct Cli {
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// write the report here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FieldArg {
    #[value(name = "Q")]
    Q,
    #[value(name = "Z2")]
    Z2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Sp2Check {
    Dold,
    Diag,
    Bound,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run a planner on one pair of points.
    Plan {
        #[arg(long)]
        space: Option<String>,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        planner: String,
    },
    /// Audit a planner on random pairs.
    Audit {
        #[arg(long)]
        planner: String,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long)]
        continuity: bool,
    },
    /// Cohomological lower bounds for a simplicial complex.
    Bounds {
        #[arg(long)]
        complex: String,
        #[arg(long, value_enum)]
        field: Option<FieldArg>,
    },
    /// Symmetric square of a simplicial complex.
    Sp2 {
        #[arg(long)]
        complex: String,
        #[arg(long, value_enum, default_value_t = FieldArg::Q)]
        field: FieldArg,
        #[arg(long, value_enum)]
        check: Option<Sp2Check>,
        #[arg(long)]
        max_dim: Option<usize>,
        #[arg(long, default_value_t = 0)]
        basepoint: usize,
    },
    /// Reproduction table of computed values.
    Table {
        #[arg(long, default_value_t = 2000)]
        samples: usize,
    },
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(msg: impl std::fmt::Display) -> Self {
        Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {msg}\n\nschema:\n{SCHEMA}\n") }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    Outcome { code: EXIT_OK, stdout: e.to_string(), stderr: String::new() }
                }
                _ => {
                    let text = e.to_string();
                    Outcome::usage(text.trim_start_matches("error: ").trim_end())
                }
            };
        }
    };
    let (value, ok) = match execute(&cli) {
        Ok(r) => r,
        Err(CliError::Usage(msg)) => return Outcome::usage(msg),
        Err(CliError::Failed(msg)) => (json!({ "error": msg }), false),
    };
    let text = serde_json::to_string_pretty(&value).expect("reports serialize") + "\n";
    let code = if ok { EXIT_OK } else { EXIT_FAILURE };
    match &cli.out {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => Outcome { code, stdout: String::new(), stderr: String::new() },
            Err(e) => Outcome { code: EXIT_FAILURE, stdout: String::new(), stderr: format!("cannot write {}: {e}\n", path.display()) },
        },
        None => Outcome { code, stdout: text, stderr: String::new() },
    }
}

enum CliError {
    Usage(String),
    Failed(String),
}

fn failed(e: impl std::fmt::Display) -> CliError {
    CliError::Failed(e.to_string())
}

fn to_value(x: &impl Serialize) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn execute(cli: &Cli) -> Result<(Value, bool), CliError> {
    match &cli.command {
        Command::Plan { space, from, to, planner } => plan(space.as_deref(), from, to, planner),
        Command::Audit { planner, samples, continuity } => audit(planner, *samples, cli.seed, *continuity),
        Command::Bounds { complex, field } => bounds(complex, *field),
        Command::Sp2 { complex, field, check, max_dim, basepoint } => {
            let k = load_complex(complex)?;
            match field {
                FieldArg::Q => sp2::<Q>(&k, *check, *max_dim, *basepoint),
                FieldArg::Z2 => sp2::<F2>(&k, *check, *max_dim, *basepoint),
            }
        }
        Command::Table { samples } => {
            let report = reproduction_table(*samples, cli.seed).map_err(failed)?;
            let ok = report.pass;
            Ok((to_value(&report), ok))
        }
    }
}

/// Registered planners plus the negative-control fixtures.
pub fn lookup_planner(name: &str) -> Option<Planner> {
    planner_by_name(name).or_else(|| match name {
        "swapped_endpoints" => Some(swapped_endpoint_planner()),
        "branch_cut_geodesic" => Some(branch_cut_circle_planner()),
        "constant_output" => Some(constant_output_planner()),
        _ => None,
    })
}

fn parse_json(what: &str, text: &str) -> Result<Value, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Usage(format!("{what} is not valid JSON: {e}")))
}

fn plan(space: Option<&str>, from: &str, to: &str, name: &str) -> Result<(Value, bool), CliError> {
    let planner = lookup_planner(name).ok_or_else(|| CliError::Usage(format!("unknown planner `{name}`")))?;
    if let Some(text) = space {
        let s = space_from_json(&parse_json("--space", text)?).map_err(|e| CliError::Usage(e.to_string()))?;
        if &s != planner.space() {
            return Err(CliError::Usage(format!("planner `{name}` runs on {}", space_to_json(planner.space()))));
        }
    }
    let space = planner.space();
    let x = point_from_json(space, &parse_json("--from", from)?).map_err(|e| CliError::Usage(e.to_string()))?;
    let y = point_from_json(space, &parse_json("--to", to)?).map_err(|e| CliError::Usage(e.to_string()))?;
    let d = planner.plan(&x, &y).map_err(failed)?;
    let mut pieces = Vec::new();
    for atom in d.measure().atoms() {
        pieces.push(json!({
            "weight": format_fraction(&atom.weight),
            "path": to_value(&atom.elem),
            "trace": sampled_path_json(&atom.elem, TRACE_SAMPLES).map_err(failed)?,
        }));
    }
    let ok = d.validate(space).is_ok() && d.support_size() <= planner.pieces();
    Ok((
        json!({
            "planner": planner.name(),
            "space": space_to_json(space),
            "source": point_to_json(d.source()),
            "target": point_to_json(d.target()),
            "declared_pieces": planner.pieces(),
            "support": d.support_size(),
            "pieces": pieces,
        }),
        ok,
    ))
}

fn audit(name: &str, samples: usize, seed: u64, continuity: bool) -> Result<(Value, bool), CliError> {
    let planner = lookup_planner(name).ok_or_else(|| CliError::Usage(format!("unknown planner `{name}`")))?;
    let report = audit_planner(&planner, samples, seed);
    let mut ok = report.is_clean();
    let mut out = json!({ "audit": to_value(&report) });
    if continuity {
        let settings = ContinuitySettings { seed, ..ContinuitySettings::default() };
        let profile = continuity_profile(&planner, &settings).map_err(failed)?;
        let pass = profile.non_increasing() && profile.finest() < CONTINUITY_THRESHOLD;
        ok &= pass;
        out["continuity"] = to_value(&profile);
        out["continuity"]["threshold"] = json!(CONTINUITY_THRESHOLD);
        out["continuity"]["pass"] = json!(pass);
    }
    out["pass"] = json!(ok);
    Ok((out, ok))
}

/// Inline JSON, a file holding JSON, or a fixture name.
fn load_complex(arg: &str) -> Result<SimplicialComplex, CliError> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else if let Ok(text) = std::fs::read_to_string(arg) {
        text
    } else if let Some(k) = fixtures::by_name(arg) {
        return Ok(k);
    } else {
        return Err(CliError::Usage(format!("`{arg}` is not JSON, a readable file or a fixture name")));
    };
    SimplicialComplex::from_json_str(&text).map_err(|e| CliError::Usage(e.to_string()))
}

fn bounds(complex: &str, field: Option<FieldArg>) -> Result<(Value, bool), CliError> {
    let k = load_complex(complex)?;
    let report = bounds_report(&k).map_err(failed)?;
    let ok = report.vertex_order_check;
    let mut v = to_value(&report);
    let drop: &[&str] = match field {
        None => &[],
        Some(FieldArg::Q) => &["classical_TC_lower_Z2", "classical_cat_lower_Z2", "Z2"],
        Some(FieldArg::Z2) => &["dTC_lower", "dcat_lower", "Q"],
    };
    if let Value::Object(map) = &mut v {
        for key in drop {
            map.remove(*key);
        }
    }
    Ok((v, ok))
}

fn sp2<F: Field>(
    k: &SimplicialComplex,
    check: Option<Sp2Check>,
    max_dim: Option<usize>,
    basepoint: usize,
) -> Result<(Value, bool), CliError> {
    if basepoint >= k.vertex_count() {
        return Err(CliError::Usage(format!("basepoint {basepoint} is not a vertex")));
    }
    let mut out = json!({ "field": F::name(), "betti_K": crate::homology::betti::<F>(k) });
    let ok = match check {
        Some(Sp2Check::Bound) => {
            let r = sp2_bound_check::<F>(k).map_err(failed)?;
            let ok = r.certifies_dcat_ge_2;
            out["check"] = json!("bound");
            out["report"] = to_value(&r);
            ok
        }
        Some(c) => {
            let sp = SymmetricSquare::new(k, Some(max_dim.unwrap_or(k.dim() + 1))).map_err(failed)?;
            out["betti_SP2"] = json!(sp.betti::<F>());
            out["complete"] = json!(sp.is_complete());
            if c == Sp2Check::Dold {
                let r = dold_check_on::<F>(&sp, basepoint).map_err(failed)?;
                out["check"] = json!("dold");
                out["report"] = to_value(&r);
                r.pass
            } else {
                let r = diagonal_check_on::<F>(&sp).map_err(failed)?;
                out["check"] = json!("diag");
                out["report"] = to_value(&r);
                r.surjective
            }
        }
        None => {
            let sp = SymmetricSquare::new(k, max_dim).map_err(failed)?;
            let b = sp.betti::<F>();
            let inequality = crate::homology::betti::<F>(k).iter().zip(&b).all(|(bk, bs)| bs >= bk);
            out["betti_SP2"] = json!(b);
            out["complete"] = json!(sp.is_complete());
            out["simplices"] = json!(sp.complex().counts());
            out["betti_inequality"] = json!(inequality);
            let mut ok = inequality;
            if sp.is_complete() {
                let euler = sp.complex().chain_complex().euler_characteristic() == expected_euler_characteristic(k);
                out["euler_check"] = json!(euler);
                ok &= euler;
            }
            ok
        }
    };
    out["pass"] = json!(ok);
    Ok((out, ok))
}
