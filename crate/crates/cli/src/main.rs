//! Command-line surface: construct a variety, run the symmetry pipeline,
//! and emit a report as JSON or aligned text derived from it.
//!
//! Exit codes: 0 on success, 1 when an internal check or census inequality
//! fails, 2 on usage errors and invalid descriptors.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use coneaut_core::census::CensusRanges;
use coneaut_core::pipeline::{fixtures, run_census, run_compute, CensusOptions, ComputeOptions};
use coneaut_core::varieties::{ProjectionCenter, VarietyDescriptor};
use coneaut_core::Error;

#[derive(Parser)]
#[command(
    name = "coneaut",
    about = "Exact symmetry computations for classical cone varieties",
    version
)]
struct Cli {
    /// Dump the audit table of pinned expected values and exit.
    #[arg(long, global = true)]
    fixtures: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Compute ideal pieces, the tangency algebra, prolongations, and the
    /// vertex locus of a variety.
    Compute(ComputeArgs),
    /// Run the dimension census and the classification table.
    Census(CensusArgs),
    /// Cut seeded general hyperplane sections, then run the pipeline.
    Section(SectionArgs),
    /// Project away from a linear center, then run the pipeline.
    Project(ProjectArgs),
    /// Print the audit table of pinned expected values.
    Fixtures(OutputArgs),
}

#[derive(Args, Clone, Copy)]
struct OutputArgs {
    /// Emit machine-readable JSON instead of aligned text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ComputeArgs {
    /// Variety kind: segre, veronese, pluecker, quadric, sympl, spinor10.
    kind: Option<String>,
    /// Kind-specific integer parameters.
    params: Vec<usize>,
    /// Full JSON descriptor (alternative to kind/params).
    #[arg(long, conflicts_with = "kind")]
    descriptor: Option<String>,
    /// Extra ideal degrees to feed the tangency solve.
    #[arg(long = "degree")]
    degrees: Vec<usize>,
    /// Highest prolongation order to compute.
    #[arg(long, default_value_t = 2)]
    max_prolong: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct CensusArgs {
    /// Range cap for the Grassmannian family parameters.
    #[arg(long, default_value_t = 12)]
    max_ab: usize,
    /// Range cap for the one-parameter families.
    #[arg(long, default_value_t = 20)]
    max_r: usize,
    /// Range cap for k+m in the symplectic projection cases.
    #[arg(long, default_value_t = 20)]
    max_km: usize,
    /// Also verify the flatness equality over the computed model list.
    #[arg(long)]
    with_prolong_equality: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SectionArgs {
    /// Variety kind of the uncut model.
    kind: String,
    /// Kind-specific integer parameters.
    params: Vec<usize>,
    /// Base seed for the random hyperplanes.
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Number of hyperplanes to cut.
    #[arg(long, default_value_t = 1)]
    codim: usize,
    /// Re-seeding budget when a genericity check fails.
    #[arg(long, default_value_t = 5)]
    max_retries: u32,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ProjectArgs {
    /// Variety kind of the source model.
    kind: String,
    /// Kind-specific integer parameters.
    params: Vec<usize>,
    /// Center: `rankK` for the standard rank-K tensor, or a JSON array of
    /// integer vectors in ambient coordinates.
    #[arg(long)]
    center: String,
    #[command(flatten)]
    output: OutputArgs,
}

fn base_descriptor(kind: &str, params: &[usize]) -> Result<VarietyDescriptor, Error> {
    let two = |what: &str| -> Result<[usize; 2], Error> {
        params
            .try_into()
            .map_err(|_| Error::InvalidParameter(format!("{what} takes exactly 2 parameters")))
    };
    match kind {
        "segre" => Ok(VarietyDescriptor::Segre { params: two("segre")? }),
        "veronese" => Ok(VarietyDescriptor::Veronese {
            params: two("veronese")?,
        }),
        "pluecker" | "plucker" => Ok(VarietyDescriptor::Pluecker {
            params: two("pluecker")?,
        }),
        "sympl" | "sympl_vmrt" => Ok(VarietyDescriptor::SymplVmrt {
            params: two("sympl")?,
        }),
        "quadric" => {
            let [n] = params.try_into().map_err(|_| {
                Error::InvalidParameter("quadric takes exactly 1 parameter".into())
            })?;
            Ok(VarietyDescriptor::Quadric { params: [n] })
        }
        "spinor10" => {
            if !params.is_empty() {
                return Err(Error::InvalidParameter(
                    "spinor10 takes no parameters".into(),
                ));
            }
            Ok(VarietyDescriptor::Spinor10)
        }
        other => Err(Error::InvalidParameter(format!(
            "unknown variety kind {other:?}"
        ))),
    }
}

fn parse_center(text: &str) -> Result<ProjectionCenter, Error> {
    if let Some(rank) = text.strip_prefix("rank") {
        let rank: usize = rank
            .parse()
            .map_err(|_| Error::Parse(format!("bad rank center {text:?}")))?;
        return Ok(ProjectionCenter::Rank(rank));
    }
    let vectors: Vec<Vec<i64>> =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("bad center: {e}")))?;
    Ok(ProjectionCenter::Vectors(vectors))
}

/// Usage-level errors exit with code 2, computational check failures with 1.
fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::InvalidParameter(_)
        | Error::Parse(_)
        | Error::VariableOutOfRange { .. }
        | Error::EmptyInput(_)
        | Error::DimensionMismatch { .. } => 2,
        _ => 1,
    }
}

fn render_value(value: &serde_json::Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match value {
        serde_json::Value::Object(map) => {
            let width = map.keys().map(String::len).max().unwrap_or(0);
            for (key, v) in map {
                match v {
                    serde_json::Value::Object(_) => {
                        out.push_str(&format!("{pad}{key}:\n"));
                        render_value(v, indent + 1, out);
                    }
                    serde_json::Value::Array(items)
                        if items.iter().any(serde_json::Value::is_object) =>
                    {
                        out.push_str(&format!("{pad}{key}:\n"));
                        render_value(v, indent + 1, out);
                    }
                    _ => {
                        out.push_str(&format!("{pad}{key:<width$}  {v}\n"));
                    }
                }
            }
        }
        serde_json::Value::Array(items) => {
            for item in items {
                if item.is_object() {
                    render_value(item, indent, out);
                    out.push('\n');
                } else {
                    out.push_str(&format!("{pad}- {item}\n"));
                }
            }
        }
        other => out.push_str(&format!("{pad}{other}\n")),
    }
}

/// Aligned text is derived from the JSON value, never computed separately.
fn emit(value: &serde_json::Value, json: bool) {
    if json {
        println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
    } else {
        let mut out = String::new();
        render_value(value, 0, &mut out);
        print!("{out}");
    }
}

fn census_text(value: &serde_json::Value) -> String {
    let mut out = String::new();
    let ihss = &value["ihss"];
    out.push_str(&format!(
        "symmetric-space census (a,b <= {}, r <= {})\n",
        ihss["ranges_max_ab"], ihss["ranges_max_r"]
    ));
    out.push_str(&format!(
        "  rows checked        {}\n",
        ihss["rows"].as_array().map_or(0, Vec::len)
    ));
    let exceptions: Vec<String> = ihss["type_i_exceptions"]
        .as_array()
        .unwrap_or(&Vec::new())
        .iter()
        .map(|p| format!("({},{})", p[0], p[1]))
        .collect();
    out.push_str(&format!(
        "  family I exceptions {}\n",
        exceptions.join(" ")
    ));
    out.push_str(&format!(
        "  family III equality {}\n",
        ihss["type_iii_equalities"]
    ));
    out.push_str(&format!(
        "projection cases checked: {}\n",
        value["projection_cases"]["checked"]
    ));
    out.push_str("classification table:\n");
    out.push_str(&format!(
        "  {:<16} {:>3} {:>10} {:>10}  {:<2} {}\n",
        "model", "n", "n(n+1)/2", "n+aut+p1", "", "recovered variety"
    ));
    if let Some(rows) = value["main_table"]["rows"].as_array() {
        for row in rows {
            out.push_str(&format!(
                "  {:<16} {:>3} {:>10} {:>10}  {:<2} {}\n",
                row["model"].as_str().unwrap_or("?"),
                row["n"].to_string(),
                row["threshold"].to_string(),
                row["total"].to_string(),
                row["relation"].as_str().unwrap_or("?"),
                row["classification"].as_str().unwrap_or("?"),
            ));
        }
    }
    if let Some(pe) = value["prolong_equality"].as_object() {
        out.push_str("flatness equality:\n");
        if let Some(rows) = pe["rows"].as_array() {
            for row in rows {
                out.push_str(&format!(
                    "  {:<14} {:>3} + {:>2} + {:>2} = {:>3} (expected {:>3}) {}\n",
                    row["model"].as_str().unwrap_or("?"),
                    row["dim_m"].to_string(),
                    row["computed_aut"].to_string(),
                    row["computed_prolong_1"].to_string(),
                    row["total"].to_string(),
                    row["dim_aut_m"].to_string(),
                    if row["equal"].as_bool().unwrap_or(false) {
                        "ok"
                    } else {
                        "MISMATCH"
                    },
                ));
            }
        }
    }
    let violations = value["violations"].as_array().map_or(0, Vec::len);
    out.push_str(&format!("violations: {violations}\n"));
    out
}

fn fixtures_text(value: &serde_json::Value) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<34} {:<14} {:>8}  {}\n",
        "model", "quantity", "expected", "source"
    ));
    if let Some(rows) = value.as_array() {
        for row in rows {
            out.push_str(&format!(
                "{:<34} {:<14} {:>8}  {}\n",
                row["model"].as_str().unwrap_or("?"),
                row["quantity"].as_str().unwrap_or("?"),
                row["expected"].to_string(),
                row["source"].as_str().unwrap_or("?"),
            ));
        }
    }
    out
}

fn run() -> Result<bool, Error> {
    let cli = Cli::parse();
    let verbose = std::env::var("CONEAUT_VERBOSE").is_ok_and(|v| v != "0");

    if cli.fixtures && cli.command.is_none() {
        let value = serde_json::to_value(fixtures()).expect("serializable");
        print!("{}", fixtures_text(&value));
        return Ok(true);
    }

    let Some(command) = cli.command else {
        return Err(Error::InvalidParameter(
            "missing subcommand; see --help".into(),
        ));
    };

    match command {
        Command::Compute(args) => {
            let descriptor = match (&args.descriptor, &args.kind) {
                (Some(text), _) => serde_json::from_str::<VarietyDescriptor>(text)
                    .map_err(|e| Error::Parse(format!("bad descriptor: {e}")))?,
                (None, Some(kind)) => base_descriptor(kind, &args.params)?,
                (None, None) => {
                    return Err(Error::InvalidParameter(
                        "compute needs a kind or --descriptor".into(),
                    ))
                }
            };
            if verbose {
                eprintln!("computing {}", descriptor.label());
            }
            let options = ComputeOptions {
                extra_degrees: args.degrees.clone(),
                max_prolong: args.max_prolong,
                ..ComputeOptions::default()
            };
            let report = run_compute(&descriptor, &options)?;
            let ok = report.checks.all_ok();
            emit(&serde_json::to_value(&report).expect("serializable"), args.output.json);
            if !ok {
                eprintln!("check failure on {}: {:?}", report.variety, report.checks);
            }
            Ok(ok)
        }
        Command::Census(args) => {
            let options = CensusOptions {
                ranges: CensusRanges {
                    max_ab: args.max_ab,
                    max_r: args.max_r,
                    proj_max_ab: args.max_ab.max(15),
                    proj_max_r: args.max_r.max(25),
                    proj_max_km: args.max_km,
                },
                with_prolong_equality: args.with_prolong_equality,
            };
            let summary = run_census(&options)?;
            let ok = summary.violations.is_empty();
            let value = serde_json::to_value(&summary).expect("serializable");
            if args.output.json {
                emit(&value, true);
            } else {
                print!("{}", census_text(&value));
            }
            if !ok {
                eprintln!("census violations: {:?}", summary.violations);
            }
            Ok(ok)
        }
        Command::Section(args) => {
            let descriptor = VarietyDescriptor::Section {
                of: Box::new(base_descriptor(&args.kind, &args.params)?),
                seed: args.seed,
                codim: args.codim,
            };
            let options = ComputeOptions {
                max_retries: args.max_retries,
                ..ComputeOptions::default()
            };
            let report = run_compute(&descriptor, &options)?;
            let ok = report.checks.all_ok();
            emit(&serde_json::to_value(&report).expect("serializable"), args.output.json);
            if !ok {
                eprintln!("check failure on {}: {:?}", report.variety, report.checks);
            }
            Ok(ok)
        }
        Command::Project(args) => {
            let descriptor = VarietyDescriptor::Projection {
                of: Box::new(base_descriptor(&args.kind, &args.params)?),
                center: parse_center(&args.center)?,
            };
            let report = run_compute(&descriptor, &ComputeOptions::default())?;
            let ok = report.checks.all_ok();
            emit(&serde_json::to_value(&report).expect("serializable"), args.output.json);
            if !ok {
                eprintln!("check failure on {}: {:?}", report.variety, report.checks);
            }
            Ok(ok)
        }
        Command::Fixtures(output) => {
            let value = serde_json::to_value(fixtures()).expect("serializable");
            if output.json {
                emit(&value, true);
            } else {
                print!("{}", fixtures_text(&value));
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
