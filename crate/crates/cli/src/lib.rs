//! Argument handling and command dispatch for the `bgg` binary.

pub mod dto;

use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;

use bgg_core::bggsolve::{catalog, solution_basis, solution_from_tractor, SolutionSystem};
use bgg_core::exactmath::{parse_scalar, ExactScalar};
use bgg_core::flatverify::{verify_system, FlatOperator};
use bgg_core::liemodel::GeometryKind;
use bgg_core::repforge::{RepDescriptor, Representation};
use bgg_core::strata::{classify_points, ClassifierScheme, SampleSpec};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use dto::{BasisJson, CatalogEntryJson, CatalogJson, ErrorJson, ModelJson, StrataJson, SystemJson, VerifyJson};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Validation(_) => "validation",
            CliError::Io(_) => "io",
        }
    }
}

fn invalid(e: impl std::fmt::Display) -> CliError {
    CliError::Validation(e.to_string())
}

#[derive(Parser, Debug)]
#[command(name = "bgg", version, about = "Polynomial solutions of first BGG operators on flat models")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Args, Debug)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Write the result here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct RepArgs {
    /// `projective:N` or `conformal:P,Q`
    #[arg(long)]
    pub geometry: String,
    /// Representation descriptor, e.g. `ext(2,std)`
    #[arg(long)]
    pub rep: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dump the graded matrix model.
    Model {
        #[arg(long)]
        geometry: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// One solution per basis vector of the representation.
    Basis {
        #[command(flatten)]
        target: RepArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// The solution generated by one tractor.
    Solution {
        #[command(flatten)]
        target: RepArgs,
        /// Comma-separated rationals.
        #[arg(long, allow_hyphen_values = true)]
        tractor: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check a solution system JSON against a flat operator.
    Verify {
        #[arg(long)]
        operator: String,
        /// System JSON file; stdin when absent or `-`.
        #[arg(long)]
        input: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Explicit fixture solutions for a cataloged pair.
    Catalog {
        #[command(flatten)]
        target: RepArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Classify sample points by the values of a solution.
    Strata {
        #[arg(long)]
        geometry: Option<String>,
        #[arg(long)]
        rep: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        tractor: Option<String>,
        /// System JSON file instead of geometry, rep and tractor.
        #[arg(long)]
        input: Option<PathBuf>,
        /// `perAxis,bound`
        #[arg(long)]
        grid: Option<String>,
        /// Explicit points, `x1,x2;x1,x2;…`
        #[arg(long, allow_hyphen_values = true)]
        points: Option<String>,
        #[arg(long, default_value = "zero-nonzero")]
        scheme: String,
        #[command(flatten)]
        output: OutputArgs,
    },
}

/// Result of a command: exit code and the text to emit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub body: String,
    pub out: Option<PathBuf>,
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("DTOs serialize");
    s.push('\n');
    s
}

pub fn error_outcome(e: &CliError) -> Outcome {
    Outcome {
        code: 1,
        body: to_json(&ErrorJson {
            error: e.kind().to_string(),
            message: e.to_string(),
        }),
        out: None,
    }
}

fn parse_geometry(s: &str) -> Result<GeometryKind, CliError> {
    s.parse().map_err(invalid)
}

fn parse_rationals(s: &str) -> Result<Vec<ExactScalar>, CliError> {
    s.split(',').map(|x| parse_scalar(x).map_err(invalid)).collect()
}

fn build_rep(target: &RepArgs) -> Result<Representation, CliError> {
    let geometry = parse_geometry(&target.geometry)?;
    let model = geometry.build().map_err(invalid)?;
    let desc: RepDescriptor = target.rep.parse().map_err(invalid)?;
    desc.build(&model).map_err(invalid)
}

fn read_system(input: Option<&PathBuf>) -> Result<SolutionSystem, CliError> {
    let text = match input {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?
        }
        _ => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::Io(e.to_string()))?;
            s
        }
    };
    let json: SystemJson = serde_json::from_str(&text).map_err(invalid)?;
    json.to_system()
}

fn system_text(s: &SolutionSystem, out: &mut String) {
    if let Some(t) = s.source_tractor() {
        let t: Vec<String> = t.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "tractor ({})", t.join(", "));
    }
    for slot in s.slots() {
        let _ = writeln!(out, "  {}: {}", slot.label, slot.poly);
    }
}

fn render<T: Serialize>(format: Format, json: &T, text: impl FnOnce() -> String) -> String {
    match format {
        Format::Json => to_json(json),
        Format::Text => text(),
    }
}

pub fn run(cli: &Cli) -> Outcome {
    match execute(cli) {
        Ok(o) => o,
        Err(e) => error_outcome(&e),
    }
}

fn ok(body: String, output: &OutputArgs) -> Outcome {
    Outcome {
        code: 0,
        body,
        out: output.out.clone(),
    }
}

fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Model { geometry, output } => {
            let model = parse_geometry(geometry)?.build().map_err(invalid)?;
            let json = ModelJson::from(&model);
            Ok(ok(
                render(output.format, &json, || {
                    let mut s = format!("{} (dim {}, ambient {})\n", json.geometry, json.dim, json.ambient_dim);
                    let _ = writeln!(s, "E:\n{}", model.grading_element());
                    for (i, b) in model.g_minus_basis().iter().enumerate() {
                        let _ = writeln!(s, "B{}:\n{b}", i + 1);
                    }
                    if let Some(f) = model.form_gram() {
                        let _ = writeln!(s, "form:\n{f}");
                    }
                    s
                }),
                output,
            ))
        }
        Command::Basis { target, output } => {
            let rep = build_rep(target)?;
            let systems = solution_basis(&rep).map_err(invalid)?;
            let json = BasisJson {
                geometry: rep.kind().to_string(),
                rep: rep.descriptor().to_string(),
                dim: rep.dim(),
                depth: rep.depth(),
                systems: systems.iter().map(Into::into).collect(),
            };
            Ok(ok(
                render(output.format, &json, || {
                    let mut s = format!("{} on {}: {} systems, degree bound {}\n", json.rep, json.geometry, json.dim, json.depth);
                    for sys in &systems {
                        system_text(sys, &mut s);
                    }
                    s
                }),
                output,
            ))
        }
        Command::Solution { target, tractor, output } => {
            let rep = build_rep(target)?;
            let v0 = parse_rationals(tractor)?;
            let system = solution_from_tractor(&rep, &v0).map_err(invalid)?;
            Ok(ok(
                render(output.format, &SystemJson::from(&system), || {
                    let mut s = String::new();
                    system_text(&system, &mut s);
                    s
                }),
                output,
            ))
        }
        Command::Verify { operator, input, output } => {
            let op: FlatOperator = operator.parse().map_err(invalid)?;
            let system = read_system(input.as_ref())?;
            let failing = verify_system(op, &system).map_err(invalid)?;
            let json = VerifyJson::new(op.to_string(), &failing);
            let body = render(output.format, &json, || {
                let mut s = format!("{}: {}\n", json.operator, if json.holds { "holds" } else { "fails" });
                for r in &json.residuals {
                    let _ = writeln!(s, "  {:?}: {}", r.component, r.poly);
                }
                s
            });
            Ok(Outcome {
                code: if json.holds { 0 } else { 2 },
                body,
                out: output.out.clone(),
            })
        }
        Command::Catalog { target, output } => {
            let geometry = parse_geometry(&target.geometry)?;
            let entries = catalog(geometry, &target.rep).map_err(invalid)?;
            let json = CatalogJson {
                geometry: geometry.to_string(),
                rep: target.rep.parse::<RepDescriptor>().map_err(invalid)?.to_string(),
                entries: entries.iter().map(CatalogEntryJson::from).collect(),
            };
            Ok(ok(
                render(output.format, &json, || {
                    let mut s = String::new();
                    for e in &entries {
                        let _ = writeln!(s, "{} [{}]", e.family, e.status.as_str());
                        system_text(&e.system, &mut s);
                    }
                    s
                }),
                output,
            ))
        }
        Command::Strata {
            geometry,
            rep,
            tractor,
            input,
            grid,
            points,
            scheme,
            output,
        } => {
            let scheme: ClassifierScheme = scheme.parse().map_err(invalid)?;
            let system = match (input, geometry, rep, tractor) {
                (Some(path), None, None, None) => read_system(Some(path))?,
                (None, Some(g), Some(r), Some(t)) => {
                    let rep = build_rep(&RepArgs {
                        geometry: g.clone(),
                        rep: r.clone(),
                    })?;
                    solution_from_tractor(&rep, &parse_rationals(t)?).map_err(invalid)?
                }
                _ => {
                    return Err(CliError::Usage(
                        "strata needs either --input or all of --geometry, --rep and --tractor".into(),
                    ))
                }
            };
            let spec = match (grid, points) {
                (Some(g), None) => g.parse::<SampleSpec>().map_err(invalid)?,
                (None, Some(p)) => SampleSpec::Points(p.split(';').map(parse_rationals).collect::<Result<_, _>>()?),
                _ => return Err(CliError::Usage("strata needs exactly one of --grid and --points".into())),
            };
            let report = classify_points(&system, &spec, scheme).map_err(invalid)?;
            let json = StrataJson::from(&report);
            Ok(ok(
                render(output.format, &json, || {
                    let mut s = format!("{}: {} points\n", json.scheme, json.total);
                    for (tag, n) in &json.counts {
                        let _ = writeln!(s, "  {tag}: {n}");
                    }
                    for p in &json.points {
                        let _ = writeln!(s, "({}) {} [{}]", p.coords.join(", "), p.tag, p.values.join(", "));
                    }
                    s
                }),
                output,
            ))
        }
    }
}

/// Parses `args`, runs the command and returns the outcome; help and
/// version requests come back with code 0 and clap's text.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => match e.kind() {
            clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome {
                code: 0,
                body: e.to_string(),
                out: None,
            },
            _ => error_outcome(&CliError::Usage(e.to_string())),
        },
    }
}
