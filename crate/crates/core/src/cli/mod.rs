//! Command-line front end. The binary only forwards its arguments to [`run`].
//!
//! Exit codes: 0 success, 1 other errors, 2 verification failure, 3 precision errors,
//! 4 parse errors (instance files, element strings and command-line usage).

pub mod instance;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ffcore::QExp;
use crate::hankel::{covrad_bounds, covrad_periodic};
use crate::lattice::{covrad_lattice, reduce_lattice};
use crate::oracle::{self, Window};
use crate::periodic::{
    count_points, d_invariant, minkowski_search, packing_density, packing_radius,
    succ_minima_periodic, MinkowskiOutcome,
};
use crate::verify::{self, GridSpec};

pub use instance::{FrameName, Instance, InstanceFile, Kind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "ffperiodic", version, about = "Geometry of numbers over F_q((1/x))")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Successive minima exponents and a reduced basis of Λ.
    Reduce { file: PathBuf },
    /// Successive minima of S (of Λ for a plain lattice).
    Minima { file: PathBuf },
    /// Covering radius.
    Covrad {
        file: PathBuf,
        /// Compute with the brute-force oracle instead of the Hankel scan.
        #[arg(long)]
        oracle: bool,
        /// Also print the a priori bounds.
        #[arg(long)]
        bounds: bool,
    },
    /// Packing radius.
    Packrad { file: PathBuf },
    /// Packing density, as an exact fraction.
    Density { file: PathBuf },
    /// Number of points of S in x^R C.
    Count {
        file: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        radius: i64,
    },
    /// The d-invariant of Λ(α, q^N).
    Dinv { file: PathBuf },
    /// Search for a nonzero point of S in C under the measure hypothesis.
    MinkSearch { file: PathBuf },
    /// Compare closed forms with oracles, on one instance file or on a random grid.
    Verify {
        file: Option<PathBuf>,
        /// Grid such as "q=2,3;d=2,3;N=0,1,2", optionally with ";k=<instances per cell>".
        #[arg(long)]
        grid: Option<String>,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

/// What a command prints and how it exits.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } => 4,
        e if e.is_precision() => 3,
        _ => 1,
    }
}

fn exp_json(v: QExp) -> Value {
    match v.exponent() {
        Some(e) => json!({ "exp": e }),
        None => json!({ "exp": null }),
    }
}

fn rational_exp(r: &BigRational) -> String {
    if r.is_integer() {
        format!("q^{}", r.numer())
    } else {
        format!("q^({r})")
    }
}

struct Report {
    text: String,
    json: Value,
    code: i32,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report { text, json, code: 0 }
    }
}

fn load(file: &Path) -> Result<Instance> {
    InstanceFile::read(file)?.load()
}

fn execute(cmd: &Command) -> Result<Report> {
    match cmd {
        Command::Reduce { file } => {
            let inst = load(file)?;
            let red = reduce_lattice(&inst.lattice, &inst.body)?;
            let mut reduced = inst.file.clone();
            reduced.basis = InstanceFile::matrix_rows(&red.vectors);
            let text = format!("{}\n{}", exps_text(&red.exponents), red.to_string().trim_end());
            let json = json!({
                "minima": red.exponents.iter().map(|&e| json!({ "exp": e })).collect::<Vec<_>>(),
                "reduced": reduced,
            });
            Ok(Report::ok(text, json))
        }
        Command::Minima { file } => {
            let inst = load(file)?;
            let m = succ_minima_periodic(&inst.periodic, &inst.body)?;
            Ok(Report::ok(
                exps_text(&m.exponents),
                json!({ "minima": m.exponents.iter().map(|&e| json!({ "exp": e })).collect::<Vec<_>>() }),
            ))
        }
        Command::Covrad { file, oracle: use_oracle, bounds } => {
            let inst = load(file)?;
            let value = if *use_oracle {
                let exps = reduce_lattice(&inst.lattice, &inst.body)?.exponents;
                let depth = inst
                    .depth()
                    .unwrap_or_else(|| oracle::default_depth(inst.periodic.n().unwrap_or(0), &exps));
                oracle::covrad_oracle(&inst.periodic, &inst.body, &Window::new(0).with_depth(depth))?
            } else {
                match inst.kind {
                    Kind::Plain => covrad_lattice(&inst.lattice, &inst.body)?,
                    Kind::Alpha => covrad_periodic(&inst.periodic, &inst.body)?.value(),
                    Kind::Coset => {
                        return Err(Error::Unsupported(
                            "an alpha-form instance for the Hankel scan; use --oracle for coset forms".into(),
                        ))
                    }
                }
            };
            let mut text = value.to_string();
            let mut json = exp_json(value);
            if *bounds {
                let n = inst.periodic.n().unwrap_or(0);
                let b = covrad_bounds(&inst.lattice, n, &inst.body)?;
                text.push_str(&format!("\nbounds {} .. q^{}", rational_exp(&b.lower), b.upper));
                json["bounds"] = json!({ "lower": b.lower.to_string(), "upper": b.upper });
            }
            Ok(Report::ok(text, json))
        }
        Command::Packrad { file } => {
            let inst = load(file)?;
            let v = packing_radius(&inst.periodic, &inst.body)?;
            Ok(Report::ok(v.to_string(), exp_json(v)))
        }
        Command::Density { file } => {
            let inst = load(file)?;
            let v = packing_density(&inst.periodic, &inst.body)?;
            Ok(Report::ok(v.to_string(), json!({ "density": v.to_string() })))
        }
        Command::Count { file, radius } => {
            let inst = load(file)?;
            let v = count_points(&inst.periodic, &inst.body, *radius)?;
            Ok(Report::ok(v.to_string(), json!({ "radius": radius, "count": v.to_string() })))
        }
        Command::Dinv { file } => {
            let inst = load(file)?;
            let v = d_invariant(&inst.periodic, &inst.body)?;
            Ok(Report::ok(v.to_string(), exp_json(v)))
        }
        Command::MinkSearch { file } => {
            let inst = load(file)?;
            let rep = minkowski_search(&inst.periodic, &inst.body)?;
            let (status, point) = match &rep.outcome {
                MinkowskiOutcome::Found(v) => ("found", Some(v.iter().map(|x| x.to_string()).collect::<Vec<_>>())),
                MinkowskiOutcome::NotFound => ("not found", None),
                MinkowskiOutcome::Inapplicable => ("inapplicable", None),
            };
            let mut text = format!(
                "m(C + D∩S) = q^{}, m(C) = q^{}, threshold q^{}: {status}",
                rep.measure_exp, rep.volume_exp, rep.threshold_exp
            );
            if let Some(p) = &point {
                text.push_str(&format!("\n({})", p.join(", ")));
            }
            let json = json!({
                "measure": { "exp": rep.measure_exp },
                "volume": { "exp": rep.volume_exp },
                "hypothesis": rep.hypothesis_holds(),
                "threshold": { "exp": rep.threshold_exp },
                "outcome": status,
                "point": point,
            });
            Ok(Report::ok(text, json))
        }
        Command::Verify { file, grid, seed } => match file {
            Some(f) => verify_instance(&load(f)?),
            None => {
                let grid: GridSpec = match grid {
                    Some(g) => g.parse()?,
                    None => GridSpec::default(),
                };
                let report = verify::run_verify(&grid, *seed)?;
                let json = json!({
                    "seed": report.seed,
                    "instances": report.instances,
                    "passed": report.passed(),
                    "rows": report.rows.iter().map(|r| json!({
                        "check": r.name, "cases": r.cases, "passed": r.passed,
                        "skipped": r.skipped, "failures": r.failures,
                    })).collect::<Vec<_>>(),
                });
                Ok(Report {
                    text: report.to_string().trim_end().to_string(),
                    json,
                    code: if report.passed() { 0 } else { 2 },
                })
            }
        },
    }
}

fn exps_text(e: &[i64]) -> String {
    e.iter().map(|e| format!("q^{e}")).collect::<Vec<_>>().join(" ")
}

/// The applicable checks of `verify` on a single instance.
fn verify_instance(inst: &Instance) -> Result<Report> {
    let s = &inst.periodic;
    let body = &inst.body;
    let mut rows: Vec<(&str, Result<Option<String>>)> = vec![
        ("reduction", verify::check_reduction(&mut crate::random::rng(0), &inst.lattice, body, 20)),
        ("minima", verify::check_minima(s, body)),
        ("count", verify::check_count(s, body, &[0, 1, 2])),
        ("packing", verify::check_packing(s, body)),
        ("bounds", verify::check_theorem_bounds(s, body)),
        ("minkowski", verify::check_minkowski(s, body)),
    ];
    if inst.kind == Kind::Alpha {
        rows.push(("covrad", verify::check_covrad(s, body, inst.depth())));
    }
    let mut text = Vec::new();
    let mut out = Vec::new();
    let mut failed = false;
    for (name, r) in rows {
        let (status, detail) = match r {
            Ok(None) => ("PASS", String::new()),
            Ok(Some(m)) => {
                failed = true;
                ("FAIL", m)
            }
            Err(e) => {
                failed = true;
                ("FAIL", format!("error: {e}"))
            }
        };
        text.push(format!("{name:<12} {status} {detail}").trim_end().to_string());
        out.push(json!({ "check": name, "status": status, "detail": detail }));
    }
    Ok(Report {
        text: text.join("\n"),
        json: json!({ "rows": out, "passed": !failed }),
        code: if failed { 2 } else { 0 },
    })
}

/// Parse `args` (including the program name) and run the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 4 } else { 0 };
            let rendered = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: rendered, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: rendered }
            };
        }
    };
    match execute(&cli.command) {
        Ok(r) => Outcome {
            code: r.code,
            stdout: match cli.format {
                Format::Text => format!("{}\n", r.text),
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&r.json).expect("json value")),
            },
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: match cli.format {
                Format::Text => format!("error: {e}\n"),
                Format::Json => format!("{}\n", json!({ "error": e.to_string(), "code": exit_code(&e) })),
            },
        },
    }
}
