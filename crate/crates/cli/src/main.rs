//! Command-line front end. Subcommands mirror the library: build a flip
//! machine, fit a great circle, compare spans, decide exact and
//! probabilistic transformability, and run unambiguous discrimination,
//! plus a combined report. Exit code 0 means a report was computed (an
//! impossible transformation is a result, not an error); 2 means malformed
//! input; 3 means a document that parsed but failed validation.

mod doc;
mod render;

use antipar::bloch::{great_circle_fit, qubit_from_bloch, GreatCircle};
use antipar::machines::{flipper_for_circle, machine_fidelity};
use antipar::protrans::{compare_sets, max_uniform_gamma, usd_max_success_vectors, ProtransError};
use antipar::states::{antiparallel, exact_transformability, parallel, span_dimension, TwoQubitState};
use antipar::{BlochVector, Complex64};
use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

use doc::{load_set, Fixture, LoadedSet};
use render::*;

#[derive(Debug)]
pub enum CliError {
    /// Unreadable or unparsable input (exit 2).
    Input(String),
    /// Parsed but invalid input (exit 3).
    Validation(String),
}

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Parser)]
#[command(
    name = "antipar",
    version,
    about = "Parallel vs anti-parallel two-qubit spin states: flip machines, transformability, discrimination"
)]
struct Cli {
    /// Numerical tolerance for exactness and feasibility verdicts
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,

    /// Emit a JSON report instead of a table
    #[arg(long, global = true)]
    json: bool,

    /// Analyse a built-in direction set instead of an input file
    #[arg(long, global = true, value_enum)]
    fixture: Option<Fixture>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Direction {
    /// Parallel inputs to anti-parallel outputs
    Pa,
    /// Anti-parallel inputs to parallel outputs
    Ap,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum StateSet {
    /// Single-qubit states |n⟩
    Qubit,
    /// Two-qubit parallel states |n, n⟩
    Parallel,
    /// Two-qubit anti-parallel states |n, −n⟩
    Antiparallel,
}

#[derive(Subcommand)]
enum Command {
    /// Print the flip machine for a great circle, and a probe's fidelity
    Flip {
        /// Circle normal as x,y,z (any nonzero length)
        #[arg(long)]
        normal: String,
        /// Probe direction as x,y,z (any nonzero length)
        #[arg(long)]
        probe: Option<String>,
    },
    /// Fit one great circle to the document's directions
    CircleFit { input: Option<PathBuf> },
    /// Span dimensions of the parallel and anti-parallel families
    Span { input: Option<PathBuf> },
    /// Decide exact transformability between the two families
    Exact {
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Direction::Pa)]
        direction: Direction,
    },
    /// Best uniform success probability of the probabilistic transformation
    Protrans {
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Direction::Pa)]
        direction: Direction,
    },
    /// Optimal unambiguous discrimination of the chosen family
    Usd {
        input: Option<PathBuf>,
        /// Priors as comma-separated reals summing to 1 (default uniform,
        /// overriding any priors in the document)
        #[arg(long)]
        priors: Option<String>,
        #[arg(long, value_enum, default_value_t = StateSet::Qubit)]
        set: StateSet,
    },
    /// Full two-way comparison of the parallel and anti-parallel families
    Analyze { input: Option<PathBuf> },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Input(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(CliError::Validation(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match &cli.command {
        Command::Flip { normal, probe } => cmd_flip(&cli, normal, probe.as_deref()),
        Command::CircleFit { input } => cmd_circle_fit(&cli, input.as_deref().map(PathBuf::from)),
        Command::Span { input } => cmd_span(&cli, input.clone()),
        Command::Exact { input, direction } => cmd_exact(&cli, input.clone(), *direction),
        Command::Protrans { input, direction } => cmd_protrans(&cli, input.clone(), *direction),
        Command::Usd { input, priors, set } => {
            cmd_usd(&cli, input.clone(), priors.as_deref(), *set)
        }
        Command::Analyze { input } => cmd_analyze(&cli, input.clone()),
    }
}

/// Parses "x,y,z" into a unit direction; any nonzero length is accepted
/// and normalized.
fn parse_direction(text: &str, what: &str) -> Result<BlochVector> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err(CliError::Input(format!(
            "{what} must be three comma-separated reals, got {text:?}"
        )));
    }
    let mut coords = [0.0f64; 3];
    for (slot, part) in coords.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse()
            .map_err(|e| CliError::Input(format!("{what}: cannot parse {part:?}: {e}")))?;
    }
    BlochVector::normalized(coords[0], coords[1], coords[2])
        .map_err(|e| CliError::Input(format!("{what}: {e}")))
}

fn families(set: &LoadedSet) -> (Vec<TwoQubitState>, Vec<TwoQubitState>) {
    (
        set.vectors.iter().map(|&v| parallel(v)).collect(),
        set.vectors.iter().map(|&v| antiparallel(v)).collect(),
    )
}

fn oriented(set: &LoadedSet, direction: Direction) -> (Vec<TwoQubitState>, Vec<TwoQubitState>) {
    let (p, a) = families(set);
    match direction {
        Direction::Pa => (p, a),
        Direction::Ap => (a, p),
    }
}

fn map_protrans_error(e: ProtransError) -> CliError {
    match e {
        ProtransError::DuplicateVectors { i, j } => CliError::Validation(format!(
            "directions {i} and {j} coincide; drop one of them"
        )),
        ProtransError::PriorMismatch { detail } => CliError::Validation(format!("bad priors: {detail}")),
        other => CliError::Validation(other.to_string()),
    }
}

fn emit<T: serde::Serialize>(cli: &Cli, json: &T, human: &str) -> Result<()> {
    if cli.json {
        let text = serde_json::to_string_pretty(json)
            .expect("report serialization cannot fail");
        println!("{text}");
    } else {
        println!("{human}");
    }
    Ok(())
}

fn cmd_flip(cli: &Cli, normal: &str, probe: Option<&str>) -> Result<()> {
    let normal = parse_direction(normal, "--normal")?;
    let probe = probe.map(|p| parse_direction(p, "--probe")).transpose()?;
    let machine = flipper_for_circle(&GreatCircle::new(normal));
    let fidelity = probe.map(|n| machine_fidelity(&machine, n));

    let json = FlipJson {
        normal: vec3(&machine.circle().normal()),
        u2: matrix_json(machine.u2()),
        u4: matrix_json(machine.u4()),
        probe: probe.as_ref().map(vec3),
        fidelity,
    };
    let mut human = format!(
        "circle normal: {}\nu2:\n{}\nu4:\n{}",
        fmt_vector(&machine.circle().normal()),
        fmt_matrix(machine.u2()),
        fmt_matrix(machine.u4()),
    );
    if let (Some(n), Some(f)) = (probe.as_ref(), fidelity) {
        human.push_str(&format!(
            "\nprobe: {}\nfidelity: {}",
            fmt_vector(n),
            sig10(f)
        ));
    }
    emit(cli, &json, &human)
}

fn cmd_circle_fit(cli: &Cli, input: Option<PathBuf>) -> Result<()> {
    let set = load_set(input.as_deref(), cli.fixture)?;
    let fit = great_circle_fit(&set.vectors, cli.tol)
        .expect("loader rejects empty documents");
    emit(cli, &circle_json(&fit), &render_circle(&fit))
}

fn cmd_span(cli: &Cli, input: Option<PathBuf>) -> Result<()> {
    let set = load_set(input.as_deref(), cli.fixture)?;
    let (p, a) = families(&set);
    let json = SpanJson {
        parallel: span_dimension(&p, cli.tol).expect("loader rejects empty documents"),
        antiparallel: span_dimension(&a, cli.tol).expect("loader rejects empty documents"),
    };
    let human = format!(
        "parallel span: {}\nanti-parallel span: {}",
        json.parallel, json.antiparallel
    );
    emit(cli, &json, &human)
}

fn cmd_exact(cli: &Cli, input: Option<PathBuf>, direction: Direction) -> Result<()> {
    let set = load_set(input.as_deref(), cli.fixture)?;
    let (inputs, outputs) = oriented(&set, direction);
    let verdict = exact_transformability(&inputs, &outputs, cli.tol)
        .expect("families share the document's length");
    emit(cli, &exact_json(&verdict), &render_exact(&verdict, &set.labels))
}

fn cmd_protrans(cli: &Cli, input: Option<PathBuf>, direction: Direction) -> Result<()> {
    let set = load_set(input.as_deref(), cli.fixture)?;
    let (inputs, outputs) = oriented(&set, direction);
    let result = max_uniform_gamma(&inputs, &outputs, cli.tol).map_err(map_protrans_error)?;
    emit(cli, &feas_json(&result), &render_feas(&result))
}

fn cmd_usd(cli: &Cli, input: Option<PathBuf>, priors: Option<&str>, set: StateSet) -> Result<()> {
    let loaded = load_set(input.as_deref(), cli.fixture)?;
    let count = loaded.vectors.len();
    let priors = match priors {
        Some(text) => text
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<f64>()
                    .map_err(|e| CliError::Input(format!("--priors: cannot parse {part:?}: {e}")))
            })
            .collect::<Result<Vec<f64>>>()?,
        None => match &loaded.priors {
            Some(p) => p.clone(),
            None => vec![1.0 / count as f64; count],
        },
    };

    let states: Vec<Vec<Complex64>> = match set {
        StateSet::Qubit => loaded
            .vectors
            .iter()
            .map(|&v| qubit_from_bloch(v).amplitudes().to_vec())
            .collect(),
        StateSet::Parallel => loaded.vectors.iter().map(|&v| parallel(v).to_vec()).collect(),
        StateSet::Antiparallel => loaded
            .vectors
            .iter()
            .map(|&v| antiparallel(v).to_vec())
            .collect(),
    };
    let result = usd_max_success_vectors(&states, &priors).map_err(map_protrans_error)?;
    emit(cli, &usd_json(&result), &render_usd(&result, &loaded.labels))
}

fn cmd_analyze(cli: &Cli, input: Option<PathBuf>) -> Result<()> {
    let set = load_set(input.as_deref(), cli.fixture)?;
    let report = compare_sets(&set.vectors, cli.tol).map_err(map_protrans_error)?;

    let json = AnalyzeJson {
        tol: cli.tol,
        vectors: set.vectors.iter().map(vec3).collect(),
        circle: circle_json(&report.circle),
        dims: [report.dims.0, report.dims.1],
        exact_pa: exact_json(&report.exact_pa),
        exact_ap: exact_json(&report.exact_ap),
        protrans_pa: feas_json(&report.protrans_pa),
        protrans_ap: feas_json(&report.protrans_ap),
        usd_parallel: usd_json(&report.usd_parallel),
        usd_antiparallel: usd_json(&report.usd_antiparallel),
    };

    let mut human = format!("directions ({}):\n", set.vectors.len());
    for (label, v) in set.labels.iter().zip(&set.vectors) {
        human.push_str(&format!("  {label}: {}\n", fmt_vector(v)));
    }
    human.push_str(&format!("{}\n", render_circle(&report.circle)));
    human.push_str(&format!(
        "spans: parallel {}, anti-parallel {}\n",
        report.dims.0, report.dims.1
    ));
    human.push_str(&format!(
        "exact parallel -> anti-parallel:\n{}\n",
        indent(&render_exact(&report.exact_pa, &set.labels))
    ));
    human.push_str(&format!(
        "exact anti-parallel -> parallel:\n{}\n",
        indent(&render_exact(&report.exact_ap, &set.labels))
    ));
    human.push_str(&format!(
        "probabilistic parallel -> anti-parallel:\n{}\n",
        indent(&render_feas(&report.protrans_pa))
    ));
    human.push_str(&format!(
        "probabilistic anti-parallel -> parallel:\n{}\n",
        indent(&render_feas(&report.protrans_ap))
    ));
    human.push_str(&format!(
        "discrimination of parallel set (uniform priors):\n{}\n",
        indent(&render_usd(&report.usd_parallel, &set.labels))
    ));
    human.push_str(&format!(
        "discrimination of anti-parallel set (uniform priors):\n{}",
        indent(&render_usd(&report.usd_antiparallel, &set.labels))
    ));
    emit(cli, &json, &human)
}

fn indent(text: &str) -> String {
    text.lines()
        .map(|line| format!("  {line}"))
        .collect::<Vec<_>>()
        .join("\n")
}
