//! Command implementations behind the `ghzn` binary.
//!
//! Every command produces exactly one JSON value and an exit code:
//! 0 for success or `none_found`, 1 for a counterexample or a map that is
//! not null-homotopic, 2 for usage and parse errors, 3 for violated
//! preconditions.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use ghzn_core::complex::{decide_null_homotopy, homology, HomotopyDecision};
use ghzn_core::doc::{ComplexDocument, ComplexRef, DocError, MapDocument, MatrixDoc, SCHEMA_VERSION};
use ghzn_core::harness::{
    canonical_counterexample, gh_search, koszul_gh_suite, quasi_iso_cone_suite, theorem_suite, CounterexampleReport,
    SearchConfig, SearchMode, Verdict, DEFAULT_SEED,
};
use ghzn_core::ring::analyze;
use ghzn_core::{ChainComplex, ChainMap, Error as CoreError, Modulus};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FOUND: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "ghzn", version, about = "Generating-hypothesis experiments in the derived category of Z/n")]
pub struct Cli {
    /// Print progress notes to stderr.
    #[arg(short, long, global = true)]
    pub verbose: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, clap::Args)]
pub struct SearchArgs {
    #[arg(long, default_value_t = 500)]
    pub samples: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = 3)]
    pub max_rank: usize,
    #[arg(long, default_value_t = 4)]
    pub max_degrees: usize,
}

impl SearchArgs {
    fn config(&self, n: u64, mode: SearchMode) -> SearchConfig {
        SearchConfig {
            modulus: n,
            seed: self.seed,
            samples: self.samples,
            max_degrees: self.max_degrees,
            max_rank: self.max_rank,
            mode,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Regularity and the two criteria for Z/n.
    Ring {
        n: u64,
        /// Re-check every predicate by brute force when n is at most this.
        #[arg(long, default_value_t = 1000)]
        max_brute: u64,
    },
    /// Canonical counterexample for non-squarefree n, written to disk.
    Example {
        n: u64,
        /// Directory for complex.json, map.json and report.json.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Random search for maps that vanish on homology but are essential.
    GhSearch {
        n: u64,
        #[command(flatten)]
        search: SearchArgs,
        /// Only search maps into the sphere S.
        #[arg(long)]
        target_sphere: bool,
        /// Worker threads. The report does not depend on this.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Also write the report to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Koszul object S/I for a comma-separated generator list.
    Koszul { n: u64, generators: String },
    /// Invariant factors of the homology of a complex document.
    Homology { file: PathBuf },
    /// Decides whether a map document is null-homotopic.
    Nullhomotopy { file: PathBuf },
    /// Re-verifies every witness in a saved report.
    Verify { file: PathBuf },
    /// Cross-checks regularity, squarefreeness, the canonical example and a search.
    Theorem {
        n: u64,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Quasi-isomorphisms built by construction and their cones.
    QuasiIso {
        n: u64,
        #[command(flatten)]
        search: SearchArgs,
    },
}

/// One JSON document for stdout plus the process exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub json: Value,
    pub code: i32,
}

impl Outcome {
    fn new(json: impl Serialize, code: i32) -> Self {
        Outcome { json: serde_json::to_value(json).expect("serializable"), code }
    }

    pub fn error(code: i32, message: impl Into<String>) -> Self {
        let message = message.into();
        Outcome { json: json!({ "error": message, "exit_code": code }), code }
    }
}

fn modulus(n: u64) -> Result<Modulus, Outcome> {
    Modulus::new(n).map_err(|e| Outcome::error(EXIT_USAGE, e.to_string()))
}

fn core_failure(e: CoreError) -> Outcome {
    match e {
        CoreError::Precondition(msg) => Outcome::error(EXIT_PRECONDITION, msg),
        other => Outcome::error(EXIT_USAGE, other.to_string()),
    }
}

fn doc_failure(e: DocError) -> Outcome {
    match e {
        DocError::Invalid(v) => Outcome {
            json: json!({ "error": format!("validation failed: {v}"), "violation": v, "exit_code": EXIT_USAGE }),
            code: EXIT_USAGE,
        },
        other => Outcome::error(EXIT_USAGE, other.to_string()),
    }
}

fn write_json(path: &Path, value: &impl Serialize) -> Result<(), Outcome> {
    let text = serde_json::to_string_pretty(value).expect("serializable");
    fs::write(path, text + "\n")
        .map_err(|e| Outcome::error(EXIT_USAGE, format!("cannot write {}: {e}", path.display())))
}

pub fn run(cli: Cli) -> Outcome {
    let verbose = cli.verbose;
    let result = match cli.command {
        Command::Ring { n, max_brute } => cmd_ring(n, max_brute),
        Command::Example { n, out_dir } => cmd_example(n, out_dir),
        Command::GhSearch { n, search, target_sphere, jobs, out } => {
            let mode = if target_sphere { SearchMode::TargetSphere } else { SearchMode::General };
            cmd_gh_search(&search.config(n, mode), jobs, out.as_deref(), verbose)
        }
        Command::Koszul { n, generators } => cmd_koszul(n, &generators),
        Command::Homology { file } => cmd_homology(&file),
        Command::Nullhomotopy { file } => cmd_nullhomotopy(&file),
        Command::Verify { file } => cmd_verify(&file),
        Command::Theorem { n, search } => cmd_theorem(&search.config(n, SearchMode::General)),
        Command::QuasiIso { n, search } => cmd_quasi_iso(&search.config(n, SearchMode::General)),
    };
    result.unwrap_or_else(|o| o)
}

pub fn cmd_ring(n: u64, max_brute: u64) -> Result<Outcome, Outcome> {
    let m = modulus(n)?;
    Ok(Outcome::new(analyze(&m, max_brute), EXIT_OK))
}

pub fn cmd_example(n: u64, out_dir: Option<PathBuf>) -> Result<Outcome, Outcome> {
    let m = modulus(n)?;
    let report = canonical_counterexample(&m).map_err(core_failure)?;
    let witness = report.witness.as_ref().expect("canonical report has a witness");
    let dir = out_dir.unwrap_or_else(|| PathBuf::from(format!("example-z{n}")));
    fs::create_dir_all(&dir)
        .map_err(|e| Outcome::error(EXIT_USAGE, format!("cannot create {}: {e}", dir.display())))?;

    let complex_path = dir.join("complex.json");
    let map_path = dir.join("map.json");
    let report_path = dir.join("report.json");
    write_json(&complex_path, &witness.source)?;
    let map_doc = MapDocument {
        source: ComplexRef::File { file: "complex.json".into() },
        target: ComplexRef::File { file: "complex.json".into() },
        ..witness.map.clone()
    };
    write_json(&map_path, &map_doc)?;
    write_json(&report_path, &report)?;
    let files = json!({
        "complex": complex_path.display().to_string(),
        "map": map_path.display().to_string(),
        "report": report_path.display().to_string(),
    });
    Ok(Outcome { json: json!({ "files": files, "report": report }), code: EXIT_OK })
}

fn search_exit(report: &CounterexampleReport) -> i32 {
    match report.verdict {
        Verdict::CounterexampleFound => EXIT_FOUND,
        Verdict::NoneFound => EXIT_OK,
    }
}

pub fn cmd_gh_search(
    config: &SearchConfig,
    jobs: usize,
    out: Option<&Path>,
    verbose: bool,
) -> Result<Outcome, Outcome> {
    modulus(config.modulus)?;
    let report = gh_search(config, jobs.max(1)).map_err(|e| match e {
        CoreError::Precondition(msg) => Outcome::error(EXIT_USAGE, msg),
        other => core_failure(other),
    })?;
    if verbose {
        eprintln!(
            "ghzn: {} instances over Z/{}, {} certified null, {} nonzero, {} ms",
            report.instances_tested, config.modulus, report.certified_null, report.nonzero_maps, report.elapsed_ms
        );
    }
    if let Some(path) = out {
        write_json(path, &report)?;
    }
    let code = search_exit(&report);
    Ok(Outcome::new(report, code))
}

pub fn parse_generators(text: &str) -> Result<Vec<u64>, Outcome> {
    let gens = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<u64>().map_err(|e| Outcome::error(EXIT_USAGE, format!("bad generator {s:?}: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    if gens.is_empty() {
        return Err(Outcome::error(EXIT_USAGE, "at least one generator is required"));
    }
    Ok(gens)
}

pub fn cmd_koszul(n: u64, generators: &str) -> Result<Outcome, Outcome> {
    let m = modulus(n)?;
    let gens = parse_generators(generators)?;
    let report = koszul_gh_suite(&m, &gens).map_err(core_failure)?;
    let code = if report.structural_pass() { EXIT_OK } else { EXIT_FOUND };
    let mut json = serde_json::to_value(&report).expect("serializable");
    json["structural_pass"] = Value::Bool(report.structural_pass());
    Ok(Outcome { json, code })
}

pub fn cmd_homology(file: &Path) -> Result<Outcome, Outcome> {
    let x = ComplexDocument::load(file).map_err(doc_failure)?;
    Ok(Outcome::new(homology_json(&x), EXIT_OK))
}

/// `{"degree": [invariant factors]}` for every degree in the support.
pub fn homology_json(x: &ChainComplex) -> BTreeMap<String, Vec<u64>> {
    let h = homology(x);
    x.degrees().map(|i| (i.to_string(), h.factors(i).factors)).collect()
}

pub fn cmd_nullhomotopy(file: &Path) -> Result<Outcome, Outcome> {
    let f = MapDocument::load(file).map_err(doc_failure)?;
    Ok(nullhomotopy_outcome(&f))
}

pub fn nullhomotopy_outcome(f: &ChainMap) -> Outcome {
    let f0 = f.to_degree_zero();
    match decide_null_homotopy(&f0) {
        HomotopyDecision::Null(s) => {
            let x = f0.source();
            let components: BTreeMap<String, MatrixDoc> =
                x.degrees().map(|i| (i.to_string(), MatrixDoc::from_mat(&s.component(x, f0.target(), i)))).collect();
            Outcome {
                json: json!({
                    "null_homotopic": true,
                    "homotopy": { "schema_version": SCHEMA_VERSION, "lo": s.lo, "components": components },
                }),
                code: EXIT_OK,
            }
        }
        HomotopyDecision::Essential(cert) => Outcome {
            json: json!({ "null_homotopic": false, "homotopy": "none", "infeasibility": cert }),
            code: EXIT_FOUND,
        },
    }
}

pub fn cmd_verify(file: &Path) -> Result<Outcome, Outcome> {
    let text = fs::read_to_string(file)
        .map_err(|e| Outcome::error(EXIT_USAGE, format!("cannot read {}: {e}", file.display())))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| Outcome::error(EXIT_USAGE, e.to_string()))?;
    // Accept both bare reports and the `example` envelope.
    let report_value = value.get("report").cloned().unwrap_or(value);
    let report: CounterexampleReport =
        serde_json::from_value(report_value).map_err(|e| Outcome::error(EXIT_USAGE, e.to_string()))?;
    if report.witness.is_some() != (report.verdict == Verdict::CounterexampleFound) {
        return Ok(Outcome::new(
            json!({ "verified": false, "reason": "witness presence contradicts verdict" }),
            EXIT_FOUND,
        ));
    }
    let (verified, reason) = match &report.witness {
        None => (true, "no witness".to_string()),
        Some(w) => match w.verify() {
            Ok(()) => (true, "witness re-verified".to_string()),
            Err(e) => (false, e.to_string()),
        },
    };
    let code = if verified { EXIT_OK } else { EXIT_FOUND };
    Ok(Outcome::new(json!({ "verified": verified, "verdict": report.verdict, "reason": reason }), code))
}

pub fn cmd_theorem(config: &SearchConfig) -> Result<Outcome, Outcome> {
    let m = modulus(config.modulus)?;
    let report = theorem_suite(&m, config).map_err(core_failure)?;
    let code = if report.consistent { EXIT_OK } else { EXIT_FOUND };
    Ok(Outcome::new(report, code))
}

pub fn cmd_quasi_iso(config: &SearchConfig) -> Result<Outcome, Outcome> {
    modulus(config.modulus)?;
    let report = quasi_iso_cone_suite(config).map_err(core_failure)?;
    let code = if report.passed() { EXIT_OK } else { EXIT_FOUND };
    Ok(Outcome::new(report, code))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) => {
            Outcome { json: json!({ "help": e.to_string() }), code: EXIT_OK }
        }
        Err(e) => Outcome::error(EXIT_USAGE, e.to_string()),
    }
}
