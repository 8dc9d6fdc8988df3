use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use z8codes::code::parse_matrix;
use z8codes::covering::{covering_radius, covering_radius_with, Oracle};
use z8codes::families::{self, FamilySpec};
use z8codes::harness::{self, AnalyzeOptions, CodeDescriptor, Evaluator, Report};
use z8codes::{Budgets, Error, LinearCode, Metric, OctVector};

#[derive(Parser)]
#[command(name = "z8codes", version, about = "Linear codes over Z8: structure, covering radius, claim verification")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalArgs {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write the output to a file instead of stdout
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    /// Worker threads (0 = one per core; 1 = sequential)
    #[arg(long, env = "Z8_THREADS", default_value_t = 0, global = true)]
    threads: usize,
    /// Maximum distance evaluations per covering-radius oracle call
    #[arg(long, env = "Z8_SCAN_BUDGET", default_value_t = z8codes::config::DEFAULT_SCAN_BUDGET, global = true)]
    scan_budget: u64,
    /// Maximum coset-table entries
    #[arg(long, env = "Z8_TABLE_BUDGET", default_value_t = z8codes::config::DEFAULT_TABLE_BUDGET, global = true)]
    table_budget: u64,
    /// Largest length for the binary Gray-image scan
    #[arg(long, env = "Z8_GRAY_MAX_N", default_value_t = z8codes::config::DEFAULT_GRAY_MAX_N, global = true)]
    gray_max_n: usize,
    /// Maximum codewords enumerated for weights and distances
    #[arg(long, env = "Z8_ENUMERATION_BUDGET", default_value_t = z8codes::config::DEFAULT_ENUMERATION_BUDGET, global = true)]
    enumeration_budget: u64,
}

impl GlobalArgs {
    fn budgets(&self) -> Budgets {
        Budgets {
            scan: self.scan_budget,
            table: self.table_budget,
            gray_max_n: self.gray_max_n,
            enumeration: self.enumeration_budget,
            threads: self.threads,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Structure, weights, covering radii and claims of one code
    Analyze {
        /// Family spec (e.g. simplex-alpha:k=2) or generator-matrix file
        source: String,
        /// Covering radius under a metric, or `all`
        #[arg(long, value_name = "METRIC")]
        covrad: Vec<String>,
        /// Add the reduction/torsion structure report
        #[arg(long)]
        torsion: bool,
        /// Adjudicate every applicable published claim
        #[arg(long)]
        verify: bool,
        /// Weight distribution under a metric, or `all`
        #[arg(long, value_name = "METRIC")]
        weights: Vec<String>,
    },
    /// Run the desk-scale claim suite
    VerifyPaper {
        /// `all` or one family: repetition, block-repetition, simplex, macdonald, reed-muller, octacode
        #[arg(long, default_value = "all")]
        scope: String,
    },
    /// Generator matrix of the dual code
    Dual { source: String },
    /// Binary Gray images of vectors given as digit strings
    Gray {
        #[arg(required = true)]
        vectors: Vec<String>,
    },
    /// Exact covering radius with a chosen oracle
    Covrad {
        source: String,
        /// Metric or `all`
        #[arg(long, default_value = "all")]
        metric: String,
        #[arg(long, value_enum, default_value_t = OracleChoice::Auto)]
        oracle: OracleChoice,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OracleChoice {
    Auto,
    Scan,
    Coset,
    SyndromeDp,
}

enum Failure {
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Lib(Error::Parse(_)) => 3,
            Failure::Lib(Error::Parameter(_) | Error::Dimension { .. }) => 4,
            Failure::Lib(Error::Budget { .. }) => 5,
            Failure::Lib(Error::Consistency(_)) => 6,
            Failure::Io(_) => 7,
        }
    }

    fn line(&self) -> String {
        let (kind, message) = match self {
            Failure::Lib(e) => (e.kind(), e.to_string()),
            Failure::Io(m) => ("io", m.clone()),
        };
        json!({ "error": kind, "message": message }).to_string()
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn metrics(args: &[String]) -> Outcome<Vec<Metric>> {
    let mut out = Vec::new();
    for a in args {
        if a.eq_ignore_ascii_case("all") {
            out.extend(Metric::ALL);
        } else {
            out.push(a.parse()?);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// A family spec, or a path to a generator-matrix file.
fn load(source: &str) -> Outcome<(String, Option<FamilySpec>, LinearCode)> {
    let path = Path::new(source);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{source}: {e}")))?;
        let rows = parse_matrix(&text)?;
        if rows.is_empty() {
            return Err(Error::Parameter(format!("{source}: generator matrix has no rows")).into());
        }
        return Ok((source.to_string(), None, LinearCode::new(rows)?));
    }
    if !source.contains(':') && (source.contains('/') || source.contains('.')) {
        return Err(Failure::Io(format!("{source}: no such file")));
    }
    let spec: FamilySpec = source.parse()?;
    let code = families::build(&spec)?;
    Ok((spec.to_string(), Some(spec), code))
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("output serializes")
}

fn run(cli: &Cli, budgets: &Budgets) -> Outcome<String> {
    let table = cli.global.format == Format::Table;
    match &cli.command {
        Command::Analyze {
            source,
            covrad,
            torsion,
            verify,
            weights,
        } => {
            let (name, spec, code) = load(source)?;
            let opts = AnalyzeOptions {
                weights: metrics(weights)?,
                torsion: *torsion,
                covrad: metrics(covrad)?,
                verify: *verify,
            };
            let mut ev = Evaluator::new(budgets);
            let entry = harness::analyze_code(&name, spec.as_ref(), &code, &opts, &mut ev)?;
            let report = Report::new("analyze", vec![entry]);
            Ok(if table { report.to_table() } else { report.to_json() })
        }
        Command::VerifyPaper { scope } => {
            let report = harness::verify_paper(scope, budgets)?;
            Ok(if table { report.to_table() } else { report.to_json() })
        }
        Command::Dual { source } => {
            let (name, _, code) = load(source)?;
            let dual = code.dual()?;
            if table {
                return Ok(dual.to_matrix_text());
            }
            let descriptor = CodeDescriptor::of(&format!("dual of {name}"), None, &dual);
            Ok(to_json(&json!({ "code": descriptor, "matrix": dual.to_matrix_text() })))
        }
        Command::Gray { vectors } => {
            let mut rows = Vec::new();
            for v in vectors {
                let x: OctVector = v.parse()?;
                let image = x.gray_map();
                rows.push(json!({
                    "vector": x.to_string(),
                    "image": image.to_string(),
                    "homogeneous_weight": x.weight(Metric::Homogeneous),
                    "image_weight": image.hamming_weight(),
                }));
            }
            if table {
                return Ok(rows
                    .iter()
                    .map(|r| format!("{} -> {}\n", r["vector"].as_str().unwrap_or(""), r["image"].as_str().unwrap_or("")))
                    .collect());
            }
            Ok(to_json(&rows))
        }
        Command::Covrad { source, metric, oracle } => {
            let (name, _, code) = load(source)?;
            let mut rows = Vec::new();
            for m in metrics(std::slice::from_ref(metric))? {
                let (value, used) = match oracle {
                    OracleChoice::Auto => {
                        let r = covering_radius(&code, m, budgets)?;
                        (r.value, r.oracle)
                    }
                    choice => {
                        let o = match choice {
                            OracleChoice::Scan => Oracle::Scan,
                            OracleChoice::Coset => Oracle::Coset,
                            _ => Oracle::SyndromeDp,
                        };
                        (covering_radius_with(&code, m, o, budgets)?, o)
                    }
                };
                rows.push(json!({ "code": name, "metric": m, "radius": value, "oracle": used }));
            }
            if table {
                return Ok(rows
                    .iter()
                    .map(|r| format!("{}  {}  {}  ({})\n", r["code"].as_str().unwrap_or(""), r["metric"].as_str().unwrap_or(""), r["radius"], r["oracle"].as_str().unwrap_or("")))
                    .collect());
            }
            Ok(to_json(&rows))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budgets = cli.global.budgets();
    let result = budgets
        .install(|| run(&cli, &budgets))
        .map_err(Failure::from)
        .and_then(|r| r);
    let text = match result {
        Ok(text) => text,
        Err(f) => {
            eprintln!("{}", f.line());
            return ExitCode::from(f.exit_code());
        }
    };
    let text = if text.ends_with('\n') { text } else { text + "\n" };
    match &cli.global.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("{}", Failure::Io(format!("{}: {e}", path.display())).line());
                return ExitCode::from(7);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::SUCCESS
}
