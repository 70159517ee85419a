mod cache;
mod verify;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use burnside::burnside::{BurnsideRing, ExtendedMarkTable};
use burnside::cellsearch::{
    cell_search_json, format_set, parabolic_families, run_cell_search, table3_text, table4_text, CharacterTarget,
    ParabolicData, SearchConstraints,
};
use burnside::characters::{green_multiplicities, GreenFunctionData, F4A3_GREEN};
use burnside::functor_spec::{builtin_mu, Functor, FunctorSpec};
use burnside::permgroup::{parse_group, FiniteGroup};
use burnside::subgroups::SubgroupClassification;
use burnside::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "burnside",
    version,
    about = "Generalised Burnside rings of finite permutation groups"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// `S4`, `S5`, or generators such as `(1,2);(1,2,3,4)`
    #[arg(long, global = true, default_value = "S4")]
    group: String,
    /// Degree for a generator list; defaults to the largest point
    #[arg(long, global = true)]
    degree: Option<usize>,
    /// `builtin-mu`, `trivial`, or a path to a functor JSON file
    #[arg(long, global = true, default_value = "builtin-mu")]
    functor: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the artifact here instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, env = "BURNSIDE_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    /// Worker threads; 0 picks the number of cores
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Seed for sampled checks
    #[arg(long, global = true, default_value_t = 20240229)]
    seed: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Extended table of marks with the twisted count column
    Marks,
    /// Ring axioms, mark homomorphism and the concrete product oracle
    Verify {
        /// Sampled pairs for the concrete oracle on groups larger than 24
        #[arg(long, default_value_t = 50)]
        samples: usize,
        /// Compare the extended table against this CSV file
        #[arg(long)]
        expect: Option<PathBuf>,
    },
    /// Effective solutions, decorations and the cell-size filter
    CellSearch {
        /// Multiplicities such as `42,19,10,1,0`
        #[arg(long, conflicts_with = "green_file")]
        target: Option<String>,
        /// Green function file; the shipped F4(a3) data is used by default
        #[arg(long)]
        green_file: Option<PathBuf>,
        #[arg(long, default_value_t = 151)]
        min_left_cell: i64,
        #[arg(long, default_value_t = 175)]
        big_cell: i64,
        #[arg(long, default_value_t = 30)]
        min_big_cells: usize,
        #[arg(long, default_value_t = 7400)]
        min_double_cell: i64,
    },
    /// Sets of parabolic blocks under the degeneration constraints
    Parabolic {
        /// Targets file; the shipped F4(a3) blocks are used by default
        #[arg(long)]
        targets: Option<PathBuf>,
    },
    /// Multiply two elements written like `21*S4 + 6*K1'`
    Product { left: String, right: String },
    /// Twisted Euler characteristic of an element
    Euler { element: String },
}

/// Failure categories mapped to exit codes 1 and 2.
enum Failure {
    Check(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.common.jobs > 0 {
        // only fails if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.common.jobs)
            .build_global();
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let c = &cli.common;
    let group = parse_group(&c.group, c.degree)?;
    let cls = Arc::new(SubgroupClassification::new(&group)?);
    let spec = load_spec(&c.functor, &c.group)?;
    match &cli.command {
        Command::Verify { samples, expect } => {
            let report = verify::run(&spec, cls, *samples, c.seed, expect.as_deref())?;
            emit(c, &report.render(c.format))?;
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Check(format!("{} check(s) failed", report.failures())))
            }
        }
        Command::Marks => {
            let key = cache::key(&["marks", &group_descriptor(&group), &spec.to_json()]);
            let table = match cache::load(c.cache_dir.as_deref(), &key) {
                Some(v) => ExtendedMarkTable::from_json(&v)?,
                None => {
                    let table = build_ring(spec, cls)?.extended_table_of_marks();
                    cache::store(c.cache_dir.as_deref(), &key, &table.to_json())?;
                    table
                }
            };
            let text = match c.format {
                Format::Csv => table.to_csv(),
                Format::Json => pretty(&table.to_json()),
                Format::Text => table.to_text(),
            };
            emit(c, &text)
        }
        Command::CellSearch {
            target,
            green_file,
            min_left_cell,
            big_cell,
            min_big_cells,
            min_double_cell,
        } => {
            let ring = build_ring(spec, cls)?;
            let target = match (target, green_file) {
                (Some(t), _) => CharacterTarget::parse(t)?,
                (None, Some(p)) => CharacterTarget::new(green_multiplicities(&GreenFunctionData::parse(&read(p)?)?)?),
                (None, None) => CharacterTarget::new(green_multiplicities(&GreenFunctionData::parse(F4A3_GREEN)?)?),
            };
            let k = SearchConstraints {
                min_left_cell: *min_left_cell,
                big_cell_threshold: *big_cell,
                min_big_cells: *min_big_cells,
                min_double_cell: *min_double_cell,
            };
            let result = run_cell_search(&ring, &target, &k)?;
            let text = match c.format {
                Format::Json => pretty(&cell_search_json(&ring, &result)),
                _ => {
                    let mut out = format!("target {target}\nsolutions {}\n", result.solutions.len());
                    for f in &result.families {
                        let status = if f.excluded {
                            let m = f.family.members().len();
                            let low = f.cells.iter().filter_map(|c| c.min_cell()).min().unwrap_or(0);
                            format!("excluded, {m} members, smallest fixed cell {low}")
                        } else {
                            let allowed: Vec<String> = f.allowed.iter().map(|t| t.to_string()).collect();
                            format!("kept, allowed t = {}", allowed.join(","))
                        };
                        out.push_str(&format!(
                            "family {} + t*({}), t <= {}: {status}\n",
                            format_set(&ring, &f.family.base),
                            ring.format(&f.family.direction),
                            f.family.max
                        ));
                    }
                    out.push_str(&format!(
                        "decorated universe {}\ncandidates {}\nsurvivors {}\ntwins {}\n\n",
                        result.universe,
                        result.candidates.len(),
                        result.survivors.len(),
                        result.twins.len()
                    ));
                    out.push_str(&table3_text(&ring, &result));
                    out
                }
            };
            emit(c, &text)
        }
        Command::Parabolic { targets } => {
            let ring = build_ring(spec, cls)?;
            let data = match targets {
                Some(p) => ParabolicData::parse(&read(p)?)?,
                None => ParabolicData::f4a3(),
            };
            let blocks = parabolic_families(&ring, &data)?;
            let text = match c.format {
                Format::Json => pretty(&serde_json::Value::Array(
                    blocks.iter().map(|b| b.to_json(&ring)).collect(),
                )),
                _ => table4_text(&ring, &blocks),
            };
            emit(c, &text)
        }
        Command::Product { left, right } => {
            let ring = build_ring(spec, cls)?;
            let p = ring.multiply(&ring.parse(left)?, &ring.parse(right)?);
            let text = match c.format {
                Format::Json => pretty(&ring.to_json(&p)),
                _ => format!("{}\n", ring.format(&p)),
            };
            emit(c, &text)
        }
        Command::Euler { element } => {
            let ring = build_ring(spec, cls)?;
            let m = ring.euler(&ring.parse(element)?)?;
            emit(c, &format!("{m}\n"))
        }
    }
}

fn build_ring(spec: FunctorSpec, cls: Arc<SubgroupClassification>) -> Result<BurnsideRing, Failure> {
    let functor = Functor::new(spec, cls)?;
    let violations = functor.validate();
    if !violations.is_empty() {
        let lines: Vec<String> = violations.iter().map(|v| format!("  {v}")).collect();
        return Err(Failure::Input(format!(
            "invalid functor description:\n{}",
            lines.join("\n")
        )));
    }
    Ok(BurnsideRing::new(functor)?)
}

fn group_descriptor(g: &FiniteGroup) -> String {
    let gens: Vec<String> = g.generators().map(|i| g.element(i).to_string()).collect();
    format!("{}:{}:{}", g.degree(), g.order(), gens.join(";"))
}

fn load_spec(functor: &str, group: &str) -> Result<FunctorSpec, Failure> {
    match functor {
        "builtin-mu" => Ok(builtin_mu(group)?),
        "trivial" => Ok(FunctorSpec::trivial(group)),
        path => Ok(FunctorSpec::from_json(&read(Path::new(path))?)?),
    }
}

fn read(p: &Path) -> Result<String, Failure> {
    fs::read_to_string(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn emit(c: &Common, text: &str) -> Result<(), Failure> {
    match &c.output {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir)?;
            }
            fs::write(p, text)?;
        }
        None => print!("{text}"),
    }
    Ok(())
}
