//! Command-line front end for the bus-factor toolkit: ingest TSV edge
//! lists, report the measures, generate synthetic graphs, run perturbation
//! sweeps, and check small graphs against the exhaustive oracles.
//!
//! Exit codes: 0 success, 1 filesystem trouble, 2 malformed input or usage,
//! 3 structurally valid requests the math cannot satisfy (infeasible
//! thresholds, invalid generator parameters, oracle caps).

use busfactor::edgelist::{self, EdgeList, EdgeListError};
use busfactor::experiments::{
    self, derive_seed, run_assortativity_sweep, run_density_sweep, run_redundancy_sweep,
    run_scaling_bench, scaling_threshold, write_rows_csv, AssortativityConfig, DensityConfig,
    DensityDirection, ExperimentError, ExperimentManifest, ExperimentRow, RedundancyConfig,
    RedundancyMode, ScalingConfig,
};
use busfactor::generators::{
    self, configuration_model, fixtures, sample_degree_sequence, GeneratorError, PowerLawParams,
};
use busfactor::measures::{self, MeasureError};
use busfactor::oracle::{self, CoverageAggregate, OracleError, OracleLimits};
use busfactor::{BipartiteGraph, Strategy, StrategyError, Threshold, ThresholdError};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "busfactor", version, about = "Bus-factor measures on person-task graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Master seed; every random choice in the process derives from it.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Task fraction t as an exact fraction like 1/2 or a decimal like 0.5.
    #[arg(long, alias = "t", global = true, default_value = "1/2", value_parser = parse_threshold)]
    threshold: Threshold,

    /// Removal order: degree, degree-adaptive, random, betweenness, eigenvector.
    #[arg(long, global = true, default_value = "degree", value_parser = parse_strategy)]
    strategy: Strategy,

    /// Drop input edges whose weight is below this value.
    #[arg(long, global = true, default_value_t = 0.0, allow_negative_numbers = true)]
    min_weight: f64,

    /// Write the primary output here instead of standard output. Commands
    /// with JSON sidecars put them at this path plus ".json".
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Encoding of analyze and oracle reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Subcommand)]
enum Command {
    /// Read a TSV edge list and report all measures for one threshold.
    Analyze {
        /// Edge list: person<TAB>task[<TAB>weight] per line.
        input: PathBuf,
    },
    /// Write a synthetic graph as TSV plus a JSON parameter sidecar.
    Generate {
        #[command(subcommand)]
        kind: GenerateKind,
    },
    /// Run a perturbation sweep and write one CSV row per measured graph.
    Experiment(ExperimentArgs),
    /// Exact reference values by exhaustive enumeration (small graphs only).
    Oracle(OracleArgs),
    /// Time the measures on uniform random graphs of growing edge counts.
    Bench {
        /// Edge counts, comma separated.
        #[arg(long, value_delimiter = ',', default_values_t = [100_000usize, 1_000_000])]
        sizes: Vec<usize>,
    },
}

#[derive(Subcommand)]
enum GenerateKind {
    /// Hand-built graphs with known measure values.
    Fixture(FixtureArgs),
    /// Configuration-model graph with bounded power-law degrees.
    Powerlaw(PowerlawArgs),
}

#[derive(Args)]
struct FixtureArgs {
    /// Which fixture to build.
    #[arg(long, value_enum)]
    name: FixtureName,
    /// People count (complete, degree-trap).
    #[arg(long)]
    people: Option<usize>,
    /// Task count (complete, degree-trap).
    #[arg(long)]
    tasks: Option<usize>,
    /// Family size (dyads, task-tree; task-tree needs k >= 2).
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FixtureName {
    /// Nine people, four tasks, one integrator holding them together.
    ToyProject,
    /// Every person on every task.
    Complete,
    /// k disconnected person-task pairs.
    Dyads,
    /// Adversarial instance where the degree heuristic overpays.
    DegreeTrap,
    /// k task stars tied together by one low-degree central person.
    TaskTree,
}

impl FixtureName {
    fn name(self) -> &'static str {
        match self {
            FixtureName::ToyProject => "toy-project",
            FixtureName::Complete => "complete",
            FixtureName::Dyads => "dyads",
            FixtureName::DegreeTrap => "degree-trap",
            FixtureName::TaskTree => "task-tree",
        }
    }
}

#[derive(Args)]
struct PowerlawArgs {
    #[arg(long, default_value_t = 750)]
    people: usize,
    #[arg(long, default_value_t = 1000)]
    tasks: usize,
    /// Power-law exponent of the person degree law.
    #[arg(long, default_value_t = 0.2)]
    alpha_person: f64,
    /// Lower support bound of the person degree law.
    #[arg(long, default_value_t = 1.0)]
    a_person: f64,
    /// Support width of the person degree law.
    #[arg(long, default_value_t = 100.0)]
    c_person: f64,
    #[arg(long, default_value_t = 0.2)]
    alpha_task: f64,
    #[arg(long, default_value_t = 1.0)]
    a_task: f64,
    #[arg(long, default_value_t = 70.0)]
    c_task: f64,
}

#[derive(Args)]
struct ExperimentArgs {
    /// Which sweep to run.
    kind: ExperimentKind,
    /// Input edge list (density, redundancy).
    #[arg(long)]
    input: Option<PathBuf>,
    /// Edge growth or shrinkage (density).
    #[arg(long, value_enum)]
    direction: Option<SweepDirection>,
    /// How new people attach (redundancy).
    #[arg(long, value_enum)]
    mode: Option<SweepMode>,
    /// Perturbations per measured level (density, redundancy).
    #[arg(long)]
    batch: Option<usize>,
    /// Total perturbations over the sweep; 0 measures only the baseline
    /// (density, redundancy).
    #[arg(long)]
    total: Option<usize>,
    /// Degree-sequence shape (assortativity).
    #[arg(long, default_value_t = 750)]
    people: usize,
    #[arg(long, default_value_t = 1000)]
    tasks: usize,
    /// Smallest coupling on the grid (assortativity).
    #[arg(long, default_value_t = -0.002, allow_negative_numbers = true)]
    j_min: f64,
    /// Largest coupling on the grid (assortativity).
    #[arg(long, default_value_t = 0.002, allow_negative_numbers = true)]
    j_max: f64,
    /// Grid points between j-min and j-max inclusive (assortativity).
    #[arg(long, default_value_t = 17)]
    j_steps: usize,
    /// Independent graphs per coupling (assortativity).
    #[arg(long, default_value_t = 5)]
    replicas: u32,
    /// Rewiring sweeps, i.e. attempted swaps per edge (assortativity).
    #[arg(long, default_value_t = generators::DEFAULT_SWEEPS)]
    sweeps: usize,
    /// Edge counts, comma separated (scaling).
    #[arg(long, value_delimiter = ',', default_values_t = [100_000usize, 1_000_000])]
    sizes: Vec<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExperimentKind {
    /// Add or remove random edges batch by batch.
    Density,
    /// Add redundant people batch by batch.
    Redundancy,
    /// Sweep the rewiring coupling and record the realized correlation.
    Assortativity,
    /// Time the measures across graph sizes.
    Scaling,
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepDirection {
    Add,
    Remove,
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepMode {
    Singletons,
    Duplicates,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleMeasure {
    /// Smallest crash set, by subset enumeration.
    Mcs,
    /// Largest redundant set, by subset enumeration.
    Mrs,
    /// Minimal decay area, by permutation enumeration.
    Robustness,
    /// Check that the worst-case budget is one below the complementary crash set.
    Duality,
}

#[derive(Args)]
struct OracleArgs {
    measure: OracleMeasure,
    input: PathBuf,
    /// Cap on people for subset enumeration (2^n states).
    #[arg(long, default_value_t = 16)]
    max_subset: usize,
    /// Cap on people for permutation enumeration (n! states).
    #[arg(long, default_value_t = 8)]
    max_perm: usize,
}

fn parse_threshold(s: &str) -> Result<Threshold, ThresholdError> {
    s.parse()
}

fn parse_strategy(s: &str) -> Result<Strategy, StrategyError> {
    s.parse()
}

/// A failed run: what to print and which exit code to use.
enum Failure {
    Io(String),
    Usage(String),
    Infeasible(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Io(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Infeasible(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Io(m) | Failure::Usage(m) | Failure::Infeasible(m) => m,
        }
    }
}

impl From<EdgeListError> for Failure {
    fn from(e: EdgeListError) -> Self {
        match e {
            EdgeListError::Io(io) => Failure::Io(io.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<MeasureError> for Failure {
    fn from(e: MeasureError) -> Self {
        Failure::Infeasible(e.to_string())
    }
}

impl From<GeneratorError> for Failure {
    fn from(e: GeneratorError) -> Self {
        Failure::Infeasible(e.to_string())
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        Failure::Infeasible(e.to_string())
    }
}

impl From<ThresholdError> for Failure {
    fn from(e: ThresholdError) -> Self {
        Failure::Infeasible(e.to_string())
    }
}

impl From<ExperimentError> for Failure {
    fn from(e: ExperimentError) -> Self {
        match e {
            ExperimentError::Io(io) => Failure::Io(io.to_string()),
            other => Failure::Infeasible(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Analyze { input } => cmd_analyze(cli, input),
        Command::Generate { kind } => cmd_generate(cli, kind),
        Command::Experiment(args) => cmd_experiment(cli, args),
        Command::Oracle(args) => cmd_oracle(cli, args),
        Command::Bench { sizes } => cmd_bench(cli, sizes),
    }
}

fn load_edge_list(path: &Path) -> Result<EdgeList, Failure> {
    let file = fs::File::open(path)
        .map_err(|e| Failure::Io(format!("cannot open {}: {e}", path.display())))?;
    let list = EdgeList::parse(std::io::BufReader::new(file))?;
    if list.edges.is_empty() {
        return Err(Failure::Usage(format!("no edges in {}", path.display())));
    }
    Ok(list)
}

fn load_graph(cli: &Cli, path: &Path) -> Result<(EdgeList, BipartiteGraph), Failure> {
    let list = load_edge_list(path)?;
    let graph = list
        .to_graph(cli.min_weight)
        .expect("interned indices are dense");
    Ok((list, graph))
}

/// Writes fully built outputs, sweeping everything already on disk if any
/// write fails so no partial result survives.
fn write_files(files: Vec<(PathBuf, Vec<u8>)>) -> Result<(), Failure> {
    let mut written: Vec<&PathBuf> = Vec::new();
    for (path, bytes) in &files {
        if let Err(e) = fs::write(path, bytes) {
            let _ = fs::remove_file(path);
            for done in &written {
                let _ = fs::remove_file(done);
            }
            return Err(Failure::Io(format!("cannot write {}: {e}", path.display())));
        }
        written.push(path);
    }
    Ok(())
}

fn emit(output: Option<&Path>, bytes: Vec<u8>) -> Result<(), Failure> {
    match output {
        None => {
            std::io::stdout().write_all(&bytes)?;
            Ok(())
        }
        Some(path) => write_files(vec![(path.to_path_buf(), bytes)]),
    }
}

fn sidecar_path(output: &Path) -> PathBuf {
    let mut name = output.as_os_str().to_owned();
    name.push(".json");
    PathBuf::from(name)
}

fn pretty_json(value: &serde_json::Value) -> Vec<u8> {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    text.into_bytes()
}

/// Key<TAB>value lines for a flat JSON object; arrays join their items with
/// commas.
fn flatten_tsv(value: &serde_json::Value) -> Vec<u8> {
    fn scalar(v: &serde_json::Value) -> String {
        match v {
            serde_json::Value::String(s) => s.clone(),
            other => other.to_string(),
        }
    }
    let mut out = String::new();
    for (key, v) in value.as_object().expect("reports are objects") {
        let rendered = match v {
            serde_json::Value::Array(items) => {
                items.iter().map(scalar).collect::<Vec<_>>().join(",")
            }
            other => scalar(other),
        };
        out.push_str(key);
        out.push('\t');
        out.push_str(&rendered);
        out.push('\n');
    }
    out.into_bytes()
}

fn render(format: Format, value: &serde_json::Value) -> Vec<u8> {
    match format {
        Format::Json => pretty_json(value),
        Format::Tsv => flatten_tsv(value),
    }
}

fn cmd_analyze(cli: &Cli, input: &Path) -> Result<(), Failure> {
    let (list, graph) = load_graph(cli, input)?;
    let report = measures::analyze(&graph, cli.threshold, cli.strategy, cli.seed)?;

    let mrs_people: Vec<&str> = report
        .mrs_set
        .iter()
        .map(|&p| list.people[p].as_str())
        .collect();
    // Vertices can only lose all their edges through the weight filter, so
    // each warning points at the filter setting.
    let mut warnings = Vec::new();
    for (p, name) in list.people.iter().enumerate() {
        if graph.person_degree(p) == 0 {
            warnings.push(format!(
                "person {name:?} has no edges with weight >= {}",
                cli.min_weight
            ));
        }
    }
    for (t, name) in list.tasks.iter().enumerate() {
        if graph.task_degree(t) == 0 {
            warnings.push(format!(
                "task {name:?} has no contributors with weight >= {}",
                cli.min_weight
            ));
        }
    }

    let mut value = serde_json::to_value(&report).expect("report serializes");
    let object = value.as_object_mut().expect("report is an object");
    object.insert("mrs_people".to_string(), json!(mrs_people));
    object.insert("warnings".to_string(), json!(warnings));
    emit(cli.output.as_deref(), render(cli.format, &value))
}

fn cmd_generate(cli: &Cli, kind: &GenerateKind) -> Result<(), Failure> {
    let output = cli
        .output
        .as_ref()
        .ok_or_else(|| Failure::Usage("generate writes files; pass --output".to_string()))?;
    let (graph, sidecar) = match kind {
        GenerateKind::Fixture(args) => build_fixture(cli, args)?,
        GenerateKind::Powerlaw(args) => build_powerlaw(cli, args)?,
    };
    let mut tsv = Vec::new();
    edgelist::write_tsv(&graph, &mut tsv)?;
    write_files(vec![
        (output.clone(), tsv),
        (sidecar_path(output), pretty_json(&sidecar)),
    ])
}

fn generate_sidecar(
    generator: &str,
    parameters: serde_json::Value,
    seed: u64,
    graph: &BipartiteGraph,
) -> serde_json::Value {
    json!({
        "schema_version": measures::REPORT_SCHEMA_VERSION,
        "generator": generator,
        "parameters": parameters,
        "seed": seed,
        "toolkit_version": experiments::TOOLKIT_VERSION,
        "num_people": graph.num_people(),
        "num_tasks": graph.num_tasks(),
        "num_edges": graph.num_edges(),
    })
}

fn build_fixture(
    cli: &Cli,
    args: &FixtureArgs,
) -> Result<(BipartiteGraph, serde_json::Value), Failure> {
    let need = |value: Option<usize>, flag: &str| {
        value.ok_or_else(|| {
            Failure::Usage(format!("fixture {} needs --{flag}", args.name.name()))
        })
    };
    let graph = match args.name {
        FixtureName::ToyProject => fixtures::toy_project(),
        FixtureName::Complete => {
            fixtures::complete(need(args.people, "people")?, need(args.tasks, "tasks")?)
        }
        FixtureName::Dyads => fixtures::dyads(need(args.k, "k")?),
        FixtureName::DegreeTrap => fixtures::degree_trap(
            need(args.people, "people")?,
            need(args.tasks, "tasks")?,
            cli.threshold,
        )?,
        FixtureName::TaskTree => {
            let k = need(args.k, "k")?;
            // The documented area identities degenerate for a single star.
            if k < 2 {
                return Err(Failure::Infeasible(format!(
                    "task-tree needs k >= 2, got {k}"
                )));
            }
            fixtures::task_tree(k)?
        }
    };
    let mut parameters = serde_json::Map::new();
    parameters.insert("name".to_string(), json!(args.name.name()));
    if let Some(people) = args.people {
        parameters.insert("people".to_string(), json!(people));
    }
    if let Some(tasks) = args.tasks {
        parameters.insert("tasks".to_string(), json!(tasks));
    }
    if let Some(k) = args.k {
        parameters.insert("k".to_string(), json!(k));
    }
    if matches!(args.name, FixtureName::DegreeTrap) {
        parameters.insert("threshold".to_string(), json!(cli.threshold.to_string()));
    }
    let sidecar = generate_sidecar("fixture", parameters.into(), cli.seed, &graph);
    Ok((graph, sidecar))
}

fn build_powerlaw(
    cli: &Cli,
    args: &PowerlawArgs,
) -> Result<(BipartiteGraph, serde_json::Value), Failure> {
    let person = PowerLawParams::new(args.alpha_person, args.a_person, args.c_person)?;
    let task = PowerLawParams::new(args.alpha_task, args.a_task, args.c_task)?;
    let degrees = sample_degree_sequence(
        args.people,
        args.tasks,
        &person,
        &task,
        derive_seed(cli.seed, "powerlaw-degrees", 0, 0),
    )?;
    let generated = configuration_model(&degrees, derive_seed(cli.seed, "powerlaw-model", 0, 0))?;
    let parameters = json!({
        "people": args.people,
        "tasks": args.tasks,
        "alpha_person": args.alpha_person,
        "a_person": args.a_person,
        "c_person": args.c_person,
        "alpha_task": args.alpha_task,
        "a_task": args.a_task,
        "c_task": args.c_task,
        "collapsed_edges": generated.collapsed_edges,
    });
    let sidecar = generate_sidecar("powerlaw", parameters, cli.seed, &generated.graph);
    Ok((generated.graph, sidecar))
}

fn cmd_experiment(cli: &Cli, args: &ExperimentArgs) -> Result<(), Failure> {
    let need_input = || {
        args.input.as_ref().ok_or_else(|| {
            Failure::Usage("this experiment reads a graph; pass --input".to_string())
        })
    };
    let need = |value: Option<usize>, flag: &str| {
        value.ok_or_else(|| Failure::Usage(format!("this experiment needs --{flag}")))
    };
    match args.kind {
        ExperimentKind::Density => {
            let input = need_input()?;
            let direction = args
                .direction
                .ok_or_else(|| Failure::Usage("experiment density needs --direction".to_string()))?;
            let (_, graph) = load_graph(cli, input)?;
            let config = DensityConfig {
                direction: match direction {
                    SweepDirection::Add => DensityDirection::Add,
                    SweepDirection::Remove => DensityDirection::Remove,
                },
                batch: need(args.batch, "batch")?,
                total: need(args.total, "total")?,
                threshold: cli.threshold,
                strategy: cli.strategy,
                master_seed: cli.seed,
            };
            let rows = run_density_sweep(&graph, &config)?;
            let parameters = json!({
                "input": input.display().to_string(),
                "direction": match direction { SweepDirection::Add => "add", SweepDirection::Remove => "remove" },
                "batch": config.batch,
                "total": config.total,
                "threshold": cli.threshold.to_string(),
                "strategy": cli.strategy.name(),
            });
            emit_rows(cli, &rows, "density", parameters)
        }
        ExperimentKind::Redundancy => {
            let input = need_input()?;
            let mode = args
                .mode
                .ok_or_else(|| Failure::Usage("experiment redundancy needs --mode".to_string()))?;
            let (_, graph) = load_graph(cli, input)?;
            let config = RedundancyConfig {
                mode: match mode {
                    SweepMode::Singletons => RedundancyMode::Singletons,
                    SweepMode::Duplicates => RedundancyMode::Duplicates,
                },
                batch: need(args.batch, "batch")?,
                total: need(args.total, "total")?,
                threshold: cli.threshold,
                strategy: cli.strategy,
                master_seed: cli.seed,
            };
            let rows = run_redundancy_sweep(&graph, &config)?;
            let parameters = json!({
                "input": input.display().to_string(),
                "mode": match mode { SweepMode::Singletons => "singletons", SweepMode::Duplicates => "duplicates" },
                "batch": config.batch,
                "total": config.total,
                "threshold": cli.threshold.to_string(),
                "strategy": cli.strategy.name(),
            });
            emit_rows(cli, &rows, "redundancy", parameters)
        }
        ExperimentKind::Assortativity => {
            if args.j_steps == 0 {
                return Err(Failure::Usage("--j-steps must be at least 1".to_string()));
            }
            let couplings: Vec<f64> = if args.j_steps == 1 {
                vec![args.j_min]
            } else {
                (0..args.j_steps)
                    .map(|i| {
                        args.j_min
                            + (args.j_max - args.j_min) * i as f64 / (args.j_steps - 1) as f64
                    })
                    .collect()
            };
            // Desk-scale bounded power laws; the same shape the generator
            // subcommand defaults to.
            let person = PowerLawParams::new(0.2, 1.0, 100.0)?;
            let task = PowerLawParams::new(0.2, 1.0, 70.0)?;
            let degrees = sample_degree_sequence(
                args.people,
                args.tasks,
                &person,
                &task,
                derive_seed(cli.seed, "assortativity-degrees", 0, 0),
            )?;
            let config = AssortativityConfig {
                couplings: couplings.clone(),
                replicas: args.replicas,
                sweeps: args.sweeps,
                threshold: cli.threshold,
                strategy: cli.strategy,
                master_seed: cli.seed,
            };
            let rows = run_assortativity_sweep(&degrees, &config)?;
            let parameters = json!({
                "people": args.people,
                "tasks": args.tasks,
                "j_min": args.j_min,
                "j_max": args.j_max,
                "j_steps": args.j_steps,
                "couplings": couplings,
                "replicas": args.replicas,
                "sweeps": args.sweeps,
                "threshold": cli.threshold.to_string(),
                "strategy": cli.strategy.name(),
            });
            emit_rows(cli, &rows, "assortativity", parameters)
        }
        ExperimentKind::Scaling => run_bench(cli, &args.sizes),
    }
}

fn cmd_bench(cli: &Cli, sizes: &[usize]) -> Result<(), Failure> {
    run_bench(cli, sizes)
}

fn run_bench(cli: &Cli, sizes: &[usize]) -> Result<(), Failure> {
    let config = ScalingConfig {
        sizes: sizes.to_vec(),
        master_seed: cli.seed,
    };
    let rows = run_scaling_bench(&config)?;
    let parameters = json!({
        "sizes": sizes,
        "threshold": scaling_threshold().to_string(),
    });
    emit_rows(cli, &rows, "scaling", parameters)
}

/// CSV to standard output, or CSV plus a JSON manifest sidecar when an
/// output path is given.
fn emit_rows(
    cli: &Cli,
    rows: &[ExperimentRow],
    experiment: &str,
    parameters: serde_json::Value,
) -> Result<(), Failure> {
    let mut csv_bytes = Vec::new();
    write_rows_csv(rows, &mut csv_bytes)?;
    match &cli.output {
        None => {
            std::io::stdout().write_all(&csv_bytes)?;
            Ok(())
        }
        Some(path) => {
            let manifest = ExperimentManifest {
                schema_version: measures::REPORT_SCHEMA_VERSION,
                experiment: experiment.to_string(),
                parameters,
                master_seed: cli.seed,
                toolkit_version: experiments::TOOLKIT_VERSION,
            };
            let manifest_value = serde_json::to_value(&manifest).expect("manifest serializes");
            write_files(vec![
                (path.clone(), csv_bytes),
                (sidecar_path(path), pretty_json(&manifest_value)),
            ])
        }
    }
}

fn cmd_oracle(cli: &Cli, args: &OracleArgs) -> Result<(), Failure> {
    let (_, graph) = load_graph(cli, &args.input)?;
    let limits = OracleLimits::new(args.max_subset, args.max_perm)?;
    let value = match args.measure {
        OracleMeasure::Mcs => {
            let result = oracle::exact_mcs(&graph, cli.threshold, &limits)?;
            json!({
                "measure": "mcs",
                "threshold": cli.threshold.to_string(),
                "value": result.size,
                "witness": result.witness,
            })
        }
        OracleMeasure::Mrs => {
            let result = oracle::exact_mrs(&graph, cli.threshold, &limits)?;
            json!({
                "measure": "mrs",
                "threshold": cli.threshold.to_string(),
                "value": result.size,
                "witness": result.witness,
            })
        }
        OracleMeasure::Robustness => {
            let result = oracle::exact_robustness(&graph, &limits)?;
            json!({
                "measure": "robustness",
                "value": result.area,
                "witness": result.witness,
            })
        }
        OracleMeasure::Duality => {
            let z_min = oracle::exact_z(&graph, cli.threshold, CoverageAggregate::Min, &limits)?;
            let complement = cli.threshold.complement()?;
            let crash = oracle::exact_mcs(&graph, complement, &limits)?;
            json!({
                "measure": "duality",
                "threshold": cli.threshold.to_string(),
                "z_min": z_min,
                "mcs_complement": crash.size,
                "holds": z_min + 1 == crash.size,
            })
        }
    };
    emit(cli.output.as_deref(), render(cli.format, &value))
}
