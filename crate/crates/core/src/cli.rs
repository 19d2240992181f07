//! The `cyco` command line.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use log::{info, warn};
use rayon::prelude::*;

use crate::circuit::{Circuit, DurationTable, Layout};
use crate::error::{Error, Result};
use crate::metrics::{
    bench_report, emit_gantt, hellinger_fidelity, mean_delta, BenchRecord, Distribution, FidelityVariant,
    ReportFormat,
};
use crate::pipeline::{run_pipeline, PipelineOptions, PipelineOutput};
use crate::profiles::builtin_profile;
use crate::qasm::parse_qasm;
use crate::random::{default_grid, random_circuit};
use crate::scheduler::emit_scheduled_qasm;
use crate::topology::Topology;

/// Exit code for a schedule that fails verification.
pub const EXIT_VERIFY_FAILED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "cyco", version, about = "Crosstalk-safe barrier-punching scheduler")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Schedule one circuit and write the requested artifacts.
    Schedule(ScheduleArgs),
    /// Compare baseline and punched schedules over a directory of circuits.
    Bench(BenchArgs),
    /// Write a seeded random circuit.
    Random(RandomArgs),
    /// Hellinger fidelity of two outcome distributions.
    Fidelity(FidelityArgs),
}

#[derive(Debug, Clone, Args)]
pub struct DeviceArgs {
    /// Built-in device: grid:RxC, brisbane-127, sycamore-53, aspen-m, ankaa-q3.
    #[arg(long)]
    pub profile: Option<String>,
    /// Coupling-map JSON file or built-in profile name.
    #[arg(long)]
    pub topology: Option<String>,
    /// Gate-duration JSON file.
    #[arg(long)]
    pub durations: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ScheduleArgs {
    #[arg(long)]
    pub qasm: PathBuf,
    #[command(flatten)]
    pub device: DeviceArgs,
    /// Logical-to-physical qubit map (JSON list).
    #[arg(long)]
    pub layout: Option<PathBuf>,
    #[arg(long, default_value_t = crate::baseline::DEFAULT_ALPHA)]
    pub alpha: f64,
    #[arg(long, default_value_t = FidelityVariant::Paper)]
    pub fidelity_variant: FidelityVariant,
    /// Comma-separated subset of qasm, json, layers, tddg, svg.
    #[arg(long, value_delimiter = ',', default_value = "json")]
    pub emit: Vec<Emit>,
    /// Keep every full barrier.
    #[arg(long)]
    pub no_punch: bool,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    /// Directory of .qasm files.
    pub suite: PathBuf,
    #[command(flatten)]
    pub device: DeviceArgs,
    #[arg(long, default_value_t = crate::baseline::DEFAULT_ALPHA)]
    pub alpha: f64,
    #[arg(long)]
    pub no_punch: bool,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
}

#[derive(Debug, Clone, Args)]
pub struct RandomArgs {
    #[arg(long)]
    pub qubits: usize,
    #[arg(long)]
    pub gates: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub device: DeviceArgs,
    /// Directory for the generated file; stdout when absent.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct FidelityArgs {
    /// Reference distribution (JSON object of bitstring to probability).
    #[arg(long)]
    pub ideal: PathBuf,
    #[arg(long)]
    pub measured: PathBuf,
    #[arg(long, default_value_t = FidelityVariant::Paper)]
    pub fidelity_variant: FidelityVariant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Emit {
    Qasm,
    Json,
    Layers,
    Tddg,
    Svg,
}

/// Everything one `schedule` run needs, resolved from the flags.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub qasm: PathBuf,
    pub device: DeviceArgs,
    pub layout: Option<PathBuf>,
    pub alpha: f64,
    pub fidelity_variant: FidelityVariant,
    pub emit: Vec<Emit>,
    pub punch: bool,
    pub out_dir: PathBuf,
    pub seed: u64,
}

impl From<ScheduleArgs> for RunConfig {
    fn from(a: ScheduleArgs) -> Self {
        RunConfig {
            qasm: a.qasm,
            device: a.device,
            layout: a.layout,
            alpha: a.alpha,
            fidelity_variant: a.fidelity_variant,
            emit: a.emit,
            punch: !a.no_punch,
            out_dir: a.out_dir,
            seed: a.seed,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.alpha.is_nan() || self.alpha <= 0.0 {
            return Err(Error::BadInput(format!("--alpha must be positive, got {}", self.alpha)));
        }
        if !self.qasm.is_file() {
            return Err(Error::Io(std::io::Error::new(
                std::io::ErrorKind::NotFound,
                format!("circuit file {} not found", self.qasm.display()),
            )));
        }
        Ok(())
    }

    fn options(&self) -> PipelineOptions {
        PipelineOptions {
            alpha: self.alpha,
            punch: self.punch,
            mitigate: true,
        }
    }
}

/// Resolves the device from `--profile`, `--topology` and `--durations`.
/// A topology argument naming an existing file is read as JSON; otherwise it
/// is taken as a profile name. Explicit durations override profile ones.
pub fn resolve_device(d: &DeviceArgs) -> Result<(Topology, DurationTable)> {
    let mut topo = None;
    let mut durs = None;
    if let Some(name) = &d.profile {
        let (t, table) = builtin_profile(name)?;
        topo = Some(t);
        durs = Some(table);
    }
    if let Some(arg) = &d.topology {
        let path = Path::new(arg);
        if path.is_file() {
            topo = Some(Topology::load(path)?);
        } else {
            let (t, table) = builtin_profile(arg)?;
            topo = Some(t);
            durs.get_or_insert(table);
        }
    }
    if let Some(path) = &d.durations {
        durs = Some(DurationTable::load(path)?);
    }
    match (topo, durs) {
        (Some(t), Some(table)) => Ok((t, table)),
        (None, _) => Err(Error::BadInput("no device given; use --profile or --topology".into())),
        (Some(_), None) => Err(Error::MissingDuration("every gate (no --durations given)".into())),
    }
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "circuit".into())
}

fn load_circuit(path: &Path, layout: Option<&Path>, t: &Topology) -> Result<Circuit> {
    let c = parse_qasm(&fs::read_to_string(path)?)?;
    match layout {
        Some(l) => c.apply_layout(&Layout::load(l)?, t.num_qubits()),
        None => Ok(c),
    }
}

/// Runs the whole pipeline for one circuit and writes the requested files.
pub fn schedule_files(cfg: &RunConfig) -> Result<PipelineOutput> {
    cfg.validate()?;
    let (topo, durs) = resolve_device(&cfg.device)?;
    let circuit = load_circuit(&cfg.qasm, cfg.layout.as_deref(), &topo)?;
    let out = run_pipeline(&circuit, &topo, &durs, &cfg.options())?;
    fs::create_dir_all(&cfg.out_dir)?;
    let base = stem(&cfg.qasm);
    let file = |suffix: &str| cfg.out_dir.join(format!("{base}.{suffix}"));
    for emit in &cfg.emit {
        match emit {
            Emit::Qasm => fs::write(file("cyco.qasm"), emit_scheduled_qasm(&out.schedule, &out.circuit))?,
            Emit::Json => fs::write(file("schedule.json"), out.schedule.to_json())?,
            Emit::Layers => fs::write(file("layers.json"), out.layered.to_json())?,
            Emit::Tddg => {
                fs::write(file("tddg.json"), out.tddg.to_json())?;
                fs::write(file("tddg.dot"), out.tddg.to_dot())?;
            }
            Emit::Svg => fs::write(file("gantt.svg"), emit_gantt(&out.schedule))?,
        }
    }
    Ok(out)
}

/// `schedule` command; returns the process exit code.
pub fn cmd_schedule(cfg: &RunConfig) -> i32 {
    match schedule_files(cfg) {
        Ok(out) => {
            println!(
                "{}: baseline {} cycles, cyco {} cycles, delta {:.2}%",
                cfg.qasm.display(),
                out.baseline.program_cycle,
                out.schedule.program_cycle,
                out.speedup()
            );
            if out.verify.passed() {
                0
            } else {
                for v in &out.verify.violations {
                    eprintln!("verification failed: {v:?}");
                }
                EXIT_VERIFY_FAILED
            }
        }
        Err(e) => report(e),
    }
}

fn report(e: Error) -> i32 {
    eprintln!("error: {e}");
    e.exit_code()
}

fn bench_one(path: &Path, topo: &Topology, durs: &DurationTable, opts: &PipelineOptions) -> Result<Option<BenchRecord>> {
    let c = parse_qasm(&fs::read_to_string(path)?)?;
    if c.num_qubits > topo.num_qubits() {
        warn!(
            "skipping {}: {} qubits exceed the device's {}",
            path.display(),
            c.num_qubits,
            topo.num_qubits()
        );
        return Ok(None);
    }
    let out = run_pipeline(&c, topo, durs, opts)?;
    if !out.verify.passed() {
        return Err(Error::InternalInvariantViolation(format!(
            "{} failed verification: {:?}",
            path.display(),
            out.verify.violations
        )));
    }
    let mut r = BenchRecord::new(stem(path), out.baseline.program_cycle, out.schedule.program_cycle, durs.tau_ns);
    r.interference_baseline = out.baseline.interference.clone();
    r.interference_cyco = out.schedule.interference.clone();
    Ok(Some(r))
}

/// Benchmarks every `.qasm` file of `args.suite`, writing `bench.csv` and
/// `bench.json` to the output directory. Returns the records in name order.
pub fn bench_suite(args: &BenchArgs) -> Result<Vec<BenchRecord>> {
    if args.alpha.is_nan() || args.alpha <= 0.0 {
        return Err(Error::BadInput(format!("--alpha must be positive, got {}", args.alpha)));
    }
    let (topo, durs) = resolve_device(&args.device)?;
    let mut files: Vec<PathBuf> = fs::read_dir(&args.suite)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "qasm"))
        .collect();
    files.sort();
    if files.is_empty() {
        warn!("no .qasm files in {}", args.suite.display());
    }
    let opts = PipelineOptions {
        alpha: args.alpha,
        punch: !args.no_punch,
        mitigate: true,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs)
        .build()
        .map_err(|e| Error::BadInput(format!("cannot start {} workers: {e}", args.jobs)))?;
    let results: Vec<(PathBuf, Result<Option<BenchRecord>>)> = pool.install(|| {
        files
            .par_iter()
            .map(|p| (p.clone(), bench_one(p, &topo, &durs, &opts)))
            .collect()
    });
    let mut records = Vec::new();
    for (path, r) in results {
        match r {
            Ok(Some(rec)) => records.push(rec),
            Ok(None) => {}
            Err(e) => warn!("skipping {}: {e}", path.display()),
        }
    }
    records.sort_by(|a, b| a.benchmark.cmp(&b.benchmark));
    fs::create_dir_all(&args.out_dir)?;
    bench_report(&records, ReportFormat::Csv, fs::File::create(args.out_dir.join("bench.csv"))?)?;
    bench_report(&records, ReportFormat::Json, fs::File::create(args.out_dir.join("bench.json"))?)?;
    if let Some(m) = mean_delta(&records) {
        info!("{} circuits, mean delta {m:.2}%", records.len());
    }
    Ok(records)
}

pub fn cmd_bench(args: &BenchArgs) -> i32 {
    match bench_suite(args) {
        Ok(records) => {
            for r in &records {
                println!("{},{:?},{:?},{:.2}", r.benchmark, r.tau_baseline, r.tau_cyco, r.delta);
            }
            if let Some(m) = mean_delta(&records) {
                println!("MEAN,,,{m:.2}");
            }
            0
        }
        Err(e) => report(e),
    }
}

/// Random circuit as QASM text.
pub fn random_qasm(args: &RandomArgs) -> Result<String> {
    let d = &args.device;
    let (topo, durs) = if d.profile.is_none() && d.topology.is_none() {
        let mut durs = builtin_profile("grid:1x1")?.1;
        if let Some(p) = &d.durations {
            durs = DurationTable::load(p)?;
        }
        (default_grid(args.qubits), durs)
    } else {
        resolve_device(d)?
    };
    info!("random circuit: {} qubits, {} gates, seed {}", args.qubits, args.gates, args.seed);
    let c = random_circuit(&topo, &durs, args.qubits, args.gates, args.seed)?;
    Ok(crate::qasm::emit_qasm(&c))
}

pub fn cmd_random(args: &RandomArgs) -> i32 {
    let text = match random_qasm(args) {
        Ok(t) => t,
        Err(e) => return report(e),
    };
    match &args.out_dir {
        None => {
            print!("{text}");
            0
        }
        Some(dir) => {
            let path = dir.join(format!("random_n{}_g{}_s{}.qasm", args.qubits, args.gates, args.seed));
            match fs::create_dir_all(dir).and_then(|_| fs::write(&path, text)) {
                Ok(()) => {
                    println!("{}", path.display());
                    0
                }
                Err(e) => report(e.into()),
            }
        }
    }
}

pub fn cmd_fidelity(args: &FidelityArgs) -> i32 {
    let run = || -> Result<f64> {
        let p = Distribution::from_json(&fs::read_to_string(&args.ideal)?)?;
        let q = Distribution::from_json(&fs::read_to_string(&args.measured)?)?;
        hellinger_fidelity(&p, &q, args.fidelity_variant)
    };
    match run() {
        Ok(f) => {
            println!("{f}");
            0
        }
        Err(e) => report(e),
    }
}

/// Parses arguments and runs the chosen command. Usage errors exit with 2.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match cli.command {
        Command::Schedule(a) => cmd_schedule(&RunConfig::from(a)),
        Command::Bench(a) => cmd_bench(&a),
        Command::Random(a) => cmd_random(&a),
        Command::Fidelity(a) => cmd_fidelity(&a),
    }
}
