//! Command-line front end over `exact_edge::commands`.
//!
//! Exit codes: 0 success or pass, 1 verification failure, 2 usage or input
//! error.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use exact_edge::commands::{
    cmd_bench, cmd_sample, cmd_stats, cmd_verify, render_brackets, sweep_points, write_bench_csv, BenchOptions,
    CommandError, ExperimentReport, GraphSource, SampleOptions, StatsOptions, VerifyOptions, DEFAULT_SEED,
};
use exact_edge::graph::GeneratorSpec;
use exact_edge::samplers::{Eps, Orientation};
use exact_edge::verify::FactoryDepths;

#[derive(Parser)]
#[command(name = "edge-sampler", version, about = "Exactly uniform edge sampling with query counting")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw edges and write them as "u v" lines.
    Sample(SampleArgs),
    /// Enumerate the sampler's output distribution and bracket every edge.
    Verify(VerifyArgs),
    /// Measure query cost over a set of graphs and write CSV.
    Bench(BenchArgs),
    /// Test a sample file against the uniform edge distribution.
    Stats(StatsArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Edge-list file.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Generator spec such as clique_plus_isolated:5,25.
    #[arg(long)]
    gen: Option<GeneratorSpec>,
}

impl Source {
    fn resolve(&self) -> GraphSource {
        match (&self.graph, self.gen) {
            (Some(path), _) => GraphSource::File(path.clone()),
            (None, Some(spec)) => GraphSource::Generator(spec),
            (None, None) => unreachable!("clap requires one source"),
        }
    }
}

#[derive(Args)]
struct SampleArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long)]
    count: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Upper bound on the edge count used for the threshold. Defaults to m.
    #[arg(long)]
    m_tilde: Option<u64>,
    /// directed or canonical-undirected.
    #[arg(long, default_value_t = Orientation::Directed)]
    orientation: Orientation,
    /// Sample with the eps-approximate baseline instead, e.g. 1/2.
    #[arg(long)]
    eps: Option<Eps>,
    /// Edge output file. Defaults to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON report file. Defaults to stderr.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    source: Source,
    /// Branch budget for one sampler iteration.
    #[arg(long, default_value_t = 64)]
    depth: usize,
    #[arg(long)]
    m_tilde: Option<u64>,
    #[arg(long, default_value_t = Orientation::Directed)]
    orientation: Orientation,
    /// Verify the eps-approximate baseline instead.
    #[arg(long)]
    eps: Option<Eps>,
    /// JSON report file.
    #[arg(long, visible_alias = "out")]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Generator spec; repeat for several points.
    #[arg(long)]
    gen: Vec<GeneratorSpec>,
    /// Edge-list file; repeat for several points.
    #[arg(long)]
    graph: Vec<PathBuf>,
    /// Comma-separated n values for a clique_plus_isolated sweep with m close to n.
    #[arg(long, value_delimiter = ',')]
    sweep: Vec<u64>,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Add baseline columns at this eps.
    #[arg(long)]
    eps: Option<Eps>,
    /// CSV output file. Defaults to stdout.
    #[arg(long, visible_alias = "out")]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct StatsArgs {
    #[command(flatten)]
    source: Source,
    /// Sample file of "u v" lines.
    #[arg(long)]
    samples: PathBuf,
    #[arg(long, default_value_t = Orientation::Directed)]
    orientation: Orientation,
    /// JSON report file.
    #[arg(long, visible_alias = "out")]
    report: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(command: Command) -> Result<u8, CommandError> {
    match command {
        Command::Sample(a) => {
            let opts = SampleOptions {
                source: a.source.resolve(),
                count: a.count,
                seed: a.seed,
                orientation: a.orientation,
                m_tilde: a.m_tilde,
                eps: a.eps,
            };
            let report = match &a.out {
                Some(path) => cmd_sample(&opts, &mut BufWriter::new(File::create(path)?))?,
                None => cmd_sample(&opts, &mut BufWriter::new(io::stdout().lock()))?,
            };
            match &a.report {
                Some(path) => write_report(&report, path)?,
                None => eprintln!("{}", report.to_json()),
            }
            Ok(0)
        }
        Command::Verify(a) => {
            let opts = VerifyOptions {
                source: a.source.resolve(),
                depth: a.depth,
                m_tilde: a.m_tilde,
                orientation: a.orientation,
                eps: a.eps,
                factory: FactoryDepths::default(),
            };
            let report = cmd_verify(&opts)?;
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            print!("{}", render_brackets(&report));
            finish(&report, a.report.as_deref())
        }
        Command::Bench(a) => {
            let mut points: Vec<GraphSource> = a.graph.into_iter().map(GraphSource::File).collect();
            points.extend(a.gen.into_iter().map(GraphSource::Generator));
            points.extend(sweep_points(&a.sweep).into_iter().map(GraphSource::Generator));
            let opts = BenchOptions { points, trials: a.trials, seed: a.seed, eps: a.eps };
            let rows = cmd_bench(&opts)?;
            match &a.csv {
                Some(path) => write_bench_csv(&rows, BufWriter::new(File::create(path)?))?,
                None => write_bench_csv(&rows, io::stdout().lock())?,
            }
            Ok(0)
        }
        Command::Stats(a) => {
            let opts = StatsOptions { samples: a.samples, source: a.source.resolve(), orientation: a.orientation };
            let report = cmd_stats(&opts)?;
            if let Some(chi) = &report.verdicts.chi_square {
                println!(
                    "chi-square {:.4} over {} cells, p = {:.6} ({})",
                    chi.test.statistic,
                    chi.test.cells,
                    chi.test.p_value,
                    if chi.passed { "pass" } else { "FAIL" }
                );
            }
            if let Some(tv) = report.verdicts.tv {
                println!("tv {tv:.6}");
            }
            finish(&report, a.report.as_deref())
        }
    }
}

fn finish(report: &ExperimentReport, path: Option<&Path>) -> Result<u8, CommandError> {
    if let Some(path) = path {
        write_report(report, path)?;
    }
    Ok(if report.passed() { 0 } else { 1 })
}

fn write_report(report: &ExperimentReport, path: &Path) -> Result<(), CommandError> {
    let mut f = File::create(path)?;
    writeln!(f, "{}", report.to_json())?;
    Ok(())
}
