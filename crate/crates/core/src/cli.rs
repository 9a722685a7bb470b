//! Command-line front end.
//!
//! Exit codes: 0 on success or FOUND, 2 when nothing was found or a run
//! aborted, 1 on usage or I/O errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::embedding::verify_coloured_embedding;
use crate::host::HostTemplate;
use crate::instances::{
    bijective_pattern, complete_collection, lowerbound_construction, random_min_degree_collection,
    random_pattern, Orientation,
};
use crate::io::{
    cycle_to_string, instance_to_string, pattern_to_string, read_cycle, read_instance, read_pattern,
    write_text,
};
use crate::matching::SamplerMode;
use crate::oracle::{count_coloured_hamilton_powers, find_coloured_hamilton_power, Count, Outcome};
use crate::par::{self, Parallelism};
use crate::pipeline::{solve, PipelineConfig, RunMode, TemplateChoice};
use crate::rng::{stream, Stage};

pub const CSV_HEADER: [&str; 10] = [
    "seed",
    "n",
    "k",
    "r",
    "delta_frac",
    "mode",
    "stage_reached",
    "success",
    "nodes_or_retries",
    "runtime_ms",
];

#[derive(Parser, Debug)]
#[command(name = "powercycle", version, about = "Colour-patterned Hamilton cycle powers in graph collections")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the constructive pipeline.
    Solve {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        pattern: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
        /// Where to write the cycle.
        #[arg(long)]
        out: PathBuf,
        /// Where to write the JSON trace.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Check a cycle against an instance and pattern.
    Verify {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        cycle: PathBuf,
    },
    /// Exhaustive search on small instances.
    Oracle {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        pattern: PathBuf,
        /// Node budget; unlimited if absent.
        #[arg(long)]
        budget: Option<u64>,
        /// Count anchored placements instead of stopping at the first.
        #[arg(long)]
        count: bool,
        #[arg(long)]
        sequential: bool,
        /// Where to write a found cycle.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate instances and patterns.
    #[command(subcommand)]
    Gen(Gen),
    /// Batch experiments.
    #[command(subcommand)]
    Experiment(Experiment),
}

#[derive(Subcommand, Debug)]
enum Gen {
    /// `m` copies of `K_n`.
    Complete {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Random graphs with a minimum degree floor.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long)]
        delta_frac: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// The two-graph lower-bound family with its pattern.
    Lowerbound {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: usize,
        #[arg(long, value_enum, default_value_t = OrientationArg::Figure)]
        orientation: OrientationArg,
        #[arg(long, default_value = "instance.json")]
        out: PathBuf,
        #[arg(long, default_value = "pattern.json")]
        pattern_out: PathBuf,
    },
    /// A colour pattern on `C_n^k`.
    Pattern {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Colours drawn from `1..=m`; ignored with `--bijective`.
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// One colour per host edge, `m = kn`.
        #[arg(long)]
        bijective: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum Experiment {
    /// Pipeline success over a range of minimum-degree fractions.
    Sweep {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        delta_from: f64,
        #[arg(long)]
        delta_to: f64,
        #[arg(long)]
        delta_step: f64,
        #[arg(long)]
        trials: usize,
        /// Number of graphs; the pattern uses colours `1..=colours`.
        #[arg(long, default_value_t = 2)]
        colours: usize,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OrientationArg {
    Figure,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Strict,
    BestEffort,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SamplerArg {
    Exact,
    Fast,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TemplateArg {
    Auto,
    Compact,
    Random,
}

#[derive(Args, Debug, Clone)]
struct SolverArgs {
    #[arg(long, default_value_t = 0.2)]
    alpha: f64,
    #[arg(long, default_value_t = 0.05)]
    beta: f64,
    #[arg(long, default_value_t = 0.01)]
    gamma: f64,
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    /// Path order, default `3k + 1`.
    #[arg(long)]
    r: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = ModeArg::BestEffort)]
    mode: ModeArg,
    #[arg(long, value_enum, default_value_t = SamplerArg::Fast)]
    sampler: SamplerArg,
    #[arg(long, default_value_t = 20)]
    max_retries: usize,
    /// Absorbed vertex count, overriding `⌊βn⌋`.
    #[arg(long)]
    absorber_s: Option<usize>,
    /// Reservoir slack, overriding `⌊(β+γ)n⌋ - s`.
    #[arg(long)]
    slack: Option<usize>,
    #[arg(long, value_enum, default_value_t = TemplateArg::Auto)]
    template: TemplateArg,
    #[arg(long)]
    sequential: bool,
    /// Leave timings out of traces and CSV rows.
    #[arg(long)]
    no_timings: bool,
}

impl SolverArgs {
    fn config(&self, seed: u64) -> PipelineConfig {
        PipelineConfig {
            alpha: self.alpha,
            beta: self.beta,
            gamma: self.gamma,
            epsilon: self.epsilon,
            r: self.r,
            seed,
            sampler: match self.sampler {
                SamplerArg::Exact => SamplerMode::Exact,
                SamplerArg::Fast => SamplerMode::Fast,
            },
            max_retries: self.max_retries,
            mode: match self.mode {
                ModeArg::Strict => RunMode::Strict,
                ModeArg::BestEffort => RunMode::BestEffort,
            },
            absorber_s: self.absorber_s,
            slack: self.slack,
            template: match self.template {
                TemplateArg::Auto => TemplateChoice::Auto,
                TemplateArg::Compact => TemplateChoice::Compact,
                TemplateArg::Random => TemplateChoice::Random,
            },
            parallelism: parallelism(self.sequential),
            record_timings: !self.no_timings,
        }
    }

    fn mode_name(&self) -> &'static str {
        match self.mode {
            ModeArg::Strict => "strict",
            ModeArg::BestEffort => "best-effort",
        }
    }
}

fn parallelism(sequential: bool) -> Parallelism {
    if sequential {
        Parallelism::Sequential
    } else {
        Parallelism::Parallel
    }
}

/// Failure that ends a command with exit code 1.
struct Fatal(String);

impl<E: std::fmt::Display> From<E> for Fatal {
    fn from(e: E) -> Self {
        Fatal(e.to_string())
    }
}

/// Parses `argv` (program name first) and runs the command.
pub fn dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(Fatal(msg)) => {
            eprintln!("error: {msg}");
            1
        }
    }
}

fn run(command: Command) -> Result<i32, Fatal> {
    match command {
        Command::Solve {
            instance,
            pattern,
            solver,
            out,
            trace,
        } => {
            let collection = read_instance(&instance)?;
            let pattern = read_pattern(&pattern)?;
            let config = solver.config(solver.seed);
            match solve(&collection, &pattern, &config) {
                Ok((cycle, tr)) => {
                    let report = verify_coloured_embedding(&collection, &pattern, &cycle.vertices)?;
                    if !report.is_valid() {
                        println!("ABORT stage=verify: output failed re-verification");
                        return Ok(2);
                    }
                    write_text(&out, &cycle_to_string(&cycle))?;
                    if let Some(t) = trace {
                        write_text(&t, &tr.to_json())?;
                    }
                    println!("SOLVED n={} k={} attempts={}", cycle.len(), cycle.k, tr.total_attempts());
                    Ok(0)
                }
                Err(f) => {
                    if let Some(t) = trace {
                        write_text(&t, &f.trace.to_json())?;
                    }
                    println!("ABORT stage={}: {}", f.trace.stage_reached(), f.error);
                    Ok(2)
                }
            }
        }
        Command::Verify {
            instance,
            pattern,
            cycle,
        } => {
            let collection = read_instance(&instance)?;
            let pattern = read_pattern(&pattern)?;
            let cycle = read_cycle(&cycle)?;
            let report = verify_coloured_embedding(&collection, &pattern, &cycle.vertices)?;
            match report.violation {
                None => {
                    println!("VALID");
                    Ok(0)
                }
                Some(v) => {
                    println!("INVALID host edge {:?}", v.host_edge);
                    Ok(2)
                }
            }
        }
        Command::Oracle {
            instance,
            pattern,
            budget,
            count,
            sequential,
            out,
        } => {
            let collection = read_instance(&instance)?;
            let pattern = read_pattern(&pattern)?;
            let mode = parallelism(sequential);
            if count {
                let (c, stats) = count_coloured_hamilton_powers(&collection, &pattern, budget, mode)?;
                let code = match c {
                    Count::Exact(0) => {
                        println!("NONE count=0 nodes={}", stats.nodes);
                        2
                    }
                    Count::Exact(x) => {
                        println!("FOUND count={x} nodes={}", stats.nodes);
                        0
                    }
                    Count::AtLeast(x) => {
                        println!("UNKNOWN count>={x} nodes={}", stats.nodes);
                        2
                    }
                };
                return Ok(code);
            }
            let (outcome, stats) = find_coloured_hamilton_power(&collection, &pattern, budget, mode)?;
            match outcome {
                Outcome::Found(cycle) => {
                    if let Some(o) = out {
                        write_text(&o, &cycle_to_string(&cycle))?;
                    }
                    println!("FOUND nodes={}", stats.nodes);
                    Ok(0)
                }
                Outcome::None => {
                    println!("NONE nodes={}", stats.nodes);
                    Ok(2)
                }
                Outcome::Unknown => {
                    println!("UNKNOWN nodes={}", stats.nodes);
                    Ok(2)
                }
            }
        }
        Command::Gen(g) => generate(g),
        Command::Experiment(Experiment::Sweep {
            k,
            n,
            delta_from,
            delta_to,
            delta_step,
            trials,
            colours,
            solver,
            out,
        }) => sweep(k, n, (delta_from, delta_to, delta_step), trials, colours, &solver, &out),
    }
}

fn generate(g: Gen) -> Result<i32, Fatal> {
    match g {
        Gen::Complete { n, m, out } => {
            write_text(&out, &instance_to_string(&complete_collection(n, m)?))?;
        }
        Gen::Random {
            n,
            m,
            delta_frac,
            seed,
            out,
        } => {
            let mut rng = stream(seed, Stage::Generator, 0);
            let c = random_min_degree_collection(n, m, delta_frac, &mut rng)?;
            write_text(&out, &instance_to_string(&c))?;
            println!("min_degree={}", crate::embedding::min_degree(&c));
        }
        Gen::Lowerbound {
            k,
            p,
            orientation,
            out,
            pattern_out,
        } => {
            let o = match orientation {
                OrientationArg::Figure => Orientation::Figure,
                OrientationArg::Text => Orientation::Text,
            };
            let (c, pat) = lowerbound_construction(k, p, o)?;
            write_text(&out, &instance_to_string(&c))?;
            write_text(&pattern_out, &pattern_to_string(&pat))?;
        }
        Gen::Pattern {
            n,
            k,
            m,
            bijective,
            seed,
            out,
        } => {
            let host = HostTemplate::power_cycle(n, k)?;
            let mut rng = stream(seed, Stage::Generator, 1);
            let pat = if bijective {
                bijective_pattern(host, &mut rng)?
            } else {
                random_pattern(host, m, &mut rng)?
            };
            write_text(&out, &pattern_to_string(&pat))?;
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct Row {
    seed: u64,
    n: usize,
    k: usize,
    r: usize,
    delta_frac: String,
    mode: &'static str,
    stage_reached: String,
    success: bool,
    nodes_or_retries: usize,
    runtime_ms: u128,
}

/// Evenly spaced values from `from` to `to` inclusive.
fn delta_values(from: f64, to: f64, step: f64) -> Result<Vec<f64>, Fatal> {
    if !(step > 0.0) || to < from {
        return Err(Fatal("need delta-step > 0 and delta-to >= delta-from".into()));
    }
    let count = ((to - from) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| from + i as f64 * step).collect())
}

fn sweep(
    k: usize,
    n: usize,
    (from, to, step): (f64, f64, f64),
    trials: usize,
    colours: usize,
    solver: &SolverArgs,
    out: &Path,
) -> Result<i32, Fatal> {
    let deltas = delta_values(from, to, step)?;
    let host = HostTemplate::power_cycle(n, k)?;
    let jobs: Vec<(usize, f64, u64)> = deltas
        .iter()
        .enumerate()
        .flat_map(|(di, &d)| {
            (0..trials).map(move |t| (di, d, solver.seed.wrapping_add((di * trials + t) as u64)))
        })
        .collect();
    // Trials fan out; each solve stays sequential.
    let rows = par::map(parallelism(solver.sequential), &jobs, |&(_, delta, seed)| {
        let start = Instant::now();
        let mut rng = stream(seed, Stage::Trial, 0);
        let generated = random_min_degree_collection(n, colours, delta, &mut rng)
            .map_err(|e| e.to_string())
            .and_then(|c| {
                random_pattern(host, colours, &mut rng)
                    .map(|p| (c, p))
                    .map_err(|e| e.to_string())
            });
        let mut config = solver.config(seed);
        config.parallelism = Parallelism::Sequential;
        let (stage, success, tries) = match generated {
            Err(e) => (format!("generate: {e}"), false, 0),
            Ok((c, p)) => match solve(&c, &p, &config) {
                Ok((_, tr)) => (tr.stage_reached().to_string(), true, tr.total_attempts()),
                Err(f) => (f.trace.stage_reached().to_string(), false, f.trace.total_attempts()),
            },
        };
        Row {
            seed,
            n,
            k,
            r: config.r_for(k),
            delta_frac: format!("{delta:.4}"),
            mode: solver.mode_name(),
            stage_reached: stage,
            success,
            nodes_or_retries: tries,
            runtime_ms: if solver.no_timings { 0 } else { start.elapsed().as_millis() },
        }
    });
    let mut writer = csv::WriterBuilder::new().has_headers(false).from_path(out)?;
    writer.write_record(CSV_HEADER)?;
    for row in &rows {
        writer.serialize(row)?;
    }
    writer.flush()?;
    let ok = rows.iter().filter(|r| r.success).count();
    println!("SWEEP rows={} success={ok}", rows.len());
    std::io::stdout().flush()?;
    Ok(0)
}
