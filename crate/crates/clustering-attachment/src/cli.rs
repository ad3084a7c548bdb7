//! Command-line front end: simulate (full or fast engine), tabulate exact
//! probabilities, verify the inequality families, fit growth curves, and
//! convert graph files. The binary `casim` is a thin wrapper around
//! [`run`]; all output is deterministic given `--seed`.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::engine::{self, AttachmentFunction, CaParams};
use crate::fit::{fit_power, C1Mode};
use crate::graph::Graph;
use crate::io;
use crate::limit::CounterState;
use crate::montecarlo::{
    self, mean_curve_csv, parse_xy_csv, trajectory_csv, EngineKind, Recorder, ReplicationPlan,
    Trajectory,
};
use crate::oracle::{self, VerifyOptions};

#[derive(Parser)]
#[command(
    name = "casim",
    version,
    about = "Clustering-attachment graph evolution: simulators, exact probabilities, fits"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ModelArgs {
    /// Initial graph: triangle | complete:K | quadrilateral-example |
    /// diamond | path:K | path-graph | file:PATH
    #[arg(long)]
    initial: String,

    /// Edges per new node.
    #[arg(long, default_value_t = 2)]
    m: usize,

    /// Weight floor added to every node.
    #[arg(long, default_value_t = 0.0)]
    epsilon: f64,

    /// Power attachment exponent; mutually exclusive with --indicator.
    #[arg(long, conflicts_with = "indicator")]
    alpha: Option<f64>,

    /// Indicator attachment (the default).
    #[arg(long)]
    indicator: bool,
}

impl ModelArgs {
    fn graph(&self) -> Result<(Graph, String)> {
        parse_initial(&self.initial)
    }

    fn params(&self) -> Result<CaParams> {
        let attachment = match self.alpha {
            Some(alpha) => AttachmentFunction::Power { alpha },
            None => AttachmentFunction::Indicator,
        };
        Ok(CaParams::new(self.m, self.epsilon, attachment)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evolve a graph with the full engine; emit a trajectory CSV and
    /// optional DOT snapshots.
    Evolve {
        #[command(flatten)]
        model: ModelArgs,

        /// Number of evolution steps.
        #[arg(long)]
        steps: u64,

        /// Record every k-th index (the first and last are always kept).
        #[arg(long, default_value_t = 1)]
        thinning: u64,

        #[arg(long, default_value_t = 0)]
        seed: u64,

        /// CSV destination; stdout when omitted.
        #[arg(long)]
        output: Option<PathBuf>,

        /// Emit the triangle count minus its initial value.
        #[arg(long)]
        offset: bool,

        /// Indices at which to snapshot the graph as DOT (repeatable).
        #[arg(long = "dot-at")]
        dot_at: Vec<u64>,

        /// Path prefix for DOT snapshots; required with --dot-at.
        #[arg(long)]
        dot_prefix: Option<PathBuf>,
    },

    /// Replicated runs with sample-mean aggregation.
    Mc {
        #[command(flatten)]
        model: ModelArgs,

        /// Use the counter/urn fast path (limit model only).
        #[arg(long)]
        fast: bool,

        /// Number of replications.
        #[arg(short = 'R', long, default_value_t = 100)]
        replications: u32,

        /// Trajectory length N (indices 1..=N).
        #[arg(short = 'N', long)]
        length: u64,

        #[arg(long, default_value_t = 1_000)]
        thinning: u64,

        #[arg(long, default_value_t = 0)]
        seed: u64,

        /// CSV destination; stdout when omitted. A `.meta` sidecar with run
        /// parameters is written next to it.
        #[arg(long)]
        output: Option<PathBuf>,

        /// Emit mean minus initial triangle count.
        #[arg(long)]
        offset: bool,
    },

    /// Print exact white-draw probabilities and expected triangle counts.
    Oracle {
        /// Initial graph (same grammar as --initial elsewhere).
        #[arg(long)]
        initial: String,

        /// Largest index to tabulate.
        #[arg(short = 'n', long)]
        n_max: u64,

        /// Print every k-th row.
        #[arg(long, default_value_t = 1)]
        every: u64,
    },

    /// Check the inequality families and engine agreement numerically.
    Verify {
        #[arg(long)]
        initial: String,

        /// Range for the single-step inequality sweeps.
        #[arg(long, default_value_t = 500)]
        n_max: u64,

        /// Largest index in the pairwise correlation scan.
        #[arg(long, default_value_t = 200)]
        joint_max: u64,

        /// Skip the simulation-based engine agreement check.
        #[arg(long)]
        lemmas_only: bool,

        /// Replications per engine for the agreement check.
        #[arg(long, default_value_t = 400)]
        equiv_reps: u32,

        #[arg(long, default_value_t = 0)]
        seed: u64,
    },

    /// Fit c1 + c2 * n^c3 to a two-column CSV.
    Fit {
        /// Input CSV (as produced by `mc` or `evolve`).
        #[arg(long)]
        input: PathBuf,

        /// Fit window as MIN:MAX on the first column.
        #[arg(long)]
        window: String,

        /// Pin c1 to this value instead of fitting it.
        #[arg(long)]
        fix_c1: Option<f64>,

        /// Also print machine-readable CSV rows.
        #[arg(long)]
        csv_row: bool,
    },

    /// Convert an initial-graph spec to another format.
    Convert {
        #[arg(long)]
        initial: String,

        #[arg(long, value_enum)]
        to: ConvertFormat,

        /// Destination; stdout when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ConvertFormat {
    Dot,
    Edges,
}

/// Parses an initial-graph spec into a graph and a display label.
fn parse_initial(spec: &str) -> Result<(Graph, String)> {
    let label = spec.to_string();
    let graph = match spec {
        "triangle" => Graph::complete(3),
        "quadrilateral-example" | "diamond" => Graph::diamond(),
        "path-graph" => Graph::path(3),
        _ => {
            if let Some(k) = spec.strip_prefix("complete:") {
                let k: usize = k.parse().context("complete:K needs an integer K")?;
                if k < 1 {
                    bail!("complete:K needs K >= 1");
                }
                Graph::complete(k)
            } else if let Some(k) = spec.strip_prefix("path:") {
                let k: usize = k.parse().context("path:K needs an integer K")?;
                Graph::path(k)
            } else if let Some(path) = spec.strip_prefix("file:") {
                let text = fs::read_to_string(path)
                    .with_context(|| format!("reading edge list {path}"))?;
                io::load_edge_list(&text).with_context(|| format!("parsing edge list {path}"))?
            } else {
                bail!(
                    "unknown initial graph {spec:?}; expected triangle, complete:K, \
                     quadrilateral-example, diamond, path:K, path-graph, or file:PATH"
                );
            }
        }
    };
    Ok((graph, label))
}

fn write_or_print(path: Option<&Path>, content: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, content).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

pub fn run() -> Result<()> {
    dispatch(Cli::parse())
}

/// Entry point with explicit arguments, used by tests.
pub fn run_from<I, T>(args: I) -> Result<()>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    dispatch(Cli::try_parse_from(args)?)
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Evolve {
            model,
            steps,
            thinning,
            seed,
            output,
            offset,
            dot_at,
            dot_prefix,
        } => {
            let (g0, label) = model.graph()?;
            let params = model.params()?;
            engine::validate_initial(&g0, &params)?;
            if !dot_at.is_empty() && dot_prefix.is_none() {
                bail!("--dot-at requires --dot-prefix");
            }
            let snapshot_at: std::collections::BTreeSet<u64> = dot_at.into_iter().collect();

            let mut g = g0;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut recorder = Recorder::new(thinning, steps + 1);
            let mut snapshots: Vec<(u64, String)> = Vec::new();
            recorder.record(1, g.total_triangles());
            if snapshot_at.contains(&1) {
                snapshots.push((1, io::export_dot(&g)));
            }
            for s in 1..=steps {
                engine::evolve_step(&mut g, &params, &mut rng)?;
                recorder.record(s + 1, g.total_triangles());
                if snapshot_at.contains(&(s + 1)) {
                    snapshots.push((s + 1, io::export_dot(&g)));
                }
            }
            let trajectory = Trajectory {
                initial_label: label,
                seed,
                thinning,
                samples: recorder.into_samples(),
            };
            write_or_print(output.as_deref(), &trajectory_csv(&trajectory, offset))?;
            if let Some(prefix) = dot_prefix {
                for (n, dot) in snapshots {
                    let path = PathBuf::from(format!("{}_n{n}.dot", prefix.display()));
                    fs::write(&path, dot)
                        .with_context(|| format!("writing {}", path.display()))?;
                }
            }
            Ok(())
        }

        Command::Mc {
            model,
            fast,
            replications,
            length,
            thinning,
            seed,
            output,
            offset,
        } => {
            let (g0, label) = model.graph()?;
            let params = model.params()?;
            let engine_kind = if fast { EngineKind::Fast } else { EngineKind::Full };
            let plan = ReplicationPlan {
                replications,
                length,
                thinning,
                master_seed: seed,
            };
            let start = Instant::now();
            let outcome = montecarlo::run_replications(&g0, &params, engine_kind, &plan)?;
            let wall = start.elapsed();
            write_or_print(output.as_deref(), &mean_curve_csv(&outcome.curve, offset))?;
            if let Some(path) = &output {
                let meta = format!(
                    "command: mc\ninitial: {label}\nengine: {}\nm: {}\nepsilon: {}\n\
                     attachment: {:?}\nreplications: {replications}\nlength: {length}\n\
                     thinning: {thinning}\nmaster_seed: {seed}\noffset: {offset}\n\
                     wall_time_s: {:.3}\n",
                    if fast { "fast" } else { "full" },
                    params.m(),
                    params.epsilon(),
                    params.attachment(),
                    wall.as_secs_f64(),
                );
                let meta_path = PathBuf::from(format!("{}.meta", path.display()));
                fs::write(&meta_path, meta)
                    .with_context(|| format!("writing {}", meta_path.display()))?;
            }
            Ok(())
        }

        Command::Oracle { initial, n_max, every } => {
            if n_max < 1 {
                bail!("-n must be at least 1");
            }
            let (g0, _) = parse_initial(&initial)?;
            let s0 = CounterState::from_graph(&g0)?;
            let pb = oracle::marginal_pb_sweep(s0, n_max);
            let ed = oracle::expected_delta_sweep(s0, n_max);
            println!("n,p_white,expected_delta");
            for n in 1..=n_max {
                if n == 1 || n == n_max || n % every == 0 {
                    println!("{n},{:.10},{:.10}", pb[(n - 1) as usize], ed[(n - 1) as usize]);
                }
            }
            Ok(())
        }

        Command::Verify {
            initial,
            n_max,
            joint_max,
            lemmas_only,
            equiv_reps,
            seed,
        } => {
            let (g0, label) = parse_initial(&initial)?;
            let s0 = CounterState::from_graph(&g0)?;
            let opts = VerifyOptions {
                state_range: n_max,
                horizon: 10 * n_max,
                conditional_max: n_max,
                joint_max: joint_max.min(n_max.max(2)),
                expectation_max: n_max,
            };
            println!("inequality families from {label}:");
            let report = oracle::verify_lemmas(s0, &opts);
            print!("{report}");
            let mut ok = report.passed();

            if !lemmas_only {
                println!("\nengine agreement (full vs fast vs exact):");
                let rows = montecarlo::engine_agreement(&g0, &[100, 1_000], equiv_reps, seed)?;
                println!("n,exact,full_mean,full_z,fast_mean,fast_z,bands_overlap");
                for row in &rows {
                    let overlap = row.bands_overlap(2.576);
                    println!(
                        "{},{:.4},{:.4},{:+.2},{:.4},{:+.2},{}",
                        row.n, row.exact, row.full_mean, row.full_z(), row.fast_mean,
                        row.fast_z(), overlap
                    );
                    ok &= row.full_z().abs() <= 4.0 && row.fast_z().abs() <= 4.0 && overlap;
                }
            }
            if ok {
                println!("verification: PASS");
                Ok(())
            } else {
                Err(anyhow!("verification failed"))
            }
        }

        Command::Fit { input, window, fix_c1, csv_row } => {
            let text = fs::read_to_string(&input)
                .with_context(|| format!("reading {}", input.display()))?;
            let samples = parse_xy_csv(&text)?;
            let window = parse_window(&window)?;
            let mut results = Vec::new();
            match fix_c1 {
                Some(c1) => results.push(fit_power(&samples, window, C1Mode::Fixed(c1))?),
                None => {
                    results.push(fit_power(&samples, window, C1Mode::Free)?);
                    // When the curve starts at index 1 its first value is the
                    // initial triangle count; report the pinned variant too.
                    if let Some(&(n, y)) = samples.first() {
                        if n == 1.0 {
                            results.push(fit_power(&samples, window, C1Mode::Fixed(y))?);
                        }
                    }
                }
            }
            for fit in &results {
                println!("{fit}");
            }
            if csv_row {
                println!("c1_mode,c1,c2,c3,residual,window_min,window_max");
                for fit in &results {
                    let mode = match fit.c1_mode {
                        C1Mode::Free => "free".to_string(),
                        C1Mode::Fixed(v) => format!("fixed({v})"),
                    };
                    println!(
                        "{mode},{},{},{},{},{},{}",
                        fit.c1, fit.c2, fit.c3, fit.residual, fit.window.0, fit.window.1
                    );
                }
            }
            Ok(())
        }

        Command::Convert { initial, to, output } => {
            let (g, _) = parse_initial(&initial)?;
            let content = match to {
                ConvertFormat::Dot => io::export_dot(&g),
                ConvertFormat::Edges => io::save_edge_list(&g),
            };
            write_or_print(output.as_deref(), &content)
        }
    }
}

fn parse_window(spec: &str) -> Result<(f64, f64)> {
    let (a, b) = spec
        .split_once(':')
        .ok_or_else(|| anyhow!("window must be MIN:MAX, got {spec:?}"))?;
    let lo: f64 = a.trim().parse().context("window minimum")?;
    let hi: f64 = b.trim().parse().context("window maximum")?;
    if lo > hi {
        bail!("window minimum {lo} exceeds maximum {hi}");
    }
    Ok((lo, hi))
}
