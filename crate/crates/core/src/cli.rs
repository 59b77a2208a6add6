//! Command-line front end: generation → spectrum → dynamics → analysis.
//!
//! Every global flag can also be set through an environment variable with
//! the `APWALK_` prefix (`APWALK_GENERATION`, `APWALK_SOURCE`, ...).
//!
//! Exit codes: 0 ok, 1 verification failure, 2 usage or I/O error,
//! 3 generation above the cap, 4 eigensolver failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::dynamics::{evolve_series, limiting_matrix, TimeGrid, TransitionSnapshot, WalkKind};
use crate::error::{Error, Result};
use crate::graph::{corner_orbits, Network, DEFAULT_GENERATION_CAP};
use crate::io;
use crate::spectral::{eigendecompose, group_degenerate, EigenspaceGrouping, Spectrum};
use crate::symmetry::{analyze_source, ClusterReport, DEFAULT_CLUSTER_TOLERANCE};
use crate::verify::run_checks;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;
pub const EXIT_NUMERIC: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "apollonian-walk",
    version,
    about = "Quantum and classical continuous-time walks on Apollonian networks"
)]
pub struct Cli {
    #[command(flatten)]
    pub globals: Globals,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Globals {
    /// Network generation G (N = 3 + (3^G - 1) / 2).
    #[arg(short = 'g', long, global = true, default_value_t = 3, env = "APWALK_GENERATION")]
    pub generation: u32,

    /// Source node, 1-based (default: the central node).
    #[arg(short = 's', long, global = true, env = "APWALK_SOURCE",
          value_parser = clap::value_parser!(u64).range(1..))]
    pub source: Option<u64>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv, env = "APWALK_FORMAT")]
    pub format: Format,

    /// Output file (default: stdout).
    #[arg(short = 'o', long, global = true, env = "APWALK_OUTPUT")]
    pub output: Option<PathBuf>,

    /// Degeneracy tolerance (default: 1e-8 · max(1, |E_max|)).
    #[arg(long, global = true, env = "APWALK_TOL_DEGENERACY")]
    pub tol_degeneracy: Option<f64>,

    /// Absolute tolerance for equal limiting probabilities.
    #[arg(long, global = true, default_value_t = DEFAULT_CLUSTER_TOLERANCE, env = "APWALK_TOL_CLUSTER")]
    pub tol_cluster: f64,

    #[arg(long, global = true, default_value_t = 0.01, env = "APWALK_T_MIN")]
    pub t_min: f64,

    #[arg(long, global = true, default_value_t = 100.0, env = "APWALK_T_MAX")]
    pub t_max: f64,

    #[arg(long, global = true, default_value_t = 2000, env = "APWALK_T_STEPS")]
    pub t_steps: usize,

    #[arg(long, global = true, value_enum, default_value_t = TimeScale::Log, env = "APWALK_T_SCALE")]
    pub t_scale: TimeScale,

    /// Largest generation accepted.
    #[arg(long, global = true, default_value_t = DEFAULT_GENERATION_CAP, env = "APWALK_CAP")]
    pub cap: u32,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Write the network as an edge list (csv) or JSON document.
    Generate,
    /// Write the Laplacian eigenvalues.
    Spectrum {
        /// Also write the eigenvector matrix (row = node, column = mode).
        #[arg(long)]
        eigenvectors: Option<PathBuf>,
    },
    /// Write transition probabilities over a time grid.
    Evolve {
        #[arg(long, value_enum, default_value_t = KindArg::Quantum)]
        kind: KindArg,
        /// One row per time with columns p_1..p_N.
        #[arg(long)]
        wide: bool,
    },
    /// Write the long-time limiting probabilities and a cluster report.
    Limit {
        /// Write the cluster report JSON here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Write the corner-automorphism orbits (fixing --source when given).
    Orbits,
    /// Run the self-check battery and print a JSON verdict.
    Verify {
        #[arg(long, default_value_t = 4)]
        max_generation: u32,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[value(alias = "edges")]
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TimeScale {
    #[value(alias = "linear")]
    Lin,
    #[value(alias = "logarithmic")]
    Log,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Classical,
    Quantum,
    Both,
}

impl KindArg {
    fn kinds(self) -> &'static [WalkKind] {
        match self {
            KindArg::Classical => &[WalkKind::Classical],
            KindArg::Quantum => &[WalkKind::Quantum],
            KindArg::Both => &[WalkKind::Classical, WalkKind::Quantum],
        }
    }
}

/// Flags resolved against the generated network.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub generation: u32,
    pub source: usize,
    pub source_given: bool,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub tol_degeneracy: Option<f64>,
    pub tol_cluster: f64,
    pub grid: TimeGrid,
}

impl RunConfig {
    pub fn resolve(globals: &Globals, net: &Network) -> Result<Self> {
        let source = match globals.source {
            Some(s) => {
                let s = usize::try_from(s).map_err(|_| Error::Domain(format!("source {s} too large")))?;
                net.check_node(s)?;
                s
            }
            None => net.default_source(),
        };
        if let Some(tol) = globals.tol_degeneracy {
            if tol.is_nan() || tol <= 0.0 {
                return Err(Error::Domain(format!("--tol-degeneracy must be positive, got {tol}")));
            }
        }
        if globals.tol_cluster.is_nan() || globals.tol_cluster <= 0.0 {
            return Err(Error::Domain(format!(
                "--tol-cluster must be positive, got {}",
                globals.tol_cluster
            )));
        }
        let grid = match globals.t_scale {
            TimeScale::Lin => TimeGrid::linear(globals.t_min, globals.t_max, globals.t_steps)?,
            TimeScale::Log => TimeGrid::logarithmic(globals.t_min, globals.t_max, globals.t_steps)?,
        };
        Ok(Self {
            generation: net.generation(),
            source,
            source_given: globals.source.is_some(),
            format: globals.format,
            output: globals.output.clone(),
            tol_degeneracy: globals.tol_degeneracy,
            tol_cluster: globals.tol_cluster,
            grid,
        })
    }

    fn grouping(&self, s: &Spectrum) -> Result<EigenspaceGrouping> {
        group_degenerate(s, self.tol_degeneracy.unwrap_or_else(|| s.default_degeneracy_tolerance()))
    }
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Capacity { .. } => EXIT_CAPACITY,
        Error::Numeric { .. } => EXIT_NUMERIC,
        _ => EXIT_USAGE,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().ansi().to_string();
            if e.use_stderr() {
                let _ = write!(stderr, "{rendered}");
                return EXIT_USAGE;
            }
            let _ = write!(stdout, "{rendered}");
            return EXIT_OK;
        }
    };
    match execute(&cli, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

fn emit(path: Option<&Path>, bytes: &[u8], stdout: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, bytes)?,
        None => stdout.write_all(bytes)?,
    }
    Ok(())
}

fn json_bytes<T: Serialize>(value: &T) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(value).expect("serializable");
    out.push(b'\n');
    out
}

pub fn execute(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    let g = &cli.globals;
    if let Command::Verify { max_generation } = cli.command {
        if max_generation > g.cap {
            return Err(Error::Capacity {
                generation: max_generation,
                cap: g.cap,
            });
        }
        let verdict = run_checks(max_generation)?;
        for c in &verdict.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            writeln!(stderr, "[{mark}] {:>2} {}: {}", c.id, c.name, c.detail)?;
        }
        emit(g.output.as_deref(), &json_bytes(&verdict), stdout)?;
        return Ok(if verdict.passed { EXIT_OK } else { EXIT_VERIFICATION });
    }

    let net = Network::generate_with_cap(g.generation, g.cap)?;
    let cfg = RunConfig::resolve(g, &net)?;
    let out = cfg.output.as_deref();
    match &cli.command {
        Command::Generate => {
            let bytes = match cfg.format {
                Format::Csv => io::edge_list_string(&net).into_bytes(),
                Format::Json => io::network_to_json(&net).into_bytes(),
            };
            emit(out, &bytes, stdout)?;
        }
        Command::Spectrum { eigenvectors } => {
            let s = eigendecompose(&net.laplacian())?;
            let grouping = cfg.grouping(&s)?;
            let bytes = match cfg.format {
                Format::Csv => {
                    let mut buf = Vec::new();
                    io::write_spectrum_csv(&s, &mut buf)?;
                    buf
                }
                Format::Json => json_bytes(&serde_json::json!({
                    "generation": cfg.generation,
                    "eigenvalues": s.eigenvalues(),
                    "tolerance": grouping.tolerance(),
                    "degenerate_groups": grouping.sizes(),
                })),
            };
            emit(out, &bytes, stdout)?;
            if let Some(path) = eigenvectors {
                let mut buf = Vec::new();
                io::write_eigenvectors_csv(&s, &mut buf)?;
                std::fs::write(path, buf)?;
            }
        }
        Command::Evolve { kind, wide } => {
            let s = eigendecompose(&net.laplacian())?;
            let mut snapshots: Vec<TransitionSnapshot> = Vec::new();
            for &k in kind.kinds() {
                snapshots.extend(evolve_series(&s, cfg.source, k, &cfg.grid)?);
            }
            let bytes = match cfg.format {
                Format::Csv => {
                    let layout = if *wide { io::SeriesLayout::Wide } else { io::SeriesLayout::Long };
                    let mut buf = Vec::new();
                    io::write_series_csv(&snapshots, layout, *kind == KindArg::Both, &mut buf)?;
                    buf
                }
                Format::Json => json_bytes(&io::SeriesDocument {
                    generation: cfg.generation,
                    source: cfg.source,
                    snapshots,
                }),
            };
            emit(out, &bytes, stdout)?;
        }
        Command::Limit { report } => {
            let s = eigendecompose(&net.laplacian())?;
            let chi = limiting_matrix(&s, &cfg.grouping(&s)?)?;
            let (clustering, consistency) = analyze_source(&net, &chi, cfg.source, cfg.tol_cluster)?;
            let cluster_report = ClusterReport::new(&clustering, &consistency);
            writeln!(
                stderr,
                "source {}: {} clusters, {} unexplained pairs, {} split orbits",
                cfg.source,
                clustering.clusters.len(),
                consistency.unexplained_pairs.len(),
                consistency.split_orbits.len()
            )?;
            if let Some(path) = report {
                std::fs::write(path, io::cluster_report_to_json(&cluster_report))?;
            }
            let bytes = match cfg.format {
                Format::Csv => {
                    let mut buf = Vec::new();
                    io::write_chi_csv(&chi, &mut buf)?;
                    buf
                }
                Format::Json => json_bytes(&io::LimitDocument::new(
                    cfg.generation,
                    &chi,
                    Some(cluster_report),
                )),
            };
            emit(out, &bytes, stdout)?;
        }
        Command::Orbits => {
            let fixed = cfg.source_given.then_some(cfg.source);
            let part = corner_orbits(&net, fixed)?;
            let bytes = match cfg.format {
                Format::Csv => {
                    let mut buf = Vec::new();
                    {
                        let mut w = csv::Writer::from_writer(&mut buf);
                        w.write_record(["node", "orbit"])?;
                        for (k, label) in part.labels().iter().enumerate() {
                            w.write_record([(k + 1).to_string(), (label + 1).to_string()])?;
                        }
                        w.flush()?;
                    }
                    buf
                }
                Format::Json => json_bytes(&serde_json::json!({
                    "generation": cfg.generation,
                    "fixed_source": fixed,
                    "group_used": part.group_used,
                    "classes": part.classes,
                })),
            };
            emit(out, &bytes, stdout)?;
        }
        Command::Verify { .. } => unreachable!("handled above"),
    }
    Ok(EXIT_OK)
}
