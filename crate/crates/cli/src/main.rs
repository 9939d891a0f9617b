//! `cptkit`: rigidity, combinatorial pseudo-triangulations and their
//! stretchings from the command line.
//!
//! Exit codes: 0 success, 3 property false, 4 input error, 5 internal
//! invariant violation.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use report::{Config, RunReport};

#[derive(Debug, Parser)]
#[command(name = "cptkit", version, about = "Rigidity and combinatorial pseudo-triangulation toolkit")]
struct Cli {
    /// Seed for the stretch solver, oracles and corpus generation.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Stretch attempts, or instances per row for `selftest` and `gen-corpus`.
    #[arg(long, global = true, default_value_t = 200)]
    iters: usize,
    /// Record per-stage wall times in the report (makes it nondeterministic).
    #[arg(long, global = true)]
    timings: bool,
    /// Write the JSON run report to this file.
    #[arg(long, global = true, value_name = "PATH")]
    report: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide generic rigidity with the pebble game.
    CheckRigid {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Spanning Laman subgraph, redundant edges and rigid components.
    LamanSub {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a generalized Laman CPT labelling of a rigid plane graph.
    Label {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Fail unless every vertex is pointed.
        #[arg(long)]
        require_pointed: bool,
        /// Write every inductive step as a JSON line to this file.
        #[arg(long, value_name = "PATH")]
        trace: Option<PathBuf>,
    },
    /// Check the CPT conditions and print the counts.
    CheckCpt {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        labels: PathBuf,
    },
    /// Check the generalized Laman property and its equivalent forms.
    CheckGl {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        labels: PathBuf,
    },
    /// Realize a generalized Laman CPT as a pseudo-triangulation.
    Stretch {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        labels: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Check that coordinates realize a labelling.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        labels: PathBuf,
        #[arg(long)]
        coords: PathBuf,
    },
    /// Render a drawing as SVG, marking BIG angles with arcs.
    Draw {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        coords: PathBuf,
        #[arg(long)]
        labels: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Surface type of a signed rotation system and the CPT count identity.
    SurfaceCheck {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        labels: Option<PathBuf>,
    },
    /// Rigidity, labelling, stretching, verification and drawing in one go.
    Pipeline {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
        #[arg(long)]
        require_pointed: bool,
    },
    /// Cross-check fast paths against the brute-force oracles.
    Selftest,
    /// Write seeded corpus instances with labellings and drawings.
    GenCorpus {
        #[arg(long)]
        out_dir: PathBuf,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::CheckRigid { .. } => "check-rigid",
            Command::LamanSub { .. } => "laman-sub",
            Command::Label { .. } => "label",
            Command::CheckCpt { .. } => "check-cpt",
            Command::CheckGl { .. } => "check-gl",
            Command::Stretch { .. } => "stretch",
            Command::Verify { .. } => "verify",
            Command::Draw { .. } => "draw",
            Command::SurfaceCheck { .. } => "surface-check",
            Command::Pipeline { .. } => "pipeline",
            Command::Selftest => "selftest",
            Command::GenCorpus { .. } => "gen-corpus",
        }
    }
}

fn run(cli: &Cli, cfg: &Config, report: &mut RunReport) -> report::CmdResult<i32> {
    use commands::*;
    match &cli.command {
        Command::CheckRigid { graph } => check_rigid(report, graph),
        Command::LamanSub { graph, out } => laman_sub(report, graph, out.as_deref()),
        Command::Label { graph, out, require_pointed, trace } => {
            label(report, cfg, graph, out, *require_pointed, trace.as_deref())
        }
        Command::CheckCpt { graph, labels } => check_cpt(report, graph, labels),
        Command::CheckGl { graph, labels } => check_gl(report, cfg, graph, labels),
        Command::Stretch { graph, labels, out, svg } => stretch(report, cfg, graph, labels, out, svg.as_deref()),
        Command::Verify { graph, labels, coords } => verify(report, cfg, graph, labels, coords),
        Command::Draw { graph, coords, labels, out } => draw(report, graph, coords, labels.as_deref(), out),
        Command::SurfaceCheck { graph, labels } => surface_check(report, graph, labels.as_deref()),
        Command::Pipeline { graph, out_dir, require_pointed } => pipeline(report, cfg, graph, out_dir, *require_pointed),
        Command::Selftest => selftest(report, cfg),
        Command::GenCorpus { out_dir, n_max } => gen_corpus(report, cfg, out_dir, *n_max),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match Config::from_env(cli.seed, cli.iters) {
        Ok(c) => c,
        Err(f) => {
            eprintln!("error: {}", f.message);
            return ExitCode::from(f.code as u8);
        }
    };
    let mut report = RunReport::new(cli.command.name(), cfg, cli.timings);
    let code = match run(&cli, &cfg, &mut report) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            report.diagnostics.push(f.message);
            f.code
        }
    };
    report.exit_code = code;
    if let Some(path) = &cli.report {
        if let Err(f) = commands::write_json(path, &report) {
            eprintln!("error: {}", f.message);
            return ExitCode::from(report::EXIT_INPUT as u8);
        }
    }
    ExitCode::from(code as u8)
}
