//! The `chainlab` command line.
//!
//! [`run`] parses arguments, executes one command and hands back the exit
//! code together with everything that should be printed, so the binary is a
//! thin shell and tests can drive the CLI in-process.
//!
//! Exit codes: `0` when every assertion passes, `1` for a failed assertion
//! or an unreadable input, `2` for a usage error.

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

pub mod bundled;
pub mod commands;
pub mod corpus;
pub mod report;

pub use commands::Ctx;
pub use corpus::{corpus_verify, default_corpus};
pub use report::{Assertion, Fmt, Report};

use crate::error::Result;
use crate::simplicial::{doubling_circle4, perturbed_doubling};

#[derive(Parser, Debug)]
#[command(name = "chainlab", version, about = "Exact checks on normed chain complexes")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Add a decimal reading next to each rational (not authoritative).
    #[arg(long, global = true)]
    approx: bool,
    /// Add wall-clock time to the report. Makes output nondeterministic.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the structural invariants of any input file.
    Validate { file: PathBuf },
    /// Homology dimensions and basis classes.
    Homology {
        complex: PathBuf,
        /// Only this degree.
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Semi-norms of homology classes with LP certificates.
    Seminorm {
        complex: PathBuf,
        #[arg(long)]
        degree: Option<usize>,
        /// Cycle file with the class to measure.
        #[arg(long)]
        class: Option<PathBuf>,
    },
    /// The dual cochain complex.
    Dual {
        complex: PathBuf,
        /// Also write the dual as a complex file.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Mapping cone, isomorphism criteria and the dual-cone identification.
    Cone { map: PathBuf },
    /// Homology iso vs cohomology iso of the dual, and isometry transfer.
    TranslateCheck {
        map: PathBuf,
        /// Also compare unit-ball vertices when dimensions are small.
        #[arg(long)]
        exhaustive: bool,
        /// Extra cycle files to use as conclusion probes.
        #[arg(long = "probes", alias = "probe")]
        probes: Vec<PathBuf>,
    },
    /// Primal and dual semi-norms for every basis class, and the duality principle.
    DualityCheck { complex: PathBuf },
    /// Finite groups: bar resolution computations.
    #[command(subcommand)]
    Group(GroupCommand),
    /// Triangulations: fundamental cycles, volume bounds, prisms, series.
    #[command(subcommand)]
    Simplicial(SimplicialCommand),
    /// Run every checker over the bundled corpus and seeded random objects.
    CorpusVerify {
        /// Corpus directory; defaults to the one shipped with the crate.
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Number of random complexes (and as many random maps).
        #[arg(long, default_value_t = 10)]
        random: usize,
    },
}

#[derive(Subcommand, Debug)]
enum GroupCommand {
    /// ℓ¹ homology with coefficients.
    L1h {
        group: PathBuf,
        /// Module file; defaults to the trivial line.
        #[arg(long)]
        coeffs: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        top: usize,
    },
    /// Bounded cohomology with dual coefficients.
    Bch {
        group: PathBuf,
        #[arg(long)]
        coeffs: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        top: usize,
    },
    /// The equivariant map from a free cover to the bar resolution.
    Eta {
        cover: PathBuf,
        /// Group file, when the cover has no inline group.
        group: Option<PathBuf>,
        /// Fundamental domain, one vertex per orbit.
        #[arg(long, value_delimiter = ',')]
        domain: Option<Vec<usize>>,
        /// Second domain to compare on degree-0 coinvariant homology.
        #[arg(long, value_delimiter = ',')]
        compare_domain: Option<Vec<usize>>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Instance {
    /// Degree-2 self-map of a 4-vertex circle, exact on the nose.
    Doubling,
    /// The same map perturbed by a chain homotopy on a coned-off circle.
    Perturbed,
}

#[derive(Subcommand, Debug)]
enum SimplicialCommand {
    /// Orientation and fundamental cycle of a closed pseudo-manifold.
    Fundamental { complex: PathBuf },
    /// Simplicial-volume upper bound by LP.
    SvBound { complex: PathBuf },
    /// Prism chain on K × [0,1] for a cycle.
    Prism {
        complex: PathBuf,
        /// Cycle file; defaults to the fundamental cycle.
        #[arg(long)]
        cycle: Option<PathBuf>,
    },
    /// Telescoping series for a self-map of degree d.
    Series {
        #[arg(long, value_enum, conflicts_with_all = ["map", "cycle", "chain", "d"])]
        instance: Option<Instance>,
        #[arg(long, requires_all = ["cycle", "chain", "d"])]
        map: Option<PathBuf>,
        #[arg(long)]
        cycle: Option<PathBuf>,
        /// Chain b with ∂b = z − f(z)/d.
        #[arg(long)]
        chain: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        d: Option<i64>,
        #[arg(long, default_value_t = 10)]
        steps: usize,
    },
}

/// What a CLI invocation produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            };
        }
    };
    let cx = Ctx { fmt: Fmt { approx: cli.approx }, seed: cli.seed };
    let start = Instant::now();
    match execute(&cx, cli.command) {
        Ok(mut report) => {
            if cli.timing {
                report.elapsed_ms = Some(start.elapsed().as_millis());
            }
            let stdout = match cli.format {
                Format::Json => report.render_json(),
                Format::Text => report.render_text(),
            };
            let passed = report.passed();
            let stderr = if passed {
                String::new()
            } else {
                let names: Vec<&str> = report.assertions.iter().filter(|a| !a.pass).map(|a| a.name.as_str()).collect();
                format!("failed assertions: {}\n", names.join(", "))
            };
            Outcome { code: if passed { 0 } else { 1 }, stdout, stderr }
        }
        Err(e) => Outcome { code: 1, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn execute(cx: &Ctx, command: Command) -> Result<Report> {
    use commands as c;
    match command {
        Command::Validate { file } => c::validate(cx, &file),
        Command::Homology { complex, degree } => c::homology(cx, &complex, degree),
        Command::Seminorm { complex, degree, class } => c::seminorm(cx, &complex, degree, class.as_deref()),
        Command::Dual { complex, output } => c::dual(cx, &complex, output.as_deref()),
        Command::Cone { map } => c::cone(cx, &map),
        Command::TranslateCheck { map, exhaustive, probes } => c::translate_check(cx, &map, exhaustive, &probes),
        Command::DualityCheck { complex } => c::duality_check(cx, &complex),
        Command::Group(GroupCommand::L1h { group, coeffs, top }) => {
            c::group_homology(cx, &group, coeffs.as_deref(), top, false)
        }
        Command::Group(GroupCommand::Bch { group, coeffs, top }) => {
            c::group_homology(cx, &group, coeffs.as_deref(), top, true)
        }
        Command::Group(GroupCommand::Eta { cover, group, domain, compare_domain }) => {
            c::eta(cx, &cover, group.as_deref(), domain.as_deref(), compare_domain.as_deref())
        }
        Command::Simplicial(SimplicialCommand::Fundamental { complex }) => c::fundamental(cx, &complex),
        Command::Simplicial(SimplicialCommand::SvBound { complex }) => c::sv_bound(cx, &complex),
        Command::Simplicial(SimplicialCommand::Prism { complex, cycle }) => c::prism_cmd(cx, &complex, cycle.as_deref()),
        Command::Simplicial(SimplicialCommand::Series { instance, map, cycle, chain, d, steps }) => {
            let mut r = Report::new("simplicial series");
            let inst = match (instance, map, cycle, chain, d) {
                (Some(Instance::Doubling), ..) => doubling_circle4()?,
                (Some(Instance::Perturbed), ..) => perturbed_doubling()?,
                (None, Some(m), Some(z), Some(b), Some(d)) => c::series_from_files(&mut r, &m, &z, &b, d)?,
                _ => {
                    return Err(crate::Error::Precondition(
                        "series needs --instance, or --map with --cycle, --chain and --d".into(),
                    ))
                }
            };
            r.result("instance", serde_json::json!(instance.map(|i| format!("{i:?}").to_lowercase())));
            c::check_series(&mut r, cx.fmt, &inst, steps)?;
            Ok(r)
        }
        Command::CorpusVerify { corpus, random } => {
            corpus_verify(cx, &corpus.unwrap_or_else(default_corpus), random)
        }
    }
}
