//! The `diffset` command line.
//!
//! Exit status: 0 on success, 1 when a certificate is violated (or an
//! `--oracle` recount disagrees), 2 on usage or input errors.

mod commands;
mod oracle;
mod output;

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use output::{canonical, sha256_hex, RunManifest};

#[derive(Debug, Parser)]
#[command(name = "diffset", version, about = "Generalized difference sets, g-Sidon sets and autocorrelation integrals")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: GlobalArgs,
}

#[derive(Debug, Args, Clone)]
pub struct GlobalArgs {
    /// Emit canonical JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for every randomized path.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Re-check results by brute-force enumeration when the instance is small.
    #[arg(long, global = true)]
    oracle: bool,
    /// Write the output here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Write a run manifest (inputs, digests, timing) here.
    #[arg(long, global = true, value_name = "PATH")]
    manifest: Option<PathBuf>,
    /// Run every loop on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CertModeArg {
    Difference,
    Sidon,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ProfileModeArg {
    Difference,
    Sum,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a g-difference or g-Sidon certificate.
    Verify {
        #[arg(long)]
        set: PathBuf,
        #[arg(long, value_enum)]
        mode: CertModeArg,
        #[arg(long)]
        g: u64,
        /// Check the shifts [1, N]; omit for group sets.
        #[arg(long = "N")]
        n: Option<u64>,
    },
    /// Representation counts of a set.
    Profile {
        #[arg(long)]
        set: PathBuf,
        #[arg(long, value_enum, default_value = "difference")]
        mode: ProfileModeArg,
        #[arg(long, allow_hyphen_values = true)]
        lo: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        hi: Option<i64>,
    },
    #[command(subcommand)]
    Construct(ConstructCmd),
    #[command(subcommand)]
    Random(RandomCmd),
    #[command(subcommand)]
    Bridge(BridgeCmd),
    #[command(subcommand)]
    Solve(SolveCmd),
    #[command(subcommand)]
    Report(ReportCmd),
    /// The constants ledger and the trivial bounds for given parameters.
    Bounds {
        #[arg(long)]
        g: Option<u64>,
        #[arg(long = "N")]
        n: Option<u64>,
        /// Invariant factors, e.g. `7` or `2,4`.
        #[arg(long)]
        group: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
enum ConstructCmd {
    /// Union of k parabolas in (Z/pZ)^2 at the best shift.
    Parabola {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u64,
        /// Enumerate every target when p^2 is at most this.
        #[arg(long, default_value_t = 1_000_000)]
        enumeration_cap: usize,
        #[arg(long, default_value_t = 4096)]
        sample_targets: usize,
    },
    /// Lift a set of (Z/pZ)^2 to Z/p^2sZ.
    Lift {
        #[arg(long = "A")]
        a: PathBuf,
        #[arg(long)]
        s: u64,
    },
    /// Parabola union followed by the cyclic lift.
    Pipeline {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        s: u64,
        #[arg(long)]
        p: u64,
    },
    /// Combine a set for [N] with a set of Z/qZ into a set for [qN].
    Blowup {
        #[arg(long = "A")]
        a: PathBuf,
        #[arg(long = "N")]
        n: u64,
        #[arg(long = "C")]
        c: PathBuf,
        /// Expected order of the group of C.
        #[arg(long)]
        q: Option<u64>,
        /// Defaults to the least r_A on [1, N].
        #[arg(long)]
        g1: Option<u64>,
        /// Defaults to the least r_C over the group.
        #[arg(long)]
        g2: Option<u64>,
    },
}

#[derive(Debug, Args)]
struct TrialArgs {
    /// Run a Monte Carlo validation with this many trials.
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long, default_value = "3/10")]
    delta: String,
    #[arg(long, default_value = "1/10")]
    epsilon: String,
    /// Shifts probed for tail frequencies.
    #[arg(long, default_value_t = 6)]
    probes: usize,
}

#[derive(Debug, Subcommand)]
enum RandomCmd {
    /// Keep each element of G with probability sqrt(g/|G|).
    Group {
        #[arg(long)]
        group: String,
        #[arg(long)]
        g: u64,
        #[command(flatten)]
        trials: TrialArgs,
    },
    /// Keep each integer i with probability p_i from a file.
    Sequence {
        #[arg(long)]
        probs: PathBuf,
        #[arg(long = "N")]
        n: u64,
        #[arg(long, default_value = "8/5")]
        tau_hat: String,
        #[command(flatten)]
        trials: TrialArgs,
    },
}

#[derive(Debug, Args)]
struct AveragesArgs {
    #[arg(long = "fn")]
    function: PathBuf,
    #[arg(long = "N")]
    n: u64,
    #[arg(long, default_value = "8/5")]
    tau_hat: String,
    /// Dilate f first so that every shift in [1, N] is covered.
    #[arg(long)]
    stretch: bool,
    /// Skip the lagged-product minimum above this many products.
    #[arg(long, default_value_t = diffset::bridge::DEFAULT_PRODUCT_BUDGET)]
    product_budget: u64,
}

#[derive(Debug, Subcommand)]
enum BridgeCmd {
    /// The step function of a difference set for [N].
    SetToFn {
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        g: u64,
        #[arg(long = "N")]
        n: u64,
    },
    /// Autocorrelation and autoconvolution family checks for a step function.
    FnCheck {
        #[arg(long = "fn")]
        function: PathBuf,
    },
    /// Local averages of a step function.
    Averages(AveragesArgs),
    /// Inclusion probabilities from local averages.
    Probs {
        #[command(flatten)]
        avg: AveragesArgs,
        /// Also check the lagged product bound for this epsilon.
        #[arg(long)]
        epsilon: Option<String>,
    },
    /// The torus step function of a group set.
    Torus {
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        g: u64,
    },
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[arg(long, default_value_t = diffset::extremal::DEFAULT_NODE_BUDGET)]
    budget: u64,
}

#[derive(Debug, Subcommand)]
enum SolveCmd {
    Eta {
        #[arg(long)]
        g: u64,
        #[arg(long = "N")]
        n: u64,
        /// Largest element allowed (the minimum is 0).
        #[arg(long)]
        window: Option<u64>,
        #[arg(long)]
        reflection: bool,
        #[command(flatten)]
        search: SearchArgs,
    },
    Gamma {
        #[arg(long)]
        g: u64,
        #[arg(long)]
        group: String,
        #[command(flatten)]
        search: SearchArgs,
    },
    Beta {
        #[arg(long)]
        g: u64,
        #[arg(long = "N")]
        n: u64,
        #[command(flatten)]
        search: SearchArgs,
    },
    Alpha {
        #[arg(long)]
        g: u64,
        #[arg(long)]
        group: String,
        #[command(flatten)]
        search: SearchArgs,
    },
}

#[derive(Debug, Subcommand)]
enum ReportCmd {
    /// Solve small instances and tabulate value/sqrt(gN) and value/sqrt(g|G|).
    Ratios {
        #[arg(long, default_value_t = 2)]
        g_max: u64,
        #[arg(long = "N-max", default_value_t = 10)]
        n_max: u64,
        /// Groups for gamma and alpha, e.g. `--groups 7 --groups 2,4`.
        #[arg(long, default_values_t = ["5".to_string(), "7".to_string(), "2,2".to_string(), "8".to_string()])]
        groups: Vec<String>,
        #[command(flatten)]
        search: SearchArgs,
    },
}

/// What a command produced.
pub(crate) struct Outcome {
    pub json: serde_json::Value,
    pub text: String,
    /// A certificate failed; exit with 1.
    pub violation: bool,
}

/// Marks errors that should exit with status 1.
#[derive(Debug)]
pub(crate) struct Violation(pub String);

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Violation {}

fn exit_code(err: &anyhow::Error) -> i32 {
    if err.downcast_ref::<Violation>().is_some() {
        return 1;
    }
    match err.downcast_ref::<diffset::Error>() {
        Some(diffset::Error::CertificateFailed { .. }) | Some(diffset::Error::AveragesNotAdmissible(_)) => 1,
        _ => 2,
    }
}

/// Parses `argv` (program name first), runs the command and returns the
/// exit status.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    diffset::par::configure_threads_from_env();
    let started = Instant::now();
    let mut ctx = commands::Context::new(&cli.global);
    let result = commands::dispatch(&cli.command, &mut ctx).and_then(|outcome| {
        let rendered = if cli.global.json {
            output::to_canonical_json(&outcome.json)?
        } else {
            outcome.text.clone()
        };
        output::write_output(&rendered, cli.global.out.as_deref())?;
        Ok((outcome.violation, rendered))
    });
    let (code, rendered) = match result {
        Ok((violation, rendered)) => (violation as i32, rendered),
        Err(e) => {
            eprintln!("error: {e:#}");
            (exit_code(&e), String::new())
        }
    };
    if let Some(path) = &cli.global.manifest {
        let manifest = RunManifest {
            command_line: argv.iter().map(|a| a.to_string_lossy().into_owned()).collect(),
            seed: cli.global.seed,
            versions: output::versions(),
            input_digests: ctx.inputs,
            output_digest: sha256_hex(rendered.as_bytes()),
            output_paths: cli.global.out.iter().cloned().collect(),
            wall_clock_seconds: started.elapsed().as_secs_f64(),
            exit_code: code,
        };
        let written = output::to_canonical_json(&manifest)
            .and_then(|s| output::write_output(&s, Some(path)));
        if let Err(e) = written {
            eprintln!("error: {e:#}");
            return 2;
        }
    }
    code
}
