use clap::{Args, Parser, Subcommand};
use mct_cli::sweep::{self, SweepConfig, VerifyMode};
use mct_cli::{
    audit, oracle_cap, parse_spec, parse_strategies, parse_usize_list, report_lines, verify_line,
    CliError, DEFAULT_SAMPLES, DEFAULT_SEED,
};
use mct_core::formulas::{reconcile, reconcile_csv};
use mct_core::revsim::{verify_mct_capped, MctSpec, Mode};
use mct_core::tgate::{lower, EntryId, Selection};
use mct_core::{parse, serialize, synthesize, Circuit, Strategy, StrategySpec};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "mct",
    version,
    about = "Multi-controlled Toffoli decompositions"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a circuit for one strategy and print its resources.
    Synth(SynthArgs),
    /// Check a circuit file against the MCT oracle.
    Verify(VerifyArgs),
    /// Lower a circuit to Clifford+T and print T accounting.
    Lower(LowerArgs),
    /// Resource and verification CSV over strategies and sizes.
    Sweep(SweepArgs),
    /// Check depth lower bounds over generated circuits.
    Audit(AuditArgs),
    /// Formula versus measured depth CSV.
    Reconcile(ReconcileArgs),
}

#[derive(Args)]
struct StrategyArgs {
    #[arg(long)]
    strategy: Strategy,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m1: Option<usize>,
    /// Restore binary-tree ancillae.
    #[arg(long)]
    cleanup: bool,
}

impl StrategyArgs {
    fn spec(&self) -> StrategySpec {
        let mut s = StrategySpec::new(self.strategy, self.n).with_cleanup(self.cleanup);
        s.m1 = self.m1;
        s
    }
}

#[derive(Args)]
struct SynthArgs {
    #[command(flatten)]
    s: StrategyArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum ModeArg {
    Exhaustive,
    Sampled,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    circuit: PathBuf,
    /// `n=<n>,target=<q>,controls=<list>,ancilla=<list>`; defaults to the file's roles.
    #[arg(long)]
    spec: Option<String>,
    #[arg(long, value_enum, default_value = "exhaustive")]
    mode: ModeArg,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    count: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// With the default spec, allow ancillae to end dirty.
    #[arg(long)]
    waive_ancillae: bool,
}

#[derive(Args)]
struct SelectionArgs {
    /// Entry for plain Toffolis.
    #[arg(long, default_value = "jones-td1")]
    plain: EntryId,
    /// Entry for and-compute Toffolis.
    #[arg(long = "and", default_value = "gidney-and")]
    and_compute: EntryId,
}

impl SelectionArgs {
    fn selection(&self) -> Selection {
        Selection {
            plain: self.plain,
            and_compute: self.and_compute,
        }
    }
}

#[derive(Args)]
struct LowerArgs {
    /// Circuit file; otherwise give --strategy and --n.
    #[arg(long, conflicts_with = "strategy")]
    circuit: Option<PathBuf>,
    #[arg(long)]
    strategy: Option<Strategy>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m1: Option<usize>,
    #[arg(long)]
    cleanup: bool,
    #[command(flatten)]
    sel: SelectionArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum SweepVerify {
    Auto,
    Exhaustive,
    Sampled,
    Off,
}

#[derive(Args)]
struct SweepArgs {
    /// Comma list of strategy names, or `all`.
    #[arg(long, default_value = "all")]
    strategies: String,
    /// Values like `3..11`, `4-128` or `16,32,64`.
    #[arg(long)]
    n: String,
    #[arg(long, default_value = "2,3,4")]
    m1: String,
    #[arg(long)]
    cleanup: bool,
    #[arg(long, value_enum, default_value = "auto")]
    verify: SweepVerify,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    count: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(flatten)]
    sel: SelectionArgs,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AuditArgs {
    #[arg(long, default_value_t = 64)]
    n_max: usize,
    #[arg(long, default_value = "all")]
    strategies: String,
    #[arg(long, default_value = "2,3,4")]
    m1: String,
}

#[derive(Args)]
struct ReconcileArgs {
    #[arg(long)]
    strategy: Strategy,
    #[arg(long)]
    n: String,
    #[arg(long)]
    m1: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| CliError::Failure(format!("writing {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_circuit(p: &Path) -> Result<Circuit, CliError> {
    let text = std::fs::read_to_string(p)
        .map_err(|e| CliError::Usage(format!("reading {}: {e}", p.display())))?;
    parse(&text).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))
}

fn cmd_synth(a: SynthArgs) -> Result<(), CliError> {
    let (c, r) = synthesize(&a.s.spec())?;
    if let Some(p) = &a.out {
        write_or_print(Some(p), &serialize(&c))?;
    }
    print!("{}", report_lines(&r));
    Ok(())
}

fn cmd_verify(a: VerifyArgs) -> Result<(), CliError> {
    let c = read_circuit(&a.circuit)?;
    let spec = match &a.spec {
        Some(s) => parse_spec(s, c.width)?,
        None => {
            let s = MctSpec::from_roles(&c).map_err(|e| CliError::Usage(e.to_string()))?;
            if a.waive_ancillae {
                s.waive_ancillae()
            } else {
                s
            }
        }
    };
    let mode = match a.mode {
        ModeArg::Exhaustive => Mode::Exhaustive,
        ModeArg::Sampled => Mode::Sampled {
            count: a.count,
            seed: a.seed,
        },
    };
    let r = verify_mct_capped(&c, &spec, mode, oracle_cap()?)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    print!("{}", verify_line(&r));
    if r.passed() {
        Ok(())
    } else {
        Err(CliError::Failure(
            "circuit does not implement the MCT".into(),
        ))
    }
}

fn cmd_lower(a: LowerArgs) -> Result<(), CliError> {
    let c = match (&a.circuit, a.strategy, a.n) {
        (Some(p), _, _) => read_circuit(p)?,
        (None, Some(s), Some(n)) => {
            let mut spec = StrategySpec::new(s, n).with_cleanup(a.cleanup);
            spec.m1 = a.m1;
            synthesize(&spec)?.0
        }
        _ => {
            return Err(CliError::Usage(
                "lower needs --circuit or --strategy with --n".into(),
            ))
        }
    };
    let (low, r) = lower(&c, a.sel.selection()).map_err(|e| CliError::Usage(e.to_string()))?;
    if let Some(p) = &a.out {
        write_or_print(Some(p), &serialize(&low))?;
    }
    print!("{}", report_lines(&r));
    Ok(())
}

fn cmd_sweep(a: SweepArgs) -> Result<(), CliError> {
    let verify = match a.verify {
        SweepVerify::Off => VerifyMode::Off,
        SweepVerify::Exhaustive => VerifyMode::Exhaustive,
        SweepVerify::Sampled => VerifyMode::Sampled {
            count: a.count,
            seed: a.seed,
        },
        SweepVerify::Auto => VerifyMode::Auto {
            count: a.count,
            seed: a.seed,
        },
    };
    let cfg = SweepConfig {
        strategies: parse_strategies(&a.strategies)?,
        n_values: parse_usize_list(&a.n)?,
        m1_values: parse_usize_list(&a.m1)?,
        cleanup: a.cleanup,
        verify,
        selection: a.sel.selection(),
        oracle_cap: oracle_cap()?,
    };
    let rows = sweep::sweep_rows(&cfg)?;
    write_or_print(a.out.as_deref(), &sweep::to_csv(&cfg, &rows))?;
    let failed: Vec<_> = rows.iter().filter(|r| r.failed()).collect();
    for r in &failed {
        eprintln!(
            "fail: {} n={} m1={:?}: {}",
            r.strategy,
            r.n,
            r.m1,
            r.error.as_deref().unwrap_or("verification failed")
        );
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failure(format!("{} row(s) failed", failed.len())))
    }
}

fn cmd_audit(a: AuditArgs) -> Result<(), CliError> {
    let rows = audit::audit(
        &parse_strategies(&a.strategies)?,
        3..=a.n_max,
        &parse_usize_list(&a.m1)?,
    )?;
    print!("{}", audit::render(&rows));
    let bad = rows.iter().filter(|r| !r.violations.is_empty()).count();
    if bad == 0 {
        Ok(())
    } else {
        Err(CliError::Failure(format!("{bad} violation(s)")))
    }
}

fn cmd_reconcile(a: ReconcileArgs) -> Result<(), CliError> {
    let rows = reconcile(a.strategy, parse_usize_list(&a.n)?, a.m1)?;
    write_or_print(a.out.as_deref(), &reconcile_csv(&rows))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.cmd {
        Cmd::Synth(a) => cmd_synth(a),
        Cmd::Verify(a) => cmd_verify(a),
        Cmd::Lower(a) => cmd_lower(a),
        Cmd::Sweep(a) => cmd_sweep(a),
        Cmd::Audit(a) => cmd_audit(a),
        Cmd::Reconcile(a) => cmd_reconcile(a),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("mct: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
