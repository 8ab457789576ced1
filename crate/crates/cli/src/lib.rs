//! Command implementations behind the `mct` binary. Each command returns its
//! stdout text or a [`CliError`] whose variant fixes the exit code.

pub mod audit;
pub mod sweep;

use mct_core::circuit::ResourceReport;
use mct_core::revsim::{self, MctSpec, Mode, SimError, DEFAULT_EXHAUSTIVE_CAP};
use mct_core::synth::SynthError;
use mct_core::{Circuit, Strategy, StrategySpec};
use std::fmt;

pub const DEFAULT_SEED: u64 = 0xC0FFEE;
pub const DEFAULT_SAMPLES: usize = 10_000;
pub const ORACLE_CAP_VAR: &str = "MCT_ORACLE_CAP";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Bad flags or parameters: exit 2.
    Usage(String),
    /// The command ran and something failed: exit 1.
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Failure(m) => f.write_str(m),
        }
    }
}

impl From<SynthError> for CliError {
    fn from(e: SynthError) -> Self {
        match e {
            SynthError::Plan(_) => CliError::Failure(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

/// Exhaustive-verification cap on `n`, overridable through `MCT_ORACLE_CAP`.
pub fn oracle_cap() -> Result<usize, CliError> {
    match std::env::var(ORACLE_CAP_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{ORACLE_CAP_VAR}={v:?} is not an integer"))),
        Err(_) => Ok(DEFAULT_EXHAUSTIVE_CAP),
    }
}

pub fn report_lines(r: &ResourceReport) -> String {
    let mut out = String::new();
    let mut kv = |k: &str, v: usize| out.push_str(&format!("{k}={v}\n"));
    kv("width", r.width);
    kv("ancilla_count", r.ancilla_count);
    kv("toffoli_count", r.toffoli_count);
    kv("and_uncompute_count", r.and_uncompute_count);
    kv("cccx_count", r.cccx_count);
    kv("toffoli_depth", r.toffoli_depth);
    kv("restoration_depth", r.restoration_depth);
    kv("clifford_count", r.clifford_count);
    kv("total_depth", r.total_depth);
    if let Some(t) = r.t_count {
        kv("t_count", t);
    }
    if let Some(t) = r.t_depth {
        kv("t_depth", t);
    }
    out
}

/// Inclusive ranges `a..b` / `a..=b` / `a-b`, single values, or comma lists of those.
pub fn parse_usize_list(s: &str) -> Result<Vec<usize>, CliError> {
    let bad = || CliError::Usage(format!("bad number list {s:?}"));
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    let mut out = Vec::new();
    for part in s.split(',').filter(|p| !p.trim().is_empty()) {
        let range = part
            .split_once("..=")
            .or_else(|| part.split_once(".."))
            .or_else(|| part.split_once('-'));
        match range {
            Some((a, b)) => {
                let (a, b) = (num(a)?, num(b)?);
                if a > b {
                    return Err(bad());
                }
                out.extend(a..=b);
            }
            None => out.push(num(part)?),
        }
    }
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

pub fn parse_strategies(s: &str) -> Result<Vec<Strategy>, CliError> {
    if s == "all" {
        return Ok(Strategy::ALL.to_vec());
    }
    s.split(',')
        .map(|t| t.trim().parse::<Strategy>().map_err(CliError::from))
        .collect()
}

/// `n=7,target=13,controls=0-6,ancilla=7,8`: bare numbers extend the previous key.
pub fn parse_spec(s: &str, width: usize) -> Result<MctSpec, CliError> {
    let bad = |m: String| CliError::Usage(format!("--spec: {m}"));
    let mut fields: Vec<(String, Vec<usize>)> = Vec::new();
    for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let val = match tok.split_once('=') {
            Some((k, v)) => {
                fields.push((k.trim().to_string(), Vec::new()));
                v
            }
            None if fields.is_empty() => return Err(bad(format!("value {tok:?} before any key"))),
            None => tok,
        };
        if !val.trim().is_empty() {
            let vals = parse_usize_list(val).map_err(|_| bad(format!("bad value {val:?}")))?;
            fields.last_mut().unwrap().1.extend(vals);
        }
    }
    let get = |k: &str| fields.iter().find(|(f, _)| f == k).map(|(_, v)| v.clone());
    for (k, _) in &fields {
        if !["n", "target", "controls", "ancilla"].contains(&k.as_str()) {
            return Err(bad(format!("unknown key {k:?}")));
        }
    }
    let controls = get("controls").ok_or_else(|| bad("missing controls".into()))?;
    let target = match get("target").as_deref() {
        Some([t]) => *t,
        _ => return Err(bad("target needs exactly one qubit".into())),
    };
    if let Some(n) = get("n") {
        if n != [controls.len()] {
            return Err(bad(format!(
                "n={n:?} but {} controls listed",
                controls.len()
            )));
        }
    }
    let spec = MctSpec {
        controls,
        target,
        ancillae: get("ancilla").unwrap_or_default(),
    };
    let out_of_range = spec
        .controls
        .iter()
        .chain(&spec.ancillae)
        .chain([&spec.target])
        .find(|&&q| q >= width)
        .copied();
    if let Some(q) = out_of_range {
        return Err(bad(format!(
            "qubit {q} outside the circuit's {width} qubits"
        )));
    }
    Ok(spec)
}

/// Ancillae a strategy leaves dirty on purpose.
pub fn oracle_spec(c: &Circuit, spec: &StrategySpec) -> Result<MctSpec, SimError> {
    let s = MctSpec::from_roles(c)?;
    Ok(if spec.kind == Strategy::BinaryTree && !spec.cleanup {
        s.waive_ancillae()
    } else {
        s
    })
}

/// Exhaustive when `n` fits under `cap`, otherwise sampled.
pub fn auto_mode(n: usize, cap: usize, count: usize, seed: u64) -> Mode {
    if n <= cap {
        Mode::Exhaustive
    } else {
        Mode::Sampled { count, seed }
    }
}

pub fn verify_line(r: &revsim::VerificationResult) -> String {
    let mut s = format!(
        "verdict={} mode={} cases={}\n",
        if r.passed() { "pass" } else { "fail" },
        r.mode,
        r.cases_checked
    );
    if let Some(cx) = &r.counterexample {
        s.push_str(&format!(
            "counterexample input={} expected={} actual={}\n",
            cx.input, cx.expected, cx.actual
        ));
    }
    s
}
