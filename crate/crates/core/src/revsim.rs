//! Basis-state simulation of classical reversible circuits and the MCT oracle.

use crate::circuit::{ensure_valid, Circuit, GateKind, InvalidCircuit, QubitId, Role};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;

pub const DEFAULT_EXHAUSTIVE_CAP: usize = 16;
pub const DEFAULT_PERMUTATION_CAP: usize = 22;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SimError {
    #[error(transparent)]
    Invalid(#[from] InvalidCircuit),
    #[error("gate {index} ({kind:?}) has no classical action")]
    UnsupportedGate { index: usize, kind: GateKind },
    #[error("input has {got} bits, circuit width is {width}")]
    InputLength { got: usize, width: usize },
    #[error("width {width} exceeds the cap of {cap}")]
    WidthOverCap { width: usize, cap: usize },
    #[error("exhaustive check of {n} controls exceeds the cap of {cap}")]
    ExhaustiveOverCap { n: usize, cap: usize },
    #[error("bad MCT spec: {0}")]
    BadSpec(String),
}

fn check_classical(c: &Circuit) -> Result<(), SimError> {
    ensure_valid(c)?;
    match c.gates.iter().position(|g| !g.kind.is_classical()) {
        Some(index) => Err(SimError::UnsupportedGate {
            index,
            kind: c.gates[index].kind,
        }),
        None => Ok(()),
    }
}

#[inline]
fn get(w: &[u64], q: usize) -> bool {
    (w[q >> 6] >> (q & 63)) & 1 == 1
}

#[inline]
fn flip(w: &mut [u64], q: usize) {
    w[q >> 6] ^= 1 << (q & 63);
}

#[inline]
fn set(w: &mut [u64], q: usize, v: bool) {
    if get(w, q) != v {
        flip(w, q);
    }
}

/// Runs a checked classical circuit on packed bits (qubit 0 = bit 0 of word 0).
fn run(c: &Circuit, w: &mut [u64]) {
    for g in &c.gates {
        let (ctl, t) = g.qubits.split_at(g.qubits.len() - 1);
        if ctl.iter().all(|&q| get(w, q)) {
            flip(w, t[0]);
        }
    }
}

fn words(width: usize) -> usize {
    width.div_ceil(64).max(1)
}

pub fn apply_basis(c: &Circuit, input: &[bool]) -> Result<Vec<bool>, SimError> {
    check_classical(c)?;
    if input.len() != c.width {
        return Err(SimError::InputLength {
            got: input.len(),
            width: c.width,
        });
    }
    let mut w = vec![0u64; words(c.width)];
    for (q, &b) in input.iter().enumerate() {
        set(&mut w, q, b);
    }
    run(c, &mut w);
    Ok((0..c.width).map(|q| get(&w, q)).collect())
}

/// Permutation table over all basis states, qubit 0 least significant.
pub fn as_permutation(c: &Circuit, cap: usize) -> Result<Vec<u64>, SimError> {
    check_classical(c)?;
    if c.width > cap || c.width > 63 {
        return Err(SimError::WidthOverCap {
            width: c.width,
            cap,
        });
    }
    Ok((0..1u64 << c.width)
        .map(|i| {
            let mut w = [i];
            run(c, &mut w);
            w[0]
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MctSpec {
    pub controls: Vec<QubitId>,
    pub target: QubitId,
    /// Qubits that start at 0 and must end at 0.
    pub ancillae: Vec<QubitId>,
}

impl MctSpec {
    /// Reads controls, target and ancillae off the circuit's roles.
    pub fn from_roles(c: &Circuit) -> Result<MctSpec, SimError> {
        let target = c
            .target()
            .ok_or_else(|| SimError::BadSpec("circuit has no target qubit".into()))?;
        let s = MctSpec {
            controls: c.controls(),
            target,
            ancillae: c.ancillae(),
        };
        s.check(c.width)?;
        Ok(s)
    }

    /// Ancillae still start at 0 but may end dirty.
    pub fn waive_ancillae(mut self) -> MctSpec {
        self.ancillae.clear();
        self
    }

    pub fn n(&self) -> usize {
        self.controls.len()
    }

    fn check(&self, width: usize) -> Result<(), SimError> {
        if self.n() < 2 {
            return Err(SimError::BadSpec("need at least 2 controls".into()));
        }
        let mut seen = vec![false; width];
        for &q in self
            .controls
            .iter()
            .chain(&self.ancillae)
            .chain([&self.target])
        {
            if q >= width {
                return Err(SimError::BadSpec(format!("qubit {q} out of range")));
            }
            if std::mem::replace(&mut seen[q], true) {
                return Err(SimError::BadSpec(format!("qubit {q} listed twice")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Sampled { count: usize, seed: u64 },
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Exhaustive => f.write_str("exhaustive"),
            Mode::Sampled { .. } => f.write_str("sampled"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

/// Bitstrings listed qubit 0 first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub input: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationResult {
    pub verdict: Verdict,
    pub mode: Mode,
    pub cases_checked: usize,
    pub counterexample: Option<Counterexample>,
}

impl VerificationResult {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Control assignment plus the target's input bit.
type Case = (Vec<bool>, bool);

/// All-ones and every single-zero pattern, for both target values.
fn boundary_cases(n: usize) -> Vec<Case> {
    let mut out = Vec::with_capacity(2 * (n + 1));
    for t in [false, true] {
        out.push((vec![true; n], t));
        for z in 0..n {
            let mut v = vec![true; n];
            v[z] = false;
            out.push((v, t));
        }
    }
    out
}

/// Deterministic case list for sampled mode.
pub fn sampled_cases(n: usize, count: usize, seed: u64) -> Vec<Case> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = boundary_cases(n);
    let mut i = 0usize;
    while out.len() < count {
        let ctl = if i.is_multiple_of(2) {
            (0..n).map(|_| rng.random::<bool>()).collect()
        } else {
            // a handful of zeros on top of all-ones
            let mut v = vec![true; n];
            let zeros = rng.random_range(2..=4usize.min(n));
            for _ in 0..zeros {
                v[rng.random_range(0..n)] = false;
            }
            v
        };
        out.push((ctl, rng.random::<bool>()));
        i += 1;
    }
    out
}

fn bits(w: &[u64], width: usize) -> String {
    (0..width)
        .map(|q| if get(w, q) { '1' } else { '0' })
        .collect()
}

fn check_case(c: &Circuit, spec: &MctSpec, case: &Case, w: &mut [u64]) -> Option<Counterexample> {
    w.fill(0);
    let (ctl, t) = case;
    for (&q, &b) in spec.controls.iter().zip(ctl) {
        set(w, q, b);
    }
    set(w, spec.target, *t);
    let input = w.to_vec();
    run(c, w);

    let mut expected = input.clone();
    if ctl.iter().all(|&b| b) {
        flip(&mut expected, spec.target);
    }
    // qubits outside the spec are don't-care
    let mut watched = spec.controls.clone();
    watched.push(spec.target);
    watched.extend(&spec.ancillae);
    for q in 0..c.width {
        if !watched.contains(&q) {
            set(&mut expected, q, get(w, q));
        }
    }
    if expected[..] == w[..] {
        None
    } else {
        Some(Counterexample {
            input: bits(&input, c.width),
            expected: bits(&expected, c.width),
            actual: bits(w, c.width),
        })
    }
}

pub fn verify_mct(c: &Circuit, spec: &MctSpec, mode: Mode) -> Result<VerificationResult, SimError> {
    verify_mct_capped(c, spec, mode, DEFAULT_EXHAUSTIVE_CAP)
}

/// As [`verify_mct`] with an explicit cap on `n` for exhaustive mode.
pub fn verify_mct_capped(
    c: &Circuit,
    spec: &MctSpec,
    mode: Mode,
    cap: usize,
) -> Result<VerificationResult, SimError> {
    check_classical(c)?;
    spec.check(c.width)?;
    let n = spec.n();
    let cases: Box<dyn Iterator<Item = Case>> = match mode {
        Mode::Exhaustive => {
            if n > cap || n >= 63 {
                return Err(SimError::ExhaustiveOverCap { n, cap });
            }
            Box::new((0..1u64 << (n + 1)).map(move |p| {
                (
                    (0..n).map(|i| (p >> i) & 1 == 1).collect(),
                    (p >> n) & 1 == 1,
                )
            }))
        }
        Mode::Sampled { count, seed } => Box::new(sampled_cases(n, count, seed).into_iter()),
    };
    let mut w = vec![0u64; words(c.width)];
    let mut checked = 0;
    for case in cases {
        checked += 1;
        if let Some(cx) = check_case(c, spec, &case, &mut w) {
            return Ok(VerificationResult {
                verdict: Verdict::Fail,
                mode,
                cases_checked: checked,
                counterexample: Some(cx),
            });
        }
    }
    Ok(VerificationResult {
        verdict: Verdict::Pass,
        mode,
        cases_checked: checked,
        counterexample: None,
    })
}

/// The five-control example with one ancilla: qubits 0..5 controls, 5 ancilla, 6 target.
pub fn five_control_example() -> Circuit {
    use crate::circuit::Gate;
    let mut roles = vec![Role::Control; 5];
    roles.extend([Role::Ancilla, Role::Target]);
    let mut c = Circuit::new(roles).with_label("five-control");
    let compute = [
        Gate::ccx(0, 1, 5),
        Gate::x(0),
        Gate::x(1),
        Gate::ccx(2, 3, 0),
        Gate::ccx(0, 4, 1),
    ];
    c.extend(compute.iter().cloned());
    c.push(Gate::ccx(1, 5, 6));
    c.extend(compute.iter().rev().cloned());
    c
}
