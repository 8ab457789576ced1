//! Strategy front-end: one complete Clifford+Toffoli circuit per construction.

use crate::circuit::{resource_report, reverse, Circuit, Gate, QubitId, ResourceReport, Role};
use crate::planner::{self, Layout, PlanError};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strategy {
    BinaryTree,
    Khattar1,
    Khattar2,
    Tradeoff,
    GidneyLadder,
}

impl Strategy {
    pub const ALL: [Strategy; 5] = [
        Strategy::BinaryTree,
        Strategy::Khattar1,
        Strategy::Khattar2,
        Strategy::Tradeoff,
        Strategy::GidneyLadder,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::BinaryTree => "binary-tree",
            Strategy::Khattar1 => "khattar-1anc",
            Strategy::Khattar2 => "khattar-2anc",
            Strategy::Tradeoff => "tradeoff",
            Strategy::GidneyLadder => "gidney-ladder",
        }
    }

    /// Smallest supported `n` (for tradeoff, given `m1`).
    pub fn min_n(self, m1: usize) -> usize {
        match self {
            Strategy::BinaryTree | Strategy::Khattar1 => 3,
            Strategy::Khattar2 | Strategy::GidneyLadder => 4,
            Strategy::Tradeoff => 2 * m1.max(2) + 2,
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = SynthError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Strategy::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| SynthError::UnknownStrategy(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SynthError {
    #[error("unknown strategy {0:?}")]
    UnknownStrategy(String),
    #[error("{strategy} needs n >= {min}, got {n}")]
    TooFewControls {
        strategy: Strategy,
        n: usize,
        min: usize,
    },
    #[error("tradeoff needs m1 >= 2")]
    MissingM1,
    #[error(transparent)]
    Plan(#[from] PlanError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrategySpec {
    pub kind: Strategy,
    pub n: usize,
    pub m1: Option<usize>,
    /// Only read by binary-tree.
    pub cleanup: bool,
}

impl StrategySpec {
    pub fn new(kind: Strategy, n: usize) -> StrategySpec {
        StrategySpec {
            kind,
            n,
            m1: None,
            cleanup: false,
        }
    }

    pub fn with_m1(mut self, m1: usize) -> StrategySpec {
        self.m1 = Some(m1);
        self
    }

    pub fn with_cleanup(mut self, cleanup: bool) -> StrategySpec {
        self.cleanup = cleanup;
        self
    }

    pub fn label(&self) -> String {
        match (self.kind, self.m1) {
            (Strategy::Tradeoff, Some(m1)) => format!("tradeoff n={} m1={m1}", self.n),
            (Strategy::BinaryTree, _) if self.cleanup => {
                format!("binary-tree n={} cleanup", self.n)
            }
            (k, _) => format!("{k} n={}", self.n),
        }
    }
}

fn need(strategy: Strategy, n: usize, min: usize) -> Result<(), SynthError> {
    if n < min {
        Err(SynthError::TooFewControls { strategy, n, min })
    } else {
        Ok(())
    }
}

fn bare_toffoli() -> Circuit {
    let mut c = Circuit::mct_layout(2, 0);
    c.push(Gate::ccx(0, 1, 2));
    c
}

/// Level-by-level pairing into fresh ancillae; an odd value waits a level.
/// Returns the compute gates and the final pair.
fn tree(
    leaves: &[QubitId],
    fresh: &mut impl Iterator<Item = QubitId>,
    and_flavor: bool,
) -> (Vec<Gate>, Vec<QubitId>) {
    let mut gates = Vec::new();
    let mut level = leaves.to_vec();
    while level.len() > 2 {
        let mut next = Vec::with_capacity(level.len().div_ceil(2));
        for pair in level.chunks(2) {
            match *pair {
                [a, b] => {
                    let t = fresh.next().expect("ran out of ancillae");
                    gates.push(if and_flavor {
                        Gate::and_compute(a, b, t)
                    } else {
                        Gate::ccx(a, b, t)
                    });
                    next.push(t);
                }
                [a] => next.push(a),
                _ => unreachable!(),
            }
        }
        level = next;
    }
    (gates, level)
}

/// Balanced tree over `n - 2` ancillae; `cleanup` restores them with and-uncompute.
pub fn binary_tree(n: usize, cleanup: bool) -> Result<Circuit, SynthError> {
    need(Strategy::BinaryTree, n, 3)?;
    let mut c = Circuit::mct_layout(n, n - 2);
    let controls: Vec<QubitId> = (0..n).collect();
    let (compute, top) = tree(&controls, &mut (n..2 * n - 2), cleanup);
    c.extend(compute.iter().cloned());
    c.push(Gate::ccx(top[0], top[1], 2 * n - 2));
    if cleanup {
        let mut tmp = Circuit::new(vec![Role::Control; c.width]);
        tmp.extend(compute);
        c.extend(reverse(&tmp).gates);
    }
    Ok(c)
}

pub fn khattar_one_ancilla(n: usize) -> Result<Circuit, SynthError> {
    need(Strategy::Khattar1, n, 3)?;
    Ok(planner::one_ancilla_ladder(&Layout::standard(n, 1)))
}

pub fn khattar_two_ancilla(n: usize) -> Result<Circuit, SynthError> {
    need(Strategy::Khattar2, n, 4)?;
    let p = planner::plan_conditionally_clean(n, 1)?;
    Ok(planner::plan_to_circuit(
        &p,
        &Layout::standard(n, p.ancilla_count()),
    )?)
}

/// `m1 + 2` clean ancillae.
pub fn tradeoff(n: usize, m1: usize) -> Result<Circuit, SynthError> {
    tradeoff_with_m2(n, m1, 2)
}

/// Tradeoff with an explicit Step III reserve; `m2 = 1` covers three ancillae total.
pub fn tradeoff_with_m2(n: usize, m1: usize, m2: usize) -> Result<Circuit, SynthError> {
    if m1 < 2 {
        return Err(SynthError::MissingM1);
    }
    need(Strategy::Tradeoff, n, 2 * m1 + 2)?;
    let p = planner::plan_with_m2(n, m1, m2)?;
    Ok(planner::plan_to_circuit(
        &p,
        &Layout::standard(n, p.ancilla_count()),
    )?)
}

/// Three balanced AND trees joined by a CCCX, then mirrored. One of the
/// `n - 2` ancillae is the CCCX's own helper and stays idle at this level.
pub fn gidney_ladder(n: usize) -> Result<Circuit, SynthError> {
    need(Strategy::GidneyLadder, n, 4)?;
    let mut c = Circuit::mct_layout(n, n - 2);
    let mut fresh = n..2 * n - 3;
    let mut compute = Vec::new();
    let mut roots = Vec::with_capacity(3);
    let mut start = 0;
    for g in 0..3 {
        let size = n / 3 + (g < n % 3) as usize;
        let leaves: Vec<QubitId> = (start..start + size).collect();
        start += size;
        let (gates, top) = tree(&leaves, &mut fresh, true);
        compute.extend(gates);
        let root = match *top {
            [a, b] => {
                let t = fresh.next().expect("ran out of ancillae");
                compute.push(Gate::and_compute(a, b, t));
                t
            }
            [a] => a,
            _ => unreachable!(),
        };
        roots.push(root);
    }
    c.extend(compute.iter().cloned());
    c.push(Gate::cccx(roots[0], roots[1], roots[2], 2 * n - 2));
    let mut tmp = Circuit::new(vec![Role::Control; c.width]);
    tmp.extend(compute);
    c.extend(reverse(&tmp).gates);
    Ok(c)
}

pub fn synthesize(spec: &StrategySpec) -> Result<(Circuit, ResourceReport), SynthError> {
    let n = spec.n;
    let c = if n == 2 {
        bare_toffoli()
    } else {
        match spec.kind {
            Strategy::BinaryTree => binary_tree(n, spec.cleanup)?,
            Strategy::Khattar1 => khattar_one_ancilla(n)?,
            Strategy::Khattar2 => khattar_two_ancilla(n)?,
            Strategy::Tradeoff => tradeoff(n, spec.m1.ok_or(SynthError::MissingM1)?)?,
            Strategy::GidneyLadder => gidney_ladder(n)?,
        }
    }
    .with_label(spec.label());
    let report = resource_report(&c).expect("synthesized circuits are valid");
    Ok((c, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{toffoli_layers, GateKind};
    use crate::revsim::{verify_mct, MctSpec, Mode};

    fn report(c: &Circuit) -> ResourceReport {
        resource_report(c).unwrap()
    }

    fn passes(c: &Circuit, waive: bool) -> bool {
        let mut spec = MctSpec::from_roles(c).unwrap();
        if waive {
            spec = spec.waive_ancillae();
        }
        verify_mct(c, &spec, Mode::Exhaustive).unwrap().passed()
    }

    #[test]
    fn binary_tree_seven() {
        let r = report(&binary_tree(7, false).unwrap());
        assert_eq!(
            (r.toffoli_count, r.ancilla_count, r.toffoli_depth),
            (6, 5, 3)
        );
    }

    #[test]
    fn binary_tree_four_gates() {
        let c = binary_tree(4, false).unwrap();
        assert_eq!(
            c.gates,
            vec![Gate::ccx(0, 1, 4), Gate::ccx(2, 3, 5), Gate::ccx(4, 5, 6)]
        );
        assert_eq!(toffoli_layers(&c).unwrap().len(), 2);
    }

    #[test]
    fn binary_tree_cleanup_restores() {
        let c = binary_tree(9, true).unwrap();
        let r = report(&c);
        assert_eq!(r.toffoli_count + r.and_uncompute_count, 2 * 9 - 3);
        assert!(passes(&c, false));
        assert!(passes(&binary_tree(9, false).unwrap(), true));
        assert!(!passes(&binary_tree(9, false).unwrap(), false));
    }

    #[test]
    fn khattar_one() {
        let r = report(&khattar_one_ancilla(10).unwrap());
        assert_eq!(
            (r.toffoli_count, r.toffoli_depth, r.ancilla_count),
            (17, 17, 1)
        );
        let r = report(&khattar_one_ancilla(3).unwrap());
        assert_eq!((r.toffoli_count, r.toffoli_depth), (3, 3));
        assert!(passes(&khattar_one_ancilla(6).unwrap(), false));
    }

    #[test]
    fn khattar_two() {
        let r = report(&khattar_two_ancilla(32).unwrap());
        assert_eq!(r.toffoli_depth, 19);
        assert_eq!(report(&khattar_two_ancilla(10).unwrap()).toffoli_count, 17);
        assert!(passes(&khattar_two_ancilla(8).unwrap(), false));
    }

    #[test]
    fn tradeoff_examples() {
        let r = report(&tradeoff(32, 3).unwrap());
        assert_eq!(
            (r.toffoli_depth, r.ancilla_count, r.toffoli_count),
            (14, 5, 58)
        );
        assert_eq!(report(&tradeoff(32, 4).unwrap()).toffoli_depth, 14);
        assert!(passes(&tradeoff(12, 2).unwrap(), false));
        assert_eq!(report(&tradeoff_with_m2(9, 2, 1).unwrap()).ancilla_count, 3);
        assert!(tradeoff(5, 2).is_err());
        assert!(tradeoff(10, 1).is_err());
    }

    #[test]
    fn gidney_shapes() {
        let c = gidney_ladder(4).unwrap();
        let r = report(&c);
        assert_eq!(r.ancilla_count, 2);
        assert_eq!(r.cccx_count, 1);
        assert_eq!(r.toffoli_count, 2);

        let c = gidney_ladder(12).unwrap();
        let center = c
            .gates
            .iter()
            .position(|g| g.kind == GateKind::Cccx)
            .unwrap();
        let mut half = Circuit::new(c.roles.clone());
        half.extend(c.gates[..=center].iter().cloned());
        let r = report(&half);
        assert_eq!(r.toffoli_count - r.cccx_count, 9);
        assert_eq!(r.toffoli_depth, 3);
        assert!(passes(&gidney_ladder(10).unwrap(), false));
    }

    #[test]
    fn dispatcher() {
        let (_, r) = synthesize(&StrategySpec::new(Strategy::BinaryTree, 7)).unwrap();
        assert_eq!(r.toffoli_depth, 3);
        let (_, r) = synthesize(&StrategySpec::new(Strategy::Khattar1, 10)).unwrap();
        assert_eq!(r.toffoli_count, 17);
        let (c, r) = synthesize(&StrategySpec::new(Strategy::Tradeoff, 32).with_m1(3)).unwrap();
        assert_eq!(r.toffoli_count, 58);
        assert_eq!(c.label, "tradeoff n=32 m1=3");
        let (c, _) = synthesize(&StrategySpec::new(Strategy::GidneyLadder, 2)).unwrap();
        assert_eq!(c.gates.len(), 1);
        assert!(synthesize(&StrategySpec::new(Strategy::Tradeoff, 10)).is_err());
        assert_eq!(
            "khattar-2anc".parse::<Strategy>().unwrap(),
            Strategy::Khattar2
        );
        assert!("nope".parse::<Strategy>().is_err());
    }
}
