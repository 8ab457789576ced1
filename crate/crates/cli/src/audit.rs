//! `mct audit`: depth lower bounds over every generated circuit.

use crate::CliError;
use mct_core::circuit::two_control_depth;
use mct_core::formulas::lower_bound_depth;
use mct_core::{synthesize, Strategy, StrategySpec};
use rayon::prelude::*;

/// Strict bounds for conditionally clean constructions are checked from here up.
pub const STRICT_FROM: usize = 8;

pub fn conditionally_clean(s: Strategy) -> bool {
    matches!(
        s,
        Strategy::Khattar1 | Strategy::Khattar2 | Strategy::Tradeoff
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditRow {
    pub strategy: Strategy,
    pub n: usize,
    pub m1: Option<usize>,
    pub depth: usize,
    pub two_control_depth: usize,
    pub restoration_depth: usize,
    pub bound: usize,
    pub violations: Vec<String>,
}

impl AuditRow {
    pub fn tight(&self) -> bool {
        self.two_control_depth == self.bound
    }
}

pub fn audit_point(s: Strategy, n: usize, m1: Option<usize>) -> Result<AuditRow, CliError> {
    let mut spec = StrategySpec::new(s, n);
    spec.m1 = m1;
    let (c, r) = synthesize(&spec).map_err(|e| CliError::Failure(format!("{s} n={n}: {e}")))?;
    let bound = lower_bound_depth(n);
    // the bound is over 2-control Toffolis, so a CCCX counts twice here
    let depth2 = two_control_depth(&c).expect("synthesized circuits are valid");
    let mut violations = Vec::new();
    if depth2 < bound {
        violations.push(format!("2-control depth {depth2} < {bound}"));
    }
    if conditionally_clean(s) && n >= STRICT_FROM {
        if r.toffoli_depth <= bound {
            violations.push(format!("depth {} <= {bound}", r.toffoli_depth));
        }
        if r.restoration_depth <= 2 * bound {
            violations.push(format!(
                "restoration depth {} <= {}",
                r.restoration_depth,
                2 * bound
            ));
        }
    }
    Ok(AuditRow {
        strategy: s,
        n,
        m1,
        depth: r.toffoli_depth,
        two_control_depth: depth2,
        restoration_depth: r.restoration_depth,
        bound,
        violations,
    })
}

pub fn audit(
    strategies: &[Strategy],
    ns: impl IntoIterator<Item = usize>,
    m1s: &[usize],
) -> Result<Vec<AuditRow>, CliError> {
    let ns: Vec<usize> = ns.into_iter().collect();
    let mut pts = Vec::new();
    for &s in strategies {
        for &n in &ns {
            if s == Strategy::Tradeoff {
                pts.extend(
                    m1s.iter()
                        .filter(|&&m| n >= s.min_n(m))
                        .map(|&m| (s, n, Some(m))),
                );
            } else if n >= s.min_n(0) {
                pts.push((s, n, None));
            }
        }
    }
    pts.into_par_iter()
        .map(|(s, n, m1)| audit_point(s, n, m1))
        .collect()
}

pub fn render(rows: &[AuditRow]) -> String {
    let mut out = String::from(
        "strategy,n,m1,depth,two_control_depth,restoration_depth,bound,tight,violations\n",
    );
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.strategy,
            r.n,
            r.m1.map(|m| m.to_string()).unwrap_or_default(),
            r.depth,
            r.two_control_depth,
            r.restoration_depth,
            r.bound,
            r.tight(),
            r.violations.join("; ")
        ));
    }
    let bad = rows.iter().filter(|r| !r.violations.is_empty()).count();
    out.push_str(&format!("# violations={bad}\n"));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_point() {
        let r = audit_point(Strategy::Tradeoff, 32, Some(3)).unwrap();
        assert_eq!((r.depth, r.bound), (14, 5));
        assert!(r.restoration_depth > 10);
        assert!(r.violations.is_empty());
    }

    #[test]
    fn binary_tree_is_tight() {
        for n in 3..40 {
            assert!(audit_point(Strategy::BinaryTree, n, None).unwrap().tight());
        }
    }
}
