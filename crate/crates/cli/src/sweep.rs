//! `mct sweep`: one CSV row per (strategy, n, m1) with measured and formula
//! resources plus an oracle verdict.

use crate::{auto_mode, oracle_spec, CliError};
use mct_core::formulas::{formula_depth, lower_bound_depth};
use mct_core::revsim::{verify_mct_capped, Mode};
use mct_core::tgate::{lower, Selection};
use mct_core::{synthesize, Strategy, StrategySpec};
use rayon::prelude::*;
use std::collections::BTreeMap;

pub const HEADER: [&str; 12] = [
    "strategy",
    "n",
    "m1",
    "ancilla",
    "toffoli_count",
    "toffoli_depth",
    "formula_depth",
    "delta",
    "t_count",
    "t_depth",
    "lower_bound",
    "verify",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyMode {
    Off,
    Exhaustive,
    Sampled {
        count: usize,
        seed: u64,
    },
    /// Exhaustive up to the oracle cap, sampled beyond.
    Auto {
        count: usize,
        seed: u64,
    },
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub strategies: Vec<Strategy>,
    pub n_values: Vec<usize>,
    /// Tradeoff only; other strategies get one row per `n`.
    pub m1_values: Vec<usize>,
    /// Binary-tree rows restore their ancillae.
    pub cleanup: bool,
    pub verify: VerifyMode,
    pub selection: Selection,
    pub oracle_cap: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepRow {
    pub strategy: Strategy,
    pub n: usize,
    pub m1: Option<usize>,
    pub ancilla: Option<usize>,
    pub toffoli_count: Option<usize>,
    pub toffoli_depth: Option<usize>,
    pub restoration_depth: Option<usize>,
    pub formula_depth: Option<usize>,
    pub delta: Option<i64>,
    pub t_count: Option<usize>,
    pub t_depth: Option<usize>,
    pub lower_bound: usize,
    /// `pass`, `fail` or `off`.
    pub verify: &'static str,
    pub error: Option<String>,
}

impl SweepRow {
    pub fn failed(&self) -> bool {
        self.verify == "fail"
    }
}

impl SweepConfig {
    fn validate(&self) -> Result<(), CliError> {
        if self.strategies.is_empty() || self.n_values.is_empty() {
            return Err(CliError::Usage(
                "sweep needs strategies and n values".into(),
            ));
        }
        if self.strategies.contains(&Strategy::Tradeoff) && self.m1_values.iter().any(|&m| m < 2) {
            return Err(CliError::Usage("tradeoff m1 values must be >= 2".into()));
        }
        Ok(())
    }

    /// Valid (strategy, n, m1) points in output order. Points below a
    /// strategy's minimum `n` are skipped.
    pub fn points(&self) -> Vec<(Strategy, usize, Option<usize>)> {
        let mut strategies = self.strategies.clone();
        strategies.sort_by_key(|s| s.name());
        strategies.dedup();
        let mut ns = self.n_values.clone();
        ns.sort_unstable();
        ns.dedup();
        let mut m1s = self.m1_values.clone();
        m1s.sort_unstable();
        m1s.dedup();
        let mut out = Vec::new();
        for s in strategies {
            for &n in &ns {
                if s == Strategy::Tradeoff {
                    out.extend(
                        m1s.iter()
                            .filter(|&&m| n >= s.min_n(m))
                            .map(|&m| (s, n, Some(m))),
                    );
                } else if n >= s.min_n(0) {
                    out.push((s, n, None));
                }
            }
        }
        out
    }
}

pub fn sweep_row(cfg: &SweepConfig, strategy: Strategy, n: usize, m1: Option<usize>) -> SweepRow {
    let mut row = SweepRow {
        strategy,
        n,
        m1,
        ancilla: None,
        toffoli_count: None,
        toffoli_depth: None,
        restoration_depth: None,
        formula_depth: None,
        delta: None,
        t_count: None,
        t_depth: None,
        lower_bound: lower_bound_depth(n),
        verify: "fail",
        error: None,
    };
    let mut spec = StrategySpec::new(strategy, n).with_cleanup(cfg.cleanup);
    spec.m1 = m1;
    let (c, r) = match synthesize(&spec) {
        Ok(x) => x,
        Err(e) => {
            row.error = Some(e.to_string());
            return row;
        }
    };
    row.ancilla = Some(r.ancilla_count);
    row.toffoli_count = Some(r.toffoli_count);
    row.toffoli_depth = Some(r.toffoli_depth);
    row.restoration_depth = Some(r.restoration_depth);
    if let Ok(f) = formula_depth(strategy, n, m1) {
        row.formula_depth = Some(f.value);
        row.delta = Some(r.toffoli_depth as i64 - f.value as i64);
    }
    match lower(&c, cfg.selection) {
        Ok((_, lr)) => {
            row.t_count = lr.t_count;
            row.t_depth = lr.t_depth;
        }
        Err(e) => {
            row.error = Some(e.to_string());
            return row;
        }
    }
    let mode = match cfg.verify {
        VerifyMode::Off => {
            row.verify = "off";
            return row;
        }
        VerifyMode::Exhaustive => Mode::Exhaustive,
        VerifyMode::Sampled { count, seed } => Mode::Sampled { count, seed },
        VerifyMode::Auto { count, seed } => auto_mode(n, cfg.oracle_cap, count, seed),
    };
    let checked =
        oracle_spec(&c, &spec).and_then(|s| verify_mct_capped(&c, &s, mode, cfg.oracle_cap));
    match checked {
        Ok(v) if v.passed() => row.verify = "pass",
        Ok(v) => {
            row.error = v
                .counterexample
                .map(|cx| format!("counterexample input={}", cx.input))
        }
        Err(e) => row.error = Some(e.to_string()),
    }
    row
}

/// Rows in (strategy, n, m1) order, computed in parallel.
pub fn sweep_rows(cfg: &SweepConfig) -> Result<Vec<SweepRow>, CliError> {
    cfg.validate()?;
    Ok(cfg
        .points()
        .into_par_iter()
        .map(|(s, n, m1)| sweep_row(cfg, s, n, m1))
        .collect())
}

fn seed_comment(v: VerifyMode) -> String {
    match v {
        VerifyMode::Off => "# verify=off".to_string(),
        VerifyMode::Exhaustive => "# verify=exhaustive".to_string(),
        VerifyMode::Sampled { count, seed } => {
            format!("# verify=sampled count={count} seed={seed:#x}")
        }
        VerifyMode::Auto { count, seed } => format!("# verify=auto count={count} seed={seed:#x}"),
    }
}

pub fn to_csv(cfg: &SweepConfig, rows: &[SweepRow]) -> String {
    fn opt<T: ToString>(v: Option<T>) -> String {
        v.map(|x| x.to_string()).unwrap_or_default()
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(HEADER).unwrap();
    for r in rows {
        w.write_record([
            r.strategy.to_string(),
            r.n.to_string(),
            opt(r.m1),
            opt(r.ancilla),
            opt(r.toffoli_count),
            opt(r.toffoli_depth),
            opt(r.formula_depth),
            opt(r.delta),
            opt(r.t_count),
            opt(r.t_depth),
            r.lower_bound.to_string(),
            r.verify.to_string(),
        ])
        .unwrap();
    }
    let body = String::from_utf8(w.into_inner().unwrap()).unwrap();
    format!(
        "{} selection={}/{}\n{body}{}",
        seed_comment(cfg.verify),
        cfg.selection.plain,
        cfg.selection.and_compute,
        c_trailer(rows)
    )
}

/// Empirical `depth / log2 n` per (strategy, m1), as trailing comment lines.
fn c_trailer(rows: &[SweepRow]) -> String {
    let mut acc: BTreeMap<(String, Option<usize>), (f64, f64)> = BTreeMap::new();
    for r in rows.iter().filter(|r| r.n >= 2) {
        let Some(d) = r.toffoli_depth else { continue };
        let c = d as f64 / (r.n as f64).log2();
        let e = acc
            .entry((r.strategy.to_string(), r.m1))
            .or_insert((f64::INFINITY, 0.0));
        *e = (e.0.min(c), e.1.max(c));
    }
    acc.into_iter()
        .map(|((s, m1), (lo, hi))| {
            let m1 = m1.map(|m| m.to_string()).unwrap_or_default();
            format!("# c strategy={s} m1={m1} min={lo:.4} max={hi:.4}\n")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(strategies: Vec<Strategy>, ns: Vec<usize>) -> SweepConfig {
        SweepConfig {
            strategies,
            n_values: ns,
            m1_values: vec![2, 3, 4, 5],
            cleanup: false,
            verify: VerifyMode::Off,
            selection: Selection::default(),
            oracle_cap: 16,
        }
    }

    #[test]
    fn khattar_counts() {
        let rows = sweep_rows(&cfg(vec![Strategy::Khattar1], (5..=12).collect())).unwrap();
        for r in rows {
            assert_eq!(r.toffoli_count, Some(2 * r.n - 3));
        }
    }

    #[test]
    fn tradeoff_flattens_at_fourteen() {
        let rows = sweep_rows(&cfg(vec![Strategy::Tradeoff], vec![32])).unwrap();
        let d: Vec<_> = rows.iter().map(|r| r.toffoli_depth.unwrap()).collect();
        assert!(d.windows(2).all(|w| w[1] <= w[0]), "{d:?}");
        assert_eq!((d[1], d[2]), (14, 14));
    }

    #[test]
    fn binary_tree_meets_bound() {
        let mut c = cfg(vec![Strategy::BinaryTree], (3..=11).collect());
        c.verify = VerifyMode::Exhaustive;
        for r in sweep_rows(&c).unwrap() {
            assert_eq!(r.toffoli_depth, Some(r.lower_bound));
            assert_eq!(r.verify, "pass");
        }
    }

    #[test]
    fn order_and_skips() {
        let c = cfg(vec![Strategy::Tradeoff, Strategy::BinaryTree], vec![9, 3]);
        let pts = c.points();
        assert_eq!(pts[0], (Strategy::BinaryTree, 3, None));
        assert_eq!(pts.last(), Some(&(Strategy::Tradeoff, 9, Some(3))));
        assert_eq!(pts.len(), 4);
    }
}
