//! Closed-form depth and count formulas, interval lookup for the piecewise
//! families, lower bounds, and formula-vs-measured reconciliation.
//!
//! All arithmetic is on integers.

use crate::synth::{synthesize, Strategy, StrategySpec, SynthError};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    First,
    Second,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::First => "first",
            Branch::Second => "second",
        })
    }
}

/// Inclusive interval `[lo, hi]` of the family member that matched.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntervalHit {
    pub k: u32,
    pub branch: Branch,
    pub lo: u64,
    pub hi: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FormulaResult {
    pub value: usize,
    pub source: &'static str,
    pub hit: Option<IntervalHit>,
}

impl FormulaResult {
    fn plain(value: usize, source: &'static str) -> FormulaResult {
        FormulaResult {
            value,
            source,
            hit: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormulaError {
    #[error("{family}: n = {n} lies outside every interval")]
    OutOfDomain { family: &'static str, n: usize },
    #[error("m1 = {0} is not valid here (need m1 >= 2)")]
    BadM1(usize),
    #[error("n = {0} is below the formula's minimum")]
    TooSmall(usize),
    #[error("unknown comparison row {0:?}")]
    UnknownRow(String),
}

pub fn ceil_log2(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

pub fn floor_log2(n: usize) -> usize {
    assert!(n > 0);
    (usize::BITS - 1 - n.leading_zeros()) as usize
}

/// Smallest d with 3 * 2^d >= n, i.e. ceil(log2(n / 3)) clamped at 0.
pub fn ceil_log2_third(n: usize) -> usize {
    let mut d = 0;
    while 3usize << d < n {
        d += 1;
    }
    d
}

pub fn lower_bound_depth(n: usize) -> usize {
    ceil_log2(n)
}

/// One family member: `(branch, lo, hi, value)`.
type Member = (Branch, u64, u64, usize);

/// Scans k = 2, 3, ... while the first interval can still contain `n`.
/// Overlaps resolve to the smaller value.
fn lookup(
    family: &'static str,
    n: usize,
    members: impl Fn(u32) -> Option<[Member; 2]>,
) -> Result<FormulaResult, FormulaError> {
    let n64 = n as u64;
    let mut best: Option<FormulaResult> = None;
    for k in 2..62u32 {
        let Some(ms) = members(k) else { break };
        if ms[0].1 > n64 {
            break;
        }
        for (branch, lo, hi, value) in ms {
            if lo <= n64 && n64 <= hi && best.is_none_or(|b| value < b.value) {
                best = Some(FormulaResult {
                    value,
                    source: family,
                    hit: Some(IntervalHit { k, branch, lo, hi }),
                });
            }
        }
    }
    best.ok_or(FormulaError::OutOfDomain { family, n })
}

fn pow2(k: u32) -> Option<u64> {
    1u64.checked_shl(k).filter(|&v| v < 1 << 62)
}

/// `[3*2^(k-2)+k-1, 2^k+k-2]` and `[2^k+k-1, 3*2^(k-1)+k-1]`.
fn khattar2_members(k: u32, first: usize, second: usize) -> Option<[Member; 2]> {
    let p = pow2(k)?;
    let k64 = k as u64;
    Some([
        (Branch::First, 3 * (p / 4) + k64 - 1, p + k64 - 2, first),
        (Branch::Second, p + k64 - 1, 3 * (p / 2) + k64 - 1, second),
    ])
}

pub fn khattar2_step2_depth(n: usize) -> Result<FormulaResult, FormulaError> {
    lookup("khattar2-step2", n, |k| {
        let k = k as usize;
        khattar2_members(k as u32, 2 * k - 3, 2 * k - 2)
    })
}

/// Step III size; the first interval extends one further to `2^k+k-1`.
pub fn khattar2_sigma(n: usize) -> Result<FormulaResult, FormulaError> {
    lookup("khattar2-sigma", n, |k| {
        let ku = k as usize;
        let mut m = khattar2_members(k, ku, ku + 1)?;
        m[0].2 += 1;
        m[1].1 += 1;
        Some(m)
    })
}

/// `1 + 2*step2 + 3` over the Step II intervals.
pub fn khattar2_total_depth(n: usize) -> Result<FormulaResult, FormulaError> {
    lookup("khattar2-total", n, |k| {
        let k = k as usize;
        khattar2_members(k as u32, 4 * k - 2, 4 * k)
    })
}

/// True iff the formula depth is at least `3 log2 n`, tested as `2^depth >= n^3`.
pub fn khattar2_lower_bound_check(n: usize) -> Result<bool, FormulaError> {
    let d = khattar2_total_depth(n)?.value;
    let n3 = (n as u128).checked_pow(3);
    Ok(match (d, n3) {
        (d, _) if d >= 127 => true,
        (_, None) => false,
        (d, Some(n3)) => (1u128 << d) >= n3,
    })
}

/// `[(m1+P)*2^(k-1)+k-1, m1*2^k+k-2]` and `[m1*2^k+k-1, (m1+P)*2^k+k-1]`
/// with `P = 2^(floor(log2 m1) - 1)`.
fn tradeoff_members(m1: usize, k: u32, first: usize, second: usize) -> Option<[Member; 2]> {
    let f = floor_log2(m1) as u32;
    let p = pow2(f - 1)?;
    let half = pow2(k - 1)?;
    let m1 = m1 as u64;
    let k64 = k as u64;
    let a = (m1 + p).checked_mul(half)?;
    let b = m1.checked_mul(2 * half)?;
    let c = (m1 + p).checked_mul(2 * half)?;
    Some([
        (Branch::First, a + k64 - 1, b + k64 - 2, first),
        (Branch::Second, b + k64 - 1, c + k64 - 1, second),
    ])
}

fn need_m1(m1: usize) -> Result<usize, FormulaError> {
    if m1 < 2 {
        Err(FormulaError::BadM1(m1))
    } else {
        Ok(floor_log2(m1))
    }
}

pub fn tradeoff_step2_depth(n: usize, m1: usize) -> Result<FormulaResult, FormulaError> {
    let f = need_m1(m1)?;
    lookup("tradeoff-step2", n, |k| {
        let ku = k as usize;
        tradeoff_members(m1, k, f + 2 * ku - 3, f + 2 * ku - 2)
    })
}

pub fn tradeoff_sigma(n: usize, m1: usize) -> Result<FormulaResult, FormulaError> {
    need_m1(m1)?;
    lookup("tradeoff-sigma", n, |k| {
        let ku = k as usize;
        let mut m = tradeoff_members(m1, k, ku + m1 - 1, ku + m1)?;
        m[0].2 += 1;
        m[1].1 += 1;
        Some(m)
    })
}

pub fn tradeoff_total_depth(n: usize, m1: usize) -> Result<FormulaResult, FormulaError> {
    let f = need_m1(m1)?;
    lookup("tradeoff-total", n, |k| {
        let ku = k as usize;
        tradeoff_members(m1, k, 2 * f + 4 * ku, 2 * f + 4 * ku + 2)
    })
}

/// `m1*2^k + k - 2 <= 2^(floor(log2 m1) + 2k)`.
pub fn induction_anchor_holds(m1: usize, k: u32) -> bool {
    let lhs = (m1 as u128) * (1u128 << k) + k as u128 - 2;
    let rhs = 1u128 << (floor_log2(m1) as u32 + 2 * k);
    lhs <= rhs
}

/// Formula for the Toffoli depth of a strategy's full circuit.
pub fn formula_depth(
    strategy: Strategy,
    n: usize,
    m1: Option<usize>,
) -> Result<FormulaResult, FormulaError> {
    match strategy {
        Strategy::BinaryTree => Ok(FormulaResult::plain(lower_bound_depth(n), "ceil-log2")),
        Strategy::Khattar1 => {
            if n < 2 {
                return Err(FormulaError::TooSmall(n));
            }
            Ok(FormulaResult::plain(2 * n - 3, "2n-3"))
        }
        Strategy::Khattar2 => khattar2_total_depth(n),
        Strategy::Tradeoff => tradeoff_total_depth(n, m1.unwrap_or(0)),
        Strategy::GidneyLadder => Ok(FormulaResult::plain(
            ceil_log2_third(n) + 1,
            "ceil-log2(n/3)+1",
        )),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Table2Row {
    Gidney,
    Nakanishi,
    Nie,
    Khattar1,
    Khattar2,
    Ours,
}

impl FromStr for Table2Row {
    type Err = FormulaError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "gidney" | "gidney-ladder" => Table2Row::Gidney,
            "nakanishi" => Table2Row::Nakanishi,
            "nie" => Table2Row::Nie,
            "khattar" | "khattar-1anc" => Table2Row::Khattar1,
            "khattar-2anc" => Table2Row::Khattar2,
            "ours" | "tradeoff" => Table2Row::Ours,
            _ => return Err(FormulaError::UnknownRow(s.to_string())),
        })
    }
}

impl From<Strategy> for Option<Table2Row> {
    fn from(s: Strategy) -> Self {
        match s {
            Strategy::BinaryTree => None,
            Strategy::Khattar1 => Some(Table2Row::Khattar1),
            Strategy::Khattar2 => Some(Table2Row::Khattar2),
            Strategy::Tradeoff => Some(Table2Row::Ours),
            Strategy::GidneyLadder => Some(Table2Row::Gidney),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Table2Metrics {
    pub ancilla: usize,
    /// Two-control Toffolis, excluding any CCCX.
    pub toffoli_count: usize,
    pub cccx_count: usize,
    /// The printed count is a lower bound.
    pub count_is_lower_bound: bool,
    pub t_count: usize,
    /// `None` where the printed depth is only approximate and no interval applies.
    pub t_depth: Option<usize>,
}

pub fn table2_metrics(
    row: Table2Row,
    n: usize,
    m1: Option<usize>,
) -> Result<Table2Metrics, FormulaError> {
    if n < 4 {
        return Err(FormulaError::TooSmall(n));
    }
    let base = Table2Metrics {
        ancilla: 0,
        toffoli_count: 2 * n - 3,
        cccx_count: 0,
        count_is_lower_bound: false,
        t_count: 8 * n - 12,
        t_depth: None,
    };
    Ok(match row {
        Table2Row::Gidney | Table2Row::Nakanishi => {
            let nak = row == Table2Row::Nakanishi;
            Table2Metrics {
                ancilla: if nak { n - 1 } else { n - 2 },
                toffoli_count: n - 3,
                cccx_count: 1,
                t_count: 4 * n - 6,
                t_depth: Some(ceil_log2_third(n) + if nak { 2 } else { 6 }),
                ..base
            }
        }
        Table2Row::Nie => Table2Metrics {
            ancilla: 1,
            toffoli_count: 4 * n + 4,
            count_is_lower_bound: true,
            t_count: 16 * n + 16,
            // 20 log2 n, rounded up
            t_depth: Some((20.0 * (n as f64).log2()).ceil() as usize),
            ..base
        },
        Table2Row::Khattar1 => Table2Metrics {
            ancilla: 1,
            t_depth: Some(2 * n - 3),
            ..base
        },
        Table2Row::Khattar2 => Table2Metrics {
            ancilla: 2,
            t_depth: khattar2_total_depth(n).ok().map(|r| r.value),
            ..base
        },
        Table2Row::Ours => {
            let m1 = m1.ok_or(FormulaError::BadM1(0))?;
            need_m1(m1)?;
            Table2Metrics {
                ancilla: m1 + 2,
                toffoli_count: 2 * n - m1 - 3,
                t_count: 8 * n - 4 * m1 - 12,
                t_depth: tradeoff_total_depth(n, m1).ok().map(|r| r.value),
                ..base
            }
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReconRow {
    pub strategy: Strategy,
    pub n: usize,
    pub m1: Option<usize>,
    pub hit: Option<IntervalHit>,
    /// `None` when `n` is outside the formula's domain.
    pub formula_depth: Option<usize>,
    pub measured_depth: usize,
    /// measured minus formula.
    pub delta: Option<i64>,
}

pub fn reconcile(
    strategy: Strategy,
    ns: impl IntoIterator<Item = usize>,
    m1: Option<usize>,
) -> Result<Vec<ReconRow>, SynthError> {
    ns.into_iter()
        .map(|n| {
            let mut spec = StrategySpec::new(strategy, n);
            spec.m1 = m1;
            let (_, report) = synthesize(&spec)?;
            let f = formula_depth(strategy, n, m1).ok();
            let measured = report.toffoli_depth;
            Ok(ReconRow {
                strategy,
                n,
                m1,
                hit: f.and_then(|r| r.hit),
                formula_depth: f.map(|r| r.value),
                measured_depth: measured,
                delta: f.map(|r| measured as i64 - r.value as i64),
            })
        })
        .collect()
}

pub const RECONCILE_HEADER: [&str; 8] = [
    "strategy",
    "n",
    "m1",
    "k",
    "branch",
    "formula_depth",
    "measured_depth",
    "delta",
];

pub fn reconcile_csv(rows: &[ReconRow]) -> String {
    fn opt<T: ToString>(v: Option<T>) -> String {
        v.map(|x| x.to_string()).unwrap_or_default()
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(RECONCILE_HEADER).unwrap();
    for r in rows {
        w.write_record([
            r.strategy.to_string(),
            r.n.to_string(),
            opt(r.m1),
            opt(r.hit.map(|h| h.k)),
            opt(r.hit.map(|h| h.branch)),
            opt(r.formula_depth),
            r.measured_depth.to_string(),
            opt(r.delta),
        ])
        .unwrap();
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}
