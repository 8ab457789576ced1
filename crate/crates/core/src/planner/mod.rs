//! Row schedules for conditionally clean ancilla constructions and their
//! conversion into circuits.
//!
//! Step I ANDs `2*m1` controls pairwise into `m1` clean ancillae and flips those
//! controls so they become conditionally clean. Step II accumulates the
//! remaining controls in rows that start one layer apart, each row targeting
//! conditionally clean qubits. Step III is a small MCT over the Step I
//! ancillae and the row ends using the `m2` reserved ancillae. Steps IV and V
//! mirror II and I.

mod engine;

use crate::circuit::{reverse, toffoli_layers, Circuit, Flavor, Gate, QubitId, Role};
use std::fmt;

pub(crate) use engine::ladder;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PlanError {
    #[error("m1 must be at least 1")]
    ZeroM1,
    #[error("n = {n} is too small for m1 = {m1} (need n >= {})", 2 * m1 + 2)]
    TooSmall { n: usize, m1: usize },
    #[error("m2 must be 1 or 2, got {0}")]
    BadM2(usize),
    #[error("layout does not fit the plan: {0}")]
    Layout(String),
    #[error("row growth stalled at layer {layer}")]
    Stall { layer: usize },
}

/// One accumulation row of Step II.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    pub start_layer: usize,
    /// Active qubit count per layer, ending at 1.
    pub widths: Vec<usize>,
    /// Layer positions where one extra raw control joins the row.
    pub injections: Vec<usize>,
}

impl Row {
    fn with_raw(start_layer: usize, raw: usize) -> Row {
        let (first, injections) = if raw >= 3 && raw % 2 == 1 {
            (raw - 1, vec![0])
        } else {
            (raw, vec![])
        };
        let mut widths = vec![first];
        let mut w = first;
        let mut i = 0;
        while w + injections.contains(&i) as usize > 1 {
            w = (w + injections.contains(&i) as usize).div_ceil(2);
            widths.push(w);
            i += 1;
        }
        Row {
            start_layer,
            widths,
            injections,
        }
    }

    /// Raw controls consumed by the row.
    pub fn raw_count(&self) -> usize {
        self.widths[0] + self.injections.len()
    }

    /// Layer of the row's last Toffoli if nothing stalls.
    pub fn nominal_end(&self) -> usize {
        self.start_layer + self.widths.len() - 2
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct StepDepths {
    pub d1: usize,
    pub d2: usize,
    /// Whatever the full circuit needs beyond the other four steps.
    pub d3_effective: usize,
    pub d4: usize,
    pub d5: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Plan {
    pub n: usize,
    pub m1: usize,
    /// Ancillae reserved for Step III (0 when it is a single Toffoli).
    pub m2: usize,
    pub rows: Vec<Row>,
    /// Number of Step II rows.
    pub k: usize,
    /// Controls of the Step III MCT.
    pub sigma: usize,
    pub step_depths: StepDepths,
    pub total_depth: usize,
}

impl Plan {
    pub fn ancilla_count(&self) -> usize {
        self.m1 + self.m2
    }
}

/// Row sizes: the first row takes up to `2*m1 + 1` raws, each later row up to
/// twice the previous budget plus one.
fn doubling_rows(raw: usize, m1: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut left = raw;
    let mut w = 2 * m1;
    while left > 0 {
        let s = (w + 1).min(left);
        out.push(s);
        left -= s;
        w *= 2;
    }
    out
}

/// Qubit assignment for [`plan_to_circuit`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    pub controls: Vec<QubitId>,
    /// Step I ancillae first, then the Step III reserve.
    pub ancillae: Vec<QubitId>,
    pub target: QubitId,
}

impl Layout {
    /// Controls `0..n`, ancillae next, target last.
    pub fn standard(n: usize, ancillae: usize) -> Layout {
        Layout {
            controls: (0..n).collect(),
            ancillae: (n..n + ancillae).collect(),
            target: n + ancillae,
        }
    }

    fn width(&self) -> usize {
        self.controls
            .iter()
            .chain(&self.ancillae)
            .chain([&self.target])
            .max()
            .map_or(0, |m| m + 1)
    }
}

/// Default `m2`: one reserved ancilla for the two-ancilla scheme, two otherwise.
pub fn plan_conditionally_clean(n: usize, m1: usize) -> Result<Plan, PlanError> {
    plan_with_m2(n, m1, if m1 == 1 { 1 } else { 2 })
}

pub fn plan_with_m2(n: usize, m1: usize, m2: usize) -> Result<Plan, PlanError> {
    if m1 == 0 {
        return Err(PlanError::ZeroM1);
    }
    if n < 2 * m1 + 2 {
        return Err(PlanError::TooSmall { n, m1 });
    }
    if !(1..=2).contains(&m2) {
        return Err(PlanError::BadM2(m2));
    }
    let rows: Vec<Row> = doubling_rows(n - 2 * m1, m1)
        .into_iter()
        .enumerate()
        .map(|(r, s)| Row::with_raw(r + 2, s))
        .collect();
    // a two-input Step III is the centre Toffoli itself and needs no reserve
    let m2 = if rows.len() + m1 == 2 { 0 } else { m2 };
    let mut plan = Plan {
        n,
        m1,
        m2,
        k: rows.len(),
        sigma: rows.len() + m1,
        rows,
        step_depths: StepDepths::default(),
        total_depth: 0,
    };
    let parts = build(&plan, &Layout::standard(n, m1 + m2))?;
    let (steps, total) = measure(&parts, n + m1 + m2 + 1);
    plan.step_depths = steps;
    plan.total_depth = total;
    Ok(plan)
}

/// Total measured Toffoli depth and its per-step split.
pub fn plan_depth(plan: &Plan) -> (usize, StepDepths) {
    (plan.total_depth, plan.step_depths)
}

struct Parts {
    step1: Vec<Gate>,
    step2: Vec<Gate>,
    step3: Vec<Gate>,
    center: Gate,
}

impl Parts {
    fn compute(&self) -> impl DoubleEndedIterator<Item = &Gate> + '_ {
        self.step1.iter().chain(&self.step2).chain(&self.step3)
    }
}

fn build(plan: &Plan, layout: &Layout) -> Result<Parts, PlanError> {
    let (n, m1) = (plan.n, plan.m1);
    if layout.controls.len() != n {
        return Err(PlanError::Layout(format!(
            "{} controls for n = {n}",
            layout.controls.len()
        )));
    }
    if layout.ancillae.len() != m1 + plan.m2 {
        return Err(PlanError::Layout(format!(
            "{} ancillae, plan needs {}",
            layout.ancillae.len(),
            m1 + plan.m2
        )));
    }
    let raws: usize = plan.rows.iter().map(Row::raw_count).sum();
    if 2 * m1 + raws != n {
        return Err(PlanError::Layout(format!(
            "rows consume {} controls, expected {}",
            2 * m1 + raws,
            n
        )));
    }
    let width = layout.width();
    let mut seen = vec![false; width];
    for &q in layout
        .controls
        .iter()
        .chain(&layout.ancillae)
        .chain([&layout.target])
    {
        if std::mem::replace(&mut seen[q], true) {
            return Err(PlanError::Layout(format!("qubit {q} assigned twice")));
        }
    }

    let c = &layout.controls;
    let (a1, a2) = layout.ancillae.split_at(m1);
    let flavor = if m1 >= 2 {
        Flavor::AndCompute
    } else {
        Flavor::Plain
    };
    let mut step1: Vec<Gate> = (0..m1)
        .map(|j| Gate::ccx(c[2 * j], c[2 * j + 1], a1[j]).with_flavor(flavor))
        .collect();
    step1.extend(c[..2 * m1].iter().map(|&q| Gate::x(q)));

    let mut rank = vec![usize::MAX; width];
    for (i, &q) in c.iter().enumerate() {
        rank[q] = i;
    }
    let mut rows = Vec::with_capacity(plan.rows.len());
    let mut next = 2 * m1;
    for row in &plan.rows {
        let s = row.raw_count();
        rows.push(
            c[next..next + s]
                .iter()
                .map(|&q| (q, row.start_layer - 1))
                .collect::<Vec<_>>(),
        );
        next += s;
    }
    let starts: Vec<usize> = plan.rows.iter().map(|r| r.start_layer).collect();
    let pool: Vec<(QubitId, usize, usize)> = c[..2 * m1].iter().map(|&q| (q, 1, rank[q])).collect();
    let grown = engine::grow(&rows, &starts, &pool, &rank)?;

    let mut ins: Vec<(QubitId, usize)> = a1.iter().map(|&a| (a, 1)).collect();
    ins.extend(grown.ends);
    ins.sort_by_key(|&(_, r)| r);
    let (step3, x, y) = engine::bottom(&ins, a2)?;

    Ok(Parts {
        step1,
        step2: grown.gates,
        step3,
        center: Gate::ccx(x, y, layout.target),
    })
}

fn depth_of(gates: impl IntoIterator<Item = Gate>, width: usize) -> usize {
    let mut c = Circuit::new(vec![Role::Control; width]);
    c.extend(gates);
    toffoli_layers(&c).map(|l| l.len()).unwrap_or(0)
}

fn measure(parts: &Parts, width: usize) -> (StepDepths, usize) {
    let total = depth_of(assemble(parts), width);
    let inv = |g: &[Gate]| g.iter().rev().map(Gate::inverse).collect::<Vec<_>>();
    let d1 = depth_of(parts.step1.clone(), width);
    let d2 = depth_of(parts.step2.clone(), width);
    let d4 = depth_of(inv(&parts.step2), width);
    let d5 = depth_of(inv(&parts.step1), width);
    let d3_effective = total.saturating_sub(d1 + d2 + d4 + d5);
    (
        StepDepths {
            d1,
            d2,
            d3_effective,
            d4,
            d5,
        },
        total,
    )
}

fn assemble(parts: &Parts) -> Vec<Gate> {
    let compute: Vec<Gate> = parts.compute().cloned().collect();
    let mut all = compute.clone();
    all.push(parts.center.clone());
    all.extend(compute.iter().rev().map(Gate::inverse));
    all
}

pub fn plan_to_circuit(plan: &Plan, layout: &Layout) -> Result<Circuit, PlanError> {
    let parts = build(plan, layout)?;
    let width = layout.width();
    let mut roles = vec![Role::Ancilla; width];
    for &q in &layout.controls {
        roles[q] = Role::Control;
    }
    roles[layout.target] = Role::Target;
    let mut c = Circuit::new(roles);
    c.extend(assemble(&parts));
    Ok(c)
}

/// The n-MCT over `n >= 3` controls with one clean ancilla (count and depth 2n-3).
pub fn one_ancilla_ladder(layout: &Layout) -> Circuit {
    let (compute, x, y) = ladder(&layout.controls, layout.ancillae[0]);
    let width = layout.width();
    let mut roles = vec![Role::Ancilla; width];
    for &q in &layout.controls {
        roles[q] = Role::Control;
    }
    roles[layout.target] = Role::Target;
    let mut c = Circuit::new(roles);
    c.extend(compute.iter().cloned());
    c.push(Gate::ccx(x, y, layout.target));
    let mut tmp = Circuit::new(vec![Role::Control; width]);
    tmp.extend(compute);
    c.extend(reverse(&tmp).gates);
    c
}

impl fmt::Display for Plan {
    /// Rows schematic: Step I on the first line, then one line per row
    /// indented by its start layer, `+1` marking injected raw controls.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "n={} m1={} m2={} k={} sigma={}",
            self.n, self.m1, self.m2, self.k, self.sigma
        )?;
        writeln!(f, "L1  {} -> {}", 2 * self.m1, self.m1)?;
        for row in &self.rows {
            let cells: Vec<String> = row
                .widths
                .iter()
                .enumerate()
                .map(|(i, w)| {
                    if row.injections.contains(&i) {
                        format!("{w}+1")
                    } else {
                        w.to_string()
                    }
                })
                .collect();
            writeln!(
                f,
                "L{:<2} {}{}",
                row.start_layer,
                "     ".repeat(row.start_layer - 1),
                cells.join(" -> ")
            )?;
        }
        let d = self.step_depths;
        write!(
            f,
            "depths I={} II={} III={} IV={} V={} total={}",
            d.d1, d.d2, d.d3_effective, d.d4, d.d5, self.total_depth
        )
    }
}
