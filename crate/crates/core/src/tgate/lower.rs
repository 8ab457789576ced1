//! Clifford+Toffoli to Clifford+T with T-count and T-depth accounting.

use super::{entry, CatalogEntry, EntryId, TgateError};
use crate::circuit::{
    ensure_valid, resource_report, Circuit, Flavor, Gate, GateKind, ResourceReport, Role,
};

/// T cost of the merged CCCX (the gidney ladder's final gate).
pub const CCCX_T_COUNT: usize = 6;
pub const CCCX_T_DEPTH: usize = 6;

/// Catalog entry per Toffoli flavor. And-uncompute is always the
/// measurement-based erasure with no T cost.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Selection {
    pub plain: EntryId,
    pub and_compute: EntryId,
}

impl Selection {
    pub fn uniform(id: EntryId) -> Selection {
        Selection {
            plain: id,
            and_compute: id,
        }
    }
}

impl Default for Selection {
    fn default() -> Selection {
        Selection {
            plain: EntryId::JonesTd1,
            and_compute: EntryId::GidneyAnd,
        }
    }
}

/// Copies `e`'s template onto `(a, b, t)` with `helpers` as its ancillae.
fn expand(e: &CatalogEntry, tmpl: &Circuit, g: &Gate, helpers: &[usize], out: &mut Circuit) {
    let map = |q: usize| match q {
        0..=2 => g.qubits[q],
        _ => helpers[q - 3],
    };
    debug_assert!(helpers.len() >= e.ancilla);
    out.extend(tmpl.gates.iter().map(|tg| Gate {
        kind: tg.kind,
        qubits: tg.qubits.iter().map(|&q| map(q)).collect(),
        flavor: Flavor::Plain,
    }));
}

/// Lowers every Toffoli with the selected entry. Unitary entries are expanded
/// into gates; measurement-based ones and CCCX stay as marker gates whose
/// cost enters the report. Helper ancillae are appended once and shared.
pub fn lower(c: &Circuit, sel: Selection) -> Result<(Circuit, ResourceReport), TgateError> {
    ensure_valid(c)?;
    let pick = |g: &Gate| -> Option<&'static CatalogEntry> {
        match (g.kind, g.flavor) {
            (GateKind::Toffoli, Flavor::Plain) => Some(entry(sel.plain)),
            (GateKind::Toffoli, Flavor::AndCompute) => Some(entry(sel.and_compute)),
            _ => None,
        }
    };
    let helpers_needed = c
        .gates
        .iter()
        .filter_map(pick)
        .map(|e| e.ancilla)
        .max()
        .unwrap_or(0);
    let helpers: Vec<usize> = (c.width..c.width + helpers_needed).collect();
    let mut roles = c.roles.clone();
    roles.extend(std::iter::repeat_n(Role::Ancilla, helpers_needed));
    let mut out = Circuit::new(roles).with_label(format!("{} lowered", c.label).trim().to_string());

    let mut t_count = 0;
    let mut shared_layer = false;
    let mut front = vec![0usize; c.width];
    let mut t_depth = 0;
    for g in &c.gates {
        let (cost, weight) = if let Some(e) = pick(g) {
            shared_layer |= e.effective_t_depth_one;
            match &e.template {
                Some(tmpl) => expand(e, tmpl, g, &helpers, &mut out),
                None => out.push(g.clone()),
            }
            (e.t_count, e.t_depth_weight())
        } else {
            out.push(g.clone());
            match g.kind {
                GateKind::Cccx => (CCCX_T_COUNT, CCCX_T_DEPTH),
                GateKind::T | GateKind::Tdg => (1, 1),
                _ => (0, 0),
            }
        };
        t_count += cost;
        let lvl = g.qubits.iter().map(|&q| front[q]).max().unwrap_or(0) + weight;
        for &q in &g.qubits {
            front[q] = lvl;
        }
        t_depth = t_depth.max(lvl);
    }
    if shared_layer {
        t_depth += 1;
    }
    let mut report = resource_report(&out)?;
    report.t_count = Some(t_count);
    report.t_depth = Some(t_depth);
    Ok((out, report))
}
