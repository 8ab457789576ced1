//! Layer-by-layer growth of conditionally clean accumulation rows, plus the
//! single-helper ladder used for the small MCT at the bottom of the construction.
//!
//! Every raw control has a rank. A free qubit (a control that has been consumed
//! and flipped) remembers `cond`, the highest rank its cleanness depends on. A
//! Toffoli over values whose lowest leaf rank is `lo` may only target a free
//! qubit with `cond < lo`: if any leaf is 0, the lowest-ranked zero leaf has a
//! clean target on every step of its path, so the row result is 0.

use super::PlanError;
use crate::circuit::{Gate, QubitId};

#[derive(Clone, Copy, Debug)]
struct Val {
    q: QubitId,
    ready: usize,
    lo: usize,
    hi: usize,
    cond: usize,
}

#[derive(Clone, Copy, Debug)]
struct Free {
    q: QubitId,
    avail: usize,
    cond: usize,
}

pub(crate) struct Grown {
    pub gates: Vec<Gate>,
    /// Final qubit of each row with the layer at which it became ready.
    pub ends: Vec<(QubitId, usize)>,
}

/// `rows[r]` lists `(qubit, ready_layer)`; row `r` fires no earlier than
/// `starts[r]`. `pool` holds `(qubit, available_after_layer, cond)`.
pub(crate) fn grow(
    rows: &[Vec<(QubitId, usize)>],
    starts: &[usize],
    pool: &[(QubitId, usize, usize)],
    rank: &[usize],
) -> Result<Grown, PlanError> {
    let mut free: Vec<Free> = pool
        .iter()
        .map(|&(q, avail, cond)| Free { q, avail, cond })
        .collect();
    let mut state: Vec<Vec<Val>> = rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|&(q, ready)| {
                    let r = rank[q];
                    Val {
                        q,
                        ready,
                        lo: r,
                        hi: r,
                        cond: r,
                    }
                })
                .collect()
        })
        .collect();
    let budget = rows.iter().map(Vec::len).sum::<usize>() * 4
        + starts.iter().copied().max().unwrap_or(0)
        + 64;
    let mut gates = Vec::new();
    let mut layer = 0;
    while state.iter().any(|v| v.len() > 1) {
        layer += 1;
        if layer > budget {
            return Err(PlanError::Stall { layer });
        }
        let mut consumed: Vec<Val> = Vec::new();
        for (r, vals) in state.iter_mut().enumerate() {
            if vals.len() <= 1 || layer < starts[r] {
                continue;
            }
            let (mut ready, wait): (Vec<Val>, Vec<Val>) =
                vals.iter().partition(|v| v.ready < layer);
            ready.sort_by_key(|v| (v.ready, v.lo));
            let even = ready.len() / 2 * 2;
            let mut left: Vec<Val> = ready.split_off(even);
            ready.sort_by_key(|v| v.lo);
            let mut made = Vec::new();
            for pair in ready.chunks(2) {
                let (x, y) = (pair[0], pair[1]);
                let lo = x.lo.min(y.lo);
                let hi = x.hi.max(y.hi);
                // highest cond first, then the longest-idle qubit
                let mut pick: Option<usize> = None;
                for (i, f) in free.iter().enumerate() {
                    if f.avail >= layer || f.cond >= lo {
                        continue;
                    }
                    let better = match pick {
                        None => true,
                        Some(p) => {
                            let b = free[p];
                            f.cond > b.cond || (f.cond == b.cond && f.avail < b.avail)
                        }
                    };
                    if better {
                        pick = Some(i);
                    }
                }
                let Some(p) = pick else {
                    left.extend([x, y]);
                    continue;
                };
                let t = free.remove(p);
                gates.push(Gate::ccx(x.q, y.q, t.q));
                consumed.extend([x, y]);
                made.push(Val {
                    q: t.q,
                    ready: layer,
                    lo,
                    hi,
                    cond: hi.max(t.cond),
                });
            }
            left.extend(made);
            left.extend(wait);
            *vals = left;
        }
        for v in consumed {
            gates.push(Gate::x(v.q));
            free.push(Free {
                q: v.q,
                avail: layer,
                cond: v.cond,
            });
        }
    }
    Ok(Grown {
        gates,
        ends: state.iter().map(|v| (v[0].q, v[0].ready)).collect(),
    })
}

/// Computes AND(`ctrls`) into `t` with `h` as a helper; both start conditionally clean.
fn accumulate(ctrls: &[QubitId], t: QubitId, h: QubitId, out: &mut Vec<Gate>) {
    match ctrls {
        [a, b] => out.push(Gate::ccx(*a, *b, t)),
        [a, b, c] => {
            out.push(Gate::ccx(*a, *b, h));
            out.push(Gate::ccx(h, *c, t));
        }
        [a, b, rest @ ..] => {
            out.extend([Gate::ccx(*a, *b, h), Gate::x(*a), Gate::x(*b)]);
            accumulate(rest, *b, *a, out);
            out.push(Gate::ccx(h, *b, t));
        }
        _ => unreachable!("accumulate needs at least two controls"),
    }
}

/// Reduces `ins` (at least 2) to two qubits whose AND equals AND(`ins`),
/// using the single clean ancilla `b`. Returns the compute gates and the pair.
pub(crate) fn ladder(ins: &[QubitId], b: QubitId) -> (Vec<Gate>, QubitId, QubitId) {
    assert!(ins.len() >= 2, "ladder needs at least two inputs");
    if ins.len() == 2 {
        return (Vec::new(), ins[0], ins[1]);
    }
    let mut gates = vec![Gate::ccx(ins[0], ins[1], b)];
    let rest = &ins[2..];
    if rest.len() == 1 {
        return (gates, b, rest[0]);
    }
    gates.extend([Gate::x(ins[0]), Gate::x(ins[1])]);
    accumulate(rest, ins[1], ins[0], &mut gates);
    (gates, b, ins[1])
}

/// The small MCT over `ins` (sorted by ready layer) with one or two clean ancillae.
pub(crate) fn bottom(
    ins: &[(QubitId, usize)],
    anc: &[QubitId],
) -> Result<(Vec<Gate>, QubitId, QubitId), PlanError> {
    let qs: Vec<QubitId> = ins.iter().map(|&(q, _)| q).collect();
    if qs.len() == 2 {
        return Ok((Vec::new(), qs[0], qs[1]));
    }
    if anc.len() == 1 || ins.len() <= 3 {
        return Ok(ladder(&qs, anc[0]));
    }
    let (b1, b2) = (anc[0], anc[1]);
    let t0 = ins[0].1.max(ins[1].1) + 1;
    let mut gates = vec![Gate::ccx(qs[0], qs[1], b1), Gate::x(qs[0]), Gate::x(qs[1])];

    let width = qs.iter().chain([&b1, &b2]).copied().max().unwrap() + 1;
    let mut rank = vec![usize::MAX; width];
    for (i, &q) in qs.iter().enumerate() {
        rank[q] = i;
    }
    let rows: Vec<Vec<(QubitId, usize)>> = ins[2..].chunks(2).map(<[_]>::to_vec).collect();
    let starts = vec![1; rows.len()];
    let grown = grow(&rows, &starts, &[(qs[0], t0, 0), (qs[1], t0, 1)], &rank)?;
    gates.extend(grown.gates);

    let mut tail = vec![(b1, t0)];
    tail.extend(grown.ends);
    tail.sort_by_key(|&(_, r)| r);
    let tq: Vec<QubitId> = tail.iter().map(|&(q, _)| q).collect();
    let (g, x, y) = ladder(&tq, b2);
    gates.extend(g);
    Ok((gates, x, y))
}
