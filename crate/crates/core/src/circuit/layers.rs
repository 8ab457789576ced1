use super::{ensure_valid, Circuit, Gate, GateKind, InvalidCircuit};

/// ASAP levels where each gate adds `weight(g)` on top of its busiest operand.
fn asap(c: &Circuit, weight: impl Fn(&Gate) -> usize) -> Vec<usize> {
    let mut front = vec![0usize; c.width];
    c.gates
        .iter()
        .map(|g| {
            let lvl = g.qubits.iter().map(|&q| front[q]).max().unwrap_or(0) + weight(g);
            for &q in &g.qubits {
                front[q] = lvl;
            }
            lvl
        })
        .collect()
}

fn group(levels: &[usize], keep: impl Fn(usize) -> bool) -> Vec<Vec<usize>> {
    let mut layers: Vec<Vec<usize>> = Vec::new();
    for (i, &l) in levels.iter().enumerate() {
        if !keep(i) {
            continue;
        }
        if layers.len() < l {
            layers.resize(l, Vec::new());
        }
        layers[l - 1].push(i);
    }
    layers
}

/// Gate indices of counted Toffolis (plain, and-compute, CCCX) per ASAP layer.
pub fn toffoli_layers(c: &Circuit) -> Result<Vec<Vec<usize>>, InvalidCircuit> {
    ensure_valid(c)?;
    let lv = asap(c, |g| g.is_counted_toffoli() as usize);
    Ok(group(&lv, |i| c.gates[i].is_counted_toffoli()))
}

/// Toffoli depth with and-uncompute gates weighted like any other Toffoli.
pub fn restoration_depth(c: &Circuit) -> Result<usize, InvalidCircuit> {
    ensure_valid(c)?;
    let lv = asap(c, |g| {
        matches!(g.kind, GateKind::Toffoli | GateKind::Cccx) as usize
    });
    Ok(lv.into_iter().max().unwrap_or(0))
}

/// Toffoli depth with each CCCX charged as the two layers of 2-control
/// Toffolis it needs; and-uncompute stays free.
pub fn two_control_depth(c: &Circuit) -> Result<usize, InvalidCircuit> {
    ensure_valid(c)?;
    let lv = asap(c, |g| match g.kind {
        GateKind::Cccx => 2,
        _ => g.is_counted_toffoli() as usize,
    });
    Ok(lv.into_iter().max().unwrap_or(0))
}

pub fn total_depth(c: &Circuit) -> Result<usize, InvalidCircuit> {
    ensure_valid(c)?;
    Ok(asap(c, |_| 1).into_iter().max().unwrap_or(0))
}

pub fn t_layers(c: &Circuit) -> Result<Vec<Vec<usize>>, InvalidCircuit> {
    ensure_valid(c)?;
    let lv = asap(c, |g| g.kind.is_t() as usize);
    Ok(group(&lv, |i| c.gates[i].kind.is_t()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Role;

    #[test]
    fn disjoint_pair_then_dependent() {
        let mut c = Circuit::new(vec![Role::Control; 7]);
        c.extend([Gate::ccx(0, 1, 4), Gate::ccx(2, 3, 5), Gate::ccx(4, 5, 6)]);
        assert_eq!(toffoli_layers(&c).unwrap(), vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn x_gates_are_free_but_ordered() {
        let mut c = Circuit::new(vec![Role::Control; 3]);
        c.extend([Gate::ccx(0, 1, 2), Gate::x(0), Gate::ccx(0, 1, 2)]);
        assert_eq!(toffoli_layers(&c).unwrap().len(), 2);
        assert_eq!(total_depth(&c).unwrap(), 3);
    }

    #[test]
    fn invalid_circuit_rejected() {
        let mut c = Circuit::new(vec![Role::Control; 2]);
        c.push(Gate::ccx(0, 1, 2));
        assert!(toffoli_layers(&c).is_err());
    }

    #[test]
    fn cccx_costs_two_control_layers() {
        let mut c = Circuit::new(vec![Role::Control; 5]);
        c.extend([Gate::ccx(0, 1, 2), Gate::cccx(2, 3, 4, 0)]);
        assert_eq!(toffoli_layers(&c).unwrap().len(), 2);
        assert_eq!(two_control_depth(&c).unwrap(), 3);
    }
}
