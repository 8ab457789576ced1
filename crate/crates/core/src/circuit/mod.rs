//! Gate-level circuit IR: gates, roles, validation, layering and resource reports.

mod layers;
mod text;

pub use layers::{restoration_depth, t_layers, toffoli_layers, total_depth, two_control_depth};
pub use text::{parse, serialize, ParseError};

use std::fmt;

pub type QubitId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    Control,
    Target,
    Ancilla,
}

impl Role {
    pub fn as_char(self) -> char {
        match self {
            Role::Control => 'c',
            Role::Target => 't',
            Role::Ancilla => 'a',
        }
    }

    pub fn from_char(c: char) -> Option<Role> {
        match c {
            'c' => Some(Role::Control),
            't' => Some(Role::Target),
            'a' => Some(Role::Ancilla),
            _ => None,
        }
    }
}

/// How a two-control Toffoli is meant to be realised after lowering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Flavor {
    #[default]
    Plain,
    /// Computes the AND of its controls into a target known to be |0>.
    AndCompute,
    /// Measurement-based erasure of a previously computed AND.
    AndUncompute,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GateKind {
    X,
    Cnot,
    Toffoli,
    Cccx,
    H,
    S,
    Sdg,
    T,
    Tdg,
    Z,
    Cz,
}

impl GateKind {
    pub fn arity(self) -> usize {
        match self {
            GateKind::X
            | GateKind::H
            | GateKind::S
            | GateKind::Sdg
            | GateKind::T
            | GateKind::Tdg
            | GateKind::Z => 1,
            GateKind::Cnot | GateKind::Cz => 2,
            GateKind::Toffoli => 3,
            GateKind::Cccx => 4,
        }
    }

    /// Permutes computational basis states.
    pub fn is_classical(self) -> bool {
        matches!(
            self,
            GateKind::X | GateKind::Cnot | GateKind::Toffoli | GateKind::Cccx
        )
    }

    pub fn is_clifford(self) -> bool {
        matches!(
            self,
            GateKind::X
                | GateKind::Cnot
                | GateKind::H
                | GateKind::S
                | GateKind::Sdg
                | GateKind::Z
                | GateKind::Cz
        )
    }

    pub fn is_t(self) -> bool {
        matches!(self, GateKind::T | GateKind::Tdg)
    }
}

/// A gate; for controlled kinds the target is the last operand.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gate {
    pub kind: GateKind,
    pub qubits: Vec<QubitId>,
    pub flavor: Flavor,
}

impl Gate {
    pub fn new(kind: GateKind, qubits: Vec<QubitId>) -> Gate {
        Gate {
            kind,
            qubits,
            flavor: Flavor::Plain,
        }
    }

    pub fn x(q: QubitId) -> Gate {
        Gate::new(GateKind::X, vec![q])
    }
    pub fn cnot(c: QubitId, t: QubitId) -> Gate {
        Gate::new(GateKind::Cnot, vec![c, t])
    }
    pub fn ccx(a: QubitId, b: QubitId, t: QubitId) -> Gate {
        Gate::new(GateKind::Toffoli, vec![a, b, t])
    }
    pub fn and_compute(a: QubitId, b: QubitId, t: QubitId) -> Gate {
        Gate::ccx(a, b, t).with_flavor(Flavor::AndCompute)
    }
    pub fn and_uncompute(a: QubitId, b: QubitId, t: QubitId) -> Gate {
        Gate::ccx(a, b, t).with_flavor(Flavor::AndUncompute)
    }
    pub fn cccx(a: QubitId, b: QubitId, c: QubitId, t: QubitId) -> Gate {
        Gate::new(GateKind::Cccx, vec![a, b, c, t])
    }
    pub fn h(q: QubitId) -> Gate {
        Gate::new(GateKind::H, vec![q])
    }
    pub fn s(q: QubitId) -> Gate {
        Gate::new(GateKind::S, vec![q])
    }
    pub fn sdg(q: QubitId) -> Gate {
        Gate::new(GateKind::Sdg, vec![q])
    }
    pub fn t(q: QubitId) -> Gate {
        Gate::new(GateKind::T, vec![q])
    }
    pub fn tdg(q: QubitId) -> Gate {
        Gate::new(GateKind::Tdg, vec![q])
    }
    pub fn z(q: QubitId) -> Gate {
        Gate::new(GateKind::Z, vec![q])
    }
    pub fn cz(a: QubitId, b: QubitId) -> Gate {
        Gate::new(GateKind::Cz, vec![a, b])
    }

    pub fn with_flavor(mut self, flavor: Flavor) -> Gate {
        self.flavor = flavor;
        self
    }

    pub fn target(&self) -> QubitId {
        *self.qubits.last().expect("gate without operands")
    }

    pub fn controls(&self) -> &[QubitId] {
        match self.kind {
            GateKind::Cnot | GateKind::Toffoli | GateKind::Cccx => {
                &self.qubits[..self.qubits.len() - 1]
            }
            _ => &[],
        }
    }

    /// Counts toward Toffoli count and depth.
    pub fn is_counted_toffoli(&self) -> bool {
        match self.kind {
            GateKind::Toffoli => self.flavor != Flavor::AndUncompute,
            GateKind::Cccx => true,
            _ => false,
        }
    }

    pub fn is_and_uncompute(&self) -> bool {
        self.kind == GateKind::Toffoli && self.flavor == Flavor::AndUncompute
    }

    pub fn inverse(&self) -> Gate {
        let kind = match self.kind {
            GateKind::S => GateKind::Sdg,
            GateKind::Sdg => GateKind::S,
            GateKind::T => GateKind::Tdg,
            GateKind::Tdg => GateKind::T,
            k => k,
        };
        let flavor = match self.flavor {
            Flavor::Plain => Flavor::Plain,
            Flavor::AndCompute => Flavor::AndUncompute,
            Flavor::AndUncompute => Flavor::AndCompute,
        };
        Gate {
            kind,
            qubits: self.qubits.clone(),
            flavor,
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(text::mnemonic(self))?;
        for q in &self.qubits {
            write!(f, " {q}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Circuit {
    pub width: usize,
    pub roles: Vec<Role>,
    pub gates: Vec<Gate>,
    pub label: String,
}

impl Circuit {
    pub fn new(roles: Vec<Role>) -> Circuit {
        Circuit {
            width: roles.len(),
            roles,
            gates: Vec::new(),
            label: String::new(),
        }
    }

    /// `n` controls, then `ancillae` ancillas, then the target.
    pub fn mct_layout(n: usize, ancillae: usize) -> Circuit {
        let mut roles = vec![Role::Control; n];
        roles.extend(std::iter::repeat_n(Role::Ancilla, ancillae));
        roles.push(Role::Target);
        Circuit::new(roles)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Circuit {
        self.label = label.into();
        self
    }

    pub fn push(&mut self, g: Gate) {
        self.gates.push(g);
    }

    pub fn extend<I: IntoIterator<Item = Gate>>(&mut self, gates: I) {
        self.gates.extend(gates);
    }

    pub fn qubits_with(&self, role: Role) -> Vec<QubitId> {
        (0..self.width).filter(|&q| self.roles[q] == role).collect()
    }

    pub fn controls(&self) -> Vec<QubitId> {
        self.qubits_with(Role::Control)
    }

    pub fn ancillae(&self) -> Vec<QubitId> {
        self.qubits_with(Role::Ancilla)
    }

    pub fn target(&self) -> Option<QubitId> {
        self.roles.iter().position(|&r| r == Role::Target)
    }

    pub fn is_classical(&self) -> bool {
        self.gates.iter().all(|g| g.kind.is_classical())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    RolesLength {
        width: usize,
        roles: usize,
    },
    TargetCount {
        found: usize,
    },
    Arity {
        gate: usize,
        expected: usize,
        found: usize,
    },
    DuplicateOperand {
        gate: usize,
        qubit: QubitId,
    },
    OutOfRange {
        gate: usize,
        qubit: QubitId,
    },
    FlavorOnNonToffoli {
        gate: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::RolesLength { width, roles } => {
                write!(f, "{roles} roles for width {width}")
            }
            Violation::TargetCount { found } => write!(f, "{found} target qubits, expected 1"),
            Violation::Arity {
                gate,
                expected,
                found,
            } => write!(f, "gate {gate}: {found} operands, expected {expected}"),
            Violation::DuplicateOperand { gate, qubit } => {
                write!(f, "gate {gate}: qubit {qubit} used twice")
            }
            Violation::OutOfRange { gate, qubit } => {
                write!(f, "gate {gate}: qubit {qubit} out of range")
            }
            Violation::FlavorOnNonToffoli { gate } => {
                write!(f, "gate {gate}: AND flavor on a non-Toffoli gate")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid circuit: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
pub struct InvalidCircuit(pub Vec<Violation>);

pub fn validate(c: &Circuit) -> Vec<Violation> {
    let mut out = Vec::new();
    if c.roles.len() != c.width {
        out.push(Violation::RolesLength {
            width: c.width,
            roles: c.roles.len(),
        });
    }
    let targets = c.roles.iter().filter(|&&r| r == Role::Target).count();
    if targets > 1 {
        out.push(Violation::TargetCount { found: targets });
    }
    for (i, g) in c.gates.iter().enumerate() {
        if g.qubits.len() != g.kind.arity() {
            out.push(Violation::Arity {
                gate: i,
                expected: g.kind.arity(),
                found: g.qubits.len(),
            });
        }
        for (j, &q) in g.qubits.iter().enumerate() {
            if q >= c.width {
                out.push(Violation::OutOfRange { gate: i, qubit: q });
            }
            if g.qubits[..j].contains(&q) {
                out.push(Violation::DuplicateOperand { gate: i, qubit: q });
            }
        }
        if g.flavor != Flavor::Plain && g.kind != GateKind::Toffoli {
            out.push(Violation::FlavorOnNonToffoli { gate: i });
        }
    }
    out
}

pub fn ensure_valid(c: &Circuit) -> Result<(), InvalidCircuit> {
    let v = validate(c);
    if v.is_empty() {
        Ok(())
    } else {
        Err(InvalidCircuit(v))
    }
}

/// Reversed gate order with every gate inverted. AND flavors swap.
pub fn reverse(c: &Circuit) -> Circuit {
    Circuit {
        width: c.width,
        roles: c.roles.clone(),
        gates: c.gates.iter().rev().map(Gate::inverse).collect(),
        label: c.label.clone(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ResourceReport {
    pub width: usize,
    pub ancilla_count: usize,
    /// Plain and and-compute Toffolis plus CCCX gates.
    pub toffoli_count: usize,
    pub and_uncompute_count: usize,
    pub cccx_count: usize,
    pub toffoli_depth: usize,
    /// Toffoli depth when and-uncompute gates also occupy a layer.
    pub restoration_depth: usize,
    pub clifford_count: usize,
    pub total_depth: usize,
    pub t_count: Option<usize>,
    pub t_depth: Option<usize>,
}

pub fn resource_report(c: &Circuit) -> Result<ResourceReport, InvalidCircuit> {
    ensure_valid(c)?;
    let mut r = ResourceReport {
        width: c.width,
        ancilla_count: c.ancillae().len(),
        ..Default::default()
    };
    let mut has_toffoli = false;
    let mut t_count = 0;
    for g in &c.gates {
        if g.is_counted_toffoli() {
            r.toffoli_count += 1;
        }
        if g.is_and_uncompute() {
            r.and_uncompute_count += 1;
        }
        match g.kind {
            GateKind::Cccx => r.cccx_count += 1,
            GateKind::Toffoli => {}
            k if k.is_clifford() => r.clifford_count += 1,
            k if k.is_t() => t_count += 1,
            _ => {}
        }
        has_toffoli |= matches!(g.kind, GateKind::Toffoli | GateKind::Cccx);
    }
    r.toffoli_depth = toffoli_layers(c)?.len();
    r.restoration_depth = restoration_depth(c)?;
    r.total_depth = total_depth(c)?;
    if !has_toffoli && t_count > 0 {
        r.t_count = Some(t_count);
        r.t_depth = Some(t_layers(c)?.len());
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w3() -> Circuit {
        Circuit::new(vec![Role::Control, Role::Control, Role::Target])
    }

    #[test]
    fn well_formed_toffoli_has_no_violations() {
        let mut c = w3();
        c.push(Gate::ccx(0, 1, 2));
        assert!(validate(&c).is_empty());
    }

    #[test]
    fn duplicate_operand_reported() {
        let mut c = w3();
        c.push(Gate::ccx(0, 0, 2));
        assert_eq!(
            validate(&c),
            vec![Violation::DuplicateOperand { gate: 0, qubit: 0 }]
        );
    }

    #[test]
    fn out_of_range_reported() {
        let mut c = w3();
        c.push(Gate::cnot(0, 5));
        assert_eq!(
            validate(&c),
            vec![Violation::OutOfRange { gate: 0, qubit: 5 }]
        );
    }

    #[test]
    fn arity_and_flavor_violations() {
        let mut c = w3();
        c.push(Gate::new(GateKind::Cnot, vec![0]));
        c.push(Gate::x(1).with_flavor(Flavor::AndCompute));
        let v = validate(&c);
        assert!(v.contains(&Violation::Arity {
            gate: 0,
            expected: 2,
            found: 1
        }));
        assert!(v.contains(&Violation::FlavorOnNonToffoli { gate: 1 }));
    }

    #[test]
    fn reverse_examples() {
        let mut c = w3();
        c.push(Gate::ccx(0, 1, 2));
        assert_eq!(reverse(&c).gates, vec![Gate::ccx(0, 1, 2)]);

        let mut c = w3();
        c.extend([Gate::x(0), Gate::cnot(0, 1)]);
        assert_eq!(reverse(&c).gates, vec![Gate::cnot(0, 1), Gate::x(0)]);

        let mut c = w3();
        c.extend([Gate::t(0), Gate::s(1)]);
        assert_eq!(reverse(&c).gates, vec![Gate::sdg(1), Gate::tdg(0)]);
    }

    #[test]
    fn reverse_swaps_and_flavors() {
        let mut c = w3();
        c.push(Gate::and_compute(0, 1, 2));
        let r = reverse(&c);
        assert_eq!(r.gates[0].flavor, Flavor::AndUncompute);
        assert_eq!(reverse(&r).gates[0].flavor, Flavor::AndCompute);
    }

    #[test]
    fn empty_report_is_zero() {
        let r = resource_report(&Circuit::default()).unwrap();
        assert_eq!(r, ResourceReport::default());
    }

    #[test]
    fn and_uncompute_counted_separately() {
        let mut c = Circuit::mct_layout(2, 1);
        c.extend([
            Gate::and_compute(0, 1, 2),
            Gate::cnot(2, 3),
            Gate::and_uncompute(0, 1, 2),
        ]);
        let r = resource_report(&c).unwrap();
        assert_eq!(r.toffoli_count, 1);
        assert_eq!(r.and_uncompute_count, 1);
        assert_eq!(r.toffoli_depth, 1);
        assert_eq!(r.restoration_depth, 2);
        assert_eq!(r.clifford_count, 1);
        assert_eq!(r.t_count, None);
    }

    #[test]
    fn t_fields_only_for_clifford_t() {
        let mut c = w3();
        c.extend([
            Gate::h(2),
            Gate::t(0),
            Gate::t(1),
            Gate::cnot(0, 1),
            Gate::tdg(1),
        ]);
        let r = resource_report(&c).unwrap();
        assert_eq!(r.t_count, Some(3));
        assert_eq!(r.t_depth, Some(2));
        assert_eq!(r.clifford_count, 2);
    }
}
