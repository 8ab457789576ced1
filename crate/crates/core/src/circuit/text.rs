//! Line-based circuit text format.
//!
//! ```text
//! qubits 4
//! roles ccat
//! # label: demo
//! ccx+ 0 1 2
//! cnot 2 3
//! ccx- 0 1 2
//! ```

use super::{validate, Circuit, Flavor, Gate, GateKind, Role};
use std::fmt::Write;

const LABEL_PREFIX: &str = "# label: ";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {reason}")]
pub struct ParseError {
    pub line: usize,
    pub reason: String,
}

fn err(line: usize, reason: impl Into<String>) -> ParseError {
    ParseError {
        line,
        reason: reason.into(),
    }
}

pub(crate) fn mnemonic(g: &Gate) -> &'static str {
    match (g.kind, g.flavor) {
        (GateKind::Toffoli, Flavor::AndCompute) => "ccx+",
        (GateKind::Toffoli, Flavor::AndUncompute) => "ccx-",
        (GateKind::Toffoli, Flavor::Plain) => "ccx",
        (GateKind::X, _) => "x",
        (GateKind::Cnot, _) => "cnot",
        (GateKind::Cccx, _) => "cccx",
        (GateKind::H, _) => "h",
        (GateKind::S, _) => "s",
        (GateKind::Sdg, _) => "sdg",
        (GateKind::T, _) => "t",
        (GateKind::Tdg, _) => "tdg",
        (GateKind::Z, _) => "z",
        (GateKind::Cz, _) => "cz",
    }
}

fn from_mnemonic(m: &str) -> Option<(GateKind, Flavor)> {
    let plain = |k| Some((k, Flavor::Plain));
    match m {
        "x" => plain(GateKind::X),
        "cnot" => plain(GateKind::Cnot),
        "ccx" => plain(GateKind::Toffoli),
        "ccx+" => Some((GateKind::Toffoli, Flavor::AndCompute)),
        "ccx-" => Some((GateKind::Toffoli, Flavor::AndUncompute)),
        "cccx" => plain(GateKind::Cccx),
        "h" => plain(GateKind::H),
        "s" => plain(GateKind::S),
        "sdg" => plain(GateKind::Sdg),
        "t" => plain(GateKind::T),
        "tdg" => plain(GateKind::Tdg),
        "z" => plain(GateKind::Z),
        "cz" => plain(GateKind::Cz),
        _ => None,
    }
}

pub fn serialize(c: &Circuit) -> String {
    let mut s = String::new();
    writeln!(s, "qubits {}", c.width).unwrap();
    let roles: String = c.roles.iter().map(|r| r.as_char()).collect();
    writeln!(s, "roles {roles}").unwrap();
    if !c.label.is_empty() {
        writeln!(s, "{LABEL_PREFIX}{}", c.label).unwrap();
    }
    for g in &c.gates {
        writeln!(s, "{g}").unwrap();
    }
    s
}

/// Parses the text format. Without a `roles` line the last qubit is the
/// target and the rest are controls.
pub fn parse(text: &str) -> Result<Circuit, ParseError> {
    let mut width: Option<usize> = None;
    let mut roles: Option<Vec<Role>> = None;
    let mut label = String::new();
    let mut gates = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        if let Some(l) = raw.strip_prefix(LABEL_PREFIX) {
            label = l.to_string();
            continue;
        }
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let mut words = body.split_whitespace();
        let head = words.next().unwrap();
        let args: Vec<&str> = words.collect();
        match head {
            "qubits" => {
                if width.is_some() || !gates.is_empty() {
                    return Err(err(line, "unexpected qubits line"));
                }
                let [w] = args[..] else {
                    return Err(err(line, "qubits takes one integer"));
                };
                width = Some(
                    w.parse()
                        .map_err(|_| err(line, format!("bad width {w:?}")))?,
                );
            }
            "roles" => {
                let w = width.ok_or_else(|| err(line, "roles before qubits"))?;
                let [r] = args[..] else {
                    return Err(err(line, "roles takes one word"));
                };
                let parsed = r
                    .chars()
                    .map(Role::from_char)
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| err(line, format!("bad role string {r:?}")))?;
                if parsed.len() != w {
                    return Err(err(line, format!("{} roles for width {w}", parsed.len())));
                }
                roles = Some(parsed);
            }
            m => {
                let w = width.ok_or_else(|| err(line, "gate before qubits line"))?;
                let (kind, flavor) =
                    from_mnemonic(m).ok_or_else(|| err(line, format!("unknown gate {m:?}")))?;
                if args.len() != kind.arity() {
                    return Err(err(
                        line,
                        format!("{m} takes {} operands, got {}", kind.arity(), args.len()),
                    ));
                }
                let mut qubits = Vec::with_capacity(args.len());
                for a in args {
                    let q: usize = a
                        .parse()
                        .map_err(|_| err(line, format!("bad qubit index {a:?}")))?;
                    if q >= w {
                        return Err(err(line, format!("qubit {q} out of range for width {w}")));
                    }
                    if qubits.contains(&q) {
                        return Err(err(line, format!("duplicate operand {q}")));
                    }
                    qubits.push(q);
                }
                gates.push(Gate {
                    kind,
                    qubits,
                    flavor,
                });
            }
        }
    }

    let width = width.ok_or_else(|| err(0, "missing qubits line"))?;
    let roles = roles.unwrap_or_else(|| {
        let mut r = vec![Role::Control; width];
        if let Some(last) = r.last_mut() {
            *last = Role::Target;
        }
        r
    });
    let c = Circuit {
        width,
        roles,
        gates,
        label,
    };
    if let Some(v) = validate(&c).first() {
        return Err(err(0, v.to_string()));
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toffoli_line() {
        let mut c = Circuit::new(vec![Role::Control, Role::Control, Role::Target]);
        c.push(Gate::ccx(0, 1, 2));
        assert!(serialize(&c).contains("\nccx 0 1 2\n"));
    }

    #[test]
    fn minimal_text() {
        let c = parse("qubits 3\nccx 0 1 2\n").unwrap();
        assert_eq!(c.width, 3);
        assert_eq!(c.gates, vec![Gate::ccx(0, 1, 2)]);
    }

    #[test]
    fn duplicate_operand_is_error() {
        let e = parse("qubits 3\nccx 0 0 1\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.reason.contains("duplicate"));
    }

    #[test]
    fn errors_name_the_line() {
        let e = parse("qubits 2\n# hi\nfoo 1\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(parse("qubits 2\nroles cc\ncnot 0 2\n")
            .unwrap_err()
            .reason
            .contains("range"));
        assert!(parse("ccx 0 1 2\n").is_err());
    }

    #[test]
    fn round_trip_with_flavors_and_label() {
        let mut c = Circuit::mct_layout(2, 1).with_label("demo run");
        c.extend([
            Gate::and_compute(0, 1, 2),
            Gate::cz(2, 3),
            Gate::and_uncompute(0, 1, 2),
        ]);
        assert_eq!(parse(&serialize(&c)).unwrap(), c);
    }
}
