//! Single-Toffoli Clifford+T catalog, amplitude-level checks of its templates,
//! and lowering of Clifford+Toffoli circuits with T-count/T-depth accounting.

mod lower;
mod unitary;

pub use lower::{lower, Selection, CCCX_T_COUNT, CCCX_T_DEPTH};
pub use unitary::{unitary_of, Matrix, MAX_QUBITS};

use crate::circuit::{self, Circuit, Role};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

pub const TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TgateError {
    #[error("{q} qubits exceeds the dense-matrix limit of {max}")]
    TooManyQubits { q: usize, max: usize },
    #[error("gate `{0}` addresses a qubit outside the matrix")]
    QubitOutOfRange(String),
    #[error("unknown catalog entry {0:?}")]
    UnknownEntry(String),
    #[error("catalog file {file}: {reason}")]
    BadCatalog { file: &'static str, reason: String },
    #[error("entry {0} has no gate template")]
    NotUnitary(EntryId),
    #[error(transparent)]
    Invalid(#[from] circuit::InvalidCircuit),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EntryId {
    NcTd6,
    AmyTd4,
    AmyTd3,
    AmyTd2,
    SelingerTd1,
    JonesTd1,
    GidneyAnd,
}

impl EntryId {
    pub const ALL: [EntryId; 7] = [
        EntryId::NcTd6,
        EntryId::AmyTd4,
        EntryId::AmyTd3,
        EntryId::AmyTd2,
        EntryId::SelingerTd1,
        EntryId::JonesTd1,
        EntryId::GidneyAnd,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EntryId::NcTd6 => "nc-td6",
            EntryId::AmyTd4 => "amy-td4",
            EntryId::AmyTd3 => "amy-td3",
            EntryId::AmyTd2 => "amy-td2",
            EntryId::SelingerTd1 => "selinger-td1",
            EntryId::JonesTd1 => "jones-td1",
            EntryId::GidneyAnd => "gidney-and",
        }
    }

    fn source(self) -> &'static str {
        match self {
            EntryId::NcTd6 => include_str!("../../data/nc-td6.mct"),
            EntryId::AmyTd4 => include_str!("../../data/amy-td4.mct"),
            EntryId::AmyTd3 => include_str!("../../data/amy-td3.mct"),
            EntryId::AmyTd2 => include_str!("../../data/amy-td2.mct"),
            EntryId::SelingerTd1 => include_str!("../../data/selinger-td1.mct"),
            EntryId::JonesTd1 => include_str!("../../data/jones-td1.mct"),
            EntryId::GidneyAnd => include_str!("../../data/gidney-and.mct"),
        }
    }
}

impl fmt::Display for EntryId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EntryId {
    type Err = TgateError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        EntryId::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| TgateError::UnknownEntry(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub id: EntryId,
    pub ancilla: usize,
    pub t_count: usize,
    pub t_depth: usize,
    /// Part of the T-depth is a preparation layer shared across a circuit,
    /// leaving one layer per gate.
    pub effective_t_depth_one: bool,
    pub clifford_count: usize,
    pub total_depth: usize,
    /// Metrics taken from prose rather than the comparison table.
    pub prose_sourced: bool,
    /// `None` for measurement-based entries.
    pub template: Option<Circuit>,
}

impl CatalogEntry {
    pub fn unitary(&self) -> bool {
        self.template.is_some()
    }

    /// Layers this entry adds to a circuit's T-depth.
    pub fn t_depth_weight(&self) -> usize {
        if self.effective_t_depth_one {
            1
        } else {
            self.t_depth
        }
    }
}

/// Reads a catalog file: the circuit format plus `entry` and `meta` lines.
fn parse_entry(file: &'static str, text: &str) -> Result<CatalogEntry, TgateError> {
    let bad = |reason: String| TgateError::BadCatalog { file, reason };
    let mut id = None;
    let mut meta: BTreeMap<String, usize> = BTreeMap::new();
    let mut body = String::new();
    let mut has_gates = false;
    for line in text.lines() {
        let mut words = line.split_whitespace();
        match words.next() {
            Some("entry") => {
                let name = words.next().ok_or_else(|| bad("entry without id".into()))?;
                id = Some(name.parse::<EntryId>()?);
                body.push_str("#\n");
            }
            Some("meta") => {
                for kv in words {
                    let (k, v) = kv
                        .split_once('=')
                        .ok_or_else(|| bad(format!("bad meta field {kv:?}")))?;
                    let v = match v {
                        "prose" => 1,
                        _ => v
                            .parse()
                            .map_err(|_| bad(format!("bad meta value {kv:?}")))?,
                    };
                    meta.insert(k.to_string(), v);
                }
                body.push_str("#\n");
            }
            Some("qubits") => {
                has_gates = true;
                body.push_str(line);
                body.push('\n');
            }
            _ => {
                body.push_str(line);
                body.push('\n');
            }
        }
    }
    let id = id.ok_or_else(|| bad("missing entry line".into()))?;
    let field = |k: &str| {
        meta.get(k)
            .copied()
            .ok_or_else(|| bad(format!("missing meta field {k}")))
    };
    let template = if has_gates {
        let c = circuit::parse(&body).map_err(|e| bad(e.to_string()))?;
        Some(c.with_label(id.name()))
    } else {
        None
    };
    Ok(CatalogEntry {
        id,
        ancilla: field("ancilla")?,
        t_count: field("t")?,
        t_depth: field("tdepth")?,
        effective_t_depth_one: meta.get("tdepth_effective") == Some(&1),
        clifford_count: field("clifford")?,
        total_depth: field("depth")?,
        prose_sourced: meta.contains_key("source"),
        template,
    })
}

/// The seven single-Toffoli decompositions.
pub fn catalog() -> &'static [CatalogEntry] {
    static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        EntryId::ALL
            .into_iter()
            .map(|id| parse_entry(id.name(), id.source()).expect("bundled catalog parses"))
            .collect()
    })
}

pub fn entry(id: EntryId) -> &'static CatalogEntry {
    catalog().iter().find(|e| e.id == id).unwrap()
}

/// Toffoli on qubits (0, 1 -> 2).
fn toffoli_index(i: usize) -> usize {
    if i & 3 == 3 {
        i ^ 4
    } else {
        i
    }
}

/// Checks a template equals the Toffoli up to one global phase on the
/// ancilla-zero subspace, with ancillae returned to zero.
pub fn verify_template(c: &Circuit) -> Result<bool, TgateError> {
    circuit::ensure_valid(c)?;
    if c.width < 3 {
        return Ok(false);
    }
    let u = unitary_of(&c.gates, c.width)?;
    let zero = || Matrix {
        dim: 8,
        data: vec![Default::default(); 64],
    };
    // columns with ancillae at 0; rows with any ancilla set must vanish
    let mut got = zero();
    for col in 0..8 {
        for row in 0..u.dim {
            let v = u.get(row, col);
            if row < 8 {
                got.data[row * 8 + col] = v;
            } else if v.norm() > TOLERANCE {
                return Ok(false);
            }
        }
    }
    let mut want = zero();
    for col in 0..8 {
        want.data[toffoli_index(col) * 8 + col] = num_complex::Complex64::new(1.0, 0.0);
    }
    Ok(got.phase_normalized(TOLERANCE).max_abs_diff(&want) <= TOLERANCE)
}

pub fn verify_entry(e: &CatalogEntry) -> Result<bool, TgateError> {
    let c = e.template.as_ref().ok_or(TgateError::NotUnitary(e.id))?;
    verify_template(c)
}

/// Roles for a template with `ancilla` helpers.
pub fn template_roles(ancilla: usize) -> Vec<Role> {
    let mut r = vec![Role::Control, Role::Control, Role::Target];
    r.extend(std::iter::repeat_n(Role::Ancilla, ancilla));
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{resource_report, t_layers, Gate, GateKind};

    #[test]
    fn table_metrics() {
        let rows: Vec<_> = catalog()
            .iter()
            .map(|e| {
                (
                    e.id.name(),
                    e.ancilla,
                    e.t_count,
                    e.t_depth,
                    e.clifford_count,
                    e.total_depth,
                )
            })
            .collect();
        assert_eq!(
            rows,
            vec![
                ("nc-td6", 0, 7, 6, 9, 12),
                ("amy-td4", 0, 7, 4, 8, 8),
                ("amy-td3", 0, 7, 3, 9, 9),
                ("amy-td2", 1, 7, 2, 12, 11),
                ("selinger-td1", 4, 7, 1, 18, 8),
                ("jones-td1", 1, 4, 1, 11, 8),
                ("gidney-and", 0, 4, 2, 9, 9),
            ]
        );
        assert!(entry(EntryId::GidneyAnd).effective_t_depth_one);
        assert!(entry(EntryId::NcTd6).prose_sourced);
        assert!(!entry(EntryId::JonesTd1).unitary());
    }

    #[test]
    fn unitary_entries_verify() {
        for e in catalog().iter().filter(|e| e.unitary()) {
            assert!(verify_entry(e).unwrap(), "{}", e.id);
        }
    }

    #[test]
    fn declared_counts_match_templates() {
        for e in catalog().iter().filter(|e| e.unitary()) {
            let c = e.template.as_ref().unwrap();
            let r = resource_report(c).unwrap();
            assert_eq!(r.t_count, Some(e.t_count), "{}", e.id);
            assert_eq!(r.clifford_count, e.clifford_count, "{}", e.id);
            assert_eq!(r.ancilla_count, e.ancilla, "{}", e.id);
            assert_eq!(c.roles, template_roles(e.ancilla));
            if e.id != EntryId::NcTd6 {
                assert_eq!(t_layers(c).unwrap().len(), e.t_depth, "{}", e.id);
            }
        }
    }

    #[test]
    fn perturbed_template_fails() {
        let mut c = entry(EntryId::AmyTd4).template.clone().unwrap();
        let i = c.gates.iter().position(|g| g.kind == GateKind::T).unwrap();
        c.gates[i] = Gate::tdg(c.gates[i].qubits[0]);
        assert!(!verify_template(&c).unwrap());
    }

    #[test]
    fn not_unitary_error() {
        assert_eq!(
            verify_entry(entry(EntryId::JonesTd1)),
            Err(TgateError::NotUnitary(EntryId::JonesTd1))
        );
    }
}
