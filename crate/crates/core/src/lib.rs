//! Multi-controlled Toffoli decompositions: circuit IR, reversible simulation,
//! conditionally clean ancilla planning, strategy synthesis, closed-form depth
//! formulas and Clifford+T lowering.

pub mod circuit;
pub mod formulas;
pub mod planner;
pub mod revsim;
pub mod synth;
pub mod tgate;

pub use circuit::{
    parse, resource_report, reverse, serialize, toffoli_layers, validate, Circuit, Flavor, Gate,
    GateKind, QubitId, ResourceReport, Role,
};
pub use planner::{plan_conditionally_clean, plan_to_circuit, Layout, Plan, Row};
pub use revsim::{apply_basis, as_permutation, verify_mct, MctSpec, Mode, VerificationResult};
pub use synth::{synthesize, Strategy, StrategySpec};
