//! The bit-level oracle against the dense state-vector simulator, and the
//! synthesized circuits against count and depth laws.

use mct_core::circuit::{resource_report, Role};
use mct_core::revsim::{verify_mct, MctSpec, Mode};
use mct_core::synth::{self, Strategy, StrategySpec};
use mct_core::tgate::unitary_of;
use mct_core::{as_permutation, synthesize, Circuit};

/// Checks the MCT contract column by column on the dense unitary.
fn dense_mct_ok(c: &Circuit, dirty_ancillae: bool) -> bool {
    let u = unitary_of(&c.gates, c.width).unwrap();
    let ctl = c.controls();
    let t = c.target().unwrap();
    let anc = c.ancillae();
    for col in 0..1usize << c.width {
        if anc.iter().any(|&a| col >> a & 1 == 1) {
            continue;
        }
        let row = (0..u.dim).find(|&r| u.get(r, col).norm() > 0.5).unwrap();
        let all = ctl.iter().all(|&q| col >> q & 1 == 1);
        let mut want = col ^ ((all as usize) << t);
        if dirty_ancillae {
            for &a in &anc {
                want = (want & !(1 << a)) | (row & (1 << a));
            }
        }
        if row != want {
            return false;
        }
    }
    true
}

fn small_cases() -> Vec<(StrategySpec, bool)> {
    vec![
        (StrategySpec::new(Strategy::BinaryTree, 4), true),
        (
            StrategySpec::new(Strategy::BinaryTree, 5).with_cleanup(true),
            false,
        ),
        (StrategySpec::new(Strategy::Khattar1, 5), false),
        (StrategySpec::new(Strategy::Khattar1, 8), false),
        (StrategySpec::new(Strategy::Khattar2, 5), false),
        (StrategySpec::new(Strategy::Khattar2, 8), false),
        (StrategySpec::new(Strategy::Tradeoff, 6).with_m1(2), false),
        (StrategySpec::new(Strategy::GidneyLadder, 5), false),
    ]
}

#[test]
fn dense_simulator_agrees_with_oracle() {
    for (spec, dirty) in small_cases() {
        let (c, _) = synthesize(&spec).unwrap();
        assert!(c.width <= 12, "{}", spec.label());
        assert!(dense_mct_ok(&c, dirty), "{}", spec.label());
        let mut s = MctSpec::from_roles(&c).unwrap();
        if dirty {
            s = s.waive_ancillae();
        }
        assert!(verify_mct(&c, &s, Mode::Exhaustive).unwrap().passed());
    }
}

#[test]
fn dense_and_bit_simulators_agree_on_permutations() {
    for (spec, _) in small_cases() {
        let (c, _) = synthesize(&spec).unwrap();
        let perm = as_permutation(&c, 22).unwrap();
        let u = unitary_of(&c.gates, c.width).unwrap();
        for (i, &j) in perm.iter().enumerate() {
            assert!(
                (u.get(j as usize, i).re - 1.0).abs() < 1e-12,
                "{} col {i}",
                spec.label()
            );
        }
    }
}

#[test]
fn broken_circuit_is_caught_by_both() {
    let mut c = synth::khattar_one_ancilla(5).unwrap();
    let i = c.gates.len() / 2;
    c.gates.remove(i);
    assert!(!dense_mct_ok(&c, false));
    let s = MctSpec::from_roles(&c).unwrap();
    let r = verify_mct(&c, &s, Mode::Exhaustive).unwrap();
    assert!(!r.passed());
    assert!(r.counterexample.is_some());
}

#[test]
fn count_laws() {
    for n in 4..=128 {
        let count = |spec: StrategySpec| synthesize(&spec).unwrap().1;
        assert_eq!(
            count(StrategySpec::new(Strategy::BinaryTree, n)).toffoli_count,
            n - 1
        );
        assert_eq!(
            count(StrategySpec::new(Strategy::Khattar1, n)).toffoli_count,
            2 * n - 3
        );
        assert_eq!(
            count(StrategySpec::new(Strategy::Khattar2, n)).toffoli_count,
            2 * n - 3
        );
        let g = count(StrategySpec::new(Strategy::GidneyLadder, n));
        assert_eq!((g.toffoli_count - g.cccx_count, g.cccx_count), (n - 3, 1));
        for m1 in 2..=8 {
            if n >= 2 * m1 + 2 {
                let r = count(StrategySpec::new(Strategy::Tradeoff, n).with_m1(m1));
                assert_eq!(r.toffoli_count, 2 * n - m1 - 3, "n={n} m1={m1}");
            }
        }
    }
}

#[test]
fn ancilla_budgets() {
    let anc = |spec: StrategySpec| synthesize(&spec).unwrap().0.ancillae().len();
    for n in 8..40 {
        assert_eq!(anc(StrategySpec::new(Strategy::BinaryTree, n)), n - 2);
        assert_eq!(anc(StrategySpec::new(Strategy::Khattar1, n)), 1);
        assert_eq!(anc(StrategySpec::new(Strategy::Khattar2, n)), 2);
        assert_eq!(anc(StrategySpec::new(Strategy::GidneyLadder, n)), n - 2);
        assert_eq!(anc(StrategySpec::new(Strategy::Tradeoff, n).with_m1(3)), 5);
    }
}

#[test]
fn reports_are_consistent() {
    let (c, r) = synthesize(&StrategySpec::new(Strategy::Tradeoff, 32).with_m1(3)).unwrap();
    assert_eq!(resource_report(&c).unwrap(), r);
    assert_eq!(r.and_uncompute_count, 3);
    assert_eq!(c.roles.iter().filter(|r| **r == Role::Target).count(), 1);
}
