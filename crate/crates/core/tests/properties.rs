use mct_core::circuit::{restoration_depth, toffoli_layers, total_depth};
use mct_core::revsim::sampled_cases;
use mct_core::{
    apply_basis, as_permutation, parse, reverse, serialize, Circuit, Flavor, Gate, Role,
};
use proptest::prelude::*;

const WIDTH: std::ops::Range<usize> = 4..9;

/// Valid classical gate over `w` qubits: distinct operands.
fn gate(w: usize) -> impl Strategy<Value = Gate> {
    (
        0..6u8,
        Just(w).prop_perturb(|w, mut rng| {
            let mut qs: Vec<usize> = (0..w).collect();
            for i in (1..w).rev() {
                qs.swap(i, rng.random_range(0..=i));
            }
            qs
        }),
    )
        .prop_map(|(kind, qs)| match kind {
            0 => Gate::x(qs[0]),
            1 => Gate::cnot(qs[0], qs[1]),
            2 => Gate::ccx(qs[0], qs[1], qs[2]),
            3 => Gate::and_compute(qs[0], qs[1], qs[2]),
            4 => Gate::and_uncompute(qs[0], qs[1], qs[2]),
            _ => Gate::cccx(qs[0], qs[1], qs[2], qs[3]),
        })
}

fn circuit() -> impl Strategy<Value = Circuit> {
    WIDTH.prop_flat_map(|w| {
        (prop::collection::vec(gate(w), 0..40), Just(w)).prop_map(|(gates, w)| {
            let mut c = Circuit::mct_layout(w - 2, 1).with_label("random");
            c.extend(gates);
            c
        })
    })
}

fn plain(c: &Circuit) -> Circuit {
    let mut p = c.clone();
    for g in &mut p.gates {
        g.flavor = Flavor::Plain;
    }
    p
}

fn bits(x: u64, w: usize) -> Vec<bool> {
    (0..w).map(|i| (x >> i) & 1 == 1).collect()
}

proptest! {
    #[test]
    fn text_round_trip(c in circuit()) {
        let back = parse(&serialize(&c)).unwrap();
        prop_assert_eq!(back, c);
    }

    #[test]
    fn layers_are_disjoint_and_cover_toffolis(c in circuit()) {
        let layers = toffoli_layers(&c).unwrap();
        let mut seen = 0;
        for layer in &layers {
            prop_assert!(!layer.is_empty());
            let mut used = vec![false; c.width];
            for &i in layer {
                prop_assert!(c.gates[i].is_counted_toffoli());
                for &q in &c.gates[i].qubits {
                    prop_assert!(!std::mem::replace(&mut used[q], true));
                }
            }
            seen += layer.len();
        }
        prop_assert_eq!(seen, c.gates.iter().filter(|g| g.is_counted_toffoli()).count());
    }

    #[test]
    fn depth_orderings(c in circuit()) {
        let d = toffoli_layers(&c).unwrap().len();
        prop_assert!(d <= restoration_depth(&c).unwrap());
        prop_assert!(restoration_depth(&c).unwrap() <= total_depth(&c).unwrap());
    }

    #[test]
    fn reverse_is_an_involution(c in circuit()) {
        prop_assert_eq!(reverse(&reverse(&c)), c);
    }

    #[test]
    fn reverse_keeps_plain_depth(c in circuit()) {
        let p = plain(&c);
        prop_assert_eq!(
            toffoli_layers(&reverse(&p)).unwrap().len(),
            toffoli_layers(&p).unwrap().len()
        );
        prop_assert_eq!(restoration_depth(&reverse(&c)).unwrap(), restoration_depth(&c).unwrap());
    }

    #[test]
    fn reverse_undoes_on_every_input(c in circuit(), x in any::<u64>()) {
        let input = bits(x, c.width);
        let mid = apply_basis(&c, &input).unwrap();
        prop_assert_eq!(apply_basis(&reverse(&c), &mid).unwrap(), input);
    }

    #[test]
    fn permutation_is_a_bijection(c in circuit()) {
        let mut p = as_permutation(&c, 22).unwrap();
        p.sort_unstable();
        prop_assert!(p.iter().enumerate().all(|(i, &v)| v == i as u64));
    }

    #[test]
    fn sampled_cases_are_deterministic(n in 2usize..40, count in 0usize..300, seed in any::<u64>()) {
        let a = sampled_cases(n, count, seed);
        prop_assert_eq!(&a, &sampled_cases(n, count, seed));
        // boundary patterns always lead
        prop_assert!(a.len() >= 2 * (n + 1));
        prop_assert!(a[..n + 1].iter().all(|(v, t)| !t && v.iter().filter(|b| !**b).count() <= 1));
    }
}

#[test]
fn roles_survive_round_trip() {
    let mut c = Circuit::new(vec![
        Role::Ancilla,
        Role::Control,
        Role::Target,
        Role::Control,
    ]);
    c.push(Gate::ccx(1, 3, 2));
    assert_eq!(parse(&serialize(&c)).unwrap().roles, c.roles);
}
