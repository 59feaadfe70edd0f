use num_complex::Complex64;
use proptest::prelude::*;
use qtsp_core::statevec::{Circuit, Control, Gate, Polarity, StateVector};

const QUBITS: usize = 5;

fn arb_gate() -> impl Strategy<Value = Gate> {
    let angle = -3.0f64..3.0;
    (0usize..9, 0..QUBITS, proptest::collection::vec((0..QUBITS, any::<bool>()), 0..3), angle).prop_map(
        |(kind, target, ctrl, theta)| {
            let mut controls: Vec<Control> = Vec::new();
            for (q, positive) in ctrl {
                if q != target && !controls.iter().any(|c| c.qubit == q) {
                    controls.push(if positive { Control::pos(q) } else { Control::neg(q) });
                }
            }
            if controls.is_empty() {
                controls.push(Control::pos((target + 1) % QUBITS));
            }
            match kind {
                0 => Gate::x(target),
                1 => Gate::h(target),
                2 => Gate::z(target),
                3 => Gate::phase(target, theta),
                4 => Gate::rz(target, theta),
                5 => Gate::mcx(controls, target),
                6 => Gate::mcz(controls, target),
                7 => Gate::mcphase(controls, target, theta),
                _ => Gate::swap(target, (target + 2) % QUBITS),
            }
        },
    )
}

fn arb_circuit() -> impl Strategy<Value = Circuit> {
    proptest::collection::vec(arb_gate(), 1..40).prop_map(|gates| {
        let mut c = Circuit::new(QUBITS);
        c.extend(gates).unwrap();
        c
    })
}

fn basis(index: usize) -> StateVector {
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << QUBITS];
    amps[index] = Complex64::new(1.0, 0.0);
    StateVector::from_amplitudes(amps).unwrap()
}

proptest! {
    #[test]
    fn circuits_preserve_norm_and_invert(c in arb_circuit(), start in 0usize..32) {
        let mut s = basis(start);
        s.apply_circuit(&c).unwrap();
        prop_assert!((s.norm_sqr() - 1.0).abs() < 1e-9);
        s.apply_circuit(&c.inverse()).unwrap();
        prop_assert!((s.probability(start) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn gate_by_gate_matches_whole_circuit(c in arb_circuit()) {
        let mut whole = StateVector::new(QUBITS).unwrap();
        whole.apply_circuit(&c).unwrap();
        let mut stepped = StateVector::new(QUBITS).unwrap();
        for g in c.gates() {
            stepped.apply_gate(g).unwrap();
        }
        prop_assert!((whole.inner(&stepped).norm() - 1.0).abs() < 1e-9);
        for i in 0..1usize << QUBITS {
            prop_assert!((whole.amplitude(i) - stepped.amplitude(i)).norm() < 1e-9);
        }
    }

    #[test]
    fn mixed_polarity_toggle(start in 0usize..32, target in 0..QUBITS, pattern in 0usize..32) {
        let controls: Vec<Control> = (0..QUBITS)
            .filter(|&q| q != target)
            .map(|q| if (pattern >> q) & 1 == 1 { Control::pos(q) } else { Control::neg(q) })
            .collect();
        let fires = controls.iter().all(|c| ((start >> c.qubit) & 1 == 1) == (c.polarity == Polarity::Positive));
        let mut s = basis(start);
        s.apply_gate(&Gate::mcx(controls, target)).unwrap();
        let expected = if fires { start ^ (1 << target) } else { start };
        prop_assert!((s.probability(expected) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sampling_is_seed_deterministic(c in arb_circuit(), seed in any::<u64>()) {
        let mut s = StateVector::new(QUBITS).unwrap();
        s.apply_circuit(&c).unwrap();
        let a = s.sample(300, seed).unwrap();
        prop_assert_eq!(&a, &s.sample(300, seed).unwrap());
        prop_assert_eq!(a.values().sum::<u64>(), 300);
        for &i in a.keys() {
            prop_assert!(s.probability(i) > 0.0);
        }
    }
}
