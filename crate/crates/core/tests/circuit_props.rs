mod common;

use common::{circuit, gates};
use proptest::prelude::*;
use qreuse::{Circuit, Error, Instruction};

fn gate_list(c: &Circuit) -> Vec<(String, Vec<usize>)> {
    c.gates().map(|g| (g.name().to_string(), g.qubits.clone())).collect()
}

proptest! {
    #[test]
    fn json_round_trip(c in circuit(6, 12)) {
        prop_assert_eq!(Circuit::parse(&c.to_json()).unwrap(), c);
    }

    #[test]
    fn normalize_is_idempotent_and_keeps_gates(g in gates(5, 10)) {
        let bare = Circuit::from_instructions(5, g).unwrap();
        let once = bare.normalize().unwrap();
        prop_assert_eq!(once.normalize().unwrap(), once.clone());
        prop_assert_eq!(gate_list(&once), gate_list(&bare));
        prop_assert!(once.is_static());
    }

    #[test]
    fn composition_is_associative_on_gates(a in gates(4, 5), b in gates(4, 5), c in gates(4, 5)) {
        let wrap = |g: Vec<Instruction>| Circuit::from_instructions(4, g).unwrap().normalize().unwrap();
        let (a, b, c) = (wrap(a), wrap(b), wrap(c));
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(gate_list(&left), gate_list(&right));
        prop_assert!(left.is_static());
    }
}

#[test]
fn halves_compose_to_the_chain() {
    use qreuse::generators::fixtures;
    let composed = fixtures::composition_left().compose(&fixtures::composition_right()).unwrap();
    assert_eq!(composed, fixtures::three_qubit_chain());
    assert_eq!(composed.len(), 11);
}

#[test]
fn compose_with_empty_is_identity_on_gates() {
    let c = qreuse::generators::fixtures::three_qubit_chain();
    let empty = Circuit::new(3).normalize().unwrap();
    assert_eq!(gate_list(&c.compose(&empty).unwrap()), gate_list(&c));
    assert!(matches!(c.compose(&Circuit::new(4).normalize().unwrap()), Err(Error::WidthMismatch(3, 4))));
}

#[test]
fn document_errors() {
    assert!(matches!(Circuit::parse("{"), Err(Error::Parse(_)) | Err(Error::Json(_))));
    let dup = r#"{"width": 3, "instructions": [{"id": 0, "type": "GATE", "gate": "CX", "qubits": [2, 2]}]}"#;
    assert!(matches!(Circuit::parse(dup), Err(Error::DuplicateQubit { qubit: 2, .. })));
    let range = r#"{"width": 2, "instructions": [{"id": 0, "type": "GATE", "gate": "H", "qubits": [2]}]}"#;
    assert!(matches!(Circuit::parse(range), Err(Error::QubitOutOfRange { qubit: 2, .. })));
    let tagged_reset = r#"{"width": 1, "instructions": [{"id": 0, "type": "RESET", "qubits": [0], "group": 1}]}"#;
    assert!(Circuit::parse(tagged_reset).is_err());
}

#[test]
fn ids_are_redensified() {
    let doc = r#"{"width": 1, "instructions": [
        {"id": 7, "type": "RESET", "gate": null, "qubits": [0], "param": null, "group": null},
        {"id": 3, "type": "GATE", "gate": "RY", "qubits": [0], "param": 0.5},
        {"id": 9, "type": "MEASURE", "qubits": [0]}]}"#;
    let c = Circuit::parse(doc).unwrap();
    assert_eq!(c.instructions().iter().map(|i| i.id).collect::<Vec<_>>(), vec![0, 1, 2]);
    assert_eq!(c.instructions()[1].param, Some(0.5));
}
