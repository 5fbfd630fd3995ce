mod common;

use common::{circuit, gates};
use proptest::prelude::*;
use qreuse::reducibility::{check, is_reducible_dfs, is_reducible_matrix, is_reducible_reachability, Method};
use qreuse::{Circuit, FamilySpec, Instruction};

proptest! {
    #[test]
    fn deciders_agree(c in circuit(12, 30)) {
        let d = is_reducible_dfs(&c).unwrap();
        prop_assert_eq!(d, is_reducible_reachability(&c).unwrap());
        prop_assert_eq!(d, is_reducible_matrix(&c).unwrap());
    }

    #[test]
    fn appending_gates_never_makes_a_circuit_reducible(g in gates(5, 10), extra in gates(5, 3)) {
        let before = Circuit::from_instructions(5, g.clone()).unwrap().normalize().unwrap();
        let mut all = g;
        all.extend(extra);
        let after = Circuit::from_instructions(5, all).unwrap().normalize().unwrap();
        if !is_reducible_matrix(&before).unwrap() {
            prop_assert!(!is_reducible_matrix(&after).unwrap());
        }
    }

    #[test]
    fn tags_only_help(seed in any::<u64>(), m in 1usize..12) {
        let tagged = FamilySpec::RandomIqp { n: 5, m, seed, tagged: true }.generate().unwrap();
        if is_reducible_matrix(&tagged.strip_groups()).unwrap() {
            prop_assert!(is_reducible_dfs(&tagged).unwrap());
        }
    }
}

fn verdict(spec: FamilySpec, method: Method) -> bool {
    check(&spec.generate().unwrap(), method).unwrap().0
}

#[test]
fn family_verdicts() {
    use FamilySpec::*;
    assert!(!verdict(Qft { n: 4 }, Method::Dfs));
    assert!(verdict(Bv { n: 4, secret: None }, Method::Dfs));
    assert!(verdict(Circular { n: 4, l: 1 }, Method::Reach));
    assert!(!verdict(Circular { n: 3, l: 1 }, Method::Reach));
    assert!(verdict(Linear { n: 5, l: 3 }, Method::Matrix));
    assert!(!verdict(Linear { n: 5, l: 4 }, Method::Matrix));
    assert!(verdict(Pairwise { n: 6, l: 2 }, Method::Matrix));
    assert!(!verdict(Pairwise { n: 6, l: 3 }, Method::Matrix));
    assert!(!verdict(Diffusion { n: 5 }, Method::Matrix));
}

#[test]
fn empty_circuit_is_reducible_from_two_qubits() {
    let c = Circuit::new(2).normalize().unwrap();
    assert!(is_reducible_reachability(&c).unwrap());
    let one = Circuit::from_instructions(2, vec![Instruction::gate("CZ", &[0, 1])]).unwrap().normalize().unwrap();
    assert!(!is_reducible_reachability(&one).unwrap());
}

#[test]
fn method_names() {
    for (s, m) in [("dfs", Method::Dfs), ("reach", Method::Reach), ("matrix", Method::Matrix), ("auto", Method::Auto)] {
        assert_eq!(s.parse::<Method>().unwrap(), m);
        assert_eq!(m.to_string(), s);
    }
    assert!("bfs".parse::<Method>().is_err());
}
