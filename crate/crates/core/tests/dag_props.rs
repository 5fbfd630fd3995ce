mod common;

use common::{circuit, propagate_biadjacency};
use proptest::prelude::*;
use qreuse::dag::{biadjacency, emit_dynamic_traced};
use qreuse::generators::fixtures;
use qreuse::heuristics::{greedy_compile, HeuristicConfig};
use qreuse::reducibility::{is_reducible_dfs, is_reducible_matrix};
use qreuse::{build_dag, matrix_biadjacency, simplified_dag, Circuit, Error, FamilySpec, Instruction, Kind};

fn longest_path(c: &Circuit) -> usize {
    let dag = build_dag(c).unwrap();
    let order = dag.topological_order().unwrap();
    let mut len = vec![1usize; dag.vertex_count()];
    for &v in &order {
        for &w in dag.successors(v) {
            len[w] = len[w].max(len[v] + 1);
        }
    }
    len.into_iter().max().unwrap_or(0)
}

proptest! {
    #[test]
    fn two_routes_to_b_agree(c in circuit(7, 14)) {
        let dfs = simplified_dag(&build_dag(&c).unwrap());
        prop_assert_eq!(&dfs, &matrix_biadjacency(&c).unwrap());
        prop_assert_eq!(dfs, propagate_biadjacency(&c));
    }

    #[test]
    fn dag_shape(c in circuit(7, 14)) {
        let dag = build_dag(&c).unwrap();
        prop_assert!(dag.is_acyclic());
        prop_assert_eq!(dag.roots.len(), c.width());
        prop_assert_eq!(dag.terminals.len(), c.width());
        for (q, (&r, &t)) in dag.roots.iter().zip(&dag.terminals).enumerate() {
            prop_assert_eq!(c.instructions()[r].kind, Kind::Reset);
            prop_assert_eq!(c.instructions()[t].kind, Kind::Measure);
            prop_assert_eq!(&c.instructions()[r].qubits, &vec![q]);
            prop_assert!(dag.predecessors(r).is_empty() && dag.successors(t).is_empty());
        }
        let order = dag.topological_order().unwrap();
        let mut pos = vec![0; order.len()];
        for (k, &v) in order.iter().enumerate() {
            pos[v] = k;
        }
        for (u, v) in dag.edges() {
            prop_assert!(pos[u] < pos[v]);
        }
    }

    #[test]
    fn depth_is_the_longest_dag_path(c in circuit(6, 12)) {
        prop_assert_eq!(c.depth(), longest_path(&c));
    }

    #[test]
    fn composition_multiplies_biadjacency(a in circuit(4, 6), b in circuit(4, 6)) {
        prop_assume!(a.width() == b.width());
        let composed = a.compose(&b).unwrap();
        let product = matrix_biadjacency(&a).unwrap().bool_product(&matrix_biadjacency(&b).unwrap()).unwrap();
        prop_assert_eq!(propagate_biadjacency(&composed), product);
    }

    #[test]
    fn deleting_gates_never_adds_reachability(c in circuit(6, 12), drop in any::<prop::sample::Index>()) {
        let gates: Vec<usize> = c.gates().map(|g| g.id).collect();
        prop_assume!(!gates.is_empty());
        let victim = gates[drop.index(gates.len())];
        let sub: Vec<Instruction> = c.instructions().iter().filter(|i| i.id != victim).cloned().collect();
        let sub = Circuit::from_instructions(c.width(), sub).unwrap();
        prop_assert!(matrix_biadjacency(&sub).unwrap().le(&matrix_biadjacency(&c).unwrap()));
    }

    #[test]
    fn emitted_circuits_keep_the_register_discipline(c in circuit(7, 14), seed in any::<u64>()) {
        let r = greedy_compile(&c, &HeuristicConfig::default().with_seed(seed)).unwrap();
        let d = &r.dynamic_circuit;
        let count = |k| d.instructions().iter().filter(|i| i.kind == k).count();
        prop_assert_eq!(count(Kind::Reset), c.width());
        prop_assert_eq!(count(Kind::Measure), c.width());
        prop_assert_eq!(d.width(), c.width() - r.added_edges.len());
        prop_assert!(d.check_dynamic().is_ok());
        prop_assert!(d.instructions().iter().all(|i| i.group.is_none()));
        let mut src = r.source_ids.clone();
        src.sort_unstable();
        prop_assert_eq!(src, (0..c.len()).collect::<Vec<_>>());
    }
}

#[test]
fn chain_compiles_to_the_two_register_schedule() {
    let c = fixtures::three_qubit_chain();
    let dag = build_dag(&c).unwrap();
    let e = emit_dynamic_traced(&c, &dag, &[(dag.terminals[0], dag.roots[2])]).unwrap();
    let d = &e.circuit;
    assert_eq!(d.width(), 2);
    // qubit 0 is measured, reset and reused as qubit 2
    let reg0: Vec<&str> = d.ops_on(0).iter().map(|&i| d.instructions()[i].name()).collect();
    let first_measure = reg0.iter().position(|&n| n == "MEASURE").unwrap();
    assert_eq!(reg0[first_measure + 1], "RESET");
    assert_eq!(reg0.iter().filter(|&&n| n == "RESET").count(), 2);
}

#[test]
fn cycle_from_a_reachable_pair() {
    let c = fixtures::three_qubit_chain();
    let dag = build_dag(&c).unwrap();
    let b = matrix_biadjacency(&c).unwrap();
    let (r, t) = (0..3).flat_map(|r| (0..3).map(move |t| (r, t))).find(|&(r, t)| r != t && b.get(r, t)).unwrap();
    let err = emit_dynamic_traced(&c, &dag, &[(dag.terminals[t], dag.roots[r])]).unwrap_err();
    assert!(matches!(err, Error::Cycle));
}

#[test]
fn empty_edge_set_keeps_the_width() {
    let c = FamilySpec::Cluster { w: 2, d: 2 }.generate().unwrap();
    let dag = build_dag(&c).unwrap();
    let e = emit_dynamic_traced(&c, &dag, &[]).unwrap();
    assert_eq!(e.circuit.width(), 4);
    assert!(e.circuit.is_static());
}

#[test]
fn commutable_block_relaxes_b() {
    let tagged = fixtures::commutable_example();
    let loose = biadjacency(&tagged).unwrap();
    let strict = matrix_biadjacency(&tagged.strip_groups()).unwrap();
    assert!(loose.le(&strict));
    assert_ne!(loose, strict);
}

/// The fixture's defining property, plus a search showing the property is
/// met by 5-CNOT circuits on 4 qubits in the first place.
#[test]
fn minimal_irreducible_fixture() {
    let check = |pairs: &[(usize, usize)]| {
        let c = fixtures::cnot_chain(4, pairs);
        if is_reducible_matrix(&c).unwrap() {
            return false;
        }
        (0..pairs.len()).all(|k| {
            let mut sub = pairs.to_vec();
            sub.remove(k);
            is_reducible_matrix(&fixtures::cnot_chain(4, &sub)).unwrap()
        })
    };
    assert!(check(&fixtures::MINIMAL_IRREDUCIBLE_PAIRS));
    let c = fixtures::minimal_irreducible();
    assert!(!is_reducible_dfs(&c).unwrap());

    let ordered: Vec<(usize, usize)> =
        (0..4).flat_map(|a| (0..4).map(move |b| (a, b))).filter(|(a, b)| a != b).collect();
    let mut found = 0;
    let mut idx = [0usize; 5];
    'outer: loop {
        let pairs: Vec<(usize, usize)> = idx.iter().map(|&i| ordered[i]).collect();
        if check(&pairs) {
            found += 1;
        }
        for slot in (0..5).rev() {
            idx[slot] += 1;
            if idx[slot] < ordered.len() {
                continue 'outer;
            }
            idx[slot] = 0;
        }
        break;
    }
    assert!(found > 0);
}

#[test]
fn dot_export_lists_every_edge() {
    let c = fixtures::three_qubit_chain();
    let dag = build_dag(&c).unwrap();
    let dot = dag.to_dot(&c, &[]);
    assert_eq!(dot.matches("->").count(), dag.edge_count());
}
