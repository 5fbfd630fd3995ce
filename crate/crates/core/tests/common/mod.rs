#![allow(dead_code)]

use proptest::prelude::*;
use qreuse::{BoolMatrix, Circuit, Instruction};

/// Gate lists on `n` qubits: mostly CX/CZ, some single-qubit and CCX gates.
pub fn gates(n: usize, max_gates: usize) -> impl Strategy<Value = Vec<Instruction>> {
    let one = (0..n).prop_map(|q| Instruction::gate("H", &[q]));
    let two = (0..n, 0..n).prop_filter("distinct", |(a, b)| a != b).prop_flat_map(|(a, b)| {
        prop_oneof![Just(Instruction::gate("CX", &[a, b])), Just(Instruction::gate("CZ", &[a, b]))]
    });
    let gate = if n >= 3 {
        let three = (0..n, 0..n, 0..n)
            .prop_filter("distinct", |(a, b, c)| a != b && b != c && a != c)
            .prop_map(|(a, b, c)| Instruction::gate("CCX", &[a, b, c]));
        prop_oneof![2 => one, 6 => two, 1 => three].boxed()
    } else {
        prop_oneof![1 => one, 3 => two].boxed()
    };
    prop::collection::vec(gate, 0..=max_gates)
}

/// Normalized static circuits with `n` in `2..=max_n`.
pub fn circuit(max_n: usize, max_gates: usize) -> impl Strategy<Value = Circuit> {
    (2..=max_n).prop_flat_map(move |n| {
        gates(n, max_gates).prop_map(move |g| Circuit::from_instructions(n, g).unwrap().normalize().unwrap())
    })
}

/// Random square matrices of dimension `n`.
pub fn matrix(n: usize) -> impl Strategy<Value = BoolMatrix> {
    prop::collection::vec(any::<bool>(), n * n).prop_map(move |v| BoolMatrix::from_fn(n, |i, j| v[i * n + j]))
}

/// Reachability by forward propagation over the instruction list: root `i`
/// reaches terminal `j` iff qubit `j` is touched by a chain of gates that
/// starts on qubit `i`.
pub fn propagate_biadjacency(c: &Circuit) -> BoolMatrix {
    let n = c.width();
    BoolMatrix::from_fn(n, |i, j| {
        let mut hit = vec![false; n];
        hit[i] = true;
        for g in c.gates() {
            if g.qubits.iter().any(|&q| hit[q]) {
                for &q in &g.qubits {
                    hit[q] = true;
                }
            }
        }
        hit[j]
    })
}

/// Entrywise Boolean product, written out longhand.
pub fn naive_product(a: &BoolMatrix, b: &BoolMatrix) -> BoolMatrix {
    let n = a.n();
    BoolMatrix::from_fn(n, |i, j| (0..n).any(|l| a.get(i, l) && b.get(l, j)))
}

/// Equality up to a simultaneous row and column relabelling.
pub fn equal_up_to_permutation(a: &BoolMatrix, b: &BoolMatrix) -> bool {
    fn go(a: &BoolMatrix, b: &BoolMatrix, perm: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let k = perm.len();
        if k == a.n() {
            return true;
        }
        for p in 0..a.n() {
            if used[p] {
                continue;
            }
            perm.push(p);
            let ok = (0..=k).all(|i| a.get(i, k) == b.get(perm[i], p) && a.get(k, i) == b.get(p, perm[i]));
            if ok {
                used[p] = true;
                if go(a, b, perm, used) {
                    return true;
                }
                used[p] = false;
            }
            perm.pop();
        }
        false
    }
    a.n() == b.n() && go(a, b, &mut Vec::new(), &mut vec![false; a.n()])
}
