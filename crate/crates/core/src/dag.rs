//! DAG representation of a static circuit, its simplified root-to-terminal
//! form, and emission of a dynamic circuit from a DAG with added edges.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt::Write as _;

use crate::boolmat::BoolMatrix;
use crate::circuit::{Circuit, Instruction, Kind};
use crate::error::{Error, Result};

/// Vertices are instruction ids; `roots[q]` and `terminals[q]` are the RESET
/// and MEASURE vertices of qubit `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircuitDag {
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
    pub roots: Vec<usize>,
    pub terminals: Vec<usize>,
}

impl CircuitDag {
    pub fn vertex_count(&self) -> usize {
        self.succ.len()
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.succ[v]
    }

    pub fn predecessors(&self, v: usize) -> &[usize] {
        &self.pred[v]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.succ.iter().enumerate().flat_map(|(u, vs)| vs.iter().map(move |&v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.succ[u].contains(&v)
    }

    /// Adds `u → v` unless present.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        if !self.pred[v].contains(&u) {
            self.succ[u].push(v);
            self.pred[v].push(u);
        }
    }

    /// Copy with extra edges, given as vertex pairs.
    pub fn with_edges(&self, extra: &[(usize, usize)]) -> CircuitDag {
        let mut d = self.clone();
        for &(u, v) in extra {
            d.add_edge(u, v);
        }
        d
    }

    /// Kahn's algorithm, always releasing the smallest ready vertex.
    pub fn topological_order(&self) -> Result<Vec<usize>> {
        let mut indeg: Vec<usize> = self.pred.iter().map(Vec::len).collect();
        let mut heap: BinaryHeap<Reverse<usize>> =
            (0..self.vertex_count()).filter(|&v| indeg[v] == 0).map(Reverse).collect();
        let mut order = Vec::with_capacity(self.vertex_count());
        while let Some(Reverse(v)) = heap.pop() {
            order.push(v);
            for &w in &self.succ[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    heap.push(Reverse(w));
                }
            }
        }
        if order.len() == self.vertex_count() {
            Ok(order)
        } else {
            Err(Error::Cycle)
        }
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_ok()
    }

    /// Vertices reachable from `start` (including itself).
    pub fn reachable_from(&self, start: usize) -> Vec<bool> {
        let mut seen = vec![false; self.vertex_count()];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            for &w in &self.succ[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Graphviz rendering; `added` edges are drawn dashed.
    pub fn to_dot(&self, circuit: &Circuit, added: &[(usize, usize)]) -> String {
        let mut s = String::from("digraph circuit {\n  rankdir=LR;\n");
        for ins in circuit.instructions() {
            let style = if self.roots.contains(&ins.id) {
                ", style=filled, fillcolor=lightblue"
            } else if self.terminals.contains(&ins.id) {
                ", style=filled, fillcolor=lightpink"
            } else {
                ""
            };
            let _ = writeln!(s, "  {} [label=\"{}\\n{}\"{}];", ins.id, ins.id, ins.name(), style);
        }
        for (u, v) in self.edges() {
            if !added.contains(&(u, v)) {
                let _ = writeln!(s, "  {u} -> {v};");
            }
        }
        for (u, v) in added {
            let _ = writeln!(s, "  {u} -> {v} [style=dashed, color=green];");
        }
        s.push_str("}\n");
        s
    }
}

/// Builds the DAG, honouring commutable group tags.
///
/// On each qubit, an instruction depends on the previous one unless both
/// share a group tag; members of a group instead depend on whatever precedes
/// the group on that qubit (the last untagged operation, or every member of
/// the previous group).
pub fn build_dag(circuit: &Circuit) -> Result<CircuitDag> {
    circuit.check_static()?;
    let ins = circuit.instructions();
    let m = ins.len();
    let group = |v: usize| ins[v].group;
    let mut dag =
        CircuitDag { succ: vec![Vec::new(); m], pred: vec![Vec::new(); m], roots: Vec::new(), terminals: Vec::new() };
    let mut causal: Vec<Vec<usize>> = vec![Vec::new(); circuit.width()];
    for inst in ins {
        let v = inst.id;
        let g = inst.group;
        for &q in &inst.qubits {
            if let Some(&pre) = causal[q].last() {
                let mut pre_group = group(pre);
                match pre_group {
                    None => dag.add_edge(pre, v),
                    Some(pg) => {
                        let mut done = false;
                        if g == Some(pg) {
                            for &u in causal[q].iter().rev() {
                                let cg = group(u);
                                if cg != g {
                                    pre_group = cg;
                                    if cg.is_none() {
                                        dag.add_edge(u, v);
                                        done = true;
                                    }
                                    break;
                                }
                            }
                        }
                        if !done {
                            let members: Vec<usize> =
                                causal[q].iter().copied().filter(|&u| group(u) == pre_group).collect();
                            for u in members {
                                dag.add_edge(u, v);
                            }
                        }
                    }
                }
            }
            causal[q].push(v);
        }
    }
    for list in &causal {
        dag.roots.push(list[0]);
        dag.terminals.push(*list.last().expect("static circuits touch every qubit"));
    }
    Ok(dag)
}

/// `B[i][j] = 1` iff a path leads from `roots[i]` to `terminals[j]`, by one
/// depth-first search per root.
pub fn simplified_dag(dag: &CircuitDag) -> BoolMatrix {
    let n = dag.roots.len();
    let mut b = BoolMatrix::zeros(n);
    for (i, &r) in dag.roots.iter().enumerate() {
        let seen = dag.reachable_from(r);
        for (j, &t) in dag.terminals.iter().enumerate() {
            if seen[t] {
                b.set(i, j, true);
            }
        }
    }
    b
}

/// Biadjacency matrix by folding the column-OR update over the
/// instructions, in `O(mn)`. Group tags are ignored.
pub fn matrix_biadjacency(circuit: &Circuit) -> Result<BoolMatrix> {
    let mut b = BoolMatrix::identity(circuit.width());
    for ins in circuit.gates().filter(|g| g.qubits.len() > 1) {
        b.gate_update(&ins.qubits)?;
    }
    Ok(b)
}

/// Biadjacency matrix honouring group tags: the DAG route when tags are
/// present, the matrix route otherwise.
pub fn biadjacency(circuit: &Circuit) -> Result<BoolMatrix> {
    if circuit.has_groups() {
        Ok(simplified_dag(&build_dag(circuit)?))
    } else {
        circuit.check_static()?;
        matrix_biadjacency(circuit)
    }
}

/// A dynamic circuit together with the source instruction id of every
/// emitted instruction.
#[derive(Debug, Clone, PartialEq)]
pub struct Emitted {
    pub circuit: Circuit,
    pub source_ids: Vec<usize>,
}

/// Emits the dynamic circuit realised by adding `added` (pairs of terminal
/// vertex, root vertex) to `dag`.
pub fn emit_dynamic(circuit: &Circuit, dag: &CircuitDag, added: &[(usize, usize)]) -> Result<Circuit> {
    emit_dynamic_traced(circuit, dag, added).map(|e| e.circuit)
}

/// [`emit_dynamic`], also reporting where each instruction came from.
pub fn emit_dynamic_traced(circuit: &Circuit, dag: &CircuitDag, added: &[(usize, usize)]) -> Result<Emitted> {
    let qubit_of_terminal = |v: usize| dag.terminals.iter().position(|&t| t == v);
    let qubit_of_root = |v: usize| dag.roots.iter().position(|&r| r == v);
    let mut pairs = Vec::with_capacity(added.len());
    for &(t, r) in added {
        let qt = qubit_of_terminal(t).ok_or_else(|| Error::InvalidEdges(format!("vertex {t} is not a terminal")))?;
        let qr = qubit_of_root(r).ok_or_else(|| Error::InvalidEdges(format!("vertex {r} is not a root")))?;
        if pairs.iter().any(|&(a, _, _)| a == qt) {
            return Err(Error::InvalidEdges(format!("terminal of qubit {qt} used twice")));
        }
        if pairs.iter().any(|&(_, b, _)| b == qr) {
            return Err(Error::InvalidEdges(format!("root of qubit {qr} used twice")));
        }
        pairs.push((qt, qr, t));
    }
    let modified = dag.with_edges(added);
    let order = modified.topological_order()?;
    let mut position = vec![0; order.len()];
    for (k, &v) in order.iter().enumerate() {
        position[v] = k;
    }
    pairs.sort_by_key(|&(_, _, t)| position[t]);
    let mut reg: Vec<usize> = (0..circuit.width()).collect();
    for &(qt, qr, _) in &pairs {
        reg[qr] = reg[qt];
    }
    let mut compact = vec![usize::MAX; circuit.width()];
    let mut next = 0;
    let mut out = Vec::with_capacity(order.len());
    for &v in &order {
        let src = &circuit.instructions()[v];
        let mut ins = Instruction { group: None, ..src.clone() };
        for q in &mut ins.qubits {
            let r = reg[*q];
            if compact[r] == usize::MAX {
                compact[r] = next;
                next += 1;
            }
            *q = compact[r];
        }
        out.push(ins);
    }
    let emitted = Circuit::from_instructions(next.max(1), out)?;
    debug_assert_eq!(emitted.width(), circuit.width() - added.len());
    debug_assert!(emitted.instructions().iter().filter(|i| i.kind == Kind::Reset).count() == circuit.width());
    Ok(Emitted { circuit: emitted, source_ids: order })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::fixtures;

    #[test]
    fn chain_dag_shape() {
        let c = fixtures::three_qubit_chain();
        let dag = build_dag(&c).unwrap();
        assert_eq!(dag.vertex_count(), 11);
        assert_eq!(dag.roots, vec![0, 1, 2]);
        assert_eq!(dag.terminals, vec![8, 9, 10]);
        let b = simplified_dag(&dag);
        assert_eq!(b, BoolMatrix::parse("111\n111\n011").unwrap());
        assert_eq!(b, matrix_biadjacency(&c).unwrap());
    }

    #[test]
    fn single_qubit_path() {
        let c = Circuit::from_instructions(
            1,
            vec![Instruction::reset(0), Instruction::gate("H", &[0]), Instruction::measure(0)],
        )
        .unwrap();
        let dag = build_dag(&c).unwrap();
        assert_eq!(dag.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        assert_eq!(dag.topological_order().unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn commutable_block_has_no_internal_edges() {
        let c = fixtures::commutable_example();
        let dag = build_dag(&c).unwrap();
        let czs: Vec<usize> = c.gates().filter(|g| g.group.is_some()).map(|g| g.id).collect();
        for &a in &czs {
            for &b in &czs {
                assert!(!dag.has_edge(a, b));
            }
        }
        assert!(dag.is_acyclic());
    }

    #[test]
    fn chain_emission() {
        let c = fixtures::three_qubit_chain();
        let dag = build_dag(&c).unwrap();
        let e = emit_dynamic_traced(&c, &dag, &[(8, 2)]).unwrap();
        assert_eq!(e.circuit.width(), 2);
        assert_eq!(e.source_ids, vec![0, 1, 3, 4, 6, 8, 2, 5, 7, 9, 10]);
        e.circuit.check_dynamic().unwrap();
        let q: Vec<usize> = e.circuit.instructions().iter().map(|i| i.qubits[0]).collect();
        assert_eq!(q, vec![0, 1, 0, 1, 0, 0, 0, 0, 1, 1, 0]);
    }

    #[test]
    fn emission_rejects_cycles_and_non_terminals() {
        let c = fixtures::three_qubit_chain();
        let dag = build_dag(&c).unwrap();
        // B[0][1] = 1: root 0 reaches terminal 1, so terminal 1 → root 0 closes a cycle.
        assert!(matches!(emit_dynamic(&c, &dag, &[(9, 0)]), Err(Error::Cycle)));
        assert!(matches!(emit_dynamic(&c, &dag, &[(6, 2)]), Err(Error::InvalidEdges(_))));
        let plain = emit_dynamic(&c, &dag, &[]).unwrap();
        assert_eq!(plain.width(), 3);
    }

    #[test]
    fn topological_order_detects_cycle() {
        let c = fixtures::three_qubit_chain();
        let mut dag = build_dag(&c).unwrap();
        dag.add_edge(8, 2);
        assert!(dag.is_acyclic());
        dag.add_edge(9, 0);
        assert!(matches!(dag.topological_order(), Err(Error::Cycle)));
    }

    #[test]
    fn dot_marks_added_edges() {
        let c = fixtures::three_qubit_chain();
        let dag = build_dag(&c).unwrap().with_edges(&[(8, 2)]);
        let dot = dag.to_dot(&c, &[(8, 2)]);
        assert!(dot.contains("8 -> 2 [style=dashed"));
    }
}
