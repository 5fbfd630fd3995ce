//! Types shared by every compiler: the prepared problem, the edge-selection
//! certificate and the compilation result.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::boolmat::BoolMatrix;
use crate::circuit::Circuit;
use crate::dag::{build_dag, emit_dynamic_traced, matrix_biadjacency, simplified_dag, CircuitDag};
use crate::error::{Error, Result};
use crate::exact::optimal_compile;
use crate::heuristics::{
    dckf_compile, dckf_first_qubit_search, greedy_compile, hybrid_compile, mrv_compile, HeuristicConfig,
};

/// Every compiler behind one name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Exact,
    Mrv,
    Greedy,
    Hybrid,
    Dckf,
    /// Experimental DCKF with a search over the first measured qubit.
    DckfSearch,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::Exact,
        Algorithm::Mrv,
        Algorithm::Greedy,
        Algorithm::Hybrid,
        Algorithm::Dckf,
        Algorithm::DckfSearch,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Exact => "exact",
            Algorithm::Mrv => "mrv",
            Algorithm::Greedy => "greedy",
            Algorithm::Hybrid => "hybrid",
            Algorithm::Dckf => "dckf",
            Algorithm::DckfSearch => "dckf-fqs",
        }
    }

    /// Runs the compiler. `budget` only affects [`Algorithm::Exact`].
    pub fn compile(self, circuit: &Circuit, cfg: &HeuristicConfig, budget: Option<u64>) -> Result<CompilationResult> {
        match self {
            Algorithm::Exact => optimal_compile(circuit, budget),
            Algorithm::Mrv => mrv_compile(circuit, cfg),
            Algorithm::Greedy => greedy_compile(circuit, cfg),
            Algorithm::Hybrid => hybrid_compile(circuit, cfg),
            Algorithm::Dckf => dckf_compile(circuit),
            Algorithm::DckfSearch => dckf_first_qubit_search(circuit),
        }
    }
}

impl FromStr for Algorithm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.to_ascii_lowercase();
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown algorithm {s:?}")))
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A static circuit with its DAG, biadjacency matrix `b` and candidate
/// matrix `c`.
#[derive(Debug, Clone)]
pub struct Problem {
    pub circuit: Circuit,
    pub dag: CircuitDag,
    pub b: BoolMatrix,
    pub c: BoolMatrix,
}

impl Problem {
    pub fn new(circuit: &Circuit) -> Result<Problem> {
        let dag = build_dag(circuit)?;
        let b = if circuit.has_groups() { simplified_dag(&dag) } else { matrix_biadjacency(circuit)? };
        let c = b.candidate_matrix();
        Ok(Problem { circuit: circuit.clone(), dag, b, c })
    }

    pub fn n(&self) -> usize {
        self.circuit.width()
    }

    /// Qubit-indexed edges as DAG vertex pairs.
    pub fn vertex_edges(&self, edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
        edges.iter().map(|&(t, r)| (self.dag.terminals[t], self.dag.roots[r])).collect()
    }

    /// Certifies `edges` and emits the dynamic circuit.
    pub fn finish(
        &self,
        algorithm: &str,
        edges: Vec<(usize, usize)>,
        optimal: bool,
        started: Instant,
    ) -> Result<CompilationResult> {
        EdgeSelection::from_edges(self.n(), &edges)?.verify(&self.b)?;
        let emitted = emit_dynamic_traced(&self.circuit, &self.dag, &self.vertex_edges(&edges))?;
        let n = self.n();
        let alpha = edges.len();
        Ok(CompilationResult {
            algorithm: algorithm.to_string(),
            added_edges: edges,
            alpha,
            original_width: n,
            compiled_width: n - alpha,
            dynamic_circuit: emitted.circuit,
            source_ids: emitted.source_ids,
            reducibility_factor: 1.0 - (n - alpha) as f64 / n as f64,
            elapsed: started.elapsed(),
            optimal,
        })
    }
}

/// `f[t][r] = 1` selects the edge from the terminal of qubit `t` to the root
/// of qubit `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSelection {
    pub f: BoolMatrix,
}

impl EdgeSelection {
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut f = BoolMatrix::zeros(n);
        for &(t, r) in edges {
            if t >= n || r >= n {
                return Err(Error::InvalidEdges(format!("edge ({t}, {r}) out of range")));
            }
            if f.get(t, r) {
                return Err(Error::InvalidEdges(format!("edge ({t}, {r}) repeated")));
            }
            f.set(t, r, true);
        }
        Ok(EdgeSelection { f })
    }

    pub fn alpha(&self) -> usize {
        self.f.count_ones()
    }

    /// Checks `F ≤ C`, unit row and column sums, and nilpotency of
    /// `[[O, B], [F, O]]`.
    pub fn verify(&self, b: &BoolMatrix) -> Result<()> {
        let c = b.candidate_matrix();
        if !self.f.le(&c) {
            return Err(Error::InvalidEdges("selection is not contained in the candidate matrix".into()));
        }
        if self.f.row_sums().iter().any(|&s| s > 1) {
            return Err(Error::InvalidEdges("a terminal is reused twice".into()));
        }
        if self.f.col_sums().iter().any(|&s| s > 1) {
            return Err(Error::InvalidEdges("a root is assigned twice".into()));
        }
        if !BoolMatrix::block_adjacency(b, &self.f)?.is_nilpotent() {
            return Err(Error::InvalidEdges("selection closes a cycle".into()));
        }
        Ok(())
    }
}

/// Outcome of a compilation. Equality ignores `elapsed`.
#[derive(Debug, Clone)]
pub struct CompilationResult {
    pub algorithm: String,
    /// `(terminal qubit, root qubit)` pairs in the order they were chosen.
    pub added_edges: Vec<(usize, usize)>,
    pub alpha: usize,
    pub original_width: usize,
    pub compiled_width: usize,
    pub dynamic_circuit: Circuit,
    /// Source instruction id of every instruction of `dynamic_circuit`.
    pub source_ids: Vec<usize>,
    pub reducibility_factor: f64,
    pub elapsed: Duration,
    /// Proven optimal (exact solver within budget).
    pub optimal: bool,
}

impl PartialEq for CompilationResult {
    fn eq(&self, o: &Self) -> bool {
        self.algorithm == o.algorithm
            && self.added_edges == o.added_edges
            && self.alpha == o.alpha
            && self.original_width == o.original_width
            && self.compiled_width == o.compiled_width
            && self.dynamic_circuit == o.dynamic_circuit
            && self.source_ids == o.source_ids
            && self.reducibility_factor.to_bits() == o.reducibility_factor.to_bits()
            && self.optimal == o.optimal
    }
}

impl CompilationResult {
    /// `width n → n′ (r=…)`.
    pub fn summary(&self) -> String {
        format!("width {} \u{2192} {} (r={:.4})", self.original_width, self.compiled_width, self.reducibility_factor)
    }

    pub fn edge_selection(&self) -> EdgeSelection {
        EdgeSelection::from_edges(self.original_width, &self.added_edges).expect("result edges are distinct")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::fixtures;

    #[test]
    fn chain_certificate() {
        let p = Problem::new(&fixtures::three_qubit_chain()).unwrap();
        let ok = EdgeSelection::from_edges(3, &[(0, 2)]).unwrap();
        ok.verify(&p.b).unwrap();
        let bad = EdgeSelection::from_edges(3, &[(1, 0)]).unwrap();
        assert!(bad.verify(&p.b).is_err());
        let r = p.finish("manual", vec![(0, 2)], false, Instant::now()).unwrap();
        assert_eq!(r.compiled_width, 2);
        assert_eq!(r.summary(), "width 3 \u{2192} 2 (r=0.3333)");
    }

    #[test]
    fn cycle_through_two_edges_is_rejected() {
        // two qubits, no gates: t0→r1 and t1→r0 together form a cycle
        let p = Problem::new(&Circuit::new(2).normalize().unwrap()).unwrap();
        EdgeSelection::from_edges(2, &[(0, 1)]).unwrap().verify(&p.b).unwrap();
        assert!(EdgeSelection::from_edges(2, &[(0, 1), (1, 0)]).unwrap().verify(&p.b).is_err());
    }
}
