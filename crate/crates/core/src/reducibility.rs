//! Three independent deciders for whether a static circuit admits any
//! qubit reuse.

use std::fmt;
use std::str::FromStr;

use crate::circuit::Circuit;
use crate::dag::{build_dag, matrix_biadjacency, simplified_dag};
use crate::error::{Error, Result};

/// Which decider to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    /// Depth-first search over the DAG; the only method honouring group tags.
    Dfs,
    /// One pass of reachable-set unions.
    Reach,
    /// Column-OR fold of the biadjacency matrix.
    Matrix,
    /// `Dfs` for tagged circuits, `Matrix` otherwise.
    #[default]
    Auto,
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Method> {
        match s.to_ascii_lowercase().as_str() {
            "dfs" => Ok(Method::Dfs),
            "reach" | "reachability" => Ok(Method::Reach),
            "matrix" => Ok(Method::Matrix),
            "auto" => Ok(Method::Auto),
            other => Err(Error::InvalidParams(format!("unknown method {other:?}"))),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Dfs => "dfs",
            Method::Reach => "reach",
            Method::Matrix => "matrix",
            Method::Auto => "auto",
        })
    }
}

/// `sets[i]` holds the qubits known to reach qubit `i`, itself included.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachableSets {
    n: usize,
    sets: Vec<Vec<u64>>,
}

impl ReachableSets {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        let mut sets = vec![vec![0u64; words]; n];
        for (i, s) in sets.iter_mut().enumerate() {
            s[i / 64] |= 1 << (i % 64);
        }
        ReachableSets { n, sets }
    }

    pub fn contains(&self, i: usize, q: usize) -> bool {
        self.sets[i][q / 64] >> (q % 64) & 1 == 1
    }

    pub fn len_of(&self, i: usize) -> usize {
        self.sets[i].iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Every listed qubit's set becomes the union of all of them.
    pub fn merge(&mut self, qubits: &[usize]) {
        let mut union = vec![0u64; self.sets[0].len()];
        for &q in qubits {
            for (u, w) in union.iter_mut().zip(&self.sets[q]) {
                *u |= w;
            }
        }
        for &q in qubits {
            self.sets[q].clone_from(&union);
        }
    }

    /// Runs the single pass over a circuit's multi-qubit gates.
    pub fn of(circuit: &Circuit) -> Self {
        let mut r = ReachableSets::new(circuit.width());
        for g in circuit.gates().filter(|g| g.qubits.len() > 1) {
            r.merge(&g.qubits);
        }
        r
    }

    pub fn all_mutually_reachable(&self) -> bool {
        (0..self.n).all(|i| self.len_of(i) == self.n)
    }
}

fn reject_tags(circuit: &Circuit, method: &str) -> Result<()> {
    if circuit.has_groups() {
        return Err(Error::Unsupported(format!("the {method} decider does not model commutable groups; use dfs")));
    }
    Ok(())
}

/// Reducible iff the simplified DAG is not complete bipartite.
pub fn is_reducible_dfs(circuit: &Circuit) -> Result<bool> {
    Ok(!simplified_dag(&build_dag(circuit)?).is_all_ones())
}

/// Reducible iff some qubit is not reached by every other qubit.
pub fn is_reducible_reachability(circuit: &Circuit) -> Result<bool> {
    reject_tags(circuit, "reachability")?;
    circuit.check_static()?;
    Ok(!ReachableSets::of(circuit).all_mutually_reachable())
}

/// Reducible iff the column-OR biadjacency matrix is not `J_n`.
pub fn is_reducible_matrix(circuit: &Circuit) -> Result<bool> {
    reject_tags(circuit, "matrix")?;
    circuit.check_static()?;
    Ok(!matrix_biadjacency(circuit)?.is_all_ones())
}

/// Dispatches to a decider, returning the verdict and the method actually used.
pub fn check(circuit: &Circuit, method: Method) -> Result<(bool, Method)> {
    let method = match method {
        Method::Auto if circuit.has_groups() => Method::Dfs,
        Method::Auto => Method::Matrix,
        m => m,
    };
    let verdict = match method {
        Method::Dfs => is_reducible_dfs(circuit)?,
        Method::Reach => is_reducible_reachability(circuit)?,
        Method::Matrix => is_reducible_matrix(circuit)?,
        Method::Auto => unreachable!(),
    };
    Ok((verdict, method))
}
