//! Qubit-reuse compilation: rewrite a static quantum circuit as a dynamic
//! circuit on fewer registers by measuring, resetting and reusing qubits.
//!
//! The pipeline is
//!
//! 1. describe a circuit ([`Circuit`], or a generator in [`generators`]);
//! 2. compute its root-to-terminal reachability matrix `B` ([`dag`]);
//! 3. choose terminal→root edges inside the candidate matrix `¬Bᵀ` that keep
//!    the DAG acyclic ([`exact`], [`heuristics`]);
//! 4. emit the dynamic circuit and, at small sizes, check that its outcome
//!    distribution matches the original ([`verify`]).
//!
//! ```
//! use qreuse::{generators::fixtures, heuristics::{greedy_compile, HeuristicConfig}, verify};
//!
//! let circuit = fixtures::three_qubit_chain();
//! let result = greedy_compile(&circuit, &HeuristicConfig::default()).unwrap();
//! assert_eq!(result.compiled_width, 2);
//! assert!(verify::assert_compiled_equivalent(&circuit, &result, 1e-9).unwrap());
//! ```

pub mod bench;
pub mod boolmat;
pub mod circuit;
pub mod compile;
pub mod dag;
pub mod error;
pub mod exact;
pub mod generators;
pub mod heuristics;
pub mod reducibility;
pub mod verify;

pub use boolmat::BoolMatrix;
pub use circuit::{Circuit, Instruction, Kind};
pub use compile::{Algorithm, CompilationResult, EdgeSelection, Problem};
pub use dag::{build_dag, emit_dynamic, matrix_biadjacency, simplified_dag, CircuitDag};
pub use error::{Error, Result};
pub use exact::{brute_force_width, optimal_compile};
pub use generators::FamilySpec;
pub use heuristics::{HeuristicConfig, SwapRoles};
pub use reducibility::Method;

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
struct ReadmeDoctests;
