//! Polynomial-time compilers: MRV, randomized greedy, the level-`L` hybrid,
//! and the causal-cone baseline (DCKF).

use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::boolmat::BoolMatrix;
use crate::circuit::Circuit;
use crate::compile::{CompilationResult, Problem};
use crate::error::{Error, Result};

/// MRV orientation: pick terminals first, roots first, or both and keep the
/// better.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SwapRoles {
    #[default]
    Off,
    On,
    Auto,
}

impl FromStr for SwapRoles {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "off" | "false" => Ok(SwapRoles::Off),
            "on" | "true" => Ok(SwapRoles::On),
            "auto" | "both" => Ok(SwapRoles::Auto),
            other => Err(Error::InvalidParams(format!("unknown swap-roles mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HeuristicConfig {
    pub seed: u64,
    /// Independent greedy runs; run `k` draws from a generator seeded with
    /// `seed ^ k`.
    pub runs: usize,
    pub swap_roles: SwapRoles,
    /// Hybrid hierarchy level `L`.
    pub level: usize,
}

impl Default for HeuristicConfig {
    fn default() -> Self {
        HeuristicConfig { seed: 0, runs: 1, swap_roles: SwapRoles::Off, level: 0 }
    }
}

impl HeuristicConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
    pub fn with_runs(mut self, runs: usize) -> Self {
        self.runs = runs;
        self
    }
    pub fn with_swap_roles(mut self, s: SwapRoles) -> Self {
        self.swap_roles = s;
        self
    }
    pub fn with_level(mut self, level: usize) -> Self {
        self.level = level;
        self
    }
}

/// Terminal with the fewest candidates; ties to the smallest index.
fn fewest_candidates(c: &BoolMatrix) -> Option<usize> {
    (0..c.n()).map(|t| (c.row_sum(t), t)).filter(|&(s, _)| s > 0).min().map(|(_, t)| t)
}

/// MRV on a candidate matrix; returns `(row, column)` pairs.
pub fn mrv_edges(c: &BoolMatrix) -> Vec<(usize, usize)> {
    let mut c = c.clone();
    let mut edges = Vec::new();
    while let Some(t) = fewest_candidates(&c) {
        let cols = c.col_sums();
        let r = c.row_ones(t).min_by_key(|&r| (cols[r], r)).expect("row has a candidate");
        edges.push((t, r));
        c.candidate_update(t, r);
    }
    edges
}

/// MRV with roots choosing terminals; returns `(terminal, root)` pairs.
pub fn mrv_edges_swapped(c: &BoolMatrix) -> Vec<(usize, usize)> {
    mrv_edges(&c.transpose()).into_iter().map(|(r, t)| (t, r)).collect()
}

fn mrv_oriented(c: &BoolMatrix, mode: SwapRoles) -> Vec<(usize, usize)> {
    match mode {
        SwapRoles::Off => mrv_edges(c),
        SwapRoles::On => mrv_edges_swapped(c),
        SwapRoles::Auto => {
            let a = mrv_edges(c);
            let b = mrv_edges_swapped(c);
            if b.len() > a.len() {
                b
            } else {
                a
            }
        }
    }
}

pub fn mrv_compile(circuit: &Circuit, cfg: &HeuristicConfig) -> Result<CompilationResult> {
    let started = Instant::now();
    let p = Problem::new(circuit)?;
    let edges = mrv_oriented(&p.c, cfg.swap_roles);
    p.finish("mrv", edges, false, started)
}

/// One greedy pass. Every candidate is scored by the ones surviving its
/// update plus one; the winner is drawn uniformly among the top scores.
pub fn greedy_edges(c: &BoolMatrix, rng: &mut impl Rng) -> Vec<(usize, usize)> {
    let mut c = c.clone();
    let mut edges = Vec::new();
    let mut best = Vec::new();
    while !c.is_zero() {
        best.clear();
        let mut top = 0;
        for t in 0..c.n() {
            for r in c.row_ones(t) {
                let score = c.count_after_update(t, r) + 1;
                if score > top {
                    top = score;
                    best.clear();
                }
                if score == top {
                    best.push((t, r));
                }
            }
        }
        let (t, r) = best[rng.gen_range(0..best.len())];
        edges.push((t, r));
        c.candidate_update(t, r);
    }
    edges
}

/// Best of `runs` greedy passes; the earliest run wins ties.
pub fn greedy_best(c: &BoolMatrix, seed: u64, runs: usize) -> Vec<(usize, usize)> {
    let results: Vec<Vec<(usize, usize)>> = (0..runs.max(1) as u64)
        .into_par_iter()
        .map(|k| greedy_edges(c, &mut ChaCha8Rng::seed_from_u64(seed ^ k)))
        .collect();
    results.into_iter().reduce(|a, b| if b.len() > a.len() { b } else { a }).unwrap_or_default()
}

pub fn greedy_compile(circuit: &Circuit, cfg: &HeuristicConfig) -> Result<CompilationResult> {
    if cfg.runs == 0 {
        return Err(Error::InvalidParams("runs must be at least 1".into()));
    }
    let started = Instant::now();
    let p = Problem::new(circuit)?;
    let edges = greedy_best(&p.c, cfg.seed, cfg.runs);
    p.finish("greedy", edges, false, started)
}

/// Exhaustive over the `L` fewest-candidate terminals (each may also stay
/// unmatched), MRV on what remains.
pub fn hybrid_compile(circuit: &Circuit, cfg: &HeuristicConfig) -> Result<CompilationResult> {
    let started = Instant::now();
    let p = Problem::new(circuit)?;
    let n = p.n();
    if cfg.level > n {
        return Err(Error::InvalidParams(format!("level {} exceeds width {n}", cfg.level)));
    }
    let mut order: Vec<(usize, usize)> = (0..n).map(|t| (p.c.row_sum(t), t)).filter(|&(s, _)| s > 0).collect();
    order.sort_unstable();
    let chosen: Vec<usize> = order.iter().take(cfg.level).map(|&(_, t)| t).collect();
    let options: Vec<Vec<usize>> = chosen.iter().map(|&t| p.c.row_ones(t).collect()).collect();

    let mut best: Option<Vec<(usize, usize)>> = None;
    let mut assignment: Vec<Option<usize>> = Vec::with_capacity(chosen.len());
    enumerate(&options, &mut assignment, &mut |a| {
        let fixed: Vec<(usize, usize)> = chosen.iter().zip(a).filter_map(|(&t, r)| r.map(|r| (t, r))).collect();
        let modified = p.dag.with_edges(&p.vertex_edges(&fixed));
        if !modified.is_acyclic() {
            return;
        }
        let mut residual = BoolMatrix::zeros(n);
        let used: Vec<bool> = (0..n).map(|r| fixed.iter().any(|&(_, x)| x == r)).collect();
        for r in (0..n).filter(|&r| !used[r]) {
            let seen = modified.reachable_from(p.dag.roots[r]);
            for t in (0..n).filter(|t| !chosen.contains(t)) {
                if !seen[p.dag.terminals[t]] {
                    residual.set(t, r, true);
                }
            }
        }
        let mut edges = fixed;
        edges.extend(mrv_edges(&residual));
        if best.as_ref().is_none_or(|b| edges.len() > b.len()) {
            best = Some(edges);
        }
    });
    let edges = best.unwrap_or_default();
    p.finish("hybrid", edges, false, started)
}

/// Cartesian product of `options[i] ∪ {⊥}` without repeated roots.
fn enumerate(options: &[Vec<usize>], acc: &mut Vec<Option<usize>>, visit: &mut impl FnMut(&[Option<usize>])) {
    let i = acc.len();
    if i == options.len() {
        visit(acc);
        return;
    }
    for &r in &options[i] {
        if acc.contains(&Some(r)) {
            continue;
        }
        acc.push(Some(r));
        enumerate(options, acc, visit);
        acc.pop();
    }
    acc.push(None);
    enumerate(options, acc, visit);
    acc.pop();
}

/// Causal cones: `cones[q]` lists the roots reaching the terminal of `q`.
fn causal_cones(b: &BoolMatrix) -> Vec<Vec<usize>> {
    (0..b.n()).map(|q| b.col_ones(q).collect()).collect()
}

/// Measurement-order simulation; `first` optionally forces the first
/// measured qubit. Returns the added `(terminal, root)` edges.
fn dckf_edges(b: &BoolMatrix, first: Option<usize>) -> Vec<(usize, usize)> {
    let n = b.n();
    let cones = causal_cones(b);
    let mut covered = vec![false; n];
    let mut measured = vec![false; n];
    let mut register: Vec<Option<usize>> = Vec::new();
    let mut occupation: Vec<Vec<usize>> = Vec::new();
    let mut edges = Vec::new();
    for step in 0..n {
        let next = match first {
            Some(f) if step == 0 => f,
            _ => {
                let mut size = n + 1;
                let mut next = usize::MAX;
                for q in (0..n).filter(|&q| !measured[q]) {
                    let union = (0..n).filter(|&x| covered[x] || cones[q].contains(&x)).count();
                    if union < size {
                        size = union;
                        next = q;
                    }
                }
                next
            }
        };
        for &q in cones[next].iter().filter(|&&q| !measured[q]) {
            if register.contains(&Some(q)) {
                continue;
            }
            if let Some(addr) = register.iter().position(Option::is_none) {
                let prev = *occupation[addr].last().expect("freed registers were occupied");
                edges.push((prev, q));
                occupation[addr].push(q);
                register[addr] = Some(q);
            } else {
                occupation.push(vec![q]);
                register.push(Some(q));
            }
        }
        let slot = register.iter().position(|&x| x == Some(next)).expect("measured qubit is active");
        register[slot] = None;
        measured[next] = true;
        for &x in &cones[next] {
            covered[x] = true;
        }
    }
    edges
}

pub fn dckf_compile(circuit: &Circuit) -> Result<CompilationResult> {
    let started = Instant::now();
    let p = Problem::new(circuit)?;
    let edges = dckf_edges(&p.b, None);
    p.finish("dckf", edges, false, started)
}

/// Experimental: DCKF once per forced first measurement, keeping the best
/// (smallest first qubit on ties).
pub fn dckf_first_qubit_search(circuit: &Circuit) -> Result<CompilationResult> {
    let started = Instant::now();
    let p = Problem::new(circuit)?;
    let edges = (0..p.n())
        .map(|f| dckf_edges(&p.b, Some(f)))
        .reduce(|a, b| if b.len() > a.len() { b } else { a })
        .unwrap_or_default();
    p.finish("dckf-fqs", edges, false, started)
}
