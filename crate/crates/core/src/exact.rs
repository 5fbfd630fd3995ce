//! Optimal compilation by branch and bound over the candidate matrix, and a
//! brute-force width oracle for small circuits.
//!
//! The search never checks acyclicity directly. After an edge `(t, r)` is
//! chosen, [`BoolMatrix::candidate_update`] clears every entry that would now
//! close a cycle, so the residual candidate matrix always lists exactly the
//! edges that can still be added.

use std::time::Instant;

use crate::boolmat::BoolMatrix;
use crate::circuit::Circuit;
use crate::compile::{CompilationResult, Problem};
use crate::error::{Error, Result};
use crate::heuristics::{greedy_best, mrv_edges, mrv_edges_swapped};

/// Search nodes expanded before the solver gives up on proving optimality.
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// Largest width accepted by [`brute_force_width`].
pub const BRUTE_FORCE_LIMIT: usize = 8;

struct Search {
    budget: u64,
    nodes: u64,
    exhausted: bool,
    best: Vec<(usize, usize)>,
    cap: usize,
}

impl Search {
    fn run(&mut self, c: &BoolMatrix, chosen: &mut Vec<(usize, usize)>) {
        if self.best.len() >= self.cap || self.exhausted {
            return;
        }
        if self.nodes >= self.budget {
            self.exhausted = true;
            return;
        }
        self.nodes += 1;
        if chosen.len() > self.best.len() {
            self.best.clone_from(chosen);
        }
        if chosen.len() + cheap_bound(c) <= self.best.len() {
            return;
        }
        if chosen.len() + max_matching(c) <= self.best.len() {
            return;
        }
        let Some(t) = (0..c.n()).map(|t| (c.row_sum(t), t)).filter(|&(s, _)| s > 0).min().map(|(_, t)| t) else {
            return;
        };
        let cols = c.col_sums();
        let mut roots: Vec<usize> = c.row_ones(t).collect();
        roots.sort_by_key(|&r| (cols[r], r));
        for r in roots {
            let mut next = c.clone();
            next.candidate_update(t, r);
            chosen.push((t, r));
            self.run(&next, chosen);
            chosen.pop();
        }
        let mut skip = c.clone();
        skip.clear_row(t);
        self.run(&skip, chosen);
    }
}

fn cheap_bound(c: &BoolMatrix) -> usize {
    let rows = c.row_sums().iter().filter(|&&s| s > 0).count();
    let cols = c.col_sums().iter().filter(|&&s| s > 0).count();
    rows.min(cols)
}

/// Maximum bipartite matching in `c` (Kuhn's augmenting paths).
pub fn max_matching(c: &BoolMatrix) -> usize {
    let n = c.n();
    let mut owner: Vec<Option<usize>> = vec![None; n];
    let mut size = 0;
    for t in 0..n {
        let mut seen = vec![false; n];
        if augment(c, t, &mut seen, &mut owner) {
            size += 1;
        }
    }
    size
}

fn augment(c: &BoolMatrix, t: usize, seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
    for r in c.row_ones(t) {
        if seen[r] {
            continue;
        }
        seen[r] = true;
        if owner[r].is_none_or(|u| augment(c, u, seen, owner)) {
            owner[r] = Some(t);
            return true;
        }
    }
    false
}

/// Maximum edge selection on a candidate matrix. Returns the edges and
/// whether the search finished within `budget` nodes.
pub fn optimal_edges(c: &BoolMatrix, budget: u64) -> (Vec<(usize, usize)>, bool) {
    let n = c.n();
    let mut best = mrv_edges(c);
    for cand in [mrv_edges_swapped(c), greedy_best(c, 0, 10)] {
        if cand.len() > best.len() {
            best = cand;
        }
    }
    let mut search = Search { budget, nodes: 0, exhausted: false, best, cap: n.saturating_sub(1) };
    search.run(c, &mut Vec::new());
    (search.best, !search.exhausted)
}

/// Optimal compilation. `node_budget` defaults to [`DEFAULT_NODE_BUDGET`];
/// when it runs out the best selection found so far is returned with
/// `optimal == false`.
pub fn optimal_compile(circuit: &Circuit, node_budget: Option<u64>) -> Result<CompilationResult> {
    let started = Instant::now();
    let p = Problem::new(circuit)?;
    let (edges, optimal) = optimal_edges(&p.c, node_budget.unwrap_or(DEFAULT_NODE_BUDGET));
    p.finish("exact", edges, optimal, started)
}

/// Minimum width by enumerating every partial matching inside the candidate
/// matrix and keeping those whose block matrix `[[O, B], [F, O]]` is
/// nilpotent.
pub fn brute_force_width(circuit: &Circuit) -> Result<usize> {
    let p = Problem::new(circuit)?;
    let n = p.n();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge(format!("brute force needs n <= {BRUTE_FORCE_LIMIT}, got {n}")));
    }
    let mut f = BoolMatrix::zeros(n);
    let mut used = vec![false; n];
    Ok(n - brute(&p.b, &p.c, 0, &mut f, &mut used))
}

fn brute(b: &BoolMatrix, c: &BoolMatrix, t: usize, f: &mut BoolMatrix, used: &mut [bool]) -> usize {
    if t == c.n() {
        return 0;
    }
    let mut best = brute(b, c, t + 1, f, used);
    for r in c.row_ones(t) {
        if used[r] {
            continue;
        }
        f.set(t, r, true);
        // cycles persist in supersets, so a cyclic partial selection is pruned
        if BoolMatrix::block_adjacency(b, f).expect("same dimension").is_nilpotent() {
            used[r] = true;
            best = best.max(1 + brute(b, c, t + 1, f, used));
            used[r] = false;
        }
        f.set(t, r, false);
    }
    best
}
