//! Benchmark sweeps: a JSON suite in, one CSV record per circuit, algorithm
//! and seed out.
//!
//! A suite is `{"entries": [...]}`. Structured entries name a family and its
//! parameters; array-valued parameters expand to their Cartesian product.
//! Random entries give `n_range`, `ratio` (gates per qubit) and `instances`
//! instead.
//!
//! ```json
//! {"entries": [
//!   {"family": "adder", "params": {"k": [1, 2, 3]}, "algos": ["mrv", "greedy", "dckf"]},
//!   {"family": "random", "n_range": [10, 20], "ratio": 1.5, "instances": 50,
//!    "algos": ["greedy", "dckf"], "seeds": [0]}
//! ]}
//! ```

use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::compile::Algorithm;
use crate::error::{Error, Result};
use crate::generators::FamilySpec;
use crate::heuristics::HeuristicConfig;

/// First line of every CSV written by [`write_csv`].
pub const FORMAT_LINE: &str = "# qreuse bench format 1";

/// Greedy runs when an entry does not say.
pub const DEFAULT_GREEDY_RUNS: usize = 10;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Suite {
    #[serde(default)]
    pub entries: Vec<SuiteEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteEntry {
    pub family: String,
    #[serde(default)]
    pub params: BTreeMap<String, Value>,
    #[serde(default)]
    pub n_range: Option<(usize, usize)>,
    #[serde(default)]
    pub ratio: Option<f64>,
    #[serde(default)]
    pub instances: Option<usize>,
    pub algos: Vec<String>,
    #[serde(default = "default_seeds")]
    pub seeds: Vec<u64>,
    #[serde(default)]
    pub runs: Option<usize>,
    #[serde(default)]
    pub level: usize,
    #[serde(default)]
    pub budget: Option<u64>,
}

fn default_seeds() -> Vec<u64> {
    vec![0]
}

impl Suite {
    pub fn parse(text: &str) -> Result<Suite> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Suite> {
        Suite::parse(&std::fs::read_to_string(path)?)
    }
}

/// One CSV row. Numeric fields are empty when the row failed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub id: String,
    pub family: String,
    pub params: String,
    pub n: usize,
    pub m: usize,
    pub algo: String,
    pub seed: u64,
    pub runs: usize,
    pub width_out: Option<usize>,
    pub alpha: Option<usize>,
    pub reducibility_factor: Option<f64>,
    pub depth_in: usize,
    pub depth_out: Option<usize>,
    pub elapsed_ms: Option<f64>,
    pub optimal: Option<bool>,
    pub error: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BenchOptions {
    /// Record wall-clock time; off makes the CSV bit-for-bit reproducible.
    pub timing: bool,
}

impl Default for BenchOptions {
    fn default() -> Self {
        BenchOptions { timing: true }
    }
}

fn expand_params(params: &BTreeMap<String, Value>) -> Vec<BTreeMap<String, Value>> {
    let mut out = vec![BTreeMap::new()];
    for (k, v) in params {
        let values = match v {
            Value::Array(xs) if k != "edges" => xs.clone(),
            other => vec![other.clone()],
        };
        out = out
            .into_iter()
            .flat_map(|base| {
                values.iter().map(move |x| {
                    let mut m = base.clone();
                    m.insert(k.clone(), x.clone());
                    m
                })
            })
            .collect();
    }
    out
}

/// The circuits an entry describes, in suite order.
pub fn entry_specs(entry: &SuiteEntry) -> Result<Vec<FamilySpec>> {
    match entry.n_range {
        None => expand_params(&entry.params).iter().map(|p| FamilySpec::from_params(&entry.family, p)).collect(),
        Some((lo, hi)) => {
            if lo > hi {
                return Err(Error::InvalidParams(format!("empty n_range [{lo}, {hi}]")));
            }
            let ratio = entry.ratio.ok_or_else(|| Error::InvalidParams("random sweeps need a ratio".into()))?;
            let base = entry.params.get("seed").and_then(Value::as_u64).unwrap_or(0);
            let mut rng = ChaCha8Rng::seed_from_u64(base);
            (0..entry.instances.unwrap_or(1))
                .map(|_| {
                    let n = rng.gen_range(lo..=hi);
                    let mut p = entry.params.clone();
                    p.insert("n".into(), n.into());
                    p.insert("m".into(), ((ratio * n as f64).round() as u64).into());
                    p.insert("seed".into(), rng.gen::<u32>().into());
                    FamilySpec::from_params(&entry.family, &p)
                })
                .collect()
        }
    }
}

struct Task {
    id: String,
    spec: FamilySpec,
    algo: String,
    seed: u64,
    runs: usize,
    level: usize,
    budget: Option<u64>,
}

fn run_task(task: &Task, opts: BenchOptions) -> BenchRecord {
    let mut rec = BenchRecord {
        id: task.id.clone(),
        family: task.spec.name().to_string(),
        params: task.spec.params_label(),
        n: task.spec.width(),
        m: 0,
        algo: task.algo.clone(),
        seed: task.seed,
        runs: task.runs,
        width_out: None,
        alpha: None,
        reducibility_factor: None,
        depth_in: 0,
        depth_out: None,
        elapsed_ms: None,
        optimal: None,
        error: String::new(),
    };
    let outcome = task.spec.generate().and_then(|circuit| {
        rec.m = circuit.gates().count();
        rec.depth_in = circuit.depth();
        let algo: Algorithm = task.algo.parse()?;
        let cfg = HeuristicConfig { seed: task.seed, runs: task.runs, level: task.level, ..Default::default() };
        algo.compile(&circuit, &cfg, task.budget)
    });
    match outcome {
        Ok(r) => {
            rec.width_out = Some(r.compiled_width);
            rec.alpha = Some(r.alpha);
            rec.reducibility_factor = Some(r.reducibility_factor);
            rec.depth_out = Some(r.dynamic_circuit.depth());
            rec.elapsed_ms = opts.timing.then_some(r.elapsed.as_secs_f64() * 1e3);
            rec.optimal = Some(r.optimal);
        }
        Err(e) => rec.error = e.to_string(),
    }
    rec
}

/// Runs every entry. Rows come back in suite order; failures are recorded
/// in the `error` column rather than aborting the sweep.
pub fn run_suite(suite: &Suite, opts: BenchOptions) -> Result<Vec<BenchRecord>> {
    let mut tasks = Vec::new();
    let mut circuit = 0;
    for entry in &suite.entries {
        for spec in entry_specs(entry)? {
            let id = format!("c{circuit:04}");
            circuit += 1;
            for algo in &entry.algos {
                let greedy = algo.eq_ignore_ascii_case("greedy");
                let runs = entry.runs.unwrap_or(if greedy { DEFAULT_GREEDY_RUNS } else { 1 });
                for &seed in &entry.seeds {
                    tasks.push(Task {
                        id: id.clone(),
                        spec: spec.clone(),
                        algo: algo.clone(),
                        seed,
                        runs,
                        level: entry.level,
                        budget: entry.budget,
                    });
                }
            }
        }
    }
    Ok(tasks.par_iter().map(|t| run_task(t, opts)).collect())
}

/// Writes the format line, the header and the records.
pub fn write_csv(out: impl Write, records: &[BenchRecord]) -> Result<()> {
    let mut out = out;
    writeln!(out, "{FORMAT_LINE}")?;
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record([
        "id",
        "family",
        "params",
        "n",
        "m",
        "algo",
        "seed",
        "runs",
        "width_out",
        "alpha",
        "reducibility_factor",
        "depth_in",
        "depth_out",
        "elapsed_ms",
        "optimal",
        "error",
    ])?;
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv(input: impl Read) -> Result<Vec<BenchRecord>> {
    let mut r = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(input);
    Ok(r.deserialize().collect::<std::result::Result<Vec<BenchRecord>, _>>()?)
}

/// Head-to-head count over circuits both algorithms compiled:
/// `(a narrower, tie, b narrower)`.
pub fn head_to_head(records: &[BenchRecord], a: &str, b: &str) -> (usize, usize, usize) {
    let best = |algo: &str| {
        let mut m: BTreeMap<&str, usize> = BTreeMap::new();
        for r in records.iter().filter(|r| r.algo == algo) {
            if let Some(w) = r.width_out {
                let e = m.entry(r.id.as_str()).or_insert(w);
                *e = (*e).min(w);
            }
        }
        m
    };
    let (wa, wb) = (best(a), best(b));
    let mut tally = (0, 0, 0);
    for (id, x) in &wa {
        if let Some(y) = wb.get(id) {
            match x.cmp(y) {
                std::cmp::Ordering::Less => tally.0 += 1,
                std::cmp::Ordering::Equal => tally.1 += 1,
                std::cmp::Ordering::Greater => tally.2 += 1,
            }
        }
    }
    tally
}
