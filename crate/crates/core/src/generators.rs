//! Parametric benchmark circuits, with closed-form biadjacency matrices and
//! known optimal widths for the structured families.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::boolmat::BoolMatrix;
use crate::circuit::{Circuit, Instruction};
use crate::error::{Error, Result};

/// A benchmark family together with its parameters.
///
/// Secrets are bit strings whose character `i` is bit `s_i`; `None` means
/// the all-ones secret.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FamilySpec {
    Dj {
        n: usize,
        balanced: bool,
    },
    Bv {
        n: usize,
        secret: Option<String>,
    },
    Simon {
        n: usize,
        secret: Option<String>,
    },
    Qft {
        n: usize,
    },
    Diffusion {
        n: usize,
    },
    Linear {
        n: usize,
        l: usize,
    },
    Circular {
        n: usize,
        l: usize,
    },
    Pairwise {
        n: usize,
        l: usize,
    },
    Full {
        n: usize,
        l: usize,
    },
    /// `2n` qubits.
    Diamond {
        n: usize,
    },
    /// `w` rows by `d` columns; qubit `col * w + row`.
    Cluster {
        w: usize,
        d: usize,
    },
    /// `3k + 1` qubits.
    Adder {
        k: usize,
    },
    QaoaMaxcut {
        n: usize,
        p: usize,
        seed: u64,
        edges: Option<Vec<(usize, usize)>>,
    },
    Random {
        n: usize,
        m: usize,
        seed: u64,
    },
    RandomIqp {
        n: usize,
        m: usize,
        seed: u64,
        tagged: bool,
    },
}

/// Family names accepted by [`FamilySpec::from_params`].
pub const FAMILY_NAMES: &[&str] = &[
    "dj",
    "bv",
    "simon",
    "qft",
    "diffusion",
    "linear",
    "circular",
    "pairwise",
    "full",
    "diamond",
    "cluster",
    "adder",
    "qaoa_maxcut",
    "random",
    "random_iqp",
];

fn bits(secret: &Option<String>, n: usize) -> Result<Vec<bool>> {
    match secret {
        None => Ok(vec![true; n]),
        Some(s) => {
            if s.len() != n {
                return Err(Error::InvalidParams(format!("secret {s:?} must have {n} bits")));
            }
            s.chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(Error::InvalidParams(format!("secret {s:?} is not a bit string"))),
                })
                .collect()
        }
    }
}

fn all_ones(secret: &Option<String>) -> bool {
    secret.as_ref().is_none_or(|s| s.chars().all(|c| c == '1'))
}

fn all_zeros(secret: &Option<String>) -> bool {
    secret.as_ref().is_some_and(|s| s.chars().all(|c| c == '0'))
}

/// Deterministic rotation angle for generated single-qubit layers.
fn angle(layer: usize, q: usize) -> f64 {
    0.3 + 0.7 * ((layer * 31 + q * 17) % 23) as f64 / 23.0
}

struct Builder {
    ins: Vec<Instruction>,
    width: usize,
}

impl Builder {
    fn new(width: usize) -> Self {
        Builder { ins: (0..width).map(Instruction::reset).collect(), width }
    }
    fn g(&mut self, name: &str, qubits: &[usize]) {
        self.ins.push(Instruction::gate(name, qubits));
    }
    fn gp(&mut self, name: &str, qubits: &[usize], theta: f64) {
        self.ins.push(Instruction::gate(name, qubits).with_param(theta));
    }
    fn push(&mut self, ins: Instruction) {
        self.ins.push(ins);
    }
    fn layer(&mut self, name: &str, qubits: impl IntoIterator<Item = usize>) {
        for q in qubits {
            self.g(name, &[q]);
        }
    }
    fn finish(mut self) -> Result<Circuit> {
        self.ins.extend((0..self.width).map(Instruction::measure));
        Circuit::from_instructions(self.width, self.ins)
    }
}

fn need(cond: bool, msg: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParams(msg.into()))
    }
}

impl FamilySpec {
    /// Lower-case family name.
    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::Dj { .. } => "dj",
            FamilySpec::Bv { .. } => "bv",
            FamilySpec::Simon { .. } => "simon",
            FamilySpec::Qft { .. } => "qft",
            FamilySpec::Diffusion { .. } => "diffusion",
            FamilySpec::Linear { .. } => "linear",
            FamilySpec::Circular { .. } => "circular",
            FamilySpec::Pairwise { .. } => "pairwise",
            FamilySpec::Full { .. } => "full",
            FamilySpec::Diamond { .. } => "diamond",
            FamilySpec::Cluster { .. } => "cluster",
            FamilySpec::Adder { .. } => "adder",
            FamilySpec::QaoaMaxcut { .. } => "qaoa_maxcut",
            FamilySpec::Random { .. } => "random",
            FamilySpec::RandomIqp { .. } => "random_iqp",
        }
    }

    /// Compact `key=value` rendering of the parameters.
    pub fn params_label(&self) -> String {
        let v = serde_json::to_value(self).expect("spec serializes");
        let mut parts = Vec::new();
        if let Value::Object(map) = v {
            for (k, val) in map {
                if k == "family" || val.is_null() {
                    continue;
                }
                let s = match val {
                    Value::String(s) => s,
                    other => other.to_string().replace(',', ";"),
                };
                parts.push(format!("{k}={s}"));
            }
        }
        parts.join(" ")
    }

    /// Builds a spec from a family name and loosely typed parameters.
    ///
    /// Missing parameters take defaults: `balanced=true`, `l=1`, `p=1`,
    /// `seed=0`, `tagged=true`; `n` is derived from `k` for adders.
    pub fn from_params(family: &str, params: &BTreeMap<String, Value>) -> Result<FamilySpec> {
        let get = |key: &str| -> Result<Option<u64>> {
            match params.get(key) {
                None | Some(Value::Null) => Ok(None),
                Some(Value::Number(x)) => x
                    .as_u64()
                    .map(Some)
                    .ok_or_else(|| Error::InvalidParams(format!("{key} must be a non-negative integer"))),
                Some(Value::String(s)) => {
                    s.parse().map(Some).map_err(|_| Error::InvalidParams(format!("{key} must be an integer")))
                }
                Some(other) => Err(Error::InvalidParams(format!("{key}: unexpected value {other}"))),
            }
        };
        let req = |key: &str| -> Result<usize> {
            get(key)?.map(|v| v as usize).ok_or_else(|| Error::InvalidParams(format!("{family} requires {key}")))
        };
        let flag = |key: &str, default: bool| -> Result<bool> {
            match params.get(key) {
                None | Some(Value::Null) => Ok(default),
                Some(Value::Bool(b)) => Ok(*b),
                Some(Value::String(s)) => {
                    s.parse().map_err(|_| Error::InvalidParams(format!("{key} must be true or false")))
                }
                Some(other) => Err(Error::InvalidParams(format!("{key}: unexpected value {other}"))),
            }
        };
        let secret = || -> Result<Option<String>> {
            match params.get("secret") {
                None | Some(Value::Null) => Ok(None),
                Some(Value::String(s)) => Ok(Some(s.clone())),
                Some(other) => Err(Error::InvalidParams(format!("secret must be a bit string, got {other}"))),
            }
        };
        let l = || -> Result<usize> { Ok(get("l")?.unwrap_or(1) as usize) };
        let seed = || -> Result<u64> { Ok(get("seed")?.unwrap_or(0)) };
        let spec = match family.to_ascii_lowercase().replace('-', "_").as_str() {
            "dj" => FamilySpec::Dj { n: req("n")?, balanced: flag("balanced", true)? },
            "bv" => FamilySpec::Bv { n: req("n")?, secret: secret()? },
            "simon" => FamilySpec::Simon { n: req("n")?, secret: secret()? },
            "qft" => FamilySpec::Qft { n: req("n")? },
            "diffusion" | "grover" => FamilySpec::Diffusion { n: req("n")? },
            "linear" => FamilySpec::Linear { n: req("n")?, l: l()? },
            "circular" => FamilySpec::Circular { n: req("n")?, l: l()? },
            "pairwise" => FamilySpec::Pairwise { n: req("n")?, l: l()? },
            "full" => FamilySpec::Full { n: req("n")?, l: l()? },
            "diamond" => FamilySpec::Diamond { n: req("n")? },
            "cluster" => FamilySpec::Cluster { w: req("w")?, d: req("d")? },
            "adder" => match get("k")? {
                Some(k) => FamilySpec::Adder { k: k as usize },
                None => {
                    let n = req("n")?;
                    need(n % 3 == 1, format!("adder width {n} is not of the form 3k+1"))?;
                    FamilySpec::Adder { k: n / 3 }
                }
            },
            "qaoa_maxcut" | "qaoa" => {
                let edges = match params.get("edges") {
                    None | Some(Value::Null) => None,
                    Some(v) => Some(
                        serde_json::from_value(v.clone()).map_err(|e| Error::InvalidParams(format!("edges: {e}")))?,
                    ),
                };
                FamilySpec::QaoaMaxcut { n: req("n")?, p: get("p")?.unwrap_or(1) as usize, seed: seed()?, edges }
            }
            "random" => FamilySpec::Random { n: req("n")?, m: req("m")?, seed: seed()? },
            "random_iqp" | "iqp" => {
                FamilySpec::RandomIqp { n: req("n")?, m: req("m")?, seed: seed()?, tagged: flag("tagged", true)? }
            }
            other => return Err(Error::InvalidParams(format!("unknown family {other:?}"))),
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Number of qubits of the generated circuit.
    pub fn width(&self) -> usize {
        match *self {
            FamilySpec::Dj { n, .. } | FamilySpec::Bv { n, .. } => n + 1,
            FamilySpec::Simon { n, .. } | FamilySpec::Diamond { n } => 2 * n,
            FamilySpec::Cluster { w, d } => w * d,
            FamilySpec::Adder { k } => 3 * k + 1,
            FamilySpec::Qft { n }
            | FamilySpec::Diffusion { n }
            | FamilySpec::Linear { n, .. }
            | FamilySpec::Circular { n, .. }
            | FamilySpec::Pairwise { n, .. }
            | FamilySpec::Full { n, .. }
            | FamilySpec::QaoaMaxcut { n, .. }
            | FamilySpec::Random { n, .. }
            | FamilySpec::RandomIqp { n, .. } => n,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            FamilySpec::Dj { n, .. } => need(*n >= 1, "dj needs n >= 1"),
            FamilySpec::Bv { n, secret } | FamilySpec::Simon { n, secret } => {
                need(*n >= 1, "n must be >= 1")?;
                bits(secret, *n).map(|_| ())
            }
            FamilySpec::Qft { n } | FamilySpec::Diffusion { n } => need(*n >= 1, "n must be >= 1"),
            FamilySpec::Linear { n, l }
            | FamilySpec::Circular { n, l }
            | FamilySpec::Pairwise { n, l }
            | FamilySpec::Full { n, l } => need(*n >= 2 && *l >= 1, "entangling layers need n >= 2 and l >= 1"),
            FamilySpec::Diamond { n } => need(*n >= 1, "diamond needs n >= 1"),
            FamilySpec::Cluster { w, d } => need(*w >= 1 && *d >= 1, "cluster needs w >= 1 and d >= 1"),
            FamilySpec::Adder { k } => need(*k >= 1, "adder needs k >= 1"),
            FamilySpec::QaoaMaxcut { n, p, edges, .. } => {
                need(*p >= 1, "qaoa needs p >= 1")?;
                match edges {
                    Some(es) => need(
                        es.iter().all(|&(a, b)| a < *n && b < *n && a != b),
                        "qaoa edges must join distinct vertices below n",
                    ),
                    None => need(*n >= 4 && n % 2 == 0, "random 3-regular graphs need an even n >= 4"),
                }
            }
            FamilySpec::Random { n, .. } | FamilySpec::RandomIqp { n, .. } => {
                need(*n >= 2, "random circuits need n >= 2")
            }
        }
    }

    /// Generates the normalized static circuit.
    pub fn generate(&self) -> Result<Circuit> {
        self.validate()?;
        let width = self.width();
        let mut b = Builder::new(width);
        match self {
            FamilySpec::Dj { n, balanced } => {
                let n = *n;
                oracle_frame(&mut b, n, |b| {
                    if *balanced {
                        for i in 0..n {
                            b.g("CX", &[i, n]);
                        }
                    }
                });
            }
            FamilySpec::Bv { n, secret } => {
                let n = *n;
                let s = bits(secret, n)?;
                oracle_frame(&mut b, n, |b| {
                    for i in (0..n).filter(|&i| s[i]) {
                        b.g("CX", &[i, n]);
                    }
                });
            }
            FamilySpec::Simon { n, secret } => {
                let n = *n;
                let s = bits(secret, n)?;
                b.layer("H", 0..n);
                for i in 0..n {
                    b.g("CX", &[i, n + i]);
                }
                if let Some(j) = s.iter().position(|&x| x) {
                    for k in (0..n).filter(|&k| s[k]) {
                        b.g("CX", &[j, n + k]);
                    }
                }
                b.layer("H", 0..n);
            }
            FamilySpec::Qft { n } => {
                let n = *n;
                for j in 0..n {
                    b.g("H", &[j]);
                    for k in 2..=(n - j) {
                        b.gp("CP", &[j + k - 1, j], 2.0 * PI / f64::powi(2.0, k as i32));
                    }
                }
                for i in 0..n / 2 {
                    b.g("SWAP", &[i, n - 1 - i]);
                }
            }
            FamilySpec::Diffusion { n } => {
                let n = *n;
                b.layer("H", 0..n);
                b.layer("X", 0..n);
                b.g("H", &[n - 1]);
                b.g("MCX", &(0..n).collect::<Vec<_>>());
                b.g("H", &[n - 1]);
                b.layer("X", 0..n);
                b.layer("H", 0..n);
            }
            FamilySpec::Linear { n, l }
            | FamilySpec::Circular { n, l }
            | FamilySpec::Pairwise { n, l }
            | FamilySpec::Full { n, l } => {
                let n = *n;
                for layer in 0..*l {
                    for q in 0..n {
                        b.gp("RY", &[q], angle(layer, q));
                    }
                    for (a, c) in entangling_pairs(self, n) {
                        b.g("CX", &[a, c]);
                    }
                }
                for q in 0..n {
                    b.gp("RY", &[q], angle(*l, q));
                }
            }
            FamilySpec::Diamond { n } => {
                for (a, c) in diamond_pairs(*n) {
                    let theta = angle(a, c);
                    b.gp("GIVENS", &[a, c], theta);
                }
            }
            FamilySpec::Cluster { w, d } => {
                let (w, d) = (*w, *d);
                b.layer("H", 0..w * d);
                for col in 0..d {
                    for row in 0..w.saturating_sub(1) {
                        b.g("CZ", &[col * w + row, col * w + row + 1]);
                    }
                    if col + 1 < d {
                        for row in 0..w {
                            b.g("CZ", &[col * w + row, (col + 1) * w + row]);
                        }
                    }
                }
            }
            FamilySpec::Adder { k } => {
                b.layer("H", 0..3 * k + 1);
                for j in 0..*k {
                    let o = 3 * j;
                    b.g("CCX", &[o + 1, o + 2, o + 3]);
                    b.g("CX", &[o + 1, o + 2]);
                    b.g("CCX", &[o, o + 2, o + 3]);
                    b.g("CX", &[o, o + 2]);
                }
            }
            FamilySpec::QaoaMaxcut { n, p, seed, edges } => {
                let edges = match edges {
                    Some(es) => es.clone(),
                    None => random_regular_graph(*n, 3, *seed)?,
                };
                let mut rng = ChaCha8Rng::seed_from_u64(*seed ^ 0x9a0a);
                b.layer("H", 0..*n);
                for layer in 0..*p {
                    let gamma = rng.gen_range(0.1..PI);
                    let beta = rng.gen_range(0.1..PI);
                    for &(a, c) in &edges {
                        b.push(Instruction::gate("RZZ", &[a, c]).with_param(gamma).with_group(layer as i64));
                    }
                    for q in 0..*n {
                        b.gp("RX", &[q], 2.0 * beta);
                    }
                }
            }
            FamilySpec::Random { n, m, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                b.layer("H", 0..*n);
                for _ in 0..*m {
                    let (a, c) = random_pair(&mut rng, *n);
                    b.g("CX", &[a, c]);
                }
                for q in 0..*n {
                    let theta = rng.gen_range(0.0..2.0 * PI);
                    b.gp("RY", &[q], theta);
                }
            }
            FamilySpec::RandomIqp { n, m, seed, tagged } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let tag = |ins: Instruction| if *tagged { ins.with_group(0) } else { ins };
                b.layer("H", 0..*n);
                for _ in 0..*m {
                    let (a, c) = random_pair(&mut rng, *n);
                    b.push(tag(Instruction::gate("CP", &[a, c]).with_param(PI / 2.0)));
                    if rng.gen_bool(0.5) {
                        let q = rng.gen_range(0..*n);
                        b.push(tag(Instruction::gate("T", &[q])));
                    }
                }
                b.layer("H", 0..*n);
            }
        }
        b.finish()
    }

    /// Closed-form biadjacency matrix for the structured families.
    pub fn expected_biadjacency(&self) -> Result<BoolMatrix> {
        let width = self.width();
        let unsupported = || Error::Unsupported(format!("no closed-form biadjacency for {}", self.name()));
        Ok(match self {
            FamilySpec::Dj { n, balanced: true } => oracle_closed_form(*n),
            FamilySpec::Dj { balanced: false, .. } => BoolMatrix::identity(width),
            FamilySpec::Bv { n, secret } => {
                if all_zeros(secret) {
                    BoolMatrix::identity(width)
                } else if all_ones(secret) {
                    oracle_closed_form(*n)
                } else {
                    return Err(unsupported());
                }
            }
            FamilySpec::Simon { n, secret } if all_ones(secret) => {
                let n = *n;
                let x = BoolMatrix::from_fn(n, |i, j| i == j || j == 0);
                let u = BoolMatrix::from_fn(n, |i, j| j >= i);
                BoolMatrix::from_fn(2 * n, |i, j| {
                    let (bj, ii, jj) = (j / n, i % n, j % n);
                    if bj == 0 {
                        x.get(ii, jj)
                    } else {
                        u.get(ii, jj)
                    }
                })
            }
            FamilySpec::Qft { .. } | FamilySpec::Diffusion { .. } | FamilySpec::Full { .. } => BoolMatrix::ones(width),
            FamilySpec::Linear { n, l } => BoolMatrix::from_fn(*n, |i, j| j + l >= i),
            FamilySpec::Circular { n, l } => {
                let n = *n;
                let one = BoolMatrix::from_fn(n, |i, j| {
                    // column j is (j' + 1) mod n for j' >= max(i - 2, 0)
                    let jp = (j + n - 1) % n;
                    jp + 2 >= i
                });
                let mut acc = one.clone();
                for _ in 1..*l {
                    acc = acc.bool_product(&one)?;
                }
                acc
            }
            FamilySpec::Pairwise { n, l } => {
                let (n, l) = (*n, *l);
                BoolMatrix::from_fn(n, |i, j| {
                    let near = i.abs_diff(j) < 2 * l;
                    let right = i % 2 == 0 && j == i + 2 * l && i + 2 * l < n;
                    let left = j % 2 == 1 && i == j + 2 * l && j + 2 * l < n;
                    near || right || left
                })
            }
            FamilySpec::Diamond { n } => {
                let n = *n;
                BoolMatrix::from_fn(2 * n, |i, j| if i < n { j <= i + n } else { j + n >= i })
            }
            FamilySpec::Cluster { w, d } => {
                let (w, d) = (*w, *d);
                let dk = |k: usize, i: usize, j: usize| j + k + 1 >= i;
                BoolMatrix::from_fn(w * d, |r, c| {
                    let (bi, bj, i, j) = (r / w, c / w, r % w, c % w);
                    let sub = bi >= 1 && bj + 1 == bi && i == j;
                    let upper = bj >= bi && dk(bj - bi, i, j);
                    sub || upper
                })
            }
            FamilySpec::Adder { k } => {
                let (k, n) = (*k, 3 * k + 1);
                let mut b = BoolMatrix::from_fn(n, |i, j| {
                    i <= 3 || (1..k).any(|m| (3 * m + 1..=3 * m + 3).contains(&i) && j >= 3 * m)
                });
                for j in 0..k {
                    for i in 0..=3 * j {
                        b.set(i, 3 * j + 1, false);
                    }
                }
                b
            }
            _ => return Err(unsupported()),
        })
    }

    /// Known optimal compiled width for the structured families.
    pub fn expected_optimal_width(&self) -> Result<usize> {
        let width = self.width();
        let unsupported = || Error::Unsupported(format!("no known optimal width for {}", self.name()));
        Ok(match self {
            FamilySpec::Dj { balanced, .. } => {
                if *balanced {
                    2
                } else {
                    1
                }
            }
            FamilySpec::Bv { secret, .. } => {
                if all_zeros(secret) {
                    1
                } else {
                    2
                }
            }
            FamilySpec::Simon { n, secret } if all_ones(secret) && *n >= 2 => 3,
            FamilySpec::Qft { .. } | FamilySpec::Diffusion { .. } | FamilySpec::Full { .. } => width,
            FamilySpec::Linear { n, l } => {
                if *l + 2 <= *n {
                    l + 1
                } else {
                    *n
                }
            }
            FamilySpec::Circular { n, l } => {
                if *n >= 4 && *l == 1 {
                    3
                } else {
                    *n
                }
            }
            // at n = 2l + 1 the closed form gives n, yet the circuit is
            // reducible, so no closed form is offered
            FamilySpec::Pairwise { n, l } if *n == 2 * l + 1 => return Err(unsupported()),
            FamilySpec::Pairwise { n, l } => {
                if *l < n.div_ceil(2) {
                    2 * l + 1
                } else {
                    *n
                }
            }
            FamilySpec::Diamond { n } => n + 1,
            FamilySpec::Cluster { w, d } if *d >= 2 => w + 1,
            FamilySpec::Adder { k } => {
                if *k == 1 {
                    3
                } else {
                    4
                }
            }
            _ => return Err(unsupported()),
        })
    }
}

fn oracle_frame(b: &mut Builder, n: usize, oracle: impl FnOnce(&mut Builder)) {
    b.g("X", &[n]);
    b.layer("H", 0..=n);
    oracle(b);
    b.layer("H", 0..n);
}

fn oracle_closed_form(n: usize) -> BoolMatrix {
    BoolMatrix::from_fn(n + 1, |i, j| j >= i || (i == n && j < n))
}

fn entangling_pairs(spec: &FamilySpec, n: usize) -> Vec<(usize, usize)> {
    match spec {
        FamilySpec::Linear { .. } => (0..n - 1).map(|i| (i, i + 1)).collect(),
        FamilySpec::Circular { .. } => {
            let mut v: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
            if n > 2 {
                v.push((n - 1, 0));
            }
            v
        }
        FamilySpec::Pairwise { .. } => {
            let even = (0..n - 1).step_by(2).map(|i| (i, i + 1));
            let odd = (1..n - 1).step_by(2).map(|i| (i, i + 1));
            even.chain(odd).collect()
        }
        FamilySpec::Full { .. } => (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect(),
        _ => unreachable!("not an entangling-layer family"),
    }
}

/// Nearest-neighbour rotation pairs of the diamond on `2n` qubits: layers
/// widen from the middle pair to full width, then narrow again.
fn diamond_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::with_capacity(n * n);
    for k in 1..=n {
        for i in 0..k {
            let a = n - k + 2 * i;
            pairs.push((a, a + 1));
        }
    }
    for k in 1..n {
        for i in 0..n - k {
            let a = k + 2 * i;
            pairs.push((a, a + 1));
        }
    }
    pairs
}

fn random_pair(rng: &mut ChaCha8Rng, n: usize) -> (usize, usize) {
    let a = rng.gen_range(0..n);
    let mut c = rng.gen_range(0..n - 1);
    if c >= a {
        c += 1;
    }
    (a, c)
}

/// Uniform-ish random `d`-regular simple graph by the pairing model with
/// rejection of self-loops and multi-edges.
pub fn random_regular_graph(n: usize, d: usize, seed: u64) -> Result<Vec<(usize, usize)>> {
    need((n * d).is_multiple_of(2) && d < n, format!("no {d}-regular graph on {n} vertices"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..10_000 {
        let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
        points.shuffle(&mut rng);
        let mut edges: Vec<(usize, usize)> = points.chunks(2).map(|p| (p[0].min(p[1]), p[0].max(p[1]))).collect();
        if edges.iter().any(|&(a, b)| a == b) {
            continue;
        }
        edges.sort_unstable();
        if edges.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        return Ok(edges);
    }
    Err(Error::InvalidParams(format!("could not sample a {d}-regular graph on {n} vertices")))
}

/// Small hand-written circuits used throughout the tests and the guide.
pub mod fixtures {
    use super::*;

    fn build(width: usize, body: &[Instruction]) -> Circuit {
        let mut ins: Vec<Instruction> = (0..width).map(Instruction::reset).collect();
        ins.extend(body.iter().cloned());
        ins.extend((0..width).map(Instruction::measure));
        Circuit::from_instructions(width, ins).expect("fixture is valid")
    }

    /// Three qubits: an H on each, then CX(0,1) and CX(1,2). Instruction 8
    /// measures q0 and instruction 2 resets q2.
    pub fn three_qubit_chain() -> Circuit {
        build(
            3,
            &[
                Instruction::gate("H", &[0]),
                Instruction::gate("H", &[1]),
                Instruction::gate("H", &[2]),
                Instruction::gate("CX", &[0, 1]),
                Instruction::gate("CX", &[1, 2]),
            ],
        )
    }

    /// First half of [`three_qubit_chain`]: H layer and CX(0,1).
    pub fn composition_left() -> Circuit {
        build(
            3,
            &[
                Instruction::gate("H", &[0]),
                Instruction::gate("H", &[1]),
                Instruction::gate("H", &[2]),
                Instruction::gate("CX", &[0, 1]),
            ],
        )
    }

    /// Second half of [`three_qubit_chain`]: CX(1,2).
    pub fn composition_right() -> Circuit {
        build(3, &[Instruction::gate("CX", &[1, 2])])
    }

    /// Four CZ gates sharing one commutable group. Written order
    /// CZ(1,2), CZ(0,1), CZ(2,3), CZ(1,2).
    pub fn commutable_example() -> Circuit {
        let mut body: Vec<Instruction> = (0..4).map(|q| Instruction::gate("H", &[q])).collect();
        for pair in [[1, 2], [0, 1], [2, 3], [1, 2]] {
            body.push(Instruction::gate("CZ", &pair).with_group(0));
        }
        build(4, &body)
    }

    /// Pairs of the irreducible four-qubit, five-CNOT circuit whose every
    /// single-gate deletion is reducible.
    pub const MINIMAL_IRREDUCIBLE_PAIRS: [(usize, usize); 5] = [(0, 1), (0, 2), (0, 3), (1, 3), (1, 2)];

    /// Circuit form of [`MINIMAL_IRREDUCIBLE_PAIRS`].
    pub fn minimal_irreducible() -> Circuit {
        cnot_chain(4, &MINIMAL_IRREDUCIBLE_PAIRS)
    }

    /// Static circuit made only of CNOTs on the given pairs.
    pub fn cnot_chain(width: usize, pairs: &[(usize, usize)]) -> Circuit {
        let body: Vec<Instruction> = pairs.iter().map(|&(a, b)| Instruction::gate("CX", &[a, b])).collect();
        build(width, &body)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dag::matrix_biadjacency;

    #[test]
    fn bv_shape() {
        let c = FamilySpec::Bv { n: 4, secret: Some("1111".into()) }.generate().unwrap();
        assert_eq!(c.width(), 5);
        let cx: Vec<_> = c.gates().filter(|g| g.name() == "CX").map(|g| g.qubits.clone()).collect();
        assert_eq!(cx, vec![vec![0, 4], vec![1, 4], vec![2, 4], vec![3, 4]]);
    }

    #[test]
    fn cluster_shape() {
        let c = FamilySpec::Cluster { w: 2, d: 3 }.generate().unwrap();
        assert_eq!(c.width(), 6);
        assert_eq!(c.gates().filter(|g| g.name() == "CZ").count(), 3 + 4);
    }

    #[test]
    fn random_is_deterministic() {
        let s = FamilySpec::Random { n: 10, m: 15, seed: 7 };
        assert_eq!(s.generate().unwrap(), s.generate().unwrap());
        let t = FamilySpec::Random { n: 10, m: 15, seed: 8 };
        assert_ne!(s.generate().unwrap(), t.generate().unwrap());
    }

    #[test]
    fn diamond_gate_count() {
        for n in 1..6 {
            assert_eq!(diamond_pairs(n).len(), n * n);
        }
    }

    #[test]
    fn adder_width_and_bad_params() {
        assert_eq!(FamilySpec::Adder { k: 2 }.generate().unwrap().width(), 7);
        let mut p = BTreeMap::new();
        p.insert("n".to_string(), Value::from(6));
        assert!(FamilySpec::from_params("adder", &p).is_err());
        assert!(FamilySpec::Cluster { w: 2, d: 0 }.generate().is_err());
    }

    #[test]
    fn regular_graph_is_regular() {
        let es = random_regular_graph(10, 3, 5).unwrap();
        let mut deg = [0; 10];
        for (a, b) in es {
            deg[a] += 1;
            deg[b] += 1;
        }
        assert!(deg.iter().all(|&d| d == 3));
    }

    #[test]
    fn linear_closed_form_small() {
        let s = FamilySpec::Linear { n: 4, l: 1 };
        let b = matrix_biadjacency(&s.generate().unwrap()).unwrap();
        assert_eq!(b, s.expected_biadjacency().unwrap());
        assert_eq!(b, BoolMatrix::parse("1111\n1111\n0111\n0011").unwrap());
    }

    #[test]
    fn params_round_trip() {
        let mut p = BTreeMap::new();
        p.insert("w".to_string(), Value::from(3));
        p.insert("d".to_string(), Value::from("5"));
        let s = FamilySpec::from_params("cluster", &p).unwrap();
        assert_eq!(s, FamilySpec::Cluster { w: 3, d: 5 });
        assert_eq!(s.expected_optimal_width().unwrap(), 4);
        assert_eq!(s.params_label(), "d=5 w=3");
    }
}
