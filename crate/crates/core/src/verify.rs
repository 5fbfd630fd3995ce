//! Exact outcome distributions by branching statevector simulation, and the
//! expansion of dynamic circuits back into static ones.
//!
//! Register `q` is bit `q` of a basis-state index. Every MEASURE records one
//! outcome bit, in instruction order.

use std::collections::{BTreeMap, HashMap};
use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};

use num_complex::Complex64;

use crate::circuit::{Circuit, Instruction, Kind};
use crate::compile::CompilationResult;
use crate::error::{Error, Result};

/// Most registers the simulator will hold at once.
pub const MAX_REGISTERS: usize = 12;
/// Most MEASUREs a dynamic circuit may branch on.
pub const MAX_MEASUREMENTS: usize = 16;
/// Branches lighter than this are discarded.
const PRUNE: f64 = 1e-20;

/// Probability of each outcome bitstring (`'0'`/`'1'`, one character per
/// MEASURE in instruction order).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct OutcomeDistribution {
    pub probs: BTreeMap<String, f64>,
}

impl OutcomeDistribution {
    pub fn get(&self, outcome: &str) -> f64 {
        self.probs.get(outcome).copied().unwrap_or(0.0)
    }

    pub fn total(&self) -> f64 {
        self.probs.values().sum()
    }

    /// Total variation distance.
    pub fn tvd(&self, other: &OutcomeDistribution) -> f64 {
        let mut keys: Vec<&String> = self.probs.keys().chain(other.probs.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.iter().map(|k| (self.get(k) - other.get(k)).abs()).sum::<f64>() / 2.0
    }

    /// Reorders the bits of every outcome: bit `k` moves to position `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> OutcomeDistribution {
        let mut probs = BTreeMap::new();
        for (k, p) in &self.probs {
            let mut out = vec![b'0'; perm.len()];
            for (i, b) in k.bytes().enumerate() {
                out[perm[i]] = b;
            }
            *probs.entry(String::from_utf8(out).expect("ascii")).or_insert(0.0) += p;
        }
        OutcomeDistribution { probs }
    }
}

/// Angle used for a parameterised gate whose parameter is absent.
pub fn default_angle(id: usize) -> f64 {
    // fractional part of id times the golden ratio, spread over (0, 2π)
    ((id as f64 + 1.0) * 0.618_033_988_749_895).fract() * TAU
}

#[derive(Clone)]
struct Branch {
    amps: Vec<Complex64>,
    record: Vec<u8>,
}

impl Branch {
    fn weight(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }
}

type M2 = [[Complex64; 2]; 2];

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn single(name: &str, theta: f64) -> Option<M2> {
    let z = c(0.0, 0.0);
    let o = c(1.0, 0.0);
    let h = c(FRAC_1_SQRT_2, 0.0);
    let (co, si) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    Some(match name {
        "H" => [[h, h], [h, -h]],
        "X" => [[z, o], [o, z]],
        "Y" => [[z, c(0.0, -1.0)], [c(0.0, 1.0), z]],
        "Z" => [[o, z], [z, -o]],
        "S" => [[o, z], [z, c(0.0, 1.0)]],
        "SDG" => [[o, z], [z, c(0.0, -1.0)]],
        "T" => [[o, z], [z, Complex64::from_polar(1.0, PI / 4.0)]],
        "TDG" => [[o, z], [z, Complex64::from_polar(1.0, -PI / 4.0)]],
        "RX" => [[c(co, 0.0), c(0.0, -si)], [c(0.0, -si), c(co, 0.0)]],
        "RY" => [[c(co, 0.0), c(-si, 0.0)], [c(si, 0.0), c(co, 0.0)]],
        "RZ" => [[Complex64::from_polar(1.0, -theta / 2.0), z], [z, Complex64::from_polar(1.0, theta / 2.0)]],
        "P" => [[o, z], [z, Complex64::from_polar(1.0, theta)]],
        _ => return None,
    })
}

fn is_parameterised(name: &str) -> bool {
    matches!(name, "RX" | "RY" | "RZ" | "P" | "CP" | "RZZ" | "GIVENS")
}

fn bit(i: usize, q: usize) -> bool {
    i >> q & 1 == 1
}

/// Applies `m` to qubit `target` on the basis states where every control is 1.
fn apply_controlled(amps: &mut [Complex64], controls: &[usize], target: usize, m: &M2) {
    let mask: usize = controls.iter().map(|&q| 1 << q).sum();
    let t = 1 << target;
    for i in 0..amps.len() {
        if i & t != 0 || i & mask != mask {
            continue;
        }
        let (a0, a1) = (amps[i], amps[i | t]);
        amps[i] = m[0][0] * a0 + m[0][1] * a1;
        amps[i | t] = m[1][0] * a0 + m[1][1] * a1;
    }
}

fn apply_gate(amps: &mut [Complex64], ins: &Instruction, theta: f64) -> Result<()> {
    let name = ins.name().to_ascii_uppercase();
    let qs = &ins.qubits;
    let arity = |k: usize| -> Result<()> {
        if qs.len() == k {
            Ok(())
        } else {
            Err(Error::InvalidInstruction { id: ins.id, reason: format!("{name} expects {k} qubits") })
        }
    };
    if let Some(m) = single(&name, theta) {
        arity(1)?;
        apply_controlled(amps, &[], qs[0], &m);
        return Ok(());
    }
    let x = single("X", 0.0).expect("X");
    match name.as_str() {
        "CX" | "CNOT" => {
            arity(2)?;
            apply_controlled(amps, &qs[..1], qs[1], &x);
        }
        "CCX" | "TOFFOLI" => {
            arity(3)?;
            apply_controlled(amps, &qs[..2], qs[2], &x);
        }
        "MCX" => apply_controlled(amps, &qs[..qs.len() - 1], qs[qs.len() - 1], &x),
        "CZ" => {
            arity(2)?;
            apply_controlled(amps, &qs[..1], qs[1], &single("Z", 0.0).expect("Z"));
        }
        "CP" => {
            arity(2)?;
            apply_controlled(amps, &qs[..1], qs[1], &single("P", theta).expect("P"));
        }
        "SWAP" => {
            arity(2)?;
            let (a, b) = (qs[0], qs[1]);
            for i in 0..amps.len() {
                if bit(i, a) && !bit(i, b) {
                    amps.swap(i, i ^ (1 << a) ^ (1 << b));
                }
            }
        }
        "RZZ" => {
            arity(2)?;
            let (a, b) = (qs[0], qs[1]);
            for (i, amp) in amps.iter_mut().enumerate() {
                let sign = if bit(i, a) == bit(i, b) { -1.0 } else { 1.0 };
                *amp *= Complex64::from_polar(1.0, sign * theta / 2.0);
            }
        }
        "GIVENS" => {
            // rotation by theta in the span of |01> and |10>
            arity(2)?;
            let (a, b) = (qs[0], qs[1]);
            let (co, si) = (theta.cos(), theta.sin());
            for i in 0..amps.len() {
                if bit(i, a) && !bit(i, b) {
                    let j = i ^ (1 << a) ^ (1 << b);
                    let (x1, x2) = (amps[j], amps[i]);
                    amps[j] = x1 * co - x2 * si;
                    amps[i] = x1 * si + x2 * co;
                }
            }
        }
        _ => return Err(Error::UnknownGate(ins.name().to_string())),
    }
    Ok(())
}

/// Splits `b` on register `q`; the second branch keeps the `|1>` part.
fn split(b: Branch, q: usize) -> (Branch, Branch) {
    let mut zero = b.clone();
    let mut one = b;
    for i in 0..zero.amps.len() {
        if bit(i, q) {
            zero.amps[i] = Complex64::default();
        } else {
            one.amps[i] = Complex64::default();
        }
    }
    (zero, one)
}

fn check_limits(circuit: &Circuit) -> Result<()> {
    if circuit.width() > MAX_REGISTERS {
        return Err(Error::TooLarge(format!("{} registers, limit {MAX_REGISTERS}", circuit.width())));
    }
    if !circuit.is_static() {
        let m = circuit.instructions().iter().filter(|i| i.kind == Kind::Measure).count();
        if m > MAX_MEASUREMENTS {
            return Err(Error::TooLarge(format!("{m} measurements, limit {MAX_MEASUREMENTS}")));
        }
    }
    Ok(())
}

/// Exact distribution of a circuit. Missing angles are derived from each
/// instruction's own id.
pub fn exact_distribution(circuit: &Circuit) -> Result<OutcomeDistribution> {
    exact_distribution_with_ids(circuit, None)
}

/// As [`exact_distribution`], deriving missing angles from `ids[k]` for the
/// `k`-th instruction instead (used for compiled circuits, whose instructions
/// are reordered copies of the source).
pub fn exact_distribution_with_ids(circuit: &Circuit, ids: Option<&[usize]>) -> Result<OutcomeDistribution> {
    check_limits(circuit)?;
    let ins = circuit.instructions();
    if let Some(ids) = ids {
        if ids.len() != ins.len() {
            return Err(Error::DimensionMismatch(ids.len(), ins.len()));
        }
    }
    // trailing MEASUREs on distinct registers are read off the final state
    let mut tail = ins.len();
    while tail > 0
        && ins[tail - 1].kind == Kind::Measure
        && !ins[tail..].iter().any(|m| m.qubits == ins[tail - 1].qubits)
    {
        tail -= 1;
    }
    let mut amps = vec![Complex64::default(); 1 << circuit.width()];
    amps[0] = Complex64::new(1.0, 0.0);
    let mut branches = vec![Branch { amps, record: Vec::new() }];
    for (k, op) in ins[..tail].iter().enumerate() {
        let q = op.qubits[0];
        match op.kind {
            Kind::Gate => {
                let id = ids.map_or(op.id, |ids| ids[k]);
                let theta = match op.param {
                    Some(p) => p,
                    None if is_parameterised(&op.name().to_ascii_uppercase()) => default_angle(id),
                    None => 0.0,
                };
                for b in &mut branches {
                    apply_gate(&mut b.amps, op, theta)?;
                }
            }
            Kind::Measure | Kind::Reset => {
                let mut next = Vec::with_capacity(branches.len() * 2);
                for b in branches {
                    let (mut zero, mut one) = split(b, q);
                    if op.kind == Kind::Measure {
                        zero.record.push(b'0');
                        one.record.push(b'1');
                    } else {
                        let flip = 1 << q;
                        for i in (0..one.amps.len()).filter(|&i| bit(i, q)) {
                            one.amps.swap(i, i ^ flip);
                        }
                    }
                    next.extend([zero, one].into_iter().filter(|b| b.weight() > PRUNE));
                }
                branches = next;
            }
        }
    }
    let final_qubits: Vec<usize> = ins[tail..].iter().map(|m| m.qubits[0]).collect();
    let mut probs = BTreeMap::new();
    for b in &branches {
        for (i, a) in b.amps.iter().enumerate() {
            let p = a.norm_sqr();
            if p <= PRUNE {
                continue;
            }
            let mut key = b.record.clone();
            key.extend(final_qubits.iter().map(|&q| if bit(i, q) { b'1' } else { b'0' }));
            *probs.entry(String::from_utf8(key).expect("ascii")).or_insert(0.0) += p;
        }
    }
    Ok(OutcomeDistribution { probs })
}

fn measure_count(c: &Circuit) -> usize {
    c.instructions().iter().filter(|i| i.kind == Kind::Measure).count()
}

/// Compares two circuits bit by bit in MEASURE order.
pub fn assert_equivalent(a: &Circuit, b: &Circuit, tol: f64) -> Result<bool> {
    let (ma, mb) = (measure_count(a), measure_count(b));
    if ma != mb {
        return Err(Error::Incomparable(format!("{ma} vs {mb} measurements")));
    }
    Ok(exact_distribution(a)?.tvd(&exact_distribution(b)?) <= tol)
}

/// Distance between a static circuit and its compilation, matching every
/// emitted MEASURE with the original MEASURE it came from.
pub fn compiled_distance(original: &Circuit, result: &CompilationResult) -> Result<f64> {
    let compiled = &result.dynamic_circuit;
    if result.source_ids.len() != compiled.len() {
        return Err(Error::DimensionMismatch(result.source_ids.len(), compiled.len()));
    }
    let slot: HashMap<usize, usize> = original
        .instructions()
        .iter()
        .filter(|i| i.kind == Kind::Measure)
        .enumerate()
        .map(|(k, i)| (i.id, k))
        .collect();
    let mut perm = Vec::new();
    for (ins, &src) in compiled.instructions().iter().zip(&result.source_ids) {
        if ins.kind == Kind::Measure {
            let k = slot
                .get(&src)
                .ok_or_else(|| Error::Incomparable(format!("emitted MEASURE from instruction {src} has no source")))?;
            perm.push(*k);
        }
    }
    if perm.len() != slot.len() {
        return Err(Error::Incomparable(format!("{} vs {} measurements", perm.len(), slot.len())));
    }
    let want = exact_distribution(original)?;
    let got = exact_distribution_with_ids(compiled, Some(&result.source_ids))?.permuted(&perm);
    Ok(want.tvd(&got))
}

/// `compiled_distance(original, result) <= tol`.
pub fn assert_compiled_equivalent(original: &Circuit, result: &CompilationResult, tol: f64) -> Result<bool> {
    Ok(compiled_distance(original, result)? <= tol)
}

/// Gives every mid-circuit RESET a fresh register; later operations follow
/// it. The first RESET on each register keeps its index. The result is a
/// static circuit with one register per RESET.
pub fn expand_dynamic(circuit: &Circuit) -> Result<Circuit> {
    circuit.check_dynamic()?;
    let mut map: Vec<usize> = (0..circuit.width()).collect();
    let mut opened = vec![false; circuit.width()];
    let mut next = circuit.width();
    let mut out = Vec::with_capacity(circuit.len());
    for ins in circuit.instructions() {
        let mut ins = ins.clone();
        if ins.kind == Kind::Reset {
            let q = ins.qubits[0];
            if opened[q] {
                map[q] = next;
                next += 1;
            }
            opened[q] = true;
        }
        for q in &mut ins.qubits {
            *q = map[*q];
        }
        out.push(ins);
    }
    Circuit::from_instructions(next, out)
}

/// Pairs of same-group gates that share a qubit but do not commute.
pub fn commutation_warnings(circuit: &Circuit) -> Result<Vec<String>> {
    let gates: Vec<&Instruction> = circuit.gates().filter(|g| g.group.is_some()).collect();
    let mut warnings = Vec::new();
    for (i, a) in gates.iter().enumerate() {
        for b in &gates[i + 1..] {
            if a.group != b.group || !a.qubits.iter().any(|q| b.qubits.contains(q)) {
                continue;
            }
            if !commute(a, b)? {
                warnings.push(format!(
                    "instructions {} ({}) and {} ({}) share group {} but do not commute",
                    a.id,
                    a.name(),
                    b.id,
                    b.name(),
                    a.group.unwrap_or_default()
                ));
            }
        }
    }
    Ok(warnings)
}

fn commute(a: &Instruction, b: &Instruction) -> Result<bool> {
    let mut support: Vec<usize> = a.qubits.iter().chain(&b.qubits).copied().collect();
    support.sort_unstable();
    support.dedup();
    let local = |ins: &Instruction| {
        let mut l = ins.clone();
        for q in &mut l.qubits {
            *q = support.iter().position(|s| s == q).expect("in support");
        }
        l
    };
    let (la, lb) = (local(a), local(b));
    let angle = |ins: &Instruction| ins.param.unwrap_or_else(|| default_angle(ins.id));
    let dim = 1 << support.len();
    for basis in 0..dim {
        let mut ab = vec![Complex64::default(); dim];
        ab[basis] = Complex64::new(1.0, 0.0);
        let mut ba = ab.clone();
        apply_gate(&mut ab, &la, angle(a))?;
        apply_gate(&mut ab, &lb, angle(b))?;
        apply_gate(&mut ba, &lb, angle(b))?;
        apply_gate(&mut ba, &la, angle(a))?;
        if ab.iter().zip(&ba).any(|(x, y)| (x - y).norm() > 1e-12) {
            return Ok(false);
        }
    }
    Ok(true)
}
