//! Instruction-level circuit representation and its JSON document format.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Kind {
    Reset,
    Measure,
    Gate,
}

/// One quantum operation. `id` always equals the position in the owning circuit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Instruction {
    #[serde(default)]
    pub id: usize,
    #[serde(rename = "type")]
    pub kind: Kind,
    #[serde(default)]
    pub gate: Option<String>,
    pub qubits: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub param: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<i64>,
}

impl Instruction {
    pub fn reset(q: usize) -> Self {
        Instruction { id: 0, kind: Kind::Reset, gate: None, qubits: vec![q], param: None, group: None }
    }

    pub fn measure(q: usize) -> Self {
        Instruction { id: 0, kind: Kind::Measure, gate: None, qubits: vec![q], param: None, group: None }
    }

    pub fn gate(name: &str, qubits: &[usize]) -> Self {
        Instruction {
            id: 0,
            kind: Kind::Gate,
            gate: Some(name.to_string()),
            qubits: qubits.to_vec(),
            param: None,
            group: None,
        }
    }

    pub fn with_param(mut self, theta: f64) -> Self {
        self.param = Some(theta);
        self
    }

    pub fn with_group(mut self, group: i64) -> Self {
        self.group = Some(group);
        self
    }

    pub fn is_gate(&self) -> bool {
        self.kind == Kind::Gate
    }

    /// Gate name, or `RESET` / `MEASURE`.
    pub fn name(&self) -> &str {
        match self.kind {
            Kind::Reset => "RESET",
            Kind::Measure => "MEASURE",
            Kind::Gate => self.gate.as_deref().unwrap_or("?"),
        }
    }

    fn check(&self, width: usize) -> Result<()> {
        let id = self.id;
        if self.qubits.is_empty() {
            return Err(Error::InvalidInstruction { id, reason: "no qubits".into() });
        }
        for (k, &q) in self.qubits.iter().enumerate() {
            if q >= width {
                return Err(Error::QubitOutOfRange { id, qubit: q, width });
            }
            if self.qubits[..k].contains(&q) {
                return Err(Error::DuplicateQubit { id, qubit: q });
            }
        }
        match self.kind {
            Kind::Reset | Kind::Measure => {
                let what = self.name();
                if self.qubits.len() != 1 {
                    return Err(Error::InvalidInstruction { id, reason: format!("{what} must act on one qubit") });
                }
                if self.param.is_some() {
                    return Err(Error::InvalidInstruction { id, reason: format!("{what} carries no parameter") });
                }
                if self.group.is_some() {
                    return Err(Error::InvalidInstruction { id, reason: format!("{what} cannot carry a group tag") });
                }
            }
            Kind::Gate => match &self.gate {
                Some(g) if !g.is_empty() => {}
                _ => return Err(Error::InvalidInstruction { id, reason: "GATE without a name".into() }),
            },
        }
        if let Some(p) = self.param {
            if !p.is_finite() {
                return Err(Error::InvalidInstruction { id, reason: "non-finite parameter".into() });
            }
        }
        Ok(())
    }
}

impl fmt::Display for Instruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:>4} {}", self.id, self.name())?;
        if let Some(p) = self.param {
            write!(f, "({p:.4})")?;
        }
        let qs: Vec<String> = self.qubits.iter().map(|q| format!("q{q}")).collect();
        write!(f, " {}", qs.join(","))?;
        if let Some(g) = self.group {
            write!(f, " [group {g}]")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    width: usize,
    instructions: Vec<Instruction>,
}

#[derive(Deserialize)]
struct Document {
    width: usize,
    instructions: Vec<Instruction>,
}

impl Circuit {
    /// An empty circuit with `width` registers.
    pub fn new(width: usize) -> Self {
        Circuit { width, instructions: Vec::new() }
    }

    /// Validates `instructions` against `width` and re-densifies ids.
    pub fn from_instructions(width: usize, instructions: Vec<Instruction>) -> Result<Self> {
        if width == 0 {
            return Err(Error::Parse("width must be positive".into()));
        }
        let mut c = Circuit { width, instructions };
        c.densify();
        for ins in &c.instructions {
            ins.check(width)?;
        }
        Ok(c)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn instructions(&self) -> &[Instruction] {
        &self.instructions
    }

    pub fn len(&self) -> usize {
        self.instructions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instructions.is_empty()
    }

    pub fn into_instructions(self) -> Vec<Instruction> {
        self.instructions
    }

    /// Appends an instruction after validating it.
    pub fn push(&mut self, mut ins: Instruction) -> Result<&mut Self> {
        ins.id = self.instructions.len();
        ins.check(self.width)?;
        self.instructions.push(ins);
        Ok(self)
    }

    /// Appends a named gate.
    pub fn gate(&mut self, name: &str, qubits: &[usize]) -> Result<&mut Self> {
        self.push(Instruction::gate(name, qubits))
    }

    /// Appends a parameterized gate.
    pub fn gate_p(&mut self, name: &str, qubits: &[usize], theta: f64) -> Result<&mut Self> {
        self.push(Instruction::gate(name, qubits).with_param(theta))
    }

    fn densify(&mut self) {
        for (i, ins) in self.instructions.iter_mut().enumerate() {
            ins.id = i;
        }
    }

    pub fn gates(&self) -> impl Iterator<Item = &Instruction> {
        self.instructions.iter().filter(|i| i.is_gate())
    }

    pub fn has_groups(&self) -> bool {
        self.instructions.iter().any(|i| i.group.is_some())
    }

    /// Copy with every group tag removed, imposing the written order.
    pub fn strip_groups(&self) -> Circuit {
        let mut c = self.clone();
        for ins in &mut c.instructions {
            ins.group = None;
        }
        c
    }

    /// Copy without single-qubit gates; they never affect reachability.
    pub fn strip_single_qubit(&self) -> Circuit {
        let mut c = Circuit {
            width: self.width,
            instructions: self.instructions.iter().filter(|i| !(i.is_gate() && i.qubits.len() == 1)).cloned().collect(),
        };
        c.densify();
        c
    }

    /// Parses a circuit document.
    pub fn parse(text: &str) -> Result<Circuit> {
        let doc: Document = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Circuit::from_instructions(doc.width, doc.instructions)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Circuit> {
        Circuit::parse(&std::fs::read_to_string(path)?)
    }

    /// Serializes with one instruction per line.
    pub fn to_json(&self) -> String {
        let mut out = format!("{{\n  \"width\": {},\n  \"instructions\": [\n", self.width);
        for (k, ins) in self.instructions.iter().enumerate() {
            out.push_str("    ");
            out.push_str(&serde_json::to_string(ins).expect("instruction serializes"));
            if k + 1 < self.instructions.len() {
                out.push(',');
            }
            out.push('\n');
        }
        out.push_str("  ]\n}\n");
        out
    }

    pub fn write_file(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    /// Instruction ids touching qubit `q`, in order.
    pub fn ops_on(&self, q: usize) -> Vec<usize> {
        self.instructions.iter().filter(|i| i.qubits.contains(&q)).map(|i| i.id).collect()
    }

    /// Checks that every qubit opens with its only RESET and closes with its
    /// only MEASURE.
    pub fn check_static(&self) -> Result<()> {
        for q in 0..self.width {
            let ops = self.ops_on(q);
            let kinds: Vec<Kind> = ops.iter().map(|&i| self.instructions[i].kind).collect();
            let resets = kinds.iter().filter(|&&k| k == Kind::Reset).count();
            let measures = kinds.iter().filter(|&&k| k == Kind::Measure).count();
            if kinds.first() != Some(&Kind::Reset) || resets != 1 {
                return Err(Error::NotStatic(format!("qubit {q} must start with its only RESET")));
            }
            if kinds.last() != Some(&Kind::Measure) || measures != 1 {
                return Err(Error::NotStatic(format!("qubit {q} must end with its only MEASURE")));
            }
        }
        Ok(())
    }

    pub fn is_static(&self) -> bool {
        self.check_static().is_ok()
    }

    /// Checks the dynamic register discipline: every register follows
    /// `(RESET use* MEASURE)+`.
    pub fn check_dynamic(&self) -> Result<()> {
        for q in 0..self.width {
            let mut open = false;
            let mut used = false;
            for i in self.ops_on(q) {
                match (self.instructions[i].kind, open) {
                    (Kind::Reset, false) => open = true,
                    (Kind::Measure, true) => open = false,
                    (Kind::Gate, true) => {}
                    (kind, _) => {
                        return Err(Error::InvalidInstruction {
                            id: i,
                            reason: format!("{kind:?} out of order on register {q}"),
                        })
                    }
                }
                used = true;
            }
            if open || !used {
                return Err(Error::InvalidInstruction {
                    id: self.len(),
                    reason: format!("register {q} is not closed by a MEASURE"),
                });
            }
        }
        Ok(())
    }

    /// Wraps the circuit with the missing leading RESETs and trailing
    /// MEASUREs. Idempotent.
    pub fn normalize(&self) -> Result<Circuit> {
        let mut has_reset = vec![false; self.width];
        let mut measured = vec![false; self.width];
        for ins in &self.instructions {
            for &q in &ins.qubits {
                if measured[q] {
                    return Err(Error::DynamicInput(format!(
                        "instruction {} acts on qubit {q} after its MEASURE",
                        ins.id
                    )));
                }
            }
            let q = ins.qubits[0];
            match ins.kind {
                Kind::Reset => {
                    if has_reset[q] || !self.ops_on(q).first().is_some_and(|&f| f == ins.id) {
                        return Err(Error::DynamicInput(format!("mid-circuit RESET at instruction {}", ins.id)));
                    }
                    has_reset[q] = true;
                }
                Kind::Measure => measured[q] = true,
                Kind::Gate => {}
            }
        }
        let mut out: Vec<Instruction> = (0..self.width).filter(|&q| !has_reset[q]).map(Instruction::reset).collect();
        out.extend(self.instructions.iter().cloned());
        out.extend((0..self.width).filter(|&q| !measured[q]).map(Instruction::measure));
        Circuit::from_instructions(self.width, out)
    }

    /// Sequential composition: `self`'s RESETs and gates, then `other`'s
    /// gates and MEASUREs.
    pub fn compose(&self, other: &Circuit) -> Result<Circuit> {
        if self.width != other.width {
            return Err(Error::WidthMismatch(self.width, other.width));
        }
        self.check_static()?;
        other.check_static()?;
        let mut out: Vec<Instruction> = self.instructions.iter().filter(|i| i.kind != Kind::Measure).cloned().collect();
        out.extend(other.instructions.iter().filter(|i| i.kind != Kind::Reset).cloned());
        Circuit::from_instructions(self.width, out)
    }

    /// Longest chain of instructions linked by shared qubits.
    pub fn depth(&self) -> usize {
        let mut level = vec![0usize; self.width];
        let mut depth = 0;
        for ins in &self.instructions {
            let l = 1 + ins.qubits.iter().map(|&q| level[q]).max().unwrap_or(0);
            for &q in &ins.qubits {
                level[q] = l;
            }
            depth = depth.max(l);
        }
        depth
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "circuit width={} instructions={}", self.width, self.len())?;
        for ins in &self.instructions {
            writeln!(f, "{ins}")?;
        }
        Ok(())
    }
}
