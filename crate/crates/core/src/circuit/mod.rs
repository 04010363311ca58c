//! Reversible/quantum circuit IR over named qubit registers.
//!
//! Bit order is little-endian by global qubit index everywhere: bit `i` of a
//! register value lives on qubit `offset + i`.

mod metrics;
mod text;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use metrics::{ccx_clifford_t, decompose_clifford_t, metrics, ResourceMetrics};
pub use text::{parse_circuit, write_circuit};

pub type Qubit = u32;

/// Name of the register that holds clean ancillas for multi-controlled X.
pub const MCX_SCRATCH: &str = "mcx_scratch";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegisterKind {
    Input,
    Ancilla,
    Output,
    ConstantZero,
}

impl RegisterKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RegisterKind::Input => "input",
            RegisterKind::Ancilla => "ancilla",
            RegisterKind::Output => "output",
            RegisterKind::ConstantZero => "constant-zero",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "input" => RegisterKind::Input,
            "ancilla" => RegisterKind::Ancilla,
            "output" => RegisterKind::Output,
            "constant-zero" => RegisterKind::ConstantZero,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QubitRegister {
    pub name: String,
    pub offset: Qubit,
    pub width: u32,
    pub kind: RegisterKind,
}

impl QubitRegister {
    pub fn qubit(&self, i: u32) -> Qubit {
        assert!(i < self.width, "bit {i} outside register {}", self.name);
        self.offset + i
    }

    pub fn qubits(&self) -> Vec<Qubit> {
        (self.offset..self.offset + self.width).collect()
    }

    pub fn contains(&self, q: Qubit) -> bool {
        q >= self.offset && q < self.offset + self.width
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GateKind {
    X,
    CX,
    CCX,
    MCX,
    H,
    Z,
    S,
    Sdg,
    T,
    Tdg,
    CZ,
}

/// A gate; multi-qubit variants list controls first, then the target.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    X(Qubit),
    Cx(Qubit, Qubit),
    Ccx(Qubit, Qubit, Qubit),
    Mcx(Box<[Qubit]>, Qubit),
    H(Qubit),
    Z(Qubit),
    S(Qubit),
    Sdg(Qubit),
    T(Qubit),
    Tdg(Qubit),
    Cz(Qubit, Qubit),
}

impl Gate {
    /// Multi-controlled X, normalized to `X`/`CX`/`CCX` for fewer than three controls.
    pub fn mcx(controls: &[Qubit], target: Qubit) -> Gate {
        match *controls {
            [] => Gate::X(target),
            [c] => Gate::Cx(c, target),
            [a, b] => Gate::Ccx(a, b, target),
            _ => Gate::Mcx(controls.into(), target),
        }
    }

    pub fn kind(&self) -> GateKind {
        match self {
            Gate::X(_) => GateKind::X,
            Gate::Cx(..) => GateKind::CX,
            Gate::Ccx(..) => GateKind::CCX,
            Gate::Mcx(..) => GateKind::MCX,
            Gate::H(_) => GateKind::H,
            Gate::Z(_) => GateKind::Z,
            Gate::S(_) => GateKind::S,
            Gate::Sdg(_) => GateKind::Sdg,
            Gate::T(_) => GateKind::T,
            Gate::Tdg(_) => GateKind::Tdg,
            Gate::Cz(..) => GateKind::CZ,
        }
    }

    pub fn mnemonic(&self) -> &'static str {
        match self {
            Gate::X(_) => "x",
            Gate::Cx(..) => "cx",
            Gate::Ccx(..) => "ccx",
            Gate::Mcx(..) => "mcx",
            Gate::H(_) => "h",
            Gate::Z(_) => "z",
            Gate::S(_) => "s",
            Gate::Sdg(_) => "sdg",
            Gate::T(_) => "t",
            Gate::Tdg(_) => "tdg",
            Gate::Cz(..) => "cz",
        }
    }

    /// Controls then target.
    pub fn qubits(&self) -> Vec<Qubit> {
        match self {
            Gate::X(q)
            | Gate::H(q)
            | Gate::Z(q)
            | Gate::S(q)
            | Gate::Sdg(q)
            | Gate::T(q)
            | Gate::Tdg(q) => vec![*q],
            Gate::Cx(a, b) | Gate::Cz(a, b) => vec![*a, *b],
            Gate::Ccx(a, b, c) => vec![*a, *b, *c],
            Gate::Mcx(cs, t) => cs.iter().copied().chain(std::iter::once(*t)).collect(),
        }
    }

    pub fn is_classical(&self) -> bool {
        matches!(
            self,
            Gate::X(_) | Gate::Cx(..) | Gate::Ccx(..) | Gate::Mcx(..)
        )
    }

    pub fn inverse(&self) -> Gate {
        match self {
            Gate::S(q) => Gate::Sdg(*q),
            Gate::Sdg(q) => Gate::S(*q),
            Gate::T(q) => Gate::Tdg(*q),
            Gate::Tdg(q) => Gate::T(*q),
            g => g.clone(),
        }
    }

    pub fn map_qubits(&self, f: impl Fn(Qubit) -> Qubit) -> Gate {
        match self {
            Gate::X(q) => Gate::X(f(*q)),
            Gate::Cx(a, b) => Gate::Cx(f(*a), f(*b)),
            Gate::Ccx(a, b, c) => Gate::Ccx(f(*a), f(*b), f(*c)),
            Gate::Mcx(cs, t) => Gate::Mcx(cs.iter().map(|&q| f(q)).collect(), f(*t)),
            Gate::H(q) => Gate::H(f(*q)),
            Gate::Z(q) => Gate::Z(f(*q)),
            Gate::S(q) => Gate::S(f(*q)),
            Gate::Sdg(q) => Gate::Sdg(f(*q)),
            Gate::T(q) => Gate::T(f(*q)),
            Gate::Tdg(q) => Gate::Tdg(f(*q)),
            Gate::Cz(a, b) => Gate::Cz(f(*a), f(*b)),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Circuit {
    width: u32,
    registers: Vec<QubitRegister>,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn registers(&self) -> &[QubitRegister] {
        &self.registers
    }

    pub fn register(&self, name: &str) -> Option<&QubitRegister> {
        self.registers.iter().find(|r| r.name == name)
    }

    pub fn registers_of(&self, kind: RegisterKind) -> impl Iterator<Item = &QubitRegister> {
        self.registers.iter().filter(move |r| r.kind == kind)
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Appends a fresh register after every existing qubit.
    pub fn add_register(
        &mut self,
        name: &str,
        width: u32,
        kind: RegisterKind,
    ) -> Result<QubitRegister> {
        if width == 0 {
            return Err(Error::input(format!(
                "register `{name}` must have width >= 1"
            )));
        }
        let reg = QubitRegister {
            name: name.to_string(),
            offset: self.width,
            width,
            kind,
        };
        self.insert_register(reg.clone())?;
        Ok(reg)
    }

    /// Declares a register at an explicit offset, growing the width as needed.
    pub fn insert_register(&mut self, reg: QubitRegister) -> Result<()> {
        if reg.width == 0 {
            return Err(Error::input(format!(
                "register `{}` must have width >= 1",
                reg.name
            )));
        }
        for r in &self.registers {
            if r.name == reg.name {
                return Err(Error::RegisterCollision(format!(
                    "duplicate register name `{}`",
                    reg.name
                )));
            }
            if reg.offset < r.offset + r.width && r.offset < reg.offset + reg.width {
                return Err(Error::RegisterCollision(format!(
                    "`{}` overlaps `{}`",
                    reg.name, r.name
                )));
            }
        }
        self.width = self.width.max(reg.offset + reg.width);
        self.registers.push(reg);
        Ok(())
    }

    /// Makes sure a clean scratch register can serve an MCX with `controls` controls.
    pub fn reserve_mcx_scratch(&mut self, controls: usize) -> Result<()> {
        let need = controls.saturating_sub(2) as u32;
        if need == 0 {
            return Ok(());
        }
        match self.registers.iter().position(|r| r.name == MCX_SCRATCH) {
            None => {
                self.add_register(MCX_SCRATCH, need, RegisterKind::ConstantZero)?;
            }
            Some(i) => {
                let r = &self.registers[i];
                if r.width < need {
                    if r.offset + r.width != self.width {
                        return Err(Error::Gate(format!(
                            "scratch register too small for a {controls}-control MCX"
                        )));
                    }
                    self.width += need - r.width;
                    self.registers[i].width = need;
                }
            }
        }
        Ok(())
    }

    /// Qubits of the scratch register, if declared.
    pub fn mcx_scratch(&self) -> Vec<Qubit> {
        self.register(MCX_SCRATCH)
            .map(QubitRegister::qubits)
            .unwrap_or_default()
    }

    /// Appends a gate built by trusted code; panics on invalid qubits.
    pub fn push(&mut self, g: Gate) {
        if let Err(e) = self.check(&g) {
            panic!("{e}");
        }
        self.gates.push(g);
    }

    pub fn try_push(&mut self, g: Gate) -> Result<()> {
        self.check(&g)?;
        self.gates.push(g);
        Ok(())
    }

    fn check(&self, g: &Gate) -> Result<()> {
        let qs = g.qubits();
        for (i, &q) in qs.iter().enumerate() {
            if q >= self.width {
                return Err(Error::Gate(format!(
                    "{} touches qubit {q} outside width {}",
                    g.mnemonic(),
                    self.width
                )));
            }
            if qs[..i].contains(&q) {
                return Err(Error::Gate(format!("{} repeats qubit {q}", g.mnemonic())));
            }
        }
        if let Gate::Mcx(cs, _) = g {
            if cs.len() < 3 {
                return Err(Error::Gate("mcx needs at least three controls".into()));
            }
            let scratch = self.mcx_scratch();
            if scratch.len() < cs.len() - 2 {
                return Err(Error::Gate(format!(
                    "mcx with {} controls needs {} scratch qubits",
                    cs.len(),
                    cs.len() - 2
                )));
            }
            if scratch[..cs.len() - 2].iter().any(|s| qs.contains(s)) {
                return Err(Error::Gate(
                    "mcx may not act on its own scratch qubits".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate>) {
        for g in gates {
            self.push(g);
        }
    }

    /// Appends the inverse of `gates[from..to]`.
    pub fn push_inverse_of(&mut self, from: usize, to: usize) {
        self.gates.reserve(to - from);
        for i in (from..to).rev() {
            let g = self.gates[i].inverse();
            self.gates.push(g);
        }
    }

    pub fn remove_gate(&mut self, index: usize) -> Option<Gate> {
        (index < self.gates.len()).then(|| self.gates.remove(index))
    }

    /// The same registers with no gates.
    pub fn layout(&self) -> Circuit {
        Circuit {
            width: self.width,
            registers: self.registers.clone(),
            gates: Vec::new(),
        }
    }

    pub fn inverse(&self) -> Circuit {
        Circuit {
            width: self.width,
            registers: self.registers.clone(),
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
        }
    }

    /// Appends `other`'s gates, merging register tables: registers with the
    /// same name must agree exactly, and distinct registers may not overlap.
    pub fn append(&mut self, other: &Circuit) -> Result<()> {
        let mut merged = self.clone();
        for r in &other.registers {
            match merged.registers.iter().find(|x| x.name == r.name) {
                Some(x) if x == r => {}
                Some(_) => {
                    return Err(Error::RegisterCollision(format!(
                        "`{}` declared differently",
                        r.name
                    )))
                }
                None => merged.insert_register(r.clone())?,
            }
        }
        merged.width = merged.width.max(other.width);
        merged.gates.extend(other.gates.iter().cloned());
        *self = merged;
        Ok(())
    }

    pub fn compose(&self, other: &Circuit) -> Result<Circuit> {
        let mut c = self.clone();
        c.append(other)?;
        Ok(c)
    }

    pub fn is_classical_reversible(&self) -> bool {
        self.gates.iter().all(Gate::is_classical)
    }

    /// Same gates on a renamed register table.
    pub fn rename_register(&mut self, from: &str, to: &str) -> Result<()> {
        if self.register(to).is_some() {
            return Err(Error::RegisterCollision(format!("`{to}` already declared")));
        }
        let r = self
            .registers
            .iter_mut()
            .find(|r| r.name == from)
            .ok_or_else(|| Error::input(format!("no register `{from}`")))?;
        r.name = to.to_string();
        Ok(())
    }
}
