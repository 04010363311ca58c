use crate::circuit::{Circuit, Gate, Qubit};
use crate::{Error, Result};

/// A computational basis state, little-endian by global qubit index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisState {
    width: u32,
    words: Vec<u64>,
}

impl BasisState {
    pub fn zeros(width: u32) -> Self {
        BasisState {
            width,
            words: vec![0; (width as usize).div_ceil(64).max(1)],
        }
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut s = Self::zeros(bits.len() as u32);
        for (i, &b) in bits.iter().enumerate() {
            s.set(i as Qubit, b);
        }
        s
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn get(&self, q: Qubit) -> bool {
        self.words[(q / 64) as usize] >> (q % 64) & 1 == 1
    }

    pub fn set(&mut self, q: Qubit, v: bool) {
        let w = &mut self.words[(q / 64) as usize];
        let m = 1u64 << (q % 64);
        if v {
            *w |= m;
        } else {
            *w &= !m;
        }
    }

    pub fn flip(&mut self, q: Qubit) {
        self.words[(q / 64) as usize] ^= 1u64 << (q % 64);
    }

    /// Unsigned value of the listed qubits, first qubit least significant.
    pub fn read(&self, qubits: &[Qubit]) -> u128 {
        qubits
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &q)| acc | (self.get(q) as u128) << i)
    }

    /// Two's complement value of the listed qubits.
    pub fn read_signed(&self, qubits: &[Qubit]) -> i128 {
        let v = self.read(qubits) as i128;
        let w = qubits.len();
        if w < 128 && w > 0 && v >> (w - 1) & 1 == 1 {
            v - (1i128 << w)
        } else {
            v
        }
    }

    /// Writes the low `qubits.len()` bits of `value` (two's complement for negatives).
    pub fn write(&mut self, qubits: &[Qubit], value: i128) {
        for (i, &q) in qubits.iter().enumerate() {
            self.set(q, value >> i.min(127) & 1 == 1);
        }
    }

    pub fn bits(&self) -> Vec<bool> {
        (0..self.width).map(|q| self.get(q)).collect()
    }

    /// Index of this state in a dense amplitude vector.
    pub fn index(&self) -> u64 {
        self.words[0]
    }

    pub fn count_ones(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }
}

pub fn run_bitwise(c: &Circuit, input: &BasisState) -> Result<BasisState> {
    if input.width() != c.width() {
        return Err(Error::Dimension {
            expected: c.width() as usize,
            got: input.width() as usize,
        });
    }
    let mut s = input.clone();
    for g in c.gates() {
        match g {
            Gate::X(t) => s.flip(*t),
            Gate::Cx(a, t) => {
                if s.get(*a) {
                    s.flip(*t)
                }
            }
            Gate::Ccx(a, b, t) => {
                if s.get(*a) && s.get(*b) {
                    s.flip(*t)
                }
            }
            Gate::Mcx(cs, t) => {
                if cs.iter().all(|&q| s.get(q)) {
                    s.flip(*t)
                }
            }
            other => return Err(Error::NonClassical(other.mnemonic())),
        }
    }
    Ok(s)
}

/// Runs 64 basis states at once: `lanes[q]` holds qubit `q` of each state in its bits.
pub fn run_bitsliced(c: &Circuit, lanes: &mut [u64]) -> Result<()> {
    if lanes.len() != c.width() as usize {
        return Err(Error::Dimension {
            expected: c.width() as usize,
            got: lanes.len(),
        });
    }
    for g in c.gates() {
        match *g {
            Gate::X(t) => lanes[t as usize] = !lanes[t as usize],
            Gate::Cx(a, t) => lanes[t as usize] ^= lanes[a as usize],
            Gate::Ccx(a, b, t) => lanes[t as usize] ^= lanes[a as usize] & lanes[b as usize],
            Gate::Mcx(ref cs, t) => {
                let m = cs.iter().fold(!0u64, |m, &q| m & lanes[q as usize]);
                lanes[t as usize] ^= m;
            }
            ref other => return Err(Error::NonClassical(other.mnemonic())),
        }
    }
    Ok(())
}
