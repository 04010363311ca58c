//! Reversible integer arithmetic on qubit registers.
//!
//! The `emit_*` functions append gates for registers that already exist in
//! a circuit; the `build_*` functions wrap them into standalone circuits
//! with named registers. Signed values are two's complement throughout and
//! every block leaves its scratch qubits clean.
//!
//! The ripple-carry adder keeps no carry ancillas: the carry chain runs
//! through the `a` register itself (which is restored), so an `N`-bit add
//! with carry-out costs `13N - 10` with delay `10N - 4` under the NCV
//! costing in [`crate::circuit::metrics`].

use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Gate, Qubit, RegisterKind};
use crate::{Error, Result};

/// Circuit under construction plus a counter for unique ancilla names.
#[derive(Debug, Default)]
pub struct Synth {
    pub circuit: Circuit,
    counter: usize,
}

impl Synth {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn register(&mut self, name: &str, width: u32, kind: RegisterKind) -> Vec<Qubit> {
        self.circuit
            .add_register(name, width, kind)
            .expect("fresh register name")
            .qubits()
    }

    /// A fresh clean ancilla register named `prefix` plus a serial number.
    pub fn ancilla(&mut self, prefix: &str, width: u32) -> Vec<Qubit> {
        self.counter += 1;
        let name = format!("{prefix}{}", self.counter);
        self.register(&name, width, RegisterKind::Ancilla)
    }

    pub fn mark(&self) -> usize {
        self.circuit.len()
    }

    /// Appends the inverse of everything emitted since `from`, up to `to`.
    pub fn uncompute(&mut self, from: usize, to: usize) {
        self.circuit.push_inverse_of(from, to);
    }

    pub fn x(&mut self, t: Qubit) {
        self.circuit.push(Gate::X(t));
    }

    pub fn cx(&mut self, c: Qubit, t: Qubit) {
        self.circuit.push(Gate::Cx(c, t));
    }

    pub fn ccx(&mut self, a: Qubit, b: Qubit, t: Qubit) {
        self.circuit.push(Gate::Ccx(a, b, t));
    }

    pub fn finish(self) -> Circuit {
        self.circuit
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Signedness {
    Unsigned,
    TwosComplement,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntRegisterSpec {
    pub width: u32,
    pub signedness: Signedness,
}

impl IntRegisterSpec {
    pub fn unsigned(width: u32) -> Self {
        IntRegisterSpec {
            width,
            signedness: Signedness::Unsigned,
        }
    }

    pub fn signed(width: u32) -> Self {
        IntRegisterSpec {
            width,
            signedness: Signedness::TwosComplement,
        }
    }
}

/// `b += a` and `z ^= carry-out`, with `a` restored.
pub fn emit_add_carry(s: &mut Synth, a: &[Qubit], b: &[Qubit], z: Qubit) {
    let n = a.len();
    assert_eq!(n, b.len(), "adder operands must have equal width");
    assert!(n >= 1);
    if n == 1 {
        s.ccx(a[0], b[0], z);
        s.cx(a[0], b[0]);
        return;
    }
    for i in 1..n {
        s.cx(a[i], b[i]);
    }
    s.cx(a[n - 1], z);
    for i in (1..n - 1).rev() {
        s.cx(a[i], a[i + 1]);
    }
    for i in 0..n - 1 {
        s.ccx(a[i], b[i], a[i + 1]);
    }
    s.ccx(a[n - 1], b[n - 1], z);
    for i in (1..n).rev() {
        s.cx(a[i], b[i]);
        s.ccx(a[i - 1], b[i - 1], a[i]);
    }
    // The closing CNOT layer is ordered so the last CX(a_i, b_i) for the
    // high bits runs after the a-chain is unwound.
    s.cx(a[1], b[1]);
    for i in 1..n - 1 {
        s.cx(a[i], a[i + 1]);
    }
    s.cx(a[0], b[0]);
    for i in (2..n).rev() {
        s.cx(a[i], b[i]);
    }
}

/// `b = (a + b) mod 2^N`.
pub fn emit_add_mod(s: &mut Synth, a: &[Qubit], b: &[Qubit]) {
    let n = a.len();
    assert_eq!(n, b.len(), "adder operands must have equal width");
    if n == 0 {
        return;
    }
    s.cx(a[n - 1], b[n - 1]);
    if n >= 2 {
        emit_add_carry(s, &a[..n - 1], &b[..n - 1], b[n - 1]);
    }
}

/// `b -= a` with `z ^= [b < a]`, as the complement of `~b + a`.
pub fn emit_sub_borrow(s: &mut Synth, a: &[Qubit], b: &[Qubit], z: Qubit) {
    b.iter().for_each(|&q| s.x(q));
    emit_add_carry(s, a, b, z);
    b.iter().for_each(|&q| s.x(q));
}

/// `b = (b - a) mod 2^N`.
pub fn emit_sub_mod(s: &mut Synth, a: &[Qubit], b: &[Qubit]) {
    b.iter().for_each(|&q| s.x(q));
    emit_add_mod(s, a, b);
    b.iter().for_each(|&q| s.x(q));
}

/// `b = (b + k) mod 2^N` for a classical `k`, via a temporarily loaded register.
pub fn emit_add_const(s: &mut Synth, k: u128, b: &[Qubit]) {
    let n = b.len();
    let k = if n >= 128 { k } else { k & ((1u128 << n) - 1) };
    if k == 0 {
        return;
    }
    let reg = s.ancilla("const", b.len() as u32);
    let set: Vec<Qubit> = (0..b.len())
        .filter(|&i| k >> i & 1 == 1)
        .map(|i| reg[i])
        .collect();
    set.iter().for_each(|&q| s.x(q));
    emit_add_mod(s, &reg, b);
    set.iter().for_each(|&q| s.x(q));
}

/// Controlled adder-subtractor: with control `q` clear, `sum` (N+1 bits,
/// zero on entry) receives `a + b`; with `q` set it receives
/// `a + !b + 1`, whose low N bits are `(a - b) mod 2^N` and whose top bit
/// is set iff `a >= b`. `b` is left holding garbage.
pub fn emit_ctrl_addsub(s: &mut Synth, q: Qubit, a: &[Qubit], b: &[Qubit], sum: &[Qubit]) {
    let n = a.len();
    assert_eq!(n, b.len());
    assert_eq!(sum.len(), n + 1);
    for &bi in b {
        s.cx(q, bi);
    }
    s.cx(q, sum[0]);
    for i in 0..n {
        s.ccx(a[i], b[i], sum[i + 1]);
        s.cx(a[i], b[i]);
        s.ccx(b[i], sum[i], sum[i + 1]);
        s.cx(b[i], sum[i]);
    }
}

/// `out += x * k` modulo `2^|out|`, where `out` is zero on entry and `x_ext`
/// is `x` sign-extended to at least `|out|` bits. Shift-and-add over the set
/// bits of `|k|`; negative constants subtract every term.
pub fn emit_mul_const(s: &mut Synth, x_ext: &[Qubit], k: i64, out: &[Qubit]) {
    let wo = out.len();
    assert!(
        x_ext.len() >= wo,
        "operand must be extended to the output width"
    );
    let mag = k.unsigned_abs();
    let terms: Vec<usize> = (0..wo.min(64)).filter(|&p| mag >> p & 1 == 1).collect();
    let Some((&first, rest)) = terms.split_first() else {
        return;
    };
    if k > 0 {
        for i in 0..wo - first {
            s.cx(x_ext[i], out[first + i]);
        }
        for &p in rest {
            emit_add_mod(s, &x_ext[..wo - p], &out[p..]);
        }
    } else {
        for &p in &terms {
            emit_sub_mod(s, &x_ext[..wo - p], &out[p..]);
        }
    }
}

/// `out[..2W] = s^2` for a `W`-bit two's complement `sv`; `out` zero on entry.
pub fn emit_square(s: &mut Synth, sv: &[Qubit], out: &[Qubit]) {
    let w = sv.len();
    assert!(
        out.len() >= 2 * w,
        "squarer output needs twice the input width"
    );
    let sign = s.ancilla("sq_sign", 1)[0];
    s.cx(sv[w - 1], sign);
    // |s| in place: complement under the sign, then add the sign bit
    let abs_from = s.mark();
    for &q in sv {
        s.cx(sign, q);
    }
    let inc = s.ancilla("sq_inc", w as u32);
    s.cx(sign, inc[0]);
    emit_add_mod(s, &inc, sv);
    s.cx(sign, inc[0]);
    let abs_to = s.mark();

    let copy = s.ancilla("sq_copy", w as u32);
    for i in 0..w {
        s.cx(sv[i], copy[i]);
    }
    let and = s.ancilla("sq_and", w as u32);
    for k in 0..w {
        for i in 0..w {
            s.ccx(copy[k], sv[i], and[i]);
        }
        // partial sums stay below 2^(W+k), so bit W+k is clear here
        emit_add_carry(s, &and, &out[k..k + w], out[k + w]);
        for i in 0..w {
            s.ccx(copy[k], sv[i], and[i]);
        }
    }
    for i in 0..w {
        s.cx(sv[i], copy[i]);
    }
    s.uncompute(abs_from, abs_to);
    s.cx(sv[w - 1], sign);
}

/// Pairwise in-place sums; returns the index of the register holding the
/// total and the number of adder layers. All registers share one width.
pub fn emit_tree_sum(s: &mut Synth, regs: &[Vec<Qubit>]) -> (usize, u32) {
    assert!(!regs.is_empty());
    let mut alive: Vec<usize> = (0..regs.len()).collect();
    let mut layers = 0;
    while alive.len() > 1 {
        let mut next = Vec::with_capacity(alive.len().div_ceil(2));
        for pair in alive.chunks(2) {
            if let [x, y] = *pair {
                emit_add_mod(s, &regs[x], &regs[y]);
                next.push(y);
            } else {
                next.push(pair[0]);
            }
        }
        alive = next;
        layers += 1;
    }
    (alive[0], layers)
}

/// `y ^= [v <= tau]` for unsigned `v`, via the sign of `v - (tau + 1)`
/// computed in a `W+1`-bit scratch copy.
pub fn emit_leq_const(s: &mut Synth, v: &[Qubit], tau: u128, y: Qubit) -> Result<()> {
    let w = v.len();
    if w >= 127 || tau >> w != 0 {
        return Err(Error::input(format!(
            "threshold {tau} does not fit in {w} bits"
        )));
    }
    let scratch = s.ancilla("cmp", w as u32 + 1);
    let from = s.mark();
    for i in 0..w {
        s.cx(v[i], scratch[i]);
    }
    let modulus = 1u128 << (w + 1);
    emit_add_const(s, modulus - (tau + 1), &scratch);
    let to = s.mark();
    s.cx(scratch[w], y);
    s.uncompute(from, to);
    Ok(())
}

/// Adder `|a>|b>|0> -> |a>|a+b mod 2^N>|carry>`.
pub fn build_adder(width: u32) -> Circuit {
    let mut s = Synth::new();
    let a = s.register("a", width, RegisterKind::Input);
    let b = s.register("b", width, RegisterKind::Input);
    let z = s.register("carry", 1, RegisterKind::Output)[0];
    emit_add_carry(&mut s, &a, &b, z);
    s.finish()
}

/// Subtractor `|a>|b>|0> -> |a>|b-a mod 2^N>|[b < a]>`.
pub fn build_subtractor(width: u32) -> Circuit {
    let mut s = Synth::new();
    let a = s.register("a", width, RegisterKind::Input);
    let b = s.register("b", width, RegisterKind::Input);
    let z = s.register("sign", 1, RegisterKind::Output)[0];
    emit_sub_borrow(&mut s, &a, &b, z);
    s.finish()
}

/// See [`emit_ctrl_addsub`]; the result lands in the `sum` register.
pub fn build_ctrl_addsub(width: u32) -> Circuit {
    let mut s = Synth::new();
    let q = s.register("ctrl", 1, RegisterKind::Input)[0];
    let a = s.register("a", width, RegisterKind::Input);
    let b = s.register("b", width, RegisterKind::Input);
    let sum = s.register("sum", width + 1, RegisterKind::Output);
    emit_ctrl_addsub(&mut s, q, &a, &b, &sum);
    s.finish()
}

/// `|x>|0> -> |x>|x*k>`, with output width `|x| + bitlen(|k|)`.
pub fn build_const_multiplier(x_spec: IntRegisterSpec, constant: i64) -> Circuit {
    let mut s = Synth::new();
    let wx = x_spec.width;
    let wo = wx + (64 - constant.unsigned_abs().leading_zeros());
    let x = s.register("x", wx, RegisterKind::Input);
    let out = s.register("out", wo, RegisterKind::Output);
    let mut x_ext = x.clone();
    if wo > wx {
        match x_spec.signedness {
            Signedness::TwosComplement => {
                let ext = s.register("ext", wo - wx, RegisterKind::Ancilla);
                let from = s.mark();
                ext.iter().for_each(|&e| s.cx(x[wx as usize - 1], e));
                let to = s.mark();
                x_ext.extend(&ext);
                emit_mul_const(&mut s, &x_ext, constant, &out);
                s.uncompute(from, to);
                return s.finish();
            }
            Signedness::Unsigned => {
                x_ext.extend(s.register("ext", wo - wx, RegisterKind::ConstantZero))
            }
        }
    }
    emit_mul_const(&mut s, &x_ext, constant, &out);
    s.finish()
}

/// `|s>|0> -> |s>|s^2>` for a two's complement input of `width` bits.
pub fn build_squarer(width: u32) -> Circuit {
    let mut s = Synth::new();
    let sv = s.register("s", width, RegisterKind::Input);
    let out = s.register("out", 2 * width, RegisterKind::Output);
    emit_square(&mut s, &sv, &out);
    s.finish()
}

/// Sums `k = operand_widths.len()` unsigned operands, each zero-padded to
/// `max width + ceil(log2 k)` bits. The register holding the total is the
/// one declared with kind `output`; the others are named `op<i>`.
pub fn build_tree_sum(operand_widths: &[u32]) -> Result<Circuit> {
    let k = operand_widths.len();
    if k < 2 {
        return Err(Error::input("tree sum needs at least two operands"));
    }
    let w = operand_widths.iter().copied().max().unwrap() + ceil_log2(k as u64);
    let mut s = Synth::new();
    let regs: Vec<Vec<Qubit>> = (0..k)
        .map(|i| s.register(&format!("op{i}"), w, RegisterKind::Input))
        .collect();
    let (result, _) = emit_tree_sum(&mut s, &regs);
    let mut c = s.finish();
    let name = format!("op{result}");
    let reg = c.registers().iter().position(|r| r.name == name).unwrap();
    let mut regs_table = c.registers().to_vec();
    regs_table[reg].kind = RegisterKind::Output;
    let gates = c.gates().to_vec();
    c = Circuit::new();
    for r in regs_table {
        c.insert_register(r)?;
    }
    c.extend(gates);
    Ok(c)
}

/// `|v>|y> -> |v>|y ^ [v <= tau]>` for unsigned `v` of `width` bits.
pub fn build_leq_const(width: u32, tau: u128) -> Result<Circuit> {
    let mut s = Synth::new();
    let v = s.register("v", width, RegisterKind::Input);
    let y = s.register("y", 1, RegisterKind::Output)[0];
    emit_leq_const(&mut s, &v, tau, y)?;
    Ok(s.finish())
}

pub fn ceil_log2(k: u64) -> u32 {
    if k <= 1 {
        0
    } else {
        64 - (k - 1).leading_zeros()
    }
}

pub fn bitlen(v: u64) -> u32 {
    64 - v.leading_zeros()
}
