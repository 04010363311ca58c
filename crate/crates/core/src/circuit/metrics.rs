//! Resource accounting.
//!
//! Quantum cost and depth are measured on the NCV stream (NOT, CNOT,
//! controlled-V, controlled-V†). Each Toffoli `CCX(x, y, t)` expands to
//! `CV(y,t) CX(x,y) CV†(y,t) CX(x,y) CV(x,t)` and a local pass drops
//! adjacent inverse pairs, looking backwards through gates that commute.
//! A lone Toffoli therefore costs 5, a Peres gate (Toffoli followed by
//! `CX(x, y)`) costs 4. T-count and T-depth are measured on the
//! Clifford+T expansion, where each Toffoli becomes a T-depth-3 network;
//! T-depth counts T stages along the critical path, Clifford gates being free.

use serde::{Deserialize, Serialize};

use super::{Circuit, Gate, Qubit};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ResourceMetrics {
    pub width: u64,
    pub depth: u64,
    pub quantum_cost: u64,
    pub t_count: u64,
    pub t_depth: u64,
}

impl ResourceMetrics {
    /// Metrics of running `self` then `other` back to back, without
    /// rescheduling across the seam.
    pub fn then(&self, other: &ResourceMetrics) -> ResourceMetrics {
        ResourceMetrics {
            width: self.width.max(other.width),
            depth: self.depth + other.depth,
            quantum_cost: self.quantum_cost + other.quantum_cost,
            t_count: self.t_count + other.t_count,
            t_depth: self.t_depth + other.t_depth,
        }
    }
}

pub fn metrics(c: &Circuit) -> ResourceMetrics {
    let width = c.width() as usize;
    let scratch = c.mcx_scratch();
    let mut ncv = NcvPass::new(width);
    let mut ct = CliffordTScheduler::new(width);
    for g in c.gates() {
        expand_mcx(g, &scratch, &mut |g| {
            ncv.feed(g);
            ct.feed(g);
        });
    }
    let (quantum_cost, depth) = ncv.finish();
    ResourceMetrics {
        width: c.width() as u64,
        depth,
        quantum_cost,
        t_count: ct.t_count,
        t_depth: ct.t_depth,
    }
}

/// Rewrites the circuit over `{X, CX, H, Z, S, Sdg, T, Tdg, CZ}`.
pub fn decompose_clifford_t(c: &Circuit) -> Circuit {
    let scratch = c.mcx_scratch();
    let mut out = Circuit {
        width: c.width(),
        registers: c.registers().to_vec(),
        gates: Vec::new(),
    };
    for g in c.gates() {
        expand_mcx(g, &scratch, &mut |g| match *g {
            Gate::Ccx(a, b, t) => out.gates.extend(ccx_clifford_t(a, b, t)),
            _ => out.gates.push(g.clone()),
        });
    }
    out
}

/// Toffoli with controls `a`, `b` and target `c` as 2 H, 8 CX and 7 T/T†,
/// arranged so the T gates fall into three layers.
pub fn ccx_clifford_t(a: Qubit, b: Qubit, c: Qubit) -> [Gate; 17] {
    [
        Gate::H(c),
        Gate::Cx(b, a),
        Gate::Tdg(a),
        Gate::T(b),
        Gate::T(c),
        Gate::Cx(b, c),
        Gate::Cx(c, a),
        Gate::Tdg(a),
        Gate::Tdg(c),
        Gate::Cx(c, a),
        Gate::Cx(b, a),
        Gate::Cx(a, c),
        Gate::T(a),
        Gate::T(c),
        Gate::Cx(a, c),
        Gate::Cx(b, c),
        Gate::H(c),
    ]
}

/// Feeds `g` to `f`, replacing a k-control MCX by the 2(k-2)+1 Toffoli
/// ladder through the scratch qubits.
fn expand_mcx(g: &Gate, scratch: &[Qubit], f: &mut impl FnMut(&Gate)) {
    let Gate::Mcx(cs, t) = g else {
        f(g);
        return;
    };
    let k = cs.len();
    let mut ladder = Vec::with_capacity(k - 2);
    ladder.push(Gate::Ccx(cs[0], cs[1], scratch[0]));
    for i in 2..k - 1 {
        ladder.push(Gate::Ccx(cs[i], scratch[i - 2], scratch[i - 1]));
    }
    for g in &ladder {
        f(g);
    }
    f(&Gate::Ccx(cs[k - 1], scratch[k - 3], *t));
    for g in ladder.iter().rev() {
        f(g);
    }
}

const NONE: u32 = u32::MAX;
const LOOKBACK: usize = 256;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Op {
    X,
    Cx,
    Cv,
    Cvdg,
    Other1,
    Other2,
}

#[derive(Clone, Copy)]
struct NcvGate {
    op: Op,
    /// Control for two-qubit gates, the qubit itself otherwise.
    a: u32,
    /// Target for two-qubit gates, `NONE` otherwise.
    b: u32,
}

impl NcvGate {
    fn target(&self) -> u32 {
        if self.b == NONE {
            self.a
        } else {
            self.b
        }
    }

    fn control(&self) -> u32 {
        if self.b == NONE {
            NONE
        } else {
            self.a
        }
    }

    fn opaque(&self) -> bool {
        matches!(self.op, Op::Other1 | Op::Other2)
    }

    fn cancels(&self, o: &NcvGate) -> bool {
        self.a == o.a
            && self.b == o.b
            && matches!(
                (self.op, o.op),
                (Op::X, Op::X) | (Op::Cx, Op::Cx) | (Op::Cv, Op::Cvdg) | (Op::Cvdg, Op::Cv)
            )
    }

    /// Every non-opaque gate is a (controlled) power of X: two such gates
    /// commute unless one's target is the other's control.
    fn commutes(&self, o: &NcvGate) -> bool {
        !self.opaque()
            && !o.opaque()
            && self.target() != o.control()
            && o.target() != self.control()
    }
}

struct NcvPass {
    gates: Vec<NcvGate>,
    alive: Vec<bool>,
    /// Indices of live gates touching each qubit, ascending.
    by_qubit: Vec<Vec<u32>>,
}

impl NcvPass {
    fn new(width: usize) -> Self {
        NcvPass {
            gates: Vec::new(),
            alive: Vec::new(),
            by_qubit: vec![Vec::new(); width],
        }
    }

    fn feed(&mut self, g: &Gate) {
        match *g {
            Gate::X(q) => self.push(NcvGate {
                op: Op::X,
                a: q,
                b: NONE,
            }),
            Gate::Cx(c, t) => self.push(NcvGate {
                op: Op::Cx,
                a: c,
                b: t,
            }),
            Gate::Ccx(x, y, t) => {
                self.push(NcvGate {
                    op: Op::Cv,
                    a: y,
                    b: t,
                });
                self.push(NcvGate {
                    op: Op::Cx,
                    a: x,
                    b: y,
                });
                self.push(NcvGate {
                    op: Op::Cvdg,
                    a: y,
                    b: t,
                });
                self.push(NcvGate {
                    op: Op::Cx,
                    a: x,
                    b: y,
                });
                self.push(NcvGate {
                    op: Op::Cv,
                    a: x,
                    b: t,
                });
            }
            Gate::H(q) | Gate::Z(q) | Gate::S(q) | Gate::Sdg(q) | Gate::T(q) | Gate::Tdg(q) => self
                .push(NcvGate {
                    op: Op::Other1,
                    a: q,
                    b: NONE,
                }),
            Gate::Cz(a, b) => self.push(NcvGate {
                op: Op::Other2,
                a,
                b,
            }),
            Gate::Mcx(..) => unreachable!("expanded before accounting"),
        }
    }

    fn push(&mut self, g: NcvGate) {
        if let Some(idx) = self.find_inverse(&g) {
            self.kill(idx);
            return;
        }
        let idx = self.gates.len() as u32;
        self.gates.push(g);
        self.alive.push(true);
        self.by_qubit[g.a as usize].push(idx);
        if g.b != NONE {
            self.by_qubit[g.b as usize].push(idx);
        }
    }

    fn find_inverse(&self, g: &NcvGate) -> Option<usize> {
        if g.opaque() {
            return None;
        }
        let la = &self.by_qubit[g.a as usize];
        let lb: &[u32] = if g.b == NONE {
            &[]
        } else {
            &self.by_qubit[g.b as usize]
        };
        let (mut ia, mut ib) = (la.len(), lb.len());
        for _ in 0..LOOKBACK {
            let next = match (
                ia.checked_sub(1).map(|i| la[i]),
                ib.checked_sub(1).map(|i| lb[i]),
            ) {
                (None, None) => return None,
                (Some(x), None) => {
                    ia -= 1;
                    x
                }
                (None, Some(y)) => {
                    ib -= 1;
                    y
                }
                (Some(x), Some(y)) => {
                    if x >= y {
                        ia -= 1;
                    }
                    if y >= x {
                        ib -= 1;
                    }
                    x.max(y)
                }
            } as usize;
            let h = &self.gates[next];
            if h.cancels(g) {
                return Some(next);
            }
            if !h.commutes(g) {
                return None;
            }
        }
        None
    }

    fn kill(&mut self, idx: usize) {
        self.alive[idx] = false;
        let g = self.gates[idx];
        for q in [g.a, g.b] {
            if q == NONE {
                continue;
            }
            let list = &mut self.by_qubit[q as usize];
            let pos = list
                .iter()
                .rposition(|&i| i as usize == idx)
                .expect("live gate is indexed");
            list.remove(pos);
        }
    }

    /// `(gate count, ASAP depth)` of the simplified stream.
    fn finish(self) -> (u64, u64) {
        let mut level = vec![0u64; self.by_qubit.len()];
        let mut depth = 0;
        let mut count = 0;
        for (g, _) in self.gates.iter().zip(&self.alive).filter(|(_, &a)| a) {
            count += 1;
            let l = if g.b == NONE {
                level[g.a as usize] + 1
            } else {
                level[g.a as usize].max(level[g.b as usize]) + 1
            };
            level[g.a as usize] = l;
            if g.b != NONE {
                level[g.b as usize] = l;
            }
            depth = depth.max(l);
        }
        (count, depth)
    }
}

/// ASAP schedule of the Clifford+T stream in which only `T`/`T†` take a
/// time step; Clifford gates order their qubits but cost no time. The
/// T-depth is the number of occupied steps.
struct CliffordTScheduler {
    level: Vec<u64>,
    t_count: u64,
    t_depth: u64,
}

impl CliffordTScheduler {
    fn new(width: usize) -> Self {
        CliffordTScheduler {
            level: vec![0; width],
            t_count: 0,
            t_depth: 0,
        }
    }

    fn feed(&mut self, g: &Gate) {
        match *g {
            Gate::Ccx(a, b, c) => {
                for g in ccx_clifford_t(a, b, c) {
                    self.place(&g);
                }
            }
            _ => self.place(g),
        }
    }

    fn place(&mut self, g: &Gate) {
        let qs = g.qubits();
        let mut l = qs
            .iter()
            .map(|&q| self.level[q as usize])
            .max()
            .unwrap_or(0);
        if matches!(g, Gate::T(_) | Gate::Tdg(_)) {
            self.t_count += 1;
            l += 1;
            self.t_depth = self.t_depth.max(l);
        }
        for &q in &qs {
            self.level[q as usize] = l;
        }
    }
}
