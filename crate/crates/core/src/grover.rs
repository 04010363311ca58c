//! Grover search around a synthesized oracle: iteration planning, the
//! diffusion operator, circuit assembly and resource totals.
//!
//! Iteration counts reach `10^22` and beyond for the dimensions of interest,
//! so counts and totals are arbitrary-precision integers. Only small plans
//! are ever emitted as gate lists; large ones exist purely as arithmetic.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::circuit::{metrics, Circuit, Gate, Qubit, RegisterKind, ResourceMetrics};
use crate::oracle::OracleCircuit;
use crate::sim::{BasisState, SparseState};
use crate::{Error, Result};

/// Default assumed number of solutions: `±v` for a shortest `v`, plus zero.
pub const DEFAULT_SOLUTIONS: u64 = 3;

/// Plans with more iterations than this are never emitted gate by gate.
pub const ASSEMBLY_ITERATION_CAP: u64 = 4096;

/// `floor(pi/4 * 10^40)`.
const QUARTER_PI_40: &str = "7853981633974483096156608458198757210492";
const SQRT_DIGITS: u32 = 32;

/// `ceil((pi/4) * sqrt(N/M))`, computed with 32 significant digits in the
/// square root and 40 in `pi/4`.
pub fn iteration_count(n: &BigUint, m: u64) -> Result<BigUint> {
    if m == 0 {
        return Err(Error::input("solution count M must be at least 1"));
    }
    let m = BigUint::from(m);
    if &m > n {
        return Err(Error::input(format!(
            "solution count {m} exceeds search space {n}"
        )));
    }
    let scale = BigUint::from(10u32).pow(2 * SQRT_DIGITS);
    let root = (n * &scale / &m).sqrt();
    let quarter_pi: BigUint = QUARTER_PI_40.parse().expect("constant");
    let num = root * quarter_pi;
    let den = BigUint::from(10u32).pow(SQRT_DIGITS + 40);
    let q = &num / &den;
    Ok(if (&q * &den) == num { q } else { q + 1u32 })
}

/// `sin^2((2k+1) * asin(sqrt(M/N)))`.
pub fn success_probability(n: f64, m: f64, k: u64) -> f64 {
    let theta = (m / n).sqrt().asin();
    ((2 * k + 1) as f64 * theta).sin().powi(2)
}

fn emit_diffusion(c: &mut Circuit, qubits: &[Qubit]) -> Result<()> {
    let (&last, rest) = qubits
        .split_last()
        .ok_or_else(|| Error::input("diffusion needs at least one qubit"))?;
    c.reserve_mcx_scratch(rest.len())?;
    qubits.iter().for_each(|&q| c.push(Gate::H(q)));
    qubits.iter().for_each(|&q| c.push(Gate::X(q)));
    match rest.len() {
        0 => c.push(Gate::Z(last)),
        1 => c.push(Gate::Cz(rest[0], last)),
        _ => {
            c.push(Gate::H(last));
            c.try_push(Gate::mcx(rest, last))?;
            c.push(Gate::H(last));
        }
    }
    qubits.iter().for_each(|&q| c.push(Gate::X(q)));
    qubits.iter().for_each(|&q| c.push(Gate::H(q)));
    Ok(())
}

/// The reflection `H X (multi-controlled Z) X H` on a register `q` of
/// `input_bits` qubits. It equals `I - 2|s><s|`, the textbook reflection up
/// to a global sign.
pub fn build_diffusion(input_bits: u32) -> Result<Circuit> {
    let mut c = Circuit::new();
    let q = c.add_register("q", input_bits, RegisterKind::Input)?;
    emit_diffusion(&mut c, &q.qubits())?;
    Ok(c)
}

/// Resource totals that may exceed 64 bits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResourceTotals {
    pub width: u64,
    #[serde(with = "crate::decimal")]
    pub depth: BigUint,
    #[serde(with = "crate::decimal")]
    pub quantum_cost: BigUint,
    #[serde(with = "crate::decimal")]
    pub t_count: BigUint,
    #[serde(with = "crate::decimal")]
    pub t_depth: BigUint,
}

impl ResourceTotals {
    /// `once + k * repeated`, field by field, width the larger of the two.
    pub fn affine(once: &ResourceMetrics, k: &BigUint, repeated: &ResourceMetrics) -> Self {
        let f = |a: u64, b: u64| BigUint::from(a) + k * BigUint::from(b);
        ResourceTotals {
            width: once.width.max(repeated.width),
            depth: f(once.depth, repeated.depth),
            quantum_cost: f(once.quantum_cost, repeated.quantum_cost),
            t_count: f(once.t_count, repeated.t_count),
            t_depth: f(once.t_depth, repeated.t_depth),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroverPlan {
    #[serde(rename = "N", with = "crate::decimal")]
    pub search_space: BigUint,
    #[serde(rename = "M")]
    pub solutions: u64,
    #[serde(with = "crate::decimal")]
    pub k: BigUint,
    pub input_bits: u32,
    pub preparation: ResourceMetrics,
    pub oracle: ResourceMetrics,
    pub diffusion: ResourceMetrics,
    pub per_iteration: ResourceMetrics,
    pub totals: ResourceTotals,
}

impl GroverPlan {
    /// Combines per-stage metrics into a plan for `N` and `M`.
    pub fn from_parts(
        search_space: BigUint,
        solutions: u64,
        input_bits: u32,
        preparation: ResourceMetrics,
        oracle: ResourceMetrics,
        diffusion: ResourceMetrics,
    ) -> Result<Self> {
        let k = iteration_count(&search_space, solutions)?;
        let per_iteration = oracle.then(&diffusion);
        let totals = ResourceTotals::affine(&preparation, &k, &per_iteration);
        Ok(GroverPlan {
            search_space,
            solutions,
            k,
            input_bits,
            preparation,
            oracle,
            diffusion,
            per_iteration,
            totals,
        })
    }

    pub fn k_u64(&self) -> Option<u64> {
        self.k.to_u64()
    }
}

/// Gate ranges of an assembled circuit: `preparation`, then `k` pairs of
/// `(oracle, diffusion)`.
#[derive(Clone, Debug)]
pub struct GroverLayout {
    pub preparation: std::ops::Range<usize>,
    pub iterations: Vec<(std::ops::Range<usize>, std::ops::Range<usize>)>,
}

struct Stages {
    skeleton: Circuit,
    preparation: Circuit,
    oracle: Circuit,
    diffusion: Circuit,
}

/// The pieces of an oracle that Grover assembly needs.
#[derive(Clone, Debug)]
pub struct SearchOracle {
    pub circuit: Circuit,
    pub inputs: Vec<Qubit>,
    pub output: Qubit,
}

impl SearchOracle {
    pub fn from_oracle(o: &OracleCircuit) -> Self {
        SearchOracle {
            circuit: o.circuit.clone(),
            inputs: o.input_qubits(),
            output: o.output,
        }
    }

    /// An oracle that flips `y` on exactly the listed input patterns, one
    /// `X`-conjugated multi-controlled `X` per pattern.
    pub fn ideal(input_bits: u32, solutions: &[u64]) -> Result<Self> {
        let mut c = Circuit::new();
        let q = c
            .add_register("c", input_bits, RegisterKind::Input)?
            .qubits();
        let y = c.add_register("y", 1, RegisterKind::Output)?.offset;
        c.reserve_mcx_scratch(q.len())?;
        for &p in solutions {
            let zeros: Vec<Qubit> = (0..input_bits)
                .filter(|&i| p >> i & 1 == 0)
                .map(|i| q[i as usize])
                .collect();
            zeros.iter().for_each(|&z| c.push(Gate::X(z)));
            c.try_push(Gate::mcx(&q, y))?;
            zeros.iter().for_each(|&z| c.push(Gate::X(z)));
        }
        Ok(SearchOracle {
            circuit: c,
            inputs: q,
            output: y,
        })
    }

    pub fn search_space(&self) -> BigUint {
        BigUint::one() << self.inputs.len()
    }
}

fn stages(oracle: &SearchOracle) -> Result<Stages> {
    let inputs = oracle.inputs.clone();
    let mut skeleton = oracle.circuit.layout();
    skeleton.reserve_mcx_scratch(inputs.len().saturating_sub(1))?;

    let mut preparation = skeleton.clone();
    preparation.push(Gate::X(oracle.output));
    preparation.push(Gate::H(oracle.output));
    inputs.iter().for_each(|&q| preparation.push(Gate::H(q)));

    let mut body = skeleton.clone();
    body.extend(oracle.circuit.gates().iter().cloned());

    let mut diffusion = skeleton.clone();
    emit_diffusion(&mut diffusion, &inputs)?;
    Ok(Stages {
        skeleton,
        preparation,
        oracle: body,
        diffusion,
    })
}

/// Plans a search without emitting it; works for any iteration count.
pub fn plan_grover(oracle: &OracleCircuit, m: u64) -> Result<GroverPlan> {
    plan_search(&SearchOracle::from_oracle(oracle), m)
}

pub fn plan_search(oracle: &SearchOracle, m: u64) -> Result<GroverPlan> {
    let st = stages(oracle)?;
    GroverPlan::from_parts(
        oracle.search_space(),
        m,
        oracle.inputs.len() as u32,
        metrics(&st.preparation),
        metrics(&st.oracle),
        metrics(&st.diffusion),
    )
}

/// Emits preparation (`X`, `H` on the output qubit, `H` on every input
/// qubit) followed by `k` rounds of oracle and diffusion.
pub fn assemble_grover(oracle: &OracleCircuit, m: u64) -> Result<(Circuit, GroverPlan)> {
    assemble_search(&SearchOracle::from_oracle(oracle), m)
}

pub fn assemble_search(oracle: &SearchOracle, m: u64) -> Result<(Circuit, GroverPlan)> {
    let plan = plan_search(oracle, m)?;
    let k = plan
        .k_u64()
        .filter(|&k| k <= ASSEMBLY_ITERATION_CAP)
        .ok_or_else(|| Error::Cap {
            what: "Grover iterations to emit",
            value: plan.k.to_u64().unwrap_or(u64::MAX),
            cap: ASSEMBLY_ITERATION_CAP,
        })?;
    let (c, _) = assemble_with(oracle, k)?;
    Ok((c, plan))
}

/// Emits preparation and exactly `k` rounds, reporting where each stage
/// starts and ends.
pub fn assemble_with(oracle: &SearchOracle, k: u64) -> Result<(Circuit, GroverLayout)> {
    let st = stages(oracle)?;
    let mut c = st.skeleton;
    c.extend(st.preparation.gates().iter().cloned());
    let preparation = 0..c.len();
    let mut iterations = Vec::with_capacity(k as usize);
    for _ in 0..k {
        let a = c.len();
        c.extend(st.oracle.gates().iter().cloned());
        let b = c.len();
        c.extend(st.diffusion.gates().iter().cloned());
        iterations.push((a..b, b..c.len()));
    }
    Ok((
        c,
        GroverLayout {
            preparation,
            iterations,
        },
    ))
}

/// Probability that measuring `inputs` after running `c` from `|0...0>`
/// yields a pattern in `solutions` (patterns little-endian over `inputs`).
/// The state is tracked sparsely, so wide circuits with a small support
/// (oracles whose ancillas return to zero) are fine.
pub fn solution_probability(c: &Circuit, inputs: &[Qubit], solutions: &[u64]) -> f64 {
    let mut psi = SparseState::basis(BasisState::zeros(c.width()));
    psi.run(c);
    let set: HashSet<u64> = solutions.iter().copied().collect();
    psi.terms()
        .iter()
        .filter(|(s, _)| set.contains(&(s.read(inputs) as u64)))
        .map(|(_, a)| a.norm_sqr())
        .sum()
}

/// `N` for the uniform `ceil(log2 n)`-bit encoding: `2^(n * ceil(log2 n))`.
pub fn log_n_search_space(n: u32) -> BigUint {
    let w = crate::arith::ceil_log2(n as u64).max(1);
    BigUint::one() << (n as u64 * w as u64)
}

/// Scientific rendering of a large integer truncated (not rounded) to
/// `digits` significant figures, e.g. `4.75e5`.
pub fn scientific(v: &BigUint, digits: usize) -> String {
    let s = v.to_string();
    let digits = digits.max(1);
    let mut head: String = s
        .chars()
        .chain(std::iter::repeat('0'))
        .take(digits)
        .collect();
    if digits > 1 {
        head.insert(1, '.');
    }
    format!("{head}e{}", s.len() - 1)
}
