//! SVP oracle synthesis: `|c>|y> -> |c>|y ^ [ |sum_i x_i b_i|^2 <= tau ]>`
//! where `x_i = c_i - d_i` is decoded from the unsigned input register `c_i`.
//!
//! Layout: decode, sign-extend, multiply each `x_i` by the classical
//! entries `B_ij`, tree-sum each column, square the column sums, tree-sum
//! the squares, compare against `tau` into `y`, then run everything but the
//! comparison backwards.

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arith::{
    bitlen, ceil_log2, emit_add_const, emit_leq_const, emit_mul_const, emit_square, emit_tree_sum,
    Synth,
};
use crate::circuit::{Circuit, Qubit, QubitRegister, RegisterKind, ResourceMetrics};
use crate::lattice::LatticeBasis;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "kebab-case")]
pub enum BoundMethod {
    Explicit,
    Uniform { d: i64 },
    DualBasis { a: f64 },
    LogN,
}

/// How to choose the per-coordinate bounds `d_i`.
#[derive(Clone, Debug, PartialEq)]
pub enum BoundPolicy {
    Explicit(Vec<i64>),
    Uniform(i64),
    /// `d_i = max(1, ceil(A * |dual_i|))`; `A` defaults to the Gaussian heuristic.
    DualBasis(Option<f64>),
    /// `ceil(log2 n)` bits per coordinate.
    LogN,
}

/// Coefficient `x_i` is `c_i - d_i` for the `w_i`-bit unsigned input `c_i`,
/// so it ranges over `[-d_i, 2^w_i - 1 - d_i]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoefficientEncoding {
    pub d: Vec<i64>,
    pub w: Vec<u32>,
    pub method: BoundMethod,
}

fn width_for(d: i64) -> u32 {
    bitlen(d as u64) + 1
}

impl CoefficientEncoding {
    pub fn explicit(d: Vec<i64>) -> Result<Self> {
        Self::from_bounds(d, BoundMethod::Explicit)
    }

    pub fn uniform(n: usize, d: i64) -> Result<Self> {
        Self::from_bounds(vec![d; n], BoundMethod::Uniform { d })
    }

    /// `w = ceil(log2 n)` bits (at least one) with offset `2^(w-2)`, or 1 for
    /// a single bit, which decodes to `[-1, 0]`.
    pub fn log_n(n: usize) -> Self {
        let w = ceil_log2(n as u64).max(1);
        let d = if w >= 2 { 1i64 << (w - 2) } else { 1 };
        CoefficientEncoding {
            d: vec![d; n],
            w: vec![w; n],
            method: BoundMethod::LogN,
        }
    }

    fn from_bounds(d: Vec<i64>, method: BoundMethod) -> Result<Self> {
        if d.is_empty() {
            return Err(Error::input("no coefficient bounds"));
        }
        if let Some(bad) = d.iter().find(|&&v| v <= 0) {
            return Err(Error::input(format!(
                "coefficient bound must be positive, got {bad}"
            )));
        }
        if d.iter().any(|&v| v > 1 << 40) {
            return Err(Error::input("coefficient bound too large"));
        }
        let w = d.iter().map(|&v| width_for(v)).collect();
        Ok(CoefficientEncoding { d, w, method })
    }

    pub fn n(&self) -> usize {
        self.d.len()
    }

    pub fn range(&self, i: usize) -> (i64, i64) {
        (-self.d[i], (1i64 << self.w[i]) - 1 - self.d[i])
    }

    pub fn total_input_bits(&self) -> u32 {
        self.w.iter().sum()
    }

    pub fn decode(&self, i: usize, c: u64) -> i64 {
        c as i64 - self.d[i]
    }

    /// Splits a little-endian input pattern into decoded coefficients.
    pub fn decode_bits(&self, bits: &[bool]) -> Result<Vec<i64>> {
        if bits.len() != self.total_input_bits() as usize {
            return Err(Error::Dimension {
                expected: self.total_input_bits() as usize,
                got: bits.len(),
            });
        }
        let mut off = 0;
        Ok((0..self.n())
            .map(|i| {
                let w = self.w[i] as usize;
                let c = bits[off..off + w]
                    .iter()
                    .enumerate()
                    .fold(0u64, |a, (k, &b)| a | (b as u64) << k);
                off += w;
                self.decode(i, c)
            })
            .collect())
    }

    /// Decodes the pattern whose bit `k` is bit `k` of `pattern`.
    pub fn decode_index(&self, pattern: u64) -> Vec<i64> {
        let mut off = 0;
        (0..self.n())
            .map(|i| {
                let w = self.w[i];
                let c = (pattern >> off) & ((1u64 << w) - 1);
                off += w;
                self.decode(i, c)
            })
            .collect()
    }

    pub fn search_space(&self) -> SearchSpace {
        let bits = self.total_input_bits();
        SearchSpace {
            total_input_bits: bits,
            size: BigUint::one() << bits,
            bound_method: self.method.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchSpace {
    pub total_input_bits: u32,
    /// `N = 2^total_input_bits`.
    pub size: BigUint,
    pub bound_method: BoundMethod,
}

pub fn derive_bounds(basis: &LatticeBasis, policy: &BoundPolicy) -> Result<CoefficientEncoding> {
    let n = basis.n();
    match policy {
        BoundPolicy::Explicit(d) => {
            if d.len() != n {
                return Err(Error::Dimension {
                    expected: n,
                    got: d.len(),
                });
            }
            CoefficientEncoding::explicit(d.clone())
        }
        BoundPolicy::Uniform(d) => CoefficientEncoding::uniform(n, *d),
        BoundPolicy::LogN => Ok(CoefficientEncoding::log_n(n)),
        BoundPolicy::DualBasis(a) => {
            let a = match a {
                Some(a) if *a > 0.0 => *a,
                Some(a) => {
                    return Err(Error::input(format!(
                        "dual-basis scale must be positive, got {a}"
                    )))
                }
                None => basis.gaussian_heuristic()?,
            };
            if !basis.is_full_rank() {
                return Err(Error::NotFullRank { n, m: basis.m() });
            }
            let d = basis
                .dual_norms()
                .iter()
                .map(|&v| ((a * v - 1e-9).ceil() as i64).max(1))
                .collect();
            Ok(CoefficientEncoding {
                method: BoundMethod::DualBasis { a },
                ..CoefficientEncoding::explicit(d)?
            })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "kebab-case")]
pub enum ThresholdSource {
    GaussianHeuristic,
    ScaledGh { scale: f64 },
    Explicit,
}

/// Radius `T` and the integer comparison bound `tau = floor(T^2)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Threshold {
    #[serde(rename = "T")]
    pub t: f64,
    pub tau: u64,
    #[serde(flatten)]
    pub source: ThresholdSource,
}

impl Threshold {
    /// Explicit squared radius.
    pub fn explicit(tau: u64) -> Self {
        Threshold {
            t: (tau as f64).sqrt(),
            tau,
            source: ThresholdSource::Explicit,
        }
    }
}

/// `T = scale * gh(L)`; `scale = 1` is the plain Gaussian heuristic.
pub fn choose_threshold(basis: &LatticeBasis, scale: f64) -> Result<Threshold> {
    if !(scale >= 1.0) {
        return Err(Error::input(format!(
            "threshold scale must be at least 1, got {scale}"
        )));
    }
    let t = scale * basis.gaussian_heuristic()?;
    let source = if scale == 1.0 {
        ThresholdSource::GaussianHeuristic
    } else {
        ThresholdSource::ScaledGh { scale }
    };
    Ok(Threshold {
        t,
        tau: (t * t).floor() as u64,
        source,
    })
}

/// `[ |sum_i x_i b_i|^2 <= tau ]` for the coefficients encoded by `bits`.
pub fn classical_predicate(
    basis: &LatticeBasis,
    enc: &CoefficientEncoding,
    threshold: &Threshold,
    bits: &[bool],
) -> Result<bool> {
    let x = enc.decode_bits(bits)?;
    let b = basis.to_i64()?;
    Ok(length_sq_i64(&b, &x) <= threshold.tau as i128)
}

/// `|sum_i x_i b_i|^2` in 128-bit arithmetic.
pub fn length_sq_i64(b: &[Vec<i64>], x: &[i64]) -> i128 {
    let m = b[0].len();
    (0..m)
        .map(|j| {
            let s: i128 = b
                .iter()
                .zip(x)
                .map(|(row, &xi)| row[j] as i128 * xi as i128)
                .sum();
            s * s
        })
        .sum()
}

/// `(3/2) n log2 n - 2.26 n`: the qubit bound with its `O(log n)` slack dropped.
pub fn qubit_requirement_bound(n: u32) -> f64 {
    let n = n as f64;
    1.5 * n * n.log2() - 2.26 * n
}

/// Register widths for every stage, checked against exact value ranges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WidthPlan {
    pub coeff_bits: Vec<u32>,
    pub x_width: Vec<u32>,
    pub product_width: Vec<Vec<u32>>,
    pub inner_sum_width: Vec<u32>,
    pub square_width: u32,
    pub outer_sum_width: u32,
    pub comparator_width: u32,
}

impl WidthPlan {
    /// `ranges[i]` bounds the coefficient fed to row `i` of `b`.
    pub fn new(b: &[Vec<i64>], coeff_bits: &[u32], ranges: &[(i64, i64)]) -> Result<Self> {
        let n = b.len();
        let m = b[0].len();
        let x_width: Vec<u32> = coeff_bits.iter().map(|w| w + 1).collect();
        let product_width: Vec<Vec<u32>> = (0..n)
            .map(|i| {
                (0..m)
                    .map(|j| x_width[i] + bitlen(b[i][j].unsigned_abs()))
                    .collect()
            })
            .collect();
        let log_n = ceil_log2(n as u64);
        let inner_sum_width: Vec<u32> = (0..m)
            .map(|j| (0..n).map(|i| product_width[i][j]).max().unwrap() + log_n)
            .collect();
        let square_width = 2 * inner_sum_width.iter().copied().max().unwrap();
        let outer_sum_width = square_width + ceil_log2(m as u64);
        let plan = WidthPlan {
            coeff_bits: coeff_bits.to_vec(),
            x_width,
            product_width,
            inner_sum_width,
            square_width,
            outer_sum_width,
            comparator_width: outer_sum_width + 1,
        };
        plan.check(b, ranges)?;
        Ok(plan)
    }

    fn check(&self, b: &[Vec<i64>], ranges: &[(i64, i64)]) -> Result<()> {
        let overflow = |what: String| Error::WidthOverflow(what);
        if self.comparator_width > 126 {
            return Err(overflow(format!(
                "comparator needs {} bits",
                self.comparator_width
            )));
        }
        let fits_signed =
            |lo: i128, hi: i128, w: u32| lo >= -(1i128 << (w - 1)) && hi < 1i128 << (w - 1);
        for (i, &(lo, hi)) in ranges.iter().enumerate() {
            if !fits_signed(lo as i128, hi as i128, self.x_width[i]) {
                return Err(overflow(format!("coefficient {i} range [{lo}, {hi}]")));
            }
        }
        let mut outer: i128 = 0;
        for j in 0..b[0].len() {
            let (mut lo, mut hi) = (0i128, 0i128);
            for (i, row) in b.iter().enumerate() {
                let (a, c) = (
                    ranges[i].0 as i128 * row[j] as i128,
                    ranges[i].1 as i128 * row[j] as i128,
                );
                lo += a.min(c);
                hi += a.max(c);
            }
            if !fits_signed(lo, hi, self.inner_sum_width[j]) {
                return Err(overflow(format!("column {j} sum range [{lo}, {hi}]")));
            }
            outer = outer
                .checked_add(lo.abs().max(hi.abs()).pow(2))
                .ok_or_else(|| overflow("outer sum".into()))?;
        }
        if outer >> self.outer_sum_width != 0 {
            return Err(overflow(format!("outer sum up to {outer}")));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct OracleCircuit {
    pub circuit: Circuit,
    pub encoding: CoefficientEncoding,
    pub threshold: Threshold,
    pub width_plan: WidthPlan,
    /// Rows multiplied by -1 so the first column is non-negative; their
    /// decode is mirrored, so the oracle still tests the original basis.
    pub negated_rows: Vec<usize>,
    /// Input registers `c0 .. c{n-1}`.
    pub inputs: Vec<QubitRegister>,
    pub output: Qubit,
}

impl OracleCircuit {
    /// Input qubits in pattern order (bit `k` of a pattern is qubit `input_qubits()[k]`).
    pub fn input_qubits(&self) -> Vec<Qubit> {
        self.inputs.iter().flat_map(QubitRegister::qubits).collect()
    }
}

pub fn synthesize_oracle(
    basis: &LatticeBasis,
    enc: &CoefficientEncoding,
    threshold: &Threshold,
) -> Result<OracleCircuit> {
    let n = basis.n();
    if enc.n() != n {
        return Err(Error::Dimension {
            expected: n,
            got: enc.n(),
        });
    }
    let mut b = basis.to_i64()?;
    let m = basis.m();
    let negated_rows: Vec<usize> = (0..n).filter(|&i| b[i][0] < 0).collect();
    let mut ranges: Vec<(i64, i64)> = (0..n).map(|i| enc.range(i)).collect();
    for &i in &negated_rows {
        b[i].iter_mut().for_each(|v| *v = -*v);
        ranges[i] = (-ranges[i].1, -ranges[i].0);
    }
    let plan = WidthPlan::new(&b, &enc.w, &ranges)?;

    let mut s = Synth::new();
    let inputs: Vec<Vec<Qubit>> = (0..n)
        .map(|i| s.register(&format!("c{i}"), enc.w[i], RegisterKind::Input))
        .collect();
    let y = s.register("y", 1, RegisterKind::Output)[0];
    let signs = s.register("x_sign", n as u32, RegisterKind::Ancilla);
    let max_inner = *plan.inner_sum_width.iter().max().unwrap();

    let start = s.mark();
    // decode x_i = c_i - d_i in place, one extra sign qubit per row
    let mut x_ext: Vec<Vec<Qubit>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = inputs[i].clone();
        x.push(signs[i]);
        let modulus = 1u128 << x.len();
        if negated_rows.contains(&i) {
            // d - c = !(c - d - 1)
            emit_add_const(&mut s, modulus - (enc.d[i] as u128 + 1), &x);
            x.iter().for_each(|&q| s.x(q));
        } else {
            emit_add_const(&mut s, modulus - enc.d[i] as u128, &x);
        }
        if max_inner > x.len() as u32 {
            let ext = s.ancilla("x_ext", max_inner - x.len() as u32);
            ext.iter().for_each(|&e| s.cx(signs[i], e));
            x.extend(ext);
        }
        x_ext.push(x);
    }

    let mut squares = Vec::new();
    for j in 0..m {
        let wj = plan.inner_sum_width[j];
        let mut products = Vec::new();
        for i in (0..n).filter(|&i| b[i][j] != 0) {
            let p = s.register(&format!("p{i}_{j}"), wj, RegisterKind::Ancilla);
            emit_mul_const(&mut s, &x_ext[i], b[i][j], &p);
            products.push(p);
        }
        if products.is_empty() {
            continue;
        }
        let (k, _) = emit_tree_sum(&mut s, &products);
        let sq = s.register(
            &format!("sq{j}"),
            plan.outer_sum_width,
            RegisterKind::Ancilla,
        );
        emit_square(&mut s, &products[k], &sq);
        squares.push(sq);
    }
    let (k, _) = emit_tree_sum(&mut s, &squares);
    let stop = s.mark();

    let vmax = (1u128 << plan.outer_sum_width) - 1;
    emit_leq_const(&mut s, &squares[k], (threshold.tau as u128).min(vmax), y)?;
    s.uncompute(start, stop);

    let circuit = s.finish();
    let inputs = (0..n)
        .map(|i| circuit.register(&format!("c{i}")).unwrap().clone())
        .collect();
    Ok(OracleCircuit {
        circuit,
        encoding: enc.clone(),
        threshold: threshold.clone(),
        width_plan: plan,
        negated_rows,
        inputs,
        output: y,
    })
}

/// The JSON summary of a synthesized oracle.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OracleReport {
    pub n: usize,
    pub m: usize,
    pub bounds: Vec<i64>,
    pub widths: Vec<u32>,
    pub total_input_bits: u32,
    #[serde(rename = "N")]
    pub search_space_size: String,
    #[serde(rename = "T")]
    pub t: f64,
    pub tau: u64,
    pub threshold_source: ThresholdSource,
    pub bound_method: BoundMethod,
    pub negated_rows: Vec<usize>,
    pub width_plan: WidthPlan,
    pub metrics: ResourceMetrics,
}

impl OracleReport {
    pub fn new(basis: &LatticeBasis, oracle: &OracleCircuit, metrics: ResourceMetrics) -> Self {
        let enc = &oracle.encoding;
        OracleReport {
            n: basis.n(),
            m: basis.m(),
            bounds: enc.d.clone(),
            widths: enc.w.clone(),
            total_input_bits: enc.total_input_bits(),
            search_space_size: enc.search_space().size.to_string(),
            t: oracle.threshold.t,
            tau: oracle.threshold.tau,
            threshold_source: oracle.threshold.source.clone(),
            bound_method: enc.method.clone(),
            negated_rows: oracle.negated_rows.clone(),
            width_plan: oracle.width_plan.clone(),
            metrics,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b22() -> LatticeBasis {
        LatticeBasis::from_i64(&[vec![2, 1], vec![1, 3]]).unwrap()
    }

    #[test]
    fn encodings() {
        let e = CoefficientEncoding::uniform(2, 2).unwrap();
        assert_eq!(e.w, vec![3, 3]);
        assert_eq!(e.range(0), (-2, 5));
        let e = CoefficientEncoding::explicit(vec![1]).unwrap();
        assert_eq!((e.w[0], e.range(0)), (2, (-1, 2)));
        assert!(CoefficientEncoding::explicit(vec![0]).is_err());
        let id = LatticeBasis::from_i64(&[vec![1, 0], vec![0, 1]]).unwrap();
        let e = derive_bounds(&id, &BoundPolicy::DualBasis(Some(1.5))).unwrap();
        assert_eq!(e.d, vec![2, 2]);
        for n in [2usize, 3, 5, 8, 9, 50] {
            let e = CoefficientEncoding::log_n(n);
            assert_eq!(e.total_input_bits(), n as u32 * ceil_log2(n as u64).max(1));
        }
    }

    #[test]
    fn thresholds() {
        let t = choose_threshold(&b22(), 1.0).unwrap();
        assert!((t.t - 0.765).abs() < 1e-3);
        assert_eq!(t.tau, 0);
        let t = choose_threshold(&b22(), 3.0).unwrap();
        assert!((t.t - 2.296).abs() < 1e-3);
        assert_eq!(t.tau, 5);
        assert_eq!(Threshold::explicit(5).tau, 5);
        assert!(choose_threshold(&b22(), 0.5).is_err());
    }

    #[test]
    fn predicate_examples() {
        let b = b22();
        let e = CoefficientEncoding::uniform(2, 2).unwrap();
        let thr = Threshold::explicit(5);
        let bits = |x0: i64, x1: i64| {
            let c0 = (x0 + 2) as u64;
            let c1 = (x1 + 2) as u64;
            (0..6)
                .map(|k| {
                    if k < 3 {
                        c0 >> k & 1 == 1
                    } else {
                        c1 >> (k - 3) & 1 == 1
                    }
                })
                .collect::<Vec<_>>()
        };
        assert!(classical_predicate(&b, &e, &thr, &bits(0, 0)).unwrap());
        assert!(classical_predicate(&b, &e, &thr, &bits(1, -1)).unwrap());
        assert!(!classical_predicate(&b, &e, &thr, &bits(0, 1)).unwrap());
        assert!(classical_predicate(&b, &e, &thr, &[true]).is_err());
    }

    #[test]
    fn qubit_bound() {
        assert!((qubit_requirement_bound(100) - 770.6).abs() < 0.1);
        assert!((qubit_requirement_bound(4) - 2.96).abs() < 1e-9);
        let mut prev = qubit_requirement_bound(8);
        for n in 9..200 {
            let v = qubit_requirement_bound(n);
            assert!(v > prev);
            prev = v;
        }
    }

    #[test]
    fn width_plan_formulas() {
        let e = CoefficientEncoding::uniform(2, 2).unwrap();
        let o = synthesize_oracle(&b22(), &e, &Threshold::explicit(5)).unwrap();
        let p = &o.width_plan;
        assert_eq!(p.x_width, vec![4, 4]);
        assert_eq!(p.product_width, vec![vec![6, 5], vec![5, 6]]);
        assert_eq!(p.inner_sum_width, vec![7, 7]);
        assert_eq!(
            (p.square_width, p.outer_sum_width, p.comparator_width),
            (14, 15, 16)
        );
        assert!(o.circuit.is_classical_reversible());
    }
}
