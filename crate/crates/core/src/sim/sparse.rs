use std::collections::HashMap;

use num_complex::Complex64;

use super::BasisState;
use crate::circuit::{Circuit, Gate};

/// Amplitudes on the basis states with nonzero weight, for circuits that are
/// wide but keep their support small (permutations plus a few Hadamards).
#[derive(Clone, Debug)]
pub struct SparseState {
    width: u32,
    terms: Vec<(BasisState, Complex64)>,
}

const PRUNE: f64 = 1e-14;

impl SparseState {
    pub fn basis(state: BasisState) -> Self {
        SparseState {
            width: state.width(),
            terms: vec![(state, Complex64::new(1.0, 0.0))],
        }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn terms(&self) -> &[(BasisState, Complex64)] {
        &self.terms
    }

    pub fn support(&self) -> usize {
        self.terms.len()
    }

    pub fn norm_sq(&self) -> f64 {
        self.terms.iter().map(|(_, a)| a.norm_sqr()).sum()
    }

    pub fn run(&mut self, c: &Circuit) {
        assert_eq!(
            c.width(),
            self.width,
            "circuit width differs from state width"
        );
        for g in c.gates() {
            self.apply(g);
        }
    }

    pub fn apply(&mut self, g: &Gate) {
        let w = std::f64::consts::FRAC_1_SQRT_2;
        match *g {
            Gate::X(t) => self.terms.iter_mut().for_each(|(s, _)| s.flip(t)),
            Gate::Cx(a, t) => self
                .terms
                .iter_mut()
                .filter(|(s, _)| s.get(a))
                .for_each(|(s, _)| s.flip(t)),
            Gate::Ccx(a, b, t) => self
                .terms
                .iter_mut()
                .filter(|(s, _)| s.get(a) && s.get(b))
                .for_each(|(s, _)| s.flip(t)),
            Gate::Mcx(ref cs, t) => self
                .terms
                .iter_mut()
                .filter(|(s, _)| cs.iter().all(|&q| s.get(q)))
                .for_each(|(s, _)| s.flip(t)),
            Gate::Z(t) => self.phase(|s| s.get(t), Complex64::new(-1.0, 0.0)),
            Gate::S(t) => self.phase(|s| s.get(t), Complex64::new(0.0, 1.0)),
            Gate::Sdg(t) => self.phase(|s| s.get(t), Complex64::new(0.0, -1.0)),
            Gate::T(t) => self.phase(|s| s.get(t), Complex64::new(w, w)),
            Gate::Tdg(t) => self.phase(|s| s.get(t), Complex64::new(w, -w)),
            Gate::Cz(a, b) => self.phase(|s| s.get(a) && s.get(b), Complex64::new(-1.0, 0.0)),
            Gate::H(t) => {
                let mut acc: HashMap<BasisState, Complex64> =
                    HashMap::with_capacity(2 * self.terms.len());
                for (s, a) in self.terms.drain(..) {
                    let one = s.get(t);
                    let mut s0 = s.clone();
                    s0.set(t, false);
                    let mut s1 = s;
                    s1.set(t, true);
                    *acc.entry(s0).or_default() += a * w;
                    *acc.entry(s1).or_default() += if one { -a * w } else { a * w };
                }
                self.terms = acc
                    .into_iter()
                    .filter(|(_, a)| a.norm_sqr() > PRUNE * PRUNE)
                    .collect();
                self.terms.sort_by(|x, y| x.0.cmp(&y.0));
            }
        }
    }

    fn phase(&mut self, pred: impl Fn(&BasisState) -> bool, f: Complex64) {
        for (s, a) in &mut self.terms {
            if pred(s) {
                *a *= f;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::RegisterKind;
    use crate::sim::run_statevector;

    #[test]
    fn matches_dense_simulation() {
        let mut c = Circuit::new();
        c.add_register("q", 4, RegisterKind::Input).unwrap();
        c.extend([
            Gate::H(0),
            Gate::H(1),
            Gate::Ccx(0, 1, 2),
            Gate::T(2),
            Gate::Cx(2, 3),
            Gate::H(0),
            Gate::Cz(0, 3),
            Gate::S(1),
            Gate::H(3),
        ]);
        let dense = run_statevector(&c, &BasisState::zeros(4), 24).unwrap();
        let mut sp = SparseState::basis(BasisState::zeros(4));
        sp.run(&c);
        for (s, a) in sp.terms() {
            assert!((dense[s.index() as usize] - a).norm() < 1e-12);
        }
        let listed: f64 = sp.norm_sq();
        assert!((listed - 1.0).abs() < 1e-12);
    }
}
