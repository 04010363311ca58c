use num_complex::Complex64;

use super::BasisState;
use crate::circuit::{Circuit, Gate, Qubit};
use crate::{Error, Result};

pub const DEFAULT_STATEVECTOR_CAP: u32 = 24;

pub fn run_statevector(c: &Circuit, input: &BasisState, cap: u32) -> Result<Vec<Complex64>> {
    if c.width() > cap {
        return Err(Error::Cap {
            what: "statevector width",
            value: c.width() as u64,
            cap: cap as u64,
        });
    }
    if input.width() != c.width() {
        return Err(Error::Dimension {
            expected: c.width() as usize,
            got: input.width() as usize,
        });
    }
    let mut psi = vec![Complex64::new(0.0, 0.0); 1usize << c.width()];
    psi[input.index() as usize] = Complex64::new(1.0, 0.0);
    run_statevector_from(c, &mut psi)?;
    Ok(psi)
}

/// Applies `c` in place to an amplitude vector of length `2^width`.
pub fn run_statevector_from(c: &Circuit, psi: &mut [Complex64]) -> Result<()> {
    if psi.len() != 1usize << c.width() {
        return Err(Error::Dimension {
            expected: 1usize << c.width(),
            got: psi.len(),
        });
    }
    for g in c.gates() {
        apply(g, psi);
    }
    Ok(())
}

fn bit(q: Qubit) -> usize {
    1usize << q
}

fn controlled_x(psi: &mut [Complex64], controls: usize, t: Qubit) {
    let tb = bit(t);
    for i in 0..psi.len() {
        if i & tb == 0 && i & controls == controls {
            psi.swap(i, i | tb);
        }
    }
}

fn phase(psi: &mut [Complex64], mask: usize, f: Complex64) {
    for (i, a) in psi.iter_mut().enumerate() {
        if i & mask == mask {
            *a *= f;
        }
    }
}

fn apply(g: &Gate, psi: &mut [Complex64]) {
    let w = std::f64::consts::FRAC_1_SQRT_2;
    match *g {
        Gate::X(t) => controlled_x(psi, 0, t),
        Gate::Cx(a, t) => controlled_x(psi, bit(a), t),
        Gate::Ccx(a, b, t) => controlled_x(psi, bit(a) | bit(b), t),
        Gate::Mcx(ref cs, t) => controlled_x(psi, cs.iter().fold(0, |m, &q| m | bit(q)), t),
        Gate::H(t) => {
            let tb = bit(t);
            for i in 0..psi.len() {
                if i & tb == 0 {
                    let (a, b) = (psi[i], psi[i | tb]);
                    psi[i] = (a + b) * w;
                    psi[i | tb] = (a - b) * w;
                }
            }
        }
        Gate::Z(t) => phase(psi, bit(t), Complex64::new(-1.0, 0.0)),
        Gate::S(t) => phase(psi, bit(t), Complex64::new(0.0, 1.0)),
        Gate::Sdg(t) => phase(psi, bit(t), Complex64::new(0.0, -1.0)),
        Gate::T(t) => phase(psi, bit(t), Complex64::new(w, w)),
        Gate::Tdg(t) => phase(psi, bit(t), Complex64::new(w, -w)),
        Gate::Cz(a, b) => phase(psi, bit(a) | bit(b), Complex64::new(-1.0, 0.0)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::RegisterKind;

    fn circ(width: u32, gates: &[Gate]) -> Circuit {
        let mut c = Circuit::new();
        c.add_register("q", width, RegisterKind::Input).unwrap();
        c.extend(gates.iter().cloned());
        c
    }

    #[test]
    fn hadamard_and_toffoli() {
        let psi = run_statevector(&circ(1, &[Gate::H(0)]), &BasisState::zeros(1), 24).unwrap();
        assert!(
            (psi[0].re - 0.5f64.sqrt()).abs() < 1e-15 && (psi[1].re - 0.5f64.sqrt()).abs() < 1e-15
        );
        let psi = run_statevector(
            &circ(3, &[Gate::Ccx(0, 1, 2)]),
            &BasisState::from_bits(&[true, true, false]),
            24,
        )
        .unwrap();
        assert_eq!(psi[0b111], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn width_cap() {
        let c = circ(5, &[]);
        assert!(matches!(
            run_statevector(&c, &BasisState::zeros(5), 4),
            Err(Error::Cap { .. })
        ));
    }
}
