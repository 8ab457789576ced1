//! Dense unitaries of small Clifford+T gate lists. Qubit 0 is the least
//! significant index bit.

use super::TgateError;
use crate::circuit::{Gate, GateKind};
use num_complex::Complex64;
use std::f64::consts::FRAC_1_SQRT_2;

pub const MAX_QUBITS: usize = 12;

/// Row-major square matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    pub dim: usize,
    pub data: Vec<Complex64>,
}

impl Matrix {
    pub fn identity(dim: usize) -> Matrix {
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        Matrix { dim, data }
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    pub fn column(&self, col: usize) -> Vec<Complex64> {
        (0..self.dim).map(|r| self.get(r, col)).collect()
    }

    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `U^dagger U` is the identity within `tol` entrywise.
    pub fn is_unitary(&self, tol: f64) -> bool {
        let n = self.dim;
        (0..n).all(|i| {
            (0..n).all(|j| {
                let dot: Complex64 = (0..n).map(|k| self.get(k, i).conj() * self.get(k, j)).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                (dot - want).norm() <= tol
            })
        })
    }

    /// Divides by the phase of the first entry with magnitude above `tol`.
    pub fn phase_normalized(&self, tol: f64) -> Matrix {
        let phase = self
            .data
            .iter()
            .find(|z| z.norm() > tol)
            .map(|z| z / z.norm())
            .unwrap_or(Complex64::new(1.0, 0.0));
        Matrix {
            dim: self.dim,
            data: self.data.iter().map(|z| z / phase).collect(),
        }
    }
}

/// Applies one gate to a state vector in place.
pub(crate) fn apply(g: &Gate, psi: &mut [Complex64]) {
    let bit = |q: usize| 1usize << q;
    let q = &g.qubits;
    let phase = |psi: &mut [Complex64], mask: usize, w: Complex64| {
        for (i, a) in psi.iter_mut().enumerate() {
            if i & mask == mask {
                *a *= w;
            }
        }
    };
    let w8 = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
    match g.kind {
        GateKind::X | GateKind::Cnot | GateKind::Toffoli | GateKind::Cccx => {
            let t = bit(*q.last().unwrap());
            let ctl: usize = q[..q.len() - 1].iter().map(|&c| bit(c)).sum();
            for i in 0..psi.len() {
                if i & t == 0 && i & ctl == ctl {
                    psi.swap(i, i | t);
                }
            }
        }
        GateKind::H => {
            let t = bit(q[0]);
            for i in 0..psi.len() {
                if i & t == 0 {
                    let (a, b) = (psi[i], psi[i | t]);
                    psi[i] = (a + b) * FRAC_1_SQRT_2;
                    psi[i | t] = (a - b) * FRAC_1_SQRT_2;
                }
            }
        }
        GateKind::Z => phase(psi, bit(q[0]), Complex64::new(-1.0, 0.0)),
        GateKind::S => phase(psi, bit(q[0]), Complex64::i()),
        GateKind::Sdg => phase(psi, bit(q[0]), -Complex64::i()),
        GateKind::T => phase(psi, bit(q[0]), w8),
        GateKind::Tdg => phase(psi, bit(q[0]), w8.conj()),
        GateKind::Cz => phase(psi, bit(q[0]) | bit(q[1]), Complex64::new(-1.0, 0.0)),
    }
}

/// Product of the gate matrices in application order over `q` qubits.
pub fn unitary_of(gates: &[Gate], q: usize) -> Result<Matrix, TgateError> {
    if q > MAX_QUBITS {
        return Err(TgateError::TooManyQubits { q, max: MAX_QUBITS });
    }
    if let Some(g) = gates.iter().find(|g| g.qubits.iter().any(|&x| x >= q)) {
        return Err(TgateError::QubitOutOfRange(g.to_string()));
    }
    let dim = 1usize << q;
    let mut m = Matrix::identity(dim);
    let mut col = vec![Complex64::new(0.0, 0.0); dim];
    for c in 0..dim {
        col.fill(Complex64::new(0.0, 0.0));
        col[c] = Complex64::new(1.0, 0.0);
        for g in gates {
            apply(g, &mut col);
        }
        for (r, v) in col.iter().enumerate() {
            m.data[r * dim + c] = *v;
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-10;

    #[test]
    fn hh_is_identity() {
        let m = unitary_of(&[Gate::h(0), Gate::h(0)], 1).unwrap();
        assert!(m.max_abs_diff(&Matrix::identity(2)) < TOL);
    }

    #[test]
    fn ss_is_z_and_tt_is_s() {
        let ss = unitary_of(&[Gate::s(0), Gate::s(0)], 1).unwrap();
        assert!(ss.max_abs_diff(&unitary_of(&[Gate::z(0)], 1).unwrap()) < TOL);
        let tt = unitary_of(&[Gate::t(0), Gate::t(0)], 1).unwrap();
        assert!(tt.max_abs_diff(&unitary_of(&[Gate::s(0)], 1).unwrap()) < TOL);
    }

    #[test]
    fn qubit_zero_is_low_bit() {
        let m = unitary_of(&[Gate::cnot(0, 1)], 2).unwrap();
        // |01> (index 1, qubit 0 set) -> |11>
        assert!((m.get(3, 1) - 1.0).norm() < TOL);
    }

    #[test]
    fn unitarity_and_limits() {
        let gs = [
            Gate::h(0),
            Gate::t(1),
            Gate::cnot(0, 2),
            Gate::cz(1, 2),
            Gate::sdg(0),
        ];
        assert!(unitary_of(&gs, 3).unwrap().is_unitary(TOL));
        assert!(matches!(
            unitary_of(&[], 13),
            Err(TgateError::TooManyQubits { .. })
        ));
        assert!(unitary_of(&[Gate::h(3)], 3).is_err());
    }
}
