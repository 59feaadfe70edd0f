use std::f64::consts::PI;

use super::circuit::Circuit;
use super::gate::{Control, Gate};
use crate::error::{Error, Result};

/// Quantum Fourier transform on `qubits` (`qubits[0]` least significant):
/// |k⟩ → 2^{-M/2} Σ_j e^{2πi·jk/2^M} |j⟩.
///
/// M Hadamards, M(M−1)/2 controlled phases, and ⌊M/2⌋ swaps that undo the
/// bit reversal of the Hadamard/phase ladder.
pub fn build_qft(num_qubits: usize, qubits: &[usize]) -> Result<Circuit> {
    if qubits.is_empty() {
        return Err(Error::validation("QFT needs at least one qubit"));
    }
    let m = qubits.len();
    let mut c = Circuit::new(num_qubits);
    for j in (0..m).rev() {
        c.push(Gate::h(qubits[j]))?;
        for k in (0..j).rev() {
            let theta = PI / (1u64 << (j - k)) as f64;
            c.push(Gate::mcphase(vec![Control::pos(qubits[k])], qubits[j], theta))?;
        }
    }
    for i in 0..m / 2 {
        c.push(Gate::swap(qubits[i], qubits[m - 1 - i]))?;
    }
    Ok(c)
}

/// Exact adjoint of [`build_qft`].
pub fn build_inverse_qft(num_qubits: usize, qubits: &[usize]) -> Result<Circuit> {
    Ok(build_qft(num_qubits, qubits)?.inverse())
}
