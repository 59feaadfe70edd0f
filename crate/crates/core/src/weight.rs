//! Value-register arithmetic: writes `(w_σ − C_T) mod 2^M` next to every
//! tour branch with single-qubit and multi-controlled phase gates.
//!
//! After H^{⊗M}, U_G(θ) multiplies |j⟩ by e^{ijθ}. Choosing θ = 2πk/2^M and
//! applying the inverse QFT leaves |k mod 2^M⟩, so U_G angles accumulate
//! integers. Each edge weight w_{i,c} contributes a U_G controlled on index
//! register `i` holding `c`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::statevec::{build_inverse_qft, controls_for_value, wrap_angle, Circuit, Control, Gate};
use crate::tsp::{EncodingParams, Graph};

/// Angle that encodes the integer `k` in an M-bit register.
pub fn integer_angle(k: i64, value_bits: usize) -> f64 {
    2.0 * PI * k as f64 / (1u64 << value_bits) as f64
}

fn ug_gates(value_register: &[usize], theta: f64, controls: &[Control]) -> Vec<Gate> {
    value_register
        .iter()
        .enumerate()
        .map(|(bit, &q)| {
            let angle = wrap_angle(theta * (1u64 << bit) as f64);
            if controls.is_empty() {
                Gate::phase(q, angle)
            } else {
                Gate::mcphase(controls.to_vec(), q, angle)
            }
        })
        .collect()
}

/// U_G(θ): Phase(2^b·θ) on value bit b.
pub fn build_ug(num_qubits: usize, value_register: &[usize], theta: f64) -> Result<Circuit> {
    let mut c = Circuit::new(num_qubits);
    c.extend(ug_gates(value_register, theta, &[]))?;
    Ok(c)
}

/// U_G(θ) applied only where every control matches.
pub fn build_controlled_ug(
    num_qubits: usize,
    value_register: &[usize],
    theta: f64,
    controls: &[Control],
) -> Result<Circuit> {
    let mut c = Circuit::new(num_qubits);
    c.extend(ug_gates(value_register, theta, controls))?;
    Ok(c)
}

/// U_{w−C_T}: N² controlled U_G blocks (one per register and candidate
/// successor, diagonal included) followed by the constant block U_G(−2πC_T/2^M).
///
/// Zero-angle gates are kept; use [`Circuit::without_identities`] to drop them.
pub fn build_weight_sum(graph: &Graph, params: &EncodingParams) -> Result<Circuit> {
    if graph.n() != params.n() {
        return Err(Error::validation(format!("graph has {} nodes, layout has {}", graph.n(), params.n())));
    }
    let nq = params.total_qubits();
    let bits = params.value_bits();
    let value = params.value_register();
    let mut c = Circuit::new(nq);
    for i in 0..params.n() {
        let reg = params.register(i);
        for succ in 0..params.n() {
            let theta = integer_angle(i64::from(graph.weight(i, succ)), bits);
            c.extend(ug_gates(&value, theta, &controls_for_value(&reg, succ)))?;
        }
    }
    c.extend(ug_gates(&value, integer_angle(-params.threshold(), bits), &[]))?;
    Ok(c)
}

/// H^{⊗M}; U_{w−C_T}; QFT†. Maps |σ⟩|0⟩ to |σ⟩|(w_σ − C_T) mod 2^M⟩.
pub fn build_value_encode(graph: &Graph, params: &EncodingParams) -> Result<Circuit> {
    let nq = params.total_qubits();
    let value = params.value_register();
    let mut c = Circuit::new(nq);
    c.extend(value.iter().map(|&q| Gate::h(q)))?;
    c.append(&build_weight_sum(graph, params)?.without_identities())?;
    c.append(&build_inverse_qft(nq, &value)?)?;
    Ok(c)
}

/// Adjoint of [`build_value_encode`]: QFT; U†_{w−C_T}; H^{⊗M}.
pub fn build_value_decode(graph: &Graph, params: &EncodingParams) -> Result<Circuit> {
    Ok(build_value_encode(graph, params)?.inverse())
}

/// Z on the sign qubit: negates every branch with w_σ − C_T < 0.
pub fn build_sign_oracle(params: &EncodingParams) -> Result<Circuit> {
    let mut c = Circuit::new(params.total_qubits());
    c.push(Gate::z(params.sign_qubit()))?;
    Ok(c)
}
