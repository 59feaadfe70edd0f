use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::statevec::{controls_for_value, zero_controls, Circuit, Gate};

/// Iteration count and matched phase of exact amplitude amplification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AamParams {
    /// Size of the target set.
    pub marked: usize,
    /// Register width.
    pub bits: usize,
    pub iterations: usize,
    /// Phase φ used by both reflections.
    pub phase: f64,
    /// marked / 2^bits
    pub fraction: f64,
}

/// n = ⌈π/(4·asin√f) − 1/2⌉ and φ = 2·asin(sin(π/(4n+2))/√f) with f = t/2^m.
pub fn aam_params(marked: usize, bits: usize) -> Result<AamParams> {
    if bits == 0 || bits > 30 {
        return Err(Error::validation(format!("register width {bits} out of range")));
    }
    let space = 1usize << bits;
    if marked == 0 || marked >= space {
        return Err(Error::validation(format!("marked count {marked} must lie in 1..{space}")));
    }
    let fraction = marked as f64 / space as f64;
    let beta = fraction.sqrt().asin();
    let iterations = ((PI / (4.0 * beta) - 0.5).ceil() as usize).max(1);
    let ratio = ((PI / (4 * iterations + 2) as f64).sin() / fraction.sqrt()).min(1.0);
    let phase = 2.0 * ratio.asin();
    Ok(AamParams { marked, bits, iterations, phase, fraction })
}

/// Maps |0^m⟩ on `register` to the uniform superposition over `lo..=hi`
/// (up to a global phase). `ancilla` must be |0⟩ and is returned to |0⟩.
///
/// H^{⊗m} followed by n rounds of G(φ,φ) = H^{⊗m} S₀(φ) H^{⊗m} S_χ(φ). S_χ
/// toggles the ancilla on each member of the range, phases it, and untoggles;
/// S₀ phases |0^m⟩ through an X-conjugated, fully negative-controlled phase.
pub fn build_aam(num_qubits: usize, register: &[usize], lo: usize, hi: usize, ancilla: usize) -> Result<Circuit> {
    let bits = register.len();
    if bits == 0 {
        return Err(Error::validation("amplitude amplification needs a non-empty register"));
    }
    if register.contains(&ancilla) {
        return Err(Error::validation(format!("ancilla {ancilla} overlaps the target register")));
    }
    if lo > hi || hi >= (1usize << bits) {
        return Err(Error::validation(format!("target range [{lo}, {hi}] is empty or exceeds {bits} bits")));
    }
    let mut c = Circuit::new(num_qubits);
    let hadamards = |c: &mut Circuit| c.extend(register.iter().map(|&q| Gate::h(q)));
    hadamards(&mut c)?;
    let marked = hi - lo + 1;
    if marked == 1usize << bits {
        return Ok(c);
    }
    let params = aam_params(marked, bits)?;
    let top = register[bits - 1];
    for _ in 0..params.iterations {
        // S_χ(φ)
        let toggles: Vec<Gate> = (lo..=hi).map(|v| Gate::mcx(controls_for_value(register, v), ancilla)).collect();
        c.extend(toggles.iter().cloned())?;
        c.push(Gate::phase(ancilla, params.phase))?;
        c.extend(toggles.into_iter().rev())?;
        hadamards(&mut c)?;
        // S₀(φ)
        c.push(Gate::x(top))?;
        if bits == 1 {
            c.push(Gate::phase(top, params.phase))?;
        } else {
            c.push(Gate::mcphase(zero_controls(&register[..bits - 1]), top, params.phase))?;
        }
        c.push(Gate::x(top))?;
        hadamards(&mut c)?;
    }
    Ok(c)
}
