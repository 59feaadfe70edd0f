//! Per-register gadgets of one recursion step.

use crate::error::{Error, Result};
use crate::statevec::{controls_for_value, zero_controls, Circuit, Control, Gate};

fn check_disjoint(groups: &[&[usize]]) -> Result<()> {
    let mut seen = std::collections::BTreeSet::new();
    for group in groups {
        for &q in *group {
            if !seen.insert(q) {
                return Err(Error::validation(format!("qubit {q} appears in more than one register")));
            }
        }
    }
    Ok(())
}

fn check_widths(reg_a: &[usize], reg_b: &[usize], flags: &[usize]) -> Result<()> {
    if reg_a.is_empty() || reg_a.len() != reg_b.len() || reg_a.len() != flags.len() {
        return Err(Error::validation(format!(
            "register widths differ: {} / {} / {}",
            reg_a.len(),
            reg_b.len(),
            flags.len()
        )));
    }
    check_disjoint(&[reg_a, reg_b, flags])
}

fn match_gates(reg_a: &[usize], reg_b: &[usize], flags: &[usize]) -> Vec<Gate> {
    let mut gates = Vec::with_capacity(2 * flags.len());
    for ((&a, &b), &f) in reg_a.iter().zip(reg_b).zip(flags) {
        gates.push(Gate::mcx(vec![Control::pos(a), Control::pos(b)], f));
        gates.push(Gate::mcx(vec![Control::neg(a), Control::neg(b)], f));
    }
    gates
}

/// Module A: flag `j` flips iff bit `j` of `reg_a` equals bit `j` of `reg_b`.
pub fn build_match_module(num_qubits: usize, reg_a: &[usize], reg_b: &[usize], flags: &[usize]) -> Result<Circuit> {
    check_widths(reg_a, reg_b, flags)?;
    let mut c = Circuit::new(num_qubits);
    c.extend(match_gates(reg_a, reg_b, flags))?;
    Ok(c)
}

/// Module B: `reg_b ^= reg_a` when every flag is set, which zeroes a matched register.
pub fn build_xor_zero(num_qubits: usize, reg_a: &[usize], reg_b: &[usize], flags: &[usize]) -> Result<Circuit> {
    check_widths(reg_a, reg_b, flags)?;
    let mut c = Circuit::new(num_qubits);
    for (&a, &b) in reg_a.iter().zip(reg_b) {
        let mut controls: Vec<Control> = flags.iter().map(|&f| Control::pos(f)).collect();
        controls.push(Control::pos(a));
        c.push(Gate::mcx(controls, b))?;
    }
    Ok(c)
}

/// Module C followed by the repeat of Module A.
///
/// On the zeroed branch (`reg_b = 0`) flag `j` is cleared by Module C when
/// `a_j = 1` and by the repeated anti-controlled gate when `a_j = 0`. Elsewhere
/// Module C is inert and the repeat undoes Module A.
pub fn build_release(num_qubits: usize, reg_a: &[usize], reg_b: &[usize], flags: &[usize]) -> Result<Circuit> {
    check_widths(reg_a, reg_b, flags)?;
    let mut c = Circuit::new(num_qubits);
    for (&a, &f) in reg_a.iter().zip(flags) {
        let mut controls = vec![Control::pos(a)];
        controls.extend(zero_controls(reg_b));
        c.push(Gate::mcx(controls, f))?;
    }
    c.extend(match_gates(reg_a, reg_b, flags))?;
    Ok(c)
}

/// Module D: rewrites the zero sentinel |0^m⟩ of `reg` as |v⟩ using one ancilla.
/// Registers holding any value other than 0 and `v` are untouched.
pub fn build_set_value(num_qubits: usize, reg: &[usize], v: usize, aux: usize) -> Result<Circuit> {
    if reg.is_empty() || v >= 1usize << reg.len() {
        return Err(Error::validation(format!("value {v} does not fit in {} bits", reg.len())));
    }
    check_disjoint(&[reg, &[aux]])?;
    let mut c = Circuit::new(num_qubits);
    if v == 0 {
        return Ok(c);
    }
    c.push(Gate::mcx(zero_controls(reg), aux))?;
    for (bit, &q) in reg.iter().enumerate() {
        if (v >> bit) & 1 == 1 {
            c.push(Gate::mcx(vec![Control::pos(aux)], q))?;
        }
    }
    c.push(Gate::mcx(controls_for_value(reg, v), aux))?;
    Ok(c)
}
