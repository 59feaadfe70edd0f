//! Polynomial-size preparation of the uniform superposition over all
//! Hamiltonian cycles.
//!
//! Starting from the 2-cycle (N−2)→(N−1)→(N−2), step `v` (for v = N−3 down
//! to 0) spreads index register `v` uniformly over `v+1..N` with exact
//! amplitude amplification, then for every active register `i > v` runs the
//! match / zero / release / rewrite gadgets: the register that pointed at the
//! value chosen by `v` now points at `v`. After the last step the index
//! registers hold every (N−1)! successor array with equal amplitude.
//!
//! The m flag qubits and the one auxiliary qubit are borrowed from the value
//! register, which is |0⟩ whenever the generator or its inverse runs.

mod aam;
mod modules;

pub use aam::{aam_params, build_aam, AamParams};
pub use modules::{build_match_module, build_release, build_set_value, build_xor_zero};

use crate::error::{Error, Result};
use crate::statevec::{Circuit, Gate, StateVector};
use crate::tsp::EncodingParams;

/// Qubit assignment for the generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HcgLayout {
    params: EncodingParams,
    flags: Vec<usize>,
    aux: usize,
    num_qubits: usize,
}

impl HcgLayout {
    /// Flags are the lowest m value-register qubits; aux is the next one.
    pub fn borrowed(params: &EncodingParams) -> Result<Self> {
        let value = params.value_register();
        let m = params.m();
        if value.len() < m + 1 {
            return Err(Error::validation(format!(
                "value register of {} qubits cannot lend {} ancillas",
                value.len(),
                m + 1
            )));
        }
        Ok(HcgLayout {
            params: params.clone(),
            flags: value[..m].to_vec(),
            aux: value[m],
            num_qubits: params.total_qubits(),
        })
    }

    /// Debug layout with m+1 extra qubits above the value register.
    pub fn dedicated(params: &EncodingParams) -> Self {
        let base = params.total_qubits();
        let m = params.m();
        HcgLayout { params: params.clone(), flags: (base..base + m).collect(), aux: base + m, num_qubits: base + m + 1 }
    }

    pub fn params(&self) -> &EncodingParams {
        &self.params
    }

    pub fn flags(&self) -> &[usize] {
        &self.flags
    }

    pub fn aux(&self) -> usize {
        self.aux
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    /// Flags followed by aux.
    pub fn ancillas(&self) -> Vec<usize> {
        let mut q = self.flags.clone();
        q.push(self.aux);
        q
    }

    fn validate(&self) -> Result<()> {
        let index = self.params.index_qubits();
        let anc = self.ancillas();
        if self.flags.len() != self.params.m() {
            return Err(Error::validation("flag count differs from register width"));
        }
        for (k, &q) in anc.iter().enumerate() {
            if q < index || q >= self.num_qubits || anc[..k].contains(&q) {
                return Err(Error::validation(format!("ancilla qubit {q} is invalid for this layout")));
            }
        }
        Ok(())
    }
}

/// One recursion step: amplitude amplification on register `vertex`, then the
/// per-register gadgets.
#[derive(Debug, Clone)]
pub struct HcgStep {
    pub vertex: usize,
    pub aam: Circuit,
    pub gadgets: Circuit,
}

/// X gates writing the 2-cycle: register N−2 := N−1, register N−1 := N−2.
pub fn build_hcg_seed(layout: &HcgLayout) -> Result<Circuit> {
    layout.validate()?;
    let p = layout.params();
    let n = p.n();
    let mut c = Circuit::new(layout.num_qubits());
    for (reg, value) in [(n - 2, n - 1), (n - 1, n - 2)] {
        for (bit, q) in p.register(reg).into_iter().enumerate() {
            if (value >> bit) & 1 == 1 {
                c.push(Gate::x(q))?;
            }
        }
    }
    Ok(c)
}

pub fn build_hcg_step(layout: &HcgLayout, vertex: usize) -> Result<HcgStep> {
    layout.validate()?;
    let p = layout.params();
    let n = p.n();
    if vertex + 2 >= n {
        return Err(Error::validation(format!("vertex {vertex} is part of the seed cycle for N = {n}")));
    }
    let nq = layout.num_qubits();
    let reg_v = p.register(vertex);
    let aam = build_aam(nq, &reg_v, vertex + 1, n - 1, layout.aux())?;
    let mut gadgets = Circuit::new(nq);
    for i in vertex + 1..n {
        let reg_i = p.register(i);
        gadgets.append(&build_match_module(nq, &reg_v, &reg_i, layout.flags())?)?;
        gadgets.append(&build_xor_zero(nq, &reg_v, &reg_i, layout.flags())?)?;
        gadgets.append(&build_release(nq, &reg_v, &reg_i, layout.flags())?)?;
        gadgets.append(&build_set_value(nq, &reg_i, vertex, layout.aux())?)?;
    }
    Ok(HcgStep { vertex, aam, gadgets })
}

/// Steps for vertices N−3 down to `lowest`, in application order.
pub fn build_hcg_steps(layout: &HcgLayout, lowest: usize) -> Result<Vec<HcgStep>> {
    let n = layout.params().n();
    if n < 3 {
        return Ok(Vec::new());
    }
    (lowest..n - 2).rev().map(|v| build_hcg_step(layout, v)).collect()
}

/// Seed plus steps down to `lowest`: prepares all cycles on nodes `lowest..N`.
pub fn build_hcg_partial(layout: &HcgLayout, lowest: usize) -> Result<Circuit> {
    let mut c = build_hcg_seed(layout)?;
    for step in build_hcg_steps(layout, lowest)? {
        c.append(&step.aam)?;
        c.append(&step.gadgets)?;
    }
    Ok(c)
}

pub fn build_hcg(layout: &HcgLayout) -> Result<Circuit> {
    build_hcg_partial(layout, 0)
}

pub fn build_hcg_inverse(layout: &HcgLayout) -> Result<Circuit> {
    Ok(build_hcg(layout)?.inverse())
}

/// Simulates the generator step by step and fails if any active register can
/// hold the zero sentinel when its gadgets start, or if an ancilla is left dirty.
pub fn check_zero_sentinel(layout: &HcgLayout) -> Result<StateVector> {
    let p = layout.params();
    let mut state = StateVector::new(layout.num_qubits())?;
    state.apply_circuit(&build_hcg_seed(layout)?)?;
    let m = p.m();
    let reg_mask = (1usize << m) - 1;
    for step in build_hcg_steps(layout, 0)? {
        state.apply_circuit(&step.aam)?;
        for i in step.vertex + 1..p.n() {
            let shift = i * m;
            let mass = state.probability_where(|idx| (idx >> shift) & reg_mask == 0);
            if mass > 1e-12 {
                return Err(Error::validation(format!(
                    "register {i} holds 0 with probability {mass:e} at step {}",
                    step.vertex
                )));
            }
        }
        state.apply_circuit(&step.gadgets)?;
        let anc: usize = layout.ancillas().iter().map(|&q| 1usize << q).sum();
        let dirty = state.probability_where(|idx| idx & anc != 0);
        if dirty > 1e-12 {
            return Err(Error::validation(format!(
                "ancillas dirty with probability {dirty:e} after step {}",
                step.vertex
            )));
        }
    }
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tsp::{enumerate_hcs, EncodingParams};

    fn layout(n: usize) -> HcgLayout {
        let p = EncodingParams::unchecked(n, crate::tsp::index_bits(n) + 1, 0).unwrap();
        HcgLayout::borrowed(&p).unwrap()
    }

    #[test]
    fn borrowed_ancillas_sit_in_value_register() {
        let l = layout(4);
        assert_eq!(l.flags(), &[8, 9]);
        assert_eq!(l.aux(), 10);
        assert_eq!(l.num_qubits(), 11);
        let d = HcgLayout::dedicated(l.params());
        assert_eq!(d.num_qubits(), 14);
        assert_eq!(d.aux(), 13);
    }

    #[test]
    fn four_node_support() {
        let l = layout(4);
        let mut s = StateVector::new(l.num_qubits()).unwrap();
        s.apply_circuit(&build_hcg(&l).unwrap()).unwrap();
        let expected = [[1, 2, 3, 0], [1, 3, 0, 2], [2, 3, 1, 0], [2, 0, 3, 1], [3, 2, 0, 1], [3, 0, 1, 2]];
        let p = l.params();
        let target: Vec<usize> = expected.iter().map(|t| p.encode_registers(t)).collect();
        let a0 = s.amplitude(target[0]);
        for idx in 0..1usize << l.num_qubits() {
            let a = s.amplitude(idx);
            if target.contains(&idx) {
                assert!((a - a0).norm() < 1e-9);
                assert!((a.norm_sqr() - 1.0 / 6.0).abs() < 1e-9);
            } else {
                assert!(a.norm_sqr() < 1e-18, "leak at {idx}");
            }
        }
        assert_eq!(enumerate_hcs(4).unwrap().len(), 6);
    }

    #[test]
    fn sentinel_and_ancillas_clean() {
        for n in 3..=5 {
            check_zero_sentinel(&layout(n)).unwrap();
        }
    }

    #[test]
    fn inverse_returns_to_ground() {
        let l = layout(4);
        let mut s = StateVector::new(l.num_qubits()).unwrap();
        s.apply_circuit(&build_hcg(&l).unwrap()).unwrap();
        s.apply_circuit(&build_hcg_inverse(&l).unwrap()).unwrap();
        assert!((s.probability(0) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn step_vertex_range() {
        assert!(build_hcg_step(&layout(4), 2).is_err());
        assert_eq!(build_hcg_steps(&layout(6), 0).unwrap().len(), 4);
    }
}
