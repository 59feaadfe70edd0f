use super::graph::Graph;
use super::tour::{tour_weight_range, Tour};
use crate::error::{Error, Result};

/// Bits needed to hold one node label: ⌈log₂ n⌉ (at least 1).
pub fn index_bits(n: usize) -> usize {
    (usize::BITS - (n.max(2) - 1).leading_zeros()) as usize
}

/// Register layout and arithmetic width for one instance.
///
/// Index register `i` occupies qubits `[i·m, (i+1)·m)`, little-endian. The
/// value register holds `M` qubits above all index registers; its top qubit is
/// the sign bit of the complement-code difference `w_σ − C_T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodingParams {
    n: usize,
    m: usize,
    value_bits: usize,
    threshold: i64,
}

impl EncodingParams {
    /// Validates the layout against `graph`: `M ≥ m + 1`, and every tour's
    /// `w_σ − C_T` lies in `[−2^{M−1}, 2^{M−1})`.
    pub fn new(graph: &Graph, value_bits: usize, threshold: i64) -> Result<Self> {
        let params = Self::unchecked(graph.n(), value_bits, threshold)?;
        let (lo, hi) = tour_weight_range(graph)?;
        params.check_difference(lo)?;
        params.check_difference(hi)?;
        Ok(params)
    }

    /// Layout only, without the per-graph wraparound check.
    pub fn unchecked(n: usize, value_bits: usize, threshold: i64) -> Result<Self> {
        if n < 3 {
            return Err(Error::validation(format!("need at least 3 nodes, got {n}")));
        }
        let m = index_bits(n);
        if value_bits < m + 1 {
            return Err(Error::validation(format!(
                "value register of {value_bits} qubits cannot lend {} ancillas (m = {m})",
                m + 1
            )));
        }
        if value_bits > 31 {
            return Err(Error::validation(format!("value register of {value_bits} qubits is too wide")));
        }
        Ok(EncodingParams { n, m, value_bits, threshold })
    }

    /// Same layout with a different threshold, checked against `graph`.
    pub fn with_threshold(&self, graph: &Graph, threshold: i64) -> Result<Self> {
        EncodingParams::new(graph, self.value_bits, threshold)
    }

    fn check_difference(&self, weight: i64) -> Result<()> {
        let d = weight - self.threshold;
        let half = 1i64 << (self.value_bits - 1);
        if d < -half || d >= half {
            return Err(Error::validation(format!(
                "tour weight {weight} minus threshold {} = {d} wraps a {}-bit complement code",
                self.threshold, self.value_bits
            )));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Bits per index register.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn value_bits(&self) -> usize {
        self.value_bits
    }

    pub fn threshold(&self) -> i64 {
        self.threshold
    }

    pub fn index_qubits(&self) -> usize {
        self.n * self.m
    }

    pub fn total_qubits(&self) -> usize {
        self.index_qubits() + self.value_bits
    }

    /// Qubits of index register `i`, least significant first.
    pub fn register(&self, i: usize) -> Vec<usize> {
        (i * self.m..(i + 1) * self.m).collect()
    }

    /// Qubits of the value register, least significant first.
    pub fn value_register(&self) -> Vec<usize> {
        (self.index_qubits()..self.total_qubits()).collect()
    }

    pub fn sign_qubit(&self) -> usize {
        self.total_qubits() - 1
    }

    /// Mask selecting every index-register bit of a basis index.
    pub fn index_mask(&self) -> usize {
        (1usize << self.index_qubits()) - 1
    }

    /// Basis index of `|σ⟩|0⟩`.
    pub fn encode_tour(&self, tour: &Tour) -> Result<usize> {
        if tour.n() != self.n {
            return Err(Error::validation(format!("tour has {} nodes, layout has {}", tour.n(), self.n)));
        }
        Ok(self.encode_registers(tour.successor()))
    }

    /// Basis index with index register `i` holding `values[i]` and the value register at 0.
    pub fn encode_registers(&self, values: &[usize]) -> usize {
        values.iter().enumerate().fold(0, |acc, (i, &v)| acc | (v << (i * self.m)))
    }

    /// Basis index of `|σ⟩|(w − C_T) mod 2^M⟩` for a signed difference.
    pub fn encode_with_value(&self, values: &[usize], difference: i64) -> usize {
        let raw = (difference.rem_euclid(1i64 << self.value_bits)) as usize;
        self.encode_registers(values) | (raw << self.index_qubits())
    }

    /// Splits a basis index into register contents and the signed value field.
    pub fn decode_basis(&self, index: usize) -> (Vec<usize>, i64) {
        let mask = (1usize << self.m) - 1;
        let regs = (0..self.n).map(|i| (index >> (i * self.m)) & mask).collect();
        let raw = (index >> self.index_qubits()) & ((1usize << self.value_bits) - 1);
        (regs, self.signed_value(raw))
    }

    /// Complement-code reading of an M-bit value.
    pub fn signed_value(&self, raw: usize) -> i64 {
        let half = 1i64 << (self.value_bits - 1);
        let v = raw as i64;
        if v >= half {
            v - 2 * half
        } else {
            v
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tsp::fixtures::benchmark_graph;
    use crate::tsp::tour::enumerate_hcs;
    use proptest::prelude::*;

    #[test]
    fn index_bit_widths() {
        assert_eq!(index_bits(3), 2);
        assert_eq!(index_bits(4), 2);
        assert_eq!(index_bits(5), 3);
        assert_eq!(index_bits(8), 3);
        assert_eq!(index_bits(9), 4);
    }

    #[test]
    fn example_tour_layout() {
        let x1 = benchmark_graph(1);
        let p = EncodingParams::new(&x1, 5, 5).unwrap();
        let t = Tour::new(vec![2, 0, 3, 1]).unwrap();
        let idx = p.encode_tour(&t).unwrap();
        assert_eq!(idx, 114);
        assert_eq!(p.decode_basis(idx), (vec![2, 0, 3, 1], 0));
    }

    #[test]
    fn complement_code() {
        let p = EncodingParams::unchecked(4, 5, 0).unwrap();
        assert_eq!(p.signed_value(0b11111), -1);
        assert_eq!(p.signed_value(0b01111), 15);
        assert_eq!(p.signed_value(0b10000), -16);
        assert_eq!(p.decode_basis(114 | (0b11111 << 8)).1, -1);
    }

    #[test]
    fn qubit_totals() {
        for (k, m_bits, total) in [(1, 5, 13), (3, 5, 20), (5, 5, 23), (6, 5, 26), (7, 6, 30)] {
            let g = benchmark_graph(k);
            let p = EncodingParams::unchecked(g.n(), m_bits, 0).unwrap();
            assert_eq!(p.total_qubits(), total);
        }
    }

    #[test]
    fn layout_validation() {
        let x1 = benchmark_graph(1);
        // m = 2 so at least 3 value qubits are required
        assert!(EncodingParams::new(&x1, 2, 5).is_err());
        // weights 4..7 minus 5 fit in 4 bits but not once the threshold moves far away
        assert!(EncodingParams::new(&x1, 4, 5).is_ok());
        assert!(EncodingParams::new(&x1, 4, -2).is_err());
        assert!(EncodingParams::new(&x1, 5, 20).is_ok());
        assert!(EncodingParams::new(&x1, 5, 21).is_err());
    }

    #[test]
    fn roundtrip_small() {
        for n in 3..=6 {
            let p = EncodingParams::unchecked(n, index_bits(n) + 1, 0).unwrap();
            for t in enumerate_hcs(n).unwrap() {
                let (regs, v) = p.decode_basis(p.encode_tour(&t).unwrap());
                assert_eq!(regs, t.successor());
                assert_eq!(v, 0);
            }
        }
    }

    proptest! {
        #[test]
        fn value_field_roundtrip(n in 3usize..9, extra in 0usize..3, raw_diff in -64i64..64) {
            let m = index_bits(n);
            let bits = m + 1 + extra;
            let p = EncodingParams::unchecked(n, bits, 0).unwrap();
            let half = 1i64 << (bits - 1);
            let d = raw_diff.rem_euclid(2 * half) - half;
            let regs: Vec<usize> = (0..n).map(|i| (i * 7 + 3) % n).collect();
            let idx = p.encode_with_value(&regs, d);
            prop_assert_eq!(p.decode_basis(idx), (regs, d));
        }
    }
}
