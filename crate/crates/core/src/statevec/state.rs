use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::circuit::Circuit;
use super::gate::{Gate, GateKind, Polarity};
use crate::error::{Error, Result};

/// Hard ceiling on simulated width.
pub const MAX_QUBITS: usize = 32;

/// Allowed deviation of Σ|a|² from 1.
pub const NORM_TOLERANCE: f64 = 1e-9;

/// Longest run of Hadamards applied as one block.
const MAX_FUSED_H: usize = 6;

/// Measurement counts keyed by basis index.
pub type Histogram = BTreeMap<usize, u64>;

/// Dense amplitude vector. Qubit `q` is bit `q` of the basis index.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// |0…0⟩ on `num_qubits` qubits.
    pub fn new(num_qubits: usize) -> Result<Self> {
        if num_qubits == 0 || num_qubits > MAX_QUBITS {
            return Err(Error::capacity(format!("{num_qubits} qubits requested; supported range is 1..={MAX_QUBITS}")));
        }
        let dim = 1usize << num_qubits;
        let mut amps = Vec::new();
        amps.try_reserve_exact(dim)
            .map_err(|_| Error::capacity(format!("cannot allocate {dim} amplitudes for {num_qubits} qubits")))?;
        amps.resize(dim, Complex64::new(0.0, 0.0));
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(StateVector { num_qubits, amps })
    }

    /// Wraps explicit amplitudes; length must be a power of two and the norm 1.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::validation(format!("amplitude count {len} is not a power of two ≥ 2")));
        }
        let num_qubits = len.trailing_zeros() as usize;
        if num_qubits > MAX_QUBITS {
            return Err(Error::capacity(format!("{num_qubits} qubits exceeds {MAX_QUBITS}")));
        }
        let state = StateVector { num_qubits, amps };
        state.check_norm("from_amplitudes")?;
        Ok(state)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    pub fn probability(&self, index: usize) -> f64 {
        self.amps[index].norm_sqr()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn check_norm(&self, context: &str) -> Result<()> {
        let n = self.norm_sqr();
        if (n - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NormDrift { norm_sqr: n, context: context.to_string() });
        }
        Ok(())
    }

    /// ⟨self|other⟩
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    /// Total probability of basis states accepted by `pred`.
    pub fn probability_where(&self, mut pred: impl FnMut(usize) -> bool) -> f64 {
        self.amps.iter().enumerate().filter(|&(i, _)| pred(i)).map(|(_, a)| a.norm_sqr()).sum()
    }

    /// Distribution of `index & mask`, restricted to outcomes above `floor`.
    pub fn marginal(&self, mask: usize, floor: f64) -> BTreeMap<usize, f64> {
        let mut out = BTreeMap::new();
        for (i, a) in self.amps.iter().enumerate() {
            let p = a.norm_sqr();
            if p > 0.0 {
                *out.entry(i & mask).or_insert(0.0) += p;
            }
        }
        out.retain(|_, p| *p > floor);
        out
    }

    /// Applies one gate and checks the norm afterwards.
    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.num_qubits)?;
        self.apply_unchecked(gate);
        self.check_norm("gate application")
    }

    /// Applies every gate of `circuit` in order. The norm is checked once at the end.
    pub fn apply_circuit(&mut self, circuit: &Circuit) -> Result<()> {
        if circuit.num_qubits() != self.num_qubits {
            return Err(Error::validation(format!(
                "circuit has {} qubits, state has {}",
                circuit.num_qubits(),
                self.num_qubits
            )));
        }
        circuit.validate()?;
        let gates = circuit.gates();
        let mut k = 0;
        while k < gates.len() {
            // Runs of uncontrolled Hadamards on distinct qubits share one memory pass.
            let mut targets = Vec::new();
            while k + targets.len() < gates.len() && targets.len() < MAX_FUSED_H {
                let g = &gates[k + targets.len()];
                if g.kind != GateKind::H || targets.contains(&g.targets[0]) {
                    break;
                }
                targets.push(g.targets[0]);
            }
            if targets.len() > 1 {
                self.apply_hadamard_block(&targets);
                k += targets.len();
            } else {
                self.apply_unchecked(&gates[k]);
                k += 1;
            }
        }
        self.check_norm("circuit application")
    }

    /// H on every qubit of `targets` in a single sweep.
    fn apply_hadamard_block(&mut self, targets: &[usize]) {
        let k = targets.len();
        let mut fixed = targets.to_vec();
        fixed.sort_unstable();
        let offsets: Vec<usize> = (0..1usize << k)
            .map(|sub| (0..k).filter(|&b| (sub >> b) & 1 == 1).map(|b| 1usize << targets[b]).sum())
            .collect();
        let scale = (0.5f64).powf(k as f64 / 2.0);
        let amps = &mut self.amps;
        let mut buf = vec![Complex64::new(0.0, 0.0); 1 << k];
        for_each_index(self.num_qubits, &fixed, 0, |i| {
            for (slot, &off) in buf.iter_mut().zip(&offsets) {
                *slot = amps[i | off];
            }
            // in-place Walsh–Hadamard over the gathered block
            let mut h = 1;
            while h < buf.len() {
                for start in (0..buf.len()).step_by(2 * h) {
                    for x in start..start + h {
                        let (a, b) = (buf[x], buf[x + h]);
                        buf[x] = a + b;
                        buf[x + h] = a - b;
                    }
                }
                h *= 2;
            }
            for (slot, &off) in buf.iter().zip(&offsets) {
                amps[i | off] = slot * scale;
            }
        });
    }

    fn apply_unchecked(&mut self, gate: &Gate) {
        let mut fixed = 0usize;
        let mut base = 0usize;
        for c in &gate.controls {
            fixed |= 1 << c.qubit;
            if c.polarity == Polarity::Positive {
                base |= 1 << c.qubit;
            }
        }
        let n = self.num_qubits;
        let amps = &mut self.amps[..];
        match gate.kind {
            GateKind::X | GateKind::Mcx => {
                let t = 1usize << gate.targets[0];
                for_each_run(n, fixed | t, base, |start, len| {
                    let (lo, hi) = pair_slices(amps, start, start | t, len);
                    lo.swap_with_slice(hi);
                });
            }
            GateKind::H => {
                let t = 1usize << gate.targets[0];
                let s = std::f64::consts::FRAC_1_SQRT_2;
                for_each_run(n, fixed | t, base, |start, len| {
                    let (lo, hi) = pair_slices(amps, start, start | t, len);
                    for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                        let (x, y) = (*a, *b);
                        *a = (x + y) * s;
                        *b = (x - y) * s;
                    }
                });
            }
            GateKind::Z | GateKind::Mcz => {
                let t = 1usize << gate.targets[0];
                for_each_run(n, fixed | t, base | t, |start, len| {
                    amps[start..start + len].iter_mut().for_each(|a| *a = -*a);
                });
            }
            GateKind::Phase(theta) | GateKind::McPhase(theta) => {
                let t = 1usize << gate.targets[0];
                let ph = Complex64::from_polar(1.0, theta);
                for_each_run(n, fixed | t, base | t, |start, len| {
                    amps[start..start + len].iter_mut().for_each(|a| *a *= ph);
                });
            }
            GateKind::RZ(theta) => {
                let t = 1usize << gate.targets[0];
                let lo_ph = Complex64::from_polar(1.0, -theta / 2.0);
                let hi_ph = Complex64::from_polar(1.0, theta / 2.0);
                for_each_run(n, fixed | t, base, |start, len| {
                    let (lo, hi) = pair_slices(amps, start, start | t, len);
                    lo.iter_mut().for_each(|a| *a *= lo_ph);
                    hi.iter_mut().for_each(|a| *a *= hi_ph);
                });
            }
            GateKind::Swap => {
                let (a, b) = (1usize << gate.targets[0], 1usize << gate.targets[1]);
                for_each_run(n, fixed | a | b, base | a, |start, len| {
                    let other = start ^ a ^ b;
                    let (x, y) = pair_slices(amps, start.min(other), start.max(other), len);
                    x.swap_with_slice(y);
                });
            }
        }
    }

    /// Draws `shots` basis indices from |amplitude|². Deterministic for a fixed seed.
    pub fn sample(&self, shots: u64, seed: u64) -> Result<Histogram> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        sample_weighted(self.amps.iter().enumerate().map(|(i, a)| (i, a.norm_sqr())), shots, &mut rng)
    }
}

/// Draws `shots` outcomes from unnormalized `(key, weight)` pairs.
///
/// Keys must be visited in the same order for equal results; the uniforms are
/// drawn first, sorted, and swept against the running cumulative weight.
pub fn sample_weighted<I, R>(items: I, shots: u64, rng: &mut R) -> Result<Histogram>
where
    I: IntoIterator<Item = (usize, f64)>,
    I::IntoIter: Clone,
    R: Rng + ?Sized,
{
    if shots == 0 {
        return Err(Error::validation("shots must be at least 1"));
    }
    let items = items.into_iter();
    let total: f64 = items.clone().map(|(_, w)| w).sum();
    if total.is_nan() || total <= 0.0 {
        return Err(Error::validation("cannot sample from an all-zero distribution"));
    }
    let mut draws: Vec<f64> = (0..shots).map(|_| rng.gen::<f64>() * total).collect();
    draws.sort_unstable_by(f64::total_cmp);

    let mut hist = Histogram::new();
    let mut next = 0usize;
    let mut acc = 0.0;
    let mut last_nonzero = None;
    for (key, w) in items {
        if w <= 0.0 {
            continue;
        }
        last_nonzero = Some(key);
        acc += w;
        let start = next;
        while next < draws.len() && draws[next] < acc {
            next += 1;
        }
        if next > start {
            *hist.entry(key).or_default() += (next - start) as u64;
        }
    }
    // Rounding can leave the largest draws just past the final cumulative sum.
    if next < draws.len() {
        if let Some(key) = last_nonzero {
            *hist.entry(key).or_default() += (draws.len() - next) as u64;
        }
    }
    Ok(hist)
}

/// Calls `f(start, len)` for every maximal contiguous run of basis indices
/// whose bits under `fixed` equal those of `base`. Runs cover the free bits
/// below the lowest fixed position.
#[inline]
fn for_each_run(num_qubits: usize, fixed: usize, base: usize, mut f: impl FnMut(usize, usize)) {
    let dim = 1usize << num_qubits;
    let run = if fixed == 0 { dim } else { 1usize << fixed.trailing_zeros() };
    let skip = fixed | (run - 1);
    let mut cur = 0usize;
    while cur < dim {
        f(cur | base, run);
        // next pattern of free bits above the run, carrying through fixed bits
        cur = ((cur | skip) + 1) & !fixed;
    }
}

/// Disjoint views of `[lo, lo+len)` and `[hi, hi+len)` with `lo + len <= hi`.
#[inline]
fn pair_slices(amps: &mut [Complex64], lo: usize, hi: usize, len: usize) -> (&mut [Complex64], &mut [Complex64]) {
    let (left, right) = amps.split_at_mut(hi);
    (&mut left[lo..lo + len], &mut right[..len])
}

/// Calls `f(index)` for every basis index whose bits at `fixed` (sorted ascending)
/// equal the corresponding bits of `base`.
fn for_each_index(num_qubits: usize, fixed: &[usize], base: usize, mut f: impl FnMut(usize)) {
    let mask = fixed.iter().fold(0usize, |m, &p| m | (1 << p));
    for_each_run(num_qubits, mask, base, |start, len| (start..start + len).for_each(&mut f));
}
