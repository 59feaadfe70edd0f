use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};

/// Largest magnitude accepted for a phase angle.
pub const MAX_ANGLE: f64 = 2.0 * PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarity {
    /// Control fires on |1⟩.
    Positive,
    /// Control fires on |0⟩.
    Negative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Control {
    pub qubit: usize,
    pub polarity: Polarity,
}

impl Control {
    pub fn pos(qubit: usize) -> Self {
        Control { qubit, polarity: Polarity::Positive }
    }

    pub fn neg(qubit: usize) -> Self {
        Control { qubit, polarity: Polarity::Negative }
    }

    /// Control that fires when `qubit` holds `bit`.
    pub fn on(qubit: usize, bit: bool) -> Self {
        if bit {
            Self::pos(qubit)
        } else {
            Self::neg(qubit)
        }
    }
}

/// Controls matching the little-endian binary expansion of `value` on `register`.
pub fn controls_for_value(register: &[usize], value: usize) -> Vec<Control> {
    register.iter().enumerate().map(|(bit, &q)| Control::on(q, (value >> bit) & 1 == 1)).collect()
}

/// Controls that all fire on |0⟩ of `register`.
pub fn zero_controls(register: &[usize]) -> Vec<Control> {
    register.iter().map(|&q| Control::neg(q)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GateKind {
    X,
    H,
    Z,
    /// diag(1, e^{iθ})
    Phase(f64),
    /// diag(e^{-iθ/2}, e^{iθ/2})
    RZ(f64),
    Mcx,
    Mcz,
    McPhase(f64),
    /// Exchange of two target qubits, optionally controlled.
    Swap,
}

/// Kind tag without parameters, used as the key of gate tallies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateTag {
    X,
    H,
    Z,
    Phase,
    RZ,
    Mcx,
    Mcz,
    McPhase,
    Swap,
}

impl fmt::Display for GateTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GateTag::X => "X",
            GateTag::H => "H",
            GateTag::Z => "Z",
            GateTag::Phase => "Phase",
            GateTag::RZ => "RZ",
            GateTag::Mcx => "MCX",
            GateTag::Mcz => "MCZ",
            GateTag::McPhase => "MCPhase",
            GateTag::Swap => "Swap",
        };
        f.write_str(s)
    }
}

impl GateKind {
    pub fn tag(&self) -> GateTag {
        match self {
            GateKind::X => GateTag::X,
            GateKind::H => GateTag::H,
            GateKind::Z => GateTag::Z,
            GateKind::Phase(_) => GateTag::Phase,
            GateKind::RZ(_) => GateTag::RZ,
            GateKind::Mcx => GateTag::Mcx,
            GateKind::Mcz => GateTag::Mcz,
            GateKind::McPhase(_) => GateTag::McPhase,
            GateKind::Swap => GateTag::Swap,
        }
    }

    fn angle(&self) -> Option<f64> {
        match *self {
            GateKind::Phase(t) | GateKind::RZ(t) | GateKind::McPhase(t) => Some(t),
            _ => None,
        }
    }

    /// True when the gate is diagonal in the computational basis.
    pub fn is_diagonal(&self) -> bool {
        matches!(self, GateKind::Z | GateKind::Phase(_) | GateKind::RZ(_) | GateKind::Mcz | GateKind::McPhase(_))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    pub kind: GateKind,
    pub targets: Vec<usize>,
    pub controls: Vec<Control>,
}

impl Gate {
    fn single(kind: GateKind, target: usize) -> Self {
        Gate { kind, targets: vec![target], controls: Vec::new() }
    }

    pub fn x(target: usize) -> Self {
        Self::single(GateKind::X, target)
    }

    pub fn h(target: usize) -> Self {
        Self::single(GateKind::H, target)
    }

    pub fn z(target: usize) -> Self {
        Self::single(GateKind::Z, target)
    }

    pub fn phase(target: usize, theta: f64) -> Self {
        Self::single(GateKind::Phase(theta), target)
    }

    pub fn rz(target: usize, theta: f64) -> Self {
        Self::single(GateKind::RZ(theta), target)
    }

    pub fn mcx(controls: Vec<Control>, target: usize) -> Self {
        Gate { kind: GateKind::Mcx, targets: vec![target], controls }
    }

    pub fn mcz(controls: Vec<Control>, target: usize) -> Self {
        Gate { kind: GateKind::Mcz, targets: vec![target], controls }
    }

    pub fn mcphase(controls: Vec<Control>, target: usize, theta: f64) -> Self {
        Gate { kind: GateKind::McPhase(theta), targets: vec![target], controls }
    }

    pub fn swap(a: usize, b: usize) -> Self {
        Gate { kind: GateKind::Swap, targets: vec![a, b], controls: Vec::new() }
    }

    pub fn controlled_swap(controls: Vec<Control>, a: usize, b: usize) -> Self {
        Gate { kind: GateKind::Swap, targets: vec![a, b], controls }
    }

    /// Adjoint of this gate.
    pub fn inverse(&self) -> Gate {
        let kind = match self.kind {
            GateKind::Phase(t) => GateKind::Phase(-t),
            GateKind::RZ(t) => GateKind::RZ(-t),
            GateKind::McPhase(t) => GateKind::McPhase(-t),
            k => k,
        };
        Gate { kind, targets: self.targets.clone(), controls: self.controls.clone() }
    }

    /// Every qubit this gate reads or writes.
    pub fn qubits(&self) -> impl Iterator<Item = usize> + '_ {
        self.targets.iter().copied().chain(self.controls.iter().map(|c| c.qubit))
    }

    /// True when the gate is an exact identity (zero-angle phase).
    pub fn is_identity(&self) -> bool {
        match self.kind {
            GateKind::Phase(t) | GateKind::McPhase(t) => {
                let r = t.rem_euclid(2.0 * PI);
                r.abs() < 1e-15 || (2.0 * PI - r).abs() < 1e-15
            }
            GateKind::RZ(t) => {
                // RZ(4π k) is the identity; RZ(2π) is -I and stays.
                let r = t.rem_euclid(4.0 * PI);
                r.abs() < 1e-15 || (4.0 * PI - r).abs() < 1e-15
            }
            _ => false,
        }
    }

    pub fn validate(&self, num_qubits: usize) -> Result<()> {
        let expected_targets = if self.kind == GateKind::Swap { 2 } else { 1 };
        if self.targets.len() != expected_targets {
            return Err(Error::validation(format!(
                "{} expects {expected_targets} target(s), got {}",
                self.kind.tag(),
                self.targets.len()
            )));
        }
        match self.kind {
            GateKind::X | GateKind::H | GateKind::Z | GateKind::Phase(_) | GateKind::RZ(_) => {
                if !self.controls.is_empty() {
                    return Err(Error::validation(format!(
                        "{} is uncontrolled; use the multi-controlled variant",
                        self.kind.tag()
                    )));
                }
            }
            GateKind::Mcx | GateKind::Mcz | GateKind::McPhase(_) => {
                if self.controls.is_empty() {
                    return Err(Error::validation(format!("{} needs at least one control", self.kind.tag())));
                }
            }
            GateKind::Swap => {}
        }
        if let Some(theta) = self.kind.angle() {
            if !theta.is_finite() || theta.abs() > MAX_ANGLE {
                return Err(Error::validation(format!("angle {theta} outside [-2π, 2π]")));
            }
        }
        let mut seen = 0u64;
        for q in self.qubits() {
            if q >= num_qubits {
                return Err(Error::validation(format!("qubit {q} out of range for {num_qubits} qubits")));
            }
            if seen >> q & 1 == 1 {
                return Err(Error::validation(format!("qubit {q} used twice in one gate")));
            }
            seen |= 1 << q;
        }
        Ok(())
    }
}

/// Reduce an angle into [-π, π).
pub fn wrap_angle(theta: f64) -> f64 {
    let r = (theta + PI).rem_euclid(2.0 * PI) - PI;
    if r >= PI {
        r - 2.0 * PI
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_collisions_and_range() {
        assert!(Gate::mcx(vec![Control::pos(0)], 0).validate(2).is_err());
        assert!(Gate::x(2).validate(2).is_err());
        assert!(Gate::swap(1, 1).validate(2).is_err());
        assert!(Gate::mcx(vec![Control::pos(1), Control::neg(2)], 0).validate(3).is_ok());
    }

    #[test]
    fn rejects_out_of_range_angle() {
        assert!(Gate::phase(0, 7.0).validate(1).is_err());
        assert!(Gate::phase(0, -2.0 * PI).validate(1).is_ok());
        assert!(Gate::phase(0, f64::NAN).validate(1).is_err());
    }

    #[test]
    fn arity_rules() {
        assert!(Gate::mcx(vec![], 0).validate(1).is_err());
        let mut g = Gate::h(0);
        g.controls.push(Control::pos(1));
        assert!(g.validate(2).is_err());
    }

    #[test]
    fn wrap_angle_range() {
        for k in -40..40 {
            let t = k as f64 * 0.37;
            let w = wrap_angle(t);
            assert!((-PI..PI).contains(&w));
            assert!(((t - w) / (2.0 * PI)).fract().abs() < 1e-9 || ((t - w) / (2.0 * PI)).fract().abs() > 1.0 - 1e-9);
        }
        assert_eq!(wrap_angle(PI), -PI);
    }

    #[test]
    fn identity_detection() {
        assert!(Gate::phase(0, 0.0).is_identity());
        assert!(Gate::phase(0, 2.0 * PI).is_identity());
        assert!(!Gate::phase(0, PI).is_identity());
        assert!(!Gate::rz(0, 2.0 * PI).is_identity());
    }
}
