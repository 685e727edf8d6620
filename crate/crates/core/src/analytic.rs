//! Closed-form bounds relating the witness value, the angle between the two
//! measurement directions, and the adversary's guessing probability.

use crate::error::{Error, Result};
use crate::witness::{CLASSICAL_BOUND, QUANTUM_BOUND};

/// Slack accepted on the witness domain [2, 2√2] before rejecting; float
/// dust at the endpoints is clamped into the interval.
const DOMAIN_TOL: f64 = 1e-9;

/// The angle between the two measurement directions, in [0, π].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Angle {
    theta: f64,
}

impl Angle {
    pub fn new(theta: f64) -> Result<Self> {
        if !theta.is_finite() || !(-1e-12..=std::f64::consts::PI + 1e-12).contains(&theta) {
            return Err(Error::Domain(format!(
                "measurement angle {theta} outside [0, pi]"
            )));
        }
        Ok(Self { theta: theta.clamp(0.0, std::f64::consts::PI) })
    }

    pub fn radians(&self) -> f64 {
        self.theta
    }
}

/// Best guessing probability when the two measurement directions are an
/// angle θ apart: 1/2 + cos(θ/2)/2.
pub fn pguess_bound_from_angle(theta: Angle) -> f64 {
    0.5 + 0.5 * (theta.radians() / 2.0).cos()
}

/// Largest witness value reachable with measurement directions an angle θ
/// apart: √(2+2cosθ) + √(2−2cosθ). Peaks at 2√2 for θ = π/2.
pub fn witness_bound_from_angle(theta: Angle) -> f64 {
    let c = theta.radians().cos();
    (2.0 + 2.0 * c).max(0.0).sqrt() + (2.0 - 2.0 * c).max(0.0).sqrt()
}

/// Inverts the witness-angle bound: a witness value T forces
/// cos θ ≤ √(1 − ((T²−4)/4)²).
pub fn cos_bound_from_witness(t: f64) -> Result<f64> {
    let t = checked_witness(t)?;
    let x = ((t * t - 4.0) / 4.0).clamp(0.0, 1.0);
    Ok((1.0 - x * x).max(0.0).sqrt())
}

/// The master guessing bound f(T): the largest guessing probability any
/// strategy with witness value T allows. Concave and decreasing on
/// [2, 2√2], with f(2) = 1 and f(2√2) = 1/2 + 1/(2√2).
pub fn pguess_bound_from_witness(t: f64) -> Result<f64> {
    let cos_bound = cos_bound_from_witness(t)?;
    Ok(0.5 + 0.5 * ((1.0 + cos_bound) / 2.0).sqrt())
}

/// Certified min-entropy −log2 f(T) in bits.
pub fn min_entropy_bound(t: f64) -> Result<f64> {
    Ok(-pguess_bound_from_witness(t)?.log2())
}

fn checked_witness(t: f64) -> Result<f64> {
    if !t.is_finite() || t < CLASSICAL_BOUND - DOMAIN_TOL || t > QUANTUM_BOUND + DOMAIN_TOL {
        return Err(Error::Domain(format!(
            "witness value {t} outside [2, 2*sqrt(2)]"
        )));
    }
    Ok(t.clamp(CLASSICAL_BOUND, QUANTUM_BOUND))
}
