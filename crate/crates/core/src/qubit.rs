//! Qubit preparations and two-outcome measurements in Bloch form.
//!
//! A preparation is ρ = (I + s·σ)/2 with |s| ≤ 1, a measurement effect is
//! M = cI + t·σ with eigenvalues c ± |t| in [0, 1], and the outcome
//! probability is tr(ρM) = c + s·t. No complex matrices appear outside the
//! test oracle.

use crate::error::{Error, Result};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, UnitSphere};

/// Slack allowed on constructor validations before rejecting; values inside
/// the band are clamped onto the feasible set, since optimizer iterates sit
/// on constraint boundaries.
pub const CONSTRUCTION_TOL: f64 = 1e-12;

/// Real 3-vector carrying either a state direction s or an effect direction t.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub const ZERO: Self = Self { x: 0.0, y: 0.0, z: 0.0 };

    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn scaled(&self, k: f64) -> Self {
        Self::new(k * self.x, k * self.y, k * self.z)
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl std::ops::Neg for BlochVector {
    type Output = Self;

    fn neg(self) -> Self {
        Self::new(-self.x, -self.y, -self.z)
    }
}

/// A qubit preparation ρ = (I + s·σ)/2, valid iff |s| ≤ 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState {
    bloch: BlochVector,
}

impl QubitState {
    /// Builds a state from a Bloch vector. Norms inside the tolerance band
    /// above 1 are clamped back onto the unit sphere.
    pub fn new(s: BlochVector) -> Result<Self> {
        if !s.is_finite() {
            return Err(Error::Validation {
                field: "bloch vector".into(),
                reason: "components must be finite".into(),
            });
        }
        let norm = s.norm();
        if norm > 1.0 + CONSTRUCTION_TOL {
            return Err(Error::BlochNorm { norm });
        }
        let bloch = if norm > 1.0 { s.scaled(1.0 / norm) } else { s };
        Ok(Self { bloch })
    }

    pub fn bloch(&self) -> BlochVector {
        self.bloch
    }

    /// Mixes toward I/2: the Bloch vector shrinks by (1 − p).
    pub fn depolarized(&self, p: f64) -> Self {
        Self { bloch: self.bloch.scaled(1.0 - p) }
    }
}

/// A two-outcome measurement effect M = cI + t·σ for outcome b = 0,
/// valid iff both eigenvalues c ± |t| lie in [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PovmEffect {
    c: f64,
    t: BlochVector,
}

impl PovmEffect {
    /// Builds an effect from its identity coefficient and direction vector.
    /// Eigenvalues inside the tolerance band are clamped into [0, 1] by
    /// nudging c and shrinking t.
    pub fn new(c: f64, t: BlochVector) -> Result<Self> {
        if !c.is_finite() || !t.is_finite() {
            return Err(Error::Validation {
                field: "effect".into(),
                reason: "c and t components must be finite".into(),
            });
        }
        let r = t.norm();
        let (lo, hi) = (c - r, c + r);
        if lo < -CONSTRUCTION_TOL || hi > 1.0 + CONSTRUCTION_TOL {
            return Err(Error::EffectEigenvalues { lo, hi });
        }
        let c = c.clamp(0.0, 1.0);
        let max_r = c.min(1.0 - c);
        let t = if r > max_r && r > 0.0 { t.scaled(max_r / r) } else { t };
        Ok(Self { c, t })
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn t(&self) -> BlochVector {
        self.t
    }

    /// The eigenvalues (c − |t|, c + |t|) of M.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let r = self.t.norm();
        (self.c - r, self.c + r)
    }

    /// The complementary effect I − M, representing outcome b = 1.
    /// Valid by construction: its eigenvalues are 1 minus this effect's.
    pub fn complement(&self) -> Self {
        Self { c: 1.0 - self.c, t: -self.t }
    }
}

/// Outcome probability tr(ρM) = c + s·t.
pub fn born_probability(state: &QubitState, effect: &PovmEffect) -> f64 {
    effect.c + state.bloch().dot(&effect.t)
}

/// One full strategy: four preparations indexed by the input pair (a0, a1)
/// and two effects indexed by the measurement choice y, each for outcome
/// b = 0 (the b = 1 effect is implicitly the complement).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scenario {
    preparations: [QubitState; 4],
    effects: [PovmEffect; 2],
}

impl Scenario {
    /// Preparations in lexicographic (a0, a1) order: 00, 01, 10, 11.
    pub fn new(preparations: [QubitState; 4], effects: [PovmEffect; 2]) -> Self {
        Self { preparations, effects }
    }

    pub fn preparation(&self, a0: usize, a1: usize) -> &QubitState {
        &self.preparations[2 * a0 + a1]
    }

    pub fn preparations(&self) -> &[QubitState; 4] {
        &self.preparations
    }

    pub fn effect(&self, y: usize) -> &PovmEffect {
        &self.effects[y]
    }

    pub fn effects(&self) -> &[PovmEffect; 2] {
        &self.effects
    }
}

/// Deterministically samples a valid scenario: state directions uniform on
/// the sphere with radius uniform in [0, 1]; effects with c uniform in
/// [0, 1], direction uniform, and |t| uniform in [0, min(c, 1−c)].
pub fn random_scenario(seed: u64) -> Scenario {
    sample_scenario(&mut ChaCha8Rng::seed_from_u64(seed))
}

/// Same sampling as [`random_scenario`] but drawing from a caller-owned
/// generator, so one stream can produce many scenarios.
pub fn sample_scenario<R: Rng>(rng: &mut R) -> Scenario {
    let mut state = || {
        let dir: [f64; 3] = UnitSphere.sample(rng);
        let radius: f64 = rng.random();
        QubitState::new(BlochVector::new(dir[0], dir[1], dir[2]).scaled(radius))
            .expect("sampled radius is in [0, 1]")
    };
    let preparations = [state(), state(), state(), state()];
    let mut effect = || {
        let c: f64 = rng.random();
        let dir: [f64; 3] = UnitSphere.sample(rng);
        let radius: f64 = rng.random::<f64>() * c.min(1.0 - c);
        PovmEffect::new(c, BlochVector::new(dir[0], dir[1], dir[2]).scaled(radius))
            .expect("sampled eigenvalues are in [0, 1]")
    };
    let e0 = effect();
    let e1 = effect();
    Scenario::new(preparations, [e0, e1])
}

#[cfg(test)]
mod tests {
    use super::*;

    const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn projector_z() -> PovmEffect {
        PovmEffect::new(0.5, BlochVector::new(0.0, 0.0, 0.5)).unwrap()
    }

    #[test]
    fn pole_state_is_valid() {
        assert!(QubitState::new(BlochVector::new(0.0, 0.0, 1.0)).is_ok());
    }

    #[test]
    fn mixed_state_is_valid() {
        assert!(QubitState::new(BlochVector::ZERO).is_ok());
    }

    #[test]
    fn long_bloch_vector_is_rejected() {
        let err = QubitState::new(BlochVector::new(1.0, 1.0, 0.0)).unwrap_err();
        assert!(matches!(err, Error::BlochNorm { .. }));
    }

    #[test]
    fn norm_inside_tolerance_band_is_clamped() {
        let s = QubitState::new(BlochVector::new(0.0, 0.0, 1.0 + 5e-13)).unwrap();
        assert!(s.bloch().norm() <= 1.0);
    }

    #[test]
    fn projector_effect_is_valid() {
        let m = projector_z();
        assert_eq!(m.eigenvalues(), (0.0, 1.0));
    }

    #[test]
    fn oversized_effect_direction_is_rejected() {
        let err = PovmEffect::new(0.5, BlochVector::new(0.0, 0.0, 0.6)).unwrap_err();
        assert!(matches!(err, Error::EffectEigenvalues { .. }));
    }

    #[test]
    fn noisy_effect_is_valid() {
        let m = PovmEffect::new(0.3, BlochVector::new(0.2, 0.0, 0.0)).unwrap();
        let (lo, hi) = m.eigenvalues();
        assert!((lo - 0.1).abs() < 1e-15 && (hi - 0.5).abs() < 1e-15);
    }

    #[test]
    fn born_probability_on_projector_eigenstates() {
        let m = projector_z();
        let up = QubitState::new(BlochVector::new(0.0, 0.0, 1.0)).unwrap();
        let down = QubitState::new(BlochVector::new(0.0, 0.0, -1.0)).unwrap();
        let side = QubitState::new(BlochVector::new(1.0, 0.0, 0.0)).unwrap();
        assert_eq!(born_probability(&up, &m), 1.0);
        assert_eq!(born_probability(&down, &m), 0.0);
        assert_eq!(born_probability(&side, &m), 0.5);
    }

    #[test]
    fn born_probability_on_tilted_state() {
        let s = QubitState::new(BlochVector::new(FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2)).unwrap();
        let m = PovmEffect::new(0.5, BlochVector::new(0.5, 0.0, 0.0)).unwrap();
        let expected = 0.5 + 0.5 * FRAC_1_SQRT_2;
        assert!((born_probability(&s, &m) - expected).abs() < 1e-15);
    }

    #[test]
    fn complement_flips_projector() {
        let m = projector_z();
        let n = m.complement();
        assert_eq!(n.c(), 0.5);
        assert_eq!(n.t(), BlochVector::new(0.0, 0.0, -0.5));
    }

    #[test]
    fn complement_is_an_involution() {
        let m = PovmEffect::new(0.3, BlochVector::new(0.2, 0.0, 0.0)).unwrap();
        let back = m.complement().complement();
        assert!((back.c() - m.c()).abs() < 1e-15);
        assert_eq!(back.t(), m.t());
    }

    #[test]
    fn random_scenario_is_deterministic_in_seed() {
        assert_eq!(random_scenario(7), random_scenario(7));
        assert_ne!(random_scenario(7), random_scenario(8));
    }

    #[test]
    fn random_scenarios_are_always_valid() {
        for seed in 0..10_000 {
            let sc = random_scenario(seed);
            for state in sc.preparations() {
                assert!(QubitState::new(state.bloch()).is_ok());
            }
            for effect in sc.effects() {
                assert!(PovmEffect::new(effect.c(), effect.t()).is_ok());
            }
        }
    }
}
