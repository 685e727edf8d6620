//! The 2→1 random-access-code dimension witness, detector-efficiency
//! scaling, and the white-noise model.

use crate::error::{Error, Result};
use crate::qubit::{born_probability, Scenario};

/// Largest witness value any classical bit strategy reaches.
pub const CLASSICAL_BOUND: f64 = 2.0;

/// Largest witness value any qubit strategy reaches: 2√2.
pub const QUANTUM_BOUND: f64 = 2.0 * std::f64::consts::SQRT_2;

/// Sign of each table entry in the witness sum, indexed like the table.
/// Entry (a0, a1, y) carries (−1)^{a_y}, i.e. +E000 +E001 +E010 −E011
/// −E100 +E101 −E110 −E111.
const WITNESS_SIGNS: [f64; 8] = [1.0, 1.0, 1.0, -1.0, -1.0, 1.0, -1.0, -1.0];

/// The eight conditional probabilities E[a0, a1, y] = p(b=0 | a0, a1, y),
/// stored in index order a0, a1, y.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbabilityTable {
    entries: [f64; 8],
}

impl ProbabilityTable {
    /// Builds a table from raw entries in index order a0, a1, y.
    pub fn new(entries: [f64; 8]) -> Result<Self> {
        for (i, &e) in entries.iter().enumerate() {
            if !((-1e-12..=1.0 + 1e-12).contains(&e)) {
                return Err(Error::Validation {
                    field: format!("table entry {i}"),
                    reason: format!("probability {e} outside [0, 1]"),
                });
            }
        }
        let entries = entries.map(|e| e.clamp(0.0, 1.0));
        Ok(Self { entries })
    }

    /// Evaluates the Born rule on all eight (preparation, effect) pairs.
    pub fn from_scenario(scenario: &Scenario) -> Self {
        let mut entries = [0.0; 8];
        for a0 in 0..2 {
            for a1 in 0..2 {
                for y in 0..2 {
                    entries[4 * a0 + 2 * a1 + y] =
                        born_probability(scenario.preparation(a0, a1), scenario.effect(y));
                }
            }
        }
        Self { entries }
    }

    pub fn get(&self, a0: usize, a1: usize, y: usize) -> f64 {
        self.entries[4 * a0 + 2 * a1 + y]
    }

    pub fn entries(&self) -> &[f64; 8] {
        &self.entries
    }

    /// The dimension witness T: the signed sum of the entries with sign
    /// (−1)^{a_y}. At most 2 for classical strategies, 2√2 for qubits.
    pub fn witness(&self) -> f64 {
        let mut total = 0.0;
        for i in 0..8 {
            total += WITNESS_SIGNS[i] * self.entries[i];
        }
        total
    }

    /// Models detector efficiency: a no-click round is recorded as b = 1,
    /// so each b = 0 probability is scaled by its basis efficiency.
    pub fn with_efficiency(&self, etas: EfficiencyPair) -> Self {
        let mut entries = self.entries;
        for (i, e) in entries.iter_mut().enumerate() {
            *e *= if i % 2 == 0 { etas.eta0() } else { etas.eta1() };
        }
        Self { entries }
    }
}

/// Detection efficiencies of the two measurement bases.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EfficiencyPair {
    eta0: f64,
    eta1: f64,
}

impl EfficiencyPair {
    pub fn new(eta0: f64, eta1: f64) -> Result<Self> {
        for (name, eta) in [("eta0", eta0), ("eta1", eta1)] {
            if !eta.is_finite() || !(0.0..=1.0).contains(&eta) {
                return Err(Error::Validation {
                    field: name.into(),
                    reason: format!("efficiency {eta} outside [0, 1]"),
                });
            }
        }
        Ok(Self { eta0, eta1 })
    }

    pub fn symmetric(eta: f64) -> Result<Self> {
        Self::new(eta, eta)
    }

    pub fn eta0(&self) -> f64 {
        self.eta0
    }

    pub fn eta1(&self) -> f64 {
        self.eta1
    }
}

/// White-noise admixture level in the preparation, ρ → (1−p)ρ + p·I/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseLevel {
    p: f64,
}

impl NoiseLevel {
    pub fn new(p: f64) -> Result<Self> {
        if !p.is_finite() || !(0.0..=1.0).contains(&p) {
            return Err(Error::Validation {
                field: "noise level".into(),
                reason: format!("probability {p} outside [0, 1]"),
            });
        }
        Ok(Self { p })
    }

    pub fn p(&self) -> f64 {
        self.p
    }
}

/// The efficiency-modified witness of a strategy.
pub fn witness_with_efficiency(scenario: &Scenario, etas: EfficiencyPair) -> f64 {
    ProbabilityTable::from_scenario(scenario).with_efficiency(etas).witness()
}

/// Replaces every preparation by its white-noise mixture; effects unchanged.
pub fn apply_white_noise(scenario: &Scenario, noise: NoiseLevel) -> Scenario {
    let p = scenario.preparations();
    Scenario::new(
        [
            p[0].depolarized(noise.p()),
            p[1].depolarized(noise.p()),
            p[2].depolarized(noise.p()),
            p[3].depolarized(noise.p()),
        ],
        *scenario.effects(),
    )
}

/// The largest white-noise level that keeps the practical witness above the
/// classical bound (as an open bound): max(0, 1 − 2/T̃).
pub fn noise_threshold(t_tilde: f64) -> Result<f64> {
    if !(t_tilde > 0.0) {
        return Err(Error::Domain(format!(
            "noise threshold needs a positive witness value, got {t_tilde}"
        )));
    }
    Ok((1.0 - 2.0 / t_tilde).max(0.0))
}
