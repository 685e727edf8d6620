//! Adversarial guessing probabilities of the measurement outcome and their
//! min-entropy.

use crate::error::{Error, Result};
use crate::witness::ProbabilityTable;

/// Which guessing functional to evaluate. All four score the adversary's
/// best guess max(E, 1−E) per cell; they differ in how cells are combined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GuessingMethod {
    /// Method 1: the single best cell over all (a0, a1, y).
    Maximal,
    /// Method 2: average over the four cells with a0 = 0.
    AverageFirstBitZero,
    /// Method 3: average over the four cells with a0 = 1.
    AverageFirstBitOne,
    /// Method 4: average over all eight cells.
    Average,
}

impl GuessingMethod {
    pub const ALL: [Self; 4] = [
        Self::Maximal,
        Self::AverageFirstBitZero,
        Self::AverageFirstBitOne,
        Self::Average,
    ];

    /// The conventional 1-based index of the method.
    pub fn index(self) -> u8 {
        match self {
            Self::Maximal => 1,
            Self::AverageFirstBitZero => 2,
            Self::AverageFirstBitOne => 3,
            Self::Average => 4,
        }
    }

    pub fn from_index(index: u8) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.index() == index)
            .ok_or_else(|| Error::Validation {
                field: "guessing method".into(),
                reason: format!("index {index} not in 1..=4"),
            })
    }
}

/// The probability that an adversary holding the strategy guesses the
/// outcome b, under the chosen method of combining inputs. Always in
/// [1/2, 1], since max(E, 1−E) ≥ 1/2 cellwise.
pub fn pguess(table: &ProbabilityTable, method: GuessingMethod) -> f64 {
    let best = |a0: usize, a1: usize, y: usize| {
        let e = table.get(a0, a1, y);
        e.max(1.0 - e)
    };
    // Shared partial sums keep the identity p4 = (p2 + p3)/2 exact: the
    // divisors are powers of two, so the roundings commute.
    let sum = |a0: usize| best(a0, 0, 0) + best(a0, 0, 1) + best(a0, 1, 0) + best(a0, 1, 1);
    match method {
        GuessingMethod::Maximal => {
            let mut m: f64 = 0.5;
            for a0 in 0..2 {
                for a1 in 0..2 {
                    for y in 0..2 {
                        m = m.max(best(a0, a1, y));
                    }
                }
            }
            m
        }
        GuessingMethod::AverageFirstBitZero => sum(0) / 4.0,
        GuessingMethod::AverageFirstBitOne => sum(1) / 4.0,
        GuessingMethod::Average => (sum(0) + sum(1)) / 8.0,
    }
}

/// Min-entropy in bits, −log2(p).
pub fn min_entropy(p: f64) -> Result<f64> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::Domain(format!(
            "min-entropy needs a probability in (0, 1], got {p}"
        )));
    }
    Ok(-p.log2())
}

#[cfg(test)]
mod tests {
    use super::*;

    const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn table(entries: [f64; 8]) -> ProbabilityTable {
        ProbabilityTable::new(entries).unwrap()
    }

    #[test]
    fn method_indices_round_trip() {
        for m in GuessingMethod::ALL {
            assert_eq!(GuessingMethod::from_index(m.index()).unwrap(), m);
        }
        assert!(GuessingMethod::from_index(0).is_err());
        assert!(GuessingMethod::from_index(5).is_err());
    }

    #[test]
    fn uniform_table_gives_half_for_every_method() {
        let t = table([0.5; 8]);
        for m in GuessingMethod::ALL {
            assert_eq!(pguess(&t, m), 0.5);
        }
    }

    #[test]
    fn rac_table_gives_the_quantum_guessing_value() {
        let hi = 0.5 + 0.5 * FRAC_1_SQRT_2;
        let lo = 0.5 - 0.5 * FRAC_1_SQRT_2;
        let t = table([hi, hi, hi, lo, lo, hi, lo, lo]);
        for m in GuessingMethod::ALL {
            assert!((pguess(&t, m) - hi).abs() < 1e-15);
        }
    }

    #[test]
    fn deterministic_table_is_fully_guessable() {
        let t = table([1.0, 1.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0]);
        for m in GuessingMethod::ALL {
            assert_eq!(pguess(&t, m), 1.0);
        }
    }

    #[test]
    fn split_table_separates_the_averaging_methods() {
        let t = table([0.5, 0.5, 0.5, 0.5, 1.0, 0.0, 1.0, 0.0]);
        assert_eq!(pguess(&t, GuessingMethod::AverageFirstBitZero), 0.5);
        assert_eq!(pguess(&t, GuessingMethod::AverageFirstBitOne), 1.0);
        assert_eq!(pguess(&t, GuessingMethod::Average), 0.75);
        assert_eq!(pguess(&t, GuessingMethod::Maximal), 1.0);
    }

    #[test]
    fn average_is_exactly_the_mean_of_the_split_methods() {
        for seed in 0..500 {
            let t = ProbabilityTable::from_scenario(&crate::qubit::random_scenario(seed));
            let p2 = pguess(&t, GuessingMethod::AverageFirstBitZero);
            let p3 = pguess(&t, GuessingMethod::AverageFirstBitOne);
            let p4 = pguess(&t, GuessingMethod::Average);
            assert_eq!(p4, (p2 + p3) / 2.0);
        }
    }

    #[test]
    fn maximal_method_dominates_the_averages() {
        for seed in 0..500 {
            let t = ProbabilityTable::from_scenario(&crate::qubit::random_scenario(seed));
            let p1 = pguess(&t, GuessingMethod::Maximal);
            for m in [
                GuessingMethod::AverageFirstBitZero,
                GuessingMethod::AverageFirstBitOne,
                GuessingMethod::Average,
            ] {
                assert!(p1 >= pguess(&t, m));
            }
        }
    }

    #[test]
    fn every_method_stays_in_the_upper_half_interval() {
        for seed in 0..500 {
            let t = ProbabilityTable::from_scenario(&crate::qubit::random_scenario(seed));
            for m in GuessingMethod::ALL {
                let p = pguess(&t, m);
                assert!((0.5..=1.0 + 1e-12).contains(&p));
            }
        }
    }

    #[test]
    fn tie_cells_contribute_exactly_one_half() {
        let base = table([0.5; 8]);
        assert_eq!(pguess(&base, GuessingMethod::Average), 0.5);
        for eps in [1e-9, -1e-9] {
            let t = table([0.5 + eps; 8]);
            let p = pguess(&t, GuessingMethod::Average);
            assert!((p - (0.5 + eps.abs())).abs() < 1e-15);
        }
    }

    #[test]
    fn min_entropy_reference_points() {
        assert_eq!(min_entropy(1.0).unwrap(), 0.0);
        assert_eq!(min_entropy(0.5).unwrap(), 1.0);
        let h = min_entropy(0.5 + 0.5 * FRAC_1_SQRT_2).unwrap();
        assert!((h - 0.2284).abs() < 5e-4);
    }

    #[test]
    fn min_entropy_is_strictly_decreasing() {
        let mut last = f64::INFINITY;
        for i in 1..=100 {
            let h = min_entropy(i as f64 / 100.0).unwrap();
            assert!(h < last);
            last = h;
        }
    }

    #[test]
    fn min_entropy_rejects_nonpositive_probabilities() {
        assert!(min_entropy(0.0).is_err());
        assert!(min_entropy(-0.1).is_err());
        assert!(min_entropy(1.1).is_err());
    }
}
