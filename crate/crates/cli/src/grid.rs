use sdirand_core::{Error, Result, QUANTUM_BOUND};

/// Remaining slack accepted around the quantum bound: requested witness
/// values this close to 2*sqrt(2) are evaluated at the exact bound, so
/// truncated decimals like 2.8284 hit the true boundary optimum.
pub const BOUND_SNAP: f64 = 1e-4;

pub struct Grid {
    pub from: f64,
    pub to: f64,
    pub step: f64,
}

impl Grid {
    pub fn new(from: f64, to: f64, step: f64) -> Result<Self> {
        for (name, v) in [("from", from), ("to", to), ("step", step)] {
            if !v.is_finite() {
                return Err(Error::Validation {
                    field: name.into(),
                    reason: format!("{v} is not finite"),
                });
            }
        }
        if from > to {
            return Err(Error::Validation {
                field: "from".into(),
                reason: format!("{from} exceeds to = {to}"),
            });
        }
        if step <= 0.0 {
            return Err(Error::Validation {
                field: "step".into(),
                reason: format!("{step} must be positive"),
            });
        }
        if (to - from) / step > 1e6 {
            return Err(Error::Validation {
                field: "step".into(),
                reason: "more than 1e6 grid points".into(),
            });
        }
        Ok(Self { from, to, step })
    }

    /// Points from + k*step for k = 0..=floor((to-from)/step); the upper
    /// endpoint appears only when the step divides the range.
    pub fn points(&self) -> Vec<f64> {
        let count = ((self.to - self.from) / self.step + 1e-9).floor() as usize;
        (0..=count).map(|k| self.from + k as f64 * self.step).collect()
    }
}

pub fn efficiency_grid(from: f64, to: f64, step: f64) -> Result<Grid> {
    let grid = Grid::new(from, to, step)?;
    if grid.from < 0.0 || grid.to > 1.0 {
        return Err(Error::Validation {
            field: "from/to".into(),
            reason: format!("efficiency range [{from}, {to}] not within [0, 1]"),
        });
    }
    Ok(grid)
}

pub fn witness_grid(from: f64, to: f64, step: f64) -> Result<Grid> {
    let grid = Grid::new(from, to, step)?;
    if grid.from < 2.0 - 1e-9 || grid.to > QUANTUM_BOUND + BOUND_SNAP {
        return Err(Error::Domain(format!(
            "witness range [{from}, {to}] not within [2, 2*sqrt(2)]"
        )));
    }
    Ok(grid)
}

/// Witness values within BOUND_SNAP of the quantum bound evaluate at the
/// bound itself; anything else must already sit in [2, 2*sqrt(2)].
pub fn snap_witness(t: f64) -> Result<f64> {
    if !t.is_finite() {
        return Err(Error::Domain(format!("witness value {t} is not finite")));
    }
    if (t - QUANTUM_BOUND).abs() <= BOUND_SNAP {
        return Ok(QUANTUM_BOUND);
    }
    if t < 2.0 - 1e-9 || t > QUANTUM_BOUND {
        return Err(Error::Domain(format!(
            "witness value {t} outside [2, 2*sqrt(2)]"
        )));
    }
    Ok(t.max(2.0))
}
