//! Multi-start derivative-free maximization over the strategy manifold.
//!
//! Strategies are encoded as 20 unconstrained reals; a smooth squashing map
//! makes every raw vector decode to a valid [`Scenario`], so the search
//! itself is box-free. The local engine is a Nelder-Mead simplex with
//! dimension-adapted coefficients, restarted at its own incumbent with a
//! shrinking initial step until it stops improving.

use crate::error::{Error, Result};
use crate::exec;
use crate::guessing::{pguess, GuessingMethod};
use crate::qubit::{sample_scenario, BlochVector, PovmEffect, QubitState, Scenario};
use crate::witness::{witness_with_efficiency, EfficiencyPair, ProbabilityTable, QUANTUM_BOUND};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

/// Length of the search vector: 4 preparations × (2 angles + radius
/// pre-image) + 2 effects × (2 angles + offset pre-image + radius pre-image).
pub const PARAM_COUNT: usize = 20;

/// Unconstrained search coordinates. Any finite vector decodes to a valid
/// scenario; the map is surjective onto the strategy set.
#[derive(Debug, Clone, PartialEq)]
pub struct ParameterVector(pub [f64; PARAM_COUNT]);

/// Search budget and reproducibility knobs.
#[derive(Debug, Clone, PartialEq)]
pub struct OptConfig {
    /// Independent multi-start count.
    pub restarts: usize,
    /// Simplex iteration budget per local search.
    pub max_iterations: usize,
    /// Convergence tolerance on the simplex objective spread.
    pub tolerance: f64,
    /// First-stage weight of the quadratic penalty on equality constraints.
    pub penalty_start: f64,
    /// Multiplicative weight increase per penalty stage.
    pub penalty_growth: f64,
    /// Number of penalty stages, each warm-started from the previous one.
    pub penalty_stages: usize,
    /// Accepted |witness − target| on constrained maximization.
    pub constraint_tolerance: f64,
    /// Base seed; restart k draws its start from seed + k.
    pub seed: u64,
}

impl Default for OptConfig {
    fn default() -> Self {
        Self {
            restarts: 64,
            max_iterations: 10_000,
            tolerance: 1e-9,
            penalty_start: 10.0,
            penalty_growth: 10.0,
            penalty_stages: 4,
            constraint_tolerance: 1e-4,
            seed: 42,
        }
    }
}

impl OptConfig {
    pub fn validate(&self) -> Result<()> {
        let checks = [
            ("restarts", self.restarts >= 1),
            ("max_iterations", self.max_iterations >= 1),
            ("tolerance", self.tolerance > 0.0),
            ("penalty_start", self.penalty_start > 0.0),
            ("penalty_growth", self.penalty_growth >= 1.0),
            ("penalty_stages", self.penalty_stages >= 1),
            ("constraint_tolerance", self.constraint_tolerance > 0.0),
        ];
        for (field, ok) in checks {
            if !ok {
                return Err(Error::Validation {
                    field: field.into(),
                    reason: "must be positive".into(),
                });
            }
        }
        Ok(())
    }
}

/// Outcome of one maximization: the best restart's values and scenario.
#[derive(Debug, Clone)]
pub struct OptResult {
    /// Best objective value found (penalty-free for constrained runs).
    pub value: f64,
    /// Witness achieved by the reported scenario: the efficiency-modified
    /// witness for [`maximize_witness`], the plain witness for
    /// [`maximize_pguess`].
    pub witness: f64,
    /// The maximizing strategy.
    pub scenario: Scenario,
    /// Restarts that converged; for constrained runs, that also met the
    /// witness constraint.
    pub converged_restarts: usize,
    /// Index of the winning restart (lowest index on ties).
    pub best_restart: usize,
}

/// Result of one local search.
#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub params: ParameterVector,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

fn direction(theta: f64, phi: f64) -> BlochVector {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    BlochVector::new(st * cp, st * sp, ct)
}

/// Smooth total map from the reals onto [0, 1].
fn squash(raw: f64) -> f64 {
    let s = raw.sin();
    s * s
}

/// Pre-image of [`squash`] in [0, π/2].
fn unsquash(v: f64) -> f64 {
    v.clamp(0.0, 1.0).sqrt().asin()
}

/// Maps raw coordinates to a valid scenario. The all-zero vector decodes to
/// four maximally mixed preparations and two zero effects (c = 0, t = 0).
pub fn decode(params: &ParameterVector) -> Scenario {
    let p = &params.0;
    let state = |base: usize| {
        let dir = direction(p[base], p[base + 1]);
        QubitState::new(dir.scaled(squash(p[base + 2])))
            .expect("squashed radius stays inside the unit ball")
    };
    let effect = |base: usize| {
        let dir = direction(p[base], p[base + 1]);
        let c = squash(p[base + 2]);
        let radius = c.min(1.0 - c) * squash(p[base + 3]);
        PovmEffect::new(c, dir.scaled(radius))
            .expect("squashed eigenvalues stay inside [0, 1]")
    };
    Scenario::new(
        [state(0), state(3), state(6), state(9)],
        [effect(12), effect(16)],
    )
}

/// Right inverse of [`decode`] up to gauge freedom at zero radius.
pub fn encode(scenario: &Scenario) -> ParameterVector {
    let mut p = [0.0; PARAM_COUNT];
    let angles = |v: BlochVector| {
        let r = v.norm();
        if r > 0.0 {
            ((v.z / r).clamp(-1.0, 1.0).acos(), v.y.atan2(v.x))
        } else {
            (0.0, 0.0)
        }
    };
    for (k, state) in scenario.preparations().iter().enumerate() {
        let s = state.bloch();
        let (theta, phi) = angles(s);
        p[3 * k] = theta;
        p[3 * k + 1] = phi;
        p[3 * k + 2] = unsquash(s.norm());
    }
    for (y, effect) in scenario.effects().iter().enumerate() {
        let base = 12 + 4 * y;
        let (theta, phi) = angles(effect.t());
        let c = effect.c();
        let max_radius = c.min(1.0 - c);
        let fraction = if max_radius > 0.0 { effect.t().norm() / max_radius } else { 0.0 };
        p[base] = theta;
        p[base + 1] = phi;
        p[base + 2] = unsquash(c);
        p[base + 3] = unsquash(fraction);
    }
    ParameterVector(p)
}

/// Starting point for restart `k`: a random scenario's pre-image plus small
/// Gaussian jitter, all drawn from a stream seeded with `seed + k`.
fn start_vector(seed: u64, k: u64) -> ParameterVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(k));
    let mut p = encode(&sample_scenario(&mut rng)).0;
    let jitter = Normal::new(0.0, 0.05).expect("constant standard deviation is valid");
    for v in &mut p {
        *v += jitter.sample(&mut rng);
    }
    ParameterVector(p)
}

struct NmResult {
    x: [f64; PARAM_COUNT],
    value: f64,
    iterations: usize,
    converged: bool,
}

/// One Nelder-Mead run (minimization) with the dimension-adapted
/// coefficients of Gao and Han, from a simplex of the given initial step.
fn nelder_mead_min<F: Fn(&[f64; PARAM_COUNT]) -> f64>(
    h: &F,
    x0: [f64; PARAM_COUNT],
    step: f64,
    max_iterations: usize,
    tolerance: f64,
) -> NmResult {
    const N: usize = PARAM_COUNT;
    let nf = N as f64;
    let alpha = 1.0;
    let beta = 1.0 + 2.0 / nf;
    let gamma = 0.75 - 1.0 / (2.0 * nf);
    let delta = 1.0 - 1.0 / nf;

    let mut simplex: Vec<([f64; N], f64)> = Vec::with_capacity(N + 1);
    simplex.push((x0, h(&x0)));
    for i in 0..N {
        let mut x = x0;
        x[i] += step;
        simplex.push((x, h(&x)));
    }

    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iterations {
        iterations += 1;
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let spread = simplex[N].1 - simplex[0].1;
        if spread < tolerance {
            converged = true;
            break;
        }

        let mut centroid = [0.0; N];
        for (x, _) in simplex.iter().take(N) {
            for i in 0..N {
                centroid[i] += x[i];
            }
        }
        for c in &mut centroid {
            *c /= nf;
        }
        let worst = simplex[N];
        let shifted = |coef: f64| {
            let mut x = [0.0; N];
            for i in 0..N {
                x[i] = centroid[i] + coef * (centroid[i] - worst.0[i]);
            }
            x
        };

        let xr = shifted(alpha);
        let hr = h(&xr);
        if hr < simplex[0].1 {
            let xe = shifted(alpha * beta);
            let he = h(&xe);
            simplex[N] = if he < hr { (xe, he) } else { (xr, hr) };
        } else if hr < simplex[N - 1].1 {
            simplex[N] = (xr, hr);
        } else if hr < worst.1 {
            let xc = shifted(alpha * gamma);
            let hc = h(&xc);
            if hc <= hr {
                simplex[N] = (xc, hc);
            } else {
                shrink(&mut simplex, delta, h);
            }
        } else {
            let xc = shifted(-gamma);
            let hc = h(&xc);
            if hc < worst.1 {
                simplex[N] = (xc, hc);
            } else {
                shrink(&mut simplex, delta, h);
            }
        }
    }

    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    NmResult { x: simplex[0].0, value: simplex[0].1, iterations, converged }
}

fn shrink<F: Fn(&[f64; PARAM_COUNT]) -> f64>(
    simplex: &mut [([f64; PARAM_COUNT], f64)],
    delta: f64,
    h: &F,
) {
    let best = simplex[0].0;
    for entry in simplex.iter_mut().skip(1) {
        for i in 0..PARAM_COUNT {
            entry.0[i] = best[i] + delta * (entry.0[i] - best[i]);
        }
        entry.1 = h(&entry.0);
    }
}

/// Initial simplex steps for the successive restart rounds of one local
/// search; each round re-seeds the simplex at the incumbent.
const ROUND_STEPS: [f64; 4] = [0.25, 0.1, 0.05, 0.02];

/// Maximizes `objective` from `start`: repeated Nelder-Mead runs, each
/// restarted at the best point found so far with a smaller initial step,
/// stopping once a re-seeded run no longer improves (or the shared
/// iteration budget runs out). Deterministic in its inputs.
pub fn local_search<F: Fn(&ParameterVector) -> f64>(
    objective: F,
    start: &ParameterVector,
    config: &OptConfig,
) -> SearchOutcome {
    let h = |x: &[f64; PARAM_COUNT]| -objective(&ParameterVector(*x));
    let mut x = start.0;
    let mut value = h(&x);
    let mut used = 0;
    let mut converged = false;
    let improvement = config.tolerance.max(1e-13);
    for (round, &step) in ROUND_STEPS.iter().enumerate() {
        if used >= config.max_iterations {
            break;
        }
        let res = nelder_mead_min(&h, x, step, config.max_iterations - used, config.tolerance);
        used += res.iterations;
        let improved = res.value < value - improvement;
        if res.value < value {
            x = res.x;
            value = res.value;
        }
        converged = res.converged;
        if round > 0 && !improved {
            break;
        }
    }
    SearchOutcome {
        params: ParameterVector(x),
        value: -value,
        iterations: used,
        converged,
    }
}

/// Largest efficiency-modified witness over all qubit strategies.
pub fn maximize_witness(etas: EfficiencyPair, config: &OptConfig) -> Result<OptResult> {
    config.validate()?;
    let objective = |p: &ParameterVector| witness_with_efficiency(&decode(p), etas);
    let outcomes = exec::run_indexed(config.restarts, |k| {
        local_search(objective, &start_vector(config.seed, k as u64), config)
    });
    let converged = outcomes.iter().filter(|o| o.converged).count();
    let (best_restart, best) = argmax_by(&outcomes, |o| o.value);
    if converged == 0 {
        return Err(Error::ConvergenceFailure(format!(
            "0 of {} restarts converged within {} iterations; best objective {:.6}",
            config.restarts, config.max_iterations, best.value
        )));
    }
    let scenario = decode(&best.params);
    Ok(OptResult {
        value: best.value,
        witness: witness_with_efficiency(&scenario, etas),
        scenario,
        converged_restarts: converged,
        best_restart,
    })
}

/// Largest guessing probability over all strategies whose witness equals
/// `t_target` within the constraint tolerance. The equality constraint is
/// enforced by a staged quadratic penalty; the reported value and witness
/// are recomputed penalty-free. At the boundary target 2√2 the tolerance is
/// effectively one-sided, since no strategy exceeds the bound.
pub fn maximize_pguess(
    method: GuessingMethod,
    t_target: f64,
    config: &OptConfig,
) -> Result<OptResult> {
    config.validate()?;
    if !t_target.is_finite() || t_target.abs() > QUANTUM_BOUND + 1e-9 {
        return Err(Error::Domain(format!(
            "witness target {t_target} outside [-2*sqrt(2), 2*sqrt(2)]"
        )));
    }
    let t_target = t_target.clamp(-QUANTUM_BOUND, QUANTUM_BOUND);

    struct Restart {
        params: ParameterVector,
        pguess: f64,
        witness: f64,
        converged: bool,
    }
    let outcomes = exec::run_indexed(config.restarts, |k| {
        let mut x = start_vector(config.seed, k as u64);
        let mut weight = config.penalty_start;
        let mut converged = false;
        for _ in 0..config.penalty_stages {
            let w = weight;
            let objective = |p: &ParameterVector| {
                let table = ProbabilityTable::from_scenario(&decode(p));
                let gap = table.witness() - t_target;
                pguess(&table, method) - w * gap * gap
            };
            let res = local_search(objective, &x, config);
            x = res.params;
            converged = res.converged;
            weight *= config.penalty_growth;
        }
        let table = ProbabilityTable::from_scenario(&decode(&x));
        Restart { params: x, pguess: pguess(&table, method), witness: table.witness(), converged }
    });

    let feasible = |r: &Restart| (r.witness - t_target).abs() <= config.constraint_tolerance;
    let winner = outcomes
        .iter()
        .enumerate()
        .filter(|(_, r)| feasible(r))
        .max_by(|(i, a), (j, b)| a.pguess.total_cmp(&b.pguess).then(j.cmp(i)));
    let Some((best_restart, best)) = winner else {
        let (_, closest) = argmax_by(&outcomes, |r| -(r.witness - t_target).abs());
        return Err(Error::ConstraintInfeasible(format!(
            "no restart reached witness {} within {}; closest achieved {}",
            t_target, config.constraint_tolerance, closest.witness
        )));
    };
    let converged = outcomes.iter().filter(|r| r.converged && feasible(r)).count();
    Ok(OptResult {
        value: best.pguess,
        witness: best.witness,
        scenario: decode(&best.params),
        converged_restarts: converged,
        best_restart,
    })
}

fn argmax_by<T, F: Fn(&T) -> f64>(items: &[T], score: F) -> (usize, &T) {
    let mut best = 0;
    for i in 1..items.len() {
        if score(&items[i]) > score(&items[best]) {
            best = i;
        }
    }
    (best, &items[best])
}
