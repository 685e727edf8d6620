mod grid;
mod output;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use sdirand_core::{
    maximize_pguess, maximize_witness, min_entropy, min_entropy_bound, parse_scenario, pguess,
    pguess_bound_from_witness, scenario_to_json, EfficiencyPair, Error, GuessingMethod,
    OptConfig, ProbabilityTable, Result, QUANTUM_BOUND,
};

use grid::{efficiency_grid, snap_witness, witness_grid};
use output::{sig9, Csv};

/// Certify randomness from a bounded-dimension prepare-and-measure
/// experiment: maximize the dimension witness under detector
/// inefficiency, bound adversarial guessing at a given witness value,
/// and emit CSV sweeps of the resulting min-entropy curves.
#[derive(Parser)]
#[command(name = "sdirand", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Seed for the deterministic multi-start optimizer
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Optimizer restarts per point (default 64)
    #[arg(long, global = true)]
    restarts: Option<usize>,

    /// Convergence tolerance on the simplex objective spread (default 1e-9)
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Write output to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum EffVar {
    /// Symmetric efficiency: both detectors at eta
    Eta,
    /// Second-basis efficiency with the first fixed at --eta0
    Eta1,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a scenario file: probability table, witness, guessing probabilities
    Evaluate {
        /// JSON file holding 4 preparations and 2 measurements
        file: PathBuf,
    },
    /// Maximal witness under detector inefficiency, single point or sweep
    MaxWitness {
        /// Detection efficiency of the first measurement basis
        #[arg(long, default_value_t = 1.0)]
        eta0: f64,
        /// Detection efficiency of the second measurement basis
        #[arg(long, default_value_t = 1.0)]
        eta1: f64,
        /// Sweep variable; emits CSV instead of a single-point report
        #[arg(long, value_enum)]
        sweep: Option<EffVar>,
        #[arg(long, default_value_t = 0.0)]
        from: f64,
        #[arg(long, default_value_t = 1.0)]
        to: f64,
        #[arg(long, default_value_t = 0.01)]
        step: f64,
    },
    /// Maximal tolerable white-noise fraction across detector efficiencies
    Noise {
        /// Sweep variable: eta for the symmetric case, eta1 with --eta0 fixed
        #[arg(long, value_enum, default_value = "eta")]
        sweep: EffVar,
        /// First-basis efficiency used when sweeping eta1
        #[arg(long, default_value_t = 1.0)]
        eta0: f64,
        #[arg(long, default_value_t = 0.0)]
        from: f64,
        #[arg(long, default_value_t = 1.0)]
        to: f64,
        #[arg(long, default_value_t = 0.01)]
        step: f64,
    },
    /// Maximal guessing probability at a fixed witness value
    Pguess {
        /// Witness value the adversarial strategy must reproduce
        #[arg(long = "T")]
        t: f64,
        /// Guessing method 1..=4
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        method: u8,
    },
    /// Min-entropy of each requested guessing method over a witness grid
    EntropyCurve {
        #[arg(long, default_value_t = 2.0)]
        from: f64,
        #[arg(long, default_value_t = QUANTUM_BOUND)]
        to: f64,
        #[arg(long, default_value_t = 0.02)]
        step: f64,
        /// Comma-separated subset of 1,2,3,4
        #[arg(long, default_value = "1,2,3,4")]
        methods: String,
    },
    /// Closed-form guessing bound f(T) and its min-entropy
    #[command(group = ArgGroup::new("target").required(true).args(["t", "sweep"]))]
    Analytic {
        /// Single witness value to evaluate
        #[arg(long = "T")]
        t: Option<f64>,
        /// Emit the CSV sweep T,f,H instead of a single point
        #[arg(long)]
        sweep: bool,
        #[arg(long, default_value_t = 2.0)]
        from: f64,
        #[arg(long, default_value_t = QUANTUM_BOUND)]
        to: f64,
        #[arg(long, default_value_t = 0.02)]
        step: f64,
    },
}

impl Cli {
    fn opt_config(&self) -> OptConfig {
        let mut config = OptConfig {
            seed: self.seed,
            ..OptConfig::default()
        };
        if let Some(restarts) = self.restarts {
            config.restarts = restarts;
        }
        if let Some(tol) = self.tol {
            config.tolerance = tol;
        }
        config
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => match &cli.out {
            Some(path) => {
                if let Err(e) = std::fs::write(path, &text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
                ExitCode::SUCCESS
            }
            None => {
                print!("{text}");
                ExitCode::SUCCESS
            }
        },
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_status(&err))
        }
    }
}

fn exit_status(err: &Error) -> u8 {
    match err {
        Error::Parse(_)
        | Error::Validation { .. }
        | Error::BlochNorm { .. }
        | Error::EffectEigenvalues { .. } => 2,
        Error::ConvergenceFailure(_) | Error::ConstraintInfeasible(_) => 3,
        Error::Domain(_) => 4,
    }
}

fn run(cli: &Cli) -> Result<String> {
    let config = cli.opt_config();
    match &cli.command {
        Command::Evaluate { file } => cmd_evaluate(file),
        Command::MaxWitness {
            eta0,
            eta1,
            sweep,
            from,
            to,
            step,
        } => cmd_max_witness(*eta0, *eta1, *sweep, *from, *to, *step, &config),
        Command::Noise {
            sweep,
            eta0,
            from,
            to,
            step,
        } => cmd_noise(*sweep, *eta0, *from, *to, *step, &config),
        Command::Pguess { t, method } => cmd_pguess(*t, *method, &config),
        Command::EntropyCurve {
            from,
            to,
            step,
            methods,
        } => cmd_entropy_curve(*from, *to, *step, methods, &config),
        Command::Analytic {
            t,
            sweep,
            from,
            to,
            step,
        } => cmd_analytic(*t, *sweep, *from, *to, *step),
    }
}

fn cmd_evaluate(path: &Path) -> Result<String> {
    let raw = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    let scenario = parse_scenario(&raw)?;
    let table = ProbabilityTable::from_scenario(&scenario);
    let mut out = String::new();
    for a0 in 0..2 {
        for a1 in 0..2 {
            for y in 0..2 {
                let _ = writeln!(out, "E{a0}{a1}{y} = {}", sig9(table.get(a0, a1, y)));
            }
        }
    }
    let _ = writeln!(out, "T = {}", sig9(table.witness()));
    for method in GuessingMethod::ALL {
        let p = pguess(&table, method);
        let _ = writeln!(out, "p_guess({}) = {}", method.index(), sig9(p));
        let _ = writeln!(out, "H_inf({}) = {}", method.index(), sig9(min_entropy(p)?));
    }
    Ok(out)
}

fn cmd_max_witness(
    eta0: f64,
    eta1: f64,
    sweep: Option<EffVar>,
    from: f64,
    to: f64,
    step: f64,
    config: &OptConfig,
) -> Result<String> {
    match sweep {
        None => {
            let etas = EfficiencyPair::new(eta0, eta1)?;
            let result = maximize_witness(etas, config)?;
            let mut out = String::new();
            let _ = writeln!(out, "T_max = {}", sig9(result.value));
            let _ = writeln!(out, "converged_restarts = {}", result.converged_restarts);
            let _ = writeln!(out, "scenario:");
            out.push_str(&scenario_to_json(&result.scenario));
            Ok(out)
        }
        Some(EffVar::Eta) => {
            let grid = efficiency_grid(from, to, step)?;
            let mut csv = Csv::new("eta,T_max");
            for eta in grid.points() {
                let result = maximize_witness(EfficiencyPair::new(eta, eta)?, config)?;
                csv.row(&[sig9(eta), sig9(result.value)]);
            }
            Ok(csv.finish())
        }
        Some(EffVar::Eta1) => {
            let grid = efficiency_grid(from, to, step)?;
            let mut csv = Csv::new("eta1,T_max");
            for eta1 in grid.points() {
                let result = maximize_witness(EfficiencyPair::new(eta0, eta1)?, config)?;
                csv.row(&[sig9(eta1), sig9(result.value)]);
            }
            Ok(csv.finish())
        }
    }
}

fn cmd_noise(
    sweep: EffVar,
    eta0: f64,
    from: f64,
    to: f64,
    step: f64,
    config: &OptConfig,
) -> Result<String> {
    let grid = efficiency_grid(from, to, step)?;
    let mut csv = Csv::new("eta,p_max");
    for eta in grid.points() {
        let etas = match sweep {
            EffVar::Eta => EfficiencyPair::new(eta, eta)?,
            EffVar::Eta1 => EfficiencyPair::new(eta0, eta)?,
        };
        let t_max = maximize_witness(etas, config)?.value;
        let p_max = if t_max > 2.0 {
            sdirand_core::noise_threshold(t_max)?
        } else {
            0.0
        };
        csv.row(&[sig9(eta), sig9(p_max)]);
    }
    Ok(csv.finish())
}

fn cmd_pguess(t: f64, method_index: u8, config: &OptConfig) -> Result<String> {
    let method = GuessingMethod::from_index(method_index)?;
    let target = snap_witness(t)?;
    let result = maximize_pguess(method, target, config)?;
    let mut out = String::new();
    let _ = writeln!(out, "p_guess = {}", sig9(result.value));
    let _ = writeln!(out, "witness = {}", sig9(result.witness));
    let _ = writeln!(out, "H_inf = {}", sig9(min_entropy(result.value)?));
    Ok(out)
}

fn cmd_entropy_curve(
    from: f64,
    to: f64,
    step: f64,
    methods: &str,
    config: &OptConfig,
) -> Result<String> {
    let methods = parse_methods(methods)?;
    let grid = witness_grid(from, to, step)?;
    let mut csv = Csv::new("T,H1,H2,H3,H4,H_analytic");
    for t_raw in grid.points() {
        let target = snap_witness(t_raw)?;
        let mut cells = vec![sig9(t_raw)];
        for index in 1..=4u8 {
            let method = GuessingMethod::from_index(index)?;
            if methods.contains(&method) {
                let result = maximize_pguess(method, target, config)?;
                cells.push(sig9(min_entropy(result.value)?));
            } else {
                cells.push(String::new());
            }
        }
        cells.push(sig9(min_entropy_bound(target)?));
        csv.row(&cells);
    }
    Ok(csv.finish())
}

fn cmd_analytic(t: Option<f64>, sweep: bool, from: f64, to: f64, step: f64) -> Result<String> {
    if sweep {
        let grid = witness_grid(from, to, step)?;
        let mut csv = Csv::new("T,f,H");
        for t_raw in grid.points() {
            let target = snap_witness(t_raw)?;
            csv.row(&[
                sig9(t_raw),
                sig9(pguess_bound_from_witness(target)?),
                sig9(min_entropy_bound(target)?),
            ]);
        }
        return Ok(csv.finish());
    }
    let t_raw = t.expect("clap group guarantees --T when --sweep is absent");
    let (f, h) = if t_raw.is_finite() && (0.0..2.0 - 1e-9).contains(&t_raw) {
        // below the classical bound nothing is certified
        (1.0, 0.0)
    } else {
        let target = snap_witness(t_raw)?;
        (
            pguess_bound_from_witness(target)?,
            min_entropy_bound(target)?,
        )
    };
    let mut out = String::new();
    let _ = writeln!(out, "f = {}", sig9(f));
    let _ = writeln!(out, "H_inf = {}", sig9(h));
    Ok(out)
}

fn parse_methods(raw: &str) -> Result<Vec<GuessingMethod>> {
    let mut indices = Vec::new();
    for part in raw.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let index: u8 = part.parse().map_err(|_| Error::Validation {
            field: "methods".into(),
            reason: format!("cannot parse {part:?} as a method index"),
        })?;
        indices.push(GuessingMethod::from_index(index)?.index());
    }
    if indices.is_empty() {
        return Err(Error::Validation {
            field: "methods".into(),
            reason: "no methods requested".into(),
        });
    }
    indices.sort_unstable();
    indices.dedup();
    indices
        .into_iter()
        .map(GuessingMethod::from_index)
        .collect()
}
