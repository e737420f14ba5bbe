//! Damped Newton iteration for the collocation system.

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::collocation::{make_nodes_with, CollocationSystem, NodeDistribution};
use crate::error::{Error, Result};
use crate::problem::LaneEmdenProblem;
use crate::trial::SpectralSolution;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NewtonConfig {
    /// Infinity norm of the residual vector.
    pub tol_residual: f64,
    /// Infinity norm of the accepted update.
    pub tol_step: f64,
    pub max_iters: usize,
    pub damping: bool,
    pub max_halvings: usize,
    /// Multiplier on `(N+1)·ε·scale`, the size of round-off in one residual
    /// evaluation. The tolerance actually used is the larger of this and
    /// `tol_residual`. Zero disables the floor.
    pub roundoff_factor: f64,
    /// The floor never relaxes the tolerance beyond this; badly conditioned
    /// expansions then report non-convergence.
    pub roundoff_cap: f64,
}

impl Default for NewtonConfig {
    fn default() -> Self {
        Self {
            tol_residual: 1e-13,
            tol_step: 1e-14,
            max_iters: 100,
            damping: true,
            max_halvings: 30,
            roundoff_factor: 1.0,
            roundoff_cap: 1e-8,
        }
    }
}

impl NewtonConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol_residual > 0.0) || !(self.tol_step > 0.0) {
            return Err(Error::Config("tolerances must be positive".into()));
        }
        if self.max_iters < 1 {
            return Err(Error::Config("max_iters must be at least 1".into()));
        }
        if !(self.roundoff_factor >= 0.0) || !(self.roundoff_cap >= 0.0) {
            return Err(Error::Config(
                "round-off settings must be non-negative".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum StopReason {
    Residual,
    Step,
    Stagnation,
    MaxIters,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub solution: SpectralSolution,
    pub iterations: usize,
    pub final_residual_norm: f64,
    pub converged: bool,
    pub damping_events: usize,
    pub effective_tolerance: f64,
    pub stop_reason: StopReason,
    /// q values of the warm-started stages; a single entry when no continuation ran.
    pub continuation_stages: Vec<f64>,
}

fn tolerance(sys: &CollocationSystem, config: &NewtonConfig, coeffs: &[f64]) -> Result<f64> {
    let scale = sys.residual_scale(coeffs)?.0;
    let floor = config.roundoff_factor * sys.unknowns() as f64 * f64::EPSILON * scale;
    Ok(config.tol_residual.max(floor.min(config.roundoff_cap)))
}

fn inf_norm(v: &DVector<f64>) -> Result<f64> {
    let n = v.amax();
    if n.is_finite() {
        Ok(n)
    } else {
        Err(Error::NonFinite { iteration: 0 })
    }
}

pub fn newton_solve(
    sys: &CollocationSystem,
    config: &NewtonConfig,
    initial: Option<&[f64]>,
) -> Result<SolveReport> {
    config.validate()?;
    let size = sys.unknowns();
    let mut coeffs = match initial {
        Some(c) if c.len() != size => {
            return Err(Error::LengthMismatch {
                expected: size,
                got: c.len(),
            })
        }
        Some(c) => c.to_vec(),
        None => vec![0.0; size],
    };
    let nonfinite = |iteration| move |_| Error::NonFinite { iteration };

    let (mut res, mut jac) = sys.assemble(&coeffs)?;
    let mut norm = inf_norm(&res).map_err(nonfinite(0))?;
    let mut tol = tolerance(sys, config, &coeffs)?;
    let mut iterations = 0;
    let mut damping_events = 0;
    let mut stop = StopReason::MaxIters;

    while iterations < config.max_iters {
        if norm <= tol {
            stop = StopReason::Residual;
            break;
        }
        let lu = jac.clone().lu();
        let u = lu.u();
        let pivot = u
            .diagonal()
            .iter()
            .fold(f64::INFINITY, |m, d| m.min(d.abs()));
        if !(pivot >= 1e-300) {
            return Err(Error::SingularJacobian { pivot });
        }
        let delta = lu.solve(&res).ok_or(Error::SingularJacobian { pivot })?;
        iterations += 1;

        let mut lambda = 1.0;
        let mut accepted = None;
        for halving in 0..=config.max_halvings {
            let trial: Vec<f64> = coeffs
                .iter()
                .zip(delta.iter())
                .map(|(c, d)| c - lambda * d)
                .collect();
            let trial_res = sys.residual_vector(&trial)?;
            let trial_norm = trial_res.amax();
            if !config.damping || (trial_norm.is_finite() && trial_norm < norm) {
                if !trial_norm.is_finite() {
                    return Err(Error::NonFinite {
                        iteration: iterations,
                    });
                }
                if halving > 0 {
                    damping_events += 1;
                }
                accepted = Some(trial);
                break;
            }
            lambda *= 0.5;
        }
        let Some(next) = accepted else {
            stop = StopReason::Stagnation;
            break;
        };
        let step = lambda * delta.amax();
        coeffs = next;
        (res, jac) = sys.assemble(&coeffs)?;
        norm = inf_norm(&res).map_err(nonfinite(iterations))?;
        tol = tolerance(sys, config, &coeffs)?;
        if norm <= tol {
            stop = StopReason::Residual;
            break;
        }
        if step <= config.tol_step {
            stop = StopReason::Step;
            break;
        }
    }

    let p = &sys.problem;
    let solution = SpectralSolution::new(p.name.clone(), sys.nodes.q, p.a, p.b, coeffs)?;
    Ok(SolveReport {
        solution,
        iterations,
        final_residual_norm: norm,
        converged: norm <= tol,
        damping_events,
        effective_tolerance: tol,
        stop_reason: stop,
        continuation_stages: vec![sys.nodes.q],
    })
}

/// Solves at `q/4, q/2, 3q/4, q`, seeding each stage with the previous
/// coefficients. The basis does not depend on q, so they carry over directly.
pub fn solve_with_continuation(
    problem: &LaneEmdenProblem,
    n: usize,
    q: f64,
    distribution: NodeDistribution,
    config: &NewtonConfig,
) -> Result<SolveReport> {
    let stages: Vec<f64> = (1..=4).map(|k| q * k as f64 / 4.0).collect();
    let mut warm: Option<Vec<f64>> = None;
    let mut iterations = 0;
    let mut damping_events = 0;
    let mut last = None;
    for &qs in &stages {
        let sys = CollocationSystem::new(problem.clone(), make_nodes_with(qs, n, distribution)?)?;
        let report = newton_solve(&sys, config, warm.as_deref())?;
        iterations += report.iterations;
        damping_events += report.damping_events;
        warm = Some(report.solution.coeffs.clone());
        last = Some(report);
    }
    let mut report = last.expect("four stages always run");
    report.iterations = iterations;
    report.damping_events = damping_events;
    report.continuation_stages = stages;
    Ok(report)
}

/// Builds the system for `(problem, n, q)` and solves it, optionally by continuation.
pub fn solve(
    problem: &LaneEmdenProblem,
    n: usize,
    q: f64,
    distribution: NodeDistribution,
    config: &NewtonConfig,
    continuation: bool,
) -> Result<SolveReport> {
    if continuation {
        return solve_with_continuation(problem, n, q, distribution, config);
    }
    let sys = CollocationSystem::new(problem.clone(), make_nodes_with(q, n, distribution)?)?;
    newton_solve(&sys, config, None)
}
