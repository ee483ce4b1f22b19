use rayon::prelude::*;

use crate::channel::ebn0_to_snr;
use crate::error::Result;
use crate::scalar::Real;

use super::scenario::{run_trial, ScenarioConfig};
use super::stats::ci95;

/// Stopping rule for one grid point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepBudget {
    pub min_errors: usize,
    pub max_trials: usize,
    /// Trials per batch; the rule is checked between batches so results do
    /// not depend on the number of worker threads.
    pub batch: usize,
    /// Stop once the error count alone proves `pe > fail_above` at the full
    /// trial budget.
    pub fail_above: Option<f64>,
}

impl Default for SweepBudget {
    fn default() -> Self {
        Self {
            min_errors: 50,
            max_trials: 200_000,
            batch: 16,
            fail_above: None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SweepPoint {
    pub ebn0_db: f64,
    pub snr: f64,
    pub trials: usize,
    /// Users entering the error-probability denominator.
    pub users: usize,
    pub errors: usize,
    pub e1: usize,
    pub e2: usize,
    pub e3: usize,
    pub pe: f64,
    pub ci95: f64,
    pub peeled_frac_mean: f64,
    pub turbo_iters_mean: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    pub config: ScenarioConfig,
    pub points: Vec<SweepPoint>,
}

pub fn pe_point<T: Real>(
    cfg: &ScenarioConfig,
    ebn0_db: f64,
    budget: &SweepBudget,
) -> Result<SweepPoint> {
    let sc = cfg.build::<T>()?;
    let snr = ebn0_to_snr(ebn0_db, sc.ell(), sc.code().k())?;
    let mut p = SweepPoint {
        ebn0_db,
        snr,
        ..Default::default()
    };
    let (mut peeled, mut passes) = (0.0, 0usize);
    let batch = budget.batch.max(1);
    let fail_limit = budget
        .fail_above
        .map(|t| t * (budget.max_trials * cfg.max_active()) as f64);
    while p.trials < budget.max_trials {
        let hi = (p.trials + batch).min(budget.max_trials);
        let results: Vec<_> = (p.trials..hi)
            .into_par_iter()
            .map(|i| run_trial(&sc, cfg, snr, i as u64))
            .collect::<Result<_>>()?;
        for r in &results {
            p.e1 += r.counts.e1;
            p.e2 += r.counts.e2;
            p.e3 += r.counts.e3;
            p.users += r.counts.users;
            peeled += r.peeled_fraction;
            passes += r.turbo_passes;
        }
        p.trials = hi;
        p.errors = p.e1 + p.e2 + p.e3;
        if p.errors >= budget.min_errors || fail_limit.is_some_and(|l| p.errors as f64 > l) {
            break;
        }
    }
    p.pe = if p.users == 0 {
        0.0
    } else {
        p.errors as f64 / p.users as f64
    };
    p.ci95 = ci95(p.pe, p.users);
    p.peeled_frac_mean = peeled / p.trials.max(1) as f64;
    p.turbo_iters_mean = passes as f64 / p.trials.max(1) as f64;
    Ok(p)
}

/// Monte-Carlo error probability at each `E_b/N_0` of `grid`.
pub fn pe_sweep<T: Real>(
    cfg: &ScenarioConfig,
    grid: &[f64],
    budget: &SweepBudget,
) -> Result<SweepResult> {
    let points = grid
        .iter()
        .map(|&e| pe_point::<T>(cfg, e, budget))
        .collect::<Result<_>>()?;
    Ok(SweepResult {
        config: cfg.clone(),
        points,
    })
}
