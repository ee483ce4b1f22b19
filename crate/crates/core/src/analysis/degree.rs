use rayon::prelude::*;

use crate::channel::{sample_activity, AccessMode, ActivitySpec};
use crate::error::{invalid, Result};
use crate::euler::SparseMapping;
use crate::receiver::peel_structural;
use crate::rng::{stream, tag};

/// Seed-averaged check-node degree distribution for one activity level.
#[derive(Clone, Debug, PartialEq)]
pub struct DegreePanel {
    pub ka: usize,
    pub seeds: usize,
    /// Mean number of checks of each degree before peeling.
    pub before: Vec<f64>,
    /// Mean number of checks of each degree once structural peeling stalls.
    pub after: Vec<f64>,
    pub initial_single_tons_mean: f64,
    pub peeled_fraction_mean: f64,
}

fn accumulate(acc: &mut Vec<f64>, h: &[usize]) {
    if acc.len() < h.len() {
        acc.resize(h.len(), 0.0);
    }
    for (a, &x) in acc.iter_mut().zip(h) {
        *a += x as f64;
    }
}

/// Structural peeling over `seeds` uniformly drawn activity sets per `K_a`.
pub fn degree_histogram_experiment(
    f: &SparseMapping,
    ka_list: &[usize],
    seeds: usize,
    master_seed: u64,
) -> Result<Vec<DegreePanel>> {
    let k = f.num_users();
    ka_list
        .iter()
        .map(|&ka| {
            if ka > k {
                return Err(invalid(format!("K_a = {ka} exceeds K = {k}")));
            }
            let traces: Vec<_> = (0..seeds)
                .into_par_iter()
                .map(|s| {
                    let mut rng =
                        stream(master_seed, tag::ACTIVITY, ((ka as u64) << 32) | s as u64);
                    let act = sample_activity(
                        k,
                        AccessMode::GrantFree,
                        &ActivitySpec::Count(ka),
                        &mut rng,
                    )?;
                    Ok(peel_structural(f, &act.columns()))
                })
                .collect::<Result<_>>()?;
            let mut before = Vec::new();
            let mut after = Vec::new();
            let (mut single, mut frac) = (0.0, 0.0);
            for t in &traces {
                accumulate(&mut before, &t.histogram_before);
                accumulate(&mut after, &t.histogram_after);
                single += t.initial_single_tons as f64;
                frac += if ka == 0 { 1.0 } else { t.peeled_fraction() };
            }
            let n = seeds.max(1) as f64;
            before
                .iter_mut()
                .chain(after.iter_mut())
                .for_each(|x| *x /= n);
            Ok(DegreePanel {
                ka,
                seeds,
                before,
                after,
                initial_single_tons_mean: single / n,
                peeled_fraction_mean: frac / n,
            })
        })
        .collect()
}
