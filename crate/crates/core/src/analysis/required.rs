use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use crate::error::{invalid, Result};
use crate::scalar::Real;

use super::scenario::ScenarioConfig;
use super::sweep::{pe_point, SweepBudget, SweepPoint};

/// Search interval and resolution for [`required_ebn0`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SearchGrid {
    pub lo_db: f64,
    pub hi_db: f64,
    pub step_db: f64,
}

impl Default for SearchGrid {
    fn default() -> Self {
        Self {
            lo_db: 0.0,
            hi_db: 16.0,
            step_db: 0.25,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RequiredResult {
    /// Smallest grid point meeting the target, `None` if even `hi_db` fails.
    pub ebn0_db: Option<f64>,
    /// Every evaluated point, ascending in `E_b/N_0`.
    pub evaluations: Vec<SweepPoint>,
}

/// Bisection on the grid for the smallest `E_b/N_0` with `pe <= target`,
/// assuming the error probability is nonincreasing in `E_b/N_0`.
pub fn required_ebn0<T: Real>(
    cfg: &ScenarioConfig,
    target: f64,
    grid: &SearchGrid,
    budget: &SweepBudget,
) -> Result<RequiredResult> {
    if !(target > 0.0 && target <= 0.5) {
        return Err(invalid(format!(
            "target error probability {target} outside (0, 0.5]"
        )));
    }
    if !(grid.step_db > 0.0) || grid.hi_db < grid.lo_db {
        return Err(invalid("search grid needs step > 0 and hi >= lo"));
    }
    let steps = ((grid.hi_db - grid.lo_db) / grid.step_db).round() as i64;
    let budget = SweepBudget {
        fail_above: Some(target),
        ..*budget
    };
    let mut cache: BTreeMap<i64, SweepPoint> = BTreeMap::new();
    let mut eval = |i: i64| -> Result<bool> {
        if let Entry::Vacant(slot) = cache.entry(i) {
            slot.insert(pe_point::<T>(
                cfg,
                grid.lo_db + i as f64 * grid.step_db,
                &budget,
            )?);
        }
        Ok(cache[&i].pe <= target)
    };
    let found = if !eval(steps)? {
        None
    } else if eval(0)? {
        Some(0)
    } else {
        let (mut bad, mut good) = (0, steps);
        while good - bad > 1 {
            let mid = (bad + good) / 2;
            if eval(mid)? {
                good = mid;
            } else {
                bad = mid;
            }
        }
        Some(good)
    };
    Ok(RequiredResult {
        ebn0_db: found.map(|i| grid.lo_db + i as f64 * grid.step_db),
        evaluations: cache.into_values().collect(),
    })
}
