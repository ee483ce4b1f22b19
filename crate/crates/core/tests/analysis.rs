use eulersig::analysis::stats::ci95;
use eulersig::analysis::{
    degree_histogram_experiment, pe_point, required_ebn0, ScenarioConfig, SearchGrid, SweepBudget,
};
use eulersig::channel::{AccessMode, ActivitySpec};
use eulersig::euler::prime_mapping;

fn pool(n: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .unwrap()
}

#[test]
fn far_below_threshold_nearly_everyone_fails() {
    let budget = SweepBudget {
        min_errors: 1000,
        max_trials: 8,
        ..Default::default()
    };
    for cfg in [
        ScenarioConfig::default(),
        ScenarioConfig {
            gamma: 7,
            mode: AccessMode::GrantFree,
            activity: ActivitySpec::Count(20),
            ..Default::default()
        },
        ScenarioConfig {
            gamma: 7,
            mode: AccessMode::Unsourced,
            activity: ActivitySpec::Count(20),
            ..Default::default()
        },
    ] {
        let p = pe_point::<f64>(&cfg, -10.0, &budget).unwrap();
        assert!(p.pe > 0.4, "{:?}: {}", cfg.mode, p.pe);
    }
}

#[test]
fn half_target_is_met_at_the_lowest_grid_point() {
    let cfg = ScenarioConfig {
        gamma: 3,
        n: 20,
        w_r: 4,
        ..Default::default()
    };
    let grid = SearchGrid {
        lo_db: 20.0,
        hi_db: 24.0,
        step_db: 1.0,
    };
    let r = required_ebn0::<f64>(
        &cfg,
        0.5,
        &grid,
        &SweepBudget {
            min_errors: 10,
            max_trials: 16,
            ..Default::default()
        },
    )
    .unwrap();
    assert_eq!(r.ebn0_db, Some(20.0));
}

#[test]
fn estimates_do_not_depend_on_thread_count() {
    let cfg = ScenarioConfig {
        seed: 77,
        ..Default::default()
    };
    let budget = SweepBudget {
        min_errors: 30,
        max_trials: 96,
        batch: 8,
        fail_above: None,
    };
    let one = pool(1).install(|| pe_point::<f64>(&cfg, 1.0, &budget).unwrap());
    let four = pool(4).install(|| pe_point::<f64>(&cfg, 1.0, &budget).unwrap());
    assert_eq!(one, four);
    let again = pe_point::<f64>(&cfg, 1.0, &budget).unwrap();
    assert_eq!(one, again);
}

#[test]
fn confidence_half_width_shrinks_as_inverse_root() {
    let cfg = ScenarioConfig {
        seed: 5,
        ..Default::default()
    };
    let short = pe_point::<f64>(
        &cfg,
        0.5,
        &SweepBudget {
            min_errors: usize::MAX,
            max_trials: 16,
            ..Default::default()
        },
    )
    .unwrap();
    let long = pe_point::<f64>(
        &cfg,
        0.5,
        &SweepBudget {
            min_errors: usize::MAX,
            max_trials: 64,
            ..Default::default()
        },
    )
    .unwrap();
    assert_eq!(long.users, 4 * short.users);
    assert!(short.pe > 0.0 && long.pe > 0.0);
    let ratio = short.ci95 / long.ci95;
    let pe_ratio = (short.pe * (1.0 - short.pe) / (long.pe * (1.0 - long.pe))).sqrt();
    assert!((ratio / pe_ratio - 2.0).abs() < 1e-9);
    assert!((ci95(0.1, 400) * 2.0 - ci95(0.1, 100)).abs() < 1e-12);
}

#[test]
fn lightly_loaded_residual_is_small() {
    let f = prime_mapping(101, 2).unwrap();
    let panels = degree_histogram_experiment(&f, &[0, 102], 50, 3).unwrap();
    assert_eq!(panels[0].before, vec![202.0]);
    let after = &panels[1].after;
    let deg = |d: usize| after.get(d).copied().unwrap_or(0.0);
    assert!(deg(2) + deg(3) < 5.0, "{after:?}");
    assert!(panels[1].peeled_fraction_mean >= 0.95);
    assert!(after.iter().skip(4).all(|&x| x < 0.1));
    for p in &panels {
        assert!((p.before.iter().sum::<f64>() - 202.0).abs() < 1e-9);
        assert!((p.after.iter().sum::<f64>() - 202.0).abs() < 1e-9);
    }
}

#[test]
fn too_many_active_users_is_rejected() {
    let f = prime_mapping(5, 2).unwrap();
    assert!(degree_histogram_experiment(&f, &[26], 1, 0)
        .unwrap_err()
        .is_validation());
    let cfg = ScenarioConfig {
        mode: AccessMode::GrantFree,
        activity: ActivitySpec::Count(26),
        ..Default::default()
    };
    assert!(cfg.validate().is_err());
}
