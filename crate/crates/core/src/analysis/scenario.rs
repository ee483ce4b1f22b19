use std::sync::Arc;

use crate::channel::{sample_activity, transmit, AccessMode, ActivitySpec, Scenario};
use crate::error::{invalid, Result};
use crate::euler::{build_mapping_matrix, construct_euler_square, ConstructionMethod};
use crate::fec::cached_code;
use crate::receiver::{account_errors, receive, DecodeOutcome, ErrorCounts, ReceiverConfig};
use crate::rng::{derive_seed, stream, tag};
use crate::scalar::Real;
use crate::signatures::{build_signatures, PhaseMode};

/// Everything needed to rebuild a link and replay its trials.
#[derive(Clone, Debug, PartialEq)]
pub struct ScenarioConfig {
    pub gamma: usize,
    pub rho: usize,
    pub method: ConstructionMethod,
    /// Codeword length, equal to the block length `ℓ` for BPSK.
    pub n: usize,
    pub w_c: usize,
    pub w_r: usize,
    /// Code construction seed; derived from `seed` when `None`.
    pub code_seed: Option<u64>,
    pub phase: PhaseMode,
    pub mode: AccessMode,
    pub activity: ActivitySpec,
    pub receiver: ReceiverConfig,
    /// Drop the Gaussian noise; the SNR then only scales the signal.
    pub noiseless: bool,
    pub seed: u64,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            gamma: 5,
            rho: 2,
            method: ConstructionMethod::PrimeModular,
            n: 60,
            w_c: 3,
            w_r: 6,
            code_seed: None,
            phase: PhaseMode::UniformRandom,
            mode: AccessMode::Scheduled,
            activity: ActivitySpec::Count(25),
            receiver: ReceiverConfig::default(),
            noiseless: false,
            seed: 1,
        }
    }
}

impl ScenarioConfig {
    pub fn num_users(&self) -> usize {
        self.gamma * self.gamma
    }

    pub fn n_s(&self) -> usize {
        self.gamma * self.rho
    }

    pub fn k(&self) -> usize {
        self.n - self.n * self.w_c / self.w_r.max(1)
    }

    pub fn resolved_code_seed(&self) -> u64 {
        self.code_seed
            .unwrap_or_else(|| derive_seed(self.seed, tag::LDPC, 0))
    }

    /// Largest number of active users a trial can produce.
    pub fn max_active(&self) -> usize {
        match (&self.mode, &self.activity) {
            (AccessMode::Scheduled, _) => self.num_users(),
            (_, ActivitySpec::Count(ka)) => *ka,
            (_, ActivitySpec::Fixed(v)) => v.len(),
            (_, ActivitySpec::Probability(_)) => self.num_users(),
        }
    }

    /// Short label for the configured activity.
    pub fn activity_label(&self) -> String {
        match (&self.mode, &self.activity) {
            (AccessMode::Scheduled, _) => self.num_users().to_string(),
            (_, ActivitySpec::Count(ka)) => ka.to_string(),
            (_, ActivitySpec::Fixed(v)) => v.len().to_string(),
            (_, ActivitySpec::Probability(a)) => format!("{}", a * self.num_users() as f64),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.w_r == 0 || !(self.n * self.w_c).is_multiple_of(self.w_r) {
            return Err(invalid("n*w_c must be divisible by w_r"));
        }
        if let (AccessMode::GrantFree, ActivitySpec::Count(ka)) = (&self.mode, &self.activity) {
            if *ka > self.num_users() {
                return Err(invalid(format!(
                    "K_a = {ka} exceeds K = {}",
                    self.num_users()
                )));
            }
        }
        Ok(())
    }

    pub fn build<T: Real>(&self) -> Result<Scenario<T>> {
        self.validate()?;
        let sq = construct_euler_square(self.gamma, self.rho, self.method)?;
        let f = build_mapping_matrix(&sq);
        let s = build_signatures(&f, self.phase, derive_seed(self.seed, tag::PHASES, 0));
        let code = cached_code(self.n, self.w_c, self.w_r, self.resolved_code_seed())?;
        Scenario::new(f, s, Arc::clone(&code), self.mode, self.seed)
    }
}

/// Summary of one simulated block.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct TrialResult {
    pub counts: ErrorCounts,
    pub peeled_fraction: f64,
    pub turbo_passes: usize,
    pub outcome: DecodeOutcome,
}

/// Runs trial `index`. Activity, messages and noise come from streams keyed
/// by the trial index alone, so the same trial sees the same randomness at
/// every SNR.
pub fn run_trial<T: Real>(
    sc: &Scenario<T>,
    cfg: &ScenarioConfig,
    snr: f64,
    index: u64,
) -> Result<TrialResult> {
    let activity = sample_activity(
        sc.num_users(),
        cfg.mode,
        &cfg.activity,
        &mut stream(cfg.seed, tag::ACTIVITY, index),
    )?;
    let messages = sc.random_messages(activity.len(), &mut stream(cfg.seed, tag::MESSAGES, index));
    let snr_t = T::lit(snr);
    let noise = (!cfg.noiseless).then(|| derive_seed(cfg.seed, tag::NOISE, index));
    let rx = transmit(sc, &activity, &messages, snr_t, noise)?;
    let outcome = receive(sc, &rx.y, &activity.columns(), snr_t, &cfg.receiver)?;
    let counts = account_errors(&outcome, &activity, &messages, cfg.mode);
    Ok(TrialResult {
        counts,
        peeled_fraction: outcome.peeled_fraction(),
        turbo_passes: outcome.turbo_passes,
        outcome,
    })
}
