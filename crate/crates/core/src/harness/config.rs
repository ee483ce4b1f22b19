//! TOML run configuration. Every section mirrors a group of
//! [`ScenarioConfig`] fields; unknown keys are rejected.

use serde::{Deserialize, Serialize};

use crate::analysis::{ScenarioConfig, SearchGrid, SweepBudget};
use crate::channel::{AccessMode, ActivitySpec};
use crate::error::{Error, Result};
use crate::euler::ConstructionMethod;
use crate::receiver::{MpaConfig, ReceiverConfig, TurboConfig};
use crate::signatures::PhaseMode;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub seed: u64,
    pub design: DesignSection,
    pub fec: FecSection,
    pub channel: ChannelSection,
    pub activity: ActivitySection,
    pub receiver: ReceiverSection,
    pub sweep: SweepSection,
    pub graph: GraphSection,
    pub spectral: SpectralSection,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 1,
            design: DesignSection::default(),
            fec: FecSection::default(),
            channel: ChannelSection::default(),
            activity: ActivitySection::default(),
            receiver: ReceiverSection::default(),
            sweep: SweepSection::default(),
            graph: GraphSection::default(),
            spectral: SpectralSection::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DesignSection {
    pub gamma: usize,
    pub rho: usize,
    pub method: String,
    pub phase: String,
}

impl Default for DesignSection {
    fn default() -> Self {
        Self {
            gamma: 5,
            rho: 2,
            method: "prime".into(),
            phase: "uniform-random".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FecSection {
    /// Codeword length, which is also the block length `ℓ`.
    pub n: usize,
    pub w_c: usize,
    pub w_r: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub code_seed: Option<u64>,
}

impl Default for FecSection {
    fn default() -> Self {
        Self {
            n: 60,
            w_c: 3,
            w_r: 6,
            code_seed: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ChannelSection {
    pub mode: String,
    pub noiseless: bool,
    /// `f64` or `f32`.
    pub precision: String,
}

impl Default for ChannelSection {
    fn default() -> Self {
        Self {
            mode: "scheduled".into(),
            noiseless: false,
            precision: "f64".into(),
        }
    }
}

/// At most one of the three fields may be set. Scheduled mode ignores the
/// section; the other modes default to `ka = K / 4`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ActivitySection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ka: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    /// Zero-based users (grant-free) or columns (unsourced).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub users: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ReceiverSection {
    pub bp_iters: usize,
    pub outer_iters: usize,
    pub inner_iters: usize,
    pub degree_cap: usize,
    pub drop_over_cap: bool,
}

impl Default for ReceiverSection {
    fn default() -> Self {
        let t = TurboConfig::default();
        Self {
            bp_iters: t.bp_iters,
            outer_iters: t.outer_iters,
            inner_iters: t.mpa.inner_iters,
            degree_cap: t.mpa.degree_cap,
            drop_over_cap: t.mpa.drop_over_cap,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SweepSection {
    pub ebn0_grid: Vec<f64>,
    pub min_errors: usize,
    pub max_trials: usize,
    pub batch: usize,
    /// When set, `simulate` searches for the smallest `E_b/N_0` reaching
    /// this error probability instead of sweeping `ebn0_grid`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<f64>,
    pub search_lo: f64,
    pub search_hi: f64,
    pub search_step: f64,
}

impl Default for SweepSection {
    fn default() -> Self {
        let g = SearchGrid::default();
        let b = SweepBudget::default();
        Self {
            ebn0_grid: vec![0.0, 1.0, 2.0, 3.0, 4.0],
            min_errors: b.min_errors,
            max_trials: b.max_trials,
            batch: b.batch,
            target: None,
            search_lo: g.lo_db,
            search_hi: g.hi_db,
            search_step: g.step_db,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GraphSection {
    pub ka: Vec<usize>,
    pub seeds: usize,
}

impl Default for GraphSection {
    fn default() -> Self {
        Self {
            ka: Vec::new(),
            seeds: 200,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SpectralSection {
    pub gammas: Vec<usize>,
    pub rhos: Vec<usize>,
    /// Operating points in dB.
    pub x_db: Vec<f64>,
    /// `snr` (per-user SNR) or `ebn0` (sum-rate `E_b/N_0`).
    pub axis: String,
}

impl Default for SpectralSection {
    fn default() -> Self {
        Self {
            gammas: vec![3, 5, 7, 11, 13],
            rhos: vec![2],
            x_db: (0..=10).map(|i| f64::from(i) * 2.0 - 4.0).collect(),
            axis: "snr".into(),
        }
    }
}

fn config_err(e: impl std::fmt::Display) -> Error {
    Error::Config(e.to_string())
}

impl RunConfig {
    /// Parses a config file, or the `[config]` table of a run manifest.
    pub fn from_toml(text: &str) -> Result<Self> {
        let value: toml::Table = text.parse().map_err(config_err)?;
        if value.contains_key("manifest") {
            let cfg = value
                .get("config")
                .cloned()
                .ok_or_else(|| config_err("manifest without [config] table"))?;
            return cfg.try_into().map_err(config_err);
        }
        toml::Value::Table(value).try_into().map_err(config_err)
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(config_err)
    }

    pub fn method(&self) -> Result<ConstructionMethod> {
        self.design.method.parse()
    }

    pub fn mode(&self) -> Result<AccessMode> {
        self.channel.mode.parse()
    }

    pub fn use_f32(&self) -> Result<bool> {
        match self.channel.precision.as_str() {
            "f64" => Ok(false),
            "f32" => Ok(true),
            other => Err(config_err(format!(
                "precision must be f32 or f64, got '{other}'"
            ))),
        }
    }

    pub fn activity_spec(&self) -> Result<ActivitySpec> {
        let a = &self.activity;
        let set = usize::from(a.ka.is_some())
            + usize::from(a.alpha.is_some())
            + usize::from(a.users.is_some());
        if set > 1 {
            return Err(config_err("[activity] takes only one of ka, alpha, users"));
        }
        Ok(match (a.ka, a.alpha, &a.users) {
            (Some(ka), _, _) => ActivitySpec::Count(ka),
            (_, Some(alpha), _) => ActivitySpec::Probability(alpha),
            (_, _, Some(u)) => ActivitySpec::Fixed(u.clone()),
            _ => ActivitySpec::Count(self.design.gamma * self.design.gamma / 4),
        })
    }

    pub fn scenario(&self) -> Result<ScenarioConfig> {
        let r = &self.receiver;
        let cfg = ScenarioConfig {
            gamma: self.design.gamma,
            rho: self.design.rho,
            method: self.method()?,
            n: self.fec.n,
            w_c: self.fec.w_c,
            w_r: self.fec.w_r,
            code_seed: self.fec.code_seed,
            phase: self.design.phase.parse::<PhaseMode>()?,
            mode: self.mode()?,
            activity: self.activity_spec()?,
            receiver: ReceiverConfig {
                bp_iters: r.bp_iters,
                turbo: TurboConfig {
                    outer_iters: r.outer_iters,
                    mpa: MpaConfig {
                        inner_iters: r.inner_iters,
                        degree_cap: r.degree_cap,
                        drop_over_cap: r.drop_over_cap,
                    },
                    bp_iters: r.bp_iters,
                },
            },
            noiseless: self.channel.noiseless,
            seed: self.seed,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn budget(&self) -> SweepBudget {
        SweepBudget {
            min_errors: self.sweep.min_errors,
            max_trials: self.sweep.max_trials,
            batch: self.sweep.batch,
            fail_above: None,
        }
    }

    pub fn search_grid(&self) -> SearchGrid {
        SearchGrid {
            lo_db: self.sweep.search_lo,
            hi_db: self.sweep.search_hi,
            step_db: self.sweep.search_step,
        }
    }
}

/// Parses `"a,b,c"` or an inclusive range `"lo:step:hi"`.
pub fn parse_grid(s: &str) -> Result<Vec<f64>> {
    let num = |t: &str| {
        t.trim()
            .parse::<f64>()
            .map_err(|_| config_err(format!("bad number '{t}' in grid '{s}'")))
    };
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [lo, step, hi] => {
            let (lo, step, hi) = (num(lo)?, num(step)?, num(hi)?);
            if !(step > 0.0) || hi < lo {
                return Err(config_err(format!(
                    "grid '{s}' needs step > 0 and hi >= lo"
                )));
            }
            let count = ((hi - lo) / step + 1e-9).floor() as usize;
            Ok((0..=count).map(|i| lo + i as f64 * step).collect())
        }
        [_] => s.split(',').map(num).collect(),
        _ => Err(config_err(format!(
            "grid '{s}' is neither a list nor lo:step:hi"
        ))),
    }
}

/// Parses a comma separated list of integers.
pub fn parse_usize_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| config_err(format!("bad integer '{t}' in '{s}'")))
        })
        .collect()
}
