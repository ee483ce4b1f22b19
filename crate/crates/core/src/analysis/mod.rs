//! Monte-Carlo experiment drivers and their CSV output.

pub mod csv;
mod degree;
mod required;
mod scenario;
mod spectral;
pub mod stats;
mod sweep;

pub use degree::{degree_histogram_experiment, DegreePanel};
pub use required::{required_ebn0, RequiredResult, SearchGrid};
pub use scenario::{run_trial, ScenarioConfig, TrialResult};
pub use spectral::{spectral_efficiency_curve, SnrAxis, SpectralRow};
pub use sweep::{pe_point, pe_sweep, SweepBudget, SweepPoint, SweepResult};
