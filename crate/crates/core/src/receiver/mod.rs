//! Receiver chain: pruning, peeling with block-wise cancellation, then
//! turbo-iterated message-passing detection on whatever peeling leaves.
//!
//! Activity is genie-aided: the receiver is told which signature columns
//! are occupied, not which user occupies them.

mod accounting;
mod graph;
mod map;
mod mpa;
mod peel;
mod structural;
mod trace;
mod turbo;

use num_complex::Complex;

use crate::channel::Scenario;
use crate::error::Result;
use crate::scalar::Real;

pub use accounting::{account_errors, ErrorCounts};
pub use graph::{prune_and_classify, CheckClass, PrunedGraph};
pub use map::{exact_map_llrs, exact_map_sequences, exact_map_symbols, DEFAULT_MAP_BUDGET};
pub use mpa::{mpa_mud, MpaConfig, DEFAULT_DEGREE_CAP};
pub use peel::{peel, single_ton_llrs, DecodedColumn, PeelResult};
pub use structural::{peel_structural, StructuralTrace};
pub use trace::format_trace;
pub use turbo::{turbo_receive, TurboConfig, TurboResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReceiverConfig {
    /// BP iterations for decodes made during peeling.
    pub bp_iters: usize,
    pub turbo: TurboConfig,
}

impl Default for ReceiverConfig {
    fn default() -> Self {
        Self {
            bp_iters: 50,
            turbo: TurboConfig::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnDecision {
    pub column: usize,
    /// `None` when no parity-consistent codeword was found.
    pub message: Option<Vec<u8>>,
    pub peeled: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DecodeOutcome {
    /// One entry per occupied column, ascending.
    pub decisions: Vec<ColumnDecision>,
    pub peeled_per_iteration: Vec<Vec<usize>>,
    pub histogram_before: Vec<usize>,
    pub histogram_after: Vec<usize>,
    /// Columns handed to the turbo stage.
    pub residual: Vec<usize>,
    pub turbo_passes: usize,
    pub turbo_parity_ok: Vec<usize>,
}

impl DecodeOutcome {
    pub fn message_for(&self, column: usize) -> Option<&[u8]> {
        self.decisions
            .binary_search_by_key(&column, |d| d.column)
            .ok()
            .and_then(|i| self.decisions[i].message.as_deref())
    }

    pub fn peeled(&self) -> usize {
        self.peeled_per_iteration.iter().map(Vec::len).sum()
    }

    pub fn peeled_fraction(&self) -> f64 {
        if self.decisions.is_empty() {
            0.0
        } else {
            self.peeled() as f64 / self.decisions.len() as f64
        }
    }

    pub fn peel_iterations(&self) -> usize {
        self.peeled_per_iteration.len()
    }
}

/// Full receiver on the occupied `columns` of `y`.
pub fn receive<T: Real>(
    sc: &Scenario<T>,
    y: &[Vec<Complex<T>>],
    columns: &[usize],
    snr: T,
    cfg: &ReceiverConfig,
) -> Result<DecodeOutcome> {
    let p = peel(sc, y, columns, snr, cfg.bp_iters)?;
    let t = turbo_receive(sc, &p.residual_y, &p.remaining, snr, &cfg.turbo)?;
    let mut decisions: Vec<ColumnDecision> = p
        .decoded
        .iter()
        .map(|d| ColumnDecision {
            column: d.column,
            message: Some(d.message.clone()),
            peeled: true,
        })
        .chain(
            t.columns
                .iter()
                .zip(&t.codewords)
                .map(|(&c, cw)| ColumnDecision {
                    column: c,
                    message: cw.as_ref().map(|cw| sc.code().extract_message(cw)),
                    peeled: false,
                }),
        )
        .collect();
    decisions.sort_unstable_by_key(|d| d.column);
    decisions.dedup_by_key(|d| d.column);
    Ok(DecodeOutcome {
        decisions,
        peeled_per_iteration: p.peeled_per_iteration,
        histogram_before: p.histogram_before,
        histogram_after: p.histogram_after,
        residual: p.remaining,
        turbo_passes: t.passes,
        turbo_parity_ok: t.parity_ok_per_pass,
    })
}
