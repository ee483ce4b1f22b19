//! Peeling with block-wise interference cancellation.

use std::collections::HashMap;

use num_complex::Complex;

use crate::channel::Scenario;
use crate::error::Result;
use crate::fec::bp_decode;
use crate::scalar::{clamp_llr, Real};

use super::graph::PrunedGraph;

/// A column whose FEC decode passed all parity checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodedColumn {
    pub column: usize,
    pub codeword: Vec<u8>,
    pub message: Vec<u8>,
}

#[derive(Clone, Debug)]
pub struct PeelResult<T> {
    /// Successfully decoded and cancelled columns, in peeling order.
    pub decoded: Vec<DecodedColumn>,
    /// Columns cancelled in each iteration that attempted at least one decode.
    pub peeled_per_iteration: Vec<Vec<usize>>,
    pub residual_y: Vec<Vec<Complex<T>>>,
    /// Columns left for the multiuser detector.
    pub remaining: Vec<usize>,
    pub histogram_before: Vec<usize>,
    pub histogram_after: Vec<usize>,
}

impl<T> PeelResult<T> {
    pub fn iterations(&self) -> usize {
        self.peeled_per_iteration.len()
    }
}

/// Matched-filter LLRs of one column over its single-ton rows, combined
/// additively (positive favours bit 0), in transmitted symbol order.
pub fn single_ton_llrs<T: Real>(
    sc: &Scenario<T>,
    y: &[Vec<Complex<T>>],
    column: usize,
    rows: &[usize],
    snr: T,
) -> Vec<T> {
    let amp = snr.sqrt();
    let four = T::lit(4.0);
    let mut llr = vec![T::zero(); sc.ell()];
    for &r in rows {
        let g = sc.signatures().entry(r, column) * amp;
        for (l, &yv) in llr.iter_mut().zip(&y[r]) {
            *l += four * (g.conj() * yv).re;
        }
    }
    llr
}

/// Runs the peeling loop on `active` columns of `y`.
///
/// A column touching a single-ton is decoded from its single-ton rows; it is
/// cancelled from every row it occupies only if all parity checks pass.
/// A failed column is retried only once it gains further single-tons.
pub fn peel<T: Real>(
    sc: &Scenario<T>,
    y: &[Vec<Complex<T>>],
    active: &[usize],
    snr: T,
    bp_iters: usize,
) -> Result<PeelResult<T>> {
    let mut g = PrunedGraph::new(sc.mapping().matrix(), active);
    let histogram_before = g.degree_histogram();
    let mut residual = y.to_vec();
    let mut failed: HashMap<usize, usize> = HashMap::new();
    let mut decoded = Vec::new();
    let mut peeled_per_iteration = Vec::new();
    let amp = snr.sqrt();
    let limit = T::lit(crate::fec::LLR_LIMIT);
    loop {
        let mut attempts: Vec<(usize, Vec<usize>)> = g
            .single_ton_users()
            .into_iter()
            .map(|c| (c, g.single_ton_checks(c)))
            .filter(|(c, rows)| failed.get(c).is_none_or(|&n| rows.len() > n))
            .collect();
        if attempts.is_empty() {
            break;
        }
        attempts.sort_unstable_by_key(|(c, _)| *c);
        let mut peeled_now = Vec::new();
        for (c, rows) in attempts {
            let llr: Vec<T> = single_ton_llrs(sc, &residual, c, &rows, snr)
                .into_iter()
                .map(|x| clamp_llr(x, limit))
                .collect();
            let out = bp_decode(sc.code(), &sc.interleaver(c).deinterleave(&llr), bp_iters)?;
            if !out.parity_ok {
                failed.insert(c, rows.len());
                continue;
            }
            let symbols = sc.codeword_symbols(c, &out.hard_bits);
            sc.superimpose(&mut residual, c, &symbols, -amp);
            decoded.push(DecodedColumn {
                column: c,
                message: sc.code().extract_message(&out.hard_bits),
                codeword: out.hard_bits,
            });
            peeled_now.push(c);
        }
        peeled_now.iter().for_each(|&c| g.remove(c));
        peeled_per_iteration.push(peeled_now);
    }
    // trailing iterations that cancelled nothing carry no information
    while peeled_per_iteration.last().is_some_and(Vec::is_empty) {
        peeled_per_iteration.pop();
    }
    Ok(PeelResult {
        decoded,
        peeled_per_iteration,
        residual_y: residual,
        remaining: g.active().to_vec(),
        histogram_before,
        histogram_after: g.degree_histogram(),
    })
}
