//! Turbo exchange between the multiuser detector and the per-user decoders.

use num_complex::Complex;

use crate::channel::Scenario;
use crate::error::Result;
use crate::fec::bp_decode;
use crate::scalar::Real;

use super::mpa::{mpa_mud, MpaConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TurboConfig {
    /// Extra detector/decoder passes after the first one.
    pub outer_iters: usize,
    pub mpa: MpaConfig,
    pub bp_iters: usize,
}

impl Default for TurboConfig {
    fn default() -> Self {
        Self {
            outer_iters: 3,
            mpa: MpaConfig {
                drop_over_cap: true,
                ..MpaConfig::default()
            },
            bp_iters: 50,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct TurboResult {
    pub columns: Vec<usize>,
    /// Decoded codeword per column when its parity checks passed.
    pub codewords: Vec<Option<Vec<u8>>>,
    pub passes: usize,
    /// Number of columns passing parity after each pass.
    pub parity_ok_per_pass: Vec<usize>,
}

pub fn turbo_receive<T: Real>(
    sc: &Scenario<T>,
    y: &[Vec<Complex<T>>],
    columns: &[usize],
    snr: T,
    cfg: &TurboConfig,
) -> Result<TurboResult> {
    let mut res = TurboResult {
        columns: columns.to_vec(),
        codewords: vec![None; columns.len()],
        ..Default::default()
    };
    if columns.is_empty() {
        return Ok(res);
    }
    let ell = sc.ell();
    let mut priors = vec![vec![T::zero(); ell]; columns.len()];
    for _ in 0..=cfg.outer_iters {
        res.passes += 1;
        let ext = mpa_mud(
            y,
            sc.mapping().matrix(),
            columns,
            sc.signatures(),
            snr,
            &priors,
            &cfg.mpa,
        )?;
        let mut ok = 0;
        for (i, &c) in columns.iter().enumerate() {
            let il = sc.interleaver(c);
            let out = bp_decode(sc.code(), &il.deinterleave(&ext[i]), cfg.bp_iters)?;
            if out.parity_ok {
                ok += 1;
                res.codewords[i] = Some(out.hard_bits);
            } else {
                res.codewords[i] = None;
            }
            priors[i] = il.interleave(&out.llr_extrinsic);
        }
        res.parity_ok_per_pass.push(ok);
        if ok == columns.len() {
            break;
        }
    }
    Ok(res)
}
