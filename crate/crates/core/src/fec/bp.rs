//! Flooding sum-product decoder with the exact tanh check rule.

use crate::error::{Error, Result};
use crate::scalar::{clamp_llr, Real};

use super::code::LdpcCode;

/// Magnitude limit applied to every internal message.
pub const LLR_LIMIT: f64 = 30.0;

#[derive(Clone, Debug, PartialEq)]
pub struct BpOutput<T> {
    pub llr_posterior: Vec<T>,
    /// Sum of the incoming check messages; `llr_posterior = llr_in + llr_extrinsic`.
    pub llr_extrinsic: Vec<T>,
    pub hard_bits: Vec<u8>,
    pub parity_ok: bool,
    pub iters_used: usize,
}

// odd-symmetric atanh so that decoding commutes with sign flips
fn atanh_odd<T: Real>(x: T) -> T {
    let a = x.abs();
    let r = T::lit(0.5) * ((a + a) / (T::one() - a)).ln_1p();
    if x < T::zero() {
        -r
    } else {
        r
    }
}

fn tanh_odd<T: Real>(x: T) -> T {
    let r = x.abs().tanh();
    if x < T::zero() {
        -r
    } else {
        r
    }
}

fn hard_decision<T: Real>(llr: &[T]) -> (Vec<u8>, bool) {
    let mut any_zero = false;
    let bits = llr
        .iter()
        .map(|&x| {
            any_zero |= x == T::zero() || x.is_nan();
            u8::from(x < T::zero())
        })
        .collect();
    (bits, !any_zero)
}

/// Sum-product decoding of `llr_in` (positive favours bit 0).
///
/// Returns immediately with zero extrinsic information when the input hard
/// decision is already a codeword. `parity_ok` also requires every posterior
/// LLR to be nonzero, so an input carrying no information never passes.
pub fn bp_decode<T: Real>(code: &LdpcCode, llr_in: &[T], max_iters: usize) -> Result<BpOutput<T>> {
    let h = code.parity_matrix();
    let n = code.n();
    if llr_in.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "{} LLRs for a length-{n} code",
            llr_in.len()
        )));
    }
    let limit = T::lit(LLR_LIMIT);
    let (bits, decisive) = hard_decision(llr_in);
    if decisive && code.is_codeword(&bits) {
        return Ok(BpOutput {
            llr_posterior: llr_in.to_vec(),
            llr_extrinsic: vec![T::zero(); n],
            hard_bits: bits,
            parity_ok: true,
            iters_used: 0,
        });
    }

    // edges in check order
    let m = h.nrows();
    let mut check_start = Vec::with_capacity(m + 1);
    let mut edge_var = Vec::with_capacity(h.nnz());
    check_start.push(0);
    for r in 0..m {
        edge_var.extend_from_slice(h.row(r));
        check_start.push(edge_var.len());
    }
    let ne = edge_var.len();
    let mut v2c: Vec<T> = edge_var
        .iter()
        .map(|&v| clamp_llr(llr_in[v], limit))
        .collect();
    let mut c2v = vec![T::zero(); ne];
    let mut extrinsic = vec![T::zero(); n];
    let mut posterior = llr_in.to_vec();
    let mut hard = bits;
    let mut parity_ok = false;
    let mut iters_used = 0;
    let max_deg = (0..m).map(|r| h.row_weight(r)).max().unwrap_or(0);
    let mut t = vec![T::zero(); max_deg];
    let mut suffix = vec![T::zero(); max_deg + 1];
    let half = T::lit(0.5);
    let two = T::lit(2.0);

    for it in 1..=max_iters {
        iters_used = it;
        for r in 0..m {
            let (lo, hi) = (check_start[r], check_start[r + 1]);
            let d = hi - lo;
            for i in 0..d {
                t[i] = tanh_odd(v2c[lo + i] * half);
            }
            suffix[d] = T::one();
            for i in (0..d).rev() {
                suffix[i] = suffix[i + 1] * t[i];
            }
            let mut prefix = T::one();
            for i in 0..d {
                c2v[lo + i] = clamp_llr(two * atanh_odd(prefix * suffix[i + 1]), limit);
                prefix *= t[i];
            }
        }
        extrinsic.iter_mut().for_each(|x| *x = T::zero());
        for (e, &v) in edge_var.iter().enumerate() {
            extrinsic[v] += c2v[e];
        }
        for v in 0..n {
            posterior[v] = llr_in[v] + extrinsic[v];
        }
        let (b, decisive) = hard_decision(&posterior);
        hard = b;
        if decisive && code.is_codeword(&hard) {
            parity_ok = true;
            break;
        }
        for (e, &v) in edge_var.iter().enumerate() {
            v2c[e] = clamp_llr(posterior[v] - c2v[e], limit);
        }
    }
    Ok(BpOutput {
        llr_posterior: posterior,
        llr_extrinsic: extrinsic,
        hard_bits: hard,
        parity_ok,
        iters_used,
    })
}
