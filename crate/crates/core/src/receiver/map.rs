//! Exhaustive maximum a posteriori detection, used as a reference for the
//! message-passing detector.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::signatures::SignatureMatrix;

/// Hypothesis budget shared by both detectors.
pub const DEFAULT_MAP_BUDGET: u64 = 1 << 20;

fn rows_touched<T: Real>(s: &SignatureMatrix<T>, columns: &[usize]) -> Vec<usize> {
    let mut rows: Vec<usize> = columns
        .iter()
        .flat_map(|&c| s.column(c).iter().map(|&(r, _)| r))
        .collect();
    rows.sort_unstable();
    rows.dedup();
    rows
}

/// Symbol-wise posterior LLRs of uncoded BPSK under uniform priors,
/// indexed `[column position][symbol]`. Every symbol time enumerates all
/// `2^{K_a}` sign patterns.
pub fn exact_map_llrs<T: Real>(
    y: &[Vec<Complex<T>>],
    s: &SignatureMatrix<T>,
    columns: &[usize],
    snr: T,
    budget: u64,
) -> Result<Vec<Vec<T>>> {
    let ka = columns.len();
    if ka >= 63 || (1u64 << ka) > budget {
        return Err(Error::BudgetExceeded { budget });
    }
    let ell = y.first().map_or(0, Vec::len);
    let rows = rows_touched(s, columns);
    let amp = snr.sqrt();
    let gains: Vec<Vec<Complex<T>>> = columns
        .iter()
        .map(|&c| rows.iter().map(|&r| s.entry(r, c) * amp).collect())
        .collect();
    let n_hyp = 1usize << ka;
    let mut metric = vec![T::zero(); n_hyp];
    let mut out = vec![vec![T::zero(); ell]; ka];
    for t in 0..ell {
        let mut best = T::neg_infinity();
        for (h, m) in metric.iter_mut().enumerate() {
            let mut acc = T::zero();
            for (ri, &r) in rows.iter().enumerate() {
                let mut z = y[r][t];
                for (i, g) in gains.iter().enumerate() {
                    if h >> i & 1 == 0 {
                        z -= g[ri];
                    } else {
                        z += g[ri];
                    }
                }
                acc += z.norm_sqr();
            }
            *m = -acc;
            best = best.max(*m);
        }
        for (i, o) in out.iter_mut().enumerate() {
            let (mut p, mut q) = (T::zero(), T::zero());
            for (h, &m) in metric.iter().enumerate() {
                let w = (m - best).exp();
                if h >> i & 1 == 0 {
                    p += w;
                } else {
                    q += w;
                }
            }
            o[t] = p.ln() - q.ln();
        }
    }
    Ok(out)
}

/// Hard decisions of [`exact_map_llrs`] as bits (1 for symbol -1).
pub fn exact_map_symbols<T: Real>(
    y: &[Vec<Complex<T>>],
    s: &SignatureMatrix<T>,
    columns: &[usize],
    snr: T,
    budget: u64,
) -> Result<Vec<Vec<u8>>> {
    Ok(exact_map_llrs(y, s, columns, snr, budget)?
        .into_iter()
        .map(|l| l.into_iter().map(|x| u8::from(x < T::zero())).collect())
        .collect())
}

/// Joint MAP over whole transmitted sequences: each column sends one of the
/// `alphabet` sequences with equal probability. Returns the chosen index per
/// column.
pub fn exact_map_sequences<T: Real>(
    y: &[Vec<Complex<T>>],
    s: &SignatureMatrix<T>,
    columns: &[usize],
    snr: T,
    alphabet: &[Vec<Complex<T>>],
    budget: u64,
) -> Result<Vec<usize>> {
    let q = alphabet.len() as u64;
    let total =
        (0..columns.len()).try_fold(1u64, |acc, _| acc.checked_mul(q).filter(|&x| x <= budget));
    let Some(total) = total else {
        return Err(Error::BudgetExceeded { budget });
    };
    let rows = rows_touched(s, columns);
    let amp = snr.sqrt();
    let mut best = (T::infinity(), vec![0; columns.len()]);
    let mut choice = vec![0usize; columns.len()];
    for idx in 0..total {
        let mut rest = idx;
        for c in choice.iter_mut() {
            *c = (rest % q) as usize;
            rest /= q;
        }
        let mut dist = T::zero();
        for &r in &rows {
            for (t, &yv) in y[r].iter().enumerate() {
                let mut z = yv;
                for (&col, &a) in columns.iter().zip(&choice) {
                    z -= s.entry(r, col) * amp * alphabet[a][t];
                }
                dist += z.norm_sqr();
            }
        }
        if dist < best.0 {
            best = (dist, choice.clone());
        }
    }
    Ok(best.1)
}
