//! Symbol-level sum-product multiuser detection on the residual graph.
//!
//! For each symbol time the factor graph has one variable per remaining
//! column and one factor per check node it touches. A factor of degree `d`
//! marginalises the Gaussian likelihood over all `2^d` BPSK hypotheses in the
//! log domain.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{clamp_llr, Real};
use crate::signatures::SignatureMatrix;
use crate::sparse::BinaryMatrix;

pub const DEFAULT_DEGREE_CAP: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MpaConfig {
    pub inner_iters: usize,
    pub degree_cap: usize,
    /// Skip factors above the cap instead of failing.
    pub drop_over_cap: bool,
}

impl Default for MpaConfig {
    fn default() -> Self {
        Self {
            inner_iters: 4,
            degree_cap: DEFAULT_DEGREE_CAP,
            drop_over_cap: false,
        }
    }
}

struct Factor<T> {
    row: usize,
    // (variable index, effective gain √P·S)
    edges: Vec<(usize, Complex<T>)>,
}

/// Extrinsic symbol LLRs (posterior minus prior) for each column in
/// `columns`, indexed `[column position][symbol]`.
///
/// `priors` has the same layout; positive LLR favours symbol +1.
pub fn mpa_mud<T: Real>(
    y: &[Vec<Complex<T>>],
    f: &BinaryMatrix,
    columns: &[usize],
    s: &SignatureMatrix<T>,
    snr: T,
    priors: &[Vec<T>],
    cfg: &MpaConfig,
) -> Result<Vec<Vec<T>>> {
    let ell = y.first().map_or(0, Vec::len);
    if priors.len() != columns.len() || priors.iter().any(|p| p.len() != ell) {
        return Err(Error::DimensionMismatch(
            "prior LLRs do not match the residual users".into(),
        ));
    }
    let factors = build_factors(f, columns, s, snr, cfg)?;
    let nv = columns.len();
    // edges of each variable: (factor, slot)
    let mut var_edges: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv];
    for (fi, fac) in factors.iter().enumerate() {
        for (slot, &(v, _)) in fac.edges.iter().enumerate() {
            var_edges[v].push((fi, slot));
        }
    }
    let limit = T::lit(crate::fec::LLR_LIMIT);
    let max_d = factors.iter().map(|f| f.edges.len()).max().unwrap_or(0);
    let mut scratch = Scratch::new(max_d);
    let mut v2c: Vec<Vec<T>> = factors
        .iter()
        .map(|f| vec![T::zero(); f.edges.len()])
        .collect();
    let mut c2v = v2c.clone();
    let mut out = vec![vec![T::zero(); ell]; nv];

    for t in 0..ell {
        for fac_msgs in v2c.iter_mut().zip(&factors) {
            let (msgs, fac) = fac_msgs;
            for (m, &(v, _)) in msgs.iter_mut().zip(&fac.edges) {
                *m = priors[v][t];
            }
        }
        for it in 0..cfg.inner_iters.max(1) {
            for (fi, fac) in factors.iter().enumerate() {
                factor_update(
                    y[fac.row][t],
                    &fac.edges,
                    &v2c[fi],
                    &mut c2v[fi],
                    &mut scratch,
                    limit,
                );
            }
            if it + 1 == cfg.inner_iters.max(1) {
                break;
            }
            for (v, edges) in var_edges.iter().enumerate() {
                let total: T = priors[v][t] + edges.iter().map(|&(fi, sl)| c2v[fi][sl]).sum::<T>();
                for &(fi, sl) in edges {
                    v2c[fi][sl] = clamp_llr(total - c2v[fi][sl], limit);
                }
            }
        }
        for (v, edges) in var_edges.iter().enumerate() {
            out[v][t] = edges.iter().map(|&(fi, sl)| c2v[fi][sl]).sum();
        }
    }
    Ok(out)
}

fn build_factors<T: Real>(
    f: &BinaryMatrix,
    columns: &[usize],
    s: &SignatureMatrix<T>,
    snr: T,
    cfg: &MpaConfig,
) -> Result<Vec<Factor<T>>> {
    let mut pos = vec![usize::MAX; f.ncols()];
    for (i, &c) in columns.iter().enumerate() {
        pos[c] = i;
    }
    let amp = snr.sqrt();
    let mut factors = Vec::new();
    for row in 0..f.nrows() {
        let edges: Vec<(usize, Complex<T>)> = f
            .row(row)
            .iter()
            .filter(|&&c| pos[c] != usize::MAX)
            .map(|&c| (pos[c], s.entry(row, c) * amp))
            .collect();
        if edges.is_empty() {
            continue;
        }
        if edges.len() > cfg.degree_cap {
            if cfg.drop_over_cap {
                continue;
            }
            return Err(Error::DegreeCapExceeded {
                check: row,
                degree: edges.len(),
                cap: cfg.degree_cap,
            });
        }
        factors.push(Factor { row, edges });
    }
    Ok(factors)
}

struct Scratch<T> {
    metric: Vec<T>,
    plus: Vec<T>,
    minus: Vec<T>,
}

impl<T: Real> Scratch<T> {
    fn new(max_d: usize) -> Self {
        Self {
            metric: vec![T::zero(); 1 << max_d],
            plus: vec![T::zero(); max_d],
            minus: vec![T::zero(); max_d],
        }
    }
}

// Bit i of a hypothesis set means symbol i is -1. Hypotheses are visited in
// Gray order so each step flips one symbol of the running residual.
fn factor_update<T: Real>(
    y: Complex<T>,
    edges: &[(usize, Complex<T>)],
    incoming: &[T],
    outgoing: &mut [T],
    sc: &mut Scratch<T>,
    limit: T,
) {
    let d = edges.len();
    let half = T::lit(0.5);
    let two = T::lit(2.0);
    let mut z = y;
    let mut prior = T::zero();
    for (i, &(_, g)) in edges.iter().enumerate() {
        z -= g;
        prior += incoming[i] * half;
    }
    let n_hyp = 1usize << d;
    let mut best = T::neg_infinity();
    let mut state = 0usize;
    for k in 0..n_hyp {
        if k > 0 {
            let i = k.trailing_zeros() as usize;
            state ^= 1 << i;
            let g = edges[i].1;
            if state >> i & 1 == 1 {
                z += g * two;
                prior -= incoming[i];
            } else {
                z -= g * two;
                prior += incoming[i];
            }
        }
        let m = prior - z.norm_sqr();
        sc.metric[state] = m;
        if m > best {
            best = m;
        }
    }
    sc.plus[..d].iter_mut().for_each(|x| *x = T::zero());
    sc.minus[..d].iter_mut().for_each(|x| *x = T::zero());
    for h in 0..n_hyp {
        let w = (sc.metric[h] - best).exp();
        for i in 0..d {
            if h >> i & 1 == 0 {
                sc.plus[i] += w;
            } else {
                sc.minus[i] += w;
            }
        }
    }
    for i in 0..d {
        let lr = sc.plus[i].ln() - sc.minus[i].ln() - incoming[i];
        outgoing[i] = clamp_llr(lr, limit);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_one_factor_is_matched_filter() {
        let mut sc = Scratch::new(1);
        let g = Complex::new(0.6, -0.3);
        let y = Complex::new(0.2, 0.9);
        let mut out = [0.0f64];
        factor_update(y, &[(0, g)], &[1.7], &mut out, &mut sc, 30.0);
        let want = 4.0 * (g.conj() * y).re;
        assert!((out[0] - want).abs() < 1e-12);
    }

    #[test]
    fn two_user_factor_matches_brute_force() {
        let mut sc = Scratch::new(2);
        let g = [Complex::new(0.7, 0.1), Complex::new(-0.2, 0.5)];
        let y = Complex::new(0.4, -0.3);
        let pri = [0.8f64, -1.1];
        let mut out = [0.0f64; 2];
        factor_update(y, &[(0, g[0]), (1, g[1])], &pri, &mut out, &mut sc, 30.0);
        for i in 0..2 {
            let (mut p, mut m) = (0.0f64, 0.0f64);
            for x0 in [1.0f64, -1.0] {
                for x1 in [1.0, -1.0] {
                    let x = [x0, x1];
                    let other = 1 - i;
                    let w = (-(y - g[0] * x0 - g[1] * x1).norm_sqr() + x[other] * pri[other] / 2.0)
                        .exp();
                    if x[i] > 0.0 {
                        p += w;
                    } else {
                        m += w;
                    }
                }
            }
            assert!((out[i] - (p / m).ln()).abs() < 1e-10);
        }
    }
}
