//! Complex spreading signatures `S = F·D⁻¹·Φ` and their capacity metrics.

mod eigen;

use std::f64::consts::TAU;
use std::str::FromStr;

use num_complex::Complex;
use rand::Rng;

use crate::error::{invalid, Error, Result};
use crate::euler::SparseMapping;
use crate::rng::{stream, tag};
use crate::scalar::Real;

pub use eigen::{hermitian_eigenvalues, symmetric_eigenvalues};

/// How the per-user phasors `φ_k` are chosen.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PhaseMode {
    /// `φ_k = 1`.
    None,
    /// i.i.d. uniform on the unit circle, drawn from the seed.
    #[default]
    UniformRandom,
    /// `φ_k = exp(2πi·k/K)`.
    EvenlySpaced,
}

impl FromStr for PhaseMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "none" => Ok(Self::None),
            "uniform" | "uniform-random" | "random" => Ok(Self::UniformRandom),
            "even" | "evenly-spaced" => Ok(Self::EvenlySpaced),
            other => Err(invalid(format!("unknown phase mode '{other}'"))),
        }
    }
}

impl PhaseMode {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::None => "none",
            Self::UniformRandom => "uniform-random",
            Self::EvenlySpaced => "evenly-spaced",
        }
    }
}

/// Column-sparse complex signature matrix of shape `n_s × K`.
#[derive(Clone, Debug, PartialEq)]
pub struct SignatureMatrix<T> {
    n_s: usize,
    columns: Vec<Vec<(usize, Complex<T>)>>,
    phases: Vec<Complex<T>>,
    mode: PhaseMode,
    seed: u64,
}

pub fn build_signatures<T: Real>(
    f: &SparseMapping,
    mode: PhaseMode,
    seed: u64,
) -> SignatureMatrix<T> {
    let k = f.num_users();
    let phases: Vec<Complex<T>> = match mode {
        PhaseMode::None => vec![Complex::new(T::one(), T::zero()); k],
        PhaseMode::UniformRandom => {
            let mut rng = stream(seed, tag::PHASES, 0);
            (0..k)
                .map(|_| Complex::from_polar(T::one(), T::lit(rng.random::<f64>() * TAU)))
                .collect()
        }
        PhaseMode::EvenlySpaced => (0..k)
            .map(|i| Complex::from_polar(T::one(), T::lit(TAU * i as f64 / k as f64)))
            .collect(),
    };
    SignatureMatrix::from_mapping_with_phases(f, phases, mode, seed)
}

impl<T: Real> SignatureMatrix<T> {
    fn from_mapping_with_phases(
        f: &SparseMapping,
        phases: Vec<Complex<T>>,
        mode: PhaseMode,
        seed: u64,
    ) -> Self {
        let m = f.matrix();
        let columns = (0..m.ncols())
            .map(|c| {
                let support = m.col(c);
                let scale = T::one() / T::lit(support.len() as f64).sqrt();
                support.iter().map(|&r| (r, phases[c] * scale)).collect()
            })
            .collect();
        Self {
            n_s: m.nrows(),
            columns,
            phases,
            mode,
            seed,
        }
    }

    /// Signatures with caller-supplied unit phasors.
    pub fn with_phases(f: &SparseMapping, phases: Vec<Complex<T>>) -> Result<Self> {
        if phases.len() != f.num_users() {
            return Err(Error::DimensionMismatch(format!(
                "{} phases for {} users",
                phases.len(),
                f.num_users()
            )));
        }
        Ok(Self::from_mapping_with_phases(
            f,
            phases,
            PhaseMode::None,
            0,
        ))
    }

    /// Arbitrary dense matrix, mainly for tests and reference spreading.
    pub fn from_dense(dense: &[Vec<Complex<T>>]) -> Result<Self> {
        let n_s = dense.len();
        let k = dense.first().map_or(0, Vec::len);
        if dense.iter().any(|r| r.len() != k) {
            return Err(Error::DimensionMismatch("ragged signature rows".into()));
        }
        let columns = (0..k)
            .map(|c| {
                (0..n_s)
                    .filter(|&r| dense[r][c] != Complex::default())
                    .map(|r| (r, dense[r][c]))
                    .collect()
            })
            .collect();
        let phases = vec![Complex::new(T::one(), T::zero()); k];
        Ok(Self {
            n_s,
            columns,
            phases,
            mode: PhaseMode::None,
            seed: 0,
        })
    }

    /// `n × n` identity: orthogonal reference spreading.
    pub fn identity(n: usize) -> Self {
        let columns = (0..n)
            .map(|c| vec![(c, Complex::new(T::one(), T::zero()))])
            .collect();
        Self {
            n_s: n,
            columns,
            phases: vec![Complex::new(T::one(), T::zero()); n],
            mode: PhaseMode::None,
            seed: 0,
        }
    }

    pub fn n_s(&self) -> usize {
        self.n_s
    }

    pub fn num_users(&self) -> usize {
        self.columns.len()
    }

    /// Nonzero `(row, value)` pairs of column `k`.
    pub fn column(&self, k: usize) -> &[(usize, Complex<T>)] {
        &self.columns[k]
    }

    pub fn entry(&self, row: usize, k: usize) -> Complex<T> {
        self.columns[k]
            .iter()
            .find(|(r, _)| *r == row)
            .map_or_else(Complex::default, |&(_, v)| v)
    }

    pub fn phase(&self, k: usize) -> Complex<T> {
        self.phases[k]
    }

    pub fn phase_mode(&self) -> PhaseMode {
        self.mode
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn column_norm(&self, k: usize) -> T {
        self.columns[k]
            .iter()
            .map(|(_, v)| v.norm_sqr())
            .sum::<T>()
            .sqrt()
    }

    pub fn to_dense(&self) -> Vec<Vec<Complex<T>>> {
        let mut d = vec![vec![Complex::default(); self.num_users()]; self.n_s];
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                d[r][c] = v;
            }
        }
        d
    }

    /// Dense Gram matrix `S·Sᴴ` (`n_s × n_s`).
    pub fn gram(&self) -> Vec<Vec<Complex<T>>> {
        let mut g = vec![vec![Complex::default(); self.n_s]; self.n_s];
        for col in &self.columns {
            for &(r, a) in col {
                for &(q, b) in col {
                    g[r][q] += a * b.conj();
                }
            }
        }
        g
    }

    pub fn gram_eigenvalues(&self) -> Result<Vec<T>> {
        hermitian_eigenvalues(&self.gram())
    }
}

/// Achievable sum throughput per resource element,
/// `(1/n_s)·Σ log₂(1 + snr·λ_i(S·Sᴴ))`.
pub fn spectral_efficiency<T: Real>(s: &SignatureMatrix<T>, snr: T) -> Result<T> {
    if !(snr >= T::zero()) {
        return Err(invalid(format!("snr must be non-negative, got {snr}")));
    }
    if s.n_s() == 0 {
        return Ok(T::zero());
    }
    let ev = s.gram_eigenvalues()?;
    let total: T = ev
        .iter()
        .map(|&l| (T::one() + snr * l.max(T::zero())).log2())
        .sum();
    Ok(total / T::lit(s.n_s() as f64))
}

/// Cover-Wyner sum-capacity per dimension, `log₂(1 + β·snr)`.
pub fn cover_wyner<T: Real>(beta: T, snr: T) -> Result<T> {
    if !(beta > T::zero()) || !(snr >= T::zero()) {
        return Err(invalid(format!(
            "need beta > 0 and snr >= 0, got beta={beta}, snr={snr}"
        )));
    }
    Ok((T::one() + beta * snr).log2())
}
