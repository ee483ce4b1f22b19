//! Activation, coded BPSK modulation and the superposition Gaussian
//! multiple access channel `Y = Σ √P·s_c(k)·b_kᵀ + W`.

use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex;
use rand::seq::index;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{invalid, Error, Result};
use crate::euler::SparseMapping;
use crate::fec::{Interleaver, LdpcCode};
use crate::rng::{stream, tag};
use crate::scalar::Real;
use crate::signatures::SignatureMatrix;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum AccessMode {
    /// All `K` users transmit.
    #[default]
    Scheduled,
    /// A random subset transmits on its own signature.
    GrantFree,
    /// Active users pick a signature column uniformly, collisions allowed.
    Unsourced,
}

impl FromStr for AccessMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "scheduled" => Ok(Self::Scheduled),
            "grant-free" | "grantfree" => Ok(Self::GrantFree),
            "unsourced" => Ok(Self::Unsourced),
            other => Err(invalid(format!("unknown access mode '{other}'"))),
        }
    }
}

impl AccessMode {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Scheduled => "scheduled",
            Self::GrantFree => "grant-free",
            Self::Unsourced => "unsourced",
        }
    }
}

/// How the set of active users is drawn in each trial.
#[derive(Clone, Debug, PartialEq)]
pub enum ActivitySpec {
    /// Exactly `K_a` active users.
    Count(usize),
    /// Each user active independently with probability `α`.
    Probability(f64),
    /// Fixed users (grant-free) or fixed column choices (unsourced).
    Fixed(Vec<usize>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ActiveUser {
    pub id: usize,
    /// Signature column the user transmits on.
    pub column: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Activity {
    pub users: Vec<ActiveUser>,
}

impl Activity {
    pub fn len(&self) -> usize {
        self.users.len()
    }

    pub fn is_empty(&self) -> bool {
        self.users.is_empty()
    }

    /// Distinct occupied columns, ascending.
    pub fn columns(&self) -> Vec<usize> {
        let mut c: Vec<usize> = self.users.iter().map(|u| u.column).collect();
        c.sort_unstable();
        c.dedup();
        c
    }

    /// Activity indicator over `k` columns.
    pub fn indicator(&self, k: usize) -> Vec<bool> {
        let mut a = vec![false; k];
        self.users.iter().for_each(|u| a[u.column] = true);
        a
    }

    /// Users sharing their column with another user.
    pub fn colliding_users(&self) -> Vec<usize> {
        let mut per_column = std::collections::HashMap::<usize, usize>::new();
        for u in &self.users {
            *per_column.entry(u.column).or_default() += 1;
        }
        self.users
            .iter()
            .filter(|u| per_column[&u.column] > 1)
            .map(|u| u.id)
            .collect()
    }
}

pub fn sample_activity(
    k: usize,
    mode: AccessMode,
    spec: &ActivitySpec,
    rng: &mut impl Rng,
) -> Result<Activity> {
    let users = match (mode, spec) {
        (AccessMode::Scheduled, _) => (0..k).map(|i| ActiveUser { id: i, column: i }).collect(),
        (AccessMode::GrantFree, ActivitySpec::Count(ka)) => {
            if *ka > k {
                return Err(invalid(format!("K_a = {ka} exceeds K = {k}")));
            }
            let mut ids = index::sample(rng, k, *ka).into_vec();
            ids.sort_unstable();
            ids.into_iter()
                .map(|i| ActiveUser { id: i, column: i })
                .collect()
        }
        (AccessMode::GrantFree, ActivitySpec::Probability(alpha)) => {
            check_probability(*alpha)?;
            (0..k)
                .filter(|_| rng.random::<f64>() < *alpha)
                .map(|i| ActiveUser { id: i, column: i })
                .collect()
        }
        (AccessMode::GrantFree, ActivitySpec::Fixed(ids)) => {
            let mut ids = ids.clone();
            ids.sort_unstable();
            ids.dedup();
            if ids.last().is_some_and(|&i| i >= k) {
                return Err(invalid(format!(
                    "active user index out of range for K = {k}"
                )));
            }
            ids.into_iter()
                .map(|i| ActiveUser { id: i, column: i })
                .collect()
        }
        (AccessMode::Unsourced, ActivitySpec::Count(ka)) => (0..*ka)
            .map(|i| ActiveUser {
                id: i,
                column: rng.random_range(0..k),
            })
            .collect(),
        (AccessMode::Unsourced, ActivitySpec::Probability(alpha)) => {
            check_probability(*alpha)?;
            let ka = (0..k).filter(|_| rng.random::<f64>() < *alpha).count();
            (0..ka)
                .map(|i| ActiveUser {
                    id: i,
                    column: rng.random_range(0..k),
                })
                .collect()
        }
        (AccessMode::Unsourced, ActivitySpec::Fixed(cols)) => {
            if cols.iter().any(|&c| c >= k) {
                return Err(invalid(format!("column index out of range for K = {k}")));
            }
            cols.iter()
                .enumerate()
                .map(|(i, &c)| ActiveUser { id: i, column: c })
                .collect()
        }
    };
    Ok(Activity { users })
}

fn check_probability(alpha: f64) -> Result<()> {
    if (0.0..=1.0).contains(&alpha) {
        Ok(())
    } else {
        Err(invalid(format!(
            "activation probability {alpha} outside [0, 1]"
        )))
    }
}

/// Expected number of active users sharing their column with at least one
/// other user when `ka` users pick among `k` columns uniformly.
pub fn expected_colliding_users(k: usize, ka: usize) -> f64 {
    if ka == 0 {
        return 0.0;
    }
    ka as f64 * (1.0 - (1.0 - 1.0 / k as f64).powi(ka as i32 - 1))
}

/// Expected `K_a` minus the number of distinct chosen columns.
pub fn expected_excess_users(k: usize, ka: usize) -> f64 {
    ka as f64 - k as f64 * (1.0 - (1.0 - 1.0 / k as f64).powi(ka as i32))
}

/// Per-user SNR `P` from `E_b/N_0` in dB, using `E_b/N_0 = ℓ/(2k)·P`.
pub fn ebn0_to_snr(ebn0_db: f64, ell: usize, k_bits: usize) -> Result<f64> {
    if ell == 0 || k_bits == 0 {
        return Err(invalid("block length and payload must be positive"));
    }
    Ok(10f64.powf(ebn0_db / 10.0) * 2.0 * k_bits as f64 / ell as f64)
}

pub fn snr_to_ebn0(snr: f64, ell: usize, k_bits: usize) -> f64 {
    10.0 * (snr * ell as f64 / (2.0 * k_bits as f64)).log10()
}

/// Bit 0 maps to +1, bit 1 to -1.
pub fn modulate_bpsk<T: Real>(bits: &[u8]) -> Vec<Complex<T>> {
    bits.iter()
        .map(|&b| Complex::new(if b == 0 { T::one() } else { -T::one() }, T::zero()))
        .collect()
}

pub fn demodulate_hard<T: Real>(symbols: &[Complex<T>]) -> Vec<u8> {
    symbols.iter().map(|s| u8::from(s.re < T::zero())).collect()
}

/// Static part of a link: mapping, signatures, code and per-column
/// interleavers.
#[derive(Clone, Debug)]
pub struct Scenario<T> {
    mapping: SparseMapping,
    signatures: SignatureMatrix<T>,
    code: Arc<LdpcCode>,
    interleavers: Vec<Interleaver>,
    mode: AccessMode,
}

impl<T: Real> Scenario<T> {
    /// Interleavers are drawn per signature column from `interleaver_seed`.
    pub fn new(
        mapping: SparseMapping,
        signatures: SignatureMatrix<T>,
        code: Arc<LdpcCode>,
        mode: AccessMode,
        interleaver_seed: u64,
    ) -> Result<Self> {
        if signatures.n_s() != mapping.n_s() || signatures.num_users() != mapping.num_users() {
            return Err(Error::DimensionMismatch(
                "signature matrix does not match the mapping".into(),
            ));
        }
        let interleavers = (0..mapping.num_users())
            .map(|c| Interleaver::random(code.n(), interleaver_seed, c as u64))
            .collect();
        Ok(Self {
            mapping,
            signatures,
            code,
            interleavers,
            mode,
        })
    }

    pub fn mapping(&self) -> &SparseMapping {
        &self.mapping
    }

    pub fn signatures(&self) -> &SignatureMatrix<T> {
        &self.signatures
    }

    pub fn code(&self) -> &LdpcCode {
        &self.code
    }

    pub fn interleaver(&self, column: usize) -> &Interleaver {
        &self.interleavers[column]
    }

    pub fn mode(&self) -> AccessMode {
        self.mode
    }

    /// Block length `ℓ` in symbols (`= n` for BPSK).
    pub fn ell(&self) -> usize {
        self.code.n()
    }

    pub fn n_s(&self) -> usize {
        self.mapping.n_s()
    }

    pub fn num_users(&self) -> usize {
        self.mapping.num_users()
    }

    /// Total channel uses `N = n_s·ℓ`.
    pub fn channel_uses(&self) -> usize {
        self.n_s() * self.ell()
    }

    /// Encode, interleave and modulate one message for a column.
    pub fn symbols(&self, column: usize, message: &[u8]) -> Result<Vec<Complex<T>>> {
        let cw = self.code.encode(message)?;
        Ok(modulate_bpsk(&self.interleavers[column].interleave(&cw)))
    }

    /// Modulated symbols of an already encoded codeword.
    pub fn codeword_symbols(&self, column: usize, codeword: &[u8]) -> Vec<Complex<T>> {
        modulate_bpsk(&self.interleavers[column].interleave(codeword))
    }

    /// Adds `scale·s_c·bᵀ` to `y`.
    pub fn superimpose(
        &self,
        y: &mut [Vec<Complex<T>>],
        column: usize,
        symbols: &[Complex<T>],
        scale: T,
    ) {
        for &(r, s) in self.signatures.column(column) {
            let g = s * scale;
            for (yv, &b) in y[r].iter_mut().zip(symbols) {
                *yv += g * b;
            }
        }
    }

    pub fn random_messages(&self, count: usize, rng: &mut impl Rng) -> Vec<Vec<u8>> {
        (0..count)
            .map(|_| {
                (0..self.code.k())
                    .map(|_| rng.random_range(0..2u8))
                    .collect()
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct ReceivedBlock<T> {
    /// `n_s × ℓ` observation.
    pub y: Vec<Vec<Complex<T>>>,
    pub activity: Activity,
    /// Message of each active user, aligned with `activity.users`.
    pub messages: Vec<Vec<u8>>,
    pub snr: T,
}

/// `noise_seed = None` gives a noiseless observation.
pub fn transmit<T: Real>(
    sc: &Scenario<T>,
    activity: &Activity,
    messages: &[Vec<u8>],
    snr: T,
    noise_seed: Option<u64>,
) -> Result<ReceivedBlock<T>> {
    if messages.len() != activity.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} messages for {} active users",
            messages.len(),
            activity.len()
        )));
    }
    if !(snr >= T::zero()) {
        return Err(invalid("snr must be non-negative"));
    }
    let ell = sc.ell();
    let mut y = vec![vec![Complex::<T>::default(); ell]; sc.n_s()];
    if let Some(seed) = noise_seed {
        let mut rng = stream(seed, tag::NOISE, 0);
        let sd = T::lit(0.5f64.sqrt());
        for row in y.iter_mut() {
            for v in row.iter_mut() {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                *v = Complex::new(T::lit(re) * sd, T::lit(im) * sd);
            }
        }
    }
    let amp = snr.sqrt();
    for (u, msg) in activity.users.iter().zip(messages) {
        if u.column >= sc.num_users() {
            return Err(Error::DimensionMismatch(format!(
                "column {} out of range",
                u.column
            )));
        }
        let b = sc.symbols(u.column, msg)?;
        sc.superimpose(&mut y, u.column, &b, amp);
    }
    Ok(ReceivedBlock {
        y,
        activity: activity.clone(),
        messages: messages.to_vec(),
        snr,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euler::prime_mapping;
    use crate::fec::cached_code;
    use crate::signatures::{build_signatures, PhaseMode};
    use approx::assert_relative_eq;

    fn scenario(mode: AccessMode) -> Scenario<f64> {
        let f = prime_mapping(3, 2).unwrap();
        let s = build_signatures(&f, PhaseMode::UniformRandom, 1);
        Scenario::new(f, s, cached_code(20, 3, 4, 1).unwrap(), mode, 2).unwrap()
    }

    #[test]
    fn snr_conversion() {
        assert_relative_eq!(ebn0_to_snr(0.0, 20, 10).unwrap(), 1.0);
        assert_relative_eq!(ebn0_to_snr(3.0, 202, 101).unwrap(), 10f64.powf(0.3));
        let off = 10.0 * (ebn0_to_snr(0.0, 198, 101).unwrap()).log10();
        assert_relative_eq!(off, 10.0 * (202.0f64 / 198.0).log10(), epsilon = 1e-12);
        assert_relative_eq!(
            snr_to_ebn0(ebn0_to_snr(4.2, 60, 30).unwrap(), 60, 30),
            4.2,
            epsilon = 1e-12
        );
        assert!(ebn0_to_snr(1.0, 0, 3).is_err());
    }

    #[test]
    fn bpsk_mapping() {
        let b = modulate_bpsk::<f64>(&[0, 0, 1]);
        assert_eq!(b[0].re, 1.0);
        assert_eq!(b[2].re, -1.0);
        assert_eq!(b.iter().map(|x| x.norm_sqr()).sum::<f64>(), 3.0);
        assert_eq!(demodulate_hard(&b), vec![0, 0, 1]);
    }

    #[test]
    fn activity_modes() {
        let mut rng = stream(0, tag::ACTIVITY, 0);
        let a =
            sample_activity(9, AccessMode::Scheduled, &ActivitySpec::Count(2), &mut rng).unwrap();
        assert_eq!(a.len(), 9);
        let a =
            sample_activity(9, AccessMode::GrantFree, &ActivitySpec::Count(4), &mut rng).unwrap();
        assert_eq!(a.columns().len(), 4);
        assert!(
            sample_activity(9, AccessMode::GrantFree, &ActivitySpec::Count(10), &mut rng).is_err()
        );
        let a = sample_activity(
            3,
            AccessMode::Unsourced,
            &ActivitySpec::Fixed(vec![1, 1, 2]),
            &mut rng,
        )
        .unwrap();
        assert_eq!(a.colliding_users(), vec![0, 1]);
        assert!(sample_activity(
            9,
            AccessMode::GrantFree,
            &ActivitySpec::Probability(1.5),
            &mut rng
        )
        .is_err());
    }

    #[test]
    fn empty_activity_gives_pure_noise_and_noiseless_single_user_is_rank_one() {
        let sc = scenario(AccessMode::GrantFree);
        let none = transmit(&sc, &Activity::default(), &[], 2.0, Some(5)).unwrap();
        let none2 = transmit(&sc, &Activity::default(), &[], 7.0, Some(5)).unwrap();
        assert_eq!(none.y, none2.y);

        let act = Activity {
            users: vec![ActiveUser { id: 4, column: 4 }],
        };
        let msg = vec![vec![1, 0, 1, 1, 0]];
        let rx = transmit(&sc, &act, &msg, 4.0, None).unwrap();
        let b = sc.symbols(4, &msg[0]).unwrap();
        for r in 0..sc.n_s() {
            let s = sc.signatures().entry(r, 4);
            for t in 0..sc.ell() {
                let want = s * b[t] * 2.0;
                assert!((rx.y[r][t] - want).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn superposition_is_linear() {
        let sc = scenario(AccessMode::GrantFree);
        let mut rng = stream(3, tag::MESSAGES, 0);
        let msgs = sc.random_messages(2, &mut rng);
        let a = Activity {
            users: vec![ActiveUser { id: 1, column: 1 }],
        };
        let b = Activity {
            users: vec![ActiveUser { id: 5, column: 5 }],
        };
        let ab = Activity {
            users: vec![a.users[0], b.users[0]],
        };
        let ya = transmit(&sc, &a, &msgs[..1], 3.0, Some(9)).unwrap().y;
        let yb = transmit(&sc, &b, &msgs[1..], 3.0, Some(9)).unwrap().y;
        let w = transmit(&sc, &Activity::default(), &[], 3.0, Some(9))
            .unwrap()
            .y;
        let yab = transmit(&sc, &ab, &msgs, 3.0, Some(9)).unwrap().y;
        for r in 0..sc.n_s() {
            for t in 0..sc.ell() {
                assert!((yab[r][t] - (ya[r][t] + yb[r][t] - w[r][t])).norm() < 1e-12);
            }
        }
    }
}
