use crate::error::Result;
use crate::euler::{build_mapping_matrix, construct_euler_square, ConstructionMethod};
use crate::signatures::{
    build_signatures, cover_wyner, spectral_efficiency, PhaseMode, SignatureMatrix,
};

/// Meaning of the x-value passed to [`spectral_efficiency_curve`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SnrAxis {
    /// The value is the per-user SNR `P` in dB.
    #[default]
    PerUserSnr,
    /// The value is the sum-rate `E_b/N_0 = β·P / C(P)` in dB; `P` is solved
    /// for numerically.
    SumRateEbN0,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralRow {
    pub gamma: usize,
    pub rho: usize,
    pub beta: f64,
    pub snr: f64,
    pub c_opt: f64,
    pub cover_wyner: f64,
}

fn solve_sum_rate_snr(s: &SignatureMatrix<f64>, beta: f64, ebn0_lin: f64) -> Result<f64> {
    // g(P) = β P - ebn0·C(P) is negative near zero (above -1.59 dB) and grows
    // without bound
    let g = |p: f64| -> Result<f64> { Ok(beta * p - ebn0_lin * spectral_efficiency(s, p)?) };
    let (mut lo, mut hi) = (1e-9, 1.0);
    while g(hi)? < 0.0 {
        hi *= 2.0;
        if hi > 1e12 {
            break;
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Per-construction throughput at one operating point, sorted by load `β`.
pub fn spectral_efficiency_curve(
    constructions: &[(usize, usize)],
    x_db: f64,
    axis: SnrAxis,
    phase: PhaseMode,
    seed: u64,
) -> Result<Vec<SpectralRow>> {
    let mut rows = Vec::with_capacity(constructions.len());
    for &(gamma, rho) in constructions {
        let f = build_mapping_matrix(&construct_euler_square(
            gamma,
            rho,
            ConstructionMethod::PrimeModular,
        )?);
        let s: SignatureMatrix<f64> = build_signatures(&f, phase, seed);
        let beta = f.load();
        let x = 10f64.powf(x_db / 10.0);
        let snr = match axis {
            SnrAxis::PerUserSnr => x,
            SnrAxis::SumRateEbN0 => solve_sum_rate_snr(&s, beta, x)?,
        };
        rows.push(SpectralRow {
            gamma,
            rho,
            beta,
            snr,
            c_opt: spectral_efficiency(&s, snr)?,
            cover_wyner: cover_wyner(beta, snr)?,
        });
    }
    rows.sort_by(|a, b| a.beta.total_cmp(&b.beta).then(a.gamma.cmp(&b.gamma)));
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_are_bounded_and_sorted() {
        let rows = spectral_efficiency_curve(
            &[(7, 2), (3, 2), (5, 4)],
            10.0,
            SnrAxis::PerUserSnr,
            PhaseMode::UniformRandom,
            1,
        )
        .unwrap();
        assert!(rows.windows(2).all(|w| w[0].beta <= w[1].beta));
        assert!(rows.iter().all(|r| r.c_opt <= r.cover_wyner + 1e-9));
    }

    #[test]
    fn sum_rate_axis_is_consistent() {
        let rows =
            spectral_efficiency_curve(&[(5, 2)], 10.0, SnrAxis::SumRateEbN0, PhaseMode::None, 0)
                .unwrap();
        let r = &rows[0];
        let ebn0 = r.beta * r.snr / r.c_opt;
        assert!((10.0 * ebn0.log10() - 10.0).abs() < 1e-6);
    }
}
