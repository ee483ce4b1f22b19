//! Eigenvalues of small dense Hermitian matrices.
//!
//! The Hermitian matrix `A + iB` is embedded into the real symmetric matrix
//! `[[A, -B], [B, A]]`, whose spectrum is that of `A + iB` with every
//! eigenvalue doubled. The real problem is reduced to tridiagonal form with
//! Householder reflections and solved by implicit QL iterations.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

const MAX_QL_SWEEPS: usize = 64;

/// Eigenvalues of a Hermitian matrix, ascending. Only the lower triangle is
/// read.
pub fn hermitian_eigenvalues<T: Real>(h: &[Vec<Complex<T>>]) -> Result<Vec<T>> {
    let n = h.len();
    if h.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch(
            "Hermitian matrix must be square".into(),
        ));
    }
    let entry = |i: usize, j: usize| {
        if i > j {
            h[i][j]
        } else if i < j {
            h[j][i].conj()
        } else {
            Complex::new(h[i][i].re, T::zero())
        }
    };
    let mut a = vec![vec![T::zero(); 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            let z = entry(i, j);
            a[i][j] = z.re;
            a[n + i][n + j] = z.re;
            a[i][n + j] = -z.im;
            a[n + i][j] = z.im;
        }
    }
    let mut ev = symmetric_eigenvalues(a)?;
    ev.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));
    Ok(ev.into_iter().step_by(2).collect())
}

/// Eigenvalues of a real symmetric matrix, in no particular order.
pub fn symmetric_eigenvalues<T: Real>(mut a: Vec<Vec<T>>) -> Result<Vec<T>> {
    let n = a.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let (mut d, mut e) = tridiagonalize(&mut a);
    tridiagonal_ql(&mut d, &mut e)?;
    Ok(d)
}

// Householder reduction; returns the diagonal and the subdiagonal shifted so
// that e[i] couples d[i] and d[i + 1].
fn tridiagonalize<T: Real>(a: &mut [Vec<T>]) -> (Vec<T>, Vec<T>) {
    let n = a.len();
    let mut e = vec![T::zero(); n];
    for i in (1..n).rev() {
        let l = i - 1;
        if l == 0 {
            e[i] = a[i][0];
            continue;
        }
        let scale: T = a[i][..=l].iter().map(|x| x.abs()).sum();
        if scale == T::zero() {
            e[i] = a[i][l];
            continue;
        }
        let mut h = T::zero();
        for k in 0..=l {
            a[i][k] /= scale;
            h += a[i][k] * a[i][k];
        }
        let f = a[i][l];
        let g = if f >= T::zero() { -h.sqrt() } else { h.sqrt() };
        e[i] = scale * g;
        h -= f * g;
        a[i][l] = f - g;
        let mut f = T::zero();
        for j in 0..=l {
            let mut g = T::zero();
            for k in 0..=j {
                g += a[j][k] * a[i][k];
            }
            for k in j + 1..=l {
                g += a[k][j] * a[i][k];
            }
            e[j] = g / h;
            f += e[j] * a[i][j];
        }
        let hh = f / (h + h);
        for j in 0..=l {
            let f = a[i][j];
            let g = e[j] - hh * f;
            e[j] = g;
            for k in 0..=j {
                let upd = f * e[k] + g * a[i][k];
                a[j][k] -= upd;
            }
        }
    }
    let d: Vec<T> = (0..n).map(|i| a[i][i]).collect();
    let mut sub = vec![T::zero(); n];
    sub[..n - 1].copy_from_slice(&e[1..n]);
    (d, sub)
}

fn tridiagonal_ql<T: Real>(d: &mut [T], e: &mut [T]) -> Result<()> {
    let n = d.len();
    let two = T::lit(2.0);
    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= T::epsilon() * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > MAX_QL_SWEEPS {
                return Err(Error::ConstructionFailure {
                    attempts: MAX_QL_SWEEPS,
                    reason: "QL iteration did not converge".into(),
                });
            }
            let mut g = (d[l + 1] - d[l]) / (two * e[l]);
            let mut r = g.hypot(T::one());
            g = d[m] - d[l] + e[l] / (g + if g >= T::zero() { r.abs() } else { -r.abs() });
            let (mut s, mut c, mut p) = (T::one(), T::one(), T::zero());
            let mut underflow = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == T::zero() {
                    d[i + 1] -= p;
                    e[m] = T::zero();
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + two * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = T::zero();
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn real_symmetric_known_spectrum() {
        // path graph P4 adjacency: 2cos(k pi / 5)
        let a = vec![
            vec![0.0, 1.0, 0.0, 0.0],
            vec![1.0, 0.0, 1.0, 0.0],
            vec![0.0, 1.0, 0.0, 1.0],
            vec![0.0, 0.0, 1.0, 0.0],
        ];
        let mut ev = symmetric_eigenvalues(a).unwrap();
        ev.sort_by(|x, y| x.partial_cmp(y).unwrap());
        let mut want: Vec<f64> = (1..=4)
            .map(|k| 2.0 * (k as f64 * std::f64::consts::PI / 5.0).cos())
            .collect();
        want.sort_by(|x, y| x.partial_cmp(y).unwrap());
        for (a, b) in ev.iter().zip(&want) {
            assert_relative_eq!(a, b, epsilon = 1e-12);
        }
    }

    #[test]
    fn hermitian_two_by_two() {
        // [[2, i], [-i, 2]] has eigenvalues 1 and 3
        let i = Complex::new(0.0, 1.0);
        let h = vec![
            vec![Complex::new(2.0, 0.0), i],
            vec![-i, Complex::new(2.0, 0.0)],
        ];
        let ev = hermitian_eigenvalues(&h).unwrap();
        assert_relative_eq!(ev[0], 1.0, epsilon = 1e-12);
        assert_relative_eq!(ev[1], 3.0, epsilon = 1e-12);
    }

    #[test]
    fn single_precision_path() {
        let h = vec![
            vec![Complex::new(1.0f32, 0.0), Complex::new(0.0, 0.0)],
            vec![Complex::new(0.0, 0.0), Complex::new(4.0, 0.0)],
        ];
        let ev = hermitian_eigenvalues(&h).unwrap();
        assert!((ev[0] - 1.0).abs() < 1e-5 && (ev[1] - 4.0).abs() < 1e-5);
    }
}
