use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::matrix::ComplexMatrix;

/// Relative threshold on the diagonal of R below which the input is treated
/// as rank deficient.
const RANK_TOL: f64 = 1e-12;

/// QR factorization by Householder reflections.
///
/// Accepts any matrix with `rows >= cols` and returns the thin factorization
/// `A = Q R` with `Q` of the same shape as `A` (unitary columns) and `R`
/// square upper triangular. The diagonal of `R` is made real and
/// non-negative, which pins down `Q` uniquely; entries below the diagonal of
/// `R` are exact zeros.
pub fn qr_factor(a: &ComplexMatrix) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let m = a.rows();
    let n = a.cols();
    if m < n || n == 0 {
        return Err(Error::invalid(format!(
            "qr_factor: need rows >= cols >= 1, got {}x{}",
            m, n
        )));
    }
    if !a.is_finite() {
        return Err(Error::domain("qr_factor: non-finite input entry"));
    }

    // Reduce a working copy to upper-triangular form, storing the
    // Householder vectors (normalized so v[0] is real positive).
    let mut work = a.clone();
    let mut reflectors: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    for k in 0..n {
        let mut v: Vec<Complex64> = (k..m).map(|i| work[(i, k)]).collect();
        let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if norm > 0.0 {
            let x0 = v[0];
            let phase = if x0.norm() > 0.0 {
                x0 / x0.norm()
            } else {
                Complex64::new(1.0, 0.0)
            };
            v[0] += phase * norm;
            let vnorm_sq: f64 = v.iter().map(|x| x.norm_sqr()).sum();
            if vnorm_sq > 0.0 {
                let beta = 2.0 / vnorm_sq;
                // Apply I - beta v v^* to the remaining columns.
                for j in k..n {
                    let mut w = Complex64::new(0.0, 0.0);
                    for (t, &vi) in v.iter().enumerate() {
                        w += vi.conj() * work[(k + t, j)];
                    }
                    w *= beta;
                    for (t, &vi) in v.iter().enumerate() {
                        work[(k + t, j)] -= w * vi;
                    }
                }
            }
            reflectors.push(v);
        } else {
            reflectors.push(vec![Complex64::new(0.0, 0.0); m - k]);
        }
    }

    // Accumulate the thin Q = H_1 ... H_n E by applying reflectors in
    // reverse order to the leading identity block.
    let mut q = ComplexMatrix::zeros(m, n);
    for j in 0..n {
        q[(j, j)] = Complex64::new(1.0, 0.0);
    }
    for k in (0..n).rev() {
        let v = &reflectors[k];
        let vnorm_sq: f64 = v.iter().map(|x| x.norm_sqr()).sum();
        if vnorm_sq == 0.0 {
            continue;
        }
        let beta = 2.0 / vnorm_sq;
        for j in 0..n {
            let mut w = Complex64::new(0.0, 0.0);
            for (t, &vi) in v.iter().enumerate() {
                w += vi.conj() * q[(k + t, j)];
            }
            w *= beta;
            for (t, &vi) in v.iter().enumerate() {
                q[(k + t, j)] -= w * vi;
            }
        }
    }

    // Copy out R as an exactly upper-triangular matrix, then rotate phases
    // so that its diagonal is real and non-negative.
    let mut r = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            r[(i, j)] = work[(i, j)];
        }
    }
    for k in 0..n {
        let d = r[(k, k)];
        if d.norm() > 0.0 {
            let phase = d / d.norm();
            let adj = phase.conj();
            for j in k..n {
                r[(k, j)] *= adj;
            }
            r[(k, k)] = Complex64::new(r[(k, k)].re.abs(), 0.0);
            for i in 0..m {
                q[(i, k)] *= phase;
            }
        }
    }

    let diag_max = (0..n).map(|k| r[(k, k)].re).fold(0.0, f64::max);
    let diag_min = (0..n).map(|k| r[(k, k)].re).fold(f64::INFINITY, f64::min);
    if diag_min <= RANK_TOL * diag_max || diag_max == 0.0 {
        return Err(Error::singular(format!(
            "qr_factor: rank deficient (|R| diagonal range {:.3e}..{:.3e})",
            diag_min, diag_max
        )));
    }

    Ok((q, r))
}
