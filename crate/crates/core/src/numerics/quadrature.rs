use crate::error::{Error, Result};

const MAX_DEPTH: usize = 48;

/// Adaptive composite Simpson integration of `f` over [0, 1].
///
/// Subdivides until the local Richardson error estimate drops below the
/// share of `tol` allotted to each subinterval, so the result is within
/// `tol` of the true integral for smooth integrands. Any non-finite
/// evaluation of `f` aborts with a numeric-domain error.
pub fn integrate_01<F>(f: F, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::invalid("integrate_01: tol must be > 0"));
    }
    let eval = |x: f64| -> Result<f64> {
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::domain(format!(
                "integrate_01: integrand non-finite at x = {x}"
            )))
        }
    };
    let a = 0.0;
    let b = 1.0;
    let m = 0.5 * (a + b);
    let fa = eval(a)?;
    let fm = eval(m)?;
    let fb = eval(b)?;
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    adaptive(&eval, a, b, fa, fm, fb, whole, tol, MAX_DEPTH)
}

#[allow(clippy::too_many_arguments)]
fn adaptive<E>(
    eval: &E,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: usize,
) -> Result<f64>
where
    E: Fn(f64) -> Result<f64>,
{
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = eval(lm)?;
    let frm = eval(rm)?;
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    let l = adaptive(eval, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?;
    let r = adaptive(eval, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?;
    Ok(l + r)
}
