//! Optimization of the fraction of users served.

use crate::asymptotic::{rho, AsymptoticParams};
use crate::error::{Error, Result};

/// Quadrature tolerance used inside the search; well below the search
/// tolerances that matter here.
const RHO_TOL: f64 = 1e-9;
const GRID_STEP: f64 = 0.01;
/// Grid ties within this margin are broken toward the larger sbar (more
/// users served at equal throughput).
const TIE_EPS: f64 = 1e-10;

/// Maximizes rho(P, ., rbar) over sbar in (0, 1].
///
/// A coarse grid scan (step 0.01) guards against multimodality, then
/// golden-section search refines the best bracket until its width falls
/// below `tol`. Returns (sbar_opt, rho_opt). Degenerate inputs (P = 0 or
/// rbar = 0) make rho identically zero; the tie break then returns sbar = 1.
pub fn sbar_opt(power: f64, rbar: f64, tol: f64) -> Result<(f64, f64)> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::invalid("sbar_opt: tol must be > 0"));
    }
    let eval =
        |sbar: f64| -> Result<f64> { rho(&AsymptoticParams::new(power, sbar, rbar)?, RHO_TOL) };
    let steps = (1.0 / GRID_STEP).round() as usize;
    let mut best_idx = 0usize;
    let mut best_val = f64::NEG_INFINITY;
    let mut grid = Vec::with_capacity(steps);
    for idx in 1..=steps {
        let sbar = idx as f64 * GRID_STEP;
        let v = eval(sbar)?;
        grid.push((sbar, v));
        if v > best_val + TIE_EPS || (v >= best_val - TIE_EPS && sbar > grid[best_idx].0) {
            best_val = v;
            best_idx = grid.len() - 1;
        }
    }
    let lo = if best_idx == 0 {
        f64::MIN_POSITIVE.max(GRID_STEP * 0.5)
    } else {
        grid[best_idx - 1].0
    };
    let hi = (grid[best_idx].0 + GRID_STEP).min(1.0);
    let (mut a, mut b) = (lo, hi);
    let inv_phi = 0.5 * (5.0f64.sqrt() - 1.0);
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = eval(x1)?;
    let mut f2 = eval(x2)?;
    while b - a > tol {
        if f1 > f2 + TIE_EPS {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = eval(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = eval(x2)?;
        }
    }
    let candidates = [(x1, f1), (x2, f2), (grid[best_idx].0, best_val)];
    let mut winner = candidates[0];
    for &c in &candidates[1..] {
        if c.1 > winner.1 + TIE_EPS || (c.1 >= winner.1 - TIE_EPS && c.0 > winner.0) {
            winner = c;
        }
    }
    Ok(winner)
}

/// Number of users to turn on in a K-dimensional system: solve the
/// asymptotic problem at rbar = r/K, then round sbar_opt * K to the nearest
/// integer, clamped to [1, K].
pub fn s_opt_finite(users: usize, feedback_bits: usize, power: f64) -> Result<usize> {
    if users == 0 {
        return Err(Error::invalid("s_opt_finite: users must be >= 1"));
    }
    let rbar = feedback_bits as f64 / users as f64;
    let (sbar, _) = sbar_opt(power, rbar, 1e-4)?;
    let s = (sbar * users as f64).round() as usize;
    Ok(s.clamp(1, users))
}
