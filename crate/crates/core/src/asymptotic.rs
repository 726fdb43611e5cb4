//! Closed-form asymptotic throughput in the large-system limit (K -> inf
//! with r/K -> rbar and s/K -> sbar).
//!
//! All per-user random quantities converge almost surely to deterministic
//! functions of the normalized user index ibar = lim i/s, so the normalized
//! sum-rate converges to sbar times an integral over ibar in [0, 1]. The
//! integrand is smooth and bounded, and the whole expression needs one
//! one-dimensional quadrature.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::integrate_01;

/// Parameters of the large-system limit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticParams {
    /// Total transmit power (linear SNR).
    pub power: f64,
    /// Fraction of users on, in (0, 1].
    pub sbar: f64,
    /// Feedback bits per user per antenna.
    pub rbar: f64,
}

impl AsymptoticParams {
    pub fn new(power: f64, sbar: f64, rbar: f64) -> Result<Self> {
        if !power.is_finite() || power < 0.0 {
            return Err(Error::invalid(format!(
                "AsymptoticParams: power must be finite and >= 0, got {power}"
            )));
        }
        if !(sbar > 0.0 && sbar <= 1.0) {
            return Err(Error::invalid(format!(
                "AsymptoticParams: sbar must lie in (0, 1], got {sbar}"
            )));
        }
        if !rbar.is_finite() || rbar < 0.0 {
            return Err(Error::invalid(format!(
                "AsymptoticParams: rbar must be finite and >= 0, got {rbar}"
            )));
        }
        Ok(AsymptoticParams { power, sbar, rbar })
    }

    /// Limiting mean quantization error Dbar = 2^(-rbar).
    pub fn dbar(&self) -> f64 {
        (-self.rbar).exp2()
    }

    /// NR = lim nr = 1 + (P/sbar)(1 - Dbar) + P Dbar, independent of the
    /// user index.
    pub fn nr_limit(&self) -> f64 {
        let d = self.dbar();
        1.0 + self.power / self.sbar * (1.0 - d) + self.power * d
    }
}

/// Limit of the DPC power-inflation term 1 + ||W_i||^2 at normalized user
/// index `ibar`. Always >= 1.
pub fn x_inf(ibar: f64, params: &AsymptoticParams) -> f64 {
    debug_assert!((0.0..=1.0).contains(&ibar));
    let d = params.dbar();
    let ps = params.power / params.sbar;
    let is = ibar * params.sbar;
    let den = 1.0 + params.power * d + ps * (1.0 - d) * (1.0 - is);
    1.0 + ps * ps * (1.0 - d) * (1.0 - d) * (1.0 - is) * is / (den * den)
}

/// Limit of the inflation scalar c_i at normalized user index `ibar`.
pub fn c_inf(ibar: f64, params: &AsymptoticParams) -> f64 {
    debug_assert!((0.0..=1.0).contains(&ibar));
    let d = params.dbar();
    let ps = params.power / params.sbar;
    let is = ibar * params.sbar;
    ps * (1.0 - d) / (1.0 + ps * (1.0 - d) * (1.0 - is) + params.power * d)
}

/// Integrand of the asymptotic throughput: the limiting per-user rate at
/// normalized index `ibar`, in bits. Returns NaN if the log argument leaves
/// its domain (the quadrature turns that into a numeric-domain error).
fn rate_limit_bits(ibar: f64, params: &AsymptoticParams) -> f64 {
    let d = params.dbar();
    let ps = params.power / params.sbar;
    let is = ibar * params.sbar;
    let nr = params.nr_limit();
    let useful = ps * (1.0 - d) * (1.0 - is) * {
        let t = c_inf(ibar, params) * is + 1.0;
        t * t
    };
    let arg = nr * x_inf(ibar, params) - useful;
    (nr.ln() - arg.ln()) / std::f64::consts::LN_2
}

/// Asymptotic throughput rho(P, sbar, rbar) in bits per channel use per
/// antenna, by adaptive quadrature with absolute tolerance `tol`.
pub fn rho(params: &AsymptoticParams, tol: f64) -> Result<f64> {
    let integral =
        integrate_01(|ibar| rate_limit_bits(ibar, params), tol).map_err(|e| match e {
            Error::NumericDomain(m) => {
                Error::domain(format!("rho: integrand left the log domain ({m})"))
            }
            other => other,
        })?;
    Ok(params.sbar * integral)
}

/// Perfect-CSIT asymptotic throughput
/// rho(P, sbar, inf) = sbar * Int_0^1 log2(1 + (P/sbar)(1 - ibar sbar)) d ibar.
pub fn rho_perfect(power: f64, sbar: f64, tol: f64) -> Result<f64> {
    let params = AsymptoticParams::new(power, sbar, 0.0)?;
    let ps = params.power / params.sbar;
    let integral = integrate_01(|ibar| (1.0 + ps * (1.0 - ibar * params.sbar)).log2(), tol)?;
    Ok(params.sbar * integral)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: f64, sbar: f64, rbar: f64) -> AsymptoticParams {
        AsymptoticParams::new(p, sbar, rbar).unwrap()
    }

    #[test]
    fn parameter_validation() {
        assert!(AsymptoticParams::new(-1.0, 0.5, 1.0).is_err());
        assert!(AsymptoticParams::new(1.0, 0.0, 1.0).is_err());
        assert!(AsymptoticParams::new(1.0, 1.5, 1.0).is_err());
        assert!(AsymptoticParams::new(1.0, 0.5, -0.1).is_err());
        let p = params(10.0, 0.5, 1.0);
        assert_eq!(p.dbar(), 0.5);
        assert!((p.nr_limit() - (1.0 + 20.0 * 0.5 + 5.0)).abs() < 1e-12);
    }

    #[test]
    fn x_inf_endpoints_and_hand_value() {
        let p = params(10.0, 0.5, 1.0);
        assert_eq!(x_inf(0.0, &p), 1.0);
        let full = params(10.0, 1.0, 1.0);
        assert_eq!(x_inf(1.0, &full), 1.0);
        // (P/sbar)^2 (1-D)^2 (1-is) is / (1 + P D + (P/sbar)(1-D)(1-is))^2
        // = 100 * 0.75 * 0.25 / (1 + 5 + 7.5)^2 = 18.75 / 182.25
        let v = x_inf(0.5, &p);
        assert!((v - (1.0 + 18.75 / 182.25)).abs() <= 1e-12, "v = {v}");
    }

    #[test]
    fn c_inf_values_and_square_identity() {
        let p = params(10.0, 0.5, 1.0);
        assert_eq!(c_inf(0.3, &params(0.0, 0.5, 1.0)), 0.0);
        assert!((c_inf(0.0, &p) - 0.625).abs() <= 1e-12);
        // x_inf - 1 = c_inf^2 (1 - ibar sbar)(ibar sbar) on a fine grid
        for t in 0..=100 {
            let ibar = t as f64 / 100.0;
            let is = ibar * p.sbar;
            let c = c_inf(ibar, &p);
            let lhs = x_inf(ibar, &p) - 1.0;
            assert!(
                (lhs - c * c * (1.0 - is) * is).abs() <= 1e-12,
                "ibar = {ibar}"
            );
        }
    }

    #[test]
    fn rho_degenerate_cases_vanish() {
        for sbar in [0.25, 0.5, 1.0] {
            for rbar in [0.5, 1.0, 5.0] {
                let v = rho(&params(0.0, sbar, rbar), 1e-10).unwrap();
                assert!(v.abs() <= 1e-10, "P = 0 gave {v}");
            }
            for p in [0.1, 1.0, 10.0, 100.0] {
                let v = rho(&params(p, sbar, 0.0), 1e-10).unwrap();
                assert!(v.abs() <= 1e-10, "rbar = 0 gave {v}");
            }
        }
    }

    #[test]
    fn rho_perfect_closed_form() {
        // Int_0^1 log2(1 + 10(1 - x)) dx = (11 ln 11 - 10) / (10 ln 2)
        let expect = (11.0 * 11.0f64.ln() - 10.0) / (10.0 * 2.0f64.ln());
        let v = rho_perfect(10.0, 1.0, 1e-10).unwrap();
        assert!((v - expect).abs() <= 1e-9, "v = {v}");
        assert_eq!(rho_perfect(0.0, 0.7, 1e-10).unwrap(), 0.0);
    }

    #[test]
    fn huge_feedback_matches_perfect_csit() {
        let v = rho(&params(10.0, 1.0, 40.0), 1e-10).unwrap();
        let perfect = rho_perfect(10.0, 1.0, 1e-10).unwrap();
        assert!((v - perfect).abs() <= 1e-3, "gap = {}", (v - perfect).abs());
    }

    #[test]
    fn rho_monotone_in_feedback_and_below_perfect() {
        for &p in &[0.1, 1.0, 10.0, 100.0, 1000.0] {
            for &sbar in &[0.2, 0.5, 0.8, 1.0] {
                let perfect = rho_perfect(p, sbar, 1e-9).unwrap();
                let mut last = -1.0;
                for &rbar in &[0.1, 0.5, 1.0, 2.0, 5.0, 20.0] {
                    let v = rho(&params(p, sbar, rbar), 1e-9).unwrap();
                    assert!(v >= 0.0);
                    assert!(v >= last - 1e-9, "rho not nondecreasing in rbar");
                    assert!(v <= perfect + 1e-6, "rho above the perfect-CSIT bound");
                    last = v;
                }
            }
        }
    }
}
