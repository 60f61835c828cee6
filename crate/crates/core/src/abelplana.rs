//! Integral and asymptotic representations of the thermal Rabi sum `h₂`.
//!
//! Splitting the photon-number sum into odd integers and applying the
//! half-integer Abel-Plana formula turns `h₂` into
//!
//! ```text
//! h2(gt) = (sinh k / k) [ I(t~) - 2 J(t~) ]
//! I(t~)  = int_0^inf e^{-u} cos(sqrt(2u) t~) du = 1 - sqrt(2) t~ D(t~/sqrt 2)
//! J(t~)  = int_0^inf [sin w cos(t~ sqrt w) cosh(t~ sqrt w)
//!                     + cos w sin(t~ sqrt w) sinh(t~ sqrt w)]
//!                    / (e^{pi w / k} + 1) dw
//! ```
//!
//! with `t~ = gt / sqrt(k)` and `k = hbar*Omega / 2kT`. The correction `J`
//! carries all the discreteness of the photon number; it shrinks as the
//! environment gets hotter, which yields the Dawson-function asymptote
//! [`h2_hot`]. Both integrals are evaluated by adaptive quadrature, the
//! first in the variable `v = sqrt(2u)` and the second in `y = sqrt(w)`
//! with the hyperbolic growth folded into log space.

use crate::quad::integrate;
use crate::{Error, Result};

/// Natural interaction time scale `tau0 = sqrt(kappa) / g`.
pub fn tau0(kappa: f64, g: f64) -> f64 {
    assert!(kappa > 0.0 && g > 0.0, "tau0: kappa and g must be positive");
    kappa.sqrt() / g
}

/// Rescaled-time bookkeeping for the hot-environment analysis.
#[derive(Clone, Copy, Debug)]
pub struct AsymptoticParams {
    pub kappa: f64,
    /// `gt / sqrt(kappa)`.
    pub t_tilde: f64,
    /// `sqrt(kappa) / g`.
    pub tau0: f64,
}

impl AsymptoticParams {
    pub fn new(kappa: f64, gt: f64, g: f64) -> Result<Self> {
        if kappa.is_nan() || kappa <= 0.0 || g.is_nan() || g <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "kappa and g must be positive, got kappa={kappa}, g={g}"
            )));
        }
        Ok(AsymptoticParams {
            kappa,
            t_tilde: gt / kappa.sqrt(),
            tau0: tau0(kappa, g),
        })
    }
}

/// Dawson function `D(x) = e^{-x^2} int_0^x e^{u^2} du`.
///
/// Maclaurin series below `x = 1`, Rybicki's exponentially convergent
/// sampling series in the midrange, and the asymptotic series in
/// `1/(2x^2)` beyond `x = 6.5`; absolute accuracy about 1e-14.
pub fn dawson(x: f64) -> f64 {
    if x < 0.0 {
        return -dawson(-x);
    }
    if x == 0.0 {
        return 0.0;
    }
    if x <= 1.0 {
        // term_{k+1} = term_k * (-2 x^2) / (2k + 3)
        let x2 = x * x;
        let mut term = x;
        let mut sum = x;
        let mut k = 0u32;
        while term.abs() > 1e-18 {
            term *= -2.0 * x2 / (2.0 * k as f64 + 3.0);
            sum += term;
            k += 1;
        }
        sum
    } else if x < 6.5 {
        // D(x) = (1/sqrt(pi)) sum_{n odd} e^{-(x - n h)^2} / n
        let h = 0.25;
        let cut = 6.7; // e^{-cut^2} ~ 3e-20
        let n_lo = ((x - cut) / h).floor() as i64;
        let n_hi = ((x + cut) / h).ceil() as i64;
        let mut sum = 0.0;
        let mut n = if n_lo % 2 == 0 { n_lo + 1 } else { n_lo };
        while n <= n_hi {
            let d = x - n as f64 * h;
            sum += (-d * d).exp() / n as f64;
            n += 2;
        }
        sum / std::f64::consts::PI.sqrt()
    } else {
        // D(x) ~ (1/2x) sum_k (2k-1)!! / (2x^2)^k
        let inv = 1.0 / (2.0 * x * x);
        let mut term = 1.0 / (2.0 * x);
        let mut sum = term;
        let mut k = 0u32;
        loop {
            let next = term * (2.0 * k as f64 + 1.0) * inv;
            if next.abs() >= term.abs() || next.abs() < 1e-18 {
                sum += next;
                break;
            }
            sum += next;
            term = next;
            k += 1;
        }
        sum
    }
}

/// Smooth part and Abel-Plana correction of `h2`, before the `sinh k / k`
/// prefactor: returns `(I, J)` with `h2 = (sinh k / k) (I - 2 J)`.
#[doc(hidden)]
pub fn h2_integral_parts(kappa: f64, gt: f64) -> Result<(f64, f64)> {
    if kappa.is_nan() || kappa <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "kappa must be positive, got {kappa}"
        )));
    }
    if gt.is_nan() || gt < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "gt must be nonnegative, got {gt}"
        )));
    }
    // The correction integrand peaks at exp((gt)^2 / 4 pi) on the real axis.
    let peak_exponent = gt * gt / (4.0 * std::f64::consts::PI);
    if peak_exponent > 600.0 {
        return Err(Error::InvalidParameter(format!(
            "gt = {gt} too large for a stable evaluation of the correction integral"
        )));
    }
    let t_tilde = gt / kappa.sqrt();

    // I = int_0^inf v e^{-v^2/2} cos(t~ v) dv
    let first = integrate(
        |v: f64| v * (-0.5 * v * v).exp() * (t_tilde * v).cos(),
        0.0,
        9.5,
        1e-11,
    )?;

    // J in y = sqrt(w): 2y [ e^{a-L} sin(w+a) + e^{-a-L} sin(w-a) ] / 2,
    // a = t~ y, w = y^2, L = ln(1 + e^{pi w / k}).
    let pi = std::f64::consts::PI;
    let y_max = {
        let disc = (t_tilde * t_tilde + 180.0 * pi / kappa).sqrt();
        (kappa * (t_tilde + disc) / (2.0 * pi)).max(1e-3) * 1.05
    };
    let second = integrate(
        |y: f64| {
            let w = y * y;
            let a = t_tilde * y;
            let q = pi * w / kappa;
            let log_denom = q + (-q).exp().ln_1p();
            let grow = (a - log_denom).exp() * (w + a).sin();
            let decay = (-a - log_denom).exp() * (w - a).sin();
            y * (grow + decay)
        },
        0.0,
        y_max,
        1e-11,
    )?;

    Ok((first.value, second.value))
}

/// `h2` evaluated through the Abel-Plana two-integral representation.
/// Agrees with the truncated series from the dynamics module to better than
/// 1e-6 over the working parameter range.
pub fn h2_integral(kappa: f64, gt: f64) -> Result<f64> {
    let (first, second) = h2_integral_parts(kappa, gt)?;
    let pref = kappa.sinh() / kappa;
    Ok(pref * (first - 2.0 * second))
}

/// Hot-environment asymptote of `h2`: the correction integral dropped and
/// the smooth part expressed through the Dawson function,
/// `(sinh k / k) (1 - sqrt(2) t~ D(t~ / sqrt 2))`.
pub fn h2_hot(kappa: f64, gt: f64) -> f64 {
    assert!(kappa > 0.0, "h2_hot: kappa must be positive");
    let t_tilde = gt / kappa.sqrt();
    let z = t_tilde / std::f64::consts::SQRT_2;
    (kappa.sinh() / kappa) * (1.0 - 2.0 * z * dawson(z))
}
