//! Numeric location of the two special mixing angles of the averaged
//! vacuum mixtures: the angle where the averaged Phi concurrence equals the
//! input concurrence, and the boundary of the zero-entanglement interval of
//! the averaged Psi mixture.

use tjc_core::{
    averaged_phi_vacuum, averaged_psi_vacuum, xstate_concurrence, AtomicFamily, Family,
};

use crate::CliError;

/// `C_avg(beta) - C_input(beta)` for the Phi family.
fn phi_excess(beta: f64) -> Result<f64, CliError> {
    let avg = xstate_concurrence(&averaged_phi_vacuum(beta))
        .map_err(|e| CliError::Numerical(e.to_string()))?;
    let input = xstate_concurrence(&AtomicFamily::new(Family::Phi, beta).density())
        .map_err(|e| CliError::Numerical(e.to_string()))?;
    Ok(avg - input)
}

/// Angle in `(0, pi/4)` where the averaged Phi concurrence crosses the
/// input concurrence, located by bisection to `tol` radians.
pub fn phi_equal_entanglement_angle(tol: f64) -> Result<f64, CliError> {
    let mut lo = 1e-9;
    let mut hi = 0.5;
    let flo = phi_excess(lo)?;
    let fhi = phi_excess(hi)?;
    if flo <= 0.0 || fhi >= 0.0 {
        return Err(CliError::Numerical(format!(
            "no sign change bracketing the crossing: f({lo}) = {flo}, f({hi}) = {fhi}"
        )));
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if phi_excess(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Boundary of the zero-concurrence interval of the averaged Psi mixture,
/// located by bisection on the predicate `C > 0` to `tol` radians.
pub fn psi_zero_entanglement_boundary(tol: f64) -> Result<f64, CliError> {
    let conc = |beta: f64| -> Result<f64, CliError> {
        xstate_concurrence(&averaged_psi_vacuum(beta))
            .map_err(|e| CliError::Numerical(e.to_string()))
    };
    let mut lo = 0.0; // C = 0 here
    let mut hi = 0.5; // C > 0 here
    if conc(hi)? <= 0.0 {
        return Err(CliError::Numerical(
            "expected positive concurrence at beta = 0.5".into(),
        ));
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if conc(mid)? > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_crossing_is_half_arcsin_one_seventh() {
        let found = phi_equal_entanglement_angle(1e-10).unwrap();
        let expect = 0.5 * (1.0f64 / 7.0).asin();
        assert!((found - expect).abs() < 1e-8, "{found} vs {expect}");
    }

    #[test]
    fn psi_boundary_is_arctan_one_eighth() {
        let found = psi_zero_entanglement_boundary(1e-10).unwrap();
        let expect = 0.125f64.atan();
        assert!((found - expect).abs() < 1e-8, "{found} vs {expect}");
    }
}
