//! Two-qubit entanglement measures.
//!
//! Concurrence comes from the spectrum of `R = rho (sy x sy) rho* (sy x sy)`,
//! computed directly with the general complex eigensolver and cleansed of
//! float-level negative or imaginary parts. The entanglement of formation is
//! the binary entropy of `(1 + sqrt(1 - C^2)) / 2`, and the negativity sums
//! the negative eigenvalues of the partial transpose. X-shaped matrices
//! (everything the dynamics module produces) additionally get a closed-form
//! fast path that doubles as an independent check.

use num_complex::Complex64 as C64;

use crate::linalg::{eigenvalues, eigvalsh, CMat};
use crate::qcore::TwoQubitDensity;
use crate::{Error, Result};

/// All measures of one state, plus the concurrence spectrum.
#[derive(Clone, Copy, Debug)]
pub struct MeasureResult {
    pub concurrence: f64,
    pub eof: f64,
    pub negativity: f64,
    /// Square roots of the `R` spectrum, descending.
    pub lambdas: [f64; 4],
}

/// `sigma_y x sigma_y` in the fixed basis order; the antidiagonal
/// `(-1, 1, 1, -1)`.
fn spin_flip() -> [[f64; 4]; 4] {
    let mut s = [[0.0; 4]; 4];
    s[0][3] = -1.0;
    s[1][2] = 1.0;
    s[2][1] = 1.0;
    s[3][0] = -1.0;
    s
}

/// Square roots of the eigenvalues of `rho (sy x sy) rho* (sy x sy)` in
/// descending order. Fails if the spectrum has an imaginary part beyond
/// 1e-8, which signals an invalid input matrix.
pub fn concurrence_lambdas(rho: &TwoQubitDensity) -> Result<[f64; 4]> {
    let s = spin_flip();
    let m = rho.matrix();
    // rho_tilde = S rho* S
    let mut tilde = [[C64::new(0.0, 0.0); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let mut acc = C64::new(0.0, 0.0);
            for k in 0..4 {
                for l in 0..4 {
                    if s[i][k] != 0.0 && s[l][j] != 0.0 {
                        acc += s[i][k] * m[k][l].conj() * s[l][j];
                    }
                }
            }
            tilde[i][j] = acc;
        }
    }
    let mut r = CMat::zeros(4);
    for i in 0..4 {
        for j in 0..4 {
            let mut acc = C64::new(0.0, 0.0);
            for k in 0..4 {
                acc += m[i][k] * tilde[k][j];
            }
            r[(i, j)] = acc;
        }
    }
    let eigs = eigenvalues(&r)?;
    let mut lambdas = [0.0f64; 4];
    for (slot, z) in lambdas.iter_mut().zip(eigs.iter()) {
        if z.im.abs() > 1e-8 {
            return Err(Error::Numerical(format!(
                "concurrence spectrum has imaginary part {:.3e}; input is not a \
                 valid density matrix",
                z.im
            )));
        }
        // Clamp float-level residue around zero; the square root would
        // otherwise turn an O(eps) eigenvalue into an O(1e-8) lambda.
        let re = if z.re.abs() <= 1e-10 {
            0.0
        } else {
            z.re.max(0.0)
        };
        *slot = re.sqrt();
    }
    lambdas.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Ok(lambdas)
}

/// Wootters concurrence `max(0, l1 - l2 - l3 - l4)`.
pub fn concurrence(rho: &TwoQubitDensity) -> Result<f64> {
    let l = concurrence_lambdas(rho)?;
    Ok((l[0] - l[1] - l[2] - l[3]).max(0.0))
}

/// Binary entropy `-x log2 x - (1-x) log2 (1-x)`, zero at the endpoints.
pub fn binary_entropy(x: f64) -> f64 {
    let mut h = 0.0;
    if x > 0.0 && x < 1.0 {
        h = -x * x.log2() - (1.0 - x) * (1.0 - x).log2();
    }
    h
}

/// Entanglement of formation as a function of concurrence.
pub fn eof_from_concurrence(c: f64) -> f64 {
    let c = c.clamp(0.0, 1.0);
    binary_entropy(0.5 * (1.0 + (1.0 - c * c).sqrt()))
}

/// Entanglement of formation of a state.
pub fn eof(rho: &TwoQubitDensity) -> Result<f64> {
    Ok(eof_from_concurrence(concurrence(rho)?))
}

/// Sum of the magnitudes of the negative eigenvalues of the partial
/// transpose.
pub fn negativity(rho: &TwoQubitDensity) -> f64 {
    let pt = TwoQubitDensity::from_matrix(rho.partial_transpose_second()).symmetrized();
    eigvalsh(&pt.to_cmat())
        .into_iter()
        .filter(|e| *e < 0.0)
        .map(f64::abs)
        .sum()
}

const X_SHAPE_TOL: f64 = 1e-12;

/// Closed-form concurrence for X-shaped states (nonzero entries only on the
/// diagonal and antidiagonal):
/// `2 max(0, |center| - sqrt(p11 p00), |corner| - sqrt(p10 p01))`.
pub fn xstate_concurrence(rho: &TwoQubitDensity) -> Result<f64> {
    let m = rho.symmetrized();
    for i in 0..4 {
        for j in 0..4 {
            if i == j || i + j == 3 {
                continue;
            }
            let mag = m.entry(i, j).norm();
            if mag > X_SHAPE_TOL {
                return Err(Error::Structure(format!(
                    "entry ({i},{j}) = {mag:.3e} breaks the X shape"
                )));
            }
        }
    }
    let a = m.entry(0, 0).re.max(0.0); // |11>
    let d = m.entry(3, 3).re.max(0.0); // |00>
    let b = m.entry(1, 1).re.max(0.0); // |10>
    let c = m.entry(2, 2).re.max(0.0); // |01>
    let center = m.entry(1, 2).norm();
    let corner = m.entry(0, 3).norm();
    Ok((2.0 * (center - (a * d).sqrt()))
        .max(2.0 * (corner - (b * c).sqrt()))
        .max(0.0))
}

/// Concurrence, EOF, negativity and the concurrence spectrum in one call.
pub fn measures(rho: &TwoQubitDensity) -> Result<MeasureResult> {
    let lambdas = concurrence_lambdas(rho)?;
    let c = (lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0);
    Ok(MeasureResult {
        concurrence: c,
        eof: eof_from_concurrence(c),
        negativity: negativity(rho),
        lambdas,
    })
}
