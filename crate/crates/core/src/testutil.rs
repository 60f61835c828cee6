//! Shared helpers for unit tests.

use num_complex::Complex64 as C64;
use rand::rngs::StdRng;
use rand::Rng;

use crate::qcore::TwoQubitDensity;

/// Random full-rank density matrix (normalized `G G^dag` with Ginibre `G`).
pub(crate) fn random_density(rng: &mut StdRng) -> TwoQubitDensity {
    let z = C64::new(0.0, 0.0);
    let mut g = [[z; 4]; 4];
    for row in g.iter_mut() {
        for v in row.iter_mut() {
            *v = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
    }
    let mut m = [[z; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let mut acc = z;
            for k in 0..4 {
                acc += g[i][k] * g[j][k].conj();
            }
            m[i][j] = acc;
        }
    }
    let tr: f64 = (0..4).map(|i| m[i][i].re).sum();
    for row in m.iter_mut() {
        for v in row.iter_mut() {
            *v /= tr;
        }
    }
    TwoQubitDensity::from_matrix(m)
}
