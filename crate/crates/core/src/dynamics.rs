//! Interaction-picture time evolution.
//!
//! The interaction Hamiltonian couples only states within one excitation
//! sector. For a field excitation index `n >= 0` the sector is the tetrad
//! `(|n,11⟩, |n+1,10⟩, |n+1,01⟩, |n+2,00⟩)`; below it sit the triad
//! `(|0,10⟩, |0,01⟩, |1,00⟩)` and the stationary ground state `|0,00⟩`.
//! Everything here is expressed in units of the coupling `g`, with the
//! dimensionless time `gt`.
//!
//! Two independent routes to the reduced atomic state are provided:
//!
//! * closed forms assembled from the thermal Rabi sums `h₁`, `h₂` and the
//!   constants `m±` ([`phi_reduced`], [`psi_reduced`]);
//! * a brute-force sector-by-sector evolution ([`OracleEvolver`]) that
//!   eigendecomposes each interaction block numerically and traces out the
//!   field, used to validate the closed forms.

use num_complex::Complex64 as C64;

use crate::linalg::{eigh, CMat};
use crate::qcore::{AtomicFamily, Family, ThermalSpec, TwoQubitDensity};
use crate::{Error, Result};

/// Rabi eigenvalue of tetrad `n` in units of `g`: `2 sqrt(n + 3/2)`.
pub fn rabi(n: usize) -> f64 {
    (4.0 * n as f64 + 6.0).sqrt()
}

/// One 4x4 block of the interaction Hamiltonian in units of `hbar g`.
#[derive(Clone, Debug)]
pub struct TetradBlock {
    pub n: usize,
    pub matrix: [[f64; 4]; 4],
}

impl TetradBlock {
    pub fn new(n: usize) -> Self {
        let a = ((n + 1) as f64).sqrt();
        let b = ((n + 2) as f64).sqrt();
        TetradBlock {
            n,
            matrix: [
                [0.0, a, a, 0.0],
                [a, 0.0, 0.0, b],
                [a, 0.0, 0.0, b],
                [0.0, b, b, 0.0],
            ],
        }
    }

    /// Eigenvalues `{0, 0, -2 sqrt(n+3/2), +2 sqrt(n+3/2)}`.
    pub fn eigenvalues(&self) -> [f64; 4] {
        let r = rabi(self.n);
        [0.0, 0.0, -r, r]
    }
}

/// Interaction block for tetrad `n` (see [`TetradBlock::new`]).
pub fn hint_block(n: usize) -> TetradBlock {
    TetradBlock::new(n)
}

/// Orthonormal eigenvectors of a tetrad block, rows ordered as
/// `|1⟩_n, |2⟩_n, |3⟩_n, |4⟩_n` with eigenvalues `0, 0, -rabi, +rabi`.
#[derive(Clone, Debug)]
pub struct DressedBasis {
    pub n: usize,
    pub vectors: [[f64; 4]; 4],
}

impl DressedBasis {
    pub fn new(n: usize) -> Self {
        let nf = n as f64;
        let v1 = [
            -((nf + 2.0) / (2.0 * nf + 3.0)).sqrt(),
            0.0,
            0.0,
            ((nf + 1.0) / (2.0 * nf + 3.0)).sqrt(),
        ];
        let v2 = [
            0.0,
            std::f64::consts::FRAC_1_SQRT_2,
            -std::f64::consts::FRAC_1_SQRT_2,
            0.0,
        ];
        let p = ((nf + 1.0) / (4.0 * nf + 6.0)).sqrt();
        let q = ((nf + 2.0) / (4.0 * nf + 6.0)).sqrt();
        let v3 = [p, -0.5, -0.5, q];
        let v4 = [p, 0.5, 0.5, q];
        DressedBasis {
            n,
            vectors: [v1, v2, v3, v4],
        }
    }

    /// Eigenvalues matching the row order of `vectors`.
    pub fn eigenvalues(&self) -> [f64; 4] {
        let r = rabi(self.n);
        [0.0, 0.0, -r, r]
    }

    /// `sum_k E_k |k⟩⟨k|`, which must reproduce the tetrad block.
    pub fn reconstruct(&self) -> [[f64; 4]; 4] {
        let e = self.eigenvalues();
        let mut out = [[0.0; 4]; 4];
        for k in 0..4 {
            let v = self.vectors[k];
            for i in 0..4 {
                for j in 0..4 {
                    out[i][j] += e[k] * v[i] * v[j];
                }
            }
        }
        out
    }
}

/// Dressed basis of tetrad `n` (see [`DressedBasis::new`]).
pub fn dressed_states(n: usize) -> DressedBasis {
    DressedBasis::new(n)
}

/// Which thermal Rabi sum to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HOrder {
    /// `h1(t) = sum_n p_n cos(alpha_{n-1} t) / (n + 1/2)`
    H1,
    /// `h2(t) = sum_n p_n cos(alpha_{n-1} t)`
    H2,
}

/// Thermal Rabi sum at dimensionless time `gt`, truncated at the spec's
/// `n_max`. The frequency paired with weight `p_n` is
/// `alpha_{n-1} = 2 sqrt(n + 1/2)` in units of `g`.
pub fn h_series(spec: &ThermalSpec, gt: f64, order: HOrder) -> f64 {
    let mut sum = 0.0;
    for n in 0..=spec.n_max() {
        let nf = n as f64;
        let angle = 2.0 * (nf + 0.5).sqrt() * gt;
        let term = spec.weight(n) * angle.cos();
        sum += match order {
            HOrder::H1 => term / (nf + 0.5),
            HOrder::H2 => term,
        };
    }
    sum
}

/// How to evaluate the inverse-hyperbolic factor in `m±`. `Artanh` is the
/// convention consistent with `rho(0)` reproducing the input state;
/// `ArctanDebug` exists only so the verification command can demonstrate
/// that the alternative spelling breaks the `t = 0` identity at finite
/// temperature.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MConvention {
    Artanh,
    ArctanDebug,
}

/// `m± = 1 ± M f(e^{-kappa})` with `M = (1 - e^{-2 kappa}) e^{kappa}`,
/// `f = artanh`. Satisfies `m+ = 1 + h1(0)/2` and `m+ + m- = 2` exactly;
/// in the vacuum limit `(m+, m-) = (2, 0)`.
pub fn m_constants(spec: &ThermalSpec) -> (f64, f64) {
    m_constants_with(spec, MConvention::Artanh)
}

/// `m±` with a selectable inverse-function convention (see [`MConvention`]).
pub fn m_constants_with(spec: &ThermalSpec, convention: MConvention) -> (f64, f64) {
    let kappa = spec.kappa();
    if kappa.is_infinite() {
        return (2.0, 0.0);
    }
    let em = (-kappa).exp();
    let big_m = (1.0 - (-2.0 * kappa).exp()) * kappa.exp();
    let f = match convention {
        MConvention::Artanh => em.atanh(),
        MConvention::ArctanDebug => em.atan(),
    };
    (1.0 + big_m * f, 1.0 - big_m * f)
}

/// Closed-form matrix elements for the `sin β |01⟩ + cos β |10⟩` family.
#[derive(Clone, Copy, Debug)]
pub struct PhiCoeffs {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub a4: f64,
    pub a5: f64,
    pub gt: f64,
    pub h1_2t: f64,
    pub h2_t: f64,
    pub h2_2t: f64,
    pub m_plus: f64,
    pub m_minus: f64,
}

impl PhiCoeffs {
    pub fn compute(beta: f64, spec: &ThermalSpec, gt: f64) -> Self {
        Self::compute_with(beta, spec, gt, MConvention::Artanh)
    }

    pub fn compute_with(beta: f64, spec: &ThermalSpec, gt: f64, convention: MConvention) -> Self {
        let s2 = (2.0 * beta).sin();
        let c2 = (2.0 * beta).cos();
        let h2_2t = h_series(spec, 2.0 * gt, HOrder::H2);
        let h1_2t = h_series(spec, 2.0 * gt, HOrder::H1);
        let h2_t = h_series(spec, gt, HOrder::H2);
        let (m_plus, m_minus) = m_constants_with(spec, convention);
        let plus = 0.125 * (1.0 + s2);
        let a1 = plus * (m_plus - h2_2t - 0.5 * h1_2t);
        let a2 = plus * (1.0 + h2_2t) - 0.5 * h2_t * c2 + 0.25 * (1.0 - s2);
        let a3 = plus * (1.0 + h2_2t) - 0.25 * (1.0 - s2);
        let a4 = plus * (1.0 + h2_2t) + 0.5 * h2_t * c2 + 0.25 * (1.0 - s2);
        let a5 = plus * (m_minus - h2_2t + 0.5 * h1_2t);
        PhiCoeffs {
            a1,
            a2,
            a3,
            a4,
            a5,
            gt,
            h1_2t,
            h2_t,
            h2_2t,
            m_plus,
            m_minus,
        }
    }

    /// Population sum `a1 + a2 + a4 + a5` (should be 1).
    pub fn diagonal_sum(&self) -> f64 {
        self.a1 + self.a2 + self.a4 + self.a5
    }

    /// Assemble the density matrix in the fixed basis order: `a1` is the
    /// `|00⟩` population, `a5` the `|11⟩` one, `a2`/`a4` sit on `|01⟩`/`|10⟩`
    /// and `a3` is the central coherence.
    pub fn to_density(&self) -> TwoQubitDensity {
        let z = C64::new(0.0, 0.0);
        let r = |x: f64| C64::new(x, 0.0);
        TwoQubitDensity::from_matrix([
            [r(self.a5), z, z, z],
            [z, r(self.a4), r(self.a3), z],
            [z, r(self.a3), r(self.a2), z],
            [z, z, z, r(self.a1)],
        ])
    }
}

/// Closed-form matrix elements for the `sin β |00⟩ + cos β |11⟩` family.
#[derive(Clone, Copy, Debug)]
pub struct PsiCoeffs {
    pub b1: f64,
    pub b2: C64,
    pub b3: f64,
    pub b4: f64,
    pub gt: f64,
}

impl PsiCoeffs {
    /// `omega_over_g` sets the free-evolution phase `e^{2 i Omega t}`
    /// carried by `b2`; every derived quantity depends only on `|b2|`, so
    /// the default elsewhere is zero.
    pub fn compute(beta: f64, spec: &ThermalSpec, gt: f64, omega_over_g: f64) -> Self {
        let sb2 = beta.sin() * beta.sin();
        let cb2 = beta.cos() * beta.cos();
        let mut b1 = 0.0;
        let mut b2_sum = 0.0;
        let mut b3 = 0.0;
        let mut b4 = 0.0;
        for n in 0..=spec.n_max() {
            let p = spec.weight(n);
            let nf = n as f64;

            // cos^2 beta part, tetrad n
            let c0 = (2.0 * (nf + 1.5).sqrt() * gt).cos();
            let s0 = (2.0 * (nf + 1.5).sqrt() * gt).sin();
            let q1 = (nf + 1.0) * (nf + 2.0) / ((2.0 * nf + 3.0) * (2.0 * nf + 3.0))
                * (1.0 - c0)
                * (1.0 - c0);
            let q2 = ((nf + 2.0) + (nf + 1.0) * c0) / (2.0 * nf + 3.0);
            let q3 = (nf + 1.0) / (4.0 * nf + 6.0) * s0 * s0;

            // sin^2 beta part, tetrad n-2; the n = 0 prefactors n/(2n-1)
            // and n/(4n-2) vanish, so the (imaginary-frequency) cosine is
            // never evaluated there.
            let (inner, r1, r3, r4) = if n == 0 {
                (1.0, 1.0, 0.0, 0.0)
            } else {
                let cm = (2.0 * (nf - 0.5).sqrt() * gt).cos();
                let sm = (2.0 * (nf - 0.5).sqrt() * gt).sin();
                let inner = ((nf - 1.0) + nf * cm) / (2.0 * nf - 1.0);
                let r1 = inner * inner;
                let r3 = nf / (4.0 * nf - 2.0) * sm * sm;
                let r4 = nf * (nf - 1.0) / ((2.0 * nf - 1.0) * (2.0 * nf - 1.0))
                    * (1.0 - cm)
                    * (1.0 - cm);
                (inner, r1, r3, r4)
            };

            b1 += p * (sb2 * r1 + cb2 * q1);
            b2_sum += p * inner * q2;
            b3 += p * (sb2 * r3 + cb2 * q3);
            b4 += p * (sb2 * r4 + cb2 * q2 * q2);
        }
        let phase = C64::new(0.0, 2.0 * omega_over_g * gt).exp();
        let b2 = phase * (beta.sin() * beta.cos() * b2_sum);
        PsiCoeffs { b1, b2, b3, b4, gt }
    }

    /// `b1 + 2 b3 + b4` (should be 1 up to the truncation tail).
    pub fn diagonal_sum(&self) -> f64 {
        self.b1 + 2.0 * self.b3 + self.b4
    }

    /// Assemble the density matrix in the fixed basis order: `b1` is the
    /// `|00⟩` population, `b4` the `|11⟩` one, `b3` fills the central block
    /// and `b2 = ⟨00|rho|11⟩` the outer coherence.
    pub fn to_density(&self) -> TwoQubitDensity {
        let z = C64::new(0.0, 0.0);
        let r = |x: f64| C64::new(x, 0.0);
        TwoQubitDensity::from_matrix([
            [r(self.b4), z, z, self.b2.conj()],
            [z, r(self.b3), r(self.b3), z],
            [z, r(self.b3), r(self.b3), z],
            [self.b2, z, z, r(self.b1)],
        ])
    }
}

/// Closed-form reduced density matrix for the Phi family at time `gt`.
/// At `gt = 0` this is exactly the input projector.
pub fn phi_reduced(beta: f64, spec: &ThermalSpec, gt: f64) -> TwoQubitDensity {
    PhiCoeffs::compute(beta, spec, gt).to_density()
}

/// Closed-form reduced density matrix for the Psi family at time `gt`.
pub fn psi_reduced(beta: f64, spec: &ThermalSpec, gt: f64, omega_over_g: f64) -> TwoQubitDensity {
    PsiCoeffs::compute(beta, spec, gt, omega_over_g).to_density()
}

struct SectorEig {
    evals: Vec<f64>,
    vecs: CMat,
}

impl SectorEig {
    fn from_real_block(block: &[Vec<f64>]) -> Self {
        let rows: Vec<Vec<C64>> = block
            .iter()
            .map(|row| row.iter().map(|&x| C64::new(x, 0.0)).collect())
            .collect();
        let (evals, vecs) = eigh(&CMat::from_rows(&rows));
        SectorEig { evals, vecs }
    }

    /// `y = V e^{-i E gt} V^dag x`.
    fn evolve(&self, x: &[C64], gt: f64, y: &mut [C64]) {
        let d = self.evals.len();
        for yk in y.iter_mut().take(d) {
            *yk = C64::new(0.0, 0.0);
        }
        for k in 0..d {
            let mut proj = C64::new(0.0, 0.0);
            for i in 0..d {
                proj += self.vecs[(i, k)].conj() * x[i];
            }
            let phase = C64::new(0.0, -self.evals[k] * gt).exp();
            let amp = phase * proj;
            for i in 0..d {
                y[i] += self.vecs[(i, k)] * amp;
            }
        }
    }
}

/// Brute-force evolution of the full atom-field state, independent of the
/// closed forms: every excitation sector of the truncated Fock x atom space
/// is eigendecomposed numerically and the field traced out at the end.
pub struct OracleEvolver {
    spec: ThermalSpec,
    triad: SectorEig,
    tetrads: Vec<SectorEig>,
}

impl OracleEvolver {
    pub fn new(spec: ThermalSpec) -> Self {
        let triad = SectorEig::from_real_block(&[
            vec![0.0, 0.0, 1.0],
            vec![0.0, 0.0, 1.0],
            vec![1.0, 1.0, 0.0],
        ]);
        let tetrads = (0..=spec.n_max())
            .map(|n| {
                let b = TetradBlock::new(n).matrix;
                let rows: Vec<Vec<f64>> = b.iter().map(|r| r.to_vec()).collect();
                SectorEig::from_real_block(&rows)
            })
            .collect();
        OracleEvolver {
            spec,
            triad,
            tetrads,
        }
    }

    pub fn spec(&self) -> &ThermalSpec {
        &self.spec
    }

    /// Reduced atomic state at dimensionless time `gt`.
    pub fn evolve(&self, fam: &AtomicFamily, gt: f64) -> Result<TwoQubitDensity> {
        let tail = self.spec.tail();
        if tail > self.spec.epsilon_tail() {
            return Err(Error::Truncation(format!(
                "initial state carries weight {tail:.3e} beyond the truncated space \
                 (epsilon_tail = {:.3e})",
                self.spec.epsilon_tail()
            )));
        }

        let n_max = self.spec.n_max();
        let zero = C64::new(0.0, 0.0);
        // amplitudes[field][atom index], reused across field components m
        let mut amps: Vec<[C64; 4]> = vec![[zero; 4]; n_max + 3];
        let mut touched: Vec<usize> = Vec::with_capacity(8);
        let mut rho = [[zero; 4]; 4];

        let sin_b = C64::new(fam.beta.sin(), 0.0);
        let cos_b = C64::new(fam.beta.cos(), 0.0);
        let mut x = [zero; 4];
        let mut y = [zero; 4];

        for m in 0..=n_max {
            let p = self.spec.weight(m);
            for &f in &touched {
                amps[f] = [zero; 4];
            }
            touched.clear();

            match fam.family {
                Family::Phi => {
                    if m == 0 {
                        // triad (|0,10>, |0,01>, |1,00>)
                        x[0] = cos_b;
                        x[1] = sin_b;
                        x[2] = zero;
                        self.triad.evolve(&x[..3], gt, &mut y[..3]);
                        amps[0][1] += y[0];
                        amps[0][2] += y[1];
                        amps[1][3] += y[2];
                        touched.extend_from_slice(&[0, 1]);
                    } else {
                        let sector = &self.tetrads[m - 1];
                        x = [zero, cos_b, sin_b, zero];
                        sector.evolve(&x, gt, &mut y);
                        amps[m - 1][0] += y[0];
                        amps[m][1] += y[1];
                        amps[m][2] += y[2];
                        amps[m + 1][3] += y[3];
                        touched.extend_from_slice(&[m - 1, m, m + 1]);
                    }
                }
                Family::Psi => {
                    // |m,11> component lives in tetrad m
                    let sector = &self.tetrads[m];
                    x = [cos_b, zero, zero, zero];
                    sector.evolve(&x, gt, &mut y);
                    amps[m][0] += y[0];
                    amps[m + 1][1] += y[1];
                    amps[m + 1][2] += y[2];
                    amps[m + 2][3] += y[3];
                    touched.extend_from_slice(&[m, m + 1, m + 2]);

                    // |m,00> component
                    match m {
                        0 => {
                            amps[0][3] += sin_b;
                            touched.push(0);
                        }
                        1 => {
                            x[0] = zero;
                            x[1] = zero;
                            x[2] = sin_b;
                            self.triad.evolve(&x[..3], gt, &mut y[..3]);
                            amps[0][1] += y[0];
                            amps[0][2] += y[1];
                            amps[1][3] += y[2];
                            touched.extend_from_slice(&[0, 1]);
                        }
                        _ => {
                            let sector = &self.tetrads[m - 2];
                            x = [zero, zero, zero, sin_b];
                            sector.evolve(&x, gt, &mut y);
                            amps[m - 2][0] += y[0];
                            amps[m - 1][1] += y[1];
                            amps[m - 1][2] += y[2];
                            amps[m][3] += y[3];
                            touched.extend_from_slice(&[m - 2, m - 1]);
                        }
                    }
                }
            }

            touched.sort_unstable();
            touched.dedup();
            for &f in &touched {
                let v = &amps[f];
                for i in 0..4 {
                    if v[i] == zero {
                        continue;
                    }
                    for j in 0..4 {
                        rho[i][j] += p * v[i] * v[j].conj();
                    }
                }
            }
        }

        Ok(TwoQubitDensity::from_matrix(rho))
    }
}

/// Convenience wrapper constructing a fresh [`OracleEvolver`].
pub fn oracle_evolve(fam: &AtomicFamily, spec: &ThermalSpec, gt: f64) -> Result<TwoQubitDensity> {
    OracleEvolver::new(spec.clone()).evolve(fam, gt)
}

/// Time average of the vacuum Phi-family state over one period of the
/// commensurable Rabi frequencies (entries in units of 1/8).
pub fn averaged_phi_vacuum(beta: f64) -> TwoQubitDensity {
    let s = (2.0 * beta).sin();
    let z = C64::new(0.0, 0.0);
    let r = |x: f64| C64::new(x, 0.0);
    TwoQubitDensity::from_matrix([
        [z, z, z, z],
        [z, r((3.0 - s) / 8.0), r((3.0 * s - 1.0) / 8.0), z],
        [z, r((3.0 * s - 1.0) / 8.0), r((3.0 - s) / 8.0), z],
        [z, z, z, r(2.0 * (1.0 + s) / 8.0)],
    ])
}

/// Infinite-time average of the vacuum Psi-family state: every oscillatory
/// term, including the free-evolution phase on the outer coherence, is
/// dropped (entries in units of 1/12).
pub fn averaged_psi_vacuum(beta: f64) -> TwoQubitDensity {
    let s = (2.0 * beta).sin();
    let c2 = beta.cos() * beta.cos();
    let cos2b = (2.0 * beta).cos();
    let z = C64::new(0.0, 0.0);
    let r = |x: f64| C64::new(x, 0.0);
    TwoQubitDensity::from_matrix([
        [r(6.0 * c2 / 12.0), z, z, r(4.0 * s / 12.0)],
        [z, r(c2 / 12.0), r(c2 / 12.0), z],
        [z, r(c2 / 12.0), r(c2 / 12.0), z],
        [r(4.0 * s / 12.0), z, z, r(4.0 * (2.0 - cos2b) / 12.0)],
    ])
}

/// Uniform-grid trapezoid average of the closed-form reduced state over
/// `gt in [0, window]`.
pub fn numeric_time_average(
    fam: &AtomicFamily,
    spec: &ThermalSpec,
    window: f64,
    samples: usize,
    omega_over_g: f64,
) -> Result<TwoQubitDensity> {
    if window.is_nan() || window <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "averaging window must be positive, got {window}"
        )));
    }
    if samples < 2 {
        return Err(Error::InvalidParameter(format!(
            "need at least 2 samples, got {samples}"
        )));
    }
    let h = window / (samples - 1) as f64;
    let zero = C64::new(0.0, 0.0);
    let mut acc = [[zero; 4]; 4];
    for k in 0..samples {
        let gt = k as f64 * h;
        let rho = match fam.family {
            Family::Phi => phi_reduced(fam.beta, spec, gt),
            Family::Psi => psi_reduced(fam.beta, spec, gt, omega_over_g),
        };
        let w = if k == 0 || k == samples - 1 { 0.5 } else { 1.0 };
        for i in 0..4 {
            for j in 0..4 {
                acc[i][j] += w * rho.entry(i, j);
            }
        }
    }
    let norm = 1.0 / (samples - 1) as f64;
    for row in acc.iter_mut() {
        for v in row.iter_mut() {
            *v *= norm;
        }
    }
    Ok(TwoQubitDensity::from_matrix(acc))
}
