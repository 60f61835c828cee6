//! Elementary two-qubit and field-state machinery.
//!
//! The two-qubit basis order is fixed throughout the crate as
//! `(|11⟩, |10⟩, |01⟩, |00⟩)`, i.e. index 0 has both atoms excited and
//! index 3 has both in the ground state.

use num_complex::Complex64 as C64;

use crate::linalg::{eigvalsh, CMat};
use crate::{Error, Result};

/// Basis labels in the fixed ordering used by every 4x4 matrix here.
pub const BASIS_LABELS: [&str; 4] = ["|11>", "|10>", "|01>", "|00>"];

/// Default truncation tolerance for the thermal photon distribution.
pub const DEFAULT_EPSILON_TAIL: f64 = 1e-12;

/// Mean photon number for a given `kappa = hbar*Omega / 2kT`.
pub fn kappa_to_nbar(kappa: f64) -> f64 {
    1.0 / ((2.0 * kappa).exp_m1())
}

/// `kappa = hbar*Omega / 2kT` for a given mean photon number; infinite at
/// `nbar = 0`.
pub fn nbar_to_kappa(nbar: f64) -> f64 {
    if nbar == 0.0 {
        f64::INFINITY
    } else {
        0.5 * (1.0 + 1.0 / nbar).ln()
    }
}

/// Thermal single-mode field: geometric photon-number distribution with
/// mean `nbar`, truncated where the remaining tail weight drops below
/// `epsilon_tail`.
#[derive(Clone, Debug)]
pub struct ThermalSpec {
    nbar: f64,
    kappa: f64,
    epsilon_tail: f64,
    n_max: usize,
}

impl ThermalSpec {
    /// Build from the mean photon number.
    pub fn new(nbar: f64, epsilon_tail: f64) -> Result<Self> {
        if !nbar.is_finite() || nbar < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "mean photon number must be finite and >= 0, got {nbar}"
            )));
        }
        if epsilon_tail.is_nan() || epsilon_tail <= 0.0 || epsilon_tail >= 1.0 {
            return Err(Error::InvalidParameter(format!(
                "epsilon_tail must lie in (0, 1), got {epsilon_tail}"
            )));
        }
        let kappa = nbar_to_kappa(nbar);
        let n_max = if nbar == 0.0 {
            0
        } else {
            // Tail after N is (nbar/(1+nbar))^{N+1} = e^{-2 kappa (N+1)}.
            // Half the tolerance buys headroom against summation rounding,
            // so the weight vector really sums to >= 1 - epsilon_tail.
            let ratio = nbar / (1.0 + nbar);
            let n = ((0.5 * epsilon_tail).ln() / ratio.ln() - 1.0)
                .ceil()
                .max(0.0);
            n as usize
        };
        Ok(ThermalSpec {
            nbar,
            kappa,
            epsilon_tail,
            n_max,
        })
    }

    /// Build from `kappa = hbar*Omega / 2kT`.
    pub fn from_kappa(kappa: f64, epsilon_tail: f64) -> Result<Self> {
        if kappa.is_nan() || kappa <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "kappa must be positive, got {kappa}"
            )));
        }
        Self::new(kappa_to_nbar(kappa), epsilon_tail)
    }

    /// Vacuum field (`nbar = 0`).
    pub fn vacuum() -> Self {
        ThermalSpec::new(0.0, DEFAULT_EPSILON_TAIL).unwrap()
    }

    pub fn nbar(&self) -> f64 {
        self.nbar
    }

    /// `hbar*Omega / 2kT`; infinite for the vacuum.
    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn epsilon_tail(&self) -> f64 {
        self.epsilon_tail
    }

    /// Largest photon number kept by the truncation.
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Photon-number weight `p_n = nbar^n / (1+nbar)^{n+1}`.
    pub fn weight(&self, n: usize) -> f64 {
        if self.nbar == 0.0 {
            return if n == 0 { 1.0 } else { 0.0 };
        }
        let ratio = self.nbar / (1.0 + self.nbar);
        ratio.powi(n as i32) / (1.0 + self.nbar)
    }

    /// Truncated weight vector `p_0 ..= p_{n_max}`; sums to at least
    /// `1 - epsilon_tail`.
    pub fn weights(&self) -> Vec<f64> {
        (0..=self.n_max).map(|n| self.weight(n)).collect()
    }

    /// Weight assigned to photon numbers beyond `n_max`.
    pub fn tail(&self) -> f64 {
        if self.nbar == 0.0 {
            0.0
        } else {
            let ratio = self.nbar / (1.0 + self.nbar);
            ratio.powi(self.n_max as i32 + 1)
        }
    }
}

/// The two input-state families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `sin β |01⟩ + cos β |10⟩` (single-excitation family).
    Phi,
    /// `sin β |00⟩ + cos β |11⟩`.
    Psi,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Family::Phi => write!(f, "phi"),
            Family::Psi => write!(f, "psi"),
        }
    }
}

/// A pure atomic input state: family plus mixing angle `beta` in radians.
#[derive(Clone, Copy, Debug)]
pub struct AtomicFamily {
    pub family: Family,
    pub beta: f64,
}

impl AtomicFamily {
    pub fn new(family: Family, beta: f64) -> Self {
        AtomicFamily { family, beta }
    }

    /// Unit state vector in the fixed basis order.
    pub fn state_vector(&self) -> [C64; 4] {
        let s = C64::new(self.beta.sin(), 0.0);
        let c = C64::new(self.beta.cos(), 0.0);
        let zero = C64::new(0.0, 0.0);
        match self.family {
            Family::Phi => [zero, c, s, zero],
            Family::Psi => [c, zero, zero, s],
        }
    }

    /// Projector `|state⟩⟨state|`.
    pub fn density(&self) -> TwoQubitDensity {
        TwoQubitDensity::from_pure(&self.state_vector())
    }
}

/// Validation report for a candidate density matrix.
#[derive(Clone, Copy, Debug)]
pub struct ValidityReport {
    /// `max_ij |m[i][j] - conj(m[j][i])|`.
    pub hermiticity_defect: f64,
    /// `|Tr - 1|`.
    pub trace_defect: f64,
    /// Smallest eigenvalue of the symmetrized matrix.
    pub min_eigenvalue: f64,
    pub tol: f64,
    pub pass: bool,
}

/// A 4x4 two-qubit density matrix in the fixed basis order
/// `(|11⟩, |10⟩, |01⟩, |00⟩)`.
#[derive(Clone, Debug)]
pub struct TwoQubitDensity {
    m: [[C64; 4]; 4],
}

impl TwoQubitDensity {
    /// Wrap a raw matrix. No validation is performed; use
    /// [`TwoQubitDensity::validate`] to check the density-matrix axioms.
    pub fn from_matrix(m: [[C64; 4]; 4]) -> Self {
        TwoQubitDensity { m }
    }

    /// `|psi⟩⟨psi|` for a (not necessarily normalized) 4-vector.
    pub fn from_pure(psi: &[C64; 4]) -> Self {
        let norm_sqr: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        let mut m = [[C64::new(0.0, 0.0); 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                m[i][j] = psi[i] * psi[j].conj() / norm_sqr;
            }
        }
        TwoQubitDensity { m }
    }

    pub fn zeros() -> Self {
        TwoQubitDensity {
            m: [[C64::new(0.0, 0.0); 4]; 4],
        }
    }

    pub fn matrix(&self) -> &[[C64; 4]; 4] {
        &self.m
    }

    pub fn matrix_mut(&mut self) -> &mut [[C64; 4]; 4] {
        &mut self.m
    }

    pub fn entry(&self, i: usize, j: usize) -> C64 {
        self.m[i][j]
    }

    pub fn trace(&self) -> C64 {
        self.m[0][0] + self.m[1][1] + self.m[2][2] + self.m[3][3]
    }

    /// `(rho + rho^dag) / 2`.
    pub fn symmetrized(&self) -> TwoQubitDensity {
        let mut out = [[C64::new(0.0, 0.0); 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                out[i][j] = 0.5 * (self.m[i][j] + self.m[j][i].conj());
            }
        }
        TwoQubitDensity { m: out }
    }

    /// Largest absolute entry of the difference to `other`.
    pub fn max_abs_diff(&self, other: &TwoQubitDensity) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((self.m[i][j] - other.m[i][j]).norm());
            }
        }
        worst
    }

    pub(crate) fn to_cmat(&self) -> CMat {
        let mut c = CMat::zeros(4);
        for i in 0..4 {
            for j in 0..4 {
                c[(i, j)] = self.m[i][j];
            }
        }
        c
    }

    /// Check Hermiticity, unit trace and positive semidefiniteness.
    ///
    /// The eigenvalue check runs on the symmetrized matrix so that
    /// float-level asymmetries do not produce spurious complex spectra.
    pub fn validate(&self, tol: f64) -> ValidityReport {
        assert!(tol > 0.0, "validate: tolerance must be positive");
        let mut herm = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                herm = herm.max((self.m[i][j] - self.m[j][i].conj()).norm());
            }
        }
        let trace_defect = (self.trace() - C64::new(1.0, 0.0)).norm();
        let sym = self.symmetrized();
        let evals = eigvalsh(&sym.to_cmat());
        let min_eigenvalue = evals[0];
        let pass = herm <= tol && trace_defect <= tol && min_eigenvalue >= -tol;
        ValidityReport {
            hermiticity_defect: herm,
            trace_defect,
            min_eigenvalue,
            tol,
            pass,
        }
    }

    /// Partial transpose over the second qubit. The result is Hermitian and
    /// unit trace but may have negative eigenvalues.
    pub fn partial_transpose_second(&self) -> [[C64; 4]; 4] {
        // index -> (bit1, bit2) with 0 = |11>, 3 = |00>
        let bits = |i: usize| -> (usize, usize) { (1 - i / 2, 1 - i % 2) };
        let idx = |b1: usize, b2: usize| -> usize { (1 - b1) * 2 + (1 - b2) };
        let mut out = [[C64::new(0.0, 0.0); 4]; 4];
        for i in 0..4 {
            let (r1, r2) = bits(i);
            for j in 0..4 {
                let (c1, c2) = bits(j);
                // (r1 r2),(c1 c2) <- (r1 c2),(c1 r2)
                out[i][j] = self.m[idx(r1, c2)][idx(c1, r2)];
            }
        }
        out
    }
}
