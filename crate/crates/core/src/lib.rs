//! Two identical two-level atoms resonantly coupled to a single-mode thermal
//! field: exact interaction-picture dynamics in the Tavis-Cummings model,
//! two-qubit entanglement measures, and postselection of a maximally
//! entangled pair from the evolved state.
//!
//! The crate is organised around the two families of pure atomic input
//! states, `sin β |01⟩ + cos β |10⟩` and `sin β |00⟩ + cos β |11⟩`, mixed
//! with a thermal photon distribution of mean `n̄`:
//!
//! * [`qcore`] — states, thermal weights, density-matrix validation,
//!   partial transpose.
//! * [`dynamics`] — interaction blocks, dressed bases, closed-form reduced
//!   density matrices, time averages, and an independent brute-force
//!   evolution used as an oracle.
//! * [`entanglement`] — Wootters concurrence, entanglement of formation,
//!   negativity, and a fast closed form for X-shaped states.
//! * [`postselect`] — extraction of the `(|01⟩+|10⟩)/√2` component and its
//!   non-demolition discrimination circuit.
//! * [`abelplana`] — integral and hot-environment asymptotics of the
//!   thermal Rabi sum `h₂`, the Dawson function, and the natural time
//!   scale `τ₀`.
//!
//! All quantities are dimensionless: times enter as `gt` with `g` the
//! atom-field coupling, and temperatures as `κ = ħΩ/2kT` or equivalently
//! the mean photon number `n̄ = 1/(e^{2κ} − 1)`.

// Index pairs mirror the matrix algebra throughout.
#![allow(clippy::needless_range_loop)]

pub mod abelplana;
pub mod dynamics;
pub mod entanglement;
mod error;
pub(crate) mod linalg;
pub mod postselect;
pub mod qcore;
pub mod quad;
#[cfg(test)]
pub(crate) mod testutil;

pub use error::Error;
pub use num_complex::Complex64 as C64;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;

pub use abelplana::{dawson, h2_hot, h2_integral, tau0, AsymptoticParams};
pub use dynamics::{
    averaged_phi_vacuum, averaged_psi_vacuum, dressed_states, h_series, hint_block, m_constants,
    m_constants_with, numeric_time_average, oracle_evolve, phi_reduced, psi_reduced, rabi,
    DressedBasis, HOrder, MConvention, OracleEvolver, PhiCoeffs, PsiCoeffs, TetradBlock,
};
pub use entanglement::{
    binary_entropy, concurrence, concurrence_lambdas, eof, eof_from_concurrence, measures,
    negativity, xstate_concurrence, MeasureResult,
};
pub use postselect::{
    branch_mixture, decompose, measure_three_outcome, nondemolition_circuit, p1_statistics,
    rest_state, triplet_projector, P1BetaSummary, P1Statistics, PostselectDecomposition,
    ThreeOutcome,
};
pub use qcore::{
    kappa_to_nbar, nbar_to_kappa, AtomicFamily, Family, ThermalSpec, TwoQubitDensity,
    ValidityReport, BASIS_LABELS, DEFAULT_EPSILON_TAIL,
};
