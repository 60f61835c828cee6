use thiserror::Error;

/// Errors reported by the simulation primitives.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter lies outside its admissible range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A numerical routine produced results outside its guaranteed bounds,
    /// usually a symptom of an invalid input matrix.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// The input matrix does not have the structure required by the
    /// operation (e.g. a non X-shaped matrix passed to an X-state routine).
    #[error("unexpected matrix structure: {0}")]
    Structure(String),

    /// A decomposition is undefined because the relevant weight vanishes.
    #[error("degenerate decomposition: {0}")]
    Degenerate(String),

    /// The truncated Fock space carries less initial weight than requested.
    #[error("insufficient Fock-space truncation: {0}")]
    Truncation(String),

    /// Adaptive quadrature exhausted its budget before reaching the
    /// requested tolerance.
    #[error("quadrature did not converge: requested {requested:.3e}, achieved {achieved:.3e}")]
    QuadratureNonConvergence { requested: f64, achieved: f64 },
}
