use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A nonzero coefficient sits on a root of the Euler polynomial; the
    /// second (logarithmic) solution would be needed there.
    #[error("resonance at exponent {exponent}: F vanishes on a nonzero coefficient")]
    Resonance { exponent: String },

    #[error("{lambda} is not a root of the Euler polynomial")]
    NotIndicialRoot { lambda: String },

    #[error("operator has net degree shift {shift}; the series expansion needs at least 1")]
    InadmissibleOperator { shift: i32 },

    #[error("no admissible frequency for n={n}, m={m}, Z={z}")]
    NoBranch { n: usize, m: String, z: f64 },

    #[error("inconsistent parameters: {0}")]
    InconsistentParams(String),

    #[error("quadrature did not converge: error estimate {error:e} above tolerance {tolerance:e}")]
    QuadratureNonConvergence { error: f64, tolerance: f64 },

    #[error("no energy in [{lo}, {hi}] gives a trial state with {target} nodes")]
    NodeCountUnreachable { target: usize, lo: f64, hi: f64 },

    #[error("residual functional has no interior minimum in [{lo}, {hi}]")]
    Bracket { lo: f64, hi: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
