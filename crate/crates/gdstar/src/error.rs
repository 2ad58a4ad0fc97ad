//! Error type shared by all modules.

use std::fmt;

/// Domain errors. Shape preconditions on internal arithmetic panic instead;
/// user-facing entry points (CLI, file I/O) validate shapes before calling in.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Matrix entries must be finite on construction.
    NonFinite,
    /// Operand shapes do not agree.
    ShapeMismatch {
        expected: (usize, usize),
        got: (usize, usize),
    },
    /// A square matrix was required.
    NotSquare,
    /// Tolerance fields must lie strictly inside (0, 1).
    BadTolerance,
    /// Requested (size, rank, index) combination cannot be realized.
    Infeasible(String),
    /// Group inverse requested for a matrix of index above one.
    IndexTooLarge { index: usize },
    /// Supplied matrix fails the witness equations it was claimed to satisfy.
    InvalidWitness { residual: f64 },
    /// The chosen order relation needs a witness and none was supplied.
    MissingWitness,
    /// Triangular Sylvester solve left a residual above tolerance.
    IllConditioned { residual: f64 },
    /// Operation rejects the zero matrix.
    ZeroMatrix,
    /// Linear system has no solution within tolerance.
    Inconsistent { residual: f64 },
    /// Perturbation too large: the Neumann-series contraction fails.
    ContractionViolated { norm: f64 },
    /// Matrix is not a partial isometry.
    NotPartialIsometry,
    /// Characterization requires a unitarily block-diagonalizable matrix.
    NotApplicable(String),
    /// Hypotheses of an equivalence suite do not hold.
    HypothesisViolated(String),
    /// Transition matrix is not row-stochastic.
    NotStochastic(String),
    /// Chain is not ergodic (spectral gap test failed).
    NotErgodic { second_eigenvalue: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonFinite => write!(f, "matrix entries must be finite"),
            Error::ShapeMismatch { expected, got } => write!(
                f,
                "shape mismatch: expected {}x{}, got {}x{}",
                expected.0, expected.1, got.0, got.1
            ),
            Error::NotSquare => write!(f, "square matrix required"),
            Error::BadTolerance => write!(f, "tolerance fields must lie in (0, 1)"),
            Error::Infeasible(msg) => write!(f, "infeasible request: {msg}"),
            Error::IndexTooLarge { index } => {
                write!(f, "group inverse requires index <= 1, matrix has index {index}")
            }
            Error::InvalidWitness { residual } => {
                write!(f, "witness fails its defining equations (residual {residual:.3e})")
            }
            Error::MissingWitness => write!(f, "order relation requires a witness"),
            Error::IllConditioned { residual } => {
                write!(f, "ill-conditioned solve (residual {residual:.3e})")
            }
            Error::ZeroMatrix => write!(f, "zero matrix rejected"),
            Error::Inconsistent { residual } => {
                write!(f, "system inconsistent (residual {residual:.3e})")
            }
            Error::ContractionViolated { norm } => {
                write!(f, "perturbation norm {norm:.3e} is not below one")
            }
            Error::NotPartialIsometry => write!(f, "matrix is not a partial isometry"),
            Error::NotApplicable(msg) => write!(f, "not applicable: {msg}"),
            Error::HypothesisViolated(msg) => write!(f, "hypothesis violated: {msg}"),
            Error::NotStochastic(msg) => write!(f, "not row-stochastic: {msg}"),
            Error::NotErgodic { second_eigenvalue } => write!(
                f,
                "chain not ergodic: second eigenvalue modulus {second_eigenvalue:.6}"
            ),
        }
    }
}

impl std::error::Error for Error {}
