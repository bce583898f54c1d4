use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("argument outside the domain: {0}")]
    Domain(String),

    #[error("size error: {0}")]
    Size(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("root bracketing failed: expected {expected} roots, found {found}")]
    Bracketing { expected: usize, found: usize },

    #[error("no sign change of psi on bracket [{lo:.17e}, {hi:.17e}]")]
    Interlacing { lo: f64, hi: f64 },

    #[error("collocation node search blew up: expected {expected} roots, found {found}; sign changes at {trace}")]
    BlowUp {
        expected: usize,
        found: usize,
        trace: String,
    },

    #[error("singular matrix: pivot magnitude {pivot:.3e}")]
    Singular { pivot: f64 },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("tolerance not reached: best value {best:.17e}, estimated error {est_error:.3e}")]
    Tolerance { best: f64, est_error: f64 },
}

impl Error {
    /// True for failures of the numerics (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Bracketing { .. }
                | Error::Interlacing { .. }
                | Error::BlowUp { .. }
                | Error::Singular { .. }
                | Error::Numerical(_)
                | Error::Tolerance { .. }
        )
    }
}
