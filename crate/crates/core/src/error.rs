use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error in {function}: {detail}")]
    Domain {
        function: &'static str,
        detail: String,
    },

    #[error("{function} did not converge; root bracketed in [{lo}, {hi}]")]
    Bracket {
        function: &'static str,
        lo: f64,
        hi: f64,
    },

    #[error("{function} did not converge after {iterations} iterations")]
    Convergence {
        function: &'static str,
        iterations: usize,
    },

    #[error("series truncated after {terms} terms with tail bound {tail_bound:e}")]
    SeriesTruncation { terms: usize, tail_bound: f64 },

    #[error("quadrature error estimate {estimate:e} exceeds tolerance {tolerance:e}")]
    Quadrature { estimate: f64, tolerance: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no feasible gap parameters in d={d}: {reason}")]
    Infeasible { d: u32, reason: String },

    #[error("structure factor minimum {min_s:e} at k={k} is below the nonnegativity tolerance")]
    NegativeStructureFactor { k: f64, min_s: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(function: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            function,
            detail: detail.into(),
        }
    }

    pub(crate) fn invalid(detail: impl Into<String>) -> Self {
        Error::InvalidParameter(detail.into())
    }

    /// Whether the error stems from bad user input rather than a numerical failure.
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::Domain { .. } | Error::InvalidParameter(_))
    }
}
