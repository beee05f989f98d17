use thiserror::Error;

/// Error type shared by every module in the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A caller-supplied value violated a documented precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A size or iteration guard tripped before the computation started.
    #[error("resource limit: {0}")]
    ResourceLimit(String),

    /// A matrix expected to be positive semidefinite had an eigenvalue below
    /// the negative tolerance.
    #[error("not positive semidefinite: eigenvalue {eigenvalue:e} is below -{tolerance:e}")]
    NotPsd { eigenvalue: f64, tolerance: f64 },

    /// The Jacobi eigensolver failed to reach its off-diagonal threshold.
    #[error(
        "eigensolver did not converge in {sweeps} sweeps (off-diagonal norm {off_diagonal:e})"
    )]
    NoConvergence { sweeps: usize, off_diagonal: f64 },

    /// Randomized code search ran out of candidates.
    #[error(
        "code search exhausted {attempts} candidates: best distance {best_distance}, required {required}"
    )]
    CodeSearchFailed {
        attempts: usize,
        best_distance: usize,
        required: usize,
    },

    /// An empirical search hit its ceiling without meeting the target.
    #[error("search ceiling {ceiling} reached without meeting the target")]
    SearchCeiling { ceiling: u64 },

    /// An internal numerical consistency check failed.
    #[error("numerical consistency failure: {0}")]
    Numerics(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Error::ResourceLimit(msg.into())
    }
}
