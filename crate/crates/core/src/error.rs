use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The phase of a wavefunction is undefined through a density zero.
    #[error("density node at grid point {index} (|psi| = {magnitude:e}); winding undefined")]
    NodeDetected { index: usize, magnitude: f64 },

    #[error("no seed converged within {max_iterations} iterations")]
    NotConverged { max_iterations: usize },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
