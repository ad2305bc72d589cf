use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by estimation, simulation and report handling.
#[derive(Debug, Error)]
pub enum Error {
    /// A caller-supplied value violates an operation's precondition.
    #[error("invalid input: {0}")]
    Input(String),

    /// Every kernel product vanished, so the weights cannot be normalized.
    #[error("EmptyNeighborhood: no observations in the kernel window at t={t_index} (h={h})")]
    EmptyNeighborhood { t_index: usize, h: f64 },

    /// A signed kernel produced a negative weight while signed weights are disabled,
    /// or a distribution was requested from signed weights.
    #[error("SignedWeights: kernel '{kernel}' produced a negative weight; pass --allow-signed-weights to estimate the mean only")]
    SignedWeights { kernel: String },

    /// The rescaled evaluation time lies outside [C1*h, 1 - C1*h].
    #[error("BoundaryRegion: u={u:.6} lies outside I_h=[{lower:.6}, {upper:.6}]; use --force-boundary to evaluate anyway")]
    BoundaryRegion { u: f64, lower: f64, upper: f64 },

    #[error("{context}: {source}")]
    Context {
        context: String,
        #[source]
        source: Box<Error>,
    },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    /// Wraps the error with a description of where it happened.
    pub fn context(self, context: impl Into<String>) -> Self {
        Error::Context {
            context: context.into(),
            source: Box::new(self),
        }
    }

    /// The innermost error, skipping any context wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::Context { source, .. } => source.root(),
            other => other,
        }
    }

    /// True for the structured estimation failures (empty window, boundary, signed weights).
    pub fn is_computation(&self) -> bool {
        matches!(
            self.root(),
            Error::EmptyNeighborhood { .. } | Error::SignedWeights { .. } | Error::BoundaryRegion { .. }
        )
    }
}
