use thiserror::Error;

/// Failure modes shared by every evaluator in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QError {
    /// A denominator factor came within `pole_eps` of zero.
    #[error("pole: {0}")]
    Pole(String),

    /// An argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A series or lattice sum failed to settle. `history` carries the
    /// magnitudes of the last partial contributions (terms or shell sums).
    #[error("no convergence: {message}")]
    Convergence { message: String, history: Vec<f64> },

    /// A residual was requested relative to a quantity that vanishes.
    #[error("division by a vanishing quantity: {0}")]
    Division(String),

    /// The quadrature oracle could not reach its tolerance within budget.
    #[error("quadrature: {0}")]
    Quadrature(String),
}

impl QError {
    pub(crate) fn convergence(message: impl Into<String>) -> Self {
        QError::Convergence {
            message: message.into(),
            history: Vec::new(),
        }
    }

    /// Prefix the message with extra context, keeping the variant.
    pub fn context(self, ctx: impl std::fmt::Display) -> Self {
        match self {
            QError::Pole(m) => QError::Pole(format!("{ctx}: {m}")),
            QError::Domain(m) => QError::Domain(format!("{ctx}: {m}")),
            QError::Convergence { message, history } => QError::Convergence {
                message: format!("{ctx}: {message}"),
                history,
            },
            QError::Division(m) => QError::Division(format!("{ctx}: {m}")),
            QError::Quadrature(m) => QError::Quadrature(format!("{ctx}: {m}")),
        }
    }
}

pub type Result<T, E = QError> = std::result::Result<T, E>;
