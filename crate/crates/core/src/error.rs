use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A numerical routine ran out of its evaluation budget before meeting
    /// the requested tolerance. Carries the best estimate it had.
    #[error(
        "accuracy budget exceeded in {context}: best estimate {estimate} \
         (error estimate {error_estimate:.3e}, {evaluations} evaluations)"
    )]
    Accuracy {
        context: &'static str,
        estimate: Complex64,
        error_estimate: f64,
        evaluations: usize,
    },

    #[error("{context} did not converge after {iterations} iterations")]
    NoConvergence {
        context: &'static str,
        iterations: usize,
    },

    /// Two independent routes to the same quantity disagreed.
    #[error("{context}: {primary} vs oracle {oracle} differ by more than {tolerance:e}")]
    OracleMismatch {
        context: &'static str,
        primary: f64,
        oracle: f64,
        tolerance: f64,
    },

    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// A budget refusal made before any work was done.
    pub(crate) fn budget(context: &'static str) -> Self {
        Error::Accuracy {
            context,
            estimate: Complex64::new(f64::NAN, f64::NAN),
            error_estimate: f64::INFINITY,
            evaluations: 0,
        }
    }

    /// True for failures caused by an exhausted accuracy budget.
    pub fn is_accuracy(&self) -> bool {
        matches!(
            self,
            Error::Accuracy { .. } | Error::NoConvergence { .. } | Error::OracleMismatch { .. }
        )
    }
}
