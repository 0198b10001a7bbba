use thiserror::Error;

/// Every failure carries a stable, machine-readable reason code (see [`Error::code`]).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("incompatible conductors {0} and {1}")]
    ConductorMismatch(u32, u32),

    #[error("invalid input [{code}]: {message}")]
    Validation { code: &'static str, message: String },

    #[error("budget exceeded [{code}]: {message}")]
    Budget { code: &'static str, message: String },

    #[error("degree {degree} lies above the truncation cap {cap}")]
    CapExceeded { degree: usize, cap: usize },

    #[error("structural check failed [{code}]: {message}")]
    Structural { code: &'static str, message: String },
}

impl Error {
    pub fn validation(code: &'static str, message: impl Into<String>) -> Self {
        Error::Validation { code, message: message.into() }
    }

    pub fn budget(code: &'static str, message: impl Into<String>) -> Self {
        Error::Budget { code, message: message.into() }
    }

    pub fn structural(code: &'static str, message: impl Into<String>) -> Self {
        Error::Structural { code, message: message.into() }
    }

    pub fn code(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "division-by-zero",
            Error::ConductorMismatch(..) => "conductor-mismatch",
            Error::Validation { code, .. } | Error::Budget { code, .. } | Error::Structural { code, .. } => code,
            Error::CapExceeded { .. } => "cap-exceeded",
        }
    }

    /// Process exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Validation { .. } | Error::ConductorMismatch(..) => 2,
            Error::Budget { .. } | Error::CapExceeded { .. } => 3,
            Error::DivisionByZero | Error::Structural { .. } => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
