use cubelval_core::averaging::AveragingError;
use cubelval_core::descent::DescentError;
use cubelval_core::lfunc::LfuncError;
use cubelval_core::tate::TateError;
use cubelval_core::twist::TwistError;

/// Exit status for input errors.
pub const EXIT_INPUT: i32 = 2;
/// Exit status when an L-value could not be recognised as a rational.
pub const EXIT_RECOGNITION: i32 = 3;
/// Exit status when a check or table comparison fails.
pub const EXIT_VERIFICATION: i32 = 4;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("recognition failed: {0}")]
    Recognition(String),
    #[error("{0}")]
    Compute(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Recognition(_) => EXIT_RECOGNITION,
            _ => 1,
        }
    }
}

impl From<TwistError> for CliError {
    fn from(e: TwistError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<TateError> for CliError {
    fn from(e: TateError) -> Self {
        match e {
            TateError::Twist(t) => t.into(),
            e => CliError::Compute(e.to_string()),
        }
    }
}

impl From<LfuncError> for CliError {
    fn from(e: LfuncError) -> Self {
        match e {
            LfuncError::Twist(t) => t.into(),
            LfuncError::Tate(t) => t.into(),
            LfuncError::Recognition(r) => CliError::Recognition(r.to_string()),
            LfuncError::PrecisionBudgetExceeded { .. } | LfuncError::LambdaTooSmall => CliError::Input(e.to_string()),
            e => CliError::Compute(e.to_string()),
        }
    }
}

impl From<AveragingError> for CliError {
    fn from(e: AveragingError) -> Self {
        match e {
            AveragingError::Lfunc(l) => l.into(),
            AveragingError::NotDivisibleByThree(_) | AveragingError::CharacterLength { .. } => CliError::Input(e.to_string()),
            e => CliError::Compute(e.to_string()),
        }
    }
}

impl From<DescentError> for CliError {
    fn from(e: DescentError) -> Self {
        match e {
            DescentError::Twist(t) => t.into(),
            DescentError::Tate(t) => t.into(),
            e => CliError::Compute(e.to_string()),
        }
    }
}
