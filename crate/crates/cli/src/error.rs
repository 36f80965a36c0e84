use loewner::LoewnerError;

/// Failure of a subcommand, carrying its exit code class.
#[derive(Debug)]
pub enum CliError {
    /// Unreadable or malformed input, bad parameters: exit 2.
    Input(String),
    /// A numerical kernel failed: exit 3.
    Numeric(String),
    /// An identity check found a violation: exit 4.
    Property(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::Property(_) => 4,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Numeric(m) | CliError::Property(m) => m,
        }
    }

    pub fn input(msg: impl std::fmt::Display) -> Self {
        CliError::Input(msg.to_string())
    }
}

impl From<LoewnerError> for CliError {
    fn from(e: LoewnerError) -> Self {
        use LoewnerError::*;
        let msg = e.to_string();
        match e {
            InvalidInput(_)
            | SelfIntersection { .. }
            | DegenerateStep { .. }
            | SlitCollision { .. }
            | TruncationTooSmall { .. }
            | TruncationMismatch(..)
            | DomainError(_) => CliError::Input(msg),
            _ => CliError::Numeric(msg),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
