use std::fmt;

/// A command that could not run to completion.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, arguments or input files (exit 2).
    Config(String),
    /// The enumeration cap is too small (exit 3).
    Cap(String),
    /// A check inside the library failed outright (exit 1).
    Verification(String),
}

pub type CliResult<T> = Result<T, CliError>;

impl CliError {
    pub fn status(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Config(_) => 2,
            CliError::Cap(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "invalid configuration: {m}"),
            CliError::Cap(m) => write!(f, "{m} (raise --cap or PRDESIGN_CAP)"),
            CliError::Verification(m) => write!(f, "verification failed: {m}"),
        }
    }
}

impl From<prdesign::Error> for CliError {
    fn from(e: prdesign::Error) -> Self {
        use prdesign::Error as E;
        match e {
            E::CapExceeded { .. } => CliError::Cap(e.to_string()),
            E::NotIndependent | E::GroupNotAutomorphism { .. } | E::CyclicActionFailed(_) => {
                CliError::Verification(e.to_string())
            }
            _ => CliError::Config(e.to_string()),
        }
    }
}
