use evenlat::Error;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error(transparent)]
    Lib(#[from] Error),
}

impl CliError {
    /// 2 for unreadable input, 4 when a search guard trips, 3 for any other
    /// violated precondition.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) | CliError::Lib(Error::Parse(_) | Error::NotSymmetric { .. }) => 2,
            CliError::Lib(Error::GuardExceeded { .. }) => 4,
            CliError::Lib(_) => 3,
        }
    }
}
