use std::fmt;

#[derive(Debug)]
pub enum CliError {
    /// Rejected before any output is written.
    Config(String),
    /// A simulation invariant failed mid-run.
    Invariant(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Config(_) => 2,
            Self::Invariant(_) => 3,
            Self::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Config(m) => write!(f, "config error: {m}"),
            Self::Invariant(m) => write!(f, "invariant violation: {m}"),
            Self::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl From<lrbsim::error::Error> for CliError {
    fn from(e: lrbsim::error::Error) -> Self {
        match e {
            lrbsim::error::Error::Invariant(m) => Self::Invariant(m),
            other => Self::Config(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::Io(e.to_string())
    }
}
