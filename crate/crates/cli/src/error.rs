use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid arguments: {0}")]
    Usage(String),

    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Analysis(#[from] fieldscope::Error),

    #[error("point lies outside the numerical range (concentric scale {scale})")]
    OutsideRange { scale: f64 },

    #[error("cannot write output: {0}")]
    Write(#[from] std::io::Error),
}

impl CliError {
    /// Process exit status: 3 for a point outside the range, 2 for bad input.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::OutsideRange { .. } => 3,
            CliError::Write(_) => 1,
            _ => 2,
        }
    }
}
