use trigauge::bench::BenchError;
use trigauge::genlab::GenError;
use trigauge::modelfit::FitError;
use trigauge::{CountError, GraphError};

/// Failure of a subcommand, with a stable process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Exit 1.
    #[error("{0}")]
    Runtime(String),
    /// Exit 2: unreadable edge list, invalid generator spec, bad config.
    #[error("{0}")]
    InvalidInput(String),
    /// Exit 3.
    #[error("{0}")]
    OracleLimit(String),
    /// Exit 4: kernels disagree on the same graph.
    #[error("kernel mismatch: {0}")]
    Mismatch(String),
    /// Exit 5.
    #[error("degenerate fit for group `{group}`: {reason}")]
    DegenerateFit { group: String, reason: String },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Runtime(_) => 1,
            Self::InvalidInput(_) => 2,
            Self::OracleLimit(_) => 3,
            Self::Mismatch(_) => 4,
            Self::DegenerateFit { .. } => 5,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::Runtime(e.to_string())
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::Io(io) => Self::Runtime(io.to_string()),
            other => Self::InvalidInput(other.to_string()),
        }
    }
}

impl From<CountError> for CliError {
    fn from(e: CountError) -> Self {
        match e {
            CountError::Graph(g) => g.into(),
            CountError::OracleLimit { .. } => Self::OracleLimit(e.to_string()),
            CountError::UnknownAlgorithm(_) => Self::InvalidInput(e.to_string()),
            CountError::Indivisible { .. } => Self::Mismatch(e.to_string()),
            CountError::Workers(_) => Self::Runtime(e.to_string()),
        }
    }
}

impl From<GenError> for CliError {
    fn from(e: GenError) -> Self {
        Self::InvalidInput(e.to_string())
    }
}

impl From<BenchError> for CliError {
    fn from(e: BenchError) -> Self {
        match e {
            BenchError::Count(c) => c.into(),
            BenchError::Unstable { .. } => Self::Mismatch(e.to_string()),
            BenchError::NoRepetitions | BenchError::Header(_) => Self::InvalidInput(e.to_string()),
            BenchError::Csv(_) | BenchError::Io(_) | BenchError::NoRecords => {
                Self::Runtime(e.to_string())
            }
        }
    }
}

impl From<FitError> for CliError {
    fn from(e: FitError) -> Self {
        match e {
            FitError::Degenerate { group, reason } => Self::DegenerateFit { group, reason },
            FitError::NonPositiveTime(_) | FitError::NonPositiveEdges(_) => {
                Self::InvalidInput(e.to_string())
            }
            FitError::Empty | FitError::Csv(_) | FitError::Io(_) => Self::Runtime(e.to_string()),
        }
    }
}
