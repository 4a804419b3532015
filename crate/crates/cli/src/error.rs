use thiserror::Error;

use netcurv::baselines::BaselineError;
use netcurv::generators::GeneratorError;
use netcurv::haantjes::HaantjesError;
use netcurv::menger::MengerError;
use netcurv::GraphError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Compute(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Input(_) => 3,
            CliError::Compute(_) => 4,
        }
    }
}

impl From<GraphError> for CliError {
    fn from(err: GraphError) -> Self {
        match err {
            GraphError::PathDegreeOnDirected => CliError::Usage(err.to_string()),
            GraphError::Parse { .. } | GraphError::Validation(_) | GraphError::Io(_) => CliError::Input(err.to_string()),
            other => CliError::Compute(other.to_string()),
        }
    }
}

impl From<MengerError> for CliError {
    fn from(err: MengerError) -> Self {
        match err {
            MengerError::Graph(g) => g.into(),
            other => CliError::Compute(other.to_string()),
        }
    }
}

impl From<HaantjesError> for CliError {
    fn from(err: HaantjesError) -> Self {
        match err {
            HaantjesError::Graph(g) => g.into(),
            HaantjesError::Directed(_) => CliError::Usage(err.to_string()),
            other => CliError::Compute(other.to_string()),
        }
    }
}

impl From<BaselineError> for CliError {
    fn from(err: BaselineError) -> Self {
        match err {
            BaselineError::Graph(g) => g.into(),
            BaselineError::Unsupported(_) | BaselineError::InvalidInput(_) => CliError::Usage(err.to_string()),
            BaselineError::Transport(_) => CliError::Compute(err.to_string()),
        }
    }
}

impl From<GeneratorError> for CliError {
    fn from(err: GeneratorError) -> Self {
        match err {
            GeneratorError::Graph(g) => g.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

/// Failures writing outputs.
pub(crate) fn write_failed(path: &std::path::Path, err: std::io::Error) -> CliError {
    CliError::Compute(format!("cannot write {}: {err}", path.display()))
}
