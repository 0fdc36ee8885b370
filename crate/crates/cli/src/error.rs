use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] meqsim::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("config file: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("input: {0}")]
    Input(String),
    #[error("register needs {required} qubits but the hard cap is {cap}; lower --copies or --m, or raise --hard-qubit-cap")]
    QubitBudget { required: usize, cap: usize },
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
