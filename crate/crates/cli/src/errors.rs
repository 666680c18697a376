use dispersim_core::Error as CoreError;

/// Process exit codes: 0 success, 2 usage, 3 model-domain rejection,
/// 4 calibration failure, 5 I/O.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    ModelDomain(String),
    Calibration(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::ModelDomain(_) => 3,
            CliError::Calibration(_) => 4,
            CliError::Io(_) => 5,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m)
            | CliError::ModelDomain(m)
            | CliError::Calibration(m)
            | CliError::Io(m) => f.write_str(m),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::IonizationRejected { .. }
            | CoreError::Domain(_)
            | CoreError::Numeric(_) => CliError::ModelDomain(e.to_string()),
            CoreError::CalibrationFailed(_) => CliError::Calibration(e.to_string()),
            CoreError::InvalidConfig(_)
            | CoreError::UnsupportedAxis(_)
            | CoreError::Lookup(_) => CliError::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
