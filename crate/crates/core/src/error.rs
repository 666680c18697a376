use thiserror::Error;

/// Error type shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// An input lies outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A numerical procedure failed to converge or produced a non-finite value.
    #[error("numeric error: {0}")]
    Numeric(String),

    /// A lookup into a bundled dataset found no matching row.
    #[error("lookup error: {0}")]
    Lookup(String),

    /// The requested axis is not supported by the operation.
    #[error("unsupported axis: {0}")]
    UnsupportedAxis(String),

    /// A configuration value violates an invariant.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// The photon energy reaches the ionization threshold; the bound-electron
    /// delay model no longer applies and the simulation refuses to run.
    #[error("photon energy {photon_ev:.4} eV is at or above the {threshold_ev} eV ionization threshold")]
    IonizationRejected { photon_ev: f64, threshold_ev: f64 },

    /// Calibration could not produce a finite objective anywhere in bounds.
    #[error("calibration failed: {0}")]
    CalibrationFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
