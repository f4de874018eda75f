use thiserror::Error;

use crate::coupling::CouplingParam;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or physically invalid input (asymmetric matrix, unstable
    /// elastic constants, non-orthonormal frame, ...).
    #[error("validation error: {0}")]
    Validation(String),

    /// Mismatched kinds or frames passed to an operation.
    #[error("contract violation: {0}")]
    Contract(String),

    #[error(
        "stiffness matrix incompatible with C3v form in this frame \
         (relative residual {residual:.3e} exceeds {tolerance:.0e})"
    )]
    Symmetry { residual: f64, tolerance: f64 },

    #[error("numerical error: {0}")]
    Numerical(String),

    #[error("design matrix is rank deficient; unresolved parameters: {}", format_params(.unresolved))]
    Identifiability { unresolved: Vec<CouplingParam> },

    #[error("input error: {0}")]
    Input(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("config error: {0}")]
    Toml(#[from] toml::de::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

fn format_params(params: &[CouplingParam]) -> String {
    params
        .iter()
        .map(|p| p.strain_label())
        .collect::<Vec<_>>()
        .join(", ")
}

impl Error {
    /// Process exit code for the command-line front end.
    ///
    /// 2 for input/validation problems, 3 for symmetry/consistency failures,
    /// 4 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Symmetry { .. } => 3,
            Error::Numerical(_) => 4,
            _ => 2,
        }
    }
}
