use thiserror::Error;

/// Errors for state construction, operator algebra, and the optimizers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("mode {mode} out of range for {num_modes}-mode basis")]
    ModeOutOfRange { mode: usize, num_modes: usize },

    #[error("incompatible bases: {0}")]
    BasisMismatch(String),

    #[error("requested object of {requested} complex entries exceeds cap {cap} (override with NCVAR_DIM_CAP)")]
    DimensionCap { requested: usize, cap: usize },

    #[error("cutoff too small: leakage {leakage:.3e} exceeds tolerance {tol:.1e}")]
    CutoffTooSmall { leakage: f64, tol: f64 },

    #[error("invalid state spec: {0}")]
    InvalidSpec(String),

    #[error("operator is not Hermitian (deviation {0:.3e})")]
    NotHermitian(f64),

    #[error("state is not normalized (norm deviation {0:.3e})")]
    NotNormalized(f64),

    #[error("state is not pure (purity {0:.8})")]
    NotPure(f64),

    #[error("matrix is not unitary (deviation {0:.3e})")]
    NotUnitary(f64),

    #[error("matrix is not symplectic (deviation {0:.3e})")]
    NotSymplectic(f64),

    #[error("unphysical covariance matrix: {0}")]
    UnphysicalCovariance(String),

    #[error("channel ancilla must be a classical kind, got {0}")]
    NonClassicalAncilla(String),

    #[error("no guarantee available: {0}")]
    NoGuarantee(String),

    #[error("numerical failure: {0}")]
    Numerics(String),
}

pub type Result<T> = std::result::Result<T, Error>;
