//! Error type shared by every module in the crate.

use thiserror::Error;

/// Crate-wide error enum. Domain errors come from rejected inputs; the
/// remaining variants report numerical failures with their diagnostics.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("target fraction lambda must lie in (0, 1], got {0}")]
    InvalidLambda(f64),
    #[error("interpolation coordinate s must lie in [0, 1], got {0}")]
    InvalidS(f64),
    #[error("epsilon must be finite and positive, got {0}")]
    InvalidEpsilon(f64),
    #[error("w must lie strictly inside (0, 1), got {0}")]
    InvalidW(f64),
    #[error("time step must be finite and positive, got {0}")]
    InvalidTimeStep(f64),
    #[error("time {t} lies outside the schedule range [0, {total}]")]
    TimeOutOfRange { t: f64, total: f64 },
    #[error("state is not normalized: |amp0|^2 + |amp1|^2 = {norm_sq}")]
    NotNormalized { norm_sq: f64 },
    #[error("Bloch vector is not unit length: |r| = {norm}")]
    NotUnitBloch { norm: f64 },
    #[error("lambda = {lambda} is below the schedule floor w = {w}")]
    LambdaBelowW { lambda: f64, w: f64 },
    #[error("schedule table rejected: {0}")]
    InvalidTable(String),
    #[error("total-variation quadrature did not converge: achieved {achieved:e}, requested {requested:e}")]
    QuadratureNonConvergence { achieved: f64, requested: f64 },
    #[error("integration failed: {0}")]
    Integration(String),
    #[error("step size underflow at t = {t} (h = {h:e})")]
    StepUnderflow { t: f64, h: f64 },
    #[error("sweep point {index} (lambda = {lambda}) failed: {source}")]
    SweepPoint {
        index: usize,
        lambda: f64,
        #[source]
        source: Box<Error>,
    },
    #[error("gate sequence is empty: dt = {dt} exceeds the total time {total}")]
    DegenerateSequence { dt: f64, total: f64 },
    #[error("modulus J must be at least {min}, got {j}")]
    InvalidModulus { j: u64, min: u64 },
    #[error("register of {qubits} qubits exceeds the 2^12 statevector cap")]
    DimensionTooLarge { qubits: usize },
    #[error("lambda extracted from U varies with |psi>: spread = {spread:e}")]
    LambdaNotIndependent { spread: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
