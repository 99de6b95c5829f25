use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("height {t} is below the minimum supported height {min}")]
    HeightTooLow { t: f64, min: f64 },

    #[error("height {t} is above the cached range (t_max = {t_max})")]
    HeightAboveCache { t: f64, t_max: f64 },

    #[error("value {value} is outside the invertible range [{lo}, {hi}]")]
    OutOfRange { value: f64, lo: f64, hi: f64 },

    #[error("components of order {order} and {next} overlap ({right} >= {left})")]
    OverlapDetected {
        order: usize,
        next: usize,
        right: f64,
        left: f64,
    },

    #[error("segments are not separated: {right} >= {left}")]
    NotSeparated { right: f64, left: f64 },

    #[error("prime counting is limited to x <= {max}, got {x}")]
    RangeTooLarge { x: f64, max: f64 },

    #[error("adaptive quadrature on [{a}, {b}] did not converge to {tol:e}")]
    NoConvergence { a: f64, b: f64, tol: f64 },

    #[error("target {target} is not attained on [{a}, {b}] (scanned range [{min}, {max}])")]
    TargetOutsideRange {
        target: f64,
        a: f64,
        b: f64,
        min: f64,
        max: f64,
    },

    #[error("target {target} is not bracketed by [{lo}, {hi}]")]
    NotBracketed { target: f64, lo: f64, hi: f64 },

    #[error("U = {0} is outside (0, pi/4)")]
    BadU(f64),

    #[error("L = {l} is below L0 = {l0}")]
    LTooSmall { l: u64, l0: u64 },

    #[error("iteration order k = {k} is outside 1..={k0}")]
    BadK { k: usize, k0: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("transport identity violated at order {order}: {lhs} vs {rhs}")]
    TransportViolation { order: usize, lhs: f64, rhs: f64 },

    #[error("external function vanishes at alpha0 = {0}")]
    ZeroDenominator(f64),

    #[error("certificates disagree: {0}")]
    MismatchedParams(String),

    #[error("point {point} of order {order} lies outside ({left}, {right})")]
    PointOutsideSet {
        point: f64,
        order: usize,
        left: f64,
        right: f64,
    },

    #[error("certificate residual {residual:e} exceeds {tol:e}")]
    CertificateResidual { residual: f64, tol: f64 },

    #[error("right-hand side {rhs:e} is numerically zero")]
    RhsNearZero { rhs: f64 },

    #[error("formula requires k1 = k2 = k3, got {0:?}")]
    UnequalK([usize; 3]),

    #[error("power exponents must differ, got {0} twice")]
    EqualDeltas(f64),

    #[error("cache file {path}: {reason}")]
    CacheFormat { path: PathBuf, reason: String },

    #[error("cache file {path} does not match the requested model: {reason}")]
    CacheMismatch { path: PathBuf, reason: String },

    #[error("ladder cache is not strictly increasing at t = {0}")]
    NonMonotoneCache(f64),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
