use thiserror::Error;

use crate::Region;

/// Errors raised by the double-precision evaluator and its table machinery.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument must satisfy Re(z) >= 0")]
    LeftHalfPlane,

    #[error("argument must be finite")]
    NonFinite,

    #[error("J_{0} is singular at z = 0")]
    SingularAtOrigin(i32),

    #[error("nu transform is undefined at z = 0")]
    ZeroArgument,

    #[error("unsupported order n = {0}")]
    UnsupportedOrder(i32),

    #[error("|z| = {modulus} lies outside the {region} interval")]
    RegionMismatch { region: Region, modulus: f64 },

    #[error("embedded coefficient tables are corrupt: {0}")]
    CorruptTable(String),

    #[error("coefficient file: {0}")]
    Format(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
