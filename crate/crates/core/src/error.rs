use thiserror::Error;

/// Errors raised by constructors and geometric operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("zero vector has no projective class")]
    ZeroVector,
    #[error("expected a {expected} vector, got herm(z,z) = {value}")]
    WrongVectorClass { expected: &'static str, value: f64 },
    #[error("parameter {name} = {value} out of range: {bound}")]
    ParameterOutOfRange {
        name: &'static str,
        value: f64,
        bound: &'static str,
    },
    #[error("isometry fixes the point at infinity (|h31| = {0})")]
    FixesInfinity(f64),
    #[error("operation undefined at the point at infinity")]
    PointAtInfinity,
    #[error("invalid generator letter {0}; letters are 1, 2 or 3")]
    InvalidLetter(u8),
    #[error("{0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
