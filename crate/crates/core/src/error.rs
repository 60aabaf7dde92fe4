use num_bigint::BigUint;
use thiserror::Error;

/// Errors raised by the counting, enumeration and verification layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parameter mismatch: {0}")]
    ParameterMismatch(String),

    #[error("capacity exceeded: {what} has {count} elements (limit {limit})")]
    Capacity {
        what: String,
        count: BigUint,
        limit: u64,
    },

    #[error(
        "characteristic {0} not supported: the orthogonal grassmannian needs odd characteristic"
    )]
    Characteristic(u32),

    /// `exhaustive` is set when every candidate was examined, so no other
    /// seed can succeed at this prime.
    #[error("no general {dim}-plane in F_{prime}^{n}: every candidate has a vanishing Plücker coordinate (try a larger prime)")]
    NoGeneralSubspace {
        prime: u32,
        dim: usize,
        n: usize,
        exhaustive: bool,
    },

    #[error("family mode needs {needed} distinct units but F_{prime} has only {available}")]
    NotEnoughUnits {
        prime: u32,
        needed: usize,
        available: usize,
    },

    #[error("singular point: intersection with the condition plane has dimension {dim}")]
    SingularPoint { dim: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

/// Largest point or element count any enumeration is allowed to materialize.
pub const CAPACITY_LIMIT: u64 = 10_000_000;

pub(crate) fn check_capacity(what: impl Into<String>, count: &BigUint) -> Result<()> {
    if *count > BigUint::from(CAPACITY_LIMIT) {
        return Err(Error::Capacity {
            what: what.into(),
            count: count.clone(),
            limit: CAPACITY_LIMIT,
        });
    }
    Ok(())
}
