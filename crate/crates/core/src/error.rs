use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("tuple {0} is not constructible (need 0 < m <= n2 <= n1 and s1, s2 <= m)")]
    NotConstructible(String),

    #[error("group too large: order {order} exceeds cap {cap}")]
    CapExceeded { order: u64, cap: u64 },

    #[error("invalid group table: {0}")]
    InvalidTable(String),

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("not a p-group: order {0}")]
    NotPGroup(usize),

    #[error("group has nilpotency class greater than 2")]
    ClassTooLarge,

    #[error("group is abelian")]
    Abelian,

    #[error("group needs {0} generators, expected 2")]
    NotTwoGenerated(usize),

    #[error("operation requires p = 2, got p = {0}")]
    RequiresTwo(u64),

    #[error("augmentation filtration did not terminate within {0} levels")]
    FiltrationDepth(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
