use thiserror::Error;

/// Everything that can go wrong inside the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("division by zero")]
    DivisionByZero,
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("constant polynomials are neither reducible nor irreducible")]
    ConstantPolynomial,
    #[error("{what} has degree {degree}, above the configured cap {cap}")]
    DegreeCap {
        what: String,
        degree: usize,
        cap: usize,
    },
    #[error("group of order {order} exceeds the configured cap {cap}")]
    OrderCap { order: usize, cap: usize },
    #[error("{what} needs {needed} steps, above the budget {budget}")]
    Budget {
        what: String,
        needed: u128,
        budget: u128,
    },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("polynomial is not irreducible over the given field")]
    NotIrreducible,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("elements or fields belong to different towers")]
    TowerMismatch,
    #[error("primitive element search exhausted its coefficient range")]
    SearchExhausted,
    #[error("{m} does not divide {n}")]
    NotADivisor { m: usize, n: usize },
    #[error("the given set is not a subgroup")]
    NotASubgroup,
    #[error("intermediate field is not normal")]
    NotNormal,
    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for the resource-cap family (degree, order, enumeration budget).
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            Error::DegreeCap { .. }
                | Error::OrderCap { .. }
                | Error::Budget { .. }
                | Error::SearchExhausted
        )
    }

    pub(crate) fn degree_cap(what: impl Into<String>, degree: usize, cap: usize) -> Self {
        Error::DegreeCap {
            what: what.into(),
            degree,
            cap,
        }
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::InternalInvariant(msg.into())
    }
}
