use thiserror::Error;

/// Errors raised while building fields and codes or evaluating sums.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("p = {0} is not an odd prime")]
    NotPrime(u64),
    #[error("extension degree m = {0} must be odd and at least 3")]
    BadDegree(u32),
    #[error("gcd(m, k) = gcd({m}, {k}) = {gcd}, expected 1")]
    GcdViolation { m: u32, k: u32, gcd: u32 },
    #[error("k must be at least 1")]
    BadExponent,
    #[error("polynomial {0} is not a monic degree-m polynomial over F_p")]
    BadPolynomial(String),
    #[error("polynomial {0} is not primitive")]
    NotPrimitive(String),
    #[error("no primitive polynomial of degree {m} over F_{p} found")]
    NoPrimitivePolynomial { p: u32, m: u32 },
    #[error("field of size {size} exceeds the table limit 2^24")]
    TableTooLarge { size: u64 },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("the zero element has no minimal polynomial")]
    ZeroElement,
    #[error("D-value table requires v != 0")]
    ZeroV,
    #[error("{op} requires {expected} k, got k = {k}")]
    WrongParity {
        op: &'static str,
        expected: &'static str,
        k: u32,
    },
    #[error("character sum is not a rational integer: {0}")]
    NonIntegerSum(String),
    #[error("cyclotomic cosets are degenerate: {0}")]
    DegenerateCosets(String),
    #[error("enumeration of {count} codewords exceeds the limit 2^26")]
    TooLarge { count: u128 },
    #[error("character-sum value {value} is not divisible by 2p = {modulus}")]
    NonDivisibleValue { value: i128, modulus: i128 },
}

impl Error {
    /// True for errors caused by invalid user-supplied parameters rather than
    /// by a failed internal consistency check.
    pub fn is_parameter_error(&self) -> bool {
        matches!(
            self,
            Error::NotPrime(_)
                | Error::BadDegree(_)
                | Error::GcdViolation { .. }
                | Error::BadExponent
                | Error::BadPolynomial(_)
                | Error::NotPrimitive(_)
                | Error::NoPrimitivePolynomial { .. }
                | Error::TableTooLarge { .. }
                | Error::ZeroElement
                | Error::ZeroV
                | Error::WrongParity { .. }
                | Error::TooLarge { .. }
                | Error::DegenerateCosets(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
