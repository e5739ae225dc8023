use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed field spec `{spec}`: {reason}")]
    MalformedSpec { spec: String, reason: String },
    #[error("modulus {0} is reducible over the base field")]
    ReducibleModulus(String),
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("element does not belong to field {0}")]
    FieldMismatch(String),
    #[error("operation not supported over {0}")]
    UnsupportedField(String),
    #[error("field {0} is infinite")]
    InfiniteField(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("cannot search an unstructured coalgebra over the infinite field {0}")]
    UnsupportedInfiniteSearch(String),
    #[error("search needs {required} candidates but the budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("{0} is not a primitive root of unity of order {1}")]
    NotPrimitiveRoot(String, u64),
    #[error("characteristic {characteristic} divides {n}: 1/{n} does not exist")]
    CharDividesP { characteristic: u64, n: u64 },
    #[error("matrix is not a coalgebra isomorphism")]
    NotAnIsomorphism,
    #[error("field characteristic is {found}, expected {expected}")]
    WrongCharacteristic { expected: u64, found: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
}
