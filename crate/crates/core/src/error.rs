use thiserror::Error;

/// Errors raised by constructors and arithmetic when an input violates a
/// precondition. Verification outcomes (a set that is not a PDS, a fusion that
/// is not a scheme) are not errors; they are reported by the verifiers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cyclic factor {0} is invalid (factors must be at least 2)")]
    InvalidFactor(u32),
    #[error("group order {0} exceeds the supported maximum of 2^20")]
    GroupTooLarge(u128),
    #[error("index {index} out of range for group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("residue vector {residues:?} does not belong to group {factors:?}")]
    ElementOutOfRange { residues: Vec<u32>, factors: Vec<u32> },
    #[error("group mismatch: {left:?} vs {right:?}")]
    GroupMismatch { left: Vec<u32>, right: Vec<u32> },
    #[error("cyclotomic level mismatch: {0} vs {1}")]
    LevelMismatch(u32, u32),

    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("no built-in modulus for a field of order {0}")]
    NoBuiltinField(u32),
    #[error("modulus {0:?} is not a monic irreducible polynomial of degree at least 1")]
    ReducibleModulus(Vec<u32>),
    #[error("supplied element has order {order}, not {expected}")]
    NotPrimitive { order: u64, expected: u64 },
    #[error("inversion of zero")]
    ZeroInverse,
    #[error("subfield degree {sub} does not divide field degree {degree}")]
    NotADivisor { sub: u32, degree: u32 },
    #[error("field of order {0} is not a quadratic extension")]
    NotQuadraticExtension(u32),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("scalar must be nonzero")]
    ZeroScalar,
    #[error("no irreducible binary form ax^2+xy+by^2 exists over this field")]
    NoIrreducibleBinaryForm,
    #[error("form is singular or odd-dimensional; nonzero zero count {0} matches neither type")]
    UnclassifiableForm(u64),

    #[error("invalid construction parameters: {0}")]
    InvalidParameters(String),
    #[error("fusion of {d} classes exceeds the cap of {cap}")]
    FusionCapExceeded { d: usize, cap: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("class index {index} out of range (scheme has {classes} classes)")]
    ClassIndexOutOfRange { index: usize, classes: usize },
    #[error("scheme file: {0}")]
    SchemeFile(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
