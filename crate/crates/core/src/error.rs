use thiserror::Error;

/// Errors raised by the combinatorial and linear-algebra engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse Cartan type `{0}`")]
    ParseType(String),
    #[error("unsupported root system type {0}")]
    UnsupportedType(String),
    #[error("simple root {index} does not belong to factor {factor}")]
    IndexOutOfFactor { factor: usize, index: usize },
    #[error("simple root index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("elements belong to different root systems")]
    TypeMismatch,
    #[error("not a valid Weyl group element: {0}")]
    InvalidElement(String),
    #[error("{what} has size {size}, above the cap {cap}")]
    CapExceeded { what: String, size: u128, cap: u128 },
    #[error("simple root {0} is not admissible for this boundary map")]
    BadAlpha(usize),
    #[error("root set is not J-quasi-parabolic")]
    NotQuasiParabolic,
    #[error("no witness found: {0}")]
    NoWitness(String),
    #[error("coefficient ring must be a prime field, got {0}")]
    NonPrimeCharacteristic(String),
    #[error("element is not in the group W_Omega: {0}")]
    NotOmegaElement(String),
    #[error("finite group model too large: {0}")]
    TooLarge(String),
    #[error("chain validation failed: {0}")]
    InvalidChain(String),
    #[error("element is not a minimal coset representative: {0}")]
    NotCosetRep(String),
    #[error("integer overflow in {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;
