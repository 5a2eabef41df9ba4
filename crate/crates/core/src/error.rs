use thiserror::Error;

/// Everything that can go wrong in this crate.
///
/// Variants are grouped by how a caller is expected to react: bad input
/// ([`Error::is_validation`]), an enumeration that would be too large
/// ([`Error::BudgetExceeded`]), or an internal inconsistency between two
/// independent counting routes ([`Error::CountMismatch`]).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("valuation of zero is infinite")]
    ZeroValuation,

    #[error("primes must be distinct (got p = q = {0})")]
    EqualPrimes(u64),

    #[error("map degree must be at least 2 (got {0})")]
    DegreeTooSmall(u64),

    #[error("characteristic {p} divides the map degree {t}")]
    CharacteristicDividesDegree { p: u64, t: u64 },

    #[error("extension degree must be at least 1")]
    ZeroExtensionDegree,

    #[error("characteristic {0} is too large for element arithmetic (limit 2^32)")]
    CharacteristicTooLarge(u64),

    #[error("polynomial is not monic or has degree < 1")]
    NotMonic,

    #[error("coefficient {coeff} is not reduced modulo {p}")]
    UnreducedCoefficient { coeff: u64, p: u64 },

    #[error("element has {got} coefficients, field degree is {expected}")]
    ElementLength { expected: usize, got: usize },

    #[error("element index {index} out of range for a field of size {size}")]
    IndexOutOfRange { index: u64, size: u64 },

    #[error("inversion of zero")]
    ZeroInverse,

    #[error("field too large for enumeration: {size} elements exceeds budget of {budget}")]
    BudgetExceeded { size: String, budget: u64 },

    #[error("element does not lie in the degree-{0} subfield")]
    NotInSubfield(usize),

    #[error("extension degree {0} is odd; expected a quadratic extension of the subfield")]
    NotQuadraticExtension(usize),

    #[error("no root of z^2 - wz + 1 found")]
    NoLift,

    #[error("Chebyshev coefficient index {0} exceeds cap of 10000")]
    CoefficientCap(u64),

    #[error("valuation vector has {got} entries, map degree has {expected} prime factors")]
    NuLength { expected: usize, got: usize },

    #[error("delta = {delta} is not admissible (Delta = {cap_delta}): {reason}")]
    InvalidDelta {
        delta: u64,
        cap_delta: u64,
        reason: &'static str,
    },

    #[error("outside the supported range: {0}")]
    OutsideScope(String),

    #[error("no tower member found below n = {0}")]
    EmptyTower(u64),

    #[error("could not parse map {0:?}; expected power:T or cheb:T")]
    MapSyntax(String),

    #[error("analytic count {analytic} disagrees with brute-force count {brute}")]
    CountMismatch { analytic: String, brute: String },
}

impl Error {
    /// True for errors caused by invalid user input.
    pub fn is_validation(&self) -> bool {
        !matches!(
            self,
            Error::BudgetExceeded { .. } | Error::CountMismatch { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
