// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("characteristic must be odd, got {0}")]
    EvenCharacteristic(u64),
    #[error("extension degree m = {0} must be even and positive")]
    MNotEven(usize),
    #[error("k = {k} must lie in [1, m-1] for m = {m}")]
    KOutOfRange { k: usize, m: usize },
    #[error("m / gcd(k, m) = {m}/{e} is even")]
    QuotientNotOdd { m: usize, e: usize },
    #[error("field too large for desk-scale arithmetic: {0}")]
    FieldTooLarge(String),
    #[error("modulus is not irreducible over F_{p}")]
    ReducibleModulus { p: u64 },
    #[error("malformed modulus: {0}")]
    MalformedModulus(String),
    #[error("element is not a primitive root of the field")]
    NotPrimitive,
    #[error("tower invariant violated: {0}")]
    TowerInvariant(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero input where a unit is required")]
    ZeroInput,
    #[error("{s} does not divide m = {m}")]
    SNotDivisor { s: usize, m: usize },
    #[error("B is a square in F_p^m")]
    BNotNonSquare,
    #[error("A*B is not a nonzero element of F_Q")]
    ABNotInFQ,
    #[error("A is a square although B is a non-square and AB lies in F_Q")]
    ANotNonSquare,
    #[error("invalid tower: {0}")]
    TowerInvalid(Box<Error>),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("translation by the chosen element is singular")]
    SingularTranslation,
    #[error("index {i} is not admissible for the {form} form")]
    NonAdmissible { i: usize, form: &'static str },
    #[error("parameter {0} must be nonzero")]
    ZeroParameter(&'static str),
    #[error("parameter {name} must lie in F_(p^{s})")]
    NotInSubfield { name: &'static str, s: usize },
    #[error("gamma^(p^d+1) * eps^2 does not equal delta")]
    FactorizationMismatch,
    #[error("product of autotopisms failed verification")]
    ConventionMismatch,
    #[error("sweep too large for exhaustive search: {0}")]
    ScaleTooLarge(String),
    #[error("closed form violated: {0}")]
    LemmaViolation(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
