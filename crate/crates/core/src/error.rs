//! Error types, one per module.

use alloc::string::String;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("unsupported characteristic {0}: need a prime at most 97")]
    UnsupportedPrime(u32),
    #[error("unsupported extension degree {k} over F_{p}")]
    UnsupportedDegree { p: u32, k: u32 },
    #[error("no multiplicative generator found for F_{p}^{k}")]
    NoGenerator { p: u32, k: u32 },
    #[error("additive character with root index {root_index} mod {p} is trivial or out of range")]
    TrivialAdditiveCharacter { p: u32, root_index: u32 },
    #[error("character modulus {modulus} does not match unit group order {unit_order}")]
    CharacterMismatch { modulus: u32, unit_order: u32 },
    #[error("additive character over F_{psi} used on a field of characteristic {field}")]
    CharacteristicMismatch { psi: u32, field: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootDataError {
    #[error("unknown root datum preset {0:?}")]
    UnknownPreset(String),
    #[error("character has {got} exponents, rank is {rank}")]
    RankMismatch { rank: usize, got: usize },
    #[error("character modulus must be at least 1")]
    ZeroModulus,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BesselError {
    #[error("enumeration of {needed} points exceeds the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("weight set is empty")]
    EmptyWeights,
    #[error("weight {index} has length {got}, rank is {rank}")]
    WeightRank { index: usize, rank: usize, got: usize },
    #[error("malformed weight set: {0}")]
    Parse(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("q = {0} is out of range: need a prime with 3 <= q <= 13")]
    QOutOfRange(u32),
    #[error("weights are not stable under the swap, so the nonsplit Frobenius orbits are undefined")]
    UnpairedWeights,
    #[error("weight set has rank {got}, the group needs rank {rank}")]
    RankMismatch { rank: usize, got: usize },
    #[error("class functions live on different groups")]
    ShapeMismatch,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Bessel(#[from] BesselError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VanishingError {
    #[error("group of order {needed} exceeds the enumeration budget {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
    #[error("unsupported extension degree {m} over q = {q}")]
    Unsupported { q: u32, m: u32 },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MellinError {
    #[error("lattice generators {0} and {1} do not commute")]
    NonCommuting(usize, usize),
    #[error("matrix for {0} is not invertible")]
    NotInvertible(String),
    #[error("relation fails: {0}")]
    Relation(String),
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("eigenvalues of the lattice action are not roots of unity of order {0}")]
    Spectrum(u32),
    #[error("rank {0} is outside the supported range")]
    Rank(usize),
    #[error("character of modulus {modulus} does not have order dividing {q} - 1")]
    CharacterOrder { modulus: u32, q: u32 },
    #[error("stabilizer isomorphism fails: {0}")]
    Stabilizer(String),
    #[error(transparent)]
    RootData(#[from] RootDataError),
}
