use thiserror::Error;

use crate::partition::Partition;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not a partition: {0:?}")]
    InvalidPartition(Vec<u32>),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("plethysm argument outside the positive-weight domain: {0}")]
    PlethysmDomain(String),
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("size mismatch: |λ| = {0}, |ρ| = {1}")]
    SizeMismatch(usize, usize),
    #[error("missing power sum p_{0}")]
    MissingPowerSum(usize),
    #[error("shape {0} has a part larger than r = {1}")]
    ShapeTooWide(Partition, usize),
    #[error("shape {0} is longer than r = {1}")]
    ShapeTooLong(Partition, usize),
    #[error("negative Betti number {value} for λ = {lambda} in degree {k}")]
    NegativeCoefficient { lambda: Partition, k: i64, value: String },
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("modulus must be nonconstant")]
    ConstantModulus,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error("cache error: {0}")]
    Cache(String),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
