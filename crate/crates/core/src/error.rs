use thiserror::Error;

use crate::scalars::Violation;
use crate::series::ConeRejection;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parameter point is not generic: {}", format_violations(.0))]
    NonGeneric(Vec<Violation>),

    #[error("parameter point certified through order {certified}, but order {requested} was requested")]
    CertificateTooWeak { certified: u32, requested: u32 },

    #[error("vanishing denominator in {0}")]
    VanishingDenominator(String),

    #[error("series variants differ: {left} vs {right}")]
    VariantMismatch { left: String, right: String },

    #[error("monomial outside the cone: {0}")]
    NotInCone(ConeRejection),

    #[error("expected {expected} entries, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("excluded parameter coincidence: {0}")]
    Coincidence(String),

    #[error("invalid rational {0:?}")]
    ParseRational(String),
}

fn format_violations(v: &[Violation]) -> String {
    let shown: Vec<String> = v.iter().take(4).map(|x| x.to_string()).collect();
    if v.len() > 4 {
        format!("{} (and {} more)", shown.join(", "), v.len() - 4)
    } else {
        shown.join(", ")
    }
}
