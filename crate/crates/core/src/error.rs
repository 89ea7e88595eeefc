use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatError {
    #[error("malformed category table: {0}")]
    Table(String),
    #[error("morphisms not composable: {0}")]
    NotComposable(String),
    #[error("invalid object: {0}")]
    InvalidObject(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("enumeration cap exceeded: {what} needs {needed} items, cap is {cap}")]
    CapExceeded { what: String, needed: u128, cap: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unsupported in this category: {0}")]
    Unsupported(String),
    #[error("invalid descriptor: {0}")]
    Descriptor(String),
    #[error("missing construction: {0}")]
    Missing(String),
    #[error("internal check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, CatError>;

impl CatError {
    pub fn is_cap(&self) -> bool {
        matches!(self, CatError::CapExceeded { .. })
    }
}
