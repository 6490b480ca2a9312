use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecfunError {
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("order {order} exceeds cap {cap}")]
    OrderCapExceeded { order: usize, cap: usize },
}
