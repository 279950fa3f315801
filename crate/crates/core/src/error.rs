use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("carrier order {0} is outside the supported range 1..={max}", max = crate::hyperop::MAX_ORDER)]
    InvalidOrder(usize),

    #[error("element {element} out of range for carrier of order {order}")]
    ElementOutOfRange { element: usize, order: usize },

    #[error("subset {bits:#b} is not contained in a carrier of order {order}")]
    SubsetOutOfRange { bits: u32, order: usize },

    #[error("empty hyperproduct at ({0},{1})")]
    EmptyCell(usize, usize),

    #[error("expected {expected} cells, got {actual}")]
    CellCount { expected: usize, actual: usize },

    #[error("carrier mismatch: {left} vs {right}")]
    CarrierMismatch { left: usize, right: usize },

    #[error("product of an empty factor list")]
    EmptyFactorList,

    #[error("fuzzy value {0} is not a rational in [0,1]")]
    InvalidFuzzyValue(String),

    #[error("the hyperoperation is not associative at ({0},{1},{2})")]
    NotHypersemigroup(usize, usize, usize),

    #[error("subset-definition check refuses order {order} (cap {cap})")]
    SubsetCapExceeded { order: usize, cap: usize },

    #[error("exhaustive enumeration of order {order} needs {tables} tables, over the budget of {budget}")]
    BudgetExceeded { order: usize, tables: String, budget: u64 },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}
