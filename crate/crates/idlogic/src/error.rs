//! Crate-wide error type.

use thiserror::Error;

use crate::engine::WfPair;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{line}:{col}: syntax error: expected {expected}")]
    Syntax {
        line: usize,
        col: usize,
        expected: String,
    },

    #[error("{line}:{col}: symbol `{symbol}` used with arity {used}, declared with arity {declared}")]
    Arity {
        line: usize,
        col: usize,
        symbol: String,
        used: usize,
        declared: usize,
    },

    #[error("{line}:{col}: undeclared symbol `{symbol}`")]
    UndeclaredSymbol {
        line: usize,
        col: usize,
        symbol: String,
    },

    #[error("symbol `{0}` is not interpreted by the structure")]
    SymbolNotInterpreted(String),

    #[error("function symbol `{0}` has no interpretation in the base structure")]
    MissingFunctionInterpretation(String),

    #[error("symbol `{symbol}`: expected arity {expected}, got {got}")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        got: usize,
    },

    #[error("element `{0}` does not belong to the domain")]
    ElementOutOfDomain(String),

    #[error("structures do not share a domain")]
    DomainMismatch,

    #[error("structure disagrees with the grounding base on `{0}`")]
    BaseMismatch(String),

    #[error("enumeration needs {needed} candidates, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("grounding needs {atoms} ground atoms, budget is {budget}")]
    DomainTooLarge { atoms: usize, budget: usize },

    #[error("operator is not monotone: iteration produced a non-ascending step")]
    NonMonotoneDetected,

    #[error("cannot invent a fresh name for `{0}`: namespace exhausted")]
    NameCollision(String),

    #[error("rules for `{0}` were routed to different parts")]
    SplitHead(String),

    #[error("defined predicate `{0}` is not covered by the grouping")]
    UncoveredPredicate(String),

    #[error("not an iterated inductive definition: {0}")]
    NotAnIidSequence(String),

    #[error("free symbol `{0}` of the definition is outside the vocabulary")]
    FreeSymbolOutsideVocab(String),

    #[error("free symbol `{0}` is not interpreted by the structure")]
    FreeSymbolUninterpreted(String),

    #[error("definition is not total in the given structure")]
    NotTotal(Box<WfPair>),

    #[error("invalid structure file: {0}")]
    StructureFile(String),

    #[error("{0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
