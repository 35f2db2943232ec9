use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{len} coefficients given, but order {order} minus valuation {valuation} requires {expected}")]
    LengthMismatch {
        valuation: i64,
        order: i64,
        len: usize,
        expected: i64,
    },
    #[error("cannot divide by a series whose leading coefficient is {0}")]
    NonUnit(String),
    #[error("infinite product with base q^0 vanishes identically")]
    DegenerateProduct,
    #[error("theta series f(c, d) diverges when both exponents are zero")]
    Divergent,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("request needs order {requested}, above the limit {limit}")]
    TooExpensive { requested: i64, limit: i64 },
    #[error("unknown ruleset `{0}`")]
    UnknownRuleset(String),
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown symbol `{name}` at offset {offset}")]
    UnknownSymbol { offset: usize, name: String },
}
