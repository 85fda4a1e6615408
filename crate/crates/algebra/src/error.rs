use thiserror::Error;

/// Errors raised by the exact-arithmetic layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("variable lists differ: {left:?} vs {right:?}")]
    VariableMismatch { left: Vec<String>, right: Vec<String> },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("substitution makes a denominator vanish identically")]
    DegenerateSubstitution,
    #[error("gcd of two zero polynomials is undefined")]
    UndefinedGcd,
    #[error("division by zero")]
    DivisionByZero,
    #[error("valuation of the zero function is infinite")]
    InfiniteValuation,
    #[error("parse error: {0}")]
    Parse(String),
}
