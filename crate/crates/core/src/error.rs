use core::fmt;

use crate::expr::ParseError;
use crate::jet::JetError;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    Parse(ParseError),
    /// Evaluation failure (domain, division by zero, overflow).
    Eval(JetError),
    InvalidInterval {
        a: f64,
        b: f64,
    },
    InvalidOrder {
        n: usize,
    },
    /// Auxiliary function index outside `1..=n`.
    StageIndex {
        k: usize,
        n: usize,
    },
    /// A K-ratio denominator vanished.
    ZeroDenominator {
        at_a: f64,
        at_b: f64,
    },
    /// Evaluation at or left of `a` where the formula divides by `x - a`.
    LeftEndpoint {
        x: f64,
        a: f64,
    },
    /// Two-function variant without `g`.
    MissingSecondFunction,
    UnsupportedDerivativeOrder {
        order: usize,
    },
    InvalidGrid {
        grid: usize,
    },
    NonFinite {
        x: f64,
        value: f64,
    },
    /// A cascade stage produced no Flett point.
    StageFailed {
        stage: usize,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parse(e) => write!(f, "{e}"),
            Error::Eval(e) => write!(f, "evaluation failed: {e}"),
            Error::InvalidInterval { a, b } => write!(f, "invalid interval: need a < b, got [{a}, {b}]"),
            Error::InvalidOrder { n } => write!(f, "invalid order n = {n}"),
            Error::StageIndex { k, n } => write!(f, "index k = {k} outside 1..={n}"),
            Error::ZeroDenominator { at_a, at_b } => write!(
                f,
                "zero denominator: derivative values at a and b are equal ({at_a} and {at_b})"
            ),
            Error::LeftEndpoint { x, a } => write!(f, "x = {x} must lie strictly right of a = {a}"),
            Error::MissingSecondFunction => f.write_str("the two-function variant needs g"),
            Error::UnsupportedDerivativeOrder { order } => {
                write!(f, "derivative order {order} not supported (expected 0 or 1)")
            }
            Error::InvalidGrid { grid } => write!(f, "grid must have at least 2 cells, got {grid}"),
            Error::NonFinite { x, value } => write!(f, "non-finite value {value} at x = {x}"),
            Error::StageFailed { stage } => write!(f, "cascade stage {stage} found no Flett point"),
        }
    }
}

impl core::error::Error for Error {}

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Self {
        Error::Parse(e)
    }
}

impl From<JetError> for Error {
    fn from(e: JetError) -> Self {
        Error::Eval(e)
    }
}
