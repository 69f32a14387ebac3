//! One-variable real expressions: syntax tree, evaluation over reals and
//! jets, and a printer whose output parses back to the same tree.

mod parse;

use alloc::boxed::Box;
use core::fmt;

pub use parse::{parse, ParseError, ParseErrorKind};

use crate::jet::{integer_exponent, powf_real, ArithOp, Elementary, Jet, JetError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedConst {
    Pi,
    E,
}

impl NamedConst {
    pub fn value(self) -> f64 {
        match self {
            NamedConst::Pi => core::f64::consts::PI,
            NamedConst::E => core::f64::consts::E,
        }
    }

    fn name(self) -> &'static str {
        match self {
            NamedConst::Pi => "pi",
            NamedConst::E => "e",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Exp,
    Ln,
    Sqrt,
}

impl Func {
    pub fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "exp" => Func::Exp,
            "ln" => Func::Ln,
            "sqrt" => Func::Sqrt,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sqrt => "sqrt",
        }
    }

    fn elementary(self) -> Elementary {
        match self {
            Func::Sin => Elementary::Sin,
            Func::Cos => Elementary::Cos,
            Func::Exp => Elementary::Exp,
            Func::Ln => Elementary::Ln,
            Func::Sqrt => Elementary::Sqrt,
        }
    }

    fn eval(self, v: f64) -> Result<f64, JetError> {
        match self {
            Func::Sin => Ok(libm::sin(v)),
            Func::Cos => Ok(libm::cos(v)),
            Func::Exp => Ok(libm::exp(v)),
            Func::Ln if v > 0.0 => Ok(libm::log(v)),
            Func::Sqrt if v >= 0.0 => Ok(libm::sqrt(v)),
            _ => Err(JetError::Domain {
                function: self.name(),
                value: v,
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    fn arith(self) -> ArithOp {
        match self {
            BinOp::Add => ArithOp::Add,
            BinOp::Sub => ArithOp::Sub,
            BinOp::Mul => ArithOp::Mul,
            BinOp::Div => ArithOp::Div,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
        }
    }
}

/// Syntax tree of a real function of `x`.
///
/// Powers with a constant exponent are kept as [`Expr::PowConst`]; the
/// parser rewrites `u^v` with non-constant `v` as `exp(v*ln(u))`.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    Named(NamedConst),
    Var,
    Neg(Box<Expr>),
    Call(Func, Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    PowConst(Box<Expr>, f64),
}

fn real_arith(op: BinOp, l: f64, r: f64) -> Result<f64, JetError> {
    let v = match op {
        BinOp::Add => l + r,
        BinOp::Sub => l - r,
        BinOp::Mul => l * r,
        BinOp::Div => {
            if r == 0.0 {
                return Err(JetError::ZeroDivisor);
            }
            l / r
        }
    };
    Ok(v)
}

impl Expr {
    pub fn parse(source: &str) -> Result<Expr, ParseError> {
        parse(source)
    }

    /// True when the tree does not mention `x`.
    pub fn is_constant(&self) -> bool {
        match self {
            Expr::Const(_) | Expr::Named(_) => true,
            Expr::Var => false,
            Expr::Neg(e) | Expr::Call(_, e) | Expr::PowConst(e, _) => e.is_constant(),
            Expr::Binary(_, l, r) => l.is_constant() && r.is_constant(),
        }
    }

    /// Number or named constant, possibly negated. Cheap to test, unlike
    /// [`Expr::is_constant`], which walks the whole subtree.
    fn is_literal(&self) -> bool {
        match self {
            Expr::Const(_) | Expr::Named(_) => true,
            Expr::Neg(e) => e.is_literal(),
            _ => false,
        }
    }

    /// Plain real evaluation. Follows the same operation sequence as
    /// [`Expr::eval_jet`] at order zero.
    pub fn eval(&self, x: f64) -> Result<f64, JetError> {
        let v = match self {
            Expr::Const(c) => *c,
            Expr::Named(n) => n.value(),
            Expr::Var => x,
            Expr::Neg(e) => -e.eval(x)?,
            Expr::Call(func, e) => func.eval(e.eval(x)?)?,
            Expr::Binary(op, l, r) => real_arith(*op, l.eval(x)?, r.eval(x)?)?,
            Expr::PowConst(e, p) => powf_real(e.eval(x)?, *p)?,
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(JetError::NonFinite)
        }
    }

    /// Jet of the expression at `x0`, truncated at `order`.
    pub fn eval_jet(&self, x0: f64, order: usize) -> Result<Jet, JetError> {
        match self {
            Expr::Const(c) => Jet::constant(x0, *c, order),
            Expr::Named(n) => Jet::constant(x0, n.value(), order),
            Expr::Var => Jet::variable(x0, order),
            Expr::Neg(e) => Ok(e.eval_jet(x0, order)?.neg()),
            Expr::Call(func, e) => e.eval_jet(x0, order)?.apply(func.elementary()),
            Expr::Binary(op, l, r) => {
                // Literal operands reduce to scalar ops on the other side.
                match (op, l.is_literal(), r.is_literal()) {
                    (BinOp::Mul, true, _) => r.eval_jet(x0, order)?.scale(l.eval(x0)?),
                    (BinOp::Mul, _, true) => l.eval_jet(x0, order)?.scale(r.eval(x0)?),
                    (BinOp::Add, true, _) => r.eval_jet(x0, order)?.add_scalar(l.eval(x0)?),
                    (BinOp::Add, _, true) => l.eval_jet(x0, order)?.add_scalar(r.eval(x0)?),
                    _ => l.eval_jet(x0, order)?.combine(&r.eval_jet(x0, order)?, op.arith()),
                }
            }
            Expr::PowConst(e, p) => match (&**e, integer_exponent(*p)) {
                (Expr::Var, Some(k)) if k >= 0 => Jet::monomial(x0, k as u32, order),
                _ => e.eval_jet(x0, order)?.powf(*p),
            },
        }
    }

    /// Raw derivatives `f(x0), …, f^(order)(x0)`.
    pub fn derivatives(&self, x0: f64, order: usize) -> Result<alloc::vec::Vec<f64>, JetError> {
        Ok(self.eval_jet(x0, order)?.derivatives().collect())
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Binary(BinOp::Add | BinOp::Sub, ..) => 1,
            Expr::Binary(BinOp::Mul | BinOp::Div, ..) => 2,
            Expr::Neg(_) => 3,
            Expr::Const(c) if c.is_sign_negative() => 3,
            Expr::PowConst(..) => 4,
            _ => 5,
        }
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, child: &Expr, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "({child})")
    } else {
        write!(f, "{child}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) => write!(f, "{c}"),
            Expr::Named(n) => f.write_str(n.name()),
            Expr::Var => f.write_str("x"),
            Expr::Neg(e) => {
                f.write_str("-")?;
                write_child(f, e, e.precedence() < 3)
            }
            Expr::Call(func, e) => write!(f, "{}({e})", func.name()),
            Expr::Binary(op, l, r) => {
                let prec = self.precedence();
                write_child(f, l, l.precedence() < prec)?;
                f.write_str(op.symbol())?;
                // Parsing is left-associative, so an equal-precedence right
                // operand keeps its parentheses.
                write_child(f, r, r.precedence() <= prec)
            }
            Expr::PowConst(e, p) => {
                write_child(f, e, e.precedence() < 5)?;
                write!(f, "^{p}")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn var_pow(p: f64) -> Expr {
        Expr::PowConst(Box::new(Expr::Var), p)
    }

    #[test]
    fn parses_cubic_minus_identity() {
        let e = parse("x^3 - x").unwrap();
        assert_eq!(e, Expr::Binary(BinOp::Sub, Box::new(var_pow(3.0)), Box::new(Expr::Var)));
    }

    #[test]
    fn parses_named_constants() {
        let e = parse("sin(x) + 2*pi").unwrap();
        let expected = Expr::Binary(
            BinOp::Add,
            Box::new(Expr::Call(Func::Sin, Box::new(Expr::Var))),
            Box::new(Expr::Binary(
                BinOp::Mul,
                Box::new(Expr::Const(2.0)),
                Box::new(Expr::Named(NamedConst::Pi)),
            )),
        );
        assert_eq!(e, expected);
    }

    #[test]
    fn dangling_operator_reports_offset() {
        let err = parse("x +").unwrap_err();
        assert_eq!(err.offset, 3);
        assert!(matches!(err.kind, ParseErrorKind::Syntax(_)));
    }

    #[test]
    fn error_cases() {
        assert_eq!(parse("").unwrap_err().kind, ParseErrorKind::Empty);
        let unknown = parse("x + tan(x)").unwrap_err();
        assert_eq!(unknown.offset, 4);
        assert_eq!(unknown.kind, ParseErrorKind::UnknownIdentifier("tan".into()));
        // no implicit multiplication
        assert_eq!(parse("2x").unwrap_err().offset, 1);
        assert_eq!(parse("(x").unwrap_err().offset, 2);
        assert_eq!(parse("sin x").unwrap_err().offset, 4);
        assert_eq!(parse("x $ 1").unwrap_err().offset, 2);
        assert!(parse("1e999").is_err());
        assert!(parse("x^ln(-1)").is_err());
    }

    #[test]
    fn precedence_and_associativity() {
        // pow binds tighter than unary minus, and is right-associative
        assert_eq!(parse("-x^2").unwrap(), Expr::Neg(Box::new(var_pow(2.0))));
        assert_eq!(parse("x^2^3").unwrap(), var_pow(8.0));
        assert_eq!(parse("x^-1").unwrap(), var_pow(-1.0));
        assert_eq!(parse("2^3^2").unwrap().eval(0.0).unwrap(), 512.0);
        assert_eq!(parse("8/4/2").unwrap().eval(0.0).unwrap(), 1.0);
        assert_eq!(parse("1 - 2 - 3").unwrap().eval(0.0).unwrap(), -4.0);
        assert_eq!(parse("2*-3").unwrap().eval(0.0).unwrap(), -6.0);
    }

    #[test]
    fn numbers() {
        assert_eq!(parse("1.5e-3").unwrap(), Expr::Const(1.5e-3));
        assert_eq!(parse(".25").unwrap(), Expr::Const(0.25));
        assert_eq!(parse("2E+2").unwrap(), Expr::Const(200.0));
        assert_eq!(parse("  3.  ").unwrap(), Expr::Const(3.0));
    }

    #[test]
    fn variable_exponent_is_rewritten() {
        let e = parse("x^x").unwrap();
        assert_eq!(e.to_string(), "exp(x*ln(x))");
        assert!((e.eval(2.0).unwrap() - 4.0).abs() < 1e-14);
    }

    #[test]
    fn jet_derivatives() {
        let cases: [(&str, f64, &[f64]); 3] = [
            ("x^3 - x", 1.0, &[0.0, 2.0, 6.0]),
            ("sin(x)", 0.0, &[0.0, 1.0, 0.0, -1.0]),
            ("x^4", -1.0, &[1.0, -4.0, 12.0]),
        ];
        for (src, x0, want) in cases {
            let got = parse(src).unwrap().derivatives(x0, want.len() - 1).unwrap();
            for (g, w) in got.iter().zip(want) {
                assert!((g - w).abs() < 1e-14, "{src}: {got:?}");
            }
        }
    }

    #[test]
    fn eval_domain_errors() {
        assert!(matches!(
            parse("ln(x)").unwrap().eval(-1.0),
            Err(JetError::Domain { .. })
        ));
        assert_eq!(parse("1/x").unwrap().eval(0.0), Err(JetError::ZeroDivisor));
        assert_eq!(parse("1/x").unwrap().eval_jet(0.0, 2), Err(JetError::ZeroDivisor));
    }

    #[test]
    fn printer_round_trip_examples() {
        for src in [
            "x^3 - x",
            "-(x+1)*2",
            "x-(x-1)",
            "(x^2)^3",
            "-x^2",
            "sin(x)/(x/2)",
            "(-x)^3",
        ] {
            let e = parse(src).unwrap();
            assert_eq!(parse(&e.to_string()).unwrap(), e, "{src} -> {e}");
        }
    }
}
