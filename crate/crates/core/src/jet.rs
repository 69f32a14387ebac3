//! Truncated Taylor series ("jets") of a univariate function.
//!
//! A [`Jet`] of order `m` at `x0` stores the scaled coefficients
//! `c_i = f^(i)(x0) / i!` for `i = 0..=m`. Arithmetic and the elementary
//! functions act on these coefficients directly, so composing expressions
//! yields exact (up to rounding) higher-order derivatives.

use core::fmt;

use smallvec::SmallVec;

/// Inline capacity; jets up to order 7 never touch the heap.
type Coeffs = SmallVec<[f64; 8]>;

/// Errors raised by jet construction and arithmetic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum JetError {
    /// Operands were expanded around different points.
    BasePointMismatch { lhs: f64, rhs: f64 },
    /// Operands carry different truncation orders.
    OrderMismatch { lhs: usize, rhs: usize },
    /// Division by a jet whose constant term is zero.
    ZeroDivisor,
    /// The constant term lies outside the domain of `function`.
    Domain { function: &'static str, value: f64 },
    /// A coefficient overflowed or became NaN.
    NonFinite,
    /// Coefficient or derivative index above the jet's order.
    OutOfRange { index: usize, order: usize },
    /// A jet needs at least the constant coefficient.
    Empty,
}

impl fmt::Display for JetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            JetError::BasePointMismatch { lhs, rhs } => {
                write!(f, "jets expanded at different points ({lhs} vs {rhs})")
            }
            JetError::OrderMismatch { lhs, rhs } => {
                write!(f, "jets of different orders ({lhs} vs {rhs})")
            }
            JetError::ZeroDivisor => f.write_str("division by a jet with zero constant term"),
            JetError::Domain { function, value } => {
                write!(f, "{function} is not defined at {value}")
            }
            JetError::NonFinite => f.write_str("non-finite jet coefficient"),
            JetError::OutOfRange { index, order } => {
                write!(f, "index {index} exceeds jet order {order}")
            }
            JetError::Empty => f.write_str("jet has no coefficients"),
        }
    }
}

impl core::error::Error for JetError {}

/// Binary jet operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Elementary functions with Taylor recurrences.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Elementary {
    Exp,
    Ln,
    Sin,
    Cos,
    Sqrt,
    /// `u^p` for a constant real exponent.
    PowConst(f64),
}

/// Largest integer exponent handled by repeated squaring.
pub const MAX_SQUARING_EXPONENT: i64 = 64;

/// Value plus scaled derivatives of a function at a point.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    base: f64,
    coeffs: Coeffs,
}

fn checked(base: f64, coeffs: Coeffs) -> Result<Jet, JetError> {
    if coeffs.iter().all(|c| c.is_finite()) {
        Ok(Jet { base, coeffs })
    } else {
        Err(JetError::NonFinite)
    }
}

impl Jet {
    /// Jet of the identity `x ↦ x` at `x0`.
    pub fn variable(x0: f64, order: usize) -> Result<Jet, JetError> {
        let mut coeffs: Coeffs = SmallVec::from_elem(0.0, order + 1);
        coeffs[0] = x0;
        if order >= 1 {
            coeffs[1] = 1.0;
        }
        checked(x0, coeffs)
    }

    /// Jet of `x^k` at `x0` for `k ≥ 0`: `c_i = C(k, i) x0^(k-i)`. Agrees
    /// with `variable(x0, order).powi(k)` up to rounding, in `O(order)`.
    pub fn monomial(x0: f64, k: u32, order: usize) -> Result<Jet, JetError> {
        let k = k as usize;
        let top = k.min(order);
        let mut coeffs: Coeffs = SmallVec::from_elem(0.0, order + 1);
        let mut binomial = 1.0;
        for (i, c) in coeffs.iter_mut().enumerate().take(top + 1) {
            *c = binomial;
            binomial = binomial * (k - i) as f64 / (i + 1) as f64;
        }
        // Powers x0^(k-i) from the smallest upwards; c_0 keeps the exact
        // value of the real-valued power.
        let mut power = powf_real(x0, (k - top) as f64)?;
        for i in (1..=top).rev() {
            coeffs[i] *= power;
            power *= x0;
        }
        coeffs[0] = powf_real(x0, k as f64)?;
        checked(x0, coeffs)
    }

    /// Jet of a constant function.
    pub fn constant(x0: f64, value: f64, order: usize) -> Result<Jet, JetError> {
        let mut coeffs: Coeffs = SmallVec::from_elem(0.0, order + 1);
        coeffs[0] = value;
        checked(x0, coeffs)
    }

    /// Builds a jet from scaled Taylor coefficients `c_0..c_m`.
    pub fn from_coeffs(x0: f64, coeffs: &[f64]) -> Result<Jet, JetError> {
        if coeffs.is_empty() {
            return Err(JetError::Empty);
        }
        checked(x0, SmallVec::from_slice(coeffs))
    }

    pub fn base_point(&self) -> f64 {
        self.base
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// `f(x0)`.
    pub fn value(&self) -> f64 {
        self.coeffs[0]
    }

    pub fn coeff(&self, index: usize) -> Result<f64, JetError> {
        self.coeffs.get(index).copied().ok_or(JetError::OutOfRange {
            index,
            order: self.order(),
        })
    }

    /// `f^(index)(x0) = index! · c_index`.
    pub fn derivative(&self, index: usize) -> Result<f64, JetError> {
        Ok(self.coeff(index)? * factorial(index))
    }

    /// All raw derivatives `f(x0), f'(x0), …, f^(m)(x0)`.
    pub fn derivatives(&self) -> impl Iterator<Item = f64> + '_ {
        let mut fact = 1.0;
        self.coeffs.iter().enumerate().map(move |(i, c)| {
            if i > 1 {
                fact *= i as f64;
            }
            c * fact
        })
    }

    /// Evaluates the truncated series at `x0 + h` (Horner).
    pub fn eval_offset(&self, h: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * h + c)
    }

    /// Jet of the `j`-th derivative, of order `m - j`.
    pub fn derivative_jet(&self, j: usize) -> Result<Jet, JetError> {
        if j > self.order() {
            return Err(JetError::OutOfRange {
                index: j,
                order: self.order(),
            });
        }
        // d_i = f^(i+j)/i! = c_{i+j} (i+j)!/i!
        let coeffs = (0..=self.order() - j)
            .map(|i| {
                let rising: f64 = (i + 1..=i + j).map(|t| t as f64).product();
                self.coeffs[i + j] * rising
            })
            .collect();
        checked(self.base, coeffs)
    }

    /// Same jet truncated to a lower order.
    pub fn truncate(&self, order: usize) -> Result<Jet, JetError> {
        if order > self.order() {
            return Err(JetError::OutOfRange {
                index: order,
                order: self.order(),
            });
        }
        Ok(Jet {
            base: self.base,
            coeffs: SmallVec::from_slice(&self.coeffs[..=order]),
        })
    }

    fn compatible(&self, rhs: &Jet) -> Result<(), JetError> {
        if self.base.to_bits() != rhs.base.to_bits() {
            return Err(JetError::BasePointMismatch {
                lhs: self.base,
                rhs: rhs.base,
            });
        }
        if self.order() != rhs.order() {
            return Err(JetError::OrderMismatch {
                lhs: self.order(),
                rhs: rhs.order(),
            });
        }
        Ok(())
    }

    pub fn combine(&self, rhs: &Jet, op: ArithOp) -> Result<Jet, JetError> {
        match op {
            ArithOp::Add => self.add(rhs),
            ArithOp::Sub => self.sub(rhs),
            ArithOp::Mul => self.mul(rhs),
            ArithOp::Div => self.div(rhs),
        }
    }

    pub fn add(&self, rhs: &Jet) -> Result<Jet, JetError> {
        self.compatible(rhs)?;
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
        checked(self.base, coeffs)
    }

    pub fn sub(&self, rhs: &Jet) -> Result<Jet, JetError> {
        self.compatible(rhs)?;
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect();
        checked(self.base, coeffs)
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, rhs: &Jet) -> Result<Jet, JetError> {
        self.compatible(rhs)?;
        let (a, b) = (&self.coeffs, &rhs.coeffs);
        let coeffs = (0..a.len()).map(|k| (0..=k).map(|j| a[j] * b[k - j]).sum()).collect();
        checked(self.base, coeffs)
    }

    /// Series division: solves `q · rhs = self` coefficient by coefficient.
    pub fn div(&self, rhs: &Jet) -> Result<Jet, JetError> {
        self.compatible(rhs)?;
        let b = &rhs.coeffs;
        if b[0] == 0.0 {
            return Err(JetError::ZeroDivisor);
        }
        let mut q: Coeffs = SmallVec::with_capacity(b.len());
        for k in 0..b.len() {
            let acc: f64 = (1..=k).map(|j| b[j] * q[k - j]).sum();
            q.push((self.coeffs[k] - acc) / b[0]);
        }
        checked(self.base, q)
    }

    pub fn neg(&self) -> Jet {
        Jet {
            base: self.base,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, factor: f64) -> Result<Jet, JetError> {
        checked(self.base, self.coeffs.iter().map(|c| c * factor).collect())
    }

    pub fn add_scalar(&self, value: f64) -> Result<Jet, JetError> {
        let mut coeffs = self.coeffs.clone();
        coeffs[0] += value;
        checked(self.base, coeffs)
    }

    pub fn apply(&self, function: Elementary) -> Result<Jet, JetError> {
        match function {
            Elementary::Exp => self.exp(),
            Elementary::Ln => self.ln(),
            Elementary::Sin => self.sin(),
            Elementary::Cos => self.cos(),
            Elementary::Sqrt => self.sqrt(),
            Elementary::PowConst(p) => self.powf(p),
        }
    }

    pub fn exp(&self) -> Result<Jet, JetError> {
        let u = &self.coeffs;
        let mut w: Coeffs = SmallVec::with_capacity(u.len());
        w.push(libm::exp(u[0]));
        for k in 1..u.len() {
            let acc: f64 = (1..=k).map(|j| j as f64 * u[j] * w[k - j]).sum();
            w.push(acc / k as f64);
        }
        checked(self.base, w)
    }

    pub fn ln(&self) -> Result<Jet, JetError> {
        let u = &self.coeffs;
        if !(u[0] > 0.0) {
            return Err(JetError::Domain {
                function: "ln",
                value: u[0],
            });
        }
        let mut w: Coeffs = SmallVec::with_capacity(u.len());
        w.push(libm::log(u[0]));
        for k in 1..u.len() {
            let acc: f64 = (1..k).map(|j| j as f64 * w[j] * u[k - j]).sum();
            w.push((u[k] - acc / k as f64) / u[0]);
        }
        checked(self.base, w)
    }

    /// Sine and cosine share one coupled recurrence.
    pub fn sin_cos(&self) -> Result<(Jet, Jet), JetError> {
        let u = &self.coeffs;
        let mut s: Coeffs = SmallVec::with_capacity(u.len());
        let mut c: Coeffs = SmallVec::with_capacity(u.len());
        s.push(libm::sin(u[0]));
        c.push(libm::cos(u[0]));
        for k in 1..u.len() {
            let mut sk = 0.0;
            let mut ck = 0.0;
            for j in 1..=k {
                let t = j as f64 * u[j];
                sk += t * c[k - j];
                ck -= t * s[k - j];
            }
            s.push(sk / k as f64);
            c.push(ck / k as f64);
        }
        Ok((checked(self.base, s)?, checked(self.base, c)?))
    }

    pub fn sin(&self) -> Result<Jet, JetError> {
        Ok(self.sin_cos()?.0)
    }

    pub fn cos(&self) -> Result<Jet, JetError> {
        Ok(self.sin_cos()?.1)
    }

    pub fn sqrt(&self) -> Result<Jet, JetError> {
        let u = &self.coeffs;
        let in_domain = u[0] > 0.0 || (u[0] == 0.0 && u.len() == 1);
        if !in_domain {
            return Err(JetError::Domain {
                function: "sqrt",
                value: u[0],
            });
        }
        let mut w: Coeffs = SmallVec::with_capacity(u.len());
        w.push(libm::sqrt(u[0]));
        for k in 1..u.len() {
            let acc: f64 = (1..k).map(|j| w[j] * w[k - j]).sum();
            w.push((u[k] - acc) / (2.0 * w[0]));
        }
        checked(self.base, w)
    }

    /// Integer power by repeated squaring; negative exponents go through
    /// one series division.
    pub fn powi(&self, exponent: i64) -> Result<Jet, JetError> {
        let mut result = Jet::constant(self.base, 1.0, self.order())?;
        let mut square = self.clone();
        let mut e = exponent.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&square)?;
            }
            e >>= 1;
            if e > 0 {
                square = square.mul(&square)?;
            }
        }
        if exponent < 0 {
            Jet::constant(self.base, 1.0, self.order())?.div(&result)
        } else {
            Ok(result)
        }
    }

    /// `u^p`: integer exponents up to [`MAX_SQUARING_EXPONENT`] in magnitude
    /// use [`Jet::powi`], everything else `exp(p · ln u)`.
    pub fn powf(&self, exponent: f64) -> Result<Jet, JetError> {
        match integer_exponent(exponent) {
            Some(k) => self.powi(k),
            None => {
                if !(self.coeffs[0] > 0.0) {
                    return Err(JetError::Domain {
                        function: "pow",
                        value: self.coeffs[0],
                    });
                }
                self.ln()?.scale(exponent)?.exp()
            }
        }
    }
}

/// `Some(k)` when `exponent` is an integer within the squaring range.
pub fn integer_exponent(exponent: f64) -> Option<i64> {
    let limit = MAX_SQUARING_EXPONENT as f64;
    if exponent.abs() <= limit && libm::trunc(exponent) == exponent {
        Some(exponent as i64)
    } else {
        None
    }
}

/// Real-valued counterpart of [`Jet::powf`], bit-compatible with a jet of
/// order zero.
pub fn powf_real(base: f64, exponent: f64) -> Result<f64, JetError> {
    match integer_exponent(exponent) {
        Some(k) => {
            let mut result = 1.0;
            let mut square = base;
            let mut e = k.unsigned_abs();
            while e > 0 {
                if e & 1 == 1 {
                    result *= square;
                }
                e >>= 1;
                if e > 0 {
                    square *= square;
                }
            }
            if k < 0 {
                if result == 0.0 {
                    return Err(JetError::ZeroDivisor);
                }
                result = 1.0 / result;
            }
            Ok(result)
        }
        None => {
            if !(base > 0.0) {
                return Err(JetError::Domain {
                    function: "pow",
                    value: base,
                });
            }
            Ok(libm::exp(libm::log(base) * exponent))
        }
    }
}

pub fn factorial(n: usize) -> f64 {
    (2..=n).map(|k| k as f64).product()
}
