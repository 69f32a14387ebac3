//! Random polynomials satisfying `f^(n)(a) = f^(n)(b)`.
//!
//! Coefficients are drawn from a seeded ChaCha stream, carried as exact
//! rationals while `c_{n+1}` is solved for, and only then rounded to `f64`
//! and rendered as expression source.

use std::fmt;

use flett_core::Expr;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorSpec {
    pub n: usize,
    /// Polynomial degree, at least `n + 1`.
    pub degree: usize,
    pub coefficient_range: (f64, f64),
    pub seed: u64,
    pub interval: (f64, f64),
}

impl GeneratorSpec {
    pub fn new(n: usize, degree: usize, seed: u64) -> Self {
        GeneratorSpec {
            n,
            degree,
            coefficient_range: (-1.0, 1.0),
            seed,
            interval: (-1.0, 1.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum GenError {
    DegreeTooLow { n: usize, degree: usize },
    ZeroOrder,
    BadInterval { a: f64, b: f64 },
    BadRange { lo: f64, hi: f64 },
}

impl fmt::Display for GenError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenError::DegreeTooLow { n, degree } => {
                write!(f, "degree {degree} is below n + 1 = {}", n + 1)
            }
            GenError::ZeroOrder => f.write_str("order n must be at least 1"),
            GenError::BadInterval { a, b } => write!(f, "invalid interval [{a}, {b}]"),
            GenError::BadRange { lo, hi } => write!(f, "invalid coefficient range [{lo}, {hi}]"),
        }
    }
}

impl std::error::Error for GenError {}

#[derive(Debug, Clone)]
pub struct ConstrainedPoly {
    pub spec: GeneratorSpec,
    /// `c_0 ..= c_degree` after rounding to `f64`.
    pub coefficients: Vec<f64>,
    /// Expression-language source of the rounded polynomial.
    pub source: String,
    pub expr: Expr,
    /// `degree == n + 1` forces `c_{n+1} = 0`, leaving a polynomial of
    /// degree at most `n` whose residuals vanish identically.
    pub degenerate_tendency: bool,
}

fn rational(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite float")
}

/// `k! / (k - n)!`
fn falling(k: usize, n: usize) -> BigInt {
    ((k - n + 1)..=k).fold(BigInt::one(), |acc, t| acc * BigInt::from(t))
}

pub fn gen_constrained_poly(spec: &GeneratorSpec) -> Result<ConstrainedPoly, GenError> {
    let GeneratorSpec {
        n,
        degree,
        coefficient_range: (lo, hi),
        seed,
        interval: (a, b),
    } = *spec;
    if n == 0 {
        return Err(GenError::ZeroOrder);
    }
    if degree < n + 1 {
        return Err(GenError::DegreeTooLow { n, degree });
    }
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(GenError::BadInterval { a, b });
    }
    if !(lo <= hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(GenError::BadRange { lo, hi });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut exact: Vec<BigRational> = (0..=degree)
        .map(|_| rational(if lo == hi { lo } else { rng.gen_range(lo..=hi) }))
        .collect();

    // f^(n)(x) = Σ_{k≥n} c_k k!/(k-n)! x^(k-n); the x^(n+1) term adds
    // (n+1)! c_{n+1} (b - a) to f^(n)(b) - f^(n)(a).
    let (ra, rb) = (rational(a), rational(b));
    let mut rest = BigRational::zero();
    for (k, c) in exact.iter().enumerate().skip(n + 2) {
        let span = pow(&rb, k - n) - pow(&ra, k - n);
        rest += c * BigRational::from_integer(falling(k, n)) * span;
    }
    let lead = BigRational::from_integer(falling(n + 1, n)) * (&rb - &ra);
    exact[n + 1] = -rest / lead;

    let coefficients: Vec<f64> = exact.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect();
    let source = render(&coefficients);
    let expr = flett_core::parse(&source).expect("rendered polynomial parses");
    Ok(ConstrainedPoly {
        spec: *spec,
        coefficients,
        source,
        expr,
        degenerate_tendency: degree == n + 1,
    })
}

fn pow(base: &BigRational, e: usize) -> BigRational {
    (0..e).fold(BigRational::one(), |acc, _| acc * base)
}

/// `c0 + c1*x + c2*x^2 ...`; zero coefficients are dropped.
pub fn render(coefficients: &[f64]) -> String {
    let mut out = String::new();
    for (k, &c) in coefficients.iter().enumerate() {
        if c == 0.0 {
            continue;
        }
        let magnitude = c.abs();
        if out.is_empty() {
            if c < 0.0 {
                out.push('-');
            }
        } else {
            out.push_str(if c < 0.0 { " - " } else { " + " });
        }
        out.push_str(&magnitude.to_string());
        match k {
            0 => {}
            1 => out.push_str("*x"),
            _ => out.push_str(&format!("*x^{k}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_has_equal_endpoint_slopes() {
        let poly = gen_constrained_poly(&GeneratorSpec::new(1, 3, 11)).unwrap();
        let fa = poly.expr.derivatives(-1.0, 1).unwrap()[1];
        let fb = poly.expr.derivatives(1.0, 1).unwrap()[1];
        assert!((fa - fb).abs() <= 1e-12, "{fa} vs {fb}");
        assert!(!poly.degenerate_tendency);
    }

    #[test]
    fn forced_degree_drops_the_constrained_term() {
        let poly = gen_constrained_poly(&GeneratorSpec::new(1, 2, 5)).unwrap();
        assert_eq!(poly.coefficients[2], 0.0);
        assert!(poly.degenerate_tendency);
        assert!(!poly.source.contains("x^2"));
    }

    #[test]
    fn seed_is_reproducible() {
        let spec = GeneratorSpec::new(3, 7, 42);
        let first = gen_constrained_poly(&spec).unwrap();
        let second = gen_constrained_poly(&spec).unwrap();
        assert_eq!(first.coefficients, second.coefficients);
        assert_eq!(first.source, second.source);
        let other = gen_constrained_poly(&GeneratorSpec::new(3, 7, 43)).unwrap();
        assert_ne!(first.coefficients, other.coefficients);
    }

    #[test]
    fn higher_orders_and_shifted_intervals() {
        for n in 1..=5 {
            for degree in n + 1..=n + 6 {
                let spec = GeneratorSpec {
                    interval: (0.5, 2.25),
                    coefficient_range: (-3.0, 3.0),
                    ..GeneratorSpec::new(n, degree, (n * 100 + degree) as u64)
                };
                let poly = gen_constrained_poly(&spec).unwrap();
                let fa = poly.expr.derivatives(0.5, n).unwrap()[n];
                let fb = poly.expr.derivatives(2.25, n).unwrap()[n];
                let scale = fa.abs().max(fb.abs()).max(1.0);
                assert!((fa - fb).abs() <= 1e-12 * scale, "n={n} degree={degree}: {fa} vs {fb}");
            }
        }
    }

    #[test]
    fn rejects_bad_specs() {
        assert_eq!(
            gen_constrained_poly(&GeneratorSpec::new(2, 2, 0)).unwrap_err(),
            GenError::DegreeTooLow { n: 2, degree: 2 }
        );
        assert_eq!(
            gen_constrained_poly(&GeneratorSpec::new(0, 3, 0)).unwrap_err(),
            GenError::ZeroOrder
        );
        let spec = GeneratorSpec {
            interval: (1.0, 1.0),
            ..GeneratorSpec::new(1, 3, 0)
        };
        assert!(matches!(gen_constrained_poly(&spec), Err(GenError::BadInterval { .. })));
    }

    #[test]
    fn render_signs() {
        assert_eq!(render(&[1.0, -0.5, 0.0, 2.0]), "1 - 0.5*x + 2*x^3");
        assert_eq!(render(&[0.0, -1.0]), "-1*x");
        assert_eq!(render(&[0.0, 0.0]), "0");
    }
}
