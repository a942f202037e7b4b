//! Scalar ground types: arbitrary-precision integers, rationals, and
//! Gaussian rationals, plus the small number-theoretic helpers the rest of
//! the crate leans on.

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Int = BigInt;
pub type Rational = BigRational;

/// Element of Q(i), used to evaluate Conway polynomials at z = -2i.
pub type GaussianRational = Complex<Rational>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("malformed rational `{text}`: {reason}")]
    MalformedRational { text: String, reason: String },
}

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(Int::from(num), Int::from(den))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(Int::from(n))
}

pub fn gaussian(re: Rational, im: Rational) -> GaussianRational {
    Complex::new(re, im)
}

/// z = -2i, the evaluation point that turns a Conway polynomial into a knot
/// determinant.
pub fn minus_two_i() -> GaussianRational {
    gaussian(Rational::zero(), rat_int(-2))
}

/// Parses `p` or `p/q` with optional leading sign; `q` must be nonzero.
pub fn parse_rational(text: &str) -> Result<Rational, ScalarError> {
    let err = |reason: &str| ScalarError::MalformedRational {
        text: text.to_owned(),
        reason: reason.to_owned(),
    };
    let mut parts = text.splitn(2, '/');
    let num_text = parts.next().expect("splitn yields at least one piece");
    let num: Int = num_text
        .parse()
        .map_err(|_| err("numerator is not an integer"))?;
    match parts.next() {
        None => Ok(Rational::from_integer(num)),
        Some(den_text) => {
            let den: Int = den_text
                .parse()
                .map_err(|_| err("denominator is not an integer"))?;
            if den.is_zero() {
                return Err(err("denominator is zero"));
            }
            Ok(Rational::new(num, den))
        }
    }
}

/// Canonical form: `p` when the denominator is 1, otherwise `p/q` with q > 0.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Lucas numbers: L(0) = 2, L(1) = 1, L(n+1) = L(n) + L(n-1).
pub fn lucas(n: u64) -> Int {
    let (mut prev, mut cur) = (int(2), int(1));
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = &cur + &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Whether n is a perfect square; negative inputs are never squares.
pub fn is_perfect_square(n: &Int) -> bool {
    if n.is_negative() {
        return false;
    }
    let root = n.sqrt();
    &root * &root == *n
}

/// Exact square root of a rational if one exists in Q.
pub fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let num_root = x.numer().sqrt();
    let den_root = x.denom().sqrt();
    if &num_root * &num_root == *x.numer() && &den_root * &den_root == *x.denom() {
        Some(Rational::new(num_root, den_root))
    } else {
        None
    }
}

/// Greatest common divisor of the numerators over the lcm of denominators:
/// the positive generator of the fractional ideal spanned by the inputs.
/// Used to put integer matrices and polynomial contents in lowest terms.
pub fn rational_content_gcd(xs: &[Rational]) -> Rational {
    let mut num_gcd = Int::zero();
    let mut den_lcm = Int::one();
    for x in xs {
        if x.is_zero() {
            continue;
        }
        num_gcd = num_gcd.gcd(x.numer());
        den_lcm = den_lcm.lcm(x.denom());
    }
    if num_gcd.is_zero() {
        Rational::zero()
    } else {
        Rational::new(num_gcd, den_lcm)
    }
}
