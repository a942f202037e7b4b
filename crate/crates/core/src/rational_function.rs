//! Quotients of Laurent polynomials in a single canonical form, so that
//! equality of reduced fractions is structural equality.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::laurent::{LaurentPolynomial, PolyError, Var};
use crate::scalar::{rational_content_gcd, Rational};

/// Reduced fraction num/den of Laurent polynomials in one variable.
///
/// Canonical form: gcd(num, den) is a unit; den is an honest polynomial
/// (minimal exponent 0) with integer coefficients of content 1 and positive
/// leading coefficient; num and den have integer coefficients with no common
/// integer factor. Zero is 0/1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: LaurentPolynomial,
    den: LaurentPolynomial,
}

impl RationalFunction {
    /// Reduces num/den to canonical form. Errors only when den = 0.
    pub fn reduce(num: &LaurentPolynomial, den: &LaurentPolynomial) -> Result<Self, PolyError> {
        if num.var() != den.var() {
            return Err(PolyError::VariableMismatch(num.var(), den.var()));
        }
        if den.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let var = num.var();
        if num.is_zero() {
            return Ok(Self {
                num: LaurentPolynomial::zero(var),
                den: LaurentPolynomial::one(var),
            });
        }
        let g = LaurentPolynomial::gcd(num, den)?;
        let mut n = num.divexact(&g)?;
        let mut d = den.divexact(&g)?;
        // Push the denominator's unit into the numerator.
        let d_shift = d.min_exp().expect("den nonzero");
        d = d.shifted(-d_shift);
        n = n.shifted(-d_shift);
        // Clear denominators by a common rational scale, then fix sign.
        let coeffs: Vec<Rational> = n
            .terms()
            .map(|(_, c)| c.clone())
            .chain(d.terms().map(|(_, c)| c.clone()))
            .collect();
        let content = rational_content_gcd(&coeffs);
        debug_assert!(!content.is_zero());
        let mut scale = content.recip();
        let d_lead = d.coeff(d.max_exp().expect("den nonzero"));
        if (&d_lead * &scale).is_negative() {
            scale = -scale;
        }
        Ok(Self {
            num: n.scale(&scale),
            den: d.scale(&scale),
        })
    }

    pub fn from_polynomial(p: &LaurentPolynomial) -> Self {
        Self::reduce(p, &LaurentPolynomial::one(p.var())).expect("denominator 1 is nonzero")
    }

    pub fn numerator(&self) -> &LaurentPolynomial {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPolynomial {
        &self.den
    }

    pub fn var(&self) -> Var {
        self.num.var()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Whether the reduced denominator is a nonconstant polynomial.
    pub fn has_nonconstant_denominator(&self) -> bool {
        !self.den.is_constant()
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
