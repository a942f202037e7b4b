//! Laurent polynomials over Q in a tagged variable.
//!
//! The tag (`t`, `z`, or `u`) travels with every polynomial so that
//! Alexander-side objects (in `t`), Conway-side objects (in `z`), and the
//! intermediate symmetric coordinate u = t + t^-1 can never be mixed by
//! accident: cross-variable arithmetic is an error, not a coercion.
//!
//! Invariant maintained everywhere: the coefficient map never stores an
//! explicit zero, so structural equality is mathematical equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_integer::binomial;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::scalar::{format_rational, rational_sqrt, GaussianRational, Int, Rational};

/// Formal variable of a Laurent polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    /// Alexander variable.
    T,
    /// Conway variable, z^2 = u - 2.
    Z,
    /// Symmetric coordinate u = t + t^-1.
    U,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Var::T => "t",
            Var::Z => "z",
            Var::U => "u",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("variable mismatch: {0} vs {1}")]
    VariableMismatch(Var, Var),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("inexact division: `{dividend}` is not a multiple of `{divisor}`")]
    InexactDivision { dividend: String, divisor: String },
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeroes,
    #[error("cannot evaluate at 0: polynomial has negative exponents")]
    EvalAtPole,
    #[error("`{0}` has no symmetric unit multiple")]
    NotSymmetrizable(String),
    #[error("value at 1 is {0}, not a unit, so this is not an Alexander polynomial")]
    ValueAtOneNotUnit(String),
    #[error("`{0}` is not symmetric")]
    NotSymmetric(String),
    #[error("expected a normalized Alexander polynomial (symmetric, value 1 at t = 1), got `{0}`")]
    NotNormalized(String),
    #[error("substitution target must have no negative exponents")]
    NegativeExponentSubstitution,
}

/// Laurent polynomial with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    var: Var,
    coeffs: BTreeMap<i64, Rational>,
}

impl LaurentPolynomial {
    pub fn zero(var: Var) -> Self {
        Self {
            var,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(var: Var) -> Self {
        Self::constant(var, Rational::one())
    }

    pub fn constant(var: Var, c: Rational) -> Self {
        Self::monomial(var, 0, c)
    }

    /// The bare variable, i.e. the monomial t^1.
    pub fn variable(var: Var) -> Self {
        Self::monomial(var, 1, Rational::one())
    }

    pub fn monomial(var: Var, exp: i64, c: Rational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exp, c);
        }
        Self { var, coeffs }
    }

    /// Sum of the given terms; duplicate exponents accumulate.
    pub fn from_terms(var: Var, terms: impl IntoIterator<Item = (i64, Rational)>) -> Self {
        let mut p = Self::zero(var);
        for (exp, c) in terms {
            p.add_term(exp, c);
        }
        p
    }

    /// Integer-coefficient convenience constructor.
    pub fn from_int_terms(var: Var, terms: &[(i64, i64)]) -> Self {
        Self::from_terms(
            var,
            terms
                .iter()
                .map(|&(e, c)| (e, Rational::from_integer(Int::from(c)))),
        )
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeff(0).is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty() || (self.coeffs.len() == 1 && self.coeffs.contains_key(&0))
    }

    pub fn coeff(&self, exp: i64) -> Rational {
        self.coeffs.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    /// Smallest exponent with nonzero coefficient; None for the zero polynomial.
    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Largest exponent with nonzero coefficient; None for the zero polynomial.
    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.len()
    }

    fn add_term(&mut self, exp: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    fn check_var(&self, other: &Self) -> Result<(), PolyError> {
        if self.var == other.var {
            Ok(())
        } else {
            Err(PolyError::VariableMismatch(self.var, other.var))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_var(other)?;
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_var(other)?;
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_var(other)?;
        let mut out = Self::zero(self.var);
        for (ea, ca) in self.terms() {
            for (eb, cb) in other.terms() {
                out.add_term(ea + eb, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.var);
        }
        Self {
            var: self.var,
            coeffs: self.coeffs.iter().map(|(&e, v)| (e, v * c)).collect(),
        }
    }

    /// Multiplication by the unit t^shift.
    pub fn shifted(&self, shift: i64) -> Self {
        Self {
            var: self.var,
            coeffs: self
                .coeffs
                .iter()
                .map(|(&e, v)| (e + shift, v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one(self.var);
        for _ in 0..n {
            out = out.try_mul(self).expect("same variable");
        }
        out
    }

    /// Exact division: errors unless `other` divides `self` in the Laurent ring.
    pub fn divexact(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_var(other)?;
        if other.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.var));
        }
        let sa = self.min_exp().expect("nonzero");
        let sb = other.min_exp().expect("nonzero");
        let a = self.to_dense();
        let b = other.to_dense();
        let (q, r) = poly_divmod(&a, &b);
        if !r.is_empty() {
            return Err(PolyError::InexactDivision {
                dividend: self.to_string(),
                divisor: other.to_string(),
            });
        }
        Ok(Self::from_dense(self.var, &q, sa - sb))
    }

    /// Gcd in the Laurent ring, normalized monic with minimal exponent 0.
    /// Well-defined up to units; this fixes the unit.
    pub fn gcd(a: &Self, b: &Self) -> Result<Self, PolyError> {
        a.check_var(b)?;
        if a.is_zero() && b.is_zero() {
            return Err(PolyError::GcdOfZeroes);
        }
        if a.is_zero() {
            return Ok(b.monic_at_zero());
        }
        if b.is_zero() {
            return Ok(a.monic_at_zero());
        }
        let mut f = a.to_dense();
        let mut g = b.to_dense();
        while !g.is_empty() {
            let (_, r) = poly_divmod(&f, &g);
            f = g;
            g = r;
        }
        Ok(Self::from_dense(a.var, &f, 0).monic_at_zero())
    }

    /// Strips the unit: shifts to minimal exponent 0 and rescales so the
    /// leading coefficient is 1.
    fn monic_at_zero(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let shift = -self.min_exp().expect("nonzero");
        let lead = self.coeff(self.max_exp().expect("nonzero"));
        self.shifted(shift).scale(&lead.recip())
    }

    fn to_dense(&self) -> Vec<Rational> {
        let (lo, hi) = match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return Vec::new(),
        };
        let mut out = vec![Rational::zero(); (hi - lo + 1) as usize];
        for (e, c) in self.terms() {
            out[(e - lo) as usize] = c.clone();
        }
        out
    }

    fn from_dense(var: Var, dense: &[Rational], shift: i64) -> Self {
        Self::from_terms(
            var,
            dense
                .iter()
                .enumerate()
                .map(|(i, c)| (i as i64 + shift, c.clone())),
        )
    }

    pub fn eval_rational(&self, x: &Rational) -> Result<Rational, PolyError> {
        if x.is_zero() && self.min_exp().is_some_and(|m| m < 0) {
            return Err(PolyError::EvalAtPole);
        }
        let mut acc = Rational::zero();
        for (e, c) in self.terms() {
            acc += c * rational_pow(x, e);
        }
        Ok(acc)
    }

    pub fn eval_gaussian(&self, x: &GaussianRational) -> Result<GaussianRational, PolyError> {
        if x.is_zero() && self.min_exp().is_some_and(|m| m < 0) {
            return Err(PolyError::EvalAtPole);
        }
        let mut acc = GaussianRational::new(Rational::zero(), Rational::zero());
        for (e, c) in self.terms() {
            let term = gaussian_pow(x, e).scale(c.clone());
            acc = acc + term;
        }
        Ok(acc)
    }

    /// Floating-point evaluation, for root residual checks only.
    pub fn eval_complex64(&self, x: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in self.terms() {
            let cf = c.to_f64().expect("rational fits in f64");
            acc += cf * x.powi(e as i32);
        }
        acc
    }

    /// Whether p(t) = p(t^-1).
    pub fn is_symmetric(&self) -> bool {
        self.terms().all(|(e, c)| self.coeff(-e) == *c)
    }

    /// Canonical Alexander representative: the unit multiple +/- t^k p that
    /// is symmetric with value 1 at t = 1.
    pub fn normalize_alexander(&self) -> Result<Self, PolyError> {
        if self.is_zero() {
            return Err(PolyError::NotSymmetrizable(self.to_string()));
        }
        let lo = self.min_exp().expect("nonzero");
        let hi = self.max_exp().expect("nonzero");
        if (lo + hi) % 2 != 0 {
            // The span has odd length; no shift can center it.
            return Err(PolyError::NotSymmetrizable(self.to_string()));
        }
        let centered = self.shifted(-(lo + hi) / 2);
        if !centered.is_symmetric() {
            return Err(PolyError::NotSymmetrizable(self.to_string()));
        }
        let at_one = centered
            .eval_rational(&Rational::one())
            .expect("1 is not a pole");
        if at_one.is_one() {
            Ok(centered)
        } else if (-&at_one).is_one() {
            Ok(-&centered)
        } else {
            Err(PolyError::ValueAtOneNotUnit(format_rational(&at_one)))
        }
    }

    /// Rewrites a symmetric polynomial in t as a polynomial in u = t + t^-1.
    pub fn to_u_coordinates(&self) -> Result<Self, PolyError> {
        if self.var != Var::T {
            return Err(PolyError::VariableMismatch(self.var, Var::T));
        }
        if !self.is_symmetric() {
            return Err(PolyError::NotSymmetric(self.to_string()));
        }
        let mut rest = self.clone();
        let mut out = Self::zero(Var::U);
        while let Some(d) = rest.max_exp() {
            if d == 0 {
                break;
            }
            let c = rest.coeff(d);
            out.add_term(d, c.clone());
            // subtract c (t + t^-1)^d = c sum_i C(d, i) t^(d - 2i)
            for i in 0..=d {
                let bin = Rational::from_integer(binomial(Int::from(d), Int::from(i)));
                rest.add_term(d - 2 * i, -(&c * bin));
            }
        }
        out.add_term(0, rest.coeff(0));
        Ok(out)
    }

    /// Substitutes `inner` for the variable; `self` must have no negative
    /// exponents. The result lives in `inner`'s variable.
    pub fn substitute(&self, inner: &Self) -> Result<Self, PolyError> {
        if self.min_exp().is_some_and(|m| m < 0) {
            return Err(PolyError::NegativeExponentSubstitution);
        }
        // Horner from the top exponent down.
        let mut acc = Self::zero(inner.var);
        let mut prev_exp: Option<i64> = None;
        for (e, c) in self.coeffs.iter().rev() {
            if let Some(p) = prev_exp {
                acc = acc.try_mul(&inner.pow((p - e) as u32))?;
            }
            acc.add_term(0, c.clone());
            prev_exp = Some(*e);
        }
        if let Some(p) = prev_exp {
            acc = acc.try_mul(&inner.pow(p as u32))?;
        }
        Ok(acc)
    }

    /// Conway normalization: from a normalized Alexander polynomial to the
    /// polynomial in z with z^2 = t + t^-1 - 2. Satisfies nabla(0) = 1 and
    /// nabla(-2i) = delta(-1) on the nose.
    pub fn conway_from_alexander(&self) -> Result<Self, PolyError> {
        if self.var != Var::T {
            return Err(PolyError::VariableMismatch(self.var, Var::T));
        }
        if !self.is_symmetric()
            || !self
                .eval_rational(&Rational::one())
                .expect("1 is not a pole")
                .is_one()
        {
            return Err(PolyError::NotNormalized(self.to_string()));
        }
        let in_u = self.to_u_coordinates()?;
        // u = z^2 + 2
        let z2_plus_2 = Self::from_int_terms(Var::Z, &[(2, 1), (0, 2)]);
        let mut in_u_retagged = in_u;
        in_u_retagged.var = Var::Z;
        let out = in_u_retagged.substitute(&z2_plus_2)?;
        debug_assert!(out.coeff(0).is_one(), "Conway normalization: nabla(0) = 1");
        Ok(out)
    }

    /// Square root up to units: Some(f) with self = +/- t^k f^2, if such f
    /// exists. f is returned with minimal exponent 0 and positive leading
    /// coefficient.
    pub fn square_root(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let stripped = self.shifted(-self.min_exp().expect("nonzero"));
        let deg = stripped.max_exp().expect("nonzero");
        if deg % 2 != 0 {
            return None;
        }
        let lead = stripped.coeff(deg);
        let konst = stripped.coeff(0);
        // f^2 has positive leading and constant coefficients, so the unit
        // sign is forced; mixed signs rule a square multiple out.
        let target = if lead.is_positive() && konst.is_positive() {
            stripped
        } else if lead.is_negative() && konst.is_negative() {
            -&stripped
        } else {
            return None;
        };
        let half = deg / 2;
        let mut f = vec![Rational::zero(); half as usize + 1];
        f[half as usize] = rational_sqrt(&target.coeff(deg))?;
        // Top-down coefficient matching: the t^(half + j) coefficient of f^2
        // determines f_j once f_(j+1..half) are known.
        for j in (0..half).rev() {
            let mut known = Rational::zero();
            for r in (j + 1)..half {
                let s = half + j - r;
                if s > j && s < half {
                    known += &f[r as usize] * &f[s as usize];
                }
            }
            let numer = target.coeff(half + j) - known;
            f[j as usize] = numer / (Rational::from_integer(Int::from(2)) * &f[half as usize]);
        }
        let candidate = Self::from_dense(self.var, &f, 0);
        let square = candidate.try_mul(&candidate).expect("same variable");
        if square == target {
            Some(candidate)
        } else {
            None
        }
    }
}

fn rational_pow(x: &Rational, e: i64) -> Rational {
    if e == 0 {
        return Rational::one();
    }
    // Ratio::pow handles negative exponents exactly (x is nonzero there:
    // callers reject poles first).
    x.pow(e as i32)
}

fn gaussian_inverse(x: &GaussianRational) -> GaussianRational {
    let norm = &x.re * &x.re + &x.im * &x.im;
    GaussianRational::new(&x.re / &norm, -&x.im / &norm)
}

fn gaussian_pow(x: &GaussianRational, e: i64) -> GaussianRational {
    let base = if e < 0 { gaussian_inverse(x) } else { x.clone() };
    let mut out = GaussianRational::new(Rational::one(), Rational::zero());
    for _ in 0..e.unsigned_abs() {
        out = out * &base;
    }
    out
}

/// Division with remainder of dense polynomials over Q.
/// Index = exponent; the divisor must be nonempty with nonzero lead.
/// Returns (quotient, remainder) with the remainder trimmed of zero leads.
fn poly_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let db = b.len() - 1;
    let lead = &b[db];
    debug_assert!(!lead.is_zero());
    let mut rem = a.to_vec();
    let mut quo = if a.len() > db {
        vec![Rational::zero(); a.len() - db]
    } else {
        Vec::new()
    };
    for i in (0..quo.len()).rev() {
        let top = rem[i + db].clone();
        if top.is_zero() {
            continue;
        }
        let q = top / lead;
        for (j, bj) in b.iter().enumerate() {
            let delta = &q * bj;
            rem[i + j] -= delta;
        }
        quo[i] = q;
    }
    while rem.last().is_some_and(Rational::is_zero) {
        rem.pop();
    }
    (quo, rem)
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            var: self.var,
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        -&self
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $try_method:ident) => {
        impl $trait for &LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $method(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
                self.$try_method(rhs).expect("variable mismatch")
            }
        }

        impl $trait for LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $method(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl fmt::Display for LaurentPolynomial {
    /// Canonical form, ascending exponents: `-t^-1 + 3 - t`. Round-trips
    /// through the polynomial grammar used by the CLI.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let mag = c.abs();
            if e == 0 {
                f.write_str(&format_rational(&mag))?;
            } else {
                if !mag.is_one() {
                    f.write_str(&format_rational(&mag))?;
                }
                write!(f, "{}", self.var)?;
                if e != 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}
