//! Sliceness obstructions assembled from the other modules: Fox-Milnor
//! squareness of Alexander polynomials, the moth polynomial of a knot/link
//! pair and its denominator obstruction, independence certificates for the
//! odd Turk's-head family, and the connected-sum squareness dichotomy.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::braid::{alexander_turks_head, BraidError};
use crate::laurent::{LaurentPolynomial, PolyError, Var};
use crate::rational_function::RationalFunction;
use crate::scalar::{is_perfect_square, lucas, rat_int, Int, Rational};
use crate::turks::{lemma_det_int_report, DetIntReport, TurksError, TurksHeadIndex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ObstructionError {
    #[error("value at -1 is {value}, not an integer")]
    NonIntegralDeterminant { value: String },
    #[error("`{0}` is not a knot Conway polynomial (needs constant term 1, no negative exponents)")]
    KnotConwayNotNormalized(String),
    #[error("`{0}` is not divisible by z (a split-component Conway polynomial must be)")]
    NotDivisibleByZ(String),
    #[error("family member {n} is invalid: need odd n >= 5 with 3 not dividing n")]
    InvalidFamilyMember { n: u64 },
    #[error("index {n} is not an even family member: need even n >= 2 with 3 not dividing n")]
    NotEvenFamilyIndex { n: u64 },
    #[error("summands {i} and {j} share the factor `{common}`")]
    NonCoprimeSummands { i: usize, j: usize, common: String },
    #[error("summand {index} is the zero polynomial")]
    ZeroSummand { index: usize },
    #[error("knot determinants are nonnegative; got a negative input")]
    NegativeDeterminantInput,
    #[error(transparent)]
    Turks(#[from] TurksError),
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// |delta(-1)| as an exact integer.
pub fn knot_determinant(delta: &LaurentPolynomial) -> Result<Int, ObstructionError> {
    let v = delta.eval_rational(&rat_int(-1))?;
    if !v.denom().is_one() {
        return Err(ObstructionError::NonIntegralDeterminant {
            value: crate::scalar::format_rational(&v),
        });
    }
    Ok(v.numer().abs())
}

/// Outcome of the Fox-Milnor squareness test on one Alexander polynomial.
/// A slice knot must have `delta_is_square` (hence `det_is_square`) true, so
/// either flag being false obstructs sliceness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionVerdict {
    pub knot_tag: String,
    pub delta: LaurentPolynomial,
    pub determinant: Int,
    pub delta_is_square: bool,
    pub det_is_square: bool,
    /// f with delta = +/- t^k f^2, when delta_is_square.
    pub witness: Option<LaurentPolynomial>,
}

/// Fox-Milnor test: is delta a square up to units, and is |delta(-1)| a
/// perfect square? Requires a normalized Alexander polynomial.
pub fn fox_milnor_test(
    knot_tag: impl Into<String>,
    delta: &LaurentPolynomial,
) -> Result<ObstructionVerdict, ObstructionError> {
    let normalized = delta.is_symmetric()
        && delta
            .eval_rational(&Rational::one())
            .map(|v| v.is_one())
            .unwrap_or(false);
    if !normalized {
        return Err(PolyError::NotNormalized(delta.to_string()).into());
    }
    let determinant = knot_determinant(delta)?;
    let witness = delta.square_root();
    Ok(ObstructionVerdict {
        knot_tag: knot_tag.into(),
        delta: delta.clone(),
        delta_is_square: witness.is_some(),
        det_is_square: is_perfect_square(&determinant),
        determinant,
        witness,
    })
}

/// Determinant squareness for the even half of the Turk's-head family,
/// where lucas(2n) - 2 = lucas(n)^2 - 4 is never a perfect square: the
/// cheap determinant-only obstruction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvenDetReport {
    pub n: u64,
    pub det: Int,
    pub det_is_square: bool,
}

pub fn det_square_test_even_turks(n: u64) -> Result<EvenDetReport, ObstructionError> {
    if n < 2 || n % 2 != 0 || n % 3 == 0 {
        return Err(ObstructionError::NotEvenFamilyIndex { n });
    }
    let det = lucas(2 * n) - Int::from(2);
    Ok(EvenDetReport {
        n,
        det_is_square: is_perfect_square(&det),
        det,
    })
}

fn require_z(p: &LaurentPolynomial) -> Result<(), ObstructionError> {
    if p.var() == Var::Z {
        Ok(())
    } else {
        Err(PolyError::VariableMismatch(p.var(), Var::Z).into())
    }
}

/// A knot Conway polynomial: no negative exponents, constant term 1.
fn require_knot_conway(p: &LaurentPolynomial) -> Result<(), ObstructionError> {
    require_z(p)?;
    if p.min_exp().is_some_and(|m| m < 0) || !p.coeff(0).is_one() {
        return Err(ObstructionError::KnotConwayNotNormalized(p.to_string()));
    }
    Ok(())
}

/// A 2-component-link Conway polynomial must be divisible by z: zero, or a
/// genuine polynomial with zero constant term.
fn require_z_multiple(p: &LaurentPolynomial) -> Result<(), ObstructionError> {
    require_z(p)?;
    if p.is_zero() {
        return Ok(());
    }
    if p.min_exp().is_some_and(|m| m < 1) {
        return Err(ObstructionError::NotDivisibleByZ(p.to_string()));
    }
    Ok(())
}

/// Moth polynomial of a knot K and the 2-component link L_b^0 attached to
/// it: the reduced fraction conway(L) / (z conway(K)) in Q(z). Constant
/// along the butterfly tower, hence an equivariant concordance invariant.
pub fn moth_polynomial(
    conway_knot: &LaurentPolynomial,
    conway_link: &LaurentPolynomial,
) -> Result<RationalFunction, ObstructionError> {
    require_knot_conway(conway_knot)?;
    require_z_multiple(conway_link)?;
    let z = LaurentPolynomial::variable(Var::Z);
    let den = z.try_mul(conway_knot)?;
    Ok(RationalFunction::reduce(conway_link, &den)?)
}

/// Conway polynomial of the p-th butterfly link: the skein relation gives
/// the closed form conway(L_b^p) = conway(L_b^0) + p z conway(K).
pub fn butterfly_conway(
    conway_knot: &LaurentPolynomial,
    conway_link: &LaurentPolynomial,
    p: i64,
) -> Result<LaurentPolynomial, ObstructionError> {
    require_knot_conway(conway_knot)?;
    require_z_multiple(conway_link)?;
    let step = LaurentPolynomial::monomial(Var::Z, 1, rat_int(p));
    Ok(conway_link.try_add(&step.try_mul(conway_knot)?)?)
}

/// Conclusion of the determinant divisibility test on the moth denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtaDenominatorVerdict {
    pub det_knot: Int,
    pub det_link: Int,
    /// True when det_knot does not divide det_link: then the reduced moth
    /// denominator has positive degree (and divides conway_knot), so the
    /// moth polynomial is not a polynomial.
    pub obstruction_fires: bool,
    pub conway_knot: LaurentPolynomial,
}

impl fmt::Display for EtaDenominatorVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.obstruction_fires {
            write!(
                f,
                "det {} does not divide det {}: the moth denominator is a \
                 nonconstant divisor of {}",
                self.det_knot, self.det_link, self.conway_knot
            )
        } else {
            write!(
                f,
                "det {} divides det {}: inconclusive",
                self.det_knot, self.det_link
            )
        }
    }
}

/// Divisibility test det(K) | det(L): failure certifies a nonconstant moth
/// denominator without computing the moth polynomial itself.
pub fn eta_denominator_obstruction(
    conway_knot: &LaurentPolynomial,
    det_knot: &Int,
    det_link: &Int,
) -> Result<EtaDenominatorVerdict, ObstructionError> {
    require_knot_conway(conway_knot)?;
    if det_knot.is_negative() || det_link.is_negative() {
        return Err(ObstructionError::NegativeDeterminantInput);
    }
    let obstruction_fires = if det_knot.is_zero() {
        !det_link.is_zero()
    } else {
        !det_link.mod_floor(det_knot).is_zero()
    };
    Ok(EtaDenominatorVerdict {
        det_knot: det_knot.clone(),
        det_link: det_link.clone(),
        obstruction_fires,
        conway_knot: conway_knot.clone(),
    })
}

/// Certificate that the odd family members indexed by `family` generate
/// independently: pairwise coprime indices, pairwise coprime Alexander
/// polynomials, and a passing determinant-lemma report for each member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependenceCertificate {
    pub family: Vec<u64>,
    pub pairwise_coprime: bool,
    pub alexander_pairwise_coprime: bool,
    pub det_reports: Vec<DetIntReport>,
    pub conclusion: bool,
}

pub fn independence_certificate(
    family: &[u64],
) -> Result<IndependenceCertificate, ObstructionError> {
    let mut indices = Vec::with_capacity(family.len());
    for &n in family {
        indices.push(
            TurksHeadIndex::new(n)
                .map_err(|_| ObstructionError::InvalidFamilyMember { n })?,
        );
    }
    let mut pairwise_coprime = true;
    for (i, &m) in family.iter().enumerate() {
        for &n in &family[i + 1..] {
            if m.gcd(&n) != 1 {
                pairwise_coprime = false;
            }
        }
    }
    let alexanders: Vec<LaurentPolynomial> = family
        .iter()
        .map(|&n| alexander_turks_head(n))
        .collect::<Result<_, _>>()?;
    let mut alexander_pairwise_coprime = true;
    for (i, a) in alexanders.iter().enumerate() {
        for b in &alexanders[i + 1..] {
            if !LaurentPolynomial::gcd(a, b)?.is_one() {
                alexander_pairwise_coprime = false;
            }
        }
    }
    let det_reports: Vec<DetIntReport> = indices
        .iter()
        .map(|&idx| lemma_det_int_report(idx))
        .collect::<Result<_, _>>()?;
    let reports_pass = det_reports.iter().all(DetIntReport::all_checks_pass);
    Ok(IndependenceCertificate {
        family: family.to_vec(),
        pairwise_coprime,
        alexander_pairwise_coprime,
        conclusion: pairwise_coprime && alexander_pairwise_coprime && reports_pass,
        det_reports,
    })
}

/// Squareness of a product of pairwise-coprime Alexander polynomials with
/// integer multiplicities. For non-square summands the product is a square
/// up to units exactly when every multiplicity is even; both the extracted
/// witness and the parity vector are returned so the two can be compared.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectedSumVerdict {
    pub is_square: bool,
    /// Multiplicities mod 2, in input order.
    pub parity: Vec<u8>,
    pub product: LaurentPolynomial,
    pub witness: Option<LaurentPolynomial>,
}

pub fn connected_sum_square_test(
    summands: &[(LaurentPolynomial, i64)],
) -> Result<ConnectedSumVerdict, ObstructionError> {
    let var = summands.first().map_or(Var::T, |(p, _)| p.var());
    for (index, (p, _)) in summands.iter().enumerate() {
        if p.is_zero() {
            return Err(ObstructionError::ZeroSummand { index });
        }
    }
    for (i, (a, _)) in summands.iter().enumerate() {
        for (j, (b, _)) in summands.iter().enumerate().skip(i + 1) {
            let g = LaurentPolynomial::gcd(a, b)?;
            if !g.is_one() {
                return Err(ObstructionError::NonCoprimeSummands {
                    i,
                    j,
                    common: g.to_string(),
                });
            }
        }
    }
    // The Alexander polynomial of the inverse knot equals the original, so
    // only |multiplicity| matters for the product.
    let mut product = LaurentPolynomial::one(var);
    for (p, mult) in summands {
        product = product.try_mul(&p.pow(mult.unsigned_abs() as u32))?;
    }
    let witness = product.square_root();
    Ok(ConnectedSumVerdict {
        is_square: witness.is_some(),
        parity: summands
            .iter()
            .map(|(_, mult)| (mult.unsigned_abs() % 2) as u8)
            .collect(),
        product,
        witness,
    })
}
