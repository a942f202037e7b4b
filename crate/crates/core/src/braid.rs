//! Braid words, the reduced Burau representation, and Alexander/Conway
//! polynomials of braid closures, with the closed trace recursion and root
//! formula for the Turk's-head family (closures of (s1 s2^-1)^n on three
//! strands).

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use num_traits::One;
use thiserror::Error;

use crate::laurent::{LaurentPolynomial, PolyError, Var};
use crate::scalar::{rat_int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("token {pos}: `{token}` is not a braid letter")]
    MalformedToken { pos: usize, token: String },
    #[error("token {pos}: 0 is not a braid letter")]
    ZeroLetter { pos: usize },
    #[error("token {pos}: letter {letter} needs at least {needed} strands, word has {strands}")]
    LetterOutOfRange {
        pos: usize,
        letter: i32,
        strands: usize,
        needed: usize,
    },
    #[error("a braid needs at least 2 strands, got {strands}")]
    TooFewStrands { strands: usize },
    #[error("cannot concatenate words on {left} and {right} strands")]
    StrandMismatch { left: usize, right: usize },
    #[error("closure has {components} components, not a knot")]
    NotAKnot { components: usize },
    #[error("index {n} is outside the family: need n >= 2 with 3 not dividing n")]
    NotInFamily { n: u64 },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Word in the braid group B_strands; letters are nonzero integers, sign for
/// generator vs inverse, magnitude for the generator index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, BraidError> {
        if strands < 2 {
            return Err(BraidError::TooFewStrands { strands });
        }
        for (i, &letter) in letters.iter().enumerate() {
            let pos = i + 1;
            if letter == 0 {
                return Err(BraidError::ZeroLetter { pos });
            }
            if letter.unsigned_abs() as usize > strands - 1 {
                return Err(BraidError::LetterOutOfRange {
                    pos,
                    letter,
                    strands,
                    needed: letter.unsigned_abs() as usize + 1,
                });
            }
        }
        Ok(Self { strands, letters })
    }

    /// Parses whitespace-separated letters with an optional leading
    /// `strands=<k>` token (default 3). Error positions count tokens of the
    /// input, 1-based.
    pub fn parse(text: &str) -> Result<Self, BraidError> {
        let mut strands = 3usize;
        let mut offset = 0usize;
        let mut letters = Vec::new();
        for (i, token) in text.split_whitespace().enumerate() {
            let pos = i + 1;
            if let Some(count) = token.strip_prefix("strands=") {
                if pos != 1 {
                    return Err(BraidError::MalformedToken {
                        pos,
                        token: token.to_owned(),
                    });
                }
                strands = count.parse().map_err(|_| BraidError::MalformedToken {
                    pos,
                    token: token.to_owned(),
                })?;
                offset = 1;
                continue;
            }
            let letter: i32 = token.parse().map_err(|_| BraidError::MalformedToken {
                pos,
                token: token.to_owned(),
            })?;
            letters.push(letter);
        }
        Self::new(strands, letters).map_err(|e| match e {
            BraidError::ZeroLetter { pos } => BraidError::ZeroLetter { pos: pos + offset },
            BraidError::LetterOutOfRange {
                pos,
                letter,
                strands,
                needed,
            } => BraidError::LetterOutOfRange {
                pos: pos + offset,
                letter,
                strands,
                needed,
            },
            other => other,
        })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn inverse(&self) -> Self {
        Self {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|&l| -l).collect(),
        }
    }

    pub fn concat(&self, other: &Self) -> Result<Self, BraidError> {
        if self.strands != other.strands {
            return Err(BraidError::StrandMismatch {
                left: self.strands,
                right: other.strands,
            });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Self {
            strands: self.strands,
            letters,
        })
    }

    pub fn repeat(&self, times: usize) -> Self {
        let mut letters = Vec::with_capacity(self.letters.len() * times);
        for _ in 0..times {
            letters.extend_from_slice(&self.letters);
        }
        Self {
            strands: self.strands,
            letters,
        }
    }

    /// Underlying permutation: position i of the bottom maps to
    /// permutation[i] at the top.
    pub fn permutation(&self) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..self.strands).collect();
        for &letter in &self.letters {
            let i = letter.unsigned_abs() as usize - 1;
            perm.swap(i, i + 1);
        }
        perm
    }

    /// Number of link components of the braid closure: cycles of the
    /// underlying permutation.
    pub fn closure_components(&self) -> usize {
        let perm = self.permutation();
        let mut seen = vec![false; perm.len()];
        let mut cycles = 0;
        for start in 0..perm.len() {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut at = start;
            while !seen[at] {
                seen[at] = true;
                at = perm[at];
            }
        }
        cycles
    }

    pub fn is_knot_closure(&self) -> bool {
        self.closure_components() == 1
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.strands != 3 {
            write!(f, "strands={}", self.strands)?;
            if !self.letters.is_empty() {
                f.write_str(" ")?;
            }
        }
        let words: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        f.write_str(&words.join(" "))
    }
}

/// Square matrix of Laurent polynomials in t.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentMatrix {
    dim: usize,
    entries: Vec<Vec<LaurentPolynomial>>,
}

impl LaurentMatrix {
    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![vec![LaurentPolynomial::zero(Var::T); dim]; dim];
        for (i, row) in entries.iter_mut().enumerate() {
            row[i] = LaurentPolynomial::one(Var::T);
        }
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPolynomial {
        &self.entries[i][j]
    }

    fn set(&mut self, i: usize, j: usize, p: LaurentPolynomial) {
        self.entries[i][j] = p;
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let mut out = Self::identity(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let mut acc = LaurentPolynomial::zero(Var::T);
                for k in 0..self.dim {
                    acc = &acc + &(&self.entries[i][k] * &other.entries[k][j]);
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn trace(&self) -> LaurentPolynomial {
        let mut acc = LaurentPolynomial::zero(Var::T);
        for i in 0..self.dim {
            acc = &acc + &self.entries[i][i];
        }
        acc
    }

    pub fn sub_identity(&self) -> Self {
        let mut out = self.clone();
        for i in 0..self.dim {
            let diff = &out.entries[i][i] - &LaurentPolynomial::one(Var::T);
            out.set(i, i, diff);
        }
        out
    }

    /// Exact determinant by Bareiss elimination; every division is exact in
    /// the Laurent ring, so no rational-function arithmetic is needed.
    pub fn determinant(&self) -> LaurentPolynomial {
        let n = self.dim;
        if n == 0 {
            return LaurentPolynomial::one(Var::T);
        }
        let mut m = self.entries.clone();
        let mut negate = false;
        let mut prev = LaurentPolynomial::one(Var::T);
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        negate = !negate;
                    }
                    None => return LaurentPolynomial::zero(Var::T),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                    m[i][j] = num
                        .divexact(&prev)
                        .expect("Bareiss division is exact in an integral domain");
                }
                m[i][k] = LaurentPolynomial::zero(Var::T);
            }
            prev = m[k][k].clone();
        }
        let det = m[n - 1][n - 1].clone();
        if negate {
            -det
        } else {
            det
        }
    }
}

/// Reduced Burau matrix of a single letter, dimension strands - 1.
fn burau_generator(strands: usize, letter: i32) -> LaurentMatrix {
    let d = strands - 1;
    let r = letter.unsigned_abs() as usize - 1;
    let mut m = LaurentMatrix::identity(d);
    let t = LaurentPolynomial::variable(Var::T);
    let t_inv = LaurentPolynomial::monomial(Var::T, -1, Rational::one());
    let one = LaurentPolynomial::one(Var::T);
    if letter > 0 {
        m.set(r, r, -&t);
        if r > 0 {
            m.set(r, r - 1, t.clone());
        }
        if r + 1 < d {
            m.set(r, r + 1, one);
        }
    } else {
        m.set(r, r, -&t_inv);
        if r > 0 {
            m.set(r, r - 1, one);
        }
        if r + 1 < d {
            m.set(r, r + 1, t_inv.clone());
        }
    }
    m
}

/// Reduced Burau representation of a braid word: the ordered product of the
/// letter matrices, dimension strands - 1.
pub fn reduced_burau(word: &BraidWord) -> LaurentMatrix {
    let mut m = LaurentMatrix::identity(word.strands() - 1);
    for &letter in word.letters() {
        m = m.mul(&burau_generator(word.strands(), letter));
    }
    m
}

fn cyclotomic_like(strands: usize) -> LaurentPolynomial {
    LaurentPolynomial::from_terms(
        Var::T,
        (0..strands).map(|j| (j as i64, Rational::one())),
    )
}

/// Alexander polynomial of the closure of a braid word whose closure is a
/// knot: det(burau - id) divided by 1 + t + .. + t^(strands-1), then
/// normalized (symmetric, value 1 at t = 1).
pub fn alexander_of_closure(word: &BraidWord) -> Result<LaurentPolynomial, BraidError> {
    let components = word.closure_components();
    if components != 1 {
        return Err(BraidError::NotAKnot { components });
    }
    let det = reduced_burau(word).sub_identity().determinant();
    let quotient = det.divexact(&cyclotomic_like(word.strands()))?;
    Ok(quotient.normalize_alexander()?)
}

fn family_index(n: u64) -> Result<(), BraidError> {
    if n >= 2 && n % 3 != 0 {
        Ok(())
    } else {
        Err(BraidError::NotInFamily { n })
    }
}

/// The two-letter seed of the family: s1 s2^-1 on three strands.
pub fn turks_head_word(n: u64) -> Result<BraidWord, BraidError> {
    family_index(n)?;
    Ok(BraidWord::new(3, vec![1, -2]).expect("valid seed").repeat(n as usize))
}

/// Alexander polynomial of the n-th Turk's-head closure by the trace
/// recursion: with M the Burau matrix of the seed (det M = 1, trace
/// s = 1 - t - t^-1), tr M^j satisfies the Chebyshev-style recursion
/// c_(j+1) = s c_j - c_(j-1), and det(M^n - I) = 2 - c_n. Much cheaper than
/// the generic route and fully independent of it above j = 1.
pub fn alexander_turks_head(n: u64) -> Result<LaurentPolynomial, BraidError> {
    family_index(n)?;
    let seed = BraidWord::new(3, vec![1, -2]).expect("valid seed");
    let s = reduced_burau(&seed).trace();
    let mut prev = LaurentPolynomial::constant(Var::T, rat_int(2)); // tr M^0
    let mut cur = s.clone(); // tr M^1
    for _ in 1..n {
        let next = &(&s * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    let det_minus_id = &LaurentPolynomial::constant(Var::T, rat_int(2)) - &cur;
    let quotient = det_minus_id.divexact(&cyclotomic_like(3))?;
    Ok(quotient.normalize_alexander()?)
}

/// Conway polynomial of the n-th Turk's-head closure.
pub fn conway_turks_head(n: u64) -> Result<LaurentPolynomial, BraidError> {
    Ok(alexander_turks_head(n)?.conway_from_alexander()?)
}

/// Roots of the n-th Turk's-head Alexander polynomial from the closed
/// formula: for each 1 <= k <= n/2, with a = 2 cos(2 pi k / n) - 1, the
/// reciprocal pair -(a +/- sqrt(a^2 - 4)) / 2. For odd n these 2 floor(n/2)
/// values are exactly the distinct roots (each of multiplicity two).
pub fn turks_head_roots(n: u64) -> Result<Vec<Complex64>, BraidError> {
    family_index(n)?;
    let mut roots = Vec::new();
    for k in 1..=(n / 2) {
        let a = 2.0 * (2.0 * PI * k as f64 / n as f64).cos() - 1.0;
        let sqrt_disc = Complex64::new(a * a - 4.0, 0.0).sqrt();
        let a_c = Complex64::new(a, 0.0);
        roots.push(-(a_c + sqrt_disc) / 2.0);
        roots.push(-(a_c - sqrt_disc) / 2.0);
    }
    Ok(roots)
}
