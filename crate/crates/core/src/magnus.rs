//! Milnor invariants of string links from the Magnus expansion: freely
//! reduced words in the free group carry the longitudes, and truncated
//! non-commutative power series with exact integer coefficients carry their
//! expansions x_i -> 1 + X_i, x_i^-1 -> 1 - X_i + X_i^2 - ...

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::scalar::Int;

/// Monomial indices are stored as bytes, so generator counts are capped.
pub const MAX_GENERATORS: usize = 255;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MagnusError {
    #[error("letter {pos} is zero; use signed indices 1..={generators}")]
    ZeroLetter { pos: usize, generators: usize },
    #[error("letter {pos} is {letter}, outside +/-1..={generators}")]
    LetterOutOfRange {
        pos: usize,
        letter: i32,
        generators: usize,
    },
    #[error("generator index {index} is outside 1..={generators}")]
    GeneratorIndexOutOfRange { index: usize, generators: usize },
    #[error("at most {MAX_GENERATORS} generators are supported; got {generators}")]
    TooManyGenerators { generators: usize },
    #[error("operands live in free groups of ranks {left} and {right}")]
    GeneratorMismatch { left: usize, right: usize },
    #[error("operands are truncated at degrees {left} and {right}")]
    TruncationMismatch { left: usize, right: usize },
    #[error("a Milnor index needs at least two entries; got {len}")]
    IndexTooShort { len: usize },
    #[error("index entry {entry} is outside 1..={strands}")]
    IndexEntryOutOfRange { entry: usize, strands: usize },
}

/// Line-numbered failure while reading a longitude file.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct LongitudeParseError {
    pub line: usize,
    pub message: String,
}

/// A freely reduced word in the free group on `generators` generators.
/// Letters are nonzero signed indices: `-i` is the inverse of generator `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FreeWord {
    generators: usize,
    letters: Vec<i32>,
}

impl FreeWord {
    /// Validates the letters and reduces adjacent inverse pairs.
    pub fn new(generators: usize, letters: &[i32]) -> Result<Self, MagnusError> {
        if generators > MAX_GENERATORS {
            return Err(MagnusError::TooManyGenerators { generators });
        }
        let mut reduced: Vec<i32> = Vec::with_capacity(letters.len());
        for (pos, &letter) in letters.iter().enumerate() {
            if letter == 0 {
                return Err(MagnusError::ZeroLetter {
                    pos: pos + 1,
                    generators,
                });
            }
            if letter.unsigned_abs() as usize > generators {
                return Err(MagnusError::LetterOutOfRange {
                    pos: pos + 1,
                    letter,
                    generators,
                });
            }
            if reduced.last() == Some(&-letter) {
                reduced.pop();
            } else {
                reduced.push(letter);
            }
        }
        Ok(FreeWord {
            generators,
            letters: reduced,
        })
    }

    pub fn identity(generators: usize) -> Self {
        assert!(
            generators <= MAX_GENERATORS,
            "at most {MAX_GENERATORS} generators are supported"
        );
        FreeWord {
            generators,
            letters: Vec::new(),
        }
    }

    /// The 1-based generator `index` as a one-letter word.
    pub fn generator(generators: usize, index: usize) -> Result<Self, MagnusError> {
        if index == 0 || index > generators {
            return Err(MagnusError::GeneratorIndexOutOfRange { index, generators });
        }
        Self::new(generators, &[index as i32])
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Self) -> Result<Self, MagnusError> {
        if self.generators != other.generators {
            return Err(MagnusError::GeneratorMismatch {
                left: self.generators,
                right: other.generators,
            });
        }
        let mut letters = self.letters.clone();
        for &letter in &other.letters {
            if letters.last() == Some(&-letter) {
                letters.pop();
            } else {
                letters.push(letter);
            }
        }
        Ok(FreeWord {
            generators: self.generators,
            letters,
        })
    }

    pub fn inverse(&self) -> Self {
        FreeWord {
            generators: self.generators,
            letters: self.letters.iter().rev().map(|&l| -l).collect(),
        }
    }

    /// [a, b] = a b a^-1 b^-1.
    pub fn commutator(a: &Self, b: &Self) -> Result<Self, MagnusError> {
        a.concat(b)?.concat(&a.inverse())?.concat(&b.inverse())
    }

    /// Signed count of occurrences of the 1-based generator `index`.
    pub fn exponent_sum(&self, index: usize) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.unsigned_abs() as usize == index)
            .map(|&l| i64::from(l.signum()))
            .sum()
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        for (i, letter) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{letter}")?;
        }
        Ok(())
    }
}

/// A non-commutative power series in X_1..X_m over Z, truncated to total
/// degree <= `truncation`. Monomials are stored as sequences of 1-based
/// generator indices; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MagnusSeries {
    generators: usize,
    truncation: usize,
    coeffs: BTreeMap<Vec<u8>, Int>,
}

impl MagnusSeries {
    pub fn one(generators: usize, truncation: usize) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(Vec::new(), Int::from(1));
        MagnusSeries {
            generators,
            truncation,
            coeffs,
        }
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn coefficient(&self, monomial: &[u8]) -> Int {
        self.coeffs.get(monomial).cloned().unwrap_or_else(Int::zero)
    }

    /// (monomial, coefficient) pairs in storage order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u8], &Int)> {
        self.coeffs.iter().map(|(m, c)| (m.as_slice(), c))
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coefficient(&[]) == Int::from(1)
    }

    /// Smallest degree >= 1 carrying a nonzero coefficient.
    pub fn lowest_positive_degree(&self) -> Option<usize> {
        self.coeffs
            .keys()
            .filter(|m| !m.is_empty())
            .map(Vec::len)
            .min()
    }

    pub fn mul(&self, other: &Self) -> Result<Self, MagnusError> {
        if self.generators != other.generators {
            return Err(MagnusError::GeneratorMismatch {
                left: self.generators,
                right: other.generators,
            });
        }
        if self.truncation != other.truncation {
            return Err(MagnusError::TruncationMismatch {
                left: self.truncation,
                right: other.truncation,
            });
        }
        let mut coeffs: BTreeMap<Vec<u8>, Int> = BTreeMap::new();
        for (ma, ca) in &self.coeffs {
            for (mb, cb) in &other.coeffs {
                if ma.len() + mb.len() > self.truncation {
                    continue;
                }
                let mut key = ma.clone();
                key.extend_from_slice(mb);
                let entry = coeffs.entry(key).or_insert_with(Int::zero);
                *entry += ca * cb;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        Ok(MagnusSeries {
            generators: self.generators,
            truncation: self.truncation,
            coeffs,
        })
    }

    /// The expansion of a single letter: 1 + X_g for a positive letter,
    /// the truncated geometric series 1 - X_g + X_g^2 - ... for its inverse.
    fn letter(generators: usize, truncation: usize, letter: i32) -> Self {
        let g = letter.unsigned_abs() as u8;
        let mut coeffs = BTreeMap::new();
        coeffs.insert(Vec::new(), Int::from(1));
        if letter > 0 {
            if truncation >= 1 {
                coeffs.insert(vec![g], Int::from(1));
            }
        } else {
            for m in 1..=truncation {
                let sign = if m % 2 == 0 { 1 } else { -1 };
                coeffs.insert(vec![g; m], Int::from(sign));
            }
        }
        MagnusSeries {
            generators,
            truncation,
            coeffs,
        }
    }
}

impl fmt::Display for MagnusSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(&Vec<u8>, &Int)> = self.coeffs.iter().collect();
        terms.sort_by_key(|(m, _)| (m.len(), m.as_slice()));
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (monomial, coeff)) in terms.iter().enumerate() {
            let negative = coeff.sign() == num_bigint::Sign::Minus;
            let magnitude = coeff.magnitude();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = monomial.is_empty() || !magnitude.eq(&1u32.into());
            if show_coeff {
                write!(f, "{magnitude}")?;
            }
            for (j, g) in monomial.iter().enumerate() {
                if show_coeff || j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "X{g}")?;
            }
        }
        Ok(())
    }
}

/// Magnus expansion of `word`, truncated to total degree <= `truncation`.
pub fn magnus_expand(word: &FreeWord, truncation: usize) -> MagnusSeries {
    let mut series = MagnusSeries::one(word.generators(), truncation);
    for &letter in word.letters() {
        let factor = MagnusSeries::letter(word.generators(), truncation, letter);
        series = series.mul(&factor).expect("matching generators and truncation");
    }
    series
}

/// Independent combinatorial evaluation of one expansion coefficient, used
/// as an oracle against `magnus_expand`: the coefficient of the monomial is
/// the signed count of ways to draw its letters, in order, from the word's
/// positions, where a positive letter yields one copy of its generator and
/// an inverse letter yields any run of m >= 1 copies with sign (-1)^m.
pub fn magnus_coefficient_bruteforce(word: &FreeWord, monomial: &[u8]) -> Int {
    for &entry in monomial {
        assert!(
            entry >= 1 && entry as usize <= word.generators(),
            "monomial entry {entry} is outside 1..={}",
            word.generators()
        );
    }

    fn count(letters: &[i32], monomial: &[u8]) -> Int {
        if monomial.is_empty() {
            return Int::from(1);
        }
        let Some((&letter, rest)) = letters.split_first() else {
            return Int::zero();
        };
        let g = letter.unsigned_abs() as u8;
        let mut total = count(rest, monomial);
        if letter > 0 {
            if monomial[0] == g {
                total += count(rest, &monomial[1..]);
            }
        } else {
            let mut m = 0;
            while m < monomial.len() && monomial[m] == g {
                m += 1;
                let branch = count(rest, &monomial[m..]);
                if m % 2 == 0 {
                    total += branch;
                } else {
                    total -= branch;
                }
            }
        }
        total
    }

    count(word.letters(), monomial)
}

fn check_longitudes(longitudes: &[FreeWord]) -> Result<usize, MagnusError> {
    let strands = longitudes.len();
    for word in longitudes {
        if word.generators() != strands {
            return Err(MagnusError::GeneratorMismatch {
                left: word.generators(),
                right: strands,
            });
        }
    }
    Ok(strands)
}

/// Milnor invariant mu(i_1 ... i_r j): the coefficient of X_{i_1}..X_{i_r}
/// in the Magnus expansion of the j-th longitude. The final index entry
/// selects the longitude; all entries are 1-based strand numbers.
pub fn mu_invariant(longitudes: &[FreeWord], index: &[usize]) -> Result<Int, MagnusError> {
    let strands = check_longitudes(longitudes)?;
    if index.len() < 2 {
        return Err(MagnusError::IndexTooShort { len: index.len() });
    }
    for &entry in index {
        if entry == 0 || entry > strands {
            return Err(MagnusError::IndexEntryOutOfRange { entry, strands });
        }
    }
    let (&j, prefix) = index.split_last().expect("length checked");
    let monomial: Vec<u8> = prefix.iter().map(|&i| i as u8).collect();
    let series = magnus_expand(&longitudes[j - 1], monomial.len());
    Ok(series.coefficient(&monomial))
}

/// Smallest degree 1..=max_degree at which some longitude's expansion has a
/// nonzero coefficient; None when all expansions are trivial that far. This
/// is the length-minus-one of the first potentially nonvanishing Milnor
/// invariants.
pub fn first_nontrivial_degree(
    longitudes: &[FreeWord],
    max_degree: usize,
) -> Result<Option<usize>, MagnusError> {
    check_longitudes(longitudes)?;
    Ok(longitudes
        .iter()
        .filter_map(|word| magnus_expand(word, max_degree).lowest_positive_degree())
        .min())
}

/// Reads a longitude file: a `strands <m>` header, then exactly one
/// `longitude <j>: <letters>` line per strand (in any order), letters being
/// signed generator indices. Blank lines are skipped; an empty letter list
/// is the identity.
pub fn parse_longitudes(text: &str) -> Result<Vec<FreeWord>, LongitudeParseError> {
    let fail = |line: usize, message: String| Err(LongitudeParseError { line, message });
    let mut strands: Option<usize> = None;
    let mut words: Vec<Option<FreeWord>> = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        let Some(m) = strands else {
            let mut parts = trimmed.split_whitespace();
            if parts.next() != Some("strands") {
                return fail(line, format!("expected `strands <m>`, found `{trimmed}`"));
            }
            let count: usize = match parts.next().map(str::parse) {
                Some(Ok(c)) if c >= 1 && c <= MAX_GENERATORS => c,
                _ => {
                    return fail(
                        line,
                        format!("strand count must be 1..={MAX_GENERATORS}"),
                    )
                }
            };
            if parts.next().is_some() {
                return fail(line, "trailing tokens after strand count".into());
            }
            strands = Some(count);
            words = vec![None; count];
            continue;
        };
        let Some((head, tail)) = trimmed.split_once(':') else {
            return fail(
                line,
                format!("expected `longitude <j>: <letters>`, found `{trimmed}`"),
            );
        };
        let mut head_parts = head.split_whitespace();
        if head_parts.next() != Some("longitude") {
            return fail(
                line,
                format!("expected `longitude <j>: <letters>`, found `{trimmed}`"),
            );
        }
        let j: usize = match head_parts.next().map(str::parse) {
            Some(Ok(j)) if (1..=m).contains(&j) => j,
            _ => return fail(line, format!("longitude index must be 1..={m}")),
        };
        if head_parts.next().is_some() {
            return fail(line, "trailing tokens before `:`".into());
        }
        if words[j - 1].is_some() {
            return fail(line, format!("longitude {j} given twice"));
        }
        let mut letters = Vec::new();
        for token in tail.split_whitespace() {
            let letter: i32 = token
                .parse()
                .map_err(|_| LongitudeParseError {
                    line,
                    message: format!("malformed letter `{token}`"),
                })?;
            letters.push(letter);
        }
        let word = FreeWord::new(m, &letters)
            .map_err(|e| LongitudeParseError {
                line,
                message: e.to_string(),
            })?;
        words[j - 1] = Some(word);
    }
    if strands.is_none() {
        return fail(last_line.max(1), "missing `strands <m>` header".into());
    }
    for (i, slot) in words.iter().enumerate() {
        if slot.is_none() {
            return fail(last_line.max(1), format!("longitude {} is missing", i + 1));
        }
    }
    Ok(words.into_iter().map(|w| w.expect("checked")).collect())
}
