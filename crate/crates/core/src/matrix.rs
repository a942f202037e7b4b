//! Exact symmetric matrices over Q: fraction-free determinants, Gershgorin
//! disks, diagonal-dominance classification, and Sylvester inertia computed
//! by symmetric congruence reduction (no eigenvalues, no floats).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::scalar::{Int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("row {row} has {len} entries in a matrix of dimension {dim}")]
    NotSquare { row: usize, len: usize, dim: usize },
    #[error("entries ({i},{j}) and ({j},{i}) differ")]
    NotSymmetric { i: usize, j: usize },
    #[error("index {index} out of bounds for dimension {dim}")]
    IndexOutOfBounds { index: usize, dim: usize },
    #[error("row/column scale factor must be nonzero")]
    ZeroScale,
    #[error("duplicate index {index} in selection")]
    DuplicateIndex { index: usize },
}

/// Signature of a real symmetric matrix: counts of positive, negative, and
/// zero eigenvalues. A congruence invariant by Sylvester's law.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl fmt::Display for Inertia {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.positive, self.negative, self.zero)
    }
}

/// Row disk |x - center| <= radius; every eigenvalue lies in the union.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GershgorinDisk {
    pub center: Rational,
    pub radius: Rational,
}

/// Diagonal dominance by rows: `Dominant` means |a_ii| >= sum of off-diagonal
/// row magnitudes for every i; `StronglyDominant` additionally requires the
/// inequality to be strict in at least one row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dominance {
    NotDominant,
    Dominant,
    StronglyDominant,
}

impl fmt::Display for Dominance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Dominance::NotDominant => "not dominant",
            Dominance::Dominant => "dominant",
            Dominance::StronglyDominant => "strongly dominant",
        })
    }
}

/// Dense symmetric matrix with exact rational entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricMatrix {
    dim: usize,
    rows: Vec<Vec<Rational>>,
}

impl SymmetricMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            rows: vec![vec![Rational::zero(); dim]; dim],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, MatrixError> {
        let dim = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(MatrixError::NotSquare {
                    row: i,
                    len: row.len(),
                    dim,
                });
            }
        }
        for i in 0..dim {
            for j in (i + 1)..dim {
                if rows[i][j] != rows[j][i] {
                    return Err(MatrixError::NotSymmetric { i, j });
                }
            }
        }
        Ok(Self { dim, rows })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.rows[i][j]
    }

    /// Sets both (i, j) and (j, i).
    pub fn set_sym(&mut self, i: usize, j: usize, value: Rational) {
        self.rows[i][j] = value.clone();
        self.rows[j][i] = value;
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    fn check_index(&self, index: usize) -> Result<(), MatrixError> {
        if index < self.dim {
            Ok(())
        } else {
            Err(MatrixError::IndexOutOfBounds {
                index,
                dim: self.dim,
            })
        }
    }

    /// Principal submatrix with row and column `index` removed.
    pub fn removing(&self, index: usize) -> Result<Self, MatrixError> {
        self.check_index(index)?;
        let keep: Vec<usize> = (0..self.dim).filter(|&k| k != index).collect();
        self.restrict(&keep)
    }

    /// Principal submatrix on the given indices, in the given order.
    pub fn restrict(&self, indices: &[usize]) -> Result<Self, MatrixError> {
        let mut seen = vec![false; self.dim];
        for &idx in indices {
            self.check_index(idx)?;
            if seen[idx] {
                return Err(MatrixError::DuplicateIndex { index: idx });
            }
            seen[idx] = true;
        }
        let rows = indices
            .iter()
            .map(|&i| indices.iter().map(|&j| self.rows[i][j].clone()).collect())
            .collect();
        Ok(Self {
            dim: indices.len(),
            rows,
        })
    }

    /// Congruence D A D with D = diag(1, .., scale at `index`, .., 1):
    /// multiplies row and column `index` by `scale` (the diagonal entry by
    /// its square). Preserves inertia for nonzero scales.
    pub fn scale_row_col(&self, index: usize, scale: &Rational) -> Result<Self, MatrixError> {
        self.check_index(index)?;
        if scale.is_zero() {
            return Err(MatrixError::ZeroScale);
        }
        let mut out = self.clone();
        for j in 0..self.dim {
            out.rows[index][j] *= scale;
        }
        for i in 0..self.dim {
            out.rows[i][index] *= scale;
        }
        Ok(out)
    }

    /// Exact determinant by fraction-free Bareiss elimination: denominators
    /// are cleared once, then every intermediate division is exact over Z.
    pub fn determinant(&self) -> Rational {
        if self.dim == 0 {
            return Rational::one();
        }
        let mut denom_lcm = Int::one();
        for row in &self.rows {
            for entry in row {
                denom_lcm = denom_lcm.lcm(entry.denom());
            }
        }
        let mut m: Vec<Vec<BigInt>> = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|entry| entry.numer() * (&denom_lcm / entry.denom()))
                    .collect()
            })
            .collect();
        let n = self.dim;
        let mut sign = 1i8;
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return Rational::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                    m[i][j] = num / &prev; // exact: Bareiss identity
                }
                m[i][k] = Int::zero();
            }
            prev = m[k][k].clone();
        }
        let det_scaled = if sign < 0 {
            -m[n - 1][n - 1].clone()
        } else {
            m[n - 1][n - 1].clone()
        };
        Rational::new(det_scaled, denom_lcm.pow(n as u32))
    }

    /// One disk per row.
    pub fn gershgorin(&self) -> Vec<GershgorinDisk> {
        (0..self.dim)
            .map(|i| {
                let radius = (0..self.dim)
                    .filter(|&j| j != i)
                    .map(|j| self.rows[i][j].abs())
                    .fold(Rational::zero(), |acc, x| acc + x);
                GershgorinDisk {
                    center: self.rows[i][i].clone(),
                    radius,
                }
            })
            .collect()
    }

    pub fn dominance(&self) -> Dominance {
        let mut strict_somewhere = false;
        for disk in self.gershgorin() {
            let center_mag = disk.center.abs();
            if center_mag < disk.radius {
                return Dominance::NotDominant;
            }
            if center_mag > disk.radius {
                strict_somewhere = true;
            }
        }
        if strict_somewhere {
            Dominance::StronglyDominant
        } else {
            Dominance::Dominant
        }
    }

    pub fn diagonal_all_positive(&self) -> bool {
        (0..self.dim).all(|i| self.rows[i][i].is_positive())
    }

    /// Sylvester inertia via symmetric congruence reduction. Nonzero
    /// diagonal pivots contribute their sign; a zero diagonal with a nonzero
    /// off-diagonal entry is a hyperbolic plane contributing (+1, -1); a
    /// vanishing active block is all zeros.
    pub fn inertia(&self) -> Inertia {
        let mut m = self.rows.clone();
        let mut active: Vec<usize> = (0..self.dim).collect();
        let mut inertia = Inertia {
            positive: 0,
            negative: 0,
            zero: 0,
        };
        while !active.is_empty() {
            if let Some(pos) = active.iter().position(|&p| !m[p][p].is_zero()) {
                let p = active.remove(pos);
                let pivot = m[p][p].clone();
                if pivot.is_positive() {
                    inertia.positive += 1;
                } else {
                    inertia.negative += 1;
                }
                for &r in &active {
                    if m[r][p].is_zero() {
                        continue;
                    }
                    let factor = &m[r][p] / &pivot;
                    for &s in &active {
                        let delta = &factor * &m[p][s];
                        m[r][s] -= delta;
                    }
                }
                continue;
            }
            let pair = active
                .iter()
                .enumerate()
                .find_map(|(ii, &i)| {
                    active[ii + 1..]
                        .iter()
                        .find(|&&j| !m[i][j].is_zero())
                        .map(|&j| (i, j))
                });
            match pair {
                Some((i, j)) => {
                    // x_i x_j block: inertia (+1, -1) regardless of m[i][j]'s sign.
                    inertia.positive += 1;
                    inertia.negative += 1;
                    active.retain(|&k| k != i && k != j);
                    let a = m[i][j].clone();
                    for &r in &active {
                        for &s in &active {
                            // reads touch only rows/columns i and j, which are
                            // no longer written
                            let delta =
                                (&m[r][i] * &m[j][s] + &m[r][j] * &m[i][s]) / &a;
                            m[r][s] -= delta;
                        }
                    }
                }
                None => {
                    inertia.zero += active.len();
                    break;
                }
            }
        }
        inertia
    }

    pub fn is_positive_definite(&self) -> bool {
        self.inertia()
            == Inertia {
                positive: self.dim,
                negative: 0,
                zero: 0,
            }
    }
}
