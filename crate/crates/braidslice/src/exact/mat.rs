//! Dense exact-rational matrices: rank by fraction-free elimination,
//! symmetric signature by congruence reduction, nullspace bases, and
//! small nonsingular solves.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{ExactError, Rat, RatVec};

/// Row-major matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

/// Inertia of a symmetric matrix: counts of positive, negative, and zero
/// eigenvalues. Computed exactly, without computing any eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl RatMat {
    pub fn new(rows: usize, cols: usize, data: Vec<Rat>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must be rows*cols");
        Self { rows, cols, data }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Self::new(rows, cols, vec![Rat::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<RatVec>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            assert_eq!(row.len(), ncols, "ragged rows");
            data.extend(row);
        }
        Self::new(nrows, ncols, data)
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&n| super::rat(n)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rat) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Rat]> {
        self.data.chunks_exact(self.cols)
    }

    pub fn transpose(&self) -> RatMat {
        let mut out = RatMat::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn matmul(&self, other: &RatMat) -> RatMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = RatMat::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let cur = out.get(r, c) + a * b;
                        out.set(r, c, cur);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> RatVec {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        self.row_iter().map(|row| super::dot(row, v)).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetry_defect().is_none()
    }

    fn symmetry_defect(&self) -> Option<(usize, usize)> {
        if self.rows != self.cols {
            return Some((self.rows, self.cols));
        }
        for r in 0..self.rows {
            for c in (r + 1)..self.cols {
                if self.get(r, c) != self.get(c, r) {
                    return Some((r, c));
                }
            }
        }
        None
    }

    /// Exact rank over the rationals.
    ///
    /// Each row is scaled to integers, then reduced by Bareiss
    /// fraction-free elimination so intermediate values stay integral.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<BigInt>> = self.row_iter().map(integer_row).collect();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        let mut prev_pivot = BigInt::one();
        let mut col = 0;
        while rank < rows && col < cols {
            let Some(pivot_row) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
                col += 1;
                continue;
            };
            m.swap(rank, pivot_row);
            for r in (rank + 1)..rows {
                for c in (col + 1)..cols {
                    let num = &m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c];
                    debug_assert!((&num % &prev_pivot).is_zero(), "Bareiss division not exact");
                    m[r][c] = num / &prev_pivot;
                }
                m[r][col] = BigInt::zero();
            }
            prev_pivot = m[rank][col].clone();
            rank += 1;
            col += 1;
        }
        rank
    }

    /// Exact inertia of a symmetric matrix by congruence reduction:
    /// diagonal pivots where available, hyperbolic 2x2 blocks when every
    /// remaining diagonal entry vanishes.
    pub fn signature(&self) -> Result<Signature, ExactError> {
        if let Some((r, c)) = self.symmetry_defect() {
            return Err(ExactError::NotSymmetric(r, c));
        }
        let n = self.rows;
        let mut s: Vec<Vec<Rat>> = (0..n).map(|r| self.row(r).to_vec()).collect();
        let mut active: Vec<usize> = (0..n).collect();
        let mut sig = Signature { positive: 0, negative: 0, zero: 0 };

        while !active.is_empty() {
            // Diagonal pivot if one exists.
            if let Some(pos) = active.iter().position(|&i| !s[i][i].is_zero()) {
                let p = active.remove(pos);
                let d = s[p][p].clone();
                if d.is_positive() {
                    sig.positive += 1;
                } else {
                    sig.negative += 1;
                }
                for &r in &active {
                    if s[r][p].is_zero() {
                        continue;
                    }
                    let factor = &s[r][p] / &d;
                    for &c in &active {
                        let delta = &factor * &s[p][c];
                        s[r][c] -= delta;
                    }
                    s[r][p] = Rat::zero();
                }
                for &c in &active {
                    s[p][c] = Rat::zero();
                }
                continue;
            }
            // All active diagonal entries are zero; look for an
            // off-diagonal entry. [[0,b],[b,0]] contributes (1,1).
            let mut pair = None;
            'outer: for (ai, &i) in active.iter().enumerate() {
                for &j in &active[ai + 1..] {
                    if !s[i][j].is_zero() {
                        pair = Some((i, j));
                        break 'outer;
                    }
                }
            }
            let Some((i, j)) = pair else {
                sig.zero += active.len();
                break;
            };
            let b = s[i][j].clone();
            active.retain(|&k| k != i && k != j);
            sig.positive += 1;
            sig.negative += 1;
            // Congruence clearing of the two pivot columns: replace
            // row r by r - (s[r][j]/b) i - (s[r][i]/b) j, applied
            // symmetrically. Diagonal terms pick up the cross product.
            let coeffs: Vec<(usize, Rat, Rat)> = active
                .iter()
                .map(|&r| (r, &s[r][i] / &b, &s[r][j] / &b))
                .collect();
            for &(r, ref alpha, ref beta) in &coeffs {
                for &(c, ref gamma, ref delta) in &coeffs {
                    // (r - beta*i - alpha*j) . (c - delta*i - gamma*j)
                    let mut val = s[r][c].clone();
                    val -= beta * &s[i][c];
                    val -= alpha * &s[j][c];
                    val -= delta * &s[r][i];
                    val -= gamma * &s[r][j];
                    val += beta * delta * &s[i][i];
                    val += (beta * gamma + alpha * delta) * &b;
                    val += alpha * gamma * &s[j][j];
                    s[r][c] = val;
                }
            }
            for &(r, ..) in &coeffs {
                s[r][i] = Rat::zero();
                s[r][j] = Rat::zero();
                s[i][r] = Rat::zero();
                s[j][r] = Rat::zero();
            }
        }
        Ok(sig)
    }

    /// Basis of the right nullspace.
    pub fn nullspace(&self) -> Vec<RatVec> {
        let (rows, cols) = (self.rows, self.cols);
        let mut m: Vec<RatVec> = self.row_iter().map(<[Rat]>::to_vec).collect();
        let mut pivot_cols = Vec::new();
        let mut rank = 0;
        for col in 0..cols {
            let Some(pr) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, pr);
            let inv = m[rank][col].clone();
            for c in col..cols {
                let v = &m[rank][c] / &inv;
                m[rank][c] = v;
            }
            for r in 0..rows {
                if r != rank && !m[r][col].is_zero() {
                    let factor = m[r][col].clone();
                    for c in col..cols {
                        let delta = &factor * &m[rank][c];
                        m[r][c] -= delta;
                    }
                }
            }
            pivot_cols.push(col);
            rank += 1;
            if rank == rows {
                break;
            }
        }
        let free_cols: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
        free_cols
            .into_iter()
            .map(|fc| {
                let mut v = vec![Rat::zero(); cols];
                v[fc] = Rat::one();
                for (r, &pc) in pivot_cols.iter().enumerate() {
                    v[pc] = -m[r][fc].clone();
                }
                v
            })
            .collect()
    }

    /// Solves `self * x = rhs` for square nonsingular `self`.
    /// Returns `None` when the matrix is singular.
    pub fn solve(&self, rhs: &[Rat]) -> Option<RatVec> {
        assert_eq!(self.rows, self.cols, "solve needs a square matrix");
        assert_eq!(self.rows, rhs.len(), "dimension mismatch");
        let n = self.rows;
        let mut m: Vec<RatVec> = (0..n)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.push(rhs[r].clone());
                row
            })
            .collect();
        for col in 0..n {
            let pr = (col..n).find(|&r| !m[r][col].is_zero())?;
            m.swap(col, pr);
            let inv = m[col][col].clone();
            for c in col..=n {
                let v = &m[col][c] / &inv;
                m[col][c] = v;
            }
            for r in 0..n {
                if r != col && !m[r][col].is_zero() {
                    let factor = m[r][col].clone();
                    for c in col..=n {
                        let delta = &factor * &m[col][c];
                        m[r][c] -= delta;
                    }
                }
            }
        }
        Some(m.into_iter().map(|row| row[n].clone()).collect())
    }
}

fn integer_row(row: &[Rat]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for x in row {
        lcm = lcm.lcm(x.denom());
    }
    row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
}
