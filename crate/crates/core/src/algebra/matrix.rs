use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::rational::{format_rational, Rational};

/// Dense row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, Error> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    left: (r, c),
                    right: (r, row.len()),
                });
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self, Error> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&v| Rational::from_integer(v.into()))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, Error> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &Matrix) -> Result<Matrix, Error> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch {
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Submatrix on the given (ordered) rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| format_rational(self.get(i, j)))
                .collect();
            writeln!(f, "{}", row.join("\t"))?;
        }
        Ok(())
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination.
///
/// Each row is first scaled to integers; the elimination then runs over
/// `BigInt` where every Bareiss division is exact.
pub fn determinant(m: &Matrix) -> Result<Rational, Error> {
    let n = m.rows();
    if n != m.cols() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for i in 0..n {
        let lcm = (0..n).fold(BigInt::one(), |acc, j| acc.lcm(m.get(i, j).denom()));
        scale *= &lcm;
        a.push(
            (0..n)
                .map(|j| {
                    let v = m.get(i, j);
                    v.numer() * (&lcm / v.denom())
                })
                .collect(),
        );
    }

    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return Ok(Rational::zero());
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let det = if n == 0 { BigInt::one() } else { prev };
    Ok(Rational::new(sign * det, scale))
}

/// Square skew-symmetric rational matrix.
///
/// Only the strict upper triangle is stored; the lower triangle and the zero
/// diagonal are implied, so the skew invariant cannot be broken.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SkewMatrix {
    n: usize,
    upper: Vec<Rational>,
}

impl SkewMatrix {
    pub fn zeros(n: usize) -> Self {
        SkewMatrix {
            n,
            upper: vec![Rational::zero(); n * n.saturating_sub(1) / 2],
        }
    }

    /// Matrix whose entries above the diagonal are all `v`.
    pub fn constant_upper(n: usize, v: Rational) -> Self {
        SkewMatrix {
            n,
            upper: vec![v; n * n.saturating_sub(1) / 2],
        }
    }

    /// Builds from the strict upper triangle given row by row.
    pub fn from_upper<F: FnMut(usize, usize) -> Rational>(n: usize, mut f: F) -> Self {
        let mut m = SkewMatrix::zeros(n);
        for i in 0..n {
            for j in i + 1..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn from_matrix(m: &Matrix) -> Result<Self, Error> {
        if m.rows() != m.cols() {
            return Err(Error::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        let n = m.rows();
        for i in 0..n {
            for j in i..n {
                if *m.get(i, j) != -m.get(j, i) {
                    return Err(Error::NotSkewSymmetric { row: i, col: j });
                }
            }
        }
        Ok(SkewMatrix::from_upper(n, |i, j| m.get(i, j).clone()))
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self, Error> {
        SkewMatrix::from_matrix(&Matrix::from_i64(rows)?)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    fn slot(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.n);
        i * (2 * self.n - i - 1) / 2 + (j - i - 1)
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Less => self.upper[self.slot(i, j)].clone(),
            Greater => -&self.upper[self.slot(j, i)],
            Equal => Rational::zero(),
        }
    }

    /// Borrow of the stored entry for `i < j`.
    pub fn upper(&self, i: usize, j: usize) -> &Rational {
        &self.upper[self.slot(i, j)]
    }

    /// Sets entry `(i, j)` and, implicitly, `(j, i) = -v`.
    ///
    /// Panics if `i == j` and `v` is nonzero.
    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Less => {
                let s = self.slot(i, j);
                self.upper[s] = v;
            }
            Greater => {
                let s = self.slot(j, i);
                self.upper[s] = -v;
            }
            Equal => assert!(v.is_zero(), "diagonal of a skew matrix must be zero"),
        }
    }

    pub fn to_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(self.n, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.set(i, j, self.get(i, j));
            }
        }
        m
    }

    /// Principal submatrix on the given increasing indices.
    pub fn principal(&self, idx: &[usize]) -> SkewMatrix {
        SkewMatrix::from_upper(idx.len(), |a, b| self.get(idx[a], idx[b]))
    }

    /// Block-diagonal stack, first block in the top-left corner.
    pub fn block_diagonal(blocks: &[SkewMatrix]) -> SkewMatrix {
        let n = blocks.iter().map(SkewMatrix::dim).sum();
        let mut out = SkewMatrix::zeros(n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.n {
                for j in i + 1..b.n {
                    out.set(off + i, off + j, b.upper(i, j).clone());
                }
            }
            off += b.n;
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> SkewMatrix {
        SkewMatrix {
            n: self.n,
            upper: self.upper.iter().map(|v| v * c).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.upper.iter().all(Zero::is_zero)
    }
}

impl Add for &SkewMatrix {
    type Output = SkewMatrix;

    /// Panics on a dimension mismatch; use [`SkewMatrix::try_add`] for a checked sum.
    fn add(self, rhs: &SkewMatrix) -> SkewMatrix {
        self.try_add(rhs).expect("skew matrix dimensions differ")
    }
}

impl SkewMatrix {
    pub fn try_add(&self, rhs: &SkewMatrix) -> Result<SkewMatrix, Error> {
        if self.n != rhs.n {
            return Err(Error::DimensionMismatch {
                left: (self.n, self.n),
                right: (rhs.n, rhs.n),
            });
        }
        Ok(SkewMatrix {
            n: self.n,
            upper: self
                .upper
                .iter()
                .zip(&rhs.upper)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }
}

impl fmt::Display for SkewMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_matrix().fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn determinant_small() {
        assert_eq!(determinant(&Matrix::identity(4)).unwrap(), int(1));
        let m = Matrix::from_i64(&[&[2, 1], &[1, 2]]).unwrap();
        assert_eq!(determinant(&m).unwrap(), int(3));
        assert_eq!(determinant(&Matrix::zeros(0, 0)).unwrap(), int(1));
    }

    #[test]
    fn determinant_needs_pivot_and_fractions() {
        let m = Matrix::from_i64(&[&[0, 1, 2], &[3, 0, 4], &[5, 6, 0]]).unwrap();
        // 0*(0-24) - 1*(0-20) + 2*(18-0)
        assert_eq!(determinant(&m).unwrap(), int(56));
        let h = Matrix::from_rows(vec![
            vec![frac(1, 1), frac(1, 2)],
            vec![frac(1, 2), frac(1, 3)],
        ])
        .unwrap();
        assert_eq!(determinant(&h).unwrap(), frac(1, 12));
        let singular = Matrix::from_i64(&[&[1, 2], &[2, 4]]).unwrap();
        assert_eq!(determinant(&singular).unwrap(), int(0));
    }

    #[test]
    fn determinant_rejects_non_square() {
        assert!(matches!(
            determinant(&Matrix::zeros(2, 3)),
            Err(Error::NotSquare { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn skew_storage_round_trips() {
        let z = SkewMatrix::from_i64(&[&[0, 1, -2], &[-1, 0, 3], &[2, -3, 0]]).unwrap();
        assert_eq!(z.get(0, 2), int(-2));
        assert_eq!(z.get(2, 0), int(2));
        assert_eq!(z.get(1, 1), int(0));
        assert_eq!(SkewMatrix::from_matrix(&z.to_matrix()).unwrap(), z);
        assert!(SkewMatrix::from_i64(&[&[0, 1], &[1, 0]]).is_err());
        assert!(SkewMatrix::from_i64(&[&[1, 0], &[0, 0]]).is_err());
    }

    #[test]
    fn block_diagonal_layout() {
        let a = SkewMatrix::from_i64(&[&[0, 5], &[-5, 0]]).unwrap();
        let b = SkewMatrix::constant_upper(3, int(7));
        let s = SkewMatrix::block_diagonal(&[a, b]);
        assert_eq!(s.dim(), 5);
        assert_eq!(s.get(0, 1), int(5));
        assert_eq!(s.get(1, 2), int(0));
        assert_eq!(s.get(2, 4), int(7));
    }

    #[test]
    fn display_is_tab_separated() {
        let z = SkewMatrix::from_upper(2, |_, _| frac(-1, 3));
        assert_eq!(z.to_string(), "0\t-1/3\n1/3\t0\n");
    }
}
