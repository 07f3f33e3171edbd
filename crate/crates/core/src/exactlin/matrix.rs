use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

use super::scalar::{Ring, Scalar};

/// A column vector over one of the three rings.
pub type Vector = Vec<Scalar>;

/// Dense matrix with entries in a single ring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    /// Builds a matrix from row-major entries, promoting narrower scalars to
    /// `ring` and rejecting wider ones.
    pub fn new(ring: Ring, rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        let data = entries
            .into_iter()
            .map(|s| {
                if s.ring() > ring {
                    Err(Error::TagMismatch {
                        expected: ring,
                        found: s.ring(),
                    })
                } else {
                    s.into_ring(ring)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix {
            ring,
            rows,
            cols,
            data,
        })
    }

    pub fn from_rows(ring: Ring, rows: &[Vec<Scalar>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Self::new(ring, rows.len(), cols, rows.concat())
    }

    /// Matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(ring: Ring, rows: usize, columns: &[Vector]) -> Result<Self> {
        let cols = columns.len();
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for c in columns {
                if c.len() != rows {
                    return Err(Error::DimensionMismatch {
                        expected: rows,
                        found: c.len(),
                    });
                }
                data.push(c[i].clone());
            }
        }
        Self::new(ring, rows, cols, data)
    }

    /// Integer matrix, convenient for tests and fixed gram matrices.
    pub fn from_ints(ring: Ring, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let data = rows
            .iter()
            .flat_map(|row| row.iter().map(|&x| Scalar::from_int(ring, x)))
            .collect();
        Matrix {
            ring,
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn from_fn(
        ring: Ring,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j).into_ring(ring).expect("entry outside matrix ring"));
            }
        }
        Matrix {
            ring,
            rows,
            cols,
            data,
        }
    }

    pub fn zeros(ring: Ring, rows: usize, cols: usize) -> Self {
        Matrix {
            ring,
            rows,
            cols,
            data: vec![Scalar::zero(ring); rows * cols],
        }
    }

    pub fn identity(ring: Ring, n: usize) -> Self {
        Self::from_fn(ring, n, n, |i, j| Scalar::from_int(ring, (i == j) as i64))
    }

    /// Matrix unit `E_ij` of size `n`.
    pub fn unit(ring: Ring, n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        m.set(i, j, Scalar::one(ring));
        m
    }

    pub fn diag(ring: Ring, entries: &[Scalar]) -> Self {
        let n = entries.len();
        Self::from_fn(ring, n, n, |i, j| {
            if i == j {
                entries[i].clone()
            } else {
                Scalar::zero(ring)
            }
        })
    }

    pub fn block_diag(ring: Ring, blocks: &[Matrix]) -> Self {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(ring, r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    /// Sets an entry, promoting it to the matrix ring. Panics when the value
    /// lies outside the ring.
    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v.into_ring(self.ring).expect("entry outside matrix ring");
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vector {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    /// Promotes to a wider ring (or demotes when every entry fits).
    pub fn with_ring(&self, ring: Ring) -> Result<Self> {
        let data = self
            .data
            .iter()
            .map(|s| s.with_ring(ring))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix {
            ring,
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Self {
        let data = self
            .data
            .iter()
            .map(|s| f(s).into_ring(self.ring).expect("map left the ring"))
            .collect();
        Matrix {
            ring: self.ring,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.ring, self.cols, self.rows, |i, j| {
            self.get(j, i).clone()
        })
    }

    /// Entrywise conjugation.
    pub fn conj(&self) -> Self {
        self.map(Scalar::conj)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.ring, self.cols, self.rows, |i, j| {
            self.get(j, i).conj()
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).fold(Scalar::zero(self.ring), |acc, i| acc + self.get(i, i))
    }

    /// `s · self`.
    pub fn scale_left(&self, s: &Scalar) -> Self {
        let ring = self.ring.max(s.ring());
        let data = self.data.iter().map(|x| s * x).collect();
        Matrix {
            ring,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// `self · s`.
    pub fn scale_right(&self, s: &Scalar) -> Self {
        let ring = self.ring.max(s.ring());
        let data = self.data.iter().map(|x| x * s).collect();
        Matrix {
            ring,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.cols, "matrix-vector shape mismatch");
        let ring = v.iter().fold(self.ring, |r, x| r.max(x.ring()));
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero(ring);
                for (j, vj) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !vj.is_zero() {
                        acc = acc + a * vj;
                    }
                }
                acc
            })
            .collect()
    }

    /// Lie bracket `xy - yx`.
    pub fn bracket(&self, other: &Matrix) -> Matrix {
        &(self * other) - &(other * self)
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.to_rows();
        row_reduce(&mut rows, self.cols).len()
    }

    /// Two-sided inverse, if any.
    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug: Vec<Vector> = (0..n)
            .map(|i| {
                let mut r = self.row(i);
                r.extend((0..n).map(|j| Scalar::from_int(self.ring, (i == j) as i64)));
                r
            })
            .collect();
        let piv = row_reduce_upto(&mut aug, n);
        if piv.len() < n {
            return None;
        }
        let data = aug
            .into_iter()
            .take(n)
            .flat_map(|r| r.into_iter().skip(n))
            .collect();
        Some(Matrix {
            ring: self.ring,
            rows: n,
            cols: n,
            data,
        })
    }

    /// Basis of `{ y : self · y = 0 }`, scalars acting on the right.
    pub fn right_kernel(&self) -> Vec<Vector> {
        let mut rows = self.to_rows();
        kernel_of_rows(&mut rows, self.cols, self.ring)
    }
}

/// Brings `rows` into reduced row echelon form using left scalar
/// multiplication and returns the pivot columns. Zero rows are dropped.
pub(crate) fn row_reduce(rows: &mut Vec<Vector>, ncols: usize) -> Vec<usize> {
    row_reduce_upto(rows, ncols)
}

/// Same as [`row_reduce`] but only pivots in columns `< pivot_limit`.
fn row_reduce_upto(rows: &mut Vec<Vector>, pivot_limit: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_limit {
        let Some(k) = (r..rows.len()).find(|&k| !rows[k][c].is_zero()) else {
            continue;
        };
        rows.swap(r, k);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        if !inv.is_one() {
            rows[r] = rows[r].iter().map(|x| &inv * x).collect();
        }
        for k in 0..rows.len() {
            if k != r && !rows[k][c].is_zero() {
                let f = rows[k][c].clone();
                let (pivot_row, target) = if k < r {
                    let (a, b) = rows.split_at_mut(r);
                    (&b[0], &mut a[k])
                } else {
                    let (a, b) = rows.split_at_mut(k);
                    (&a[r], &mut b[0])
                };
                for (t, p) in target.iter_mut().zip(pivot_row.iter()) {
                    if !p.is_zero() {
                        *t = &*t - &(&f * p);
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.retain(|row| row.iter().any(|x| !x.is_zero()));
    pivots
}

/// Right kernel of a system given by rows of left coefficients.
pub(crate) fn kernel_of_rows(rows: &mut Vec<Vector>, ncols: usize, ring: Ring) -> Vec<Vector> {
    let pivots = row_reduce(rows, ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut y = vec![Scalar::zero(ring); ncols];
            y[f] = Scalar::one(ring);
            for (i, &p) in pivots.iter().enumerate() {
                y[p] = -&rows[i][f];
            }
            y
        })
        .collect()
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "matrix product shape mismatch");
        let ring = self.ring.max(o.ring);
        let mut data = vec![Scalar::zero(ring); self.rows * o.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let slot = &mut data[i * o.cols + j];
                        *slot = &*slot + &(a * b);
                    }
                }
            }
        }
        Matrix {
            ring,
            rows: self.rows,
            cols: o.cols,
            data,
        }
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, o: &Matrix) -> Matrix {
        assert_eq!(
            (self.rows, self.cols),
            (o.rows, o.cols),
            "matrix sum shape mismatch"
        );
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect();
        Matrix {
            ring: self.ring.max(o.ring),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, o: &Matrix) -> Matrix {
        assert_eq!(
            (self.rows, self.cols),
            (o.rows, o.cols),
            "matrix difference shape mismatch"
        );
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect();
        Matrix {
            ring: self.ring.max(o.ring),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.map(|x| -x)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix<{}> {}x{}", self.ring, self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quaternionic_inverse_is_two_sided() {
        let a = Matrix::new(
            Ring::Quat,
            2,
            2,
            vec![
                Scalar::quat(1, 1, 0, 0),
                Scalar::j(),
                Scalar::k(),
                Scalar::quat(2, 0, 0, 1),
            ],
        )
        .unwrap();
        let b = a.inverse().unwrap();
        assert_eq!(&a * &b, Matrix::identity(Ring::Quat, 2));
        assert_eq!(&b * &a, Matrix::identity(Ring::Quat, 2));
    }

    #[test]
    fn singular_matrix_has_kernel() {
        let a = Matrix::from_ints(Ring::Rat, &[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(a.rank(), 1);
        assert!(a.inverse().is_none());
        let k = a.right_kernel();
        assert_eq!(k.len(), 2);
        for v in k {
            assert!(a.mul_vec(&v).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn quaternionic_kernel_respects_right_scaling() {
        // row (1, i) over H: kernel spanned by (-i, 1), and (-i,1)·j is still a kernel vector
        let a = Matrix::new(
            Ring::Quat,
            1,
            2,
            vec![Scalar::one(Ring::Quat), Scalar::i_quat()],
        )
        .unwrap();
        let k = a.right_kernel();
        assert_eq!(k.len(), 1);
        let scaled: Vector = k[0].iter().map(|x| x * &Scalar::j()).collect();
        assert!(a.mul_vec(&scaled).iter().all(Scalar::is_zero));
    }

    #[test]
    fn wider_entries_are_rejected() {
        let err = Matrix::new(Ring::Rat, 1, 1, vec![Scalar::i()]).unwrap_err();
        assert_eq!(
            err,
            Error::TagMismatch {
                expected: Ring::Rat,
                found: Ring::Gauss
            }
        );
    }
}
