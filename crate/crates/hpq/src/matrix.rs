//! Dense exact matrices over a [`Scalar`] field, with fraction-free
//! (Bareiss-style) elimination: every row update divides by the previous
//! pivot, which is exact over an integral domain and keeps entry growth
//! under control. Pivoting is deterministic: the first row with a nonzero
//! entry, scanning columns left to right.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gauss::GaussRational;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix<T> {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Matrix<T> {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn matmul(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let mut out: Matrix<T> = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let mut acc = out.get(i, j).clone();
                    acc.add_assign_mul(a, other.get(k, j));
                    out.set(i, j, acc);
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols, "matvec shape mismatch");
        let mut out = vec![T::zero(); self.rows];
        for i in 0..self.rows {
            let row = self.row(i);
            let mut acc = T::zero();
            for (a, x) in row.iter().zip(v) {
                if !a.is_zero() && !x.is_zero() {
                    acc.add_assign_mul(a, x);
                }
            }
            out[i] = acc;
        }
        out
    }

    /// Exact check `U U* = I`.
    pub fn is_unitary(&self) -> bool {
        self.rows == self.cols && self.matmul(&self.adjoint()) == Matrix::identity(self.rows)
    }

    pub fn is_hermitian(&self) -> bool {
        self.rows == self.cols && *self == self.adjoint()
    }

    /// Fraction-free forward elimination in place. Returns the pivot columns
    /// (their count is the rank).
    fn bareiss_forward(&mut self) -> Vec<usize> {
        let mut pivot_cols = Vec::new();
        let mut prev = T::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.data.swap(r * self.cols + j, pr * self.cols + j);
                }
            }
            let pivot = self.get(r, c).clone();
            for i in r + 1..self.rows {
                let lead = self.get(i, c).clone();
                for j in c..self.cols {
                    let v = if lead.is_zero() {
                        T::mul_ref(&pivot, self.get(i, j))
                    } else {
                        T::mul_ref(&pivot, self.get(i, j))
                            - T::mul_ref(&lead, self.get(r, j))
                    };
                    self.set(i, j, T::div_ref(&v, &prev));
                }
                self.set(i, c, T::zero());
            }
            prev = pivot;
            pivot_cols.push(c);
            r += 1;
        }
        pivot_cols
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.bareiss_forward().len()
    }

    /// Exact basis of the nullspace. Each basis vector has a 1 in its free
    /// column; `M v = 0` holds exactly for every returned vector.
    pub fn kernel(&self) -> Vec<Vec<T>> {
        let mut m = self.clone();
        let pivot_cols = m.bareiss_forward();
        let rank = pivot_cols.len();
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &c in &pivot_cols {
                v[c] = true;
            }
            v
        };
        let mut basis = Vec::with_capacity(self.cols - rank);
        for fc in (0..self.cols).filter(|j| !is_pivot[*j]) {
            let mut v = vec![T::zero(); self.cols];
            v[fc] = T::one();
            // Back-substitute the pivot variables from the bottom up.
            for i in (0..rank).rev() {
                let pc = pivot_cols[i];
                let mut acc = T::zero();
                for j in pc + 1..self.cols {
                    if !v[j].is_zero() && !m.get(i, j).is_zero() {
                        acc.add_assign_mul(m.get(i, j), &v[j]);
                    }
                }
                if !acc.is_zero() {
                    v[pc] = -T::div_ref(&acc, m.get(i, pc));
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Solves `A x = b` exactly, returning one solution (free variables set
    /// to zero) or an error if the system is inconsistent.
    pub fn solve(&self, b: &[T]) -> Result<Vec<T>> {
        assert_eq!(b.len(), self.rows, "solve shape mismatch");
        let mut aug = Matrix::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let pivot_cols = aug.bareiss_forward();
        // A pivot in the augmented column means no solution.
        if pivot_cols.last() == Some(&self.cols) {
            return Err(Error::InconsistentSystem);
        }
        let rank = pivot_cols.len();
        for i in rank..self.rows {
            if !aug.get(i, self.cols).is_zero() {
                return Err(Error::InconsistentSystem);
            }
        }
        let mut x = vec![T::zero(); self.cols];
        for i in (0..rank).rev() {
            let pc = pivot_cols[i];
            let mut acc = aug.get(i, self.cols).clone();
            for j in pc + 1..self.cols {
                if !x[j].is_zero() && !aug.get(i, j).is_zero() {
                    acc.sub_assign_mul(aug.get(i, j), &x[j]);
                }
            }
            x[pc] = T::div_ref(&acc, aug.get(i, pc));
        }
        Ok(x)
    }

    /// Exact inverse via Gauss-Jordan, or an error if singular.
    pub fn inverse(&self) -> Result<Matrix<T>> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !a.get(i, c).is_zero()) else {
                return Err(Error::SingularMatrix);
            };
            if pr != c {
                for j in 0..n {
                    a.data.swap(c * n + j, pr * n + j);
                    inv.data.swap(c * n + j, pr * n + j);
                }
            }
            let pivot = a.get(c, c).clone();
            for j in 0..n {
                a.set(c, j, T::div_ref(a.get(c, j), &pivot));
                inv.set(c, j, T::div_ref(inv.get(c, j), &pivot));
            }
            for i in 0..n {
                if i == c || a.get(i, c).is_zero() {
                    continue;
                }
                let lead = a.get(i, c).clone();
                for j in 0..n {
                    let av = a.get(c, j).clone();
                    let iv = inv.get(c, j).clone();
                    let mut x = a.get(i, j).clone();
                    x.sub_assign_mul(&lead, &av);
                    a.set(i, j, x);
                    let mut y = inv.get(i, j).clone();
                    y.sub_assign_mul(&lead, &iv);
                    inv.set(i, j, y);
                }
            }
        }
        Ok(inv)
    }
}

impl Matrix<GaussRational> {
    /// Exact positive-definiteness test for a Hermitian matrix: the Bareiss
    /// pivots without row swaps are the leading principal minors, all of
    /// which must be real and positive.
    pub fn is_hermitian_positive_definite(&self) -> bool {
        if !self.is_hermitian() {
            return false;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut prev = GaussRational::one();
        for k in 0..n {
            let pivot = a.get(k, k).clone();
            if !pivot.is_real() || pivot.re <= crate::Rational::zero() {
                return false;
            }
            for i in k + 1..n {
                let lead = a.get(i, k).clone();
                for j in k..n {
                    let v = &(&pivot * a.get(i, j)) - &(&lead * a.get(k, j));
                    a.set(i, j, &v / &prev);
                }
            }
            prev = pivot;
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use num_bigint::BigInt;

    fn rat(v: i64) -> Rational {
        Rational::from(BigInt::from(v))
    }

    fn rmat(rows: Vec<Vec<i64>>) -> Matrix<Rational> {
        Matrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(rat).collect())
                .collect(),
        )
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        let m: Matrix<Rational> = Matrix::identity(3);
        assert!(m.kernel().is_empty());
    }

    #[test]
    fn kernel_of_zero_matrix_is_full() {
        let m: Matrix<Rational> = Matrix::zeros(2, 2);
        assert_eq!(m.kernel().len(), 2);
    }

    #[test]
    fn kernel_rank_one_row() {
        let m = rmat(vec![vec![1, 1]]);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        // span{(1, -1)}: our convention puts 1 in the free column.
        assert_eq!(k[0], vec![rat(-1), rat(1)]);
        assert!(m.matvec(&k[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn kernel_vectors_annihilated_exactly() {
        let m = rmat(vec![vec![2, 4, -2, 6], vec![1, 2, 3, 1], vec![3, 6, 1, 7]]);
        let k = m.kernel();
        assert_eq!(m.rank() + k.len(), m.cols());
        for v in &k {
            assert!(m.matvec(v).iter().all(|x| x.is_zero()));
        }
        // Returned vectors are independent: each has a 1 in a distinct free
        // column where every other vector has 0.
        assert_eq!(k.len(), 2);
    }

    #[test]
    fn solve_and_inconsistency() {
        let m = rmat(vec![vec![1, 2], vec![3, 4]]);
        let x = m.solve(&[rat(5), rat(11)]).unwrap();
        assert_eq!(x, vec![rat(1), rat(2)]);
        let s = rmat(vec![vec![1, 1], vec![2, 2]]);
        assert!(s.solve(&[rat(1), rat(3)]).is_err());
        assert_eq!(s.solve(&[rat(1), rat(2)]).unwrap(), vec![rat(1), rat(0)]);
    }

    #[test]
    fn inverse_round_trip() {
        let m = rmat(vec![vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.matmul(&inv), Matrix::identity(3));
        assert!(rmat(vec![vec![1, 2], vec![2, 4]]).inverse().is_err());
    }

    #[test]
    fn unitary_check() {
        use crate::gauss::GaussRational;
        let u = Matrix::from_rows(vec![
            vec![GaussRational::from_ratio(3, 5), GaussRational::from_ratio(4, 5)],
            vec![GaussRational::from_ratio(-4, 5), GaussRational::from_ratio(3, 5)],
        ]);
        assert!(u.is_unitary());
        let not_u = Matrix::from_rows(vec![
            vec![GaussRational::from_int(1), GaussRational::from_int(1)],
            vec![GaussRational::from_int(0), GaussRational::from_int(1)],
        ]);
        assert!(!not_u.is_unitary());
    }

    #[test]
    fn hermitian_positive_definite() {
        use crate::gauss::GaussRational;
        let g = Matrix::from_rows(vec![
            vec![GaussRational::from_int(2), GaussRational::from_int(1)],
            vec![GaussRational::from_int(1), GaussRational::from_int(2)],
        ]);
        assert!(g.is_hermitian_positive_definite());
        let bad = Matrix::from_rows(vec![
            vec![GaussRational::from_int(1), GaussRational::from_int(3)],
            vec![GaussRational::from_int(3), GaussRational::from_int(1)],
        ]);
        assert!(!bad.is_hermitian_positive_definite());
    }
}
