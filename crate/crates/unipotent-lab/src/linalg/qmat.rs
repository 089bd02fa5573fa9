use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Dense matrix with exact rational entries, row-major storage.
#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl std::fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        QMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Columns are the given vectors.
    pub fn from_columns(dim: usize, cols: &[Vec<BigRational>]) -> Self {
        let mut m = Self::zeros(dim, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), dim, "column length mismatch");
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn from_int_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> i64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = BigRational::from_integer(BigInt::from(f(i, j)));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn column(&self, j: usize) -> Vec<BigRational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigRational>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn mul(&self, rhs: &QMatrix) -> Self {
        assert_eq!(self.cols, rhs.rows, "inner dimension mismatch");
        let mut m = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        let prod = a * b;
                        m[(i, j)] += prod;
                    }
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut s = BigRational::zero();
                for j in 0..self.cols {
                    if !v[j].is_zero() && !self[(i, j)].is_zero() {
                        s += &self[(i, j)] * &v[j];
                    }
                }
                s
            })
            .collect()
    }

    /// Horizontal concatenation [self | rhs].
    pub fn hstack(&self, rhs: &QMatrix) -> Self {
        assert_eq!(self.rows, rhs.rows);
        let mut m = Self::zeros(self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..rhs.cols {
                m[(i, self.cols + j)] = rhs[(i, j)].clone();
            }
        }
        m
    }

    /// Reduced row echelon form; returns (rref, pivot column indices).
    ///
    /// Pivot choice: first row with nonzero entry in the leftmost unfinished
    /// column, so results are deterministic.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row >= m.rows {
                break;
            }
            let mut pivot_row = None;
            for r in row..m.rows {
                if !m[(r, col)].is_zero() {
                    pivot_row = Some(r);
                    break;
                }
            }
            let Some(pr) = pivot_row else { continue };
            if pr != row {
                for j in 0..m.cols {
                    let tmp = m[(pr, j)].clone();
                    m[(pr, j)] = m[(row, j)].clone();
                    m[(row, j)] = tmp;
                }
            }
            let inv = m[(row, col)].recip();
            for j in col..m.cols {
                let v = &m[(row, j)] * &inv;
                m[(row, j)] = v;
            }
            for r in 0..m.rows {
                if r != row && !m[(r, col)].is_zero() {
                    let factor = m[(r, col)].clone();
                    for j in col..m.cols {
                        let v = &m[(row, j)] * &factor;
                        m[(r, j)] -= v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, one column per basis vector.
    ///
    /// Free variables are set to 1 in increasing column order, so the basis is
    /// deterministic.
    pub fn kernel_basis(&self) -> QMatrix {
        let (r, pivots) = self.rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut cols = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![BigRational::zero(); self.cols];
            v[f] = BigRational::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r[(i, f)].clone();
            }
            cols.push(v);
        }
        QMatrix::from_columns(self.cols, &cols)
    }

    /// Basis of the column space: the original pivot columns.
    pub fn image_basis(&self) -> QMatrix {
        let (_, pivots) = self.rref();
        let cols: Vec<Vec<BigRational>> = pivots.iter().map(|&j| self.column(j)).collect();
        QMatrix::from_columns(self.rows, &cols)
    }

    /// Canonical basis of the column space: nonzero rows of the rref of the
    /// transpose, transposed back. Two matrices span the same column space iff
    /// their canonical bases are equal.
    pub fn column_space_canonical(&self) -> QMatrix {
        let (r, pivots) = self.transpose().rref();
        let rows: Vec<Vec<BigRational>> =
            (0..pivots.len()).map(|i| (0..r.cols).map(|j| r[(i, j)].clone()).collect()).collect();
        QMatrix::from_rows(rows).transpose()
    }

    /// Solve self * x = b; None if inconsistent.
    pub fn solve(&self, b: &[BigRational]) -> Option<Vec<BigRational>> {
        assert_eq!(b.len(), self.rows);
        let bm = QMatrix::from_columns(self.rows, &[b.to_vec()]);
        let aug = self.hstack(&bm);
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![BigRational::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r[(i, self.cols)].clone();
        }
        Some(x)
    }

    /// Is the vector inside the column span?
    pub fn contains_vector(&self, v: &[BigRational]) -> bool {
        self.solve(v).is_some()
    }

    /// Does the column span of self contain the column span of sub?
    pub fn contains_subspace(&self, sub: &QMatrix) -> bool {
        (0..sub.cols()).all(|j| self.contains_vector(&sub.column(j)))
    }

    pub fn same_column_space(&self, other: &QMatrix) -> bool {
        self.rank() == other.rank() && self.contains_subspace(other)
    }

    /// Basis of the intersection of the column spans of self and other.
    pub fn intersect_columns(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.rows, other.rows);
        // [A | -B] kernel; the A-part coefficients give intersection vectors.
        let neg = {
            let mut m = other.clone();
            for v in &mut m.data {
                let n = -v.clone();
                *v = n;
            }
            m
        };
        let stacked = self.hstack(&neg);
        let ker = stacked.kernel_basis();
        let mut cols = Vec::new();
        for j in 0..ker.cols() {
            let coeffs: Vec<BigRational> = (0..self.cols).map(|i| ker[(i, j)].clone()).collect();
            cols.push(self.mul_vec_cols(&coeffs));
        }
        QMatrix::from_columns(self.rows, &cols).image_basis()
    }

    /// Linear combination of columns with the given coefficients.
    pub fn mul_vec_cols(&self, coeffs: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(coeffs.len(), self.cols);
        let mut out = vec![BigRational::zero(); self.rows];
        for (j, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for i in 0..self.rows {
                if !self[(i, j)].is_zero() {
                    out[i] += &self[(i, j)] * c;
                }
            }
        }
        out
    }

    /// Row-select: keep rows in [lo, hi).
    pub fn row_slice(&self, lo: usize, hi: usize) -> QMatrix {
        let mut m = QMatrix::zeros(hi - lo, self.cols);
        for i in lo..hi {
            for j in 0..self.cols {
                m[(i - lo, j)] = self[(i, j)].clone();
            }
        }
        m
    }

    /// Entries of all columns, cleared to integers column-by-column.
    pub fn to_integer_columns(&self) -> Vec<Vec<BigInt>> {
        use num_integer::Integer;
        (0..self.cols)
            .map(|j| {
                let mut lcm = BigInt::one();
                for i in 0..self.rows {
                    let d = self[(i, j)].denom().clone();
                    lcm = lcm.lcm(&d);
                }
                (0..self.rows)
                    .map(|i| {
                        let v = &self[(i, j)] * BigRational::from_integer(lcm.clone());
                        debug_assert!(v.denom().is_one());
                        v.numer().clone()
                    })
                    .collect()
            })
            .collect()
    }
}

/// rank + kernel + image of a rational matrix in one call.
pub fn rank_kernel_image(m: &QMatrix) -> (usize, QMatrix, QMatrix) {
    let kernel = m.kernel_basis();
    let image = m.image_basis();
    let rank = image.cols();
    debug_assert_eq!(rank + kernel.cols(), m.cols());
    (rank, kernel, image)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn identity_rank() {
        let m = QMatrix::identity(2);
        let (rank, ker, _) = rank_kernel_image(&m);
        assert_eq!(rank, 2);
        assert_eq!(ker.cols(), 0);
    }

    #[test]
    fn zero_matrix_kernel() {
        let m = QMatrix::zeros(3, 4);
        let (rank, ker, _) = rank_kernel_image(&m);
        assert_eq!(rank, 0);
        assert_eq!(ker.cols(), 4);
    }

    #[test]
    fn rank_one_kernel_matches_hand_elimination() {
        // [[1,2],[2,4]]: rank 1, kernel spanned by (2,-1) after hand elimination.
        let m = QMatrix::from_int_fn(2, 2, |i, j| [[1, 2], [2, 4]][i][j]);
        let (rank, ker, _) = rank_kernel_image(&m);
        assert_eq!(rank, 1);
        assert_eq!(ker.cols(), 1);
        // Kernel basis is a scalar multiple of (2,-1).
        let a = ker[(0, 0)].clone();
        let b = ker[(1, 0)].clone();
        assert_eq!(a * q(-1), b * q(2));
    }

    #[test]
    fn rank_transpose_duality() {
        let m = QMatrix::from_int_fn(3, 4, |i, j| (i as i64 * 7 + j as i64 * 3) % 5 - 2);
        assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn quotient_dims_examples() {
        use crate::linalg::quotient_dims;
        let ambient = QMatrix::identity(3);
        let sub = QMatrix::from_int_fn(3, 1, |i, _| if i == 0 { 1 } else { 2 });
        assert_eq!(quotient_dims(&ambient, &sub).unwrap(), 2);
        assert_eq!(quotient_dims(&ambient, &ambient).unwrap(), 0);
        // Non-contained sub is rejected.
        let small = QMatrix::from_int_fn(3, 1, |i, _| i as i64);
        let plane = QMatrix::from_int_fn(3, 2, |i, j| if i == j { 1 } else { 0 });
        assert!(quotient_dims(&plane, &small).is_err());
    }

    #[test]
    fn intersection_of_planes() {
        // span{e1,e2} ∩ span{e2,e3} = span{e2}
        let a = QMatrix::from_int_fn(3, 2, |i, j| if i == j { 1 } else { 0 });
        let b = QMatrix::from_int_fn(3, 2, |i, j| if i == j + 1 { 1 } else { 0 });
        let inter = a.intersect_columns(&b);
        assert_eq!(inter.cols(), 1);
        assert!(inter[(1, 0)] != q(0));
        assert!(inter[(0, 0)].is_zero() && inter[(2, 0)].is_zero());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = QMatrix::from_int_fn(2, 2, |i, j| [[1, 2], [2, 4]][i][j]);
        assert!(m.solve(&[q(1), q(2)]).is_some());
        assert!(m.solve(&[q(1), q(3)]).is_none());
    }
}
