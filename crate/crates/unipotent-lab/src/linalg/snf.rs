use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Dense matrix with arbitrary-precision integer entries, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl std::fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> i64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = BigInt::from(f(i, j));
            }
        }
        m
    }

    pub fn from_columns(dim: usize, cols: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(dim, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), dim);
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
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

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows);
        let mut m = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let p = &self[(i, k)] * &rhs[(k, j)];
                    m[(i, j)] += p;
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }
}

/// Invariant factors d1 | d2 | ... with trailing zeros for the free corank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantFactors {
    pub factors: Vec<BigInt>,
}

impl InvariantFactors {
    /// Number of nonzero factors.
    pub fn rank(&self) -> usize {
        self.factors.iter().filter(|d| !d.is_zero()).count()
    }

    /// Factors strictly greater than 1 (the torsion certificate).
    pub fn torsion(&self) -> Vec<BigInt> {
        self.factors.iter().filter(|d| !d.is_zero() && !d.is_one()).cloned().collect()
    }

    pub fn has_torsion(&self) -> bool {
        !self.torsion().is_empty()
    }

    /// Does some factor have the prime p as a divisor?
    pub fn has_p_torsion(&self, p: u64) -> bool {
        let p = BigInt::from(p);
        self.factors.iter().any(|d| !d.is_zero() && !d.is_one() && (d % &p).is_zero())
    }
}

pub struct SnfResult {
    pub factors: InvariantFactors,
    /// Row transform: u * m * v = diag(factors).
    pub u: Option<IntMatrix>,
    pub v: Option<IntMatrix>,
}

/// Smith normal form. Pivot selection: smallest nonzero absolute value, ties
/// broken by (row, col) index, so outputs are reproducible.
pub fn smith_normal_form(m: &IntMatrix, with_transforms: bool) -> SnfResult {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let n = rows.min(cols);
    let mut u = with_transforms.then(|| IntMatrix::identity(rows));
    let mut v = with_transforms.then(|| IntMatrix::identity(cols));

    let mut t = 0;
    while t < n {
        // Smallest nonzero |entry| in the trailing submatrix.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[(i, j)].is_zero() {
                    let better = match pivot {
                        None => true,
                        Some((pi, pj)) => {
                            let cur = a[(pi, pj)].abs();
                            let cand = a[(i, j)].abs();
                            cand < cur
                        }
                    };
                    if better {
                        pivot = Some((i, j));
                    }
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        swap_rows(&mut a, u.as_mut(), t, pi);
        swap_cols(&mut a, v.as_mut(), t, pj);

        // Reduce row and column by the pivot until both are cleared.
        loop {
            let mut done = true;
            for i in (t + 1)..rows {
                if !a[(i, t)].is_zero() {
                    let q = div_round(&a[(i, t)], &a[(t, t)]);
                    row_sub(&mut a, u.as_mut(), i, t, &q);
                    if !a[(i, t)].is_zero() {
                        swap_rows(&mut a, u.as_mut(), t, i);
                        done = false;
                    }
                }
            }
            for j in (t + 1)..cols {
                if !a[(t, j)].is_zero() {
                    let q = div_round(&a[(t, j)], &a[(t, t)]);
                    col_sub(&mut a, v.as_mut(), j, t, &q);
                    if !a[(t, j)].is_zero() {
                        swap_cols(&mut a, v.as_mut(), t, j);
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }

        // Divisibility fix: if some trailing entry is not divisible by the
        // pivot, fold its row into row t and redo this step.
        let mut fixed = true;
        'outer: for i in (t + 1)..rows {
            for j in (t + 1)..cols {
                if !(&a[(i, j)] % &a[(t, t)]).is_zero() {
                    row_add(&mut a, u.as_mut(), t, i);
                    fixed = false;
                    break 'outer;
                }
            }
        }
        if fixed {
            if a[(t, t)].is_negative() {
                negate_row(&mut a, u.as_mut(), t);
            }
            t += 1;
        }
    }

    let mut factors = Vec::with_capacity(n);
    for i in 0..n {
        factors.push(a[(i, i)].clone());
    }
    SnfResult { factors: InvariantFactors { factors }, u, v }
}

fn swap_rows(a: &mut IntMatrix, u: Option<&mut IntMatrix>, r1: usize, r2: usize) {
    if r1 == r2 {
        return;
    }
    for j in 0..a.cols {
        let tmp = a[(r1, j)].clone();
        a[(r1, j)] = a[(r2, j)].clone();
        a[(r2, j)] = tmp;
    }
    if let Some(u) = u {
        for j in 0..u.cols {
            let tmp = u[(r1, j)].clone();
            u[(r1, j)] = u[(r2, j)].clone();
            u[(r2, j)] = tmp;
        }
    }
}

fn swap_cols(a: &mut IntMatrix, v: Option<&mut IntMatrix>, c1: usize, c2: usize) {
    if c1 == c2 {
        return;
    }
    for i in 0..a.rows {
        let tmp = a[(i, c1)].clone();
        a[(i, c1)] = a[(i, c2)].clone();
        a[(i, c2)] = tmp;
    }
    if let Some(v) = v {
        for i in 0..v.rows {
            let tmp = v[(i, c1)].clone();
            v[(i, c1)] = v[(i, c2)].clone();
            v[(i, c2)] = tmp;
        }
    }
}

/// row[i] -= q * row[t]
fn row_sub(a: &mut IntMatrix, u: Option<&mut IntMatrix>, i: usize, t: usize, q: &BigInt) {
    for j in 0..a.cols {
        let d = q * &a[(t, j)];
        a[(i, j)] -= d;
    }
    if let Some(u) = u {
        for j in 0..u.cols {
            let d = q * &u[(t, j)];
            u[(i, j)] -= d;
        }
    }
}

/// col[j] -= q * col[t]
fn col_sub(a: &mut IntMatrix, v: Option<&mut IntMatrix>, j: usize, t: usize, q: &BigInt) {
    for i in 0..a.rows {
        let d = q * &a[(i, t)];
        a[(i, j)] -= d;
    }
    if let Some(v) = v {
        for i in 0..v.rows {
            let d = q * &v[(i, t)];
            v[(i, j)] -= d;
        }
    }
}

fn row_add(a: &mut IntMatrix, u: Option<&mut IntMatrix>, t: usize, i: usize) {
    for j in 0..a.cols {
        let d = a[(i, j)].clone();
        a[(t, j)] += d;
    }
    if let Some(u) = u {
        for j in 0..u.cols {
            let d = u[(i, j)].clone();
            u[(t, j)] += d;
        }
    }
}

fn negate_row(a: &mut IntMatrix, u: Option<&mut IntMatrix>, t: usize) {
    for j in 0..a.cols {
        let d = -a[(t, j)].clone();
        a[(t, j)] = d;
    }
    if let Some(u) = u {
        for j in 0..u.cols {
            let d = -u[(t, j)].clone();
            u[(t, j)] = d;
        }
    }
}

/// Round-to-nearest integer quotient (keeps remainders small).
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    // Floor division leaves a remainder with the sign of b, so moving the
    // quotient up by one always shrinks it below |b|/2 in absolute value.
    let (q, r) = num_integer::Integer::div_mod_floor(a, b);
    if &(r.abs() * &two) > &b.abs() {
        q + 1
    } else {
        q
    }
}

/// Invariant factors of span_Z(a) / span_Z(b), where the column span of `b`
/// must lie inside the column span of `a` over Z.
///
/// The quotient is computed by expressing the columns of `b` in a Z-basis of
/// the column lattice of `a` (via SNF transforms) and taking the cokernel of
/// the resulting coordinate matrix. Trailing zeros mark the free part.
pub fn column_space_quotient(a: &IntMatrix, b: &IntMatrix) -> Option<InvariantFactors> {
    assert_eq!(a.rows(), b.rows());
    let snf = smith_normal_form(a, true);
    let u = snf.u.as_ref().unwrap();
    let rank = snf.factors.rank();
    // Coordinates of each b-column in the lattice basis u^{-1} (d_i e_i).
    let mut coord_cols: Vec<Vec<BigInt>> = Vec::with_capacity(b.cols());
    for j in 0..b.cols() {
        let col: Vec<BigInt> = (0..b.rows()).map(|i| b[(i, j)].clone()).collect();
        let ub = u.mul_vec(&col);
        let mut coords = Vec::with_capacity(rank);
        for i in 0..ub.len() {
            if i < rank {
                let d = &snf.factors.factors[i];
                if !(&ub[i] % d).is_zero() {
                    return None; // b not inside the lattice of a
                }
                coords.push(&ub[i] / d);
            } else if !ub[i].is_zero() {
                return None;
            }
        }
        coord_cols.push(coords);
    }
    let c = IntMatrix::from_columns(rank, &coord_cols);
    let inner = smith_normal_form(&c, false);
    // coker(C) on Z^rank: invariant factors of C padded with zeros up to rank.
    let mut factors = inner.factors.factors;
    factors.retain(|d| !d.is_zero());
    while factors.len() < rank {
        factors.push(BigInt::zero());
    }
    Some(InvariantFactors { factors })
}
