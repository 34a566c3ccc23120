//! Exact integer matrices and Smith normal form.
//!
//! The decomposition uses only the three elementary operations (add an
//! integer multiple of a row/column, swap, scale by -1), applied to the left
//! and right factors as they are applied to the matrix, so
//! `left * input * right` equals the diagonal result and both factors are
//! unimodular by construction. Entries grow during elimination, hence
//! arbitrary-precision integers throughout.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Row-major integer matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> IntMat {
        IntMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> IntMat {
        let mut m = IntMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> IntMat {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().map(BigInt::from).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row_major(&self) -> &[BigInt] {
        &self.data
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = a * &other[(k, j)];
                    out[(i, j)] += add;
                }
            }
        }
        out
    }

    /// Delete one row and one column.
    pub fn minor(&self, row: usize, col: usize) -> IntMat {
        let mut out = IntMat::zeros(self.rows - 1, self.cols - 1);
        let mut oi = 0;
        for i in 0..self.rows {
            if i == row {
                continue;
            }
            let mut oj = 0;
            for j in 0..self.cols {
                if j == col {
                    continue;
                }
                out[(oi, oj)] = self[(i, j)].clone();
                oj += 1;
            }
            oi += 1;
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn add_row_multiple(&mut self, dst: usize, src: usize, t: &BigInt) {
        if t.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let add = t * &self[(src, j)];
            self[(dst, j)] += add;
        }
    }

    fn add_col_multiple(&mut self, dst: usize, src: usize, t: &BigInt) {
        if t.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let add = t * &self[(i, src)];
            self[(i, dst)] += add;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self[(i, j)].clone();
            self[(i, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        let c = self.cols;
        &mut self.data[i * c + j]
    }
}

/// `left * input * right = diag(diagonal)` with unimodular factors and the
/// divisibility chain along the diagonal.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub left: IntMat,
    pub right: IntMat,
    pub diagonal: Vec<BigInt>,
    pub rows: usize,
    pub cols: usize,
}

impl SmithDecomposition {
    pub fn diagonal_matrix(&self) -> IntMat {
        let mut d = IntMat::zeros(self.rows, self.cols);
        for (k, a) in self.diagonal.iter().enumerate() {
            d[(k, k)] = a.clone();
        }
        d
    }

    /// Number of diagonal entries exceeding one.
    pub fn entries_above_one(&self) -> usize {
        let one = BigInt::one();
        self.diagonal.iter().filter(|a| **a > one).count()
    }
}

/// Smith normal form with smallest-nonzero-pivot selection, row-then-column
/// position tie-break.
pub fn smith_normal_form(m: &IntMat) -> SmithDecomposition {
    let (rows, cols) = (m.rows, m.cols);
    let mut b = m.clone();
    let mut left = IntMat::identity(rows);
    let mut right = IntMat::identity(cols);
    let steps = rows.min(cols);

    let find_pivot = |b: &IntMat, k: usize| -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                if b[(i, j)].is_zero() {
                    continue;
                }
                match best {
                    None => best = Some((i, j)),
                    Some(p) => {
                        let cur = b[(i, j)].abs();
                        let old = b[p].abs();
                        if cur < old {
                            best = Some((i, j));
                        }
                    }
                }
            }
        }
        best
    };

    for k in 0..steps {
        loop {
            let Some((pi, pj)) = find_pivot(&b, k) else {
                // Remaining block is zero.
                break;
            };
            b.swap_rows(k, pi);
            left.swap_rows(k, pi);
            b.swap_cols(k, pj);
            right.swap_cols(k, pj);

            // Clear column k below the pivot.
            let mut dirty = false;
            for i in k + 1..rows {
                if b[(i, k)].is_zero() {
                    continue;
                }
                let q = -(&b[(i, k)] / &b[(k, k)]);
                b.add_row_multiple(i, k, &q);
                left.add_row_multiple(i, k, &q);
                if !b[(i, k)].is_zero() {
                    dirty = true; // remainder left; pivot will shrink next pass
                }
            }
            if dirty {
                continue;
            }
            // Clear row k right of the pivot.
            for j in k + 1..cols {
                if b[(k, j)].is_zero() {
                    continue;
                }
                let q = -(&b[(k, j)] / &b[(k, k)]);
                b.add_col_multiple(j, k, &q);
                right.add_col_multiple(j, k, &q);
                if !b[(k, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Enforce divisibility: fold in a row holding a non-multiple.
            let pivot = b[(k, k)].clone();
            let offender = (k + 1..rows)
                .flat_map(|i| (k + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(&b[(i, j)] % &pivot).is_zero());
            match offender {
                Some((i, _)) => {
                    b.add_row_multiple(k, i, &BigInt::one());
                    left.add_row_multiple(k, i, &BigInt::one());
                }
                None => break,
            }
        }
        if b[(k, k)].is_negative() {
            b.negate_row(k);
            left.negate_row(k);
        }
    }

    let diagonal: Vec<BigInt> = (0..steps).map(|k| b[(k, k)].clone()).collect();
    SmithDecomposition {
        left,
        right,
        diagonal,
        rows,
        cols,
    }
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn bareiss_det(m: &IntMat) -> BigInt {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    let n = m.rows;
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                return BigInt::zero();
            };
            a.swap_rows(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                a[(i, j)] = num / &prev;
            }
            a[(i, k)] = BigInt::zero();
        }
        prev = a[(k, k)].clone();
    }
    sign * a[(n - 1, n - 1)].clone()
}

/// Check `left * m * right == diag` and that both factors are unimodular.
pub fn verify_smith(m: &IntMat, s: &SmithDecomposition) -> bool {
    let product = s.left.mul(m).mul(&s.right);
    if product != s.diagonal_matrix() {
        return false;
    }
    if bareiss_det(&s.left).abs() != BigInt::one() || bareiss_det(&s.right).abs() != BigInt::one() {
        return false;
    }
    // Divisibility chain over the nonzero prefix, zeros trailing.
    let diag = &s.diagonal;
    let mut seen_zero = false;
    for k in 0..diag.len() {
        if diag[k].is_zero() {
            seen_zero = true;
            continue;
        }
        if seen_zero || diag[k].is_negative() {
            return false;
        }
        if k + 1 < diag.len() && !diag[k + 1].is_zero() && !(&diag[k + 1] % &diag[k]).is_zero() {
            return false;
        }
    }
    true
}
