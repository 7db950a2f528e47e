//! Dense integer matrices: products, exact determinants, unimodular
//! inverses and Smith normal form with transforms.

use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix { rows: r, cols: c, data: rows.concat() }
    }

    /// Matrix whose j-th column is `cols[j]`.
    pub fn from_columns(cols: &[Vec<i64>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), r, "ragged columns");
            for (i, &v) in col.iter().enumerate() {
                m[(i, j)] = v;
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[i64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self[(i, j)] == i64::from(i == j)))
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> i64 {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut a: Vec<i128> = self.data.iter().map(|&v| i128::from(v)).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k * n + k] == 0 {
                let Some(p) = (k + 1..n).find(|&i| a[i * n + k] != 0) else { return 0 };
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i * n + j] = (a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j]) / prev;
                }
            }
            prev = a[k * n + k];
        }
        i64::try_from(sign * a[n * n - 1]).expect("determinant overflow")
    }

    /// Inverse of a matrix with determinant +1 or -1.
    pub fn inverse_unimodular(&self) -> Option<IntMatrix> {
        if !self.is_square() || self.det().abs() != 1 {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = IntMatrix::identity(n);
        // Euclidean row reduction to upper triangular form, mirrored on `inv`.
        for col in 0..n {
            loop {
                let pivot = (col..n)
                    .filter(|&i| a[(i, col)] != 0)
                    .min_by_key(|&i| a[(i, col)].abs())?;
                a.swap_rows(col, pivot);
                inv.swap_rows(col, pivot);
                let mut done = true;
                for i in col + 1..n {
                    let q = a[(i, col)] / a[(col, col)];
                    if q != 0 {
                        a.add_row_multiple(i, col, -q);
                        inv.add_row_multiple(i, col, -q);
                    }
                    if a[(i, col)] != 0 {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
        }
        for col in (0..n).rev() {
            let d = a[(col, col)];
            debug_assert!(d.abs() == 1);
            if d == -1 {
                a.negate_row(col);
                inv.negate_row(col);
            }
            for i in 0..col {
                let q = a[(i, col)];
                if q != 0 {
                    a.add_row_multiple(i, col, -q);
                    inv.add_row_multiple(i, col, -q);
                }
            }
        }
        Some(inv)
    }

    pub fn pow(&self, n: u64) -> IntMatrix {
        let mut result = IntMatrix::identity(self.rows);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        result
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

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            self[(r, j)] = -self[(r, j)];
        }
    }

    /// row[dst] += k * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, k: i64) {
        for j in 0..self.cols {
            let v = self[(src, j)];
            self[(dst, j)] += k * v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, k: i64) {
        for i in 0..self.rows {
            let v = self[(i, src)];
            self[(i, dst)] += k * v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.data.iter().map(|v| v.to_string().len()).max().unwrap_or(1);
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|v| format!("{v:>width$}")).collect();
            writeln!(f, "[ {} ]", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Smith normal form `left * m * right = diag`, with `left` and `right`
/// unimodular and the diagonal entries non-negative, each dividing the next.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub left: IntMatrix,
    pub diag: IntMatrix,
    pub right: IntMatrix,
}

impl SmithForm {
    /// Non-zero diagonal entries in order.
    pub fn invariant_factors(&self) -> Vec<i64> {
        (0..self.diag.rows.min(self.diag.cols))
            .map(|i| self.diag[(i, i)])
            .filter(|&d| d != 0)
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (r, c) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut left = IntMatrix::identity(r);
    let mut right = IntMatrix::identity(c);
    let mut t = 0;
    while t < r.min(c) {
        // Smallest non-zero entry in the remaining block becomes the pivot.
        let Some((pi, pj)) = (t..r)
            .flat_map(|i| (t..c).map(move |j| (i, j)))
            .filter(|&(i, j)| a[(i, j)] != 0)
            .min_by_key(|&(i, j)| a[(i, j)].abs())
        else {
            break;
        };
        a.swap_rows(t, pi);
        left.swap_rows(t, pi);
        a.swap_cols(t, pj);
        right.swap_cols(t, pj);

        let mut clean = true;
        for i in t + 1..r {
            let q = a[(i, t)] / a[(t, t)];
            if q != 0 {
                a.add_row_multiple(i, t, -q);
                left.add_row_multiple(i, t, -q);
            }
            clean &= a[(i, t)] == 0;
        }
        for j in t + 1..c {
            let q = a[(t, j)] / a[(t, t)];
            if q != 0 {
                a.add_col_multiple(j, t, -q);
                right.add_col_multiple(j, t, -q);
            }
            clean &= a[(t, j)] == 0;
        }
        if !clean {
            continue;
        }
        // Divisibility: fold any entry not divisible by the pivot into row t.
        let p = a[(t, t)];
        if let Some(i) = (t + 1..r).find(|&i| (t + 1..c).any(|j| a[(i, j)] % p != 0)) {
            a.add_row_multiple(t, i, 1);
            left.add_row_multiple(t, i, 1);
            continue;
        }
        if p < 0 {
            a.negate_row(t);
            left.negate_row(t);
        }
        t += 1;
    }
    SmithForm { left, diag: a, right }
}

/// One integer solution of `a x = b`, or `None` when there is none.
/// Free variables are set to zero.
pub fn solve_integer(a: &IntMatrix, b: &[i64]) -> Option<Vec<i64>> {
    let s = smith_normal_form(a);
    let lb = s.left.mul_vec(b);
    let mut w = vec![0i64; a.cols];
    for (i, &v) in lb.iter().enumerate() {
        let d = if i < a.cols { s.diag[(i, i)] } else { 0 };
        if d == 0 {
            if v != 0 {
                return None;
            }
        } else if v % d != 0 {
            return None;
        } else {
            w[i] = v / d;
        }
    }
    Some(s.right.mul_vec(&w))
}

/// Dense matrix over Z/2, stored one byte per entry.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct F2Matrix {
    n: usize,
    data: Vec<u8>,
}

impl F2Matrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        F2Matrix { n, data }
    }

    pub fn from_int(m: &IntMatrix) -> Self {
        assert!(m.is_square());
        F2Matrix { n: m.rows, data: m.data.iter().map(|v| v.rem_euclid(2) as u8).collect() }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.n + j]
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        self.data.chunks(self.n).map(<[u8]>::to_vec).collect()
    }

    pub fn mul(&self, other: &F2Matrix) -> F2Matrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut data = vec![0u8; n * n];
        for i in 0..n {
            for k in 0..n {
                if self.data[i * n + k] == 1 {
                    for j in 0..n {
                        data[i * n + j] ^= other.data[k * n + j];
                    }
                }
            }
        }
        F2Matrix { n, data }
    }

    pub fn mul_vec(&self, v: &[u8]) -> Vec<u8> {
        (0..self.n)
            .map(|i| (0..self.n).fold(0, |acc, j| acc ^ (self.data[i * self.n + j] & v[j])))
            .collect()
    }

    pub fn inverse(&self) -> Option<F2Matrix> {
        let n = self.n;
        let mut a = self.data.clone();
        let mut inv = F2Matrix::identity(n).data;
        for col in 0..n {
            let p = (col..n).find(|&i| a[i * n + col] == 1)?;
            for j in 0..n {
                a.swap(col * n + j, p * n + j);
                inv.swap(col * n + j, p * n + j);
            }
            for i in 0..n {
                if i != col && a[i * n + col] == 1 {
                    for j in 0..n {
                        a[i * n + j] ^= a[col * n + j];
                        inv[i * n + j] ^= inv[col * n + j];
                    }
                }
            }
        }
        Some(F2Matrix { n, data: inv })
    }

    pub fn is_identity(&self) -> bool {
        *self == F2Matrix::identity(self.n)
    }
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "F2Matrix {}x{}", self.n, self.n)?;
        for row in self.data.chunks(self.n) {
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}
