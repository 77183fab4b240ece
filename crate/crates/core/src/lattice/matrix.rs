//! Dense integer matrices, Smith normal form and integer kernels.

use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> IntMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<T>], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            for (j, x) in r.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<T>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged matrix columns");
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
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

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> Vec<T> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j).clone() + a.clone() * other.get(k, j).clone();
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(T::zero(), |acc, j| {
                    acc + self.get(i, j).clone() * v[j].clone()
                })
            })
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
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

    /// row[dst] += factor * row[src]
    fn add_row(&mut self, dst: usize, src: usize, factor: &T) {
        for j in 0..self.cols {
            let v = self.get(dst, j).clone() + factor.clone() * self.get(src, j).clone();
            self.set(dst, j, v);
        }
    }

    /// col[dst] += factor * col[src]
    fn add_col(&mut self, dst: usize, src: usize, factor: &T) {
        for i in 0..self.rows {
            let v = self.get(i, dst).clone() + factor.clone() * self.get(i, src).clone();
            self.set(i, dst, v);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j).clone();
            self.set(i, j, v);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self.get(i, j).clone();
            self.set(i, j, v);
        }
    }

    /// Rank over Q.
    pub fn rank(&self) -> usize {
        bareiss(self.clone()).0
    }

    /// Determinant of a square matrix (fraction-free elimination).
    pub fn determinant(&self) -> T {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        if self.rows == 0 {
            return T::one();
        }
        let (rank, det) = bareiss(self.clone());
        if rank < self.rows {
            T::zero()
        } else {
            det
        }
    }
}

/// Fraction-free Gaussian elimination. Returns the rank and, for a square
/// full-rank input, the determinant.
fn bareiss<T: Scalar>(mut m: IntMatrix<T>) -> (usize, T) {
    let mut prev = T::one();
    let mut sign = T::one();
    let mut rank = 0;
    let rows = m.rows;
    for col in 0..m.cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !m.get(i, col).is_zero()) else {
            continue;
        };
        if p != rank {
            m.swap_rows(p, rank);
            sign = -sign;
        }
        let pivot = m.get(rank, col).clone();
        for i in rank + 1..rows {
            for j in col + 1..m.cols {
                let v = (pivot.clone() * m.get(i, j).clone()
                    - m.get(i, col).clone() * m.get(rank, j).clone())
                    / prev.clone();
                m.set(i, j, v);
            }
            m.set(i, col, T::zero());
        }
        prev = pivot;
        rank += 1;
    }
    (rank, sign * prev)
}

/// `u * a * v = diag` with `u`, `v` unimodular; `u_inv` is the inverse of `u`.
#[derive(Clone, Debug)]
pub struct SmithForm<T> {
    pub u: IntMatrix<T>,
    pub u_inv: IntMatrix<T>,
    pub v: IntMatrix<T>,
    /// Nonzero invariant factors, each dividing the next.
    pub diagonal: Vec<T>,
}

impl<T> SmithForm<T> {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }
}

pub fn smith_normal_form<T: Scalar>(a: &IntMatrix<T>) -> SmithForm<T> {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut u_inv = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut diagonal = Vec::new();

    for t in 0..m.min(n) {
        // smallest nonzero entry of the trailing block as pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let x = d.get(i, j);
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < d.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        u_inv.swap_cols(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = d.get(i, t).div_floor(d.get(t, t));
                let neg_q = -q.clone();
                d.add_row(i, t, &neg_q);
                u.add_row(i, t, &neg_q);
                u_inv.add_col(t, i, &q);
                if !d.get(i, t).is_zero() {
                    dirty = true;
                    if d.get(i, t).abs() < d.get(t, t).abs() {
                        d.swap_rows(t, i);
                        u.swap_rows(t, i);
                        u_inv.swap_cols(t, i);
                    }
                }
            }
            for j in t + 1..n {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = d.get(t, j).div_floor(d.get(t, t));
                let neg_q = -q;
                d.add_col(j, t, &neg_q);
                v.add_col(j, t, &neg_q);
                if !d.get(t, j).is_zero() {
                    dirty = true;
                    if d.get(t, j).abs() < d.get(t, t).abs() {
                        d.swap_cols(t, j);
                        v.swap_cols(t, j);
                    }
                }
            }
            if dirty {
                continue;
            }
            // enforce divisibility of the trailing block by the pivot
            let mut bad_row = None;
            'scan: for i in t + 1..m {
                for j in t + 1..n {
                    if !d.get(i, j).is_multiple_of(d.get(t, t)) {
                        bad_row = Some(i);
                        break 'scan;
                    }
                }
            }
            match bad_row {
                Some(i) => {
                    let one = T::one();
                    d.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                    u_inv.add_col(i, t, &-one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
        diagonal.push(d.get(t, t).clone());
    }
    SmithForm {
        u,
        u_inv,
        v,
        diagonal,
    }
}

/// Lattice basis (as columns) of `{x in Z^n : a x = 0}`.
pub fn integer_kernel<T: Scalar>(a: &IntMatrix<T>) -> Vec<Vec<T>> {
    let snf = smith_normal_form(a);
    (snf.rank()..a.cols).map(|j| snf.v.column(j)).collect()
}

/// Generalized cross product: the vector of signed maximal minors of the
/// `(r-1) x r` matrix with the given rows. Orthogonal to every row.
pub fn cofactor_normal<T: Scalar>(rows: &[Vec<T>], r: usize) -> Vec<T> {
    assert_eq!(rows.len() + 1, r);
    (0..r)
        .map(|skip| {
            let minor: Vec<Vec<T>> = rows
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(j, _)| j != skip)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let det = IntMatrix::from_rows(&minor, r - 1).determinant();
            if skip % 2 == 0 {
                det
            } else {
                -det
            }
        })
        .collect()
}
