//! Dense integer matrices and Smith normal form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// A matrix with the given rows; all rows must have length `cols`.
    pub fn from_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Result<Self> {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::InvalidMap(format!("row {i} has length {}, expected {cols}", row.len())));
            }
            data.extend(row);
        }
        Ok(IntMatrix { rows: r, cols, data })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        IntMatrix::from_rows(rows, cols).expect("rectangular literal")
    }

    pub fn column_vector(v: &[BigInt]) -> Self {
        IntMatrix { rows: v.len(), cols: 1, data: v.to_vec() }
    }

    pub fn from_columns(cols: &[Vec<BigInt>], rows: usize) -> Self {
        let mut m = IntMatrix::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for i in 0..rows {
                m[(i, j)] = c[i].clone();
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

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in product");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).filter(|(a, b)| !a.is_zero() && !b.is_zero()).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        IntMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        IntMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &BigInt) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    /// `[self 0; 0 other]`.
    pub fn block_diag(&self, other: &IntMatrix) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m[(self.rows + i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    /// `[self; other]`.
    pub fn vconcat(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        IntMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// `[self other]`.
    pub fn hconcat(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows);
        let mut m = IntMatrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                m[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    pub fn select_columns(&self, cols: impl IntoIterator<Item = usize>) -> IntMatrix {
        let cols: Vec<usize> = cols.into_iter().collect();
        let mut m = IntMatrix::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &j) in cols.iter().enumerate() {
                m[(i, k)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn select_rows(&self, rows: impl IntoIterator<Item = usize>) -> IntMatrix {
        let rows: Vec<usize> = rows.into_iter().collect();
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &i in &rows {
            data.extend_from_slice(self.row(i));
        }
        IntMatrix { rows: rows.len(), cols: self.cols, data }
    }

    pub fn snf(&self) -> Smith {
        Smith::compute(self, true, true)
    }

    pub fn rank(&self) -> usize {
        Smith::compute(self, false, false).rank
    }

    /// Basis of `{x : self x = 0}`, as columns. The basis spans a
    /// saturated sublattice.
    pub fn kernel(&self) -> IntMatrix {
        let s = Smith::compute(self, false, true);
        s.q.select_columns(s.rank..self.cols)
    }

    /// An integer solution of `self x = b`, if one exists.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        self.snf().solve(b)
    }

    /// The inverse of a unimodular matrix.
    pub fn inverse(&self) -> Result<IntMatrix> {
        if self.rows != self.cols {
            return Err(Error::InvalidMap("inverse of a non-square matrix".into()));
        }
        let s = self.snf();
        if s.rank != self.rows || s.diagonal.iter().any(|d| !d.is_one()) {
            return Err(Error::InvalidMap("matrix is not invertible over the integers".into()));
        }
        Ok(s.q.mul(&s.p))
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.inverse().is_ok()
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            for k in 0..self.cols {
                self.data.swap(i * self.cols + k, j * self.cols + k);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for k in 0..self.rows {
                self.data.swap(k * self.cols + i, k * self.cols + j);
            }
        }
    }

    /// `row_i += c row_j`.
    fn add_row(&mut self, i: usize, j: usize, c: &BigInt) {
        for k in 0..self.cols {
            let v = &self.data[j * self.cols + k];
            if !v.is_zero() {
                let d = c * v;
                self.data[i * self.cols + k] += d;
            }
        }
    }

    /// `col_i += c col_j`.
    fn add_col(&mut self, i: usize, j: usize, c: &BigInt) {
        for k in 0..self.rows {
            let v = &self.data[k * self.cols + j];
            if !v.is_zero() {
                let d = c * v;
                self.data[k * self.cols + i] += d;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for k in 0..self.cols {
            let v = &mut self.data[i * self.cols + k];
            *v = -std::mem::take(v);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for k in 0..self.rows {
            let v = &mut self.data[k * self.cols + j];
            *v = -std::mem::take(v);
        }
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

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> =
            (0..self.rows).map(|i| self.row(i).iter().map(|x| x.to_string()).collect()).collect();
        write!(f, "{rows:?}")
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<serde_json::Value>> = (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| match x.to_i64() {
                        Some(v) => serde_json::Value::from(v),
                        None => serde_json::Value::from(x.to_string()),
                    })
                    .collect()
            })
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<serde_json::Value>> = Vec::deserialize(d)?;
        let cols = rows.first().map_or(0, Vec::len);
        let rows = rows
            .into_iter()
            .map(|r| r.into_iter().map(|v| json_integer(&v)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        IntMatrix::from_rows(rows, cols).map_err(D::Error::custom)
    }
}

pub(crate) fn json_integer(v: &serde_json::Value) -> Result<BigInt> {
    match v {
        serde_json::Value::Number(n) => {
            n.as_i64().map(BigInt::from).ok_or_else(|| Error::parse("matrix entry", format!("{n} is not an integer")))
        }
        serde_json::Value::String(s) => {
            s.trim().parse().map_err(|_| Error::parse("matrix entry", format!("{s:?} is not an integer")))
        }
        other => Err(Error::parse("matrix entry", format!("{other} is not an integer"))),
    }
}

/// `p * m * q = diag(diagonal)` with `p`, `q` unimodular and each
/// diagonal entry dividing the next. Inverses are kept alongside.
#[derive(Clone, Debug)]
pub struct Smith {
    pub p: IntMatrix,
    pub p_inv: IntMatrix,
    pub q: IntMatrix,
    pub q_inv: IntMatrix,
    /// The nonzero diagonal entries, all positive.
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
}

impl Smith {
    /// Only the column transforms `q`, `q_inv` are tracked.
    pub(crate) fn compute_cols(m: &IntMatrix) -> Smith {
        Smith::compute(m, false, true)
    }

    fn compute(m: &IntMatrix, track_rows: bool, track_cols: bool) -> Smith {
        let (r, c) = (m.rows, m.cols);
        let mut a = m.clone();
        let (mut p, mut p_inv) = if track_rows {
            (IntMatrix::identity(r), IntMatrix::identity(r))
        } else {
            (IntMatrix::zeros(0, 0), IntMatrix::zeros(0, 0))
        };
        let (mut q, mut q_inv) = if track_cols {
            (IntMatrix::identity(c), IntMatrix::identity(c))
        } else {
            (IntMatrix::zeros(0, 0), IntMatrix::zeros(0, 0))
        };
        let row_swap = |a: &mut IntMatrix, p: &mut IntMatrix, p_inv: &mut IntMatrix, i: usize, j: usize| {
            a.swap_rows(i, j);
            if track_rows {
                p.swap_rows(i, j);
                p_inv.swap_cols(i, j);
            }
        };
        let row_add = |a: &mut IntMatrix, p: &mut IntMatrix, p_inv: &mut IntMatrix, i: usize, j: usize, k: &BigInt| {
            a.add_row(i, j, k);
            if track_rows {
                p.add_row(i, j, k);
                p_inv.add_col(j, i, &-k);
            }
        };
        let col_swap = |a: &mut IntMatrix, q: &mut IntMatrix, q_inv: &mut IntMatrix, i: usize, j: usize| {
            a.swap_cols(i, j);
            if track_cols {
                q.swap_cols(i, j);
                q_inv.swap_rows(i, j);
            }
        };
        let col_add = |a: &mut IntMatrix, q: &mut IntMatrix, q_inv: &mut IntMatrix, i: usize, j: usize, k: &BigInt| {
            a.add_col(i, j, k);
            if track_cols {
                q.add_col(i, j, k);
                q_inv.add_row(j, i, &-k);
            }
        };

        let mut rank = 0;
        for t in 0..r.min(c) {
            // smallest nonzero entry of the trailing block, ties broken by
            // the Markowitz count to limit fill-in
            let mut row_nnz = vec![0usize; r];
            let mut col_nnz = vec![0usize; c];
            for i in t..r {
                for j in t..c {
                    if !a[(i, j)].is_zero() {
                        row_nnz[i] += 1;
                        col_nnz[j] += 1;
                    }
                }
            }
            let mut best: Option<(usize, usize, usize)> = None;
            for i in (t..r).filter(|&i| row_nnz[i] > 0) {
                for j in t..c {
                    let v = &a[(i, j)];
                    if v.is_zero() {
                        continue;
                    }
                    let cost = (row_nnz[i] - 1) * (col_nnz[j] - 1);
                    let better = best.is_none_or(|(bi, bj, bc)| {
                        let m = a[(bi, bj)].magnitude();
                        v.magnitude() < m || (v.magnitude() == m && cost < bc)
                    });
                    if better {
                        best = Some((i, j, cost));
                    }
                }
            }
            let best = best.map(|(i, j, _)| (i, j));
            let Some((bi, bj)) = best else { break };
            row_swap(&mut a, &mut p, &mut p_inv, t, bi);
            col_swap(&mut a, &mut q, &mut q_inv, t, bj);
            loop {
                let mut dirty = false;
                for i in t + 1..r {
                    if a[(i, t)].is_zero() {
                        continue;
                    }
                    let k = nearest_quotient(&a[(i, t)], &a[(t, t)]);
                    row_add(&mut a, &mut p, &mut p_inv, i, t, &-k);
                    if !a[(i, t)].is_zero() {
                        dirty = true;
                        if a[(i, t)].magnitude() < a[(t, t)].magnitude() {
                            row_swap(&mut a, &mut p, &mut p_inv, t, i);
                        }
                    }
                }
                for j in t + 1..c {
                    if a[(t, j)].is_zero() {
                        continue;
                    }
                    let k = nearest_quotient(&a[(t, j)], &a[(t, t)]);
                    col_add(&mut a, &mut q, &mut q_inv, j, t, &-k);
                    if !a[(t, j)].is_zero() {
                        dirty = true;
                        if a[(t, j)].magnitude() < a[(t, t)].magnitude() {
                            col_swap(&mut a, &mut q, &mut q_inv, t, j);
                        }
                    }
                }
                if dirty {
                    continue;
                }
                // the pivot must divide the whole trailing block
                let mut bad_row = None;
                'scan: for i in t + 1..r {
                    for j in t + 1..c {
                        if !a[(i, j)].is_multiple_of(&a[(t, t)]) {
                            bad_row = Some(i);
                            break 'scan;
                        }
                    }
                }
                match bad_row {
                    Some(i) => row_add(&mut a, &mut p, &mut p_inv, t, i, &BigInt::one()),
                    None => break,
                }
            }
            if a[(t, t)].is_negative() {
                a.negate_row(t);
                if track_rows {
                    p.negate_row(t);
                    p_inv.negate_col(t);
                }
            }
            rank += 1;
        }
        let diagonal = (0..rank).map(|i| a[(i, i)].clone()).collect();
        Smith { p, p_inv, q, q_inv, diagonal, rank }
    }

    /// An integer solution of `m x = b`, if one exists.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        let pb = self.p.apply(b);
        let mut y = vec![BigInt::zero(); self.q.rows()];
        for (i, v) in pb.iter().enumerate() {
            if i < self.rank {
                let (quo, rem) = v.div_rem(&self.diagonal[i]);
                if !rem.is_zero() {
                    return None;
                }
                y[i] = quo;
            } else if !v.is_zero() {
                return None;
            }
        }
        Some(self.q.apply(&y))
    }
}

/// `q` with `|x - q d| <= |d| / 2`.
fn nearest_quotient(x: &BigInt, d: &BigInt) -> BigInt {
    let (q, r) = x.div_mod_floor(d);
    // the floor remainder has the sign of d; q + 1 leaves r - d
    if (&r + &r).magnitude() > d.magnitude() {
        q + 1
    } else {
        q
    }
}

/// `gcd` of a list, zero for the empty list.
pub fn gcd_all<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    xs.into_iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}
