//! Dense integer matrices, Smith normal form and exact determinants.

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::scalar::IntScalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix is not symmetric at ({row}, {col})")]
    Asymmetric { row: usize, col: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("ragged rows")]
    Ragged,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: IntScalar> IntMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, MatrixError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(MatrixError::Ragged);
        }
        Ok(IntMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Convenience constructor from `i64` literals.
    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self, MatrixError> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| T::int(v)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(T::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = a.clone() * rhs[(k, j)].clone();
                    out[(i, j)] = out[(i, j)].clone() + v;
                }
            }
        }
        out
    }

    /// Submatrix keeping the listed rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m[(a, b)] = self[(i, j)].clone();
            }
        }
        m
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<T, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut sign = T::one();
        let mut prev = T::one();
        for k in 0..n {
            if a[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                    return Ok(T::zero());
                };
                a.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = a[(i, j)].clone() * a[(k, k)].clone()
                        - a[(i, k)].clone() * a[(k, j)].clone();
                    a[(i, j)] = v / prev.clone();
                }
            }
            prev = a[(k, k)].clone();
        }
        Ok(if n == 0 { T::one() } else { sign * a[(n - 1, n - 1)].clone() })
    }

    pub fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    pub fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    /// row_i += k * row_j
    pub fn add_row_multiple(&mut self, i: usize, j: usize, k: &T) {
        for c in 0..self.cols {
            let v = self[(j, c)].clone() * k.clone();
            self[(i, c)] = self[(i, c)].clone() + v;
        }
    }

    /// col_i += k * col_j
    pub fn add_col_multiple(&mut self, i: usize, j: usize, k: &T) {
        for r in 0..self.rows {
            let v = self[(r, j)].clone() * k.clone();
            self[(r, i)] = self[(r, i)].clone() + v;
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            self[(i, c)] = -self[(i, c)].clone();
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for r in 0..self.rows {
            self[(r, j)] = -self[(r, j)].clone();
        }
    }
}

impl<T> std::ops::Index<(usize, usize)> for IntMatrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for IntMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: IntScalar> fmt::Debug for IntMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|i| self.row(i))).finish()
    }
}

impl<T: IntScalar> fmt::Display for IntMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|v| format!("{v:>4}")).collect();
            writeln!(f, "[{}]", cells.join(""))?;
        }
        Ok(())
    }
}

impl<T: IntScalar> Serialize for IntMatrix<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> =
            self.to_rows().into_iter().map(|r| r.iter().map(T::to_string).collect()).collect();
        // Machine-sized entries serialize as JSON numbers.
        match rows
            .iter()
            .map(|r| r.iter().map(|v| v.parse::<i64>()).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()
        {
            Ok(nums) => nums.serialize(s),
            Err(_) => rows.serialize(s),
        }
    }
}

/// A symmetric integer matrix, e.g. an integral quadratic form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntSymMatrix<T>(IntMatrix<T>);

impl<T: IntScalar> IntSymMatrix<T> {
    pub fn new(m: IntMatrix<T>) -> Result<Self, MatrixError> {
        if m.rows != m.cols {
            return Err(MatrixError::NotSquare { rows: m.rows, cols: m.cols });
        }
        for i in 0..m.rows {
            for j in i + 1..m.cols {
                if m[(i, j)] != m[(j, i)] {
                    return Err(MatrixError::Asymmetric { row: i, col: j });
                }
            }
        }
        Ok(IntSymMatrix(m))
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self, MatrixError> {
        Self::new(IntMatrix::from_i64_rows(rows)?)
    }

    pub fn identity(n: usize) -> Self {
        IntSymMatrix(IntMatrix::identity(n))
    }

    pub fn zeros(n: usize) -> Self {
        IntSymMatrix(IntMatrix::zeros(n, n))
    }

    pub fn diagonal(entries: &[T]) -> Self {
        let mut m = IntMatrix::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        IntSymMatrix(m)
    }

    /// The standard even positive definite rank-8 form: 2 on the diagonal,
    /// −1 along the edges of the E8 Dynkin tree (chain 1-...-7, node 8 on 5).
    pub fn e8() -> Self {
        let mut m = IntMatrix::zeros(8, 8);
        for i in 0..8 {
            m[(i, i)] = T::int(2);
        }
        for (a, b) in E8_EDGES {
            m[(a, b)] = T::int(-1);
            m[(b, a)] = T::int(-1);
        }
        IntSymMatrix(m)
    }

    pub fn dim(&self) -> usize {
        self.0.rows
    }

    pub fn matrix(&self) -> &IntMatrix<T> {
        &self.0
    }

    pub fn into_matrix(self) -> IntMatrix<T> {
        self.0
    }

    pub fn determinant(&self) -> T {
        self.0.determinant().expect("square by construction")
    }

    pub fn negate(&self) -> Self {
        let mut m = self.0.clone();
        for v in &mut m.data {
            *v = -v.clone();
        }
        IntSymMatrix(m)
    }

    /// `Uᵀ M U`.
    pub fn congruent(&self, u: &IntMatrix<T>) -> Self {
        IntSymMatrix(u.transpose().mul(&self.0).mul(u))
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (a, b) = (self.dim(), other.dim());
        let mut m = IntMatrix::zeros(a + b, a + b);
        for i in 0..a {
            for j in 0..a {
                m[(i, j)] = self.0[(i, j)].clone();
            }
        }
        for i in 0..b {
            for j in 0..b {
                m[(a + i, a + j)] = other.0[(i, j)].clone();
            }
        }
        IntSymMatrix(m)
    }
}

/// Edges of the E8 Dynkin diagram, 0-based.
pub const E8_EDGES: [(usize, usize); 7] = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)];

impl<T: IntScalar> std::ops::Index<(usize, usize)> for IntSymMatrix<T> {
    type Output = T;
    fn index(&self, idx: (usize, usize)) -> &T {
        &self.0[idx]
    }
}

impl<T: IntScalar> fmt::Debug for IntSymMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl<T: IntScalar> fmt::Display for IntSymMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl<T: IntScalar> Serialize for IntSymMatrix<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// `U · M · V = D` with `U`, `V` unimodular and `D` diagonal, each diagonal
/// entry non-negative and dividing the next.
#[derive(Debug, Clone)]
pub struct SmithForm<T: IntScalar> {
    pub u: IntMatrix<T>,
    pub d: IntMatrix<T>,
    pub v: IntMatrix<T>,
}

impl<T: IntScalar> SmithForm<T> {
    /// Diagonal of `D`, length `min(rows, cols)`.
    pub fn invariant_factors(&self) -> Vec<T> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d[(i, i)].clone()).collect()
    }
}

pub fn smith_normal_form<T: IntScalar>(m: &IntMatrix<T>) -> SmithForm<T> {
    let (rows, cols) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    for t in 0..rows.min(cols) {
        loop {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = &d[(i, j)];
                    if !x.is_zero()
                        && best.is_none_or(|(bi, bj)| x.abs() < d[(bi, bj)].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return SmithForm { u, d, v };
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let pivot = d[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..rows {
                let q = d[(i, t)].div_floor(&pivot);
                if !q.is_zero() {
                    d.add_row_multiple(i, t, &-q.clone());
                    u.add_row_multiple(i, t, &-q);
                }
                if !d[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = d[(t, j)].div_floor(&pivot);
                if !q.is_zero() {
                    d.add_col_multiple(j, t, &-q.clone());
                    v.add_col_multiple(j, t, &-q);
                }
                if !d[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Divisibility: fold an offending row into the pivot row.
            let offending = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !d[(i, j)].is_multiple_of(&pivot)));
            match offending {
                Some(i) => {
                    d.add_row_multiple(t, i, &T::one());
                    u.add_row_multiple(t, i, &T::one());
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { u, d, v }
}

/// A finitely generated abelian group `Z^free_rank ⊕ ⊕ Z/torsion_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<String>,
}

impl AbelianInvariants {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_infinite_cyclic(&self) -> bool {
        self.free_rank == 1 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|t| format!("Z/{t}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            k => parts.push(format!("Z^{k}")),
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// The cokernel of the row space: rows are relations among `cols` generators.
pub fn abelian_invariants<T: IntScalar>(relations: &IntMatrix<T>) -> AbelianInvariants {
    let snf = smith_normal_form(relations);
    let diag = snf.invariant_factors();
    let nonzero = diag.iter().filter(|x| !x.is_zero()).count();
    AbelianInvariants {
        free_rank: relations.cols - nonzero,
        torsion: diag.iter().filter(|x| !x.is_zero() && !x.is_one()).map(T::to_string).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix<i64> {
        IntMatrix::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn snf_examples() {
        assert_eq!(smith_normal_form(&IntMatrix::<i64>::identity(3)).invariant_factors(), vec![1, 1, 1]);
        assert_eq!(smith_normal_form(&m(&[vec![-1, -1], vec![-1, 0]])).invariant_factors(), vec![1, 1]);
        let z = IntMatrix::<i64>::zeros(3, 3);
        assert_eq!(smith_normal_form(&z).invariant_factors(), vec![0, 0, 0]);
        assert_eq!(abelian_invariants(&z).free_rank, 3);
        assert_eq!(smith_normal_form(&m(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]])).invariant_factors(), vec![2, 6, 12]);
    }

    #[test]
    fn snf_transforms_are_consistent() {
        let a = m(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16], vec![1, 0, 3]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.u.mul(&a).mul(&s.v), s.d);
        assert_eq!(s.u.determinant().unwrap().abs(), 1);
        assert_eq!(s.v.determinant().unwrap().abs(), 1);
    }

    #[test]
    fn determinants() {
        assert_eq!(m(&[vec![-1, -1], vec![-1, 0]]).determinant().unwrap(), -1);
        assert_eq!(IntSymMatrix::<i64>::e8().determinant(), 1);
        assert_eq!(m(&[vec![0, 1], vec![1, 0]]).determinant().unwrap(), -1);
        assert_eq!(m(&[vec![1, 2], vec![2, 4]]).determinant().unwrap(), 0);
    }

    #[test]
    fn symmetry_is_checked() {
        let e = IntSymMatrix::<i64>::from_i64_rows(&[vec![1, 2], vec![3, 1]]).unwrap_err();
        assert_eq!(e, MatrixError::Asymmetric { row: 0, col: 1 });
    }

    #[test]
    fn abelian_group_display() {
        let a = abelian_invariants(&m(&[vec![2, 0, 0], vec![0, 3, 0]]));
        assert_eq!(a.to_string(), "Z/6 + Z");
        assert!(abelian_invariants(&m(&[vec![1]])).is_trivial());
    }
}
