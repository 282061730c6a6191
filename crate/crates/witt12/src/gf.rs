//! Exact linear algebra over GF(2), GF(3) and GF(5).
//!
//! Everything downstream (projective spaces, designs, codes) reduces to row
//! operations over these three fields, so the kernel stays deliberately
//! small: dense matrices with `u8` entries, reduced row echelon form,
//! kernels and linear solving. Pivoting always takes the first nonzero
//! entry in column order, which makes every echelon form a canonical key:
//! identical inputs reduce to bit-identical outputs.

use crate::{Error, Result};

/// One of the supported prime fields GF(p), p in {2, 3, 5}.
///
/// Scalars are plain `u8` values already reduced into `[0, p)`; the field
/// carries the modulus and the arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeField(u8);

/// The field GF(2).
pub const GF2: PrimeField = PrimeField(2);
/// The field GF(3), the ambient field of the whole construction.
pub const GF3: PrimeField = PrimeField(3);
/// The field GF(5), used by the projective-plane code family.
pub const GF5: PrimeField = PrimeField(5);

impl PrimeField {
    /// Larger moduli are rejected: the toolkit only ever needs p in {2, 3, 5}.
    pub fn new(p: u8) -> Result<Self> {
        match p {
            2 | 3 | 5 => Ok(PrimeField(p)),
            other => Err(Error::UnsupportedModulus(other)),
        }
    }

    pub fn modulus(self) -> u8 {
        self.0
    }

    /// All field elements in ascending order.
    pub fn elements(self) -> impl Iterator<Item = u8> {
        0..self.0
    }

    pub fn reduce(self, x: i64) -> u8 {
        x.rem_euclid(i64::from(self.0)) as u8
    }

    pub fn add(self, a: u8, b: u8) -> u8 {
        debug_assert!(a < self.0 && b < self.0);
        (a + b) % self.0
    }

    pub fn sub(self, a: u8, b: u8) -> u8 {
        debug_assert!(a < self.0 && b < self.0);
        (a + self.0 - b) % self.0
    }

    pub fn neg(self, a: u8) -> u8 {
        debug_assert!(a < self.0);
        (self.0 - a) % self.0
    }

    pub fn mul(self, a: u8, b: u8) -> u8 {
        debug_assert!(a < self.0 && b < self.0);
        (a * b) % self.0
    }

    /// Multiplicative inverse of a nonzero element.
    ///
    /// Panics on zero; inverting zero is always a caller bug here.
    pub fn inv(self, a: u8) -> u8 {
        assert!(a != 0 && a < self.0, "no inverse of {a} mod {}", self.0);
        // Fields this small are fastest searched directly.
        (1..self.0).find(|&b| self.mul(a, b) == 1).unwrap()
    }
}

/// Dot product of two equally long vectors.
pub fn dot(field: PrimeField, a: &[u8], b: &[u8]) -> u8 {
    assert_eq!(a.len(), b.len(), "dot product length mismatch");
    let p = i64::from(field.modulus());
    let mut acc = 0i64;
    for (&x, &y) in a.iter().zip(b) {
        acc += i64::from(x) * i64::from(y);
        if acc >= p * p * 8 {
            acc %= p;
        }
    }
    field.reduce(acc)
}

/// Scale a vector so its first nonzero entry becomes 1; zero stays zero.
pub fn canonicalize(field: PrimeField, v: &mut [u8]) {
    if let Some(&lead) = v.iter().find(|&&x| x != 0) {
        if lead != 1 {
            let s = field.inv(lead);
            for x in v.iter_mut() {
                *x = field.mul(*x, s);
            }
        }
    }
}

/// A dense row-major matrix over a prime field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

/// Result of a row reduction: the reduced matrix, its rank and the pivot
/// columns in increasing order.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// A particular solution of `A x = b` together with a kernel basis of `A`.
#[derive(Debug, Clone)]
pub struct LinearSolution {
    pub particular: Vec<u8>,
    pub kernel: Vec<Vec<u8>>,
}

impl Matrix {
    pub fn zero(field: PrimeField, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Build a matrix from row slices; entries are reduced mod p.
    pub fn from_rows(field: PrimeField, rows: &[Vec<u8>]) -> Self {
        assert!(!rows.is_empty(), "matrix needs at least one row");
        let cols = rows[0].len();
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&x| x % field.modulus()))
            .collect();
        Matrix { field, rows: rows.len(), cols, data }
    }

    /// Build a matrix whose columns are the given vectors.
    pub fn from_columns(field: PrimeField, cols: &[Vec<u8>]) -> Self {
        assert!(!cols.is_empty(), "matrix needs at least one column");
        let rows = cols[0].len();
        assert!(cols.iter().all(|c| c.len() == rows), "ragged columns");
        let mut m = Matrix::zero(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, x % field.modulus());
            }
        }
        m
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        debug_assert!(v < self.field.modulus());
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        assert_eq!(self.field, rhs.field);
        let mut out = Matrix::zero(self.field, self.rows, rhs.cols);
        for r in 0..self.rows {
            for c in 0..rhs.cols {
                let mut acc = 0i64;
                for k in 0..self.cols {
                    acc += i64::from(self.get(r, k)) * i64::from(rhs.get(k, c));
                }
                out.set(r, c, self.field.reduce(acc));
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u8]) -> Vec<u8> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows).map(|r| dot(self.field, self.row(r), v)).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn scale_row(&mut self, r: usize, s: u8) {
        for c in 0..self.cols {
            let v = self.field.mul(self.get(r, c), s);
            self.set(r, c, v);
        }
    }

    /// row_i -= factor * row_j
    fn row_sub_scaled(&mut self, i: usize, j: usize, factor: u8) {
        for c in 0..self.cols {
            let v = self.field.sub(self.get(i, c), self.field.mul(factor, self.get(j, c)));
            self.set(i, c, v);
        }
    }

    /// Reduced row echelon form with deterministic pivoting: for each
    /// column in order, the first nonzero entry at or below the current row
    /// becomes the pivot. Leading entries are 1 and pivot columns are zero
    /// elsewhere.
    pub fn rref(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = m.field.inv(m.get(r, c));
            m.scale_row(r, inv);
            for i in 0..m.rows {
                if i != r && m.get(i, c) != 0 {
                    let f = m.get(i, c);
                    m.row_sub_scaled(i, r, f);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { matrix: m, rank: r, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the right kernel, one vector per free column in ascending
    /// order. Each basis vector is scaled so its first nonzero entry is 1.
    pub fn nullspace(&self) -> Vec<Vec<u8>> {
        let ech = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &ech.pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::with_capacity(self.cols - ech.rank);
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u8; self.cols];
            v[free] = 1;
            for (k, &pc) in ech.pivots.iter().enumerate() {
                v[pc] = self.field.neg(ech.matrix.get(k, free));
            }
            canonicalize(self.field, &mut v);
            basis.push(v);
        }
        basis
    }

    /// Solve `A x = b`. Returns a particular solution together with a
    /// kernel basis, or `None` when the system is inconsistent.
    ///
    /// Panics when `b` does not match the row count.
    pub fn solve(&self, b: &[u8]) -> Option<LinearSolution> {
        assert_eq!(self.rows, b.len(), "solve: right-hand side length mismatch");
        let mut aug = Matrix::zero(self.field, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, self.cols, b[r] % self.field.modulus());
        }
        let ech = aug.rref();
        if ech.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut particular = vec![0u8; self.cols];
        for (k, &pc) in ech.pivots.iter().enumerate() {
            particular[pc] = ech.matrix.get(k, self.cols);
        }
        Some(LinearSolution { particular, kernel: self.nullspace() })
    }

    /// Inverse of a square matrix, or `None` if singular.
    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug = Matrix::zero(self.field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n + r, 1);
        }
        let ech = aug.rref();
        if ech.pivots.len() < n || ech.pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zero(self.field, n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, ech.matrix.get(r, n + c));
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Scale the whole matrix so that the first nonzero entry of its first
    /// nonzero column becomes 1. Collineation matrices are compared in this
    /// form, since projectively they are only defined up to a scalar.
    pub fn canonical_scale(&self) -> Matrix {
        let mut m = self.clone();
        'outer: for c in 0..m.cols {
            for r in 0..m.rows {
                let v = m.get(r, c);
                if v != 0 {
                    if v != 1 {
                        let s = m.field.inv(v);
                        for x in m.data.iter_mut() {
                            *x = m.field.mul(*x, s);
                        }
                    }
                    break 'outer;
                }
            }
        }
        m
    }
}

impl std::fmt::Display for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unsupported_moduli() {
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(7).is_err());
        assert!(PrimeField::new(3).is_ok());
    }

    #[test]
    fn scalar_arithmetic_is_closed() {
        for field in [GF2, GF3, GF5] {
            let p = field.modulus();
            for a in 0..p {
                for b in 0..p {
                    assert!(field.add(a, b) < p);
                    assert!(field.mul(a, b) < p);
                }
                if a != 0 {
                    assert_eq!(field.mul(a, field.inv(a)), 1);
                }
            }
        }
    }

    #[test]
    fn rref_identity() {
        let ech = Matrix::identity(GF3, 3).rref();
        assert_eq!(ech.rank, 3);
        assert_eq!(ech.pivots, vec![0, 1, 2]);
        assert_eq!(ech.matrix, Matrix::identity(GF3, 3));
    }

    #[test]
    fn rref_all_ones_has_rank_one() {
        let m = Matrix::from_rows(GF3, &[vec![1, 1, 1], vec![1, 1, 1], vec![1, 1, 1]]);
        let ech = m.rref();
        assert_eq!(ech.rank, 1);
        assert_eq!(ech.pivots, vec![0]);
    }

    #[test]
    fn rref_infinity_quadrangle_rows_have_rank_three() {
        // Coordinate rows of the four surface points over the line x0 = 0;
        // they span a plane of PG(5,3).
        let m = Matrix::from_rows(
            GF3,
            &[
                vec![0, 0, 0, 1, 0, 0],
                vec![0, 0, 0, 0, 0, 1],
                vec![0, 0, 0, 1, 1, 1],
                vec![0, 0, 0, 1, 2, 1],
            ],
        );
        assert_eq!(m.rank(), 3);
    }

    #[test]
    fn rref_is_idempotent() {
        let m = Matrix::from_rows(GF3, &[vec![1, 2, 0, 1], vec![2, 1, 1, 0], vec![0, 0, 1, 1]]);
        let once = m.rref().matrix;
        let twice = once.rref().matrix;
        assert_eq!(once, twice);
    }

    #[test]
    fn rank_equals_transpose_rank() {
        // All 2x3 matrices over GF(3).
        for code in 0..3u32.pow(6) {
            let mut digits = Vec::new();
            let mut c = code;
            for _ in 0..6 {
                digits.push((c % 3) as u8);
                c /= 3;
            }
            let m = Matrix::from_rows(GF3, &[digits[..3].to_vec(), digits[3..].to_vec()]);
            assert_eq!(m.rank(), m.transpose().rank());
        }
    }

    #[test]
    fn solve_identity_system() {
        let sol = Matrix::identity(GF3, 3).solve(&[1, 2, 0]).unwrap();
        assert_eq!(sol.particular, vec![1, 2, 0]);
        assert!(sol.kernel.is_empty());
    }

    #[test]
    fn solve_inconsistent_system() {
        let m = Matrix::zero(GF3, 2, 2);
        assert!(m.solve(&[1, 0]).is_none());
    }

    #[test]
    fn solve_singular_homogeneous_system() {
        let m = Matrix::from_rows(GF3, &[vec![1, 1], vec![2, 2]]);
        let sol = m.solve(&[0, 0]).unwrap();
        assert_eq!(sol.particular, vec![0, 0]);
        assert_eq!(sol.kernel, vec![vec![1, 2]]);
        // Oracle: enumerate all 9 vectors of GF(3)^2.
        let mut kernel_members = Vec::new();
        for a in 0..3u8 {
            for b in 0..3u8 {
                if m.mul_vec(&[a, b]).iter().all(|&x| x == 0) {
                    kernel_members.push(vec![a, b]);
                }
            }
        }
        assert_eq!(kernel_members, vec![vec![0, 0], vec![1, 2], vec![2, 1]]);
    }

    #[test]
    fn solve_agrees_with_exhaustive_search() {
        // Every 2x2 system over GF(3): solve() finds a solution exactly when
        // scanning all 9 candidate vectors finds one.
        for code in 0..3u32.pow(4) {
            let e = |i: u32| ((code / 3u32.pow(i)) % 3) as u8;
            let m = Matrix::from_rows(GF3, &[vec![e(0), e(1)], vec![e(2), e(3)]]);
            for b0 in 0..3u8 {
                for b1 in 0..3u8 {
                    let b = [b0, b1];
                    let brute = (0..9u8).map(|k| [k % 3, k / 3]).find(|x| m.mul_vec(x) == b);
                    match m.solve(&b) {
                        Some(sol) => {
                            assert_eq!(m.mul_vec(&sol.particular), b);
                            assert!(brute.is_some());
                        }
                        None => assert!(brute.is_none()),
                    }
                }
            }
        }
    }

    #[test]
    fn nullspace_of_identity_is_empty() {
        assert!(Matrix::identity(GF3, 6).nullspace().is_empty());
    }

    #[test]
    fn nullspace_of_single_row_has_codimension_one() {
        let m = Matrix::from_rows(GF3, &[vec![1, 0, 0, 0, 0, 0]]);
        let basis = m.nullspace();
        assert_eq!(basis.len(), 5);
        for v in &basis {
            assert_eq!(dot(GF3, m.row(0), v), 0);
        }
    }

    #[test]
    fn nullspace_vectors_annihilate_matrix() {
        let m = Matrix::from_rows(GF5, &[vec![1, 2, 3, 4], vec![0, 1, 1, 0]]);
        let basis = m.nullspace();
        assert_eq!(basis.len(), 2);
        for v in &basis {
            assert!(m.mul_vec(v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_rows(GF3, &[vec![1, 1, 0], vec![0, 1, 2], vec![1, 0, 1]]);
        let inv = m.inverse().expect("matrix is invertible");
        assert_eq!(m.mul(&inv), Matrix::identity(GF3, 3));
        assert_eq!(inv.mul(&m), Matrix::identity(GF3, 3));
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let m = Matrix::from_rows(GF3, &[vec![1, 2], vec![2, 1]]);
        assert!(m.inverse().is_some());
        let s = Matrix::from_rows(GF3, &[vec![1, 2], vec![2, 4]]);
        assert!(s.inverse().is_none());
    }

    #[test]
    fn canonical_scale_normalizes_leading_entry() {
        let m = Matrix::from_rows(GF3, &[vec![0, 2], vec![2, 1]]);
        let c = m.canonical_scale();
        // First nonzero column is column 0, whose first nonzero entry (row 1)
        // must become 1.
        assert_eq!(c.get(1, 0), 1);
        assert_eq!(c.get(0, 1), 1);
    }
}
