//! Dense linear algebra over prime fields.
//!
//! Everything above this layer (algebras, modules, resolutions) reduces to
//! row reduction of small dense matrices over `F_p`. Entries are stored as
//! reduced residues in `u32`; products are widened to `u64` before reduction.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} does not fit in a machine word field (must be < 2^31)")]
    ModulusTooLarge(u64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// The field `F_p` for a word-sized prime `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct PrimeField {
    p: u32,
}

impl TryFrom<u64> for PrimeField {
    type Error = LinAlgError;

    fn try_from(p: u64) -> Result<Self, Self::Error> {
        PrimeField::new(p)
    }
}

impl From<PrimeField> for u64 {
    fn from(f: PrimeField) -> u64 {
        f.p as u64
    }
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, LinAlgError> {
        if p >= 1 << 31 {
            return Err(LinAlgError::ModulusTooLarge(p));
        }
        if p < 2 {
            return Err(LinAlgError::NotPrime(p));
        }
        let mut d = 2u64;
        while d * d <= p {
            if p.is_multiple_of(d) {
                return Err(LinAlgError::NotPrime(p));
            }
            d += 1;
        }
        Ok(PrimeField { p: p as u32 })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        (s % self.p as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        self.add(a, self.p - b % self.p)
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in F_{}", self.p);
        self.pow(a, self.p as u64 - 2)
    }

    pub fn pow(self, mut a: u32, mut e: u64) -> u32 {
        let mut acc = 1 % self.p;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn reduce(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    /// `y += c * x`, elementwise.
    #[inline]
    pub fn axpy(self, y: &mut [u32], c: u32, x: &[u32]) {
        if c == 0 {
            return;
        }
        let p = self.p as u64;
        let c = c as u64;
        for (yi, &xi) in y.iter_mut().zip(x) {
            if xi != 0 {
                *yi = ((*yi as u64 + c * xi as u64) % p) as u32;
            }
        }
    }

    #[inline]
    pub fn scale(self, x: &mut [u32], c: u32) {
        for xi in x.iter_mut() {
            *xi = self.mul(*xi, c);
        }
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

/// Dense row-major matrix over a prime field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Result of row reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % field.p();
        }
        m
    }

    /// Builds a matrix from integer rows, reducing every entry modulo `p`.
    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Result<Self, LinAlgError> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(LinAlgError::DimensionMismatch(
                "ragged rows in matrix literal".into(),
            ));
        }
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&v| field.reduce(v)))
            .collect();
        Ok(Matrix {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Takes ownership of reduced row-major data. Panics on a length mismatch.
    pub fn from_data(field: PrimeField, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        debug_assert!(data.iter().all(|&v| v < field.p()));
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    /// Builds a `rows x columns.len()` matrix whose columns are the given vectors.
    pub fn from_columns(field: PrimeField, rows: usize, columns: &[Vec<u32>]) -> Self {
        let cols = columns.len();
        let mut m = Self::zeros(field, rows, cols);
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, &v) in c.iter().enumerate() {
                m.data[i * cols + j] = v;
            }
        }
        m
    }

    pub fn from_row_vectors(field: PrimeField, cols: usize, rows: &[Vec<u32>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length");
            data.extend_from_slice(r);
        }
        Matrix {
            field,
            rows: rows.len(),
            cols,
            data,
        }
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }
    #[inline]
    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.field.p();
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a != 0 {
                    f.axpy(out_row, a, other.row(k));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        let p = self.field.p() as u64;
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u64;
                for (a, b) in self.row(i).iter().zip(v) {
                    acc += *a as u64 * *b as u64;
                    if acc >= 1 << 62 {
                        acc %= p;
                    }
                }
                (acc % p) as u32
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Matrix { data, ..*self }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        Matrix { data, ..*self }
    }

    pub fn scaled(&self, c: u32) -> Matrix {
        let f = self.field;
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        Matrix { data, ..*self }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: u32, other: &Matrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.field.axpy(&mut self.data, c, &other.data);
    }

    /// Kronecker product `self ⊗ other`, indexed `(i*r2 + k, j*c2 + l)`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let f = self.field;
        let (r2, c2) = (other.rows, other.cols);
        let mut out = Matrix::zeros(f, self.rows * r2, self.cols * c2);
        let oc = out.cols;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..r2 {
                    for l in 0..c2 {
                        let b = other.get(k, l);
                        if b != 0 {
                            out.data[(i * r2 + k) * oc + j * c2 + l] = f.mul(a, b);
                        }
                    }
                }
            }
        }
        out
    }

    /// Block-diagonal sum.
    pub fn direct_sum(blocks: &[&Matrix]) -> Matrix {
        let field = blocks.first().expect("at least one block").field;
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.data[(r0 + i) * cols + c0 + j] = b.get(i, j);
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Row-major flattening as a single vector.
    pub fn to_vec(&self) -> Vec<u32> {
        self.data.clone()
    }

    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        Rref {
            rank: pivots.len(),
            pivot_cols: pivots,
            reduced: m,
        }
    }

    /// Gauss-Jordan elimination in place; returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.data[r * cols + c]);
            f.scale(&mut self.data[r * cols..(r + 1) * cols], inv);
            let pivot_row: Vec<u32> = self.data[r * cols + c..(r + 1) * cols].to_vec();
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = self.data[i * cols + c];
                if factor != 0 {
                    let row = &mut self.data[i * cols + c..(i + 1) * cols];
                    f.axpy(row, f.neg(factor), &pivot_row);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Rank by forward elimination only.
    pub fn rank(&self) -> usize {
        let f = self.field;
        let mut m = self.clone();
        let (rows, cols) = (m.rows, m.cols);
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| m.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for j in c..cols {
                    m.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(m.data[r * cols + c]);
            f.scale(&mut m.data[r * cols + c..(r + 1) * cols], inv);
            let pivot_row: Vec<u32> = m.data[r * cols + c..(r + 1) * cols].to_vec();
            for i in r + 1..rows {
                let factor = m.data[i * cols + c];
                if factor != 0 {
                    f.axpy(
                        &mut m.data[i * cols + c..(i + 1) * cols],
                        f.neg(factor),
                        &pivot_row,
                    );
                }
            }
            r += 1;
        }
        r
    }

    /// Basis of the null space, returned as the columns of a `cols x nullity` matrix.
    pub fn kernel_basis(&self) -> Matrix {
        let vectors = self.kernel_vectors();
        Matrix::from_columns(self.field, self.cols, &vectors)
    }

    /// Null space basis as a list of vectors (one per free column).
    pub fn kernel_vectors(&self) -> Vec<Vec<u32>> {
        let f = self.field;
        let Rref {
            reduced,
            pivot_cols,
            ..
        } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivot_cols {
            is_pivot[c] = true;
        }
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1 % f.p();
            for (r, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = f.neg(reduced.get(r, free));
            }
            out.push(v);
        }
        out
    }

    /// Solves `self * x = b`. `Ok(None)` means the system is inconsistent.
    pub fn solve(&self, b: &[u32]) -> Result<Option<Vec<u32>>, LinAlgError> {
        if b.len() != self.rows {
            return Err(LinAlgError::DimensionMismatch(format!(
                "system has {} rows but right-hand side has length {}",
                self.rows,
                b.len()
            )));
        }
        let f = self.field;
        let mut aug = Matrix::zeros(f, self.rows, self.cols + 1);
        for (i, &bi) in b.iter().enumerate() {
            aug.data[i * (self.cols + 1)..i * (self.cols + 1) + self.cols]
                .copy_from_slice(self.row(i));
            aug.data[i * (self.cols + 1) + self.cols] = bi % f.p();
        }
        let pivots = aug.rref_in_place();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0u32; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(r, self.cols);
        }
        Ok(Some(x))
    }

    /// A matrix `X` with `self * X = I`, when `self` has full row rank.
    pub fn right_inverse(&self) -> Option<Matrix> {
        let f = self.field;
        let (rows, cols) = (self.rows, self.cols);
        let mut aug = Matrix::zeros(f, rows, cols + rows);
        for i in 0..rows {
            aug.data[i * (cols + rows)..i * (cols + rows) + cols].copy_from_slice(self.row(i));
            aug.data[i * (cols + rows) + cols + i] = 1 % f.p();
        }
        let pivots = aug.rref_in_place();
        let left: Vec<usize> = pivots.iter().copied().filter(|&c| c < cols).collect();
        if left.len() < rows {
            return None;
        }
        let mut x = Matrix::zeros(f, cols, rows);
        for (r, &c) in left.iter().enumerate() {
            for j in 0..rows {
                x.data[c * rows + j] = aug.get(r, cols + j);
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        self.right_inverse()
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// A subspace of `F_p^n` kept as a reduced row-echelon basis.
///
/// Each basis vector has a 1 in its pivot coordinate and zeros in every other
/// pivot coordinate, so the coordinates of a member vector are just its
/// entries at the pivots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: PrimeField,
    ambient: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: PrimeField, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: PrimeField, ambient: usize) -> Self {
        let rows = (0..ambient)
            .map(|i| {
                let mut v = vec![0; ambient];
                v[i] = 1 % field.p();
                v
            })
            .collect();
        Subspace {
            field,
            ambient,
            rows,
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span<I>(field: PrimeField, ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vec<u32>>,
    {
        let vs: Vec<Vec<u32>> = vectors.into_iter().collect();
        if vs.is_empty() {
            return Self::zero(field, ambient);
        }
        let mut m = Matrix::from_row_vectors(field, ambient, &vs);
        let pivots = m.rref_in_place();
        let rows = (0..pivots.len()).map(|i| m.row(i).to_vec()).collect();
        Subspace {
            field,
            ambient,
            rows,
            pivots,
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.rows.len()
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    pub fn basis(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Reduces `v` against the basis; the result vanishes at every pivot.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let mut r = v.to_vec();
        self.reduce_in_place(&mut r);
        r
    }

    pub fn reduce_in_place(&self, v: &mut [u32]) {
        assert_eq!(v.len(), self.ambient, "vector length");
        let f = self.field;
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = v[pc];
            if c != 0 {
                f.axpy(v, f.neg(c), row);
            }
        }
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Coordinates in the echelon basis, or `None` if `v` is not a member.
    pub fn coords(&self, v: &[u32]) -> Option<Vec<u32>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p]).collect())
    }

    /// Coordinates without the membership check.
    pub fn coords_unchecked(&self, v: &[u32]) -> Vec<u32> {
        self.pivots.iter().map(|&p| v[p]).collect()
    }

    /// Vector with the given coordinates.
    pub fn combine(&self, coords: &[u32]) -> Vec<u32> {
        assert_eq!(coords.len(), self.dim());
        let mut v = vec![0; self.ambient];
        for (c, row) in coords.iter().zip(&self.rows) {
            self.field.axpy(&mut v, *c, row);
        }
        v
    }

    /// Adds `v`, keeping the basis reduced. Returns whether the dimension grew.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        let f = self.field;
        let mut r = self.reduce(v);
        let Some(pc) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(r[pc]);
        f.scale(&mut r, inv);
        for row in self.rows.iter_mut() {
            let c = row[pc];
            if c != 0 {
                f.axpy(row, f.neg(c), &r);
            }
        }
        let pos = self.pivots.partition_point(|&p| p < pc);
        self.pivots.insert(pos, pc);
        self.rows.insert(pos, r);
        true
    }

    /// Coordinates not used as pivots; unit vectors there span a complement.
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&i| !is_pivot[i]).collect()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_row_vectors(self.field, self.ambient, &self.rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn brute_kernel_f2(m: &Matrix) -> Vec<Vec<u32>> {
        let n = m.cols();
        (0u32..1 << n)
            .map(|bits| (0..n).map(|i| (bits >> i) & 1).collect::<Vec<u32>>())
            .filter(|v| m.mul_vec(v).iter().all(|&x| x == 0))
            .collect()
    }

    #[test]
    fn prime_field_rejects_composites() {
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new(7919).is_ok());
        assert_eq!(PrimeField::new(1), Err(LinAlgError::NotPrime(1)));
        assert_eq!(PrimeField::new(9), Err(LinAlgError::NotPrime(9)));
        assert!(matches!(
            PrimeField::new(1 << 40),
            Err(LinAlgError::ModulusTooLarge(_))
        ));
    }

    #[test]
    fn field_inverses() {
        let k = f(7);
        for a in 1..7 {
            assert_eq!(k.mul(a, k.inv(a)), 1);
        }
    }

    #[test]
    fn rref_identity_and_zero() {
        let k = f(2);
        let id = Matrix::identity(k, 3);
        let r = id.rref();
        assert_eq!(r.reduced, id);
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivot_cols, vec![0, 1, 2]);

        let z = Matrix::zeros(k, 2, 4);
        let r = z.rref();
        assert_eq!(r.reduced, z);
        assert_eq!(r.rank, 0);
        assert!(r.pivot_cols.is_empty());
    }

    #[test]
    fn rref_all_ones_over_f2() {
        let k = f(2);
        let m = Matrix::from_rows(k, &[vec![1, 1], vec![1, 1]]).unwrap();
        let r = m.rref();
        assert_eq!(
            r.reduced,
            Matrix::from_rows(k, &[vec![1, 1], vec![0, 0]]).unwrap()
        );
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn kernel_examples() {
        let k = f(2);
        assert_eq!(Matrix::identity(k, 4).kernel_basis().cols(), 0);
        assert_eq!(Matrix::zeros(k, 2, 3).kernel_basis().cols(), 3);

        let m = Matrix::from_rows(k, &[vec![1, 1]]).unwrap();
        let kb = m.kernel_basis();
        assert_eq!(kb.cols(), 1);
        assert_eq!(kb.column(0), vec![1, 1]);
        // exhaustive: the only nonzero null vector of [1 1] in F_2^2 is (1,1)
        let brute: Vec<_> = brute_kernel_f2(&m)
            .into_iter()
            .filter(|v| v.iter().any(|&x| x != 0))
            .collect();
        assert_eq!(brute, vec![vec![1, 1]]);
    }

    #[test]
    fn solve_examples() {
        let k = f(3);
        let id = Matrix::identity(k, 3);
        assert_eq!(id.solve(&[2, 0, 1]).unwrap(), Some(vec![2, 0, 1]));

        let z = Matrix::zeros(k, 2, 2);
        assert_eq!(z.solve(&[1, 0]).unwrap(), None);

        let a = Matrix::from_rows(k, &[vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(a.solve(&[2, 1]).unwrap(), Some(vec![1, 1]));

        assert!(matches!(
            a.solve(&[1]),
            Err(LinAlgError::DimensionMismatch(_))
        ));
    }

    #[test]
    fn right_inverse_and_inverse() {
        let k = f(5);
        let a = Matrix::from_rows(k, &[vec![1, 2, 0], vec![0, 1, 3]]).unwrap();
        let x = a.right_inverse().unwrap();
        assert_eq!(a.mul(&x), Matrix::identity(k, 2));
        let sq = Matrix::from_rows(k, &[vec![2, 1], vec![1, 1]]).unwrap();
        let inv = sq.inverse().unwrap();
        assert_eq!(sq.mul(&inv), Matrix::identity(k, 2));
        let singular = Matrix::from_rows(k, &[vec![1, 2], vec![2, 4]]).unwrap();
        assert!(singular.inverse().is_none());
        assert!(!singular.is_invertible());
    }

    #[test]
    fn subspace_insert_matches_span() {
        let k = f(3);
        let vs = vec![vec![1, 2, 0, 1], vec![0, 1, 1, 0], vec![1, 0, 2, 1]];
        let spanned = Subspace::span(k, 4, vs.clone());
        let mut inc = Subspace::zero(k, 4);
        for v in &vs {
            inc.insert(v);
        }
        assert_eq!(spanned, inc);
        for v in &vs {
            let c = spanned.coords(v).unwrap();
            assert_eq!(&spanned.combine(&c), v);
        }
        assert_eq!(
            spanned.dim() + spanned.complement_indices().len(),
            spanned.ambient()
        );
    }

    #[test]
    fn kron_shape() {
        let k = f(2);
        let a = Matrix::from_rows(k, &[vec![1, 1], vec![0, 1]]).unwrap();
        let b = Matrix::identity(k, 3);
        let c = a.kron(&b);
        assert_eq!((c.rows(), c.cols()), (6, 6));
        assert_eq!(c.get(0, 3), 1);
        assert_eq!(c.get(3, 0), 0);
    }
}
