//! Exact linear algebra over GF(p).
//!
//! Vectors are plain `Vec<u32>` of residues in `[0, p)`. Matrices act on
//! column vectors, so the matrix of a map `B -> A` has `dim A` rows and
//! `dim B` columns. Subspaces are stored by their reduced row-echelon basis,
//! which makes equality of subspaces equality of representations.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper bound on the number of items any enumeration oracle may produce.
pub const ENUMERATION_BOUND: u128 = 1_000_000;

/// The prime field GF(p), restricted to the small primes the checkers support.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fp {
    p: u32,
}

impl Fp {
    pub const SUPPORTED: [u32; 4] = [2, 3, 5, 7];

    pub fn new(p: u32) -> Result<Self> {
        if Self::SUPPORTED.contains(&p) {
            Ok(Fp { p })
        } else {
            Err(Error::UnsupportedPrime(p))
        }
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        (a + b) % self.p
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        (a + self.p - b) % self.p
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        (a * b) % self.p
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        (self.p - a) % self.p
    }

    /// Multiplicative inverse by Fermat. Panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(a % self.p != 0, "inverse of zero in GF({})", self.p);
        let mut result = 1;
        for _ in 0..self.p - 2 {
            result = self.mul(result, a);
        }
        result
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.p)
    }
}

pub fn is_zero_vector(v: &[u32]) -> bool {
    v.iter().all(|&x| x == 0)
}

pub fn unit_vector(n: usize, k: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[k] = 1;
    v
}

pub fn add_vectors(field: Fp, u: &[u32], v: &[u32]) -> Vec<u32> {
    assert_eq!(u.len(), v.len());
    u.iter().zip(v).map(|(&a, &b)| field.add(a, b)).collect()
}

pub fn scale_vector(field: Fp, c: u32, v: &[u32]) -> Vec<u32> {
    v.iter().map(|&a| field.mul(c, a)).collect()
}

/// Dense matrix over GF(p), row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Fp,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix<{}>{}x{}[", self.field, self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(field: Fp, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Fp, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for k in 0..n {
            m.set(k, k, 1);
        }
        m
    }

    /// Builds a matrix from row-major residues; entries are reduced mod p.
    pub fn from_flat(field: Fp, rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries for a {}x{} matrix, got {}",
                rows * cols,
                rows,
                cols,
                entries.len()
            )));
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            data: entries.iter().map(|&x| field.reduce(x)).collect(),
        })
    }

    /// Builds a matrix from rows; `cols` is needed so that zero-row matrices
    /// keep their shape.
    pub fn from_rows(field: Fp, cols: usize, rows: &[Vec<u32>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (k, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {} has length {}, expected {}",
                    k,
                    row.len(),
                    cols
                )));
            }
            data.extend(row.iter().map(|&x| x % field.p()));
        }
        Ok(Matrix {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(field: Fp, rows: usize, columns: &[Vec<u32>]) -> Result<Self> {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch(format!(
                    "column {} has length {}, expected {}",
                    j,
                    col.len(),
                    rows
                )));
            }
            for (i, &x) in col.iter().enumerate() {
                m.set(i, j, x % field.p());
            }
        }
        Ok(m)
    }

    #[inline]
    pub fn field(&self) -> Fp {
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
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }
    #[inline]
    pub fn set(&mut self, r: usize, c: usize, x: u32) {
        self.data[r * self.cols + c] = x % self.field.p();
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column_vectors(&self) -> Vec<Vec<u32>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn entries(&self) -> &[u32] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.field, other.field);
        assert_eq!(
            self.cols, other.rows,
            "cannot multiply {}x{} by {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let p = self.field.p();
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                let orow = other.row(k);
                let start = r * out.cols;
                for (c, &b) in orow.iter().enumerate() {
                    out.data[start + c] = (out.data[start + c] + a * b) % p;
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols, "vector length does not match columns");
        let p = self.field.p();
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| (acc + a * b) % p)
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f.sub(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: u32) -> Matrix {
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(a, c % f.p())).collect(),
        }
    }

    pub fn pow(&self, k: usize) -> Matrix {
        assert!(self.is_square());
        let mut result = Matrix::identity(self.field, self.rows);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        result
    }

    /// Block-diagonal sum.
    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.field, other.field);
        let mut out = Matrix::zeros(
            self.field,
            self.rows + other.rows,
            self.cols + other.cols,
        );
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c));
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                out.set(self.rows + r, self.cols + c, other.get(r, c));
            }
        }
        out
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut out = Matrix::zeros(self.field, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c));
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.get(r, c));
            }
        }
        out
    }

    /// Reduced row-echelon form together with the pivot columns.
    pub fn rref_with_pivots(&self) -> (Matrix, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(found) = (lead..m.rows).find(|&r| m.get(r, c) != 0) else {
                continue;
            };
            m.swap_rows(lead, found);
            let inv = f.inv(m.get(lead, c));
            for k in 0..m.cols {
                let x = m.get(lead, k);
                m.set(lead, k, f.mul(x, inv));
            }
            for r in 0..m.rows {
                if r == lead {
                    continue;
                }
                let factor = m.get(r, c);
                if factor == 0 {
                    continue;
                }
                for k in c..m.cols {
                    let x = f.sub(m.get(r, k), f.mul(factor, m.get(lead, k)));
                    m.set(r, k, x);
                }
            }
            pivots.push(c);
            lead += 1;
        }
        (m, pivots)
    }

    pub fn rref(&self) -> Matrix {
        self.rref_with_pivots().0
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref_with_pivots().1.len()
    }

    /// Null space `{x : M x = 0}`.
    pub fn kernel(&self) -> Subspace {
        let f = self.field;
        let (r, pivots) = self.rref_with_pivots();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![0; self.cols];
            v[free] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.get(row, free));
            }
            basis.push(v);
        }
        Subspace::span(f, self.cols, &basis)
    }

    /// Column space.
    pub fn image(&self) -> Subspace {
        Subspace::span(self.field, self.rows, &self.column_vectors())
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(self.field, n));
        let (r, pivots) = aug.rref_with_pivots();
        if pivots.len() < n || (n > 0 && pivots[n - 1] != n - 1) {
            return None;
        }
        let mut inv = Matrix::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j));
            }
        }
        Some(inv)
    }

    /// One solution of `M x = rhs`, if any.
    pub fn solve(&self, rhs: &[u32]) -> Option<Vec<u32>> {
        let column = Matrix::from_columns(self.field, self.rows, &[rhs.to_vec()]).ok()?;
        let (r, pivots) = self.hstack(&column).rref_with_pivots();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0; self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, self.cols);
        }
        Some(x)
    }

    /// Restricts columns to the given indices.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows, cols.len());
        for r in 0..self.rows {
            for (k, &c) in cols.iter().enumerate() {
                out.set(r, k, self.get(r, c));
            }
        }
        out
    }
}

/// A subspace of `GF(p)^n`, stored by its reduced row-echelon basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: Fp,
    ambient: usize,
    basis: Matrix,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}: {:?})", self.dim(), self.ambient, self.basis)
    }
}

impl Subspace {
    pub fn zero(field: Fp, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            basis: Matrix::zeros(field, 0, ambient),
        }
    }

    pub fn full(field: Fp, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            basis: Matrix::identity(field, ambient),
        }
    }

    /// Span of the given vectors (each of length `ambient`).
    pub fn span(field: Fp, ambient: usize, vectors: &[Vec<u32>]) -> Self {
        let m = Matrix::from_rows(field, ambient, vectors).expect("vector length mismatch");
        Self::from_rows_matrix(m)
    }

    fn from_rows_matrix(m: Matrix) -> Self {
        let field = m.field();
        let ambient = m.cols();
        let (r, pivots) = m.rref_with_pivots();
        let rows: Vec<Vec<u32>> = (0..pivots.len()).map(|k| r.row(k).to_vec()).collect();
        Subspace {
            field,
            ambient,
            basis: Matrix::from_rows(field, ambient, &rows).unwrap(),
        }
    }

    pub fn field(&self) -> Fp {
        self.field
    }
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }
    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }
    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Canonical basis rows (reduced echelon).
    pub fn basis(&self) -> Vec<Vec<u32>> {
        self.basis.row_vectors()
    }

    pub fn basis_matrix(&self) -> &Matrix {
        &self.basis
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.p(),
                right: other.field.p(),
            });
        }
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(format!(
                "ambient dimensions {} and {}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.ambient);
        // Reduce v against the echelon basis.
        let f = self.field;
        let mut w = v.iter().map(|x| x % f.p()).collect::<Vec<_>>();
        for r in 0..self.dim() {
            let row = self.basis.row(r);
            let pivot = row.iter().position(|&x| x != 0).unwrap();
            let c = w[pivot];
            if c != 0 {
                for (k, &x) in row.iter().enumerate() {
                    w[k] = f.sub(w[k], f.mul(c, x));
                }
            }
        }
        is_zero_vector(&w)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let mut rows = self.basis();
        rows.extend(other.basis());
        Ok(Subspace::span(self.field, self.ambient, &rows))
    }

    /// Intersection by the Zassenhaus construction.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let n = self.ambient;
        let mut rows = Vec::with_capacity(self.dim() + other.dim());
        for u in self.basis() {
            let mut r = u.clone();
            r.extend(u);
            rows.push(r);
        }
        for v in other.basis() {
            let mut r = v;
            r.extend(std::iter::repeat(0).take(n));
            rows.push(r);
        }
        let m = Matrix::from_rows(self.field, 2 * n, &rows)?;
        let (r, pivots) = m.rref_with_pivots();
        let inter: Vec<Vec<u32>> = pivots
            .iter()
            .enumerate()
            .filter(|(_, &pc)| pc >= n)
            .map(|(k, _)| r.row(k)[n..].to_vec())
            .collect();
        Ok(Subspace::span(self.field, n, &inter))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(self.basis().iter().all(|v| other.contains(v)))
    }

    pub fn subspace_eq(&self, other: &Subspace) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(self == other)
    }

    /// First basis vector of `self` that is not in `other`.
    pub fn witness_not_in(&self, other: &Subspace) -> Option<Vec<u32>> {
        self.basis().into_iter().find(|v| !other.contains(v))
    }

    /// Image under a linear map whose matrix has `ambient` columns.
    pub fn image_under(&self, map: &Matrix) -> Subspace {
        assert_eq!(map.cols(), self.ambient);
        let imgs: Vec<Vec<u32>> = self.basis().iter().map(|v| map.apply(v)).collect();
        Subspace::span(self.field, map.rows(), &imgs)
    }

    /// Preimage `{x : map x in self}` for a map whose matrix has `ambient` rows.
    pub fn preimage_under(&self, map: &Matrix) -> Subspace {
        assert_eq!(map.rows(), self.ambient);
        let annihilator = self.annihilator();
        if annihilator.is_zero() {
            return Subspace::full(self.field, map.cols());
        }
        annihilator.basis_matrix().mul(map).kernel()
    }

    /// Orthogonal complement under the standard dot product.
    pub fn annihilator(&self) -> Subspace {
        self.basis.kernel()
    }

    /// Vectors extending a basis of `self` to a basis of `sup`.
    pub fn complement_in(&self, sup: &Subspace) -> Result<Vec<Vec<u32>>> {
        self.check_compatible(sup)?;
        let mut current = self.clone();
        let mut extra = Vec::new();
        for v in sup.basis() {
            if !current.contains(&v) {
                current = current.sum(&Subspace::span(self.field, self.ambient, &[v.clone()]))?;
                extra.push(v);
            }
        }
        Ok(extra)
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        if !self.contains(v) {
            return None;
        }
        // In reduced echelon form the coefficient of row r is v at pivot r.
        Some(
            (0..self.dim())
                .map(|r| {
                    let row = self.basis.row(r);
                    let pivot = row.iter().position(|&x| x != 0).unwrap();
                    v[pivot] % self.field.p()
                })
                .collect(),
        )
    }

    /// Every vector of the subspace, exactly once.
    pub fn enumerate_vectors(&self) -> Result<Vec<Vec<u32>>> {
        let count = (self.field.p() as u128).pow(self.dim() as u32);
        if count > ENUMERATION_BOUND {
            return Err(Error::OracleTooLarge {
                what: format!("vectors of a {}-dimensional subspace", self.dim()),
                count,
                bound: ENUMERATION_BOUND,
            });
        }
        let f = self.field;
        let basis = self.basis();
        let mut out = Vec::with_capacity(count as usize);
        let mut coeffs = vec![0u32; basis.len()];
        loop {
            let mut v = vec![0; self.ambient];
            for (c, b) in coeffs.iter().zip(&basis) {
                if *c != 0 {
                    for (k, &x) in b.iter().enumerate() {
                        v[k] = f.add(v[k], f.mul(*c, x));
                    }
                }
            }
            out.push(v);
            if !odometer(&mut coeffs, f.p()) {
                break;
            }
        }
        Ok(out)
    }
}

/// Advances a little-endian base-p counter; returns false on wrap-around.
fn odometer(digits: &mut [u32], base: u32) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// Gaussian binomial coefficient `[n choose k]_p`.
pub fn gaussian_binomial(n: usize, k: usize, p: u32) -> u128 {
    if k > n {
        return 0;
    }
    let q = p as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    num / den
}

/// Every `k`-dimensional subspace of `GF(p)^n`, exactly once, built from
/// reduced row-echelon patterns.
pub fn enumerate_subspaces(field: Fp, n: usize, k: usize) -> Result<Vec<Subspace>> {
    let count = gaussian_binomial(n, k, field.p());
    if count > ENUMERATION_BOUND {
        return Err(Error::OracleTooLarge {
            what: format!("{}-dimensional subspaces of GF({})^{}", k, field.p(), n),
            count,
            bound: ENUMERATION_BOUND,
        });
    }
    let mut out = Vec::with_capacity(count as usize);
    for pivots in combinations(n, k) {
        // Free slots: row r, column c > pivots[r], c not a pivot column.
        let slots: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &pc)| {
                let pivots = &pivots;
                (pc + 1..n)
                    .filter(move |c| !pivots.contains(c))
                    .map(move |c| (r, c))
            })
            .collect();
        let mut digits = vec![0u32; slots.len()];
        loop {
            let mut rows = vec![vec![0u32; n]; k];
            for (r, &pc) in pivots.iter().enumerate() {
                rows[r][pc] = 1;
            }
            for (&(r, c), &d) in slots.iter().zip(&digits) {
                rows[r][c] = d;
            }
            out.push(Subspace {
                field,
                ambient: n,
                basis: Matrix::from_rows(field, n, &rows)?,
            });
            if !odometer(&mut digits, field.p()) {
                break;
            }
        }
    }
    Ok(out)
}

/// Every subspace of `GF(p)^n` of every dimension.
pub fn enumerate_all_subspaces(field: Fp, n: usize) -> Result<Vec<Subspace>> {
    let total: u128 = (0..=n).map(|k| gaussian_binomial(n, k, field.p())).sum();
    if total > ENUMERATION_BOUND {
        return Err(Error::OracleTooLarge {
            what: format!("subspaces of GF({})^{}", field.p(), n),
            count: total,
            bound: ENUMERATION_BOUND,
        });
    }
    let mut out = Vec::new();
    for k in 0..=n {
        out.extend(enumerate_subspaces(field, n, k)?);
    }
    Ok(out)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> Fp {
        Fp::new(p).unwrap()
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = Matrix::from_flat(f(3), 2, 3, &[1, 2, 0, 0, 0, 1]).unwrap();
        let x = a.solve(&[2, 1]).unwrap();
        assert_eq!(a.apply(&x), vec![2, 1]);
        let b = Matrix::from_flat(f(3), 2, 1, &[1, 1]).unwrap();
        assert_eq!(b.solve(&[1, 2]), None);
    }

    fn m(p: u32, rows: &[&[u32]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(f(p), cols, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
            .unwrap()
    }

    #[test]
    fn unsupported_prime_rejected() {
        assert_eq!(Fp::new(4), Err(Error::UnsupportedPrime(4)));
        assert_eq!(Fp::new(11), Err(Error::UnsupportedPrime(11)));
    }

    #[test]
    fn rref_identity_and_zero() {
        let id = Matrix::identity(f(2), 3);
        assert_eq!(id.rref(), id);
        let z = Matrix::zeros(f(2), 2, 4);
        assert_eq!(z.rref(), z);
    }

    #[test]
    fn rref_rank_two_mod_three() {
        // second row is twice the first mod 3
        let a = m(3, &[&[1, 2, 0], &[2, 1, 0], &[0, 0, 1]]);
        let r = a.rref();
        assert_eq!(r, m(3, &[&[1, 2, 0], &[0, 0, 1], &[0, 0, 0]]));
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn kernel_and_image_basics() {
        let z = Matrix::zeros(f(5), 3, 3);
        assert_eq!(z.kernel().dim(), 3);
        assert_eq!(z.image().dim(), 0);
        assert!(Matrix::identity(f(5), 3).kernel().is_zero());

        let a = m(2, &[&[1, 1], &[1, 1]]);
        assert_eq!(a.rank(), 1);
        assert_eq!(a.kernel(), Subspace::span(f(2), 2, &[vec![1, 1]]));
    }

    #[test]
    fn intersection_of_coordinate_planes() {
        let u = Subspace::span(f(2), 3, &[vec![1, 0, 0], vec![0, 1, 0]]);
        let v = Subspace::span(f(2), 3, &[vec![0, 1, 0], vec![0, 0, 1]]);
        let i = u.intersect(&v).unwrap();
        assert_eq!(i, Subspace::span(f(2), 3, &[vec![0, 1, 0]]));
        assert_eq!(u.intersect(&u).unwrap(), u);
        assert_eq!(u.sum(&Subspace::zero(f(2), 3)).unwrap(), u);
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let u = Subspace::full(f(3), 2);
        let v = Subspace::full(f(3), 3);
        assert!(matches!(u.sum(&v), Err(Error::DimensionMismatch(_))));
        assert!(matches!(u.intersect(&v), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn enumerate_small_cases() {
        let zero = Subspace::zero(f(3), 4);
        assert_eq!(zero.enumerate_vectors().unwrap(), vec![vec![0, 0, 0, 0]]);
        assert_eq!(enumerate_subspaces(f(2), 2, 1).unwrap().len(), 3);
        let planes = enumerate_subspaces(f(3), 3, 2).unwrap();
        assert_eq!(planes.len(), 13);
        assert_eq!(gaussian_binomial(3, 2, 3), 13);
        let mut dedup = planes.clone();
        dedup.sort_by_key(|s| format!("{:?}", s));
        dedup.dedup();
        assert_eq!(dedup.len(), 13);
    }

    #[test]
    fn enumeration_bound_enforced() {
        let big = Subspace::full(f(7), 8);
        assert!(matches!(big.enumerate_vectors(), Err(Error::OracleTooLarge { .. })));
        assert!(matches!(
            enumerate_subspaces(f(7), 8, 4),
            Err(Error::OracleTooLarge { .. })
        ));
    }

    #[test]
    fn preimage_and_inverse() {
        let a = m(5, &[&[1, 2], &[3, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(f(5), 2));
        let line = Subspace::span(f(5), 2, &[vec![1, 0]]);
        let pre = line.preimage_under(&a);
        for v in pre.basis() {
            assert!(line.contains(&a.apply(&v)));
        }
        assert_eq!(pre.dim(), 1);
        assert!(m(2, &[&[1, 1], &[1, 1]]).inverse().is_none());
    }

    #[test]
    fn zero_dimensional_objects() {
        let m0 = Matrix::zeros(f(2), 0, 3);
        assert_eq!(m0.rank(), 0);
        assert_eq!(m0.kernel().dim(), 3);
        let m1 = Matrix::zeros(f(2), 3, 0);
        assert_eq!(m1.kernel().dim(), 0);
        assert_eq!(m1.image().dim(), 0);
        assert_eq!(Subspace::zero(f(2), 0).enumerate_vectors().unwrap().len(), 1);
    }
}
