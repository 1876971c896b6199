//! Dense exact linear algebra: echelon forms, kernels, linear solves and a
//! lattice of subspaces with canonical bases.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::scalar::Field;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    /// Builds a matrix from row vectors. All rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<F>>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: row.len() });
            }
            data.extend(row);
        }
        Ok(Matrix { rows: nrows, cols, data })
    }

    pub fn from_columns(rows: usize, columns: &[Vec<F>]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::DimensionMismatch { expected: rows, found: c.len() });
            }
            for (i, v) in c.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        Ok(m)
    }

    /// Convenience constructor from small integers, mostly for tests.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows.iter().map(|r| r.iter().map(|&v| F::from_int(v)).collect()).collect();
        Self::from_rows(cols, rows).expect("ragged integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
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

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols, "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc + a.clone() * b.clone();
                    }
                }
                acc
            })
            .collect()
    }

    pub fn mul(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b.clone()).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() - b.clone()).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &F) -> Matrix<F> {
        let data = self.data.iter().map(|a| a.clone() * s.clone()).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix<F>) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)].clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix<F> {
        let mut out = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out[(i, j)] = self[(r0 + i, c0 + j)].clone();
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        rref_with_pivots(self).1.len()
    }

    pub fn inverse(&self) -> Option<Matrix<F>> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        aug.set_block(0, 0, self);
        aug.set_block(0, n, &Self::identity(n));
        let (r, pivots) = rref_with_pivots(&aug);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(r.block(0, n, n, n))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<F> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

impl<F: fmt::Display> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.data[i * self.cols..(i + 1) * self.cols].iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Gauss-Jordan elimination. Returns the reduced row-echelon form and its
/// pivot columns.
pub fn rref_with_pivots<F: Field>(m: &Matrix<F>) -> (Matrix<F>, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(r, p);
        let inv = F::one() / a[(r, c)].clone();
        for j in c..a.cols {
            if !a[(r, j)].is_zero() {
                a[(r, j)] = a[(r, j)].clone() * inv.clone();
            }
        }
        for i in 0..a.rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let factor = a[(i, c)].clone();
            for j in c..a.cols {
                let v = &a[(r, j)];
                if !v.is_zero() {
                    let sub = factor.clone() * v.clone();
                    a[(i, j)] = a[(i, j)].clone() - sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rref<F: Field>(m: &Matrix<F>) -> Matrix<F> {
    rref_with_pivots(m).0
}

/// Null space `{v : m v = 0}` as a canonical subspace.
pub fn kernel<F: Field>(m: &Matrix<F>) -> Subspace<F> {
    let (r, pivots) = rref_with_pivots(m);
    kernel_from_rref(&r, &pivots)
}

fn kernel_from_rref<F: Field>(r: &Matrix<F>, pivots: &[usize]) -> Subspace<F> {
    let n = r.cols;
    let mut is_pivot = vec![false; n];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let mut vectors = Vec::new();
    for f in (0..n).filter(|&c| !is_pivot[c]) {
        let mut v = vec![F::zero(); n];
        v[f] = F::one();
        for (i, &p) in pivots.iter().enumerate() {
            let x = &r[(i, f)];
            if !x.is_zero() {
                v[p] = -x.clone();
            }
        }
        vectors.push(v);
    }
    Subspace::span_unchecked(n, vectors)
}

/// Solution set of a consistent linear system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution<F: Field> {
    /// Echelon particular solution: every free variable set to zero.
    pub particular: Vec<F>,
    pub kernel: Subspace<F>,
}

/// Solves `m x = rhs`. Returns `None` when the system is inconsistent.
pub fn solve<F: Field>(m: &Matrix<F>, rhs: &[F]) -> Result<Option<Solution<F>>> {
    if rhs.len() != m.rows {
        return Err(Error::DimensionMismatch { expected: m.rows, found: rhs.len() });
    }
    let n = m.cols;
    let mut aug = Matrix::zeros(m.rows, n + 1);
    aug.set_block(0, 0, m);
    for (i, v) in rhs.iter().enumerate() {
        aug[(i, n)] = v.clone();
    }
    let (r, pivots) = rref_with_pivots(&aug);
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut particular = vec![F::zero(); n];
    for (i, &p) in pivots.iter().enumerate() {
        particular[p] = r[(i, n)].clone();
    }
    let coeff = r.block(0, 0, r.rows, n);
    Ok(Some(Solution { particular, kernel: kernel_from_rref(&coeff, &pivots) }))
}

/// A subspace of `F^n` held by its reduced row-echelon basis.
///
/// The basis is canonical, so two subspaces are equal exactly when their
/// basis grids are identical; `PartialEq` compares grids.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace<F> {
    ambient: usize,
    basis: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient).map(|i| unit_vector(ambient, i)).collect();
        Subspace { ambient, basis, pivots: (0..ambient).collect() }
    }

    pub fn span(ambient: usize, vectors: Vec<Vec<F>>) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient) {
            return Err(Error::DimensionMismatch { expected: ambient, found: v.len() });
        }
        Ok(Self::span_unchecked(ambient, vectors))
    }

    pub(crate) fn span_unchecked(ambient: usize, vectors: Vec<Vec<F>>) -> Self {
        let mut reducer = RowReducer::new(ambient);
        for v in vectors {
            reducer.push_dense(&v);
        }
        reducer.row_space()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis vectors as the rows of a matrix.
    pub fn basis_matrix(&self) -> Matrix<F> {
        Matrix::from_rows(self.ambient, self.basis.clone()).expect("basis rows have ambient length")
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v` lies
    /// outside the subspace.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        if v.len() != self.ambient {
            return None;
        }
        let coords: Vec<F> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (r, x) in residual.iter_mut().zip(b) {
                if !x.is_zero() {
                    *r = r.clone() - c.clone() * x.clone();
                }
            }
        }
        residual.iter().all(|x| x.is_zero()).then_some(coords)
    }

    pub fn contains_vector(&self, v: &[F]) -> bool {
        self.coordinates(v).is_some()
    }

    /// `true` iff every basis vector of `other` lies in `self`.
    pub fn contains(&self, other: &Subspace<F>) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(other.basis.iter().all(|v| self.contains_vector(v)))
    }

    pub fn sum(&self, other: &Subspace<F>) -> Result<Subspace<F>> {
        self.check_ambient(other)?;
        let vectors = self.basis.iter().chain(&other.basis).cloned().collect();
        Ok(Self::span_unchecked(self.ambient, vectors))
    }

    /// Intersection via the doubled-basis method: solve `Σ sᵢuᵢ = Σ tⱼvⱼ`.
    pub fn intersect(&self, other: &Subspace<F>) -> Result<Subspace<F>> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.ambient));
        }
        let du = self.dim();
        let mut columns: Vec<Vec<F>> = self.basis.clone();
        columns.extend(other.basis.iter().map(|v| v.iter().map(|x| -x.clone()).collect()));
        let m = Matrix::from_columns(self.ambient, &columns)?;
        let rel = kernel(&m);
        let vectors = rel
            .basis
            .iter()
            .map(|st| combine(self.ambient, &st[..du], &self.basis))
            .collect();
        Ok(Self::span_unchecked(self.ambient, vectors))
    }

    pub fn equals(&self, other: &Subspace<F>) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self == other)
    }

    /// A matrix whose kernel is exactly this subspace.
    pub fn constraint_matrix(&self) -> Matrix<F> {
        let ann = kernel(&self.basis_matrix_or_empty());
        Matrix::from_rows(self.ambient, ann.basis).expect("annihilator rows have ambient length")
    }

    fn basis_matrix_or_empty(&self) -> Matrix<F> {
        if self.basis.is_empty() {
            Matrix::zeros(0, self.ambient)
        } else {
            self.basis_matrix()
        }
    }

    /// `{x : map·x ∈ self}`.
    pub fn preimage(&self, map: &Matrix<F>) -> Result<Subspace<F>> {
        if map.rows() != self.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: map.rows() });
        }
        let c = self.constraint_matrix();
        if c.rows() == 0 {
            return Ok(Subspace::full(map.cols()));
        }
        Ok(kernel(&c.mul(map)))
    }

    /// Image of this subspace under `map`.
    pub fn image(&self, map: &Matrix<F>) -> Result<Subspace<F>> {
        if map.cols() != self.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: map.cols() });
        }
        let vectors = self.basis.iter().map(|v| map.mul_vec(v)).collect();
        Ok(Self::span_unchecked(map.rows(), vectors))
    }

    fn check_ambient(&self, other: &Subspace<F>) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: other.ambient });
        }
        Ok(())
    }
}

impl<F: fmt::Display> fmt::Debug for Subspace<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}) [", self.basis.len(), self.ambient)?;
        for b in &self.basis {
            let row: Vec<String> = b.iter().map(|v| v.to_string()).collect();
            write!(f, " ({})", row.join(", "))?;
        }
        write!(f, " ]")
    }
}

pub fn unit_vector<F: Field>(n: usize, i: usize) -> Vec<F> {
    let mut v = vec![F::zero(); n];
    v[i] = F::one();
    v
}

/// `Σ coeffs[i] · vectors[i]`.
pub fn combine<F: Field>(n: usize, coeffs: &[F], vectors: &[Vec<F>]) -> Vec<F> {
    let mut out = vec![F::zero(); n];
    for (c, v) in coeffs.iter().zip(vectors) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            if !x.is_zero() {
                *o = o.clone() + c.clone() * x.clone();
            }
        }
    }
    out
}

pub type SparseRow<F> = Vec<(usize, F)>;

/// Incremental sparse elimination.
///
/// Rows are reduced against the current echelon basis as they arrive, so
/// very tall constraint systems never need to be materialized. Exact
/// duplicates are dropped before reduction.
#[derive(Clone, Debug)]
pub struct RowReducer<F> {
    cols: usize,
    echelon: BTreeMap<usize, SparseRow<F>>,
    seen: HashSet<SparseRow<F>>,
}

impl<F: Field> RowReducer<F> {
    pub fn new(cols: usize) -> Self {
        RowReducer { cols, echelon: BTreeMap::new(), seen: HashSet::new() }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.echelon.len()
    }

    pub fn is_full_rank(&self) -> bool {
        self.echelon.len() == self.cols
    }

    pub fn push_dense(&mut self, row: &[F]) -> bool {
        debug_assert_eq!(row.len(), self.cols);
        let sparse = row
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (i, v.clone()))
            .collect();
        self.push(sparse)
    }

    /// Adds a row given as `(column, value)` pairs. Columns may repeat and
    /// appear in any order. Returns `true` if the rank grew.
    pub fn push(&mut self, row: SparseRow<F>) -> bool {
        let mut row = normalize_sparse(row);
        if row.is_empty() || self.is_full_rank() {
            return false;
        }
        if !self.seen.insert(row.clone()) {
            return false;
        }
        loop {
            let Some((lead, coef)) = row.first().cloned() else {
                return false;
            };
            match self.echelon.get(&lead) {
                Some(pivot_row) => row = axpy_sparse(&row, &-coef, pivot_row),
                None => {
                    let inv = F::one() / coef;
                    let scaled = row.into_iter().map(|(c, v)| (c, v * inv.clone())).collect();
                    self.echelon.insert(lead, scaled);
                    return true;
                }
            }
        }
    }

    /// The reduced row-echelon form of everything pushed so far.
    pub fn rref(&self) -> (Matrix<F>, Vec<usize>) {
        let mut rows: Vec<(usize, SparseRow<F>)> =
            self.echelon.iter().map(|(&p, r)| (p, r.clone())).collect();
        for i in (0..rows.len()).rev() {
            let (pivot, pivot_row) = rows[i].clone();
            for (_, row) in rows.iter_mut().take(i) {
                if let Some(c) = sparse_get(row, pivot) {
                    *row = axpy_sparse(row, &-c, &pivot_row);
                }
            }
        }
        let mut m = Matrix::zeros(rows.len(), self.cols);
        let mut pivots = Vec::with_capacity(rows.len());
        for (i, (p, row)) in rows.into_iter().enumerate() {
            pivots.push(p);
            for (c, v) in row {
                m[(i, c)] = v;
            }
        }
        (m, pivots)
    }

    pub fn row_space(&self) -> Subspace<F> {
        let (m, pivots) = self.rref();
        let basis = m.to_rows();
        Subspace { ambient: self.cols, basis, pivots }
    }

    /// Null space of the accumulated system.
    pub fn kernel(&self) -> Subspace<F> {
        let (m, pivots) = self.rref();
        kernel_from_rref(&m, &pivots)
    }
}

fn normalize_sparse<F: Field>(mut row: SparseRow<F>) -> SparseRow<F> {
    row.sort_by_key(|(c, _)| *c);
    let mut out: SparseRow<F> = Vec::with_capacity(row.len());
    for (c, v) in row {
        match out.last_mut() {
            Some((lc, lv)) if *lc == c => *lv = lv.clone() + v,
            _ => out.push((c, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

fn sparse_get<F: Field>(row: &SparseRow<F>, col: usize) -> Option<F> {
    row.binary_search_by_key(&col, |(c, _)| *c).ok().map(|i| row[i].1.clone())
}

/// `x + a·y` for sorted sparse rows.
fn axpy_sparse<F: Field>(x: &SparseRow<F>, a: &F, y: &SparseRow<F>) -> SparseRow<F> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j == y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i == x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push(x[i].clone());
            i += 1;
        } else if take_y {
            out.push((y[j].0, a.clone() * y[j].1.clone()));
            j += 1;
        } else {
            let v = x[i].1.clone() + a.clone() * y[j].1.clone();
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}
