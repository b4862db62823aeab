//! Dense matrices and subspaces over a [`Field`].

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::galois::{Elem, Field};

#[derive(Clone)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
    field: Field,
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
            && self.field == other.field
    }
}

impl Eq for Matrix {}

impl Hash for Matrix {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
        self.cols.hash(state);
        self.data.hash(state);
    }
}

impl PartialOrd for Matrix {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Matrix {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.rows, self.cols, &self.data).cmp(&(other.rows, other.cols, &other.data))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![Elem::ZERO; rows * cols],
            field: field.clone(),
        }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Elem::ONE);
        }
        m
    }

    /// Row-major construction. Panics if `data.len() != rows * cols`.
    pub fn new(field: &Field, rows: usize, cols: usize, data: Vec<Elem>) -> Matrix {
        assert_eq!(data.len(), rows * cols, "entry count does not match shape");
        Matrix {
            rows,
            cols,
            data,
            field: field.clone(),
        }
    }

    /// Row-major construction from integer encodings.
    pub fn from_ints(field: &Field, rows: usize, cols: usize, data: &[u32]) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        let data = data.iter().map(|&v| field.elem(v)).collect::<Result<_>>()?;
        Ok(Matrix {
            rows,
            cols,
            data,
            field: field.clone(),
        })
    }

    pub fn from_rows(field: &Field, rows: &[Vec<Elem>]) -> Result<Matrix> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data: rows.concat(),
            field: field.clone(),
        })
    }

    /// `1 × len` row vector.
    pub fn row_vector(field: &Field, v: &[Elem]) -> Matrix {
        Matrix::new(field, 1, v.len(), v.to_vec())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Elem] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn map(&self, f: impl Fn(Elem) -> Elem) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&e| f(e)).collect(),
            field: self.field.clone(),
        }
    }

    pub fn scale(&self, s: Elem) -> Matrix {
        self.map(|e| self.field.mul(s, e))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Entry-wise `σ` without transposing.
    pub fn sigma(&self) -> Matrix {
        self.map(|e| self.field.sigma(e))
    }

    /// `M^Σ = (m_ji^σ)`.
    pub fn sigma_transpose(&self) -> Matrix {
        self.transpose().sigma()
    }

    /// `M = M^Σ`. Non-square matrices are never Hermitian.
    pub fn is_hermitian(&self) -> bool {
        self.is_square() && *self == self.sigma_transpose()
    }

    /// Sub-block with rows `r0..r1` and columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Matrix {
        assert!(r0 <= r1 && r1 <= self.rows && c0 <= c1 && c1 <= self.cols);
        let mut out = Matrix::zeros(&self.field, r1 - r0, c1 - c0);
        for i in r0..r1 {
            for j in c0..c1 {
                out.set(i - r0, j - c0, self.get(i, j));
            }
        }
        out
    }

    pub fn select_rows(&self, r0: usize, r1: usize) -> Matrix {
        self.block(r0, r1, 0, self.cols)
    }

    /// Horizontal augmentation `(self, other)`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut data = Vec::with_capacity(self.rows * (self.cols + other.cols));
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Matrix::new(&self.field, self.rows, self.cols + other.cols, data)
    }

    /// Vertical stacking `(self / other)`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix::new(&self.field, self.rows + other.rows, self.cols, data)
    }

    /// `(a b / c d)` from four blocks.
    pub fn from_blocks(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Matrix {
        a.hstack(b).vstack(&c.hstack(d))
    }

    /// Reduced row echelon form and rank. Zero rows are kept at the bottom.
    pub fn rref(&self) -> (Matrix, usize) {
        let f = &self.field;
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(piv) = (rank..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if piv != rank {
                for j in 0..m.cols {
                    m.data.swap(piv * m.cols + j, rank * m.cols + j);
                }
            }
            let inv = f.inv(m.get(rank, col)).expect("pivot is nonzero");
            for j in col..m.cols {
                let v = f.mul(inv, m.get(rank, j));
                m.set(rank, j, v);
            }
            for r in 0..m.rows {
                let factor = m.get(r, col);
                if r == rank || factor.is_zero() {
                    continue;
                }
                for j in col..m.cols {
                    let v = f.sub(m.get(r, j), f.mul(factor, m.get(rank, j)));
                    m.set(r, j, v);
                }
            }
            rank += 1;
        }
        (m, rank)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "inverse of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let (r, rank) = self.hstack(&Matrix::identity(&self.field, n)).rref();
        if rank < n || r.block(0, n, 0, n) != Matrix::identity(&self.field, n) {
            return Err(Error::Singular);
        }
        Ok(r.block(0, n, n, 2 * n))
    }

    /// Basis (as rows) of the right kernel `{z : self · z^T = 0}`.
    pub fn right_kernel(&self) -> Matrix {
        let f = &self.field;
        let (r, rank) = self.rref();
        let pivots: Vec<usize> = (0..rank)
            .map(|i| (0..self.cols).find(|&j| !r.get(i, j).is_zero()).unwrap())
            .collect();
        let free: Vec<usize> = (0..self.cols).filter(|j| !pivots.contains(j)).collect();
        let mut out = Matrix::zeros(f, free.len(), self.cols);
        for (row, &fc) in free.iter().enumerate() {
            out.set(row, fc, Elem::ONE);
            for (i, &pc) in pivots.iter().enumerate() {
                out.set(row, pc, f.neg(r.get(i, fc)));
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(v.len(), self.rows);
        let f = &self.field;
        (0..self.cols)
            .map(|j| {
                v.iter().enumerate().fold(Elem::ZERO, |acc, (i, &x)| {
                    f.add(acc, f.mul(x, self.get(i, j)))
                })
            })
            .collect()
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            entries: (0..self.rows)
                .map(|i| {
                    self.row(i)
                        .iter()
                        .map(|&e| self.field.format_elem(e))
                        .collect()
                })
                .collect(),
        }
    }

    pub fn from_json(field: &Field, json: &MatrixJson) -> Result<Matrix> {
        if json.entries.len() != json.rows || json.entries.iter().any(|r| r.len() != json.cols) {
            return Err(Error::Parse(format!(
                "entries do not form a {}x{} matrix",
                json.rows, json.cols
            )));
        }
        let data = json
            .entries
            .iter()
            .flatten()
            .map(|s| field.parse_elem(s))
            .collect::<Result<_>>()?;
        Ok(Matrix::new(field, json.rows, json.cols, data))
    }
}

/// Serialised matrix: entries are decimal strings of the field encoding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, rhs.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = f.add(out.get(i, j), f.mul(a, rhs.get(l, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }
}

impl Add for &Matrix {
    type Output = Matrix;

    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "matrix sum shape mismatch"
        );
        let f = &self.field;
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Matrix::new(f, self.rows, self.cols, data)
    }
}

impl Sub for &Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &Matrix) -> Matrix {
        self + &(-rhs)
    }
}

impl Neg for &Matrix {
    type Output = Matrix;

    fn neg(self) -> Matrix {
        self.map(|e| self.field.neg(e))
    }
}

/// A subspace of `K^d`, stored as the RREF of a basis (no zero rows).
/// Equality of subspaces is equality of these canonical bases.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
}

impl Subspace {
    /// Row space of `m`.
    pub fn row_space(m: &Matrix) -> Subspace {
        let (r, rank) = m.rref();
        Subspace {
            ambient: m.cols(),
            basis: r.select_rows(0, rank),
        }
    }

    pub fn zero(field: &Field, ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Matrix::zeros(field, 0, ambient),
        }
    }

    pub fn full(field: &Field, ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Matrix::identity(field, ambient),
        }
    }

    pub fn span(field: &Field, ambient: usize, vectors: &[Vec<Elem>]) -> Result<Subspace> {
        if vectors.is_empty() {
            return Ok(Subspace::zero(field, ambient));
        }
        let m = Matrix::from_rows(field, vectors)?;
        if m.cols() != ambient {
            return Err(Error::DimensionMismatch(
                "vector length differs from ambient".into(),
            ));
        }
        Ok(Subspace::row_space(&m))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn field(&self) -> &Field {
        self.basis.field()
    }

    /// Pivot column of each basis row.
    pub fn pivots(&self) -> Vec<usize> {
        (0..self.dim())
            .map(|i| self.basis.row(i).iter().position(|e| !e.is_zero()).unwrap())
            .collect()
    }

    fn check(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(format!(
                "ambient dimensions {} and {}",
                self.ambient, other.ambient
            )));
        }
        if self.field() != other.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn contains_vector(&self, v: &[Elem]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let stacked = self.basis.vstack(&Matrix::row_vector(self.field(), v));
        stacked.rank() == self.dim()
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check(other)?;
        Ok((0..other.dim()).all(|i| self.contains_vector(other.basis.row(i))))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        Ok(Subspace::row_space(&self.basis.vstack(&other.basis)))
    }

    /// Zassenhaus: reduce `(A A / B 0)`; rows whose left half vanishes carry
    /// a basis of the intersection in their right half.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        let f = self.field();
        let d = self.ambient;
        let top = self.basis.hstack(&self.basis);
        let bottom = other.basis.hstack(&Matrix::zeros(f, other.dim(), d));
        let (r, rank) = top.vstack(&bottom).rref();
        let rows: Vec<Vec<Elem>> = (0..rank)
            .filter(|&i| r.row(i)[..d].iter().all(|e| e.is_zero()))
            .map(|i| r.row(i)[d..].to_vec())
            .collect();
        Subspace::span(f, d, &rows)
    }

    /// Invertible `d × d` matrix whose first `dim` rows are the basis,
    /// extended greedily with standard unit vectors in index order.
    pub fn complete_basis(&self) -> Matrix {
        let f = self.field();
        let mut m = self.basis.clone();
        let mut rank = self.dim();
        for j in 0..self.ambient {
            if rank == self.ambient {
                break;
            }
            let mut e = vec![Elem::ZERO; self.ambient];
            e[j] = Elem::ONE;
            let candidate = m.vstack(&Matrix::row_vector(f, &e));
            if candidate.rank() > rank {
                m = candidate;
                rank += 1;
            }
        }
        m
    }

    /// Extends the basis of `self` by rows of `within` to a basis of `within`.
    /// Returns only the added rows.
    pub fn extend_within(&self, within: &Subspace) -> Result<Matrix> {
        self.check(within)?;
        let f = self.field();
        let mut acc = self.basis.clone();
        let mut added = Matrix::zeros(f, 0, self.ambient);
        for i in 0..within.dim() {
            let v = Matrix::row_vector(f, within.basis.row(i));
            let candidate = acc.vstack(&v);
            if candidate.rank() > acc.rows() {
                acc = candidate;
                added = added.vstack(&v);
            }
        }
        Ok(added)
    }

    /// Image under right multiplication by `m` (`x ↦ x·m`).
    pub fn map_right(&self, m: &Matrix) -> Subspace {
        Subspace::row_space(&(&self.basis * m))
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: ambient dimension, dimension, pivot pattern, then
/// entries lexicographically (which orders the free entries).
impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.ambient, self.dim())
            .cmp(&(other.ambient, other.dim()))
            .then_with(|| self.pivots().cmp(&other.pivots()))
            .then_with(|| self.basis.entries().cmp(other.basis.entries()))
    }
}

/// Gaussian binomial `[d choose m]_q`, or `None` on overflow.
pub fn gaussian_binomial(d: u32, m: u32, q: u128) -> Option<u128> {
    if m > d {
        return Some(0);
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..m {
        num = num.checked_mul(q.checked_pow(d - i)?.checked_sub(1)?)?;
        den = den.checked_mul(q.checked_pow(i + 1)?.checked_sub(1)?)?;
    }
    Some(num / den)
}

fn combinations(d: usize, m: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, d: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for j in start..d {
            cur.push(j);
            go(j + 1, d, m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, d, m, &mut Vec::with_capacity(m), &mut out);
    out
}

/// All `m`-dimensional subspaces of `K^d` in canonical order: pivot pattern
/// lexicographically, then free entries lexicographically (row-major).
pub fn enumerate_subspaces(field: &Field, d: usize, m: usize) -> Vec<Subspace> {
    let elems: Vec<Elem> = field.elements().collect();
    let q = elems.len();
    let mut out = Vec::new();
    for pivots in combinations(d, m) {
        let free: Vec<(usize, usize)> = (0..m)
            .flat_map(|i| ((pivots[i] + 1)..d).map(move |j| (i, j)))
            .filter(|(_, j)| !pivots.contains(j))
            .collect();
        let total = q.pow(free.len() as u32);
        for mut idx in 0..total {
            let mut b = Matrix::zeros(field, m, d);
            for (i, &pc) in pivots.iter().enumerate() {
                b.set(i, pc, Elem::ONE);
            }
            for &(i, j) in free.iter().rev() {
                b.set(i, j, elems[idx % q]);
                idx /= q;
            }
            out.push(Subspace {
                ambient: d,
                basis: b,
            });
        }
    }
    out
}

/// All `rows × cols` matrices in lexicographic order of their row-major entries.
pub fn enumerate_matrices(
    field: &Field,
    rows: usize,
    cols: usize,
) -> impl Iterator<Item = Matrix> + '_ {
    let q = field.order() as u64;
    let len = rows * cols;
    let total = q.pow(len as u32);
    (0..total).map(move |mut idx| {
        let mut data = vec![Elem::ZERO; len];
        for slot in data.iter_mut().rev() {
            *slot = field.elem((idx % q) as u32).unwrap();
            idx /= q;
        }
        Matrix::new(field, rows, cols, data)
    })
}
