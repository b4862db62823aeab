//! The projective line over the matrix ring `R = K^{n×n}`.
//!
//! A point `R(A,B)` is identified with the left row space of the `n × 2n`
//! matrix `(A,B)`, i.e. with an element of the Grassmannian of
//! `n`-subspaces of `K^{2n}`. Points are stored canonically (RREF), so two
//! admissible pairs that are left-proportional by a unit give equal points.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::galois::{Elem, Field};
use crate::matrix::{enumerate_matrices, enumerate_subspaces, Matrix, MatrixJson, Subspace};

/// A point of `P(R)`: an `n`-dimensional subspace of `K^{2n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubspacePoint {
    space: Subspace,
    n: usize,
}

impl SubspacePoint {
    /// Row space of an `n × 2n` matrix of rank `n`.
    pub fn from_matrix(m: &Matrix) -> Result<SubspacePoint> {
        let n = m.rows();
        if m.cols() != 2 * n {
            return Err(Error::DimensionMismatch(format!(
                "a point needs an n x 2n matrix, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        let space = Subspace::row_space(m);
        if space.dim() != n {
            return Err(Error::NotAPoint {
                rank: space.dim(),
                n,
            });
        }
        Ok(SubspacePoint { space, n })
    }

    pub fn from_subspace(space: Subspace) -> Result<SubspacePoint> {
        let d = space.ambient_dim();
        if !d.is_multiple_of(2) || space.dim() * 2 != d {
            return Err(Error::NotAPoint {
                rank: space.dim(),
                n: d / 2,
            });
        }
        Ok(SubspacePoint { n: d / 2, space })
    }

    /// `R(I,0)`.
    pub fn origin(field: &Field, n: usize) -> SubspacePoint {
        point_from_pair(&Matrix::identity(field, n), &Matrix::zeros(field, n, n))
            .expect("(I,0) has full rank")
    }

    /// `R(0,I)`.
    pub fn infinity(field: &Field, n: usize) -> SubspacePoint {
        point_from_pair(&Matrix::zeros(field, n, n), &Matrix::identity(field, n))
            .expect("(0,I) has full rank")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Field {
        self.space.field()
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    /// Canonical `n × 2n` representative.
    pub fn basis(&self) -> &Matrix {
        self.space.basis()
    }

    /// The blocks `(A, B)` of the canonical representative.
    pub fn blocks(&self) -> (Matrix, Matrix) {
        let b = self.basis();
        (
            b.block(0, self.n, 0, self.n),
            b.block(0, self.n, self.n, 2 * self.n),
        )
    }

    pub fn to_json(&self) -> MatrixJson {
        self.basis().to_json()
    }

    /// Accepts any full-rank representative and canonicalises it.
    pub fn from_json(field: &Field, json: &MatrixJson) -> Result<SubspacePoint> {
        SubspacePoint::from_matrix(&Matrix::from_json(field, json)?)
    }

    fn check(&self, other: &SubspacePoint) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!(
                "points over K^{0}x{0} and K^{1}x{1}",
                self.n, other.n
            )));
        }
        if self.field() != other.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }
}

/// `R(A,B)` for `rank(A,B) = n`.
pub fn point_from_pair(a: &Matrix, b: &Matrix) -> Result<SubspacePoint> {
    if !a.is_square() || a.rows() != b.rows() || b.rows() != b.cols() {
        return Err(Error::DimensionMismatch("A and B must be n x n".into()));
    }
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    SubspacePoint::from_matrix(&a.hstack(b))
}

/// A parameter pair `(T₁, T₂)` of Bartolone's parametrisation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BartolonePair {
    pub t1: Matrix,
    pub t2: Matrix,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct BartolonePairJson {
    pub t1: MatrixJson,
    pub t2: MatrixJson,
}

impl BartolonePair {
    pub fn new(t1: Matrix, t2: Matrix) -> Result<BartolonePair> {
        if !t1.is_square() || !t2.is_square() || t1.rows() != t2.rows() {
            return Err(Error::DimensionMismatch("T1 and T2 must be n x n".into()));
        }
        if t1.field() != t2.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(BartolonePair { t1, t2 })
    }

    pub fn n(&self) -> usize {
        self.t1.rows()
    }

    pub fn field(&self) -> &Field {
        self.t1.field()
    }

    /// The `n × 2n` representative `(T₂T₁ − I, T₂)`.
    pub fn representative(&self) -> Matrix {
        let id = Matrix::identity(self.field(), self.n());
        (&(&self.t2 * &self.t1) - &id).hstack(&self.t2)
    }

    pub fn to_json(&self) -> BartolonePairJson {
        BartolonePairJson {
            t1: self.t1.to_json(),
            t2: self.t2.to_json(),
        }
    }

    pub fn from_json(field: &Field, json: &BartolonePairJson) -> Result<BartolonePair> {
        BartolonePair::new(
            Matrix::from_json(field, &json.t1)?,
            Matrix::from_json(field, &json.t2)?,
        )
    }
}

/// `(T₁, T₂) ↦ R(T₂T₁ − I, T₂)`.
pub fn bartolone(pair: &BartolonePair) -> SubspacePoint {
    match SubspacePoint::from_matrix(&pair.representative()) {
        Ok(p) => p,
        Err(e) => panic!("(T2 T1 - I, T2) must have rank n: {e}"),
    }
}

/// `p dis q`: the stacked `2n × 2n` matrix of representatives is invertible.
pub fn is_distant(p: &SubspacePoint, q: &SubspacePoint) -> Result<bool> {
    p.check(q)?;
    Ok(p.basis().vstack(q.basis()).is_invertible())
}

/// `dim(p + q) − n`.
pub fn arithmetical_distance(p: &SubspacePoint, q: &SubspacePoint) -> Result<usize> {
    p.check(q)?;
    Ok(p.space.sum(&q.space)?.dim() - p.n)
}

/// `dim(p ∩ q) = n − 1`.
pub fn is_adjacent(p: &SubspacePoint, q: &SubspacePoint) -> Result<bool> {
    p.check(q)?;
    Ok(p.space.intersect(&q.space)?.dim() + 1 == p.n)
}

/// The middle point `R(T₁, I)` of the chain `R(I,0) dis R(T₁,I) dis R(T₂T₁ − I, T₂)`.
pub fn distant_chain_witness(pair: &BartolonePair) -> SubspacePoint {
    point_from_pair(&pair.t1, &Matrix::identity(pair.field(), pair.n()))
        .expect("(T1, I) has full rank")
}

/// For a unimodular pair `(A,B)` returns `W` with `A + BW` invertible.
///
/// `W = 0` when `A` is already invertible. Otherwise pick a column basis of
/// `(A,B)` that takes as many columns from `A` as possible; every remaining
/// column of `A` is paired with one chosen column of `B` via a unit entry in
/// `W`.
pub fn stable_rank_witness(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if !a.is_square() || a.rows() != b.rows() || !b.is_square() {
        return Err(Error::DimensionMismatch("A and B must be n x n".into()));
    }
    let f = a.field();
    let n = a.rows();
    let mut w = Matrix::zeros(f, n, n);
    if a.is_invertible() {
        return Ok(w);
    }
    if a.hstack(b).rank() != n {
        return Err(Error::NotUnimodular);
    }
    let mut basis = Matrix::zeros(f, 0, n);
    let mut a_kept = Vec::new();
    let mut a_rest = Vec::new();
    for j in 0..n {
        let col = a.block(0, n, j, j + 1).transpose();
        let candidate = basis.vstack(&col);
        if candidate.rank() > basis.rows() {
            basis = candidate;
            a_kept.push(j);
        } else {
            a_rest.push(j);
        }
    }
    let mut b_cols = Vec::new();
    for j in 0..n {
        if basis.rows() == n {
            break;
        }
        let col = b.block(0, n, j, j + 1).transpose();
        let candidate = basis.vstack(&col);
        if candidate.rank() > basis.rows() {
            basis = candidate;
            b_cols.push(j);
        }
    }
    debug_assert_eq!(a_rest.len(), b_cols.len());
    for (&ja, &jb) in a_rest.iter().zip(&b_cols) {
        w.set(jb, ja, Elem::ONE);
    }
    debug_assert!((a + &(b * &w)).is_invertible());
    Ok(w)
}

/// Some `(T₁, T₂)` whose Bartolone image is `p`: with `W` from
/// [`stable_rank_witness`], `T₁ := −W` and `T₂ := (BT₁ − A)⁻¹B`.
pub fn bartolone_preimage(p: &SubspacePoint) -> BartolonePair {
    let (a, b) = p.blocks();
    let w = stable_rank_witness(&a, &b).expect("point representatives are unimodular");
    let t1 = -&w;
    let m = (&(&b * &t1) - &a).inverse().expect("A + BW is invertible");
    let t2 = &m * &b;
    BartolonePair { t1, t2 }
}

/// Basis (as columns of a `2n × n` matrix) of the annihilator of the point
/// of `(T₁, T₂)`: `(−T₂ / T₁T₂ − I)`.
pub fn annihilator(pair: &BartolonePair) -> Matrix {
    let id = Matrix::identity(pair.field(), pair.n());
    (-&pair.t2).vstack(&(&(&pair.t1 * &pair.t2) - &id))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum JordanKind {
    /// `X ↦ Q⁻¹ X^γ Q`
    Automorphism,
    /// `X ↦ Q⁻¹ (X^δ)^T Q`
    Antiautomorphism,
}

/// A Jordan isomorphism of `K^{n×n}`. The field map is `x ↦ x^(p^e)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanMap {
    kind: JordanKind,
    frobenius_exp: u32,
    q: Matrix,
    q_inv: Matrix,
}

impl JordanMap {
    pub fn new(kind: JordanKind, frobenius_exp: u32, q: Matrix) -> Result<JordanMap> {
        let q_inv = q.inverse()?;
        Ok(JordanMap {
            kind,
            frobenius_exp,
            q,
            q_inv,
        })
    }

    pub fn identity(field: &Field, n: usize) -> JordanMap {
        JordanMap::new(JordanKind::Automorphism, 0, Matrix::identity(field, n)).unwrap()
    }

    pub fn kind(&self) -> JordanKind {
        self.kind
    }

    pub fn frobenius_exp(&self) -> u32 {
        self.frobenius_exp
    }

    pub fn q(&self) -> &Matrix {
        &self.q
    }

    pub fn q_inv(&self) -> &Matrix {
        &self.q_inv
    }

    /// Entry-wise field automorphism.
    pub fn field_map(&self, x: &Matrix) -> Matrix {
        let f = x.field().clone();
        let e = self.frobenius_exp;
        x.map(|v| f.frobenius(v, e))
    }

    pub fn apply(&self, x: &Matrix) -> Matrix {
        let y = match self.kind {
            JordanKind::Automorphism => self.field_map(x),
            JordanKind::Antiautomorphism => self.field_map(x).transpose(),
        };
        &(&self.q_inv * &y) * &self.q
    }
}

/// Left row space of `(T₂^ι T₁^ι − I, T₂^ι)`.
pub fn jordan_action(map: &JordanMap, pair: &BartolonePair) -> SubspacePoint {
    bartolone(&BartolonePair {
        t1: map.apply(&pair.t1),
        t2: map.apply(&pair.t2),
    })
}

/// The induced map on points, through an arbitrary parameter pair.
pub fn jordan_image(map: &JordanMap, p: &SubspacePoint) -> SubspacePoint {
    jordan_action(map, &bartolone_preimage(p))
}

/// `T₂ ↦ R(T₂T₁⁽⁰⁾ − I, T₂)`; injective for fixed `T₁⁽⁰⁾`.
pub fn embed_matrix_space(t1_0: &Matrix, t2: &Matrix) -> Result<SubspacePoint> {
    Ok(bartolone(&BartolonePair::new(t1_0.clone(), t2.clone())?))
}

/// Subsets of `P(R)` through the base point `R(I,0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpecialSet {
    /// Points at arithmetical distance `k` from `R(I,0)`.
    Sphere(usize),
    /// `T₂ = c⁰ᵀ·d`, `d` free: all points through a fixed `(n−1)`-space.
    Star(Vec<Elem>),
    /// `T₂ = cᵀ·d⁰`, `c` free: all points inside a fixed `(n+1)`-space.
    Top(Vec<Elem>),
    /// `T₂ = c⁰ᵀ·t·d⁰` for `t ∈ K` with `T₁ = 0`.
    Pencil(Vec<Elem>, Vec<Elem>),
}

/// Largest parameter sweep [`special_set`] will run.
pub const SPECIAL_SET_BUDGET: u128 = 1 << 24;

fn outer(field: &Field, c: &[Elem], d: &[Elem]) -> Matrix {
    let cm = Matrix::row_vector(field, c).transpose();
    &cm * &Matrix::row_vector(field, d)
}

fn check_vector(v: &[Elem], n: usize) -> Result<()> {
    if v.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} for n = {n}",
            v.len()
        )));
    }
    if v.iter().all(|e| e.is_zero()) {
        return Err(Error::ZeroVector);
    }
    Ok(())
}

/// Enumerates a [`SpecialSet`], deduplicated and in canonical order.
pub fn special_set(kind: &SpecialSet, field: &Field, n: usize) -> Result<Vec<SubspacePoint>> {
    let q = field.order() as u128;
    let square = q.checked_pow((n * n) as u32).unwrap_or(u128::MAX);
    let t2_list: Vec<Matrix> = match kind {
        SpecialSet::Sphere(k) => {
            if *k > n {
                return Err(Error::DimensionMismatch(format!(
                    "radius {k} exceeds n = {n}"
                )));
            }
            let estimate = square.saturating_mul(square);
            if estimate > SPECIAL_SET_BUDGET {
                return Err(Error::BudgetExceeded {
                    estimate,
                    budget: SPECIAL_SET_BUDGET,
                });
            }
            enumerate_matrices(field, n, n)
                .filter(|t| t.rank() == *k)
                .collect()
        }
        SpecialSet::Star(c0) => {
            check_vector(c0, n)?;
            enumerate_matrices(field, 1, n)
                .map(|d| outer(field, c0, d.entries()))
                .collect()
        }
        SpecialSet::Top(d0) => {
            check_vector(d0, n)?;
            enumerate_matrices(field, 1, n)
                .map(|c| outer(field, c.entries(), d0))
                .collect()
        }
        SpecialSet::Pencil(c0, d0) => {
            check_vector(c0, n)?;
            check_vector(d0, n)?;
            let base = outer(field, c0, d0);
            let zero = Matrix::zeros(field, n, n);
            let set: BTreeSet<SubspacePoint> = field
                .elements()
                .map(|t| {
                    bartolone(&BartolonePair {
                        t1: zero.clone(),
                        t2: base.scale(t),
                    })
                })
                .collect();
            return Ok(set.into_iter().collect());
        }
    };
    let estimate = square.saturating_mul(t2_list.len() as u128);
    if estimate > SPECIAL_SET_BUDGET {
        return Err(Error::BudgetExceeded {
            estimate,
            budget: SPECIAL_SET_BUDGET,
        });
    }
    let mut set = BTreeSet::new();
    for t1 in enumerate_matrices(field, n, n) {
        for t2 in &t2_list {
            set.insert(bartolone(&BartolonePair {
                t1: t1.clone(),
                t2: t2.clone(),
            }));
        }
    }
    Ok(set.into_iter().collect())
}

/// All points of `P(R)` (the Grassmannian of `n`-subspaces of `K^{2n}`), in
/// canonical order. Use [`crate::harness::enumerate_grassmannian`] for the
/// budget-checked entry point.
pub fn enumerate_points(field: &Field, n: usize) -> Vec<SubspacePoint> {
    enumerate_subspaces(field, 2 * n, n)
        .into_iter()
        .map(|space| SubspacePoint { space, n })
        .collect()
}
