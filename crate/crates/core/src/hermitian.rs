//! The `σ`-Hermitian side: the `σ`-anti-Hermitian form `β` on `K^{2n}` with
//! Gram matrix `(0 I / −I 0)`, its maximal totally isotropic subspaces (the
//! points of the dual polar space), and the constructions that show these
//! are exactly the points `R(T₂T₁ − I, T₂)` with `T₁, T₂` Hermitian.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::galois::{Elem, Field, Involution};
use crate::matrix::{Matrix, Subspace};
use crate::projline::{bartolone, enumerate_points, BartolonePair, SubspacePoint};

/// A non-degenerate `σ`-anti-Hermitian trace-valued form
/// `(x, y) ↦ x · G · (y^σ)^T`.
///
/// Alongside `G` we keep a matrix `N` with `G = N − N^Σ`; its existence is
/// what trace-valuedness means, and the completion step in
/// [`lemma1_complete`] needs it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SesquilinearForm {
    gram: Matrix,
    half: Matrix,
}

impl SesquilinearForm {
    /// Gram matrix `(0 I / −I 0)`, with `N = (0 I / 0 0)`.
    pub fn standard(field: &Field, n: usize) -> SesquilinearForm {
        let z = Matrix::zeros(field, n, n);
        let i = Matrix::identity(field, n);
        SesquilinearForm {
            gram: Matrix::from_blocks(&z, &i, &(-&i), &z),
            half: Matrix::from_blocks(&z, &i, &z, &z),
        }
    }

    pub fn from_gram(gram: Matrix) -> Result<SesquilinearForm> {
        if !gram.is_invertible() {
            return Err(Error::Singular);
        }
        if gram.sigma_transpose() != -&gram {
            return Err(Error::NotTraceValued);
        }
        let f = gram.field().clone();
        let d = gram.rows();
        let mut half = Matrix::zeros(&f, d, d);
        for i in 0..d {
            for j in i + 1..d {
                half.set(i, j, gram.get(i, j));
            }
            let target = gram.get(i, i);
            let w = f
                .elements()
                .find(|&w| f.sub(w, f.sigma(w)) == target)
                .ok_or(Error::NotTraceValued)?;
            half.set(i, i, w);
        }
        Ok(SesquilinearForm { gram, half })
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn field(&self) -> &Field {
        self.gram.field()
    }

    pub fn eval(&self, x: &[Elem], y: &[Elem]) -> Result<Elem> {
        if x.len() != self.dim() || y.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "vectors of length {} and {} for a form on K^{}",
                x.len(),
                y.len(),
                self.dim()
            )));
        }
        let f = self.field();
        let xg = self.gram.left_apply(x);
        Ok(xg
            .iter()
            .zip(y)
            .fold(Elem::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, f.sigma(b)))))
    }

    /// `P · G · P^Σ`: the matrix of the form w.r.t. the rows of `P`.
    pub fn gram_of(&self, p: &Matrix) -> Matrix {
        &(p * &self.gram) * &p.sigma_transpose()
    }

    /// `P · N · P^Σ`, so that `gram_of(P) = H − H^Σ` for `H = half_gram_of(P)`.
    pub fn half_gram_of(&self, p: &Matrix) -> Matrix {
        &(p * &self.half) * &p.sigma_transpose()
    }

    /// `S^⊥ = {y : β(x, y) = 0 for all x ∈ S}`.
    pub fn perp(&self, s: &Subspace) -> Subspace {
        let kernel = (s.basis() * &self.gram).right_kernel();
        Subspace::row_space(&kernel.sigma())
    }

    pub fn is_totally_isotropic(&self, s: &Subspace) -> bool {
        self.gram_of(s.basis()).is_zero()
    }
}

/// `w := Σ x_i x_{i+n}^σ`; for the standard form `β(x, x) = w − w^σ`.
pub fn trace_witness(field: &Field, x: &[Elem]) -> Elem {
    let n = x.len() / 2;
    (0..n).fold(Elem::ZERO, |acc, i| {
        field.add(acc, field.mul(x[i], field.sigma(x[i + n])))
    })
}

/// `β(x, y)` for the standard form on `K^{2n}`, `2n = x.len()`.
pub fn beta_eval(field: &Field, x: &[Elem], y: &[Elem]) -> Result<Elem> {
    if !x.len().is_multiple_of(2) {
        return Err(Error::DimensionMismatch("odd vector length".into()));
    }
    SesquilinearForm::standard(field, x.len() / 2).eval(x, y)
}

/// Criterion `A·B^Σ = B·A^Σ` on the blocks of the canonical representative.
pub fn is_totally_isotropic(p: &SubspacePoint) -> bool {
    let (a, b) = p.blocks();
    &a * &b.sigma_transpose() == &b * &a.sigma_transpose()
}

/// A point of `P(R)` that is maximal totally isotropic for the standard form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IsotropicPoint(SubspacePoint);

impl IsotropicPoint {
    pub fn new(p: SubspacePoint) -> Result<IsotropicPoint> {
        if is_totally_isotropic(&p) {
            Ok(IsotropicPoint(p))
        } else {
            Err(Error::NotTotallyIsotropic)
        }
    }

    pub fn point(&self) -> &SubspacePoint {
        &self.0
    }

    pub fn into_point(self) -> SubspacePoint {
        self.0
    }

    pub fn space(&self) -> &Subspace {
        self.0.space()
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }

    pub fn field(&self) -> &Field {
        self.0.field()
    }

    pub fn origin(field: &Field, n: usize) -> IsotropicPoint {
        IsotropicPoint(SubspacePoint::origin(field, n))
    }
}

/// All `σ`-Hermitian `n × n` matrices: diagonal entries range over the fixed
/// field of `σ`, entries above the diagonal over `K`, in lexicographic order
/// of those free entries.
pub fn enumerate_hermitian(field: &Field, n: usize) -> Vec<Matrix> {
    let fixed = field.fixed_elements();
    let all: Vec<Elem> = field.elements().collect();
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let radix: Vec<usize> = slots
        .iter()
        .map(|&(i, j)| if i == j { fixed.len() } else { all.len() })
        .collect();
    let total: usize = radix.iter().product();
    let mut out = Vec::with_capacity(total);
    for mut idx in 0..total {
        let mut m = Matrix::zeros(field, n, n);
        for (s, &(i, j)) in slots.iter().enumerate().rev() {
            let c = idx % radix[s];
            idx /= radix[s];
            if i == j {
                m.set(i, i, fixed[c]);
            } else {
                m.set(i, j, all[c]);
                m.set(j, i, field.sigma(all[c]));
            }
        }
        out.push(m);
    }
    out
}

/// Number of `σ`-Hermitian `n × n` matrices: `q₀^n · q^(n(n−1)/2)`.
pub fn hermitian_count(field: &Field, n: usize) -> u128 {
    let q = field.order() as u128;
    let q0 = match field.involution() {
        Involution::Identity => q,
        Involution::FrobeniusHalf => (field.p() as u128).pow(field.k() / 2),
    };
    q0.saturating_pow(n as u32)
        .saturating_mul(q.saturating_pow((n * (n - 1) / 2) as u32))
}

/// All maximal totally isotropic subspaces, in canonical order.
pub fn enumerate_isotropic(field: &Field, n: usize) -> Vec<IsotropicPoint> {
    enumerate_points(field, n)
        .into_iter()
        .filter(is_totally_isotropic)
        .map(IsotropicPoint)
        .collect()
}

/// `R(T₂T₁ − I, T₂)` for Hermitian `T₁, T₂`.
pub fn bartolone_hermitian(pair: &BartolonePair) -> Result<IsotropicPoint> {
    if !pair.t1.is_hermitian() || !pair.t2.is_hermitian() {
        return Err(Error::NotHermitian);
    }
    let p = bartolone(pair);
    assert!(
        is_totally_isotropic(&p),
        "Hermitian parameters gave a non-isotropic point"
    );
    Ok(IsotropicPoint(p))
}

fn check_same(a: &SubspacePoint, b_field: &Field, b_n: usize) -> Result<()> {
    if a.field() != b_field {
        return Err(Error::FieldMismatch);
    }
    if a.n() != b_n {
        return Err(Error::DimensionMismatch(format!(
            "n = {} vs n = {b_n}",
            a.n()
        )));
    }
    Ok(())
}

/// Intermediate data of [`lemma1_complete`], exposed for inspection.
#[derive(Clone, Debug)]
pub struct Lemma1Trace {
    /// Rows `b_1, …, b_2n`: `V`, `W`, the free completion, then the rest of `V^⊥`.
    pub basis: Matrix,
    /// Gram matrix of `β` in that basis.
    pub gram: Matrix,
    /// Transition matrix replacing the free completion rows.
    pub transition: Matrix,
    pub k: usize,
    pub result: IsotropicPoint,
}

/// Given `U = V ⊕ W` maximal totally isotropic, returns a maximal totally
/// isotropic `X` with `X ∩ V^⊥ = W`.
pub fn lemma1_complete(u: &IsotropicPoint, v: &Subspace, w: &Subspace) -> Result<IsotropicPoint> {
    lemma1_trace(u, v, w).map(|t| t.result)
}

pub fn lemma1_trace(u: &IsotropicPoint, v: &Subspace, w: &Subspace) -> Result<Lemma1Trace> {
    let n = u.n();
    let f = u.field().clone();
    for s in [v, w] {
        if s.ambient_dim() != 2 * n {
            return Err(Error::DimensionMismatch("V and W must live in K^2n".into()));
        }
        if s.field() != &f {
            return Err(Error::FieldMismatch);
        }
    }
    if v.intersect(w)?.dim() != 0 || v.sum(w)? != *u.space() {
        return Err(Error::NotDirectSum);
    }
    let form = SesquilinearForm::standard(&f, n);
    let k = v.dim();
    let v_perp = form.perp(v);
    debug_assert_eq!(v_perp.dim(), 2 * n - k);

    // b_{n+k+1..2n}: completes U to V^⊥; b_{n+1..n+k}: completes V^⊥ to K^2n
    let tail = u.space().extend_within(&v_perp)?;
    let extra = v_perp.complete_basis().select_rows(v_perp.dim(), 2 * n);
    let basis = v.basis().vstack(w.basis()).vstack(&extra).vstack(&tail);
    debug_assert!(basis.is_invertible());

    let gram = form.gram_of(&basis);
    let (r1, r2, r3) = (k, n, n + k);
    let a = gram.block(0, r1, r2, r3);
    let b = gram.block(r1, r2, r2, r3);
    let c = gram.block(r1, r2, r3, 2 * n);
    let e = gram.block(r2, r3, r3, 2 * n);
    let d = form.half_gram_of(&extra);
    let ff = form.half_gram_of(&tail);

    let a_inv = a
        .inverse()
        .expect("β pairs V with the completion non-degenerately");
    let c_inv = c
        .inverse()
        .expect("β pairs W with the rest of V^⊥ non-degenerately");
    let b_sig = b.sigma_transpose();
    let c_inv_sig = c_inv.sigma_transpose();

    let bc = &b_sig * &c_inv_sig;
    let first = &(&(&(&(&e - &(&bc * &ff)) * &c_inv) * &b) - &d) * &a_inv;
    let last = -&bc;

    let mut transition = Matrix::identity(&f, 2 * n);
    for i in 0..k {
        for j in 0..k {
            transition.set(r2 + i, j, first.get(i, j));
        }
        for j in 0..n - k {
            transition.set(r2 + i, r3 + j, last.get(i, j));
        }
    }

    let new_basis = &transition * &basis;
    let x = SubspacePoint::from_matrix(&new_basis.select_rows(k, n + k))
        .expect("b'_{k+1..n+k} are independent");
    assert!(
        is_totally_isotropic(&x),
        "completion is not totally isotropic"
    );
    assert_eq!(x.space().intersect(&v_perp)?, *w, "X ∩ V^⊥ differs from W");
    Ok(Lemma1Trace {
        basis,
        gram,
        transition,
        k,
        result: IsotropicPoint(x),
    })
}

/// A maximal totally isotropic common complement of `U₁` and `U₂`.
pub fn lemma2_common_complement(
    u1: &IsotropicPoint,
    u2: &IsotropicPoint,
) -> Result<IsotropicPoint> {
    check_same(u1.point(), u2.field(), u2.n())?;
    let n = u1.n();
    let f = u1.field().clone();
    let form = SesquilinearForm::standard(&f, n);

    let v = u1.space().intersect(u2.space())?;
    let k = v.dim();
    let w1 = v.extend_within(u1.space())?;
    let w2 = v.extend_within(u2.space())?;
    debug_assert_eq!((w1.rows(), w2.rows()), (n - k, n - k));

    let m12 = form.gram_of(&w1.vstack(&w2));
    debug_assert!(m12.block(0, n - k, 0, n - k).is_zero());
    debug_assert!(m12.block(n - k, 2 * (n - k), n - k, 2 * (n - k)).is_zero());
    let a = m12.block(0, n - k, n - k, 2 * (n - k));
    let a_inv = a
        .inverse()
        .expect("β restricted to W1 ⊕ W2 is non-degenerate");
    let w1_new = &a_inv * &w1;
    let w_rows = &w1_new + &w2;

    let w1s = Subspace::row_space(&w1);
    let w2s = Subspace::row_space(&w2);
    let ws = Subspace::row_space(&w_rows);
    debug_assert!(form.is_totally_isotropic(&ws));
    let s12 = w1s.sum(&w2s)?;
    assert_eq!(s12.dim(), 2 * (n - k));
    assert_eq!(w1s.sum(&ws)?, s12, "W1 ⊕ W differs from W1 ⊕ W2");
    assert_eq!(w2s.sum(&ws)?, s12, "W2 ⊕ W differs from W1 ⊕ W2");

    let u = SubspacePoint::from_subspace(v.sum(&ws)?)?;
    let u = IsotropicPoint::new(u).expect("V ⊕ W is totally isotropic");
    let x = lemma1_complete(&u, &v, &ws)?;
    assert_eq!(x.space().intersect(u1.space())?.dim(), 0, "X meets U1");
    assert_eq!(x.space().intersect(u2.space())?.dim(), 0, "X meets U2");
    Ok(x)
}

/// Hermitian `(T₁, T₂)` with `R(T₂T₁ − I, T₂) = p`.
pub fn theorem1_decompose(p: &IsotropicPoint) -> BartolonePair {
    let n = p.n();
    let f = p.field().clone();
    let x = lemma2_common_complement(&IsotropicPoint::origin(&f, n), p)
        .expect("inputs share field and size");
    let (c, d) = x.point().blocks();
    let d_inv = d
        .inverse()
        .expect("complement of R(I,0) has invertible right block");
    let c = &d_inv * &c;
    let (a, b) = p.point().blocks();
    let bc_a = &(&b * &c) - &a;
    let t2 = &bc_a.inverse().expect("A − BC is invertible") * &b;
    let pair = BartolonePair { t1: c, t2 };
    assert!(
        pair.t1.is_hermitian() && pair.t2.is_hermitian(),
        "decomposition is not Hermitian"
    );
    assert_eq!(
        bartolone(&pair),
        *p.point(),
        "decomposition does not reproduce the point"
    );
    pair
}

/// `T₂ := (c⁰^σ)ᵀ · t · c⁰` with `t = t^σ` and `T₁ ∈ H_σ` arbitrary: a maximal
/// set of mutually adjacent isotropic points through `R(I,0)`.
pub fn hermitian_adjacent_star(
    c0: &[Elem],
    field: &Field,
    n: usize,
) -> Result<Vec<IsotropicPoint>> {
    if c0.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} for n = {n}",
            c0.len()
        )));
    }
    if c0.iter().all(|e| e.is_zero()) {
        return Err(Error::ZeroVector);
    }
    let col = Matrix::row_vector(field, c0).sigma().transpose();
    let row = Matrix::row_vector(field, c0);
    let base = &col * &row;
    let hs = enumerate_hermitian(field, n);
    let mut set = BTreeSet::new();
    for t in field.fixed_elements() {
        let t2 = base.scale(t);
        for t1 in &hs {
            set.insert(bartolone_hermitian(&BartolonePair {
                t1: t1.clone(),
                t2: t2.clone(),
            })?);
        }
    }
    Ok(set.into_iter().collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JordanAxiomsReport {
    pub hermitian_count: usize,
    pub invertible_count: usize,
    pub contains_identity: bool,
    pub inverse_closed: bool,
    pub jordan_closed: bool,
    pub violations: Vec<String>,
}

impl JordanAxiomsReport {
    pub fn holds(&self) -> bool {
        self.contains_identity && self.inverse_closed && self.jordan_closed
    }
}

/// Checks `A⁻¹ ∈ H_σ` for invertible `A ∈ H_σ` and `ABA ∈ H_σ` for all `A, B ∈ H_σ`.
pub fn jordan_system_axioms_check(field: &Field, n: usize) -> JordanAxiomsReport {
    const MAX_VIOLATIONS: usize = 10;
    let hs = enumerate_hermitian(field, n);
    let mut violations = Vec::new();
    let mut invertible_count = 0;
    let mut inverse_closed = true;
    for a in &hs {
        if let Ok(inv) = a.inverse() {
            invertible_count += 1;
            if !inv.is_hermitian() {
                inverse_closed = false;
                if violations.len() < MAX_VIOLATIONS {
                    violations.push(format!("inverse of {a:?} is not Hermitian"));
                }
            }
        }
    }
    let mut jordan_closed = true;
    for a in &hs {
        for b in &hs {
            if !(&(a * b) * a).is_hermitian() {
                jordan_closed = false;
                if violations.len() < MAX_VIOLATIONS {
                    violations.push(format!("ABA not Hermitian for A = {a:?}, B = {b:?}"));
                }
            }
        }
    }
    JordanAxiomsReport {
        hermitian_count: hs.len(),
        invertible_count,
        contains_identity: hs.contains(&Matrix::identity(field, n)),
        inverse_closed,
        jordan_closed,
        violations,
    }
}
