//! Exact arithmetic in small Galois fields `GF(p^k)` together with an
//! involution `σ` (either the identity or `x ↦ x^(p^(k/2))`).
//!
//! Elements are stored by their integer encoding `Σ c_i p^i`, where `c_i`
//! are the coefficients in the polynomial basis `1, x, …, x^(k-1)`. All
//! arithmetic goes through lookup tables built when the field is created,
//! so a [`Field`] is cheap to clone and share between threads.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field order for which tables are built.
pub const MAX_ORDER: u32 = 1024;

/// An element of a [`Field`], identified by its integer encoding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Elem(u16);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    /// The integer encoding `Σ c_i p^i`.
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Which involution of `GF(p^k)` is used as `σ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Involution {
    Identity,
    /// `x ↦ x^(p^(k/2))`; only available for even `k`.
    #[serde(alias = "frobenius")]
    FrobeniusHalf,
}

impl Involution {
    pub fn name(self) -> &'static str {
        match self {
            Involution::Identity => "identity",
            Involution::FrobeniusHalf => "frobenius_half",
        }
    }
}

impl fmt::Display for Involution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Involution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "identity" | "id" => Ok(Involution::Identity),
            "frobenius" | "frobenius_half" | "frobenius-half" => Ok(Involution::FrobeniusHalf),
            other => Err(Error::Parse(format!("unknown involution `{other}`"))),
        }
    }
}

struct Tables {
    p: u32,
    k: u32,
    order: u32,
    modulus: Vec<u32>,
    involution: Involution,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    sigma: Vec<u16>,
}

/// The finite field `GF(p^k)` with a chosen involution.
#[derive(Clone)]
pub struct Field(Arc<Tables>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p
                && self.0.k == other.0.k
                && self.0.involution == other.0.involution)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}, σ={})", self.0.p, self.0.k, self.0.involution)
    }
}

pub(crate) fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn digits(mut v: u32, p: u32, k: u32) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let d = v % p;
            v /= p;
            d
        })
        .collect()
}

fn undigits(c: &[u32], p: u32) -> u32 {
    c.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Remainder of `a` modulo the monic polynomial `m` over `GF(p)`.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let dm = m.len() - 1;
    let mut r = a.to_vec();
    while r.len() > dm {
        let lead = r.pop().unwrap();
        if lead != 0 {
            let shift = r.len() - dm;
            for (i, &mi) in m[..dm].iter().enumerate() {
                r[shift + i] = (r[shift + i] + (p - mi) * lead) % p;
            }
        }
    }
    r.resize(dm, 0);
    r
}

fn is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() as u32 - 1;
    for d in 1..=deg / 2 {
        for low in 0..p.pow(d) {
            let mut divisor = digits(low, p, d);
            divisor.push(1);
            if poly_rem(m, &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest (by encoding of the non-leading coefficients)
/// monic irreducible polynomial of degree `k` over `GF(p)`.
fn smallest_irreducible(p: u32, k: u32) -> Vec<u32> {
    (0..p.pow(k))
        .map(|low| {
            let mut m = digits(low, p, k);
            m.push(1);
            m
        })
        .find(|m| is_irreducible(m, p))
        .expect("an irreducible polynomial exists in every degree")
}

impl Field {
    /// Builds `GF(p^k)` with the given involution.
    pub fn new(p: u32, k: u32, involution: Involution) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::InvalidDegree(k));
        }
        if involution == Involution::FrobeniusHalf && k % 2 == 1 {
            return Err(Error::OddDegreeFrobenius(k));
        }
        let order = p
            .checked_pow(k)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or(Error::FieldTooLarge {
                p,
                k,
                max: MAX_ORDER,
            })?;
        let modulus = smallest_irreducible(p, k);
        let q = order as usize;

        let coeffs: Vec<Vec<u32>> = (0..order).map(|v| digits(v, p, k)).collect();
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        for a in 0..q {
            for b in 0..q {
                let sum: Vec<u32> = coeffs[a]
                    .iter()
                    .zip(&coeffs[b])
                    .map(|(x, y)| (x + y) % p)
                    .collect();
                add[a * q + b] = undigits(&sum, p) as u16;

                let mut prod = vec![0u32; 2 * k as usize - 1];
                for (i, x) in coeffs[a].iter().enumerate() {
                    for (j, y) in coeffs[b].iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                mul[a * q + b] = undigits(&poly_rem(&prod, &modulus, p), p) as u16;
            }
        }
        let neg: Vec<u16> = (0..q)
            .map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u16)
            .collect();
        let mut inv = vec![0u16; q];
        for a in 1..q {
            inv[a] = (1..q).find(|&b| mul[a * q + b] == 1).unwrap() as u16;
        }
        let sigma = match involution {
            Involution::Identity => (0..q as u16).collect(),
            Involution::FrobeniusHalf => {
                let e = p.pow(k / 2);
                (0..q)
                    .map(|a| {
                        let mut r = 1u16;
                        for _ in 0..e {
                            r = mul[r as usize * q + a];
                        }
                        r
                    })
                    .collect()
            }
        };

        Ok(Field(Arc::new(Tables {
            p,
            k,
            order,
            modulus,
            involution,
            add,
            mul,
            neg,
            inv,
            sigma,
        })))
    }

    /// The prime field `GF(p)` with `σ = id`.
    pub fn prime(p: u32) -> Result<Field> {
        Field::new(p, 1, Involution::Identity)
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn k(&self) -> u32 {
        self.0.k
    }

    /// Number of elements `p^k`.
    pub fn order(&self) -> u32 {
        self.0.order
    }

    /// Coefficients of the defining polynomial, constant term first, monic.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn involution(&self) -> Involution {
        self.0.involution
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    /// The class of `x` in `GF(p)[x]/(modulus)`. Equals the integer `0` when `k = 1`.
    pub fn generator(&self) -> Elem {
        if self.0.k == 1 {
            Elem::ZERO
        } else {
            Elem(self.0.p as u16)
        }
    }

    /// Element with the given integer encoding.
    pub fn elem(&self, v: u32) -> Result<Elem> {
        if v < self.0.order {
            Ok(Elem(v as u16))
        } else {
            Err(Error::ElementOutOfRange {
                value: v,
                order: self.0.order,
            })
        }
    }

    /// Image of an integer under `Z → GF(p) ⊂ GF(p^k)`.
    pub fn from_int(&self, v: i64) -> Elem {
        Elem(v.rem_euclid(self.0.p as i64) as u16)
    }

    pub fn coeffs(&self, a: Elem) -> Vec<u32> {
        digits(a.0 as u32, self.0.p, self.0.k)
    }

    pub fn from_coeffs(&self, c: &[u32]) -> Result<Elem> {
        if c.len() != self.0.k as usize || c.iter().any(|&d| d >= self.0.p) {
            return Err(Error::Parse(format!("invalid coefficient vector {c:?}")));
        }
        self.elem(undigits(c, self.0.p))
    }

    /// All elements in increasing encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.0.order as u16).map(Elem)
    }

    /// Elements fixed by `σ`, in increasing order.
    pub fn fixed_elements(&self) -> Vec<Elem> {
        self.elements().filter(|&a| self.sigma(a) == a).collect()
    }

    #[inline]
    fn idx(&self, a: Elem, b: Elem) -> usize {
        a.index() * self.0.order as usize + b.index()
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.0.add[self.idx(a, b)])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.0.mul[self.idx(a, b)])
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.0.neg[a.index()])
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            Err(Error::ZeroInverse)
        } else {
            Ok(Elem(self.0.inv[a.index()]))
        }
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = Elem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// The involution `σ`.
    #[inline]
    pub fn sigma(&self, a: Elem) -> Elem {
        Elem(self.0.sigma[a.index()])
    }

    /// The field automorphism `x ↦ x^(p^e)`.
    pub fn frobenius(&self, a: Elem, e: u32) -> Elem {
        let mut r = a;
        for _ in 0..e % self.0.k {
            r = self.pow(r, self.0.p as u64);
        }
        r
    }

    pub fn format_elem(&self, a: Elem) -> String {
        a.0.to_string()
    }

    pub fn parse_elem(&self, s: &str) -> Result<Elem> {
        let v: u32 = s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("invalid field element `{s}`")))?;
        self.elem(v)
    }
}
