//! Slow, independent reference arithmetic used to cross-check the library.
//!
//! Elements use the same integer encoding as the library (`a + b·p` for
//! `a + b·α`), with `α² = α + 1` over GF(4) and `α² = −1` over GF(9).

#![allow(dead_code)]

use std::collections::BTreeSet;

use jordanline::{Elem, Field, Matrix};

#[derive(Clone, Copy, Debug)]
pub struct OField {
    pub p: u32,
    pub k: u32,
    /// `α² = c0 + c1·α`
    c0: u32,
    c1: u32,
    pub frobenius: bool,
}

impl OField {
    pub fn new(p: u32, k: u32, frobenius: bool) -> OField {
        let (c0, c1) = match (p, k) {
            (_, 1) => (0, 0),
            (2, 2) => (1, 1),
            (3, 2) => (2, 0),
            _ => panic!("oracle only covers GF(p), GF(4), GF(9)"),
        };
        assert!(!frobenius || k == 2);
        OField {
            p,
            k,
            c0,
            c1,
            frobenius,
        }
    }

    pub fn order(&self) -> u32 {
        self.p.pow(self.k)
    }

    fn split(&self, x: u32) -> (u32, u32) {
        (x % self.p, x / self.p)
    }

    fn join(&self, a: u32, b: u32) -> u32 {
        a % self.p + (b % self.p) * self.p
    }

    pub fn add(&self, x: u32, y: u32) -> u32 {
        let (a, b) = self.split(x);
        let (c, d) = self.split(y);
        self.join(a + c, b + d)
    }

    pub fn neg(&self, x: u32) -> u32 {
        let (a, b) = self.split(x);
        self.join(self.p - a, self.p - b)
    }

    pub fn sub(&self, x: u32, y: u32) -> u32 {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: u32, y: u32) -> u32 {
        let (a, b) = self.split(x);
        let (c, d) = self.split(y);
        // (a + bα)(c + dα) = ac + (ad + bc)α + bd(c0 + c1 α)
        let bd = b * d;
        self.join(a * c + bd * self.c0, a * d + b * c + bd * self.c1)
    }

    pub fn pow(&self, x: u32, e: u32) -> u32 {
        (0..e).fold(1, |acc, _| self.mul(acc, x))
    }

    pub fn sigma(&self, x: u32) -> u32 {
        if self.frobenius {
            self.pow(x, self.p)
        } else {
            x
        }
    }

    pub fn inv(&self, x: u32) -> Option<u32> {
        (1..self.order()).find(|&y| self.mul(x, y) == 1)
    }

    /// All vectors of `K^d`, first coordinate most significant.
    pub fn vectors(&self, d: usize) -> Vec<Vec<u32>> {
        let q = self.order();
        (0..q.pow(d as u32))
            .map(|mut i| {
                let mut v = vec![0; d];
                for slot in v.iter_mut().rev() {
                    *slot = i % q;
                    i /= q;
                }
                v
            })
            .collect()
    }

    pub fn lin_comb(&self, coeffs: &[u32], rows: &[Vec<u32>]) -> Vec<u32> {
        let d = rows[0].len();
        let mut out = vec![0; d];
        for (c, r) in coeffs.iter().zip(rows) {
            for j in 0..d {
                out[j] = self.add(out[j], self.mul(*c, r[j]));
            }
        }
        out
    }

    /// Every vector of the span, sorted.
    pub fn span(&self, rows: &[Vec<u32>]) -> Vec<Vec<u32>> {
        let set: BTreeSet<Vec<u32>> = self
            .vectors(rows.len())
            .iter()
            .map(|c| self.lin_comb(c, rows))
            .collect();
        set.into_iter().collect()
    }

    /// Leibniz expansion.
    pub fn det(&self, m: &[Vec<u32>]) -> u32 {
        let n = m.len();
        let mut total = 0;
        for perm in permutations(n) {
            let mut term = 1;
            for (i, &j) in perm.iter().enumerate() {
                term = self.mul(term, m[i][j]);
            }
            if parity(&perm) {
                term = self.neg(term);
            }
            total = self.add(total, term);
        }
        total
    }

    /// Largest square minor that is non-zero, by brute force.
    pub fn rank(&self, m: &[Vec<u32>]) -> usize {
        let rows = m.len();
        let cols = if rows == 0 { 0 } else { m[0].len() };
        for r in (1..=rows.min(cols)).rev() {
            for rs in subsets(rows, r) {
                for cs in subsets(cols, r) {
                    let minor: Vec<Vec<u32>> = rs
                        .iter()
                        .map(|&i| cs.iter().map(|&j| m[i][j]).collect())
                        .collect();
                    if self.det(&minor) != 0 {
                        return r;
                    }
                }
            }
        }
        0
    }

    /// Some 2×2 minor of the two rows is non-zero.
    pub fn independent(&self, x: &[u32], y: &[u32]) -> bool {
        (0..x.len()).any(|i| {
            (i + 1..x.len()).any(|j| self.sub(self.mul(x[i], y[j]), self.mul(x[j], y[i])) != 0)
        })
    }

    /// `β(x, y) = Σ x_i y_{n+i}^σ − x_{n+i} y_i^σ`.
    pub fn beta(&self, x: &[u32], y: &[u32]) -> u32 {
        let n = x.len() / 2;
        let mut s = 0;
        for i in 0..n {
            s = self.add(s, self.mul(x[i], self.sigma(y[n + i])));
            s = self.sub(s, self.mul(x[n + i], self.sigma(y[i])));
        }
        s
    }

    /// `β` vanishes on all of `span`.
    pub fn totally_isotropic(&self, span: &[Vec<u32>]) -> bool {
        span.iter()
            .all(|x| span.iter().all(|y| self.beta(x, y) == 0))
    }

    /// `|Gr_{4,2}|` as (ordered independent pairs) / `|GL_2|`.
    pub fn grassmannian_4_2(&self) -> u64 {
        let vs = self.vectors(4);
        let mut ordered = 0u64;
        for x in &vs {
            for y in &vs {
                if self.independent(x, y) {
                    ordered += 1;
                }
            }
        }
        let gl2 = self
            .vectors(4)
            .iter()
            .filter(|v| self.det(&[v[..2].to_vec(), v[2..].to_vec()]) != 0)
            .count() as u64;
        assert_eq!(ordered % gl2, 0);
        ordered / gl2
    }

    /// All totally isotropic 2-spaces of `K^4`, each as its sorted vector list.
    pub fn isotropic_planes(&self) -> BTreeSet<Vec<Vec<u32>>> {
        let vs = self.vectors(4);
        let iso: Vec<&Vec<u32>> = vs
            .iter()
            .filter(|x| x.iter().any(|&c| c != 0) && self.beta(x, x) == 0)
            .collect();
        let mut out = BTreeSet::new();
        for (i, x) in iso.iter().enumerate() {
            for y in &iso[i + 1..] {
                if self.beta(x, y) != 0 || !self.independent(x, y) {
                    continue;
                }
                let s = self.span(&[(*x).clone(), (*y).clone()]);
                // build each plane once: from its two smallest independent vectors
                let first = s.iter().find(|v| v.iter().any(|&c| c != 0)).unwrap();
                if first != *x {
                    continue;
                }
                let second = s.iter().find(|v| self.independent(first, v)).unwrap();
                if second == *y {
                    assert!(self.totally_isotropic(&s));
                    out.insert(s);
                }
            }
        }
        out
    }
}

pub fn to_rows(m: &Matrix) -> Vec<Vec<u32>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|e| e.index() as u32).collect())
        .collect()
}

pub fn elems(field: &Field, v: &[u32]) -> Vec<Elem> {
    v.iter().map(|&x| field.elem(x).unwrap()).collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// `true` for odd permutations.
fn parity(perm: &[usize]) -> bool {
    let mut inversions = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 1
}

fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return vec![vec![]];
    }
    if n < r {
        return vec![];
    }
    let mut out = subsets(n - 1, r);
    for mut s in subsets(n - 1, r - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}
