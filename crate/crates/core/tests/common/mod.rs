//! Reference implementations for cross-checking the library. These use
//! table-driven arithmetic on element indices and enumerate without pruning.

#![allow(dead_code)]

use coalg_core::{Coalgebra, Field, FieldElement, MulTable};

/// A small finite field with elements `0..q`, using the same index order as
/// the library (`a0 + a1 p`).
pub struct SmallField {
    pub q: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
}

impl SmallField {
    pub fn prime(p: usize) -> Self {
        let table = |op: fn(usize, usize) -> usize| {
            (0..p * p).map(|n| (op(n / p, n % p) % p) as u8).collect()
        };
        SmallField {
            q: p,
            add: table(|a, b| a + b),
            mul: table(|a, b| a * b),
        }
    }

    /// GF(2)[x]/(x^2 + x + 1).
    pub fn gf4() -> Self {
        let poly = |n: usize| (n & 1, n >> 1);
        let mut add = Vec::new();
        let mut mul = Vec::new();
        for a in 0..4 {
            for b in 0..4 {
                add.push((a ^ b) as u8);
                let ((a0, a1), (b0, b1)) = (poly(a), poly(b));
                // (a0 + a1 x)(b0 + b1 x) with x^2 = x + 1
                let c0 = (a0 * b0 + a1 * b1) % 2;
                let c1 = (a0 * b1 + a1 * b0 + a1 * b1) % 2;
                mul.push((c0 + 2 * c1) as u8);
            }
        }
        SmallField { q: 4, add, mul }
    }

    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    pub fn neg(&self, a: u8) -> u8 {
        (0..self.q as u8).find(|&b| self.add(a, b) == 0).unwrap()
    }

    pub fn sum(&self, xs: impl IntoIterator<Item = u8>) -> u8 {
        xs.into_iter().fold(0, |acc, x| self.add(acc, x))
    }
}

pub fn indices(v: &[FieldElement]) -> Vec<u8> {
    v.iter()
        .map(|e| e.index().expect("finite field element") as u8)
        .collect()
}

pub fn elements(f: &Field, v: &[u8]) -> Vec<FieldElement> {
    v.iter().map(|&i| f.element_at(i as u64)).collect()
}

/// `(mu, unit)` as index vectors.
pub fn encode(t: &MulTable) -> (Vec<u8>, Vec<u8>) {
    (indices(t.algebra().constants()), indices(t.unit()))
}

/// Steps `digits` to the next vector in lexicographic order; false after the last.
pub fn advance(digits: &mut [u8], q: usize) -> bool {
    for d in digits.iter_mut().rev() {
        if (*d as usize) + 1 < q {
            *d += 1;
            return true;
        }
        *d = 0;
    }
    false
}

/// Bialgebra axioms for `mu` with unit `u` on the coalgebra `(delta, eps)`,
/// all as index vectors in the layouts of the library.
pub struct RawCoalgebra<'a> {
    pub k: &'a SmallField,
    pub d: usize,
    pub delta: Vec<u8>,
    pub eps: Vec<u8>,
}

impl RawCoalgebra<'_> {
    pub fn from<'k>(k: &'k SmallField, c: &Coalgebra) -> RawCoalgebra<'k> {
        RawCoalgebra {
            k,
            d: c.dim(),
            delta: indices(c.constants()),
            eps: indices(c.counit()),
        }
    }

    fn m(&self, mu: &[u8], i: usize, j: usize, k: usize) -> u8 {
        mu[(i * self.d + j) * self.d + k]
    }

    pub fn unit_laws(&self, mu: &[u8], u: &[u8]) -> bool {
        let (k, d) = (self.k, self.d);
        (0..d).all(|j| {
            (0..d).all(|l| {
                let target = (j == l) as u8;
                k.sum((0..d).map(|i| k.mul(u[i], self.m(mu, i, j, l)))) == target
                    && k.sum((0..d).map(|i| k.mul(u[i], self.m(mu, j, i, l)))) == target
            })
        })
    }

    pub fn associative(&self, mu: &[u8]) -> bool {
        let (k, d) = (self.k, self.d);
        (0..d).all(|a| {
            (0..d).all(|b| {
                (0..d).all(|c| {
                    (0..d).all(|l| {
                        let left =
                            k.sum((0..d).map(|m| k.mul(self.m(mu, a, b, m), self.m(mu, m, c, l))));
                        let right =
                            k.sum((0..d).map(|m| k.mul(self.m(mu, b, c, m), self.m(mu, a, m, l))));
                        left == right
                    })
                })
            })
        })
    }

    fn delta_of(&self, v: &[u8]) -> Vec<u8> {
        let (k, d) = (self.k, self.d);
        (0..d * d)
            .map(|jk| k.sum((0..d).map(|i| k.mul(v[i], self.delta[i * d * d + jk]))))
            .collect()
    }

    fn eps_of(&self, v: &[u8]) -> u8 {
        self.k
            .sum((0..self.d).map(|i| self.k.mul(v[i], self.eps[i])))
    }

    pub fn compatible(&self, mu: &[u8], u: &[u8]) -> bool {
        let (k, d) = (self.k, self.d);
        let product = |i: usize, j: usize| (0..d).map(|l| self.m(mu, i, j, l)).collect::<Vec<u8>>();
        for i in 0..d {
            for j in 0..d {
                let lhs = self.delta_of(&product(i, j));
                let mut rhs = vec![0u8; d * d];
                for pq in 0..d * d {
                    for rs in 0..d * d {
                        let c = k.mul(self.delta[i * d * d + pq], self.delta[j * d * d + rs]);
                        if c == 0 {
                            continue;
                        }
                        let left = product(pq / d, rs / d);
                        let right = product(pq % d, rs % d);
                        for a in 0..d {
                            for b in 0..d {
                                let t = k.mul(c, k.mul(left[a], right[b]));
                                rhs[a * d + b] = k.add(rhs[a * d + b], t);
                            }
                        }
                    }
                }
                if lhs != rhs || self.eps_of(&product(i, j)) != k.mul(self.eps[i], self.eps[j]) {
                    return false;
                }
            }
        }
        let du = self.delta_of(u);
        let uu: Vec<u8> = (0..d * d).map(|n| k.mul(u[n / d], u[n % d])).collect();
        du == uu && self.eps_of(u) == 1
    }

    /// Every `(mu, unit)` over all `q^(d^3)` tables for the given unit
    /// candidates, with no linear pre-solve.
    pub fn bialgebras_with_units(&self, units: &[Vec<u8>]) -> Vec<(Vec<u8>, Vec<u8>)> {
        let d = self.d;
        let mut mu = vec![0u8; d * d * d];
        let mut found = Vec::new();
        loop {
            for u in units {
                if self.unit_laws(&mu, u) && self.associative(&mu) && self.compatible(&mu, u) {
                    found.push((mu.clone(), u.clone()));
                }
            }
            if !advance(&mut mu, self.k.q) {
                break;
            }
        }
        found.sort();
        found
    }

    /// Every `(mu, unit)` over all `q^(d^3)` tables and `q^d` units.
    pub fn all_bialgebras(&self) -> Vec<(Vec<u8>, Vec<u8>)> {
        let (q, d) = (self.k.q, self.d);
        let mut mu = vec![0u8; d * d * d];
        let mut found = Vec::new();
        loop {
            let mut u = vec![0u8; d];
            loop {
                if self.unit_laws(&mu, &u) && self.associative(&mu) && self.compatible(&mu, &u) {
                    found.push((mu.clone(), u.clone()));
                }
                if !advance(&mut u, q) {
                    break;
                }
            }
            if !advance(&mut mu, q) {
                break;
            }
        }
        found.sort();
        found
    }
}

/// `Delta(t) = sum c_ab x^a y^b` on `k[t]/(t^p - 1)` over a prime field of
/// characteristic `p`: every grid of `p^2` coefficients with coefficient sum
/// 1, `f(1, t) = f(t, 1) = t`, and `f(f(x, y), z) = f(x, f(y, z))`.
pub fn char_p_grids(p: usize) -> Vec<Vec<u8>> {
    let k = SmallField::prime(p);
    let n = p * p;
    let mut grid = vec![0u8; n];
    let mut found = Vec::new();
    loop {
        let sum_ok = k.sum(grid.iter().copied()) == 1;
        let counit = (0..p).all(|b| k.sum((0..p).map(|a| grid[a * p + b])) == (b == 1) as u8)
            && (0..p).all(|a| k.sum((0..p).map(|b| grid[a * p + b])) == (a == 1) as u8);
        if sum_ok && counit && coassociative(&k, p, &grid) {
            found.push(grid.clone());
        }
        if !advance(&mut grid, p) {
            break;
        }
    }
    found
}

/// Polynomials in `x, y, z` modulo `x^p = y^p = z^p = 1`, indexed `(a p + b) p + c`.
fn poly_mul(k: &SmallField, p: usize, f: &[u8], g: &[u8]) -> Vec<u8> {
    let mut out = vec![0u8; p * p * p];
    for (i, &a) in f.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in g.iter().enumerate() {
            if b == 0 {
                continue;
            }
            let e = |n: usize, s: usize| (n / s) % p;
            let idx = ((e(i, p * p) + e(j, p * p)) % p * p + (e(i, p) + e(j, p)) % p) * p
                + (i % p + j % p) % p;
            out[idx] = k.add(out[idx], k.mul(a, b));
        }
    }
    out
}

fn poly_pow(k: &SmallField, p: usize, f: &[u8], e: usize) -> Vec<u8> {
    let mut out = vec![0u8; p * p * p];
    out[0] = 1;
    for _ in 0..e {
        out = poly_mul(k, p, &out, f);
    }
    out
}

fn coassociative(k: &SmallField, p: usize, grid: &[u8]) -> bool {
    let monomial = |x: usize, y: usize, z: usize| {
        let mut v = vec![0u8; p * p * p];
        v[(x * p + y) * p + z] = 1;
        v
    };
    let embed = |g: &dyn Fn(usize, usize) -> Vec<u8>| {
        let mut out = vec![0u8; p * p * p];
        for a in 0..p {
            for b in 0..p {
                let c = grid[a * p + b];
                if c != 0 {
                    let term = g(a, b);
                    for (o, t) in out.iter_mut().zip(term) {
                        *o = k.add(*o, k.mul(c, t));
                    }
                }
            }
        }
        out
    };
    // f(x, y) and f(y, z) as polynomials in three variables.
    let fxy = embed(&|a, b| monomial(a, b, 0));
    let fyz = embed(&|a, b| monomial(0, a, b));
    let left = embed(&|a, b| poly_mul(k, p, &poly_pow(k, p, &fxy, a), &monomial(0, 0, b)));
    let right = embed(&|a, b| poly_mul(k, p, &monomial(a, 0, 0), &poly_pow(k, p, &fyz, b)));
    left == right
}
