//! Algebras and coalgebras given by structure constants on a fixed basis.
//!
//! Multiplication constants are stored as `mu[(i*d + j)*d + k]`, the
//! coefficient of `e_k` in `e_i * e_j`. Comultiplication constants are
//! stored as `delta[(i*d + j)*d + k]`, the coefficient of `e_j (x) e_k` in
//! `Delta(e_i)`. Tensors of two vectors use the layout `j*d + k`.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactfield::{Field, FieldElement};
use crate::linalg::{Matrix, SolutionSet};

pub type ElementVec = Vec<FieldElement>;

/// Candidate budget for exhaustive element searches.
pub const DEFAULT_ELEMENT_BUDGET: u128 = 1 << 24;

/// Which constructor produced a coalgebra. Used to pick closed-form
/// grouplike computations when exhaustion is impossible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    Trigonometric,
    Circulant { p: usize },
    GroupCoalgebra { n: usize },
}

#[derive(Debug, Clone)]
pub struct Algebra {
    field: Field,
    dim: usize,
    mu: Vec<FieldElement>,
    unit: ElementVec,
    names: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct Coalgebra {
    field: Field,
    dim: usize,
    delta: Vec<FieldElement>,
    counit: ElementVec,
    names: Vec<String>,
    provenance: Option<Provenance>,
}

// Names and provenance are display metadata.
impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.dim == other.dim
            && self.mu == other.mu
            && self.unit == other.unit
    }
}

impl Eq for Algebra {}

impl PartialEq for Coalgebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.dim == other.dim
            && self.delta == other.delta
            && self.counit == other.counit
    }
}

impl Eq for Coalgebra {}

fn default_names(dim: usize) -> Vec<String> {
    (0..dim).map(|i| format!("e{i}")).collect()
}

fn check_shape(
    field: &Field,
    dim: usize,
    cube: &[FieldElement],
    vec: &[FieldElement],
) -> Result<()> {
    if dim == 0 {
        return Err(Error::DimensionMismatch(
            "dimension must be positive".into(),
        ));
    }
    if cube.len() != dim * dim * dim || vec.len() != dim {
        return Err(Error::DimensionMismatch(format!(
            "dimension {dim} needs {} structure constants and a length-{dim} vector, got {} and {}",
            dim * dim * dim,
            cube.len(),
            vec.len()
        )));
    }
    if cube.iter().chain(vec).any(|e| !field.contains(e)) {
        return Err(Error::FieldMismatch(field.to_string()));
    }
    Ok(())
}

impl Algebra {
    pub fn new(field: &Field, dim: usize, mu: Vec<FieldElement>, unit: ElementVec) -> Result<Self> {
        check_shape(field, dim, &mu, &unit)?;
        Ok(Algebra {
            field: field.clone(),
            dim,
            mu,
            unit,
            names: default_names(dim),
        })
    }

    /// Builds the algebra from a function giving `e_i * e_j`.
    pub fn from_products(
        field: &Field,
        dim: usize,
        mut product: impl FnMut(usize, usize) -> ElementVec,
        unit: ElementVec,
    ) -> Result<Self> {
        let mut mu = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let v = product(i, j);
                if v.len() != dim {
                    return Err(Error::DimensionMismatch(format!(
                        "product e{i}*e{j} has length {}",
                        v.len()
                    )));
                }
                mu.extend(v);
            }
        }
        Algebra::new(field, dim, mu, unit)
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        if names.len() == self.dim {
            self.names = names;
        }
        self
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn unit(&self) -> &[FieldElement] {
        &self.unit
    }

    pub fn constants(&self) -> &[FieldElement] {
        &self.mu
    }

    pub fn mu(&self, i: usize, j: usize, k: usize) -> &FieldElement {
        &self.mu[(i * self.dim + j) * self.dim + k]
    }

    /// `e_i * e_j` as a coordinate slice.
    pub fn product_of_basis(&self, i: usize, j: usize) -> &[FieldElement] {
        let start = (i * self.dim + j) * self.dim;
        &self.mu[start..start + self.dim]
    }

    pub fn multiply(&self, x: &[FieldElement], y: &[FieldElement]) -> ElementVec {
        let f = &self.field;
        let d = self.dim;
        let mut out = vec![f.zero(); d];
        for (i, xi) in x.iter().enumerate() {
            if f.is_zero(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if f.is_zero(yj) {
                    continue;
                }
                let c = f.mul(xi, yj);
                for (k, slot) in out.iter_mut().enumerate() {
                    let m = self.mu(i, j, k);
                    if !f.is_zero(m) {
                        *slot = f.add(slot, &f.mul(&c, m));
                    }
                }
            }
        }
        out
    }

    /// Matrix of `y -> x * y`.
    pub fn left_multiplication(&self, x: &[FieldElement]) -> Matrix {
        let f = &self.field;
        Matrix::from_fn(f, self.dim, self.dim, |k, j| {
            x.iter().enumerate().fold(f.zero(), |acc, (i, xi)| {
                f.add(&acc, &f.mul(xi, self.mu(i, j, k)))
            })
        })
    }

    pub fn basis_vector(&self, i: usize) -> ElementVec {
        basis_vector(&self.field, self.dim, i)
    }
}

impl Coalgebra {
    pub fn new(
        field: &Field,
        dim: usize,
        delta: Vec<FieldElement>,
        counit: ElementVec,
    ) -> Result<Self> {
        check_shape(field, dim, &delta, &counit)?;
        Ok(Coalgebra {
            field: field.clone(),
            dim,
            delta,
            counit,
            names: default_names(dim),
            provenance: None,
        })
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        if names.len() == self.dim {
            self.names = names;
        }
        self
    }

    fn with_provenance(mut self, p: Provenance) -> Self {
        self.provenance = Some(p);
        self
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn counit(&self) -> &[FieldElement] {
        &self.counit
    }

    pub fn constants(&self) -> &[FieldElement] {
        &self.delta
    }

    pub fn delta(&self, i: usize, j: usize, k: usize) -> &FieldElement {
        &self.delta[(i * self.dim + j) * self.dim + k]
    }

    /// Nonzero terms `(j, k, coeff)` of `Delta(e_i)`.
    pub fn delta_terms(&self, i: usize) -> Vec<(usize, usize, FieldElement)> {
        let d = self.dim;
        let mut out = Vec::new();
        for j in 0..d {
            for k in 0..d {
                let c = self.delta(i, j, k);
                if !self.field.is_zero(c) {
                    out.push((j, k, c.clone()));
                }
            }
        }
        out
    }

    /// `Delta(x)` in the `j*d + k` tensor layout.
    pub fn comultiply(&self, x: &[FieldElement]) -> ElementVec {
        let f = &self.field;
        let d = self.dim;
        let mut out = vec![f.zero(); d * d];
        for (i, xi) in x.iter().enumerate() {
            if f.is_zero(xi) {
                continue;
            }
            for (slot, c) in out.iter_mut().zip(&self.delta[i * d * d..(i + 1) * d * d]) {
                if !f.is_zero(c) {
                    *slot = f.add(slot, &f.mul(xi, c));
                }
            }
        }
        out
    }

    pub fn apply_counit(&self, x: &[FieldElement]) -> FieldElement {
        dot(&self.field, &self.counit, x)
    }

    pub fn is_grouplike(&self, g: &[FieldElement]) -> bool {
        self.field.is_one(&self.apply_counit(g)) && self.comultiply(g) == tensor(&self.field, g, g)
    }

    /// Constructor provenance, either carried from construction or
    /// recognized by comparing constants with the known families.
    pub fn provenance(&self) -> Option<Provenance> {
        if self.provenance.is_some() {
            return self.provenance;
        }
        let f = &self.field;
        if self.dim == 2 && *self == trig_coalgebra(f) {
            return Some(Provenance::Trigonometric);
        }
        if *self == group_algebra(f, self.dim).1 {
            return Some(Provenance::GroupCoalgebra { n: self.dim });
        }
        if crate::exactfield::is_prime(self.dim as u64)
            && *self == circulant_coalgebra(f, self.dim).ok()?
        {
            return Some(Provenance::Circulant { p: self.dim });
        }
        None
    }

    pub fn basis_vector(&self, i: usize) -> ElementVec {
        basis_vector(&self.field, self.dim, i)
    }
}

pub(crate) fn basis_vector(f: &Field, d: usize, i: usize) -> ElementVec {
    (0..d)
        .map(|k| if k == i { f.one() } else { f.zero() })
        .collect()
}

pub(crate) fn dot(f: &Field, a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
    a.iter()
        .zip(b)
        .fold(f.zero(), |acc, (x, y)| f.add(&acc, &f.mul(x, y)))
}

pub(crate) fn tensor(f: &Field, a: &[FieldElement], b: &[FieldElement]) -> ElementVec {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| f.mul(x, y)))
        .collect()
}

/// Renders a vector as a linear combination of basis names.
pub fn format_vector(f: &Field, names: &[String], v: &[FieldElement]) -> String {
    let mut out = String::new();
    for (c, n) in v.iter().zip(names).filter(|(c, _)| !f.is_zero(c)) {
        let lit = f.format(c);
        let (negative, magnitude) = match lit.strip_prefix('-') {
            Some(m) => (true, m),
            None => (false, lit.as_str()),
        };
        match (out.is_empty(), negative) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        let unit = f.is_one(c) || (negative && f.is_one(&f.neg(c)));
        if !unit {
            out.push_str(magnitude);
            out.push('*');
        }
        out.push_str(n);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Law {
    Associativity,
    LeftUnit,
    RightUnit,
    Coassociativity,
    LeftCounit,
    RightCounit,
    /// `Delta(e_i e_j) = Delta(e_i) Delta(e_j)`
    Compatibility,
    /// `eps(e_i e_j) = eps(e_i) eps(e_j)`
    CounitMultiplicative,
    /// `Delta(1) = 1 (x) 1`
    UnitGrouplike,
    /// `eps(1) = 1`
    CounitOfUnit,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Law::Associativity => "associativity",
            Law::LeftUnit => "left unit",
            Law::RightUnit => "right unit",
            Law::Coassociativity => "coassociativity",
            Law::LeftCounit => "left counit",
            Law::RightCounit => "right counit",
            Law::Compatibility => "comultiplication is multiplicative",
            Law::CounitMultiplicative => "counit is multiplicative",
            Law::UnitGrouplike => "unit is grouplike",
            Law::CounitOfUnit => "counit of unit",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub law: Law,
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn push(&mut self, law: Law, witness: Vec<usize>) {
        self.violations.push(Violation { law, witness });
    }
}

/// Associativity on all basis triples and the two-sided unit law.
pub fn check_algebra(a: &Algebra) -> AxiomReport {
    let d = a.dim;
    let mut report = AxiomReport::default();
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let left = a.multiply(a.product_of_basis(i, j), &a.basis_vector(k));
                let right = a.multiply(&a.basis_vector(i), a.product_of_basis(j, k));
                if left != right {
                    report.push(Law::Associativity, vec![i, j, k]);
                }
            }
        }
    }
    for j in 0..d {
        let e = a.basis_vector(j);
        if a.multiply(&a.unit, &e) != e {
            report.push(Law::LeftUnit, vec![j]);
        }
        if a.multiply(&e, &a.unit) != e {
            report.push(Law::RightUnit, vec![j]);
        }
    }
    report
}

/// `(Delta (x) id) Delta = (id (x) Delta) Delta` and both counit laws on
/// every basis vector.
pub fn check_coalgebra(c: &Coalgebra) -> AxiomReport {
    let f = &c.field;
    let d = c.dim;
    let mut report = AxiomReport::default();
    for i in 0..d {
        // Coefficient of e_a (x) e_b (x) e_k on each side.
        let mut ok = true;
        'outer: for a in 0..d {
            for b in 0..d {
                for k in 0..d {
                    let left = (0..d).fold(f.zero(), |acc, j| {
                        f.add(&acc, &f.mul(c.delta(i, j, k), c.delta(j, a, b)))
                    });
                    let right = (0..d).fold(f.zero(), |acc, j| {
                        f.add(&acc, &f.mul(c.delta(i, a, j), c.delta(j, b, k)))
                    });
                    if left != right {
                        ok = false;
                        break 'outer;
                    }
                }
            }
        }
        if !ok {
            report.push(Law::Coassociativity, vec![i]);
        }
        let e = c.basis_vector(i);
        let left: ElementVec = (0..d)
            .map(|k| {
                (0..d).fold(f.zero(), |acc, j| {
                    f.add(&acc, &f.mul(&c.counit[j], c.delta(i, j, k)))
                })
            })
            .collect();
        if left != e {
            report.push(Law::LeftCounit, vec![i]);
        }
        let right: ElementVec = (0..d)
            .map(|j| {
                (0..d).fold(f.zero(), |acc, k| {
                    f.add(&acc, &f.mul(&c.counit[k], c.delta(i, j, k)))
                })
            })
            .collect();
        if right != e {
            report.push(Law::RightCounit, vec![i]);
        }
    }
    report
}

/// The group algebra `k[Z/n]` with basis `|0>, .., |n-1>` and its
/// grouplike coalgebra structure.
pub fn group_algebra(f: &Field, n: usize) -> (Algebra, Coalgebra) {
    assert!(n >= 1, "group order must be positive");
    let names: Vec<String> = (0..n).map(|i| format!("|{i}>")).collect();
    let mut mu = vec![f.zero(); n * n * n];
    let mut delta = vec![f.zero(); n * n * n];
    for i in 0..n {
        for j in 0..n {
            mu[(i * n + j) * n + (i + j) % n] = f.one();
        }
        delta[(i * n + i) * n + i] = f.one();
    }
    let alg = Algebra::new(f, n, mu, basis_vector(f, n, 0))
        .expect("well-formed")
        .with_names(names.clone());
    let coalg = Coalgebra::new(f, n, delta, vec![f.one(); n])
        .expect("well-formed")
        .with_names(names)
        .with_provenance(Provenance::GroupCoalgebra { n });
    (alg, coalg)
}

/// The trigonometric coalgebra on `(c, s)`:
/// `Delta(c) = c(x)c - s(x)s`, `Delta(s) = s(x)c + c(x)s`, `eps = (1, 0)`.
pub fn trig_coalgebra(f: &Field) -> Coalgebra {
    let (one, zero, minus) = (f.one(), f.zero(), f.from_int(-1));
    #[rustfmt::skip]
    let delta = vec![
        // Delta(c): cc, cs, sc, ss
        one.clone(), zero.clone(), zero.clone(), minus,
        // Delta(s)
        zero.clone(), one.clone(), one.clone(), zero.clone(),
    ];
    Coalgebra::new(f, 2, delta, vec![one, zero])
        .expect("well-formed")
        .with_names(vec!["c".into(), "s".into()])
        .with_provenance(Provenance::Trigonometric)
}

/// The circulant coalgebra on `F_0, .., F_{p-1}`:
/// `Delta(F_j) = sum over I + J = j mod p of F_I (x) F_J`, `eps(F_j) = [j = 0]`.
pub fn circulant_coalgebra(f: &Field, p: usize) -> Result<Coalgebra> {
    if !crate::exactfield::is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    let mut delta = vec![f.zero(); p * p * p];
    for a in 0..p {
        for b in 0..p {
            delta[((a + b) % p * p + a) * p + b] = f.one();
        }
    }
    Ok(Coalgebra::new(f, p, delta, basis_vector(f, p, 0))
        .expect("well-formed")
        .with_names((0..p).map(|j| format!("F{j}")).collect())
        .with_provenance(Provenance::Circulant { p }))
}

/// Transpose of structure constants with respect to the dual basis.
pub trait Dualize {
    type Dual;
    fn dualize(&self) -> Self::Dual;
}

impl Dualize for Algebra {
    type Dual = Coalgebra;

    /// `delta_k^{ij} = mu_{ij}^k`, counit = unit coordinates.
    fn dualize(&self) -> Coalgebra {
        let d = self.dim;
        let mut delta = vec![self.field.zero(); d * d * d];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    delta[(k * d + i) * d + j] = self.mu(i, j, k).clone();
                }
            }
        }
        Coalgebra::new(&self.field, d, delta, self.unit.clone())
            .expect("well-formed")
            .with_names(self.names.clone())
    }
}

impl Dualize for Coalgebra {
    type Dual = Algebra;

    fn dualize(&self) -> Algebra {
        let d = self.dim;
        let mut mu = vec![self.field.zero(); d * d * d];
        for k in 0..d {
            for i in 0..d {
                for j in 0..d {
                    mu[(i * d + j) * d + k] = self.delta(k, i, j).clone();
                }
            }
        }
        Algebra::new(&self.field, d, mu, self.counit.clone())
            .expect("well-formed")
            .with_names(self.names.clone())
    }
}

pub fn dualize<X: Dualize>(x: &X) -> X::Dual {
    x.dualize()
}

/// Iterates all vectors of `F^d` in lexicographic order (last coordinate
/// fastest), after checking `|F|^d` against the budget.
pub(crate) fn all_vectors(
    f: &Field,
    d: usize,
    budget: u128,
) -> Result<impl Iterator<Item = ElementVec>> {
    let q = f
        .order()
        .ok_or_else(|| Error::InfiniteField(f.to_string()))? as u128;
    let total = q.checked_pow(d as u32).unwrap_or(u128::MAX);
    if total > budget {
        return Err(Error::BudgetExceeded {
            required: total,
            budget,
        });
    }
    let f = f.clone();
    Ok((0..total).map(move |mut n| {
        let mut v = vec![f.zero(); d];
        for slot in v.iter_mut().rev() {
            *slot = f.element_at((n % q) as u64);
            n /= q;
        }
        v
    }))
}

/// All grouplike elements, sorted.
pub fn grouplikes(c: &Coalgebra) -> Result<Vec<ElementVec>> {
    grouplikes_with_budget(c, DEFAULT_ELEMENT_BUDGET)
}

/// Finite fields within budget are searched exhaustively; otherwise the
/// closed forms for recognized constructor families are used.
pub fn grouplikes_with_budget(c: &Coalgebra, budget: u128) -> Result<Vec<ElementVec>> {
    let f = &c.field;
    match all_vectors(f, c.dim, budget) {
        Ok(candidates) => return Ok(candidates.filter(|g| c.is_grouplike(g)).collect()),
        Err(e @ Error::BudgetExceeded { .. }) if c.provenance().is_none() => return Err(e),
        Err(_) => {}
    }
    let mut out = match c.provenance() {
        Some(Provenance::Trigonometric) => match f.sqrt(&f.from_int(-1))? {
            None => Vec::new(),
            Some(i) => vec![vec![f.one(), i.clone()], vec![f.one(), f.neg(&i)]],
        },
        Some(Provenance::Circulant { p }) => f
            .roots_of_unity(p as u64)
            .into_iter()
            .map(|(t, _)| (0..p).map(|j| f.pow(&t, j as u64)).collect())
            .collect(),
        Some(Provenance::GroupCoalgebra { n }) => (0..n).map(|i| c.basis_vector(i)).collect(),
        None => return Err(Error::UnsupportedInfiniteSearch(f.to_string())),
    };
    out.sort();
    out.dedup();
    debug_assert!(out.iter().all(|g| c.is_grouplike(g)));
    Ok(out)
}

/// Two-sided inverse of `x`, found by solving `x * y = 1`.
pub fn element_inverse(a: &Algebra, x: &[FieldElement]) -> Option<ElementVec> {
    let y = match a.left_multiplication(x).solve(&a.unit).ok()? {
        SolutionSet::Empty => return None,
        SolutionSet::Solvable { particular, .. } => particular,
    };
    (a.multiply(x, &y) == a.unit && a.multiply(&y, x) == a.unit).then_some(y)
}

/// Number of invertible elements, by exhaustion.
pub fn count_units(a: &Algebra) -> Result<u64> {
    count_units_with_budget(a, DEFAULT_ELEMENT_BUDGET)
}

pub fn count_units_with_budget(a: &Algebra, budget: u128) -> Result<u64> {
    Ok(all_vectors(&a.field, a.dim, budget)?
        .filter(|x| a.left_multiplication(x).rank() == a.dim && element_inverse(a, x).is_some())
        .count() as u64)
}

/// Whether `phi` (columns are images of the basis of `c1`) commutes with
/// the comultiplications and counits. Invertibility is not checked.
pub fn is_coalgebra_morphism(c1: &Coalgebra, c2: &Coalgebra, phi: &Matrix) -> bool {
    let f = &c1.field;
    let d = c1.dim;
    if phi.rows() != c2.dim || phi.cols() != d {
        return false;
    }
    for j in 0..d {
        let col = phi.column(j);
        if c2.apply_counit(&col) != c1.counit[j] {
            return false;
        }
    }
    for i in 0..d {
        let image = phi.column(i);
        let left = c2.comultiply(&image);
        let mut right = vec![f.zero(); c2.dim * c2.dim];
        for (j, k, coeff) in c1.delta_terms(i) {
            let t = tensor(f, &phi.column(j), &phi.column(k));
            for (slot, v) in right.iter_mut().zip(t) {
                *slot = f.add(slot, &f.mul(&coeff, &v));
            }
        }
        if left != right {
            return false;
        }
    }
    true
}

/// All coalgebra isomorphisms `c1 -> c2`, by enumerating every matrix.
pub fn coalgebra_isomorphisms(c1: &Coalgebra, c2: &Coalgebra) -> Result<Vec<Matrix>> {
    coalgebra_isomorphisms_with_budget(c1, c2, DEFAULT_ELEMENT_BUDGET)
}

pub fn coalgebra_isomorphisms_with_budget(
    c1: &Coalgebra,
    c2: &Coalgebra,
    budget: u128,
) -> Result<Vec<Matrix>> {
    if c1.dim != c2.dim {
        return Err(Error::DimensionMismatch(format!(
            "dimensions {} and {}",
            c1.dim, c2.dim
        )));
    }
    if c1.field != c2.field {
        return Err(Error::FieldMismatch(format!(
            "{} vs {}",
            c1.field, c2.field
        )));
    }
    let f = &c1.field;
    let d = c1.dim;
    Ok(all_vectors(f, d * d, budget)?
        .map(|entries| Matrix::new(f, d, d, entries).expect("d*d entries"))
        .filter(|m| is_coalgebra_morphism(c1, c2, m) && m.rank() == d)
        .collect())
}
