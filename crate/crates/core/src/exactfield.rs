//! Exact arithmetic over the supported base fields.
//!
//! Four kinds of field are supported: prime fields `GF(p)`, their simple
//! extensions `GF(p)[x]/(m)`, the rationals `Q`, and number fields
//! `Q[x]/(m)` of degree at most four. A [`Field`] is a cheap, shareable
//! handle; [`FieldElement`]s are plain values whose meaning depends on the
//! field they were produced by.
//!
//! Finite field elements are stored as their index in the canonical element
//! order: the coefficient list `(a0, a1, ..)` of `a0 + a1 x + ..` read as the
//! base-`p` number `a0 + a1 p + ..`. Enumeration, canonical square roots and
//! every sorted output in the crate use this order.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Finite extension fields up to this order get precomputed operation tables.
const TABLE_LIMIT: u64 = 256;
/// Largest supported degree for number-field moduli.
const MAX_RATIONAL_DEGREE: usize = 4;
/// Divisor enumeration bound for the rational root and quartic factor tests.
const MAX_DIVISOR_SEARCH: u64 = 1 << 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Prime,
    PrimeExtension,
    Rationals,
    RationalExtension,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldElement {
    /// Index of a finite field element in the canonical order.
    Finite(u32),
    /// Coefficients over `Q` in ascending degree, reduced mod the modulus.
    Rational(Box<[BigRational]>),
}

impl FieldElement {
    pub fn index(&self) -> Option<u32> {
        match self {
            FieldElement::Finite(i) => Some(*i),
            FieldElement::Rational(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArithOutput {
    Element(FieldElement),
    Bool(bool),
}

/// A handle to an exact field.
#[derive(Clone)]
pub struct Field(Arc<Repr>);

enum Repr {
    Finite(FiniteField),
    Rational(RationalField),
}

struct FiniteField {
    p: u64,
    degree: usize,
    /// Monic modulus in ascending degree; `x` for prime fields.
    modulus: Vec<u64>,
    order: u64,
    tables: Option<Tables>,
}

struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

struct RationalField {
    degree: usize,
    /// Monic modulus in ascending degree; `x` for `Q` itself.
    modulus: Vec<BigRational>,
    extension: bool,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        match (&*self.0, &*other.0) {
            (Repr::Finite(a), Repr::Finite(b)) => a.p == b.p && a.modulus == b.modulus,
            (Repr::Rational(a), Repr::Rational(b)) => {
                a.extension == b.extension && a.modulus == b.modulus
            }
            _ => false,
        }
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({self})")
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            Repr::Finite(ff) => {
                write!(f, "GF({})", ff.p)?;
                if ff.degree > 1 {
                    write!(f, "[x]/[{}]", join(ff.modulus.iter()))?;
                }
                Ok(())
            }
            Repr::Rational(rf) => {
                write!(f, "Q")?;
                if rf.extension {
                    write!(f, "[x]/[{}]", join(rf.modulus.iter()))?;
                }
                Ok(())
            }
        }
    }
}

fn join<T: fmt::Display>(items: impl Iterator<Item = T>) -> String {
    items.map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_field(s)
    }
}

/// Parses a field spec: `Q`, `GF(p)`, `GF(p)[x]/[c0,..,1]` or `Q[x]/[c0,..,1]`.
pub fn parse_field(spec: &str) -> Result<Field> {
    let compact: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
    let malformed = |reason: &str| Error::MalformedSpec {
        spec: spec.to_string(),
        reason: reason.to_string(),
    };
    let (base, modulus) = match compact.split_once("[x]/") {
        Some((base, m)) => {
            let inner = m
                .strip_prefix('[')
                .and_then(|m| m.strip_suffix(']'))
                .ok_or_else(|| malformed("modulus must be a bracketed coefficient list"))?;
            let coeffs: Vec<&str> = inner.split(',').collect();
            if coeffs.len() < 2 {
                return Err(malformed("modulus must have degree at least 1"));
            }
            (base, Some(coeffs))
        }
        None => (compact.as_str(), None),
    };

    if base == "Q" {
        let Some(coeffs) = modulus else {
            return Ok(Field::rationals());
        };
        let modulus = coeffs
            .iter()
            .map(|c| parse_rational(c).ok_or_else(|| malformed("bad modulus coefficient")))
            .collect::<Result<Vec<_>>>()?;
        return Field::rational_extension(modulus);
    }

    let p = base
        .strip_prefix("GF(")
        .and_then(|b| b.strip_suffix(')'))
        .ok_or_else(|| malformed("expected `Q` or `GF(p)`"))?
        .parse::<u64>()
        .map_err(|_| malformed("characteristic must be a positive integer"))?;
    match modulus {
        None => Field::prime(p),
        Some(coeffs) => {
            let modulus = coeffs
                .iter()
                .map(|c| {
                    c.parse::<i64>()
                        .map_err(|_| malformed("bad modulus coefficient"))
                })
                .collect::<Result<Vec<_>>>()?;
            Field::prime_extension(p, &modulus)
        }
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn rationals() -> Field {
        Field(Arc::new(Repr::Rational(RationalField {
            degree: 1,
            modulus: vec![BigRational::zero(), BigRational::one()],
            extension: false,
        })))
    }

    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        if p > u32::MAX as u64 {
            return Err(Error::MalformedSpec {
                spec: format!("GF({p})"),
                reason: "characteristic too large".into(),
            });
        }
        Ok(Field(Arc::new(Repr::Finite(FiniteField {
            p,
            degree: 1,
            modulus: vec![0, 1],
            order: p,
            tables: None,
        }))))
    }

    /// `GF(p)[x]/(m)` for a monic modulus given in ascending degree.
    pub fn prime_extension(p: u64, modulus: &[i64]) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        let spec = format!("GF({p})[x]/[{}]", join(modulus.iter()));
        let malformed = |reason: &str| Error::MalformedSpec {
            spec: spec.clone(),
            reason: reason.to_string(),
        };
        let modulus: Vec<u64> = modulus
            .iter()
            .map(|&c| c.rem_euclid(p as i64) as u64)
            .collect();
        let degree = modulus.len() - 1;
        if degree == 0 || modulus[degree] != 1 {
            return Err(malformed("modulus must be monic of degree at least 1"));
        }
        let order = (0..degree).try_fold(1u64, |acc, _| acc.checked_mul(p));
        let order = match order {
            Some(o) if o <= u32::MAX as u64 => o,
            _ => return Err(malformed("field order exceeds 2^32")),
        };
        if !irreducible_mod_p(&modulus, p) {
            return Err(Error::ReducibleModulus(spec));
        }
        let mut ff = FiniteField {
            p,
            degree,
            modulus,
            order,
            tables: None,
        };
        if degree > 1 && order <= TABLE_LIMIT {
            ff.tables = Some(ff.build_tables());
        }
        Ok(Field(Arc::new(Repr::Finite(ff))))
    }

    /// `Q[x]/(m)` for a monic modulus of degree 1..=4, checked irreducible.
    pub fn rational_extension(modulus: Vec<BigRational>) -> Result<Field> {
        let spec = format!("Q[x]/[{}]", join(modulus.iter()));
        let degree = modulus.len() - 1;
        if degree == 0 || !modulus[degree].is_one() {
            return Err(Error::MalformedSpec {
                spec,
                reason: "modulus must be monic of degree at least 1".into(),
            });
        }
        if degree > MAX_RATIONAL_DEGREE {
            return Err(Error::UnsupportedField(spec));
        }
        if !irreducible_over_q(&modulus).ok_or_else(|| Error::UnsupportedField(spec.clone()))? {
            return Err(Error::ReducibleModulus(spec));
        }
        Ok(Field(Arc::new(Repr::Rational(RationalField {
            degree,
            modulus,
            extension: true,
        }))))
    }

    pub fn kind(&self) -> FieldKind {
        match &*self.0 {
            Repr::Finite(ff) if ff.degree == 1 => FieldKind::Prime,
            Repr::Finite(_) => FieldKind::PrimeExtension,
            Repr::Rational(rf) if rf.extension => FieldKind::RationalExtension,
            Repr::Rational(_) => FieldKind::Rationals,
        }
    }

    pub fn characteristic(&self) -> u64 {
        match &*self.0 {
            Repr::Finite(ff) => ff.p,
            Repr::Rational(_) => 0,
        }
    }

    /// Number of elements, or `None` for infinite fields.
    pub fn order(&self) -> Option<u64> {
        match &*self.0 {
            Repr::Finite(ff) => Some(ff.order),
            Repr::Rational(_) => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(&*self.0, Repr::Finite(_))
    }

    /// Degree over the prime field (or over `Q`).
    pub fn degree(&self) -> usize {
        match &*self.0 {
            Repr::Finite(ff) => ff.degree,
            Repr::Rational(rf) => rf.degree,
        }
    }

    pub fn zero(&self) -> FieldElement {
        match &*self.0 {
            Repr::Finite(_) => FieldElement::Finite(0),
            Repr::Rational(rf) => {
                FieldElement::Rational(vec![BigRational::zero(); rf.degree].into())
            }
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        match &*self.0 {
            Repr::Finite(ff) => FieldElement::Finite(n.rem_euclid(ff.p as i64) as u32),
            Repr::Rational(rf) => {
                let mut v = vec![BigRational::zero(); rf.degree];
                v[0] = BigRational::from_integer(n.into());
                FieldElement::Rational(v.into())
            }
        }
    }

    /// The class of `x`, the adjoined root of the modulus.
    pub fn generator(&self) -> FieldElement {
        match &*self.0 {
            Repr::Finite(ff) => FieldElement::Finite(ff.encode(&ff.reduce(vec![0, 1]))),
            Repr::Rational(rf) => {
                let x = vec![BigRational::zero(), BigRational::one()];
                FieldElement::Rational(rf.reduce(x).into())
            }
        }
    }

    /// Builds an element from base-field coefficients in ascending degree.
    pub fn from_coeffs(&self, coeffs: &[i64]) -> FieldElement {
        match &*self.0 {
            Repr::Finite(ff) => {
                let c = coeffs
                    .iter()
                    .map(|&c| c.rem_euclid(ff.p as i64) as u64)
                    .collect();
                FieldElement::Finite(ff.encode(&ff.reduce(c)))
            }
            Repr::Rational(rf) => {
                let c = coeffs
                    .iter()
                    .map(|&c| BigRational::from_integer(c.into()))
                    .collect();
                FieldElement::Rational(rf.reduce(c).into())
            }
        }
    }

    /// Coefficients over the prime field, ascending, padded to the degree.
    pub fn coeffs(&self, a: &FieldElement) -> Vec<String> {
        match (&*self.0, a) {
            (Repr::Finite(ff), FieldElement::Finite(i)) => {
                ff.digits(*i).iter().map(|d| d.to_string()).collect()
            }
            (Repr::Rational(_), FieldElement::Rational(c)) => {
                c.iter().map(|d| d.to_string()).collect()
            }
            _ => Vec::new(),
        }
    }

    pub fn contains(&self, a: &FieldElement) -> bool {
        match (&*self.0, a) {
            (Repr::Finite(ff), FieldElement::Finite(i)) => (*i as u64) < ff.order,
            (Repr::Rational(rf), FieldElement::Rational(c)) => c.len() == rf.degree,
            _ => false,
        }
    }

    pub fn is_zero(&self, a: &FieldElement) -> bool {
        match a {
            FieldElement::Finite(i) => *i == 0,
            FieldElement::Rational(c) => c.iter().all(Zero::is_zero),
        }
    }

    pub fn is_one(&self, a: &FieldElement) -> bool {
        *a == self.one()
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        match (&*self.0, a, b) {
            (Repr::Finite(ff), FieldElement::Finite(x), FieldElement::Finite(y)) => {
                FieldElement::Finite(ff.add(*x, *y))
            }
            (Repr::Rational(_), FieldElement::Rational(x), FieldElement::Rational(y)) => {
                FieldElement::Rational(x.iter().zip(y.iter()).map(|(x, y)| x + y).collect())
            }
            _ => panic!("{}", Error::FieldMismatch(self.to_string())),
        }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        match (&*self.0, a) {
            (Repr::Finite(ff), FieldElement::Finite(x)) => FieldElement::Finite(ff.neg(*x)),
            (Repr::Rational(_), FieldElement::Rational(x)) => {
                FieldElement::Rational(x.iter().map(|x| -x).collect())
            }
            _ => panic!("{}", Error::FieldMismatch(self.to_string())),
        }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        match (&*self.0, a, b) {
            (Repr::Finite(ff), FieldElement::Finite(x), FieldElement::Finite(y)) => {
                FieldElement::Finite(ff.mul(*x, *y))
            }
            (Repr::Rational(rf), FieldElement::Rational(x), FieldElement::Rational(y)) => {
                FieldElement::Rational(rf.mul(x, y).into())
            }
            _ => panic!("{}", Error::FieldMismatch(self.to_string())),
        }
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        match (&*self.0, a) {
            (Repr::Finite(ff), FieldElement::Finite(x)) => Ok(FieldElement::Finite(ff.inv(*x))),
            (Repr::Rational(rf), FieldElement::Rational(x)) => {
                Ok(FieldElement::Rational(rf.inv(x).into()))
            }
            _ => Err(Error::FieldMismatch(self.to_string())),
        }
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Membership-checked arithmetic; `b` is ignored by the unary ops.
    pub fn arith(&self, op: ArithOp, a: &FieldElement, b: &FieldElement) -> Result<ArithOutput> {
        let unary = matches!(op, ArithOp::Neg | ArithOp::Inv);
        if !self.contains(a) || (!unary && !self.contains(b)) {
            return Err(Error::FieldMismatch(self.to_string()));
        }
        let e = match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Sub => self.sub(a, b),
            ArithOp::Mul => self.mul(a, b),
            ArithOp::Div => self.div(a, b)?,
            ArithOp::Neg => self.neg(a),
            ArithOp::Inv => self.inv(a)?,
            ArithOp::Eq => return Ok(ArithOutput::Bool(a == b)),
        };
        Ok(ArithOutput::Element(e))
    }

    /// Every element once, in canonical order.
    pub fn elements(&self) -> Result<Elements> {
        match &*self.0 {
            Repr::Finite(ff) => Ok(Elements {
                next: 0,
                end: ff.order,
            }),
            Repr::Rational(_) => Err(Error::InfiniteField(self.to_string())),
        }
    }

    /// The element at position `index` of [`Field::elements`].
    pub fn element_at(&self, index: u64) -> FieldElement {
        debug_assert!(self.order().is_some_and(|q| index < q));
        FieldElement::Finite(index as u32)
    }

    /// All `r` with `r^n = 1`, paired with their multiplicative order and
    /// sorted by `(order, element)`.
    ///
    /// Number fields only search `±x^k`, which is complete for `Q(i)` and
    /// cyclotomic moduli but not in general.
    pub fn roots_of_unity(&self, n: u64) -> Vec<(FieldElement, u64)> {
        assert!(n >= 1, "roots_of_unity needs n >= 1");
        let one = self.one();
        let candidates: Vec<FieldElement> = match &*self.0 {
            Repr::Finite(ff) => (1..ff.order)
                .map(|i| FieldElement::Finite(i as u32))
                .collect(),
            Repr::Rational(rf) => {
                let x = self.generator();
                let mut c = Vec::new();
                let mut power = one.clone();
                let bound = if rf.extension {
                    2 * n.max(rf.degree as u64)
                } else {
                    0
                };
                for _ in 0..=bound {
                    c.push(self.neg(&power));
                    c.push(power.clone());
                    power = self.mul(&power, &x);
                }
                c.sort();
                c.dedup();
                c
            }
        };
        let mut roots: Vec<(FieldElement, u64)> = candidates
            .into_iter()
            .filter(|r| self.pow(r, n) == one)
            .map(|r| {
                let order = (1..=n)
                    .find(|&m| n.is_multiple_of(m) && self.pow(&r, m) == one)
                    .unwrap_or(n);
                (r, order)
            })
            .collect();
        roots.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
        roots
    }

    /// Some primitive `n`-th root of unity, the least in canonical order.
    pub fn primitive_root_of_unity(&self, n: u64) -> Option<FieldElement> {
        self.roots_of_unity(n)
            .into_iter()
            .find(|(_, o)| *o == n)
            .map(|(r, _)| r)
    }

    /// A canonical square root of `a`, if one exists.
    ///
    /// Finite fields return the least root in element order. In
    /// characteristic zero the root whose highest nonzero coefficient is
    /// positive is returned.
    pub fn sqrt(&self, a: &FieldElement) -> Result<Option<FieldElement>> {
        match (&*self.0, a) {
            (Repr::Finite(ff), FieldElement::Finite(x)) => Ok((0..ff.order)
                .map(|r| r as u32)
                .find(|&r| ff.mul(r, r) == *x)
                .map(FieldElement::Finite)),
            (Repr::Rational(rf), FieldElement::Rational(c)) => {
                let root = match rf.degree {
                    1 => rational_sqrt(&c[0]).map(|r| vec![r]),
                    2 => rf.quadratic_sqrt(c),
                    _ => return Err(Error::UnsupportedField(self.to_string())),
                };
                Ok(root.map(|r| {
                    let r = FieldElement::Rational(r.into());
                    let neg = self.neg(&r);
                    if leading_positive(&r) {
                        r
                    } else {
                        neg
                    }
                }))
            }
            _ => Err(Error::FieldMismatch(self.to_string())),
        }
    }

    /// Parses an element literal: an integer, `n/d`, or `[a0,a1,..]`.
    pub fn parse_element(&self, literal: &str) -> Result<FieldElement> {
        let bad = || Error::FieldMismatch(format!("{self} (literal `{literal}`)"));
        let s = literal.trim();
        let parts: Vec<BigRational> =
            if let Some(inner) = s.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
                inner
                    .split(',')
                    .map(|c| parse_rational(c).ok_or_else(bad))
                    .collect::<Result<_>>()?
            } else {
                vec![parse_rational(s).ok_or_else(bad)?]
            };
        match &*self.0 {
            Repr::Finite(ff) => {
                let p = BigInt::from(ff.p);
                let mut digits = Vec::with_capacity(parts.len());
                for q in &parts {
                    let n = q.numer().mod_floor(&p).to_u64().unwrap();
                    let d = q.denom().mod_floor(&p).to_u64().unwrap();
                    if d == 0 {
                        return Err(Error::DivisionByZero);
                    }
                    digits.push(n * pow_mod(d, ff.p - 2, ff.p) % ff.p);
                }
                Ok(FieldElement::Finite(ff.encode(&ff.reduce(digits))))
            }
            Repr::Rational(rf) => Ok(FieldElement::Rational(rf.reduce(parts).into())),
        }
    }

    /// Literal form of an element, accepted back by [`Field::parse_element`].
    pub fn format(&self, a: &FieldElement) -> String {
        match (&*self.0, a) {
            (Repr::Finite(ff), FieldElement::Finite(i)) if ff.degree == 1 => i.to_string(),
            (Repr::Rational(rf), FieldElement::Rational(c)) if !rf.extension => c[0].to_string(),
            _ => format!("[{}]", self.coeffs(a).join(",")),
        }
    }
}

fn leading_positive(a: &FieldElement) -> bool {
    match a {
        FieldElement::Rational(c) => c
            .iter()
            .rev()
            .find(|x| !x.is_zero())
            .is_none_or(|x| x.is_positive()),
        FieldElement::Finite(_) => true,
    }
}

pub struct Elements {
    next: u64,
    end: u64,
}

impl Iterator for Elements {
    type Item = FieldElement;

    fn next(&mut self) -> Option<FieldElement> {
        (self.next < self.end).then(|| {
            self.next += 1;
            FieldElement::Finite((self.next - 1) as u32)
        })
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = (self.end - self.next) as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

impl FiniteField {
    fn digits(&self, mut idx: u32) -> Vec<u64> {
        let mut d = vec![0; self.degree];
        for slot in d.iter_mut() {
            *slot = idx as u64 % self.p;
            idx = (idx as u64 / self.p) as u32;
        }
        d
    }

    fn encode(&self, digits: &[u64]) -> u32 {
        digits.iter().rev().fold(0u64, |acc, &d| acc * self.p + d) as u32
    }

    /// Reduces a coefficient vector modulo the modulus and pads to the degree.
    fn reduce(&self, mut c: Vec<u64>) -> Vec<u64> {
        let p = self.p;
        for v in c.iter_mut() {
            *v %= p;
        }
        while c.len() > self.degree {
            let top = c.pop().unwrap();
            if top != 0 {
                let shift = c.len() - self.degree;
                for (k, &m) in self.modulus[..self.degree].iter().enumerate() {
                    c[shift + k] = (c[shift + k] + (p - top) * m) % p;
                }
            }
        }
        c.resize(self.degree, 0);
        c
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        if self.degree == 1 {
            return ((a as u64 + b as u64) % self.p) as u32;
        }
        if let Some(t) = &self.tables {
            return t.add[a as usize * self.order as usize + b as usize];
        }
        self.raw_add(a, b)
    }

    fn raw_add(&self, a: u32, b: u32) -> u32 {
        let (x, y) = (self.digits(a), self.digits(b));
        let s: Vec<u64> = x.iter().zip(&y).map(|(x, y)| (x + y) % self.p).collect();
        self.encode(&s)
    }

    fn neg(&self, a: u32) -> u32 {
        if self.degree == 1 {
            return ((self.p - a as u64) % self.p) as u32;
        }
        if let Some(t) = &self.tables {
            return t.neg[a as usize];
        }
        self.raw_neg(a)
    }

    fn raw_neg(&self, a: u32) -> u32 {
        let n: Vec<u64> = self
            .digits(a)
            .iter()
            .map(|x| (self.p - x) % self.p)
            .collect();
        self.encode(&n)
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        if self.degree == 1 {
            return ((a as u64 * b as u64) % self.p) as u32;
        }
        if let Some(t) = &self.tables {
            return t.mul[a as usize * self.order as usize + b as usize];
        }
        self.raw_mul(a, b)
    }

    fn raw_mul(&self, a: u32, b: u32) -> u32 {
        let (x, y) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * self.degree - 1];
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + xi * yj) % self.p;
            }
        }
        self.encode(&self.reduce(prod))
    }

    fn inv(&self, a: u32) -> u32 {
        if self.degree == 1 {
            return pow_mod(a as u64, self.p - 2, self.p) as u32;
        }
        if let Some(t) = &self.tables {
            return t.inv[a as usize];
        }
        self.raw_inv(a)
    }

    fn raw_inv(&self, a: u32) -> u32 {
        let mut e = self.order - 2;
        let (mut base, mut acc) = (a, 1u32);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.raw_mul(acc, base);
            }
            base = self.raw_mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn build_tables(&self) -> Tables {
        let q = self.order as u32;
        let mut t = Tables {
            add: Vec::with_capacity((q * q) as usize),
            mul: Vec::with_capacity((q * q) as usize),
            neg: (0..q).map(|a| self.raw_neg(a)).collect(),
            inv: vec![0; q as usize],
        };
        for a in 0..q {
            for b in 0..q {
                t.add.push(self.raw_add(a, b));
                t.mul.push(self.raw_mul(a, b));
            }
        }
        for a in 1..q {
            t.inv[a as usize] = self.raw_inv(a);
        }
        t
    }
}

impl RationalField {
    fn reduce(&self, mut c: Vec<BigRational>) -> Vec<BigRational> {
        while c.len() > self.degree {
            let top = c.pop().unwrap();
            if !top.is_zero() {
                let shift = c.len() - self.degree;
                for (k, m) in self.modulus[..self.degree].iter().enumerate() {
                    c[shift + k] -= &top * m;
                }
            }
        }
        c.resize(self.degree, BigRational::zero());
        c
    }

    fn mul(&self, x: &[BigRational], y: &[BigRational]) -> Vec<BigRational> {
        let mut prod = vec![BigRational::zero(); x.len() + y.len() - 1];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                prod[i + j] += xi * yj;
            }
        }
        self.reduce(prod)
    }

    /// Inverse by solving `a * y = 1` in the power basis.
    fn inv(&self, a: &[BigRational]) -> Vec<BigRational> {
        let d = self.degree;
        // Column j holds a * x^j.
        let mut cols = Vec::with_capacity(d);
        let mut basis = vec![BigRational::zero(); d];
        for j in 0..d {
            basis.iter_mut().for_each(|b| *b = BigRational::zero());
            basis[j] = BigRational::one();
            cols.push(self.mul(a, &basis));
        }
        let mut aug: Vec<Vec<BigRational>> = (0..d)
            .map(|r| {
                let mut row: Vec<BigRational> = (0..d).map(|c| cols[c][r].clone()).collect();
                row.push(if r == 0 {
                    BigRational::one()
                } else {
                    BigRational::zero()
                });
                row
            })
            .collect();
        for col in 0..d {
            let pivot = (col..d)
                .find(|&r| !aug[r][col].is_zero())
                .expect("nonzero element of a field");
            aug.swap(col, pivot);
            let inv = aug[col][col].recip();
            for v in aug[col].iter_mut() {
                *v *= &inv;
            }
            for r in 0..d {
                if r != col && !aug[r][col].is_zero() {
                    let f = aug[r][col].clone();
                    for c in col..=d {
                        let delta = &f * &aug[col][c];
                        aug[r][c] -= delta;
                    }
                }
            }
        }
        aug.into_iter().map(|row| row[d].clone()).collect()
    }

    /// Square root in `Q[x]/(x^2 + m1 x + m0)`.
    ///
    /// Writing the root as `r0 + r1 x`, either `r1 = 0` and `r0^2 = a0`, or
    /// `R = r1^2` solves `(m1^2 - 4 m0) R^2 + (2 a1 m1 - 4 a0) R + a1^2 = 0`
    /// and `r0 = (a1 + m1 R) / (2 r1)`.
    fn quadratic_sqrt(&self, a: &[BigRational]) -> Option<Vec<BigRational>> {
        let (a0, a1) = (&a[0], &a[1]);
        let (m0, m1) = (&self.modulus[0], &self.modulus[1]);
        let two = BigRational::from_integer(2.into());
        let four = BigRational::from_integer(4.into());
        let mut candidates = Vec::new();
        if a1.is_zero() {
            if let Some(r0) = rational_sqrt(a0) {
                candidates.push(vec![r0, BigRational::zero()]);
            }
        }
        let qa = m1 * m1 - &four * m0;
        let qb = &two * a1 * m1 - &four * a0;
        let qc = a1 * a1;
        let mut rs = Vec::new();
        if qa.is_zero() {
            if !qb.is_zero() {
                rs.push(-qc / qb);
            }
        } else if let Some(disc) = rational_sqrt(&(&qb * &qb - &four * &qa * &qc)) {
            rs.push((-&qb + &disc) / (&two * &qa));
            rs.push((-&qb - disc) / (&two * &qa));
        }
        for r in rs.into_iter().filter(|r| !r.is_zero()) {
            if let Some(r1) = rational_sqrt(&r) {
                let r0 = (a1 + m1 * &r) / (&two * &r1);
                candidates.push(vec![r0, r1]);
            }
        }
        candidates.into_iter().find(|r| self.mul(r, r) == a)
    }
}

fn rational_sqrt(a: &BigRational) -> Option<BigRational> {
    if a.is_negative() {
        return None;
    }
    let n = a.numer().sqrt();
    let d = a.denom().sqrt();
    (&n * &n == *a.numer() && &d * &d == *a.denom()).then(|| BigRational::new(n, d))
}

fn poly_rem_mod_p(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let top = r.pop().unwrap();
        if top != 0 {
            let shift = r.len() - db;
            for k in 0..db {
                r[shift + k] = (r[shift + k] + (p - top) * b[k] % p) % p;
            }
        }
    }
    r
}

/// Trial division by every monic polynomial of degree up to half the degree.
fn irreducible_mod_p(m: &[u64], p: u64) -> bool {
    let n = m.len() - 1;
    for d in 1..=n / 2 {
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut f: Vec<u64> = (0..d).map(|k| idx / p.pow(k as u32) % p).collect();
            f.push(1);
            if poly_rem_mod_p(m, &f, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Irreducibility of a monic rational polynomial of degree at most four.
/// `None` when the divisor search would be too large.
fn irreducible_over_q(m: &[BigRational]) -> Option<bool> {
    let n = m.len() - 1;
    if n == 1 {
        return Some(true);
    }
    // Monic integral g(y) = L^n m(y / L).
    let l = m.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let g: Vec<BigInt> = m
        .iter()
        .enumerate()
        .map(|(k, c)| (c * BigRational::from_integer(num::pow(l.clone(), n - k))).to_integer())
        .collect();
    let eval = |y: &BigInt| g.iter().rev().fold(BigInt::zero(), |acc, c| acc * y + c);
    if g[0].is_zero() {
        return Some(false);
    }
    let divisors = signed_divisors(&g[0])?;
    if divisors.iter().any(|d| eval(d).is_zero()) {
        return Some(false);
    }
    if n < 4 {
        return Some(true);
    }
    // (y^2 + a y + b)(y^2 + c y + d) with b d = g0.
    let (g0, g1, g2, g3) = (&g[0], &g[1], &g[2], &g[3]);
    for b in &divisors {
        let d = g0 / b;
        if *b != d {
            let num = g1 - g3 * b;
            let den = &d - b;
            if !(&num % &den).is_zero() {
                continue;
            }
            let a = num / den;
            let c = g3 - &a;
            if b + &d + &a * &c == *g2 && &a * &d + b * &c == *g1 {
                return Some(false);
            }
        } else {
            if *g1 != b * g3 {
                continue;
            }
            let disc = g3 * g3 - BigInt::from(4) * (g2 - BigInt::from(2) * b);
            if disc.is_negative() {
                continue;
            }
            let s = disc.sqrt();
            if &s * &s == disc && (g3 + &s).is_even() {
                return Some(false);
            }
        }
    }
    Some(true)
}

fn signed_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64().filter(|&n| n <= MAX_DIVISOR_SEARCH)?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            for x in [d, n / d] {
                out.push(BigInt::from(x));
                out.push(-BigInt::from(x));
            }
        }
        d += 1;
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    #[test]
    fn parses_every_kind() {
        let f = parse_field("GF(5)").unwrap();
        assert_eq!(
            (f.kind(), f.characteristic(), f.order()),
            (FieldKind::Prime, 5, Some(5))
        );
        let q = parse_field("Q").unwrap();
        assert_eq!(
            (q.kind(), q.characteristic(), q.order()),
            (FieldKind::Rationals, 0, None)
        );
        let f4 = parse_field("GF(2)[x]/[1,1,1]").unwrap();
        assert_eq!(f4.kind(), FieldKind::PrimeExtension);
        assert_eq!(f4.order(), Some(4));
        let qi = parse_field("Q[x]/[1,0,1]").unwrap();
        assert_eq!(qi.kind(), FieldKind::RationalExtension);
        assert_eq!(qi.to_string(), "Q[x]/[1,0,1]");
    }

    #[test]
    fn gf4_modulus_has_no_root() {
        // x^2 + x + 1 at 0 and 1 over GF(2).
        for x in 0..2u64 {
            assert_ne!((x * x + x + 1) % 2, 0);
        }
        assert!(parse_field("GF(2)[x]/[1,1,1]").is_ok());
    }

    #[test]
    fn rejects_bad_specs() {
        assert_eq!(parse_field("GF(6)"), Err(Error::NonPrimeCharacteristic(6)));
        assert!(matches!(
            parse_field("GF(2)[x]/[1,0,1]"),
            Err(Error::ReducibleModulus(_))
        ));
        assert!(matches!(
            parse_field("Q[x]/[-1,0,1]"),
            Err(Error::ReducibleModulus(_))
        ));
        assert!(matches!(
            parse_field("GF(3)[x]/[1,0,2]"),
            Err(Error::MalformedSpec { .. })
        ));
        assert!(matches!(parse_field("R"), Err(Error::MalformedSpec { .. })));
        assert!(matches!(
            parse_field("GF(5"),
            Err(Error::MalformedSpec { .. })
        ));
        // x^4 + 4 = (x^2 + 2x + 2)(x^2 - 2x + 2) has no rational root.
        assert!(matches!(
            parse_field("Q[x]/[4,0,0,0,1]"),
            Err(Error::ReducibleModulus(_))
        ));
        // x^4 + 2x^2 + 9 = (x^2 + 2x + 3)(x^2 - 2x + 3)
        assert!(matches!(
            parse_field("Q[x]/[9,0,2,0,1]"),
            Err(Error::ReducibleModulus(_))
        ));
        // x^4 + 1 is irreducible over Q.
        assert!(parse_field("Q[x]/[1,0,0,0,1]").is_ok());
        // (x^2 + 1)^2
        assert!(matches!(
            parse_field("Q[x]/[1,0,2,0,1]"),
            Err(Error::ReducibleModulus(_))
        ));
        // x^4 over GF(2) with a quadratic factor but no root: (x^2+x+1)^2 = x^4+x^2+1.
        assert!(matches!(
            parse_field("GF(2)[x]/[1,0,1,0,1]"),
            Err(Error::ReducibleModulus(_))
        ));
        assert!(parse_field("GF(2)[x]/[1,1,0,0,1]").is_ok());
        assert!(matches!(
            parse_field("Q[x]/[1,0,0,0,0,1]"),
            Err(Error::UnsupportedField(_))
        ));
    }

    #[test]
    fn arithmetic_examples() {
        let f = gf(5);
        assert_eq!(f.mul(&f.from_int(3), &f.from_int(4)), f.from_int(2));
        let q = Field::rationals();
        let a = q.parse_element("2/3").unwrap();
        let b = q.parse_element("1/6").unwrap();
        assert_eq!(q.add(&a, &b), q.parse_element("5/6").unwrap());
        let f4 = parse_field("GF(2)[x]/[1,1,1]").unwrap();
        let x = f4.generator();
        assert_eq!(f4.mul(&x, &x), f4.parse_element("[1,1]").unwrap());
    }

    #[test]
    fn arith_errors() {
        let f = gf(5);
        assert_eq!(
            f.arith(ArithOp::Inv, &f.zero(), &f.zero()),
            Err(Error::DivisionByZero)
        );
        assert_eq!(
            f.arith(ArithOp::Div, &f.one(), &f.zero()),
            Err(Error::DivisionByZero)
        );
        let q = Field::rationals();
        assert!(matches!(
            f.arith(ArithOp::Add, &q.one(), &f.one()),
            Err(Error::FieldMismatch(_))
        ));
        assert!(matches!(
            f.arith(ArithOp::Add, &FieldElement::Finite(7), &f.one()),
            Err(Error::FieldMismatch(_))
        ));
        assert_eq!(
            f.arith(ArithOp::Eq, &f.from_int(6), &f.one()),
            Ok(ArithOutput::Bool(true))
        );
    }

    #[test]
    fn roots_of_unity_examples() {
        let f = gf(7);
        let r: Vec<(u32, u64)> = f
            .roots_of_unity(3)
            .into_iter()
            .map(|(e, o)| (e.index().unwrap(), o))
            .collect();
        assert_eq!(r, vec![(1, 1), (2, 3), (4, 3)]);
        let f = gf(5);
        let r: Vec<(u32, u64)> = f
            .roots_of_unity(4)
            .into_iter()
            .map(|(e, o)| (e.index().unwrap(), o))
            .collect();
        assert_eq!(r, vec![(1, 1), (4, 2), (2, 4), (3, 4)]);
        let q = Field::rationals();
        assert_eq!(q.roots_of_unity(3), vec![(q.one(), 1)]);
        assert_eq!(q.roots_of_unity(2), vec![(q.one(), 1), (q.from_int(-1), 2)]);
        let qi = parse_field("Q[x]/[1,0,1]").unwrap();
        assert_eq!(qi.roots_of_unity(4).len(), 4);
        assert_eq!(
            qi.primitive_root_of_unity(4).map(|r| qi.pow(&r, 2)),
            Some(qi.from_int(-1))
        );
    }

    #[test]
    fn sqrt_examples() {
        let f = gf(5);
        assert_eq!(f.sqrt(&f.from_int(-1)).unwrap(), Some(f.from_int(2)));
        let f = gf(3);
        assert_eq!(f.sqrt(&f.from_int(-1)).unwrap(), None);
        let q = Field::rationals();
        assert_eq!(q.sqrt(&q.from_int(4)).unwrap(), Some(q.from_int(2)));
        assert_eq!(
            q.sqrt(&q.parse_element("9/4").unwrap()).unwrap(),
            q.parse_element("3/2").ok()
        );
        assert_eq!(q.sqrt(&q.from_int(-1)).unwrap(), None);
        assert_eq!(q.sqrt(&q.from_int(2)).unwrap(), None);
        let qi = parse_field("Q[x]/[1,0,1]").unwrap();
        assert_eq!(qi.sqrt(&qi.from_int(-1)).unwrap(), Some(qi.generator()));
        // sqrt(2i) = 1 + i
        let two_i = qi.parse_element("[0,2]").unwrap();
        assert_eq!(qi.sqrt(&two_i).unwrap(), qi.parse_element("[1,1]").ok());
        let q2 = parse_field("Q[x]/[-2,0,1]").unwrap();
        assert_eq!(q2.sqrt(&q2.from_int(2)).unwrap(), Some(q2.generator()));
        assert_eq!(q2.sqrt(&q2.from_int(-1)).unwrap(), None);
        let q3 = parse_field("Q[x]/[-2,0,0,1]").unwrap();
        assert!(matches!(
            q3.sqrt(&q3.one()),
            Err(Error::UnsupportedField(_))
        ));
    }

    #[test]
    fn element_enumeration() {
        let f = gf(3);
        let e: Vec<String> = f.elements().unwrap().map(|e| f.format(&e)).collect();
        assert_eq!(e, ["0", "1", "2"]);
        let f4 = parse_field("GF(2)[x]/[1,1,1]").unwrap();
        let e: Vec<String> = f4.elements().unwrap().map(|e| f4.format(&e)).collect();
        assert_eq!(e, ["[0,0]", "[1,0]", "[0,1]", "[1,1]"]);
        assert!(matches!(
            Field::rationals().elements(),
            Err(Error::InfiniteField(_))
        ));
    }

    #[test]
    fn literals_round_trip() {
        for spec in ["GF(7)", "GF(3)[x]/[1,0,1]", "Q", "Q[x]/[1,0,1]"] {
            let f = parse_field(spec).unwrap();
            for lit in ["0", "1", "-1", "[2,1]"] {
                let e = f.parse_element(lit).unwrap();
                assert_eq!(f.parse_element(&f.format(&e)).unwrap(), e, "{spec} {lit}");
            }
        }
        let f = gf(5);
        assert_eq!(f.parse_element("1/2").unwrap(), f.from_int(3));
    }

    #[test]
    fn large_extension_without_tables() {
        // x^3 + 2x + 1 is irreducible over GF(7) (no roots).
        let f = parse_field("GF(7)[x]/[1,2,0,1]").unwrap();
        assert_eq!(f.order(), Some(343));
        let x = f.generator();
        let inv = f.inv(&x).unwrap();
        assert_eq!(f.mul(&x, &inv), f.one());
        assert_eq!(f.pow(&x, 342), f.one());
    }
}
