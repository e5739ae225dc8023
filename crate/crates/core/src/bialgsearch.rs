//! Bialgebra structures on a fixed coalgebra.
//!
//! [`search_bialgebras`] finds every multiplication table making a coalgebra
//! over a finite field into a bialgebra. The unit of such a table must be
//! grouplike, and for a fixed unit the unit laws and multiplicativity of the
//! counit are linear in the structure constants. The search therefore solves
//! that linear system for each grouplike and enumerates only the resulting
//! affine space, checking associativity and compatibility of the
//! comultiplication with the product on each candidate.
//!
//! The closed-form classifications [`classify_trig`] and
//! [`classify_circulant`] work over any supported field and are checked
//! against the search in the test suites.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactfield::{is_prime, Field, FieldElement};
use crate::linalg::{Matrix, SolutionSet};
use crate::structconst::{
    basis_vector, check_coalgebra, circulant_coalgebra, format_vector, grouplikes,
    is_coalgebra_morphism, tensor, trig_coalgebra, Algebra, AxiomReport, Coalgebra, Dualize,
    ElementVec, Law,
};

/// Default number of candidate tables a search may examine.
pub const DEFAULT_SEARCH_BUDGET: u128 = 1 << 28;

/// A multiplication (with unit) on the underlying space of a coalgebra.
#[derive(Debug, Clone)]
pub struct MulTable {
    coalgebra: Arc<Coalgebra>,
    algebra: Algebra,
}

impl MulTable {
    pub fn new(coalgebra: Arc<Coalgebra>, algebra: Algebra) -> Result<Self> {
        if coalgebra.dim() != algebra.dim() || coalgebra.field() != algebra.field() {
            return Err(Error::DimensionMismatch(format!(
                "table of dimension {} over {} for a coalgebra of dimension {} over {}",
                algebra.dim(),
                algebra.field(),
                coalgebra.dim(),
                coalgebra.field()
            )));
        }
        let algebra = algebra.with_names(coalgebra.names().to_vec());
        Ok(MulTable { coalgebra, algebra })
    }

    fn from_constants(coalgebra: &Arc<Coalgebra>, mu: Vec<FieldElement>, unit: ElementVec) -> Self {
        let algebra = Algebra::new(coalgebra.field(), coalgebra.dim(), mu, unit)
            .expect("shape matches the coalgebra")
            .with_names(coalgebra.names().to_vec());
        MulTable {
            coalgebra: coalgebra.clone(),
            algebra,
        }
    }

    pub fn coalgebra(&self) -> &Coalgebra {
        &self.coalgebra
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn unit(&self) -> &[FieldElement] {
        self.algebra.unit()
    }

    pub fn product(&self, i: usize, j: usize) -> &[FieldElement] {
        self.algebra.product_of_basis(i, j)
    }

    /// Human-readable table: one `a*b = ..` line per basis product, then
    /// the unit.
    pub fn describe(&self) -> Vec<String> {
        let f = self.algebra.field();
        let names = self.algebra.names();
        let d = self.algebra.dim();
        let mut lines = Vec::new();
        for i in 0..d {
            for j in 0..d {
                let p = self.product(i, j);
                lines.push(format!(
                    "{}*{} = {}",
                    names[i],
                    names[j],
                    format_vector(f, names, p)
                ));
            }
        }
        lines.push(format!("unit = {}", format_vector(f, names, self.unit())));
        lines
    }
}

impl PartialEq for MulTable {
    fn eq(&self, other: &Self) -> bool {
        self.algebra == other.algebra
    }
}

impl Eq for MulTable {}

impl PartialOrd for MulTable {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on the constants, then the unit.
impl Ord for MulTable {
    fn cmp(&self, other: &Self) -> Ordering {
        self.algebra
            .constants()
            .cmp(other.algebra.constants())
            .then_with(|| self.algebra.unit().cmp(other.algebra.unit()))
    }
}

/// A family of tables indexed by the elements of the base field.
#[derive(Clone)]
pub struct Family {
    coalgebra: Arc<Coalgebra>,
    description: String,
    member: Arc<dyn Fn(&FieldElement) -> MulTable + Send + Sync>,
}

impl Family {
    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn member(&self, parameter: &FieldElement) -> MulTable {
        (self.member)(parameter)
    }

    /// One member per field element, in element order.
    pub fn materialize(&self) -> Result<Vec<MulTable>> {
        Ok(self
            .coalgebra
            .field()
            .elements()?
            .map(|e| self.member(&e))
            .collect())
    }
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Family")
            .field("description", &self.description)
            .finish()
    }
}

#[derive(Debug, Clone)]
pub enum Classification {
    Empty,
    FiniteList(Vec<MulTable>),
    OneParamFamily(Family),
}

impl Classification {
    pub fn materialize(&self) -> Result<Vec<MulTable>> {
        match self {
            Classification::Empty => Ok(Vec::new()),
            Classification::FiniteList(t) => Ok(t.clone()),
            Classification::OneParamFamily(fam) => fam.materialize(),
        }
    }
}

/// Compatibility of a multiplication with a comultiplication on the same
/// space: `Delta` and `eps` are multiplicative and the unit is grouplike.
pub fn check_bialgebra(a: &Algebra, c: &Coalgebra) -> Result<AxiomReport> {
    if a.dim() != c.dim() {
        return Err(Error::DimensionMismatch(format!(
            "algebra dim {} vs coalgebra dim {}",
            a.dim(),
            c.dim()
        )));
    }
    if a.field() != c.field() {
        return Err(Error::FieldMismatch(format!(
            "{} vs {}",
            a.field(),
            c.field()
        )));
    }
    let f = c.field();
    let d = c.dim();
    let checker = Checker::new(c);
    let mut report = AxiomReport::default();
    for i in 0..d {
        for j in 0..d {
            if !checker.compatible_pair(a.constants(), i, j) {
                report.push(Law::Compatibility, vec![i, j]);
            }
            let lhs = c.apply_counit(a.product_of_basis(i, j));
            if lhs != f.mul(&c.counit()[i], &c.counit()[j]) {
                report.push(Law::CounitMultiplicative, vec![i, j]);
            }
        }
    }
    let unit = a.unit();
    if c.comultiply(unit) != tensor(f, unit, unit) {
        report.push(Law::UnitGrouplike, vec![]);
    }
    if !f.is_one(&c.apply_counit(unit)) {
        report.push(Law::CounitOfUnit, vec![]);
    }
    Ok(report)
}

/// Quadratic checks on raw structure constants against a fixed coalgebra.
struct Checker<'a> {
    field: &'a Field,
    dim: usize,
    coalgebra: &'a Coalgebra,
    terms: Vec<Vec<(usize, usize, FieldElement)>>,
}

impl<'a> Checker<'a> {
    fn new(c: &'a Coalgebra) -> Self {
        Checker {
            field: c.field(),
            dim: c.dim(),
            coalgebra: c,
            terms: (0..c.dim()).map(|i| c.delta_terms(i)).collect(),
        }
    }

    fn basis_product<'m>(&self, mu: &'m [FieldElement], i: usize, j: usize) -> &'m [FieldElement] {
        let start = (i * self.dim + j) * self.dim;
        &mu[start..start + self.dim]
    }

    fn associative_triple(&self, mu: &[FieldElement], i: usize, j: usize, k: usize) -> bool {
        let f = self.field;
        let ij = self.basis_product(mu, i, j);
        let jk = self.basis_product(mu, j, k);
        (0..self.dim).all(|l| {
            let left = (0..self.dim).fold(f.zero(), |acc, m| {
                f.add(&acc, &f.mul(&ij[m], &self.basis_product(mu, m, k)[l]))
            });
            let right = (0..self.dim).fold(f.zero(), |acc, m| {
                f.add(&acc, &f.mul(&jk[m], &self.basis_product(mu, i, m)[l]))
            });
            left == right
        })
    }

    fn compatible_pair(&self, mu: &[FieldElement], i: usize, j: usize) -> bool {
        let f = self.field;
        let d = self.dim;
        let lhs = self.coalgebra.comultiply(self.basis_product(mu, i, j));
        let mut rhs = vec![f.zero(); d * d];
        for (p, q, c1) in &self.terms[i] {
            for (r, s, c2) in &self.terms[j] {
                let c = f.mul(c1, c2);
                let left = self.basis_product(mu, *p, *r);
                let right = self.basis_product(mu, *q, *s);
                for (a, x) in left.iter().enumerate() {
                    if f.is_zero(x) {
                        continue;
                    }
                    let cx = f.mul(&c, x);
                    for (b, y) in right.iter().enumerate() {
                        if !f.is_zero(y) {
                            let slot = &mut rhs[a * d + b];
                            *slot = f.add(slot, &f.mul(&cx, y));
                        }
                    }
                }
            }
        }
        lhs == rhs
    }

    /// Associativity on every triple, then compatibility on every pair,
    /// stopping at the first failure.
    fn accepts(&self, mu: &[FieldElement]) -> bool {
        let d = self.dim;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    if !self.associative_triple(mu, i, j, k) {
                        return false;
                    }
                }
            }
        }
        (0..d).all(|i| (0..d).all(|j| self.compatible_pair(mu, i, j)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Maximum number of candidate tables, summed over unit candidates.
    pub budget: u128,
    /// Worker threads; the output does not depend on this.
    pub jobs: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: DEFAULT_SEARCH_BUDGET,
            jobs: 1,
        }
    }
}

/// The linear constraints on `mu` for a fixed unit `g`: both unit laws and
/// `eps(e_i e_j) = eps(e_i) eps(e_j)`. Unknown `(i*d + j)*d + k` is `mu_ij^k`.
fn linear_constraints(c: &Coalgebra, g: &[FieldElement]) -> Result<SolutionSet> {
    let f = c.field();
    let d = c.dim();
    let n = d * d * d;
    let var = |i: usize, j: usize, k: usize| (i * d + j) * d + k;
    let mut rows: Vec<Vec<FieldElement>> = Vec::new();
    let mut rhs = Vec::new();
    for j in 0..d {
        for k in 0..d {
            let target = if j == k { f.one() } else { f.zero() };
            let mut left = vec![f.zero(); n];
            let mut right = vec![f.zero(); n];
            for (i, gi) in g.iter().enumerate() {
                left[var(i, j, k)] = f.add(&left[var(i, j, k)], gi);
                right[var(j, i, k)] = f.add(&right[var(j, i, k)], gi);
            }
            rows.push(left);
            rhs.push(target.clone());
            rows.push(right);
            rhs.push(target);
        }
    }
    let eps = c.counit();
    for i in 0..d {
        for j in 0..d {
            let mut row = vec![f.zero(); n];
            for (k, e) in eps.iter().enumerate() {
                row[var(i, j, k)] = e.clone();
            }
            rows.push(row);
            rhs.push(f.mul(&eps[i], &eps[j]));
        }
    }
    let m = Matrix::new(f, rows.len(), n, rows.into_iter().flatten().collect())?;
    m.solve(&rhs)
}

/// An affine space `particular + span(kernel)` over a finite field,
/// enumerated by index.
struct AffineSpace<'a> {
    field: &'a Field,
    order: u128,
    particular: Vec<FieldElement>,
    kernel: Vec<Vec<FieldElement>>,
}

impl AffineSpace<'_> {
    fn size(&self) -> u128 {
        self.order
            .checked_pow(self.kernel.len() as u32)
            .unwrap_or(u128::MAX)
    }

    /// Point number `n`; the first kernel coefficient is the most significant digit.
    fn point(&self, mut n: u128) -> Vec<FieldElement> {
        let f = self.field;
        let mut coeffs = vec![0u128; self.kernel.len()];
        for slot in coeffs.iter_mut().rev() {
            *slot = n % self.order;
            n /= self.order;
        }
        let mut v = self.particular.clone();
        for (c, basis) in coeffs.iter().zip(&self.kernel) {
            if *c == 0 {
                continue;
            }
            let c = f.element_at(*c as u64);
            for (slot, b) in v.iter_mut().zip(basis) {
                if !f.is_zero(b) {
                    *slot = f.add(slot, &f.mul(&c, b));
                }
            }
        }
        v
    }

    /// Points accepted by `keep`, split over `jobs` threads.
    fn filter(
        &self,
        jobs: usize,
        keep: impl Fn(&[FieldElement]) -> bool + Sync,
    ) -> Vec<Vec<FieldElement>> {
        let total = self.size();
        let jobs = (jobs.max(1) as u128).min(total.max(1));
        let chunk = total.div_ceil(jobs);
        let scan = |start: u128, end: u128| -> Vec<Vec<FieldElement>> {
            (start..end)
                .map(|n| self.point(n))
                .filter(|p| keep(p))
                .collect()
        };
        if jobs == 1 {
            return scan(0, total);
        }
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..jobs)
                .map(|w| {
                    let (start, end) = (w * chunk, ((w + 1) * chunk).min(total));
                    let scan = &scan;
                    scope.spawn(move || scan(start, end))
                })
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("search worker panicked"))
                .collect()
        })
    }
}

/// Every multiplication table making `c` a bialgebra, sorted and
/// deduplicated. `c` must be over a finite field.
pub fn search_bialgebras(c: &Coalgebra, options: &SearchOptions) -> Result<Vec<MulTable>> {
    let f = c.field();
    let order = f
        .order()
        .ok_or_else(|| Error::InfiniteField(f.to_string()))? as u128;
    let units = grouplikes(c)?;
    let mut spaces = Vec::new();
    for g in &units {
        if let SolutionSet::Solvable { particular, kernel } = linear_constraints(c, g)? {
            spaces.push((
                g,
                AffineSpace {
                    field: f,
                    order,
                    particular,
                    kernel,
                },
            ));
        }
    }
    let required = spaces
        .iter()
        .fold(0u128, |acc, (_, s)| acc.saturating_add(s.size()));
    if required > options.budget {
        return Err(Error::BudgetExceeded {
            required,
            budget: options.budget,
        });
    }
    let coalgebra = Arc::new(c.clone());
    let checker = Checker::new(c);
    let mut tables = Vec::new();
    for (g, space) in &spaces {
        for mu in space.filter(options.jobs, |mu| checker.accepts(mu)) {
            tables.push(MulTable::from_constants(&coalgebra, mu, g.to_vec()));
        }
    }
    tables.sort();
    tables.dedup();
    Ok(tables)
}

/// The table `x * y = phi^-1(phi(x) phi(y))` pulled back from a bialgebra
/// along a coalgebra isomorphism `phi` (columns are images of the basis).
pub fn transport_structure(
    c: &Coalgebra,
    target: (&Algebra, &Coalgebra),
    iso: &Matrix,
) -> Result<MulTable> {
    let (target_alg, target_coalg) = target;
    if target_alg.dim() != c.dim() || target_coalg.dim() != c.dim() {
        return Err(Error::DimensionMismatch(
            "transport between different dimensions".into(),
        ));
    }
    if !is_coalgebra_morphism(c, target_coalg, iso) {
        return Err(Error::NotAnIsomorphism);
    }
    let inv = iso.invert()?.ok_or(Error::NotAnIsomorphism)?;
    let d = c.dim();
    let images: Vec<ElementVec> = (0..d).map(|i| iso.column(i)).collect();
    let alg = Algebra::from_products(
        c.field(),
        d,
        |i, j| {
            inv.mul_vec(&target_alg.multiply(&images[i], &images[j]))
                .expect("square")
        },
        inv.mul_vec(target_alg.unit())?,
    )?;
    MulTable::new(Arc::new(c.clone()), alg)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..n {
            let mut p = rest.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out
}

/// Isomorphisms onto the group coalgebra of `k[Z/d]` for a coalgebra spanned
/// by grouplikes: each bijection between grouplikes and group elements
/// gives one. Empty when the grouplikes do not form a basis. Works over
/// infinite fields whenever [`grouplikes`] does.
pub fn isomorphisms_via_grouplikes(c: &Coalgebra) -> Result<Vec<Matrix>> {
    let f = c.field();
    let d = c.dim();
    let g = grouplikes(c)?;
    if g.len() != d {
        return Ok(Vec::new());
    }
    let Some(g_inv) = Matrix::from_columns(f, d, &g).invert()? else {
        return Ok(Vec::new());
    };
    let mut isos: Vec<Matrix> = permutations(d)
        .into_iter()
        .map(|sigma| {
            let targets: Vec<ElementVec> = sigma.iter().map(|&s| basis_vector(f, d, s)).collect();
            Matrix::from_columns(f, d, &targets)
                .mul(&g_inv)
                .expect("square")
        })
        .collect();
    isos.sort_by(|a, b| a.entries().cmp(b.entries()));
    Ok(isos)
}

/// Labeled monoid structures on `0..n` as row-major `n x n` tables, keeping
/// only those with `m(s x, s y) = s m(x, y)` for every permutation `s` in
/// `symmetries`.
pub fn monoid_structures(
    n: usize,
    symmetries: &[Vec<usize>],
    budget: u128,
) -> Result<Vec<Vec<usize>>> {
    let mut search = MonoidSearch {
        n,
        symmetries,
        table: vec![None; n * n],
        found: Vec::new(),
        nodes: 0,
        budget,
    };
    for unit in 0..n {
        if symmetries.iter().any(|s| s[unit] != unit) {
            continue;
        }
        search.table.iter_mut().for_each(|c| *c = None);
        for x in 0..n {
            search.table[unit * n + x] = Some(x);
            search.table[x * n + unit] = Some(x);
        }
        search.fill()?;
    }
    let mut found = search.found;
    found.sort();
    Ok(found)
}

struct MonoidSearch<'a> {
    n: usize,
    symmetries: &'a [Vec<usize>],
    table: Vec<Option<usize>>,
    found: Vec<Vec<usize>>,
    nodes: u128,
    budget: u128,
}

impl MonoidSearch<'_> {
    fn fill(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded {
                required: self.nodes,
                budget: self.budget,
            });
        }
        let Some(cell) = self.table.iter().position(Option::is_none) else {
            self.found
                .push(self.table.iter().map(|c| c.expect("filled")).collect());
            return Ok(());
        };
        let n = self.n;
        let (x, y) = (cell / n, cell % n);
        for z in 0..n {
            let mut assigned = Vec::new();
            let mut ok = true;
            for s in self.symmetries {
                let target = s[x] * n + s[y];
                match self.table[target] {
                    Some(w) if w != s[z] => ok = false,
                    Some(_) => {}
                    None => {
                        self.table[target] = Some(s[z]);
                        assigned.push(target);
                    }
                }
                if !ok {
                    break;
                }
            }
            if ok && self.consistent() {
                self.fill()?;
            }
            for a in assigned {
                self.table[a] = None;
            }
        }
        Ok(())
    }

    /// Associativity on every triple whose products are already defined.
    fn consistent(&self) -> bool {
        let n = self.n;
        let m = |a: usize, b: usize| self.table[a * n + b];
        (0..n).all(|x| {
            (0..n).all(|y| {
                (0..n).all(|z| match (m(x, y), m(y, z)) {
                    (Some(xy), Some(yz)) => match (m(xy, z), m(x, yz)) {
                        (Some(l), Some(r)) => l == r,
                        _ => true,
                    },
                    _ => true,
                })
            })
        })
    }
}

/// Tables for a coalgebra with a basis of grouplikes: the product of two
/// grouplikes is again grouplike, so each table is the linear extension of
/// a monoid structure on them. `None` when the grouplikes do not span.
fn grouplike_basis_tables(c: &Arc<Coalgebra>, budget: u128) -> Result<Option<Vec<MulTable>>> {
    let f = c.field();
    let d = c.dim();
    let g = grouplikes(c)?;
    if g.len() != d {
        return Ok(None);
    }
    let basis = Matrix::from_columns(f, d, &g);
    let Some(inv) = basis.invert()? else {
        return Ok(None);
    };
    let identity: Vec<usize> = (0..d).collect();
    let mut tables: Vec<MulTable> = monoid_structures(d, &[identity], budget)?
        .into_iter()
        .map(|m| {
            let unit = (0..d)
                .find(|&u| (0..d).all(|x| m[u * d + x] == x))
                .expect("monoid has a unit");
            let mut mu = Vec::with_capacity(d * d * d);
            for i in 0..d {
                for j in 0..d {
                    let mut w = vec![f.zero(); d];
                    for a in 0..d {
                        for b in 0..d {
                            let coeff = f.mul(inv.get(a, i), inv.get(b, j));
                            let slot = &mut w[m[a * d + b]];
                            *slot = f.add(slot, &coeff);
                        }
                    }
                    mu.extend(basis.mul_vec(&w).expect("square"));
                }
            }
            MulTable::from_constants(c, mu, g[unit].clone())
        })
        .collect();
    tables.sort();
    Ok(Some(tables))
}

/// Whether `Gal(k(w)/k)` acts on the primitive `p`-th roots of unity `w`
/// through all of `(Z/p)^x`, given that `k` contains none of them.
/// `None` when this is not decided here.
fn cyclotomic_is_irreducible(f: &Field, p: usize) -> Option<bool> {
    match f.order() {
        Some(q) => {
            let q = q % p as u64;
            let order = (1..p as u64).find(|&e| (0..e).fold(1, |acc, _| acc * q % p as u64) == 1);
            Some(order == Some(p as u64 - 1))
        }
        None if f.degree() == 1 || p <= 3 => Some(true),
        None => None,
    }
}

/// Tables on `C^p` when `char k != p` and `k` has no primitive `p`-th root
/// of unity `w`, with `Phi_p` irreducible over `k`. Over `k(w)` the
/// grouplikes `g_e = sum_j w^(ej) F_j` form a basis; tables defined over `k`
/// are the monoid structures on the exponents `e in Z/p` that commute with
/// every `e -> a e`. In the basis `F_j` the product is
/// `F_j F_k = p^-2 sum_l sum_(e,f) w^(m(e,f) l - e j - f k) F_l`,
/// and each such sum is `N_0 - N_1`, where `N_r` counts exponents equal to `r`.
fn descended_tables(c: &Arc<Coalgebra>, p: usize, budget: u128) -> Result<Vec<MulTable>> {
    let f = c.field();
    let symmetries: Vec<Vec<usize>> = (1..p)
        .map(|a| (0..p).map(|e| a * e % p).collect())
        .collect();
    let scale = f.inv(&f.from_int((p * p) as i64))?;
    let mut tables: Vec<MulTable> = monoid_structures(p, &symmetries, budget)?
        .into_iter()
        .map(|m| {
            let mut mu = Vec::with_capacity(p * p * p);
            for j in 0..p {
                for k in 0..p {
                    for l in 0..p {
                        let mut counts = vec![0i64; p];
                        for e in 0..p {
                            for g in 0..p {
                                let r = (m[e * p + g] * l + 2 * p * p - e * j - g * k) % p;
                                counts[r] += 1;
                            }
                        }
                        debug_assert!(counts[1..].iter().all(|&n| n == counts[1]));
                        mu.push(f.mul(&scale, &f.from_int(counts[0] - counts[1])));
                    }
                }
            }
            MulTable::from_constants(c, mu, vec![f.one(); p])
        })
        .collect();
    tables.sort();
    Ok(tables)
}

/// Bialgebra structures on the trigonometric coalgebra over `f`.
///
/// In characteristic 2 they form the family `c^2 = c + t s`, `cs = sc = t s`,
/// `s^2 = (t + 1) s` with unit `c + s`. Otherwise there are none unless
/// `-1` has a square root `i`. In that case `c + i s` and `c - i s` form a
/// basis of grouplikes, and there is one table for each of the four
/// monoid structures on them: the two group structures `s^2 = -/+ i s` and
/// the two in which the non-unit grouplike is idempotent.
pub fn classify_trig(f: &Field) -> Result<Classification> {
    let coalgebra = Arc::new(trig_coalgebra(f));
    if f.characteristic() == 2 {
        let c = coalgebra.clone();
        let field = f.clone();
        let member = move |t: &FieldElement| {
            let (zero, one) = (field.zero(), field.one());
            let mu = vec![
                one.clone(),
                t.clone(), // c*c
                zero.clone(),
                t.clone(), // c*s
                zero.clone(),
                t.clone(), // s*c
                zero,
                field.add(t, &one), // s*s
            ];
            MulTable::from_constants(&c, mu, vec![one.clone(), one])
        };
        return Ok(Classification::OneParamFamily(Family {
            coalgebra,
            description: "c*c = c + t*s, c*s = s*c = t*s, s*s = (t+1)*s, unit c + s".into(),
            member: Arc::new(member),
        }));
    }
    match grouplike_basis_tables(&coalgebra, DEFAULT_SEARCH_BUDGET)? {
        Some(tables) => Ok(Classification::FiniteList(tables)),
        None => Ok(Classification::Empty),
    }
}

/// `F_j F_k = [j = k] F_k` with unit `F_0 + .. + F_{p-1}`.
pub fn orthogonal_idempotents(c: &Arc<Coalgebra>) -> MulTable {
    let f = c.field();
    let d = c.dim();
    let mut mu = vec![f.zero(); d * d * d];
    for j in 0..d {
        mu[(j * d + j) * d + j] = f.one();
    }
    MulTable::from_constants(c, mu, vec![f.one(); d])
}

/// Bialgebra structures on the circulant coalgebra `C^p` over `f`.
///
/// Away from characteristic `p`, when `f` has the `p`-th roots of unity the
/// coalgebra has a basis of grouplikes and the tables are the labeled monoid
/// structures on them, the orthogonal idempotent table being the group
/// `Z/p`. Without the roots the tables are those of the equivariant monoids
/// described at `descended_tables`; over finite fields where `Phi_p` splits
/// into several factors the exhaustive search is used instead.
///
/// In characteristic `p` the tables are dual to the comultiplications of
/// [`char_p_comultiplications`]; for `p = 2` these form a family indexed by
/// the field, for larger `p` they are enumerated.
pub fn classify_circulant(f: &Field, p: usize) -> Result<Classification> {
    let coalgebra = Arc::new(circulant_coalgebra(f, p)?);
    if f.characteristic() != p as u64 {
        if let Some(tables) = grouplike_basis_tables(&coalgebra, DEFAULT_SEARCH_BUDGET)? {
            return Ok(Classification::FiniteList(tables));
        }
        return match cyclotomic_is_irreducible(f, p) {
            Some(true) => Ok(Classification::FiniteList(descended_tables(
                &coalgebra,
                p,
                DEFAULT_SEARCH_BUDGET,
            )?)),
            Some(false) => Ok(Classification::FiniteList(search_bialgebras(
                &coalgebra,
                &SearchOptions::default(),
            )?)),
            None => Err(Error::UnsupportedField(format!(
                "{f}: splitting of the {p}-th cyclotomic polynomial is not determined"
            ))),
        };
    }
    if p == 2 {
        let c = coalgebra.clone();
        let field = f.clone();
        let member = move |t: &FieldElement| {
            let grid = DualComulFamily::char_two_member(&field, t);
            comultiplication_to_table(&c, &grid)
        };
        return Ok(Classification::OneParamFamily(Family {
            coalgebra,
            description: "dual of Delta(t) = (1+D) t(x)t - D t(x)1 - D 1(x)t + D 1(x)1".into(),
            member: Arc::new(member),
        }));
    }
    let family = char_p_comultiplications(f, p, &SearchOptions::default())?;
    Ok(Classification::FiniteList(family.tables()))
}

/// A comultiplication `Delta(t) = sum c_ab s^a t^b` on `k[t]/(t^p - 1)`,
/// where `s^a t^b` stands for `t^a (x) t^b`. Coefficients are stored at
/// `a*p + b`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Comultiplication {
    pub grid: Vec<FieldElement>,
}

/// Found and predicted sizes of the characteristic-`p` family when they
/// differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountDiscrepancy {
    pub found: usize,
    pub predicted: u64,
}

impl fmt::Display for CountDiscrepancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "DISCREPANCY: found {} comultiplications, a family indexed by the field predicts {}",
            self.found, self.predicted
        )
    }
}

/// Bialgebra structures on `A = k[t]/(t^p - 1)` in characteristic `p`,
/// given by `Delta(t)`; `eps(t) = 1` is forced.
#[derive(Debug, Clone)]
pub struct DualComulFamily {
    field: Field,
    p: usize,
    linear_stage: SolutionSet,
    candidates: u128,
    members: Vec<Comultiplication>,
}

impl DualComulFamily {
    /// For `p = 2`: `Delta(t) = (1+D) st - D t - D s + D`.
    fn char_two_member(f: &Field, d: &FieldElement) -> Comultiplication {
        let minus = f.neg(d);
        Comultiplication {
            grid: vec![d.clone(), minus.clone(), minus, f.add(&f.one(), d)],
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn p(&self) -> usize {
        self.p
    }

    /// Solution of the linear conditions (coefficient sum and counitality).
    /// Unknowns run over the monomials `s^a t^b` in decreasing order of
    /// `b p + a`; for `p = 2` they are `A, B, C, D` in `A st + B t + C s + D`.
    pub fn linear_stage(&self) -> &SolutionSet {
        &self.linear_stage
    }

    /// Number of affine-space points checked for coassociativity.
    pub fn candidates_examined(&self) -> u128 {
        self.candidates
    }

    pub fn members(&self) -> &[Comultiplication] {
        &self.members
    }

    /// The bialgebra `(A, Delta)` as structure constants on the basis `t^j`.
    pub fn coalgebra_on_group_algebra(&self, member: &Comultiplication) -> Coalgebra {
        comultiplication_coalgebra(&self.field, self.p, member)
    }

    /// Dual multiplication tables on `C^p`, sorted.
    pub fn tables(&self) -> Vec<MulTable> {
        let c = Arc::new(circulant_coalgebra(&self.field, self.p).expect("p is prime"));
        let mut t: Vec<MulTable> = self
            .members
            .iter()
            .map(|m| comultiplication_to_table(&c, m))
            .collect();
        t.sort();
        t
    }

    /// Present when the number of members differs from `|k|`.
    pub fn discrepancy(&self) -> Option<CountDiscrepancy> {
        let predicted = self.field.order()?;
        (self.members.len() as u64 != predicted).then_some(CountDiscrepancy {
            found: self.members.len(),
            predicted,
        })
    }
}

/// `Delta(t^j) = Delta(t)^j` in `k[s, t]/(s^p - 1, t^p - 1)`.
fn comultiplication_coalgebra(f: &Field, p: usize, member: &Comultiplication) -> Coalgebra {
    let mut power = vec![f.zero(); p * p];
    power[0] = f.one();
    let mut delta = Vec::with_capacity(p * p * p);
    for _ in 0..p {
        delta.extend(power.iter().cloned());
        let mut next = vec![f.zero(); p * p];
        for (x, cx) in power.iter().enumerate() {
            if f.is_zero(cx) {
                continue;
            }
            for (y, cy) in member.grid.iter().enumerate() {
                if f.is_zero(cy) {
                    continue;
                }
                let a = (x / p + y / p) % p;
                let b = (x % p + y % p) % p;
                next[a * p + b] = f.add(&next[a * p + b], &f.mul(cx, cy));
            }
        }
        power = next;
    }
    let names = (0..p).map(|j| format!("t^{j}")).collect();
    Coalgebra::new(f, p, delta, vec![f.one(); p])
        .expect("well-formed")
        .with_names(names)
}

fn comultiplication_to_table(c: &Arc<Coalgebra>, member: &Comultiplication) -> MulTable {
    let dual = comultiplication_coalgebra(c.field(), c.dim(), member).dualize();
    MulTable::new(c.clone(), dual).expect("same shape")
}

/// All `Delta(t)` making `k[t]/(t^p - 1)` a bialgebra when `char k = p`.
///
/// The coefficient-sum and counit conditions `f(1,1) = 1`, `f(1,t) = t`,
/// `f(t,1) = t` are solved as a linear system; the affine solution space is
/// then filtered for coassociativity.
pub fn char_p_comultiplications(
    f: &Field,
    p: usize,
    options: &SearchOptions,
) -> Result<DualComulFamily> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if f.characteristic() != p as u64 {
        return Err(Error::WrongCharacteristic {
            expected: p as u64,
            found: f.characteristic(),
        });
    }
    let order = f
        .order()
        .ok_or_else(|| Error::InfiniteField(f.to_string()))? as u128;
    let n = p * p;
    let mut rows: Vec<FieldElement> = Vec::new();
    let mut rhs = Vec::new();
    let indicator = |hit: bool| if hit { f.one() } else { f.zero() };
    // Unknown v is the coefficient of s^a t^b with b p + a = n - 1 - v, so
    // for p = 2 the unknowns are A, B, C, D in A st + B t + C s + D.
    let monomial = |v: usize| ((n - 1 - v) % p, (n - 1 - v) / p);
    rows.extend(std::iter::repeat_n(f.one(), n));
    rhs.push(f.one());
    // f(1, t) = t
    for b in 0..p {
        rows.extend((0..n).map(|v| indicator(monomial(v).1 == b)));
        rhs.push(indicator(b == 1));
    }
    // f(t, 1) = t
    for a in 0..p {
        rows.extend((0..n).map(|v| indicator(monomial(v).0 == a)));
        rhs.push(indicator(a == 1));
    }
    let to_grid = |point: &[FieldElement]| {
        let mut grid = vec![f.zero(); n];
        for (v, c) in point.iter().enumerate() {
            let (a, b) = monomial(v);
            grid[a * p + b] = c.clone();
        }
        grid
    };
    let system = Matrix::new(f, 2 * p + 1, n, rows)?;
    let linear_stage = system.solve(&rhs)?;
    let SolutionSet::Solvable { particular, kernel } = linear_stage.clone() else {
        return Ok(DualComulFamily {
            field: f.clone(),
            p,
            linear_stage,
            candidates: 0,
            members: Vec::new(),
        });
    };
    let space = AffineSpace {
        field: f,
        order,
        particular,
        kernel,
    };
    let candidates = space.size();
    if candidates > options.budget {
        return Err(Error::BudgetExceeded {
            required: candidates,
            budget: options.budget,
        });
    }
    let mut members: Vec<Comultiplication> = space
        .filter(options.jobs, |point| {
            let m = Comultiplication {
                grid: to_grid(point),
            };
            check_coalgebra(&comultiplication_coalgebra(f, p, &m)).passed()
        })
        .into_iter()
        .map(|point| Comultiplication {
            grid: to_grid(&point),
        })
        .collect();
    members.sort();
    Ok(DualComulFamily {
        field: f.clone(),
        p,
        linear_stage,
        candidates,
        members,
    })
}
