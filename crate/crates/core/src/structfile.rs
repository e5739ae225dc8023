//! Line-oriented text format for structure constants.
//!
//! ```text
//! field GF(5)
//! dim 2
//! names c s
//! delta 0: 0 0 1, 1 1 -1      # Delta(c) = c(x)c - s(x)s
//! delta 1: 1 0 1, 0 1 1
//! eps: 1 0
//! mu 0 0: 0 1                 # c*c = c
//! unit: 1 0
//! ```
//!
//! `delta i: j k c, ..` lists the terms `c e_j (x) e_k` of `Delta(e_i)` and
//! `mu i j: k c, ..` the terms `c e_k` of `e_i e_j`; omitted lines are zero.
//! `delta`/`eps` describe a coalgebra and `mu`/`unit` an algebra. Either
//! block may be absent. Coefficients use the literal syntax of
//! [`Field::parse_element`].

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exactfield::{parse_field, Field, FieldElement};
use crate::structconst::{Algebra, Coalgebra};

#[derive(Debug, Clone, PartialEq)]
pub struct StructureFile {
    pub field: Field,
    pub dim: usize,
    pub names: Vec<String>,
    pub coalgebra: Option<Coalgebra>,
    pub algebra: Option<Algebra>,
}

impl StructureFile {
    pub fn from_coalgebra(c: &Coalgebra) -> Self {
        StructureFile {
            field: c.field().clone(),
            dim: c.dim(),
            names: c.names().to_vec(),
            coalgebra: Some(c.clone()),
            algebra: None,
        }
    }

    pub fn from_algebra(a: &Algebra) -> Self {
        StructureFile {
            field: a.field().clone(),
            dim: a.dim(),
            names: a.names().to_vec(),
            coalgebra: None,
            algebra: Some(a.clone()),
        }
    }

    /// Both structures on one space; names are taken from the coalgebra.
    pub fn from_pair(a: &Algebra, c: &Coalgebra) -> Self {
        StructureFile {
            algebra: Some(a.clone()),
            ..StructureFile::from_coalgebra(c)
        }
    }
}

/// Splits on `sep` outside square brackets.
fn split_outside_brackets(s: &str, sep: impl Fn(char) -> bool) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth = depth.saturating_sub(1),
            c if depth == 0 && sep(c) => {
                parts.push(&s[start..i]);
                start = i + ch.len_utf8();
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
        .into_iter()
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .collect()
}

struct Parser {
    line: usize,
}

impl Parser {
    fn err(&self, reason: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            reason: reason.into(),
        }
    }

    fn index(&self, token: &str, dim: usize) -> Result<usize> {
        let i: usize = token
            .parse()
            .map_err(|_| self.err(format!("bad index `{token}`")))?;
        if i >= dim {
            return Err(self.err(format!("index {i} out of range for dimension {dim}")));
        }
        Ok(i)
    }

    fn element(&self, f: &Field, literal: &str) -> Result<FieldElement> {
        f.parse_element(literal)
            .map_err(|e| self.err(e.to_string()))
    }

    fn vector(&self, f: &Field, rest: &str, dim: usize) -> Result<Vec<FieldElement>> {
        let tokens = split_outside_brackets(rest, char::is_whitespace);
        if tokens.len() != dim {
            return Err(self.err(format!(
                "expected {dim} coefficients, found {}",
                tokens.len()
            )));
        }
        tokens.iter().map(|t| self.element(f, t)).collect()
    }

    /// `a b c, a b c, ..` with `indices` leading indices per term.
    fn terms(
        &self,
        f: &Field,
        rest: &str,
        indices: usize,
        dim: usize,
    ) -> Result<Vec<(Vec<usize>, FieldElement)>> {
        split_outside_brackets(rest, |c| c == ',')
            .into_iter()
            .map(|term| {
                let tokens = split_outside_brackets(term, char::is_whitespace);
                if tokens.len() != indices + 1 {
                    return Err(self.err(format!("malformed term `{term}`")));
                }
                let idx = tokens[..indices]
                    .iter()
                    .map(|t| self.index(t, dim))
                    .collect::<Result<_>>()?;
                Ok((idx, self.element(f, tokens[indices])?))
            })
            .collect()
    }
}

fn parse(text: &str) -> Result<StructureFile> {
    let mut p = Parser { line: 0 };
    let mut field: Option<Field> = None;
    let mut dim: Option<usize> = None;
    let mut names: Option<Vec<String>> = None;
    let mut delta: Option<Vec<FieldElement>> = None;
    let mut mu: Option<Vec<FieldElement>> = None;
    let mut eps = None;
    let mut unit = None;
    let mut seen_delta = Vec::new();
    let mut seen_mu = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        p.line = n + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (head, rest) = match line.split_once(':') {
            Some((h, r)) => (h.trim(), Some(r.trim())),
            None => (line, None),
        };
        let mut words = head.split_whitespace();
        let keyword = words.next().unwrap_or("");
        let args: Vec<&str> = words.collect();
        if keyword == "field" {
            if field.is_some() {
                return Err(p.err("duplicate `field` line"));
            }
            let spec = line["field".len()..].trim();
            field = Some(parse_field(spec).map_err(|e| p.err(e.to_string()))?);
            continue;
        }
        let f = field
            .clone()
            .ok_or_else(|| p.err("`field` must come first"))?;
        if keyword == "dim" {
            if dim.is_some() {
                return Err(p.err("duplicate `dim` line"));
            }
            let d: usize = match args.as_slice() {
                [d] => d
                    .parse()
                    .map_err(|_| p.err(format!("bad dimension `{d}`")))?,
                _ => return Err(p.err("expected `dim <d>`")),
            };
            if d == 0 {
                return Err(p.err("dimension must be positive"));
            }
            dim = Some(d);
            continue;
        }
        let d = dim.ok_or_else(|| p.err("`dim` must come before structure constants"))?;
        match (keyword, rest) {
            ("names", None) => {
                if args.len() != d {
                    return Err(p.err(format!("expected {d} names, found {}", args.len())));
                }
                names = Some(args.iter().map(|s| s.to_string()).collect());
            }
            ("delta", Some(rest)) => {
                let [i] = args.as_slice() else {
                    return Err(p.err("expected `delta <i>:`"));
                };
                let i = p.index(i, d)?;
                if seen_delta.contains(&i) {
                    return Err(p.err(format!("duplicate `delta {i}` line")));
                }
                seen_delta.push(i);
                let table = delta.get_or_insert_with(|| vec![f.zero(); d * d * d]);
                for (idx, c) in p.terms(&f, rest, 2, d)? {
                    let slot = &mut table[(i * d + idx[0]) * d + idx[1]];
                    *slot = f.add(slot, &c);
                }
            }
            ("mu", Some(rest)) => {
                let [i, j] = args.as_slice() else {
                    return Err(p.err("expected `mu <i> <j>:`"));
                };
                let (i, j) = (p.index(i, d)?, p.index(j, d)?);
                if seen_mu.contains(&(i, j)) {
                    return Err(p.err(format!("duplicate `mu {i} {j}` line")));
                }
                seen_mu.push((i, j));
                let table = mu.get_or_insert_with(|| vec![f.zero(); d * d * d]);
                for (idx, c) in p.terms(&f, rest, 1, d)? {
                    let slot = &mut table[(i * d + j) * d + idx[0]];
                    *slot = f.add(slot, &c);
                }
            }
            ("eps", Some(rest)) if args.is_empty() => eps = Some(p.vector(&f, rest, d)?),
            ("unit", Some(rest)) if args.is_empty() => unit = Some(p.vector(&f, rest, d)?),
            _ => return Err(p.err(format!("unrecognized line `{line}`"))),
        }
    }
    p.line = 0;
    let field = field.ok_or_else(|| p.err("missing `field` line"))?;
    let dim = dim.ok_or_else(|| p.err("missing `dim` line"))?;
    let names = names.unwrap_or_else(|| (0..dim).map(|i| format!("e{i}")).collect());
    let coalgebra = match (delta, eps) {
        (None, None) => None,
        (_, None) => return Err(p.err("`delta` lines without an `eps` line")),
        (delta, Some(eps)) => {
            let delta = delta.unwrap_or_else(|| vec![field.zero(); dim * dim * dim]);
            Some(Coalgebra::new(&field, dim, delta, eps)?.with_names(names.clone()))
        }
    };
    let algebra = match (mu, unit) {
        (None, None) => None,
        (_, None) => return Err(p.err("`mu` lines without a `unit` line")),
        (mu, Some(unit)) => {
            let mu = mu.unwrap_or_else(|| vec![field.zero(); dim * dim * dim]);
            Some(Algebra::new(&field, dim, mu, unit)?.with_names(names.clone()))
        }
    };
    Ok(StructureFile {
        field,
        dim,
        names,
        coalgebra,
        algebra,
    })
}

impl FromStr for StructureFile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

fn write_vector(out: &mut fmt::Formatter<'_>, f: &Field, v: &[FieldElement]) -> fmt::Result {
    let literals: Vec<String> = v.iter().map(|c| f.format(c)).collect();
    writeln!(out, " {}", literals.join(" "))
}

/// Writes a `<head>: ..` line listing the nonzero entries of `block`, a
/// tensor in `A (x) A` when `tensor` is set and a vector otherwise.
/// Nothing when all are zero.
fn write_terms(
    out: &mut fmt::Formatter<'_>,
    f: &Field,
    head: &str,
    block: &[FieldElement],
    d: usize,
    tensor: bool,
) -> fmt::Result {
    let terms: Vec<String> = block
        .iter()
        .enumerate()
        .filter(|(_, c)| !f.is_zero(c))
        .map(|(n, c)| {
            if !tensor {
                format!("{n} {}", f.format(c))
            } else {
                format!("{} {} {}", n / d, n % d, f.format(c))
            }
        })
        .collect();
    if terms.is_empty() {
        return Ok(());
    }
    writeln!(out, "{head}: {}", terms.join(", "))
}

impl fmt::Display for StructureFile {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let f = &self.field;
        let d = self.dim;
        writeln!(out, "field {f}")?;
        writeln!(out, "dim {d}")?;
        writeln!(out, "names {}", self.names.join(" "))?;
        if let Some(c) = &self.coalgebra {
            for i in 0..d {
                write_terms(
                    out,
                    f,
                    &format!("delta {i}"),
                    &c.constants()[i * d * d..(i + 1) * d * d],
                    d,
                    true,
                )?;
            }
            write!(out, "eps:")?;
            write_vector(out, f, c.counit())?;
        }
        if let Some(a) = &self.algebra {
            for i in 0..d {
                for j in 0..d {
                    write_terms(
                        out,
                        f,
                        &format!("mu {i} {j}"),
                        a.product_of_basis(i, j),
                        d,
                        false,
                    )?;
                }
            }
            write!(out, "unit:")?;
            write_vector(out, f, a.unit())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structconst::{circulant_coalgebra, group_algebra, trig_coalgebra};

    const TRIG_GF5: &str = "\
field GF(5)
dim 2
names c s
delta 0: 0 0 1, 1 1 -1      # Delta(e0) = e0(x)e0 - e1(x)e1
delta 1: 1 0 1, 0 1 1
eps: 1 0
mu 0 0: 0 1                  # e0*e0 = e0
mu 1 1: 1 3
unit: 1 2
";

    #[test]
    fn parses_the_reference_example() {
        let file: StructureFile = TRIG_GF5.parse().unwrap();
        let f = parse_field("GF(5)").unwrap();
        assert_eq!(file.coalgebra.as_ref().unwrap(), &trig_coalgebra(&f));
        assert_eq!(file.names, ["c", "s"]);
        let a = file.algebra.as_ref().unwrap();
        assert_eq!(a.product_of_basis(1, 1), &[f.zero(), f.from_int(3)]);
        assert_eq!(a.unit(), &[f.one(), f.from_int(2)]);
    }

    #[test]
    fn round_trips() {
        let gf9 = parse_field("GF(3)[x]/[1,0,1]").unwrap();
        let q = parse_field("Q[x]/[-2,0,1]").unwrap();
        let mut files = vec![TRIG_GF5.parse::<StructureFile>().unwrap()];
        for f in [&gf9, &q] {
            let (a, c) = group_algebra(f, 3);
            files.push(StructureFile::from_pair(&a, &c));
            files.push(StructureFile::from_coalgebra(
                &circulant_coalgebra(f, 3).unwrap(),
            ));
            files.push(StructureFile::from_algebra(&a));
        }
        let half = q.parse_element("[1/2,-3]").unwrap();
        let c = Coalgebra::new(&q, 1, vec![half.clone()], vec![half]).unwrap();
        files.push(StructureFile::from_coalgebra(&c));
        for file in files {
            let text = file.to_string();
            let back: StructureFile = text.parse().unwrap();
            assert_eq!(back, file, "{text}");
            assert_eq!(back.to_string(), text);
        }
    }

    #[test]
    fn reports_line_numbers() {
        let cases = [
            ("dim 2\n", 1),
            ("field GF(4)\n", 1),
            ("field GF(5)\ndim 2\ndelta 2: 0 0 1\n", 3),
            ("field GF(5)\ndim 2\n\ndelta 0: 0 0\n", 4),
            ("field GF(5)\ndim 2\neps: 1\n", 3),
            ("field GF(5)\ndim 2\neps: 1 0\nfrobnicate\n", 4),
            ("field GF(5)\ndim 2\ndelta 0: 0 0 1/0\n", 3),
            ("field GF(5)\ndim 2\ndelta 0: 0 0 1\n", 0),
            ("field GF(5)\n", 0),
            ("field GF(5)\ndim 2\nmu 0 0: 0 1\nmu 0 0: 1 1\n", 4),
        ];
        for (text, line) in cases {
            match text.parse::<StructureFile>() {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn bracketed_literals_may_contain_spaces() {
        let text = "field Q[x]/[-2,0,1]\ndim 1\ndelta 0: 0 0 [1, 0]\neps: [ 1, 0 ]\n";
        let file: StructureFile = text.parse().unwrap();
        let c = file.coalgebra.unwrap();
        assert!(file.field.is_one(&c.counit()[0]));
    }
}
