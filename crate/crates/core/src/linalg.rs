//! Dense exact linear algebra over any [`Field`].
//!
//! Gaussian elimination picks the first nonzero entry of each column as the
//! pivot, so solutions and kernel bases are deterministic.

use crate::error::{Error, Result};
use crate::exactfield::{Field, FieldElement};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

/// Affine solution space of `A x = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolutionSet {
    Empty,
    Solvable {
        particular: Vec<FieldElement>,
        kernel: Vec<Vec<FieldElement>>,
    },
}

impl SolutionSet {
    pub fn is_empty(&self) -> bool {
        matches!(self, SolutionSet::Empty)
    }
}

impl Matrix {
    pub fn new(field: &Field, rows: usize, cols: usize, data: Vec<FieldElement>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|e| !field.contains(e)) {
            return Err(Error::FieldMismatch(format!("{field} (entry {bad:?})")));
        }
        Ok(Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    pub fn from_fn(
        field: &Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> FieldElement,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    /// Builds a matrix from small integer entries, reduced into the field.
    pub fn from_ints(field: &Field, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_fn(field, rows.len(), cols, |r, c| field.from_int(rows[r][c]))
    }

    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Matrix::from_fn(field, rows, cols, |_, _| field.zero())
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        Matrix::from_fn(
            field,
            n,
            n,
            |r, c| if r == c { field.one() } else { field.zero() },
        )
    }

    /// The matrix whose columns are the given vectors.
    pub fn from_columns(field: &Field, rows: usize, columns: &[Vec<FieldElement>]) -> Self {
        Matrix::from_fn(field, rows, columns.len(), |r, c| columns[c][r].clone())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &FieldElement {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.data[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.data
    }

    pub fn column(&self, c: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        Ok(Matrix::from_fn(f, self.rows, other.cols, |r, c| {
            (0..self.cols).fold(f.zero(), |acc, k| {
                f.add(&acc, &f.mul(self.get(r, k), other.get(k, c)))
            })
        }))
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix times length-{} vector",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (a, x)| f.add(&acc, &f.mul(a, x)))
            })
            .collect())
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.field, self.cols, self.rows, |r, c| {
            self.get(c, r).clone()
        })
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|r| (0..self.cols).all(|c| r == c || self.field.is_zero(self.get(r, c))))
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !f.is_zero(m.get(r, col))) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = f.inv(m.get(row, col)).expect("pivot is nonzero");
            for c in col..m.cols {
                let v = f.mul(m.get(row, c), &inv);
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row || f.is_zero(m.get(r, col)) {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for c in col..m.cols {
                    let v = f.sub(m.get(r, c), &f.mul(&factor, m.get(row, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<FieldElement>> {
        let (r, pivots) = self.rref();
        kernel_from_rref(&r, &pivots, self.cols)
    }

    pub fn solve(&self, b: &[FieldElement]) -> Result<SolutionSet> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "{} equations but right-hand side of length {}",
                self.rows,
                b.len()
            )));
        }
        let f = &self.field;
        let aug = Matrix::from_fn(f, self.rows, self.cols + 1, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                b[r].clone()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(SolutionSet::Empty);
        }
        let mut particular = vec![f.zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            particular[pc] = r.get(row, self.cols).clone();
        }
        Ok(SolutionSet::Solvable {
            particular,
            kernel: kernel_from_rref(&r, &pivots, self.cols),
        })
    }

    pub fn invert(&self) -> Result<Option<Matrix>> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let f = &self.field;
        let aug = Matrix::from_fn(f, n, 2 * n, |r, c| {
            if c < n {
                self.get(r, c).clone()
            } else if c - n == r {
                f.one()
            } else {
                f.zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Ok(None);
        }
        Ok(Some(Matrix::from_fn(f, n, n, |row, c| {
            r.get(row, n + c).clone()
        })))
    }
}

fn kernel_from_rref(r: &Matrix, pivots: &[usize], cols: usize) -> Vec<Vec<FieldElement>> {
    let f = r.field();
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![f.zero(); cols];
            v[free] = f.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.get(row, free));
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::parse_field;

    fn ints(f: &Field, v: &[i64]) -> Vec<FieldElement> {
        v.iter().map(|&x| f.from_int(x)).collect()
    }

    #[test]
    fn solves_the_char_two_ansatz_system() {
        let f = parse_field("GF(2)").unwrap();
        let a = Matrix::from_ints(&f, &[&[1, 1, 1, 1], &[0, 1, 0, 1], &[0, 0, 1, 1]]);
        let sol = a.solve(&ints(&f, &[1, 0, 0])).unwrap();
        assert_eq!(
            sol,
            SolutionSet::Solvable {
                particular: ints(&f, &[1, 0, 0, 0]),
                kernel: vec![ints(&f, &[1, 1, 1, 1])],
            }
        );
        assert_eq!(a.rank(), 3);
    }

    #[test]
    fn trivial_systems() {
        let q = parse_field("Q").unwrap();
        let id = Matrix::identity(&q, 2);
        assert_eq!(
            id.solve(&ints(&q, &[1, 2])).unwrap(),
            SolutionSet::Solvable {
                particular: ints(&q, &[1, 2]),
                kernel: vec![]
            }
        );
        let f = parse_field("GF(5)").unwrap();
        let zero = Matrix::zeros(&f, 2, 2);
        assert!(zero.solve(&ints(&f, &[1, 0])).unwrap().is_empty());
        assert_eq!(zero.rank(), 0);
        assert!(matches!(
            zero.solve(&ints(&f, &[1])),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn dft_matrix_over_gf7() {
        let f = parse_field("GF(7)").unwrap();
        let w = f.from_int(2);
        let dft = Matrix::from_fn(&f, 3, 3, |i, j| f.pow(&w, (i * j) as u64));
        assert_eq!(dft.rank(), 3);
        let inv = dft.invert().unwrap().unwrap();
        assert_eq!(dft.mul(&inv).unwrap(), Matrix::identity(&f, 3));
    }

    #[test]
    fn inversion_edge_cases() {
        let f = parse_field("GF(2)").unwrap();
        assert_eq!(
            Matrix::identity(&f, 3).invert().unwrap(),
            Some(Matrix::identity(&f, 3))
        );
        assert_eq!(
            Matrix::from_ints(&f, &[&[1, 1], &[1, 1]]).invert().unwrap(),
            None
        );
        assert_eq!(
            Matrix::zeros(&f, 2, 3).invert(),
            Err(Error::NotSquare { rows: 2, cols: 3 })
        );
    }

    #[test]
    fn rational_elimination() {
        let q = parse_field("Q").unwrap();
        let a = Matrix::from_ints(&q, &[&[2, 1], &[1, 3]]);
        let inv = a.invert().unwrap().unwrap();
        assert_eq!(inv.get(0, 0), &q.parse_element("3/5").unwrap());
        assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(&q, 2));
    }
}
