//! Circulant matrices, their spectra, and the finite Fourier basis.
//!
//! For a primitive `n`-th root of unity `w`, the circulant with first column
//! `a` has eigenvalues `lambda_j = sum_i a_i w^(ij)`. The eigenvector paired
//! with `lambda_j` is `(w^(-ij))_i`, which is the Fourier basis vector
//! `F_{-j mod n}` up to the scalar `1/n`. Conjugating by [`dft_basis`]
//! therefore puts `lambda_{-l mod n}` in diagonal position `l`.

use crate::error::{Error, Result};
use crate::exactfield::{is_prime, Field, FieldElement};
use crate::linalg::Matrix;

/// A circulant matrix given by its first column `a_0, .., a_{n-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CirculantSpec {
    field: Field,
    coeffs: Vec<FieldElement>,
}

impl CirculantSpec {
    pub fn new(field: &Field, coeffs: Vec<FieldElement>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::DimensionMismatch("circulant of size 0".into()));
        }
        if coeffs.iter().any(|c| !field.contains(c)) {
            return Err(Error::FieldMismatch(field.to_string()));
        }
        Ok(CirculantSpec {
            field: field.clone(),
            coeffs,
        })
    }

    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Result<Self> {
        CirculantSpec::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn size(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }
}

fn check_primitive(f: &Field, n: usize, omega: &FieldElement) -> Result<()> {
    let one = f.one();
    let primitive = f.contains(omega)
        && f.pow(omega, n as u64) == one
        && (1..n as u64).all(|m| f.pow(omega, m) != one);
    if primitive {
        Ok(())
    } else {
        Err(Error::NotPrimitiveRoot(f.format(omega), n as u64))
    }
}

fn inverse_of_n(f: &Field, n: usize) -> Result<FieldElement> {
    let ch = f.characteristic();
    if ch != 0 && (n as u64).is_multiple_of(ch) {
        return Err(Error::CharDividesP {
            characteristic: ch,
            n: n as u64,
        });
    }
    f.inv(&f.from_int(n as i64))
}

/// The `p x p` matrix whose column `j` is `F_j = (1/p) sum_i w^(ij) |i>`.
pub fn dft_basis(f: &Field, p: usize, omega: &FieldElement) -> Result<Matrix> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    let scale = inverse_of_n(f, p)?;
    check_primitive(f, p, omega)?;
    Ok(Matrix::from_fn(f, p, p, |i, j| {
        f.mul(&scale, &f.pow(omega, (i * j) as u64))
    }))
}

/// Entry `(r, c)` is `a_{(r - c) mod n}`.
pub fn circulant(spec: &CirculantSpec) -> Matrix {
    let n = spec.size();
    Matrix::from_fn(&spec.field, n, n, |r, c| {
        spec.coeffs[(r + n - c) % n].clone()
    })
}

/// `(lambda_0, .., lambda_{n-1})` with `lambda_j = sum_i a_i w^(ij)`.
pub fn circulant_spectrum(spec: &CirculantSpec, omega: &FieldElement) -> Result<Vec<FieldElement>> {
    let f = &spec.field;
    let n = spec.size();
    check_primitive(f, n, omega)?;
    Ok((0..n)
        .map(|j| {
            spec.coeffs
                .iter()
                .enumerate()
                .fold(f.zero(), |acc, (i, a)| {
                    f.add(&acc, &f.mul(a, &f.pow(omega, ((i * j) % n) as u64)))
                })
        })
        .collect())
}

/// Inverse through the spectrum: `b_i = (1/n) sum_j lambda_j^(-1) w^(-ij)`.
/// `Ok(None)` when some eigenvalue vanishes.
pub fn circulant_inverse_spectral(
    spec: &CirculantSpec,
    omega: &FieldElement,
) -> Result<Option<CirculantSpec>> {
    let f = &spec.field;
    let n = spec.size();
    let scale = inverse_of_n(f, n)?;
    let spectrum = circulant_spectrum(spec, omega)?;
    let Some(inv_spectrum) = spectrum
        .iter()
        .map(|l| f.inv(l).ok())
        .collect::<Option<Vec<_>>>()
    else {
        return Ok(None);
    };
    let omega_inv = f.inv(omega)?;
    let coeffs = (0..n)
        .map(|i| {
            let s = inv_spectrum
                .iter()
                .enumerate()
                .fold(f.zero(), |acc, (j, l)| {
                    f.add(&acc, &f.mul(l, &f.pow(&omega_inv, ((i * j) % n) as u64)))
                });
            f.mul(&scale, &s)
        })
        .collect();
    Ok(Some(CirculantSpec {
        field: f.clone(),
        coeffs,
    }))
}

/// Inverse by Gaussian elimination on the full matrix.
pub fn circulant_inverse_generic(spec: &CirculantSpec) -> Option<CirculantSpec> {
    let inv = circulant(spec).invert().expect("circulants are square")?;
    Some(CirculantSpec {
        field: spec.field.clone(),
        coeffs: inv.column(0),
    })
}

/// First column of the inverse circulant, or `None` if it is singular.
///
/// Uses the spectrum when the field has a primitive `n`-th root of unity and
/// `n` is invertible, and elimination otherwise.
pub fn circulant_inverse(spec: &CirculantSpec) -> Option<CirculantSpec> {
    let f = &spec.field;
    let n = spec.size();
    let spectral = inverse_of_n(f, n)
        .ok()
        .and_then(|_| f.primitive_root_of_unity(n as u64))
        .and_then(|w| circulant_inverse_spectral(spec, &w).ok());
    match spectral {
        Some(result) => result,
        None => circulant_inverse_generic(spec),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::parse_field;

    fn ints(f: &Field, xs: &[i64]) -> Vec<FieldElement> {
        xs.iter().map(|&x| f.from_int(x)).collect()
    }

    #[test]
    fn dft_basis_over_gf7() {
        let f = parse_field("GF(7)").unwrap();
        let d = dft_basis(&f, 3, &f.from_int(2)).unwrap();
        assert_eq!(d.column(0), ints(&f, &[5, 5, 5]));
        assert_eq!(d.column(1), ints(&f, &[5, 3, 6]));
        assert!(d.invert().unwrap().is_some());
    }

    #[test]
    fn dft_basis_errors() {
        let f3 = parse_field("GF(3)").unwrap();
        assert_eq!(
            dft_basis(&f3, 3, &f3.one()),
            Err(Error::CharDividesP {
                characteristic: 3,
                n: 3
            })
        );
        let f7 = parse_field("GF(7)").unwrap();
        assert!(matches!(
            dft_basis(&f7, 3, &f7.from_int(3)),
            Err(Error::NotPrimitiveRoot(..))
        ));
        assert!(matches!(
            dft_basis(&f7, 3, &f7.one()),
            Err(Error::NotPrimitiveRoot(..))
        ));
        assert_eq!(dft_basis(&f7, 6, &f7.from_int(3)), Err(Error::NotPrime(6)));
    }

    #[test]
    fn circulant_layout() {
        let f = parse_field("Q").unwrap();
        assert_eq!(
            circulant(&CirculantSpec::from_ints(&f, &[1, 0, 0]).unwrap()),
            Matrix::identity(&f, 3)
        );
        let shift = circulant(&CirculantSpec::from_ints(&f, &[0, 1, 0]).unwrap());
        assert_eq!(
            shift,
            Matrix::from_ints(&f, &[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]])
        );
        let general = circulant(&CirculantSpec::from_ints(&f, &[10, 11, 12]).unwrap());
        assert_eq!(general.row(0), ints(&f, &[10, 12, 11]).as_slice());
    }

    #[test]
    fn spectra() {
        let f = parse_field("GF(7)").unwrap();
        let w = f.from_int(2);
        let s =
            |a: &[i64]| circulant_spectrum(&CirculantSpec::from_ints(&f, a).unwrap(), &w).unwrap();
        assert_eq!(s(&[1, 1, 1]), ints(&f, &[3, 0, 0]));
        assert_eq!(s(&[1, 0, 0]), ints(&f, &[1, 1, 1]));
        assert_eq!(s(&[0, 1, 0]), ints(&f, &[1, 2, 4]));
        let spec = CirculantSpec::from_ints(&f, &[1, 1, 1]).unwrap();
        assert!(matches!(
            circulant_spectrum(&spec, &f.from_int(3)),
            Err(Error::NotPrimitiveRoot(..))
        ));
    }

    #[test]
    fn inverses() {
        let f = parse_field("GF(5)").unwrap();
        let inv = circulant_inverse(&CirculantSpec::from_ints(&f, &[2, 1]).unwrap()).unwrap();
        assert_eq!(inv.coeffs(), ints(&f, &[4, 3]).as_slice());
        assert_eq!(
            circulant_inverse(&CirculantSpec::from_ints(&f, &[1, 1]).unwrap()),
            None
        );
        let delta = CirculantSpec::from_ints(&f, &[1, 0, 0]).unwrap();
        assert_eq!(circulant_inverse(&delta), Some(delta));
        // No primitive cube root in GF(5): elimination path, size 4 is fine too.
        let odd = CirculantSpec::from_ints(&f, &[1, 2, 3]).unwrap();
        let inv = circulant_inverse(&odd).unwrap();
        assert_eq!(circulant_inverse(&inv), Some(odd));
        let q = parse_field("Q").unwrap();
        let spec = CirculantSpec::from_ints(&q, &[3, 1]).unwrap();
        let inv = circulant_inverse(&spec).unwrap();
        assert_eq!(
            circulant(&spec).mul(&circulant(&inv)).unwrap(),
            Matrix::identity(&q, 2)
        );
    }
}
