use coalg_core::*;
use proptest::prelude::*;

fn spec_over(f: &'static str, n: usize) -> impl Strategy<Value = CirculantSpec> {
    let field = parse_field(f).unwrap();
    let q = field.order().unwrap();
    proptest::collection::vec(0..q, n).prop_map(move |v| {
        CirculantSpec::new(&field, v.iter().map(|&i| field.element_at(i)).collect()).unwrap()
    })
}

/// Conjugation by the Fourier basis is diagonal, with `lambda_{-l mod n}`
/// in position `l`.
fn check_diagonalization(spec: &CirculantSpec, omega: i64) -> Result<(), TestCaseError> {
    let f = spec.field();
    let n = spec.size();
    let w = f.from_int(omega);
    let basis = dft_basis(f, n, &w).unwrap();
    let inv = basis
        .invert()
        .unwrap()
        .expect("Fourier basis is invertible");
    let conj = inv.mul(&circulant(spec)).unwrap().mul(&basis).unwrap();
    let lambda = circulant_spectrum(spec, &w).unwrap();
    prop_assert!(conj.is_diagonal());
    for l in 0..n {
        prop_assert_eq!(conj.get(l, l), &lambda[(n - l) % n]);
    }
    Ok(())
}

fn check_inverse(spec: &CirculantSpec) -> Result<(), TestCaseError> {
    let f = spec.field();
    let fast = circulant_inverse(spec);
    let generic = circulant_inverse_generic(spec);
    prop_assert_eq!(&fast, &generic);
    prop_assert_eq!(fast.is_some(), circulant(spec).invert().unwrap().is_some());
    if let Some(w) = f.primitive_root_of_unity(spec.size() as u64) {
        let lambda = circulant_spectrum(spec, &w).unwrap();
        prop_assert_eq!(fast.is_some(), lambda.iter().all(|l| !f.is_zero(l)));
    }
    if let Some(inv) = fast {
        let product = circulant(spec).mul(&circulant(&inv)).unwrap();
        prop_assert_eq!(product, Matrix::identity(f, spec.size()));
        let back = circulant_inverse(&inv);
        prop_assert_eq!(back.as_ref(), Some(spec));
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn gf7_order_3(spec in spec_over("GF(7)", 3)) {
        check_diagonalization(&spec, 2)?;
        check_inverse(&spec)?;
    }

    #[test]
    fn gf5_order_2(spec in spec_over("GF(5)", 2)) {
        check_diagonalization(&spec, 4)?;
        check_inverse(&spec)?;
    }

    #[test]
    fn gf13_order_4_without_prime_restriction(spec in spec_over("GF(13)", 4)) {
        check_inverse(&spec)?;
    }

    #[test]
    fn generic_path_without_roots(spec in spec_over("GF(5)", 3)) {
        check_inverse(&spec)?;
    }

    #[test]
    fn rational_circulants(v in proptest::collection::vec(-5i64..6, 1..5)) {
        let q = parse_field("Q").unwrap();
        check_inverse(&CirculantSpec::from_ints(&q, &v).unwrap())?;
    }
}

#[test]
fn spectral_inverse_requires_invertible_size() {
    let f = parse_field("GF(3)").unwrap();
    let spec = CirculantSpec::from_ints(&f, &[1, 1, 0]).unwrap();
    assert_eq!(
        circulant_inverse_spectral(&spec, &f.one()),
        Err(Error::CharDividesP {
            characteristic: 3,
            n: 3
        })
    );
    // Still invertible by elimination: 1 + t is a unit in GF(3)[t]/(t^3 - 1).
    assert!(circulant_inverse(&spec).is_some());
}

#[test]
fn fourier_basis_is_invertible_wherever_defined() {
    for (s, p) in [
        ("GF(7)", 3),
        ("GF(5)", 2),
        ("GF(11)", 5),
        ("GF(13)", 3),
        ("GF(3)", 2),
        ("Q[x]/[1,1,1]", 3),
    ] {
        let f = parse_field(s).unwrap();
        for (w, order) in f.roots_of_unity(p as u64) {
            if order == p as u64 {
                assert!(
                    dft_basis(&f, p, &w).unwrap().invert().unwrap().is_some(),
                    "{s}"
                );
            }
        }
    }
}
