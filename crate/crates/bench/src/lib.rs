//! Fixtures shared by the benchmarks.

use coalg_core::{circulant_coalgebra, parse_field, trig_coalgebra, Coalgebra, Field};

pub fn field(spec: &str) -> Field {
    parse_field(spec).expect("valid field spec")
}

/// `(label, coalgebra)` pairs small enough to search exhaustively.
pub fn search_cases() -> Vec<(&'static str, Coalgebra)> {
    vec![
        ("trig/GF(5)", trig_coalgebra(&field("GF(5)"))),
        ("trig/GF(9)", trig_coalgebra(&field("GF(3)[x]/[1,0,1]"))),
        (
            "circulant2/GF(5)",
            circulant_coalgebra(&field("GF(5)"), 2).unwrap(),
        ),
        (
            "circulant3/GF(2)",
            circulant_coalgebra(&field("GF(2)"), 3).unwrap(),
        ),
    ]
}

/// The same coalgebra with its constructor provenance stripped, so that
/// grouplike and search routines cannot use closed forms.
pub fn anonymous(c: &Coalgebra) -> Coalgebra {
    Coalgebra::new(
        c.field(),
        c.dim(),
        c.constants().to_vec(),
        c.counit().to_vec(),
    )
    .unwrap()
}
