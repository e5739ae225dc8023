//! Exact structure-constant algebras, coalgebras and bialgebras.
//!
//! Classifies bialgebra structures on the trigonometric coalgebra and on
//! the circulant coalgebras `C^p`, with the circulant-matrix and finite
//! Fourier tools they rest on.

pub mod bialgsearch;
pub mod error;
pub mod exactfield;
pub mod fourier;
pub mod linalg;
pub mod structconst;
pub mod structfile;

pub use bialgsearch::{
    char_p_comultiplications, check_bialgebra, classify_circulant, classify_trig,
    isomorphisms_via_grouplikes, monoid_structures, orthogonal_idempotents, search_bialgebras,
    transport_structure, Classification, Comultiplication, CountDiscrepancy, DualComulFamily,
    Family, MulTable, SearchOptions, DEFAULT_SEARCH_BUDGET,
};
pub use error::{Error, Result};
pub use exactfield::{parse_field, ArithOp, ArithOutput, Field, FieldElement, FieldKind};
pub use fourier::{
    circulant, circulant_inverse, circulant_inverse_generic, circulant_inverse_spectral,
    circulant_spectrum, dft_basis, CirculantSpec,
};
pub use linalg::{Matrix, SolutionSet};
pub use structconst::{
    check_algebra, check_coalgebra, circulant_coalgebra, coalgebra_isomorphisms,
    coalgebra_isomorphisms_with_budget, count_units, count_units_with_budget, dualize,
    element_inverse, format_vector, group_algebra, grouplikes, grouplikes_with_budget,
    is_coalgebra_morphism, trig_coalgebra, Algebra, AxiomReport, Coalgebra, Dualize, ElementVec,
    Law, Provenance, Violation, DEFAULT_ELEMENT_BUDGET,
};
pub use structfile::StructureFile;
