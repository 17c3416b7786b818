//! Link homology of virtual links from rank-two extended Frobenius algebras
//! and unoriented TQFTs, computed exactly over ℚ or GF(p).

pub mod algebra;
pub mod complex;
pub mod corpus;
pub mod diagram;
pub mod error;
pub mod field;
pub mod invariance;
pub mod jones;
pub mod linalg;
pub mod tqft;

pub use algebra::{verify_4tu, verify_axioms, AxiomReport, TheoryParams, PRESET_NAMES};
pub use complex::{
    betti_with_reversed_anchor, build_complex, graded_homology, homology, ChainComplex,
    CircleSelector, HomologyResult,
};
pub use diagram::{Sign, State, VirtualLinkDiagram};
pub use error::{AlgebraError, ComplexError, DiagramError, FieldError, TqftError};
pub use field::{Field, FieldScalar};
pub use jones::{jones_at_one, kauffman_jones, LaurentPoly};
pub use tqft::{elementary_map, evaluate_closed_surface, ElementaryCobordism, ExactLinearMap};
