//! Groebner bases over the two-element field, normal forms, graded Hilbert
//! functions, and the Hilbert-series regular-sequence certificate.

mod algebra;
mod buchberger;
mod hilbert;
mod order;

pub use algebra::{
    AlgebraJson, BaseDim, PresentedAlgebra, Truncation, TruncationJson, VariableJson,
};
pub use buchberger::{buchberger, normal_form, GroebnerBasis};
pub use hilbert::{
    compare_dims_to_series, complete_intersection_series, convolve_dims, hilbert_function,
    hilbert_function_of_basis, hilbert_function_of_basis_sequential, regular_sequence_certificate,
    HilbertFunction, RegularSequenceCertificate,
};
pub use order::{MonomialOrder, OrderKind};
