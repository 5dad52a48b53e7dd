//! Exact polynomial algebra over ℤ and floating-point root finding.

mod gcd;
mod json;
mod laurent;
mod roots;
mod sparse;

pub use gcd::{
    content_in, is_squarefree_in, poly_gcd, primitive_part_in, resultant, resultant_sylvester, squarefree_part,
};
pub use laurent::{power_trace_poly, symmetrize, LaurentPoly};
pub use roots::{
    companion_eigenvalues, complex_roots, complex_roots_with_multiplicity, distinct_count, roots_of_coeffs,
    squarefree_decomposition, Root, ROOT_CLUSTER_RADIUS,
};
pub use sparse::{Monomial, SparsePoly};
