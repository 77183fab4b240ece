//! Invariants of the monodromy at infinity of a convenient polynomial.

mod class;
mod jordan;
mod newton;
mod nondegenerate;
mod spectrum;
mod support;
mod zeta;

pub use class::{
    antidiagonal_symmetric, class_from_engines, face_contribution, hodge_class_at_infinity,
    weight_symmetric, FaceCones,
};
pub use jordan::{
    assemble_jordan_table, assemble_jordan_table_with, closed_prime_from_antidiagonals, face_antidiagonals, interior_edge_heights,
    jordan_closed_prime, jordan_counts_from_class, jordan_counts_general, jordan_subtop_eigenone,
    jordan_subtop_nontrivial, jordan_top_eigenone, jordan_top_nontrivial, max_block_size,
    positive_skeleton_points, Determinacy, JordanTable,
};
pub use newton::{build_gamma_infinity, check_convenient, FaceAtInfinity, NewtonAtInfinity};
pub use nondegenerate::{
    check_nondegenerate_partial, is_squarefree, FaceCheck, NondegeneracyReport,
    NondegeneracyStatus,
};
pub use spectrum::{spectrum_from_class, spectrum_via_cones, spectrum_via_hodge, SpectrumPoly};
pub use support::SupportSpec;
pub use zeta::{char_poly_from_zeta, eigenvalue_multiplicity, zeta_at_infinity, ZetaFactorization};
