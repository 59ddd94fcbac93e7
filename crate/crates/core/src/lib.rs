//! Matrix regularization of embedded manifolds.
//!
//! Harmonic polynomials on S^2, S^3, S^4 and S^2 x S^2 are mapped to
//! finite Hermitian matrices (spin matrices, Kronecker-product copies,
//! or a spin-built gamma family) so that the classical bracket
//! structure constants — Poisson, double-Poisson or Nambu — are
//! recovered from matrix (k-)commutators as the size grows. The
//! [`convergence`] module measures that recovery; the companion CLI
//! exposes everything as commands.

pub mod brackets;
pub mod cmatrix;
pub mod convergence;
pub mod error;
pub mod gamma;
pub mod harmonics;
pub mod integrate;
pub mod manifold;
pub mod matrixify;
pub mod polynomial;
pub mod spin;
pub mod structure;

pub use brackets::{
    canonical_tuples, classical_structure_constants, double_poisson, nambu4_resolution_check,
    nambu_bracket, oracle_max_deviation, oracle_max_deviations, poisson_bracket,
    CoordinateBracketTable,
};
pub use cmatrix::{
    anticommutator, commutator, four_commutator, hs_inner, hs_norm, k_commutator, kronecker,
    CMatrix,
};
pub use convergence::{
    counting_checks, counting_row, fit_loglog, gamma_commutator_scaling, independence_check,
    remainder_scaling, run_convergence, single_size_deviation, ConvergenceReport, CountingRow,
    RemainderTable, SlopeFit,
};
pub use error::{Error, Result};
pub use gamma::{
    anchored_three_bracket, coefficient_report, make_gamma_family, Branch, CoefficientReport,
    GammaFamily,
};
pub use harmonics::{harmonic_basis, mode_counts, DegreeTag, HarmonicBasis, HarmonicMode};
pub use integrate::{
    gauss_legendre, integral, monomial_sphere_integral, quadrature_integral, sphere_inner,
    QuadratureGrid,
};
pub use manifold::Manifold;
pub use matrixify::{
    leibniz_remainder, leibniz_remainder_closed_form, matrix_structure_constants, matrixify,
    matrixify_unchecked, quantum_bracket, quantum_prefactor, symmetrized_substitute, BracketKind,
    MatrixHarmonicSet,
};
pub use polynomial::Polynomial;
pub use spin::{make_spin_rep, SpinRep};
pub use structure::{SCKind, StructureConstants};
