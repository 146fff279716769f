//! Exact solver for homogeneous linear diophantine systems `A·X = 0` over a
//! Euclidean domain (arbitrary-precision integers as the shipped instance).
//!
//! The pipeline: row-reduce `A` over fractions and rescale by the minimal
//! common denominator `d` to get the reduced matrix `Z = (d·I | K)` up to a
//! column permutation; read the full solution lattice `S` and its sandwich
//! `M ⊆ S ⊆ U` off `Z`; compute the invariant factors of `S/M` and `U/S`
//! from the Smith normal form of `K`; and produce a basis of `S` by several
//! independently checkable methods (congruence kernel, Smith form of `A`,
//! basis lifting, and a shortcut when `d` is prime).

pub mod error;
pub mod fraction;
pub mod io;
pub mod lattice;
pub mod lift;
pub mod matrix;
pub mod pipeline;
pub mod reduce;
pub mod report;
pub mod ring;
pub mod snf;
pub mod solve;
pub mod verify;

pub use error::{Error, Result, TrivialKernel};
pub use fraction::Fraction;
pub use io::{parse_matrix, parse_matrix_json, parse_matrix_text};
pub use lattice::{
    classify, complementary_structure, integral_solutions, m_basis, quotient_s_over_m,
    quotient_u_over_s, solution_numerators, u_basis, LatticeBasis, LatticeCoincidence,
    QuotientStructure,
};
pub use lift::{
    complete_relation_unimodular, find_order_vector, lift_by_elementary_divisors,
    lift_by_elementary_divisors_with_steps, lift_by_invariant_factors,
    lift_by_invariant_factors_with_steps, lift_prime_at_a_time,
    lift_prime_at_a_time_with_steps, step_elementary_divisor, step_invariant_factor,
    LiftMethod, LiftStep, LiftWay,
};
pub use matrix::{rref, rref_mod_p, Matrix, ModRref, Rref};
pub use pipeline::{reduce_report, solve_report, structure_report, SolveMethod, SolveOptions};
pub use reduce::{normalize_content, reduce_matrix, ColumnPermutation, ReducedSystem};
pub use report::{ElementaryDivisors, Report};
pub use ring::{EuclideanRing, Int};
pub use snf::{inverse_unimodular, smith_normal_form, solve_integral, SmithDecomposition};
pub use solve::{
    congruence_kernel_basis, nullspace_basis_direct, nullspace_basis_snf, prime_case_basis,
    solve_congruence_kernel, CongruenceKernel,
};
pub use verify::{
    brute_force_kernel_structure, brute_force_structure_of, is_solution,
    quotient_invariants_oracle, same_lattice, DEFAULT_BRUTE_BOUND,
};
