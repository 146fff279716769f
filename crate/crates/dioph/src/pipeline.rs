//! The three front-end entry points (`reduce`, `structure`, `solve`) as
//! library functions returning a [`Report`]. The CLI and the C ABI are thin
//! wrappers around these.

use crate::error::{Error, Result};
use crate::lattice::{m_basis, quotient_s_over_m, quotient_u_over_s, u_basis, LatticeBasis};
use crate::lift::{
    lift_by_elementary_divisors, lift_by_invariant_factors, lift_prime_at_a_time, LiftWay,
};
use crate::matrix::Matrix;
use crate::reduce::{reduce_matrix, ReducedSystem};
use crate::report::Report;
use crate::ring::Int;
use crate::solve::{nullspace_basis_direct, nullspace_basis_snf, prime_case_basis};
use crate::verify::{
    brute_force_structure_of, is_solution, quotient_invariants_oracle, same_lattice,
    DEFAULT_BRUTE_BOUND,
};

/// Basis construction methods selectable from the front ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMethod {
    /// Congruence kernel of `K` modulo `d` (the default).
    Direct,
    /// Trailing columns of the right transform of the Smith form of `A`.
    Snf,
    /// Lift a basis of `M` along the invariant factors of `S/M`.
    LiftInv,
    /// Lift a basis of `M` along the elementary divisors of `S/M`.
    LiftElem,
    /// Lift a basis of `M` one prime of the index `[S : M]` at a time.
    LiftPrime,
    /// Shortcut valid only when `d` is prime.
    PrimeD,
}

impl SolveMethod {
    pub fn name(self) -> &'static str {
        match self {
            SolveMethod::Direct => "direct",
            SolveMethod::Snf => "snf",
            SolveMethod::LiftInv => "lift-inv",
            SolveMethod::LiftElem => "lift-elem",
            SolveMethod::LiftPrime => "lift-prime",
            SolveMethod::PrimeD => "prime-d",
        }
    }
}

/// Knobs for [`solve_report`].
#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    pub method: SolveMethod,
    /// Re-check the basis against independent oracles and record the verdict.
    pub verify: bool,
    /// Seed for the randomized search inside the lifting methods.
    pub seed: u64,
    /// Residue-class bound for the exhaustive check run under `verify`.
    pub brute_bound: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            method: SolveMethod::Direct,
            verify: false,
            seed: 0,
            brute_bound: DEFAULT_BRUTE_BOUND,
        }
    }
}

/// Reduce, treating the trivial ranks (0 and `n`) as a reportable answer
/// rather than an error.
fn reduced_or_trivial(a: &Matrix<Int>) -> Result<std::result::Result<ReducedSystem<Int>, Report>> {
    match reduce_matrix(a) {
        Ok(rs) => Ok(Ok(rs)),
        Err(Error::RankOutOfScope {
            rank,
            rows,
            cols,
            kind,
        }) => Ok(Err(
            Report::trivial_kernel(rank, rows, cols, kind).with_trivial_basis(kind, cols)
        )),
        Err(e) => Err(e),
    }
}

/// Rank, nullity, `d`, `K`, and the column permutation.
pub fn reduce_report(a: &Matrix<Int>) -> Result<Report> {
    match reduced_or_trivial(a)? {
        Ok(rs) => Ok(Report::from_reduced(a.rows(), &rs)),
        Err(mut trivial) => {
            trivial.basis = None; // reduction reports carry no basis
            Ok(trivial)
        }
    }
}

/// Reduction plus the module structure of `S/M` and `U/S`.
pub fn structure_report(a: &Matrix<Int>) -> Result<Report> {
    match reduced_or_trivial(a)? {
        Ok(rs) => Report::from_reduced(a.rows(), &rs).with_structure(&rs),
        Err(mut trivial) => {
            trivial.basis = None;
            Ok(trivial)
        }
    }
}

/// Full pipeline: reduction, structure, a basis of `S` by the requested
/// method, and optionally the verification verdict. A verification failure
/// is reported in the `verified` field, not as an `Err`.
pub fn solve_report(a: &Matrix<Int>, opts: &SolveOptions) -> Result<Report> {
    let rs = match reduced_or_trivial(a)? {
        Ok(rs) => rs,
        Err(mut trivial) => {
            if opts.verify {
                let mut all = true;
                for x in trivial.basis.as_deref().unwrap_or_default() {
                    all &= is_solution(a, x)?;
                }
                trivial = trivial.with_verification(
                    all,
                    vec![format!(
                        "solutions (trivial nullspace): {}",
                        ok_or_failed(all)
                    )],
                );
            }
            return Ok(trivial);
        }
    };

    let mb = m_basis(&rs)?;
    let basis = match opts.method {
        SolveMethod::Direct => nullspace_basis_direct(&rs)?,
        SolveMethod::Snf => nullspace_basis_snf(a)?,
        SolveMethod::LiftInv => lift_by_invariant_factors(
            &mb,
            &quotient_s_over_m(&rs)?,
            LiftWay::UnimodularCompletion,
            opts.seed,
        )?,
        SolveMethod::LiftElem => lift_by_elementary_divisors(
            &mb,
            &quotient_s_over_m(&rs)?.elementary_divisors()?,
            opts.seed,
        )?,
        SolveMethod::LiftPrime => {
            lift_prime_at_a_time(&mb, &quotient_s_over_m(&rs)?.index(), opts.seed)?
        }
        SolveMethod::PrimeD => prime_case_basis(&rs)?,
    };

    let mut report = Report::from_reduced(a.rows(), &rs)
        .with_structure(&rs)?
        .with_basis(&basis, opts.method.name())?;
    if opts.verify {
        let (ok, notes) = verify_basis(a, &rs, &basis, opts)?;
        report = report.with_verification(ok, notes);
    }
    Ok(report)
}

/// The `verify` battery: solution membership for every basis vector, lattice
/// equality against an independently computed basis, both quotient
/// structures re-derived from scratch, and (within bound) an exhaustive
/// residue enumeration.
fn verify_basis(
    a: &Matrix<Int>,
    rs: &ReducedSystem<Int>,
    basis: &LatticeBasis<Int>,
    opts: &SolveOptions,
) -> Result<(bool, Vec<String>)> {
    let mut ok = true;
    let mut notes = Vec::new();
    let mut check = |passed: bool, label: String| {
        ok &= passed;
        notes.push(label);
    };

    let mut all_solve = true;
    for x in basis.columns().columns() {
        all_solve &= is_solution(a, &x)?;
    }
    check(all_solve, format!("solutions: {}", ok_or_failed(all_solve)));

    // An independent second route: the Smith-form basis, unless that is the
    // method under test, in which case the congruence-kernel basis.
    let (oracle_name, oracle) = if opts.method == SolveMethod::Snf {
        ("direct", nullspace_basis_direct(rs)?)
    } else {
        ("snf", nullspace_basis_snf(a)?)
    };
    let same = same_lattice(basis, &oracle)?;
    check(
        same,
        format!(
            "lattice equals the {oracle_name} basis: {}",
            ok_or_failed(same)
        ),
    );

    let sm_formula = quotient_s_over_m(rs)?;
    let sm_ok = quotient_invariants_oracle(&m_basis(rs)?, basis)? == sm_formula;
    check(
        sm_ok,
        format!("S/M re-derived from the basis: {}", ok_or_failed(sm_ok)),
    );

    let us_ok = quotient_invariants_oracle(basis, &u_basis(rs)?)? == quotient_u_over_s(rs)?;
    check(
        us_ok,
        format!("U/S re-derived from the basis: {}", ok_or_failed(us_ok)),
    );

    match brute_force_structure_of(rs, opts.brute_bound) {
        Ok(brute) => {
            let brute_ok = brute == sm_formula;
            check(
                brute_ok,
                format!("exhaustive S/M enumeration: {}", ok_or_failed(brute_ok)),
            );
        }
        Err(Error::BoundExceeded { size, bound }) => notes.push(format!(
            "exhaustive S/M enumeration: skipped ({size} residue classes exceed the bound {bound})"
        )),
        Err(e) => return Err(e),
    }

    Ok((ok, notes))
}

fn ok_or_failed(v: bool) -> &'static str {
    if v {
        "ok"
    } else {
        "FAILED"
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Int;

    fn ex3() -> Matrix<Int> {
        Matrix::from_i64_rows(&[
            &[12, 24, 36, -4, 12, 44],
            &[24, 36, 12, -2, 10, 20],
            &[36, 12, 24, 0, 20, 44],
        ])
    }

    #[test]
    fn solve_report_carries_every_contract_field() {
        let opts = SolveOptions {
            verify: true,
            ..SolveOptions::default()
        };
        let report = solve_report(&ex3(), &opts).unwrap();
        assert_eq!(report.d, Some(Int::from(12)));
        assert_eq!(report.method.as_deref(), Some("direct"));
        assert_eq!(report.verified, Some(true));
        assert_eq!(report.basis.as_ref().map(Vec::len), Some(3));
    }

    #[test]
    fn every_method_verifies_on_its_own_oracle_set() {
        for method in [
            SolveMethod::Direct,
            SolveMethod::Snf,
            SolveMethod::LiftInv,
            SolveMethod::LiftElem,
            SolveMethod::LiftPrime,
        ] {
            let opts = SolveOptions {
                method,
                verify: true,
                ..SolveOptions::default()
            };
            let report = solve_report(&ex3(), &opts).unwrap();
            assert_eq!(report.verified, Some(true), "{}", method.name());
            assert_eq!(report.method.as_deref(), Some(method.name()));
        }
    }

    #[test]
    fn reduce_and_structure_reports_stay_basis_free() {
        let a = ex3();
        let reduce = reduce_report(&a).unwrap();
        assert!(reduce.basis.is_none() && reduce.snf_k.is_none());
        let structure = structure_report(&a).unwrap();
        assert!(structure.basis.is_none());
        assert_eq!(structure.inv_factors_s_over_m, Some(vec![Int::from(4), Int::from(12)]));
    }

    #[test]
    fn trivial_ranks_report_instead_of_failing() {
        let full = Matrix::from_i64_rows(&[&[1, 2], &[3, 4]]);
        let report = solve_report(&full, &SolveOptions::default()).unwrap();
        assert_eq!(report.f, 0);
        assert_eq!(report.basis, Some(Vec::new()));

        let zero = Matrix::from_i64_rows(&[&[0, 0], &[0, 0]]);
        let opts = SolveOptions {
            verify: true,
            ..SolveOptions::default()
        };
        let report = solve_report(&zero, &opts).unwrap();
        assert_eq!(report.f, 2);
        assert_eq!(report.verified, Some(true));
        assert!(reduce_report(&zero).unwrap().basis.is_none());
    }

    #[test]
    fn prime_d_failure_surfaces_as_not_prime() {
        let opts = SolveOptions {
            method: SolveMethod::PrimeD,
            ..SolveOptions::default()
        };
        assert!(matches!(
            solve_report(&ex3(), &opts),
            Err(Error::NotPrime(_))
        ));
    }
}
