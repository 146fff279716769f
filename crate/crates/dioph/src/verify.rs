//! Independent checks on computed answers: solution membership, lattice
//! equality, an invariant-factor oracle for nested lattices, and a
//! brute-force enumerator for small integer instances.
//!
//! Nothing here reuses the reduction bookkeeping: equality and quotient
//! structure are recovered from integral solvability alone, and the
//! brute-force route enumerates every residue class. That independence is
//! what makes these useful as cross-checks on the fast paths.

use num_bigint::BigUint;
use num_integer::Integer as _;

use crate::error::{Error, Result};
use crate::lattice::{LatticeBasis, QuotientStructure};
use crate::matrix::Matrix;
use crate::reduce::ReducedSystem;
use crate::ring::{EuclideanRing, Int};
use crate::snf::{smith_normal_form, solve_integral};

/// Default ceiling on `d^f`, the number of residue classes
/// [`brute_force_kernel_structure`] is willing to enumerate.
pub const DEFAULT_BRUTE_BOUND: u64 = 1_000_000;

/// Does `x` solve `A·x = 0`?
pub fn is_solution<R: EuclideanRing>(a: &Matrix<R>, x: &[R]) -> Result<bool> {
    Ok(a.mul_vec(x)?.iter().all(|e| e.is_zero()))
}

/// Integral coefficients expressing the vectors of `sub` in the basis of
/// `sup`, if all of them lie in that lattice. With vectors `N/den` on both
/// sides, `sub_j/den_sub = sup·c/den_sup` clears denominators to
/// `(den_sub·N_sup)·c = den_sup·sub_j`.
fn coefficients_in<R: EuclideanRing>(
    sub: &LatticeBasis<R>,
    sup: &LatticeBasis<R>,
) -> Result<Option<Matrix<R>>> {
    solve_integral(
        &sup.columns().scale(sub.denominator()),
        &sub.columns().scale(sup.denominator()),
    )
}

/// Do the two bases span the same lattice? Decided by mutual integral
/// solvability, so representations with different denominators compare
/// correctly.
pub fn same_lattice<R: EuclideanRing>(
    a: &LatticeBasis<R>,
    b: &LatticeBasis<R>,
) -> Result<bool> {
    if a.ambient_dim() != b.ambient_dim() {
        return Err(Error::Shape(format!(
            "lattices in dimensions {} and {} are incomparable",
            a.ambient_dim(),
            b.ambient_dim()
        )));
    }
    if a.rank() != b.rank() {
        return Ok(false);
    }
    Ok(coefficients_in(a, b)?.is_some() && coefficients_in(b, a)?.is_some())
}

/// Invariant factors of `sup/sub`, computed from scratch: express `sub` in
/// the basis of `sup` and read the Smith diagonal of the coefficient matrix.
/// Fails with [`Error::NotASublattice`] if some vector of `sub` falls outside
/// `sup`, and with a shape error if the quotient is not finite.
pub fn quotient_invariants_oracle<R: EuclideanRing>(
    sub: &LatticeBasis<R>,
    sup: &LatticeBasis<R>,
) -> Result<QuotientStructure<R>> {
    if sub.ambient_dim() != sup.ambient_dim() {
        return Err(Error::Shape(format!(
            "lattices in dimensions {} and {} are incomparable",
            sub.ambient_dim(),
            sup.ambient_dim()
        )));
    }
    let Some(c) = coefficients_in(sub, sup)? else {
        return Err(Error::NotASublattice(
            "a vector of the claimed sublattice has no integral coordinates in the larger basis"
                .into(),
        ));
    };
    if sub.rank() != sup.rank() {
        return Err(Error::Shape(format!(
            "quotient of a rank-{} lattice by a rank-{} sublattice is not finite",
            sup.rank(),
            sub.rank()
        )));
    }
    let factors = smith_normal_form(&c)
        .nonzero_diagonal()
        .into_iter()
        .filter(|x| !x.is_unit())
        .collect();
    QuotientStructure::from_factors(factors)
}

/// Structure of `S/M` for an integer system by sheer enumeration: walk every
/// coefficient vector `α ∈ [0, d)^f`, keep the solutions of
/// `K·α ≡ 0 (mod d)`, and read the group structure off a triangular basis of
/// the lattice they generate together with `d·Z^f`.
///
/// Refuses instances with more than `bound` residue classes.
pub fn brute_force_kernel_structure(
    k: &Matrix<Int>,
    d: &Int,
    bound: u64,
) -> Result<QuotientStructure<Int>> {
    let d = d.canonical();
    if d.is_zero() {
        return Err(Error::Shape("zero modulus".into()));
    }
    let f = k.cols();
    if f == 0 {
        return Ok(QuotientStructure::trivial());
    }
    let classes = d.delta().pow(f as u32);
    if classes > BigUint::from(bound) || d.to_i64().is_none() {
        return Err(Error::BoundExceeded {
            size: classes.to_string(),
            bound,
        });
    }
    let di = d.to_i64().expect("checked above");
    let kbar: Vec<Vec<i64>> = (0..k.rows())
        .map(|i| {
            (0..f)
                .map(|j| {
                    k[(i, j)].rem_canonical(&d).to_i64().ok_or_else(|| {
                        Error::Internal("residue exceeds the machine range".into())
                    })
                })
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;

    // triangular row basis of the lattice generated by the solutions and d·Z^f
    let mut h: Vec<Vec<i64>> = (0..f)
        .map(|i| (0..f).map(|j| if i == j { di } else { 0 }).collect())
        .collect();
    let mut alpha = vec![0i64; f];
    'enumerate: loop {
        // odometer step; the all-zero vector contributes nothing
        let mut pos = 0;
        loop {
            if pos == f {
                break 'enumerate;
            }
            alpha[pos] += 1;
            if alpha[pos] < di {
                break;
            }
            alpha[pos] = 0;
            pos += 1;
        }
        let solves = kbar.iter().all(|row| {
            row.iter()
                .zip(&alpha)
                .fold(0i64, |acc, (a, b)| (acc + a * b) % di)
                == 0
        });
        if solves {
            insert_row(&mut h, alpha.clone(), di);
        }
    }

    // the group is L/d·Z^f; with invariant factors g of a basis of L, that is
    // the cokernel of diag(d/g) up to reordering
    let basis = Matrix::from_fn(f, f, |i, j| Int::from(h[i][j]));
    let mut complement = Vec::with_capacity(f);
    for g in smith_normal_form(&basis).nonzero_diagonal() {
        complement.push(d.div_exact(&g)?);
    }
    let factors = smith_normal_form(&Matrix::diagonal(f, f, &complement))
        .nonzero_diagonal()
        .into_iter()
        .filter(|x| !x.is_unit())
        .collect();
    QuotientStructure::from_factors(factors)
}

/// Convenience form of [`brute_force_kernel_structure`] for a reduced system.
pub fn brute_force_structure_of(
    rs: &ReducedSystem<Int>,
    bound: u64,
) -> Result<QuotientStructure<Int>> {
    brute_force_kernel_structure(rs.k(), rs.d(), bound)
}

/// Fold a row vector into a triangular lattice basis, working modulo `d`
/// throughout (sound because the lattice contains `d·Z^f`, so entries may be
/// reduced into `[0, d)` freely).
fn insert_row(h: &mut [Vec<i64>], mut v: Vec<i64>, d: i64) {
    let f = h.len();
    for i in 0..f {
        if v[i] == 0 {
            continue;
        }
        let pivot = h[i][i];
        if v[i] % pivot == 0 {
            let q = v[i] / pivot;
            for j in i..f {
                v[j] = (v[j] - q * h[i][j]).rem_euclid(d);
            }
        } else {
            let eg = v[i].extended_gcd(&pivot); // gcd = x·v[i] + y·pivot
            let (va, ha) = (pivot / eg.gcd, v[i] / eg.gcd);
            for j in i..f {
                let row = (eg.x * v[j] + eg.y * h[i][j]).rem_euclid(d);
                v[j] = (va * v[j] - ha * h[i][j]).rem_euclid(d);
                h[i][j] = row;
            }
            h[i][i] = eg.gcd; // rem_euclid keeps it: 0 < gcd < d here
        }
        debug_assert_eq!(v[i], 0);
    }
    debug_assert!(v.iter().all(|&x| x == 0), "vector escaped its lattice");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{m_basis, quotient_s_over_m, quotient_u_over_s, u_basis};
    use crate::reduce::reduce_matrix;
    use crate::solve::nullspace_basis_direct;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> Matrix<Int> {
        Matrix::from_i64_rows(rows)
    }

    fn ints(xs: &[i64]) -> Vec<Int> {
        xs.iter().map(|&x| Int::from(x)).collect()
    }

    fn reduce(rows: &[&[i64]]) -> ReducedSystem<Int> {
        reduce_matrix(&m(rows)).unwrap()
    }

    fn examples() -> Vec<ReducedSystem<Int>> {
        vec![
            reduce(&[&[2, 3, 5, 4], &[3, -5, 2, -7]]),
            reduce(&[
                &[1, 1, 1, 1, 2, 3],
                &[1, 3, 7, 4, 5, 6],
                &[1, 9, 49, 7, 8, 9],
            ]),
            reduce(&[
                &[12, 24, 36, -4, 12, 44],
                &[24, 36, 12, -2, 10, 20],
                &[36, 12, 24, 0, 20, 44],
            ]),
        ]
    }

    #[test]
    fn solution_membership() {
        let a = m(&[&[2, 3, 5, 4], &[3, -5, 2, -7]]);
        assert!(is_solution(&a, &ints(&[1, -26, 0, 19])).unwrap());
        assert!(is_solution(&a, &ints(&[0, 0, 0, 0])).unwrap());
        assert!(!is_solution(&a, &ints(&[1, 0, 0, 0])).unwrap());
        assert!(is_solution(&a, &ints(&[1, 1])).is_err());
    }

    #[test]
    fn lattice_equality_is_representation_independent() {
        let id = LatticeBasis::integral(m(&[&[1, 0], &[0, 1]])).unwrap();
        let recombined =
            LatticeBasis::integral(m(&[&[1, 3], &[1, 4]])).unwrap();
        let doubled_rep =
            LatticeBasis::new(m(&[&[2, 0], &[0, 2]]), Int::from(2)).unwrap();
        let doubled = LatticeBasis::integral(m(&[&[2, 0], &[0, 2]])).unwrap();
        let halves =
            LatticeBasis::new(m(&[&[1, 0], &[0, 1]]), Int::from(2)).unwrap();
        assert!(same_lattice(&id, &recombined).unwrap());
        assert!(same_lattice(&id, &doubled_rep).unwrap());
        assert!(!same_lattice(&id, &doubled).unwrap());
        assert!(!same_lattice(&id, &halves).unwrap());
    }

    #[test]
    fn lattice_equality_validates_shapes() {
        let a = LatticeBasis::integral(m(&[&[1], &[0]])).unwrap();
        let b = LatticeBasis::integral(m(&[&[1], &[0], &[0]])).unwrap();
        assert!(same_lattice(&a, &b).is_err());
        let narrower = LatticeBasis::integral(m(&[&[1, 0], &[0, 1]])).unwrap();
        let single = LatticeBasis::integral(m(&[&[1], &[0]])).unwrap();
        assert!(!same_lattice(&narrower, &single).unwrap());
    }

    #[test]
    fn oracle_recovers_the_quotient_formulas() {
        for rs in examples() {
            let mb = m_basis(&rs).unwrap();
            let ub = u_basis(&rs).unwrap();
            let sb = nullspace_basis_direct(&rs).unwrap();
            assert_eq!(
                quotient_invariants_oracle(&mb, &sb).unwrap(),
                quotient_s_over_m(&rs).unwrap()
            );
            assert_eq!(
                quotient_invariants_oracle(&sb, &ub).unwrap(),
                quotient_u_over_s(&rs).unwrap()
            );
            // U/M is (R/d)^f outright
            let um = quotient_invariants_oracle(&mb, &ub).unwrap();
            assert_eq!(um.factors(), vec![rs.d().clone(); rs.free()]);
        }
    }

    #[test]
    fn oracle_rejects_non_sublattices_and_infinite_quotients() {
        let rs = examples().remove(0);
        let mb = m_basis(&rs).unwrap();
        let ub = u_basis(&rs).unwrap();
        assert!(matches!(
            quotient_invariants_oracle(&ub, &mb).unwrap_err(),
            Error::NotASublattice(_)
        ));
        let thin =
            LatticeBasis::new(Matrix::from_columns(vec![mb.columns().column(0)]).unwrap(), Int::from(1))
                .unwrap();
        assert!(matches!(
            quotient_invariants_oracle(&thin, &mb).unwrap_err(),
            Error::Shape(_)
        ));
    }

    #[test]
    fn brute_force_matches_the_formula_on_the_examples() {
        for rs in examples() {
            assert_eq!(
                brute_force_structure_of(&rs, DEFAULT_BRUTE_BOUND).unwrap(),
                quotient_s_over_m(&rs).unwrap()
            );
        }
    }

    #[test]
    fn brute_force_on_hand_built_kernels() {
        // zero K̄: every class solves, S/M is all of (Z/d)^f
        let q = brute_force_kernel_structure(&m(&[&[4, 8]]), &Int::from(4), 1 << 20).unwrap();
        assert_eq!(q.factors(), &ints(&[4, 4]));
        let q = brute_force_kernel_structure(&m(&[&[2], &[4]]), &Int::from(6), 1 << 20).unwrap();
        assert_eq!(q.factors(), &ints(&[2]));
        let q = brute_force_kernel_structure(&m(&[&[1]]), &Int::from(1), 16).unwrap();
        assert!(q.is_trivial());
    }

    #[test]
    fn brute_force_respects_its_bound() {
        let err =
            brute_force_kernel_structure(&m(&[&[1, 1, 1]]), &Int::from(101), 1_000_000)
                .unwrap_err();
        match err {
            Error::BoundExceeded { size, bound } => {
                assert_eq!(size, "1030301");
                assert_eq!(bound, 1_000_000);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn brute_force_agrees_with_the_formula(
            entries in proptest::collection::vec(-7i64..8, 12),
            rows in 1usize..4,
            cols in 2usize..5,
        ) {
            let a = Matrix::from_fn(rows, cols, |i, j| Int::from(entries[i * 4 + j]));
            let Ok(rs) = reduce_matrix(&a) else { return Ok(()); };
            if rs.d().delta().pow(rs.free() as u32) > 4096u32.into() {
                return Ok(());
            }
            prop_assert_eq!(
                brute_force_structure_of(&rs, 4096).unwrap(),
                quotient_s_over_m(&rs).unwrap()
            );
        }
    }
}
