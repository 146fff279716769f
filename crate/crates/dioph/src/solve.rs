//! Bases of the integral solution lattice `S`, by three independent routes.
//!
//! * [`nullspace_basis_direct`] solves the coefficient congruence
//!   `K·α ≡ 0 (mod d)` with a Smith decomposition of `K` and assembles the
//!   ambient solutions.
//! * [`nullspace_basis_snf`] skips the reduction entirely and reads the
//!   kernel off a Smith decomposition of the input matrix itself.
//! * [`prime_case_basis`] handles prime `d` by row reduction of `K` over the
//!   residue field, the cheapest route when it applies.
//!
//! All three produce bases of the same lattice (not merely sets of
//! solutions), which the checks in [`crate::verify`] can confirm.

use crate::error::{Error, Result, TrivialKernel};
use crate::lattice::{integral_solutions, LatticeBasis};
use crate::matrix::{rref_mod_p, Matrix};
use crate::reduce::ReducedSystem;
use crate::ring::EuclideanRing;
use crate::snf::smith_normal_form;

/// Basis of the coefficient lattice `{α ∈ R^f : K·α ≡ 0 (mod d)}`, as the
/// columns of an integral `f x f` matrix whose determinant is an associate
/// of the index `[U : S]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceKernel<R: EuclideanRing> {
    modulus: R,
    coefficient_basis: Matrix<R>,
}

impl<R: EuclideanRing> CongruenceKernel<R> {
    pub fn modulus(&self) -> &R {
        &self.modulus
    }

    pub fn coefficient_basis(&self) -> &Matrix<R> {
        &self.coefficient_basis
    }
}

/// Basis of `{α ∈ R^k : C·α ≡ 0 (mod m)}` for any matrix `C` with `k`
/// columns, as the columns of a `k x k` integral matrix.
///
/// Writing `C = P⁻¹·diag(q)·Q⁻¹`, the substitution `β = Q⁻¹·α` splits the
/// congruence into scalar conditions `q_i·β_i ≡ 0 (mod m)`, each solved by
/// the multiples of `m / gcd(m, q_i)`; the basis is `Q` times that diagonal.
pub fn congruence_kernel_basis<R: EuclideanRing>(
    c: &Matrix<R>,
    modulus: &R,
) -> Result<Matrix<R>> {
    if modulus.is_zero() {
        return Err(Error::Shape("congruence with zero modulus".into()));
    }
    let snf = smith_normal_form(c);
    let q = snf.nonzero_diagonal();
    let mut scale = Vec::with_capacity(c.cols());
    for qi in &q {
        scale.push(modulus.div_exact(&modulus.gcd(qi))?);
    }
    scale.resize(c.cols(), R::one());
    snf.q.mul(&Matrix::diagonal(c.cols(), c.cols(), &scale))
}

/// Solve the congruence `K·α ≡ 0 (mod d)` of a reduced system.
pub fn solve_congruence_kernel<R: EuclideanRing>(
    rs: &ReducedSystem<R>,
) -> Result<CongruenceKernel<R>> {
    let basis = congruence_kernel_basis(rs.k(), rs.d())?;
    #[cfg(debug_assertions)]
    {
        let det = basis.det()?.canonical();
        let index = crate::lattice::quotient_u_over_s(rs)?.index();
        debug_assert_eq!(det, index, "kernel determinant must equal [U : S]");
    }
    Ok(CongruenceKernel {
        modulus: rs.d().clone(),
        coefficient_basis: basis,
    })
}

/// Basis of `S` from the congruence kernel: columns `Σ·(-K·α/d, α)` for each
/// coefficient basis vector `α`.
pub fn nullspace_basis_direct<R: EuclideanRing>(
    rs: &ReducedSystem<R>,
) -> Result<LatticeBasis<R>> {
    let kernel = solve_congruence_kernel(rs)?;
    LatticeBasis::integral(integral_solutions(rs, kernel.coefficient_basis())?)
}

/// Basis of `S` straight from a Smith decomposition `D = P·A·Q` of the input:
/// `A·x = 0` iff `D·(Q⁻¹·x) = 0` iff `Q⁻¹·x` is supported on the zero part of
/// `D`, so the last `n - rank` columns of `Q` are a basis.
pub fn nullspace_basis_snf<R: EuclideanRing>(a: &Matrix<R>) -> Result<LatticeBasis<R>> {
    let snf = smith_normal_form(a);
    let rank = snf.rank();
    if rank == 0 || rank == a.cols() {
        return Err(Error::RankOutOfScope {
            rank,
            rows: a.rows(),
            cols: a.cols(),
            kind: if rank == 0 {
                TrivialKernel::WholeSpace
            } else {
                TrivialKernel::ZeroOnly
            },
        });
    }
    let basis = LatticeBasis::integral(Matrix::from_columns(
        (rank..a.cols()).map(|j| snf.q.column(j)).collect(),
    )?)?;
    debug_assert!(a.mul(basis.columns())?.is_zero());
    Ok(basis)
}

/// Basis of `S` when `d` is prime, from the reduced row echelon form `H` of
/// `K` over the residue field: a leading column `c` contributes the
/// coefficient vector `d·e_c`, a non-leading column `c` contributes
/// `e_c - Σ_k H[k, c]·e_{j_k}` over the leading columns `j_k`.
pub fn prime_case_basis<R: EuclideanRing>(rs: &ReducedSystem<R>) -> Result<LatticeBasis<R>> {
    if !rs.d().is_prime()? {
        return Err(Error::NotPrime(format!("denominator {}", rs.d())));
    }
    let modp = rref_mod_p(rs.k(), rs.d())?;
    let f = rs.free();
    let mut leading = vec![false; f];
    for &col in &modp.leading {
        leading[col] = true;
    }
    let mut coeff = Matrix::zeros(f, f);
    for c in 0..f {
        if leading[c] {
            coeff[(c, c)] = rs.d().clone();
        } else {
            coeff[(c, c)] = R::one();
            for (row, &col) in modp.leading.iter().enumerate() {
                coeff[(col, c)] = modp.h[(row, c)].neg();
            }
        }
    }
    debug_assert_eq!(
        coeff.det()?.canonical(),
        rs.d().pow(modp.rank as u32).canonical(),
        "prime-case kernel determinant must be d^rank"
    );
    LatticeBasis::integral(integral_solutions(rs, &coeff)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{m_basis, quotient_u_over_s, u_basis};
    use crate::reduce::reduce_matrix;
    use crate::ring::Int;
    use crate::verify::same_lattice;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> Matrix<Int> {
        Matrix::from_i64_rows(rows)
    }

    fn reduce(rows: &[&[i64]]) -> ReducedSystem<Int> {
        reduce_matrix(&m(rows)).unwrap()
    }

    fn example1() -> ReducedSystem<Int> {
        reduce(&[&[2, 3, 5, 4], &[3, -5, 2, -7]])
    }

    fn example2() -> ReducedSystem<Int> {
        reduce(&[
            &[1, 1, 1, 1, 2, 3],
            &[1, 3, 7, 4, 5, 6],
            &[1, 9, 49, 7, 8, 9],
        ])
    }

    fn example3() -> ReducedSystem<Int> {
        reduce(&[
            &[12, 24, 36, -4, 12, 44],
            &[24, 36, 12, -2, 10, 20],
            &[36, 12, 24, 0, 20, 44],
        ])
    }

    fn basis_of(columns: &[&[i64]]) -> LatticeBasis<Int> {
        LatticeBasis::integral(m(columns).transpose()).unwrap()
    }

    #[test]
    fn congruence_kernel_solves_the_congruence() {
        for rs in [example1(), example2(), example3()] {
            let kernel = solve_congruence_kernel(&rs).unwrap();
            assert_eq!(kernel.modulus(), rs.d());
            let residue = rs.k().mul(kernel.coefficient_basis()).unwrap();
            for i in 0..residue.rows() {
                for j in 0..residue.cols() {
                    assert!(rs.d().divides(&residue[(i, j)]));
                }
            }
            assert_eq!(
                kernel.coefficient_basis().det().unwrap().canonical(),
                quotient_u_over_s(&rs).unwrap().index()
            );
        }
    }

    #[test]
    fn direct_bases_match_known_solution_sets() {
        // independently checked spanning sets for the three running systems
        assert!(same_lattice(
            &nullspace_basis_direct(&example1()).unwrap(),
            &basis_of(&[&[1, -26, 0, 19], &[-1, -17, 1, 12]]),
        )
        .unwrap());
        assert!(same_lattice(
            &nullspace_basis_direct(&example2()).unwrap(),
            &basis_of(&[
                &[1, 0, 0, 1, -1, 0],
                &[1, 0, 0, 0, 1, -1],
                &[-4, -9, 1, 0, 0, 4],
            ]),
        )
        .unwrap());
        assert!(same_lattice(
            &nullspace_basis_direct(&example3()).unwrap(),
            &basis_of(&[
                &[-4, 1, -6, -1, 5, 4],
                &[0, 0, -1, -1, -1, 1],
                &[-5, 1, -3, 0, 12, 0],
            ]),
        )
        .unwrap());
    }

    #[test]
    fn direct_basis_sits_between_m_and_u() {
        for rs in [example1(), example2(), example3()] {
            let s = nullspace_basis_direct(&rs).unwrap();
            assert!(rs.a().mul(s.columns()).unwrap().is_zero());
            let m = m_basis(&rs).unwrap();
            let u = u_basis(&rs).unwrap();
            // index [U : S] * [S : M] = d^f, with both factors proper here
            assert!(!same_lattice(&s, &m).unwrap());
            assert!(!same_lattice(&s, &u).unwrap());
        }
    }

    #[test]
    fn snf_route_agrees_with_the_direct_route() {
        for rows in [
            vec![vec![2i64, 3, 5, 4], vec![3, -5, 2, -7]],
            vec![
                vec![1, 1, 1, 1, 2, 3],
                vec![1, 3, 7, 4, 5, 6],
                vec![1, 9, 49, 7, 8, 9],
            ],
            vec![vec![0, 2, 4]],
            vec![vec![2, 1, 1], vec![0, 3, 1]],
        ] {
            let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
            let a = m(&refs);
            let direct = nullspace_basis_direct(&reduce_matrix(&a).unwrap()).unwrap();
            let snf = nullspace_basis_snf(&a).unwrap();
            assert!(same_lattice(&direct, &snf).unwrap());
        }
    }

    #[test]
    fn snf_route_rejects_trivial_kernels() {
        let err = nullspace_basis_snf(&m(&[&[0, 0], &[0, 0]])).unwrap_err();
        assert!(matches!(
            err,
            Error::RankOutOfScope {
                kind: TrivialKernel::WholeSpace,
                ..
            }
        ));
        let err = nullspace_basis_snf(&m(&[&[1, 0], &[0, 1]])).unwrap_err();
        assert!(matches!(
            err,
            Error::RankOutOfScope {
                kind: TrivialKernel::ZeroOnly,
                ..
            }
        ));
    }

    #[test]
    fn prime_case_basis_of_the_first_example() {
        let rs = example1();
        let basis = prime_case_basis(&rs).unwrap();
        // column for the leading column 0: d·V(1); for the free column 1:
        // V(2) - 11·V(1) with the echelon entry H[0,1] = 11
        assert_eq!(
            basis.columns(),
            &m(&[&[-31, 18], &[-11, 5], &[19, -11], &[0, 1]])
        );
        assert!(same_lattice(&basis, &nullspace_basis_direct(&rs).unwrap()).unwrap());
    }

    #[test]
    fn prime_case_rejects_composite_and_unit_denominators() {
        assert!(matches!(
            prime_case_basis(&example2()).unwrap_err(),
            Error::NotPrime(_)
        ));
        let rs = reduce(&[&[2, 4], &[1, 2]]);
        assert_eq!(rs.d(), &Int::from(1));
        assert!(matches!(
            prime_case_basis(&rs).unwrap_err(),
            Error::NotPrime(_)
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn routes_agree_on_random_systems(
            entries in proptest::collection::vec(-9i64..10, 20),
            rows in 1usize..5,
            cols in 2usize..5,
        ) {
            let a = Matrix::from_fn(rows, cols, |i, j| Int::from(entries[i * 5 + j]));
            let Ok(rs) = reduce_matrix(&a) else { return Ok(()); };
            let direct = nullspace_basis_direct(&rs).unwrap();
            let snf = nullspace_basis_snf(&a).unwrap();
            prop_assert!(rs.a().mul(direct.columns()).unwrap().is_zero());
            prop_assert!(same_lattice(&direct, &snf).unwrap());
            if rs.d().is_prime().unwrap() {
                let prime = prime_case_basis(&rs).unwrap();
                prop_assert!(same_lattice(&direct, &prime).unwrap());
            }
        }
    }
}
