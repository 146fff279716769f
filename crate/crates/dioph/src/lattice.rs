//! The solution lattices of a reduced system and their quotient structure.
//!
//! From `Z = (d·I_r | K)` read off the generators
//! `V(i) = Σ·(-K_1i/d, …, -K_ri/d, e_i)`: they span the lattice `U` whose
//! `d`-multiple `M = d·U` is integral. The full integral solution lattice
//! `S` sits between them, `M ⊆ S ⊆ U`, and both quotients are controlled by
//! the Smith diagonal `q_1 | … | q_t` of `K`:
//!
//! * `S/M ≅ ⊕ R/R·gcd(d, q_i) ⊕ (R/Rd)^(f-t)`,
//! * `U/S ≅ ⊕ R/R·(d/gcd(d, q_i))`,
//!
//! each list read in divisibility order with unit factors dropped. The two
//! lists are complementary: pairing them against `d` across `f` slots turns
//! one into the other.

use crate::error::{Error, Result};
use crate::matrix::{rref, Matrix};
use crate::reduce::ReducedSystem;
use crate::ring::EuclideanRing;
use crate::snf::smith_normal_form;

/// Basis of a rank-`f` lattice in `F^n`, stored as integral numerator
/// columns over one common denominator: vector `j` is `columns[:, j] /
/// denominator`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis<R: EuclideanRing> {
    columns: Matrix<R>,
    denominator: R,
}

impl<R: EuclideanRing> LatticeBasis<R> {
    pub fn new(columns: Matrix<R>, denominator: R) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::Shape("lattice basis with zero denominator".into()));
        }
        if columns.cols() > columns.rows() {
            return Err(Error::Shape(format!(
                "{} basis vectors cannot be independent in dimension {}",
                columns.cols(),
                columns.rows()
            )));
        }
        debug_assert_eq!(
            rref(&columns.to_fractions()).rank,
            columns.cols(),
            "basis columns are dependent"
        );
        // canonical denominator; scaling both parts by a unit keeps the vectors
        let u = denominator.normalizing_unit();
        Ok(LatticeBasis {
            columns: columns.scale(&u),
            denominator: denominator.mul(&u),
        })
    }

    pub fn integral(columns: Matrix<R>) -> Result<Self> {
        Self::new(columns, R::one())
    }

    /// Ambient dimension `n`.
    pub fn ambient_dim(&self) -> usize {
        self.columns.rows()
    }

    /// Number of basis vectors (the lattice rank).
    pub fn rank(&self) -> usize {
        self.columns.cols()
    }

    pub fn columns(&self) -> &Matrix<R> {
        &self.columns
    }

    pub fn denominator(&self) -> &R {
        &self.denominator
    }

    pub fn is_integral(&self) -> bool {
        self.denominator.is_unit()
    }
}

/// Invariant factors of a finitely generated torsion quotient: canonical
/// non-units in divisibility order, empty for the trivial quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientStructure<R: EuclideanRing> {
    factors: Vec<R>,
}

impl<R: EuclideanRing> QuotientStructure<R> {
    pub fn from_factors(factors: Vec<R>) -> Result<Self> {
        for (i, x) in factors.iter().enumerate() {
            if x.is_zero() || x.is_unit() {
                return Err(Error::Shape(format!(
                    "invariant factor {x} is not a nonzero non-unit"
                )));
            }
            if x != &x.canonical() {
                return Err(Error::Shape(format!("invariant factor {x} is not canonical")));
            }
            if i + 1 < factors.len() && !x.divides(&factors[i + 1]) {
                return Err(Error::Shape(format!(
                    "invariant factors out of divisibility order: {x} ∤ {}",
                    factors[i + 1]
                )));
            }
        }
        Ok(QuotientStructure { factors })
    }

    pub fn trivial() -> Self {
        QuotientStructure { factors: Vec::new() }
    }

    pub fn factors(&self) -> &[R] {
        &self.factors
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    /// Cardinality index: the product of the invariant factors (canonical;
    /// `1` for the trivial quotient).
    pub fn index(&self) -> R {
        let mut acc = R::one();
        for x in &self.factors {
            acc = acc.mul(x);
        }
        acc
    }

    /// The multiset of prime-power components `(p, e)`, sorted by prime then
    /// exponent. Needs a factoring ring instance.
    pub fn elementary_divisors(&self) -> Result<Vec<(R, u32)>> {
        let mut out = Vec::new();
        for x in &self.factors {
            out.extend(x.factor()?);
        }
        out.sort_by(|(p, e), (q, f)| {
            p.delta().cmp(&q.delta()).then(e.cmp(f))
        });
        Ok(out)
    }
}

/// Numerator matrix of `Σ·(V·alpha)` over denominator `d`, for a coefficient
/// matrix `alpha` (`f x k`) on the generators `V(i)`: top block `-K·alpha`,
/// bottom block `d·alpha`, rows spread back through `Σ`.
pub fn solution_numerators<R: EuclideanRing>(
    rs: &ReducedSystem<R>,
    alpha: &Matrix<R>,
) -> Result<Matrix<R>> {
    if alpha.rows() != rs.free() {
        return Err(Error::Shape(format!(
            "coefficient matrix with {} rows against {} generators",
            alpha.rows(),
            rs.free()
        )));
    }
    let top = rs.k().mul(alpha)?.neg();
    let bottom = alpha.scale(rs.d());
    let stacked = Matrix::from_fn(rs.n(), alpha.cols(), |i, j| {
        if i < rs.rank() {
            top[(i, j)].clone()
        } else {
            bottom[(i - rs.rank(), j)].clone()
        }
    });
    Ok(rs.sigma().apply_rows(&stacked))
}

/// Integral solutions `Σ·(V·alpha)` for coefficients satisfying the
/// congruence `K·alpha ≡ 0 (mod d)`; a violated congruence surfaces as an
/// internal non-integral-division error.
pub fn integral_solutions<R: EuclideanRing>(
    rs: &ReducedSystem<R>,
    alpha: &Matrix<R>,
) -> Result<Matrix<R>> {
    let numer = solution_numerators(rs, alpha)?;
    let mut out = numer;
    for i in 0..out.rows() {
        for j in 0..out.cols() {
            out[(i, j)] = out[(i, j)].div_exact(rs.d())?;
        }
    }
    Ok(out)
}

/// Basis of `M = d·U`: integral columns `Σ·(d·V(i))`.
pub fn m_basis<R: EuclideanRing>(rs: &ReducedSystem<R>) -> Result<LatticeBasis<R>> {
    LatticeBasis::integral(solution_numerators(rs, &Matrix::identity(rs.free()))?)
}

/// Basis of `U`: the same numerators over denominator `d`.
pub fn u_basis<R: EuclideanRing>(rs: &ReducedSystem<R>) -> Result<LatticeBasis<R>> {
    LatticeBasis::new(
        solution_numerators(rs, &Matrix::identity(rs.free()))?,
        rs.d().clone(),
    )
}

/// Invariant factors of `S/M` from the Smith diagonal of `K`.
pub fn quotient_s_over_m<R: EuclideanRing>(rs: &ReducedSystem<R>) -> Result<QuotientStructure<R>> {
    let q = smith_normal_form(rs.k()).nonzero_diagonal();
    let mut factors = Vec::new();
    for qi in &q {
        let g = rs.d().gcd(qi);
        if !g.is_unit() {
            factors.push(g);
        }
    }
    for _ in q.len()..rs.free() {
        if !rs.d().is_unit() {
            factors.push(rs.d().canonical());
        }
    }
    QuotientStructure::from_factors(factors)
}

/// Invariant factors of `U/S` from the Smith diagonal of `K`.
pub fn quotient_u_over_s<R: EuclideanRing>(rs: &ReducedSystem<R>) -> Result<QuotientStructure<R>> {
    let q = smith_normal_form(rs.k()).nonzero_diagonal();
    let mut factors = Vec::new();
    for qi in q.iter().rev() {
        let g = rs.d().gcd(qi);
        let di = rs.d().div_exact(&g)?.canonical();
        // the two published forms of this factor agree: lcm(d, q)/q = d/gcd(d, q)
        let mi = rs.d().lcm(qi).div_exact(qi)?.canonical();
        if mi != di {
            return Err(Error::Internal(format!(
                "complementary factor mismatch: lcm route {mi}, gcd route {di}"
            )));
        }
        if !di.is_unit() {
            factors.push(di);
        }
    }
    QuotientStructure::from_factors(factors)
}

/// Pair a quotient against `d` across `f` slots: pad with units, send each
/// factor `a` to `d/a`, and read the result in divisibility order. Applied
/// to `S/M` this yields `U/S` and vice versa.
pub fn complementary_structure<R: EuclideanRing>(
    q: &QuotientStructure<R>,
    d: &R,
    f: usize,
) -> Result<QuotientStructure<R>> {
    if q.factors().len() > f {
        return Err(Error::Shape(format!(
            "{} invariant factors in {} slots",
            q.factors().len(),
            f
        )));
    }
    let mut padded: Vec<R> = std::iter::repeat_with(R::one)
        .take(f - q.factors().len())
        .collect();
    padded.extend_from_slice(q.factors());
    let mut mapped = Vec::new();
    for a in padded.iter().rev() {
        if !a.divides(d) {
            return Err(Error::Shape(format!("factor {a} does not divide {d}")));
        }
        let b = d.div_exact(a)?.canonical();
        if !b.is_unit() {
            mapped.push(b);
        }
    }
    QuotientStructure::from_factors(mapped)
}

/// Which of the sandwich inclusions `M ⊆ S ⊆ U` collapse.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LatticeCoincidence {
    /// `U = S` iff `d` divides every entry of `K`.
    pub u_equals_s: bool,
    /// `S = M` iff every `gcd(d, q_i)` is a unit and (`d` is a unit or
    /// `rank K = f`).
    pub s_equals_m: bool,
}

pub fn classify<R: EuclideanRing>(rs: &ReducedSystem<R>) -> Result<LatticeCoincidence> {
    let mut u_equals_s = true;
    'outer: for i in 0..rs.k().rows() {
        for x in rs.k().row(i) {
            if !rs.d().divides(x) {
                u_equals_s = false;
                break 'outer;
            }
        }
    }
    let q = smith_normal_form(rs.k()).nonzero_diagonal();
    let s_equals_m = q.iter().all(|qi| rs.d().gcd(qi).is_unit())
        && (rs.d().is_unit() || q.len() == rs.free());
    Ok(LatticeCoincidence {
        u_equals_s,
        s_equals_m,
    })
}
