//! Growing a basis of `M` into a basis of `S`, one quotient factor at a time.
//!
//! Every route here runs the same play. Pick a modulus `g` that the current
//! lattice `W` still owes (an invariant factor of `S/W`, a `p`-elementary
//! divisor, or a single prime of the index). Find coefficients `a` such that
//! `v = (Σ a_i·u_i)/g` is integral — integrality alone certifies `v ∈ S`,
//! because `A·v = (A·W·a)/g = 0` comes for free — and such that
//! `gcd(a_1, …, a_f, g)` is a unit, which makes the class of `v` have exact
//! order `g`. Then replace the basis of `W` by a basis of `W + R·v`, a step
//! that multiplies the index by `g`. Three step constructions are offered:
//!
//! * completing the relation row `(a_1, …, a_f, -g)` to a unimodular matrix
//!   and dropping the generator whose coefficient becomes zero,
//! * shrinking the relation by balanced euclidean division on its
//!   coefficients until one of them is a unit, then dropping that generator,
//! * for prime-power moduli, the single swap `u_i ← x·v + y·u_i` with
//!   `x·a_i + y·g = 1`.
//!
//! Each step validates itself: the division by `g` must be exact, the gcd
//! condition must hold, and the old-in-new quotient must come out as exactly
//! `(g)` under the independent oracle.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lattice::{LatticeBasis, QuotientStructure};
use crate::matrix::Matrix;
use crate::ring::EuclideanRing;
use crate::snf::{inverse_unimodular, smith_normal_form};
use crate::solve::congruence_kernel_basis;
use crate::verify::quotient_invariants_oracle;

/// How [`step_invariant_factor`] turns the relation into a basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiftWay {
    UnimodularCompletion,
    EuclideanReduction,
}

/// Which construction produced a step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiftMethod {
    UnimodularCompletion,
    EuclideanReduction,
    IntroPrime,
}

/// One enlargement `W → W + R·v`, with everything needed to re-check it:
/// the relation `a_1·u_1 + ⋯ + a_f·u_f = g·v` against the incoming basis,
/// and the outgoing basis it produced.
#[derive(Clone, Debug)]
pub struct LiftStep<R: EuclideanRing> {
    incoming: LatticeBasis<R>,
    coefficients: Vec<R>,
    modulus: R,
    outgoing: LatticeBasis<R>,
    method: LiftMethod,
}

impl<R: EuclideanRing> LiftStep<R> {
    pub fn incoming(&self) -> &LatticeBasis<R> {
        &self.incoming
    }

    pub fn coefficients(&self) -> &[R] {
        &self.coefficients
    }

    pub fn modulus(&self) -> &R {
        &self.modulus
    }

    pub fn outgoing(&self) -> &LatticeBasis<R> {
        &self.outgoing
    }

    pub fn method(&self) -> LiftMethod {
        self.method
    }
}

fn require_integral<R: EuclideanRing>(mb: &LatticeBasis<R>) -> Result<()> {
    if !mb.is_integral() {
        return Err(Error::Shape(
            "lifting operates on integral bases (denominator a unit)".into(),
        ));
    }
    Ok(())
}

/// The vector `v = (Σ a_i·u_i)/g`; exactness of the division is what admits
/// `v` into the ambient module, hence into `S`.
fn lifted_vector<R: EuclideanRing>(
    mb: &LatticeBasis<R>,
    a: &[R],
    g: &R,
) -> Result<Vec<R>> {
    mb.columns()
        .mul_vec(a)?
        .into_iter()
        .map(|x| x.div_exact(g))
        .collect()
}

/// Assemble and validate a step: gcd condition, exact division (already
/// spent constructing the outgoing basis), and the old-in-new quotient being
/// exactly `(g)`.
fn validated_step<R: EuclideanRing>(
    incoming: &LatticeBasis<R>,
    coefficients: Vec<R>,
    modulus: R,
    outgoing: LatticeBasis<R>,
    method: LiftMethod,
) -> Result<LiftStep<R>> {
    if !R::gcd_of_list(&coefficients).gcd(&modulus).is_unit() {
        return Err(Error::Internal(format!(
            "step coefficients share a factor with the modulus {modulus}"
        )));
    }
    let quotient = quotient_invariants_oracle(incoming, &outgoing)?;
    let expected: &[R] = if modulus.is_unit() {
        &[]
    } else {
        std::slice::from_ref(&modulus)
    };
    if quotient.factors() != expected {
        return Err(Error::Internal(format!(
            "step enlarged the lattice by {} instead of ({modulus})",
            quotient
                .factors()
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        )));
    }
    Ok(LiftStep {
        incoming: incoming.clone(),
        coefficients,
        modulus,
        outgoing,
        method,
    })
}

/// Coefficients `a` with `Mb·a ≡ 0 (mod g)` entrywise and `gcd(a…, g)` a
/// unit — so that `v = (Mb·a)/g` lies in `S` with exact order `g` modulo the
/// current lattice.
///
/// Searches the congruence kernel of the basis matrix modulo `g`: its basis
/// columns first, then sums of two columns, then 256 seeded random
/// unit-coefficient combinations. Exhaustion means no vector of order `g`
/// exists, i.e. `g` was not the largest invariant factor.
pub fn find_order_vector<R: EuclideanRing>(
    mb: &LatticeBasis<R>,
    g: &R,
    seed: u64,
) -> Result<Vec<R>> {
    if g.is_zero() || g.is_unit() {
        return Err(Error::Shape(format!(
            "order search needs a nonzero non-unit modulus, got {g}"
        )));
    }
    require_integral(mb)?;
    let kernel = congruence_kernel_basis(mb.columns(), g)?;
    let f = kernel.cols();
    let admissible = |a: &[R]| R::gcd_of_list(a).gcd(g).is_unit();

    for j in 0..f {
        let a = kernel.column(j);
        if admissible(&a) {
            return Ok(a);
        }
    }
    for i in 0..f {
        for j in i + 1..f {
            let a: Vec<R> = (0..f)
                .map(|row| kernel[(row, i)].add(&kernel[(row, j)]))
                .collect();
            if admissible(&a) {
                return Ok(a);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..256 {
        let signs: Vec<bool> = (0..f).map(|_| rng.gen()).collect();
        let a: Vec<R> = (0..f)
            .map(|row| {
                let mut acc = R::zero();
                for (j, &plus) in signs.iter().enumerate() {
                    let term = &kernel[(row, j)];
                    acc = if plus { acc.add(term) } else { acc.sub(term) };
                }
                acc
            })
            .collect();
        if admissible(&a) {
            return Ok(a);
        }
    }
    Err(Error::NotLargestFactor(format!(
        "no vector of order {g} modulo the current lattice; \
         {g} does not divide the largest invariant factor"
    )))
}

/// Unimodular `Q` with `a·Q = (1, 0, …, 0)`, from a Smith decomposition of
/// the row `a`. Demands a unit gcd.
pub fn complete_relation_unimodular<R: EuclideanRing>(a: &[R]) -> Result<Matrix<R>> {
    if a.is_empty() {
        return Err(Error::Shape("empty relation row".into()));
    }
    let row = Matrix::from_fn(1, a.len(), |_, j| a[j].clone());
    let snf = smith_normal_form(&row);
    let diag = snf.nonzero_diagonal();
    if diag.len() != 1 || !diag[0].is_unit() {
        return Err(Error::Shape(format!(
            "relation coefficients have non-unit gcd {}",
            R::gcd_of_list(a)
        )));
    }
    // row·Q₀ = P⁻¹·(1, 0, …, 0) with P the 1x1 unit; absorb it into the
    // first column
    let p00 = snf.p[(0, 0)].clone();
    let mut q = snf.q;
    for i in 0..q.rows() {
        q[(i, 0)] = q[(i, 0)].mul(&p00);
    }
    debug_assert!({
        let check = row.mul(&q).expect("shapes agree");
        (0..a.len()).all(|j| {
            if j == 0 {
                check[(0, j)] == R::one()
            } else {
                check[(0, j)].is_zero()
            }
        })
    });
    Ok(q)
}

/// One enlargement by the largest invariant factor `g` of `S/W`. A unit `g`
/// is a no-op step.
pub fn step_invariant_factor<R: EuclideanRing>(
    mb: &LatticeBasis<R>,
    g: &R,
    way: LiftWay,
    seed: u64,
) -> Result<LiftStep<R>> {
    require_integral(mb)?;
    if g.is_unit() {
        return validated_step(
            mb,
            vec![R::zero(); mb.rank()],
            g.clone(),
            mb.clone(),
            match way {
                LiftWay::UnimodularCompletion => LiftMethod::UnimodularCompletion,
                LiftWay::EuclideanReduction => LiftMethod::EuclideanReduction,
            },
        );
    }
    let a = find_order_vector(mb, g, seed)?;
    let v = lifted_vector(mb, &a, g)?;
    match way {
        LiftWay::UnimodularCompletion => {
            // relation row (a_1, …, a_f, -g) kills the extended generator
            // list (u_1, …, u_f, v); transform by (Q⁻¹)ᵀ so the kill lands
            // on the first generator, then drop it
            let mut relation = a.clone();
            relation.push(g.neg());
            let q = complete_relation_unimodular(&relation)?;
            let gens = mb
                .columns()
                .hstack(&Matrix::from_columns(vec![v])?)?;
            let transformed = gens.mul(&inverse_unimodular(&q)?.transpose())?;
            for i in 0..transformed.rows() {
                if !transformed[(i, 0)].is_zero() {
                    return Err(Error::Internal(
                        "completed relation left a nonzero first generator".into(),
                    ));
                }
            }
            let outgoing = LatticeBasis::integral(Matrix::from_columns(
                (1..transformed.cols())
                    .map(|j| transformed.column(j))
                    .collect(),
            )?)?;
            validated_step(mb, a, g.clone(), outgoing, LiftMethod::UnimodularCompletion)
        }
        LiftWay::EuclideanReduction => {
            let outgoing = euclidean_reduction(mb, &a, v, g)?;
            validated_step(mb, a, g.clone(), outgoing, LiftMethod::EuclideanReduction)
        }
    }
}

/// Shrink the relation `a_1·u_1 + ⋯ + a_f·u_f - g·v = 0` by balanced
/// division until some coefficient is a unit, then drop that generator; the
/// remaining `f` generators are a basis of `W + R·v`.
///
/// Reducing coefficient `c_i` by the pivot `c_p` (subtracting `q·c_p`)
/// corresponds to the generator rewrite `u_p ← u_p + q·u_i`, which keeps the
/// relation and the spanned lattice intact.
fn euclidean_reduction<R: EuclideanRing>(
    mb: &LatticeBasis<R>,
    a: &[R],
    v: Vec<R>,
    g: &R,
) -> Result<LatticeBasis<R>> {
    let mut gens: Vec<Vec<R>> = mb.columns().columns();
    gens.push(v);
    let mut coef: Vec<R> = a.to_vec();
    coef.push(g.neg());

    // balanced remainders at least halve the pivot each round
    let cap = 64 + 4 * (coef.len() as u64 + g.delta().bits());
    for _ in 0..cap {
        let pivot = (0..coef.len())
            .filter(|&i| !coef[i].is_zero())
            .min_by(|&i, &j| coef[i].delta().cmp(&coef[j].delta()))
            .ok_or_else(|| Error::Internal("relation reduced to nothing".into()))?;
        if coef[pivot].is_unit() {
            let basis = Matrix::from_columns(
                (0..gens.len())
                    .filter(|&i| i != pivot)
                    .map(|i| gens[i].clone())
                    .collect(),
            )?;
            return LatticeBasis::integral(basis);
        }
        let mut progressed = false;
        for i in 0..coef.len() {
            if i == pivot || coef[i].is_zero() {
                continue;
            }
            let (q, r) = coef[i].div_rem(&coef[pivot]);
            if !q.is_zero() {
                let scaled: Vec<R> = gens[i].iter().map(|x| x.mul(&q)).collect();
                for (dst, src) in gens[pivot].iter_mut().zip(scaled) {
                    *dst = dst.add(&src);
                }
                progressed = true;
            }
            coef[i] = r;
        }
        if !progressed {
            // lone nonzero non-unit coefficient contradicts the unit gcd
            return Err(Error::Internal(
                "euclidean reduction stalled on a non-unit pivot".into(),
            ));
        }
    }
    Err(Error::Internal(
        "euclidean reduction failed to terminate".into(),
    ))
}

/// The single-swap step for a prime-power modulus `p^e`: with
/// `x·a_i + y·p^e = 1` for some `i` where `p ∤ a_i`, replace `u_i` by
/// `x·v + y·u_i`.
fn prime_power_swap<R: EuclideanRing>(
    mb: &LatticeBasis<R>,
    p: &R,
    e: u32,
    seed: u64,
) -> Result<LiftStep<R>> {
    require_integral(mb)?;
    let modulus = p.pow(e);
    let a = find_order_vector(mb, &modulus, seed)?;
    let v = lifted_vector(mb, &a, &modulus)?;
    let i = (0..a.len())
        .find(|&i| !p.divides(&a[i]))
        .ok_or_else(|| {
            Error::Internal(format!("every coefficient is divisible by {p}"))
        })?;
    let (one, x, y) = a[i].ext_gcd(&modulus);
    if !one.is_unit() {
        return Err(Error::Internal(format!(
            "coefficient {} is not invertible modulo {modulus}",
            a[i]
        )));
    }
    // absorb the canonical gcd's unit so that x·a_i + y·p^e = 1 exactly
    let u = one.inv_unit();
    let (x, y) = (x.mul(&u), y.mul(&u));
    let replacement: Vec<R> = v
        .iter()
        .zip(mb.columns().column(i))
        .map(|(vj, uj)| x.mul(vj).add(&y.mul(&uj)))
        .collect();
    let mut columns = mb.columns().clone();
    columns.set_column(i, &replacement);
    let outgoing = LatticeBasis::integral(columns)?;
    validated_step(mb, a, modulus, outgoing, LiftMethod::IntroPrime)
}

/// One enlargement by a maximal `p`-elementary divisor `p^e` of `S/W`.
pub fn step_elementary_divisor<R: EuclideanRing>(
    mb: &LatticeBasis<R>,
    p: &R,
    e: u32,
    seed: u64,
) -> Result<LiftStep<R>> {
    if e == 0 {
        return Err(Error::Shape("elementary divisor with exponent zero".into()));
    }
    prime_power_swap(mb, p, e, seed)
}

/// Run [`step_invariant_factor`] for every factor of `q`, largest first,
/// returning the final basis and the step trail.
pub fn lift_by_invariant_factors_with_steps<R: EuclideanRing>(
    mb: &LatticeBasis<R>,
    q: &QuotientStructure<R>,
    way: LiftWay,
    seed: u64,
) -> Result<(LatticeBasis<R>, Vec<LiftStep<R>>)> {
    let mut current = mb.clone();
    let mut steps = Vec::new();
    for g in q.factors().iter().rev() {
        let step = step_invariant_factor(&current, g, way, seed)?;
        current = step.outgoing().clone();
        steps.push(step);
    }
    Ok((current, steps))
}

/// Basis of `S` from a basis of `M` and the invariant factors of `S/M`.
pub fn lift_by_invariant_factors<R: EuclideanRing>(
    mb: &LatticeBasis<R>,
    q: &QuotientStructure<R>,
    way: LiftWay,
    seed: u64,
) -> Result<LatticeBasis<R>> {
    Ok(lift_by_invariant_factors_with_steps(mb, q, way, seed)?.0)
}

/// Run [`step_elementary_divisor`] over a whole elementary-divisor multiset:
/// primes in ascending order, each prime's exponents largest first (each
/// step needs a maximal `p`-divisor of what remains).
pub fn lift_by_elementary_divisors_with_steps<R: EuclideanRing>(
    mb: &LatticeBasis<R>,
    divisors: &[(R, u32)],
    seed: u64,
) -> Result<(LatticeBasis<R>, Vec<LiftStep<R>>)> {
    let mut ordered = divisors.to_vec();
    ordered.sort_by(|(p, e), (q, f)| p.delta().cmp(&q.delta()).then(f.cmp(e)));
    let mut current = mb.clone();
    let mut steps = Vec::new();
    for (p, e) in &ordered {
        let step = step_elementary_divisor(&current, p, *e, seed)?;
        current = step.outgoing().clone();
        steps.push(step);
    }
    Ok((current, steps))
}

/// Basis of `S` from a basis of `M` and the elementary divisors of `S/M`.
pub fn lift_by_elementary_divisors<R: EuclideanRing>(
    mb: &LatticeBasis<R>,
    divisors: &[(R, u32)],
    seed: u64,
) -> Result<LatticeBasis<R>> {
    Ok(lift_by_elementary_divisors_with_steps(mb, divisors, seed)?.0)
}

/// Basis of `S` from a basis of `M` and the index `[S : M]` alone, one prime
/// at a time: factor the index, and for each prime `p` (smallest first,
/// with multiplicity) swap in a vector of order `p`. Needs a factoring ring
/// instance.
pub fn lift_prime_at_a_time_with_steps<R: EuclideanRing>(
    mb: &LatticeBasis<R>,
    index: &R,
    seed: u64,
) -> Result<(LatticeBasis<R>, Vec<LiftStep<R>>)> {
    if index.is_zero() {
        return Err(Error::Shape("zero index".into()));
    }
    let mut current = mb.clone();
    let mut steps = Vec::new();
    if index.is_unit() {
        return Ok((current, steps));
    }
    for (p, e) in index.factor()? {
        for _ in 0..e {
            let step = prime_power_swap(&current, &p, 1, seed)?;
            current = step.outgoing().clone();
            steps.push(step);
        }
    }
    Ok((current, steps))
}

/// See [`lift_prime_at_a_time_with_steps`].
pub fn lift_prime_at_a_time<R: EuclideanRing>(
    mb: &LatticeBasis<R>,
    index: &R,
    seed: u64,
) -> Result<LatticeBasis<R>> {
    Ok(lift_prime_at_a_time_with_steps(mb, index, seed)?.0)
}
