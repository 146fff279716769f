//! Smith normal form over a Euclidean domain, with both transforms tracked.
//!
//! `smith_normal_form(A)` returns `(D, P, Q)` with `D = P·A·Q`, `P` and `Q`
//! unimodular, the diagonal of `D` canonical (integers: non-negative) with
//! zeros trailing, and each diagonal entry dividing the next.
//!
//! Elimination is gcd-pivoting: the pivot is the nonzero entry of minimal
//! Euclidean size in the remaining submatrix (ties: lowest row, then lowest
//! column), rows/columns are cleared by exact subtraction where the pivot
//! divides and by a 2x2 extended-gcd transform where it does not, and a
//! final fix-up pass restores the divisibility chain along the diagonal.
//!
//! On top of the form: definitive integral linear solving and inversion of
//! unimodular matrices, both used as oracles by the lattice machinery.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::EuclideanRing;

pub struct SmithDecomposition<R: EuclideanRing> {
    /// the diagonal form, `d = p * a * q`
    pub d: Matrix<R>,
    pub p: Matrix<R>,
    pub q: Matrix<R>,
}

impl<R: EuclideanRing> SmithDecomposition<R> {
    /// All `min(m, n)` diagonal entries, trailing zeros included.
    pub fn diagonal(&self) -> Vec<R> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }

    /// The nonzero invariant diagonal `d_1 | d_2 | …` (zeros trail, so this
    /// is the leading run).
    pub fn nonzero_diagonal(&self) -> Vec<R> {
        self.diagonal()
            .into_iter()
            .take_while(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.nonzero_diagonal().len()
    }
}

struct Work<R: EuclideanRing> {
    a: Matrix<R>,
    p: Matrix<R>,
    q: Matrix<R>,
}

impl<R: EuclideanRing> Work<R> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.p.swap_rows(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.q.swap_cols(i, j);
    }

    /// row_i -= c * row_k, in A and P alike
    fn row_sub(&mut self, i: usize, k: usize, c: &R) {
        for m in [&mut self.a, &mut self.p] {
            for j in 0..m.cols() {
                let t = m[(k, j)].mul(c);
                m[(i, j)] = m[(i, j)].sub(&t);
            }
        }
    }

    /// col_j -= c * col_k, in A and Q alike
    fn col_sub(&mut self, j: usize, k: usize, c: &R) {
        for m in [&mut self.a, &mut self.q] {
            for i in 0..m.rows() {
                let t = m[(i, k)].mul(c);
                m[(i, j)] = m[(i, j)].sub(&t);
            }
        }
    }

    /// Replace rows (k, i) by the unimodular combination that puts
    /// gcd(a__kk, a_ik) at (k, k) and 0 at (i, k).
    fn row_gcd_combine(&mut self, k: usize, i: usize) {
        let a = self.a[(k, k)].clone();
        let b = self.a[(i, k)].clone();
        let (g, x, y) = a.ext_gcd(&b);
        let u = b.div_exact(&g).expect("gcd divides").neg();
        let v = a.div_exact(&g).expect("gcd divides");
        for m in [&mut self.a, &mut self.p] {
            for j in 0..m.cols() {
                let rk = m[(k, j)].clone();
                let ri = m[(i, j)].clone();
                m[(k, j)] = x.mul(&rk).add(&y.mul(&ri));
                m[(i, j)] = u.mul(&rk).add(&v.mul(&ri));
            }
        }
    }

    /// Column analogue of `row_gcd_combine` for the entry at (k, j).
    fn col_gcd_combine(&mut self, k: usize, j: usize) {
        let a = self.a[(k, k)].clone();
        let b = self.a[(k, j)].clone();
        let (g, x, y) = a.ext_gcd(&b);
        let u = b.div_exact(&g).expect("gcd divides").neg();
        let v = a.div_exact(&g).expect("gcd divides");
        for m in [&mut self.a, &mut self.q] {
            for i in 0..m.rows() {
                let ck = m[(i, k)].clone();
                let cj = m[(i, j)].clone();
                m[(i, k)] = x.mul(&ck).add(&y.mul(&cj));
                m[(i, j)] = u.mul(&ck).add(&v.mul(&cj));
            }
        }
    }

    /// row_i *= u for a unit u, in A and P alike
    fn scale_row(&mut self, i: usize, u: &R) {
        for m in [&mut self.a, &mut self.p] {
            for j in 0..m.cols() {
                m[(i, j)] = m[(i, j)].mul(u);
            }
        }
    }
}

/// Nonzero entry of minimal Euclidean size in the submatrix `[k.., k..]`;
/// ties break to the lowest row, then the lowest column.
fn select_pivot<R: EuclideanRing>(a: &Matrix<R>, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigUint, usize, usize)> = None;
    for i in k..a.rows() {
        for j in k..a.cols() {
            if a[(i, j)].is_zero() {
                continue;
            }
            let d = a[(i, j)].delta();
            if best.as_ref().map_or(true, |(bd, _, _)| d < *bd) {
                best = Some((d, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

pub fn smith_normal_form<R: EuclideanRing>(a: &Matrix<R>) -> SmithDecomposition<R> {
    let (m, n) = (a.rows(), a.cols());
    let mut w = Work {
        a: a.clone(),
        p: Matrix::identity(m),
        q: Matrix::identity(n),
    };
    let mut rank = 0;
    for k in 0..m.min(n) {
        let Some((pi, pj)) = select_pivot(&w.a, k) else {
            break; // remaining submatrix is zero
        };
        w.swap_rows(k, pi);
        w.swap_cols(k, pj);
        loop {
            for i in k + 1..m {
                if w.a[(i, k)].is_zero() {
                    continue;
                }
                if w.a[(k, k)].divides(&w.a[(i, k)]) {
                    let c = w.a[(i, k)].div_exact(&w.a[(k, k)]).expect("divides");
                    w.row_sub(i, k, &c);
                } else {
                    w.row_gcd_combine(k, i);
                }
            }
            for j in k + 1..n {
                if w.a[(k, j)].is_zero() {
                    continue;
                }
                if w.a[(k, k)].divides(&w.a[(k, j)]) {
                    let c = w.a[(k, j)].div_exact(&w.a[(k, k)]).expect("divides");
                    w.col_sub(j, k, &c);
                } else {
                    // may refill column k, but strictly shrinks the pivot
                    w.col_gcd_combine(k, j);
                }
            }
            let col_clear = (k + 1..m).all(|i| w.a[(i, k)].is_zero());
            let row_clear = (k + 1..n).all(|j| w.a[(k, j)].is_zero());
            if col_clear && row_clear {
                break;
            }
        }
        rank = k + 1;
    }
    // Restore the divisibility chain along the nonzero diagonal: a failing
    // pair (a, b) is replaced by (gcd, lcm) via one column add, one row gcd
    // transform, and one clearing column subtraction.
    loop {
        let mut changed = false;
        for i in 0..rank.saturating_sub(1) {
            if w.a[(i, i)].divides(&w.a[(i + 1, i + 1)]) {
                continue;
            }
            let minus_one = R::one().neg();
            w.col_sub(i, i + 1, &minus_one); // col_i += col_{i+1}
            w.row_gcd_combine(i, i + 1);
            let c = w.a[(i, i + 1)].div_exact(&w.a[(i, i)]).expect("gcd divides");
            w.col_sub(i + 1, i, &c);
            changed = true;
        }
        if !changed {
            break;
        }
    }
    for i in 0..rank {
        let u = w.a[(i, i)].normalizing_unit();
        if u != R::one() {
            w.scale_row(i, &u);
        }
    }
    SmithDecomposition { d: w.a, p: w.p, q: w.q }
}

/// Definitive integral solve of `A·X = B`: `Some(X)` with `A·X = B` exactly,
/// or `None` when no solution exists over the ring.
pub fn solve_integral<R: EuclideanRing>(
    a: &Matrix<R>,
    b: &Matrix<R>,
) -> Result<Option<Matrix<R>>> {
    if a.rows() != b.rows() {
        return Err(Error::Shape(format!(
            "solve of {}x{} against right-hand side {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let (m, k, l) = (a.rows(), a.cols(), b.cols());
    let s = smith_normal_form(a);
    let bp = s.p.mul(b)?;
    let mut y = Matrix::zeros(k, l);
    for i in 0..m {
        let di = if i < k { s.d[(i, i)].clone() } else { R::zero() };
        for j in 0..l {
            if di.is_zero() {
                if !bp[(i, j)].is_zero() {
                    return Ok(None);
                }
            } else {
                let (q, r) = bp[(i, j)].div_rem(&di);
                if !r.is_zero() {
                    return Ok(None);
                }
                y[(i, j)] = q;
            }
        }
    }
    let x = s.q.mul(&y)?;
    debug_assert_eq!(a.mul(&x).ok(), Some(b.clone()));
    Ok(Some(x))
}

/// Inverse of a unimodular matrix, via `A = P⁻¹·D·Q⁻¹` with unit diagonal:
/// `A⁻¹ = Q·D⁻¹·P`.
pub fn inverse_unimodular<R: EuclideanRing>(u: &Matrix<R>) -> Result<Matrix<R>> {
    if u.rows() != u.cols() {
        return Err(Error::Shape(format!(
            "inverse of a {}x{} matrix",
            u.rows(),
            u.cols()
        )));
    }
    let s = smith_normal_form(u);
    let diag = s.diagonal();
    if diag.iter().any(|x| !x.is_unit()) {
        return Err(Error::Internal(format!(
            "inverse of a non-unimodular matrix (invariant diagonal {diag:?})"
        )));
    }
    let dinv = Matrix::diagonal(
        u.rows(),
        u.rows(),
        &diag.iter().map(R::inv_unit).collect::<Vec<_>>(),
    );
    let inv = s.q.mul(&dinv)?.mul(&s.p)?;
    debug_assert_eq!(u.mul(&inv).ok(), Some(Matrix::identity(u.rows())));
    Ok(inv)
}
