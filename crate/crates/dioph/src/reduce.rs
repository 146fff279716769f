//! Reduction of a coefficient matrix to the scaled echelon shape
//! `Z = (d·I_r | K)·Σ⁻¹`, the form every later stage works from.
//!
//! `E` is the reduced row echelon form of `A` over fractions, `d` the lcm of
//! the denominators of `E` (canonical, so positive for integers), `K` is
//! `d` times the non-pivot block of `E`, and `Σ` the permutation that moves
//! the pivot columns to the front in order, non-pivot columns keeping their
//! relative order. `J` is `Z` without its trailing zero rows.
//!
//! The minimal choice of `d` forces the content `gcd(d, entries of K)` to be
//! a unit: each reduced denominator equals `d / gcd(d, K_ij)`, and their lcm
//! is `d / content`. `reduce_matrix` validates this instead of trusting it.

use crate::error::{Error, Result, TrivialKernel};
use crate::matrix::{rref, Matrix};
use crate::ring::EuclideanRing;

/// The column permutation `Σ` with `Σ·e_j = e_{to_original[j]}`: position `j`
/// of a reordered coordinate vector belongs to original column
/// `to_original[j]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ColumnPermutation {
    to_original: Vec<usize>,
}

impl ColumnPermutation {
    pub fn new(to_original: Vec<usize>) -> Result<Self> {
        let n = to_original.len();
        let mut seen = vec![false; n];
        for &t in &to_original {
            if t >= n || seen[t] {
                return Err(Error::Shape(format!(
                    "{to_original:?} is not a permutation of 0..{n}"
                )));
            }
            seen[t] = true;
        }
        Ok(ColumnPermutation { to_original })
    }

    pub fn identity(n: usize) -> Self {
        ColumnPermutation {
            to_original: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.to_original.len()
    }

    pub fn is_empty(&self) -> bool {
        self.to_original.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.to_original.iter().enumerate().all(|(i, &t)| i == t)
    }

    pub fn to_original(&self) -> &[usize] {
        &self.to_original
    }

    /// `Σ·v`: spread reordered coordinates back to original positions.
    pub fn apply<T: Clone>(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.len());
        let mut out: Vec<Option<T>> = vec![None; self.len()];
        for (j, &t) in self.to_original.iter().enumerate() {
            out[t] = Some(v[j].clone());
        }
        out.into_iter().map(|x| x.expect("permutation is total")).collect()
    }

    /// `Σ⁻¹·v`: reorder original coordinates into pivot-first positions.
    pub fn unapply<T: Clone>(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.len());
        self.to_original.iter().map(|&t| v[t].clone()).collect()
    }

    /// `Σ·M`: row `to_original[j]` of the result is row `j` of `m`.
    pub fn apply_rows<T: Clone>(&self, m: &Matrix<T>) -> Matrix<T> {
        assert_eq!(m.rows(), self.len());
        let inv = self.inverse_map();
        Matrix::from_fn(m.rows(), m.cols(), |i, j| m[(inv[i], j)].clone())
    }

    /// `M·Σ`: column `j` of the result is column `to_original[j]` of `m`.
    pub fn apply_cols<T: Clone>(&self, m: &Matrix<T>) -> Matrix<T> {
        assert_eq!(m.cols(), self.len());
        Matrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, self.to_original[j])].clone())
    }

    /// The permutation matrix itself.
    pub fn matrix<R: EuclideanRing>(&self) -> Matrix<R> {
        Matrix::from_fn(self.len(), self.len(), |i, j| {
            if i == self.to_original[j] {
                R::one()
            } else {
                R::zero()
            }
        })
    }

    fn inverse_map(&self) -> Vec<usize> {
        let mut inv = vec![0; self.len()];
        for (j, &t) in self.to_original.iter().enumerate() {
            inv[t] = j;
        }
        inv
    }
}

/// A coefficient matrix together with its reduced shape; see the module
/// docs for the roles of the pieces.
#[derive(Clone, Debug)]
pub struct ReducedSystem<R: EuclideanRing> {
    a: Matrix<R>,
    rank: usize,
    free: usize,
    d: R,
    k: Matrix<R>,
    sigma: ColumnPermutation,
    z: Matrix<R>,
    j: Matrix<R>,
}

impl<R: EuclideanRing> ReducedSystem<R> {
    /// The matrix that was reduced.
    pub fn a(&self) -> &Matrix<R> {
        &self.a
    }

    /// Rank `r` of the system, `0 < r < n`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of non-pivot columns `f = n - r` (the nullspace rank).
    pub fn free(&self) -> usize {
        self.free
    }

    /// Number of unknowns.
    pub fn n(&self) -> usize {
        self.rank + self.free
    }

    /// The common denominator, canonical and minimal.
    pub fn d(&self) -> &R {
        &self.d
    }

    /// The `r x f` scaled non-pivot block.
    pub fn k(&self) -> &Matrix<R> {
        &self.k
    }

    pub fn sigma(&self) -> &ColumnPermutation {
        &self.sigma
    }

    /// `(d·I_r | K)` over `m - r` zero rows, columns still permuted.
    pub fn z(&self) -> &Matrix<R> {
        &self.z
    }

    /// `Z` without its zero rows.
    pub fn j(&self) -> &Matrix<R> {
        &self.j
    }

    /// Hand-build a system from its pieces (test corpora, denormalized
    /// inputs). Derives `A = J·Σ⁻¹`, so the zero-row count is zero; use
    /// `reduce_matrix` for real inputs.
    pub fn from_parts(d: R, k: Matrix<R>, sigma: ColumnPermutation) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::Shape("zero common denominator".into()));
        }
        let rank = k.rows();
        let free = k.cols();
        let n = rank + free;
        if sigma.len() != n {
            return Err(Error::Shape(format!(
                "permutation over {} columns for a system with {n}",
                sigma.len()
            )));
        }
        if rank == 0 || free == 0 {
            return Err(Error::Shape(format!(
                "hand-built system needs 0 < rank < n, got rank {rank}, n {n}"
            )));
        }
        let z = assemble_z(rank, rank, free, &d, &k);
        // un-permute the columns of J to get a matrix that reduces back
        let mut a = Matrix::zeros(rank, n);
        for pos in 0..n {
            for i in 0..rank {
                a[(i, sigma.to_original()[pos])] = z[(i, pos)].clone();
            }
        }
        Ok(ReducedSystem {
            a,
            rank,
            free,
            d,
            j: z.clone(),
            k,
            sigma,
            z,
        })
    }
}

/// `(d·I_r | K)` stacked over `m - r` zero rows.
fn assemble_z<R: EuclideanRing>(
    m: usize,
    rank: usize,
    free: usize,
    d: &R,
    k: &Matrix<R>,
) -> Matrix<R> {
    Matrix::from_fn(m, rank + free, |i, j| {
        if i >= rank {
            R::zero()
        } else if j < rank {
            if i == j {
                d.clone()
            } else {
                R::zero()
            }
        } else {
            k[(i, j - rank)].clone()
        }
    })
}

/// gcd of `d` with every entry of `K`.
fn content<R: EuclideanRing>(d: &R, k: &Matrix<R>) -> R {
    let mut items = vec![d.clone()];
    for i in 0..k.rows() {
        items.extend_from_slice(k.row(i));
    }
    R::gcd_of_list(&items)
}

/// Reduce `A` to `Z = (d·I_r | K)` form. Errors with [`Error::RankOutOfScope`]
/// (carrying the trivial nullspace) when `r = 0` or `r = n`.
pub fn reduce_matrix<R: EuclideanRing>(a: &Matrix<R>) -> Result<ReducedSystem<R>> {
    let (m, n) = (a.rows(), a.cols());
    let rr = rref(&a.to_fractions());
    let rank = rr.rank;
    if rank == n {
        return Err(Error::RankOutOfScope {
            rank,
            rows: m,
            cols: n,
            kind: TrivialKernel::ZeroOnly,
        });
    }
    if rank == 0 {
        return Err(Error::RankOutOfScope {
            rank,
            rows: m,
            cols: n,
            kind: TrivialKernel::WholeSpace,
        });
    }
    let free = n - rank;

    // d: lcm of the reduced denominators of E (rows past the rank are zero)
    let mut d = R::one();
    for i in 0..rank {
        for x in rr.e.row(i) {
            d = d.lcm(x.den());
        }
    }

    let nonpivots: Vec<usize> = (0..n).filter(|c| !rr.pivots.contains(c)).collect();
    let sigma = ColumnPermutation::new(
        rr.pivots.iter().chain(nonpivots.iter()).copied().collect(),
    )?;

    // K = d * (non-pivot block of E); every reduced denominator divides d
    let mut k = Matrix::zeros(rank, free);
    for i in 0..rank {
        for (j, &c) in nonpivots.iter().enumerate() {
            let e = &rr.e[(i, c)];
            let scale = d.div_exact(e.den())?;
            k[(i, j)] = e.num().mul(&scale);
        }
    }

    let g = content(&d, &k);
    if !g.is_unit() {
        return Err(Error::Internal(format!(
            "reduced system has non-unit content {g} (d = {d})"
        )));
    }

    let z = assemble_z(m, rank, free, &d, &k);
    let j = assemble_z(rank, rank, free, &d, &k);
    Ok(ReducedSystem {
        a: a.clone(),
        rank,
        free,
        d,
        k,
        sigma,
        z,
        j,
    })
}

/// Divide `d`, `K`, `Z`, `J` by their common content. A no-op (by the
/// minimality of `d`) for systems built by [`reduce_matrix`]; hand-built
/// denormalized systems are repaired.
pub fn normalize_content<R: EuclideanRing>(rs: ReducedSystem<R>) -> Result<ReducedSystem<R>> {
    let g = content(&rs.d, &rs.k);
    if g.is_unit() {
        return Ok(rs);
    }
    let d = rs.d.div_exact(&g)?;
    let mut k = rs.k.clone();
    for i in 0..k.rows() {
        for j in 0..k.cols() {
            k[(i, j)] = k[(i, j)].div_exact(&g)?;
        }
    }
    if !content(&d, &k).is_unit() {
        return Err(Error::Internal(
            "content division left a non-unit content".into(),
        ));
    }
    let z = assemble_z(rs.z.rows(), rs.rank, rs.free, &d, &k);
    let j = assemble_z(rs.rank, rs.rank, rs.free, &d, &k);
    Ok(ReducedSystem { d, k, z, j, ..rs })
}
