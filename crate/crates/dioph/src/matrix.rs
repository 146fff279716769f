//! Dense matrices over a Euclidean domain and over its fraction field.
//!
//! The exact kernels live here: fraction-free determinant (Bareiss), reduced
//! row echelon form over fractions, and row reduction modulo a prime with
//! canonical residues. Smith normal form has its own module.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::ring::EuclideanRing;

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape(format!(
                "ragged rows: expected {c} entries in each of {r} rows"
            )));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        assert!(i < self.rows);
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub fn map<U>(&self, mut f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix::from_fn(self.rows, self.cols, |i, j| f(&self[(i, j)]))
    }
}

impl<T: Clone> Matrix<T> {
    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        assert!(j < self.cols);
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<T>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn from_columns(cols: Vec<Vec<T>>) -> Result<Self> {
        Ok(Matrix::from_rows(cols)?.transpose())
    }

    pub fn set_column(&mut self, j: usize, col: &[T]) {
        assert_eq!(col.len(), self.rows, "column length mismatch");
        for i in 0..self.rows {
            self[(i, j)] = col[i].clone();
        }
    }

    /// Columns of `self` followed by the columns of `rhs`.
    pub fn hstack(&self, rhs: &Self) -> Result<Self> {
        if self.rows != rhs.rows {
            return Err(Error::Shape(format!(
                "hstack of {}x{} with {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Matrix::from_fn(self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                rhs[(i, j - self.cols)].clone()
            }
        }))
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl<R: EuclideanRing> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| R::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { R::one() } else { R::zero() })
    }

    /// Rectangular diagonal matrix with the given entries on the diagonal.
    pub fn diagonal(rows: usize, cols: usize, entries: &[R]) -> Self {
        assert!(entries.len() <= rows.min(cols));
        Matrix::from_fn(rows, cols, |i, j| {
            if i == j && i < entries.len() {
                entries[i].clone()
            } else {
                R::zero()
            }
        })
    }

    /// Test/IO helper: build from literal rows.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let c = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == c), "ragged literal rows");
        Matrix::from_fn(rows.len(), c, |i, j| R::from_i64(rows[i][j]))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(R::is_zero)
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "product of {}x{} with {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = R::zero();
            for k in 0..self.cols {
                acc = acc.add(&self[(i, k)].mul(&rhs[(k, j)]));
            }
            acc
        }))
    }

    pub fn mul_vec(&self, v: &[R]) -> Result<Vec<R>> {
        if self.cols != v.len() {
            return Err(Error::Shape(format!(
                "product of {}x{} with a vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = R::zero();
                for k in 0..self.cols {
                    acc = acc.add(&self[(i, k)].mul(&v[k]));
                }
                acc
            })
            .collect())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::Shape("matrix sum of unequal shapes".into()));
        }
        Ok(Matrix::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].add(&rhs[(i, j)])
        }))
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|x| x.neg())
    }

    pub fn scale(&self, s: &R) -> Self {
        self.map(|x| x.mul(s))
    }

    pub fn to_fractions(&self) -> Matrix<Fraction<R>> {
        self.map(|x| Fraction::from_ring(x.clone()))
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<R> {
        if self.rows != self.cols {
            return Err(Error::Shape(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(R::one());
        }
        let mut m = self.clone();
        let mut negate = false;
        let mut prev = R::one();
        for k in 0..n - 1 {
            // pivot search: first nonzero entry in column k at or below row k
            let Some(p) = (k..n).find(|&i| !m[(i, k)].is_zero()) else {
                return Ok(R::zero());
            };
            if p != k {
                m.swap_rows(p, k);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    // Sylvester identity keeps this division exact
                    let t = m[(i, j)]
                        .mul(&m[(k, k)])
                        .sub(&m[(i, k)].mul(&m[(k, j)]));
                    m[(i, j)] = t.div_exact(&prev)?;
                }
                m[(i, k)] = R::zero();
            }
            prev = m[(k, k)].clone();
        }
        let d = m[(n - 1, n - 1)].clone();
        Ok(if negate { d.neg() } else { d })
    }

    /// Square with unit determinant?
    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.det().map(|d| d.is_unit()).unwrap_or(false)
    }
}

/// Reduced row echelon form over the fraction field.
pub struct Rref<R: EuclideanRing> {
    pub e: Matrix<Fraction<R>>,
    /// pivot column of each pivot row, strictly increasing
    pub pivots: Vec<usize>,
    pub rank: usize,
}

pub fn rref<R: EuclideanRing>(a: &Matrix<Fraction<R>>) -> Rref<R> {
    let (m, n) = (a.rows(), a.cols());
    let mut e = a.clone();
    let mut pivots = Vec::new();
    let mut pr = 0; // next pivot row
    for col in 0..n {
        if pr == m {
            break;
        }
        let Some(hit) = (pr..m).find(|&i| !e[(i, col)].is_zero()) else {
            continue;
        };
        e.swap_rows(hit, pr);
        let inv = e[(pr, col)].inv().expect("pivot is nonzero");
        for j in col..n {
            e[(pr, j)] = e[(pr, j)].mul(&inv);
        }
        for i in 0..m {
            if i != pr && !e[(i, col)].is_zero() {
                let factor = e[(i, col)].clone();
                for j in col..n {
                    let t = e[(pr, j)].mul(&factor);
                    e[(i, j)] = e[(i, j)].sub(&t);
                }
            }
        }
        pivots.push(col);
        pr += 1;
    }
    Rref { e, pivots, rank: pr }
}

/// Row echelon form of the canonical-residue image of a matrix modulo a
/// prime `p`, computed over the field R/Rp. Entries of `h` are canonical
/// residues; `leading` lists the pivot column of each nonzero row.
pub struct ModRref<R: EuclideanRing> {
    pub h: Matrix<R>,
    pub leading: Vec<usize>,
    pub rank: usize,
}

pub fn rref_mod_p<R: EuclideanRing>(k: &Matrix<R>, p: &R) -> Result<ModRref<R>> {
    if !p.is_prime()? {
        return Err(Error::NotPrime(p.to_string()));
    }
    let (m, n) = (k.rows(), k.cols());
    let mut h = k.map(|x| x.rem_canonical(p));
    let mut leading = Vec::new();
    let mut pr = 0;
    for col in 0..n {
        if pr == m {
            break;
        }
        let Some(hit) = (pr..m).find(|&i| !h[(i, col)].is_zero()) else {
            continue;
        };
        h.swap_rows(hit, pr);
        // invert the pivot residue: x*pivot + y*p = g with g a unit
        let (g, x, _) = h[(pr, col)].ext_gcd(p);
        debug_assert!(g.is_unit(), "nonzero residue mod a prime is invertible");
        let inv = x.mul(&g.inv_unit()).rem_canonical(p);
        for j in col..n {
            h[(pr, j)] = h[(pr, j)].mul(&inv).rem_canonical(p);
        }
        for i in 0..m {
            if i != pr && !h[(i, col)].is_zero() {
                let factor = h[(i, col)].clone();
                for j in col..n {
                    let t = h[(pr, j)].mul(&factor);
                    h[(i, j)] = h[(i, j)].sub(&t).rem_canonical(p);
                }
            }
        }
        leading.push(col);
        pr += 1;
    }
    Ok(ModRref { h, leading, rank: pr })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Int;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> Matrix<Int> {
        Matrix::from_i64_rows(rows)
    }

    fn fr(n: i64, d: i64) -> Fraction<Int> {
        Fraction::new(Int::from(n), Int::from(d)).unwrap()
    }

    #[test]
    fn basic_shape_ops() {
        let a = m(&[&[1, 2, 3], &[4, 5, 6]]);
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(a.column(1), vec![Int::from(2), Int::from(5)]);
        let id = Matrix::<Int>::identity(3);
        assert_eq!(a.mul(&id).unwrap(), a);
        assert!(Matrix::<Int>::zeros(2, 2).is_zero());
        assert!(a.mul(&a).is_err(), "2x3 times 2x3 has no shape");
        assert!(Matrix::from_rows(vec![vec![Int::from(1)], vec![]]).is_err());
        let b = Matrix::from_columns(a.columns()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(m(&[&[0, 1], &[19, 12]]).det().unwrap(), Int::from(-19));
        assert_eq!(Matrix::<Int>::identity(4).det().unwrap(), Int::from(1));
        assert_eq!(m(&[&[2, 4], &[1, 2]]).det().unwrap(), Int::from(0));
        // Vandermonde nodes 1, 3, 7: (3-1)(7-1)(7-3) = 48
        let v = m(&[&[1, 1, 1], &[1, 3, 9], &[1, 7, 49]]);
        assert_eq!(v.det().unwrap(), Int::from(48));
        assert_eq!(m(&[&[5]]).det().unwrap(), Int::from(5));
    }

    #[test]
    fn unimodular_examples() {
        assert!(m(&[&[1, 1], &[0, 1]]).is_unimodular());
        assert!(m(&[&[0, -1], &[1, 0]]).is_unimodular());
        assert!(!m(&[&[2, 0], &[0, 1]]).is_unimodular());
        assert!(!m(&[&[1, 0, 0], &[0, 1, 0]]).is_unimodular(), "not square");
    }

    /// Independent determinant oracle: cofactor expansion along row 0.
    fn det_laplace(a: &Matrix<Int>) -> Int {
        use crate::ring::EuclideanRing;
        let n = a.rows();
        if n == 0 {
            return Int::from(1);
        }
        if n == 1 {
            return a[(0, 0)].clone();
        }
        let mut acc = Int::from(0);
        for j in 0..n {
            let minor = Matrix::from_fn(n - 1, n - 1, |r, c| {
                a[(r + 1, if c < j { c } else { c + 1 })].clone()
            });
            let term = a[(0, j)].mul(&det_laplace(&minor));
            acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }

    #[test]
    fn rref_of_first_worked_example() {
        let a = m(&[&[2, 3, 5, 4], &[3, -5, 2, -7]]).to_fractions();
        let r = rref(&a);
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivots, vec![0, 1]);
        let expect = [
            [fr(1, 1), fr(0, 1), fr(31, 19), fr(-1, 19)],
            [fr(0, 1), fr(1, 1), fr(11, 19), fr(26, 19)],
        ];
        for i in 0..2 {
            for j in 0..4 {
                assert_eq!(r.e[(i, j)], expect[i][j], "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn rref_trivial_cases() {
        let id = Matrix::<Int>::identity(3).to_fractions();
        let r = rref(&id);
        assert_eq!(r.rank, 3);
        assert_eq!(r.e, id);
        let z = Matrix::<Int>::zeros(2, 3).to_fractions();
        let r = rref(&z);
        assert_eq!(r.rank, 0);
        assert!(r.pivots.is_empty());
        // pivot not in the first column
        let r = rref(&m(&[&[0, 2, 4]]).to_fractions());
        assert_eq!(r.pivots, vec![1]);
        assert_eq!(r.e[(0, 2)], fr(2, 1));
    }

    #[test]
    fn mod_p_rref_of_first_worked_example() {
        // K = [[31,-1],[11,26]] mod 19 row-reduces to a single pivot row
        let k = m(&[&[31, -1], &[11, 26]]);
        let r = rref_mod_p(&k, &Int::from(19)).unwrap();
        assert_eq!(r.rank, 1);
        assert_eq!(r.leading, vec![0]);
        assert_eq!(r.h, m(&[&[1, 11], &[0, 0]]));
    }

    #[test]
    fn mod_p_rref_rejects_composite_and_handles_zero_image() {
        let k = m(&[&[31, -1], &[11, 26]]);
        assert!(matches!(
            rref_mod_p(&k, &Int::from(4)),
            Err(Error::NotPrime(_))
        ));
        // every entry divisible by p: rank 0
        let k = m(&[&[2, -4], &[6, 8]]);
        let r = rref_mod_p(&k, &Int::from(2)).unwrap();
        assert_eq!(r.rank, 0);
        assert!(r.h.is_zero());
    }

    /// Count solutions of K·a = 0 over Z/p by enumeration; must be p^(f-s).
    #[test]
    fn mod_p_rank_agrees_with_kernel_count() {
        use crate::ring::EuclideanRing;
        let cases: Vec<(Matrix<Int>, i64)> = vec![
            (m(&[&[1, 1, 0], &[0, 1, 1]]), 2),
            (m(&[&[1, 2], &[2, 4]]), 3),
            (m(&[&[4, 0, 4], &[9, 9, 9], &[3, 3, 3]]), 2),
            (m(&[&[0, 0], &[0, 0]]), 5),
        ];
        for (k, p) in cases {
            let s = rref_mod_p(&k, &Int::from(p)).unwrap().rank;
            let f = k.cols();
            let mut count = 0u64;
            let mut alpha = vec![0i64; f];
            'outer: loop {
                let v: Vec<Int> = alpha.iter().map(|&x| Int::from(x)).collect();
                let img = k.mul_vec(&v).unwrap();
                if img
                    .iter()
                    .all(|x| x.rem_canonical(&Int::from(p)).is_zero())
                {
                    count += 1;
                }
                for d in 0..f {
                    alpha[d] += 1;
                    if alpha[d] < p {
                        continue 'outer;
                    }
                    alpha[d] = 0;
                }
                break;
            }
            assert_eq!(count, (p as u64).pow((f - s) as u32), "p={p}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn bareiss_matches_laplace(
            entries in proptest::collection::vec(-9i64..10, 16),
            n in 1usize..5,
        ) {
            let a = Matrix::from_fn(n, n, |i, j| Int::from(entries[i * 4 + j]));
            prop_assert_eq!(a.det().unwrap(), det_laplace(&a));
        }

        #[test]
        fn rref_is_reduced(
            entries in proptest::collection::vec(-9i64..10, 12),
            rows in 1usize..4,
        ) {
            let cols = 12 / 4;
            let a = Matrix::from_fn(rows, cols, |i, j| Int::from(entries[i * 4 + j]))
                .to_fractions();
            let r = rref(&a);
            // pivots strictly increasing, pivot columns are canonical basis vectors
            for (pr, &pc) in r.pivots.iter().enumerate() {
                if pr > 0 {
                    prop_assert!(r.pivots[pr - 1] < pc);
                }
                for i in 0..rows {
                    let expect = if i == pr { Fraction::one() } else { Fraction::zero() };
                    prop_assert_eq!(r.e[(i, pc)].clone(), expect);
                }
            }
            // rows past the rank are zero
            for i in r.rank..rows {
                for j in 0..cols {
                    prop_assert!(r.e[(i, j)].is_zero());
                }
            }
        }
    }
}
