//! The Euclidean-domain contract and its arbitrary-precision integer instance.
//!
//! Everything downstream (matrices, reduction, lattices, lifting) is written
//! against [`EuclideanRing`] and never assumes integers. The integer instance
//! [`Int`] is the one exercised by the binary and the test suite; other
//! instances (polynomials over a field, Gaussian integers) would slot in by
//! implementing the same trait.
//!
//! Conventions fixed here and relied on everywhere else:
//! * `div_rem` returns the *balanced* remainder for integers
//!   (`|r| <= |b|/2`), which keeps coefficient growth small during
//!   elimination;
//! * canonical associates are the non-negative representatives, so gcds,
//!   lcms and Smith diagonals come out non-negative;
//! * `gcd(0, 0) = 0` and `lcm(a, 0) = 0`.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A Euclidean domain with effective division, extended gcd and canonical
/// associates. `delta` is the Euclidean size function: `div_rem(a, b)` must
/// return `(q, r)` with `a = q*b + r` and either `r = 0` or
/// `delta(r) < delta(b)`.
pub trait EuclideanRing: Clone + Eq + fmt::Debug + fmt::Display + Sized {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;

    /// Euclidean size of a nonzero element (integers: absolute value).
    fn delta(&self) -> BigUint;

    /// Division with remainder: `self = q*rhs + r`, `r = 0` or
    /// `delta(r) < delta(rhs)`. Panics if `rhs` is zero.
    fn div_rem(&self, rhs: &Self) -> (Self, Self);

    /// The unit `u` such that `u * self` is the canonical associate
    /// (integers: the sign, so canonical means non-negative). For zero this
    /// is `1`.
    fn normalizing_unit(&self) -> Self;

    fn is_unit(&self) -> bool;

    /// Multiplicative inverse; only defined when `is_unit`.
    fn inv_unit(&self) -> Self;

    /// Canonical residue of `self` modulo a nonzero `m`
    /// (integers: in `{0, …, |m|-1}`).
    fn rem_canonical(&self, m: &Self) -> Self;

    /// Factor into canonical primes with multiplicities. Only some
    /// instances support this; the integer instance does.
    fn factor(&self) -> Result<Vec<(Self, u32)>> {
        Err(Error::UnsupportedRingOp("factor"))
    }

    /// Primality of the canonical associate, where the instance can decide it.
    fn is_prime(&self) -> Result<bool> {
        Err(Error::UnsupportedRingOp("is_prime"))
    }

    /// Lossless conversion to `i64` where the instance supports one; used by
    /// enumeration fast paths that are only meaningful for integers.
    fn to_i64(&self) -> Option<i64> {
        None
    }

    // ---- provided operations -------------------------------------------

    /// Canonical associate (`self` times its normalizing unit).
    fn canonical(&self) -> Self {
        self.mul(&self.normalizing_unit())
    }

    /// Does `self` divide `other`? Zero divides only zero.
    fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).1.is_zero()
    }

    /// Exact division; a nonzero remainder is an internal-consistency error,
    /// never a user error.
    fn div_exact(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::Internal(format!("exact division of {self} by zero")));
        }
        let (q, r) = self.div_rem(rhs);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::Internal(format!(
                "non-integral division: {self} / {rhs} leaves remainder {r}"
            )))
        }
    }

    /// Extended gcd: returns `(g, x, y)` with `g = x*self + y*other` and `g`
    /// the canonical gcd. `ext_gcd(0, 0) = (0, 1, 0)`.
    fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r2) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r2);
            let s2 = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s2);
            let t2 = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t2);
        }
        let u = r0.normalizing_unit();
        (r0.mul(&u), s0.mul(&u), t0.mul(&u))
    }

    /// Canonical gcd; `gcd(0, 0) = 0`.
    fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = std::mem::replace(&mut b, r);
        }
        a.canonical()
    }

    /// Canonical lcm; `lcm(a, 0) = 0`.
    fn lcm(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let g = self.gcd(other);
        let q = self.div_exact(&g).expect("gcd divides its arguments");
        q.mul(other).canonical()
    }

    /// Canonical gcd of a sequence; the empty sequence has gcd 0.
    fn gcd_of_list(items: &[Self]) -> Self {
        let mut g = Self::zero();
        for it in items {
            g = g.gcd(it);
            if g.is_unit() {
                break;
            }
        }
        g
    }

    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

/// Arbitrary-precision integer, the required instance of [`EuclideanRing`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Int(BigInt);

impl Int {
    pub fn new(v: BigInt) -> Self {
        Int(v)
    }

    pub fn as_bigint(&self) -> &BigInt {
        &self.0
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Self {
        Int(BigInt::from(v))
    }
}

impl From<BigInt> for Int {
    fn from(v: BigInt) -> Self {
        Int(v)
    }
}

impl FromStr for Int {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BigInt::from_str(s)
            .map(Int)
            .map_err(|e| Error::Parse(format!("bad integer {s:?}: {e}")))
    }
}

macro_rules! int_binop {
    ($trait:ident, $method:ident) => {
        impl std::ops::$trait for &Int {
            type Output = Int;
            fn $method(self, rhs: &Int) -> Int {
                Int((&self.0).$method(&rhs.0))
            }
        }
        impl std::ops::$trait for Int {
            type Output = Int;
            fn $method(self, rhs: Int) -> Int {
                Int(self.0.$method(rhs.0))
            }
        }
    };
}
int_binop!(Add, add);
int_binop!(Sub, sub);
int_binop!(Mul, mul);

impl std::ops::Neg for &Int {
    type Output = Int;
    fn neg(self) -> Int {
        Int(-&self.0)
    }
}

impl std::ops::Neg for Int {
    type Output = Int;
    fn neg(self) -> Int {
        Int(-self.0)
    }
}

impl EuclideanRing for Int {
    fn zero() -> Self {
        Int(BigInt::zero())
    }

    fn one() -> Self {
        Int(BigInt::from(1))
    }

    fn from_i64(v: i64) -> Self {
        Int(BigInt::from(v))
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        Int(&self.0 + &rhs.0)
    }

    fn sub(&self, rhs: &Self) -> Self {
        Int(&self.0 - &rhs.0)
    }

    fn neg(&self) -> Self {
        Int(-&self.0)
    }

    fn mul(&self, rhs: &Self) -> Self {
        Int(&self.0 * &rhs.0)
    }

    fn delta(&self) -> BigUint {
        self.0.magnitude().clone()
    }

    fn div_rem(&self, rhs: &Self) -> (Self, Self) {
        assert!(!rhs.0.is_zero(), "euclidean division by zero");
        // Truncated quotient first, then pull the remainder into the
        // balanced range |r| <= |b|/2 (ties keep the truncated remainder).
        let (mut q, mut r) = self.0.div_rem(&rhs.0);
        if r.magnitude() * 2u32 > *rhs.0.magnitude() {
            let same_sign = r.sign() == rhs.0.sign();
            r -= BigInt::from_biguint(r.sign(), rhs.0.magnitude().clone());
            q += if same_sign { 1 } else { -1 };
        }
        (Int(q), Int(r))
    }

    fn normalizing_unit(&self) -> Self {
        if self.0.is_negative() {
            Int(BigInt::from(-1))
        } else {
            Int(BigInt::from(1))
        }
    }

    fn is_unit(&self) -> bool {
        self.0.magnitude().is_one()
    }

    fn inv_unit(&self) -> Self {
        assert!(self.is_unit(), "inverse of a non-unit {self}");
        self.clone() // 1 and -1 are self-inverse
    }

    fn rem_canonical(&self, m: &Self) -> Self {
        assert!(!m.0.is_zero(), "residue modulo zero");
        Int(self.0.mod_floor(&m.0.abs()))
    }

    fn factor(&self) -> Result<Vec<(Self, u32)>> {
        assert!(!self.is_zero(), "factoring zero");
        Ok(trial_factor(self.0.magnitude().clone())
            .into_iter()
            .map(|(p, e)| (Int(BigInt::from(p)), e))
            .collect())
    }

    fn is_prime(&self) -> Result<bool> {
        Ok(magnitude_is_prime(self.0.magnitude()))
    }

    fn to_i64(&self) -> Option<i64> {
        self.0.to_i64()
    }
}

/// Trial division over the canonical (non-negative) value, fast path in u64.
fn trial_factor(n: BigUint) -> Vec<(BigUint, u32)> {
    let mut out = Vec::new();
    if n.is_one() {
        return out;
    }
    if let Some(mut m) = n.to_u64() {
        let mut push = |p: u64, e: u32| out.push((BigUint::from(p), e));
        for p in TrialDivisors::new() {
            if p.checked_mul(p).map_or(true, |sq| sq > m) {
                break;
            }
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            if e > 0 {
                push(p, e);
            }
        }
        if m > 1 {
            push(m, 1);
        }
        return out;
    }
    // Outside u64: the same loop over big integers. Desk-scale inputs only.
    let mut m = n;
    let one = BigUint::one();
    for p in TrialDivisors::new() {
        let bp = BigUint::from(p);
        if &bp * &bp > m {
            break;
        }
        let mut e = 0;
        while (&m % &bp).is_zero() {
            m /= &bp;
            e += 1;
        }
        if e > 0 {
            out.push((bp, e));
        }
    }
    if m > one {
        out.push((m, 1));
    }
    out
}

fn magnitude_is_prime(n: &BigUint) -> bool {
    if let Some(m) = n.to_u64() {
        if m < 2 {
            return false;
        }
        for p in TrialDivisors::new() {
            if p.checked_mul(p).map_or(true, |sq| sq > m) {
                return true;
            }
            if m % p == 0 {
                return false;
            }
        }
        return true;
    }
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    for p in TrialDivisors::new() {
        let bp = BigUint::from(p);
        if &bp * &bp > *n {
            return true;
        }
        if (n % &bp).is_zero() {
            return false;
        }
    }
    unreachable!("trial divisors are unbounded")
}

/// 2, 3, then the 6k±1 wheel.
struct TrialDivisors {
    next: u64,
    step: u64,
}

impl TrialDivisors {
    fn new() -> Self {
        TrialDivisors { next: 2, step: 0 }
    }
}

impl Iterator for TrialDivisors {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let cur = self.next;
        (self.next, self.step) = match cur {
            2 => (3, 0),
            3 => (5, 2),
            n => (n + self.step, 6 - self.step),
        };
        Some(cur)
    }
}

impl serde::Serialize for Int {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        // Numbers that fit i64 stay numbers; anything larger is emitted as a
        // decimal string so the JSON stays bit-exact for every consumer.
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> serde::Deserialize<'de> for Int {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl serde::de::Visitor<'_> for V {
            type Value = Int;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "an integer or a decimal string")
            }

            fn visit_i64<E: serde::de::Error>(self, v: i64) -> std::result::Result<Int, E> {
                Ok(Int::from(v))
            }

            fn visit_u64<E: serde::de::Error>(self, v: u64) -> std::result::Result<Int, E> {
                Ok(Int(BigInt::from(v)))
            }

            fn visit_str<E: serde::de::Error>(self, v: &str) -> std::result::Result<Int, E> {
                v.parse().map_err(|e| E::custom(format!("{e}")))
            }
        }
        d.deserialize_any(V)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn int(v: i64) -> Int {
        Int::from(v)
    }

    #[test]
    fn balanced_division_examples() {
        assert_eq!(int(7).div_rem(&int(3)), (int(2), int(1)));
        assert_eq!(int(-26).div_rem(&int(19)), (int(-1), int(-7)));
        assert_eq!(int(11).div_rem(&int(4)), (int(3), int(-1)));
        assert_eq!(int(-11).div_rem(&int(4)), (int(-3), int(1)));
        // division by a unit is exact
        for a in [-9, 0, 4, 123] {
            assert_eq!(int(a).div_rem(&int(1)), (int(a), int(0)));
            assert_eq!(int(a).div_rem(&int(-1)), (int(-a), int(0)));
        }
        // ties keep the truncated remainder
        assert_eq!(int(10).div_rem(&int(4)), (int(2), int(2)));
        assert_eq!(int(-10).div_rem(&int(4)), (int(-2), int(-2)));
    }

    #[test]
    fn ext_gcd_examples() {
        assert_eq!(int(4).ext_gcd(&int(0)), (int(4), int(1), int(0)));
        let (g, x, y) = int(0).ext_gcd(&int(0));
        assert!(g.is_zero());
        assert!(x.mul(&int(0)).add(&y.mul(&int(0))).is_zero());

        let (g, x, y) = int(19).ext_gcd(&int(12));
        assert_eq!(g, int(1));
        assert_eq!(x.mul(&int(19)).add(&y.mul(&int(12))), int(1));
    }

    #[test]
    fn gcd_lcm_examples() {
        assert_eq!(int(12).lcm(&int(4)), int(12));
        assert_eq!(int(5).lcm(&int(0)), int(0));
        assert_eq!(int(-4).gcd(&int(6)), int(2));
        assert_eq!(int(0).gcd(&int(0)), int(0));
        // gcd * lcm = product up to units, over the invariant chain of the
        // third worked example (d = 12)
        for q in [1i64, 4, 12] {
            let d = int(12);
            let q = int(q);
            assert_eq!(d.gcd(&q).mul(&d.lcm(&q)), d.mul(&q).canonical());
        }
    }

    #[test]
    fn gcd_of_list_examples() {
        let xs: Vec<Int> = [19, -31, 1, -11, -26].map(int).to_vec();
        assert_eq!(Int::gcd_of_list(&xs), int(1));
        assert_eq!(Int::gcd_of_list(&[]), int(0));
        assert_eq!(Int::gcd_of_list(&[int(0), int(0)]), int(0));
        assert_eq!(Int::gcd_of_list(&[int(6), int(-9), int(15)]), int(3));
    }

    #[test]
    fn units_and_canonical() {
        assert!(int(1).is_unit() && int(-1).is_unit());
        assert!(!int(0).is_unit() && !int(2).is_unit());
        assert_eq!(int(-5).canonical(), int(5));
        assert_eq!(int(-1).inv_unit(), int(-1));
        assert_eq!(int(0).normalizing_unit(), int(1));
    }

    #[test]
    fn canonical_residues() {
        assert_eq!(int(-26).rem_canonical(&int(19)), int(12));
        assert_eq!(int(5).rem_canonical(&int(3)), int(2));
        assert_eq!(int(-1).rem_canonical(&int(19)), int(18));
        assert_eq!(int(7).rem_canonical(&int(-3)), int(1));
    }

    #[test]
    fn factor_examples() {
        let pairs = |xs: &[(i64, u32)]| -> Vec<(Int, u32)> {
            xs.iter().map(|&(p, e)| (int(p), e)).collect()
        };
        assert_eq!(int(12).factor().unwrap(), pairs(&[(2, 2), (3, 1)]));
        assert_eq!(int(-12).factor().unwrap(), pairs(&[(2, 2), (3, 1)]));
        assert_eq!(int(817).factor().unwrap(), pairs(&[(19, 1), (43, 1)]));
        assert_eq!(int(19).factor().unwrap(), pairs(&[(19, 1)]));
        assert_eq!(int(1).factor().unwrap(), vec![]);
    }

    #[test]
    fn primality_examples() {
        for p in [2i64, 3, 19, 43, 999983] {
            assert!(int(p).is_prime().unwrap(), "{p} is prime");
            assert!(int(-p).is_prime().unwrap(), "canonical associate of {p}");
        }
        for c in [0i64, 1, 4, 817, 1000000] {
            assert!(!int(c).is_prime().unwrap(), "{c} is not prime");
        }
    }

    #[test]
    fn i64_round_trip() {
        assert_eq!(int(-42).to_i64(), Some(-42));
        let big: Int = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(big.to_i64(), None);
        assert_eq!(big.to_string(), "123456789012345678901234567890");
    }

    #[test]
    fn json_round_trip() {
        let small = int(-7);
        assert_eq!(serde_json::to_string(&small).unwrap(), "-7");
        let big: Int = "99999999999999999999999999".parse().unwrap();
        assert_eq!(
            serde_json::to_string(&big).unwrap(),
            "\"99999999999999999999999999\""
        );
        for v in [&small, &big] {
            let back: Int = serde_json::from_str(&serde_json::to_string(v).unwrap()).unwrap();
            assert_eq!(&back, v);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(256))]

        #[test]
        fn div_rem_is_balanced(a in -10000i64..10000, b in -10000i64..10000) {
            prop_assume!(b != 0);
            let (q, r) = int(a).div_rem(&int(b));
            prop_assert_eq!(q.mul(&int(b)).add(&r), int(a));
            // balanced: 2|r| <= |b|
            prop_assert!(r.delta() * 2u32 <= int(b).delta());
        }

        #[test]
        fn ext_gcd_contract(a in -10000i64..10000, b in -10000i64..10000) {
            let (g, x, y) = int(a).ext_gcd(&int(b));
            prop_assert_eq!(x.mul(&int(a)).add(&y.mul(&int(b))), g.clone());
            prop_assert_eq!(g.clone(), g.canonical());
            prop_assert!(g.divides(&int(a)) && g.divides(&int(b)));
            // cross-check against an independent gcd
            prop_assert_eq!(g, int(num_integer::Integer::gcd(&a, &b)));
        }

        #[test]
        fn gcd_lcm_product(a in -300i64..300, b in -300i64..300) {
            let g = int(a).gcd(&int(b));
            let l = int(a).lcm(&int(b));
            prop_assert_eq!(g.mul(&l), int(a).mul(&int(b)).canonical());
        }

        #[test]
        fn factor_reassembles(a in 1i64..200000) {
            let mut prod = Int::one();
            for (p, e) in int(a).factor().unwrap() {
                prop_assert!(p.is_prime().unwrap());
                prod = prod.mul(&p.pow(e));
            }
            prop_assert_eq!(prod, int(a));
        }
    }
}
