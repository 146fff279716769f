//! Reduced fractions over a Euclidean domain.
//!
//! Invariants maintained by every constructor and operation:
//! * the denominator is nonzero and canonical (integers: positive),
//! * numerator and denominator share no non-unit factor,
//! * zero is stored as `0/1`.
//!
//! With canonical reduced form, structural equality is value equality, so
//! `PartialEq` can be derived.

use std::fmt;

use crate::error::{Error, Result};
use crate::ring::EuclideanRing;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Fraction<R: EuclideanRing> {
    num: R,
    den: R,
}

impl<R: EuclideanRing> Fraction<R> {
    pub fn new(num: R, den: R) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Internal(format!("fraction {num}/{den} with zero denominator")));
        }
        let g = num.gcd(&den);
        let num = num.div_exact(&g)?;
        let den = den.div_exact(&g)?;
        let u = den.normalizing_unit();
        Ok(Fraction {
            num: num.mul(&u),
            den: den.mul(&u),
        })
    }

    pub fn from_ring(v: R) -> Self {
        Fraction { num: v, den: R::one() }
    }

    pub fn zero() -> Self {
        Self::from_ring(R::zero())
    }

    pub fn one() -> Self {
        Self::from_ring(R::one())
    }

    pub fn num(&self) -> &R {
        &self.num
    }

    pub fn den(&self) -> &R {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the reduced denominator is a unit, i.e. the value lies in R.
    pub fn is_integral(&self) -> bool {
        self.den.is_unit()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        let den = self.den.mul(&rhs.den);
        Self::new(num, den).expect("nonzero denominators multiply to nonzero")
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Fraction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
            .expect("nonzero denominators multiply to nonzero")
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::new(self.den.clone(), self.num.clone()).expect("numerator is nonzero"))
    }

    pub fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|i| self.mul(&i))
    }

    /// Scale by a ring element.
    pub fn mul_ring(&self, s: &R) -> Self {
        Self::new(self.num.mul(s), self.den.clone()).expect("denominator unchanged")
    }
}

impl<R: EuclideanRing> fmt::Display for Fraction<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_unit() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}
