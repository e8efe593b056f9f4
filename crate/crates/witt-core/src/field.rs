//! Field contexts for exact linear algebra.
//!
//! A [`Field`] is a small runtime object carrying the arithmetic of its
//! scalars. This lets 𝔽_p for a runtime modulus share one implementation
//! of diagonalization with ℚ, with concrete aliases exported at the crate
//! root for the two cases the library actually uses.

use crate::arith::{inv_mod, is_odd_prime, ArithError, Rational};
use num_traits::{One, Signed, Zero};
use std::fmt::Debug;

pub trait Field: Clone {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn embed(&self, n: i64) -> Self::Elem;
}

/// The rational numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RationalField;

impl Field for RationalField {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }

    fn one(&self) -> Rational {
        Rational::one()
    }

    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }

    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }

    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }

    fn neg(&self, a: &Rational) -> Rational {
        -a
    }

    fn inv(&self, a: &Rational) -> Option<Rational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }

    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }

    fn embed(&self, n: i64) -> Rational {
        Rational::from_integer(n.into())
    }
}

/// Sign of a rational, used by signature counting.
pub fn rational_sign(a: &Rational) -> i8 {
    if a.is_zero() {
        0
    } else if a.is_positive() {
        1
    } else {
        -1
    }
}

/// The field 𝔽_p for a runtime odd prime p, elements as reduced residues.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, ArithError> {
        if is_odd_prime(p) {
            Ok(PrimeField { p })
        } else {
            Err(ArithError::BadPrime(p))
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Least positive quadratic nonresidue mod p.
    pub fn least_nonsquare(&self) -> u64 {
        (2..self.p)
            .find(|&a| crate::arith::pow_mod(a, (self.p - 1) / 2, self.p) != 1)
            .expect("every odd prime has a nonresidue below p")
    }

    /// Legendre character of a residue: +1, −1, or 0.
    pub fn chi(&self, a: u64) -> i8 {
        let a = a % self.p;
        if a == 0 {
            return 0;
        }
        if crate::arith::pow_mod(a, (self.p - 1) / 2, self.p) == 1 {
            1
        } else {
            -1
        }
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b % self.p) % self.p
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        crate::arith::mul_mod(*a, *b, self.p)
    }

    fn neg(&self, a: &u64) -> u64 {
        (self.p - a % self.p) % self.p
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        if a.is_multiple_of(self.p) {
            None
        } else {
            Some(inv_mod(*a, self.p))
        }
    }

    fn is_zero(&self, a: &u64) -> bool {
        a.is_multiple_of(self.p)
    }

    fn embed(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
}
