//! Exact rational and prime-field arithmetic with square-class utilities.
//!
//! Everything here is integer-exact: rationals are arbitrary-precision,
//! prime fields are represented by reduced residues, and square classes
//! of rationals are factored into sign and square-free support.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision rational number, always kept in lowest terms
/// with a positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("{0} is not an odd prime")]
    BadPrime(u64),
}

/// Deterministic primality test by trial division.
///
/// Divisors are checked up to 10^6, which decides every candidate below
/// 10^12 exactly; the library's inputs are desk-scale primes far below that.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d: u64 = 3;
    while d <= 1_000_000 && d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn is_odd_prime(n: u64) -> bool {
    n != 2 && is_prime(n)
}

fn check_odd_prime(p: u64) -> Result<(), ArithError> {
    if is_odd_prime(p) {
        Ok(())
    } else {
        Err(ArithError::BadPrime(p))
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc: u64 = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo the prime `p`, via Fermat.
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// Element of the residue field 𝔽_p for an odd prime p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpElement {
    p: u64,
    value: u64,
}

impl FpElement {
    pub fn new(p: u64, value: i64) -> Result<Self, ArithError> {
        check_odd_prime(p)?;
        let v = value.rem_euclid(p as i64) as u64;
        Ok(FpElement { p, value: v })
    }

    /// Reduce a p-integral numerator/denominator pair mod p.
    pub fn from_rational(r: &Rational, p: u64) -> Result<Self, ArithError> {
        check_odd_prime(p)?;
        let pb = BigInt::from(p);
        let num = r.numer().mod_floor_u64(&pb);
        let den = r.denom().mod_floor_u64(&pb);
        if den == 0 {
            return Err(ArithError::ZeroInput);
        }
        Ok(FpElement {
            p,
            value: mul_mod(num, inv_mod(den, p), p),
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    /// Legendre symbol of this element: +1 square, −1 nonsquare, 0 zero.
    pub fn chi(&self) -> i8 {
        legendre_symbol(&BigInt::from(self.value), self.p).expect("p validated at construction")
    }
}

trait ModFloorU64 {
    fn mod_floor_u64(&self, p: &BigInt) -> u64;
}

impl ModFloorU64 for BigInt {
    fn mod_floor_u64(&self, p: &BigInt) -> u64 {
        let mut r = self % p;
        if r.sign() == num_bigint::Sign::Minus {
            r += p;
        }
        r.to_u64().expect("residue fits in u64")
    }
}

/// Square class of a nonzero rational: a sign together with the
/// square-free part's prime support, e.g. −50 ↦ (−, {2}).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareClassQ {
    pub sign: i8,
    pub primes: Vec<u64>,
}

impl SquareClassQ {
    pub fn one() -> Self {
        SquareClassQ {
            sign: 1,
            primes: Vec::new(),
        }
    }

    /// Smallest positive representative of the class (product of the support).
    pub fn representative(&self) -> Rational {
        let mut n = BigInt::one();
        for &p in &self.primes {
            n *= BigInt::from(p);
        }
        if self.sign < 0 {
            n = -n;
        }
        Rational::from(n)
    }
}

/// Primes dividing |n| with odd exponent, in increasing order.
fn odd_exponent_primes(n: &BigInt) -> Vec<u64> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() || n.is_one() {
        return out;
    }
    if let Some(mut m) = n.to_u64() {
        let mut d: u64 = 2;
        while (d as u128) * (d as u128) <= m as u128 {
            if m % d == 0 {
                let mut e = 0u32;
                while m % d == 0 {
                    m /= d;
                    e += 1;
                }
                if e % 2 == 1 {
                    out.push(d);
                }
            }
            d += if d == 2 { 1 } else { 2 };
        }
        if m > 1 {
            out.push(m);
        }
        return out;
    }
    // Rare big path; inputs are desk-scale so this terminates quickly.
    let mut d: u64 = 2;
    loop {
        let db = BigInt::from(d);
        if (&db * &db) > n {
            break;
        }
        let mut e = 0u32;
        while (&n % &db).is_zero() {
            n /= &db;
            e += 1;
        }
        if e % 2 == 1 {
            out.push(d);
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if !n.is_one() {
        out.push(n.to_u64().expect("square-free residual fits in u64"));
    }
    out
}

/// Square class of a nonzero rational.
///
/// a/b and a·b differ by the square b², so the class is read off from the
/// odd-exponent primes of numerator and denominator combined.
pub fn squarefree_part(r: &Rational) -> Result<SquareClassQ, ArithError> {
    if r.is_zero() {
        return Err(ArithError::ZeroInput);
    }
    let mut primes = odd_exponent_primes(r.numer());
    for q in odd_exponent_primes(r.denom()) {
        match primes.binary_search(&q) {
            Ok(i) => {
                primes.remove(i);
            }
            Err(i) => primes.insert(i, q),
        }
    }
    Ok(SquareClassQ {
        sign: if r.is_negative() { -1 } else { 1 },
        primes,
    })
}

/// Legendre symbol (a|p) by Euler's criterion.
pub fn legendre_symbol(a: &BigInt, p: u64) -> Result<i8, ArithError> {
    check_odd_prime(p)?;
    let r = a.mod_floor_u64(&BigInt::from(p));
    if r == 0 {
        return Ok(0);
    }
    let e = pow_mod(r, (p - 1) / 2, p);
    Ok(if e == 1 { 1 } else { -1 })
}

/// Split r = p^j · u with u a p-adic unit.
pub fn padic_split(r: &Rational, p: u64) -> Result<(i64, Rational), ArithError> {
    if r.is_zero() {
        return Err(ArithError::ZeroInput);
    }
    if !is_prime(p) {
        return Err(ArithError::BadPrime(p));
    }
    let pb = BigInt::from(p);
    let mut j: i64 = 0;
    let mut num = r.numer().clone();
    let mut den = r.denom().clone();
    while (&num % &pb).is_zero() {
        num /= &pb;
        j += 1;
    }
    while (&den % &pb).is_zero() {
        den /= &pb;
        j -= 1;
    }
    Ok((j, Rational::new(num, den)))
}
