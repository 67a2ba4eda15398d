//! Exact coefficient fields: the rationals and prime fields `𝔽_p`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// An exact field of coefficients.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// `num / den` in the field, or `None` when `den` vanishes there.
    fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self>;

    fn from_i64(n: i64) -> Self {
        Self::from_ratio(&BigInt::from(n), &BigInt::one()).expect("denominator one")
    }
}

impl Scalar for BigRational {
    fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self> {
        (!den.is_zero()).then(|| BigRational::new(num.clone(), den.clone()))
    }
}

/// The prime field `ℤ/Pℤ`. `P` must be prime; see [`is_prime`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn new(n: u64) -> Self {
        Fp(n % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp::<P>::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero element.
    pub fn inverse(self) -> Option<Self> {
        (self.0 != 0).then(|| self.pow(P - 2))
    }

    fn from_bigint(n: &BigInt) -> Self {
        let r = (n % BigInt::from(P) + BigInt::from(P)) % BigInt::from(P);
        Fp(r.to_u64().expect("reduced below P"))
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {P})", self.0)
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 + rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 * rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u64> Scalar for Fp<P> {
    fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self> {
        let d = Fp::<P>::from_bigint(den).inverse()?;
        Some(Fp::<P>::from_bigint(num) * d)
    }
}

/// Trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Renders a rational as `n` or `n/d`.
pub fn rational_text(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type F7 = Fp<7>;

    #[test]
    fn prime_field_arithmetic() {
        assert_eq!(F7::new(3) + F7::new(5), F7::new(1));
        assert_eq!(F7::new(3) - F7::new(5), F7::new(5));
        assert_eq!(F7::new(3) * F7::new(5), F7::new(1));
        assert_eq!(F7::new(3).inverse(), Some(F7::new(5)));
        assert_eq!(F7::zero().inverse(), None);
        assert_eq!(-F7::new(0), F7::new(0));
    }

    #[test]
    fn ratios() {
        let half = F7::from_ratio(&BigInt::from(1), &BigInt::from(2)).unwrap();
        assert_eq!(half * F7::new(2), F7::one());
        assert_eq!(F7::from_ratio(&BigInt::from(1), &BigInt::from(14)), None);
        assert_eq!(F7::from_i64(-1), F7::new(6));
        let q = BigRational::from_ratio(&BigInt::from(2), &BigInt::from(-4)).unwrap();
        assert_eq!(rational_text(&q), "-1/2");
        assert!(BigRational::from_ratio(&BigInt::from(1), &BigInt::from(0)).is_none());
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime(2_147_483_647));
    }

    #[test]
    fn field_two() {
        type F2 = Fp<2>;
        assert_eq!(F2::one() + F2::one(), F2::zero());
        assert_eq!(-F2::one(), F2::one());
    }
}
