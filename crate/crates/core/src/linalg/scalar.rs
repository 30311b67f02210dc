//! Ground fields: exact rationals and small prime fields.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

/// Field element usable by every exact computation in the crate.
pub trait Scalar:
    Num + Neg<Output = Self> + Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    fn add_ref(&self, o: &Self) -> Self;
    fn sub_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    fn div_ref(&self, o: &Self) -> Self;
    /// Size used to rank pivot candidates; smaller is cheaper.
    fn bit_size(&self) -> u64;
    /// Image of a rational number, `None` when its denominator is not invertible.
    fn from_rational(q: &BigRational) -> Option<Self>;
    fn from_i64(v: i64) -> Self;
    fn characteristic() -> u64;
}

impl Scalar for BigRational {
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn div_ref(&self, o: &Self) -> Self {
        self / o
    }
    fn bit_size(&self) -> u64 {
        self.numer().bits() + self.denom().bits()
    }
    fn from_rational(q: &BigRational) -> Option<Self> {
        Some(q.clone())
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn characteristic() -> u64 {
        0
    }
}

/// Residues modulo the prime `P`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PrimeField<const P: u64>(u64);

impl<const P: u64> PrimeField<P> {
    pub fn new(v: i64) -> Self {
        PrimeField(v.rem_euclid(P as i64) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self.0 as u128;
        let mut acc: u128 = 1;
        let p = P as u128;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        PrimeField(acc as u64)
    }

    pub fn inverse(self) -> Self {
        assert!(self.0 != 0, "inverse of zero in F_{}", P);
        self.pow(P - 2)
    }
}

impl<const P: u64> fmt::Debug for PrimeField<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> fmt::Display for PrimeField<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for PrimeField<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        PrimeField(((self.0 as u128 + o.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Sub for PrimeField<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        PrimeField(((self.0 as u128 + P as u128 - o.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Mul for PrimeField<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        PrimeField(((self.0 as u128 * o.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Div for PrimeField<P> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Self) -> Self {
        self * o.inverse()
    }
}

// Every nonzero element is a unit, so the remainder is always zero.
impl<const P: u64> Rem for PrimeField<P> {
    type Output = Self;
    fn rem(self, _o: Self) -> Self {
        PrimeField(0)
    }
}

impl<const P: u64> Neg for PrimeField<P> {
    type Output = Self;
    fn neg(self) -> Self {
        PrimeField((P - self.0) % P)
    }
}

impl<const P: u64> Zero for PrimeField<P> {
    fn zero() -> Self {
        PrimeField(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for PrimeField<P> {
    fn one() -> Self {
        PrimeField(1 % P)
    }
}

impl<const P: u64> Num for PrimeField<P> {
    type FromStrRadixErr = std::num::ParseIntError;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        i64::from_str_radix(s, radix).map(PrimeField::new)
    }
}

impl<const P: u64> Scalar for PrimeField<P> {
    fn add_ref(&self, o: &Self) -> Self {
        *self + *o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        *self - *o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        *self * *o
    }
    fn div_ref(&self, o: &Self) -> Self {
        *self / *o
    }
    fn bit_size(&self) -> u64 {
        64 - self.0.leading_zeros() as u64
    }
    fn from_rational(q: &BigRational) -> Option<Self> {
        let p = BigInt::from(P);
        let n = (q.numer() % &p + &p) % &p;
        let d = (q.denom().abs() % &p + &p) % &p;
        let d = d.to_u64()?;
        if d == 0 {
            return None;
        }
        let n = PrimeField::<P>(n.to_u64()?);
        let sign = if q.denom().is_negative() { -PrimeField::one() } else { PrimeField::one() };
        Some(n / PrimeField(d) * sign)
    }
    fn from_i64(v: i64) -> Self {
        PrimeField::new(v)
    }
    fn characteristic() -> u64 {
        P
    }
}

/// Parses an exact coefficient such as `"-3/4"` or `"2"`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() || s.contains('.') || s.contains('e') || s.contains('E') {
        return None;
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}
