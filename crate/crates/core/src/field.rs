//! Exact scalars: the rationals and prime fields.
//!
//! A [`Scalar`] carries enough information to do arithmetic on its own; a
//! [`Field`] is needed only to create constants (zero, one, integers).
//! Rationals use an `i64` fast path and fall back to big integers when a
//! numerator or denominator leaves that range. A value that fits the fast path
//! is always stored there, so structural equality is value equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The coefficient field of an algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rationals,
    Prime(u64),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    /// Reduced fraction with positive denominator.
    Small(i64, i64),
    Big(BigRational),
    /// Residue in `[0, p)` together with `p`.
    Mod(u64, u64),
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// Validated constructor for a prime field. Primes must be below 2^32 so
    /// products of residues fit in a `u64`.
    pub fn prime(p: u64) -> Result<Field> {
        if p >= (1 << 32) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Small(n, 1),
            Field::Prime(p) => Scalar::Mod(n.rem_euclid(*p as i64) as u64, *p),
        }
    }

    /// Embeds a rational number; fails in characteristic p when `p` divides the
    /// denominator.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        match self {
            Field::Rationals => Ok(Scalar::from_big(q.clone())),
            Field::Prime(p) => {
                let pb = BigInt::from(*p);
                let num = (q.numer() % &pb + &pb) % &pb;
                let den = (q.denom() % &pb + &pb) % &pb;
                let num = num.to_u64().unwrap();
                let den = den.to_u64().unwrap();
                if den == 0 {
                    return Err(Error::Coefficient(format!(
                        "denominator of {q} vanishes modulo {p}"
                    )));
                }
                Ok(Scalar::Mod(num * pow_mod(den, p - 2, *p) % p, *p))
            }
        }
    }

    /// Parses an integer or a fraction `a/b`.
    pub fn parse(&self, text: &str) -> Result<Scalar> {
        let bad = || Error::Coefficient(format!("cannot parse coefficient {text:?}"));
        let text = text.trim();
        let (num, den) = match text.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (text, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        self.from_rational(&BigRational::new(num, den))
    }

    /// A random element used by Monte Carlo tests. Over the rationals the
    /// sample is a uniformly chosen integer of absolute value below 2^20.
    pub fn random<R: Rng>(&self, rng: &mut R) -> Scalar {
        match self {
            Field::Rationals => self.from_i64(rng.gen_range(-(1 << 20)..(1 << 20))),
            Field::Prime(p) => Scalar::Mod(rng.gen_range(0..*p), *p),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

impl Scalar {
    fn from_big(q: BigRational) -> Scalar {
        match (q.numer().to_i64(), q.denom().to_i64()) {
            (Some(n), Some(d)) => Scalar::Small(n, d),
            _ => Scalar::Big(q),
        }
    }

    fn from_i128(num: i128, den: i128) -> Scalar {
        debug_assert!(den != 0);
        let (mut num, mut den) = if den < 0 { (-num, -den) } else { (num, den) };
        let g = gcd_u128(num.unsigned_abs(), den.unsigned_abs()) as i128;
        if g > 1 {
            num /= g;
            den /= g;
        }
        match (i64::try_from(num), i64::try_from(den)) {
            (Ok(n), Ok(d)) => Scalar::Small(n, d),
            _ => Scalar::Big(BigRational::new(BigInt::from(num), BigInt::from(den))),
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Scalar::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Scalar::Big(q) => q.clone(),
            Scalar::Mod(..) => panic!("prime-field element used as a rational"),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Small(n, _) => *n == 0,
            Scalar::Big(q) => q.is_zero(),
            Scalar::Mod(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Small(n, d) => *n == 1 && *d == 1,
            Scalar::Big(q) => q.is_one(),
            Scalar::Mod(v, _) => *v == 1,
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Mod(_, p) => Field::Prime(*p),
            _ => Field::Rationals,
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Small(n, d) => Scalar::from_i128(*d as i128, *n as i128),
            Scalar::Big(q) => Scalar::from_big(q.recip()),
            Scalar::Mod(v, p) => Scalar::Mod(pow_mod(*v, p - 2, *p), *p),
        })
    }

    fn add_ref(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Mod(a, p), Scalar::Mod(b, q)) => {
                debug_assert_eq!(p, q);
                Scalar::Mod((a + b) % p, *p)
            }
            (Scalar::Small(a, b), Scalar::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    if let Some(s) = a.checked_add(*c) {
                        return Scalar::Small(s, 1);
                    }
                }
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Scalar::from_i128(a * d + b * c, b * d)
            }
            _ => Scalar::from_big(self.to_big() + other.to_big()),
        }
    }

    fn mul_ref(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Mod(a, p), Scalar::Mod(b, q)) => {
                debug_assert_eq!(p, q);
                Scalar::Mod(a * b % p, *p)
            }
            (Scalar::Small(a, b), Scalar::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    if let Some(s) = a.checked_mul(*c) {
                        return Scalar::Small(s, 1);
                    }
                }
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Scalar::from_i128(a * c, b * d)
            }
            _ => Scalar::from_big(self.to_big() * other.to_big()),
        }
    }

    fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Small(n, d) => match n.checked_neg() {
                Some(m) => Scalar::Small(m, *d),
                None => Scalar::from_big(-self.to_big()),
            },
            Scalar::Big(q) => Scalar::from_big(-q),
            Scalar::Mod(v, p) => Scalar::Mod((p - v) % p, *p),
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.add_ref(rhs)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.add_ref(&rhs.neg_ref())
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.mul_ref(rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        self.add_ref(&rhs)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        self.mul_ref(&rhs)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Small(n, 1) => write!(f, "{n}"),
            Scalar::Small(n, d) => write!(f, "{n}/{d}"),
            Scalar::Big(q) if q.denom().is_one() => write!(f, "{}", q.numer()),
            Scalar::Big(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Scalar::Mod(v, _) => write!(f, "{v}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Scalar {
    /// Sign of a rational value; prime-field elements report `0` or `1`.
    pub fn signum(&self) -> i32 {
        match self {
            Scalar::Small(n, _) => n.signum() as i32,
            Scalar::Big(q) => {
                if q.is_positive() {
                    1
                } else if q.is_negative() {
                    -1
                } else {
                    0
                }
            }
            Scalar::Mod(v, _) => (*v != 0) as i32,
        }
    }
}
