//! Exact coefficient arithmetic over the rationals or a prime field.

use alloc::string::{String, ToString};
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Coefficient field for every linear structure in this crate.
///
/// Arithmetic is exact: `Q` uses arbitrary-precision rationals, `Fp(p)`
/// reduces modulo a prime `p <= 2^31`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Field {
    Q,
    Fp(u64),
}

const MAX_MODULUS: u64 = 1 << 31;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl Field {
    /// Prime field constructor; rejects composite or oversized moduli.
    pub fn fp(p: u64) -> Result<Field, String> {
        if p > MAX_MODULUS {
            return Err("modulus exceeds 2^31".to_string());
        }
        if !is_prime(p) {
            let mut msg = String::from("modulus ");
            msg.push_str(&p.to_string());
            msg.push_str(" is not prime");
            return Err(msg);
        }
        Ok(Field::Fp(p))
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Q => Scalar::Rat(BigRational::zero()),
            Field::Fp(p) => Scalar::Mod { value: 0, modulus: *p },
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Q => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            Field::Fp(p) => {
                let m = *p as i64;
                Scalar::Mod { value: n.rem_euclid(m) as u64, modulus: *p }
            }
        }
    }

    /// `(-1)^exponent` as a scalar; accepts any integer exponent.
    pub fn sign(&self, exponent: i64) -> Scalar {
        if exponent.rem_euclid(2) == 0 {
            self.one()
        } else {
            self.from_i64(-1)
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Q => write!(f, "Q"),
            Field::Fp(p) => write!(f, "F{}", p),
        }
    }
}

/// An element of one of the supported fields.
///
/// Mixing scalars from different fields in arithmetic is a programming
/// error and panics.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Scalar {
    Rat(BigRational),
    Mod { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Q,
            Scalar::Mod { modulus, .. } => Field::Fp(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { value: a, modulus: p }, Scalar::Mod { value: b, modulus: q }) => {
                assert_eq!(p, q, "mixed prime fields");
                Scalar::Mod { value: (a + b) % p, modulus: *p }
            }
            _ => panic!("mixed coefficient fields"),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { value, modulus } => {
                Scalar::Mod { value: (modulus - value) % modulus, modulus: *modulus }
            }
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { value: a, modulus: p }, Scalar::Mod { value: b, modulus: q }) => {
                assert_eq!(p, q, "mixed prime fields");
                let prod = (*a as u128 * *b as u128) % (*p as u128);
                Scalar::Mod { value: prod as u64, modulus: *p }
            }
            _ => panic!("mixed coefficient fields"),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        match self {
            Scalar::Rat(a) => Some(Scalar::Rat(a.recip())),
            Scalar::Mod { value, modulus } => {
                let mut result: u128 = 1;
                let mut base = *value as u128;
                let p = *modulus as u128;
                let mut e = p - 2;
                while e > 0 {
                    if e & 1 == 1 {
                        result = result * base % p;
                    }
                    base = base * base % p;
                    e >>= 1;
                }
                Some(Scalar::Mod { value: result as u64, modulus: *modulus })
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod { value, .. } => write!(f, "{}", value),
        }
    }
}

impl Scalar {
    /// True for rational scalars strictly below zero; `Fp` scalars are
    /// never negative (their representatives lie in `[0, p)`).
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_negative(),
            Scalar::Mod { .. } => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_validation() {
        assert!(Field::fp(2).is_ok());
        assert!(Field::fp(101).is_ok());
        assert!(Field::fp(1).is_err());
        assert!(Field::fp(91).is_err());
        assert!(Field::fp((1 << 31) + 11).is_err());
    }

    #[test]
    fn mod_inverse() {
        let f = Field::fp(7).unwrap();
        let three = f.from_i64(3);
        let inv = three.inv().unwrap();
        assert!(three.mul(&inv).is_one());
    }
}
