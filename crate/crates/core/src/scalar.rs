//! Exact field scalars: arbitrary-precision rationals and prime fields.
//!
//! All theorem checks in this crate are exact equalities, so floating point is
//! banned throughout. A [`Scalar`] is either a reduced `BigRational` or a
//! canonical representative of `F_p` in `[0, p)`. Mixing scalars from
//! different fields is a programming error and panics.

use num::{BigInt, BigRational, One, Signed, Zero};
use std::fmt;
use thiserror::Error;

/// Which exact field the computation runs over.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum FieldSpec {
    /// The rational numbers.
    Rationals,
    /// The prime field `F_p`.
    Prime(u64),
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} exceeds the supported bound 2^31")]
    ModulusTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
}

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

impl FieldSpec {
    /// Checks that a prime-field modulus is prime and small enough for
    /// overflow-free `u64` arithmetic.
    pub fn validate(&self) -> Result<(), ScalarError> {
        match *self {
            FieldSpec::Rationals => Ok(()),
            FieldSpec::Prime(p) => {
                if p > (1 << 31) {
                    Err(ScalarError::ModulusTooLarge(p))
                } else if !is_prime(p) {
                    Err(ScalarError::NotPrime(p))
                } else {
                    Ok(())
                }
            }
        }
    }

    pub fn zero(&self) -> Scalar {
        match *self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::zero()),
            FieldSpec::Prime(p) => Scalar::Fp { value: 0, modulus: p },
        }
    }

    pub fn one(&self) -> Scalar {
        self.integer(1)
    }

    pub fn integer(&self, n: i64) -> Scalar {
        match *self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::Prime(p) => {
                let r = n.rem_euclid(p as i64) as u64;
                Scalar::Fp { value: r, modulus: p }
            }
        }
    }

    /// `num / den` in this field. In `F_p` the denominator is inverted.
    pub fn fraction(&self, num: i64, den: i64) -> Result<Scalar, ScalarError> {
        if den == 0 {
            return Err(ScalarError::DivisionByZero);
        }
        match *self {
            FieldSpec::Rationals => Ok(Scalar::Rat(BigRational::new(
                BigInt::from(num),
                BigInt::from(den),
            ))),
            FieldSpec::Prime(_) => {
                let d = self.integer(den);
                if d.is_zero() {
                    return Err(ScalarError::DivisionByZero);
                }
                Ok(self.integer(num).mul(&d.inv()))
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F {p}"),
        }
    }
}

/// An exact field element. Canonical form is unique per value: rationals are
/// kept reduced by `BigRational`, prime-field values lie in `[0, p)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Scalar {
    Rat(BigRational),
    Fp { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rat(_) => FieldSpec::Rationals,
            Scalar::Fp { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fp { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Fp { value, .. } => *value == 1,
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Fp { value: a, modulus: p }, Scalar::Fp { value: b, modulus: q }) => {
                assert_eq!(p, q, "scalar field mismatch");
                Scalar::Fp { value: (a + b) % p, modulus: *p }
            }
            _ => panic!("scalar field mismatch"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Fp { value, modulus } => Scalar::Fp {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Fp { value: a, modulus: p }, Scalar::Fp { value: b, modulus: q }) => {
                assert_eq!(p, q, "scalar field mismatch");
                Scalar::Fp { value: (a * b) % p, modulus: *p }
            }
            _ => panic!("scalar field mismatch"),
        }
    }

    /// Multiplicative inverse. Panics on zero (callers guard).
    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => {
                assert!(!a.is_zero(), "inverse of zero");
                Scalar::Rat(a.recip())
            }
            Scalar::Fp { value, modulus } => {
                assert!(*value != 0, "inverse of zero");
                // Fermat: value^(p-2) mod p.
                let mut base = *value;
                let mut exp = modulus - 2;
                let mut acc = 1u64;
                while exp > 0 {
                    if exp & 1 == 1 {
                        acc = acc * base % modulus;
                    }
                    base = base * base % modulus;
                    exp >>= 1;
                }
                Scalar::Fp { value: acc, modulus: *modulus }
            }
        }
    }

    pub fn div(&self, other: &Scalar) -> Scalar {
        self.mul(&other.inv())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp { value, .. } => write!(f, "{value}"),
        }
    }
}

/// True when the rational scalar is negative (used for pretty-printing signs).
pub fn is_negative(s: &Scalar) -> bool {
    match s {
        Scalar::Rat(r) => r.is_negative(),
        Scalar::Fp { .. } => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_arithmetic_is_exact() {
        let f = FieldSpec::Rationals;
        let third = f.fraction(1, 3).unwrap();
        let sum = third.add(&third).add(&third);
        assert!(sum.is_one());
        let half = f.fraction(1, 2).unwrap();
        assert_eq!(half.mul(&f.integer(2)), f.one());
    }

    #[test]
    fn prime_field_inverses() {
        let f = FieldSpec::Prime(7);
        f.validate().unwrap();
        for v in 1..7 {
            let x = f.integer(v);
            assert!(x.mul(&x.inv()).is_one());
        }
        assert_eq!(f.integer(-3), f.integer(4));
    }

    #[test]
    fn rejects_composite_modulus() {
        assert_eq!(FieldSpec::Prime(6).validate(), Err(ScalarError::NotPrime(6)));
        assert!(FieldSpec::Prime(2).validate().is_ok());
        assert!(FieldSpec::Prime(1).validate().is_err());
    }

    #[test]
    #[should_panic(expected = "field mismatch")]
    fn mixing_fields_panics() {
        let _ = FieldSpec::Rationals.one().add(&FieldSpec::Prime(5).one());
    }
}
