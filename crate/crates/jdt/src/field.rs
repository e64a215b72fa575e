//! Exact coefficient fields: the rationals and prime fields F_p.
//!
//! The active field is a run-wide configuration value (`Field`), passed
//! alongside element data. Elements (`FieldElem`) are plain data; all
//! arithmetic goes through the `Field` so that the F_p modulus lives in
//! exactly one place.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Field {
    /// The rationals, arbitrary precision.
    Q,
    /// F_p for a prime p.
    Fp(u64),
}

#[derive(Clone, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub enum FieldElem {
    Q(BigRational),
    Fp(u64),
}

impl Field {
    pub fn zero(&self) -> FieldElem {
        match self {
            Field::Q => FieldElem::Q(BigRational::zero()),
            Field::Fp(_) => FieldElem::Fp(0),
        }
    }

    pub fn one(&self) -> FieldElem {
        match self {
            Field::Q => FieldElem::Q(BigRational::one()),
            Field::Fp(_) => FieldElem::Fp(1),
        }
    }

    pub fn from_i64(&self, n: i64) -> FieldElem {
        match self {
            Field::Q => FieldElem::Q(BigRational::from_integer(BigInt::from(n))),
            Field::Fp(p) => {
                let p = *p as i128;
                FieldElem::Fp(((n as i128).rem_euclid(p)) as u64)
            }
        }
    }

    /// n/d in lowest terms; panics if d == 0 or d not invertible mod p.
    pub fn from_ratio(&self, n: i64, d: i64) -> FieldElem {
        assert!(d != 0, "zero denominator");
        match self {
            Field::Q => FieldElem::Q(BigRational::new(BigInt::from(n), BigInt::from(d))),
            Field::Fp(_) => {
                let num = self.from_i64(n);
                let den = self.from_i64(d);
                let inv = self.inv(&den).expect("denominator not invertible mod p");
                self.mul(&num, &inv)
            }
        }
    }

    pub fn is_zero(&self, a: &FieldElem) -> bool {
        match a {
            FieldElem::Q(x) => x.is_zero(),
            FieldElem::Fp(x) => *x == 0,
        }
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        match (self, a, b) {
            (Field::Q, FieldElem::Q(x), FieldElem::Q(y)) => FieldElem::Q(x + y),
            (Field::Fp(p), FieldElem::Fp(x), FieldElem::Fp(y)) => {
                FieldElem::Fp(((*x as u128 + *y as u128) % *p as u128) as u64)
            }
            _ => panic!("field/element mismatch"),
        }
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        match (self, a) {
            (Field::Q, FieldElem::Q(x)) => FieldElem::Q(-x),
            (Field::Fp(p), FieldElem::Fp(x)) => FieldElem::Fp(if *x == 0 { 0 } else { p - x }),
            _ => panic!("field/element mismatch"),
        }
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        match (self, a, b) {
            (Field::Q, FieldElem::Q(x), FieldElem::Q(y)) => FieldElem::Q(x * y),
            (Field::Fp(p), FieldElem::Fp(x), FieldElem::Fp(y)) => {
                FieldElem::Fp(((*x as u128 * *y as u128) % *p as u128) as u64)
            }
            _ => panic!("field/element mismatch"),
        }
    }

    pub fn inv(&self, a: &FieldElem) -> Option<FieldElem> {
        if self.is_zero(a) {
            return None;
        }
        match (self, a) {
            (Field::Q, FieldElem::Q(x)) => Some(FieldElem::Q(x.recip())),
            (Field::Fp(p), FieldElem::Fp(x)) => Some(FieldElem::Fp(pow_mod(*x, p - 2, *p))),
            _ => panic!("field/element mismatch"),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Q => 0,
            Field::Fp(p) => *p,
        }
    }

    pub fn fmt_elem(&self, a: &FieldElem) -> String {
        match a {
            FieldElem::Q(x) => {
                if x.denom().is_one() {
                    x.numer().to_string()
                } else {
                    format!("{}/{}", x.numer(), x.denom())
                }
            }
            FieldElem::Fp(x) => x.to_string(),
        }
    }

    /// True when the element is a negative rational (used for sign-aware printing).
    pub fn is_negative(&self, a: &FieldElem) -> bool {
        match a {
            FieldElem::Q(x) => x.is_negative(),
            FieldElem::Fp(_) => false,
        }
    }

    pub fn abs(&self, a: &FieldElem) -> FieldElem {
        if self.is_negative(a) {
            self.neg(a)
        } else {
            a.clone()
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Q => write!(f, "Q"),
            Field::Fp(p) => write!(f, "F_{}", p),
        }
    }
}

fn pow_mod(b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc: u128 = 1;
    let mut base = b as u128 % p as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u128;
        }
        base = base * base % p as u128;
        e >>= 1;
    }
    acc as u64
}

/// Trial-division primality, adequate for CLI validation of `--char p`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).is_some_and(|sq| sq <= n) {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}
