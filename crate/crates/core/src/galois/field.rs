use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::GaloisError;

/// A finite field: either a prime field GF(p) or a binary extension GF(2^m)
/// given by a monic irreducible reduction polynomial.
///
/// Elements are stored as `u32`. In GF(2^m) bit `i` holds the coefficient of
/// `x^i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    characteristic: u32,
    degree: u32,
    /// Full reduction polynomial (including the `x^m` bit) for m > 1.
    modulus: u64,
}

impl FieldSpec {
    /// GF(p) for a prime `p < 2^31`.
    pub fn prime(p: u32) -> Result<Self, GaloisError> {
        if !(2..(1 << 31)).contains(&p) || !is_prime(p) {
            return Err(GaloisError::NotPrime(p));
        }
        Ok(Self {
            characteristic: p,
            degree: 1,
            modulus: 0,
        })
    }

    /// GF(2^m) with reduction polynomial `poly` written as a bit mask
    /// including the leading `x^m` term, e.g. `0b100101` for x^5 + x^2 + 1.
    pub fn binary(m: u32, poly: u64) -> Result<Self, GaloisError> {
        if m == 0 || m > 31 {
            return Err(GaloisError::BadDegree(m));
        }
        if m == 1 {
            return Self::prime(2);
        }
        if poly >> m != 1 || !is_irreducible_gf2(poly, m) {
            return Err(GaloisError::Reducible { degree: m, poly });
        }
        Ok(Self {
            characteristic: 2,
            degree: m,
            modulus: poly,
        })
    }

    /// GF(257), the default field of the codec.
    pub fn default_prime() -> Self {
        Self::prime(257).expect("257 is prime")
    }

    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn reduction_polynomial(&self) -> Option<u64> {
        (self.degree > 1).then_some(self.modulus)
    }

    pub fn order(&self) -> u64 {
        (self.characteristic as u64).pow(self.degree)
    }

    fn is_binary_extension(&self) -> bool {
        self.degree > 1
    }

    pub fn contains(&self, v: u32) -> bool {
        (v as u64) < self.order()
    }

    pub fn element(&self, v: u32) -> Result<FieldElement, GaloisError> {
        if !self.contains(v) {
            return Err(GaloisError::NotCanonical {
                value: v,
                order: self.order(),
            });
        }
        Ok(FieldElement {
            field: *self,
            value: v,
        })
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            field: *self,
            value: 0,
        }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement {
            field: *self,
            value: 1,
        }
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.characteristic == 2 {
            a ^ b
        } else {
            let s = a as u64 + b as u64;
            (s % self.characteristic as u64) as u32
        }
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.characteristic == 2 || a == 0 {
            a
        } else {
            self.characteristic - a
        }
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if self.is_binary_extension() {
            let mut acc: u64 = 0;
            let mut x = a as u64;
            let mut y = b as u64;
            while y != 0 {
                if y & 1 == 1 {
                    acc ^= x;
                }
                y >>= 1;
                x <<= 1;
            }
            self.reduce(acc)
        } else {
            ((a as u64 * b as u64) % self.characteristic as u64) as u32
        }
    }

    fn reduce(&self, mut v: u64) -> u32 {
        let m = self.degree;
        for bit in (m..64).rev() {
            if v >> bit & 1 == 1 {
                v ^= self.modulus << (bit - m);
            }
        }
        v as u32
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u32) -> Result<u32, GaloisError> {
        if a == 0 {
            return Err(GaloisError::DivisionByZero);
        }
        // a^(q-2) = a^-1 in a field of order q
        Ok(self.pow(a, self.order() - 2))
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32, GaloisError> {
        Ok(self.mul(a, self.inv(b)?))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 1 {
            write!(f, "GF({})", self.characteristic)
        } else {
            write!(f, "GF(2^{}) mod {:#b}", self.degree, self.modulus)
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p as u64 {
        if (p as u64).is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn gf2_poly_mod(mut a: u64, b: u64) -> u64 {
    let db = 63 - b.leading_zeros();
    while a != 0 && 63 - a.leading_zeros() >= db {
        let shift = (63 - a.leading_zeros()) - db;
        a ^= b << shift;
    }
    a
}

/// Trial division by every polynomial of degree 1..=m/2.
fn is_irreducible_gf2(poly: u64, m: u32) -> bool {
    for d in 1..=m / 2 {
        for divisor in (1u64 << d)..(1u64 << (d + 1)) {
            if gf2_poly_mod(poly, divisor) == 0 {
                return false;
            }
        }
    }
    true
}

/// A field element tagged with its field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: FieldSpec,
    value: u32,
}

impl FieldElement {
    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Result<Self, GaloisError> {
        Ok(Self {
            field: self.field,
            value: self.field.inv(self.value)?,
        })
    }

    pub fn checked_div(self, rhs: Self) -> Result<Self, GaloisError> {
        same_field(&self, &rhs);
        Ok(Self {
            field: self.field,
            value: self.field.div(self.value, rhs.value)?,
        })
    }

    pub fn pow(self, e: u64) -> Self {
        Self {
            field: self.field,
            value: self.field.pow(self.value, e),
        }
    }
}

fn same_field(a: &FieldElement, b: &FieldElement) {
    assert_eq!(a.field, b.field, "operands from different fields");
}

impl Add for FieldElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        same_field(&self, &rhs);
        Self {
            field: self.field,
            value: self.field.add(self.value, rhs.value),
        }
    }
}

impl Sub for FieldElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        same_field(&self, &rhs);
        Self {
            field: self.field,
            value: self.field.sub(self.value, rhs.value),
        }
    }
}

impl Mul for FieldElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        same_field(&self, &rhs);
        Self {
            field: self.field,
            value: self.field.mul(self.value, rhs.value),
        }
    }
}

impl Neg for FieldElement {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            field: self.field,
            value: self.field.neg(self.value),
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
