//! Prime fields F_p and primitive roots of unity.
//!
//! A `Field` is a copyable handle carrying the modulus; scalars are plain
//! u64 residues in `[0, p)`. All arithmetic goes through the handle, which
//! keeps matrices free of per-entry modulus bookkeeping.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Residue in `[0, p)`. The owning `Field` defines the arithmetic.
pub type Scalar = u64;

#[derive(Debug, Clone, Copy)]
pub struct Field {
    p: u64,
    /// floor(2^64 / p), for Barrett reduction in the elimination kernels.
    magic: u64,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
    }
}

impl Eq for Field {}

impl std::hash::Hash for Field {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.p.hash(state);
    }
}

pub fn is_prime(n: u64) -> bool {
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

/// Construct `F_p`, rejecting composite moduli.
pub fn make_field(p: u64) -> Result<Field> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(Field {
        p,
        magic: u64::MAX / p,
    })
}

impl Field {
    pub fn p(&self) -> u64 {
        self.p
    }

    /// Barrett reduction: one widening multiply and at most two corrections.
    #[inline]
    pub fn reduce(&self, v: u64) -> Scalar {
        let q = ((v as u128 * self.magic as u128) >> 64) as u64;
        let mut r = v.wrapping_sub(q.wrapping_mul(self.p));
        while r >= self.p {
            r -= self.p;
        }
        r
    }

    /// Lift a signed integer into `[0, p)`.
    pub fn from_i64(&self, v: i64) -> Scalar {
        let m = self.p as i64;
        (((v % m) + m) % m) as u64
    }

    #[inline]
    pub fn add(&self, a: Scalar, b: Scalar) -> Scalar {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: Scalar, b: Scalar) -> Scalar {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: Scalar) -> Scalar {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: Scalar, b: Scalar) -> Scalar {
        // p stays well below 2^32 at desk scale, so the product fits u64.
        debug_assert!(self.p < (1 << 32));
        self.reduce(a * b)
    }

    pub fn pow(&self, mut base: Scalar, mut exp: u64) -> Scalar {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero scalar.
    pub fn inv(&self, a: Scalar) -> Scalar {
        assert!(a % self.p != 0, "inverse of zero");
        self.pow(a, self.p - 2)
    }

    /// Multiplicative order of a nonzero scalar.
    pub fn order(&self, a: Scalar) -> u64 {
        assert!(a % self.p != 0);
        let mut x = a % self.p;
        let mut n = 1;
        while x != 1 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    /// Smallest scalar of exact multiplicative order `b`.
    ///
    /// Requires `b | p - 1`; otherwise no such root exists.
    pub fn primitive_root_of_unity(&self, b: u64) -> Result<Scalar> {
        if b == 0 || (self.p - 1) % b != 0 {
            return Err(Error::NoSuchRoot { p: self.p, b });
        }
        for q in 1..self.p {
            if self.pow(q, b) == 1 && self.order(q) == b {
                return Ok(q);
            }
        }
        Err(Error::NoSuchRoot { p: self.p, b })
    }
}

/// Smallest prime `p >= 101` with `p ≡ 1 (mod a)`, so a primitive `a`th root
/// of unity exists and `char k` does not divide `a`. Large enough that the
/// trace-form radical criterion applies to every endomorphism algebra met at
/// desk scale.
pub fn default_prime(a: u64) -> u64 {
    let mut p = 101;
    loop {
        if is_prime(p) && (p - 1) % a == 0 && p % a != 0 {
            return p;
        }
        p += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn field_construction() {
        assert!(make_field(5).is_ok());
        assert!(make_field(7).is_ok());
        assert!(matches!(make_field(6), Err(Error::NotPrime(6))));
        assert!(matches!(make_field(1), Err(Error::NotPrime(1))));
    }

    #[test]
    fn primitive_roots() {
        let f5 = make_field(5).unwrap();
        assert_eq!(f5.primitive_root_of_unity(2).unwrap(), 4);
        let f7 = make_field(7).unwrap();
        assert_eq!(f7.primitive_root_of_unity(3).unwrap(), 2);
        assert!(matches!(
            f5.primitive_root_of_unity(3),
            Err(Error::NoSuchRoot { p: 5, b: 3 })
        ));
    }

    #[test]
    fn root_powers() {
        let f = make_field(103).unwrap();
        let q = f.primitive_root_of_unity(3).unwrap();
        assert_eq!(f.pow(q, 3), 1);
        assert_ne!(f.pow(q, 1), 1);
        assert_ne!(f.pow(q, 2), 1);
    }

    #[test]
    fn default_primes() {
        assert_eq!(default_prime(2), 101);
        assert_eq!(default_prime(3), 103);
    }

    proptest! {
        #[test]
        fn inverse_law(a in 1u64..101) {
            let f = make_field(101).unwrap();
            prop_assert_eq!(f.mul(a, f.inv(a)), 1);
        }

        #[test]
        fn distributive(a in 0u64..101, b in 0u64..101, c in 0u64..101) {
            let f = make_field(101).unwrap();
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        }
    }
}
