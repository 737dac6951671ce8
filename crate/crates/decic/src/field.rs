//! Prime fields F_q with exact modular arithmetic.
//!
//! Everything downstream (verifiers, contraction, certificate extraction)
//! reduces to rank computations over these fields, so arithmetic here is
//! integer-exact; there is no floating point anywhere in the crate.

use crate::error::{Error, Result};

/// The field F_q for a prime q in 2..=251. Elements are `u8` values in
/// `0..q`, always kept reduced.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct PrimeField {
    q: u16,
}

fn is_prime(q: u16) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2u16;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(q: u16) -> Result<Self> {
        if !(2..=251).contains(&q) || !is_prime(q) {
            return Err(Error::InvalidModulus { q: q as u64 });
        }
        Ok(PrimeField { q })
    }

    pub fn q(self) -> u16 {
        self.q
    }

    /// Reduce an arbitrary integer into 0..q.
    pub fn reduce(self, v: i64) -> u8 {
        v.rem_euclid(self.q as i64) as u8
    }

    pub fn add(self, a: u8, b: u8) -> u8 {
        ((a as u32 + b as u32) % self.q as u32) as u8
    }

    pub fn sub(self, a: u8, b: u8) -> u8 {
        ((a as u32 + self.q as u32 - b as u32) % self.q as u32) as u8
    }

    pub fn neg(self, a: u8) -> u8 {
        if a == 0 {
            0
        } else {
            (self.q - a as u16) as u8
        }
    }

    pub fn mul(self, a: u8, b: u8) -> u8 {
        ((a as u32 * b as u32) % self.q as u32) as u8
    }

    /// Multiplicative inverse by Fermat's little theorem. Panics on zero;
    /// callers always check first (pivots are nonzero by construction).
    pub fn inv(self, a: u8) -> u8 {
        assert!(a != 0, "inverse of zero in F_{}", self.q);
        self.pow(a, self.q as u32 - 2)
    }

    pub fn pow(self, a: u8, mut e: u32) -> u8 {
        let q = self.q as u64;
        let mut base = a as u64 % q;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % q;
            }
            base = base * base % q;
            e >>= 1;
        }
        acc as u8
    }

    /// All field elements, 0..q.
    pub fn elements(self) -> impl Iterator<Item = u8> {
        0..self.q as u8
    }

    /// The nonzero elements, 1..q.
    pub fn nonzero_elements(self) -> impl Iterator<Item = u8> {
        1..self.q as u8
    }
}
