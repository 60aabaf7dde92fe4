use std::fmt;

use crate::error::{Error, Result};

/// The prime field F_p. Elements are represented by their least
/// nonnegative residue as `u32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeField {
    p: u32,
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

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if p >= 1 << 31 {
            return Err(Error::InvalidInput(format!("modulus {p} exceeds 2^31")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn characteristic_is_odd(self) -> bool {
        self.p != 2
    }

    #[inline]
    pub fn reduce(self, x: u64) -> u32 {
        (x % self.p as u64) as u32
    }

    #[inline]
    pub fn from_i64(self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        if s >= self.p as u64 {
            (s - self.p as u64) as u32
        } else {
            s as u32
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (a as u64 + self.p as u64 - b as u64) as u32
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self, a: u32) -> Option<u32> {
        if a.is_multiple_of(self.p) {
            None
        } else {
            Some(self.pow(a, self.p as u64 - 2))
        }
    }

    /// `a^exp` for a possibly negative exponent; `None` if `a = 0` and `exp < 0`.
    pub fn pow_signed(self, a: u32, exp: i64) -> Option<u32> {
        if exp >= 0 {
            Some(self.pow(a, exp as u64))
        } else {
            self.inv(a).map(|ai| self.pow(ai, exp.unsigned_abs()))
        }
    }

    /// The nonzero elements `1, 2, ..., p-1`.
    pub fn units(self) -> impl Iterator<Item = u32> {
        1..self.p
    }

    pub fn unit_count(self) -> usize {
        self.p as usize - 1
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites() {
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new(2_147_483_647).is_ok());
        assert!(PrimeField::new(u32::MAX).is_err());
    }

    #[test]
    fn inverses() {
        let f = PrimeField::new(13).unwrap();
        for a in f.units() {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
        assert_eq!(f.inv(0), None);
        assert_eq!(f.pow_signed(2, -1), Some(7));
    }
}
