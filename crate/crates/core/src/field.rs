//! Prime fields GF(p) with word-sized residues.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Largest supported modulus, 2^31 - 1.
pub const MAX_MODULUS: u64 = (1 << 31) - 1;

/// A prime modulus together with precomputed reduction constants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct PrimeModulus {
    p: u32,
    // floor(2^64 / p), used for Barrett reduction of 64-bit accumulators.
    #[serde(skip)]
    barrett: u64,
}

impl PrimeModulus {
    /// Validates `p` with a deterministic primality test.
    pub fn new(p: u64) -> Result<Self, Error> {
        if !(2..=MAX_MODULUS).contains(&p) {
            return Err(Error::InvalidModulus {
                p,
                reason: "outside [2, 2^31 - 1]",
            });
        }
        if !is_prime(p) {
            return Err(Error::InvalidModulus { p, reason: "not prime" });
        }
        let p = p as u32;
        Ok(PrimeModulus {
            p,
            barrett: u64::MAX / p as u64,
        })
    }

    #[inline]
    pub fn value(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn is_two(self) -> bool {
        self.p == 2
    }

    /// Reduces an arbitrary 64-bit value.
    #[inline]
    pub fn reduce_u64(self, a: u64) -> u32 {
        let q = ((a as u128 * self.barrett as u128) >> 64) as u64;
        let mut r = a - q * self.p as u64;
        while r >= self.p as u64 {
            r -= self.p as u64;
        }
        r as u32
    }

    /// The image of a signed integer in GF(p).
    #[inline]
    pub fn reduce_i64(self, a: i64) -> Scalar {
        Scalar(a.rem_euclid(self.p as i64) as u32)
    }

    #[inline]
    pub fn scalar(self, a: u64) -> Scalar {
        Scalar(self.reduce_u64(a))
    }

    #[inline]
    pub fn add(self, a: Scalar, b: Scalar) -> Scalar {
        let s = a.0 as u64 + b.0 as u64;
        Scalar(if s >= self.p as u64 { s - self.p as u64 } else { s } as u32)
    }

    #[inline]
    pub fn sub(self, a: Scalar, b: Scalar) -> Scalar {
        if a.0 >= b.0 {
            Scalar(a.0 - b.0)
        } else {
            Scalar((a.0 as u64 + self.p as u64 - b.0 as u64) as u32)
        }
    }

    #[inline]
    pub fn neg(self, a: Scalar) -> Scalar {
        if a.0 == 0 {
            a
        } else {
            Scalar(self.p - a.0)
        }
    }

    #[inline]
    pub fn mul(self, a: Scalar, b: Scalar) -> Scalar {
        Scalar(self.reduce_u64(a.0 as u64 * b.0 as u64))
    }

    pub fn pow(self, a: Scalar, mut e: u64) -> Scalar {
        let mut base = a;
        let mut acc = Scalar::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(self, a: Scalar) -> Option<Scalar> {
        if a.0 == 0 {
            return None;
        }
        let (mut r0, mut r1) = (self.p as i64, a.0 as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Some(self.reduce_i64(t0))
    }

    /// Number of `(p-1)^2` products that fit in a u64 accumulator on top of
    /// one reduced residue.
    pub(crate) fn max_lazy_terms(self) -> usize {
        let m = (self.p as u64 - 1).max(1);
        ((u64::MAX - self.p as u64) / (m * m)).min(usize::MAX as u64) as usize
    }
}

impl TryFrom<u32> for PrimeModulus {
    type Error = Error;
    fn try_from(p: u32) -> Result<Self, Error> {
        PrimeModulus::new(p as u64)
    }
}

impl From<PrimeModulus> for u32 {
    fn from(m: PrimeModulus) -> u32 {
        m.p
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.p)
    }
}

/// A residue in `[0, p)`. Arithmetic goes through the owning [`PrimeModulus`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Scalar(pub u32);

impl Scalar {
    pub const ZERO: Scalar = Scalar(0);
    pub const ONE: Scalar = Scalar(1);

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % q == 0 {
            return n == q;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        r
    };
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
