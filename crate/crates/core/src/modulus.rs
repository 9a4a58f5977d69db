//! The modulus `n` of the residue ring `Z/n` together with the integer
//! helpers (gcd, inverses, factorization) that the rest of the crate uses.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Upper bound (exclusive) on supported moduli; keeps every product of two
/// residues inside a `u64`.
pub const MAX_MODULUS: u64 = 1 << 32;

/// A modulus `n >= 2` with its prime factorization cached.
#[derive(Clone)]
pub struct Modulus {
    n: u64,
    factors: Arc<[(u64, u32)]>,
}

impl Modulus {
    pub fn new(n: u64) -> Result<Self> {
        if !(2..MAX_MODULUS).contains(&n) {
            return Err(Error::InvalidModulus(n));
        }
        Ok(Modulus { n, factors: factorize(n).into() })
    }

    #[inline]
    pub fn get(&self) -> u64 {
        self.n
    }

    /// Prime factorization as `(p, e)` pairs with increasing `p`.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    /// Product of the distinct primes dividing `n`.
    pub fn radical(&self) -> u64 {
        self.factors.iter().map(|&(p, _)| p).product()
    }

    #[inline]
    pub fn reduce(&self, x: u64) -> u64 {
        x % self.n
    }

    #[inline]
    pub fn reduce_signed(&self, x: i64) -> u64 {
        x.rem_euclid(self.n as i64) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.n {
            s - self.n
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.n - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.n - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.n
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.n;
        base %= self.n;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// `(-1)^k` as a residue.
    pub fn sign(&self, k: i64) -> u64 {
        if k.rem_euclid(2) == 0 {
            1
        } else {
            self.n - 1
        }
    }

    pub fn is_unit(&self, a: u64) -> bool {
        gcd(a, self.n) == 1
    }

    pub fn inverse(&self, a: u64) -> Option<u64> {
        let (g, x, _) = xgcd(a as i64, self.n as i64);
        (g == 1).then(|| self.reduce_signed(x))
    }

    /// A unit `u` with `u * a == gcd(a, n) (mod n)`.
    pub fn normalizing_unit(&self, a: u64) -> u64 {
        let a = a % self.n;
        if a == 0 {
            return 1;
        }
        let g = gcd(a, self.n);
        let cofactor = self.n / g;
        // a/g is invertible mod n/g; lift that inverse to a unit mod n.
        let base = if cofactor == 1 {
            1
        } else {
            let (_, x, _) = xgcd((a / g) as i64, cofactor as i64);
            x.rem_euclid(cofactor as i64) as u64
        };
        let mut u = base;
        while gcd(u, self.n) != 1 {
            u += cofactor;
        }
        u % self.n
    }

    /// Positive divisors of `n` in increasing order.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, e) in self.factors.iter() {
            let len = divs.len();
            let mut pk = 1;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        divs
    }
}

impl PartialEq for Modulus {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
    }
}

impl Eq for Modulus {}

impl std::hash::Hash for Modulus {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state)
    }
}

impl fmt::Debug for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z/{}", self.n)
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.n)
    }
}

impl Serialize for Modulus {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u64(self.n)
    }
}

impl<'de> Deserialize<'de> for Modulus {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let n = u64::deserialize(d)?;
        Modulus::new(n).map_err(serde::de::Error::custom)
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Extended Euclid: returns `(g, x, y)` with `a*x + b*y = g = gcd(a, b) >= 0`.
pub fn xgcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}
