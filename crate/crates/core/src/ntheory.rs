//! Primality, Legendre symbols, and the progression indices of the
//! congruence families.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::mocktheta::MockThetaId;

/// Trial division; the primes in play are tiny.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % m as u128) as u64;
        }
        base = ((base as u128 * base as u128) % m as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Legendre symbol `(w / p)` by Euler's criterion.
pub fn legendre(w: i64, p: u64) -> Result<i8> {
    if p.is_multiple_of(2) || !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not an odd prime")));
    }
    let r = w.rem_euclid(p as i64) as u64;
    if r == 0 {
        return Ok(0);
    }
    Ok(if pow_mod(r, (p - 1) / 2, p) == 1 { 1 } else { -1 })
}

/// The infinite congruence families, each parametrised by a prime `p` and `alpha >= 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `P_v(2 p^(2a+2) n + 2 p^(2a+1) j + (3 p^(2a+2) + 1)/4) ≡ 0 (mod 2)`, needs `(-2/p) = -1`.
    V2,
    /// `P_v(6 p^(2a+2) n + 6 p^(2a+1) j + (19 p^(2a+2) + 1)/4) ≡ 0 (mod 6)`, needs `p >= 5`, `(-18/p) = -1`.
    V6,
    /// `P_sigma(2 p^(2a+2) n + 2 p^(2a+1) j + (11 p^(2a+2) + 1)/12) ≡ 0 (mod 2)`, needs `p >= 5`, `(-2/p) = -1`.
    Sigma2,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::V2, Family::V6, Family::Sigma2];

    pub fn name(self) -> &'static str {
        match self {
            Family::V2 => "thm3.3ii",
            Family::V6 => "thm3.3iii",
            Family::Sigma2 => "thm4.3",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Family::ALL.into_iter().find(|f| f.name() == s)
    }

    pub fn mock(self) -> MockThetaId {
        match self {
            Family::V2 | Family::V6 => MockThetaId::V,
            Family::Sigma2 => MockThetaId::Sigma,
        }
    }

    /// `(c, d, e, modulus)` in `A = c p^(2a+2)`, `B = c p^(2a+1) j + (d p^(2a+2) + 1)/e`.
    fn constants(self) -> (u64, u64, u64, u64) {
        match self {
            Family::V2 => (2, 3, 4, 2),
            Family::V6 => (6, 19, 4, 6),
            Family::Sigma2 => (2, 11, 12, 2),
        }
    }

    fn legendre_numerator(self) -> i64 {
        match self {
            Family::V2 | Family::Sigma2 => -2,
            Family::V6 => -18,
        }
    }

    fn min_prime(self) -> u64 {
        match self {
            Family::V2 => 3,
            Family::V6 | Family::Sigma2 => 5,
        }
    }

    /// Whether `p` satisfies the family's hypotheses.
    pub fn qualifies(self, p: u64) -> bool {
        p >= self.min_prime() && is_prime(p) && legendre(self.legendre_numerator(), p) == Ok(-1)
    }

    /// Qualifying primes below `limit`, found by scanning.
    pub fn qualifying_primes(self, limit: u64) -> Vec<u64> {
        (2..limit).filter(|&p| self.qualifies(p)).collect()
    }
}

/// One arithmetic progression `A n + B` on which coefficients vanish mod `M`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FamilyIndex {
    pub j: u64,
    pub a: u64,
    pub b: u64,
    pub modulus: u64,
}

/// Progressions of a family for `j = 1..p-1`.
pub fn family_indices(family: Family, p: u64, alpha: u32) -> Result<Vec<FamilyIndex>> {
    if !family.qualifies(p) {
        return Err(Error::Precondition(format!(
            "p = {p} does not qualify for {}: needs a prime >= {} with ({}/p) = -1",
            family.name(),
            family.min_prime(),
            family.legendre_numerator()
        )));
    }
    let (c, d, e, modulus) = family.constants();
    let pb = BigInt::from(p);
    let p_odd = num_traits::pow(pb.clone(), 2 * alpha as usize + 1);
    let p_even = &p_odd * &pb;
    let numerator = BigInt::from(d) * &p_even + BigInt::one();
    if !(&numerator % BigInt::from(e)).is_zero() {
        return Err(Error::Precondition(format!(
            "offset ({d} p^{} + 1)/{e} is not an integer for p = {p}",
            2 * alpha + 2
        )));
    }
    let offset = numerator / BigInt::from(e);
    let step = BigInt::from(c) * &p_even;
    let too_big = || Error::Precondition(format!("indices overflow for p = {p}, alpha = {alpha}"));
    let a = step.to_u64().ok_or_else(too_big)?;
    (1..p)
        .map(|j| {
            let b = BigInt::from(c) * &p_odd * BigInt::from(j) + &offset;
            Ok(FamilyIndex {
                j,
                a,
                b: b.to_u64().ok_or_else(too_big)?,
                modulus,
            })
        })
        .collect()
}
