//! Truncated Laurent series with exact integer coefficients.
//!
//! A [`Series`] stores the coefficients of `q^v, q^(v+1), ..., q^(order-1)`.
//! Everything at or above `order` is unknown, and every operation computes
//! the exact order up to which its result is still correct.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Series {
    valuation: i64,
    coeffs: Vec<BigInt>,
    order: i64,
}

impl Series {
    /// Builds a series from its known coefficients.
    ///
    /// `coeffs[i]` is the coefficient of `q^(valuation + i)`, and there must be
    /// exactly `order - valuation` of them.
    pub fn new(valuation: i64, coeffs: Vec<BigInt>, order: i64) -> Result<Self> {
        let expected = order - valuation;
        if expected < 0 || coeffs.len() as i64 != expected {
            return Err(Error::LengthMismatch {
                valuation,
                order,
                len: coeffs.len(),
                expected,
            });
        }
        Ok(Series {
            valuation,
            coeffs,
            order,
        })
    }

    pub fn from_i64s(valuation: i64, coeffs: &[i64], order: i64) -> Result<Self> {
        Self::new(valuation, coeffs.iter().map(|&c| BigInt::from(c)).collect(), order)
    }

    /// The series `0 + O(q^order)`.
    pub fn zero(order: i64) -> Self {
        Series {
            valuation: order,
            coeffs: Vec::new(),
            order,
        }
    }

    pub fn one(order: i64) -> Self {
        Self::monomial(0, BigInt::one(), order)
    }

    pub fn constant(c: BigInt, order: i64) -> Self {
        Self::monomial(0, c, order)
    }

    /// `c q^exp + O(q^order)`.
    pub fn monomial(exp: i64, c: BigInt, order: i64) -> Self {
        if exp >= order || c.is_zero() {
            return Self::zero(order);
        }
        let mut coeffs = vec![BigInt::zero(); (order - exp) as usize];
        coeffs[0] = c;
        Series {
            valuation: exp,
            coeffs,
            order,
        }
    }

    /// Wraps a dense coefficient vector starting at `q^0`; the order is its length.
    pub fn from_dense(coeffs: Vec<BigInt>) -> Self {
        let order = coeffs.len() as i64;
        Series {
            valuation: 0,
            coeffs,
            order,
        }
    }

    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `q^exp`, or `None` if `exp` is at or beyond the order.
    pub fn coeff(&self, exp: i64) -> Option<BigInt> {
        if exp >= self.order {
            None
        } else if exp < self.valuation {
            Some(BigInt::zero())
        } else {
            Some(self.coeffs[(exp - self.valuation) as usize].clone())
        }
    }

    fn coeff_ref(&self, exp: i64) -> Option<&BigInt> {
        if exp < self.valuation || exp >= self.order {
            None
        } else {
            Some(&self.coeffs[(exp - self.valuation) as usize])
        }
    }

    /// Known coefficients from `q^0` up to the order, as a dense vector.
    /// Negative exponents are dropped.
    pub fn to_dense(&self) -> Vec<BigInt> {
        (0..self.order.max(0))
            .map(|e| self.coeff(e).unwrap_or_default())
            .collect()
    }

    /// Nonzero terms as `(exponent, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.valuation + i as i64, c))
    }

    /// True when every known coefficient is zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// First nonzero term.
    pub fn leading(&self) -> Option<(i64, &BigInt)> {
        self.terms().next()
    }

    /// Drops leading zero coefficients, moving the valuation up.
    pub fn trimmed(mut self) -> Self {
        let skip = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if skip > 0 {
            self.coeffs.drain(..skip);
            self.valuation += skip as i64;
        }
        self
    }

    /// Forgets everything at or above `order`. Never raises the order.
    pub fn truncate(mut self, order: i64) -> Self {
        if order >= self.order {
            return self;
        }
        if order <= self.valuation {
            return Self::zero(order);
        }
        self.coeffs.truncate((order - self.valuation) as usize);
        self.order = order;
        self
    }

    /// Multiplies by `q^k`.
    pub fn shift(mut self, k: i64) -> Self {
        self.valuation += k;
        self.order += k;
        self
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Series {
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
            order: self.order,
        }
        .trimmed()
    }

    pub fn add(&self, other: &Series) -> Series {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Series) -> Series {
        self.combine(other, true)
    }

    fn combine(&self, other: &Series, negate_other: bool) -> Series {
        let order = self.order.min(other.order);
        let valuation = self.valuation.min(other.valuation).min(order);
        let mut coeffs = vec![BigInt::zero(); (order - valuation) as usize];
        for (i, slot) in coeffs.iter_mut().enumerate() {
            let e = valuation + i as i64;
            if let Some(a) = self.coeff_ref(e) {
                *slot += a;
            }
            if let Some(b) = other.coeff_ref(e) {
                if negate_other {
                    *slot -= b;
                } else {
                    *slot += b;
                }
            }
        }
        Series {
            valuation,
            coeffs,
            order,
        }
        .trimmed()
    }

    pub fn neg(&self) -> Series {
        Series {
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            order: self.order,
        }
    }

    /// Exact product. Schoolbook convolution that skips zero coefficients, so
    /// multiplying by a sparse factor such as an eta product is cheap.
    pub fn mul(&self, other: &Series) -> Series {
        let valuation = self.valuation + other.valuation;
        let order = (self.order + other.valuation).min(other.order + self.valuation);
        if order <= valuation {
            return Series::zero(order);
        }
        let len = (order - valuation) as usize;
        let mut coeffs = vec![BigInt::zero(); len];
        let nnz = |s: &Series| s.coeffs.iter().filter(|c| !c.is_zero()).count();
        let (sparse, dense) = if nnz(self) <= nnz(other) {
            (self, other)
        } else {
            (other, self)
        };
        for (i, a) in sparse.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in dense.coeffs.iter().enumerate().take(len - i) {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Series {
            valuation,
            coeffs,
            order,
        }
        .trimmed()
    }

    /// `self / divisor`. The divisor's first nonzero coefficient must be ±1.
    pub fn div(&self, divisor: &Series) -> Result<Series> {
        let divisor = divisor.clone().trimmed();
        let lead = match divisor.coeffs.first() {
            Some(c) if c.abs().is_one() => c.clone(),
            Some(c) => return Err(Error::NonUnit(alloc::format!("{c}"))),
            None => return Err(Error::NonUnit("0".into())),
        };
        let dv = divisor.valuation;
        let valuation = self.valuation - dv;
        let order = (self.order - dv).min(divisor.order - 2 * dv + self.valuation);
        if order <= valuation {
            return Ok(Series::zero(order));
        }
        let len = (order - valuation) as usize;
        let tail: Vec<(usize, &BigInt)> = divisor
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .take(len)
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let mut out: Vec<BigInt> = Vec::with_capacity(len);
        for i in 0..len {
            let mut acc = self.coeffs[i].clone();
            for &(j, d) in &tail {
                if j > i {
                    break;
                }
                acc -= d * &out[i - j];
            }
            out.push(if lead.is_negative() { -acc } else { acc });
        }
        Ok(Series {
            valuation,
            coeffs: out,
            order,
        }
        .trimmed())
    }

    /// Multiplicative inverse; requires a ±1 leading coefficient.
    pub fn invert(&self) -> Result<Series> {
        let trimmed = self.clone().trimmed();
        let v = trimmed.valuation;
        // 1 / (q^v u) = q^-v / u, and u is known to relative order `order - v`.
        let unit = trimmed.shift(-v);
        Ok(Series::one(unit.order).div(&unit)?.shift(-v))
    }

    /// Integer power; negative exponents go through [`Series::invert`].
    pub fn pow(&self, e: i64) -> Result<Series> {
        if e < 0 {
            return self.invert()?.pow(-e);
        }
        let base = self.clone().trimmed();
        let mut result = Series::one(base.order - base.valuation);
        let mut sq = base;
        let mut k = e as u64;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&sq);
            }
            k >>= 1;
            if k > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(result)
    }

    /// `sum_n c[m n + r] q^n`: the arithmetic-progression part of the series.
    pub fn extract_ap(&self, m: u64, r: u64) -> Series {
        assert!(m >= 1 && r < m, "extract_ap needs m >= 1 and 0 <= r < m");
        let (m, r) = (m as i64, r as i64);
        let order = div_ceil(self.order - r, m);
        let valuation = div_ceil(self.valuation - r, m).min(order);
        let coeffs = (valuation..order)
            .map(|n| self.coeff(m * n + r).unwrap_or_default())
            .collect();
        Series {
            valuation,
            coeffs,
            order,
        }
        .trimmed()
    }

    /// Replaces `q` by `q^k`.
    pub fn substitute(&self, k: u64) -> Series {
        assert!(k >= 1, "substitute needs k >= 1");
        if k == 1 {
            return self.clone();
        }
        let k = k as i64;
        let valuation = self.valuation * k;
        let order = self.order * k;
        let mut coeffs = vec![BigInt::zero(); (order - valuation) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k as usize] = c.clone();
        }
        Series {
            valuation,
            coeffs,
            order,
        }
    }

    /// Replaces `q` by `-q`.
    pub fn sign_twist(&self) -> Series {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if (self.valuation + i as i64).is_odd() {
                    -c
                } else {
                    c.clone()
                }
            })
            .collect();
        Series {
            valuation: self.valuation,
            coeffs,
            order: self.order,
        }
    }

    /// Replaces `q` by `±q^k`.
    pub fn substitute_signed(&self, negative: bool, k: u64) -> Series {
        let s = if negative { self.sign_twist() } else { self.clone() };
        s.substitute(k)
    }

    /// Coefficients reduced to canonical residues in `[0, modulus)`.
    pub fn reduce_mod(&self, modulus: &BigInt) -> Series {
        assert!(*modulus >= BigInt::from(2), "modulus must be at least 2");
        Series {
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(|c| c.mod_floor(modulus)).collect(),
            order: self.order,
        }
        .trimmed()
    }

    /// Smallest exponent below both orders where the two series differ.
    pub fn first_difference(&self, other: &Series) -> Option<i64> {
        let order = self.order.min(other.order);
        let start = self.valuation.min(other.valuation);
        (start..order).find(|&e| self.coeff(e) != other.coeff(e))
    }

    /// True when the series agree on every exponent both of them know.
    pub fn agrees_with(&self, other: &Series) -> bool {
        self.first_difference(other).is_none()
    }
}

pub(crate) fn div_ceil(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    -((-a).div_euclid(b))
}

/// Multiplies a dense coefficient vector (exponents `0..len`) by `1 + c q^e`.
pub(crate) fn mul_binomial(v: &mut [BigInt], e: usize, c: i64) {
    if e == 0 {
        let f = BigInt::from(1 + c);
        v.iter_mut().for_each(|x| *x *= &f);
        return;
    }
    for i in (e..v.len()).rev() {
        if v[i - e].is_zero() {
            continue;
        }
        let t = &v[i - e] * c;
        v[i] += t;
    }
}

/// Divides a dense coefficient vector by `1 + c q^e` with `e >= 1`.
pub(crate) fn div_binomial(v: &mut [BigInt], e: usize, c: i64) {
    debug_assert!(e >= 1);
    for i in e..v.len() {
        if v[i - e].is_zero() {
            continue;
        }
        let t = &v[i - e] * c;
        v[i] -= t;
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            let (neg, mag) = (c.is_negative(), c.abs());
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            match (e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("q")?,
                (1, false) => write!(f, "{mag}q")?,
                (_, true) => write!(f, "q^{e}")?,
                (_, false) => write!(f, "{mag}q^{e}")?,
            }
        }
        if first {
            write!(f, "O(q^{})", self.order)
        } else {
            write!(f, " + O(q^{})", self.order)
        }
    }
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        Series::add(self, rhs)
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        Series::sub(self, rhs)
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        Series::mul(self, rhs)
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series::neg(self)
    }
}
