//! q-Pochhammer products, eta products, Ramanujan's theta function `f(c, d)`
//! and the p-dissections of `psi(q)`, `l_1` and `l_1^3`.
//!
//! Throughout, `l_k` is the infinite product `(q^k; q^k)_inf`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ntheory::is_prime;
use crate::series::{mul_binomial, Series};

/// `(sign q^a; q^step)_len`, the product of `1 - sign q^(a + k step)` for `k < len`.
/// `len == None` is the infinite product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PochhammerSpec {
    pub negative: bool,
    pub a: u64,
    pub step: u64,
    pub len: Option<u64>,
}

impl PochhammerSpec {
    pub fn infinite(negative: bool, a: u64, step: u64) -> Self {
        PochhammerSpec {
            negative,
            a,
            step,
            len: None,
        }
    }

    pub fn finite(negative: bool, a: u64, step: u64, len: u64) -> Self {
        PochhammerSpec {
            negative,
            a,
            step,
            len: Some(len),
        }
    }
}

pub fn pochhammer(spec: &PochhammerSpec, order: i64) -> Result<Series> {
    if spec.step == 0 {
        return Err(Error::Domain("pochhammer step must be positive".into()));
    }
    if spec.len.is_none() && spec.a == 0 && !spec.negative {
        return Err(Error::DegenerateProduct);
    }
    if order <= 0 {
        return Ok(Series::zero(order));
    }
    let mut v = vec![BigInt::zero(); order as usize];
    v[0] = BigInt::one();
    // Factor is 1 - sign q^e, i.e. 1 + c q^e with c = -sign.
    let c = if spec.negative { 1 } else { -1 };
    let mut k = 0u64;
    while spec.len.is_none_or(|n| k < n) {
        let e = spec.a + k * spec.step;
        // Later factors are 1 + O(q^order).
        if e >= order as u64 {
            break;
        }
        mul_binomial(&mut v, e as usize, c);
        k += 1;
    }
    Ok(Series::from_dense(v).trimmed())
}

/// `l_k`, built from Euler's pentagonal sum
/// `sum_m (-1)^m q^(k m (3m - 1) / 2)` over all integers `m`.
pub fn eta(k: u64, order: i64) -> Series {
    assert!(k >= 1, "eta index must be positive");
    if order <= 0 {
        return Series::zero(order);
    }
    let n = order as u64;
    let mut v = vec![BigInt::zero(); n as usize];
    let mut m = 0u64;
    loop {
        let e1 = k * (m * (3 * m).saturating_sub(1) / 2);
        let e2 = k * (m * (3 * m + 1) / 2);
        if e1 >= n {
            break;
        }
        let sign: i64 = if m.is_multiple_of(2) { 1 } else { -1 };
        v[e1 as usize] += sign;
        if m > 0 && e2 < n {
            v[e2 as usize] += sign;
        }
        m += 1;
    }
    Series::from_dense(v)
}

/// Finite map `k -> e_k` describing `prod_k l_k^(e_k)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct EtaQuotientSpec(pub BTreeMap<u64, i64>);

impl EtaQuotientSpec {
    pub fn new(pairs: &[(u64, i64)]) -> Self {
        let mut map = BTreeMap::new();
        for &(k, e) in pairs {
            *map.entry(k).or_insert(0) += e;
        }
        map.retain(|_, e| *e != 0);
        EtaQuotientSpec(map)
    }
}

/// `prod_k l_k^(e_k)`, multiplying and dividing by one sparse pentagonal
/// series at a time.
pub fn eta_quotient(spec: &EtaQuotientSpec, order: i64) -> Series {
    let mut acc = Series::one(order);
    for (&k, &e) in spec.0.iter().filter(|(_, e)| **e > 0) {
        let f = eta(k, order);
        for _ in 0..e {
            acc = acc.mul(&f);
        }
    }
    for (&k, &e) in spec.0.iter().filter(|(_, e)| **e < 0) {
        let f = eta(k, order);
        for _ in 0..-e {
            acc = acc.div(&f).expect("eta products have leading coefficient 1");
        }
    }
    acc
}

/// `f(c, d) = sum_m c^(m(m+1)/2) d^(m(m-1)/2)` at `c = ±q^a`, `d = ±q^b`.
pub fn theta_f(c_negative: bool, a: u64, d_negative: bool, b: u64, order: i64) -> Result<Series> {
    if a + b == 0 {
        return Err(Error::Divergent);
    }
    if order <= 0 {
        return Ok(Series::zero(order));
    }
    let n = order as u64;
    let mut v = vec![BigInt::zero(); n as usize];
    let mut add_term = |m: i64| -> bool {
        let tc = (m * (m + 1) / 2) as u64;
        let td = (m * (m - 1) / 2) as u64;
        let e = a * tc + b * td;
        if e >= n {
            return false;
        }
        let odd = (c_negative && tc % 2 == 1) ^ (d_negative && td % 2 == 1);
        v[e as usize] += if odd { -1 } else { 1 };
        true
    };
    add_term(0);
    // Exponents grow monotonically in |m| once a, b >= 0 and a + b >= 1.
    let mut m = 1;
    while add_term(m) {
        m += 1;
    }
    let mut m = -1;
    while add_term(m) {
        m -= 1;
    }
    Ok(Series::from_dense(v))
}

/// `l_1^3 = sum_k (-1)^k (2k + 1) q^(k(k+1)/2)`.
pub fn jacobi_cube(order: i64) -> Series {
    if order <= 0 {
        return Series::zero(order);
    }
    let n = order as u64;
    let mut v = vec![BigInt::zero(); n as usize];
    let mut k = 0u64;
    while k * (k + 1) / 2 < n {
        let w = BigInt::from(2 * k + 1);
        v[(k * (k + 1) / 2) as usize] = if k.is_multiple_of(2) { w } else { -w };
        k += 1;
    }
    Series::from_dense(v)
}

fn require_odd_prime(p: u64) -> Result<()> {
    if p % 2 == 1 && is_prime(p) {
        Ok(())
    } else {
        Err(Error::Domain(format!("{p} is not an odd prime")))
    }
}

/// Exponent of the distinguished term in the p-dissection of `psi(q)`.
pub fn psi_dissection_shift(p: u64) -> u64 {
    (p * p - 1) / 8
}

/// Right-hand side of the p-dissection of `psi(q)`:
/// `sum_{m=0}^{(p-3)/2} q^((m^2+m)/2) f(q^((p^2+(2m+1)p)/2), q^((p^2-(2m+1)p)/2)) + q^((p^2-1)/8) psi(q^(p^2))`.
pub fn psi_p_dissection_rhs(p: u64, order: i64) -> Result<Series> {
    require_odd_prime(p)?;
    let p2 = p * p;
    let mut acc = Series::zero(order);
    for m in 0..=(p - 3) / 2 {
        let shift = (m * m + m) / 2;
        let a = (p2 + (2 * m + 1) * p) / 2;
        let b = (p2 - (2 * m + 1) * p) / 2;
        let f = theta_f(false, a, false, b, order - shift as i64)?.shift(shift as i64);
        acc = acc.add(&f);
    }
    let psi = theta_f(false, 1, false, 3, crate::series::div_ceil(order, p2 as i64))?.substitute(p2);
    acc = acc.add(&psi.shift(psi_dissection_shift(p) as i64));
    Ok(acc.truncate(order))
}

/// The index `t` excluded from the pentagonal p-dissection: `(p-1)/6` when
/// `p ≡ 1 (mod 6)`, otherwise `(-p-1)/6`.
pub fn pentagonal_excluded_index(p: u64) -> i64 {
    let p = p as i64;
    if p % 6 == 1 {
        (p - 1) / 6
    } else {
        (-p - 1) / 6
    }
}

/// Right-hand side of the p-dissection of `l_1`:
/// `sum_{t != t*} (-1)^t q^((3t^2+t)/2) f(-q^((3p^2+(6t+1)p)/2), -q^((3p^2-(6t+1)p)/2))
///  + (-1)^t* q^((p^2-1)/24) l_{p^2}`, with `t` in `[-(p-1)/2, (p-1)/2]`.
pub fn f1_p_dissection_rhs(p: u64, order: i64) -> Result<Series> {
    if p < 5 || !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not a prime >= 5")));
    }
    let excluded = pentagonal_excluded_index(p);
    let pi = p as i64;
    let half = (pi - 1) / 2;
    let mut acc = Series::zero(order);
    for t in -half..=half {
        if t == excluded {
            continue;
        }
        let shift = (3 * t * t + t) / 2;
        let a = (3 * pi * pi + (6 * t + 1) * pi) / 2;
        let b = (3 * pi * pi - (6 * t + 1) * pi) / 2;
        let mut f = theta_f(true, a as u64, true, b as u64, order - shift)?.shift(shift);
        if t % 2 != 0 {
            f = f.neg();
        }
        acc = acc.add(&f);
    }
    let mut tail = eta(p * p, order).shift(((p * p - 1) / 24) as i64);
    if excluded % 2 != 0 {
        tail = tail.neg();
    }
    Ok(acc.add(&tail).truncate(order))
}

/// Right-hand side of the p-dissection of `l_1^3`:
/// `sum_{k != (p-1)/2} (-1)^k q^(k(k+1)/2) sum_{n>=0} (-1)^n (2pn+2k+1) q^(pn(pn+2k+1)/2)
///  + p (-1)^((p-1)/2) q^((p^2-1)/8) l_{p^2}^3`, with `0 <= k <= p-1`.
pub fn f1cubed_p_dissection_rhs(p: u64, order: i64) -> Result<Series> {
    require_odd_prime(p)?;
    if order <= 0 {
        return Ok(Series::zero(order));
    }
    let n_max = order as u64;
    let mut v = vec![BigInt::zero(); n_max as usize];
    for k in 0..p {
        if k == (p - 1) / 2 {
            continue;
        }
        let base = k * (k + 1) / 2;
        let mut n = 0u64;
        loop {
            let e = base + p * n * (p * n + 2 * k + 1) / 2;
            if e >= n_max {
                break;
            }
            let w = BigInt::from(2 * p * n + 2 * k + 1);
            if (k + n).is_multiple_of(2) {
                v[e as usize] += w;
            } else {
                v[e as usize] -= w;
            }
            n += 1;
        }
    }
    let mut acc = Series::from_dense(v);
    let cube = jacobi_cube(crate::series::div_ceil(order, (p * p) as i64)).substitute(p * p);
    let sign: i64 = if ((p - 1) / 2).is_multiple_of(2) { 1 } else { -1 };
    let tail = cube
        .scale(&BigInt::from(sign * p as i64))
        .shift(((p * p - 1) / 8) as i64);
    acc = acc.add(&tail);
    Ok(acc.truncate(order))
}

/// The binomial-theorem congruences between eta powers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinomialCongruence {
    /// `l_n^(t p) ≡ l_(n p)^t (mod p)` for a prime `p`.
    Prime { n: u64, t: u64, p: u64 },
    /// `l_1^(2^t) ≡ l_2^(2^(t-1)) (mod 2^t)`.
    PowerOfTwo { t: u32 },
}

impl BinomialCongruence {
    /// Both sides and the modulus.
    pub fn sides(&self, order: i64) -> Result<(Series, Series, BigInt)> {
        match *self {
            BinomialCongruence::Prime { n, t, p } => {
                if !is_prime(p) {
                    return Err(Error::Domain(format!("{p} is not prime")));
                }
                if n == 0 || t == 0 {
                    return Err(Error::Domain("n and t must be positive".into()));
                }
                let lhs = eta_quotient(&EtaQuotientSpec::new(&[(n, (t * p) as i64)]), order);
                let rhs = eta_quotient(&EtaQuotientSpec::new(&[(n * p, t as i64)]), order);
                Ok((lhs, rhs, BigInt::from(p)))
            }
            BinomialCongruence::PowerOfTwo { t } => {
                if t == 0 || t > 20 {
                    return Err(Error::Domain(format!("t = {t} out of range")));
                }
                let lhs = eta_quotient(&EtaQuotientSpec::new(&[(1, 1 << t)]), order);
                let rhs = eta_quotient(&EtaQuotientSpec::new(&[(2, 1 << (t - 1))]), order);
                Ok((lhs, rhs, BigInt::from(1u64 << t)))
            }
        }
    }
}

/// True iff the congruence holds for every coefficient below `order`.
pub fn verify_binomial_congruence(kind: BinomialCongruence, order: i64) -> Result<bool> {
    let (lhs, rhs, m) = kind.sides(order)?;
    Ok(lhs.sub(&rhs).reduce_mod(&m).is_zero())
}

/// Residues mod `p` of the non-distinguished terms of each p-dissection,
/// alongside the residue of the distinguished term.
pub fn dissection_residues(kind: DissectionKind, p: u64) -> Result<(Vec<u64>, u64)> {
    match kind {
        DissectionKind::Psi => {
            require_odd_prime(p)?;
            let others = (0..=(p - 3) / 2).map(|m| ((m * m + m) / 2) % p).collect();
            Ok((others, psi_dissection_shift(p) % p))
        }
        DissectionKind::Eta => {
            if p < 5 || !is_prime(p) {
                return Err(Error::Domain(format!("{p} is not a prime >= 5")));
            }
            let pi = p as i64;
            let excluded = pentagonal_excluded_index(p);
            let others = (-(pi - 1) / 2..=(pi - 1) / 2)
                .filter(|&t| t != excluded)
                .map(|t| ((3 * t * t + t) / 2).rem_euclid(pi) as u64)
                .collect();
            Ok((others, ((p * p - 1) / 24) % p))
        }
        DissectionKind::EtaCube => {
            require_odd_prime(p)?;
            let others = (0..p)
                .filter(|&k| k != (p - 1) / 2)
                .map(|k| (k * (k + 1) / 2) % p)
                .collect();
            Ok((others, psi_dissection_shift(p) % p))
        }
    }
}

/// Which series a p-dissection expands.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DissectionKind {
    /// `psi(q)`
    Psi,
    /// `l_1`
    Eta,
    /// `l_1^3`
    EtaCube,
}

impl DissectionKind {
    pub fn name(self) -> &'static str {
        match self {
            DissectionKind::Psi => "psi",
            DissectionKind::Eta => "l1",
            DissectionKind::EtaCube => "l1cube",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "psi" => Some(DissectionKind::Psi),
            "l1" => Some(DissectionKind::Eta),
            "l1cube" => Some(DissectionKind::EtaCube),
            _ => None,
        }
    }

    pub fn rhs(self, p: u64, order: i64) -> Result<Series> {
        match self {
            DissectionKind::Psi => psi_p_dissection_rhs(p, order),
            DissectionKind::Eta => f1_p_dissection_rhs(p, order),
            DissectionKind::EtaCube => f1cubed_p_dissection_rhs(p, order),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &Series, n: usize) -> Vec<i64> {
        s.to_dense()
            .iter()
            .take(n)
            .map(|c| i64::try_from(c).unwrap())
            .collect()
    }

    #[test]
    fn finite_pochhammer() {
        let two = pochhammer(&PochhammerSpec::finite(false, 1, 1, 2), 10).unwrap();
        assert_eq!(ints(&two, 10), vec![1, -1, -1, 1, 0, 0, 0, 0, 0, 0]);
        let one = pochhammer(&PochhammerSpec::finite(true, 1, 1, 1), 5).unwrap();
        assert_eq!(ints(&one, 5), vec![1, 1, 0, 0, 0]);
        let empty = pochhammer(&PochhammerSpec::finite(false, 3, 2, 0), 4).unwrap();
        assert_eq!(ints(&empty, 4), vec![1, 0, 0, 0]);
        // (1; q)_2 = 0 exactly.
        let zero = pochhammer(&PochhammerSpec::finite(false, 0, 1, 2), 4).unwrap();
        assert!(zero.is_zero());
    }

    #[test]
    fn infinite_pochhammer_is_pentagonal() {
        let euler = pochhammer(&PochhammerSpec::infinite(false, 1, 1), 16).unwrap();
        assert_eq!(
            ints(&euler, 16),
            vec![1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1, 0, 0, -1]
        );
        assert_eq!(euler, eta(1, 16));
        assert_eq!(
            pochhammer(&PochhammerSpec::infinite(false, 0, 1), 10),
            Err(Error::DegenerateProduct)
        );
    }

    #[test]
    fn eta_scaling_and_unit() {
        assert_eq!(eta(2, 60), eta(1, 30).substitute(2));
        let e = eta(1, 80);
        let prod = e.mul(&e.invert().unwrap());
        assert!(prod.agrees_with(&Series::one(80)));
    }

    #[test]
    fn eta_matches_product_form() {
        for k in 1..=5 {
            let product = pochhammer(&PochhammerSpec::infinite(false, k, k), 300).unwrap();
            assert_eq!(eta(k, 300), product, "k = {k}");
        }
    }

    #[test]
    fn theta_specializations() {
        let phi = theta_f(false, 1, false, 1, 17).unwrap();
        assert_eq!(
            ints(&phi, 17),
            vec![1, 2, 0, 0, 2, 0, 0, 0, 0, 2, 0, 0, 0, 0, 0, 0, 2]
        );
        let psi = theta_f(false, 1, false, 3, 16).unwrap();
        let expect: Vec<i64> = (0..16)
            .map(|n| i64::from([0, 1, 3, 6, 10, 15].contains(&n)))
            .collect();
        assert_eq!(ints(&psi, 16), expect);
        assert_eq!(theta_f(true, 1, true, 2, 400).unwrap(), eta(1, 400));
        assert_eq!(theta_f(false, 0, false, 0, 10), Err(Error::Divergent));
    }

    #[test]
    fn jacobi_cube_values() {
        let j = jacobi_cube(11);
        assert_eq!(ints(&j, 11), vec![1, -3, 0, 5, 0, 0, -7, 0, 0, 0, 9]);
        assert_eq!(j.coeff(2), Some(BigInt::zero()));
        assert_eq!(jacobi_cube(500), eta(1, 500).pow(3).unwrap());
    }

    #[test]
    fn eta_quotient_partition_numbers() {
        let p = eta_quotient(&EtaQuotientSpec::new(&[(1, -1)]), 7);
        assert_eq!(ints(&p, 7), vec![1, 1, 2, 3, 5, 7, 11]);
        let v = eta_quotient(&EtaQuotientSpec::new(&[(4, 3), (1, -1), (2, -1)]), 2);
        assert_eq!(ints(&v, 2), vec![1, 1]);
        let l = eta_quotient(&EtaQuotientSpec::new(&[(2, 3), (3, 2), (1, -3), (6, -1)]), 2);
        assert_eq!(ints(&l, 2), vec![1, 3]);
    }

    #[test]
    fn dissections_reassemble() {
        for p in [3, 5, 7] {
            assert_eq!(
                psi_p_dissection_rhs(p, 200).unwrap(),
                theta_f(false, 1, false, 3, 200).unwrap(),
                "psi, p = {p}"
            );
            assert_eq!(
                f1cubed_p_dissection_rhs(p, 300).unwrap(),
                jacobi_cube(300),
                "l1^3, p = {p}"
            );
        }
        for p in [5, 7, 11] {
            assert_eq!(f1_p_dissection_rhs(p, 300).unwrap(), eta(1, 300), "l1, p = {p}");
        }
    }

    #[test]
    fn dissection_domain_errors() {
        assert!(matches!(psi_p_dissection_rhs(9, 10), Err(Error::Domain(_))));
        assert!(matches!(psi_p_dissection_rhs(2, 10), Err(Error::Domain(_))));
        assert!(matches!(f1_p_dissection_rhs(3, 10), Err(Error::Domain(_))));
        assert!(matches!(f1_p_dissection_rhs(25, 10), Err(Error::Domain(_))));
        assert!(matches!(f1cubed_p_dissection_rhs(15, 10), Err(Error::Domain(_))));
    }

    #[test]
    fn excluded_indices() {
        assert_eq!(pentagonal_excluded_index(5), -1);
        assert_eq!(pentagonal_excluded_index(7), 1);
        assert_eq!(pentagonal_excluded_index(11), -2);
        assert_eq!(psi_dissection_shift(3) % 3, 1);
    }

    #[test]
    fn residue_classes_avoid_distinguished_term() {
        for p in [3, 5, 7, 11, 13] {
            let (others, special) = dissection_residues(DissectionKind::Psi, p).unwrap();
            assert!(!others.contains(&special), "psi p = {p}");
            let (others, special) = dissection_residues(DissectionKind::EtaCube, p).unwrap();
            assert!(!others.contains(&special), "l1^3 p = {p}");
        }
        for p in [5, 7, 11, 13] {
            let (others, special) = dissection_residues(DissectionKind::Eta, p).unwrap();
            assert!(!others.contains(&special), "l1 p = {p}");
        }
        let (others, special) = dissection_residues(DissectionKind::Psi, 3).unwrap();
        assert_eq!((others, special), (vec![0], 1));
    }

    #[test]
    fn distinguished_term_is_whole_residue_class() {
        for p in [3u64, 5, 7] {
            let order = 300;
            let r = psi_dissection_shift(p) % p;
            let psi = theta_f(false, 1, false, 3, order).unwrap();
            let tail = theta_f(false, 1, false, 3, order / (p * p) as i64 + 1)
                .unwrap()
                .substitute(p * p)
                .shift(psi_dissection_shift(p) as i64)
                .truncate(order);
            assert_eq!(psi.extract_ap(p, r), tail.extract_ap(p, r), "psi p = {p}");
        }
    }

    #[test]
    fn binomial_congruences() {
        for kind in [
            BinomialCongruence::Prime { n: 1, t: 1, p: 3 },
            BinomialCongruence::Prime { n: 2, t: 1, p: 5 },
            BinomialCongruence::Prime { n: 3, t: 2, p: 7 },
            BinomialCongruence::PowerOfTwo { t: 2 },
            BinomialCongruence::PowerOfTwo { t: 3 },
        ] {
            assert!(verify_binomial_congruence(kind, 200).unwrap(), "{kind:?}");
        }
        // l_1^2 and l_2 differ mod 4 (they only agree mod 2).
        let (a, b, _) = BinomialCongruence::PowerOfTwo { t: 1 }.sides(50).unwrap();
        assert!(!a.sub(&b).reduce_mod(&BigInt::from(4)).is_zero());
        assert!(verify_binomial_congruence(BinomialCongruence::Prime { n: 1, t: 1, p: 4 }, 10).is_err());
    }
}
