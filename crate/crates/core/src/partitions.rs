//! Restricted and coloured partition counters.
//!
//! A [`PartitionRuleSet`] assigns each residue class of parts modulo `m` a
//! number of colours, a distinctness flag and a sign flag. Two independent
//! counters are provided: [`count_signed`] enumerates partitions one at a time
//! and is the trusted oracle, [`count_dp`] multiplies out the generating
//! product and is the fast path.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::qproducts::{eta, eta_quotient, EtaQuotientSpec};
use crate::series::{div_binomial, mul_binomial, Series};

/// How parts congruent to `residue` are counted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ResidueRule {
    pub residue: u64,
    /// Zero forbids the class.
    pub colors: u32,
    pub distinct: bool,
    /// Each part in the class contributes a factor of -1.
    pub signed_by_count: bool,
}

impl ResidueRule {
    pub const fn new(residue: u64, colors: u32, distinct: bool, signed_by_count: bool) -> Self {
        ResidueRule { residue, colors, distinct, signed_by_count }
    }

    pub const fn plain(residue: u64, colors: u32) -> Self {
        Self::new(residue, colors, false, false)
    }

    pub const fn forbidden(residue: u64) -> Self {
        Self::new(residue, 0, false, false)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartitionRuleSet {
    modulus: u64,
    rules: Vec<ResidueRule>,
}

/// Rulesets known by name, in listing order.
pub const RULESET_NAMES: [&str; 9] = [
    "thm3.2",
    "thm4.2",
    "thm5.2",
    "thm6.1",
    "p",
    "p3",
    "pentagonal",
    "distinct2",
    "regular4",
];

impl PartitionRuleSet {
    /// Rules may come in any order but must cover each residue exactly once.
    pub fn new(modulus: u64, rules: Vec<ResidueRule>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::Domain("ruleset modulus must be positive".into()));
        }
        let mut slots: Vec<Option<ResidueRule>> = vec![None; modulus as usize];
        for rule in rules {
            let slot = slots.get_mut(rule.residue as usize).ok_or_else(|| {
                Error::Domain(format!("residue {} out of range mod {modulus}", rule.residue))
            })?;
            if slot.replace(rule).is_some() {
                return Err(Error::Domain(format!("residue {} given twice", rule.residue)));
            }
        }
        let rules = slots
            .into_iter()
            .enumerate()
            .map(|(r, s)| s.ok_or_else(|| Error::Domain(format!("residue {r} mod {modulus} has no rule"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(PartitionRuleSet { modulus, rules })
    }

    /// The same rule for every part.
    pub fn uniform(colors: u32, distinct: bool, signed_by_count: bool) -> Self {
        PartitionRuleSet {
            modulus: 1,
            rules: vec![ResidueRule::new(0, colors, distinct, signed_by_count)],
        }
    }

    pub fn named(name: &str) -> Result<Self> {
        use ResidueRule as R;
        let signed_distinct = |r| R::new(r, 1, true, true);
        match name {
            // l4^3/(l1 l2)
            "thm3.2" => Self::new(4, vec![signed_distinct(0), R::plain(1, 1), R::plain(2, 2), R::plain(3, 1)]),
            // l2^2 l6^2/(l1^2 l3)
            "thm4.2" => Self::new(
                6,
                vec![
                    signed_distinct(0),
                    R::plain(1, 2),
                    R::forbidden(2),
                    R::plain(3, 3),
                    R::forbidden(4),
                    R::plain(5, 2),
                ],
            ),
            // l6^3/(l1 l2)
            "thm5.2" => Self::new(
                6,
                vec![
                    signed_distinct(0),
                    R::plain(1, 1),
                    R::plain(2, 2),
                    R::plain(3, 1),
                    R::plain(4, 2),
                    R::plain(5, 1),
                ],
            ),
            // l2^3 l3^2/(l1^3 l6)
            "thm6.1" => Self::new(
                6,
                vec![
                    signed_distinct(0),
                    R::plain(1, 3),
                    R::forbidden(2),
                    R::plain(3, 1),
                    R::forbidden(4),
                    R::plain(5, 3),
                ],
            ),
            "p" => Ok(Self::uniform(1, false, false)),
            "p3" => Ok(Self::uniform(3, false, false)),
            "pentagonal" => Ok(Self::uniform(1, true, true)),
            "distinct2" => Ok(Self::uniform(2, true, false)),
            "regular4" => Self::new(4, vec![R::forbidden(0), R::plain(1, 1), R::plain(2, 1), R::plain(3, 1)]),
            _ => Err(Error::UnknownRuleset(name.into())),
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn rules(&self) -> &[ResidueRule] {
        &self.rules
    }

    pub fn rule_for(&self, part: u64) -> &ResidueRule {
        &self.rules[(part % self.modulus) as usize]
    }

    /// One-line summary such as `mod 4: 0 distinct signed x1, 1 x1, 2 x2, 3 x1`.
    pub fn describe(&self) -> String {
        let mut out = format!("mod {}:", self.modulus);
        for (i, r) in self.rules.iter().enumerate() {
            out.push_str(if i == 0 { " " } else { ", " });
            if r.colors == 0 {
                out.push_str(&format!("{} forbidden", r.residue));
                continue;
            }
            out.push_str(&format!("{}", r.residue));
            if r.distinct {
                out.push_str(" distinct");
            }
            if r.signed_by_count {
                out.push_str(" signed");
            }
            out.push_str(&format!(" x{}", r.colors));
        }
        out
    }

    /// Every admissible (value, colour) pair with value <= n, largest first.
    fn part_types(&self, n: u64) -> Vec<ColoredPart> {
        let mut out = Vec::new();
        for value in (1..=n).rev() {
            for color in (0..self.rule_for(value).colors).rev() {
                out.push(ColoredPart { value, color });
            }
        }
        out
    }
}

/// A part with its colour label; colours are numbered from 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColoredPart {
    pub value: u64,
    pub color: u32,
}

/// Calls `f(parts, sign)` once per admissible partition of `n`, parts in
/// non-increasing order of (value, colour).
pub fn for_each_partition<F: FnMut(&[ColoredPart], i8)>(rs: &PartitionRuleSet, n: u64, mut f: F) {
    let types = rs.part_types(n);
    let mut stack = Vec::new();
    walk(rs, &types, 0, n, 1, &mut stack, &mut f);
}

fn walk<F: FnMut(&[ColoredPart], i8)>(
    rs: &PartitionRuleSet,
    types: &[ColoredPart],
    idx: usize,
    rem: u64,
    sign: i8,
    stack: &mut Vec<ColoredPart>,
    f: &mut F,
) {
    if rem == 0 {
        f(stack, sign);
        return;
    }
    // Skip types too large for what is left.
    let mut i = idx;
    while i < types.len() && types[i].value > rem {
        i += 1;
    }
    for j in i..types.len() {
        let part = types[j];
        let rule = rs.rule_for(part.value);
        let max = if rule.distinct { 1 } else { rem / part.value };
        let flip = if rule.signed_by_count { -1 } else { 1 };
        // Most copies first, so the listing is lexicographically decreasing.
        let base = stack.len();
        stack.extend(core::iter::repeat_n(part, max as usize));
        for k in (1..=max).rev() {
            stack.truncate(base + k as usize);
            let s = if k % 2 == 1 { sign * flip } else { sign };
            walk(rs, types, j + 1, rem - k * part.value, s, stack, f);
        }
        stack.truncate(base);
    }
}

/// Signed count by exhaustive enumeration. Negative `n` gives 0.
pub fn count_signed(rs: &PartitionRuleSet, n: i64) -> BigInt {
    if n < 0 {
        return BigInt::zero();
    }
    let mut total: i128 = 0;
    for_each_partition(rs, n as u64, |_, s| total += s as i128);
    BigInt::from(total)
}

/// Generating function of [`count_signed`] to order `order`.
pub fn count_dp(rs: &PartitionRuleSet, order: i64) -> Series {
    if order <= 0 {
        return Series::zero(order.max(0));
    }
    let mut v = vec![BigInt::zero(); order as usize];
    v[0] = BigInt::one();
    for t in 1..order as usize {
        let rule = rs.rule_for(t as u64);
        // distinct: (1 ± q^t)^c, otherwise (1 ∓ q^t)^-c
        let c = if rule.signed_by_count { -1 } else { 1 };
        for _ in 0..rule.colors {
            if rule.distinct {
                mul_binomial(&mut v, t, c);
            } else {
                div_binomial(&mut v, t, -c);
            }
        }
    }
    Series::from_dense(v)
}

/// `p(0..n)` by Euler's pentagonal recurrence.
pub fn p_table(n: usize) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); n + 1];
    p[0] = BigInt::one();
    for m in 1..=n {
        let mut acc = BigInt::zero();
        let mut k = 1usize;
        loop {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let g2 = k * (3 * k + 1) / 2;
            let mut term = p[m - g1].clone();
            if g2 <= m {
                term += &p[m - g2];
            }
            if k % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
            k += 1;
        }
        p[m] = acc;
    }
    p
}

/// `p(n)`; negative `n` gives 0.
pub fn p_classic(n: i64) -> BigInt {
    if n < 0 {
        return BigInt::zero();
    }
    p_table(n as usize).pop().unwrap_or_default()
}

/// `1/l1^r`. Negative `r` is allowed.
pub fn p_r(r: i64, order: i64) -> Result<Series> {
    if r == 0 {
        return Err(Error::Domain("p_r needs r != 0".into()));
    }
    Ok(eta_quotient(&EtaQuotientSpec::new(&[(1, -r)]), order))
}

/// `(l2/l1^2)^r`, overpartitions in `r` colours.
pub fn overpartition_r(r: u32, order: i64) -> Result<Series> {
    if r == 0 {
        return Err(Error::Domain("overpartition_r needs r >= 1".into()));
    }
    let r = r as i64;
    Ok(eta_quotient(&EtaQuotientSpec::new(&[(2, r), (1, -2 * r)]), order))
}

/// `(l2/l1)^r`, distinct-part partitions in `r` colours.
pub fn p_rd(r: u32, order: i64) -> Result<Series> {
    if r == 0 {
        return Err(Error::Domain("p_rd needs r >= 1".into()));
    }
    let r = r as i64;
    Ok(eta_quotient(&EtaQuotientSpec::new(&[(2, r), (1, -r)]), order))
}

/// `l4/l1`, partitions with no part divisible by 4.
pub fn regular4(order: i64) -> Series {
    eta_quotient(&EtaQuotientSpec::new(&[(4, 1), (1, -1)]), order)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StreamKind {
    /// `sum (-1)^m q^(m(3m-1)/2)` over all integers m, i.e. `l1`.
    Pentagonal,
    /// `sum (-1)^k (2k+1) q^(k(k+1)/2)`, i.e. `l1^3`.
    TriangularJacobi,
    /// `1 + 2 sum (-1)^k q^(k^2)`, i.e. `phi(-q)`.
    SquarePhi,
    /// `sum q^(k(k+1)/2)`, i.e. `psi(q)`.
    TriangularPsi,
}

impl StreamKind {
    pub const ALL: [StreamKind; 4] = [
        StreamKind::Pentagonal,
        StreamKind::TriangularJacobi,
        StreamKind::SquarePhi,
        StreamKind::TriangularPsi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StreamKind::Pentagonal => "pentagonal",
            StreamKind::TriangularJacobi => "jacobi",
            StreamKind::SquarePhi => "phineg",
            StreamKind::TriangularPsi => "psi",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }

    /// `(exponent, weight)` of the `k`-th term before scaling, `k >= 0`.
    pub fn term(self, k: u64) -> (u64, i64) {
        let sign = if k.is_multiple_of(2) { 1 } else { -1 };
        match self {
            StreamKind::Pentagonal => {
                // 0, 1, 2, 5, 7, ... with signs +, -, -, +, +, ...
                let m = k.div_ceil(2);
                let e = if k % 2 == 1 { m * (3 * m - 1) / 2 } else { m * (3 * m + 1) / 2 };
                (e, if m.is_multiple_of(2) { 1 } else { -1 })
            }
            StreamKind::TriangularJacobi => (k * (k + 1) / 2, sign * (2 * k as i64 + 1)),
            StreamKind::SquarePhi => (k * k, if k == 0 { 1 } else { 2 * sign }),
            StreamKind::TriangularPsi => (k * (k + 1) / 2, 1),
        }
    }
}

/// The weighted stream with every exponent multiplied by `scale`.
pub fn theta_stream(kind: StreamKind, scale: u64, order: i64) -> Result<Series> {
    if scale == 0 {
        return Err(Error::Domain("stream scale must be positive".into()));
    }
    if order <= 0 {
        return Ok(Series::zero(order.max(0)));
    }
    if kind == StreamKind::Pentagonal {
        return Ok(eta(scale, order));
    }
    let mut v = vec![BigInt::zero(); order as usize];
    for k in 0.. {
        let (e, w) = kind.term(k);
        let e = e.saturating_mul(scale);
        if e >= order as u64 {
            break;
        }
        v[e as usize] += w;
    }
    Ok(Series::from_dense(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &Series, n: usize) -> Vec<i64> {
        (0..n as i64).map(|e| i64::try_from(s.coeff(e).unwrap()).unwrap()).collect()
    }

    /// Partitions of `n` into parts <= `max`, as plain lists.
    fn plain_partitions(n: u64, max: u64) -> Vec<Vec<u64>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in (1..=max.min(n)).rev() {
            for mut rest in plain_partitions(n - first, first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }

    #[test]
    fn empty_partition_counts_once() {
        for name in RULESET_NAMES {
            let rs = PartitionRuleSet::named(name).unwrap();
            assert_eq!(count_signed(&rs, 0), BigInt::one(), "{name}");
        }
        assert_eq!(count_signed(&PartitionRuleSet::uniform(1, false, false), -3), BigInt::zero());
    }

    #[test]
    fn p_table_matches_enumeration() {
        let p = p_table(40);
        for n in 0..=25u64 {
            assert_eq!(p[n as usize], BigInt::from(plain_partitions(n, n).len()));
        }
        assert_eq!(p[10], BigInt::from(42));
        assert_eq!(p_classic(-1), BigInt::zero());
    }

    #[test]
    fn ramanujan_congruences() {
        let p = p_table(11 * 150 + 6);
        for n in 0..150 {
            assert!((&p[5 * n + 4] % 5u32).is_zero());
            assert!((&p[7 * n + 5] % 7u32).is_zero());
            assert!((&p[11 * n + 6] % 11u32).is_zero());
        }
    }

    #[test]
    fn dp_agrees_with_enumeration() {
        for name in RULESET_NAMES {
            let rs = PartitionRuleSet::named(name).unwrap();
            let dp = count_dp(&rs, 19);
            for n in 0..19 {
                assert_eq!(dp.coeff(n).unwrap(), count_signed(&rs, n), "{name} n={n}");
            }
        }
    }

    #[test]
    fn small_families() {
        let p1 = PartitionRuleSet::named("thm3.2").unwrap();
        // 2a, 2b and 1+1 at n = 2.
        assert_eq!(ints(&count_dp(&p1, 3), 3), vec![1, 1, 3]);
        let p6 = PartitionRuleSet::named("thm6.1").unwrap();
        assert_eq!(ints(&count_dp(&p6, 2), 2), vec![1, 3]);
        assert_eq!(ints(&overpartition_r(1, 4).unwrap(), 4), vec![1, 2, 4, 8]);
        assert_eq!(ints(&p_rd(2, 4).unwrap(), 4), vec![1, 2, 3, 6]);
        assert_eq!(regular4(5).coeff(4), Some(BigInt::from(4)));
        assert_eq!(ints(&p_r(3, 4).unwrap(), 4), vec![1, 3, 9, 22]);
        assert!(p_r(0, 4).is_err());
    }

    #[test]
    fn mr_closed_form() {
        // 1/l1^-1 = l1: +-1 at generalised pentagonal numbers.
        let s = p_r(-1, 200).unwrap();
        let mut expect = vec![0i64; 200];
        for m in -20i64..=20 {
            let e = m * (3 * m - 1) / 2;
            if (0..200).contains(&e) {
                expect[e as usize] = if m % 2 == 0 { 1 } else { -1 };
            }
        }
        assert_eq!(ints(&s, 200), expect);
    }

    #[test]
    fn mr1_signed_two_colour() {
        // l1^2 = sum over distinct 2-coloured partitions of (-1)^(#parts).
        let s = p_r(-2, 21).unwrap();
        let rs = PartitionRuleSet::uniform(2, true, true);
        for n in 0..=20 {
            assert_eq!(s.coeff(n).unwrap(), count_signed(&rs, n));
        }
    }

    #[test]
    fn listing_is_canonical() {
        let rs = PartitionRuleSet::named("thm3.2").unwrap();
        let mut seen = Vec::new();
        for_each_partition(&rs, 4, |parts, sign| seen.push((parts.to_vec(), sign)));
        // 4; 3+1; 2a+2a; 2a+2b; 2b+2b; 2+1+1 (two colours); 1+1+1+1
        assert_eq!(seen.len(), 8);
        assert!(seen.iter().any(|(p, s)| p.len() == 1 && *s == -1));
        for (parts, _) in &seen {
            assert!(parts.windows(2).all(|w| w[0] >= w[1]));
            assert_eq!(parts.iter().map(|p| p.value).sum::<u64>(), 4);
        }
    }

    #[test]
    fn ruleset_validation() {
        assert!(PartitionRuleSet::new(2, vec![ResidueRule::plain(0, 1)]).is_err());
        assert!(PartitionRuleSet::new(2, vec![ResidueRule::plain(0, 1), ResidueRule::plain(0, 1)]).is_err());
        assert!(PartitionRuleSet::new(1, vec![ResidueRule::plain(3, 1)]).is_err());
        assert!(matches!(PartitionRuleSet::named("nope"), Err(Error::UnknownRuleset(_))));
        let d = PartitionRuleSet::named("thm3.2").unwrap().describe();
        assert_eq!(d, "mod 4: 0 distinct signed x1, 1 x1, 2 x2, 3 x1");
    }

    #[test]
    fn streams() {
        let j = theta_stream(StreamKind::TriangularJacobi, 3, 19).unwrap();
        assert_eq!(j.coeff(0), Some(BigInt::from(1)));
        assert_eq!(j.coeff(3), Some(BigInt::from(-3)));
        assert_eq!(j.coeff(9), Some(BigInt::from(5)));
        assert_eq!(j.coeff(18), Some(BigInt::from(-7)));
        assert_eq!(theta_stream(StreamKind::Pentagonal, 1, 100).unwrap(), eta(1, 100));
        let phi = theta_stream(StreamKind::SquarePhi, 1, 300).unwrap();
        let l1 = eta(1, 300);
        assert_eq!(phi.mul(&eta(2, 300)), l1.mul(&l1));
        let psi = theta_stream(StreamKind::TriangularPsi, 1, 300).unwrap();
        assert_eq!(psi.mul(&l1), eta(2, 300).mul(&eta(2, 300)));
        for kind in StreamKind::ALL {
            assert_eq!(StreamKind::from_name(kind.name()), Some(kind));
        }
    }

    #[test]
    fn pentagonal_terms_in_order() {
        let ex: Vec<_> = (0..7).map(|k| StreamKind::Pentagonal.term(k)).collect();
        assert_eq!(ex, vec![(0, 1), (1, -1), (2, -1), (5, 1), (7, 1), (12, -1), (15, -1)]);
    }
}
