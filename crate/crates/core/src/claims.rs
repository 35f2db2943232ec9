//! Declarative claims and the engine that checks them.
//!
//! Every claim reduces to finitely many exact coefficient comparisons:
//!
//! - an identity compares two expressions to a common order,
//! - a congruence checks `[q^(A n + B)] e ≡ 0 (mod M)` for `n < count`,
//! - a family expands into one congruence per progression,
//! - a recurrence compares two expressions and, independently, two nested sums,
//! - an interpretation compares coefficients against a partition counter.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::expr::{parse_expr, Evaluator, Expr};
use crate::mocktheta::{mock_series, MockThetaId};
use crate::ntheory::{family_indices, Family};
use crate::partitions::{count_dp, count_signed, PartitionRuleSet};
use crate::series::Series;

/// Largest series order a claim may request before it is refused.
pub const ORDER_LIMIT: i64 = 20_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Claim {
    pub id: String,
    pub cite: String,
    pub kind: ClaimKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClaimKind {
    Identity {
        lhs: Expr,
        rhs: Expr,
        order: i64,
    },
    Congruence {
        expr: Expr,
        a: u64,
        b: u64,
        modulus: u64,
        count: u64,
    },
    Family {
        family: Family,
        p: u64,
        alpha: u32,
        count: u64,
    },
    Recurrence {
        lhs: Expr,
        rhs: Expr,
        order: i64,
        direct: Option<DirectRecurrence>,
    },
    /// `[q^(A n + B)] expr` against the signed count of `ruleset`.
    Interpretation {
        expr: Expr,
        a: u64,
        b: u64,
        ruleset: String,
        /// Checked against the generating-function counter for `n <= bound`.
        bound: u64,
        /// Checked against exhaustive enumeration for `n <= enum_bound`.
        enum_bound: u64,
    },
}

impl ClaimKind {
    pub fn name(&self) -> &'static str {
        match self {
            ClaimKind::Identity { .. } => "identity",
            ClaimKind::Congruence { .. } => "congruence",
            ClaimKind::Family { .. } => "family",
            ClaimKind::Recurrence { .. } => "recurrence",
            ClaimKind::Interpretation { .. } => "interpretation",
        }
    }
}

/// Integer sequences that appear inside nested sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sequence {
    Mock(MockThetaId),
    /// Partitions with no part divisible by 4.
    Regular4,
    /// Partitions into distinct parts, `r` colours.
    DistinctColored(u32),
    /// Overpartitions, `r` colours.
    Overpartition(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VarRange {
    /// `0, 1, 2, ...`
    NonNegative,
    /// `1, 2, 3, ...`
    Positive,
    /// All integers.
    Bilateral,
}

/// A summation index `v` with optional weights `(-1)^v` and `2v + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IndexVar {
    pub range: VarRange,
    pub alternating: bool,
    pub odd_weight: bool,
}

impl IndexVar {
    pub const fn new(range: VarRange, alternating: bool, odd_weight: bool) -> Self {
        IndexVar { range, alternating, odd_weight }
    }
}

/// `seq((n_coeff n + offset - sum_i (sq_i v_i^2 + lin_i v_i)) / denom)`.
/// Negative or non-integral arguments contribute 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeqArg {
    pub seq: Sequence,
    pub n_coeff: i64,
    pub offset: i64,
    /// `(variable index, sq, lin)`
    pub quad: Vec<(usize, i64, i64)>,
    pub denom: i64,
}

impl SeqArg {
    pub fn new(seq: Sequence, n_coeff: i64, offset: i64, quad: &[(usize, i64, i64)], denom: i64) -> Self {
        SeqArg { seq, n_coeff, offset, quad: quad.to_vec(), denom }
    }

    fn g(&self, var: usize, v: i64) -> i64 {
        self.quad
            .iter()
            .filter(|(i, _, _)| *i == var)
            .map(|&(_, sq, lin)| sq * v * v + lin * v)
            .sum()
    }

    fn coeffs(&self, var: usize) -> (i64, i64) {
        self.quad
            .iter()
            .filter(|(i, _, _)| *i == var)
            .fold((0, 0), |(s, l), &(_, sq, lin)| (s + sq, l + lin))
    }
}

/// `coeff * sum_vars prod(weights) prod(factors)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NestedSum {
    pub coeff: i64,
    pub vars: Vec<IndexVar>,
    pub factors: Vec<SeqArg>,
}

/// Both sides of a recurrence as literal nested sums, checked for `n <= bound`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DirectRecurrence {
    pub lhs: Vec<NestedSum>,
    pub rhs: Vec<NestedSum>,
    pub bound: u64,
}

/// Cap on summation steps per coefficient, a guard against non-terminating sums.
const NESTED_STEP_LIMIT: u64 = 50_000_000;

struct Tables(Vec<(Sequence, Vec<BigInt>)>);

impl Tables {
    /// Every table covers the largest argument any factor can reach without
    /// help from the summation indices; lookups beyond that are errors.
    fn build(sums: &[&NestedSum], bound: u64) -> Tables {
        let factors = || sums.iter().flat_map(|s| &s.factors);
        let top = factors()
            .map(|f| (f.n_coeff * bound as i64 + f.offset).max(0) / f.denom.max(1) + 1)
            .max()
            .unwrap_or(1);
        let mut seqs: Vec<Sequence> = Vec::new();
        for f in factors() {
            if !seqs.contains(&f.seq) {
                seqs.push(f.seq);
            }
        }
        Tables(seqs.into_iter().map(|seq| (seq, sequence_values(seq, top))).collect())
    }

    fn get(&self, seq: Sequence, k: i64) -> Result<BigInt> {
        let (_, v) = self.0.iter().find(|(q, _)| *q == seq).expect("table built for every sequence");
        v.get(k as usize)
            .cloned()
            .ok_or_else(|| Error::Domain(format!("nested sum reaches {seq:?} at {k}, beyond its table")))
    }
}

/// Values `0..len` of a sequence, computed from counters rather than eta
/// quotients so the nested-sum route stays independent of the series route.
fn sequence_values(seq: Sequence, len: i64) -> Vec<BigInt> {
    let dense = match seq {
        Sequence::Mock(id) => mock_series(id, len),
        Sequence::Regular4 => count_dp(&PartitionRuleSet::named("regular4").expect("built in"), len),
        Sequence::DistinctColored(r) => count_dp(&PartitionRuleSet::uniform(r, true, false), len),
        Sequence::Overpartition(r) => {
            let distinct = count_dp(&PartitionRuleSet::uniform(r, true, false), len);
            let plain = count_dp(&PartitionRuleSet::uniform(r, false, false), len);
            distinct.mul(&plain)
        }
    };
    dense.to_dense()
}

impl NestedSum {
    pub fn new(coeff: i64, vars: &[IndexVar], factors: Vec<SeqArg>) -> Self {
        NestedSum { coeff, vars: vars.to_vec(), factors }
    }

    /// Whether `g(v) = sq v^2 + lin v` is never negative on the variable's range.
    fn never_adds(&self, f: &SeqArg, var: usize) -> bool {
        let (sq, lin) = f.coeffs(var);
        let forward = sq >= 0 && sq + lin >= 0;
        match self.vars[var].range {
            VarRange::NonNegative | VarRange::Positive => forward,
            VarRange::Bilateral => forward && sq - lin >= 0,
        }
    }

    /// True when no further value of variable `i` in direction `step` can
    /// give a nonzero term: some factor is already negative, will only fall
    /// as `v` moves on, and cannot be raised by the variables still unset.
    fn exhausted(&self, i: usize, v: i64, step: i64, n: i64, vals: &[i64]) -> bool {
        self.factors.iter().any(|f| {
            let mut num = f.n_coeff * n + f.offset;
            for (j, &vj) in vals.iter().enumerate().take(i + 1) {
                num -= f.g(j, vj);
            }
            if num >= 0 {
                return false;
            }
            let (sq, _) = f.coeffs(i);
            let outward = sq >= 0 && f.g(i, v + step) >= f.g(i, v);
            outward && (i + 1..self.vars.len()).all(|j| self.never_adds(f, j))
        })
    }

    fn term(&self, n: i64, vals: &[i64], tables: &Tables) -> Result<BigInt> {
        let mut w = BigInt::from(self.coeff);
        for (var, &v) in self.vars.iter().zip(vals) {
            if var.alternating && v % 2 != 0 {
                w = -w;
            }
            if var.odd_weight {
                w *= 2 * v + 1;
            }
        }
        for f in &self.factors {
            let mut num = f.n_coeff * n + f.offset;
            for (j, &vj) in vals.iter().enumerate() {
                num -= f.g(j, vj);
            }
            if num < 0 || num % f.denom != 0 {
                return Ok(BigInt::zero());
            }
            let x = tables.get(f.seq, num / f.denom)?;
            if x.is_zero() {
                return Ok(x);
            }
            w *= x;
        }
        Ok(w)
    }

    fn walk(&self, i: usize, n: i64, vals: &mut Vec<i64>, tables: &Tables, acc: &mut BigInt, steps: &mut u64) -> Result<()> {
        if i == self.vars.len() {
            *acc += self.term(n, vals, tables)?;
            return Ok(());
        }
        let runs: &[(i64, i64)] = match self.vars[i].range {
            VarRange::NonNegative => &[(0, 1)],
            VarRange::Positive => &[(1, 1)],
            VarRange::Bilateral => &[(0, 1), (-1, -1)],
        };
        for &(start, step) in runs {
            let mut v = start;
            loop {
                vals.push(v);
                let done = self.exhausted(i, v, step, n, vals);
                if !done {
                    self.walk(i + 1, n, vals, tables, acc, steps)?;
                }
                vals.pop();
                if done {
                    break;
                }
                *steps += 1;
                if *steps > NESTED_STEP_LIMIT {
                    return Err(Error::Domain("nested sum does not terminate".into()));
                }
                v += step;
            }
        }
        Ok(())
    }

    fn eval_at(&self, n: i64, tables: &Tables) -> Result<BigInt> {
        let mut acc = BigInt::zero();
        let mut steps = 0;
        self.walk(0, n, &mut Vec::new(), tables, &mut acc, &mut steps)?;
        Ok(acc)
    }
}

impl DirectRecurrence {
    /// Values of both sides for `n = 0..=bound`.
    pub fn evaluate(&self, bound: u64) -> Result<(Vec<BigInt>, Vec<BigInt>)> {
        let all: Vec<&NestedSum> = self.lhs.iter().chain(&self.rhs).collect();
        let tables = Tables::build(&all, bound);
        let side = |sums: &[NestedSum]| -> Result<Vec<BigInt>> {
            (0..=bound as i64)
                .map(|n| sums.iter().try_fold(BigInt::zero(), |acc, s| Ok(acc + s.eval_at(n, &tables)?)))
                .collect()
        };
        Ok((side(&self.lhs)?, side(&self.rhs)?))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

/// First index where the two sides disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub n: i64,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub id: String,
    pub status: Status,
    pub order: i64,
    pub first_failure: Option<Failure>,
    /// Why a claim was skipped, or what went wrong.
    pub message: Option<String>,
    /// Filled in by callers that time the run.
    pub elapsed_ms: u64,
}

impl VerificationReport {
    fn new(id: &str, status: Status, order: i64) -> Self {
        VerificationReport {
            id: id.to_string(),
            status,
            order,
            first_failure: None,
            message: None,
            elapsed_ms: 0,
        }
    }

    fn failed(id: &str, order: i64, failure: Failure, message: impl Into<String>) -> Self {
        VerificationReport {
            first_failure: Some(failure),
            message: Some(message.into()),
            ..Self::new(id, Status::Fail, order)
        }
    }

    fn with_message(mut self, message: impl Into<String>) -> Self {
        self.message = Some(message.into());
        self
    }
}

/// Replacements for a claim's default order or count.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Overrides {
    pub order: Option<i64>,
    pub count: Option<u64>,
}

pub fn verify(claim: &Claim, overrides: Overrides) -> VerificationReport {
    verify_with(&mut Evaluator::new(), claim, overrides)
}

/// As [`verify`], sharing the evaluator's mock theta cache.
pub fn verify_with(ev: &mut Evaluator, claim: &Claim, overrides: Overrides) -> VerificationReport {
    match check(ev, claim, overrides) {
        Ok(report) => report,
        Err(e @ (Error::Precondition(_) | Error::TooExpensive { .. })) => {
            VerificationReport::new(&claim.id, Status::Skipped, 0).with_message(e.to_string())
        }
        Err(e) => VerificationReport::new(&claim.id, Status::Fail, 0).with_message(e.to_string()),
    }
}

fn guard(order: i64) -> Result<()> {
    if order > ORDER_LIMIT {
        return Err(Error::TooExpensive { requested: order, limit: ORDER_LIMIT });
    }
    Ok(())
}

fn compare(id: &str, a: &Series, b: &Series) -> VerificationReport {
    let order = a.order().min(b.order());
    match a.first_difference(b) {
        None => VerificationReport::new(id, Status::Pass, order),
        Some(n) => VerificationReport::failed(
            id,
            order,
            Failure {
                n,
                lhs: a.coeff(n).unwrap_or_default(),
                rhs: b.coeff(n).unwrap_or_default(),
            },
            format!("sides differ at q^{n}"),
        ),
    }
}

/// First `n < count` with `[q^(a n + b)] s` not divisible by `m`.
fn progression_failure(s: &Series, a: u64, b: u64, m: u64, count: u64) -> Option<Failure> {
    let m = BigInt::from(m);
    (0..count).find_map(|n| {
        let c = s.coeff((a * n + b) as i64).unwrap_or_default();
        (!(&c % &m).is_zero()).then(|| Failure {
            n: n as i64,
            lhs: c,
            rhs: BigInt::zero(),
        })
    })
}

fn check(ev: &mut Evaluator, claim: &Claim, ov: Overrides) -> Result<VerificationReport> {
    let id = claim.id.as_str();
    match &claim.kind {
        ClaimKind::Identity { lhs, rhs, order } => {
            let order = ov.order.unwrap_or(*order);
            guard(order)?;
            let a = ev.eval(lhs, order)?;
            let b = ev.eval(rhs, order)?;
            Ok(compare(id, &a, &b))
        }
        ClaimKind::Congruence { expr, a, b, modulus, count } => {
            let count = ov.count.unwrap_or(*count);
            let order = (a * count.max(1) + b) as i64;
            guard(order)?;
            let s = ev.eval(expr, order)?;
            Ok(match progression_failure(&s, *a, *b, *modulus, count) {
                None => VerificationReport::new(id, Status::Pass, order),
                Some(f) => {
                    let msg = format!("coefficient at {a} n + {b} not divisible by {modulus}");
                    VerificationReport::failed(id, order, f, msg)
                }
            })
        }
        ClaimKind::Family { family, p, alpha, count } => {
            let count = ov.count.unwrap_or(*count);
            let indices = family_indices(*family, *p, *alpha)?;
            let order = indices
                .iter()
                .map(|ix| (ix.a * count.max(1) + ix.b) as i64)
                .max()
                .unwrap_or(0);
            guard(order)?;
            let s = ev.eval(&Expr::mock(family.mock()), order)?;
            for ix in &indices {
                if let Some(f) = progression_failure(&s, ix.a, ix.b, ix.modulus, count) {
                    let msg = format!(
                        "j = {}: coefficient at {} n + {} not divisible by {}",
                        ix.j, ix.a, ix.b, ix.modulus
                    );
                    return Ok(VerificationReport::failed(id, order, f, msg));
                }
            }
            Ok(VerificationReport::new(id, Status::Pass, order))
        }
        ClaimKind::Recurrence { lhs, rhs, order, direct } => {
            let order = ov.order.unwrap_or(*order);
            guard(order)?;
            let a = ev.eval(lhs, order)?;
            let b = ev.eval(rhs, order)?;
            let series = compare(id, &a, &b);
            if series.status == Status::Fail {
                return Ok(series.with_message("series route: sides differ"));
            }
            let Some(direct) = direct else { return Ok(series) };
            let bound = direct.bound.min((order - 1).max(0) as u64);
            let (dl, dr) = direct.evaluate(bound)?;
            for n in 0..=bound as usize {
                if dl[n] != dr[n] {
                    let f = Failure { n: n as i64, lhs: dl[n].clone(), rhs: dr[n].clone() };
                    return Ok(VerificationReport::failed(id, order, f, "nested sums differ"));
                }
                let sc = a.coeff(n as i64).unwrap_or_default();
                if dl[n] != sc {
                    let f = Failure { n: n as i64, lhs: dl[n].clone(), rhs: sc };
                    return Ok(VerificationReport::failed(id, order, f, "nested sum disagrees with series route"));
                }
            }
            Ok(series)
        }
        ClaimKind::Interpretation { expr, a, b, ruleset, bound, enum_bound } => {
            let rs = PartitionRuleSet::named(ruleset)?;
            let bound = ov.order.map_or(*bound, |o| (o.max(1) - 1) as u64);
            let order = (a * bound + b + 1) as i64;
            guard(order)?;
            let s = ev.eval(expr, order)?;
            let dp = count_dp(&rs, bound as i64 + 1);
            for n in 0..=bound {
                let c = s.coeff((a * n + b) as i64).unwrap_or_default();
                let d = dp.coeff(n as i64).unwrap_or_default();
                if c != d {
                    let f = Failure { n: n as i64, lhs: c, rhs: d };
                    return Ok(VerificationReport::failed(id, order, f, "coefficient differs from signed count"));
                }
                if n <= *enum_bound {
                    let e = count_signed(&rs, n as i64);
                    if e != d {
                        let f = Failure { n: n as i64, lhs: c, rhs: e };
                        return Ok(VerificationReport::failed(id, order, f, "enumeration differs from generating function"));
                    }
                }
            }
            Ok(VerificationReport::new(id, Status::Pass, (bound + 1) as i64))
        }
    }
}

// ---------------------------------------------------------------------------
// Registry

fn ex(text: &str) -> Expr {
    parse_expr(text).unwrap_or_else(|e| panic!("registry expression `{text}`: {e}"))
}

fn claim(id: &str, cite: &str, kind: ClaimKind) -> Claim {
    Claim { id: id.into(), cite: cite.into(), kind }
}

fn identity(id: &str, cite: &str, lhs: &str, rhs: &str, order: i64) -> Claim {
    claim(id, cite, ClaimKind::Identity { lhs: ex(lhs), rhs: ex(rhs), order })
}

fn congruence(id: &str, cite: &str, expr: &str, (a, b, modulus): (u64, u64, u64), count: u64) -> Claim {
    claim(id, cite, ClaimKind::Congruence { expr: ex(expr), a, b, modulus, count })
}

fn family(id: &str, cite: &str, family: Family, p: u64, alpha: u32, count: u64) -> Claim {
    claim(id, cite, ClaimKind::Family { family, p, alpha, count })
}

fn interpretation(id: &str, cite: &str, expr: &str, (a, b): (u64, u64), ruleset: &str) -> Claim {
    claim(
        id,
        cite,
        ClaimKind::Interpretation {
            expr: ex(expr),
            a,
            b,
            ruleset: ruleset.into(),
            bound: 200,
            enum_bound: 25,
        },
    )
}

fn recurrence(id: &str, cite: &str, lhs: &str, rhs: &str, direct: DirectRecurrence) -> Claim {
    claim(
        id,
        cite,
        ClaimKind::Recurrence { lhs: ex(lhs), rhs: ex(rhs), order: 300, direct: Some(direct) },
    )
}

/// The distinguished term of each p-dissection, as an expression.
fn dissection_tail(kind: &str, p: u64) -> (String, u64) {
    let p2 = p * p;
    match kind {
        "psi" => (format!("q^{}*psi(q^{p2})", (p2 - 1) / 8), (p2 - 1) / 8),
        "l1" => {
            let t = crate::qproducts::pentagonal_excluded_index(p);
            let sign = if t % 2 == 0 { "" } else { "-" };
            (format!("{sign}q^{}*l({p2})", (p2 - 1) / 24), (p2 - 1) / 24)
        }
        _ => {
            let sign = if ((p - 1) / 2).is_multiple_of(2) { "" } else { "-" };
            (format!("{sign}{p}*q^{}*l({p2})^3", (p2 - 1) / 8), (p2 - 1) / 8)
        }
    }
}

fn lemma_claims(out: &mut Vec<Claim>) {
    let lemmas = [
        ("lemma2.1", "Lemma 2.1", "psi", "psi(q)", &[3u64, 5, 7][..]),
        ("lemma2.2", "Lemma 2.2", "l1", "l(1)", &[5, 7, 11][..]),
        ("lemma2.3", "Lemma 2.3", "l1cube", "l(1)^3", &[3, 5, 7][..]),
    ];
    for (id, cite, kind, lhs, primes) in lemmas {
        for &p in primes {
            out.push(identity(&format!("{id}.p{p}"), cite, lhs, &format!("dissect({kind}, {p})"), 300));
            // Only the distinguished term reaches its residue class.
            let (tail, shift) = dissection_tail(kind, p);
            out.push(identity(
                &format!("{id}.p{p}.residue"),
                cite,
                &format!("AP({lhs}, {p}, {})", shift % p),
                &format!("AP({tail}, {p}, {})", shift % p),
                100,
            ));
        }
    }
}

use IndexVar as V;
use Sequence as S;
use VarRange::{Bilateral, NonNegative, Positive};

const PLAIN: V = V::new(NonNegative, false, false);
const SIGNED_ODD: V = V::new(NonNegative, true, true);
const SIGNED_BILATERAL: V = V::new(Bilateral, true, false);
const SIGNED_POSITIVE: V = V::new(Positive, true, false);

fn direct(lhs: Vec<NestedSum>, rhs: Vec<NestedSum>) -> DirectRecurrence {
    DirectRecurrence { lhs, rhs, bound: 60 }
}

fn single(seq: Sequence, n_coeff: i64, offset: i64) -> NestedSum {
    NestedSum::new(1, &[], vec![SeqArg::new(seq, n_coeff, offset, &[], 1)])
}

fn recurrence_claims(out: &mut Vec<Claim>) {
    use MockThetaId::{Beta, Lambda, Sigma, V as Pv};
    // P_v(2n+1) = sum_k A_4(n - k(k+1))
    out.push(recurrence(
        "thm3.4",
        "Theorem 3.4",
        "AP(mock(v), 2, 1)",
        "l(4)/l(1)*stream(psi, 2)",
        direct(
            vec![single(S::Mock(Pv), 2, 1)],
            vec![NestedSum::new(1, &[PLAIN], vec![SeqArg::new(S::Regular4, 1, 0, &[(0, 1, 1)], 1)])],
        ),
    ));
    // sum_m (-1)^m P_v(6n - 9m^2 - 3m + 5)
    //   = 3 sum_t sum_c (-1)^t (2t+1) p_2d(n - 3t^2 - 3t - 2c) pbar(c)
    out.push(recurrence(
        "thm3.5",
        "Theorem 3.5",
        "AP(mock(v), 6, 5)*stream(pentagonal, 1)",
        "3*SUB(l(2)/l(1)^2, 2)*(l(2)/l(1))^2*stream(jacobi, 6)",
        direct(
            vec![NestedSum::new(
                1,
                &[SIGNED_BILATERAL],
                vec![SeqArg::new(S::Mock(Pv), 6, 5, &[(0, 9, 3)], 1)],
            )],
            vec![NestedSum::new(
                3,
                &[SIGNED_ODD, PLAIN],
                vec![
                    SeqArg::new(S::DistinctColored(2), 1, 0, &[(0, 3, 3), (1, 0, 2)], 1),
                    SeqArg::new(S::Overpartition(1), 0, 0, &[(1, 0, -1)], 1),
                ],
            )],
        ),
    ));
    // P_sigma(2n+1) = sum_k p_2d(n - (3k^2+3k)/2)
    out.push(recurrence(
        "thm4.4",
        "Theorem 4.4",
        "AP(mock(sigma), 2, 1)",
        "(l(2)/l(1))^2*stream(psi, 3)",
        direct(
            vec![single(S::Mock(Sigma), 2, 1)],
            vec![NestedSum::new(
                1,
                &[PLAIN],
                vec![SeqArg::new(S::DistinctColored(2), 2, 0, &[(0, 3, 3)], 2)],
            )],
        ),
    ));
    // sum_k P_beta(3n - 3k(k+1)/2 + 2) = 2 sum_m (-1)^m (2m+1) pbar(n - 3m(m+1))
    out.push(recurrence(
        "thm5.4",
        "Theorem 5.4",
        "AP(mock(beta), 3, 2)*stream(psi, 1)",
        "2*(l(2)/l(1)^2)*stream(jacobi, 6)",
        direct(
            vec![NestedSum::new(1, &[PLAIN], vec![SeqArg::new(S::Mock(Beta), 6, 4, &[(0, 3, 3)], 2)])],
            vec![NestedSum::new(
                2,
                &[SIGNED_ODD],
                vec![SeqArg::new(S::Overpartition(1), 1, 0, &[(0, 3, 3)], 1)],
            )],
        ),
    ));
    // sum_m (-1)^m (2m+1) P_beta(9(n - m^2 - m) + 8)
    //   = 6 sum_k sum_l (-1)^(k+l) (2k+1)(2l+1) pbar_2(n - (3k^2+3k)/2 - 3l^2 - 3l)
    out.push(recurrence(
        "thm5.5",
        "Theorem 5.5",
        "AP(mock(beta), 9, 8)*stream(jacobi, 2)",
        "6*(l(2)/l(1)^2)^2*stream(jacobi, 3)*stream(jacobi, 6)",
        direct(
            vec![NestedSum::new(
                1,
                &[SIGNED_ODD],
                vec![SeqArg::new(S::Mock(Beta), 9, 8, &[(0, 9, 9)], 1)],
            )],
            vec![NestedSum::new(
                6,
                &[SIGNED_ODD, SIGNED_ODD],
                vec![SeqArg::new(S::Overpartition(2), 2, 0, &[(0, 3, 3), (1, 6, 6)], 2)],
            )],
        ),
    ));
    // sum_m (-1)^m P_beta(3n - 9m^2 - 3m + 1) = sum_k (-1)^k (2k+1) pbar(n - 3k(k+1)/2)
    out.push(recurrence(
        "thm5.6",
        "Theorem 5.6",
        "AP(mock(beta), 3, 1)*stream(pentagonal, 2)",
        "(l(2)/l(1)^2)*stream(jacobi, 3)",
        direct(
            vec![NestedSum::new(
                1,
                &[SIGNED_BILATERAL],
                vec![SeqArg::new(S::Mock(Beta), 3, 1, &[(0, 9, 3)], 1)],
            )],
            vec![NestedSum::new(
                1,
                &[SIGNED_ODD],
                vec![SeqArg::new(S::Overpartition(1), 2, 0, &[(0, 3, 3)], 2)],
            )],
        ),
    ));
    // P_lambda(2n) = sum_k (-1)^k p_3d(n - 3k^2), k over all integers
    out.push(recurrence(
        "thm6.2",
        "Theorem 6.2",
        "AP(mock(lambda), 2, 0)",
        "(l(2)/l(1))^3*stream(phineg, 3)",
        direct(
            vec![single(S::Mock(Lambda), 2, 0)],
            vec![NestedSum::new(
                1,
                &[SIGNED_BILATERAL],
                vec![SeqArg::new(S::DistinctColored(3), 1, 0, &[(0, 3, 0)], 1)],
            )],
        ),
    ));
    // P_lambda(6n+2) = 3 sum_l (-1)^l (2l+1) pbar_3(n - 3l(l+1)/2)
    //   + 6 sum_l sum_{k>=1} (-1)^(l+k) (2l+1) pbar_3(n - 3k^2 - 3l(l+1)/2)
    out.push(recurrence(
        "thm6.3",
        "Theorem 6.3",
        "AP(mock(lambda), 6, 2)",
        "3*(l(2)/l(1)^2)^3*stream(phineg, 3)*stream(jacobi, 3)",
        direct(
            vec![single(S::Mock(Lambda), 6, 2)],
            vec![
                NestedSum::new(
                    3,
                    &[SIGNED_ODD],
                    vec![SeqArg::new(S::Overpartition(3), 2, 0, &[(0, 3, 3)], 2)],
                ),
                NestedSum::new(
                    6,
                    &[SIGNED_ODD, SIGNED_POSITIVE],
                    vec![SeqArg::new(S::Overpartition(3), 2, 0, &[(0, 3, 3), (1, 6, 0)], 2)],
                ),
            ],
        ),
    ));
    // sum_m (-1)^m (2m+1) P_lambda(6n - 3m(m+1) + 4)
    //   = 6 sum_l (-1)^l (2l+1) p_2d(n - 3l(l+1))
    //   + 12 sum_l sum_{k>=1} (-1)^(l+k) (2l+1) p_2d(n - 3k^2 - 3l(l+1))
    out.push(recurrence(
        "thm6.4",
        "Theorem 6.4",
        "AP(mock(lambda), 6, 4)*stream(jacobi, 1)",
        "6*(l(2)/l(1))^2*stream(phineg, 3)*stream(jacobi, 6)",
        direct(
            vec![NestedSum::new(
                1,
                &[SIGNED_ODD],
                vec![SeqArg::new(S::Mock(Lambda), 6, 4, &[(0, 3, 3)], 1)],
            )],
            vec![
                NestedSum::new(
                    6,
                    &[SIGNED_ODD],
                    vec![SeqArg::new(S::DistinctColored(2), 1, 0, &[(0, 3, 3)], 1)],
                ),
                NestedSum::new(
                    12,
                    &[SIGNED_ODD, SIGNED_POSITIVE],
                    vec![SeqArg::new(S::DistinctColored(2), 1, 0, &[(0, 3, 3), (1, 3, 0)], 1)],
                ),
            ],
        ),
    ));
}

/// The built-in claims, sorted by id.
pub fn registry() -> Vec<Claim> {
    let mut out = vec![
        // Classical facts used as sanity checks.
        congruence("ramanujan.p5", "Ramanujan's congruence p(5n+4)", "l(1)^-1", (5, 4, 5), 150),
        congruence("ramanujan.p7", "Ramanujan's congruence p(7n+5)", "l(1)^-1", (7, 5, 7), 150),
        congruence("ramanujan.p11", "Ramanujan's congruence p(11n+6)", "l(1)^-1", (11, 6, 11), 150),
        // Theta functions and their product forms.
        identity("phi.product", "phi(q) product form", "phi(q)", "l(2)^5/(l(1)^2*l(4)^2)", 400),
        identity("psi.product", "psi(q) product form", "psi(q)", "l(2)^2/l(1)", 400),
        identity("fneg.product", "f(-q) product form", "f(-q, -q^2)", "l(1)", 400),
        identity("phineg.product", "phi(-q) product form", "phi(-q)", "l(1)^2/l(2)", 400),
        identity("jacobi.cube", "Jacobi's identity", "stream(jacobi, 1)", "l(1)^3", 500),
        identity("triple.phi", "Jacobi triple product", "f(q, q)", "poch(-q, q^2)^2*poch(q^2, q^2)", 400),
        identity(
            "triple.psi",
            "Jacobi triple product",
            "f(q, q^3)",
            "poch(-q, q^4)*poch(-q^3, q^4)*poch(q^4, q^4)",
            400,
        ),
        identity(
            "triple.fneg",
            "Jacobi triple product",
            "f(-q, -q^2)",
            "poch(q, q^3)*poch(q^2, q^3)*poch(q^3, q^3)",
            400,
        ),
        identity(
            "triple.f15",
            "Jacobi triple product",
            "f(q, q^5)",
            "poch(-q, q^6)*poch(-q^5, q^6)*poch(q^6, q^6)",
            400,
        ),
        // 3-dissections.
        identity(
            "lemma2.4a",
            "Lemma 2.4",
            "l(2)/l(1)^2",
            "l(6)^4*l(9)^6/(l(3)^8*l(18)^3) + 2*q*l(6)^3*l(9)^3/l(3)^7 + 4*q^2*l(6)^2*l(18)^3/l(3)^6",
            500,
        ),
        identity(
            "lemma2.4b",
            "Lemma 2.4",
            "1/(l(1)*l(2))",
            "l(9)^9/(l(3)^6*l(6)^2*l(18)^3) + q*l(9)^6/(l(3)^5*l(6)^3) + 3*q^2*l(9)^3*l(18)^3/(l(3)^4*l(6)^4) \
             - 2*q^3*l(18)^6/(l(3)^3*l(6)^5) + 4*q^4*l(18)^9/(l(3)^2*l(6)^6*l(9)^3)",
            500,
        ),
        identity(
            "lemma2.4c",
            "Lemma 2.4",
            "l(4)/l(1)",
            "l(12)*l(18)^4/(l(3)^3*l(36)^2) + q*l(6)^2*l(9)^3*l(36)/(l(3)^4*l(18)^2) + 2*q^2*l(6)*l(18)*l(36)/l(3)^3",
            500,
        ),
        // Binomial-theorem congruences.
        congruence("binom.n1t1p3", "binomial congruence l_n^(tp) = l_(np)^t mod p", "l(1)^3 - l(3)", (1, 0, 3), 200),
        congruence("binom.n2t1p5", "binomial congruence l_n^(tp) = l_(np)^t mod p", "l(2)^5 - l(10)", (1, 0, 5), 200),
        congruence("binom.n1t2p3", "binomial congruence l_n^(tp) = l_(np)^t mod p", "l(1)^6 - l(3)^2", (1, 0, 3), 200),
        congruence("binom.n3t1p2", "binomial congruence l_n^(tp) = l_(np)^t mod p", "l(3)^2 - l(6)", (1, 0, 2), 200),
        congruence("binom.pow2.t1", "binomial congruence l_1^(2^t) = l_2^(2^(t-1)) mod 2^t", "l(1)^2 - l(2)", (1, 0, 2), 200),
        congruence("binom.pow2.t2", "binomial congruence l_1^(2^t) = l_2^(2^(t-1)) mod 2^t", "l(1)^4 - l(2)^2", (1, 0, 4), 200),
        congruence("binom.pow2.t3", "binomial congruence l_1^(2^t) = l_2^(2^(t-1)) mod 2^t", "l(1)^8 - l(2)^4", (1, 0, 8), 200),
        // v(q)
        identity("thm3.1", "Theorem 3.1", "AP(mock(v), 2, 1)", "l(4)^3/(l(1)*l(2))", 500),
        identity(
            "eq3.2",
            "Theorem 3.1, proof: mu(-q^2) + 4v(q)",
            "mock(mu, -q^2) + 4*mock(v)",
            "poch(q^4, q^4)*poch(-q^2, q^4)^3/(poch(q^2, q^4)^2*poch(-q^4, q^4)^2) \
             + 4*q*poch(q^8, q^8)*poch(-q^4, q^4)/(poch(q^4, q^8)*poch(q^2, q^4))",
            400,
        ),
        identity(
            "v.2n+1.dissection",
            "Theorem 3.3, proof of (i): 3-dissection of P_v(2n+1)",
            "AP(mock(v), 2, 1)",
            "l(12)^2*l(18)^6/(l(3)^3*l(6)*l(36)^3) + q*l(12)*l(6)*l(9)^3/l(3)^4 + 3*q^2*l(12)*l(18)^3/l(3)^3 \
             + q^3*l(6)^2*l(9)^3*l(36)^3/(l(3)^4*l(18)^3) + 2*q^4*l(6)*l(36)^3/l(3)^3",
            400,
        ),
        identity(
            "v.6n+5",
            "Theorem 3.3, proof of (i): P_v(6n+5)",
            "AP(mock(v), 6, 5)",
            "3*l(4)*l(6)^3/l(1)^3",
            300,
        ),
        interpretation("thm3.2", "Theorem 3.2", "mock(v)", (2, 1), "thm3.2"),
        identity("thm3.2.gf", "Theorem 3.2, proof", "rules(thm3.2)", "l(4)^3/(l(1)*l(2))", 300),
        congruence("thm3.3i", "Theorem 3.3 (i)", "mock(v)", (6, 5, 3), 150),
        congruence(
            "thm3.3ii.base",
            "Theorem 3.3 (ii), alpha = 0",
            "AP(mock(v), 2, 1) - psi(q)*psi(q^2)",
            (1, 0, 2),
            300,
        ),
        family("thm3.3ii.p5", "Theorem 3.3 (ii)", Family::V2, 5, 0, 10),
        family("thm3.3ii.p7", "Theorem 3.3 (ii)", Family::V2, 7, 0, 10),
        family("thm3.3ii.p5.a1", "Theorem 3.3 (ii)", Family::V2, 5, 1, 1),
        congruence(
            "thm3.3iii.base",
            "Theorem 3.3 (iii), alpha = 0",
            "AP(mock(v), 6, 5) - 3*l(1)*l(6)^3",
            (1, 0, 6),
            200,
        ),
        family("thm3.3iii.p5", "Theorem 3.3 (iii)", Family::V6, 5, 0, 5),
        congruence("remark3.6", "Remark 3.6", "mock(mu) - l(1)^-3", (1, 0, 4), 300),
        // sigma(q)
        identity(
            "rel.nu-sigma",
            "Theorem 4.1, proof: nu(q^2) - sigma(-q)",
            "mock(nu, q^2) - mock(sigma, -q)",
            "q*l(4)^2*l(12)^2/(l(2)^2*l(6))",
            400,
        ),
        identity("thm4.1", "Theorem 4.1", "AP(mock(sigma), 2, 1)", "l(2)^2*l(6)^2/(l(1)^2*l(3))", 500),
        interpretation("thm4.2", "Theorem 4.2", "mock(sigma)", (2, 1), "thm4.2"),
        identity("thm4.2.gf", "Theorem 4.2, proof", "rules(thm4.2)", "l(2)^2*l(6)^2/(l(1)^2*l(3))", 300),
        congruence(
            "thm4.3.base",
            "Theorem 4.3, alpha = 0",
            "AP(mock(sigma), 2, 1) - l(2)*psi(q^3)",
            (1, 0, 2),
            300,
        ),
        family("thm4.3.p5", "Theorem 4.3", Family::Sigma2, 5, 0, 10),
        // beta(q)
        identity("beta.3n+1", "Section 5: P_beta(3n+1)", "AP(mock(beta), 3, 1)", "l(3)^3/l(1)^2", 500),
        identity(
            "rel.phi6-psi6-beta",
            "Theorem 5.1, proof: phi(q^3) + 2q^-1 psi(q^3) + 2beta(q)",
            "mock(phi6, q^3) + 2*q^-1*mock(psi6, q^3) + 2*mock(beta)",
            "l(2)*l(3)^5/(l(1)^2*l(6)^3)",
            400,
        ),
        identity(
            "beta.dissection",
            "Theorem 5.1, proof: 3-dissection of 2beta(q)",
            "2*mock(beta)",
            "-mock(phi6, q^3) - 2*q^-1*mock(psi6, q^3) + l(6)*l(9)^6/(l(3)^3*l(18)^3) + 2*q*l(9)^3/l(3)^2 \
             + 4*q^2*l(18)^3/(l(3)*l(6))",
            400,
        ),
        identity("thm5.1", "Theorem 5.1", "AP(mock(beta), 3, 2)", "2*l(6)^3/(l(1)*l(2))", 500),
        identity(
            "thm5.1.corrected",
            "Theorem 5.1 with the psi term kept",
            "AP(mock(beta), 3, 2)",
            "2*l(6)^3/(l(1)*l(2)) - q^-1*mock(psi6)",
            500,
        ),
        interpretation("thm5.2", "Theorem 5.2", "mock(beta)", (3, 2), "thm5.2"),
        identity("thm5.2.gf", "Theorem 5.2, proof", "rules(thm5.2)", "l(6)^3/(l(1)*l(2))", 300),
        congruence("thm5.3", "Theorem 5.3", "mock(beta)", (9, 8, 6), 100),
        identity(
            "beta.9n+8",
            "Theorem 5.3, proof: P_beta(9n+8)",
            "AP(mock(beta), 9, 8)",
            "6*l(3)^3*l(6)^3/(l(1)^4*l(2))",
            300,
        ),
        // lambda(q)
        identity("lambda.2n", "Section 6: P_lambda(2n)", "AP(mock(lambda), 2, 0)", "l(2)^3*l(3)^2/(l(1)^3*l(6))", 400),
        identity(
            "lambda.6n+2",
            "Section 6: P_lambda(6n+2)",
            "AP(mock(lambda), 6, 2)",
            "3*l(3)^5/l(6)*(l(2)/l(1)^2)^3",
            400,
        ),
        identity(
            "lambda.6n+4",
            "Section 6: P_lambda(6n+4)",
            "AP(mock(lambda), 6, 4)",
            "l(2)^2*l(3)^2*l(6)^2/l(1)^5",
            400,
        ),
        identity(
            "lambda.6n+4.times-l1cube",
            "Theorem 6.4, proof: P_lambda(6n+4) times l_1^3",
            "AP(mock(lambda), 6, 4)*l(1)^3",
            "6*(l(2)/l(1))^2*phi(-q^3)*l(6)^3",
            400,
        ),
        interpretation("thm6.1", "Theorem 6.1", "mock(lambda)", (2, 0), "thm6.1"),
        identity("thm6.1.gf", "Theorem 6.1, proof", "rules(thm6.1)", "l(2)^3*l(3)^2/(l(1)^3*l(6))", 300),
    ];
    lemma_claims(&mut out);
    recurrence_claims(&mut out);
    out.sort_by(|a, b| a.id.cmp(&b.id));
    out
}

/// Looks up a built-in claim.
pub fn find(id: &str) -> Option<Claim> {
    registry().into_iter().find(|c| c.id == id)
}

/// Expressions a claim mentions, for printing and round-trip checks.
pub fn expressions(claim: &Claim) -> Vec<&Expr> {
    match &claim.kind {
        ClaimKind::Identity { lhs, rhs, .. } | ClaimKind::Recurrence { lhs, rhs, .. } => vec![lhs, rhs],
        ClaimKind::Congruence { expr, .. } | ClaimKind::Interpretation { expr, .. } => vec![expr],
        ClaimKind::Family { .. } => Vec::new(),
    }
}

/// One-line description of what a claim checks.
pub fn summary(claim: &Claim) -> String {
    match &claim.kind {
        ClaimKind::Identity { lhs, rhs, order } => format!("{lhs} = {rhs} to O(q^{order})"),
        ClaimKind::Congruence { expr, a, b, modulus, count } => {
            format!("[q^({a}n+{b})] {expr} = 0 mod {modulus} for n < {count}")
        }
        ClaimKind::Family { family, p, alpha, count } => {
            format!("{} at p = {p}, alpha = {alpha}, n < {count}", family.name())
        }
        ClaimKind::Recurrence { lhs, rhs, order, direct } => {
            let d = direct.as_ref().map_or(String::new(), |d| format!(", nested sums to n = {}", d.bound));
            format!("{lhs} = {rhs} to O(q^{order}){d}")
        }
        ClaimKind::Interpretation { expr, a, b, ruleset, bound, .. } => {
            format!("[q^({a}n+{b})] {expr} = signed count of {ruleset} for n <= {bound}")
        }
    }
}
