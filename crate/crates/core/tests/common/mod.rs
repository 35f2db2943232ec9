//! Oracles and generators shared by the integration tests.

#![allow(dead_code)]

use proptest::prelude::*;

use qseries_core::expr::{Expr, QArg};
use qseries_core::mocktheta::MockThetaId;
use qseries_core::partitions::{for_each_partition, PartitionRuleSet, StreamKind};
use qseries_core::Series;

pub type Poly = Vec<i128>;

pub fn one(n: usize) -> Poly {
    let mut v = vec![0; n];
    v[0] = 1;
    v
}

pub fn mul(a: &[i128], b: &[i128]) -> Poly {
    let n = a.len();
    let mut out = vec![0; n];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().take(n - i).enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `a / b` with `b[0] == 1`, by solving `b * out = a` term by term.
pub fn div(a: &[i128], b: &[i128]) -> Poly {
    assert_eq!(b[0], 1);
    let n = a.len();
    let mut out = vec![0; n];
    for k in 0..n {
        let mut s = a[k];
        for j in 1..=k.min(b.len() - 1) {
            s -= b[j] * out[k - j];
        }
        out[k] = s;
    }
    out
}

/// `(sign q^a; q^step)_len`, with `sign = -1` meaning `(-q^a; ...)`.
pub fn poch(neg: bool, a: usize, step: usize, len: usize, n: usize) -> Poly {
    let mut acc = one(n);
    for k in 0..len {
        let e = a + k * step;
        if e >= n {
            break;
        }
        let mut f = one(n);
        f[e] = if neg { 1 } else { -1 };
        acc = mul(&acc, &f);
    }
    acc
}

/// Term `k` of each defining sum, rebuilt without reference to term `k - 1`.
pub fn mock_term(id: MockThetaId, k: usize, n: usize) -> Option<Poly> {
    use MockThetaId::*;
    let sign = if k % 2 == 1 { -1 } else { 1 };
    let (val, s, num, den): (usize, i128, Vec<Poly>, Vec<Poly>) = match id {
        Mu => {
            let d = poch(true, 2, 2, k, n);
            (k * k, sign, vec![poch(false, 1, 2, k, n)], vec![d.clone(), d])
        }
        Sigma => ((k + 1) * (k + 2) / 2, 1, vec![poch(true, 1, 1, k, n)], vec![poch(false, 1, 2, k + 1, n)]),
        Beta => (3 * k * k + 3 * k + 1, 1, vec![], vec![poch(false, 1, 3, k + 1, n), poch(false, 2, 3, k + 1, n)]),
        Lambda => (k, sign, vec![poch(false, 1, 2, k, n)], vec![poch(true, 1, 1, k, n)]),
        V => ((k + 1) * (k + 1), 1, vec![poch(true, 1, 2, k, n)], vec![poch(false, 1, 2, k + 1, n)]),
        Nu => (k + 1, 1, vec![poch(true, 1, 1, 2 * k + 1, n)], vec![poch(false, 1, 2, k + 1, n)]),
        Phi6 => (k * k, sign, vec![poch(false, 1, 2, k, n)], vec![poch(true, 1, 1, 2 * k, n)]),
        Psi6 => ((k + 1) * (k + 1), sign, vec![poch(false, 1, 2, k, n)], vec![poch(true, 1, 1, 2 * k + 1, n)]),
    };
    if val >= n {
        return None;
    }
    let mut t = one(n);
    for p in &num {
        t = mul(&t, p);
    }
    for p in &den {
        t = div(&t, p);
    }
    let mut out = vec![0; n];
    for i in 0..n - val {
        out[i + val] = s * t[i];
    }
    Some(out)
}

pub fn mock_oracle(id: MockThetaId, n: usize) -> Vec<i128> {
    let mut acc = vec![0; n];
    for k in 0.. {
        let Some(t) = mock_term(id, k, n) else { break };
        for (a, b) in acc.iter_mut().zip(&t) {
            *a += b;
        }
    }
    acc
}

pub fn dense(s: &qseries_core::Series, n: usize) -> Vec<i128> {
    (0..n as i64)
        .map(|e| i128::try_from(&s.coeff(e).unwrap()).unwrap())
        .collect()
}

/// Overpartitions by brute force: each plain partition with `d` distinct
/// part sizes has `2^d` overlinings, and `r` colours multiply the choices.
pub fn overpartitions_brute(n: u64, r: u32) -> i128 {
    let rs = PartitionRuleSet::uniform(r, false, false);
    let mut total = 0i128;
    for_each_partition(&rs, n, |parts, _| {
        let mut kinds: Vec<_> = parts.to_vec();
        kinds.dedup();
        total += 1 << kinds.len();
    });
    total
}

pub fn series_with(val: std::ops::Range<i64>, unit: bool) -> impl Strategy<Value = Series> {
    (val, prop::collection::vec(-9i64..=9, 1..40), any::<bool>()).prop_map(move |(v, mut c, neg)| {
        if unit {
            c[0] = if neg { -1 } else { 1 };
        }
        let order = v + c.len() as i64;
        Series::from_i64s(v, &c, order).unwrap().trimmed()
    })
}

pub fn series() -> impl Strategy<Value = Series> {
    series_with(-3..4, false)
}

pub fn qarg() -> impl Strategy<Value = QArg> {
    (any::<bool>(), 1u64..5).prop_map(|(n, e)| QArg::new(n, e))
}

pub fn atom() -> impl Strategy<Value = Expr> {
    prop_oneof![
        (0i64..20).prop_map(Expr::int),
        (-5i64..6).prop_map(Expr::QPow),
        (1u64..13).prop_map(Expr::Eta),
        (qarg(), qarg()).prop_map(|(a, b)| Expr::Theta(a, b)),
        qarg().prop_map(Expr::Phi),
        qarg().prop_map(Expr::Psi),
        (0usize..8, qarg()).prop_map(|(i, a)| Expr::Mock(MockThetaId::ALL[i], a)),
        (0usize..4, 1u64..4).prop_map(|(i, s)| {
            let kinds = [StreamKind::Pentagonal, StreamKind::TriangularJacobi, StreamKind::SquarePhi, StreamKind::TriangularPsi];
            Expr::Stream(kinds[i], s)
        }),
        (qarg(), 1u64..4, prop::option::of(0u64..5)).prop_map(|(base, step, len)| Expr::Poch { base, step, len }),
    ]
}

pub fn expr() -> impl Strategy<Value = Expr> {
    atom().prop_recursive(4, 32, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Div(Box::new(a), Box::new(b))),
            (inner.clone(), -4i64..5).prop_map(|(a, k)| Expr::Pow(Box::new(a), k)),
            (inner.clone(), 1u64..4).prop_map(|(a, k)| Expr::Subst(Box::new(a), k)),
            (inner, 1u64..5, 0u64..5).prop_map(|(a, m, r)| Expr::Ap(Box::new(a), m, r % m)),
        ]
    })
}
