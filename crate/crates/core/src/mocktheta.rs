//! Coefficients of the eight q-hypergeometric sums
//!
//! ```text
//! mu(q)     = sum (-1)^n q^(n^2)         (q;q^2)_n   / (-q^2;q^2)_n^2
//! sigma(q)  = sum q^((n+1)(n+2)/2)       (-q;q)_n    / (q;q^2)_(n+1)
//! beta(q)   = sum q^(3n^2+3n+1)          1           / ((q;q^3)_(n+1) (q^2;q^3)_(n+1))
//! lambda(q) = sum (-1)^n q^n             (q;q^2)_n   / (-q;q)_n
//! v(q)      = sum q^((n+1)^2)            (-q;q^2)_n  / (q;q^2)_(n+1)
//! nu(q)     = sum q^(n+1)                (-q;q)_(2n+1) / (q;q^2)_(n+1)
//! phi6(q)   = sum (-1)^n q^(n^2)         (q;q^2)_n   / (-q;q)_(2n)
//! psi6(q)   = sum (-1)^n q^((n+1)^2)     (q;q^2)_n   / (-q;q)_(2n+1)
//! ```
//!
//! Each term is a monomial times a ratio of finite q-products. The ratio for
//! term `n` is the ratio for term `n - 1` times a few new binomial factors, so
//! it is updated in place in O(order) per term.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::series::{div_binomial, mul_binomial, Series};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MockThetaId {
    Mu,
    Sigma,
    Beta,
    Lambda,
    V,
    Nu,
    Phi6,
    Psi6,
}

impl MockThetaId {
    pub const ALL: [MockThetaId; 8] = [
        MockThetaId::Mu,
        MockThetaId::Sigma,
        MockThetaId::Beta,
        MockThetaId::Lambda,
        MockThetaId::V,
        MockThetaId::Nu,
        MockThetaId::Phi6,
        MockThetaId::Psi6,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MockThetaId::Mu => "mu",
            MockThetaId::Sigma => "sigma",
            MockThetaId::Beta => "beta",
            MockThetaId::Lambda => "lambda",
            MockThetaId::V => "v",
            MockThetaId::Nu => "nu",
            MockThetaId::Phi6 => "phi6",
            MockThetaId::Psi6 => "psi6",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|id| id.name() == s)
    }

    fn alternating(self) -> bool {
        matches!(
            self,
            MockThetaId::Mu | MockThetaId::Lambda | MockThetaId::Phi6 | MockThetaId::Psi6
        )
    }
}

/// Exact q-valuation of term `n`; strictly increasing in `n`.
pub fn valuation_schedule(id: MockThetaId, n: u64) -> i64 {
    let n = n as i64;
    match id {
        MockThetaId::Mu | MockThetaId::Phi6 => n * n,
        MockThetaId::Sigma => (n + 1) * (n + 2) / 2,
        MockThetaId::Beta => 3 * n * n + 3 * n + 1,
        MockThetaId::Lambda => n,
        MockThetaId::V | MockThetaId::Psi6 => (n + 1) * (n + 1),
        MockThetaId::Nu => n + 1,
    }
}

/// `1 + c q^e`.
#[derive(Clone, Copy, Debug)]
struct Binomial {
    e: u64,
    c: i64,
}

const fn plus(e: u64) -> Binomial {
    Binomial { e, c: 1 }
}

const fn minus(e: u64) -> Binomial {
    Binomial { e, c: -1 }
}

/// Numerator and denominator factors that turn the ratio of term `n - 1`
/// into the ratio of term `n`. For `n == 0` these are the factors of term 0.
fn factor_step(id: MockThetaId, n: u64) -> (Vec<Binomial>, Vec<Binomial>) {
    use MockThetaId::*;
    if n == 0 {
        return match id {
            Mu | Lambda | Phi6 => (vec![], vec![]),
            Sigma | V => (vec![], vec![minus(1)]),
            Beta => (vec![], vec![minus(1), minus(2)]),
            Nu => (vec![plus(1)], vec![minus(1)]),
            Psi6 => (vec![], vec![plus(1)]),
        };
    }
    match id {
        Mu => (vec![minus(2 * n - 1)], vec![plus(2 * n), plus(2 * n)]),
        Sigma => (vec![plus(n)], vec![minus(2 * n + 1)]),
        Beta => (vec![], vec![minus(3 * n + 1), minus(3 * n + 2)]),
        Lambda => (vec![minus(2 * n - 1)], vec![plus(n)]),
        V => (vec![plus(2 * n - 1)], vec![minus(2 * n + 1)]),
        Nu => (vec![plus(2 * n), plus(2 * n + 1)], vec![minus(2 * n + 1)]),
        Phi6 => (vec![minus(2 * n - 1)], vec![plus(2 * n - 1), plus(2 * n)]),
        Psi6 => (vec![minus(2 * n - 1)], vec![plus(2 * n), plus(2 * n + 1)]),
    }
}

/// The series of `id` to order `order`.
pub fn mock_series(id: MockThetaId, order: i64) -> Series {
    if order <= 0 {
        return Series::zero(order);
    }
    let mut total = vec![BigInt::zero(); order as usize];
    let mut ratio: Vec<BigInt> = Vec::new();
    let mut n = 0u64;
    loop {
        let val = valuation_schedule(id, n);
        if val >= order {
            break;
        }
        let len = (order - val) as usize;
        if n == 0 {
            ratio = vec![BigInt::zero(); len];
            ratio[0] = BigInt::one();
        } else {
            ratio.truncate(len);
        }
        let (num, den) = factor_step(id, n);
        for f in num {
            if (f.e as usize) < len {
                mul_binomial(&mut ratio, f.e as usize, f.c);
            }
        }
        for f in den {
            div_binomial(&mut ratio, f.e as usize, f.c);
        }
        debug_assert!(ratio[0].is_one(), "term {n} must start exactly at q^{val}");
        let negate = id.alternating() && n % 2 == 1;
        for (slot, c) in total[val as usize..].iter_mut().zip(&ratio) {
            if negate {
                *slot -= c;
            } else {
                *slot += c;
            }
        }
        n += 1;
    }
    Series::from_dense(total).trimmed()
}

/// Coefficient of `q^n` for each requested `n`.
pub fn coefficients(id: MockThetaId, indices: &[u64]) -> Vec<BigInt> {
    let order = indices.iter().copied().max().map_or(0, |m| m as i64 + 1);
    let s = mock_series(id, order);
    indices
        .iter()
        .map(|&n| s.coeff(n as i64).unwrap_or_default())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn first(id: MockThetaId, n: usize) -> Vec<i64> {
        mock_series(id, n as i64)
            .to_dense()
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect()
    }

    #[test]
    fn schedule_examples() {
        assert_eq!(valuation_schedule(MockThetaId::V, 3), 16);
        assert_eq!(valuation_schedule(MockThetaId::Beta, 0), 1);
        assert_eq!(valuation_schedule(MockThetaId::Lambda, 7), 7);
        for id in MockThetaId::ALL {
            for n in 0..50 {
                assert!(valuation_schedule(id, n + 1) > valuation_schedule(id, n));
            }
        }
    }

    #[test]
    fn names_round_trip() {
        for id in MockThetaId::ALL {
            assert_eq!(MockThetaId::from_name(id.name()), Some(id));
        }
        assert_eq!(MockThetaId::from_name("chi"), None);
    }

    #[test]
    fn leading_coefficients() {
        // Direct expansion of the first two or three terms by hand.
        // v: q/(1-q) + q^4(1+q)/((1-q)(1-q^3)) + ...
        assert_eq!(first(MockThetaId::V, 7), vec![0, 1, 1, 1, 2, 3, 3]);
        // sigma: q/(1-q) + q^3(1+q)/((1-q)(1-q^3)) + ...
        assert_eq!(first(MockThetaId::Sigma, 4), vec![0, 1, 1, 2]);
        // lambda: 1 - q(1-q)/(1+q) + ...
        assert_eq!(first(MockThetaId::Lambda, 3), vec![1, -1, 3]);
        // beta: q/((1-q)(1-q^2)) + q^7/(...)
        assert_eq!(first(MockThetaId::Beta, 4), vec![0, 1, 1, 2]);
        assert_eq!(first(MockThetaId::Mu, 1), vec![1]);
    }

    #[test]
    fn truncation_is_stable() {
        for id in MockThetaId::ALL {
            let big = mock_series(id, 200);
            for small in [0, 1, 17, 50] {
                assert_eq!(big.clone().truncate(small), mock_series(id, small), "{id:?} {small}");
            }
        }
    }

    #[test]
    fn coefficient_lookup() {
        let c = coefficients(MockThetaId::V, &[1, 3, 5]);
        assert_eq!(c, vec![BigInt::from(1), BigInt::from(1), BigInt::from(3)]);
    }
}
