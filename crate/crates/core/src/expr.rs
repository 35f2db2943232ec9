//! A small language for q-series expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | power
//! power  := atom ('^' int)?
//! atom   := int | 'q' ('^' int)? | 'l(' nat ')' | '(' expr ')'
//!         | 'mock(' name (',' arg)? ')' | 'phi(' arg ')' | 'psi(' arg ')'
//!         | 'f(' arg ',' arg ')' | 'poch(' arg ',' 'q^' nat (',' nat)? ')'
//!         | 'stream(' kind ',' nat ')' | 'rules(' name ')' | 'dissect(' kind ',' nat ')'
//!         | 'AP(' expr ',' nat ',' nat ')' | 'SUB(' expr ',' nat ')'
//! arg    := ('+' | '-')? 'q' ('^' nat)?
//! ```
//!
//! `AP(e, m, r)` is `sum_n [q^(m n + r)] e · q^n` and `SUB(e, k)` replaces `q`
//! by `q^k`. `mock(name, arg)` and `phi(arg)` substitute `arg` for `q`.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::mocktheta::{mock_series, MockThetaId};
use crate::partitions::{count_dp, theta_stream, PartitionRuleSet, StreamKind};
use crate::qproducts::{eta, pochhammer, theta_f, DissectionKind, PochhammerSpec};
use crate::series::{div_ceil, Series};

/// `±q^k` as an argument to a theta or mock theta function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QArg {
    pub negative: bool,
    pub exp: u64,
}

impl QArg {
    pub const Q: QArg = QArg { negative: false, exp: 1 };

    pub fn new(negative: bool, exp: u64) -> Self {
        QArg { negative, exp }
    }
}

impl fmt::Display for QArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            f.write_str("-")?;
        }
        match self.exp {
            1 => f.write_str("q"),
            k => write!(f, "q^{k}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Int(BigInt),
    /// `q^k`, `k` of either sign.
    QPow(i64),
    /// `l_k`
    Eta(u64),
    Theta(QArg, QArg),
    Phi(QArg),
    Psi(QArg),
    Mock(MockThetaId, QArg),
    Stream(StreamKind, u64),
    Rules(String),
    Poch {
        base: QArg,
        step: u64,
        len: Option<u64>,
    },
    Dissect(DissectionKind, u64),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Subst(Box<Expr>, u64),
    Ap(Box<Expr>, u64, u64),
}

impl Expr {
    pub fn int(c: i64) -> Expr {
        Expr::Int(BigInt::from(c))
    }

    pub fn mock(id: MockThetaId) -> Expr {
        Expr::Mock(id, QArg::Q)
    }

    pub fn pow(self, k: i64) -> Expr {
        Expr::Pow(Box::new(self), k)
    }

    pub fn ap(self, m: u64, r: u64) -> Expr {
        Expr::Ap(Box::new(self), m, r)
    }

    pub fn subst(self, k: u64) -> Expr {
        Expr::Subst(Box::new(self), k)
    }

    /// Every node of the tree, this one first.
    pub fn walk(&self, f: &mut dyn FnMut(&Expr)) {
        f(self);
        match self {
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Subst(a, _) | Expr::Ap(a, _, _) => a.walk(f),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.walk(f);
                b.walk(f);
            }
            _ => {}
        }
    }

    /// Binding strength when printed: sums 1, products 2, unary minus 3,
    /// powers 4, atoms 5.
    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(..) => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $variant:ident) => {
        impl core::ops::$trait for Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                Expr::$variant(Box::new(self), Box::new(rhs))
            }
        }
    };
}
binop!(Add, add, Add);
binop!(Sub, sub, Sub);
binop!(Mul, mul, Mul);
binop!(Div, div, Div);

impl core::ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }
}

struct Wrapped<'a>(&'a Expr, u8);

impl fmt::Display for Wrapped<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.precedence() < self.1 {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// The canonical form, which parses back to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(c) => write!(f, "{c}"),
            Expr::QPow(1) => f.write_str("q"),
            Expr::QPow(k) => write!(f, "q^{k}"),
            Expr::Eta(k) => write!(f, "l({k})"),
            Expr::Theta(a, b) => write!(f, "f({a}, {b})"),
            Expr::Phi(a) => write!(f, "phi({a})"),
            Expr::Psi(a) => write!(f, "psi({a})"),
            Expr::Mock(id, QArg { negative: false, exp: 1 }) => write!(f, "mock({})", id.name()),
            Expr::Mock(id, a) => write!(f, "mock({}, {a})", id.name()),
            Expr::Stream(k, s) => write!(f, "stream({}, {s})", k.name()),
            Expr::Rules(name) => write!(f, "rules({name})"),
            Expr::Poch { base, step, len } => {
                write!(f, "poch({base}, q^{step}")?;
                if let Some(n) = len {
                    write!(f, ", {n}")?;
                }
                f.write_str(")")
            }
            Expr::Dissect(k, p) => write!(f, "dissect({}, {p})", k.name()),
            Expr::Neg(a) => write!(f, "-{}", Wrapped(a, 3)),
            Expr::Add(a, b) => write!(f, "{} + {}", Wrapped(a, 1), Wrapped(b, 2)),
            Expr::Sub(a, b) => write!(f, "{} - {}", Wrapped(a, 1), Wrapped(b, 2)),
            Expr::Mul(a, b) => write!(f, "{}*{}", Wrapped(a, 2), Wrapped(b, 3)),
            Expr::Div(a, b) => write!(f, "{}/{}", Wrapped(a, 2), Wrapped(b, 3)),
            // `q^a` already carries an exponent, so a power of it needs parentheses.
            Expr::Pow(a, k) if matches!(**a, Expr::QPow(_)) => write!(f, "({a})^{k}"),
            Expr::Pow(a, k) => write!(f, "{}^{k}", Wrapped(a, 5)),
            Expr::Subst(a, k) => write!(f, "SUB({a}, {k})"),
            Expr::Ap(a, m, r) => write!(f, "AP({a}, {m}, {r})"),
        }
    }
}

pub fn parse_expr(text: &str) -> Result<Expr> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = lhs + self.term()?;
            } else if self.eat(b'-') {
                lhs = lhs - self.term()?;
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        loop {
            if self.eat(b'*') {
                lhs = lhs * self.factor()?;
            } else if self.eat(b'/') {
                lhs = lhs / self.factor()?;
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        if self.eat(b'-') {
            return Ok(-self.factor()?);
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            let k = self.int()?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn digits(&mut self) -> Option<&str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| core::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn nat(&mut self) -> Result<u64> {
        let start = self.pos;
        match self.digits() {
            Some(d) => d.parse().map_err(|_| Error::Syntax {
                offset: start,
                message: "number too large".into(),
            }),
            None => Err(self.error("expected a natural number")),
        }
    }

    fn positive(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        let n = self.nat()?;
        if n == 0 {
            return Err(Error::Syntax {
                offset: start,
                message: "expected a positive number".into(),
            });
        }
        Ok(n)
    }

    fn int(&mut self) -> Result<i64> {
        let negative = self.eat(b'-');
        let n = self.nat()?;
        let n = i64::try_from(n).map_err(|_| self.error("exponent too large"))?;
        Ok(if negative { -n } else { n })
    }

    fn ident(&mut self) -> Option<(usize, String)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() {
            let c = self.src[self.pos];
            if c.is_ascii_alphanumeric() || c == b'_' || (c == b'.' && self.pos > start) {
                self.pos += 1;
            } else {
                break;
            }
        }
        (self.pos > start).then(|| (start, String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()))
    }

    fn name(&mut self) -> Result<(usize, String)> {
        self.ident().ok_or_else(|| self.error("expected a name"))
    }

    /// `[+|-] q [^ nat]`
    fn qarg(&mut self) -> Result<QArg> {
        let negative = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        if !self.eat(b'q') {
            return Err(self.error("expected `q`"));
        }
        let exp = if self.eat(b'^') { self.nat()? } else { 1 };
        Ok(QArg { negative, exp })
    }

    fn call_args_end(&mut self) -> Result<()> {
        self.expect(b')')
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits().unwrap();
                Ok(Expr::Int(d.parse::<BigInt>().expect("digits")))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let (start, word) = self.ident().unwrap();
                if word == "q" {
                    let k = if self.eat(b'^') { self.int()? } else { 1 };
                    return Ok(Expr::QPow(k));
                }
                let known = matches!(
                    word.as_str(),
                    "l" | "mock" | "phi" | "psi" | "f" | "poch" | "stream" | "rules" | "dissect" | "AP" | "SUB"
                );
                if !known {
                    return Err(Error::UnknownSymbol { offset: start, name: word });
                }
                self.expect(b'(')?;
                let e = self.call(&word)?;
                self.call_args_end()?;
                Ok(e)
            }
            Some(_) => Err(self.error("expected an expression")),
        }
    }

    fn call(&mut self, word: &str) -> Result<Expr> {
        Ok(match word {
            "l" => Expr::Eta(self.positive()?),
            "mock" => {
                let (at, name) = self.name()?;
                let id = MockThetaId::from_name(&name).ok_or(Error::UnknownSymbol { offset: at, name })?;
                let arg = if self.eat(b',') { self.qarg()? } else { QArg::Q };
                if arg.exp == 0 {
                    return Err(self.error("mock theta argument must be a positive power of q"));
                }
                Expr::Mock(id, arg)
            }
            "phi" | "psi" => {
                let arg = self.qarg()?;
                if arg.exp == 0 {
                    return Err(self.error("theta argument must be a positive power of q"));
                }
                if word == "phi" {
                    Expr::Phi(arg)
                } else {
                    Expr::Psi(arg)
                }
            }
            "f" => {
                let a = self.qarg()?;
                self.expect(b',')?;
                let b = self.qarg()?;
                Expr::Theta(a, b)
            }
            "poch" => {
                let base = self.qarg()?;
                self.expect(b',')?;
                if !self.eat(b'q') {
                    return Err(self.error("expected `q`"));
                }
                let step = if self.eat(b'^') { self.positive()? } else { 1 };
                let len = if self.eat(b',') { Some(self.nat()?) } else { None };
                Expr::Poch { base, step, len }
            }
            "stream" => {
                let (at, name) = self.name()?;
                let kind = StreamKind::from_name(&name).ok_or(Error::UnknownSymbol { offset: at, name })?;
                self.expect(b',')?;
                Expr::Stream(kind, self.positive()?)
            }
            "rules" => {
                let (at, name) = self.name()?;
                if PartitionRuleSet::named(&name).is_err() {
                    return Err(Error::UnknownSymbol { offset: at, name });
                }
                Expr::Rules(name)
            }
            "dissect" => {
                let (at, name) = self.name()?;
                let kind = DissectionKind::from_name(&name).ok_or(Error::UnknownSymbol { offset: at, name })?;
                self.expect(b',')?;
                Expr::Dissect(kind, self.nat()?)
            }
            "AP" => {
                let e = self.expr()?;
                self.expect(b',')?;
                let m = self.positive()?;
                self.expect(b',')?;
                self.skip_ws();
                let at = self.pos;
                let r = self.nat()?;
                if r >= m {
                    return Err(Error::Syntax {
                        offset: at,
                        message: format!("residue {r} must be below modulus {m}"),
                    });
                }
                e.ap(m, r)
            }
            "SUB" => {
                let e = self.expr()?;
                self.expect(b',')?;
                e.subst(self.positive()?)
            }
            _ => unreachable!("checked by caller"),
        })
    }
}

/// Evaluates expressions, caching mock theta series across calls.
#[derive(Default)]
pub struct Evaluator {
    mocks: BTreeMap<MockThetaId, Series>,
}

/// Rounds of raising the working order when Laurent terms eat into it.
const MAX_RETRIES: usize = 8;

impl Evaluator {
    pub fn new() -> Self {
        Self::default()
    }

    /// `e` to order `order`. The result's order is exactly `order` unless
    /// negative valuations kept it short after every retry.
    pub fn eval(&mut self, e: &Expr, order: i64) -> Result<Series> {
        let mut request = order;
        let mut best = self.node(e, request)?;
        for _ in 0..MAX_RETRIES {
            if best.order() >= order {
                break;
            }
            request += order - best.order();
            best = self.node(e, request)?;
        }
        Ok(best.truncate(order))
    }

    fn mock(&mut self, id: MockThetaId, order: i64) -> Series {
        if let Some(s) = self.mocks.get(&id) {
            if s.order() >= order {
                return s.clone().truncate(order);
            }
        }
        let s = mock_series(id, order);
        self.mocks.insert(id, s.clone());
        s
    }

    /// `g(±q^k)` from a routine computing `g(q)`.
    fn substituted(
        &mut self,
        arg: QArg,
        order: i64,
        g: impl FnOnce(&mut Self, i64) -> Result<Series>,
    ) -> Result<Series> {
        let inner = g(self, div_ceil(order, arg.exp as i64))?;
        Ok(inner.substitute_signed(arg.negative, arg.exp))
    }

    fn node(&mut self, e: &Expr, n: i64) -> Result<Series> {
        let n = n.max(0);
        Ok(match e {
            Expr::Int(c) => Series::constant(c.clone(), n),
            Expr::QPow(k) => Series::monomial(*k, BigInt::one(), n),
            Expr::Eta(k) => eta(*k, n),
            Expr::Theta(a, b) => theta_f(a.negative, a.exp, b.negative, b.exp, n)?,
            Expr::Phi(arg) => self.substituted(*arg, n, |_, m| theta_f(false, 1, false, 1, m))?,
            Expr::Psi(arg) => self.substituted(*arg, n, |_, m| theta_f(false, 1, false, 3, m))?,
            Expr::Mock(id, arg) => self.substituted(*arg, n, |ev, m| Ok(ev.mock(*id, m)))?,
            Expr::Stream(kind, scale) => theta_stream(*kind, *scale, n)?,
            Expr::Rules(name) => count_dp(&PartitionRuleSet::named(name)?, n),
            Expr::Poch { base, step, len } => pochhammer(
                &PochhammerSpec {
                    negative: base.negative,
                    a: base.exp,
                    step: *step,
                    len: *len,
                },
                n,
            )?,
            Expr::Dissect(kind, p) => kind.rhs(*p, n)?,
            Expr::Neg(a) => self.eval(a, n)?.neg(),
            Expr::Add(a, b) => self.eval(a, n)?.add(&self.eval(b, n)?),
            Expr::Sub(a, b) => self.eval(a, n)?.sub(&self.eval(b, n)?),
            Expr::Mul(..) | Expr::Div(..) | Expr::Pow(..) => self.product(e, n)?,
            Expr::Subst(a, k) => self.eval(a, div_ceil(n, *k as i64))?.substitute(*k),
            Expr::Ap(a, m, r) => self.eval(a, n * *m as i64)?.extract_ap(*m, *r),
        })
    }

    /// Flattens a product of powers so that each sparse factor such as an eta
    /// product is multiplied or divided in on its own.
    fn product(&mut self, e: &Expr, n: i64) -> Result<Series> {
        let mut factors: Vec<(&Expr, i64)> = Vec::new();
        flatten(e, 1, &mut factors);
        let mut scalar = BigInt::one();
        let mut acc = Series::one(n);
        let mut divisors = Vec::new();
        for (f, k) in factors {
            if let Expr::Int(c) = f {
                if k < 0 {
                    // Only units may divide.
                    if !(c.is_one() || *c == -BigInt::one()) {
                        return Err(Error::NonUnit(c.to_string()));
                    }
                }
                scalar *= num_traits::pow(c.clone(), k.unsigned_abs() as usize);
                continue;
            }
            if k == 0 {
                continue;
            }
            let s = self.eval(f, n)?;
            if k > 0 {
                for _ in 0..k {
                    acc = acc.mul(&s);
                }
            } else {
                divisors.push((s, -k));
            }
        }
        for (s, k) in divisors {
            for _ in 0..k {
                acc = acc.div(&s)?;
            }
        }
        if scalar.is_zero() {
            return Ok(Series::zero(acc.order()));
        }
        Ok(acc.scale(&scalar))
    }
}

fn flatten<'a>(e: &'a Expr, k: i64, out: &mut Vec<(&'a Expr, i64)>) {
    match e {
        Expr::Mul(a, b) => {
            flatten(a, k, out);
            flatten(b, k, out);
        }
        Expr::Div(a, b) => {
            flatten(a, k, out);
            flatten(b, -k, out);
        }
        Expr::Pow(a, j) => flatten(a, k * j, out),
        _ => out.push((e, k)),
    }
}

/// One-shot evaluation without a shared cache.
pub fn eval_expr(e: &Expr, order: i64) -> Result<Series> {
    Evaluator::new().eval(e, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qproducts::{eta_quotient, EtaQuotientSpec};

    fn round_trip(text: &str) {
        let e = parse_expr(text).unwrap();
        let printed = e.to_string();
        assert_eq!(parse_expr(&printed).unwrap(), e, "{text} printed as {printed}");
    }

    #[test]
    fn parses_quotient() {
        let e = parse_expr("l(4)^3 / (l(1)*l(2))").unwrap();
        assert_eq!(e, Expr::Eta(4).pow(3) / (Expr::Eta(1) * Expr::Eta(2)));
        assert_eq!(e.to_string(), "l(4)^3/(l(1)*l(2))");
        let ap = parse_expr("AP(mock(v), 2, 1)").unwrap();
        assert_eq!(ap, Expr::mock(MockThetaId::V).ap(2, 1));
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        assert!(matches!(parse_expr("l("), Err(Error::Syntax { offset: 2, .. })));
        assert!(matches!(parse_expr("l(0)"), Err(Error::Syntax { offset: 2, .. })));
        assert!(matches!(parse_expr("1 +"), Err(Error::Syntax { offset: 3, .. })));
        assert!(matches!(parse_expr("AP(q, 2, 2)"), Err(Error::Syntax { offset: 9, .. })));
        assert!(matches!(parse_expr("l(1) l(2)"), Err(Error::Syntax { offset: 5, .. })));
        assert!(matches!(
            parse_expr("2*zeta(3)"),
            Err(Error::UnknownSymbol { offset: 2, .. })
        ));
        assert!(matches!(parse_expr("mock(chi)"), Err(Error::UnknownSymbol { offset: 5, .. })));
        assert!(matches!(parse_expr("rules(x)"), Err(Error::UnknownSymbol { .. })));
    }

    #[test]
    fn printer_round_trips() {
        for t in [
            "q^-1*psi(q^3) - 2*mock(beta)",
            "-(1 + q)^2",
            "(-q)^2",
            "-q^2",
            "(q^2)^3",
            "1 - (2 - 3)",
            "1 - -2",
            "2/(3*4)",
            "(2/3)*4",
            "f(-q, -q^2) + f(q^2, q^3)",
            "poch(-q^0, q^2, 5)*poch(q, q)",
            "mock(mu, -q^2) + 4*mock(v)",
            "SUB(AP(stream(jacobi, 3), 3, 2), 2)",
            "rules(thm3.2) - dissect(l1cube, 5)",
        ] {
            round_trip(t);
        }
    }

    #[test]
    fn unary_minus_binds_looser_than_power() {
        assert_eq!(parse_expr("-l(1)^2").unwrap(), -(Expr::Eta(1).pow(2)));
        assert_eq!(parse_expr("q^-1").unwrap(), Expr::QPow(-1));
        assert_eq!(parse_expr("l(2)^-3").unwrap(), Expr::Eta(2).pow(-3));
    }

    #[test]
    fn evaluates_basics() {
        let l1 = eval_expr(&parse_expr("l(1)").unwrap(), 13).unwrap();
        assert_eq!(l1, eta(1, 13));
        let a = eval_expr(&parse_expr("SUB(l(1), 2)").unwrap(), 40).unwrap();
        assert_eq!(a, eval_expr(&parse_expr("l(2)").unwrap(), 40).unwrap());
        let rhs = eval_expr(&parse_expr("2*l(6)^3/(l(1)*l(2))").unwrap(), 10).unwrap();
        assert_eq!(rhs.coeff(0), Some(BigInt::from(2)));
        let cube = eval_expr(&parse_expr("l(1)^3").unwrap(), 11).unwrap();
        assert_eq!(cube.to_string(), "1 - 3q + 5q^3 - 7q^6 + 9q^10 + O(q^11)");
    }

    #[test]
    fn laurent_terms_keep_requested_order() {
        let e = parse_expr("q^-1*psi(q^3)").unwrap();
        let s = eval_expr(&e, 30).unwrap();
        assert_eq!(s.order(), 30);
        assert_eq!(s.valuation(), -1);
        assert_eq!(s.coeff(2), Some(BigInt::one()));
    }

    #[test]
    fn flattened_quotient_matches_eta_quotient() {
        let e = parse_expr("(l(2)/l(1)^2)^3*l(3)^5/l(6)").unwrap();
        let spec = EtaQuotientSpec::new(&[(2, 3), (1, -6), (3, 5), (6, -1)]);
        assert_eq!(eval_expr(&e, 300).unwrap(), eta_quotient(&spec, 300));
    }

    #[test]
    fn division_by_non_unit_fails() {
        assert!(matches!(eval_expr(&parse_expr("1/2").unwrap(), 5), Err(Error::NonUnit(_))));
        assert!(matches!(eval_expr(&parse_expr("l(1)/(2+q)").unwrap(), 5), Err(Error::NonUnit(_))));
    }

    #[test]
    fn substituted_arguments() {
        let mut ev = Evaluator::new();
        let twisted = ev.eval(&parse_expr("mock(sigma, -q)").unwrap(), 60).unwrap();
        let direct = mock_series(MockThetaId::Sigma, 60).sign_twist();
        assert_eq!(twisted, direct);
        let phi = ev.eval(&parse_expr("phi(-q)").unwrap(), 100).unwrap();
        assert_eq!(phi, ev.eval(&parse_expr("stream(phineg, 1)").unwrap(), 100).unwrap());
    }
}
