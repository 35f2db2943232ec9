//! Line-oriented claim files.
//!
//! ```text
//! # P_v(2n+1) as an eta quotient
//! [claim]
//! id=my.thm3.1
//! type=identity
//! lhs=AP(mock(v), 2, 1)
//! rhs=l(4)^3/(l(1)*l(2))
//! order=300
//! ```
//!
//! A record starts at `[claim]` and runs to the next one. Blank lines and
//! lines starting with `#` are ignored.

use std::collections::BTreeMap;
use std::fmt;

use qseries_core::claims::{Claim, ClaimKind};
use qseries_core::expr::{parse_expr, Expr};
use qseries_core::ntheory::Family;
use qseries_core::partitions::PartitionRuleSet;

const FIELDS: &[&str] = &[
    "id", "type", "lhs", "rhs", "expr", "A", "B", "M", "count", "family", "p", "alpha", "order", "ruleset", "cite",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based line number.
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

struct Record {
    line: usize,
    fields: BTreeMap<String, (usize, String)>,
}

impl Record {
    fn err(&self, line: usize, message: impl Into<String>) -> ParseError {
        ParseError { line, message: message.into() }
    }

    fn text(&self, key: &str) -> Result<&str, ParseError> {
        self.fields
            .get(key)
            .map(|(_, v)| v.as_str())
            .ok_or_else(|| self.err(self.line, format!("missing field `{key}`")))
    }

    fn expr(&self, key: &str) -> Result<Expr, ParseError> {
        let text = self.text(key)?;
        let line = self.fields[key].0;
        parse_expr(text).map_err(|e| self.err(line, format!("{key}: {e}")))
    }

    fn int<T: std::str::FromStr>(&self, key: &str, default: Option<T>) -> Result<T, ParseError> {
        match self.fields.get(key) {
            Some((line, v)) => v
                .parse()
                .map_err(|_| self.err(*line, format!("{key}: `{v}` is not a valid integer"))),
            None => default.ok_or_else(|| self.err(self.line, format!("missing field `{key}`"))),
        }
    }

    fn into_claim(self, default_order: i64) -> Result<Claim, ParseError> {
        let id = self.text("id")?.to_string();
        let cite = self.fields.get("cite").map(|(_, v)| v.clone()).unwrap_or_default();
        let kind_name = self.text("type")?.to_ascii_lowercase();
        let order = self.int("order", Some(default_order))?;
        if order < 1 {
            return Err(self.err(self.fields["order"].0, "order must be at least 1"));
        }
        let kind = match kind_name.as_str() {
            "identity" => ClaimKind::Identity { lhs: self.expr("lhs")?, rhs: self.expr("rhs")?, order },
            "recurrence" => ClaimKind::Recurrence {
                lhs: self.expr("lhs")?,
                rhs: self.expr("rhs")?,
                order,
                direct: None,
            },
            "congruence" => {
                let modulus: u64 = self.int("M", None)?;
                if modulus == 0 {
                    return Err(self.err(self.fields["M"].0, "M must be positive"));
                }
                ClaimKind::Congruence {
                    expr: self.expr("expr")?,
                    a: self.int("A", None)?,
                    b: self.int("B", Some(0))?,
                    modulus,
                    count: self.int("count", Some(100))?,
                }
            }
            "family" | "congruence_family" => {
                let name = self.text("family")?;
                let family = Family::from_name(name).ok_or_else(|| {
                    let known: Vec<_> = Family::ALL.iter().map(|f| f.name()).collect();
                    self.err(self.fields["family"].0, format!("unknown family `{name}` (known: {})", known.join(", ")))
                })?;
                ClaimKind::Family {
                    family,
                    p: self.int("p", None)?,
                    alpha: self.int("alpha", Some(0))?,
                    count: self.int("count", Some(10))?,
                }
            }
            "interpretation" => {
                let ruleset = self.text("ruleset")?.to_string();
                PartitionRuleSet::named(&ruleset).map_err(|e| self.err(self.fields["ruleset"].0, e.to_string()))?;
                ClaimKind::Interpretation {
                    expr: self.expr("expr")?,
                    a: self.int("A", Some(1))?,
                    b: self.int("B", Some(0))?,
                    ruleset,
                    bound: self.int("count", Some(200))?,
                    enum_bound: 25,
                }
            }
            other => {
                let line = self.fields["type"].0;
                return Err(self.err(line, format!("unknown claim type `{other}`")));
            }
        };
        Ok(Claim { id, cite, kind })
    }
}

/// Parses every record in `text`. Fields without an `order` use `default_order`.
pub fn parse_claims(text: &str, default_order: i64) -> Result<Vec<Claim>, ParseError> {
    let mut records: Vec<Record> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if trimmed == "[claim]" {
            records.push(Record { line, fields: BTreeMap::new() });
            continue;
        }
        let Some(rec) = records.last_mut() else {
            return Err(ParseError { line, message: "field before the first `[claim]`".into() });
        };
        let Some((key, value)) = trimmed.split_once('=') else {
            return Err(ParseError { line, message: format!("expected `key=value`, found `{trimmed}`") });
        };
        let key = key.trim();
        if !FIELDS.contains(&key) {
            return Err(ParseError { line, message: format!("unknown field `{key}`") });
        }
        if rec.fields.insert(key.to_string(), (line, value.trim().to_string())).is_some() {
            return Err(ParseError { line, message: format!("field `{key}` given twice") });
        }
    }
    let claims = records
        .into_iter()
        .map(|r| r.into_claim(default_order))
        .collect::<Result<Vec<_>, _>>()?;
    let mut seen = std::collections::BTreeSet::new();
    for c in &claims {
        if !seen.insert(c.id.as_str()) {
            return Err(ParseError { line: 0, message: format!("duplicate claim id `{}`", c.id) });
        }
    }
    Ok(claims)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_each_kind() {
        let text = "\
# comment
[claim]
id=a
type=identity
lhs=AP(mock(v), 2, 1)
rhs=l(4)^3/(l(1)*l(2))

[claim]
id=b
type=CONGRUENCE
expr=mock(v)
A=6
B=5
M=3
count=20

[claim]
id=c
type=congruence_family
family=thm4.3
p=5

[claim]
id=d
type=interpretation
expr=mock(sigma)
A=2
B=1
ruleset=thm4.2
cite=Theorem 4.2
";
        let claims = parse_claims(text, 77).unwrap();
        let kinds: Vec<_> = claims.iter().map(|c| c.kind.name()).collect();
        assert_eq!(kinds, ["identity", "congruence", "family", "interpretation"]);
        assert!(matches!(claims[0].kind, ClaimKind::Identity { order: 77, .. }));
        assert_eq!(claims[3].cite, "Theorem 4.2");
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_claims("[claim]\nid=x\ntype=identity\nlhs=l(\nrhs=1\n", 10).unwrap_err();
        assert_eq!(e.line, 4);
        assert!(e.message.contains("offset 2"), "{e}");
        assert_eq!(parse_claims("id=x\n", 10).unwrap_err().line, 1);
        assert_eq!(parse_claims("[claim]\nbogus=1\n", 10).unwrap_err().line, 2);
        let e = parse_claims("[claim]\nid=x\ntype=family\nfamily=nope\np=5\n", 10).unwrap_err();
        assert_eq!(e.line, 4);
    }

    #[test]
    fn duplicate_ids_rejected() {
        let rec = "[claim]\nid=x\ntype=identity\nlhs=1\nrhs=1\n";
        assert!(parse_claims(&format!("{rec}{rec}"), 10).is_err());
    }
}
