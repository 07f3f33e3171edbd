use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactlin::{Ring, Scalar, Subspace, Vector};

/// `coef · e(index)` with a 1-based index (or an offset inside a pattern).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coef: BigRational,
    pub index: usize,
}

fn normalize(mut terms: Vec<Term>) -> Vec<Term> {
    terms.sort_by_key(|t| t.index);
    let mut out: Vec<Term> = Vec::new();
    for t in terms {
        match out.last_mut() {
            Some(last) if last.index == t.index => last.coef += t.coef,
            _ => out.push(t),
        }
    }
    out.retain(|t| !t.coef.is_zero());
    out
}

/// The vectors `Σ_t c_t e(i + o_t)` for every `i ≥ start`.
///
/// Offsets are normalized so the smallest is `0`; its coefficient and the
/// one at the largest offset `width` are therefore nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pattern {
    pub var: String,
    pub terms: Vec<Term>,
    pub start: usize,
}

impl Pattern {
    pub fn new(var: &str, terms: Vec<Term>, start: usize) -> Result<Self> {
        let terms = normalize(terms);
        if terms.is_empty() {
            return Err(Error::Precondition("a pattern needs a nonzero term".into()));
        }
        if start == 0 {
            return Err(Error::Precondition("indices start at 1".into()));
        }
        Ok(Pattern { var: var.to_string(), terms, start })
    }

    /// `e(k) for k >= start`.
    pub fn tail(start: usize) -> Self {
        Self::new("k", vec![Term { coef: BigRational::one(), index: 0 }], start).expect("valid tail")
    }

    pub fn width(&self) -> usize {
        self.terms.last().expect("nonempty").index
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Instance at `i` as a vector of length `n`, if it fits.
    pub fn instance(&self, i: usize, n: usize) -> Option<Vector> {
        if i < self.start || i + self.width() > n {
            return None;
        }
        let mut v = vec![Scalar::zero(Ring::Rat); n];
        for t in &self.terms {
            v[i + t.index - 1] = Scalar::from_rational(Ring::Rat, t.coef.clone());
        }
        Some(v)
    }
}

/// A subspace of the finitary limit `Q^∞` given by finitely many patterns
/// and a finite exceptional part.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct TailSubspace {
    pub patterns: Vec<Pattern>,
    pub exceptional: Vec<Vec<Term>>,
}

impl TailSubspace {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The whole space, `e(k) for k >= 1`.
    pub fn whole() -> Self {
        TailSubspace { patterns: vec![Pattern::tail(1)], exceptional: Vec::new() }
    }

    pub fn new(patterns: Vec<Pattern>, exceptional: Vec<Vec<Term>>) -> Self {
        let exceptional = exceptional.into_iter().map(normalize).filter(|v| !v.is_empty()).collect();
        TailSubspace { patterns, exceptional }
    }

    /// Span of finitely many vectors (given densely, 1-based positions).
    pub fn finite(vectors: &[Vector]) -> Self {
        let exc = vectors
            .iter()
            .map(|v| {
                v.iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(k, x)| Term { coef: x.re().clone(), index: k + 1 })
                    .collect()
            })
            .collect();
        Self::new(Vec::new(), exc)
    }

    pub fn is_finite(&self) -> bool {
        self.patterns.is_empty()
    }

    /// Largest index used by the exceptional part.
    pub fn exceptional_support(&self) -> usize {
        self.exceptional.iter().flat_map(|v| v.iter().map(|t| t.index)).max().unwrap_or(0)
    }

    /// Smallest level at which every exceptional vector fits.
    pub fn min_level(&self) -> usize {
        self.exceptional_support().max(1)
    }

    fn exceptional_vectors(&self, n: usize) -> Vec<Vector> {
        self.exceptional
            .iter()
            .map(|v| {
                let mut out = vec![Scalar::zero(Ring::Rat); n];
                for t in v {
                    out[t.index - 1] = Scalar::from_rational(Ring::Rat, t.coef.clone());
                }
                out
            })
            .collect()
    }

    /// Subspace of `Q^n` spanned by the exceptional vectors and every pattern
    /// instance supported in the first `n` coordinates.
    pub fn realize_at(&self, n: usize) -> Result<Subspace> {
        if n < self.exceptional_support() {
            return Err(Error::Precondition(format!(
                "exceptional vectors need level {}, got {n}",
                self.exceptional_support()
            )));
        }
        let mut vs = self.exceptional_vectors(n);
        for p in &self.patterns {
            vs.extend((p.start..=n).filter_map(|i| p.instance(i, n)));
        }
        Subspace::span(Ring::Rat, n, &vs)
    }
}

fn write_coef(f: &mut fmt::Formatter<'_>, c: &BigRational, first: bool) -> fmt::Result {
    let sign = if c.is_negative() {
        "-"
    } else if first {
        ""
    } else {
        "+"
    };
    let a = c.abs();
    if a.is_one() {
        write!(f, "{sign}")
    } else {
        write!(f, "{sign}{a}")
    }
}

fn write_terms(f: &mut fmt::Formatter<'_>, terms: &[Term], var: Option<&str>) -> fmt::Result {
    for (k, t) in terms.iter().enumerate() {
        write_coef(f, &t.coef, k == 0)?;
        match var {
            Some(v) if t.index == 0 => write!(f, "e({v})")?,
            Some(v) => write!(f, "e({v}+{})", t.index)?,
            None => write!(f, "e({})", t.index)?,
        }
    }
    Ok(())
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.terms, Some(&self.var))?;
        write!(f, " for {}>={}", self.var, self.start)
    }
}

impl fmt::Display for TailSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.patterns.is_empty() && self.exceptional.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for p in &self.patterns {
            if !first {
                write!(f, "; ")?;
            }
            first = false;
            write!(f, "{p}")?;
        }
        for v in &self.exceptional {
            if !first {
                write!(f, "; ")?;
            }
            first = false;
            write_terms(f, v, None)?;
        }
        Ok(())
    }
}

/// One parsed summand: coefficient, optional variable, signed offset.
type RawTerm = (BigRational, Option<String>, i64);

fn parse_rational(s: &str) -> Option<BigRational> {
    if s.is_empty() {
        return Some(BigRational::one());
    }
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a, b),
        None => (s, "1"),
    };
    let ok = |x: &str| !x.is_empty() && x.bytes().all(|b| b.is_ascii_digit());
    if !ok(num) || !ok(den) {
        return None;
    }
    let d: num_bigint::BigInt = den.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(num.parse().ok()?, d))
}

fn parse_index(s: &str) -> Option<(Option<String>, i64)> {
    if let Ok(k) = s.parse::<i64>() {
        return (k >= 1 && !s.starts_with('+')).then_some((None, k));
    }
    let split = s.find(['+', '-']);
    let (var, off) = match split {
        Some(p) => {
            let off: i64 = s[p + 1..].parse().ok()?;
            (&s[..p], if &s[p..p + 1] == "-" { -off } else { off })
        }
        None => (s, 0),
    };
    let valid = !var.is_empty() && var.bytes().all(|b| b.is_ascii_alphabetic());
    valid.then(|| (Some(var.to_string()), off))
}

fn parse_combination(s: &str) -> Option<Vec<RawTerm>> {
    let mut out = Vec::new();
    let mut rest = s;
    while !rest.is_empty() {
        let (neg, body) = match rest.as_bytes()[0] {
            b'-' => (true, &rest[1..]),
            b'+' if !out.is_empty() => (false, &rest[1..]),
            _ if out.is_empty() => (false, rest),
            _ => return None,
        };
        let e = body.find("e(")?;
        let close = e + body[e..].find(')')?;
        let mut coef = parse_rational(&body[..e])?;
        if neg {
            coef = -coef;
        }
        let (var, off) = parse_index(&body[e + 2..close])?;
        out.push((coef, var, off));
        rest = &body[close + 1..];
    }
    (!out.is_empty()).then_some(out)
}

fn parse_generator(s: &str) -> Result<std::result::Result<Pattern, Vec<Term>>> {
    let err = || Error::Parse(format!("unrecognized generator {s:?}"));
    let (comb, clause) = match s.split_once(" for ") {
        Some((a, b)) => (a, Some(b)),
        None => (s, None),
    };
    let terms = parse_combination(comb).ok_or_else(err)?;
    match clause {
        None => {
            if terms.iter().any(|t| t.1.is_some()) {
                return Err(err());
            }
            Ok(Err(terms.into_iter().map(|(c, _, k)| Term { coef: c, index: k as usize }).collect()))
        }
        Some(cl) => {
            let (var, start) = cl.split_once(">=").ok_or_else(err)?;
            let start: i64 = start.parse().map_err(|_| err())?;
            if terms.iter().any(|t| t.1.as_deref() != Some(var)) {
                return Err(err());
            }
            let min = terms.iter().map(|t| t.2).min().expect("nonempty");
            let shifted = start + min;
            if shifted < 1 {
                return Err(err());
            }
            let terms = terms.into_iter().map(|(c, _, o)| Term { coef: c, index: (o - min) as usize }).collect();
            Ok(Ok(Pattern::new(var, terms, shifted as usize)?))
        }
    }
}

impl FromStr for TailSubspace {
    type Err = Error;

    /// Generators separated by `;`, e.g. `e(i)-e(i+1) for i>=1; e(1)`.
    fn from_str(s: &str) -> Result<Self> {
        if s.trim() == "0" {
            return Ok(Self::zero());
        }
        let mut patterns = Vec::new();
        let mut exceptional = Vec::new();
        for g in s.split(';') {
            match parse_generator(g.trim())? {
                Ok(p) => patterns.push(p),
                Err(v) => exceptional.push(v),
            }
        }
        Ok(Self::new(patterns, exceptional))
    }
}

impl Serialize for TailSubspace {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for TailSubspace {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_round_trips() {
        for s in ["e(i)-e(i+1) for i>=1", "e(k) for k>=3", "e(1)", "0", "e(j)+e(j+2) for j>=2; 2e(1)-1/3e(4)"] {
            let t: TailSubspace = s.parse().unwrap();
            assert_eq!(t.to_string(), s);
        }
    }

    #[test]
    fn negative_offsets_are_normalized() {
        let t: TailSubspace = "e(i-1)-e(i) for i>=2".parse().unwrap();
        assert_eq!(t.to_string(), "e(i)-e(i+1) for i>=1");
    }

    #[test]
    fn grammar_rejects_noise() {
        for s in ["e(i) for j>=1", "e(0)", "e(i)", "x(1)", "e(i) for i>=0", "3", "e(1)e(2)"] {
            assert!(s.parse::<TailSubspace>().is_err(), "{s}");
        }
    }

    #[test]
    fn realizations() {
        let dense: TailSubspace = "e(i)-e(i+1) for i>=1".parse().unwrap();
        assert_eq!(dense.realize_at(4).unwrap().dim(), 3);
        let line: TailSubspace = "e(1)".parse().unwrap();
        for n in 1..6 {
            assert_eq!(line.realize_at(n).unwrap(), Subspace::coordinate(Ring::Rat, n, &[0]));
        }
        let tail: TailSubspace = "e(k) for k>=3".parse().unwrap();
        assert_eq!(tail.realize_at(5).unwrap(), Subspace::coordinate(Ring::Rat, 5, &[2, 3, 4]));
    }
}
