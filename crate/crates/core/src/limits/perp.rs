//! Decisions about tail subspaces of `V = Q^∞` that hold at every level.
//!
//! For a subspace `B` with one pattern `q` (start `s`, width `d`) the classes
//! `[e_k]` in `V/B` obey the order-`d` recurrence given by `q` once `k ≥ s + d`,
//! and so do the classes of the instances of any other pattern. Such a
//! sequence vanishes from some index on as soon as `d` consecutive terms do,
//! which turns "for all `i`" into finitely many exact membership tests.

use crate::error::{Error, Result};
use crate::exactlin::{Ring, Scalar, SesquiStructure, Subspace, Vector};

use super::system::DirectSystem;
use super::tail::{Pattern, TailSubspace, Term};

fn horizon(sys: &DirectSystem, reason: impl Into<String>) -> Error {
    Error::Horizon { horizon: sys.hi, reason: reason.into() }
}

fn dense(terms: &[Term], n: usize) -> Vector {
    let mut v = vec![Scalar::zero(Ring::Rat); n];
    for t in terms {
        v[t.index - 1] = Scalar::from_rational(Ring::Rat, t.coef.clone());
    }
    v
}

fn pad(v: &[Scalar], n: usize) -> Vector {
    let mut out = v.to_vec();
    out.resize(n, Scalar::zero(Ring::Rat));
    out
}

fn single_pattern<'a>(b: &'a TailSubspace, sys: &DirectSystem) -> Result<Option<&'a Pattern>> {
    match b.patterns.as_slice() {
        [] => Ok(None),
        [p] => Ok(Some(p)),
        _ => Err(horizon(sys, format!("{b} has several patterns; membership is not level-exact"))),
    }
}

/// Exact membership of a finitary vector given by terms.
fn member(b: &TailSubspace, v: &[Term], sys: &DirectSystem) -> Result<bool> {
    let m = v.iter().map(|t| t.index).max().unwrap_or(1);
    let level = m.max(b.min_level());
    if level > sys.hi {
        return Err(horizon(sys, format!("membership in {b} needs level {level}")));
    }
    Ok(b.realize_at(level)?.contains_vector(&dense(v, level)))
}

fn instance_terms(p: &Pattern, i: usize) -> Vec<Term> {
    p.terms.iter().map(|t| Term { coef: t.coef.clone(), index: i + t.index }).collect()
}

/// Whether `inner ⊆ outer`. The container must have at most one pattern.
pub fn contains(outer: &TailSubspace, inner: &TailSubspace, sys: &DirectSystem) -> Result<bool> {
    let q = single_pattern(outer, sys)?;
    for v in &inner.exceptional {
        if !member(outer, v, sys)? {
            return Ok(false);
        }
    }
    for p in &inner.patterns {
        let Some(q) = q else {
            return Ok(false);
        };
        let d = q.width();
        let i0 = p.start.max(q.start + d);
        for i in p.start..i0 + d {
            if !member(outer, &instance_terms(p, i), sys)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn equal(a: &TailSubspace, b: &TailSubspace, sys: &DirectSystem) -> Result<bool> {
    Ok(contains(a, b, sys)? && contains(b, a, sys)?)
}

/// `{ w ∈ Q^k : w ⊥ E }` for the exceptional part truncated to `k` coordinates.
fn finite_perp(exceptional: &[Vec<Term>], k: usize) -> Result<Vec<Vector>> {
    if k == 0 {
        return Ok(Vec::new());
    }
    let vs: Vec<Vector> = exceptional
        .iter()
        .map(|v| dense(&v.iter().filter(|t| t.index <= k).cloned().collect::<Vec<_>>(), k))
        .collect();
    let e = Subspace::span(Ring::Rat, k, &vs)?;
    Ok(SesquiStructure::standard_pairing(Ring::Rat, k).perp(&e)?.basis().to_vec())
}

/// Finitary covectors orthogonal to every vector of `ts`, identified with
/// `V` through the standard pairing.
///
/// A pattern starting at `s` forces every finitary covector orthogonal to it
/// to vanish from `s` on (read the orthogonality relations backwards from the
/// end of the support), so patterns contribute no covectors beyond the
/// smallest start. A finite `ts` is orthogonal to the whole tail past its
/// support.
pub fn limit_perp(ts: &TailSubspace, sys: &DirectSystem) -> Result<TailSubspace> {
    let perp = match ts.patterns.iter().map(|p| p.start).min() {
        Some(s) => TailSubspace::finite(&finite_perp(&ts.exceptional, s - 1)?),
        None => {
            let k = ts.exceptional_support();
            let mut out = TailSubspace::finite(&finite_perp(&ts.exceptional, k)?);
            out.patterns.push(Pattern::tail(k + 1));
            out
        }
    };
    cross_check(ts, &perp, sys)?;
    Ok(perp)
}

/// At every level `n` where it can be decided inside the horizon, the
/// covectors of `Q^n` orthogonal to the realization at `N ≥ n + width`
/// must be exactly the level-`n` part of the computed perp.
fn cross_check(ts: &TailSubspace, perp: &TailSubspace, sys: &DirectSystem) -> Result<()> {
    let width = ts.patterns.iter().map(Pattern::width).max().unwrap_or(0);
    let mut checked = 0;
    for n in perp.min_level().max(sys.lo)..=sys.hi {
        let big = (n + width).max(ts.min_level());
        if big > sys.hi {
            break;
        }
        let orth = SesquiStructure::standard_pairing(Ring::Rat, big).perp(&ts.realize_at(big)?)?;
        let level_n = orth.intersect(&Subspace::coordinate(Ring::Rat, big, &(0..n).collect::<Vec<_>>()))?;
        let padded: Vec<Vector> = perp.realize_at(n)?.basis().iter().map(|v| pad(v, big)).collect();
        if Subspace::span(Ring::Rat, big, &padded)? != level_n {
            return Err(Error::Internal(format!(
                "limit perp of {ts} disagrees with the level {big} computation at level {n}"
            )));
        }
        checked += 1;
    }
    if checked == 0 {
        return Err(horizon(sys, format!("no level inside the horizon certifies the perp of {ts}")));
    }
    Ok(())
}

/// `ts^⊥⊥`.
pub fn closure(ts: &TailSubspace, sys: &DirectSystem) -> Result<TailSubspace> {
    limit_perp(&limit_perp(ts, sys)?, sys)
}

/// `ts = ts^⊥⊥` in the limit.
pub fn is_closed(ts: &TailSubspace, sys: &DirectSystem) -> Result<bool> {
    contains(ts, &closure(ts, sys)?, sys)
}

/// `ts` realized at level `n` equals its double perp in `Q^n`.
pub fn is_level_closed(ts: &TailSubspace, sys: &DirectSystem, n: usize) -> Result<bool> {
    let s = sys.realize(ts, n)?;
    Ok(sys.pairing(n).closure(&s)? == s)
}

/// A chain `0 ⊂ F_1 ⊂ … ⊂ V` of tail subspaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailFlag {
    members: Vec<TailSubspace>,
}

impl TailFlag {
    /// Adds the sentinels, drops repeats and checks the chain is increasing.
    pub fn new(proper: &[TailSubspace], sys: &DirectSystem) -> Result<Self> {
        let mut members = vec![TailSubspace::zero()];
        let whole = TailSubspace::whole();
        for (k, m) in proper.iter().chain(std::iter::once(&whole)).enumerate() {
            let last = members.last().expect("nonempty");
            if !contains(m, last, sys)? {
                return Err(Error::NotAChain(k.saturating_sub(1), k));
            }
            if !contains(last, m, sys)? {
                members.push(m.clone());
            }
        }
        Ok(TailFlag { members })
    }

    pub fn trivial() -> Self {
        TailFlag { members: vec![TailSubspace::zero(), TailSubspace::whole()] }
    }

    pub fn members(&self) -> &[TailSubspace] {
        &self.members
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&TailSubspace, &TailSubspace)> {
        self.members.iter().zip(self.members.iter().skip(1))
    }

    /// Every immediate predecessor has closure equal to itself or to its successor.
    pub fn is_semiclosed(&self, sys: &DirectSystem) -> Result<bool> {
        for (a, b) in self.pairs() {
            let c = closure(a, sys)?;
            if !equal(&c, a, sys)? && !equal(&c, b, sys)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
