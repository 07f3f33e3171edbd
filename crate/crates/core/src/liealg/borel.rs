//! Borel certificates: a complete (isotropic) refinement of a flag whose
//! stabilizer is solvable of the expected dimension.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::quaternionic::{complexify_matrix, complexify_subspace};
use crate::exactlin::subspace::{add_vec, scale_right};
use crate::exactlin::{Ring, Scalar, SesquiStructure, Subspace, Vector};
use crate::flags::GeneralizedFlag;

use super::ambient::{AmbientAlgebra, Family};
use super::space::MatrixSpace;
use super::subalgebra::MatrixLieSubalgebra;

#[derive(Clone, Debug, Serialize)]
pub struct BorelCertificate {
    pub complete_flag: GeneralizedFlag,
    #[serde(serialize_with = "serialize_witness")]
    pub witness: MatrixLieSubalgebra,
    pub derived_length: usize,
}

fn serialize_witness<S: serde::Serializer>(
    w: &MatrixLieSubalgebra,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    w.basis().serialize(s)
}

impl BorelCertificate {
    /// Whether the witness lies in `s`. For quaternionic ambients the
    /// witness lives in the complex model and `s` is complexified first.
    pub fn is_contained_in(&self, s: &MatrixLieSubalgebra) -> bool {
        if s.ambient().ring() != Ring::Quat {
            return s.contains_algebra(&self.witness);
        }
        let n = 2 * s.ambient().n();
        let mats: Vec<_> = s.basis().iter().map(complexify_matrix).collect();
        match MatrixSpace::span(Ring::Gauss, Ring::Gauss, n, n, &mats) {
            Ok(span) => span.contains_space(self.witness.space()),
            Err(_) => false,
        }
    }
}

fn line(ring: Ring, v: &[Scalar]) -> Subspace {
    Subspace::span(ring, v.len(), &[v.to_vec()]).expect("vector of the right length")
}

/// Every subspace from `lo` to `hi` obtained by adding the basis vectors of
/// `hi` one at a time (excluding `lo`, including `hi`).
fn steps(lo: &Subspace, hi: &Subspace) -> Vec<Subspace> {
    let mut out = Vec::new();
    let mut cur = lo.clone();
    for v in hi.basis() {
        if !cur.contains_vector(v) {
            cur = cur.sum(&line(lo.ring(), v)).expect("same ambient");
            out.push(cur.clone());
        }
    }
    out
}

/// Basis vectors of `s` outside `below`, and their pairwise sums.
fn candidates(s: &Subspace, below: &Subspace) -> Vec<Vector> {
    let b: Vec<&Vector> = s
        .basis()
        .iter()
        .filter(|v| !below.contains_vector(v))
        .collect();
    let mut out: Vec<Vector> = b.iter().map(|v| (*v).clone()).collect();
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            out.push(add_vec(b[i], b[j]));
        }
    }
    out
}

/// An isotropic vector of `i^⊥` outside the isotropic subspace `i`, if one
/// is found among candidates and exact roots of binary quadratics.
fn isotropic_extension(form: &SesquiStructure, i: &Subspace) -> Result<Option<Vector>> {
    let perp = form.perp(i)?;
    if perp.dim() == i.dim() {
        return Ok(None);
    }
    let q = |v: &Vector| form.value(v, v);
    let cands: Vec<Vector> = candidates(&perp, i)
        .into_iter()
        .filter(|v| !i.contains_vector(v))
        .collect();
    if let Some(v) = cands.iter().find(|v| q(v).is_zero()) {
        return Ok(Some(v.clone()));
    }
    for a in 0..cands.len() {
        for b in a + 1..cands.len() {
            let (u, w) = (&cands[a], &cands[b]);
            if i.sum(&line(i.ring(), u))?.contains_vector(w) {
                continue;
            }
            // q(u s + w) = s² q(u) + 2 s β + q(w), with q(u) ≠ 0
            let (qu, qw, beta) = (q(u), q(w), form.value(u, w));
            let disc = &(&beta * &beta) - &(&qu * &qw);
            if let Some(root) = disc.sqrt() {
                let s = &(&root - &beta) * &qu.inv().expect("nonzero");
                return Ok(Some(add_vec(&scale_right(u, &s), w)));
            }
        }
    }
    Ok(None)
}

/// A maximal isotropic subspace of the form, trying the first coordinates
/// (isotropic for the split defaults) before a greedy search.
fn maximal_isotropic(form: &SesquiStructure) -> Result<Subspace> {
    let n = form.dim();
    let ring = form.ring();
    let t = Subspace::coordinate(ring, n, &(0..n / 2).collect::<Vec<_>>());
    if form.is_isotropic(&t)? {
        return Ok(t);
    }
    let mut cur = Subspace::zero(ring, n);
    while let Some(v) = isotropic_extension(form, &cur)? {
        cur = cur.sum(&line(ring, &v))?;
    }
    Ok(cur)
}

/// Complete chain through the members of `f`.
fn complete_chain(f: &GeneralizedFlag) -> Vec<Subspace> {
    let mut out = vec![f.members()[0].clone()];
    for (lo, hi) in f.pairs() {
        out.extend(steps(lo, hi));
    }
    out
}

/// Complete isotropic refinement of a self-taut flag, with the perps.
fn complete_isotropic(f: &GeneralizedFlag, form: &SesquiStructure) -> Result<Vec<Subspace>> {
    let n = form.dim();
    let mut iso = vec![f.members()[0].clone()];
    for (lo, hi) in f.pairs() {
        if !form.is_isotropic(hi)? {
            break;
        }
        iso.extend(steps(lo, hi));
    }
    let top = iso.last().expect("zero member").clone();
    let t = maximal_isotropic(form)?;
    if 2 * t.dim() + 1 < n {
        return Err(Error::NoIsotropicRefinement(format!(
            "the form has a maximal isotropic subspace of dimension {} in dimension {n}",
            t.dim()
        )));
    }
    let ext = top.sum(&t.intersect(&form.perp(&top)?)?)?;
    if !form.is_isotropic(&ext)? || ext.dim() != t.dim() {
        return Err(Error::NoIsotropicRefinement(
            "isotropic member does not extend to a maximal one".into(),
        ));
    }
    iso.extend(steps(&top, &ext));
    let mut chain = iso.clone();
    for s in &iso {
        chain.push(form.perp(s)?);
    }
    Ok(chain)
}

/// Greedy completion of `f` (isotropic for `SO`/`SP`) and the stabilizer of
/// the completion, checked solvable of the Borel dimension.
///
/// Over `H` the completion is made in the complex model `Q(i)^{2n}`, where
/// the members of `f` become `J`-stable subspaces.
pub fn certify_borel(
    f: &GeneralizedFlag,
    ambient: &Arc<AmbientAlgebra>,
) -> Result<BorelCertificate> {
    if f.ring() != ambient.ring() || f.ambient_dim() != ambient.n() {
        return Err(Error::Precondition(
            "flag does not live in the defining space".into(),
        ));
    }
    let (target, flag) = if ambient.ring() == Ring::Quat {
        if ambient.family() != Family::GL {
            return Err(Error::UnsupportedShape(format!(
                "{} over H",
                ambient.family()
            )));
        }
        let complex = Arc::new(AmbientAlgebra::gl(Ring::Gauss, 2 * ambient.n())?);
        (complex, f.map(complexify_subspace)?)
    } else {
        (ambient.clone(), f.clone())
    };
    let chain = match target.family() {
        Family::GL | Family::SL => complete_chain(&flag),
        Family::SO | Family::SP => complete_isotropic(&flag, target.form())?,
    };
    let complete = GeneralizedFlag::new(&chain)?;
    if !complete.refines(&flag) {
        return Err(Error::Precondition(
            "flag is not refined by an isotropic completion (not self-taut?)".into(),
        ));
    }
    let witness = MatrixLieSubalgebra::flag_stabilizer(target.clone(), &[&complete])?;
    let derived_length = witness
        .derived_length()
        .ok_or_else(|| Error::Internal("stabilizer of a complete flag is not solvable".into()))?;
    if witness.dim() != target.borel_dim() {
        return Err(Error::Internal(format!(
            "stabilizer of a complete flag has dimension {}, expected {}",
            witness.dim(),
            target.borel_dim()
        )));
    }
    Ok(BorelCertificate {
        complete_flag: complete,
        witness,
        derived_length,
    })
}
