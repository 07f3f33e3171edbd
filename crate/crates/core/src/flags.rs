//! Finite chains of subspaces with sentinels, semiclosedness and tautness.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{FormKind, Matrix, Ring, SesquiStructure, Subspace};
use crate::liealg::ambient::default_field;
use crate::liealg::space::MatrixSpace;

/// A strictly increasing chain `0 = F_0 ⊂ F_1 ⊂ ... ⊂ F_k = D^n`.
///
/// The sentinels `0` and `D^n` are always stored, so every member except the
/// last has an immediate successor.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(into = "Vec<Subspace>")]
pub struct GeneralizedFlag {
    members: Vec<Subspace>,
}

impl From<GeneralizedFlag> for Vec<Subspace> {
    fn from(f: GeneralizedFlag) -> Self {
        f.members
    }
}

impl<'de> Deserialize<'de> for GeneralizedFlag {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let members = Vec::<Subspace>::deserialize(d)?;
        GeneralizedFlag::new(&members).map_err(serde::de::Error::custom)
    }
}

impl GeneralizedFlag {
    /// Validates a chain: sorts by inclusion, drops duplicates and inserts the
    /// sentinels. Incomparable members give [`Error::NotAChain`] with their
    /// positions in `chain`.
    pub fn new(chain: &[Subspace]) -> Result<Self> {
        let first = chain
            .first()
            .ok_or_else(|| Error::Precondition("a flag needs at least one member".into()))?;
        let (ring, n) = (first.ring(), first.ambient_dim());
        for s in chain {
            if s.ring() != ring {
                return Err(Error::TagMismatch {
                    expected: ring,
                    found: s.ring(),
                });
            }
            if s.ambient_dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: s.ambient_dim(),
                });
            }
        }
        let mut order: Vec<usize> = (0..chain.len()).collect();
        order.sort_by_key(|&i| chain[i].dim());
        let mut members = vec![Subspace::zero(ring, n)];
        let mut last_index: Option<usize> = None;
        for &i in &order {
            let s = &chain[i];
            let top = members.last().expect("nonempty");
            if s == top {
                continue;
            }
            if !s.contains(top) {
                let j = last_index.unwrap_or(i);
                return Err(Error::NotAChain(j.min(i), j.max(i)));
            }
            members.push(s.clone());
            last_index = Some(i);
        }
        if !members.last().expect("nonempty").is_full() {
            members.push(Subspace::full(ring, n));
        }
        Ok(GeneralizedFlag { members })
    }

    pub fn trivial(ring: Ring, n: usize) -> Self {
        Self::new(&[Subspace::zero(ring, n)]).expect("trivial flag")
    }

    /// `0 ⊂ ⟨e_1⟩ ⊂ ⟨e_1, e_2⟩ ⊂ ... ⊂ D^n`.
    pub fn complete_coordinate(ring: Ring, n: usize) -> Self {
        let chain: Vec<Subspace> = (0..=n)
            .map(|k| Subspace::coordinate(ring, n, &(0..k).collect::<Vec<_>>()))
            .collect();
        Self::new(&chain).expect("coordinate chain")
    }

    /// Coordinate flag with members `⟨e_1..e_d⟩` for the given dimensions.
    pub fn coordinate(ring: Ring, n: usize, dims: &[usize]) -> Result<Self> {
        let chain: Vec<Subspace> = dims
            .iter()
            .map(|&d| Subspace::coordinate(ring, n, &(0..d.min(n)).collect::<Vec<_>>()))
            .collect();
        if chain.is_empty() {
            return Ok(Self::trivial(ring, n));
        }
        Self::new(&chain)
    }

    pub fn ring(&self) -> Ring {
        self.members[0].ring()
    }

    pub fn ambient_dim(&self) -> usize {
        self.members[0].ambient_dim()
    }

    /// All members including the sentinels.
    pub fn members(&self) -> &[Subspace] {
        &self.members
    }

    /// Members other than `0` and the full space.
    pub fn proper_members(&self) -> &[Subspace] {
        let k = self.members.len();
        if k <= 2 {
            &[]
        } else {
            &self.members[1..k - 1]
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_trivial(&self) -> bool {
        self.proper_members().is_empty()
    }

    /// Immediate predecessor/successor pairs `(F', F'')`.
    pub fn pairs(&self) -> impl Iterator<Item = (&Subspace, &Subspace)> {
        self.members.windows(2).map(|w| (&w[0], &w[1]))
    }

    pub fn contains_member(&self, s: &Subspace) -> bool {
        self.members.contains(s)
    }

    /// Whether every member of `coarser` is a member of `self`.
    pub fn refines(&self, coarser: &GeneralizedFlag) -> bool {
        coarser.members.iter().all(|m| self.contains_member(m))
    }

    pub fn is_complete(&self) -> bool {
        self.pairs().all(|(a, b)| b.dim() == a.dim() + 1)
    }

    /// Adds a member, failing if it is incomparable with an existing one.
    pub fn with_member(&self, s: &Subspace) -> Result<Self> {
        let mut chain = self.members.clone();
        chain.push(s.clone());
        Self::new(&chain)
    }

    /// Chain of perpendiculars `{ F^⊥ }` in the partner space (or in the same
    /// space for a form).
    pub fn perp_chain(&self, form: &SesquiStructure) -> Result<Self> {
        let perps = self
            .members
            .iter()
            .map(|m| form.perp(m))
            .collect::<Result<Vec<_>>>()?;
        Self::new(&perps)
    }

    /// Perp chain of a flag in the partner space, back in the first space.
    pub fn perp_chain_left(&self, form: &SesquiStructure) -> Result<Self> {
        let perps = self
            .members
            .iter()
            .map(|m| form.perp_left(m))
            .collect::<Result<Vec<_>>>()?;
        Self::new(&perps)
    }

    /// Whether every predecessor's closure is itself or its successor.
    pub fn is_semiclosed(&self, form: &SesquiStructure) -> Result<bool> {
        self.is_semiclosed_with(|s| form.closure(s))
    }

    /// Semiclosedness for flags in the partner space of a pairing.
    pub fn is_semiclosed_right(&self, form: &SesquiStructure) -> Result<bool> {
        self.is_semiclosed_with(|s| form.perp(&form.perp_left(s)?))
    }

    fn is_semiclosed_with(&self, closure: impl Fn(&Subspace) -> Result<Subspace>) -> Result<bool> {
        for (a, b) in self.pairs() {
            let c = closure(a)?;
            if &c != a && &c != b {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The flag over a wider (or narrower, if possible) ring.
    pub fn with_ring(&self, ring: Ring) -> Result<Self> {
        let members = self
            .members
            .iter()
            .map(|m| m.with_ring(ring))
            .collect::<Result<Vec<_>>>()?;
        Self::new(&members)
    }

    /// Applies a map to every member and re-validates.
    pub fn map(&self, f: impl Fn(&Subspace) -> Result<Subspace>) -> Result<Self> {
        let members = self.members.iter().map(f).collect::<Result<Vec<_>>>()?;
        Self::new(&members)
    }
}

impl fmt::Debug for GeneralizedFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dims: Vec<String> = self.members.iter().map(|m| m.dim().to_string()).collect();
        write!(f, "Flag[{}; dims {}]", self.ring(), dims.join(" < "))?;
        for m in self.proper_members() {
            write!(f, " {m:?}")?;
        }
        Ok(())
    }
}

/// Stabilizer `{ ξ ∈ gl(n, D) : ξ F ⊆ F }` of a flag, over the default
/// coefficient field of `D`.
pub fn gl_stabilizer(f: &GeneralizedFlag) -> MatrixSpace {
    let ring = f.ring();
    let n = f.ambient_dim();
    stabilizer_in(
        &MatrixSpace::full(ring, default_field(ring), n, n),
        &[(f, false)],
        None,
    )
}

/// `{ ξ ∈ space : ξ F ⊆ F }` for every member of every flag; flags marked
/// `true` are acted on through `dual`.
pub(crate) fn stabilizer_in(
    space: &MatrixSpace,
    flags: &[(&GeneralizedFlag, bool)],
    dual: Option<&dyn Fn(&Matrix) -> Matrix>,
) -> MatrixSpace {
    let field = space.field();
    let mut targets: Vec<(crate::exactlin::Vector, MatrixSpace, bool)> = Vec::new();
    for (flag, use_dual) in flags {
        for m in flag.proper_members() {
            let target = MatrixSpace::from_subspace(m, field);
            for b in m.basis() {
                targets.push((b.clone(), target.clone(), *use_dual));
            }
        }
    }
    let maps: Vec<Box<dyn Fn(&Matrix) -> Matrix + '_>> = targets
        .iter()
        .map(|(b, _, use_dual)| {
            let col = Matrix::from_columns(space.ring(), b.len(), &[b.clone()]).expect("column");
            if *use_dual {
                let d = dual.expect("dual action required for partner-space flags");
                Box::new(move |x: &Matrix| &d(x) * &col) as Box<dyn Fn(&Matrix) -> Matrix>
            } else {
                Box::new(move |x: &Matrix| x * &col) as Box<dyn Fn(&Matrix) -> Matrix>
            }
        })
        .collect();
    let constraints: Vec<(&dyn Fn(&Matrix) -> Matrix, &MatrixSpace)> = maps
        .iter()
        .zip(&targets)
        .map(|(f, (_, t, _))| (f.as_ref(), t))
        .collect();
    space.preimage(&constraints)
}

/// Whether every member of `chain` is invariant under every basis element.
fn chain_invariant(chain: &GeneralizedFlag, stab: &MatrixSpace) -> bool {
    chain
        .proper_members()
        .iter()
        .all(|m| stab.basis().iter().all(|x| m.is_invariant_under(x)))
}

/// Taut-couple test for flags in `V` and `W` under a pairing: `fV^⊥` must be
/// stable under the `gl(W)`-stabilizer of `fW`, and `fW^⊥` under the
/// `gl(V)`-stabilizer of `fV`.
pub fn is_taut_couple(
    fv: &GeneralizedFlag,
    fw: &GeneralizedFlag,
    pairing: &SesquiStructure,
) -> Result<bool> {
    if !fv.is_semiclosed(pairing)? || !fw.is_semiclosed_right(pairing)? {
        return Err(Error::Precondition(
            "taut couples are defined for semiclosed flags".into(),
        ));
    }
    let fv_perp = fv.perp_chain(pairing)?;
    let fw_perp = fw.perp_chain_left(pairing)?;
    Ok(chain_invariant(&fv_perp, &gl_stabilizer(fw))
        && chain_invariant(&fw_perp, &gl_stabilizer(fv)))
}

/// Self-tautness with respect to a form on `V`: `f^⊥` is stable under the
/// `gl(V)`-stabilizer of `f`.
pub fn is_self_taut(f: &GeneralizedFlag, form: &SesquiStructure) -> Result<bool> {
    if form.kind() == FormKind::Pairing {
        return Err(Error::FormKind(
            "self-tautness needs a form on a single space".into(),
        ));
    }
    if !f.is_semiclosed(form)? {
        return Err(Error::Precondition(
            "self-tautness is defined for semiclosed flags".into(),
        ));
    }
    let perp = f.perp_chain(form)?;
    Ok(chain_invariant(&perp, &gl_stabilizer(f)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Scalar;

    fn line(ring: Ring, v: Vec<Scalar>) -> Subspace {
        let n = v.len();
        Subspace::span(ring, n, &[v]).unwrap()
    }

    #[test]
    fn validation_sorts_dedups_and_rejects() {
        let r = Ring::Rat;
        let e1 = Subspace::coordinate(r, 3, &[0]);
        let e12 = Subspace::coordinate(r, 3, &[0, 1]);
        let f = GeneralizedFlag::new(&[e12.clone(), e1.clone()]).unwrap();
        assert_eq!(
            f.members(),
            &[Subspace::zero(r, 3), e1.clone(), e12, Subspace::full(r, 3)]
        );
        assert_eq!(
            GeneralizedFlag::new(&[e1.clone(), e1.clone()])
                .unwrap()
                .len(),
            3
        );
        let e2 = Subspace::coordinate(r, 3, &[1]);
        assert_eq!(GeneralizedFlag::new(&[e1, e2]), Err(Error::NotAChain(0, 1)));
    }

    #[test]
    fn perp_chain_couples_are_taut() {
        let r = Ring::Rat;
        let pairing = SesquiStructure::standard_pairing(r, 3);
        let fv = GeneralizedFlag::coordinate(r, 3, &[1]).unwrap();
        let fw = fv.perp_chain(&pairing).unwrap();
        assert_eq!(fw.proper_members(), &[Subspace::coordinate(r, 3, &[1, 2])]);
        assert!(is_taut_couple(&fv, &fw, &pairing).unwrap());
        let trivial = GeneralizedFlag::trivial(r, 3);
        assert!(is_taut_couple(&trivial, &trivial, &pairing).unwrap());
        assert_eq!(gl_stabilizer(&trivial).dim(), 9);
        // ⟨e1⟩ in W is not the perp chain: its stabilizer moves ⟨e2, e3⟩
        let wrong = GeneralizedFlag::coordinate(r, 3, &[1]).unwrap();
        assert!(!is_taut_couple(&fv, &wrong, &pairing).unwrap());
    }

    #[test]
    fn self_tautness_under_the_split_form() {
        let r = Ring::Rat;
        let form = SesquiStructure::split_symmetric(r, 4);
        let e1 = Subspace::coordinate(r, 4, &[0]);
        let e1_perp = form.perp(&e1).unwrap();
        assert!(is_self_taut(
            &GeneralizedFlag::new(&[e1.clone(), e1_perp]).unwrap(),
            &form
        )
        .unwrap());
        // without its perp the line's stabilizer contains E_42, which moves ⟨e1⟩^⊥
        assert!(!is_self_taut(&GeneralizedFlag::new(&[e1]).unwrap(), &form).unwrap());
        let half = Scalar::ratio(r, 1, 2);
        let v = vec![Scalar::one(r), Scalar::zero(r), Scalar::zero(r), half];
        let bad = line(r, v);
        assert_eq!(
            form.isotropy_class(&bad).unwrap(),
            crate::exactlin::IsotropyClass::Neither
        );
        assert!(!is_self_taut(&GeneralizedFlag::new(&[bad]).unwrap(), &form).unwrap());
    }
}
