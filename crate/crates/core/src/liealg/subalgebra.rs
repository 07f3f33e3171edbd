use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactlin::{Matrix, Subspace, Vector};
use crate::flags::{stabilizer_in, GeneralizedFlag};

use super::ambient::AmbientAlgebra;
use super::space::MatrixSpace;

/// A bracket-closed subspace of an ambient classical Lie algebra.
#[derive(Clone)]
pub struct MatrixLieSubalgebra {
    ambient: Arc<AmbientAlgebra>,
    space: MatrixSpace,
}

impl PartialEq for MatrixLieSubalgebra {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space
            && (Arc::ptr_eq(&self.ambient, &other.ambient) || self.ambient == other.ambient)
    }
}

impl Eq for MatrixLieSubalgebra {}

/// `span{ [a, b] : a ∈ A, b ∈ B }`.
pub fn bracket_span(a: &MatrixSpace, b: &MatrixSpace) -> MatrixSpace {
    let (rows, cols) = a.shape();
    let mut mats = Vec::with_capacity(a.dim() * b.dim());
    for x in a.basis() {
        for y in b.basis() {
            let z = x.bracket(y);
            if !z.is_zero() {
                mats.push(z);
            }
        }
    }
    MatrixSpace::span(a.ring(), a.field(), rows, cols, &mats).expect("brackets keep the shape")
}

fn is_closed(space: &MatrixSpace) -> bool {
    let b = space.basis();
    (0..b.len()).all(|i| (i + 1..b.len()).all(|j| space.contains(&b[i].bracket(&b[j]))))
}

impl MatrixLieSubalgebra {
    /// Span of `mats`, which must lie in the ambient and be bracket-closed.
    pub fn new(ambient: Arc<AmbientAlgebra>, mats: &[Matrix]) -> Result<Self> {
        let n = ambient.n();
        let space = MatrixSpace::span(ambient.ring(), ambient.field(), n, n, mats)?;
        Self::from_space(ambient, space)
    }

    pub fn from_space(ambient: Arc<AmbientAlgebra>, space: MatrixSpace) -> Result<Self> {
        if let Some(m) = space.basis().iter().find(|m| !ambient.contains(m)) {
            return Err(Error::NotInAmbient(format!("{m:?}")));
        }
        if !is_closed(&space) {
            return Err(Error::Precondition(
                "span is not closed under the bracket".into(),
            ));
        }
        Ok(MatrixLieSubalgebra { ambient, space })
    }

    /// Wraps a space known to be a subalgebra of the ambient.
    pub(crate) fn trusted(ambient: Arc<AmbientAlgebra>, space: MatrixSpace) -> Self {
        debug_assert!(ambient.space().contains_space(&space));
        MatrixLieSubalgebra { ambient, space }
    }

    pub fn whole(ambient: Arc<AmbientAlgebra>) -> Self {
        let space = ambient.space().clone();
        MatrixLieSubalgebra { ambient, space }
    }

    pub fn zero(ambient: Arc<AmbientAlgebra>) -> Self {
        let n = ambient.n();
        let space = MatrixSpace::zero(ambient.ring(), ambient.field(), n, n);
        MatrixLieSubalgebra { ambient, space }
    }

    /// Smallest subalgebra containing `generators`.
    pub fn bracket_closure(ambient: Arc<AmbientAlgebra>, generators: &[Matrix]) -> Result<Self> {
        if let Some(m) = generators.iter().find(|m| !ambient.contains(m)) {
            return Err(Error::NotInAmbient(format!("{m:?}")));
        }
        let n = ambient.n();
        let mut space = MatrixSpace::span(ambient.ring(), ambient.field(), n, n, generators)?;
        loop {
            let next = space.sum(&bracket_span(&space, &space))?;
            if next.dim() == space.dim() {
                break;
            }
            space = next;
        }
        Ok(MatrixLieSubalgebra { ambient, space })
    }

    /// Stabilizer of flags in the defining space(s).
    ///
    /// For `GL`/`SL`, `flags` is `[fV]` or `[fV, fW]`; a missing `fW` defaults
    /// to the perp chain of `fV`. For `SO`/`SP`, `flags` is a single flag in `V`.
    pub fn flag_stabilizer(
        ambient: Arc<AmbientAlgebra>,
        flags: &[&GeneralizedFlag],
    ) -> Result<Self> {
        let n = ambient.n();
        for f in flags {
            if f.ring() != ambient.ring() {
                return Err(Error::TagMismatch {
                    expected: ambient.ring(),
                    found: f.ring(),
                });
            }
            if f.ambient_dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: f.ambient_dim(),
                });
            }
        }
        let space = match (ambient.has_partner(), flags) {
            (_, []) => ambient.space().clone(),
            (true, [fv]) => {
                let fw = fv.perp_chain(ambient.form())?;
                let dual = |x: &Matrix| ambient.dual_action(x);
                stabilizer_in(ambient.space(), &[(fv, false), (&fw, true)], Some(&dual))
            }
            (true, [fv, fw]) => {
                let dual = |x: &Matrix| ambient.dual_action(x);
                stabilizer_in(ambient.space(), &[(fv, false), (fw, true)], Some(&dual))
            }
            (false, [f]) => stabilizer_in(ambient.space(), &[(f, false)], None),
            _ => {
                return Err(Error::Precondition(format!(
                    "wrong number of flags for {}",
                    ambient.family()
                )))
            }
        };
        Ok(MatrixLieSubalgebra { ambient, space })
    }

    pub fn ambient(&self) -> &Arc<AmbientAlgebra> {
        &self.ambient
    }

    pub fn space(&self) -> &MatrixSpace {
        &self.space
    }

    pub fn basis(&self) -> &[Matrix] {
        self.space.basis()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        self.space.contains(m)
    }

    pub fn contains_algebra(&self, other: &MatrixLieSubalgebra) -> bool {
        self.space.contains_space(&other.space)
    }

    pub fn is_whole(&self) -> bool {
        self.dim() == self.ambient.dim()
    }

    pub fn intersect(&self, other: &MatrixLieSubalgebra) -> Result<Self> {
        Ok(MatrixLieSubalgebra {
            ambient: self.ambient.clone(),
            space: self.space.intersect(&other.space)?,
        })
    }

    /// Sub-object of the same ambient spanned by a space known to be a subalgebra.
    pub(crate) fn with_space(&self, space: MatrixSpace) -> Self {
        MatrixLieSubalgebra::trusted(self.ambient.clone(), space)
    }

    /// `{ ξ ∈ ambient : [ξ, s] ⊆ s }`.
    pub fn normalizer(&self) -> Self {
        let maps: Vec<Box<dyn Fn(&Matrix) -> Matrix + '_>> = self
            .basis()
            .iter()
            .map(|s| Box::new(move |x: &Matrix| x.bracket(s)) as Box<dyn Fn(&Matrix) -> Matrix>)
            .collect();
        let constraints: Vec<(&dyn Fn(&Matrix) -> Matrix, &MatrixSpace)> =
            maps.iter().map(|f| (f.as_ref(), &self.space)).collect();
        self.with_space(self.ambient.space().preimage(&constraints))
    }

    /// `[s, s]`.
    pub fn derived(&self) -> Self {
        self.with_space(bracket_span(&self.space, &self.space))
    }

    /// Length of the derived series, or `None` when the algebra is not solvable.
    pub fn derived_length(&self) -> Option<usize> {
        let mut cur = self.space.clone();
        let mut len = 0;
        while cur.dim() > 0 {
            let next = bracket_span(&cur, &cur);
            if next.dim() == cur.dim() {
                return None;
            }
            cur = next;
            len += 1;
        }
        Some(len)
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_length().is_some()
    }

    /// Whether `[host, self] ⊆ self`.
    pub fn is_ideal_in(&self, host: &MatrixLieSubalgebra) -> bool {
        host.basis()
            .iter()
            .all(|h| self.basis().iter().all(|x| self.contains(&h.bracket(x))))
    }

    pub fn stabilizes(&self, s: &Subspace) -> bool {
        self.basis().iter().all(|x| s.is_invariant_under(x))
    }

    /// `span_D { ξ x : ξ ∈ self }`.
    pub fn orbit_span(&self, x: &[crate::exactlin::Scalar]) -> Subspace {
        let ring = self.ambient.ring();
        let vs: Vec<Vector> = self.basis().iter().map(|m| m.mul_vec(x)).collect();
        Subspace::span(ring, self.ambient.n(), &vs).expect("images live in the defining space")
    }

    /// Smallest invariant subspace containing `x`.
    pub fn invariant_closure(&self, x: &[crate::exactlin::Scalar]) -> Subspace {
        let ring = self.ambient.ring();
        let n = self.ambient.n();
        let mut s = Subspace::span(ring, n, &[x.to_vec()]).expect("vector in the defining space");
        loop {
            let mut vs: Vec<Vector> = s.basis().to_vec();
            for m in self.basis() {
                for b in s.basis() {
                    vs.push(m.mul_vec(b));
                }
            }
            let next = Subspace::span(ring, n, &vs).expect("vectors in the defining space");
            if next.dim() == s.dim() {
                return s;
            }
            s = next;
        }
    }
}

impl fmt::Debug for MatrixLieSubalgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "subalgebra of {:?}, dim {}", self.ambient, self.dim())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Ring;

    fn gl(n: usize) -> Arc<AmbientAlgebra> {
        Arc::new(AmbientAlgebra::gl(Ring::Gauss, n).unwrap())
    }

    #[test]
    fn closure_of_standard_generators() {
        let g = Ring::Gauss;
        let a = gl(2);
        let e12 = Matrix::unit(g, 2, 0, 1);
        assert_eq!(
            MatrixLieSubalgebra::bracket_closure(a.clone(), &[e12.clone()])
                .unwrap()
                .dim(),
            1
        );
        let sl = Arc::new(AmbientAlgebra::sl(g, 2).unwrap());
        let e21 = Matrix::unit(g, 2, 1, 0);
        assert_eq!(
            MatrixLieSubalgebra::bracket_closure(sl, &[e12, e21])
                .unwrap()
                .dim(),
            3
        );
    }

    #[test]
    fn stabilizer_of_a_line_in_gl3() {
        let a = gl(3);
        let f = GeneralizedFlag::coordinate(Ring::Gauss, 3, &[1]).unwrap();
        let p = MatrixLieSubalgebra::flag_stabilizer(a.clone(), &[&f]).unwrap();
        assert_eq!(p.dim(), 7);
        assert_eq!(
            MatrixLieSubalgebra::flag_stabilizer(a, &[]).unwrap().dim(),
            9
        );
    }

    #[test]
    fn borel_of_gl2_is_self_normalizing() {
        let g = Ring::Gauss;
        let a = gl(2);
        let f = GeneralizedFlag::complete_coordinate(g, 2);
        let b = MatrixLieSubalgebra::flag_stabilizer(a.clone(), &[&f]).unwrap();
        assert_eq!(b.dim(), 3);
        assert_eq!(b.normalizer(), b);
        let n = MatrixLieSubalgebra::new(a.clone(), &[Matrix::unit(g, 2, 0, 1)]).unwrap();
        assert_eq!(n.normalizer(), b);
        assert!(MatrixLieSubalgebra::zero(a.clone()).normalizer().is_whole());
        assert_eq!(b.derived_length(), Some(2));
    }

    #[test]
    fn non_closed_spans_are_rejected() {
        let g = Ring::Gauss;
        let r =
            MatrixLieSubalgebra::new(gl(2), &[Matrix::unit(g, 2, 0, 1), Matrix::unit(g, 2, 1, 0)]);
        assert!(matches!(r, Err(Error::Precondition(_))));
    }
}
