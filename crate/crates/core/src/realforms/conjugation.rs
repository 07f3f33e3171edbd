use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::quaternionic::{omega, quaternify_subspace};
use crate::exactlin::{Matrix, Ring, Scalar, Subspace, Vector};
use crate::flags::GeneralizedFlag;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ConjugationKind {
    /// An involution of the algebra.
    Tau,
    /// An antilinear map of the defining space squaring to `-1`.
    Jstruct,
}

/// An antilinear structure given by a matrix `M`.
///
/// When `hermitian` is false the map acts on vectors by `v ↦ M v̄` and on the
/// algebra by `ξ ↦ M ξ̄ M⁻¹`. When it is true `M` is a hermitian gram and the
/// algebra map is `ξ ↦ -M⁻¹ ξ* M`, which has no counterpart on vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Conjugation {
    pub kind: ConjugationKind,
    pub matrix: Matrix,
    pub scalar_conj: bool,
    pub hermitian: bool,
    #[serde(skip)]
    inverse: Matrix,
}

impl Conjugation {
    fn build(kind: ConjugationKind, matrix: Matrix, hermitian: bool) -> Result<Self> {
        let inverse = matrix.inverse().ok_or(Error::DegenerateForm)?;
        Ok(Conjugation {
            kind,
            matrix,
            scalar_conj: true,
            hermitian,
            inverse,
        })
    }

    /// `v ↦ M v̄` with `M M̄ = 1`.
    pub fn real_structure(matrix: Matrix) -> Result<Self> {
        Self::build(ConjugationKind::Tau, matrix, false)
    }

    /// `ξ ↦ -H⁻¹ ξ* H` for a hermitian gram `H`.
    pub fn unitary(h: Matrix) -> Result<Self> {
        if h.adjoint() != h {
            return Err(Error::FormSymmetry("gram is not hermitian".into()));
        }
        Self::build(ConjugationKind::Tau, h, true)
    }

    /// `v ↦ M v̄` with `M M̄ = -1`.
    pub fn quaternionic(matrix: Matrix) -> Result<Self> {
        Self::build(ConjugationKind::Jstruct, matrix, false)
    }

    /// The standard quaternionic structure `J = Ω · conj` on `Q(i)^{2n}`.
    pub fn standard_j(n: usize) -> Self {
        Self::quaternionic(omega(n)).expect("Ω is invertible")
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    fn bar(&self, x: &Matrix) -> Matrix {
        if self.scalar_conj {
            x.conj()
        } else {
            x.clone()
        }
    }

    /// Image of an algebra element.
    pub fn apply(&self, x: &Matrix) -> Matrix {
        if self.hermitian {
            -&(&(&self.inverse * &x.adjoint()) * &self.matrix)
        } else {
            &(&self.matrix * &self.bar(x)) * &self.inverse
        }
    }

    /// Image of a vector, when the structure acts on the defining space.
    pub fn apply_vector(&self, v: &[Scalar]) -> Option<Vector> {
        if self.hermitian {
            return None;
        }
        let c: Vector = if self.scalar_conj {
            v.iter().map(Scalar::conj).collect()
        } else {
            v.to_vec()
        };
        Some(self.matrix.mul_vec(&c))
    }

    /// Whether `s` is mapped onto itself (always true for hermitian kinds).
    pub fn stabilizes(&self, s: &Subspace) -> bool {
        s.basis()
            .iter()
            .all(|b| self.apply_vector(b).map_or(true, |w| s.contains_vector(&w)))
    }

    /// Square of the vector map as a scalar `±1`, when it is one.
    pub fn square_sign(&self) -> Option<i64> {
        if self.hermitian {
            return None;
        }
        let sq = &self.matrix * &self.bar(&self.matrix);
        let n = self.dim();
        [1, -1].into_iter().find(|&s| {
            sq == Matrix::identity(Ring::Gauss, n).scale_right(&Scalar::from_int(Ring::Gauss, s))
        })
    }
}

/// Memberwise real points of a flag.
///
/// For a real structure with matrix `1` each member must be stable and its
/// real points form a rational subspace; for `J` each member must be stable
/// and becomes a quaternionic subspace; a hermitian conjugation fixes the
/// defining space pointwise, so the flag comes back unchanged.
pub fn realify_flag(f: &GeneralizedFlag, c: &Conjugation) -> Result<GeneralizedFlag> {
    if f.ring() != Ring::Gauss || f.ambient_dim() != c.dim() {
        return Err(Error::Precondition(
            "flag does not live in the complex defining space".into(),
        ));
    }
    if c.hermitian {
        return Ok(f.clone());
    }
    if let Some(index) = f.members().iter().position(|s| !c.stabilizes(s)) {
        return Err(Error::NotStable { index });
    }
    match c.kind {
        ConjugationKind::Tau => {
            if c.matrix != Matrix::identity(Ring::Gauss, c.dim()) {
                return Err(Error::UnsupportedShape(
                    "real points are only computed for entrywise conjugation".into(),
                ));
            }
            // the canonical basis of a conj-stable subspace is rational
            f.with_ring(Ring::Rat)
        }
        ConjugationKind::Jstruct => {
            if c.dim() % 2 != 0 || c.matrix != omega(c.dim() / 2) {
                return Err(Error::UnsupportedShape(
                    "quaternionic subspaces are only read off for J = Ω·conj".into(),
                ));
            }
            f.map(quaternify_subspace)
        }
    }
}
