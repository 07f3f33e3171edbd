use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{FormKind, Matrix, Ring, Scalar, SesquiStructure};

use super::space::MatrixSpace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    GL,
    SL,
    SO,
    SP,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "GL" => Ok(Family::GL),
            "SL" => Ok(Family::SL),
            "SO" => Ok(Family::SO),
            "SP" => Ok(Family::SP),
            _ => Err(Error::Parse(format!("unknown family {s:?}"))),
        }
    }
}

/// A classical Lie algebra of `n × n` matrices over `D`, regarded as a vector
/// space over the coefficient field `K`.
///
/// For `GL`/`SL` the algebra acts on `V = D^n` and on the partner space
/// `W = D^n` of the pairing `⟨v, w⟩ = v^T G w` by `ξ ↦ -G^{-1} ξ^T G`. For
/// `SO`/`SP` the algebra is `{ ξ : ξ^T G + G ξ = 0 }` for the stored form.
#[derive(Clone, PartialEq, Eq)]
pub struct AmbientAlgebra {
    family: Family,
    n: usize,
    form: SesquiStructure,
    field: Ring,
    space: MatrixSpace,
}

impl AmbientAlgebra {
    /// `gl(n)` over `ring`, with coefficient field the center-compatible
    /// default (`Q` for `Q` and `H`, `Q(i)` for `Q(i)`).
    pub fn gl(ring: Ring, n: usize) -> Result<Self> {
        Self::build(
            Family::GL,
            SesquiStructure::standard_pairing(ring, n),
            default_field(ring),
        )
    }

    pub fn sl(ring: Ring, n: usize) -> Result<Self> {
        Self::build(
            Family::SL,
            SesquiStructure::standard_pairing(ring, n),
            default_field(ring),
        )
    }

    /// `so(n)` for the split form with antidiagonal gram.
    pub fn so(ring: Ring, n: usize) -> Result<Self> {
        Self::build(
            Family::SO,
            SesquiStructure::split_symmetric(ring, n),
            default_field(ring),
        )
    }

    /// `sp(m)` acting on `D^{2m}` with the standard symplectic form.
    pub fn sp(ring: Ring, m: usize) -> Result<Self> {
        Self::build(
            Family::SP,
            SesquiStructure::standard_symplectic(ring, m),
            default_field(ring),
        )
    }

    /// General constructor. `form` is the pairing `V × W` for `GL`/`SL` and
    /// the invariant form for `SO`/`SP`; `field` is the coefficient field.
    pub fn build(family: Family, form: SesquiStructure, field: Ring) -> Result<Self> {
        let ring = form.ring();
        let n = form.dim();
        if n == 0 {
            return Err(Error::Precondition("rank must be at least 1".into()));
        }
        if !super::space::valid_field(ring, field) {
            return Err(Error::Precondition(format!(
                "{field} is not a coefficient field for {ring}"
            )));
        }
        let expected = match family {
            Family::GL | Family::SL => FormKind::Pairing,
            Family::SO => FormKind::SymBilinear,
            Family::SP => FormKind::AltBilinear,
        };
        if form.kind() != expected {
            return Err(Error::FormKind(format!(
                "{family} needs a {expected:?} structure, got {:?}",
                form.kind()
            )));
        }
        if form.twist() && family != Family::GL {
            return Err(Error::FormKind(format!(
                "{family} is only supported for untwisted structures"
            )));
        }
        if family == Family::SP && n % 2 != 0 {
            return Err(Error::Precondition(
                "symplectic forms live in even dimension".into(),
            ));
        }
        let gl = MatrixSpace::full(ring, field, n, n);
        let space = match family {
            Family::GL => gl,
            Family::SL => {
                if !ring.is_commutative() {
                    return Err(Error::Precondition(
                        "sl over H is handled through its complex model".into(),
                    ));
                }
                let zero = MatrixSpace::zero(ring, field, 1, 1);
                let tr = |x: &Matrix| Matrix::diag(ring, &[x.trace()]);
                gl.preimage(&[(&tr, &zero)])
            }
            Family::SO | Family::SP => {
                let g = form.gram().clone();
                let zero = MatrixSpace::zero(ring, field, n, n);
                let inv = move |x: &Matrix| &(&x.transpose() * &g) + &(&g * x);
                gl.preimage(&[(&inv, &zero)])
            }
        };
        Ok(AmbientAlgebra {
            family,
            n,
            form,
            field,
            space,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Size of the defining matrices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Rank parameter in the usual convention (`m` for `sp(m)` on `D^{2m}`).
    pub fn rank_param(&self) -> usize {
        if self.family == Family::SP {
            self.n / 2
        } else {
            self.n
        }
    }

    pub fn ring(&self) -> Ring {
        self.form.ring()
    }

    pub fn field(&self) -> Ring {
        self.field
    }

    pub fn form(&self) -> &SesquiStructure {
        &self.form
    }

    pub fn space(&self) -> &MatrixSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        self.space.contains(m)
    }

    /// Whether the algebra acts on a separate partner space `W`.
    pub fn has_partner(&self) -> bool {
        matches!(self.family, Family::GL | Family::SL)
    }

    /// The induced action `ξ ↦ -G^{-1} ξ^T G` on the partner space.
    pub fn dual_action(&self, x: &Matrix) -> Matrix {
        let g = self.form.gram();
        let ginv = g.inverse().expect("nondegenerate");
        let t = if self.form.twist() {
            x.adjoint()
        } else {
            x.transpose()
        };
        -&(&(&ginv * &t) * g)
    }

    /// Dimension of a Borel subalgebra (over `K`, for the split forms used here).
    pub fn borel_dim(&self) -> usize {
        let n = self.n;
        let deg = self.ring().degree() / self.field.degree();
        let d = match self.family {
            Family::GL => n * (n + 1) / 2,
            Family::SL => n * (n + 1) / 2 - 1,
            Family::SP => {
                let m = n / 2;
                m * m + m
            }
            Family::SO => {
                let m = n / 2;
                if n % 2 == 0 {
                    m * m
                } else {
                    m * m + m
                }
            }
        };
        d * deg
    }

    pub fn descriptor(&self) -> String {
        format!("{}({}, {})", self.family, self.rank_param(), self.ring())
    }
}

pub(crate) fn default_field(ring: Ring) -> Ring {
    match ring {
        Ring::Gauss => Ring::Gauss,
        _ => Ring::Rat,
    }
}

impl fmt::Debug for AmbientAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} over {} (dim {})",
            self.descriptor(),
            self.field,
            self.dim()
        )
    }
}

/// The element `u ∧ v ↦ (x ↦ ⟨x, v⟩ u - ⟨x, u⟩ v)` of `so`, as a matrix
/// `u v^T G - v u^T G`.
pub fn wedge(form: &SesquiStructure, u: &[Scalar], v: &[Scalar]) -> Matrix {
    let ring = form.ring();
    let n = form.dim();
    let col = |x: &[Scalar]| {
        Matrix::from_columns(ring, n, &[x.to_vec()]).expect("vector of the right length")
    };
    let (cu, cv) = (col(u), col(v));
    let g = form.gram();
    &(&(&cu * &cv.transpose()) * g) - &(&(&cv * &cu.transpose()) * g)
}
