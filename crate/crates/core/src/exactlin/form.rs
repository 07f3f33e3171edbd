use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::matrix::{kernel_of_rows, Matrix, Vector};
use super::scalar::{Ring, Scalar};
use super::subspace::{promote, Subspace};

/// The symmetry type of a nondegenerate structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum FormKind {
    /// A pairing `V × W → D` between two different spaces.
    Pairing,
    SymBilinear,
    AltBilinear,
    Hermitian,
    SkewHermitian,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum IsotropyClass {
    Isotropic,
    Coisotropic,
    Both,
    Neither,
}

/// A nondegenerate bilinear or sesquilinear structure given by a gram matrix.
///
/// Without twist the value is `x^T G y`; with twist it is `y^* G x`, which is
/// right-linear in `x` and is the only sensible choice over `H`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SesquiStructure {
    kind: FormKind,
    gram: Matrix,
    twist: bool,
}

impl SesquiStructure {
    pub fn new(kind: FormKind, gram: Matrix, twist: bool) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::DimensionMismatch {
                expected: gram.rows(),
                found: gram.cols(),
            });
        }
        if gram.ring() == Ring::Quat && !twist {
            return Err(Error::FormKind(
                "quaternionic structures must conjugate one argument".into(),
            ));
        }
        let sym_err = |what: &str| Err(Error::FormSymmetry(what.to_string()));
        match kind {
            FormKind::Pairing => {}
            FormKind::SymBilinear | FormKind::AltBilinear if twist => {
                return Err(Error::FormKind(format!("{kind:?} forms are not twisted")));
            }
            FormKind::SymBilinear if gram.transpose() != gram => {
                return sym_err("gram is not symmetric")
            }
            FormKind::AltBilinear if gram.transpose() != -&gram => {
                return sym_err("gram is not alternating")
            }
            FormKind::Hermitian | FormKind::SkewHermitian if !twist => {
                return Err(Error::FormKind(format!(
                    "{kind:?} forms conjugate one argument"
                )));
            }
            FormKind::Hermitian if gram.adjoint() != gram => {
                return sym_err("gram is not hermitian")
            }
            FormKind::SkewHermitian if gram.adjoint() != -&gram => {
                return sym_err("gram is not skew-hermitian")
            }
            _ => {}
        }
        if gram.rank() < gram.rows() {
            return Err(Error::DegenerateForm);
        }
        Ok(SesquiStructure { kind, gram, twist })
    }

    /// The standard pairing `Σ x_l y_l` (conjugated over `H`).
    pub fn standard_pairing(ring: Ring, n: usize) -> Self {
        Self::new(
            FormKind::Pairing,
            Matrix::identity(ring, n),
            ring == Ring::Quat,
        )
        .expect("identity is nondegenerate")
    }

    /// Split symmetric form with antidiagonal gram of ones.
    pub fn split_symmetric(ring: Ring, n: usize) -> Self {
        let g = Matrix::from_fn(ring, n, n, |i, j| {
            Scalar::from_int(ring, (i + j + 1 == n) as i64)
        });
        Self::new(FormKind::SymBilinear, g, false).expect("antidiagonal gram is symmetric")
    }

    /// Standard symplectic form on `D^{2n}`: `ω(e_i, e_{2n-1-i}) = 1` for `i < n`.
    pub fn standard_symplectic(ring: Ring, n: usize) -> Self {
        let m = 2 * n;
        let g = Matrix::from_fn(ring, m, m, |i, j| {
            let v = if i + j + 1 != m {
                0
            } else if i < n {
                1
            } else {
                -1
            };
            Scalar::from_int(ring, v)
        });
        Self::new(FormKind::AltBilinear, g, false).expect("standard symplectic gram")
    }

    pub fn kind(&self) -> FormKind {
        self.kind
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn twist(&self) -> bool {
        self.twist
    }

    pub fn ring(&self) -> Ring {
        self.gram.ring()
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    /// `⟨x, y⟩`.
    pub fn value(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let (left, right) = if self.twist { (y, x) } else { (x, y) };
        let gr = self.gram.mul_vec(right);
        let mut acc = Scalar::zero(self.ring());
        for (l, g) in left.iter().zip(&gr) {
            let l = if self.twist { l.conj() } else { l.clone() };
            acc = acc + &l * g;
        }
        acc
    }

    /// Row `r` with `⟨x, w⟩ = r · w` for all `w`.
    fn row_against_right(&self, x: &[Scalar]) -> Vector {
        let ring = self.ring();
        let x = promote(x, ring);
        if self.twist {
            // ⟨x,w⟩ = w^* G x = conj(x^* G^* w); zero iff x^* G^* w = 0
            let gx = self.gram.mul_vec(&x);
            gx.iter().map(Scalar::conj).collect()
        } else {
            self.gram.transpose().mul_vec(&x)
        }
    }

    /// Row `r` with `⟨v, y⟩ = 0 ⇔ r · v = 0` for all `v`.
    fn row_against_left(&self, y: &[Scalar]) -> Vector {
        let ring = self.ring();
        let y = promote(y, ring);
        if self.twist {
            // w^* G v: row y^* G
            self.gram
                .adjoint()
                .mul_vec(&y)
                .iter()
                .map(Scalar::conj)
                .collect()
        } else {
            self.gram.mul_vec(&y)
        }
    }

    fn check_subspace(&self, s: &Subspace) -> Result<()> {
        if s.ring() != self.ring() {
            return Err(Error::TagMismatch {
                expected: self.ring(),
                found: s.ring(),
            });
        }
        if s.ambient_dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: s.ambient_dim(),
            });
        }
        Ok(())
    }

    /// `{ w : ⟨v, w⟩ = 0 for all v ∈ s }`, in the partner space for a pairing.
    pub fn perp(&self, s: &Subspace) -> Result<Subspace> {
        self.check_subspace(s)?;
        let mut rows: Vec<Vector> = s
            .basis()
            .iter()
            .map(|v| self.row_against_right(v))
            .collect();
        let k = kernel_of_rows(&mut rows, self.dim(), self.ring());
        Subspace::span(self.ring(), self.dim(), &k)
    }

    /// `{ v : ⟨v, w⟩ = 0 for all w ∈ t }`, the perp of a partner-space subspace.
    pub fn perp_left(&self, t: &Subspace) -> Result<Subspace> {
        self.check_subspace(t)?;
        let mut rows: Vec<Vector> = t.basis().iter().map(|w| self.row_against_left(w)).collect();
        let k = kernel_of_rows(&mut rows, self.dim(), self.ring());
        Subspace::span(self.ring(), self.dim(), &k)
    }

    /// `s^⊥⊥`.
    pub fn closure(&self, s: &Subspace) -> Result<Subspace> {
        self.perp_left(&self.perp(s)?)
    }

    pub fn isotropy_class(&self, s: &Subspace) -> Result<IsotropyClass> {
        if self.kind == FormKind::Pairing {
            return Err(Error::FormKind(
                "isotropy is undefined for a pairing of two spaces".into(),
            ));
        }
        let p = self.perp(s)?;
        Ok(match (p.contains(s), s.contains(&p)) {
            (true, true) => IsotropyClass::Both,
            (true, false) => IsotropyClass::Isotropic,
            (false, true) => IsotropyClass::Coisotropic,
            (false, false) => IsotropyClass::Neither,
        })
    }

    pub fn is_isotropic(&self, s: &Subspace) -> Result<bool> {
        Ok(self.perp(s)?.contains(s))
    }

    /// Same structure over a wider ring (e.g. a rational gram over `Q(i)`).
    pub fn with_ring(&self, ring: Ring) -> Result<Self> {
        let twist = self.twist || ring == Ring::Quat;
        let kind = match (self.kind, twist && !self.twist) {
            (FormKind::SymBilinear, true) => FormKind::Hermitian,
            (FormKind::AltBilinear, true) => FormKind::SkewHermitian,
            (k, _) => k,
        };
        Self::new(kind, self.gram.with_ring(ring)?, twist)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::subspace::unit_vector;

    #[test]
    fn perp_of_a_coordinate_line() {
        let f = SesquiStructure::standard_pairing(Ring::Rat, 3);
        let s = Subspace::coordinate(Ring::Rat, 3, &[0]);
        assert_eq!(
            f.perp(&s).unwrap(),
            Subspace::coordinate(Ring::Rat, 3, &[1, 2])
        );
        assert_eq!(
            f.perp(&Subspace::zero(Ring::Rat, 3)).unwrap(),
            Subspace::full(Ring::Rat, 3)
        );
        assert!(f.perp(&Subspace::full(Ring::Rat, 3)).unwrap().is_zero());
    }

    #[test]
    fn split_form_has_lagrangian_coordinate_plane() {
        let f = SesquiStructure::split_symmetric(Ring::Gauss, 4);
        let s = Subspace::coordinate(Ring::Gauss, 4, &[0, 1]);
        assert_eq!(f.perp(&s).unwrap(), s);
        assert_eq!(f.isotropy_class(&s).unwrap(), IsotropyClass::Both);
    }

    #[test]
    fn isotropy_classes() {
        let f = SesquiStructure::split_symmetric(Ring::Rat, 2);
        let e1 = Subspace::coordinate(Ring::Rat, 2, &[0]);
        assert_eq!(f.isotropy_class(&e1).unwrap(), IsotropyClass::Both);
        let id = SesquiStructure::new(FormKind::SymBilinear, Matrix::identity(Ring::Rat, 2), false)
            .unwrap();
        assert_eq!(id.isotropy_class(&e1).unwrap(), IsotropyClass::Neither);

        let g = Ring::Gauss;
        let h = Matrix::diag(g, &[Scalar::one(g), Scalar::from_int(g, -1)]);
        let herm = SesquiStructure::new(FormKind::Hermitian, h, true).unwrap();
        let v = vec![Scalar::one(g), Scalar::one(g)];
        assert!(herm.value(&v, &v).is_zero());
        let line = Subspace::span(g, 2, &[v]).unwrap();
        assert_eq!(herm.isotropy_class(&line).unwrap(), IsotropyClass::Both);

        let pairing = SesquiStructure::standard_pairing(Ring::Rat, 2);
        assert!(matches!(
            pairing.isotropy_class(&e1),
            Err(Error::FormKind(_))
        ));
    }

    #[test]
    fn construction_checks() {
        let r = Ring::Rat;
        let bad = Matrix::from_ints(r, &[&[1, 1], &[0, 1]]);
        assert!(matches!(
            SesquiStructure::new(FormKind::SymBilinear, bad, false),
            Err(Error::FormSymmetry(_))
        ));
        let singular = Matrix::from_ints(r, &[&[1, 1], &[1, 1]]);
        assert_eq!(
            SesquiStructure::new(FormKind::SymBilinear, singular, false),
            Err(Error::DegenerateForm)
        );
        let q = Matrix::identity(Ring::Quat, 2);
        assert!(matches!(
            SesquiStructure::new(FormKind::Pairing, q, false),
            Err(Error::FormKind(_))
        ));
    }

    #[test]
    fn quaternionic_skew_hermitian_value() {
        // gram diag(i): ⟨1,1⟩ = i
        let h = Ring::Quat;
        let f = SesquiStructure::new(
            FormKind::SkewHermitian,
            Matrix::diag(h, &[Scalar::i_quat()]),
            true,
        )
        .unwrap();
        let one = unit_vector(h, 1, 0);
        assert_eq!(f.value(&one, &one), Scalar::i_quat());
    }

    #[test]
    fn twisted_perp_is_a_right_subspace() {
        let h = Ring::Quat;
        let f = SesquiStructure::standard_pairing(h, 3);
        let v = vec![Scalar::one(h), Scalar::j(), Scalar::quat(1, 1, 0, 0)];
        let s = Subspace::span(h, 3, &[v.clone()]).unwrap();
        let p = f.perp(&s).unwrap();
        assert_eq!(p.dim(), 2);
        for w in p.basis() {
            assert!(f.value(&v, w).is_zero());
            let wq: Vector = w.iter().map(|x| x * &Scalar::k()).collect();
            assert!(f.value(&v, &wq).is_zero());
        }
        assert_eq!(f.closure(&s).unwrap(), s);
    }
}
