use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactlin::quaternionic::omega;
use crate::exactlin::{FormKind, Matrix, Ring, Scalar, SesquiStructure};
use crate::liealg::space::MatrixSpace;
use crate::liealg::subalgebra::bracket_span;
use crate::liealg::{AmbientAlgebra, MatrixLieSubalgebra};

use super::conjugation::Conjugation;
use super::spec::RealFormSpec;

const G: Ring = Ring::Gauss;

/// A real form `g_R` inside its complexification `g_C` over `Q(i)`.
#[derive(Clone, Debug)]
pub struct RealForm {
    pub spec: RealFormSpec,
    /// `g_C`, acting on `Q(i)^n`.
    pub complex: Arc<AmbientAlgebra>,
    /// The conjugation of `g_C` over `g_R`.
    pub tau: Conjugation,
    /// Quaternionic structure of the defining space, when there is one.
    pub j: Option<Conjugation>,
    /// Hermitian, symmetric, alternating or quaternionic forms attached to the form.
    pub forms: Vec<SesquiStructure>,
    /// `g_R` as a `Q`-span of complex matrices.
    pub real: MatrixSpace,
}

fn signs(p: usize, q: usize, repeat: usize) -> Matrix {
    let d: Vec<Scalar> = (0..p * repeat)
        .map(|_| Scalar::one(G))
        .chain((0..q * repeat).map(|_| Scalar::from_int(G, -1)))
        .collect();
    Matrix::diag(G, &d)
}

/// Symmetric gram of signature `(p, q)`: antidiagonal pairs `e_i, e_{n-1-i}`
/// for `i < min(p, q)` and `±1` on the middle coordinates.
fn indefinite_symmetric(p: usize, q: usize) -> Matrix {
    let n = p + q;
    let m = p.min(q);
    let mid = if p > q { 1 } else { -1 };
    Matrix::from_fn(G, n, n, |i, j| {
        let v = if i < m || i >= n - m {
            (i + j + 1 == n) as i64
        } else {
            (i == j) as i64 * mid
        };
        Scalar::from_int(G, v)
    })
}

/// Block diagonal of `n` copies of `[[0, 1], [1, 0]]`.
fn paired_symmetric(n: usize) -> Matrix {
    let block = Matrix::from_ints(G, &[&[0, 1], &[1, 0]]);
    Matrix::block_diag(G, &vec![block; n])
}

fn quat_form(kind: FormKind, gram: Matrix) -> Result<SesquiStructure> {
    SesquiStructure::new(kind, gram, true)
}

/// Builds `g_R ⊆ g_C` with its conjugation, quaternionic structure and forms.
///
/// Real points are the kernel of `1 - τ` over `Q`. The construction checks
/// that `τ` is an involution preserving `g_C`, that `J² = -1`, and that
/// `dim_Q g_R = dim_{Q(i)} g_C`.
pub fn build_real_form(spec: RealFormSpec) -> Result<Arc<RealForm>> {
    let n = spec.complex_dim();
    let family = spec.complex_family();
    let pairing = || SesquiStructure::standard_pairing(G, n);
    let ident = || Matrix::identity(G, n);
    let mut forms = Vec::new();
    let mut j = None;
    let (form, tau) = match spec {
        RealFormSpec::SlR(_) | RealFormSpec::GlR(_) => {
            (pairing(), Conjugation::real_structure(ident())?)
        }
        RealFormSpec::SlH(_) | RealFormSpec::GlH(_) => {
            let jj = Conjugation::standard_j(n / 2);
            j = Some(jj.clone());
            (pairing(), jj)
        }
        RealFormSpec::Su(p, q) | RealFormSpec::U(p, q) => {
            let h = signs(p, q, 1);
            forms.push(SesquiStructure::new(FormKind::Hermitian, h.clone(), true)?);
            (pairing(), Conjugation::unitary(h)?)
        }
        RealFormSpec::So(p, q) => {
            let s = SesquiStructure::new(FormKind::SymBilinear, indefinite_symmetric(p, q), false)?;
            forms.push(s.clone());
            (s, Conjugation::real_structure(ident())?)
        }
        RealFormSpec::SpR(m) => {
            let s = SesquiStructure::standard_symplectic(G, m);
            forms.push(s.clone());
            (s, Conjugation::real_structure(ident())?)
        }
        RealFormSpec::Sp(p, q) => {
            // sp(S) ∩ u(Hc) with S = Hc Ωᵀ commutes with J = Ω·conj
            let hc = signs(p, q, 2);
            let s = &hc * &omega(p + q).transpose();
            let qsigns = signs(p, q, 1).with_ring(Ring::Quat)?;
            forms.push(quat_form(FormKind::Hermitian, qsigns)?);
            j = Some(Conjugation::standard_j(p + q));
            (
                SesquiStructure::new(FormKind::AltBilinear, s, false)?,
                Conjugation::unitary(hc)?,
            )
        }
        RealFormSpec::SoStar(m) => {
            // so(S) ∩ u(H) with S paired, H = diag(1, -1, ...) commutes with J = S H · conj = Ω·conj
            let k = m / 2;
            let h = Matrix::diag(
                G,
                &(0..m)
                    .map(|i| Scalar::from_int(G, if i % 2 == 0 { 1 } else { -1 }))
                    .collect::<Vec<_>>(),
            );
            let kappa = Matrix::identity(Ring::Quat, k).scale_right(&Scalar::i_quat());
            forms.push(quat_form(FormKind::SkewHermitian, kappa)?);
            forms.push(SesquiStructure::new(FormKind::Hermitian, h.clone(), true)?);
            j = Some(Conjugation::standard_j(k));
            (
                SesquiStructure::new(FormKind::SymBilinear, paired_symmetric(k), false)?,
                Conjugation::unitary(h)?,
            )
        }
    };
    let complex = Arc::new(AmbientAlgebra::build(family, form, G)?);
    let over_q = complex.space().restrict_field(Ring::Rat);
    for b in over_q.basis() {
        let t = tau.apply(b);
        if !complex.contains(&t) || &tau.apply(&t) != b {
            return Err(Error::Internal(format!(
                "conjugation of {spec} is not an involution of the complex algebra"
            )));
        }
    }
    if let Some(jj) = &j {
        if jj.square_sign() != Some(-1) {
            return Err(Error::Internal(format!(
                "quaternionic structure of {spec} does not square to -1"
            )));
        }
    }
    let zero = MatrixSpace::zero(G, Ring::Rat, n, n);
    let fixed = |x: &Matrix| x - &tau.apply(x);
    let real = over_q.preimage(&[(&fixed, &zero)]);
    if real.dim() != complex.dim() {
        return Err(Error::Internal(format!(
            "{spec}: real dimension {} differs from complex dimension {}",
            real.dim(),
            complex.dim()
        )));
    }
    Ok(Arc::new(RealForm {
        spec,
        complex,
        tau,
        j,
        forms,
        real,
    }))
}

impl RealForm {
    /// `g_R` itself.
    pub fn algebra(self: &Arc<Self>) -> RealSubalgebra {
        RealSubalgebra {
            form: self.clone(),
            space: self.real.clone(),
        }
    }

    /// The hermitian form whose adjoint defines `τ`, for unitary kinds.
    pub fn hermitian(&self) -> Option<SesquiStructure> {
        if !self.tau.hermitian {
            return None;
        }
        SesquiStructure::new(FormKind::Hermitian, self.tau.matrix.clone(), true).ok()
    }

    /// `g_R ∩ p` for a complex subalgebra `p` of `g_C`.
    pub fn intersect(self: &Arc<Self>, p: &MatrixLieSubalgebra) -> Result<RealSubalgebra> {
        if p.ambient() != &self.complex {
            return Err(Error::Precondition(
                "subalgebra does not live in the complexification".into(),
            ));
        }
        let space = self.real.intersect(&p.space().restrict_field(Ring::Rat))?;
        Ok(RealSubalgebra {
            form: self.clone(),
            space,
        })
    }
}

/// A real subalgebra of `g_R`, stored by a `Q`-basis of complex matrices.
#[derive(Clone, Debug)]
pub struct RealSubalgebra {
    form: Arc<RealForm>,
    space: MatrixSpace,
}

impl PartialEq for RealSubalgebra {
    fn eq(&self, other: &Self) -> bool {
        self.form.spec == other.form.spec && self.space == other.space
    }
}

impl RealSubalgebra {
    /// Real span of `mats`, which must lie in `g_R` and be closed under the bracket.
    pub fn new(form: Arc<RealForm>, mats: &[Matrix]) -> Result<Self> {
        let n = form.complex.n();
        let space = MatrixSpace::span(G, Ring::Rat, n, n, mats)?;
        if !form.real.contains_space(&space) {
            return Err(Error::NotInAmbient(format!(
                "matrices outside {}",
                form.spec
            )));
        }
        if !space.contains_space(&bracket_span(&space, &space)) {
            return Err(Error::Precondition(
                "span is not closed under the bracket".into(),
            ));
        }
        Ok(RealSubalgebra { form, space })
    }

    pub fn form(&self) -> &Arc<RealForm> {
        &self.form
    }

    pub fn spec(&self) -> RealFormSpec {
        self.form.spec
    }

    pub fn space(&self) -> &MatrixSpace {
        &self.space
    }

    pub fn basis(&self) -> &[Matrix] {
        self.space.basis()
    }

    /// Real dimension.
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// The complex span inside `g_C`.
    pub fn complexify(&self) -> Result<MatrixLieSubalgebra> {
        MatrixLieSubalgebra::from_space(self.form.complex.clone(), self.space.extend_field(G)?)
    }
}
