//! Tangent-level test for totally real orbits and the two-condition
//! characterization of real parabolic intersections.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{Matrix, Ring, Scalar, Subspace, Vector};
use crate::liealg::space::annihilator;
use crate::liealg::{
    is_parabolic, AmbientAlgebra, MatrixLieSubalgebra, MatrixSpace, ParabolicVerdict,
};
use crate::realforms::{RealForm, RealSubalgebra};

/// `T = g_C / p̃` with the image `T_R` of `g_R`.
///
/// Vectors of `T` are coordinates in `Q(i)^t` given by functionals vanishing
/// on `p̃`. `J_T` is multiplication by `i`; `T_R` is stored as a `Q`-subspace
/// of `Q^{2t}` through real and imaginary parts.
#[derive(Clone, Debug)]
pub struct TangentModel {
    ambient: Arc<AmbientAlgebra>,
    ptilde: MatrixLieSubalgebra,
    form: Arc<RealForm>,
    functionals: Vec<Vector>,
    section: Vec<Matrix>,
    real_image: Subspace,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TangentDims {
    pub ambient: usize,
    pub ptilde: usize,
    pub tangent: usize,
    pub real_tangent: usize,
    pub real_intersection: usize,
}

fn split(v: &[Scalar]) -> Vector {
    let re = v
        .iter()
        .map(|z| Scalar::from_rational(Ring::Rat, z.components()[0].clone()));
    let im = v
        .iter()
        .map(|z| Scalar::from_rational(Ring::Rat, z.components()[1].clone()));
    re.chain(im).collect()
}

/// `J_T` in real coordinates: `(a, b) ↦ (-b, a)`.
fn rotate(v: &[Scalar]) -> Vector {
    let t = v.len() / 2;
    v[t..]
        .iter()
        .map(|x| -x)
        .chain(v[..t].iter().cloned())
        .collect()
}

pub fn tangent_model(
    ptilde: &MatrixLieSubalgebra,
    realform: &RealSubalgebra,
) -> Result<TangentModel> {
    let form = realform.form().clone();
    if ptilde.ambient() != &form.complex {
        return Err(Error::Precondition(format!(
            "subalgebra does not live in the complexification of {}",
            form.spec
        )));
    }
    let ambient = form.complex.clone();
    let g = ambient.space();
    let pcoords: Vec<Vector> = ptilde
        .basis()
        .iter()
        .map(|x| g.coefficients(x).expect("p̃ ⊆ g_C"))
        .collect();
    let p = Subspace::span(Ring::Gauss, g.dim(), &pcoords)?;
    let functionals = annihilator(&p);
    let mut section = Vec::new();
    let mut acc = ptilde.space().clone();
    for b in g.basis() {
        if !acc.contains(b) {
            acc = acc.sum(&MatrixSpace::span(
                Ring::Gauss,
                Ring::Gauss,
                ambient.n(),
                ambient.n(),
                &[b.clone()],
            )?)?;
            section.push(b.clone());
        }
    }
    let mut model = TangentModel {
        ambient,
        ptilde: ptilde.clone(),
        form,
        functionals,
        section,
        real_image: Subspace::zero(Ring::Rat, 0),
    };
    let t = model.dim();
    let images: Vec<Vector> = realform
        .basis()
        .iter()
        .map(|x| split(&model.project(x)))
        .collect();
    model.real_image = Subspace::span(Ring::Rat, 2 * t, &images)?;
    Ok(model)
}

impl TangentModel {
    pub fn ambient(&self) -> &Arc<AmbientAlgebra> {
        &self.ambient
    }

    pub fn ptilde(&self) -> &MatrixLieSubalgebra {
        &self.ptilde
    }

    /// Complex dimension of `T`.
    pub fn dim(&self) -> usize {
        self.functionals.len()
    }

    /// Elements of `g_C` whose classes form a basis of `T`.
    pub fn section(&self) -> &[Matrix] {
        &self.section
    }

    /// Class of `x ∈ g_C` in `T`.
    pub fn project(&self, x: &Matrix) -> Vector {
        let c = self
            .ambient
            .space()
            .coefficients(x)
            .expect("element of g_C");
        self.functionals
            .iter()
            .map(|a| {
                a.iter()
                    .zip(&c)
                    .fold(Scalar::zero(Ring::Gauss), |acc, (u, v)| acc + u * v)
            })
            .collect()
    }

    /// `J_T` on `T`.
    pub fn apply_j(&self, v: &[Scalar]) -> Vector {
        v.iter().map(|z| z * &Scalar::i()).collect()
    }

    /// Real dimension of `T_R`.
    pub fn real_dim(&self) -> usize {
        self.real_image.dim()
    }

    /// `dim_Q (J_T(T_R) ∩ T_R)`.
    pub fn j_intersection_dim(&self) -> usize {
        let rotated: Vec<Vector> = self.real_image.basis().iter().map(|v| rotate(v)).collect();
        let jt = Subspace::span(Ring::Rat, 2 * self.dim(), &rotated).expect("same ambient");
        self.real_image.intersect(&jt).expect("same ambient").dim()
    }

    /// `dim_Q (g_R ∩ p̃)`.
    pub fn real_intersection_dim(&self) -> usize {
        self.form
            .real
            .intersect(&self.ptilde.space().restrict_field(Ring::Rat))
            .expect("same shape")
            .dim()
    }

    pub fn dims(&self) -> TangentDims {
        TangentDims {
            ambient: self.ambient.dim(),
            ptilde: self.ptilde.dim(),
            tangent: self.dim(),
            real_tangent: self.real_dim(),
            real_intersection: self.real_intersection_dim(),
        }
    }
}

/// `J_T(T_R) ∩ T_R = 0`, cross-checked against
/// `dim_R(g_R ∩ p̃) = dim_C p̃`; disagreement is an internal error.
pub fn is_totally_real(m: &TangentModel) -> Result<bool> {
    let by_j = m.j_intersection_dim() == 0;
    let by_dim = m.real_intersection_dim() == m.ptilde.dim();
    if by_j != by_dim {
        return Err(Error::Internal(format!(
            "totally-real tests disagree: J-intersection says {by_j}, dimension count says {by_dim}"
        )));
    }
    Ok(by_j)
}

#[derive(Clone, Debug, Serialize)]
pub struct CharacterizationReport {
    pub totally_real: bool,
    pub tau_stable_traces: bool,
    /// No trace conditions separate `p` from `p̃`.
    pub vacuous_traces: bool,
    pub verdict: bool,
    pub dims: TangentDims,
}

fn tau_stable(space: &MatrixSpace, form: &RealForm) -> bool {
    space
        .basis()
        .iter()
        .all(|x| space.contains(&form.tau.apply(x)))
}

/// Both conditions of the characterization for a parabolic `p` of `g_C`:
/// the orbit of the base point of `g_C/p̃` is totally real, and the trace
/// conditions cutting `p` out of `p̃` form a `τ`-stable family.
pub fn characterize(
    p: &MatrixLieSubalgebra,
    realform: &RealSubalgebra,
) -> Result<CharacterizationReport> {
    let ptilde = match is_parabolic(p)? {
        ParabolicVerdict::Parabolic { recovery, .. } => recovery.normalizer,
        ParabolicVerdict::NotParabolic(o) => {
            return Err(Error::Precondition(format!(
                "subalgebra is not parabolic: {o}"
            )));
        }
    };
    let model = tangent_model(&ptilde, realform)?;
    let totally_real = is_totally_real(&model)?;
    let form = realform.form();
    let vacuous_traces = ptilde.dim() == p.dim();
    let tau_stable_traces =
        vacuous_traces || (tau_stable(p.space(), form) && tau_stable(ptilde.space(), form));
    Ok(CharacterizationReport {
        totally_real,
        tau_stable_traces,
        vacuous_traces,
        verdict: totally_real && tau_stable_traces,
        dims: model.dims(),
    })
}
