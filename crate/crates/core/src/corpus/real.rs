use std::sync::Arc;

use crate::error::Result;
use crate::exactlin::quaternionic::complexify_subspace;
use crate::exactlin::Ring;
use crate::flags::{is_self_taut, GeneralizedFlag};
use crate::liealg::MatrixLieSubalgebra;
use crate::realforms::{RealForm, RealFormSpec, RealSubalgebra};

use super::{
    ambient_coordinate_flags, coordinate_flags, frame_flags, image_flag, self_taut_coordinate_flags,
    witt_frame, Corpus,
};

/// A flag in the complexified defining space, its complex stabilizer `p`
/// and the real points `g_R ∩ p`.
#[derive(Clone, Debug)]
pub struct RealInstance {
    pub label: String,
    pub flag: GeneralizedFlag,
    pub complex: MatrixLieSubalgebra,
    pub real: RealSubalgebra,
}

/// Flags adapted to the real structure: rational ones for real structures,
/// frame flags of the hermitian form for unitary kinds, complexified
/// quaternionic flags when `J` is present. The complex coordinate flags of
/// the ambient are added alongside.
fn adapted_flags(form: &RealForm) -> Result<Vec<GeneralizedFlag>> {
    let amb = &form.complex;
    let mut out = ambient_coordinate_flags(amb)?;
    if form.spec.is_quaternionic() {
        let n = form.spec.complex_dim() / 2;
        let quat = match form.spec {
            RealFormSpec::SlH(_) | RealFormSpec::GlH(_) => coordinate_flags(Ring::Quat, n),
            _ => self_taut_coordinate_flags(&form.forms[0])?,
        };
        for f in quat {
            out.push(f.map(complexify_subspace)?);
        }
    } else if let Some(h) = form.hermitian() {
        out.extend(frame_flags(&witt_frame(&h)?.matrix)?);
    }
    let mut kept: Vec<GeneralizedFlag> = Vec::new();
    for f in out {
        let admissible = amb.has_partner() || is_self_taut(&f, amb.form())?;
        if admissible && !kept.contains(&f) {
            kept.push(f);
        }
    }
    Ok(kept)
}

fn instance(form: &Arc<RealForm>, label: String, flag: GeneralizedFlag) -> Result<RealInstance> {
    let complex = MatrixLieSubalgebra::flag_stabilizer(form.complex.clone(), &[&flag])?;
    let real = form.intersect(&complex)?;
    Ok(RealInstance { label, flag, complex, real })
}

/// The adapted coordinate flags followed by `random` flags moved by random
/// group elements, alternately from the real group and its complexification.
pub fn real_instances(form: &Arc<RealForm>, c: &mut Corpus, random: usize) -> Result<Vec<RealInstance>> {
    let base = adapted_flags(form)?;
    let mut out = Vec::with_capacity(base.len() + random);
    for (k, f) in base.iter().enumerate() {
        out.push(instance(form, format!("{}/coordinate/{k}", form.spec), f.clone())?);
    }
    for k in 0..random {
        let f = &base[c.below(base.len())];
        let g = if k % 2 == 0 { c.group_element(&form.real) } else { c.group_element(form.complex.space()) };
        out.push(instance(form, format!("{}/random/{k}", form.spec), image_flag(f, &g)?)?);
    }
    Ok(out)
}
