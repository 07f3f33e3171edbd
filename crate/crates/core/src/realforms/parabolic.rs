use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::SesquiStructure;
use crate::flags::GeneralizedFlag;
use crate::liealg::{is_parabolic, Family, ParabolicVerdict};
use crate::recovery::RecoveredFlags;

use super::build::{RealForm, RealSubalgebra};
use super::conjugation::{realify_flag, Conjugation};

/// One step of the real roundtrip.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stage {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Outcome of [`is_real_parabolic`] with its evidence chain. On failure the
/// last stage is the one that failed.
#[derive(Clone, Debug, Serialize)]
pub struct RealParabolicVerdict {
    pub parabolic: bool,
    pub stages: Vec<Stage>,
    /// Recovered flags of the complexification.
    pub complex_flags: Vec<GeneralizedFlag>,
    /// The base flag read over the real points (or as quaternionic subspaces).
    pub real_flag: Option<GeneralizedFlag>,
    /// How many of the recovered complex flags are stable under the structure.
    pub stable_flags: usize,
    /// Real trace conditions cutting `p` out of the real stabilizer.
    pub trace_conditions: usize,
}

impl RealParabolicVerdict {
    fn new() -> Self {
        RealParabolicVerdict {
            parabolic: false,
            stages: Vec::new(),
            complex_flags: Vec::new(),
            real_flag: None,
            stable_flags: 0,
            trace_conditions: 0,
        }
    }

    fn push(&mut self, name: &'static str, passed: bool, detail: String) -> bool {
        self.stages.push(Stage {
            name,
            passed,
            detail,
        });
        passed
    }

    pub fn failing_stage(&self) -> Option<&Stage> {
        self.stages.iter().find(|s| !s.passed)
    }
}

/// Members of `f` whose hermitian orthogonal is not a member.
fn hermitian_gaps(f: &GeneralizedFlag, h: &SesquiStructure) -> Result<usize> {
    let mut gaps = 0;
    for m in f.members() {
        if !f.contains_member(&h.perp(m)?) {
            gaps += 1;
        }
    }
    Ok(gaps)
}

/// Structure that members of recovered flags must be stable under: `J` for
/// quaternionic forms, otherwise `τ` when it acts on vectors.
fn vector_structure(form: &RealForm) -> Option<&Conjugation> {
    form.j.as_ref().or(if form.tau.hermitian {
        None
    } else {
        Some(&form.tau)
    })
}

fn flag_is_stable(f: &GeneralizedFlag, form: &RealForm) -> Result<bool> {
    match vector_structure(form) {
        Some(c) => Ok(f.members().iter().all(|m| c.stabilizes(m))),
        None => {
            let h = form
                .hermitian()
                .ok_or_else(|| Error::Internal("unitary form without a hermitian gram".into()))?;
            Ok(hermitian_gaps(f, &h)? == 0)
        }
    }
}

fn stability_stage(
    v: &mut RealParabolicVerdict,
    rec: &RecoveredFlags,
    form: &RealForm,
) -> Result<bool> {
    let mut stable = Vec::new();
    for f in &rec.flags {
        stable.push(flag_is_stable(f, form)?);
    }
    v.stable_flags = stable.iter().filter(|s| **s).count();
    let mut ok = stable[0];
    let mut detail = format!(
        "{} of {} recovered flags stable",
        v.stable_flags,
        rec.flags.len()
    );
    if let (Some(partner), Some(c)) = (&rec.partner, vector_structure(form)) {
        // the dual action intertwines the structure on W with the same matrix
        let w_ok = partner.members().iter().all(|m| c.stabilizes(m));
        ok &= w_ok;
        if !w_ok {
            detail.push_str("; partner flag not stable");
        }
    }
    Ok(v.push("stability", ok, detail))
}

/// The real roundtrip: `p` is parabolic in `g_R` when its complexification is
/// parabolic, the recovered flags are stable under `τ` (or `J`), and `p` is
/// the whole real stabilizer of the realified flags (no real trace
/// conditions remain at finite rank).
pub fn is_real_parabolic(p: &RealSubalgebra) -> Result<RealParabolicVerdict> {
    let form = p.form();
    let mut v = RealParabolicVerdict::new();
    let pc = p.complexify()?;
    if !v.push(
        "complexify",
        pc.dim() == p.dim(),
        format!("dim_C = {}, dim_R = {}", pc.dim(), p.dim()),
    ) {
        return Ok(v);
    }
    let rec = match is_parabolic(&pc)? {
        ParabolicVerdict::Parabolic { recovery, .. } => *recovery,
        ParabolicVerdict::NotParabolic(o) => {
            v.push("complex-parabolic", false, o.to_string());
            return Ok(v);
        }
    };
    v.push(
        "complex-parabolic",
        true,
        format!("{:?} recovery", rec.case),
    );
    v.complex_flags = rec.flags.clone();
    if !stability_stage(&mut v, &rec, form)? {
        return Ok(v);
    }
    let structure = form.j.as_ref().unwrap_or(&form.tau);
    let real_flag = match realify_flag(rec.base_flag(), structure) {
        Ok(f) => f,
        Err(e @ Error::NotStable { .. }) => {
            v.push("realify", false, e.to_string());
            return Ok(v);
        }
        Err(e) => return Err(e),
    };
    v.push("realify", true, format!("{} members", real_flag.len()));
    v.real_flag = Some(real_flag);
    let real_stab = form.intersect(&rec.stabilizer)?;
    let contained = real_stab.space().contains_space(p.space());
    v.trace_conditions = real_stab.dim().saturating_sub(p.dim());
    let equal = contained && v.trace_conditions == 0;
    v.push(
        "trace-kernel",
        equal,
        format!(
            "real stabilizer dim {}, subalgebra dim {}",
            real_stab.dim(),
            p.dim()
        ),
    );
    v.parabolic = equal;
    Ok(v)
}

/// Number of real generalized flags with stabilizer `p`: three when the
/// orthogonal trichotomy survives over the reals, one otherwise.
pub fn real_flag_count(p: &RealSubalgebra) -> Result<usize> {
    let v = is_real_parabolic(p)?;
    if !v.parabolic {
        return Err(Error::Precondition(format!(
            "subalgebra is not parabolic in {}",
            p.spec()
        )));
    }
    match v.stable_flags {
        1 => Ok(1),
        3 if p.form().complex.family() == Family::SO => Ok(3),
        k => Err(Error::Internal(format!(
            "{k} stable flags for a real parabolic"
        ))),
    }
}

/// Proper members of `f` that are isotropic for `h`.
pub fn isotropic_members(f: &GeneralizedFlag, h: &SesquiStructure) -> Result<usize> {
    let mut count = 0;
    for m in f.proper_members() {
        if h.is_isotropic(m)? {
            count += 1;
        }
    }
    Ok(count)
}
