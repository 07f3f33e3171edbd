//! Real forms of the classical algebras, their conjugations, and the real
//! parabolic roundtrip.

mod build;
mod conjugation;
mod parabolic;
mod spec;

pub use build::{build_real_form, RealForm, RealSubalgebra};
pub use conjugation::{realify_flag, Conjugation, ConjugationKind};
pub use parabolic::{
    is_real_parabolic, isotropic_members, real_flag_count, RealParabolicVerdict, Stage,
};
pub use spec::{RealFormSpec, MAX_COMPLEX_DIM};

#[cfg(test)]
mod tests;
