use crate::error::{Error, Result};
use crate::recovery::{recover, Obstruction, RecoveredFlags, Recovery};

use super::borel::{certify_borel, BorelCertificate};
use super::subalgebra::MatrixLieSubalgebra;

/// Outcome of the parabolicity test.
#[derive(Clone, Debug)]
pub enum ParabolicVerdict {
    Parabolic {
        recovery: Box<RecoveredFlags>,
        certificate: BorelCertificate,
    },
    NotParabolic(Obstruction),
}

impl ParabolicVerdict {
    pub fn is_parabolic(&self) -> bool {
        matches!(self, ParabolicVerdict::Parabolic { .. })
    }
}

/// A subalgebra is parabolic exactly when it equals the stabilizer of its
/// recovered invariant flag(s); a Borel certificate is attached on success.
pub fn is_parabolic(s: &MatrixLieSubalgebra) -> Result<ParabolicVerdict> {
    let rec = match recover(s)? {
        Recovery::Chain(r) => r,
        Recovery::Obstructed(o) => return Ok(ParabolicVerdict::NotParabolic(o)),
    };
    if rec.stabilizer.space() != s.space() {
        let witness = rec
            .stabilizer
            .basis()
            .iter()
            .find(|x| !s.contains(x))
            .cloned()
            .ok_or_else(|| {
                Error::Internal(
                    "subalgebra is not contained in the stabilizer of its invariant flag".into(),
                )
            })?;
        return Ok(ParabolicVerdict::NotParabolic(
            Obstruction::NotEqualStabilizer {
                witness,
                stabilizer_dim: rec.stabilizer.dim(),
                subalgebra_dim: s.dim(),
            },
        ));
    }
    for f in &rec.flags[1..] {
        if MatrixLieSubalgebra::flag_stabilizer(s.ambient().clone(), &[f])? != rec.stabilizer {
            return Err(Error::Internal(
                "the three recovered flags have different stabilizers".into(),
            ));
        }
    }
    if rec.normalizer != *s {
        return Err(Error::Internal(
            "a parabolic subalgebra differs from its normalizer".into(),
        ));
    }
    let certificate = certify_borel(rec.base_flag(), s.ambient())?;
    if !certificate.is_contained_in(s) {
        return Err(Error::Internal(
            "Borel witness is not contained in the subalgebra".into(),
        ));
    }
    Ok(ParabolicVerdict::Parabolic {
        recovery: Box::new(rec),
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::exactlin::{Matrix, Ring, Subspace};
    use crate::flags::GeneralizedFlag;
    use crate::liealg::AmbientAlgebra;

    const G: Ring = Ring::Gauss;

    #[test]
    fn block_parabolic_is_parabolic() {
        let amb = Arc::new(AmbientAlgebra::gl(G, 3).unwrap());
        let f = GeneralizedFlag::coordinate(G, 3, &[1]).unwrap();
        let p = MatrixLieSubalgebra::flag_stabilizer(amb, &[&f]).unwrap();
        match is_parabolic(&p).unwrap() {
            ParabolicVerdict::Parabolic { certificate, .. } => {
                assert_eq!(certificate.witness.dim(), 6);
                assert_eq!(certificate.derived_length, 3);
            }
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn sl2_inside_gl2_is_not_parabolic() {
        let amb = Arc::new(AmbientAlgebra::gl(G, 2).unwrap());
        let sl = MatrixLieSubalgebra::bracket_closure(
            amb,
            &[Matrix::unit(G, 2, 0, 1), Matrix::unit(G, 2, 1, 0)],
        )
        .unwrap();
        assert_eq!(sl.dim(), 3);
        match is_parabolic(&sl).unwrap() {
            ParabolicVerdict::NotParabolic(Obstruction::NotEqualStabilizer {
                stabilizer_dim,
                ..
            }) => {
                assert_eq!(stabilizer_dim, 4)
            }
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn orthogonal_corank_two_stabilizer_is_parabolic() {
        let amb = Arc::new(AmbientAlgebra::so(G, 6).unwrap());
        let l = Subspace::coordinate(G, 6, &[0, 1]);
        let f = GeneralizedFlag::new(&[l.clone(), amb.form().perp(&l).unwrap()]).unwrap();
        let p = MatrixLieSubalgebra::flag_stabilizer(amb, &[&f]).unwrap();
        match is_parabolic(&p).unwrap() {
            ParabolicVerdict::Parabolic {
                recovery,
                certificate,
            } => {
                assert_eq!(recovery.flags.len(), 3);
                assert_eq!(certificate.witness.dim(), 9);
            }
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn symplectic_borel_certificate() {
        let amb = Arc::new(AmbientAlgebra::sp(G, 2).unwrap());
        let l = Subspace::coordinate(G, 4, &[0]);
        let f = GeneralizedFlag::new(&[l.clone(), amb.form().perp(&l).unwrap()]).unwrap();
        let cert = certify_borel(&f, &amb).unwrap();
        assert_eq!(cert.witness.dim(), 6);
        assert!(cert.complete_flag.is_complete());
    }

    #[test]
    fn quaternionic_parabolic() {
        let amb = Arc::new(AmbientAlgebra::gl(Ring::Quat, 2).unwrap());
        let f = GeneralizedFlag::coordinate(Ring::Quat, 2, &[1]).unwrap();
        let p = MatrixLieSubalgebra::flag_stabilizer(amb, &[&f]).unwrap();
        assert_eq!(p.dim(), 12);
        match is_parabolic(&p).unwrap() {
            ParabolicVerdict::Parabolic {
                recovery,
                certificate,
            } => {
                assert_eq!(recovery.base_flag(), &f);
                assert_eq!(certificate.witness.dim(), 10);
            }
            v => panic!("{v:?}"),
        }
    }
}
