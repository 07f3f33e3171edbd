use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{Matrix, Ring, SesquiStructure, Subspace};
use crate::liealg::{AmbientAlgebra, Family};

use super::tail::TailSubspace;

pub const DEFAULT_HORIZON: usize = 12;

/// Levels `lo..=hi` of `gl_n` or `sl_n` over `Q`, joined by `A ↦ diag(A, 0)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DirectSystem {
    pub family: Family,
    pub lo: usize,
    pub hi: usize,
}

impl DirectSystem {
    pub fn new(family: Family, lo: usize, hi: usize) -> Result<Self> {
        if !matches!(family, Family::GL | Family::SL) {
            return Err(Error::UnsupportedShape(format!(
                "direct systems are built for GL and SL, not {family}"
            )));
        }
        if lo == 0 || lo > hi {
            return Err(Error::Precondition(format!("empty level range {lo}..{hi}")));
        }
        Ok(DirectSystem { family, lo, hi })
    }

    pub fn gl(hi: usize) -> Self {
        Self::new(Family::GL, 1, hi).expect("valid range")
    }

    pub fn sl(hi: usize) -> Self {
        Self::new(Family::SL, 2, hi).expect("valid range")
    }

    pub fn levels(&self) -> std::ops::RangeInclusive<usize> {
        self.lo..=self.hi
    }

    pub fn check_level(&self, n: usize) -> Result<()> {
        if self.levels().contains(&n) {
            Ok(())
        } else {
            Err(Error::LevelOutOfRange { level: n, lo: self.lo, hi: self.hi })
        }
    }

    pub fn ambient(&self, n: usize) -> Result<Arc<AmbientAlgebra>> {
        self.check_level(n)?;
        let a = match self.family {
            Family::GL => AmbientAlgebra::gl(Ring::Rat, n)?,
            _ => AmbientAlgebra::sl(Ring::Rat, n)?,
        };
        Ok(Arc::new(a))
    }

    pub fn pairing(&self, n: usize) -> SesquiStructure {
        SesquiStructure::standard_pairing(Ring::Rat, n)
    }

    /// Corner embedding into the next level.
    pub fn embed(&self, x: &Matrix) -> Matrix {
        let n = x.rows();
        Matrix::from_fn(x.ring(), n + 1, n + 1, |i, j| {
            if i < n && j < n {
                x.get(i, j).clone()
            } else {
                crate::exactlin::Scalar::zero(x.ring())
            }
        })
    }

    /// `ts` realized at level `n`.
    pub fn realize(&self, ts: &TailSubspace, n: usize) -> Result<Subspace> {
        self.check_level(n)?;
        ts.realize_at(n)
    }
}
