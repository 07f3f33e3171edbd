//! JSON encoding of matrices and subspaces.
//!
//! A matrix is `{"ring": "Q(i)", "rows": n, "cols": m, "entries": [[...]]}`
//! with every entry in the scalar text encoding. A subspace is encoded as the
//! matrix whose columns are its canonical basis vectors.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

use super::matrix::Matrix;
use super::scalar::{Ring, Scalar};
use super::subspace::Subspace;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixRepr {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<String>>,
}

impl MatrixRepr {
    fn from_matrix(m: &Matrix) -> Self {
        MatrixRepr {
            ring: m.ring(),
            rows: m.rows(),
            cols: m.cols(),
            entries: m
                .to_rows()
                .iter()
                .map(|r| r.iter().map(ToString::to_string).collect())
                .collect(),
        }
    }

    fn into_matrix(self) -> Result<Matrix> {
        if self.entries.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.entries.len(),
            });
        }
        let mut flat = Vec::with_capacity(self.rows * self.cols);
        for row in &self.entries {
            if row.len() != self.cols {
                return Err(Error::DimensionMismatch {
                    expected: self.cols,
                    found: row.len(),
                });
            }
            for e in row {
                flat.push(e.parse::<Scalar>()?);
            }
        }
        Matrix::new(self.ring, self.rows, self.cols, flat)
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixRepr::from_matrix(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        MatrixRepr::deserialize(d)?
            .into_matrix()
            .map_err(serde::de::Error::custom)
    }
}

impl Serialize for Subspace {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut repr = MatrixRepr::from_matrix(&self.to_matrix());
        // a zero subspace still records its ambient dimension
        repr.rows = self.ambient_dim();
        if self.is_zero() {
            repr.entries = vec![Vec::new(); self.ambient_dim()];
        }
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Subspace {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = MatrixRepr::deserialize(d)?;
        let ring = repr.ring;
        let m = repr.into_matrix().map_err(serde::de::Error::custom)?;
        let s = Subspace::column_space(&m);
        s.with_ring(ring).map_err(serde::de::Error::custom)
    }
}
