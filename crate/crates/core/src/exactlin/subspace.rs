use std::fmt;

use crate::error::{Error, Result};

use super::matrix::{Matrix, Vector};
use super::scalar::{Ring, Scalar};

/// A subspace of `D^n` regarded as a right `D`-vector space.
///
/// The basis is kept in reduced column echelon form: basis vector `k` has a
/// leading entry `1` in row `pivots[k]`, pivot rows increase, and every other
/// basis vector vanishes in that row. Equal subspaces therefore have identical
/// representations, so the derived `PartialEq` is subspace equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ring: Ring,
    ambient: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

/// Promotes every entry of `v` to `ring`; panics if an entry lies outside it.
pub fn promote(v: &[Scalar], ring: Ring) -> Vector {
    v.iter()
        .map(|x| x.with_ring(ring).expect("vector entry outside ring"))
        .collect()
}

/// Standard basis vector `e_i` of `D^n`.
pub fn unit_vector(ring: Ring, n: usize, i: usize) -> Vector {
    let mut v = vec![Scalar::zero(ring); n];
    v[i] = Scalar::one(ring);
    v
}

/// `v · c` with the scalar on the right.
pub fn scale_right(v: &[Scalar], c: &Scalar) -> Vector {
    v.iter().map(|x| x * c).collect()
}

pub fn add_vec(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

fn check_vector(ring: Ring, n: usize, v: &[Scalar]) -> Result<()> {
    if v.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: v.len(),
        });
    }
    match v.iter().find(|x| x.ring() != ring) {
        Some(x) => Err(Error::TagMismatch {
            expected: ring,
            found: x.ring(),
        }),
        None => Ok(()),
    }
}

impl Subspace {
    pub fn zero(ring: Ring, ambient: usize) -> Self {
        Subspace {
            ring,
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ring: Ring, ambient: usize) -> Self {
        Subspace {
            ring,
            ambient,
            basis: (0..ambient)
                .map(|i| unit_vector(ring, ambient, i))
                .collect(),
            pivots: (0..ambient).collect(),
        }
    }

    /// Right span of `vectors`. Every entry must carry the tag `ring`.
    pub fn span(ring: Ring, ambient: usize, vectors: &[Vector]) -> Result<Self> {
        let mut s = Self::zero(ring, ambient);
        for v in vectors {
            check_vector(ring, ambient, v)?;
            s.insert(v.clone());
        }
        Ok(s)
    }

    /// Canonical span of a nonempty family of vectors, inferring ring and
    /// ambient dimension from the first vector.
    pub fn canonicalize(vectors: &[Vector]) -> Result<Self> {
        let first = vectors
            .first()
            .ok_or_else(|| Error::Precondition("empty family has no ambient".into()))?;
        let ring = first.first().map_or(Ring::Rat, Scalar::ring);
        Self::span(ring, first.len(), vectors)
    }

    /// Span of the coordinate vectors `e_i`, `i ∈ indices`.
    pub fn coordinate(ring: Ring, ambient: usize, indices: &[usize]) -> Self {
        let vs: Vec<Vector> = indices
            .iter()
            .map(|&i| unit_vector(ring, ambient, i))
            .collect();
        Self::span(ring, ambient, &vs).expect("coordinate vectors are well formed")
    }

    /// Column space of a matrix.
    pub fn column_space(m: &Matrix) -> Self {
        Self::span(m.ring(), m.rows(), &m.columns()).expect("matrix columns share the matrix ring")
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis vectors as the columns of a matrix.
    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_columns(self.ring, self.ambient, &self.basis)
            .expect("basis vectors are well formed")
    }

    /// Reduces `v` against the basis. The result is zero iff `v` lies in the span.
    fn reduce(&self, mut v: Vector) -> Vector {
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let c = v[p].clone();
                for (x, y) in v.iter_mut().zip(b) {
                    if !y.is_zero() {
                        *x = &*x - &(y * &c);
                    }
                }
            }
        }
        v
    }

    fn insert(&mut self, v: Vector) -> bool {
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("nonzero leading entry");
        if !inv.is_one() {
            v = scale_right(&v, &inv);
        }
        for b in &mut self.basis {
            if !b[p].is_zero() {
                let c = b[p].clone();
                for (x, y) in b.iter_mut().zip(&v) {
                    if !y.is_zero() {
                        *x = &*x - &(y * &c);
                    }
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.basis.insert(at, v);
        true
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::TagMismatch {
                expected: self.ring,
                found: other.ring,
            });
        }
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        Ok(())
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        v.len() == self.ambient && is_zero_vec(&self.reduce(promote(v, self.ring.max(max_ring(v)))))
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && other.basis.iter().all(|v| self.contains_vector(v))
    }

    /// Coefficients `c` with `v = Σ basis[k] · c[k]`, if `v` lies in the span.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        let c: Vector = self.pivots.iter().map(|&p| v[p].clone()).collect();
        self.contains_vector(v).then_some(c)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let mut s = self.clone();
        for v in &other.basis {
            s.insert(v.clone());
        }
        Ok(s)
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        if self.basis.is_empty() || other.basis.is_empty() {
            return Ok(Self::zero(self.ring, self.ambient));
        }
        // columns [A | B]; a kernel vector (x, y) gives A x = -B y in both spans
        let mut cols = self.basis.clone();
        cols.extend(other.basis.iter().cloned());
        let m = Matrix::from_columns(self.ring, self.ambient, &cols).expect("compatible vectors");
        let a = self.to_matrix();
        let k = self.dim();
        let vs: Vec<Vector> = m
            .right_kernel()
            .into_iter()
            .map(|y| a.mul_vec(&y[..k]))
            .collect();
        Self::span(self.ring, self.ambient, &vs)
    }

    /// Image of the subspace under a square matrix acting on the left.
    pub fn image(&self, m: &Matrix) -> Result<Subspace> {
        if m.cols() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: m.cols(),
            });
        }
        let ring = self.ring.max(m.ring());
        let vs: Vec<Vector> = self
            .basis
            .iter()
            .map(|b| promote(&m.mul_vec(b), ring))
            .collect();
        Self::span(ring, m.rows(), &vs)
    }

    /// Whether `m · self ⊆ self`.
    pub fn is_invariant_under(&self, m: &Matrix) -> bool {
        self.basis
            .iter()
            .all(|b| self.contains_vector(&m.mul_vec(b)))
    }

    /// Span of the standard basis vectors in non-pivot rows: a complement.
    pub fn standard_complement(&self) -> Subspace {
        let free: Vec<usize> = (0..self.ambient)
            .filter(|i| !self.pivots.contains(i))
            .collect();
        Self::coordinate(self.ring, self.ambient, &free)
    }

    /// Re-expresses the subspace over a wider ring, or over a narrower one
    /// when the canonical basis already lies there.
    pub fn with_ring(&self, ring: Ring) -> Result<Subspace> {
        let basis = self
            .basis
            .iter()
            .map(|v| {
                v.iter()
                    .map(|x| x.with_ring(ring))
                    .collect::<Result<Vector>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Subspace {
            ring,
            ambient: self.ambient,
            basis,
            pivots: self.pivots.clone(),
        })
    }

    /// Right multiple `s · c` of every basis vector, re-canonicalized.
    pub fn scaled(&self, c: &Scalar) -> Subspace {
        let vs: Vec<Vector> = self
            .basis
            .iter()
            .map(|b| promote(&scale_right(b, c), self.ring))
            .collect();
        Self::span(self.ring, self.ambient, &vs).expect("scaling keeps the ring")
    }
}

fn max_ring(v: &[Scalar]) -> Ring {
    v.iter().map(Scalar::ring).max().unwrap_or(Ring::Rat)
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self
            .basis
            .iter()
            .map(|v| {
                format!(
                    "({})",
                    v.iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(", ")
                )
            })
            .collect();
        write!(f, "<{}>^{}[{}]", vs.join(", "), self.ambient, self.ring)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(ring: Ring, n: usize, i: usize) -> Vector {
        unit_vector(ring, n, i)
    }

    #[test]
    fn dependent_vectors_collapse() {
        let v2: Vector = e(Ring::Rat, 3, 0)
            .iter()
            .map(|x| x * &Scalar::from_int(Ring::Rat, 2))
            .collect();
        let s = Subspace::span(Ring::Rat, 3, &[e(Ring::Rat, 3, 0), v2]).unwrap();
        assert_eq!(s, Subspace::coordinate(Ring::Rat, 3, &[0]));
        assert!(Subspace::span(Ring::Rat, 3, &[]).unwrap().is_zero());
    }

    #[test]
    fn quaternionic_pair_spans_the_plane() {
        // e1·i + e2 and e2·j over H^2
        let h = Ring::Quat;
        let v1 = vec![Scalar::i_quat(), Scalar::one(h)];
        let v2 = vec![Scalar::zero(h), Scalar::j()];
        let s = Subspace::span(h, 2, &[v1, v2]).unwrap();
        assert_eq!(s, Subspace::full(h, 2));
    }

    #[test]
    fn right_scaling_preserves_quaternionic_lines() {
        let h = Ring::Quat;
        let line = Subspace::span(h, 2, &[vec![Scalar::one(h), Scalar::k()]]).unwrap();
        assert_eq!(line.scaled(&Scalar::quat(1, 2, -1, 3)), line);
        // left scaling by j gives a different line: (j, jk) = (j, i)
        let left = Subspace::span(h, 2, &[vec![Scalar::j(), Scalar::i_quat()]]).unwrap();
        assert_ne!(left, line);
    }

    #[test]
    fn lattice_operations() {
        let r = Ring::Rat;
        let a = Subspace::coordinate(r, 3, &[0, 1]);
        let b = Subspace::coordinate(r, 3, &[1, 2]);
        assert_eq!(a.intersect(&b).unwrap(), Subspace::coordinate(r, 3, &[1]));
        assert_eq!(a.sum(&b).unwrap(), Subspace::full(r, 3));
        let c = Subspace::coordinate(Ring::Gauss, 3, &[0]);
        assert!(matches!(a.sum(&c), Err(Error::TagMismatch { .. })));
    }

    #[test]
    fn mixed_tags_are_rejected() {
        let v = vec![Scalar::one(Ring::Rat), Scalar::i()];
        assert!(matches!(
            Subspace::canonicalize(&[v]),
            Err(Error::TagMismatch { .. })
        ));
    }
}
