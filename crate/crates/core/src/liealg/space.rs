//! Spans of matrices over a central coefficient field.
//!
//! Lie algebras of matrices over `D` are vector spaces over a field `K`
//! contained in the center of `D` (`K = Q(i)` for complex algebras, `K = Q`
//! for real forms and for quaternionic matrices). A [`MatrixSpace`] stores a
//! `K`-span canonically by writing each matrix in `K`-coordinates and keeping
//! the reduced echelon basis of the coordinate vectors.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactlin::matrix::kernel_of_rows;
use crate::exactlin::{Matrix, Ring, Scalar, Subspace, Vector};

/// `K`-coordinates of a scalar of `D`.
pub fn scalar_coords(x: &Scalar, ring: Ring, field: Ring) -> Vec<Scalar> {
    if field == Ring::Rat {
        let deg = ring.degree();
        x.components()[..deg]
            .iter()
            .map(|c| Scalar::from_rational(Ring::Rat, c.clone()))
            .collect()
    } else {
        vec![x
            .with_ring(field)
            .expect("entry lies in the coefficient field")]
    }
}

fn scalar_from_coords(cs: &[Scalar], ring: Ring, field: Ring) -> Scalar {
    if field == ring {
        return cs[0].clone();
    }
    let basis = ring.basis_over(field);
    cs.iter()
        .zip(&basis)
        .fold(Scalar::zero(ring), |acc, (c, b)| acc + b * c)
}

/// Whether `field` can serve as coefficient field for matrices over `ring`.
pub fn valid_field(ring: Ring, field: Ring) -> bool {
    matches!(
        (ring, field),
        (Ring::Rat, Ring::Rat) | (Ring::Gauss, _) | (Ring::Quat, Ring::Rat)
    )
}

/// A `K`-subspace of `rows × cols` matrices over `D`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatrixSpace {
    ring: Ring,
    field: Ring,
    rows: usize,
    cols: usize,
    coords: Subspace,
    basis: Vec<Matrix>,
}

impl MatrixSpace {
    fn coord_len(ring: Ring, field: Ring, rows: usize, cols: usize) -> usize {
        rows * cols * (ring.degree() / field.degree())
    }

    fn from_coords(ring: Ring, field: Ring, rows: usize, cols: usize, coords: Subspace) -> Self {
        let deg = ring.degree() / field.degree();
        let basis = coords
            .basis()
            .iter()
            .map(|v| {
                Matrix::from_fn(ring, rows, cols, |i, j| {
                    let k = (i * cols + j) * deg;
                    scalar_from_coords(&v[k..k + deg], ring, field)
                })
            })
            .collect();
        MatrixSpace {
            ring,
            field,
            rows,
            cols,
            coords,
            basis,
        }
    }

    pub fn zero(ring: Ring, field: Ring, rows: usize, cols: usize) -> Self {
        assert!(
            valid_field(ring, field),
            "{field} is not a coefficient field for {ring}"
        );
        Self::from_coords(
            ring,
            field,
            rows,
            cols,
            Subspace::zero(field, Self::coord_len(ring, field, rows, cols)),
        )
    }

    pub fn full(ring: Ring, field: Ring, rows: usize, cols: usize) -> Self {
        assert!(
            valid_field(ring, field),
            "{field} is not a coefficient field for {ring}"
        );
        Self::from_coords(
            ring,
            field,
            rows,
            cols,
            Subspace::full(field, Self::coord_len(ring, field, rows, cols)),
        )
    }

    pub fn span(
        ring: Ring,
        field: Ring,
        rows: usize,
        cols: usize,
        mats: &[Matrix],
    ) -> Result<Self> {
        if !valid_field(ring, field) {
            return Err(Error::Precondition(format!(
                "{field} is not a coefficient field for {ring}"
            )));
        }
        let mut vs = Vec::with_capacity(mats.len());
        for m in mats {
            if (m.rows(), m.cols()) != (rows, cols) {
                return Err(Error::DimensionMismatch {
                    expected: rows * cols,
                    found: m.rows() * m.cols(),
                });
            }
            if m.ring() > ring {
                return Err(Error::TagMismatch {
                    expected: ring,
                    found: m.ring(),
                });
            }
            vs.push(vectorize(m, ring, field));
        }
        let coords = Subspace::span(field, Self::coord_len(ring, field, rows, cols), &vs)?;
        Ok(Self::from_coords(ring, field, rows, cols, coords))
    }

    /// The `K`-span of a `D`-subspace, as a space of column matrices.
    pub fn from_subspace(s: &Subspace, field: Ring) -> Self {
        let ring = s.ring();
        let mut mats = Vec::new();
        for b in s.basis() {
            for lam in ring.basis_over(field) {
                let col: Vector = b.iter().map(|x| x * &lam).collect();
                mats.push(
                    Matrix::from_columns(ring, s.ambient_dim(), &[col])
                        .expect("well formed column"),
                );
            }
        }
        Self::span(ring, field, s.ambient_dim(), 1, &mats).expect("columns of a subspace")
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn field(&self) -> Ring {
        self.field
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn coords(&self) -> &Subspace {
        &self.coords
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        (m.rows(), m.cols()) == (self.rows, self.cols)
            && m.ring() <= self.ring
            && self
                .coords
                .contains_vector(&vectorize(m, self.ring, self.field))
    }

    pub fn contains_space(&self, other: &MatrixSpace) -> bool {
        other.basis.iter().all(|m| self.contains(m))
    }

    fn check(&self, other: &MatrixSpace) -> Result<()> {
        if (self.ring, self.field) != (other.ring, other.field) {
            return Err(Error::TagMismatch {
                expected: self.ring,
                found: other.ring,
            });
        }
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &MatrixSpace) -> Result<Self> {
        self.check(other)?;
        let coords = self.coords.sum(&other.coords)?;
        Ok(Self::from_coords(
            self.ring, self.field, self.rows, self.cols, coords,
        ))
    }

    pub fn intersect(&self, other: &MatrixSpace) -> Result<Self> {
        self.check(other)?;
        let coords = self.coords.intersect(&other.coords)?;
        Ok(Self::from_coords(
            self.ring, self.field, self.rows, self.cols, coords,
        ))
    }

    /// Coordinates of `m` in the stored basis.
    pub fn coefficients(&self, m: &Matrix) -> Option<Vec<Scalar>> {
        self.coords
            .coordinates(&vectorize(m, self.ring, self.field))
    }

    /// `Σ c_k basis[k]`.
    pub fn combine(&self, c: &[Scalar]) -> Matrix {
        let mut acc = Matrix::zeros(self.ring, self.rows, self.cols);
        for (ck, b) in c.iter().zip(&self.basis) {
            if !ck.is_zero() {
                acc = &acc + &b.scale_right(ck);
            }
        }
        acc
    }

    /// `{ x ∈ self : f_t(x) ∈ T_t for every constraint t }` for `K`-linear maps `f_t`.
    pub fn preimage(&self, constraints: &[(&dyn Fn(&Matrix) -> Matrix, &MatrixSpace)]) -> Self {
        let mut rows: Vec<Vector> = Vec::new();
        for (f, target) in constraints {
            assert_eq!(
                (target.ring, target.field),
                (self.ring, self.field),
                "constraint target over another ring"
            );
            let ann = annihilator(&target.coords);
            if ann.is_empty() {
                continue;
            }
            let images: Vec<Vector> = self
                .basis
                .iter()
                .map(|b| vectorize(&f(b), self.ring, self.field))
                .collect();
            for a in &ann {
                rows.push(images.iter().map(|v| dot(a, v, self.field)).collect());
            }
        }
        let k = self.dim();
        let kernel = kernel_of_rows(&mut rows, k, self.field);
        let mats: Vec<Matrix> = kernel.iter().map(|c| self.combine(c)).collect();
        Self::span(self.ring, self.field, self.rows, self.cols, &mats)
            .expect("combinations stay in shape")
    }

    /// Image `span{ f(b) }` of a `K`-linear map with values of the given shape.
    pub fn image(&self, rows: usize, cols: usize, f: impl Fn(&Matrix) -> Matrix) -> Self {
        let mats: Vec<Matrix> = self.basis.iter().map(&f).collect();
        Self::span(self.ring, self.field, rows, cols, &mats).expect("image has the requested shape")
    }

    /// Same matrices viewed over a smaller coefficient field.
    pub fn restrict_field(&self, field: Ring) -> Self {
        let mut mats = Vec::new();
        for b in &self.basis {
            for lam in self.field.basis_over(field) {
                mats.push(
                    b.scale_right(
                        &lam.with_ring(self.ring)
                            .expect("coefficient field lies in D"),
                    ),
                );
            }
        }
        Self::span(self.ring, field, self.rows, self.cols, &mats).expect("restriction of scalars")
    }

    /// The `Q(i)`-span of a `Q`-span of complex matrices.
    pub fn extend_field(&self, field: Ring) -> Result<Self> {
        if !valid_field(self.ring, field) {
            return Err(Error::Precondition(format!(
                "{field} is not a coefficient field for {}",
                self.ring
            )));
        }
        Self::span(self.ring, field, self.rows, self.cols, &self.basis)
    }
}

/// Rows `a` with `a · t = 0` for all `t ∈ s` (over a commutative field).
pub(crate) fn annihilator(s: &Subspace) -> Vec<Vector> {
    let n = s.ambient_dim();
    let mut rows: Vec<Vector> = s.basis().to_vec();
    kernel_of_rows(&mut rows, n, s.ring())
}

fn dot(a: &[Scalar], b: &[Scalar], field: Ring) -> Scalar {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Scalar::zero(field), |acc, (x, y)| acc + x * y)
}

/// Row-major `K`-coordinates of a matrix.
pub fn vectorize(m: &Matrix, ring: Ring, field: Ring) -> Vector {
    m.entries()
        .iter()
        .flat_map(|x| scalar_coords(x, ring, field))
        .collect()
}

impl fmt::Debug for MatrixSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "MatrixSpace<{} over {}> {}x{} dim {}",
            self.ring,
            self.field,
            self.rows,
            self.cols,
            self.dim()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quaternionic_matrices_over_the_rationals() {
        let full = MatrixSpace::full(Ring::Quat, Ring::Rat, 2, 2);
        assert_eq!(full.dim(), 16);
        let m = Matrix::new(
            Ring::Quat,
            2,
            2,
            vec![
                Scalar::quat(1, 2, 3, 4),
                Scalar::j(),
                Scalar::k(),
                Scalar::zero(Ring::Quat),
            ],
        )
        .unwrap();
        let c = full.coefficients(&m).unwrap();
        assert_eq!(full.combine(&c), m);
    }

    #[test]
    fn preimage_of_a_line_is_its_stabilizer() {
        let g = Ring::Gauss;
        let gl = MatrixSpace::full(g, g, 3, 3);
        let line = MatrixSpace::from_subspace(&Subspace::coordinate(g, 3, &[0]), g);
        let e1 =
            Matrix::from_columns(g, 3, &[crate::exactlin::subspace::unit_vector(g, 3, 0)]).unwrap();
        let f = move |x: &Matrix| x * &e1;
        let stab = gl.preimage(&[(&f, &line)]);
        assert_eq!(stab.dim(), 7);
    }

    #[test]
    fn field_restriction_doubles_dimension() {
        let g = Ring::Gauss;
        let gl = MatrixSpace::full(g, g, 2, 2);
        let real = gl.restrict_field(Ring::Rat);
        assert_eq!(real.dim(), 8);
        assert_eq!(real.extend_field(g).unwrap(), gl);
    }
}
