//! Restriction of scalars from `H` to `Q(i)`.
//!
//! A quaternion is written `q = z1 + j z2` with `z1, z2 ∈ Q(i)`, and a vector
//! of `H^n` becomes the vector of `Q(i)^{2n}` with coordinates
//! `(z1_0, z2_0, z1_1, z2_1, ...)`. Right multiplication by `j` then acts as
//! the antilinear map `J = Ω · conj` with `Ω = diag([[0,-1],[1,0]], ...)`.

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

use super::form::{FormKind, SesquiStructure};
use super::matrix::{Matrix, Vector};
use super::scalar::{Ring, Scalar};
use super::subspace::Subspace;

/// `(z1, z2)` with `q = z1 + j z2`.
pub fn split(q: &Scalar) -> (Scalar, Scalar) {
    let [a, b, c, d] = q.components();
    let z = BigRational::zero();
    let z1 = Scalar::from_components(Ring::Gauss, [a.clone(), b.clone(), z.clone(), z.clone()])
        .expect("in Q(i)");
    let z2 = Scalar::from_components(Ring::Gauss, [c.clone(), -d, z.clone(), z]).expect("in Q(i)");
    (z1, z2)
}

/// `z1 + j z2`.
pub fn join(z1: &Scalar, z2: &Scalar) -> Scalar {
    let j = Scalar::j();
    let z1 = z1.with_ring(Ring::Quat).expect("promotion");
    let z2 = z2.with_ring(Ring::Quat).expect("promotion");
    z1 + &j * &z2
}

pub fn complexify_vector(v: &[Scalar]) -> Vector {
    v.iter()
        .flat_map(|q| {
            let (a, b) = split(q);
            [a, b]
        })
        .collect()
}

/// Inverse of [`complexify_vector`].
pub fn quaternify_vector(v: &[Scalar]) -> Vector {
    v.chunks(2).map(|c| join(&c[0], &c[1])).collect()
}

/// Complex `2n × 2n` matrix of left multiplication by a quaternionic matrix.
pub fn complexify_matrix(m: &Matrix) -> Matrix {
    let g = Ring::Gauss;
    let mut out = Matrix::zeros(g, 2 * m.rows(), 2 * m.cols());
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            // (a1 + j a2)(z1 + j z2) = (a1 z1 - conj(a2) z2) + j (a2 z1 + conj(a1) z2)
            let (a1, a2) = split(m.get(r, c));
            out.set(2 * r, 2 * c, a1.clone());
            out.set(2 * r, 2 * c + 1, -a2.conj());
            out.set(2 * r + 1, 2 * c, a2);
            out.set(2 * r + 1, 2 * c + 1, a1.conj());
        }
    }
    out
}

/// Inverse of [`complexify_matrix`]; fails when the matrix does not commute
/// with `J`.
pub fn quaternify_matrix(m: &Matrix) -> Result<Matrix> {
    if m.rows() % 2 != 0 || m.cols() % 2 != 0 {
        return Err(Error::Precondition(
            "complex matrix of odd size has no quaternionic form".into(),
        ));
    }
    let q = Matrix::from_fn(Ring::Quat, m.rows() / 2, m.cols() / 2, |r, c| {
        join(m.get(2 * r, 2 * c), m.get(2 * r + 1, 2 * c))
    });
    if &complexify_matrix(&q) != m {
        return Err(Error::Precondition(
            "matrix is not quaternionic-linear".into(),
        ));
    }
    Ok(q)
}

/// `Ω` of size `2n`: the matrix part of the structure map `J`.
pub fn omega(n: usize) -> Matrix {
    let g = Ring::Gauss;
    let block = Matrix::from_ints(g, &[&[0, -1], &[1, 0]]);
    Matrix::block_diag(g, &vec![block; n])
}

/// `J v = Ω · conj(v)`.
pub fn apply_j(v: &[Scalar]) -> Vector {
    let n = v.len() / 2;
    let c: Vector = v.iter().map(Scalar::conj).collect();
    omega(n).mul_vec(&c)
}

/// Complex subspace of `Q(i)^{2n}` underlying a quaternionic subspace.
pub fn complexify_subspace(s: &Subspace) -> Result<Subspace> {
    if s.ring() != Ring::Quat {
        return Err(Error::TagMismatch {
            expected: Ring::Quat,
            found: s.ring(),
        });
    }
    let j = Scalar::j();
    let mut vs = Vec::new();
    for b in s.basis() {
        vs.push(complexify_vector(b));
        let bj: Vector = b.iter().map(|x| x * &j).collect();
        vs.push(complexify_vector(&bj));
    }
    Subspace::span(Ring::Gauss, 2 * s.ambient_dim(), &vs)
}

pub fn is_j_stable(s: &Subspace) -> bool {
    s.basis().iter().all(|b| s.contains_vector(&apply_j(b)))
}

/// Quaternionic subspace whose underlying complex subspace is `s`, if `s` is
/// `J`-stable.
pub fn quaternify_subspace(s: &Subspace) -> Result<Subspace> {
    if s.ring() != Ring::Gauss || s.ambient_dim() % 2 != 0 {
        return Err(Error::Precondition(
            "expected a subspace of Q(i)^{2n}".into(),
        ));
    }
    if !is_j_stable(s) {
        return Err(Error::Precondition("subspace is not stable under J".into()));
    }
    let vs: Vec<Vector> = s.basis().iter().map(|b| quaternify_vector(b)).collect();
    let q = Subspace::span(Ring::Quat, s.ambient_dim() / 2, &vs)?;
    debug_assert_eq!(2 * q.dim(), s.dim());
    Ok(q)
}

/// The complex structure `ψ` on `Q(i)^{2n}` given by the `z1`-part of a
/// twisted quaternionic structure.
pub fn complexify_form(f: &SesquiStructure) -> Result<SesquiStructure> {
    if f.ring() != Ring::Quat {
        return Err(Error::TagMismatch {
            expected: Ring::Quat,
            found: f.ring(),
        });
    }
    let n = f.dim();
    let g = Ring::Gauss;
    let basis_vec = |k: usize| {
        let mut v = vec![Scalar::zero(Ring::Quat); n];
        v[k / 2] = if k % 2 == 0 {
            Scalar::one(Ring::Quat)
        } else {
            Scalar::j()
        };
        v
    };
    // ψ(x, y) = y^* H x, so H[a][b] = ψ(e_b, e_a)
    let gram = Matrix::from_fn(g, 2 * n, 2 * n, |a, b| {
        split(&f.value(&basis_vec(b), &basis_vec(a))).0
    });
    let kind = match f.kind() {
        FormKind::Hermitian => FormKind::Hermitian,
        FormKind::SkewHermitian => FormKind::SkewHermitian,
        _ => FormKind::Pairing,
    };
    SesquiStructure::new(kind, gram, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_and_join_are_inverse() {
        for q in [
            Scalar::quat(1, 2, 3, 4),
            Scalar::k(),
            Scalar::quat(-1, 0, 5, -2),
        ] {
            let (a, b) = split(&q);
            assert_eq!(join(&a, &b), q);
        }
    }

    #[test]
    fn complexification_is_multiplicative() {
        let a = Matrix::new(Ring::Quat, 1, 1, vec![Scalar::quat(1, 2, -1, 3)]).unwrap();
        let b = Matrix::new(Ring::Quat, 1, 1, vec![Scalar::quat(0, 1, 1, 1)]).unwrap();
        assert_eq!(
            complexify_matrix(&(&a * &b)),
            &complexify_matrix(&a) * &complexify_matrix(&b)
        );
        assert_eq!(quaternify_matrix(&complexify_matrix(&a)).unwrap(), a);
    }

    #[test]
    fn j_is_right_multiplication_by_j() {
        let v = vec![Scalar::quat(1, 2, 3, 4), Scalar::quat(0, -1, 2, 0)];
        let vj: Vector = v.iter().map(|x| x * &Scalar::j()).collect();
        assert_eq!(apply_j(&complexify_vector(&v)), complexify_vector(&vj));
        let jj = apply_j(&apply_j(&complexify_vector(&v)));
        let minus: Vector = complexify_vector(&v).iter().map(|x| -x).collect();
        assert_eq!(jj, minus);
    }

    #[test]
    fn a_j_stable_plane_is_a_quaternionic_line() {
        let line = Subspace::span(
            Ring::Quat,
            2,
            &[vec![Scalar::one(Ring::Quat), Scalar::quat(0, 1, 1, 0)]],
        )
        .unwrap();
        let c = complexify_subspace(&line).unwrap();
        assert_eq!(c.dim(), 2);
        assert!(is_j_stable(&c));
        assert_eq!(quaternify_subspace(&c).unwrap(), line);
        let not_stable = Subspace::coordinate(Ring::Gauss, 4, &[0]);
        assert!(quaternify_subspace(&not_stable).is_err());
    }

    #[test]
    fn standard_quaternionic_pairing_restricts_to_the_hermitian_identity() {
        let f = SesquiStructure::standard_pairing(Ring::Quat, 2);
        let c = complexify_form(&f).unwrap();
        assert_eq!(c.gram(), &Matrix::identity(Ring::Gauss, 4));
    }
}
