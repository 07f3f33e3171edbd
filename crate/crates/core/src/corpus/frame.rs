use crate::error::{Error, Result};
use crate::exactlin::{FormKind, Matrix, Ring, Scalar, SesquiStructure, Subspace, Vector};

/// A basis `u_1, …, u_m, r_1, …, r_k, w_m, …, w_1` with `⟨u_i, w_i⟩ = 1`,
/// all `u_i`, `w_i` isotropic and the `r`'s spanning the orthogonal of the
/// hyperbolic part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittFrame {
    pub matrix: Matrix,
    pub index: usize,
}

fn scale(v: &[Scalar], c: &Scalar) -> Vector {
    v.iter().map(|x| x * c).collect()
}

fn axpy(v: &[Scalar], u: &[Scalar], c: &Scalar) -> Vector {
    v.iter().zip(u).map(|(a, b)| a - &(b * c)).collect()
}

fn two(ring: Ring) -> Scalar {
    Scalar::from_int(ring, 2)
}

/// Isotropic combination `a x + b` with `x` central, preferring rational `x`.
fn isotropic_in_plane(
    form: &SesquiStructure,
    a: &[Scalar],
    b: &[Scalar],
    rational_only: bool,
) -> Option<Vector> {
    let ring = form.ring();
    let aa = form.value(a, a);
    if aa.is_zero() {
        return Some(a.to_vec());
    }
    let mid = &form.value(a, b) + &form.value(b, a);
    let cc = form.value(b, b);
    let disc = &(&mid * &mid) - &(&(&aa * &cc) * &Scalar::from_int(ring, 4));
    let twisted = form.twist();
    let root = if rational_only || twisted {
        if disc.min_ring() != Ring::Rat || aa.min_ring() != Ring::Rat || mid.min_ring() != Ring::Rat {
            return None;
        }
        let r = disc.with_ring(Ring::Rat).ok()?.sqrt()?;
        if r.min_ring() != Ring::Rat {
            return None;
        }
        r.with_ring(ring).ok()?
    } else {
        disc.with_ring(Ring::Gauss).ok()?.sqrt()?.with_ring(ring).ok()?
    };
    let x = &(&root - &mid) * &(&two(ring) * &aa).inv()?;
    if rational_only && x.min_ring() != Ring::Rat {
        return None;
    }
    Some(a.iter().zip(b).map(|(p, q)| &(p * &x) + q).collect())
}

fn find_isotropic(form: &SesquiStructure, rest: &[Vector]) -> Option<Vector> {
    if let Some(r) = rest.iter().find(|r| form.value(r, r).is_zero()) {
        return Some(r.clone());
    }
    for rational_only in [true, false] {
        for i in 0..rest.len() {
            for j in 0..rest.len() {
                if i != j {
                    if let Some(v) = isotropic_in_plane(form, &rest[i], &rest[j], rational_only) {
                        return Some(v);
                    }
                }
            }
        }
    }
    None
}

/// Greedy Witt decomposition of a form on a single space. Isotropic vectors
/// with rational coordinates are used before complex ones, so for a rational
/// gram the first `u`'s span a real isotropic subspace of maximal dimension
/// among those the search reaches.
pub fn witt_frame(form: &SesquiStructure) -> Result<WittFrame> {
    if form.kind() == FormKind::Pairing {
        return Err(Error::FormKind("a Witt frame needs a form on one space".into()));
    }
    let ring = form.ring();
    let n = form.dim();
    let mut us: Vec<Vector> = Vec::new();
    let mut ws: Vec<Vector> = Vec::new();
    let mut rest: Vec<Vector> = Subspace::full(ring, n).basis().to_vec();
    while let Some(u) = find_isotropic(form, &rest) {
        let Some(w0) = rest.iter().find(|r| !form.value(&u, r).is_zero()) else {
            return Err(Error::DegenerateForm);
        };
        let v = form.value(&u, w0);
        let c = if form.twist() { v.inv().expect("nonzero").conj() } else { v.inv().expect("nonzero") };
        let w1 = scale(w0, &c);
        let half = &form.value(&w1, &w1) * &two(ring).inv().expect("2 is a unit");
        let w = axpy(&w1, &u, &half);
        debug_assert!(form.value(&w, &w).is_zero());
        us.push(u);
        ws.push(w);
        let hyper = Subspace::span(ring, n, &us.iter().chain(&ws).cloned().collect::<Vec<_>>())?;
        rest = form.perp(&hyper)?.basis().to_vec();
    }
    let index = us.len();
    let cols: Vec<Vector> = us.into_iter().chain(rest).chain(ws.into_iter().rev()).collect();
    let matrix = Matrix::from_columns(ring, n, &cols)?;
    Ok(WittFrame { matrix, index })
}

impl WittFrame {
    pub fn ring(&self) -> Ring {
        self.matrix.ring()
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Span of the frame vectors with the given positions.
    pub fn span(&self, positions: &[usize]) -> Subspace {
        let vs: Vec<Vector> = positions.iter().map(|&k| self.matrix.column(k)).collect();
        Subspace::span(self.ring(), self.dim(), &vs).expect("frame columns")
    }

    /// `⟨u_1, …, u_k⟩`.
    pub fn isotropic(&self, k: usize) -> Subspace {
        self.span(&(0..k).collect::<Vec<_>>())
    }

    /// The second maximal isotropic subspace `⟨u_1, …, u_{m-1}, w_m⟩` when
    /// the form is split symmetric of even dimension.
    pub fn twin(&self) -> Option<Subspace> {
        let m = self.index;
        (m >= 1 && 2 * m == self.dim()).then(|| {
            let mut pos: Vec<usize> = (0..m - 1).collect();
            pos.push(m);
            self.span(&pos)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_forms_have_full_index() {
        for n in [4, 6, 7] {
            let f = SesquiStructure::split_symmetric(Ring::Gauss, n);
            assert_eq!(witt_frame(&f).unwrap().index, n / 2);
        }
        let f = SesquiStructure::standard_symplectic(Ring::Gauss, 3);
        assert_eq!(witt_frame(&f).unwrap().index, 3);
    }

    #[test]
    fn definite_rational_form_has_no_real_isotropic_vectors() {
        let id = SesquiStructure::new(FormKind::SymBilinear, Matrix::identity(Ring::Rat, 3), false).unwrap();
        assert_eq!(witt_frame(&id).unwrap().index, 0);
        let idc = id.with_ring(Ring::Gauss).unwrap();
        assert_eq!(witt_frame(&idc).unwrap().index, 1);
    }

    #[test]
    fn hermitian_signature_gives_the_index() {
        let h = Matrix::diag(
            Ring::Gauss,
            &[1, 1, -1].map(|x| Scalar::from_int(Ring::Gauss, x)),
        );
        let f = SesquiStructure::new(FormKind::Hermitian, h, true).unwrap();
        let w = witt_frame(&f).unwrap();
        assert_eq!(w.index, 1);
        assert!(f.is_isotropic(&w.isotropic(1)).unwrap());
        assert!(w.twin().is_none());
        let h4 = Matrix::diag(
            Ring::Gauss,
            &[1, -1, -1, -1].map(|x| Scalar::from_int(Ring::Gauss, x)),
        );
        let f4 = SesquiStructure::new(FormKind::Hermitian, h4, true).unwrap();
        assert_eq!(witt_frame(&f4).unwrap().index, 1);
    }

    #[test]
    fn complex_symmetric_identity_is_split() {
        let g = Matrix::identity(Ring::Gauss, 4);
        let f = SesquiStructure::new(FormKind::SymBilinear, g, false).unwrap();
        let w = witt_frame(&f).unwrap();
        assert_eq!(w.index, 2);
        assert!(f.is_isotropic(&w.twin().unwrap()).unwrap());
    }
}
