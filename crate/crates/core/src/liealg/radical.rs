use crate::error::{Error, Result};
use crate::exactlin::matrix::kernel_of_rows;
use crate::exactlin::{Matrix, Ring, Scalar, Vector};
use crate::recovery::{recover, Recovery};

use super::space::MatrixSpace;
use super::subalgebra::{bracket_span, MatrixLieSubalgebra};

/// `K`-valued trace of a matrix (the real part over `Q` coefficients).
pub fn field_trace(x: &Matrix, field: Ring) -> Scalar {
    let t = x.trace();
    if field == Ring::Rat {
        Scalar::from_rational(Ring::Rat, t.re().clone())
    } else {
        t.with_ring(field)
            .expect("trace lies in the coefficient field")
    }
}

/// `{ x ∈ s : B(x, y) = 0 for all y ∈ s }` for a symmetric form given on the basis.
fn radical_of(s: &MatrixLieSubalgebra, gram: Vec<Vector>) -> MatrixSpace {
    let mut rows = gram;
    let field = s.space().field();
    let kernel = kernel_of_rows(&mut rows, s.dim(), field);
    let mats: Vec<Matrix> = kernel.iter().map(|c| s.space().combine(c)).collect();
    let (r, c) = s.space().shape();
    MatrixSpace::span(s.space().ring(), field, r, c, &mats).expect("combinations of the basis")
}

/// Radical of the trace form `tr(xy)` of the defining representation.
pub fn trace_radical(s: &MatrixLieSubalgebra) -> MatrixLieSubalgebra {
    let field = s.space().field();
    let b = s.basis();
    let gram: Vec<Vector> = b
        .iter()
        .map(|x| b.iter().map(|y| field_trace(&(x * y), field)).collect())
        .collect();
    s.with_space(radical_of(s, gram))
}

/// Matrix of `ad x` on `s` in the stored basis.
fn ad_matrix(s: &MatrixLieSubalgebra, x: &Matrix) -> Vec<Vector> {
    let cols: Vec<Vector> = s
        .basis()
        .iter()
        .map(|y| {
            s.space()
                .coefficients(&x.bracket(y))
                .expect("s is closed under the bracket")
        })
        .collect();
    let d = s.dim();
    (0..d)
        .map(|i| (0..d).map(|j| cols[j][i].clone()).collect())
        .collect()
}

/// Gram matrix of the Killing form `tr(ad x ad y)` in the stored basis.
pub fn killing_gram(s: &MatrixLieSubalgebra) -> Vec<Vector> {
    let field = s.space().field();
    let ads: Vec<Vec<Vector>> = s.basis().iter().map(|x| ad_matrix(s, x)).collect();
    let d = s.dim();
    let trace_prod = |a: &[Vector], b: &[Vector]| {
        let mut acc = Scalar::zero(field);
        for i in 0..d {
            for k in 0..d {
                if !a[i][k].is_zero() && !b[k][i].is_zero() {
                    acc = acc + &a[i][k] * &b[k][i];
                }
            }
        }
        acc
    };
    (0..d)
        .map(|i| (0..d).map(|j| trace_prod(&ads[i], &ads[j])).collect())
        .collect()
}

/// Largest solvable ideal.
///
/// The candidate is the Killing-orthogonal of `[s, s]`. It is grown by
/// `R ↦ R + [s, R]` until stationary (a no-op for a true ideal) and then
/// verified to be solvable and an ideal.
pub fn solvable_radical(s: &MatrixLieSubalgebra) -> Result<MatrixLieSubalgebra> {
    let field = s.space().field();
    let d = s.derived();
    let kill = killing_gram(s);
    // rows: coefficients c of x with κ(x, y) = 0 for every y in [s, s]
    let dcoords: Vec<Vector> = d
        .basis()
        .iter()
        .map(|y| s.space().coefficients(y).expect("[s,s] ⊆ s"))
        .collect();
    let rows: Vec<Vector> = dcoords
        .iter()
        .map(|c| {
            (0..s.dim())
                .map(|i| {
                    c.iter()
                        .zip(&kill)
                        .filter(|(cj, _)| !cj.is_zero())
                        .fold(Scalar::zero(field), |acc, (cj, row)| acc + cj * &row[i])
                })
                .collect()
        })
        .collect();
    let mut r = s.with_space(radical_of(s, rows));
    loop {
        let grown = r.space().sum(&bracket_span(s.space(), r.space()))?;
        if grown.dim() == r.dim() {
            break;
        }
        r = s.with_space(grown);
    }
    if !r.is_solvable() || !r.is_ideal_in(s) {
        return Err(Error::Internal(
            "Killing-orthogonal of [s,s] is not a solvable ideal".into(),
        ));
    }
    Ok(r)
}

/// Linear nilradical `{ ξ ∈ s : ξ F'' ⊆ F' for every immediate pair }` of a
/// flag stabilizer or of a subalgebra cut out from one by trace conditions.
pub fn linear_nilradical(s: &MatrixLieSubalgebra) -> Result<MatrixLieSubalgebra> {
    let rec = match recover(s) {
        Ok(Recovery::Chain(r)) => r,
        Ok(Recovery::Obstructed(o)) => {
            return Err(Error::UnsupportedShape(format!(
                "no invariant flag structure: {o}"
            )));
        }
        Err(e) => return Err(e),
    };
    let stab = rec.stabilizer.clone();
    let flag = rec.base_flag();
    let field = s.space().field();
    let mut maps: Vec<(Matrix, MatrixSpace)> = Vec::new();
    for (lo, hi) in flag.pairs() {
        let t = MatrixSpace::from_subspace(lo, field);
        for b in hi.basis() {
            let col =
                Matrix::from_columns(s.ambient().ring(), b.len(), &[b.clone()]).expect("column");
            maps.push((col, t.clone()));
        }
    }
    let closures: Vec<Box<dyn Fn(&Matrix) -> Matrix + '_>> = maps
        .iter()
        .map(|(col, _)| Box::new(move |x: &Matrix| x * col) as Box<dyn Fn(&Matrix) -> Matrix>)
        .collect();
    let constraints: Vec<(&dyn Fn(&Matrix) -> Matrix, &MatrixSpace)> = closures
        .iter()
        .zip(&maps)
        .map(|(f, (_, t))| (f.as_ref(), t))
        .collect();
    let m_stab = stab.space().preimage(&constraints);
    // s must sit between [P,P] + m(P) and P
    let lower = bracket_span(stab.space(), stab.space()).sum(&m_stab)?;
    if !stab.space().contains_space(s.space()) || !s.space().contains_space(&lower) {
        return Err(Error::UnsupportedShape(
            "subalgebra is not cut out from its flag stabilizer by trace conditions".into(),
        ));
    }
    let m = s.with_space(m_stab.intersect(s.space())?);
    debug_assert!(m.is_ideal_in(s));
    Ok(m)
}

/// Basis of the functionals on `s` vanishing on `m + [s, s]`.
#[derive(Clone, Debug)]
pub struct TraceConditionSpace {
    host: MatrixLieSubalgebra,
    kernel: MatrixSpace,
    functionals: Vec<Vector>,
}

impl TraceConditionSpace {
    pub fn host(&self) -> &MatrixLieSubalgebra {
        &self.host
    }

    /// Each functional as its values on the host basis.
    pub fn functionals(&self) -> &[Vector] {
        &self.functionals
    }

    pub fn dim(&self) -> usize {
        self.functionals.len()
    }

    /// `m + [s, s]`, the joint kernel of the whole family.
    pub fn joint_kernel(&self) -> MatrixLieSubalgebra {
        self.host.with_space(self.kernel.clone())
    }

    pub fn evaluate(&self, k: usize, x: &Matrix) -> Option<Scalar> {
        let c = self.host.space().coefficients(x)?;
        let field = self.host.space().field();
        Some(
            c.iter()
                .zip(&self.functionals[k])
                .fold(Scalar::zero(field), |acc, (a, b)| acc + a * b),
        )
    }

    /// Joint kernel of the functionals selected by `which`.
    pub fn kernel_of(&self, which: &[usize]) -> MatrixLieSubalgebra {
        let mut rows: Vec<Vector> = which.iter().map(|&k| self.functionals[k].clone()).collect();
        let field = self.host.space().field();
        let kernel = kernel_of_rows(&mut rows, self.host.dim(), field);
        let mats: Vec<Matrix> = kernel
            .iter()
            .map(|c| self.host.space().combine(c))
            .collect();
        let (r, c) = self.host.space().shape();
        self.host.with_space(
            MatrixSpace::span(self.host.space().ring(), field, r, c, &mats).expect("host shape"),
        )
    }
}

pub fn trace_condition_space(s: &MatrixLieSubalgebra) -> Result<TraceConditionSpace> {
    let m = linear_nilradical(s)?;
    let kernel = m.space().sum(&bracket_span(s.space(), s.space()))?;
    // functionals: c with Σ c_j coeff_j(k) = 0 for every kernel basis vector k
    let mut rows: Vec<Vector> = kernel
        .basis()
        .iter()
        .map(|k| s.space().coefficients(k).expect("kernel lies in s"))
        .collect();
    let functionals = kernel_of_rows(&mut rows, s.dim(), s.space().field());
    Ok(TraceConditionSpace {
        host: s.clone(),
        kernel,
        functionals,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::flags::GeneralizedFlag;
    use crate::liealg::AmbientAlgebra;

    fn gl(n: usize) -> Arc<AmbientAlgebra> {
        Arc::new(AmbientAlgebra::gl(Ring::Gauss, n).unwrap())
    }

    fn stab(n: usize, dims: &[usize]) -> MatrixLieSubalgebra {
        let f = GeneralizedFlag::coordinate(Ring::Gauss, n, dims).unwrap();
        MatrixLieSubalgebra::flag_stabilizer(gl(n), &[&f]).unwrap()
    }

    #[test]
    fn radicals_of_small_algebras() {
        let b = stab(2, &[1]);
        assert_eq!(solvable_radical(&b).unwrap(), b);
        let sl = MatrixLieSubalgebra::whole(Arc::new(AmbientAlgebra::sl(Ring::Gauss, 2).unwrap()));
        assert_eq!(solvable_radical(&sl).unwrap().dim(), 0);
        // block (1,2) parabolic of gl(3): center of the Levi (2) plus the 2-dim unipotent part
        assert_eq!(solvable_radical(&stab(3, &[1])).unwrap().dim(), 4);
    }

    #[test]
    fn linear_nilradicals() {
        assert_eq!(linear_nilradical(&stab(2, &[1])).unwrap().dim(), 1);
        assert_eq!(linear_nilradical(&stab(3, &[])).unwrap().dim(), 0);
        let m = linear_nilradical(&stab(3, &[1])).unwrap();
        assert_eq!(m.dim(), 2);
        assert!(m.basis().iter().all(|x| (&(x * x) * x).is_zero()));
    }

    #[test]
    fn trace_condition_dimensions() {
        assert_eq!(trace_condition_space(&stab(2, &[1])).unwrap().dim(), 2);
        assert_eq!(trace_condition_space(&stab(3, &[])).unwrap().dim(), 1);
        let sl = MatrixLieSubalgebra::whole(Arc::new(AmbientAlgebra::sl(Ring::Gauss, 3).unwrap()));
        assert_eq!(trace_condition_space(&sl).unwrap().dim(), 0);
    }
}
