//! Seeded generators for the flags, subalgebras and couples used by the
//! acceptance suite, the benches and the `corpus-sweep` scenario.

mod frame;
mod real;

pub use frame::{witt_frame, WittFrame};
pub use real::{real_instances, RealInstance};

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactlin::{FormKind, Matrix, Ring, Scalar, SesquiStructure, Subspace, Vector};
use crate::flags::{is_self_taut, GeneralizedFlag};
use crate::liealg::{AmbientAlgebra, Family, MatrixSpace};

/// Deterministic source of random exact objects with small entries.
#[derive(Clone, Debug)]
pub struct Corpus {
    seed: u64,
    rng: ChaCha8Rng,
}

impl Corpus {
    pub fn new(seed: u64) -> Self {
        Corpus { seed, rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn int(&mut self, bound: i64) -> i64 {
        self.rng.gen_range(-bound..=bound)
    }

    /// Entries of every real component in `-2..=2`.
    pub fn scalar(&mut self, ring: Ring) -> Scalar {
        let c: Vec<i64> = (0..ring.degree()).map(|_| self.int(2)).collect();
        match ring {
            Ring::Rat => Scalar::from_int(ring, c[0]),
            Ring::Gauss => Scalar::gauss(c[0], c[1]),
            Ring::Quat => Scalar::quat(c[0], c[1], c[2], c[3]),
        }
    }

    pub fn vector(&mut self, ring: Ring, n: usize) -> Vector {
        (0..n).map(|_| self.scalar(ring)).collect()
    }

    /// A subspace of the requested dimension.
    pub fn subspace(&mut self, ring: Ring, n: usize, dim: usize) -> Subspace {
        let mut s = Subspace::zero(ring, n);
        while s.dim() < dim.min(n) {
            let v = self.vector(ring, n);
            if !s.contains_vector(&v) {
                s = s.sum(&Subspace::span(ring, n, &[v]).expect("same ambient")).expect("same ambient");
            }
        }
        s
    }

    /// A basis of `D^n` as the columns of an invertible matrix.
    pub fn invertible(&mut self, ring: Ring, n: usize) -> Matrix {
        let full = self.subspace(ring, n, n);
        // random vectors were reduced to echelon form; recombine them
        let mix: Vec<Vector> = (0..n)
            .map(|k| {
                let mut v = full.basis()[k].clone();
                for (l, b) in full.basis().iter().enumerate() {
                    if l != k && self.below(2) == 1 {
                        let c = self.scalar(ring);
                        v = v.iter().zip(b).map(|(x, y)| x + &(y * &c)).collect();
                    }
                }
                v
            })
            .collect();
        let m = Matrix::from_columns(ring, n, &mix).expect("square");
        if m.rank() == n {
            m
        } else {
            Matrix::from_columns(ring, n, full.basis()).expect("square")
        }
    }

    /// A random chain: a random composition of `n` read off a random basis.
    pub fn flag(&mut self, ring: Ring, n: usize) -> GeneralizedFlag {
        let dims: Vec<usize> = (1..n).filter(|_| self.below(2) == 1).collect();
        let g = self.invertible(ring, n);
        let f = GeneralizedFlag::coordinate(ring, n, &dims).expect("increasing dims");
        image_flag(&f, &g).expect("invertible image")
    }

    /// A random element of the ambient algebra.
    pub fn algebra_element(&mut self, space: &MatrixSpace) -> Matrix {
        let c: Vec<Scalar> = (0..space.dim()).map(|_| self.scalar(space.field())).collect();
        space.combine(&c)
    }

    /// A group element: the product of `(1 - tB)^{-1}(1 + tB)` over as many
    /// random basis elements `B` of `space` as the matrix size, with
    /// `t ∈ {±1, ±2}`. Single sparse factors keep the entries small.
    pub fn group_element(&mut self, space: &MatrixSpace) -> Matrix {
        let (n, _) = space.shape();
        let mut g = Matrix::identity(space.ring(), n);
        if space.dim() == 0 {
            return g;
        }
        let mut factors = 0;
        while factors < n {
            let b = &space.basis()[self.below(space.dim())];
            let t = [-2, -1, 1, 2][self.below(4)];
            if let Some(h) = cayley(&b.scale_right(&Scalar::from_int(space.ring(), t))) {
                g = &g * &h;
                factors += 1;
            }
        }
        g
    }

    /// A random self-taut coordinate flag of the ambient moved by a random
    /// group element (or a random flag for `GL`/`SL`).
    pub fn ambient_flag(&mut self, ambient: &AmbientAlgebra) -> Result<GeneralizedFlag> {
        Ok(self.ambient_flags(ambient, 1)?.remove(0))
    }

    /// `count` flags as in [`Corpus::ambient_flag`], sharing one Witt frame.
    pub fn ambient_flags(&mut self, ambient: &AmbientAlgebra, count: usize) -> Result<Vec<GeneralizedFlag>> {
        let n = ambient.n();
        if ambient.has_partner() {
            return Ok((0..count).map(|_| self.flag(ambient.ring(), n)).collect());
        }
        let base = self_taut_coordinate_flags(ambient.form())?;
        (0..count)
            .map(|_| {
                let k = self.below(base.len());
                let g = self.group_element(ambient.space());
                image_flag(&base[k], &g)
            })
            .collect()
    }
}

/// `(1 - X)^{-1}(1 + X)`, when `1 - X` is invertible.
pub fn cayley(x: &Matrix) -> Option<Matrix> {
    let id = Matrix::identity(x.ring(), x.rows());
    let inv = (&id - x).inverse()?;
    Some(&inv * &(&id + x))
}

pub fn image_flag(f: &GeneralizedFlag, g: &Matrix) -> Result<GeneralizedFlag> {
    f.map(|s| s.image(g))
}

/// The flag with the given proper members (the trivial flag when empty).
pub fn flag_or_trivial(ring: Ring, n: usize, members: &[Subspace]) -> Result<GeneralizedFlag> {
    if members.is_empty() {
        Ok(GeneralizedFlag::trivial(ring, n))
    } else {
        GeneralizedFlag::new(members)
    }
}

/// Every coordinate flag of `D^n` (all compositions of `n`).
pub fn coordinate_flags(ring: Ring, n: usize) -> Vec<GeneralizedFlag> {
    (0..1u32 << n.saturating_sub(1))
        .map(|mask| {
            let dims: Vec<usize> = (1..n).filter(|d| mask & (1 << (d - 1)) != 0).collect();
            GeneralizedFlag::coordinate(ring, n, &dims).expect("increasing dims")
        })
        .collect()
}

/// Coordinate flags read off a frame: every composition of its columns.
pub fn frame_flags(frame: &Matrix) -> Result<Vec<GeneralizedFlag>> {
    coordinate_flags(frame.ring(), frame.rows()).iter().map(|f| image_flag(f, frame)).collect()
}

/// Self-taut flags built from the isotropic subspaces `⟨u_1..u_k⟩` of a
/// Witt frame (and, for split symmetric forms, the twin maximal isotropic subspace),
/// closed under perp.
pub fn self_taut_coordinate_flags(form: &SesquiStructure) -> Result<Vec<GeneralizedFlag>> {
    let frame = witt_frame(form)?;
    let m = frame.index;
    let mut out = Vec::new();
    for mask in 0..1u32 << m {
        let chosen: Vec<usize> = (1..=m).filter(|k| mask & (1 << (k - 1)) != 0).collect();
        let mut variants = vec![chosen.iter().map(|&k| frame.isotropic(k)).collect::<Vec<_>>()];
        let twin = frame.twin().filter(|_| form.kind() == FormKind::SymBilinear);
        if let (Some(twin), Some(&top)) = (twin, chosen.last()) {
            if top == m {
                let mut v = variants[0].clone();
                *v.last_mut().expect("nonempty") = twin;
                variants.push(v);
            }
        }
        for iso in variants {
            let mut members = iso.clone();
            for s in &iso {
                members.push(form.perp(s)?);
            }
            let f = flag_or_trivial(form.ring(), form.dim(), &members)?;
            if !is_self_taut(&f, form)? {
                return Err(Error::Internal("isotropic coordinate flag is not self-taut".into()));
            }
            out.push(f);
        }
    }
    Ok(out)
}

/// Coordinate flags of the ambient: all compositions for `GL`/`SL`, the
/// self-taut frame flags for `SO`/`SP`.
pub fn ambient_coordinate_flags(ambient: &AmbientAlgebra) -> Result<Vec<GeneralizedFlag>> {
    match ambient.family() {
        Family::GL | Family::SL => Ok(coordinate_flags(ambient.ring(), ambient.n())),
        Family::SO | Family::SP => self_taut_coordinate_flags(ambient.form()),
    }
}

/// The ambients named in the finite-rank correspondence suite.
pub fn named_ambient(tag: &str) -> Result<Arc<AmbientAlgebra>> {
    let g = Ring::Gauss;
    let a = match tag {
        "GL(3)" => AmbientAlgebra::gl(g, 3)?,
        "GL(4)" => AmbientAlgebra::gl(g, 4)?,
        "SL(2)" => AmbientAlgebra::sl(g, 2)?,
        "SL(3)" => AmbientAlgebra::sl(g, 3)?,
        "SP(2)" => AmbientAlgebra::sp(g, 2)?,
        "SO(5)" => AmbientAlgebra::so(g, 5)?,
        "SO(6)" => AmbientAlgebra::so(g, 6)?,
        "SO(8)" => AmbientAlgebra::so(g, 8)?,
        _ => return Err(Error::Parse(format!("unknown ambient {tag:?}"))),
    };
    Ok(Arc::new(a))
}

/// A quaternionic flag together with a partner flag in `W = H^n`: its perp
/// chain, the perp chain of a coarsening, or an unrelated random flag.
pub fn quaternionic_couple(c: &mut Corpus, n: usize) -> Result<(GeneralizedFlag, GeneralizedFlag)> {
    let pairing = SesquiStructure::standard_pairing(Ring::Quat, n);
    let fv = c.flag(Ring::Quat, n);
    let fw = match c.below(3) {
        0 => fv.perp_chain(&pairing)?,
        1 => {
            let kept: Vec<Subspace> =
                fv.proper_members().iter().filter(|_| c.below(2) == 1).cloned().collect();
            flag_or_trivial(Ring::Quat, n, &kept)?.perp_chain(&pairing)?
        }
        _ => c.flag(Ring::Quat, n),
    };
    Ok((fv, fw))
}
