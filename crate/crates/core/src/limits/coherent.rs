use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{Matrix, Ring, Scalar, Subspace, Vector};
use crate::liealg::{MatrixLieSubalgebra, MatrixSpace};

use super::perp::TailFlag;
use super::system::DirectSystem;
use super::tail::{TailSubspace, Term};

fn truncate(terms: &[Term], n: usize) -> Vector {
    let mut v = vec![Scalar::zero(Ring::Rat); n];
    for t in terms.iter().filter(|t| t.index <= n) {
        v[t.index - 1] = Scalar::from_rational(Ring::Rat, t.coef.clone());
    }
    v
}

fn column(v: Vector) -> Matrix {
    let n = v.len();
    Matrix::from_columns(Ring::Rat, n, &[v]).expect("column of the right length")
}

/// Generators of `m` that meet the first `n` coordinates, cut to length `n`.
fn truncated_generators(m: &TailSubspace, n: usize) -> Vec<Vector> {
    let mut out: Vec<Vector> = m.exceptional.iter().map(|v| truncate(v, n)).collect();
    for p in &m.patterns {
        for i in p.start..=n {
            let terms: Vec<Term> =
                p.terms.iter().map(|t| Term { coef: t.coef.clone(), index: i + t.index }).collect();
            out.push(truncate(&terms, n));
        }
    }
    out
}

/// Level-`n` parts of the stabilizer of a tail flag, nested under the corner
/// embeddings.
#[derive(Clone, Debug)]
pub struct CoherentStabilizer {
    flag: TailFlag,
    system: DirectSystem,
    levels: Vec<MatrixLieSubalgebra>,
}

/// `x ∈ g_n` stabilizes `M` in the limit iff `x · trunc_n(g) ∈ M ∩ V_n` for
/// each generator `g`; a single pattern makes `M ∩ V_n` the realization.
pub fn coherent_stabilizer(flag: &TailFlag, sys: &DirectSystem) -> Result<CoherentStabilizer> {
    for m in flag.members() {
        if m.patterns.len() > 1 {
            return Err(Error::Horizon {
                horizon: sys.hi,
                reason: format!("{m} is not level-exact"),
            });
        }
        if m.min_level() > sys.lo {
            return Err(Error::Precondition(format!(
                "{m} is not realizable at level {}",
                sys.lo
            )));
        }
    }
    let mut levels: Vec<MatrixLieSubalgebra> = Vec::new();
    for n in sys.levels() {
        let ambient = sys.ambient(n)?;
        let mut targets = Vec::new();
        let mut gens = Vec::new();
        for m in flag.members() {
            let r = sys.realize(m, n)?;
            if r.is_full() {
                continue;
            }
            targets.push(MatrixSpace::from_subspace(&r, Ring::Rat));
            gens.push(truncated_generators(m, n));
        }
        let maps: Vec<Vec<Box<dyn Fn(&Matrix) -> Matrix>>> = gens
            .into_iter()
            .map(|gs| {
                gs.into_iter()
                    .map(|g| {
                        let c = column(g);
                        Box::new(move |x: &Matrix| x * &c) as Box<dyn Fn(&Matrix) -> Matrix>
                    })
                    .collect()
            })
            .collect();
        let constraints: Vec<(&dyn Fn(&Matrix) -> Matrix, &MatrixSpace)> = maps
            .iter()
            .zip(&targets)
            .flat_map(|(fs, t)| fs.iter().map(move |f| (f.as_ref(), t)))
            .collect();
        let space = ambient.space().preimage(&constraints);
        let stab = MatrixLieSubalgebra::trusted(ambient, space);
        if let Some(prev) = levels.last() {
            if !prev.basis().iter().all(|b| stab.contains(&sys.embed(b))) {
                return Err(Error::Coherence(n - 1, n));
            }
        }
        levels.push(stab);
    }
    Ok(CoherentStabilizer { flag: flag.clone(), system: sys.clone(), levels })
}

impl CoherentStabilizer {
    pub fn flag(&self) -> &TailFlag {
        &self.flag
    }

    pub fn system(&self) -> &DirectSystem {
        &self.system
    }

    pub fn at(&self, n: usize) -> Result<&MatrixLieSubalgebra> {
        self.system.check_level(n)?;
        Ok(&self.levels[n - self.system.lo])
    }

    pub fn dims(&self) -> Vec<(usize, usize)> {
        self.system.levels().zip(self.levels.iter().map(|s| s.dim())).collect()
    }
}

/// `tr(a b)`, skipping zero entries.
pub fn trace_pairing(a: &Matrix, b: &Matrix) -> Scalar {
    let n = a.rows();
    let mut acc = Scalar::zero(a.ring());
    for i in 0..n {
        for j in 0..a.cols() {
            let x = a.get(i, j);
            if !x.is_zero() {
                let y = b.get(j, i);
                if !y.is_zero() {
                    acc = acc + x * y;
                }
            }
        }
    }
    acc
}

/// Functionals `x ↦ tr(F_n x)` on the levels of a coherent stabilizer.
#[derive(Clone, Debug)]
pub struct CoherentTraceFamily {
    host: CoherentStabilizer,
    names: Vec<String>,
    /// `matrices[n - lo][k]` is `F_n` for the `k`-th functional.
    matrices: Vec<Vec<Matrix>>,
}

impl CoherentTraceFamily {
    /// Builds the family from level-indexed matrices and verifies that each
    /// functional is a homomorphism on every level and compatible with the
    /// embeddings.
    pub fn new(
        host: CoherentStabilizer,
        named: &[(&str, &dyn Fn(usize) -> Matrix)],
    ) -> Result<Self> {
        let names = named.iter().map(|(s, _)| s.to_string()).collect();
        let matrices: Vec<Vec<Matrix>> =
            host.system.levels().map(|n| named.iter().map(|(_, f)| f(n)).collect()).collect();
        let fam = CoherentTraceFamily { host, names, matrices };
        fam.verify()?;
        Ok(fam)
    }

    /// The usual trace.
    pub fn usual_trace(host: CoherentStabilizer) -> Result<Self> {
        Self::new(host, &[("trace", &|n| Matrix::identity(Ring::Rat, n))])
    }

    /// Trace of the top-left `k × k` block.
    pub fn block_trace(host: CoherentStabilizer, k: usize) -> Result<Self> {
        let f = move |n: usize| {
            Matrix::from_fn(Ring::Rat, n, n, |i, j| Scalar::from_int(Ring::Rat, (i == j && i < k) as i64))
        };
        Self::new(host, &[(&format!("block-trace({k})"), &f)])
    }

    pub fn empty(host: CoherentStabilizer) -> Self {
        let matrices = host.system.levels().map(|_| Vec::new()).collect();
        CoherentTraceFamily { host, names: Vec::new(), matrices }
    }

    pub fn host(&self) -> &CoherentStabilizer {
        &self.host
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn value(&self, n: usize, k: usize, x: &Matrix) -> Result<Scalar> {
        self.host.system.check_level(n)?;
        Ok(trace_pairing(&self.matrices[n - self.host.system.lo][k], x))
    }

    fn verify(&self) -> Result<()> {
        let lo = self.host.system.lo;
        for (idx, n) in self.host.system.levels().enumerate() {
            let host = &self.host.levels[idx];
            for (k, f) in self.matrices[idx].iter().enumerate() {
                if f.rows() != n || f.cols() != n {
                    return Err(Error::DimensionMismatch { expected: n, found: f.rows() });
                }
                // f([a, b]) = tr([F, a] b)
                for a in host.basis() {
                    let fa = &(f * a) - &(a * f);
                    if fa.is_zero() {
                        continue;
                    }
                    if host.basis().iter().any(|b| !trace_pairing(&fa, b).is_zero()) {
                        return Err(Error::Precondition(format!(
                            "{} is not a homomorphism at level {n}",
                            self.names[k]
                        )));
                    }
                }
                if n > lo {
                    let prev = &self.matrices[idx - 1][k];
                    for b in self.host.levels[idx - 1].basis() {
                        let up = self.host.system.embed(b);
                        if trace_pairing(prev, b) != trace_pairing(f, &up) {
                            return Err(Error::Coherence(n - 1, n));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Joint kernel of the family at level `n`.
    pub fn joint_kernel(&self, n: usize) -> Result<MatrixLieSubalgebra> {
        let host = self.host.at(n)?;
        let fs = &self.matrices[n - self.host.system.lo];
        let zero = MatrixSpace::zero(Ring::Rat, Ring::Rat, 1, 1);
        let maps: Vec<Box<dyn Fn(&Matrix) -> Matrix + '_>> = fs
            .iter()
            .map(|f| {
                Box::new(move |x: &Matrix| Matrix::from_fn(Ring::Rat, 1, 1, |_, _| trace_pairing(f, x)))
                    as Box<dyn Fn(&Matrix) -> Matrix + '_>
            })
            .collect();
        let constraints: Vec<(&dyn Fn(&Matrix) -> Matrix, &MatrixSpace)> =
            maps.iter().map(|f| (f.as_ref(), &zero)).collect();
        Ok(host.with_space(host.space().preimage(&constraints)))
    }
}

/// What a block `B/A` of consecutive flag members imposes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockReport {
    pub lower: TailSubspace,
    pub upper: TailSubspace,
    /// `dim B/A` when it is finite.
    pub dim: Option<usize>,
    /// `f(π_B)` for each functional, where `π_B` projects onto the block.
    pub values: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InfiniteTraceReport {
    pub holds: bool,
    pub blocks: Vec<BlockReport>,
}

/// `P` with `P|_C = 1` and `P|_K = 0` where `C ⊕ K = Q^n`.
fn projection(c: &[Vector], k: &[Vector], n: usize) -> Result<Matrix> {
    let cols: Vec<Vector> = c.iter().chain(k).cloned().collect();
    let m = Matrix::from_columns(Ring::Rat, n, &cols)?;
    let inv = m.inverse().ok_or_else(|| Error::Internal("block basis is singular".into()))?;
    let d = Matrix::diag(
        Ring::Rat,
        &(0..n).map(|i| Scalar::from_int(Ring::Rat, (i < c.len()) as i64)).collect::<Vec<_>>(),
    );
    Ok(&(&m * &d) * &inv)
}

fn stable_level(m: &TailSubspace) -> usize {
    let pat = m.patterns.iter().map(|p| p.start + p.width()).max().unwrap_or(1);
    pat.max(m.min_level())
}

/// Every functional vanishes on the identity of each block `B/A` of finite
/// dimension; blocks that grow with the level carry no finite simple ideal.
pub fn trace_report(fam: &CoherentTraceFamily) -> Result<InfiniteTraceReport> {
    let sys = &fam.host.system;
    let mut holds = true;
    let mut blocks = Vec::new();
    for (a, b) in fam.host.flag.pairs() {
        if b.patterns.len() > a.patterns.len() {
            blocks.push(BlockReport { lower: a.clone(), upper: b.clone(), dim: None, values: Vec::new() });
            continue;
        }
        let n = stable_level(a).max(stable_level(b)).max(sys.lo);
        if n > sys.hi {
            return Err(Error::Horizon {
                horizon: sys.hi,
                reason: format!("block {b} / {a} does not stabilize inside the horizon"),
            });
        }
        let ra = sys.realize(a, n)?;
        let rb = sys.realize(b, n)?;
        let mut acc = ra.clone();
        let mut c = Vec::new();
        for v in rb.basis() {
            if !acc.contains_vector(v) {
                acc = acc.sum(&Subspace::span(Ring::Rat, n, &[v.clone()])?)?;
                c.push(v.clone());
            }
        }
        let kernel: Vec<Vector> =
            ra.basis().iter().chain(rb.standard_complement().basis()).cloned().collect();
        let pi = projection(&c, &kernel, n)?;
        if !fam.host.at(n)?.contains(&pi) {
            return Err(Error::Horizon {
                horizon: sys.hi,
                reason: format!("no block projection for {b} / {a} at level {n}"),
            });
        }
        let vals: Vec<Scalar> = (0..fam.names.len()).map(|k| fam.value(n, k, &pi)).collect::<Result<_>>()?;
        holds &= vals.iter().all(Scalar::is_zero);
        blocks.push(BlockReport {
            lower: a.clone(),
            upper: b.clone(),
            dim: Some(c.len()),
            values: vals.iter().map(|v| v.to_string()).collect(),
        });
    }
    Ok(InfiniteTraceReport { holds, blocks })
}

/// Whether the family consists of infinite trace conditions.
pub fn infinite_trace_conditions(fam: &CoherentTraceFamily) -> Result<bool> {
    Ok(trace_report(fam)?.holds)
}
