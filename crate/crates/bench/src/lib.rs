//! Fixed inputs for the benches, built from seeded corpora so that every
//! run measures the same objects.

use std::sync::Arc;

use finpar::corpus::{named_ambient, real_instances, Corpus, RealInstance};
use finpar::exactlin::{Ring, SesquiStructure, Subspace};
use finpar::flags::GeneralizedFlag;
use finpar::liealg::{AmbientAlgebra, MatrixLieSubalgebra};
use finpar::realforms::build_real_form;

pub const SEED: u64 = 5;

/// Random subspaces of half dimension in `ring^n` with the standard pairing.
pub fn subspaces(ring: Ring, n: usize, count: usize) -> (SesquiStructure, Vec<Subspace>) {
    let mut c = Corpus::new(SEED);
    let subs = (0..count).map(|_| c.subspace(ring, n, n / 2)).collect();
    (SesquiStructure::standard_pairing(ring, n), subs)
}

/// A random self-taut flag of the named ambient with its stabilizer.
pub fn stabilizer(tag: &str) -> (Arc<AmbientAlgebra>, GeneralizedFlag, MatrixLieSubalgebra) {
    let a = named_ambient(tag).expect("known ambient");
    let f = Corpus::new(SEED).ambient_flag(&a).expect("corpus flag");
    let p = MatrixLieSubalgebra::flag_stabilizer(a.clone(), &[&f]).expect("stabilizer");
    (a, f, p)
}

/// The stabilizer of `0 ⊂ ⟨e1, e2⟩ ⊂ ⟨e1, e2⟩^⊥ ⊂ V` in `so(6)`.
pub fn so6_corank_two() -> MatrixLieSubalgebra {
    let a = named_ambient("SO(6)").expect("known ambient");
    let l = Subspace::coordinate(Ring::Gauss, 6, &[0, 1]);
    let f = GeneralizedFlag::new(&[l]).expect("one member");
    MatrixLieSubalgebra::flag_stabilizer(a, &[&f]).expect("stabilizer")
}

/// The first random instance of a real form.
pub fn real_instance(spec: &str) -> RealInstance {
    let form = build_real_form(spec.parse().expect("real form")).expect("buildable");
    let mut all = real_instances(&form, &mut Corpus::new(SEED), 1).expect("corpus");
    all.pop().expect("one random instance")
}
