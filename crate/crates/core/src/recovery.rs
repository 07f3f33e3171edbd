//! Recovery of the defining flag(s) of a parabolic subalgebra.
//!
//! The invariant subspaces of a subalgebra `s` are generated from `{0, V}`
//! by refining along the trace-form radical `N` of `s` (which is the
//! nilradical when `s` is parabolic): for invariant `A ⊊ B` both `N·B + A`
//! and `{ v ∈ B : N v ⊆ A }` are invariant. Invariant closures of a spanning
//! set, meets, joins, perps and, for orthogonal algebras, the isotropic lines
//! of two-dimensional quotients `A^⊥ / A` complete the lattice.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::matrix::kernel_of_rows;
use crate::exactlin::subspace::{add_vec, scale_right, unit_vector};
use crate::exactlin::{Matrix, Scalar, SesquiStructure, Subspace, Vector};
use crate::flags::{is_self_taut, GeneralizedFlag};
use crate::liealg::radical::trace_radical;
use crate::liealg::{Family, MatrixLieSubalgebra};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RecoveryCase {
    Unique,
    Trichotomy,
}

/// Why a subalgebra is not the stabilizer of a recoverable flag.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "SCREAMING-KEBAB-CASE")]
pub enum Obstruction {
    /// Two invariant subspaces that are not nested.
    NotAChain { first: Subspace, second: Subspace },
    /// An element of the stabilizer of the recovered flag outside the subalgebra.
    NotEqualStabilizer {
        witness: Matrix,
        stabilizer_dim: usize,
        subalgebra_dim: usize,
    },
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::NotAChain { first, second } => write!(
                f,
                "invariant subspaces of dimensions {} and {} are not nested",
                first.dim(),
                second.dim()
            ),
            Obstruction::NotEqualStabilizer { stabilizer_dim, subalgebra_dim, .. } => write!(
                f,
                "the recovered flag has a stabilizer of dimension {stabilizer_dim}, the subalgebra has dimension {subalgebra_dim}"
            ),
        }
    }
}

/// The bookkeeping of the orthogonal and symplectic recovery.
///
/// Pair `α` is the immediate pair `(F'_α, F''_α)` of isotropic members of the
/// base flag. At finite rank every predecessor is closed, so `C = A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecoveryState {
    pub a: Vec<usize>,
    pub c: Vec<usize>,
    pub f_prime: Vec<Subspace>,
    pub f_second: Vec<Subspace>,
    /// `G''_γ`, the immediate successor of `(F''_γ)^⊥`, indexed like `c`.
    pub g_second: Vec<Subspace>,
    /// Largest isotropic member.
    pub m: Subspace,
    /// Immediate successor of `M` when `M ≠ M^⊥`, otherwise `0`.
    pub wsucc: Subspace,
    pub l: Option<Subspace>,
    pub m1: Option<Subspace>,
    pub m2: Option<Subspace>,
    /// Sum of the isotropic orbit spans `p̃·x` over the spanning set.
    pub orbit_union: Subspace,
}

#[derive(Clone, Debug)]
pub struct RecoveredFlags {
    pub case: RecoveryCase,
    /// One flag, or the base flag followed by its two extensions by `M1`, `M2`.
    pub flags: Vec<GeneralizedFlag>,
    /// The partner flag in `W` for `GL`/`SL`.
    pub partner: Option<GeneralizedFlag>,
    pub lattice: Vec<Subspace>,
    pub state: Option<RecoveryState>,
    /// Stabilizer of the base flag (and partner).
    pub stabilizer: MatrixLieSubalgebra,
    pub normalizer: MatrixLieSubalgebra,
}

impl RecoveredFlags {
    pub fn base_flag(&self) -> &GeneralizedFlag {
        &self.flags[0]
    }
}

#[derive(Clone, Debug)]
pub enum Recovery {
    Chain(RecoveredFlags),
    Obstructed(Obstruction),
}

/// `span { ξ x : ξ ∈ ptilde }`.
pub fn orbit_span(ptilde: &MatrixLieSubalgebra, x: &[Scalar]) -> Subspace {
    ptilde.orbit_span(x)
}

/// Rows `ℓ` with `ℓ · a = 0` for every `a ∈ s`, acting on the left.
fn left_annihilator(s: &Subspace) -> Vec<Vector> {
    let ring = s.ring();
    let n = s.ambient_dim();
    (0..n)
        .filter(|r| !s.pivots().contains(r))
        .map(|r| {
            let mut row = vec![Scalar::zero(ring); n];
            row[r] = Scalar::one(ring);
            for (b, &p) in s.basis().iter().zip(s.pivots()) {
                row[p] = -&b[r];
            }
            row
        })
        .collect()
}

/// `N·B + A`.
fn nil_image(nil: &[Matrix], a: &Subspace, b: &Subspace) -> Subspace {
    let mut vs: Vec<Vector> = a.basis().to_vec();
    for x in nil {
        for v in b.basis() {
            vs.push(x.mul_vec(v));
        }
    }
    Subspace::span(a.ring(), a.ambient_dim(), &vs).expect("images stay in the defining space")
}

/// `{ v ∈ B : N v ⊆ A }`.
fn nil_preimage(nil: &[Matrix], a: &Subspace, b: &Subspace) -> Subspace {
    let ring = a.ring();
    let ann = left_annihilator(a);
    let k = b.dim();
    let mut rows: Vec<Vector> = Vec::new();
    for x in nil {
        let images: Vec<Vector> = b.basis().iter().map(|v| x.mul_vec(v)).collect();
        for l in &ann {
            let row: Vector = images
                .iter()
                .map(|w| {
                    l.iter()
                        .zip(w)
                        .fold(Scalar::zero(ring), |acc, (p, q)| acc + p * q)
                })
                .collect();
            if row.iter().any(|c| !c.is_zero()) {
                rows.push(row);
            }
        }
    }
    let kernel = kernel_of_rows(&mut rows, k, ring);
    let vs: Vec<Vector> = kernel
        .iter()
        .map(|c| {
            b.basis()
                .iter()
                .zip(c)
                .fold(vec![Scalar::zero(ring); a.ambient_dim()], |acc, (v, ck)| {
                    add_vec(&acc, &scale_right(v, ck))
                })
        })
        .collect();
    Subspace::span(ring, a.ambient_dim(), &vs).expect("combinations of basis vectors")
}

/// Isotropic lines of `B / A` when `A` is isotropic, `B = A^⊥` and the
/// quotient is a plane, as representatives in `B`.
fn isotropic_lines(form: &SesquiStructure, a: &Subspace, b: &Subspace) -> Result<Vec<Vector>> {
    if b.dim() != a.dim() + 2 || !form.is_isotropic(a)? || form.perp(a)? != *b {
        return Ok(Vec::new());
    }
    let mut reps: Vec<Vector> = Vec::new();
    let mut acc = a.clone();
    for v in b.basis() {
        if !acc.contains_vector(v) {
            acc = acc.sum(&Subspace::span(a.ring(), a.ambient_dim(), &[v.clone()])?)?;
            reps.push(v.clone());
        }
    }
    let (u, w) = (&reps[0], &reps[1]);
    let (qu, qw, beta) = (form.value(u, u), form.value(w, w), form.value(u, w));
    let ring = a.ring();
    let two = Scalar::from_int(ring, 2);
    let combo = |s: &Scalar| add_vec(&scale_right(u, s), w);
    if qu.is_zero() {
        // q(u s + w) = 2 s β + q(w)
        let s = -&(&qw
            * &(&two * &beta)
                .inv()
                .expect("the quotient plane is nondegenerate"));
        return Ok(vec![u.clone(), combo(&s)]);
    }
    // q(u s + w) = s² q(u) + 2 s β + q(w)
    let disc = &(&beta * &beta) - &(&qu * &qw);
    let root = disc.sqrt().ok_or_else(|| {
        Error::NoIsotropicRefinement(format!(
            "the isotropic lines of a plane with discriminant {disc} are not defined over {ring}"
        ))
    })?;
    let qinv = qu.inv().expect("nonzero");
    let s1 = &(&root - &beta) * &qinv;
    let s2 = &(-&(&root + &beta)) * &qinv;
    Ok(vec![combo(&s1), combo(&s2)])
}

fn is_incomparable(a: &Subspace, b: &Subspace) -> bool {
    !a.contains(b) && !b.contains(a)
}

fn incomparable_pairs(members: &[Subspace]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            if is_incomparable(&members[i], &members[j]) {
                out.push((i, j));
            }
        }
    }
    out
}

fn sort_subspaces(members: &mut [Subspace]) {
    members.sort_by(|x, y| x.dim().cmp(&y.dim()).then_with(|| x.basis().cmp(y.basis())));
}

/// Invariant subspaces of `s` reachable by the refinement described in the
/// module documentation, sorted by dimension.
///
/// Growth stops as soon as more incomparable pairs appear than the family
/// allows (none, or the single pair `M1`, `M2` for `SO`).
pub fn invariant_lattice(s: &MatrixLieSubalgebra) -> Result<Vec<Subspace>> {
    let amb = s.ambient();
    let (ring, n) = (amb.ring(), amb.n());
    let family = amb.family();
    let allowed = usize::from(family == Family::SO);
    let nil: Vec<Matrix> = trace_radical(s).basis().to_vec();
    let mut members = vec![Subspace::zero(ring, n), Subspace::full(ring, n)];
    let insert = |members: &mut Vec<Subspace>, c: Subspace| {
        if !members.contains(&c) && s.stabilizes(&c) {
            members.push(c);
        }
    };
    let too_wide = |members: &[Subspace]| incomparable_pairs(members).len() > allowed;

    for x in &seeds(ring, n) {
        insert(&mut members, s.invariant_closure(x));
        if too_wide(&members) {
            sort_subspaces(&mut members);
            return Ok(members);
        }
    }

    loop {
        let before = members.len();
        let mut candidates = Vec::new();
        for a in &members {
            for b in &members {
                if a == b {
                    continue;
                }
                if b.contains(a) {
                    candidates.push(nil_image(&nil, a, b));
                    candidates.push(nil_preimage(&nil, a, b));
                    if family == Family::SO {
                        for v in isotropic_lines(amb.form(), a, b)? {
                            candidates.push(a.sum(&Subspace::span(ring, n, &[v])?)?);
                        }
                    }
                } else if !a.contains(b) {
                    candidates.push(a.sum(b)?);
                    candidates.push(a.intersect(b)?);
                }
            }
            if matches!(family, Family::SO | Family::SP) {
                candidates.push(amb.form().perp(a)?);
            }
        }
        for c in candidates {
            insert(&mut members, c);
            if too_wide(&members) {
                break;
            }
        }
        if too_wide(&members) || members.len() == before {
            break;
        }
    }
    sort_subspaces(&mut members);
    Ok(members)
}

enum Shape {
    Chain(Vec<Subspace>),
    Trichotomy {
        base: Vec<Subspace>,
        l: Subspace,
        m1: Subspace,
        m2: Subspace,
    },
    Broken(Subspace, Subspace),
}

/// Sorts the lattice into a chain, the orthogonal exception, or an obstruction.
fn classify(lattice: &[Subspace], form: Option<&SesquiStructure>) -> Result<Shape> {
    let pairs = incomparable_pairs(lattice);
    let Some(&(i, j)) = pairs.first() else {
        return Ok(Shape::Chain(lattice.to_vec()));
    };
    let (x, y) = (&lattice[i], &lattice[j]);
    let broken = || Ok(Shape::Broken(x.clone(), y.clone()));
    let Some(form) = form else { return broken() };
    if pairs.len() != 1 || x.dim() != y.dim() {
        return broken();
    }
    let l = x.intersect(y)?;
    let top = x.sum(y)?;
    let exceptional = top.dim() == l.dim() + 2
        && form.perp(&l)? == top
        && form.is_isotropic(x)?
        && form.is_isotropic(y)?
        && lattice.contains(&l)
        && lattice.contains(&top);
    if !exceptional {
        return broken();
    }
    let base: Vec<Subspace> = lattice
        .iter()
        .filter(|s| *s != x && *s != y)
        .cloned()
        .collect();
    let (m1, m2) = if x.basis() <= y.basis() {
        (x.clone(), y.clone())
    } else {
        (y.clone(), x.clone())
    };
    Ok(Shape::Trichotomy { base, l, m1, m2 })
}

fn first_outside(big: &Subspace, small: &Subspace) -> Option<Vector> {
    big.basis()
        .iter()
        .find(|v| !small.contains_vector(v))
        .cloned()
}

/// Isotropic members of `flag` (an initial segment of a self-taut flag).
fn build_state(flag: &GeneralizedFlag, form: &SesquiStructure) -> Result<RecoveryState> {
    let mut iso = Vec::new();
    for m in flag.members() {
        if !form.is_isotropic(m)? {
            break;
        }
        iso.push(m.clone());
    }
    let r = iso.len() - 1;
    let a: Vec<usize> = (0..r).collect();
    let f_prime: Vec<Subspace> = iso[..r].to_vec();
    let f_second: Vec<Subspace> = iso[1..].to_vec();
    let g_second = f_prime
        .iter()
        .map(|f| form.perp(f))
        .collect::<Result<Vec<_>>>()?;
    let m = iso[r].clone();
    let mperp = form.perp(&m)?;
    let wsucc = if mperp == m {
        Subspace::zero(m.ring(), m.ambient_dim())
    } else {
        mperp
    };
    let orbit_union = Subspace::zero(m.ring(), m.ambient_dim());
    Ok(RecoveryState {
        c: a.clone(),
        a,
        f_prime,
        f_second,
        g_second,
        m,
        wsucc,
        l: None,
        m1: None,
        m2: None,
        orbit_union,
    })
}

fn seeds(ring: crate::exactlin::Ring, n: usize) -> Vec<Vector> {
    let units: Vec<Vector> = (0..n).map(|i| unit_vector(ring, n, i)).collect();
    let mut out = units.clone();
    for i in 0..n {
        for j in i + 1..n {
            out.push(add_vec(&units[i], &units[j]));
        }
    }
    out
}

/// Basis vectors of `s` and their pairwise sums.
fn seeds_in(s: &Subspace) -> Vec<Vector> {
    let b = s.basis();
    let mut out = b.to_vec();
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            out.push(add_vec(&b[i], &b[j]));
        }
    }
    out
}

/// Checks the orbit-span descriptions of `F''_α`, `G''_γ` and `W` against
/// the lattice result, and fills in the union of isotropic orbit spans.
fn check_orbit_laws(
    state: &mut RecoveryState,
    ptilde: &MatrixLieSubalgebra,
    form: &SesquiStructure,
) -> Result<()> {
    let fail = |what: &str| {
        Err(Error::Internal(format!(
            "orbit span disagrees with the recovered {what}"
        )))
    };
    for &alpha in &state.a {
        let x = first_outside(&state.f_second[alpha], &state.f_prime[alpha]).expect("strict pair");
        if orbit_span(ptilde, &x) != state.f_second[alpha] {
            return fail("isotropic member");
        }
    }
    for &gamma in &state.c {
        let lo = form.perp(&state.f_second[gamma])?;
        let x = first_outside(&state.g_second[gamma], &lo).expect("strict pair");
        if orbit_span(ptilde, &x).sum(&state.f_second[gamma])? != state.g_second[gamma] {
            return fail("coisotropic successor");
        }
    }
    // every ξ is skew, so p̃·x ⊆ x^⊥ and the line of x has to be added back
    if state.l.is_none() && !state.wsucc.is_zero() {
        let x = seeds_in(&state.wsucc)
            .into_iter()
            .find(|v| !form.value(v, v).is_zero())
            .ok_or_else(|| Error::Internal("no anisotropic vector above M".into()))?;
        let line = Subspace::span(state.m.ring(), state.m.ambient_dim(), &[x.clone()])?;
        if orbit_span(ptilde, &x).sum(&state.m)?.sum(&line)? != state.wsucc {
            return fail("successor of M");
        }
    }
    let (ring, n) = (state.m.ring(), state.m.ambient_dim());
    let mut union = Subspace::zero(ring, n);
    for x in seeds(ring, n) {
        let o = orbit_span(ptilde, &x);
        if form.is_isotropic(&o)? {
            union = union.sum(&o)?;
        }
    }
    let bound = match &state.l {
        Some(l) => form.perp(l)?,
        None => state.m.clone(),
    };
    if !bound.contains(&union) {
        return fail("union of isotropic members");
    }
    state.orbit_union = union;
    Ok(())
}

fn family_check(p: &MatrixLieSubalgebra, families: &[Family]) -> Result<()> {
    let f = p.ambient().family();
    if families.contains(&f) {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "recovery for {f} is not handled here"
        )))
    }
}

fn stabilizer_of(
    p: &MatrixLieSubalgebra,
    flags: &[&GeneralizedFlag],
) -> Result<MatrixLieSubalgebra> {
    MatrixLieSubalgebra::flag_stabilizer(p.ambient().clone(), flags)
}

/// The invariant chain `fV` of a subalgebra of `GL`/`SL` with its partner `fW = fV^⊥`.
pub fn recover_chain_gl(p: &MatrixLieSubalgebra) -> Result<Recovery> {
    family_check(p, &[Family::GL, Family::SL])?;
    let lattice = invariant_lattice(p)?;
    let members = match classify(&lattice, None)? {
        Shape::Chain(m) => m,
        Shape::Broken(first, second) => {
            return Ok(Recovery::Obstructed(Obstruction::NotAChain {
                first,
                second,
            }))
        }
        Shape::Trichotomy { .. } => unreachable!("no exceptional pattern without a form"),
    };
    let fv = GeneralizedFlag::new(&members)?;
    let fw = fv.perp_chain(p.ambient().form())?;
    let stabilizer = stabilizer_of(p, &[&fv, &fw])?;
    Ok(Recovery::Chain(RecoveredFlags {
        case: RecoveryCase::Unique,
        flags: vec![fv],
        partner: Some(fw),
        lattice,
        state: None,
        stabilizer,
        normalizer: p.normalizer(),
    }))
}

/// The unique self-taut flag of a subalgebra of `SP`.
pub fn recover_flags_sp(p: &MatrixLieSubalgebra) -> Result<Recovery> {
    family_check(p, &[Family::SP])?;
    let form = p.ambient().form();
    let lattice = invariant_lattice(p)?;
    let members = match classify(&lattice, None)? {
        Shape::Chain(m) => m,
        Shape::Broken(first, second) => {
            return Ok(Recovery::Obstructed(Obstruction::NotAChain {
                first,
                second,
            }))
        }
        Shape::Trichotomy { .. } => unreachable!("no exceptional pattern without a form"),
    };
    let flag = GeneralizedFlag::new(&members)?;
    if !is_self_taut(&flag, form)? {
        return Err(Error::Internal(
            "perp-closed invariant chain is not self-taut".into(),
        ));
    }
    let state = build_state(&flag, form)?;
    let stabilizer = stabilizer_of(p, &[&flag])?;
    Ok(Recovery::Chain(RecoveredFlags {
        case: RecoveryCase::Unique,
        flags: vec![flag],
        partner: None,
        lattice,
        state: Some(state),
        stabilizer,
        normalizer: p.normalizer(),
    }))
}

/// One self-taut flag, or three when the base flag has an isotropic member
/// `L` with `dim L^⊥/L = 2`: the base, and the base extended by either of
/// the two maximal isotropic subspaces containing `L`.
pub fn recover_flags_so(p: &MatrixLieSubalgebra) -> Result<Recovery> {
    family_check(p, &[Family::SO])?;
    let form = p.ambient().form();
    let lattice = invariant_lattice(p)?;
    let (case, flags, extra) = match classify(&lattice, Some(form))? {
        Shape::Chain(m) => (RecoveryCase::Unique, vec![GeneralizedFlag::new(&m)?], None),
        Shape::Broken(first, second) => {
            return Ok(Recovery::Obstructed(Obstruction::NotAChain {
                first,
                second,
            }))
        }
        Shape::Trichotomy { base, l, m1, m2 } => {
            let base = GeneralizedFlag::new(&base)?;
            let flags = vec![base.clone(), base.with_member(&m1)?, base.with_member(&m2)?];
            (RecoveryCase::Trichotomy, flags, Some((l, m1, m2)))
        }
    };
    for f in &flags {
        if !is_self_taut(f, form)? {
            return Err(Error::Internal(
                "recovered orthogonal flag is not self-taut".into(),
            ));
        }
    }
    let mut state = build_state(&flags[0], form)?;
    if let Some((l, m1, m2)) = extra {
        if state.m != l {
            return Err(Error::Internal(
                "largest isotropic member of the base flag is not L".into(),
            ));
        }
        state.l = Some(l);
        state.m1 = Some(m1);
        state.m2 = Some(m2);
    }
    let normalizer = p.normalizer();
    check_orbit_laws(&mut state, &normalizer, form)?;
    let stabilizer = stabilizer_of(p, &[&flags[0]])?;
    Ok(Recovery::Chain(RecoveredFlags {
        case,
        flags,
        partner: None,
        lattice,
        state: Some(state),
        stabilizer,
        normalizer,
    }))
}

/// Dispatches on the ambient family.
pub fn recover(p: &MatrixLieSubalgebra) -> Result<Recovery> {
    match p.ambient().family() {
        Family::GL | Family::SL => recover_chain_gl(p),
        Family::SP => recover_flags_sp(p),
        Family::SO => recover_flags_so(p),
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::exactlin::Ring;
    use crate::liealg::AmbientAlgebra;

    const G: Ring = Ring::Gauss;

    fn chain(r: Recovery) -> RecoveredFlags {
        match r {
            Recovery::Chain(c) => c,
            Recovery::Obstructed(o) => panic!("unexpected obstruction: {o}"),
        }
    }

    fn coord(n: usize, idx: &[usize]) -> Subspace {
        Subspace::coordinate(G, n, idx)
    }

    #[test]
    fn block_parabolic_of_gl3() {
        let amb = Arc::new(AmbientAlgebra::gl(G, 3).unwrap());
        let f = GeneralizedFlag::coordinate(G, 3, &[1]).unwrap();
        let p = MatrixLieSubalgebra::flag_stabilizer(amb.clone(), &[&f]).unwrap();
        let r = chain(recover(&p).unwrap());
        assert_eq!(r.base_flag(), &f);
        assert_eq!(r.stabilizer, p);
        assert_eq!(r.normalizer, p);
        let whole = chain(recover(&MatrixLieSubalgebra::whole(amb)).unwrap());
        assert!(whole.base_flag().is_trivial());
    }

    #[test]
    fn diagonal_subalgebra_is_obstructed() {
        let amb = Arc::new(AmbientAlgebra::gl(G, 2).unwrap());
        let d =
            MatrixLieSubalgebra::new(amb, &[Matrix::unit(G, 2, 0, 0), Matrix::unit(G, 2, 1, 1)])
                .unwrap();
        match recover(&d).unwrap() {
            Recovery::Obstructed(Obstruction::NotAChain { first, second }) => {
                assert_eq!((first.dim(), second.dim()), (1, 1));
            }
            other => panic!("expected an obstruction, got {other:?}"),
        }
    }

    #[test]
    fn orbit_spans_in_gl2() {
        let amb = Arc::new(AmbientAlgebra::gl(G, 2).unwrap());
        let b = MatrixLieSubalgebra::flag_stabilizer(
            amb,
            &[&GeneralizedFlag::complete_coordinate(G, 2)],
        )
        .unwrap();
        assert!(orbit_span(&b, &unit_vector(G, 2, 1)).is_full());
        assert!(orbit_span(&b, &[Scalar::zero(G), Scalar::zero(G)]).is_zero());
    }

    #[test]
    fn orthogonal_line_flag_is_unique() {
        let amb = Arc::new(AmbientAlgebra::so(G, 6).unwrap());
        let line = coord(6, &[0]);
        let f = GeneralizedFlag::new(&[line.clone(), amb.form().perp(&line).unwrap()]).unwrap();
        let p = MatrixLieSubalgebra::flag_stabilizer(amb, &[&f]).unwrap();
        let r = chain(recover(&p).unwrap());
        assert_eq!(r.case, RecoveryCase::Unique);
        assert_eq!(r.flags, vec![f]);
        let st = r.state.unwrap();
        assert_eq!(st.m, line);
        assert_eq!(st.wsucc.dim(), 5);
    }

    fn trichotomy(n: usize, l: usize) {
        let amb = Arc::new(AmbientAlgebra::so(G, n).unwrap());
        let ls = coord(n, &(0..l).collect::<Vec<_>>());
        let f = GeneralizedFlag::new(&[ls.clone(), amb.form().perp(&ls).unwrap()]).unwrap();
        let p = MatrixLieSubalgebra::flag_stabilizer(amb.clone(), &[&f]).unwrap();
        let r = chain(recover(&p).unwrap());
        assert_eq!(r.case, RecoveryCase::Trichotomy);
        assert_eq!(r.flags.len(), 3);
        assert_eq!(r.flags[0], f);
        for g in &r.flags {
            assert_eq!(
                MatrixLieSubalgebra::flag_stabilizer(amb.clone(), &[g]).unwrap(),
                p
            );
        }
        let st = r.state.unwrap();
        let (m1, m2) = (st.m1.unwrap(), st.m2.unwrap());
        assert_eq!((m1.dim(), m2.dim()), (l + 1, l + 1));
        assert_eq!(m1.intersect(&m2).unwrap(), ls);
        assert_eq!(m1.sum(&m2).unwrap(), amb.form().perp(&ls).unwrap());
    }

    #[test]
    fn corank_two_isotropic_member_gives_three_flags() {
        trichotomy(6, 2);
        trichotomy(8, 3);
    }

    #[test]
    fn symplectic_line_flag() {
        let amb = Arc::new(AmbientAlgebra::sp(G, 2).unwrap());
        let line = coord(4, &[0]);
        let f = GeneralizedFlag::new(&[line.clone(), amb.form().perp(&line).unwrap()]).unwrap();
        let p = MatrixLieSubalgebra::flag_stabilizer(amb, &[&f]).unwrap();
        let r = chain(recover(&p).unwrap());
        assert_eq!(r.flags, vec![f]);
        assert_eq!(r.stabilizer, p);
    }
}
