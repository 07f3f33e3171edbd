//! Acceptance suite: one line per criterion, nonzero exit on any failure.

use std::error::Error as StdError;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use finpar::corpus::{
    ambient_coordinate_flags, named_ambient, quaternionic_couple, real_instances, Corpus,
    RealInstance,
};
use finpar::exactlin::quaternionic::{complexify_form, complexify_subspace};
use finpar::exactlin::{Matrix, Ring, SesquiStructure};
use finpar::flags::{is_taut_couple, GeneralizedFlag};
use finpar::liealg::{is_parabolic, AmbientAlgebra, Family, MatrixLieSubalgebra, ParabolicVerdict};
use finpar::limits::{
    closure, coherent_stabilizer, equal, infinite_trace_conditions, is_closed, is_level_closed,
    limit_perp, CoherentTraceFamily, DirectSystem, TailFlag, TailSubspace,
};
use finpar::orbits::{characterize, tangent_model};
use finpar::realforms::{build_real_form, is_real_parabolic, isotropic_members, RealForm};
use finpar::recovery::{Obstruction, RecoveryCase};

type Check = Result<String, Box<dyn StdError>>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+).into());
        }
    };
}

const SEED: u64 = 20240917;

struct Criterion {
    number: usize,
    name: &'static str,
    budget: Duration,
    run: fn() -> Check,
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn galois_lattice() -> Check {
    let mut c = Corpus::new(SEED);
    let mut counted = 0;
    for ring in [Ring::Rat, Ring::Gauss, Ring::Quat] {
        for _ in 0..500 {
            let n = 1 + c.below(8);
            let pairing = SesquiStructure::standard_pairing(ring, n);
            let s_dim = c.below(n + 1);
            let s = c.subspace(ring, n, s_dim);
            let extra_dim = c.below(n + 1);
            let t = s.sum(&c.subspace(ring, n, extra_dim))?;
            let (sp, tp) = (pairing.perp(&s)?, pairing.perp(&t)?);
            ensure!(sp.contains(&tp), "{ring:?}: perp is not antitone at n = {n}");
            let (sl, tl) = (pairing.perp_left(&sp)?, pairing.perp_left(&tp)?);
            ensure!(sl.contains(&s) && tl.contains(&t), "{ring:?}: s is not inside its double perp");
            ensure!(
                s.dim() + sp.dim() == n && t.dim() + tp.dim() == n,
                "{ring:?}: dim s + dim s^perp != {n}"
            );
            let w = c.subspace(ring, n, s_dim);
            ensure!(pairing.perp_left(&w)?.dim() + w.dim() == n, "{ring:?}: left perp dimension");
            counted += 1;
        }
    }
    Ok(format!("{counted} subspace pairs over Q, Q(i), H"))
}

fn negative_controls() -> Check {
    let gl2 = Arc::new(AmbientAlgebra::gl(Ring::Gauss, 2)?);
    let sl2 = AmbientAlgebra::sl(Ring::Gauss, 2)?;
    let s = MatrixLieSubalgebra::from_space(gl2.clone(), sl2.space().clone())?;
    match is_parabolic(&s)? {
        ParabolicVerdict::NotParabolic(Obstruction::NotEqualStabilizer { .. }) => {}
        other => return Err(format!("sl(2) in gl(2): {:?}", other.is_parabolic()).into()),
    }
    let torus = MatrixLieSubalgebra::new(
        gl2,
        &[Matrix::unit(Ring::Gauss, 2, 0, 0), Matrix::unit(Ring::Gauss, 2, 1, 1)],
    )?;
    match is_parabolic(&torus)? {
        ParabolicVerdict::NotParabolic(Obstruction::NotAChain { .. }) => {}
        other => return Err(format!("diagonal torus: {:?}", other.is_parabolic()).into()),
    }
    Ok("sl(2): NOT-EQUAL-STABILIZER, torus: NOT-A-CHAIN".into())
}

fn flag_corpus(a: &AmbientAlgebra, c: &mut Corpus, random: usize) -> finpar::Result<Vec<GeneralizedFlag>> {
    let mut flags = ambient_coordinate_flags(a)?;
    flags.extend(c.ambient_flags(a, random)?);
    Ok(flags)
}

fn stabilizer(a: &Arc<AmbientAlgebra>, f: &GeneralizedFlag) -> finpar::Result<MatrixLieSubalgebra> {
    MatrixLieSubalgebra::flag_stabilizer(a.clone(), &[f])
}

fn parabolic_correspondence() -> Check {
    let mut c = Corpus::new(SEED + 2);
    let mut total = 0;
    for tag in ["GL(3)", "GL(4)", "SL(3)", "SP(2)", "SO(6)"] {
        let a = named_ambient(tag)?;
        for f in flag_corpus(&a, &mut c, 200)? {
            let p = stabilizer(&a, &f)?;
            let (rec, cert) = match is_parabolic(&p)? {
                ParabolicVerdict::Parabolic { recovery, certificate } => (*recovery, certificate),
                ParabolicVerdict::NotParabolic(o) => {
                    return Err(format!("{tag}: stabilizer rejected: {o}").into())
                }
            };
            ensure!(cert.is_contained_in(&p), "{tag}: Borel witness not inside p");
            ensure!(
                cert.witness.is_solvable() && cert.witness.dim() == a.borel_dim(),
                "{tag}: witness is not a Borel subalgebra"
            );
            ensure!(
                stabilizer(&a, &cert.complete_flag)? == cert.witness
                    && cert.complete_flag.refines(rec.base_flag()),
                "{tag}: witness is not the stabilizer of a refinement"
            );
            let round_trip = match a.family() {
                Family::GL | Family::SL => {
                    rec.flags == [f.clone()] && rec.partner == Some(f.perp_chain(a.form())?)
                }
                Family::SP => rec.flags == [f.clone()],
                Family::SO => rec.flags.contains(&f),
            };
            ensure!(round_trip, "{tag}: recovery does not return the flag");
            total += 1;
        }
    }
    Ok(format!("{total} flag stabilizers"))
}

/// A member `L` that is isotropic with `dim L^perp - dim L = 2`.
fn has_corank_two_member(f: &GeneralizedFlag, form: &SesquiStructure) -> finpar::Result<bool> {
    for m in f.members() {
        if form.is_isotropic(m)? && form.perp(m)?.dim() == m.dim() + 2 {
            return Ok(true);
        }
    }
    Ok(false)
}

fn so_trichotomy() -> Check {
    let mut c = Corpus::new(SEED + 3);
    let (mut triples, mut singles) = (0, 0);
    for (tag, random) in [("SO(6)", 150), ("SO(8)", 100)] {
        let a = named_ambient(tag)?;
        let form = a.form();
        for f in flag_corpus(&a, &mut c, random)? {
            let p = stabilizer(&a, &f)?;
            let rec = match is_parabolic(&p)? {
                ParabolicVerdict::Parabolic { recovery, .. } => *recovery,
                ParabolicVerdict::NotParabolic(o) => return Err(format!("{tag}: {o}").into()),
            };
            if !has_corank_two_member(&f, form)? {
                ensure!(rec.flags.len() == 1, "{tag}: {} flags without a corank-2 member", rec.flags.len());
                ensure!(rec.case == RecoveryCase::Unique, "{tag}: trichotomy without a corank-2 member");
                singles += 1;
                continue;
            }
            ensure!(rec.case == RecoveryCase::Trichotomy, "{tag}: corank-2 instance recovered uniquely");
            let fl = &rec.flags;
            ensure!(
                fl.len() == 3 && fl[0] != fl[1] && fl[1] != fl[2] && fl[0] != fl[2],
                "{tag}: expected three distinct flags"
            );
            for g in fl {
                let s = stabilizer(&a, g)?;
                ensure!(s.basis() == p.basis(), "{tag}: stabilizers differ");
            }
            let state = rec.state.as_ref().ok_or("trichotomy without recovery state")?;
            let (Some(l), Some(m1), Some(m2)) = (&state.l, &state.m1, &state.m2) else {
                return Err(format!("{tag}: trichotomy without L, M1, M2").into());
            };
            ensure!(m1.intersect(m2)? == *l, "{tag}: M1 meet M2 is not L");
            ensure!(m1.sum(m2)? == form.perp(l)?, "{tag}: M1 + M2 is not L^perp");
            triples += 1;
        }
    }
    ensure!(triples > 0 && singles > 0, "degenerate corpus: {triples} triples, {singles} singles");
    Ok(format!("{triples} corank-2 instances with 3 flags, {singles} with 1"))
}

fn field_independence() -> Check {
    let mut c = Corpus::new(SEED + 5);
    let (mut taut, mut total) = (0, 0);
    for k in 0..240 {
        let n = 1 + k % 3;
        let pairing = SesquiStructure::standard_pairing(Ring::Quat, n);
        let complex = complexify_form(&pairing)?;
        let (fv, fw) = quaternionic_couple(&mut c, n)?;
        let over_h = is_taut_couple(&fv, &fw, &pairing)?;
        let over_c = is_taut_couple(
            &fv.map(complexify_subspace)?,
            &fw.map(complexify_subspace)?,
            &complex,
        )?;
        ensure!(over_h == over_c, "couple {k} at H-rank {n}: H says {over_h}, C says {over_c}");
        taut += usize::from(over_h);
        total += 1;
    }
    ensure!(taut > 0 && taut < total, "degenerate corpus: {taut} of {total} taut");
    Ok(format!("{total} couples, {taut} taut"))
}

const REAL_FORMS: [&str; 8] =
    ["su(1,1)", "su(1,2)", "sl(2,R)", "sl(3,R)", "sp(1,1)", "so(2,2)", "so(3,3)", "sl(2,H)"];

type RealCorpus = Vec<(Arc<RealForm>, Vec<RealInstance>)>;

fn real_corpus() -> Result<&'static RealCorpus, Box<dyn StdError>> {
    static CORPUS: std::sync::OnceLock<Result<RealCorpus, String>> = std::sync::OnceLock::new();
    let built = CORPUS.get_or_init(|| {
        let mut c = Corpus::new(SEED + 6);
        REAL_FORMS
            .iter()
            .map(|s| {
                let form = build_real_form(s.parse()?)?;
                let inst = real_instances(&form, &mut c, 100)?;
                Ok((form, inst))
            })
            .collect::<finpar::Result<_>>()
            .map_err(|e| e.to_string())
    });
    built.as_ref().map_err(|e| e.clone().into())
}

fn real_roundtrip() -> Check {
    let (mut yes, mut no) = (0, 0);
    for (form, instances) in real_corpus()? {
        let whole = form.algebra();
        for inst in instances {
            let pc = inst.real.complexify()?;
            let is_form = pc == inst.complex;
            let a = is_real_parabolic(&inst.real)?.parabolic && is_form;
            let b = is_parabolic(&pc)?.is_parabolic() && is_form;
            let c = characterize(&inst.complex, &whole)?.verdict;
            ensure!(a == b && b == c, "{}: real {a}, complexified {b}, characterization {c}", inst.label);
            if a {
                yes += 1;
            } else {
                no += 1;
            }
        }
    }
    ensure!(yes > 0 && no > 0, "degenerate corpus: {yes} parabolic, {no} not");
    Ok(format!("{} instances agree ({yes} real parabolic, {no} not)", yes + no))
}

fn totally_real_consistency() -> Check {
    let mut total = 0;
    for (form, instances) in real_corpus()? {
        let whole = form.algebra();
        for inst in instances {
            let ptilde = match is_parabolic(&inst.complex)? {
                ParabolicVerdict::Parabolic { recovery, .. } => recovery.normalizer,
                ParabolicVerdict::NotParabolic(o) => return Err(format!("{}: {o}", inst.label).into()),
            };
            let m = tangent_model(&ptilde, &whole)?;
            let by_j = m.j_intersection_dim() == 0;
            let by_dim = m.real_intersection_dim() == ptilde.dim();
            ensure!(by_j == by_dim, "{}: J-intersection {by_j}, dimension count {by_dim}", inst.label);
            total += 1;
        }
    }
    Ok(format!("{total} tangent models"))
}

fn finite_unitary() -> Check {
    let mut c = Corpus::new(SEED + 7);
    let mut parabolic = 0;
    for q in 1..=3 {
        let form = build_real_form(format!("su(1,{q})").parse()?)?;
        let h = form.hermitian().ok_or("unitary form without hermitian gram")?;
        for inst in real_instances(&form, &mut c, 60)? {
            let v = is_real_parabolic(&inst.real)?;
            if !v.parabolic {
                continue;
            }
            for f in &v.complex_flags {
                let k = isotropic_members(f, &h)?;
                ensure!(k <= 1, "{}: {k} isotropic members", inst.label);
            }
            ensure!(v.trace_conditions == 0, "{}: {} trace conditions", inst.label, v.trace_conditions);
            parabolic += 1;
        }
    }
    ensure!(parabolic > 0, "no real parabolic instance in the corpus");
    Ok(format!("{parabolic} real parabolics in su(1,q), q <= 3"))
}

fn limit_flagship() -> Check {
    let sys = DirectSystem::new(Family::GL, 2, 12)?;
    let host = coherent_stabilizer(&TailFlag::trivial(), &sys)?;
    let fam = CoherentTraceFamily::usual_trace(host.clone())?;
    ensure!(infinite_trace_conditions(&fam)?, "the usual trace is not an infinite trace condition");
    for n in sys.levels() {
        let gl = AmbientAlgebra::gl(Ring::Rat, n)?;
        ensure!(host.at(n)?.space() == gl.space(), "level {n}: host is not gl({n})");
        let k = fam.joint_kernel(n)?;
        ensure!(k.space() == AmbientAlgebra::sl(Ring::Rat, n)?.space(), "level {n}: kernel is not sl({n})");
        ensure!(!is_parabolic(&k)?.is_parabolic(), "level {n}: sl({n}) is parabolic in gl({n})");
    }
    Ok("usual trace is infinite; kernel sl(n) non-parabolic at levels 2..12".into())
}

fn limit_closure() -> Check {
    let sys = DirectSystem::gl(12);
    let u: TailSubspace = "e(i)-e(i+1) for i>=1".parse()?;
    ensure!(limit_perp(&u, &sys)? == TailSubspace::zero(), "perp of the dense hyperplane is not 0");
    ensure!(equal(&closure(&u, &sys)?, &TailSubspace::whole(), &sys)?, "closure is not V");
    ensure!(!is_closed(&u, &sys)?, "dense hyperplane reported closed");
    for n in sys.levels() {
        ensure!(is_level_closed(&u, &sys, n)?, "level {n} reports the hyperplane not closed");
    }
    ensure!(TailFlag::new(&[u], &sys)?.is_semiclosed(&sys)?, "dense flag not semiclosed");
    Ok("perp 0, closure V, closed at every level 1..12".into())
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { number: 1, name: "perp lattice laws", budget: secs(30), run: galois_lattice },
        Criterion { number: 2, name: "finite-rank parabolic correspondence", budget: secs(300), run: parabolic_correspondence },
        Criterion { number: 3, name: "SO trichotomy", budget: secs(120), run: so_trichotomy },
        Criterion { number: 4, name: "negative controls", budget: secs(1), run: negative_controls },
        Criterion { number: 5, name: "field independence of tautness", budget: secs(120), run: field_independence },
        Criterion { number: 6, name: "real roundtrip", budget: secs(600), run: real_roundtrip },
        Criterion { number: 7, name: "finite unitary flags", budget: secs(60), run: finite_unitary },
        Criterion { number: 8, name: "totally-real consistency", budget: secs(600), run: totally_real_consistency },
        Criterion { number: 9, name: "limit flagship", budget: secs(60), run: limit_flagship },
        Criterion { number: 10, name: "limit closure", budget: secs(30), run: limit_closure },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let took = start.elapsed();
        let (status, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(e) => ("FAIL", e.to_string()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        let over = if took > c.budget { " (over time budget)" } else { "" };
        println!(
            "criterion {}: {status} {} [{:.1}s]{over}: {detail}",
            c.number,
            c.name,
            took.as_secs_f64()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
