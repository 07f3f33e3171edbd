//! Seeded sweeps over generated corpora, one row per instance.

use serde_json::{json, Map, Value};

use finpar::corpus::{ambient_coordinate_flags, real_instances, Corpus};
use finpar::flags::GeneralizedFlag;
use finpar::liealg::{is_parabolic, AmbientAlgebra, Family, MatrixLieSubalgebra, ParabolicVerdict};
use finpar::orbits::{characterize, tangent_model};
use finpar::realforms::{build_real_form, is_real_parabolic, RealFormSpec};
use finpar::{Error, Result};

use crate::config::{self, ScenarioConfig};
use crate::run::{to_json, Report};

pub const DEFAULT_RANDOM: usize = 20;

pub fn corpus_sweep(cfg: &ScenarioConfig) -> Result<Report> {
    if cfg.targets.is_empty() {
        return Err(Error::Precondition("corpus-sweep needs at least one target".into()));
    }
    let seed = cfg.seed.unwrap_or(0);
    let random = cfg.random.unwrap_or(DEFAULT_RANDOM);
    let results: Vec<Result<Vec<Value>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = cfg
            .targets
            .iter()
            .enumerate()
            .map(|(k, t)| {
                let mut c = Corpus::new(seed.wrapping_add(k as u64));
                scope.spawn(move || sweep_target(t, &mut c, random))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| Err(Error::Internal("sweep worker panicked".into()))))
            .collect()
    });
    let mut rows = Vec::new();
    let mut targets = Map::new();
    for (t, r) in cfg.targets.iter().zip(results) {
        let r = r?;
        let positive = r.iter().filter(|row| row["parabolic"] == json!(true)).count();
        targets.insert(t.clone(), json!({ "instances": r.len(), "parabolic": positive }));
        rows.extend(r);
    }
    rows.sort_by(|a, b| a["key"].as_str().cmp(&b["key"].as_str()));
    let consistent = rows.iter().filter(|r| r["consistent"] == json!(true)).count();
    let mut report = Report::new(
        cfg.command,
        json!({
            "seed": seed,
            "random": random,
            "instances": rows.len(),
            "consistent_instances": consistent,
            "targets": targets,
            "rows": rows,
        }),
    );
    report.consistent = consistent == rows.len();
    Ok(report)
}

fn sweep_target(target: &str, c: &mut Corpus, random: usize) -> Result<Vec<Value>> {
    match target.parse::<RealFormSpec>() {
        Ok(spec) => real_rows(spec, c, random),
        Err(_) => ambient_rows(target, c, random),
    }
}

fn round_trips(a: &AmbientAlgebra, f: &GeneralizedFlag, flags: &[GeneralizedFlag]) -> bool {
    match a.family() {
        Family::GL | Family::SL | Family::SP => flags == [f.clone()],
        Family::SO => flags.contains(f),
    }
}

fn ambient_rows(tag: &str, c: &mut Corpus, random: usize) -> Result<Vec<Value>> {
    let a = config::ambient(tag)?;
    let mut flags: Vec<(String, GeneralizedFlag)> = ambient_coordinate_flags(&a)?
        .into_iter()
        .enumerate()
        .map(|(k, f)| (format!("{tag}/coordinate/{k:04}"), f))
        .collect();
    for (k, f) in c.ambient_flags(&a, random)?.into_iter().enumerate() {
        flags.push((format!("{tag}/random/{k:04}"), f));
    }
    let mut rows = Vec::with_capacity(flags.len());
    for (key, f) in flags {
        let p = MatrixLieSubalgebra::flag_stabilizer(a.clone(), &[&f])?;
        let row = match is_parabolic(&p)? {
            ParabolicVerdict::Parabolic { recovery, certificate } => {
                let trip = round_trips(&a, &f, &recovery.flags);
                let borel = certificate.is_contained_in(&p);
                json!({
                    "key": key,
                    "parabolic": true,
                    "case": to_json(&recovery.case)?,
                    "flags": recovery.flags.len(),
                    "round_trip": trip,
                    "consistent": trip && borel,
                })
            }
            ParabolicVerdict::NotParabolic(o) => json!({
                "key": key,
                "parabolic": false,
                "obstruction": o.to_string(),
                "consistent": false,
            }),
        };
        rows.push(row);
    }
    Ok(rows)
}

/// The real roundtrip, the complexified test and the characterization for
/// every instance, with both totally-real tests.
fn real_rows(spec: RealFormSpec, c: &mut Corpus, random: usize) -> Result<Vec<Value>> {
    let form = build_real_form(spec)?;
    let whole = form.algebra();
    let mut rows = Vec::new();
    for inst in real_instances(&form, c, random)? {
        let pc = inst.real.complexify()?;
        let is_form = pc == inst.complex;
        let real = is_real_parabolic(&inst.real)?.parabolic && is_form;
        let complex = is_parabolic(&pc)?.is_parabolic() && is_form;
        let ch = characterize(&inst.complex, &whole)?;
        let ptilde = match is_parabolic(&inst.complex)? {
            ParabolicVerdict::Parabolic { recovery, .. } => recovery.normalizer,
            ParabolicVerdict::NotParabolic(o) => {
                return Err(Error::Internal(format!("{}: flag stabilizer rejected: {o}", inst.label)))
            }
        };
        let m = tangent_model(&ptilde, &whole)?;
        let by_j = m.j_intersection_dim() == 0;
        let by_dim = m.real_intersection_dim() == ptilde.dim();
        rows.push(json!({
            "key": inst.label,
            "parabolic": real,
            "complexified_parabolic": complex,
            "characterization": ch.verdict,
            "totally_real_j": by_j,
            "totally_real_dim": by_dim,
            "real_dim": inst.real.dim(),
            "complex_dim": inst.complex.dim(),
            "consistent": real == complex && complex == ch.verdict && by_j == by_dim,
        }));
    }
    Ok(rows)
}
