use serde_json::json;

use finpar::exactlin::Ring;
use finpar::liealg::{is_parabolic, AmbientAlgebra, Family};
use finpar::limits::{
    closure, coherent_stabilizer, infinite_trace_conditions, is_closed, is_level_closed, limit_perp, trace_report,
    CoherentTraceFamily, DirectSystem, TailFlag, TailSubspace, DEFAULT_HORIZON,
};
use finpar::{Error, Result};

use crate::config::ScenarioConfig;
use crate::run::{to_json, Report};

const DENSE: &str = "e(i)-e(i+1) for i>=1";

pub fn limit_demo(cfg: &ScenarioConfig) -> Result<Report> {
    let horizon = cfg.horizon.unwrap_or(DEFAULT_HORIZON);
    let body = match cfg.require("demo", &cfg.demo)?.as_str() {
        "sl-in-gl" => sl_in_gl(horizon)?,
        "dense-closure" => dense_closure(horizon)?,
        other => return Err(Error::Precondition(format!("unknown demo {other:?}"))),
    };
    Ok(Report::new(cfg.command, body))
}

/// The usual trace on the trivial-flag stabilizers `gl(n)`, `n = 2..horizon`.
fn sl_in_gl(horizon: usize) -> Result<serde_json::Value> {
    let sys = DirectSystem::new(Family::GL, 2, horizon)?;
    let host = coherent_stabilizer(&TailFlag::trivial(), &sys)?;
    let fam = CoherentTraceFamily::usual_trace(host)?;
    let mut levels = Vec::new();
    for n in sys.levels() {
        let k = fam.joint_kernel(n)?;
        let sl = AmbientAlgebra::sl(Ring::Rat, n)?;
        levels.push(json!({
            "level": n,
            "kernel_dim": k.dim(),
            "kernel_is_sl": k.space() == sl.space(),
            "kernel_parabolic": is_parabolic(&k)?.is_parabolic(),
        }));
    }
    Ok(json!({
        "demo": "sl-in-gl",
        "system": to_json(&sys)?,
        "trace": to_json(&trace_report(&fam)?)?,
        "infinite_trace": infinite_trace_conditions(&fam)?,
        "levels": levels,
    }))
}

/// The hyperplane spanned by `e_i - e_{i+1}`: dense in the limit, closed at
/// every finite level.
fn dense_closure(horizon: usize) -> Result<serde_json::Value> {
    let sys = DirectSystem::new(Family::GL, 1, horizon)?;
    let u: TailSubspace = DENSE.parse()?;
    let level_closed = sys
        .levels()
        .map(|n| is_level_closed(&u, &sys, n))
        .collect::<Result<Vec<_>>>()?;
    Ok(json!({
        "demo": "dense-closure",
        "system": to_json(&sys)?,
        "subspace": u.to_string(),
        "limit_perp": limit_perp(&u, &sys)?.to_string(),
        "closure": closure(&u, &sys)?.to_string(),
        "closed": is_closed(&u, &sys)?,
        "closed_at_every_level": level_closed.iter().all(|c| *c),
        "semiclosed_flag": TailFlag::new(&[u], &sys)?.is_semiclosed(&sys)?,
    }))
}
