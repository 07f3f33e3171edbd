//! Dispatch of scenarios to the library.

use serde_json::{json, Map, Value};

use finpar::exactlin::{FormKind, Ring};
use finpar::flags::{is_self_taut, is_taut_couple};
use finpar::liealg::{is_parabolic, MatrixLieSubalgebra, ParabolicVerdict};
use finpar::orbits::characterize;
use finpar::realforms::{build_real_form, is_real_parabolic};
use finpar::recovery::{recover, Recovery};
use finpar::{Error, Result};

use crate::config::{self, Command, ScenarioConfig};
use crate::limit::limit_demo;
use crate::sweep::corpus_sweep;

/// The outcome of a scenario. `consistent` is false when two independent
/// computations of the same verdict disagreed.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: Command,
    pub body: Map<String, Value>,
    pub consistent: bool,
}

impl Report {
    pub fn new(command: Command, body: Value) -> Self {
        let body = match body {
            Value::Object(m) => m,
            other => Map::from_iter([("result".to_string(), other)]),
        };
        Report { command, body, consistent: true }
    }

    /// The whole report as one JSON object, keys sorted.
    pub fn to_value(&self) -> Value {
        let mut m = self.body.clone();
        m.insert("command".into(), json!(self.command.tag()));
        m.insert("consistent".into(), json!(self.consistent));
        Value::Object(m)
    }
}

pub(crate) fn to_json<T: serde::Serialize>(x: &T) -> Result<Value> {
    serde_json::to_value(x).map_err(|e| Error::Internal(format!("report encoding: {e}")))
}

pub fn run_scenario(cfg: &ScenarioConfig) -> Result<Report> {
    match cfg.command {
        Command::CheckTaut => check_taut(cfg),
        Command::Stabilizer => stabilizer(cfg),
        Command::Recover => recover_scenario(cfg),
        Command::RealParabolic => real_parabolic(cfg),
        Command::OrbitCheck => orbit_check(cfg),
        Command::LimitDemo => limit_demo(cfg),
        Command::CorpusSweep => corpus_sweep(cfg),
    }
}

fn check_taut(cfg: &ScenarioConfig) -> Result<Report> {
    let ring = cfg.ring.unwrap_or(Ring::Gauss);
    let form_text = cfg.require("form", &cfg.form)?;
    let form = config::form(form_text, ring)?;
    let n = form.dim();
    let fv = config::flag(cfg.require("flag", &cfg.flag)?, ring, n)?;
    let body = if form.kind() == FormKind::Pairing {
        let fw = match &cfg.partner {
            Some(p) => config::flag(p, ring, n)?,
            None => fv.perp_chain(&form)?,
        };
        json!({
            "form": form_text,
            "flag": to_json(&fv)?,
            "partner": to_json(&fw)?,
            "taut": is_taut_couple(&fv, &fw, &form)?,
        })
    } else {
        if cfg.partner.is_some() {
            return Err(Error::Precondition("a partner flag needs a pairing".into()));
        }
        let classes = fv
            .members()
            .iter()
            .map(|m| form.isotropy_class(m))
            .collect::<Result<Vec<_>>>()?;
        json!({
            "form": form_text,
            "flag": to_json(&fv)?,
            "perp_chain": to_json(&fv.perp_chain(&form)?)?,
            "isotropy": to_json(&classes)?,
            "taut": is_self_taut(&fv, &form)?,
        })
    };
    Ok(Report::new(cfg.command, body))
}

/// The subalgebra named by a scenario: the stabilizer of `flag` (and
/// `partner`), or the subalgebra generated by `generators`.
fn subalgebra(cfg: &ScenarioConfig) -> Result<MatrixLieSubalgebra> {
    let a = config::ambient(cfg.require("ambient", &cfg.ambient)?)?;
    let (ring, n) = (a.ring(), a.n());
    match (&cfg.flag, &cfg.generators) {
        (Some(f), None) => {
            let fv = config::flag(f, ring, n)?;
            match &cfg.partner {
                Some(p) => {
                    let fw = config::flag(p, ring, n)?;
                    MatrixLieSubalgebra::flag_stabilizer(a, &[&fv, &fw])
                }
                None => MatrixLieSubalgebra::flag_stabilizer(a, &[&fv]),
            }
        }
        (None, Some(gens)) => {
            let mats = gens
                .iter()
                .map(|g| config::matrix(g, ring))
                .collect::<Result<Vec<_>>>()?;
            MatrixLieSubalgebra::bracket_closure(a, &mats)
        }
        _ => Err(Error::Precondition(
            "give exactly one of `flag` and `generators`".into(),
        )),
    }
}

fn stabilizer(cfg: &ScenarioConfig) -> Result<Report> {
    let p = subalgebra(cfg)?;
    let mut body = json!({
        "ambient": p.ambient().descriptor(),
        "dim": p.dim(),
        "basis": to_json(&p.basis())?,
    });
    match is_parabolic(&p)? {
        ParabolicVerdict::Parabolic { certificate, .. } => {
            body["parabolic"] = json!(true);
            body["borel"] = to_json(&certificate)?;
        }
        ParabolicVerdict::NotParabolic(o) => {
            body["parabolic"] = json!(false);
            body["obstruction"] = to_json(&o)?;
        }
    }
    Ok(Report::new(cfg.command, body))
}

fn recover_scenario(cfg: &ScenarioConfig) -> Result<Report> {
    let p = subalgebra(cfg)?;
    let mut body = json!({
        "ambient": p.ambient().descriptor(),
        "subalgebra_dim": p.dim(),
    });
    match recover(&p)? {
        Recovery::Chain(rec) => {
            body["case"] = to_json(&rec.case)?;
            body["flags"] = to_json(&rec.flags)?;
            body["stabilizer_dim"] = json!(rec.stabilizer.dim());
            body["parabolic"] = json!(rec.stabilizer == p);
            if let Some(w) = &rec.partner {
                body["partner"] = to_json(w)?;
            }
            if let Some(st) = &rec.state {
                for (key, s) in [("L", &st.l), ("M1", &st.m1), ("M2", &st.m2)] {
                    if let Some(s) = s {
                        body[key] = to_json(s)?;
                    }
                }
            }
        }
        Recovery::Obstructed(o) => {
            body["parabolic"] = json!(false);
            body["obstruction"] = to_json(&o)?;
        }
    }
    Ok(Report::new(cfg.command, body))
}

/// The complex stabilizer of `flag` and its real points in the named form.
fn real_instance(
    cfg: &ScenarioConfig,
) -> Result<(
    std::sync::Arc<finpar::realforms::RealForm>,
    MatrixLieSubalgebra,
    finpar::realforms::RealSubalgebra,
)> {
    let spec = cfg.require("real_form", &cfg.real_form)?.parse()?;
    let form = build_real_form(spec)?;
    let amb = form.complex.clone();
    let f = config::flag(cfg.require("flag", &cfg.flag)?, amb.ring(), amb.n())?;
    let complex = MatrixLieSubalgebra::flag_stabilizer(amb, &[&f])?;
    let real = form.intersect(&complex)?;
    Ok((form, complex, real))
}

fn real_parabolic(cfg: &ScenarioConfig) -> Result<Report> {
    let (form, complex, real) = real_instance(cfg)?;
    let v = is_real_parabolic(&real)?;
    let mut body = to_json(&v)?;
    body["real_form"] = json!(form.spec.to_string());
    body["complex_dim"] = json!(complex.dim());
    body["real_dim"] = json!(real.dim());
    Ok(Report::new(cfg.command, body))
}

fn orbit_check(cfg: &ScenarioConfig) -> Result<Report> {
    let (form, complex, real) = real_instance(cfg)?;
    let mut body = to_json(&characterize(&complex, &form.algebra())?)?;
    body["real_form"] = json!(form.spec.to_string());
    body["complex_dim"] = json!(complex.dim());
    body["real_dim"] = json!(real.dim());
    Ok(Report::new(cfg.command, body))
}
