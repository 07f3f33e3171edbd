//! Scenario configuration files.
//!
//! A scenario is a JSON object with a `schema` version, a `command` tag and
//! the objects the command needs. Vectors are lists of scalars in the text
//! encoding (`"1/2"`, `"1-2 i"`, `"(1,0,0,1)"`), subspaces are lists of
//! spanning vectors, flags are lists of subspaces and matrices are lists of
//! rows. Unknown fields are rejected.

use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use finpar::exactlin::{FormKind, Matrix, Ring, Scalar, SesquiStructure, Subspace, Vector};
use finpar::flags::GeneralizedFlag;
use finpar::liealg::{AmbientAlgebra, Family};
use finpar::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    CheckTaut,
    Stabilizer,
    Recover,
    RealParabolic,
    OrbitCheck,
    LimitDemo,
    CorpusSweep,
}

impl Command {
    pub fn tag(&self) -> &'static str {
        match self {
            Command::CheckTaut => "check-taut",
            Command::Stabilizer => "stabilizer",
            Command::Recover => "recover",
            Command::RealParabolic => "real-parabolic",
            Command::OrbitCheck => "orbit-check",
            Command::LimitDemo => "limit-demo",
            Command::CorpusSweep => "corpus-sweep",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

pub type VectorText = Vec<String>;
pub type SubspaceText = Vec<VectorText>;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub schema: u32,
    pub command: Command,
    /// `GL(n)`, `SL(n)`, `SO(n)` or `SP(m)`, optionally with a ring: `GL(2,H)`.
    pub ambient: Option<String>,
    /// Ring of the vectors for `check-taut` (default `Q(i)`).
    pub ring: Option<Ring>,
    /// Form for `check-taut`: `pairing(n)`, `symmetric(n)`, `symplectic(m)`
    /// or `hermitian(p,q)`.
    pub form: Option<String>,
    pub flag: Option<Vec<SubspaceText>>,
    pub partner: Option<Vec<SubspaceText>>,
    /// Generators of a subalgebra for `recover`, as matrices given by rows.
    pub generators: Option<Vec<Vec<VectorText>>>,
    pub real_form: Option<String>,
    /// `sl-in-gl` or `dense-closure`.
    pub demo: Option<String>,
    /// Ambient descriptors or real-form specs for `corpus-sweep`.
    #[serde(default)]
    pub targets: Vec<String>,
    pub random: Option<usize>,
    pub seed: Option<u64>,
    pub horizon: Option<usize>,
    pub format: Option<Format>,
}

impl ScenarioConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: ScenarioConfig =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("scenario config: {e}")))?;
        if cfg.schema != SCHEMA_VERSION {
            return Err(Error::Parse(format!(
                "scenario config: schema version {} is not supported (expected {SCHEMA_VERSION})",
                cfg.schema
            )));
        }
        Ok(cfg)
    }

    pub fn require<'a, T>(&self, field: &'static str, v: &'a Option<T>) -> Result<&'a T> {
        v.as_ref().ok_or_else(|| {
            Error::Precondition(format!("field `{field}` is required by {}", self.command.tag()))
        })
    }
}

/// Splits `NAME(a,b,...)` into the name and its trimmed arguments.
fn call(text: &str) -> Result<(&str, Vec<&str>)> {
    let err = || Error::Parse(format!("expected NAME(args), found {text:?}"));
    let t = text.trim();
    let open = t.find('(').ok_or_else(err)?;
    let inner = t[open + 1..].strip_suffix(')').ok_or_else(err)?;
    Ok((t[..open].trim(), inner.split(',').map(str::trim).collect()))
}

fn count(text: &str) -> Result<usize> {
    text.parse().map_err(|_| Error::Parse(format!("expected a dimension, found {text:?}")))
}

/// An ambient from `GL(3)`, `SO(6)`, `SP(2,Q)`, `GL(2,H)`. The ring defaults
/// to `Q(i)`; `SP(m)` acts on a space of dimension `2m`.
pub fn ambient(text: &str) -> Result<Arc<AmbientAlgebra>> {
    let (head, args) = call(text)?;
    let family = Family::from_str(head)?;
    let (n, ring) = match args.as_slice() {
        [n] => (count(n)?, Ring::Gauss),
        [n, r] => (count(n)?, Ring::from_str(r)?),
        _ => return Err(Error::Parse(format!("bad ambient descriptor {text:?}"))),
    };
    let a = match family {
        Family::GL => AmbientAlgebra::gl(ring, n)?,
        Family::SL => AmbientAlgebra::sl(ring, n)?,
        Family::SO => AmbientAlgebra::so(ring, n)?,
        Family::SP => AmbientAlgebra::sp(ring, n)?,
    };
    Ok(Arc::new(a))
}

/// A form for the tautness check.
pub fn form(text: &str, ring: Ring) -> Result<SesquiStructure> {
    let (head, args) = call(text)?;
    match (head, args.as_slice()) {
        ("pairing", [n]) => Ok(SesquiStructure::standard_pairing(ring, count(n)?)),
        ("symmetric", [n]) => Ok(SesquiStructure::split_symmetric(ring, count(n)?)),
        ("symplectic", [m]) => Ok(SesquiStructure::standard_symplectic(ring, count(m)?)),
        ("hermitian", [p, q]) => {
            let (p, q) = (count(p)?, count(q)?);
            let diag: Vec<Scalar> = (0..p + q)
                .map(|k| Scalar::from_int(ring, if k < p { 1 } else { -1 }))
                .collect();
            SesquiStructure::new(FormKind::Hermitian, Matrix::diag(ring, &diag), true)
        }
        _ => Err(Error::Parse(format!("unknown form {text:?}"))),
    }
}

pub fn vector(v: &[String], ring: Ring) -> Result<Vector> {
    v.iter().map(|x| Scalar::from_str(x)?.with_ring(ring)).collect()
}

pub fn subspace(vs: &[VectorText], ring: Ring, n: usize) -> Result<Subspace> {
    let vectors = vs.iter().map(|v| vector(v, ring)).collect::<Result<Vec<_>>>()?;
    Subspace::span(ring, n, &vectors)
}

pub fn flag(members: &[SubspaceText], ring: Ring, n: usize) -> Result<GeneralizedFlag> {
    let subspaces = members
        .iter()
        .map(|m| subspace(m, ring, n))
        .collect::<Result<Vec<_>>>()?;
    if subspaces.is_empty() {
        Ok(GeneralizedFlag::trivial(ring, n))
    } else {
        GeneralizedFlag::new(&subspaces)
    }
}

pub fn matrix(rows: &[VectorText], ring: Ring) -> Result<Matrix> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut entries = Vec::with_capacity(rows.len() * cols);
    for r in rows {
        if r.len() != cols {
            return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
        }
        entries.extend(vector(r, ring)?);
    }
    Matrix::new(ring, rows.len(), cols, entries)
}
