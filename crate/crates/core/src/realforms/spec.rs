use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::liealg::Family;

/// Largest complex dimension of the defining space accepted by the builder.
pub const MAX_COMPLEX_DIM: usize = 8;

/// One entry of the classical real-form catalogue.
///
/// Rank parameters follow the usual names: `sl(n,R)` acts on `R^n`,
/// `sl(n,H)` on `H^n`, `so*(2n)` on `H^n`, `sp(n,R)` on `R^{2n}` and
/// `sp(p,q)` on `H^{p+q}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RealFormSpec {
    SlR(usize),
    SlH(usize),
    Su(usize, usize),
    So(usize, usize),
    SoStar(usize),
    SpR(usize),
    Sp(usize, usize),
    GlR(usize),
    GlH(usize),
    U(usize, usize),
}

impl RealFormSpec {
    /// Short family tag (`sl-R`, `su`, `so*`, ...).
    pub fn tag(&self) -> &'static str {
        match self {
            RealFormSpec::SlR(_) => "sl-R",
            RealFormSpec::SlH(_) => "sl-H",
            RealFormSpec::Su(..) => "su",
            RealFormSpec::So(..) => "so",
            RealFormSpec::SoStar(_) => "so*",
            RealFormSpec::SpR(_) => "sp-R",
            RealFormSpec::Sp(..) => "sp",
            RealFormSpec::GlR(_) => "gl-R",
            RealFormSpec::GlH(_) => "gl-H",
            RealFormSpec::U(..) => "u",
        }
    }

    /// Family of the complexification.
    pub fn complex_family(&self) -> Family {
        match self {
            RealFormSpec::SlR(_) | RealFormSpec::SlH(_) | RealFormSpec::Su(..) => Family::SL,
            RealFormSpec::GlR(_) | RealFormSpec::GlH(_) | RealFormSpec::U(..) => Family::GL,
            RealFormSpec::So(..) | RealFormSpec::SoStar(_) => Family::SO,
            RealFormSpec::SpR(_) | RealFormSpec::Sp(..) => Family::SP,
        }
    }

    /// Dimension of the complexified defining space.
    pub fn complex_dim(&self) -> usize {
        match *self {
            RealFormSpec::SlR(n) | RealFormSpec::GlR(n) | RealFormSpec::SoStar(n) => n,
            RealFormSpec::SlH(n) | RealFormSpec::GlH(n) | RealFormSpec::SpR(n) => 2 * n,
            RealFormSpec::Su(p, q) | RealFormSpec::U(p, q) | RealFormSpec::So(p, q) => p + q,
            RealFormSpec::Sp(p, q) => 2 * (p + q),
        }
    }

    /// Whether the defining space carries a quaternionic structure `J`.
    pub fn is_quaternionic(&self) -> bool {
        matches!(
            self,
            RealFormSpec::SlH(_)
                | RealFormSpec::GlH(_)
                | RealFormSpec::Sp(..)
                | RealFormSpec::SoStar(_)
        )
    }

    /// Whether the conjugation is the adjoint for a hermitian form.
    pub fn is_unitary(&self) -> bool {
        matches!(
            self,
            RealFormSpec::Su(..)
                | RealFormSpec::U(..)
                | RealFormSpec::Sp(..)
                | RealFormSpec::SoStar(_)
        )
    }

    /// Signature `(p, q)` for the indefinite families.
    pub fn signature(&self) -> Option<(usize, usize)> {
        match *self {
            RealFormSpec::Su(p, q)
            | RealFormSpec::U(p, q)
            | RealFormSpec::So(p, q)
            | RealFormSpec::Sp(p, q) => Some((p, q)),
            _ => None,
        }
    }

    fn validate(self) -> Result<Self> {
        let bad = |why: &str| Err(Error::UnsupportedRealForm(format!("{self}: {why}")));
        match self {
            RealFormSpec::SoStar(n) if n % 2 != 0 => return bad("so* needs an even parameter"),
            RealFormSpec::So(p, q) if p + q < 2 => return bad("so needs p + q ≥ 2"),
            _ => {}
        }
        let d = self.complex_dim();
        if d == 0 {
            return bad("rank must be positive");
        }
        if d > MAX_COMPLEX_DIM {
            return bad(&format!("complex dimension {d} exceeds {MAX_COMPLEX_DIM}"));
        }
        Ok(self)
    }
}

impl fmt::Display for RealFormSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            RealFormSpec::SlR(n) => write!(f, "sl({n},R)"),
            RealFormSpec::SlH(n) => write!(f, "sl({n},H)"),
            RealFormSpec::Su(p, q) => write!(f, "su({p},{q})"),
            RealFormSpec::So(p, q) => write!(f, "so({p},{q})"),
            RealFormSpec::SoStar(n) => write!(f, "so*({n})"),
            RealFormSpec::SpR(n) => write!(f, "sp({n},R)"),
            RealFormSpec::Sp(p, q) => write!(f, "sp({p},{q})"),
            RealFormSpec::GlR(n) => write!(f, "gl({n},R)"),
            RealFormSpec::GlH(n) => write!(f, "gl({n},H)"),
            RealFormSpec::U(p, q) => write!(f, "u({p},{q})"),
        }
    }
}

impl FromStr for RealFormSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse(format!("unrecognized real form {s:?}"));
        let open = s.find('(').ok_or_else(err)?;
        let inner = s[open + 1..].strip_suffix(')').ok_or_else(err)?;
        let head = &s[..open];
        let args: Vec<&str> = inner.split(',').collect();
        let num = |a: &str| -> Result<usize> {
            if a.is_empty()
                || !a.bytes().all(|b| b.is_ascii_digit())
                || (a.len() > 1 && a.starts_with('0'))
            {
                return Err(err());
            }
            a.parse().map_err(|_| err())
        };
        let spec = match (head, args.as_slice()) {
            ("sl", [n, "R"]) => RealFormSpec::SlR(num(n)?),
            ("sl", [n, "H"]) => RealFormSpec::SlH(num(n)?),
            ("gl", [n, "R"]) => RealFormSpec::GlR(num(n)?),
            ("gl", [n, "H"]) => RealFormSpec::GlH(num(n)?),
            ("sp", [n, "R"]) => RealFormSpec::SpR(num(n)?),
            ("sp", [p, q]) => RealFormSpec::Sp(num(p)?, num(q)?),
            ("su", [p, q]) => RealFormSpec::Su(num(p)?, num(q)?),
            ("u", [p, q]) => RealFormSpec::U(num(p)?, num(q)?),
            ("so", [p, q]) => RealFormSpec::So(num(p)?, num(q)?),
            ("so*", [n]) => RealFormSpec::SoStar(num(n)?),
            _ => return Err(err()),
        };
        spec.validate()
    }
}

impl Serialize for RealFormSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RealFormSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_round_trips() {
        for s in [
            "su(1,2)", "so*(6)", "sl(3,H)", "sp(2,R)", "sl(2,R)", "gl(4,R)", "gl(2,H)", "u(0,3)",
            "so(3,3)", "sp(1,1)",
        ] {
            let spec: RealFormSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
    }

    #[test]
    fn grammar_rejects_noise() {
        for s in [
            "su(1, 2)", "so*(5)", "sl(3,C)", "SU(1,2)", "su(1,2", "sl(03,R)", "so(1,0)", "sl(9,R)",
            "sp(3,2)",
        ] {
            assert!(s.parse::<RealFormSpec>().is_err(), "{s}");
        }
    }

    #[test]
    fn dimensions_of_defining_spaces() {
        assert_eq!("sl(3,H)".parse::<RealFormSpec>().unwrap().complex_dim(), 6);
        assert_eq!("so*(6)".parse::<RealFormSpec>().unwrap().complex_dim(), 6);
        assert_eq!("sp(1,1)".parse::<RealFormSpec>().unwrap().complex_dim(), 4);
    }
}
