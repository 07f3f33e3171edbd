//! Exact scalars over the rationals, the Gaussian rationals and the rational
//! Hamilton quaternions.
//!
//! Every scalar is stored as four rational components `a + b i + c j + d k`
//! together with a ring tag. Components outside the tagged ring are always
//! zero, so the three rings nest as `Q ⊂ Q(i) ⊂ H(Q)` and mixed arithmetic
//! promotes to the wider tag.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which division ring a scalar (or a vector, matrix or subspace) lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Ring {
    #[serde(rename = "Q")]
    Rat,
    #[serde(rename = "Q(i)")]
    Gauss,
    #[serde(rename = "H")]
    Quat,
}

impl Ring {
    /// Dimension over `Q`.
    pub fn degree(self) -> usize {
        match self {
            Ring::Rat => 1,
            Ring::Gauss => 2,
            Ring::Quat => 4,
        }
    }

    pub fn is_commutative(self) -> bool {
        self != Ring::Quat
    }

    /// Basis of the ring as a right module over `field` (`field` must be
    /// `Rat` or `Gauss` and contained in `self`).
    pub fn basis_over(self, field: Ring) -> Vec<Scalar> {
        match (self, field) {
            (r, f) if r == f => vec![Scalar::one(r)],
            (Ring::Gauss, Ring::Rat) => vec![Scalar::one(Ring::Gauss), Scalar::i()],
            (Ring::Quat, Ring::Rat) => vec![
                Scalar::one(Ring::Quat),
                Scalar::i_quat(),
                Scalar::j(),
                Scalar::k(),
            ],
            (Ring::Quat, Ring::Gauss) => vec![Scalar::one(Ring::Quat), Scalar::j()],
            _ => panic!("{self} is not an extension of {field}"),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ring::Rat => "Q",
            Ring::Gauss => "Q(i)",
            Ring::Quat => "H",
        })
    }
}

impl FromStr for Ring {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "Q" | "RAT" => Ok(Ring::Rat),
            "Q(i)" | "GAUSS" => Ok(Ring::Gauss),
            "H" | "QUAT" => Ok(Ring::Quat),
            other => Err(Error::Parse(format!("unknown ring {other:?}"))),
        }
    }
}

/// An exact element of `Q`, `Q(i)` or `H(Q)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    ring: Ring,
    c: [BigRational; 4],
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Scalar {
    pub fn zero(ring: Ring) -> Self {
        Scalar {
            ring,
            c: [
                BigRational::zero(),
                BigRational::zero(),
                BigRational::zero(),
                BigRational::zero(),
            ],
        }
    }

    pub fn one(ring: Ring) -> Self {
        Self::from_int(ring, 1)
    }

    pub fn from_int(ring: Ring, n: i64) -> Self {
        let mut s = Self::zero(ring);
        s.c[0] = q(n);
        s
    }

    pub fn from_rational(ring: Ring, r: BigRational) -> Self {
        let mut s = Self::zero(ring);
        s.c[0] = r;
        s
    }

    /// `p/q` in the given ring. Panics on a zero denominator.
    pub fn ratio(ring: Ring, p: i64, d: i64) -> Self {
        Self::from_rational(ring, BigRational::new(BigInt::from(p), BigInt::from(d)))
    }

    pub fn gauss(re: i64, im: i64) -> Self {
        Scalar {
            ring: Ring::Gauss,
            c: [q(re), q(im), q(0), q(0)],
        }
    }

    pub fn quat(a: i64, b: i64, c: i64, d: i64) -> Self {
        Scalar {
            ring: Ring::Quat,
            c: [q(a), q(b), q(c), q(d)],
        }
    }

    /// Builds a scalar from rational components, checking that the components
    /// outside `ring` vanish.
    pub fn from_components(ring: Ring, comps: [BigRational; 4]) -> Result<Self> {
        let s = Scalar {
            ring: Ring::Quat,
            c: comps,
        };
        s.into_ring(ring)
    }

    /// The imaginary unit of `Q(i)`.
    pub fn i() -> Self {
        Self::gauss(0, 1)
    }

    /// `i` tagged as a quaternion.
    pub fn i_quat() -> Self {
        Self::quat(0, 1, 0, 0)
    }

    pub fn j() -> Self {
        Self::quat(0, 0, 1, 0)
    }

    pub fn k() -> Self {
        Self::quat(0, 0, 0, 1)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn components(&self) -> &[BigRational; 4] {
        &self.c
    }

    pub fn re(&self) -> &BigRational {
        &self.c[0]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(Zero::is_zero)
    }

    /// Smallest ring containing this value.
    pub fn min_ring(&self) -> Ring {
        if !self.c[2].is_zero() || !self.c[3].is_zero() {
            Ring::Quat
        } else if !self.c[1].is_zero() {
            Ring::Gauss
        } else {
            Ring::Rat
        }
    }

    /// Retags the scalar, failing when it does not lie in `ring`.
    pub fn into_ring(mut self, ring: Ring) -> Result<Self> {
        if self.min_ring() > ring {
            return Err(Error::NotInRing(self.to_string()));
        }
        self.ring = ring;
        Ok(self)
    }

    pub fn with_ring(&self, ring: Ring) -> Result<Self> {
        self.clone().into_ring(ring)
    }

    /// Quaternionic (or complex) conjugation; the identity on `Q`.
    pub fn conj(&self) -> Self {
        Scalar {
            ring: self.ring,
            c: [self.c[0].clone(), -&self.c[1], -&self.c[2], -&self.c[3]],
        }
    }

    /// Reduced norm `x * conj(x)`, a non-negative rational.
    pub fn norm(&self) -> BigRational {
        self.c
            .iter()
            .fold(BigRational::zero(), |acc, x| acc + x * x)
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        let cj = self.conj();
        Some(Scalar {
            ring: self.ring,
            c: cj.c.map(|x| x / &n),
        })
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Scalar {
            ring: self.ring,
            c: [
                &self.c[0] * r,
                &self.c[1] * r,
                &self.c[2] * r,
                &self.c[3] * r,
            ],
        }
    }

    /// Exact square root in `Q(i)` (or `Q` for rational input), when one exists.
    pub fn sqrt(&self) -> Option<Self> {
        match self.min_ring() {
            Ring::Quat => None,
            Ring::Rat if !self.c[0].is_negative() => {
                rat_sqrt(&self.c[0]).map(|r| Scalar::from_rational(self.ring, r))
            }
            _ => {
                // (x + yi)^2 = a + bi  =>  x^2 = (a + |z|) / 2, y = b / 2x
                let (a, b) = (&self.c[0], &self.c[1]);
                let modulus = rat_sqrt(&(a * a + b * b))?;
                let two = q(2);
                let x2 = (a + &modulus) / &two;
                let (x, y) = if x2.is_zero() {
                    // a <= 0, b == 0: purely imaginary root
                    (BigRational::zero(), rat_sqrt(&(-a))?)
                } else {
                    let x = rat_sqrt(&x2)?;
                    let y = b / (&two * &x);
                    (x, y)
                };
                let ring = if self.ring == Ring::Rat {
                    Ring::Gauss
                } else {
                    self.ring
                };
                Some(Scalar {
                    ring,
                    c: [x, y, BigRational::zero(), BigRational::zero()],
                })
            }
        }
    }
}

fn rat_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        Scalar {
            ring: self.ring.max(o.ring),
            c: [
                &self.c[0] + &o.c[0],
                &self.c[1] + &o.c[1],
                &self.c[2] + &o.c[2],
                &self.c[3] + &o.c[3],
            ],
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        Scalar {
            ring: self.ring.max(o.ring),
            c: [
                &self.c[0] - &o.c[0],
                &self.c[1] - &o.c[1],
                &self.c[2] - &o.c[2],
                &self.c[3] - &o.c[3],
            ],
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            ring: self.ring,
            c: [-&self.c[0], -&self.c[1], -&self.c[2], -&self.c[3]],
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        let ring = self.ring.max(o.ring);
        let [a1, b1, c1, d1] = &self.c;
        let [a2, b2, c2, d2] = &o.c;
        match (self.min_ring(), o.min_ring()) {
            (Ring::Rat, _) => o.scale(a1).retag(ring),
            (_, Ring::Rat) => self.scale(a2).retag(ring),
            (Ring::Gauss, Ring::Gauss) => Scalar {
                ring,
                c: [
                    a1 * a2 - b1 * b2,
                    a1 * b2 + b1 * a2,
                    BigRational::zero(),
                    BigRational::zero(),
                ],
            },
            _ => Scalar {
                ring,
                c: [
                    a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
                    a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
                    a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
                    a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
                ],
            },
        }
    }
}

impl Scalar {
    fn retag(mut self, ring: Ring) -> Self {
        self.ring = ring;
        self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

// Total order on components, used only to make sorted output deterministic.
impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.c.cmp(&other.c).then(self.ring.cmp(&other.ring))
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn parse_rat(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.ring {
            Ring::Rat => f.write_str(&fmt_rat(&self.c[0])),
            Ring::Gauss => {
                let im = &self.c[1];
                if im.is_negative() {
                    write!(f, "{}-{} i", fmt_rat(&self.c[0]), fmt_rat(&-im))
                } else {
                    write!(f, "{}+{} i", fmt_rat(&self.c[0]), fmt_rat(im))
                }
            }
            Ring::Quat => write!(
                f,
                "({},{},{},{})",
                fmt_rat(&self.c[0]),
                fmt_rat(&self.c[1]),
                fmt_rat(&self.c[2]),
                fmt_rat(&self.c[3])
            ),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Parses `p/q`, `p/q+r/s i` or `(a,b,c,d)`; the syntax fixes the ring.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if let Some(inner) = t.strip_prefix('(').and_then(|x| x.strip_suffix(')')) {
            let parts: Vec<&str> = inner.split(',').collect();
            if parts.len() != 4 {
                return Err(Error::Parse(format!(
                    "quaternion needs four components: {t:?}"
                )));
            }
            let mut c = [
                BigRational::zero(),
                BigRational::zero(),
                BigRational::zero(),
                BigRational::zero(),
            ];
            for (slot, p) in c.iter_mut().zip(parts) {
                *slot = parse_rat(p)?;
            }
            return Ok(Scalar {
                ring: Ring::Quat,
                c,
            });
        }
        if let Some(body) = t.strip_suffix('i') {
            let body = body.trim_end();
            let split = body
                .char_indices()
                .filter(|&(idx, ch)| idx > 0 && (ch == '+' || ch == '-'))
                .map(|(idx, _)| idx)
                .last()
                .ok_or_else(|| Error::Parse(format!("bad Gaussian rational {t:?}")))?;
            let re = parse_rat(&body[..split])?;
            let sign = &body[split..split + 1];
            let mut im = parse_rat(&body[split + 1..])?;
            if sign == "-" {
                im = -im;
            }
            return Ok(Scalar {
                ring: Ring::Gauss,
                c: [re, im, BigRational::zero(), BigRational::zero()],
            });
        }
        Ok(Scalar::from_rational(Ring::Rat, parse_rat(t)?))
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_quat() -> impl Strategy<Value = Scalar> {
        (-5i64..5, -5i64..5, -5i64..5, -5i64..5).prop_map(|(a, b, c, d)| Scalar::quat(a, b, c, d))
    }

    #[test]
    fn hamilton_relations() {
        let (i, j, k) = (Scalar::i_quat(), Scalar::j(), Scalar::k());
        let m1 = -Scalar::one(Ring::Quat);
        assert_eq!(&i * &j, k);
        assert_eq!(&j * &k, i);
        assert_eq!(&k * &i, j);
        assert_eq!(&j * &i, -&k);
        assert_eq!(&i * &i, m1);
        assert_eq!(&(&i * &j) * &k, m1);
    }

    #[test]
    fn text_encoding() {
        for s in ["3", "-1/2", "0+1 i", "1/2-3/4 i", "(1,-2,1/3,0)"] {
            let x: Scalar = s.parse().unwrap();
            assert_eq!(x.to_string(), s);
        }
        assert_eq!("2/4".parse::<Scalar>().unwrap().to_string(), "1/2");
        assert_eq!("1/-2".parse::<Scalar>().unwrap().to_string(), "-1/2");
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("(1,2)".parse::<Scalar>().is_err());
    }

    #[test]
    fn gaussian_square_roots() {
        let s = Scalar::gauss(3, 4).sqrt().unwrap();
        assert_eq!(&s * &s, Scalar::gauss(3, 4));
        let m = Scalar::from_int(Ring::Gauss, -4).sqrt().unwrap();
        assert_eq!(&m * &m, Scalar::from_int(Ring::Gauss, -4));
        assert!(Scalar::from_int(Ring::Gauss, -2).sqrt().is_none());
        assert!(Scalar::gauss(0, 1).sqrt().is_none());
    }

    proptest! {
        #[test]
        fn quaternion_multiplication_is_associative(a in arb_quat(), b in arb_quat(), c in arb_quat()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn conjugation_is_an_antiautomorphic_involution(a in arb_quat(), b in arb_quat()) {
            prop_assert_eq!(a.conj().conj(), a.clone());
            prop_assert_eq!((&a * &b).conj(), &b.conj() * &a.conj());
        }

        #[test]
        fn inverse(a in arb_quat()) {
            if let Some(ai) = a.inv() {
                prop_assert!((&a * &ai).is_one());
                prop_assert!((&ai * &a).is_one());
            }
        }

        #[test]
        fn text_round_trip(a in arb_quat(), re in -9i64..9, im in -9i64..9) {
            prop_assert_eq!(a.to_string().parse::<Scalar>().unwrap(), a.clone());
            let g = Scalar::gauss(re, im);
            prop_assert_eq!(g.to_string().parse::<Scalar>().unwrap(), g);
        }
    }
}
