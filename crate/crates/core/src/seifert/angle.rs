use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{fmt_rational, int, parse_rational, CirclePoint, Rational, RealAlgebraic};
use crate::error::{Error, Result};

/// An exact real angle.
///
/// `RationalPi(r)` is `θ = rπ`. `Algebraic { tangent, winding, scale }` is
/// `θ = scale·(2·atan(tangent) + 2π·winding)`; the scale lets callers divide
/// or multiply by integers without leaving the representation.
#[derive(Clone, Debug)]
pub enum Angle {
    RationalPi(Rational),
    Algebraic { tangent: RealAlgebraic, winding: i64, scale: Rational },
}

impl Angle {
    pub fn pi_multiple(r: Rational) -> Self {
        Angle::RationalPi(r)
    }

    pub fn zero() -> Self {
        Angle::RationalPi(Rational::zero())
    }

    /// `θ = 2·atan(u)`.
    pub fn from_tangent(u: RealAlgebraic) -> Self {
        Angle::Algebraic { tangent: u, winding: 0, scale: Rational::one() }
    }

    pub fn from_rational_tangent(u: &Rational) -> Self {
        Self::from_tangent(RealAlgebraic::from_rational(u))
    }

    /// The angle in `[0, 2π)` or `(-π, π)` naming this circle point.
    pub fn from_circle_point(p: &CirclePoint) -> Self {
        match p {
            CirclePoint::Pi => Angle::RationalPi(Rational::one()),
            CirclePoint::Tangent(u) if u.as_rational().is_some_and(|q| q.is_zero()) => Self::zero(),
            CirclePoint::Tangent(u) => Self::from_tangent(u.clone()),
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            Angle::RationalPi(r) => Angle::RationalPi(-r),
            Angle::Algebraic { tangent, winding, scale } => {
                Angle::Algebraic { tangent: tangent.neg(), winding: -winding, scale: scale.clone() }
            }
        }
    }

    /// `k·θ` for rational `k`.
    pub fn scaled(&self, k: &Rational) -> Self {
        match self {
            Angle::RationalPi(r) => Angle::RationalPi(r * k),
            Angle::Algebraic { tangent, winding, scale } => {
                Angle::Algebraic { tangent: tangent.clone(), winding: *winding, scale: scale * k }
            }
        }
    }

    /// `θ / c`, `c ≠ 0`.
    pub fn divided(&self, c: i64) -> Self {
        assert!(c != 0, "division of an angle by zero");
        self.scaled(&Rational::new(1.into(), c.into()))
    }

    /// `θ + 2πm`.
    pub fn add_two_pi(&self, m: i64) -> Result<Self> {
        match self {
            Angle::RationalPi(r) => Ok(Angle::RationalPi(r + int(2 * m))),
            Angle::Algebraic { tangent, winding, scale } => {
                let w = int(m) / scale;
                if !w.is_integer() {
                    return Err(Error::Unrepresentable(format!("shift by 2π·{m} at scale {}", fmt_rational(scale))));
                }
                let w = w.to_integer().to_i64().ok_or_else(|| Error::Unrepresentable("winding overflow".into()))?;
                Ok(Angle::Algebraic { tangent: tangent.clone(), winding: winding + w, scale: scale.clone() })
            }
        }
    }

    /// The integer scale of an algebraic angle; `Some(1)` for rational ones.
    pub fn integer_scale(&self) -> Option<i64> {
        match self {
            Angle::RationalPi(_) => Some(1),
            Angle::Algebraic { scale, .. } => scale.is_integer().then(|| scale.to_integer().to_i64()).flatten(),
        }
    }

    /// The point `e^{iθ}` when it is directly representable: rational
    /// multiples of `π`, or algebraic angles of scale `±1`.
    pub fn circle_point(&self) -> Result<CirclePoint> {
        match self {
            Angle::RationalPi(r) => Ok(super::rational_turn(r).2),
            Angle::Algebraic { tangent, scale, .. } => {
                if scale.is_one() {
                    Ok(CirclePoint::Tangent(tangent.clone()))
                } else if (-scale).is_one() {
                    Ok(CirclePoint::Tangent(tangent.neg()))
                } else {
                    Err(Error::Unrepresentable(format!("{self} has no exact circle point")))
                }
            }
        }
    }

    /// Approximate value; for display and float oracles.
    pub fn to_f64(&self) -> f64 {
        use std::f64::consts::PI;
        match self {
            Angle::RationalPi(r) => crate::arith::to_f64(r) * PI,
            Angle::Algebraic { tangent, winding, scale } => {
                crate::arith::to_f64(scale) * (2.0 * tangent.to_f64().atan() + 2.0 * PI * *winding as f64)
            }
        }
    }

    pub fn as_rational_pi(&self) -> Option<&Rational> {
        match self {
            Angle::RationalPi(r) => Some(r),
            _ => None,
        }
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Angle::RationalPi(r) => {
                if r.is_zero() {
                    write!(f, "0")
                } else {
                    let n = r.numer();
                    let d = r.denom();
                    let num = if n.abs().is_one() {
                        if n.is_negative() { "-π".to_string() } else { "π".to_string() }
                    } else {
                        format!("{n}π")
                    };
                    if d.is_one() {
                        write!(f, "{num}")
                    } else {
                        write!(f, "{num}/{d}")
                    }
                }
            }
            Angle::Algebraic { tangent, winding, scale } => {
                let base = if *winding == 0 {
                    format!("2·atan({tangent})")
                } else {
                    format!("2·atan({tangent}) + {}π", 2 * winding)
                };
                if scale.is_one() {
                    write!(f, "{base}")
                } else {
                    write!(f, "{}·({base})", fmt_rational(scale))
                }
            }
        }
    }
}

/// Parses `"p/q pi"`, `"p/q π"`, `"pi"`, `"2pi"`, `"-pi/3"` or `"0"`.
impl FromStr for Angle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Unrepresentable(format!("cannot parse angle {s:?}; expected e.g. \"7/33 pi\""));
        let t: String = s.split_whitespace().collect::<Vec<_>>().join("");
        let t = t.replace('π', "pi").replace('*', "");
        if let Some(q) = parse_rational(&t) {
            if q.is_zero() {
                return Ok(Angle::zero());
            }
            return Err(bad());
        }
        let Some(pos) = t.find("pi") else { return Err(bad()) };
        let (coef, rest) = (&t[..pos], &t[pos + 2..]);
        let c = match coef {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            c => parse_rational(c.trim_end_matches('/')).filter(|_| !c.ends_with('/')).ok_or_else(bad)?,
        };
        let d = match rest {
            "" => Rational::one(),
            r => {
                let r = r.strip_prefix('/').ok_or_else(bad)?;
                let d = parse_rational(r).ok_or_else(bad)?;
                if d.is_zero() {
                    return Err(bad());
                }
                d
            }
        };
        Ok(Angle::RationalPi(c / d))
    }
}
