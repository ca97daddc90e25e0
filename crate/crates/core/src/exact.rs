//! Exact arithmetic for bound envelopes.
//!
//! Accepting fractions are rationals, but the decay constant `c = 1/√b`
//! makes `cⁿ` irrational for odd `n`. Envelope values therefore live in
//! `ℚ(√d)`: numbers of the form `a + b·√d` with rational `a`, `b`.
//! Ordering is decided exactly by squaring, never through floats.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> BigRational {
    BigRational::new(num.into(), den.into())
}

pub fn int(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

/// `p/q` in lowest terms; integers keep an explicit `/1`.
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Config(format!("not a rational number: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(p, q));
    }
    // Decimal literal, read exactly (no binary float round trip).
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{whole}{frac}").parse().map_err(|_| bad())?;
    let den = num_traits::pow(BigInt::from(10u32), frac.len());
    let r = BigRational::new(digits, den);
    Ok(if neg { -r } else { r })
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// A number `rational + radical·√radicand`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Surd {
    rational: BigRational,
    radical: BigRational,
    radicand: u32,
}

impl Surd {
    pub fn from_rational(r: BigRational) -> Self {
        Surd { rational: r, radical: BigRational::zero(), radicand: 1 }
    }

    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    /// `rational + radical·√radicand`, folding perfect squares.
    pub fn new(rational: BigRational, radical: BigRational, radicand: u32) -> Self {
        let root = radicand.sqrt();
        if root * root == radicand {
            return Self::from_rational(rational + radical * int(root));
        }
        if radical.is_zero() {
            return Self::from_rational(rational);
        }
        Surd { rational, radical, radicand }
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rational
    }

    pub fn radical_part(&self) -> &BigRational {
        &self.radical
    }

    /// `1/self`, via the conjugate; `None` for zero.
    pub fn recip(&self) -> Option<Surd> {
        let d = int(self.radicand);
        let norm = &self.rational * &self.rational - &self.radical * &self.radical * d;
        if norm.is_zero() {
            return None;
        }
        let inv = BigRational::one() / norm;
        Some(Surd::new(&self.rational * &inv, -(&self.radical * &inv), self.radicand))
    }

    pub fn is_rational(&self) -> bool {
        self.radical.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.rational)
    }

    fn joint_radicand(&self, other: &Surd) -> u32 {
        match (self.is_rational(), other.is_rational()) {
            (true, true) => 1,
            (false, true) => self.radicand,
            (true, false) => other.radicand,
            (false, false) => {
                assert_eq!(
                    self.radicand, other.radicand,
                    "mixing different radicands is not supported"
                );
                self.radicand
            }
        }
    }

    /// Sign of the value, computed exactly.
    pub fn signum(&self) -> Ordering {
        let a = &self.rational;
        let b = &self.radical;
        let zero = BigRational::zero();
        let sa = a.cmp(&zero);
        let sb = b.cmp(&zero);
        match (sa, sb) {
            (_, Ordering::Equal) => sa,
            (Ordering::Equal, _) => sb,
            (x, y) if x == y => x,
            _ => {
                // opposite signs: compare a² with b²·d
                let a2 = a * a;
                let b2d = b * b * int(self.radicand);
                match a2.cmp(&b2d) {
                    Ordering::Greater => sa,
                    Ordering::Less => sb,
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.rational)
            + rational_to_f64(&self.radical) * f64::from(self.radicand).sqrt()
    }

    pub fn clamp_unit(self) -> Surd {
        let zero = Surd::zero();
        let one = Surd::one();
        if self < zero {
            zero
        } else if self > one {
            one
        } else {
            self
        }
    }

    pub fn scale(&self, k: &BigRational) -> Surd {
        Surd::new(&self.rational * k, &self.radical * k, self.radicand)
    }
}

impl Ord for Surd {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.clone() - other.clone()).signum()
    }
}

impl PartialOrd for Surd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq<BigRational> for Surd {
    fn eq(&self, other: &BigRational) -> bool {
        self.is_rational() && &self.rational == other
    }
}

impl PartialOrd<BigRational> for Surd {
    fn partial_cmp(&self, other: &BigRational) -> Option<Ordering> {
        Some(self.cmp(&Surd::from_rational(other.clone())))
    }
}

impl Add for Surd {
    type Output = Surd;
    fn add(self, rhs: Surd) -> Surd {
        let d = self.joint_radicand(&rhs);
        Surd::new(self.rational + rhs.rational, self.radical + rhs.radical, d)
    }
}

impl Sub for Surd {
    type Output = Surd;
    fn sub(self, rhs: Surd) -> Surd {
        self + (-rhs)
    }
}

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd { rational: -self.rational, radical: -self.radical, radicand: self.radicand }
    }
}

impl Mul for Surd {
    type Output = Surd;
    fn mul(self, rhs: Surd) -> Surd {
        let d = self.joint_radicand(&rhs);
        let rational = &self.rational * &rhs.rational + &self.radical * &rhs.radical * int(d);
        let radical = &self.rational * &rhs.radical + &self.radical * &rhs.rational;
        Surd::new(rational, radical, d)
    }
}

/// Rationals print as `p/q`; irrational values as `p/q+r/s*sqrt(d)`.
impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return f.write_str(&format_rational(&self.rational));
        }
        let sign = if self.radical.is_negative() { '-' } else { '+' };
        write!(
            f,
            "{}{}{}*sqrt({})",
            format_rational(&self.rational),
            sign,
            format_rational(&self.radical.abs()),
            self.radicand
        )
    }
}

/// The decay constant `c` of the bottom-fraction bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecayConstant {
    /// `c = 1/√b`, so `cⁿ = b^{-n/2}` exactly.
    InvSqrt(u32),
    Rational(BigRational),
}

impl Default for DecayConstant {
    fn default() -> Self {
        DecayConstant::InvSqrt(2)
    }
}

impl DecayConstant {
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim().replace(' ', "");
        if let Some(rest) = t.strip_prefix("1/sqrt(").and_then(|r| r.strip_suffix(')')) {
            let b: u32 = rest
                .parse()
                .map_err(|_| Error::Config(format!("bad decay constant {s:?}")))?;
            let c = DecayConstant::InvSqrt(b);
            c.validate()?;
            return Ok(c);
        }
        let c = DecayConstant::Rational(parse_rational(&t)?);
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match self {
            DecayConstant::InvSqrt(b) => *b >= 2,
            DecayConstant::Rational(r) => r.is_positive() && r < &BigRational::one(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Config(format!("decay constant {self} must lie in (0, 1)")))
        }
    }

    /// `cⁿ` as an exact surd.
    pub fn pow(&self, n: u32) -> Surd {
        match self {
            DecayConstant::InvSqrt(b) => {
                let b_int = BigInt::from(*b);
                if n % 2 == 0 {
                    Surd::from_rational(BigRational::new(
                        BigInt::one(),
                        num_traits::pow(b_int, (n / 2) as usize),
                    ))
                } else {
                    // b^{-n/2} = b^{-(n+1)/2} · √b
                    let coeff =
                        BigRational::new(BigInt::one(), num_traits::pow(b_int, ((n + 1) / 2) as usize));
                    Surd::new(BigRational::zero(), coeff, *b)
                }
            }
            DecayConstant::Rational(r) => Surd::from_rational(num_traits::pow(r.clone(), n as usize)),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            DecayConstant::InvSqrt(b) => 1.0 / f64::from(*b).sqrt(),
            DecayConstant::Rational(r) => rational_to_f64(r),
        }
    }
}

impl fmt::Display for DecayConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecayConstant::InvSqrt(b) => write!(f, "1/sqrt({b})"),
            DecayConstant::Rational(r) => f.write_str(&format_rational(r)),
        }
    }
}

impl Serialize for DecayConstant {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for DecayConstant {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        DecayConstant::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// `Poly(n) = Σ coeffs[i]·nⁱ` with nonnegative rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<BigRational>) -> Result<Self> {
        if coeffs.iter().any(Signed::is_negative) {
            return Err(Error::Config("polynomial coefficients must be nonnegative".into()));
        }
        if coeffs.iter().all(Zero::is_zero) {
            return Err(Error::Config("polynomial must be positive for n >= 1".into()));
        }
        Ok(Polynomial { coeffs })
    }

    pub fn constant(k: i64) -> Self {
        Polynomial::new(vec![int(k)]).expect("positive constant")
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn eval(&self, n: u32) -> BigRational {
        let x = int(n);
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * &x + c)
    }
}

impl Default for Polynomial {
    fn default() -> Self {
        Polynomial::constant(4)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(format_rational).collect();
        write!(f, "[{}]", parts.join(","))
    }
}
