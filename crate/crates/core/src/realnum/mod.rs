//! Exact real numbers as rational coordinates over a fixed ℚ-basis.
//!
//! A [`RealValue`] is a vector of rationals over a [`Basis`]: the rationals
//! alone, a real quadratic field `ℚ(√D)`, or a formal basis whose elements
//! are axiomatically independent over ℚ together with 1.

pub mod formal;
pub mod lattice;
pub mod parse;
pub mod wedge;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
pub use formal::{FormalBasis, FormalElement, DEFAULT_MAX_DIGITS};
pub use lattice::{qspan_of, zmodule_of, QSpan, ZModule};
pub use parse::{parse_value, parse_values};
pub use wedge::{wedge, WedgeValue};

#[cfg(test)]
pub(crate) fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub(crate) fn int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// The ambient ℚ-vector space a value lives in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    Rational,
    Quadratic(u64),
    Formal(Arc<FormalBasis>),
}

pub fn is_squarefree(d: u64) -> bool {
    let mut p = 2u64;
    while p * p <= d {
        if d % (p * p) == 0 {
            return false;
        }
        p += 1;
    }
    true
}

impl Basis {
    pub fn quadratic(d: u64) -> Result<Basis> {
        if d < 2 || !is_squarefree(d) {
            return Err(Error::InvalidBasis(format!("D = {d} is not a squarefree integer ≥ 2")));
        }
        Ok(Basis::Quadratic(d))
    }

    pub fn formal(elements: Vec<FormalElement>, max_digits: u32) -> Result<Basis> {
        for (i, e) in elements.iter().enumerate() {
            if elements[..i].contains(e) {
                return Err(Error::InvalidBasis(format!("repeated element {}", e.name())));
            }
            if let FormalElement::Radical { radicand, index } = e {
                if formal::canonical_radical(*radicand, *index) != (BigInt::one(), Some((*radicand, *index))) {
                    return Err(Error::InvalidBasis(format!("{} is not a canonical radical", e.name())));
                }
            }
            let (lo, hi, _) = e.enclosure(16)?;
            if lo <= BigRational::zero() && hi >= BigRational::zero() {
                return Err(Error::InvalidBasis(format!("enclosure of {} contains 0", e.name())));
            }
        }
        if max_digits < 16 {
            return Err(Error::InvalidBasis("digit cap below 16".into()));
        }
        Ok(Basis::Formal(Arc::new(FormalBasis { elements, max_digits })))
    }

    pub fn rank(&self) -> usize {
        match self {
            Basis::Rational => 1,
            Basis::Quadratic(_) => 2,
            Basis::Formal(f) => 1 + f.elements.len(),
        }
    }

    /// Printable names of the basis elements, starting with `"1"`.
    pub fn element_names(&self) -> Vec<String> {
        let mut out = vec!["1".to_string()];
        match self {
            Basis::Rational => {}
            Basis::Quadratic(d) => out.push(format!("sqrt({d})")),
            Basis::Formal(f) => out.extend(f.elements.iter().map(|e| e.name())),
        }
        out
    }

    pub fn is_formal(&self) -> bool {
        matches!(self, Basis::Formal(_))
    }

    pub fn max_digits(&self) -> u32 {
        match self {
            Basis::Formal(f) => f.max_digits,
            _ => DEFAULT_MAX_DIGITS,
        }
    }
}

/// `(a, b, c)` primitive with `a > 0`, `a x² + b x + c = 0`, and `disc = b² − 4ac`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalQuadratic {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub disc: BigInt,
}

/// Rational values compare equal across bases.
#[derive(Clone, Debug)]
pub struct RealValue {
    basis: Basis,
    coords: Vec<BigRational>,
}

impl PartialEq for RealValue {
    fn eq(&self, other: &RealValue) -> bool {
        if self.basis == other.basis {
            return self.coords == other.coords;
        }
        matches!((self.rational_value(), other.rational_value()), (Some(a), Some(b)) if a == b)
    }
}

impl Eq for RealValue {}

impl std::hash::Hash for RealValue {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        match self.rational_value() {
            Some(q) => q.hash(h),
            None => {
                self.basis.hash(h);
                self.coords.hash(h);
            }
        }
    }
}

impl RealValue {
    pub fn make(basis: &Basis, coords: Vec<BigRational>) -> Result<RealValue> {
        if coords.len() != basis.rank() {
            return Err(Error::RankMismatch { expected: basis.rank(), got: coords.len() });
        }
        Ok(RealValue { basis: basis.clone(), coords })
    }

    /// Embeds a rational into any basis.
    pub fn from_rational(basis: &Basis, q: BigRational) -> RealValue {
        let mut coords = vec![BigRational::zero(); basis.rank()];
        coords[0] = q;
        RealValue { basis: basis.clone(), coords }
    }

    pub fn from_integer(basis: &Basis, n: impl Into<BigInt>) -> RealValue {
        Self::from_rational(basis, int(n))
    }

    pub fn zero(basis: &Basis) -> RealValue {
        Self::from_rational(basis, BigRational::zero())
    }

    pub fn one(basis: &Basis) -> RealValue {
        Self::from_rational(basis, BigRational::one())
    }

    /// `x + y·√D`.
    pub fn quadratic(d: u64, x: BigRational, y: BigRational) -> Result<RealValue> {
        Ok(RealValue { basis: Basis::quadratic(d)?, coords: vec![x, y] })
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn same_basis(&self, other: &RealValue) -> Result<()> {
        if self.basis == other.basis {
            Ok(())
        } else {
            Err(Error::BasisMismatch)
        }
    }

    /// Re-expresses a rational value in another basis.
    pub fn embed(&self, basis: &Basis) -> Result<RealValue> {
        if &self.basis == basis {
            return Ok(self.clone());
        }
        match self.rational_value() {
            Some(q) => Ok(Self::from_rational(basis, q.clone())),
            None => Err(Error::BasisMismatch),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// True when every non-constant coordinate vanishes; by the independence
    /// axiom this is exactly rationality.
    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(|c| c.is_zero())
    }

    pub fn rational_value(&self) -> Option<&BigRational> {
        self.is_rational().then(|| &self.coords[0])
    }

    pub fn is_integer(&self) -> bool {
        self.rational_value().is_some_and(|q| q.is_integer())
    }

    pub fn scale(&self, q: &BigRational) -> RealValue {
        RealValue { basis: self.basis.clone(), coords: self.coords.iter().map(|c| c * q).collect() }
    }

    pub fn add_rational(&self, q: &BigRational) -> RealValue {
        let mut out = self.clone();
        out.coords[0] += q;
        out
    }

    /// Both operands over a shared basis; rational values embed anywhere.
    fn unified(&self, other: &RealValue) -> Result<(RealValue, RealValue)> {
        if self.basis == other.basis {
            Ok((self.clone(), other.clone()))
        } else if self.basis == Basis::Rational || self.is_rational() {
            Ok((self.embed(&other.basis)?, other.clone()))
        } else {
            Ok((self.clone(), other.embed(&self.basis)?))
        }
    }

    pub fn try_add(&self, other: &RealValue) -> Result<RealValue> {
        let (a, b) = self.unified(other)?;
        Ok(&a + &b)
    }

    pub fn try_sub(&self, other: &RealValue) -> Result<RealValue> {
        let (a, b) = self.unified(other)?;
        Ok(&a - &b)
    }

    pub fn mul(&self, other: &RealValue) -> Result<RealValue> {
        if let Some(q) = other.rational_value() {
            return Ok(self.scale(q));
        }
        if let Some(q) = self.rational_value() {
            return Ok(other.scale(q));
        }
        self.same_basis(other)?;
        match self.basis {
            Basis::Quadratic(d) => {
                let (a, b) = (&self.coords[0], &self.coords[1]);
                let (c, e) = (&other.coords[0], &other.coords[1]);
                let d = int(d);
                Ok(RealValue { basis: self.basis.clone(), coords: vec![a * c + b * e * d, a * e + b * c] })
            }
            _ => Err(Error::NotRepresentable),
        }
    }

    pub fn recip(&self) -> Result<RealValue> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.rational_value() {
            return Ok(Self::from_rational(&self.basis, q.recip()));
        }
        match self.basis {
            Basis::Quadratic(d) => {
                let (a, b) = (&self.coords[0], &self.coords[1]);
                let n = a * a - b * b * int(d);
                Ok(RealValue { basis: self.basis.clone(), coords: vec![a / &n, -(b / &n)] })
            }
            _ => Err(Error::NotRepresentable),
        }
    }

    pub fn div(&self, other: &RealValue) -> Result<RealValue> {
        if let Some(q) = other.rational_value() {
            if q.is_zero() {
                return Err(Error::DivisionByZero);
            }
            return Ok(self.scale(&q.recip()));
        }
        self.mul(&other.recip()?)
    }

    /// Galois conjugate `x − y√D` (quadratic bases; rationals are fixed).
    pub fn conjugate(&self) -> Result<RealValue> {
        match self.basis {
            Basis::Quadratic(_) => {
                Ok(RealValue { basis: self.basis.clone(), coords: vec![self.coords[0].clone(), -self.coords[1].clone()] })
            }
            Basis::Rational => Ok(self.clone()),
            Basis::Formal(_) if self.is_rational() => Ok(self.clone()),
            Basis::Formal(_) => Err(Error::FormalBasisUnsupported),
        }
    }

    /// Exact sign. Fails only for formal bases whose enclosures cannot
    /// separate the value from 0 within the digit cap.
    pub fn signum(&self) -> Result<Ordering> {
        if let Some(q) = self.rational_value() {
            return Ok(q.cmp(&BigRational::zero()));
        }
        match &self.basis {
            Basis::Quadratic(d) => Ok(quad_sign(&self.coords[0], &self.coords[1], *d)),
            Basis::Formal(f) => {
                let mut digits = 24u32.min(f.max_digits);
                loop {
                    let (lo, hi, got) = self.scaled_bounds(f, digits)?;
                    if lo.is_positive() {
                        return Ok(Ordering::Greater);
                    }
                    if hi.is_negative() {
                        return Ok(Ordering::Less);
                    }
                    if digits >= f.max_digits || got < digits {
                        return Err(Error::PrecisionExhausted { digits: got });
                    }
                    digits = (digits * 2).min(f.max_digits);
                }
            }
            Basis::Rational => unreachable!(),
        }
    }

    pub fn compare(&self, other: &RealValue) -> Result<Ordering> {
        self.try_sub(other)?.signum()
    }

    pub fn is_positive(&self) -> Result<bool> {
        Ok(self.signum()? == Ordering::Greater)
    }

    /// Greatest integer ≤ the value.
    pub fn floor(&self) -> Result<BigInt> {
        if let Some(q) = self.rational_value() {
            return Ok(q.floor().to_integer());
        }
        match &self.basis {
            Basis::Quadratic(d) => Ok(quad_floor(&self.coords[0], &self.coords[1], *d)),
            Basis::Formal(f) => {
                let mut digits = 24u32.min(f.max_digits);
                loop {
                    let (lo, hi, got) = self.enclosure_raw(digits)?;
                    let (a, b) = (lo.floor().to_integer(), hi.floor().to_integer());
                    if a == b {
                        return Ok(a);
                    }
                    if digits >= f.max_digits || got < digits {
                        return Err(Error::PrecisionExhausted { digits: got });
                    }
                    digits = (digits * 2).min(f.max_digits);
                }
            }
            Basis::Rational => unreachable!(),
        }
    }

    /// `x − floor(x)`, in `[0, 1)`.
    pub fn frac(&self) -> Result<RealValue> {
        let f = self.floor()?;
        Ok(self.add_rational(&-int(f)))
    }

    /// Rational bounds `lo ≤ x ≤ hi` with `hi − lo` of order `10^-digits`.
    pub fn enclosure(&self, digits: u32) -> Result<(BigRational, BigRational)> {
        let (lo, hi, _) = self.enclosure_raw(digits)?;
        Ok((lo, hi))
    }

    /// Integer bounds on `L·x·10^s` for some `L, s > 0`: enough for signs.
    fn scaled_bounds(&self, f: &FormalBasis, digits: u32) -> Result<(BigInt, BigInt, u32)> {
        let l = self.coords.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut parts = Vec::new();
        for (i, c) in self.coords.iter().enumerate().skip(1) {
            if !c.is_zero() {
                let n = (c * BigRational::from_integer(l.clone())).to_integer();
                parts.push((n, f.elements[i - 1].scaled_enclosure(digits)?));
            }
        }
        let scale = parts.iter().map(|(_, e)| e.scale).max().unwrap_or(0);
        let achieved = parts.iter().map(|(_, e)| e.achieved).min().unwrap_or(digits);
        let n0 = (&self.coords[0] * BigRational::from_integer(l)).to_integer() * BigInt::from(10u32).pow(scale);
        let (mut lo, mut hi) = (n0.clone(), n0);
        for (n, e) in parts {
            let lift = BigInt::from(10u32).pow(scale - e.scale);
            let (a, b) = if n.is_positive() { (&n * &e.lo, &n * &e.hi) } else { (&n * &e.hi, &n * &e.lo) };
            lo += a * &lift;
            hi += b * &lift;
        }
        Ok((lo, hi, achieved))
    }

    fn enclosure_raw(&self, digits: u32) -> Result<(BigRational, BigRational, u32)> {
        let mut lo = self.coords[0].clone();
        let mut hi = self.coords[0].clone();
        let mut achieved = digits;
        for (i, c) in self.coords.iter().enumerate().skip(1) {
            if c.is_zero() {
                continue;
            }
            let (elo, ehi, got) = match &self.basis {
                Basis::Quadratic(d) => {
                    let scale = BigInt::from(10u32).pow(digits);
                    let s = (BigInt::from(*d) * &scale * &scale).sqrt();
                    let e = (BigRational::new(s.clone(), scale.clone()), BigRational::new(s + 1, scale));
                    (e.0, e.1, digits)
                }
                Basis::Formal(f) => f.elements[i - 1].enclosure(digits)?,
                Basis::Rational => unreachable!(),
            };
            achieved = achieved.min(got);
            let (a, b) = formal::interval_scale(c, &elo, &ehi);
            lo += a;
            hi += b;
        }
        Ok((lo, hi, achieved))
    }

    /// Approximate value, useful for display and sampling only.
    pub fn to_f64(&self) -> f64 {
        match self.enclosure(20) {
            Ok((lo, hi)) => ((lo + hi) / int(2)).to_f64().unwrap_or(f64::NAN),
            Err(_) => f64::NAN,
        }
    }

    /// The primitive integer quadratic with positive leading coefficient
    /// vanishing at the value.
    pub fn minimal_quadratic(&self) -> Result<MinimalQuadratic> {
        let Basis::Quadratic(d) = self.basis else {
            return Err(if self.is_rational() { Error::RationalInput } else { Error::FormalBasisUnsupported });
        };
        if self.is_rational() {
            return Err(Error::RationalInput);
        }
        let (u, v) = (&self.coords[0], &self.coords[1]);
        let cb = -(u * int(2));
        let cc = u * u - v * v * int(d);
        let l = cb.denom().lcm(cc.denom());
        let a = l.clone();
        let b = (cb * int(l.clone())).to_integer();
        let c = (cc * int(l)).to_integer();
        let g = a.gcd(&b).gcd(&c);
        let (a, b, c) = (a / &g, b / &g, c / &g);
        let disc = &b * &b - BigInt::from(4) * &a * &c;
        Ok(MinimalQuadratic { a, b, c, disc })
    }
}

pub(crate) fn quad_sign(x: &BigRational, y: &BigRational, d: u64) -> Ordering {
    let zero = BigRational::zero();
    let sx = x.cmp(&zero);
    let sy = y.cmp(&zero);
    if sy == Ordering::Equal {
        return sx;
    }
    if sx == Ordering::Equal || sx == sy {
        return sy;
    }
    if x * x > y * y * int(d) {
        sx
    } else {
        sy
    }
}

fn quad_floor(x: &BigRational, y: &BigRational, d: u64) -> BigInt {
    let n = x.denom().lcm(y.denom());
    let xn = x.numer() * (&n / x.denom());
    let yn = y.numer() * (&n / y.denom());
    let s = (&yn * &yn * BigInt::from(d)).sqrt();
    let lower = if yn.is_positive() { xn + s } else { xn - s - 1 };
    lower.div_floor(&n)
}

pub fn compare(x: &RealValue, y: &RealValue) -> Result<Ordering> {
    x.compare(y)
}

pub fn floor(x: &RealValue) -> Result<BigInt> {
    x.floor()
}

pub fn minimal_quadratic(x: &RealValue) -> Result<MinimalQuadratic> {
    x.minimal_quadratic()
}

fn zip_coords(a: &RealValue, b: &RealValue, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> RealValue {
    assert_eq!(a.basis, b.basis, "arithmetic between values of different bases");
    RealValue { basis: a.basis.clone(), coords: a.coords.iter().zip(&b.coords).map(|(x, y)| f(x, y)).collect() }
}

impl std::ops::Add for &RealValue {
    type Output = RealValue;
    fn add(self, rhs: &RealValue) -> RealValue {
        zip_coords(self, rhs, |x, y| x + y)
    }
}

impl std::ops::Sub for &RealValue {
    type Output = RealValue;
    fn sub(self, rhs: &RealValue) -> RealValue {
        zip_coords(self, rhs, |x, y| x - y)
    }
}

impl std::ops::Neg for &RealValue {
    type Output = RealValue;
    fn neg(self) -> RealValue {
        RealValue { basis: self.basis.clone(), coords: self.coords.iter().map(|c| -c).collect() }
    }
}

impl std::ops::Add for RealValue {
    type Output = RealValue;
    fn add(self, rhs: RealValue) -> RealValue {
        &self + &rhs
    }
}

impl std::ops::Sub for RealValue {
    type Output = RealValue;
    fn sub(self, rhs: RealValue) -> RealValue {
        &self - &rhs
    }
}

impl std::ops::Neg for RealValue {
    type Output = RealValue;
    fn neg(self) -> RealValue {
        -&self
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, q: &BigRational) -> fmt::Result {
    if q.is_integer() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

/// Text form accepted back by [`parse_value`], e.g. `1/4+sqrt(5)/4`.
impl fmt::Display for RealValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.basis.element_names();
        let mut wrote = false;
        if !self.coords[0].is_zero() || self.is_rational() {
            write_rational(f, &self.coords[0])?;
            wrote = true;
        }
        for (c, name) in self.coords.iter().zip(&names).skip(1) {
            if c.is_zero() {
                continue;
            }
            if c.is_negative() {
                write!(f, "-")?;
            } else if wrote {
                write!(f, "+")?;
            }
            let a = c.abs();
            if !a.numer().is_one() {
                write!(f, "{}*", a.numer())?;
            }
            write!(f, "{name}")?;
            if !a.denom().is_one() {
                write!(f, "/{}", a.denom())?;
            }
            wrote = true;
        }
        Ok(())
    }
}
