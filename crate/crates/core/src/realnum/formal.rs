//! Formal bases: finitely many reals declared linearly independent over ℚ
//! together with 1, each carrying certified decimal enclosures.

use std::cell::RefCell;
use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};

thread_local! {
    static ENCLOSURES: RefCell<HashMap<(FormalElement, u32), ScaledEnclosure>> = RefCell::new(HashMap::new());
}

/// Digit cap used when a formal basis is built without an explicit one.
pub const DEFAULT_MAX_DIGITS: u32 = 10_000;

/// One non-constant element of a formal basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FormalElement {
    /// The real root `radicand^(1/index)`, in canonical form (see [`canonical_radical`]).
    Radical { radicand: u64, index: u32 },
    /// A named constant given by a decimal string, trusted to within one unit
    /// of its last digit.
    Decimal { name: String, digits: String },
}

impl FormalElement {
    pub fn name(&self) -> String {
        match self {
            FormalElement::Radical { radicand, index: 2 } => format!("sqrt({radicand})"),
            FormalElement::Radical { radicand, index } => format!("root({radicand},{index})"),
            FormalElement::Decimal { name, .. } => name.clone(),
        }
    }

    /// An interval `[lo, hi]` of width at most `2·10^-digits` containing the
    /// element, together with the number of digits actually achieved (decimal
    /// constants cannot be refined beyond the digits they were given with).
    pub fn enclosure(&self, digits: u32) -> Result<(BigRational, BigRational, u32)> {
        let e = self.scaled_enclosure(digits)?;
        let den = BigInt::from(10u32).pow(e.scale);
        Ok((BigRational::new(e.lo, den.clone()), BigRational::new(e.hi, den), e.achieved))
    }

    /// The same interval as integers over `10^scale`; cached per thread.
    pub(crate) fn scaled_enclosure(&self, digits: u32) -> Result<ScaledEnclosure> {
        let key = (self.clone(), digits);
        if let Some(hit) = ENCLOSURES.with(|c| c.borrow().get(&key).cloned()) {
            return Ok(hit);
        }
        let out = self.compute_enclosure(digits)?;
        ENCLOSURES.with(|c| {
            let mut c = c.borrow_mut();
            if c.len() > 4096 {
                c.clear();
            }
            c.insert(key, out.clone());
        });
        Ok(out)
    }

    fn compute_enclosure(&self, digits: u32) -> Result<ScaledEnclosure> {
        match self {
            FormalElement::Radical { radicand, index } => {
                let scale = BigUint::from(10u32).pow(digits);
                let big = BigUint::from(*radicand) * Pow::pow(&scale, *index);
                let r = BigInt::from(big.nth_root(*index));
                Ok(ScaledEnclosure { hi: &r + 1, lo: r, scale: digits, achieved: digits })
            }
            FormalElement::Decimal { digits: text, .. } => {
                let (v, places) = parse_decimal(text)?;
                let n = (v * BigRational::from_integer(BigInt::from(10u32).pow(places))).to_integer();
                Ok(ScaledEnclosure { lo: &n - 1, hi: n + 1, scale: places, achieved: places.min(digits) })
            }
        }
    }
}

/// `lo / 10^scale ≤ e ≤ hi / 10^scale`.
#[derive(Clone, Debug)]
pub(crate) struct ScaledEnclosure {
    pub lo: BigInt,
    pub hi: BigInt,
    pub scale: u32,
    pub achieved: u32,
}

/// Parses `[-]int[.frac]` into an exact rational and its count of fractional digits.
pub fn parse_decimal(text: &str) -> Result<(BigRational, u32)> {
    let bad = || Error::InvalidBasis(format!("bad decimal constant {text:?}"));
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() || !int.bytes().all(|b| b.is_ascii_digit()) || !frac.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let all: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
    let places = frac.len() as u32;
    let mut v = BigRational::new(all, BigInt::from(10u32).pow(places));
    if neg {
        v = -v;
    }
    Ok((v, places))
}

/// The configuration of a formal basis `{1, e_1, …, e_{r-1}}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FormalBasis {
    pub elements: Vec<FormalElement>,
    pub max_digits: u32,
}

/// Writes `n^(1/k)` as `coef · m^(1/k')` with the fractional exponent vector of
/// the radical part reduced, so that two canonical radicals with a rational
/// ratio are identical. Returns `None` for the radical part when `n^(1/k)` is an integer.
pub fn canonical_radical(n: u64, k: u32) -> (BigInt, Option<(u64, u32)>) {
    assert!(k >= 1);
    if n <= 1 || k == 1 {
        return (BigInt::from(n), None);
    }
    let mut rest = n;
    let mut factors: Vec<(u64, u32)> = Vec::new();
    let mut p = 2u64;
    while p * p <= rest {
        if rest % p == 0 {
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += 1;
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    let mut coef = BigInt::one();
    let mut rems = Vec::new();
    for &(p, e) in &factors {
        coef *= BigInt::from(p).pow(e / k);
        if e % k != 0 {
            rems.push((p, e % k));
        }
    }
    if rems.is_empty() {
        return (coef, None);
    }
    let g = rems.iter().fold(k, |g, &(_, r)| num_integer::gcd(g, r));
    let index = k / g;
    let radicand = rems.iter().fold(1u64, |acc, &(p, r)| acc * p.pow(r / g));
    (coef, Some((radicand, index)))
}

pub(crate) fn interval_scale(c: &BigRational, lo: &BigRational, hi: &BigRational) -> (BigRational, BigRational) {
    if c >= &BigRational::zero() {
        (c * lo, c * hi)
    } else {
        (c * hi, c * lo)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radicals_reduce() {
        assert_eq!(canonical_radical(8, 2), (BigInt::from(2), Some((2, 2))));
        assert_eq!(canonical_radical(16, 3), (BigInt::from(2), Some((2, 3))));
        assert_eq!(canonical_radical(4, 6), (BigInt::from(1), Some((2, 3))));
        assert_eq!(canonical_radical(27, 3), (BigInt::from(3), None));
        assert_eq!(canonical_radical(12, 2), (BigInt::from(2), Some((3, 2))));
    }

    #[test]
    fn root_enclosure_brackets() {
        let e = FormalElement::Radical { radicand: 2, index: 3 };
        let (lo, hi, _) = e.enclosure(30).unwrap();
        let two = BigRational::from_integer(2.into());
        assert!(&lo * &lo * &lo < two && &hi * &hi * &hi > two);
    }

    #[test]
    fn decimal_enclosure() {
        let e = FormalElement::Decimal { name: "pi".into(), digits: "3.14159".into() };
        let (lo, hi, got) = e.enclosure(100).unwrap();
        assert_eq!(got, 5);
        assert!(lo < hi);
        assert!(parse_decimal("x1").is_err());
    }
}
