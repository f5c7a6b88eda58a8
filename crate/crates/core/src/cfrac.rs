//! Euclidean continued fractions: expansion, eventual periodicity of
//! quadratic surds, and reconstruction.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::moebius::Mat2;
use crate::realnum::{int, Basis, RealValue};

/// `[c0; c1, …, (p1, …, pk)]`: a preperiod followed by an optional period.
/// Values are kept canonical: shortest preperiod, primitive period, and no
/// trailing 1 in finite expansions (except `[1]`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ContinuedFraction {
    preperiod: Vec<BigInt>,
    period: Vec<BigInt>,
}

fn primitive_len(w: &[BigInt]) -> usize {
    let n = w.len();
    (1..=n).find(|&p| n % p == 0 && (p..n).all(|i| w[i] == w[i - p])).unwrap_or(n)
}

impl ContinuedFraction {
    /// Validates and canonicalizes.
    pub fn new(mut preperiod: Vec<BigInt>, mut period: Vec<BigInt>) -> Result<ContinuedFraction> {
        if preperiod.is_empty() && period.is_empty() {
            return Err(Error::InvalidDigits("no digits".into()));
        }
        if preperiod.iter().skip(1).chain(&period).any(|c| c < &BigInt::one()) {
            return Err(Error::InvalidDigits("digits after the first must be ≥ 1".into()));
        }
        if period.is_empty() {
            if preperiod.len() >= 2 && preperiod.last().unwrap().is_one() {
                preperiod.pop();
                *preperiod.last_mut().unwrap() += 1;
            }
            return Ok(ContinuedFraction { preperiod, period });
        }
        period.truncate(primitive_len(&period));
        while preperiod.last().is_some_and(|c| c == period.last().unwrap()) {
            preperiod.pop();
            period.rotate_right(1);
        }
        Ok(ContinuedFraction { preperiod, period })
    }

    pub fn preperiod(&self) -> &[BigInt] {
        &self.preperiod
    }

    pub fn period(&self) -> &[BigInt] {
        &self.period
    }

    pub fn is_finite(&self) -> bool {
        self.period.is_empty()
    }

    /// The `i`-th partial quotient, `None` past the end of a finite expansion.
    pub fn digit(&self, i: usize) -> Option<&BigInt> {
        if i < self.preperiod.len() {
            return Some(&self.preperiod[i]);
        }
        if self.period.is_empty() {
            return None;
        }
        Some(&self.period[(i - self.preperiod.len()) % self.period.len()])
    }

    pub fn digits(&self, n: usize) -> Vec<BigInt> {
        (0..n).map_while(|i| self.digit(i).cloned()).collect()
    }

    /// The period rotated to its lexicographically least rotation; two
    /// expansions have equal tails iff these agree.
    pub fn canonical_cycle(&self) -> Vec<BigInt> {
        let p = &self.period;
        (0..p.len()).map(|r| p[r..].iter().chain(&p[..r]).cloned().collect::<Vec<_>>()).min().unwrap_or_default()
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let all: Vec<String> = self.preperiod.iter().map(|c| c.to_string()).collect();
        let per: Vec<String> = self.period.iter().map(|c| c.to_string()).collect();
        write!(f, "[")?;
        let mut parts: Vec<String> = Vec::new();
        let mut rest = all.as_slice();
        if let Some((c0, tail)) = rest.split_first() {
            write!(f, "{c0}")?;
            rest = tail;
            if rest.is_empty() && per.is_empty() {
                return write!(f, "]");
            }
            write!(f, "; ")?;
        }
        parts.extend(rest.iter().cloned());
        if !per.is_empty() {
            parts.push(format!("({})", per.join(", ")));
        }
        write!(f, "{}]", parts.join(", "))
    }
}

impl FromStr for ContinuedFraction {
    type Err = Error;

    /// Parses the textual form `[c0; c1, c2, (p1, p2)]`.
    fn from_str(s: &str) -> Result<ContinuedFraction> {
        let bad = |m: &str| Error::InvalidDigits(format!("{m} in {s:?}"));
        let body = s.trim().strip_prefix('[').and_then(|b| b.strip_suffix(']')).ok_or_else(|| bad("missing brackets"))?;
        let (pre_text, per_text) = match body.find('(') {
            Some(i) => {
                let close = body.rfind(')').ok_or_else(|| bad("unclosed period"))?;
                if !body[close + 1..].trim().is_empty() {
                    return Err(bad("digits after the period"));
                }
                (&body[..i], Some(&body[i + 1..close]))
            }
            None => (body, None),
        };
        let nums = |t: &str| -> Result<Vec<BigInt>> {
            t.split([',', ';']).map(str::trim).filter(|x| !x.is_empty()).map(|x| x.parse::<BigInt>().map_err(|_| bad("bad digit"))).collect()
        };
        let pre = nums(pre_text)?;
        let per = per_text.map(nums).transpose()?.unwrap_or_default();
        ContinuedFraction::new(pre, per)
    }
}

/// First `n` partial quotients (fewer when `x` is rational with a shorter expansion).
pub fn expand_prefix(x: &RealValue, n: usize) -> Result<Vec<BigInt>> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be ≥ 1".into()));
    }
    if let Basis::Formal(_) = x.basis() {
        if !x.is_rational() {
            return expand_prefix_formal(x, n);
        }
    }
    let mut out = Vec::with_capacity(n);
    let mut y = x.clone();
    while out.len() < n {
        let a = y.floor()?;
        y = y.add_rational(&-int(a.clone()));
        out.push(a);
        if y.is_zero() {
            break;
        }
        y = y.recip()?;
    }
    Ok(out)
}

/// Digit extraction by interval refinement: the k-th complete quotient is
/// the inverse convergent Möbius map applied to `x`, evaluated on enclosures.
fn expand_prefix_formal(x: &RealValue, n: usize) -> Result<Vec<BigInt>> {
    let cap = x.basis().max_digits();
    let mut out: Vec<BigInt> = Vec::with_capacity(n);
    let mut digits = 32u32.min(cap);
    let (mut p, mut pp, mut q, mut qp) = (BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one());
    while out.len() < n {
        let (lo, hi) = x.enclosure(digits)?;
        // x_k = (qp·x − pp) / (−q·x + p) up to a common sign
        let eval = |t: &BigRational| -> Option<BigRational> {
            let den = -int(q.clone()) * t + int(p.clone());
            (!den.is_zero()).then(|| (int(qp.clone()) * t - int(pp.clone())) / den)
        };
        let dl = -int(q.clone()) * &lo + int(p.clone());
        let dh = -int(q.clone()) * &hi + int(p.clone());
        let pole_free = dl.signum() == dh.signum() && !dl.is_zero();
        if let (true, Some(a), Some(b)) = (pole_free, eval(&lo), eval(&hi)) {
            let (fa, fb) = (a.floor().to_integer(), b.floor().to_integer());
            if fa == fb {
                let (np, nq) = (&fa * &p + &pp, &fa * &q + &qp);
                pp = std::mem::replace(&mut p, np);
                qp = std::mem::replace(&mut q, nq);
                out.push(fa);
                continue;
            }
        }
        if digits >= cap {
            return Err(Error::PrecisionExhausted { digits });
        }
        digits = (digits * 2).min(cap);
    }
    Ok(out)
}

/// The reduced-surd state `x = (P + √Δ)/Q` with `Q | Δ − P²`.
fn surd_state(x: &RealValue) -> Result<(BigInt, BigInt, BigInt)> {
    let Basis::Quadratic(d) = x.basis() else { return Err(Error::FormalBasisUnsupported) };
    let (u, v) = (&x.coords()[0], &x.coords()[1]);
    let n = u.denom().lcm(v.denom());
    let un = u.numer() * (&n / u.denom());
    let vn = v.numer() * (&n / v.denom());
    let (mut p, mut q) = if vn.is_positive() { (un, n) } else { (-un, -n) };
    let mut disc = &vn * &vn * BigInt::from(*d);
    if !(&disc - &p * &p).is_multiple_of(&q) {
        let aq = q.abs();
        p *= &aq;
        disc *= &aq * &aq;
        q *= aq;
    }
    Ok((p, q, disc))
}

fn surd_floor(p: &BigInt, q: &BigInt, s: &BigInt) -> BigInt {
    if q.is_positive() {
        Integer::div_floor(&(p + s), q)
    } else {
        Integer::div_floor(&(p + s + 1), q)
    }
}

/// Exact eventually periodic expansion of a rational or quadratic value.
pub fn expand_periodic(x: &RealValue) -> Result<ContinuedFraction> {
    if x.is_rational() {
        let q = x.rational_value().unwrap();
        let (mut a, mut b) = (q.numer().clone(), q.denom().clone());
        let mut digits = Vec::new();
        loop {
            let (c, r) = a.div_mod_floor(&b);
            digits.push(c);
            if r.is_zero() {
                break;
            }
            a = std::mem::replace(&mut b, r);
        }
        return ContinuedFraction::new(digits, Vec::new());
    }
    let (mut p, mut q, disc) = surd_state(x)?;
    let s = disc.sqrt();
    let mut seen: HashMap<(BigInt, BigInt), usize> = HashMap::new();
    let mut digits = Vec::new();
    loop {
        if let Some(&start) = seen.get(&(p.clone(), q.clone())) {
            let period = digits.split_off(start);
            return ContinuedFraction::new(digits, period);
        }
        seen.insert((p.clone(), q.clone()), digits.len());
        let a = surd_floor(&p, &q, &s);
        p = &a * &q - &p;
        q = (&disc - &p * &p) / &q;
        digits.push(a);
    }
}

/// The number represented by `cf`.
pub fn from_cf(cf: &ContinuedFraction) -> Result<RealValue> {
    let pre = convergent_matrix(cf.preperiod());
    if cf.is_finite() {
        let [a, _, c, _] = pre.entries();
        return Ok(RealValue::from_rational(&Basis::Rational, a / c));
    }
    let per = convergent_matrix(cf.period());
    let [a, b, c, d] = per.entries().map(|e| e.to_integer());
    // c·y² + (d − a)·y − b = 0; only its primitive discriminant needs factoring
    let g = c.gcd(&(&d - &a)).gcd(&b);
    let disc = ((&d - &a) * (&d - &a) + BigInt::from(4) * &b * &c) / (&g * &g);
    let (f, core) = square_split(&disc);
    let f = f * g;
    if core == BigInt::one() {
        return Err(Error::InvalidDigits("period has a rational fixed point".into()));
    }
    let core = u64::try_from(core).map_err(|_| Error::InvalidDigits("discriminant too large".into()))?;
    let two_c = int(BigInt::from(2) * &c);
    let y = RealValue::quadratic(core, int(&a - &d) / &two_c, int(f) / &two_c)?;
    crate::moebius::apply(&pre, &y)
}

/// `n = f²·core` with `core` squarefree.
pub(crate) fn square_split(n: &BigInt) -> (BigInt, BigInt) {
    let mut core = n.clone();
    let mut f = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= core {
        let pp = &p * &p;
        while (&core % &pp).is_zero() {
            core /= &pp;
            f *= &p;
        }
        p += 1;
    }
    (f, core)
}

/// `∏ (c_i 1 / 1 0)`: maps the tail after the digits to the full number.
pub fn convergent_matrix(digits: &[BigInt]) -> Mat2 {
    let (mut p, mut pp, mut q, mut qp) = (BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one());
    for c in digits {
        let (np, nq) = (c * &p + &pp, c * &q + &qp);
        pp = std::mem::replace(&mut p, np);
        qp = std::mem::replace(&mut q, nq);
    }
    Mat2::from_bigints(p, pp, q, qp)
}

/// The complete quotient `x_k`, so that `x = convergent_matrix(first k digits)·x_k`.
pub fn complete_quotient(x: &RealValue, k: usize) -> Result<RealValue> {
    let mut y = x.clone();
    for _ in 0..k {
        let a = y.floor()?;
        y = y.add_rational(&-int(a)).recip()?;
    }
    Ok(y)
}

/// A matrix in PGL₂(ℤ) mapping `x` to `y`, built from convergents onto a
/// shared tail; `None` when the periodic cycles differ.
pub fn tail_equivalence(x: &RealValue, y: &RealValue) -> Result<Option<Mat2>> {
    let (ex, ey) = (expand_periodic(x)?, expand_periodic(y)?);
    if ex.is_finite() || ey.is_finite() {
        return Err(Error::RationalInput);
    }
    let (px, py) = (ex.period(), ey.period());
    if px.len() != py.len() {
        return Ok(None);
    }
    let Some(r) = (0..px.len()).find(|&r| px[r..].iter().chain(&px[..r]).eq(py.iter())) else {
        return Ok(None);
    };
    let cx = convergent_matrix(&ex.digits(ex.preperiod().len() + r));
    let cy = convergent_matrix(ey.preperiod());
    Ok(Some(cy.mul(&cx.inverse())))
}
