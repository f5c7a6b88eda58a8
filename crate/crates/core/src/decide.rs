//! Decision procedures for Sturmian systems.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cfrac::{expand_periodic, tail_equivalence};
use crate::decision::{Certificate, Decision};
use crate::error::{Error, Result};
use crate::moebius::{apply, pell_fundamental, pell_unit, Mat2};
use crate::realnum::{int, Basis, RealValue};

fn require_irrational(x: &RealValue) -> Result<()> {
    if x.is_rational() {
        Err(Error::RationalInput)
    } else {
        Ok(())
    }
}

fn quadratic_core(x: &RealValue) -> Option<u64> {
    match x.basis() {
        Basis::Quadratic(d) => Some(*d),
        _ => None,
    }
}

/// `(sign, shift)` with `β = sign·α + shift`, if any.
fn congruence(alpha: &RealValue, beta: &RealValue) -> Result<Option<(i8, BigInt)>> {
    if alpha.basis() != beta.basis() {
        return Ok(None);
    }
    let d = beta.try_sub(alpha)?;
    if d.is_integer() {
        return Ok(Some((1, d.floor()?)));
    }
    let s = beta.try_add(alpha)?;
    if s.is_integer() {
        return Ok(Some((-1, s.floor()?)));
    }
    Ok(None)
}

fn congruence_matrix(sign: i8, shift: &BigInt) -> Mat2 {
    Mat2::from_bigints(BigInt::from(sign), shift.clone(), BigInt::zero(), BigInt::one())
}

/// `α = ±β mod ℤ`; equivalently `ℤ + ℤα = ℤ + ℤβ`.
pub fn sturmian_conjugate(alpha: &RealValue, beta: &RealValue) -> Result<Decision> {
    require_irrational(alpha)?;
    require_irrational(beta)?;
    Ok(match congruence(alpha, beta)? {
        Some((sign, shift)) => Decision::yes(Certificate::Conjugacy { sign, shift }),
        None => Decision::no("not-congruent-mod-z", "α ≠ ±β mod ℤ"),
    })
}

fn cycle_text(x: &RealValue) -> Result<String> {
    let c = expand_periodic(x)?.canonical_cycle();
    Ok(c.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(","))
}

/// Same PGL₂(ℤ)-orbit, decided by continued-fraction tails.
pub fn sturmian_flow_equivalent(alpha: &RealValue, beta: &RealValue) -> Result<Decision> {
    require_irrational(alpha)?;
    require_irrational(beta)?;
    match (quadratic_core(alpha), quadratic_core(beta)) {
        (Some(a), Some(b)) if a != b => {
            return Ok(Decision::no("different-fields", format!("ℚ(√{a}) ≠ ℚ(√{b})")));
        }
        (Some(_), Some(_)) => {}
        _ => {
            return Ok(match congruence(alpha, beta)? {
                Some((sign, shift)) => Decision::yes(Certificate::Matrix(congruence_matrix(sign, &shift))),
                None => Decision::unknown(None, "non-quadratic inputs are only decided through conjugacy"),
            });
        }
    }
    Ok(match tail_equivalence(alpha, beta)? {
        Some(m) => Decision::yes(Certificate::Matrix(m)),
        None => {
            let detail = format!("periodic cycles ({}) vs ({})", cycle_text(alpha)?, cycle_text(beta)?);
            Decision::no("cf-cycle-mismatch", detail)
        }
    })
}

/// `β = q·α + r` with `q, r ∈ ℚ`, if any.
fn affine_relation(alpha: &RealValue, beta: &RealValue) -> Result<Option<(BigRational, BigRational)>> {
    if alpha.basis() != beta.basis() {
        return Ok(None);
    }
    let j = (1..alpha.coords().len()).find(|&j| !alpha.coords()[j].is_zero()).expect("irrational");
    let q = &beta.coords()[j] / &alpha.coords()[j];
    if q.is_zero() {
        return Ok(None);
    }
    let r = beta.try_sub(&alpha.scale(&q))?;
    Ok(r.rational_value().map(|r| (q, r.clone())))
}

/// Same PGL₂(ℚ)-orbit.
pub fn sturmian_isogenous(alpha: &RealValue, beta: &RealValue) -> Result<Decision> {
    require_irrational(alpha)?;
    require_irrational(beta)?;
    if let (Some(a), Some(b)) = (quadratic_core(alpha), quadratic_core(beta)) {
        if a != b {
            return Ok(Decision::no("different-fields", format!("ℚ(√{a}) ≠ ℚ(√{b})")));
        }
    }
    Ok(match affine_relation(alpha, beta)? {
        Some((q, r)) => {
            let m = Mat2::new(q, r, BigRational::zero(), BigRational::one())?;
            Decision::yes(Certificate::Matrix(m))
        }
        None => Decision::unknown(None, "non-quadratic inputs are only decided through affine relations"),
    })
}

/// Eventual flow equivalence, searched up to `n_max` multiples.
pub fn sturmian_eventually_flow_equivalent(alpha: &RealValue, beta: &RealValue, n_max: u64) -> Result<Decision> {
    require_irrational(alpha)?;
    require_irrational(beta)?;
    if let Some((sign, shift)) = congruence(alpha, beta)? {
        return Ok(Decision::yes(Certificate::Conjugacy { sign, shift }));
    }
    let rational_gap = alpha.basis() == beta.basis()
        && (beta.try_sub(alpha)?.is_rational() || beta.try_add(alpha)?.is_rational());
    if !rational_gap {
        return Ok(Decision::no("not-congruent-mod-q", "α ≠ ±β mod ℚ"));
    }
    if quadratic_core(alpha).is_none() {
        return Ok(Decision::unknown(None, "non-quadratic inputs with α = ±β mod ℚ"));
    }
    for n in 1..=n_max {
        let (a, b) = (alpha.scale(&int(n)), beta.scale(&int(n)));
        let d = sturmian_flow_equivalent(&a, &b)?;
        if d.is_no() {
            let detail = format!("{n}α and {n}β are not flow equivalent: {}", d.obstruction.unwrap().detail);
            return Ok(Decision::no_at("multiple-not-flow-equivalent", detail, n));
        }
    }
    Ok(Decision::unknown(Some(n_max), "all multiples up to the bound are flow equivalent; conjecturally NO"))
}

/// `(x, s) ↦ (x + s√Δ)/2 · (U + V√Δ)/2` for even `U, V`.
fn unit_act(x: &BigInt, s: &BigInt, hu: &BigInt, hv: &BigInt, disc: &BigInt) -> (BigInt, BigInt) {
    (x * hu + s * hv * disc, x * hv + s * hu)
}

/// Whether `α` and `mα` are flow equivalent, via the Pell–Fermat equation
/// `x² − s²Δ = ±4m`.
pub fn self_mult_equivalent(alpha: &RealValue, m: u64) -> Result<Decision> {
    require_irrational(alpha)?;
    if m == 0 {
        return Err(Error::InvalidArgument("m must be positive".into()));
    }
    if m == 1 {
        return Ok(Decision::yes(Certificate::Matrix(Mat2::identity())));
    }
    let q = alpha.minimal_quadratic()?;
    let mm = BigInt::from(m);
    if !q.a.is_multiple_of(&mm) {
        return Ok(Decision::no("m-does-not-divide-a", format!("{m} ∤ {}", q.a)));
    }
    let disc = &q.disc;
    let (u, v) = pell_unit(disc)?;
    // smallest power of the unit with both coordinates even
    let mut powers = vec![(BigInt::from(2), BigInt::zero())];
    let (mut pu, mut pv) = (u.clone(), v.clone());
    while pu.is_odd() || pv.is_odd() {
        powers.push((pu.clone(), pv.clone()));
        (pu, pv) = ((&pu * &u + &pv * &v * disc) / 2, (&pu * &v + &pv * &u) / 2);
    }
    let (hu, hv) = (&pu / 2, &pv / 2);
    let two_m = &mm * 2;
    let target = alpha.scale(&int(mm.clone()));
    for class in pell_fundamental(disc, &mm)? {
        for (eu, ev) in &powers {
            let x0: BigInt = (&class.x * eu + &class.s * ev * disc) / 2;
            let s0: BigInt = (&class.x * ev + &class.s * eu) / 2;
            let start = (x0.mod_floor(&two_m), s0.mod_floor(&two_m));
            let (mut x, mut s) = (x0, s0);
            loop {
                if (&x + &s * &q.b).is_multiple_of(&two_m) {
                    let i = (&x - &s * &q.b) / 2;
                    let j = -(&s * &q.c);
                    let k = &s * &q.a / &mm;
                    let l = (&x + &s * &q.b) / &two_m;
                    let w = Mat2::from_bigints(i, j, k, l);
                    if apply(&w, alpha)? == target {
                        return Ok(Decision::yes(Certificate::Matrix(w)));
                    }
                }
                (x, s) = unit_act(&x, &s, &hu, &hv, disc);
                if (x.mod_floor(&two_m), s.mod_floor(&two_m)) == start {
                    break;
                }
            }
        }
    }
    Ok(Decision::no("no-pell-class", format!("no solution of x² − s²·{disc} = ±4·{m} with 2m | x + s·b")))
}

/// Invariant used by callers: a YES matrix certificate maps `α` to `β`.
pub fn verify_matrix(alpha: &RealValue, beta: &RealValue, m: &Mat2) -> bool {
    apply(m, alpha).map(|y| &y == beta).unwrap_or(false)
}

pub fn verify_conjugacy(alpha: &RealValue, beta: &RealValue, sign: i8, shift: &BigInt) -> bool {
    let y = alpha.scale(&int(i64::from(sign))).add_rational(&int(shift.clone()));
    &y == beta
}
