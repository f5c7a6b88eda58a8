//! Denjoy systems: rotation number `ρ` together with finitely many orbits of
//! cut points, one representative each.

use std::cmp::Ordering;

use num_traits::Zero;

use crate::cfrac::tail_equivalence;
use crate::decision::{Certificate, Decision};
use crate::error::{Error, Result};
use crate::moebius::{apply, pgl2_stabilizer, Mat2};
use crate::realnum::{int, qspan_of, zmodule_of, QSpan, RealValue, ZModule};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenjoyParams {
    rho: RealValue,
    reps: Vec<RealValue>,
    origin_added: bool,
}

/// `b` with `v − bρ ∈ ℚ`, read off the first irrational coordinate of `ρ`.
fn rho_coefficient(rho: &RealValue, v: &RealValue) -> num_rational::BigRational {
    let j = (1..rho.coords().len()).find(|&j| !rho.coords()[j].is_zero()).expect("irrational ρ");
    &v.coords()[j] / &rho.coords()[j]
}

/// Canonical member of `r + ℤ + ℤρ`.
fn orbit_rep(rho: &RealValue, r: &RealValue) -> Result<RealValue> {
    let k = rho_coefficient(rho, r).floor();
    r.try_sub(&rho.scale(&k))?.frac()
}

fn sort_reps(reps: &mut Vec<RealValue>) -> Result<()> {
    let mut err = None;
    reps.sort_by(|a, b| {
        a.compare(b).unwrap_or_else(|e| {
            err.get_or_insert(e);
            Ordering::Equal
        })
    });
    reps.dedup();
    err.map_or(Ok(()), Err)
}

impl DenjoyParams {
    pub fn rho(&self) -> &RealValue {
        &self.rho
    }

    /// Orbit representatives; the origin's orbit comes first as `0`.
    pub fn reps(&self) -> &[RealValue] {
        &self.reps
    }

    pub fn origin_added(&self) -> bool {
        self.origin_added
    }

    pub fn n_orbits(&self) -> usize {
        self.reps.len()
    }

    fn build(rho: RealValue, raw: &[RealValue]) -> Result<DenjoyParams> {
        let zero = RealValue::zero(rho.basis());
        let mut reps = Vec::new();
        for r in raw {
            reps.push(orbit_rep(&rho, &r.embed(rho.basis())?)?);
        }
        let origin_added = !reps.contains(&zero);
        reps.retain(|r| r != &zero);
        sort_reps(&mut reps)?;
        reps.insert(0, zero);
        Ok(DenjoyParams { rho, reps, origin_added })
    }

    fn span(&self) -> Result<QSpan> {
        let mut gens = vec![RealValue::one(self.rho.basis()), self.rho.clone()];
        gens.extend(self.reps.iter().cloned());
        qspan_of(self.rho.basis(), &gens)
    }
}

/// Reduces `ρ` and the representatives modulo 1 and modulo `ℤ + ℤρ`.
pub fn normalize(rho: &RealValue, raw_reps: &[RealValue]) -> Result<DenjoyParams> {
    if rho.is_rational() {
        return Err(Error::RationalInput);
    }
    DenjoyParams::build(rho.frac()?, raw_reps)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenjoyStateImage {
    pub module: ZModule,
    pub coinvariant_rank: usize,
    pub infinitesimal_rank: usize,
}

/// `ℤ + ℤρ + Σ ℤ·aᵢ`, with coinvariant rank `N + 1`.
pub fn state_image(p: &DenjoyParams) -> Result<DenjoyStateImage> {
    let basis = p.rho.basis();
    let mut gens = vec![RealValue::one(basis), p.rho.clone()];
    gens.extend(p.reps.iter().cloned());
    let module = zmodule_of(basis, &gens)?;
    let coinvariant_rank = p.n_orbits() + 1;
    let infinitesimal_rank = coinvariant_rank - module.rank();
    Ok(DenjoyStateImage { module, coinvariant_rank, infinitesimal_rank })
}

/// The `m`-th power: rotation `mρ`, and each orbit of `ρ` splits into the
/// `|m|` orbits of `r + kρ`, `0 ≤ k < |m|`.
pub fn power_params(p: &DenjoyParams, m: i64) -> Result<DenjoyParams> {
    if m == 0 {
        return Err(Error::InvalidArgument("power must be nonzero".into()));
    }
    let rho = p.rho.scale(&int(m)).frac()?;
    let mut raw = Vec::new();
    for r in &p.reps {
        for k in 0..m.unsigned_abs() {
            raw.push(r.try_add(&p.rho.scale(&int(k)))?);
        }
    }
    let mut out = DenjoyParams::build(rho, &raw)?;
    out.origin_added = p.origin_added;
    Ok(out)
}

/// Whether the factor `big → small` (forgetting orbits) is infinitesimal.
pub fn two_ai_infinitesimal(big: &DenjoyParams, small: &DenjoyParams) -> Result<bool> {
    if big.rho != small.rho {
        return Err(Error::NotAFactor("rotation numbers differ".into()));
    }
    if let Some(r) = small.reps.iter().find(|r| !big.reps.contains(r)) {
        return Err(Error::NotAFactor(format!("orbit of {r} missing from the larger system")));
    }
    Ok(big.span()? == small.span()?)
}

pub fn two_ai_equivalent(p1: &DenjoyParams, p2: &DenjoyParams) -> Result<Decision> {
    p1.rho.same_basis(&p2.rho)?;
    let sign = if p1.rho == p2.rho {
        1
    } else if p1.rho.try_add(&p2.rho)?.is_integer() {
        -1
    } else {
        return Ok(Decision::no("rotation-mismatch", format!("{} ≠ ±{} mod ℤ", p1.rho, p2.rho)));
    };
    if p1.span()? != p2.span()? {
        return Ok(Decision::no("span-mismatch", "ℚ-spans of the cut sets differ"));
    }
    Ok(Decision::yes(Certificate::Sign(sign)))
}

/// Checks `M·ρ₀ ≡ ρ₁ mod ℤ` and `λ·ℚQ₀ = ℚQ₁` with `λ = 1/(m₂₁ρ₀ + m₂₂)`.
pub fn verify_isogeny_certificate(p0: &DenjoyParams, p1: &DenjoyParams, m: &Mat2) -> Result<bool> {
    if p0.rho.basis() != p1.rho.basis() {
        return Ok(false);
    }
    let image = apply(m, &p0.rho)?;
    if !image.try_sub(&p1.rho)?.is_integer() {
        return Ok(false);
    }
    let [_, _, c, d] = m.entries();
    let lambda = p0.rho.scale(c).add_rational(d).recip()?;
    let scaled: Vec<RealValue> = p0.span()?.vectors().iter().map(|v| v.mul(&lambda)).collect::<Result<_>>()?;
    Ok(qspan_of(p0.rho.basis(), &scaled)? == p1.span()?)
}

/// Canonical orbit set of `λ·Q₀ + r`.
fn scaled_orbits(p0: &DenjoyParams, rho1: &RealValue, lambda: &RealValue, r: &RealValue) -> Result<Vec<RealValue>> {
    let mut out = Vec::new();
    for a in &p0.reps {
        out.push(orbit_rep(rho1, &a.mul(lambda)?.try_add(r)?)?);
    }
    sort_reps(&mut out)?;
    Ok(out)
}

fn sorted(reps: &[RealValue]) -> Result<Vec<RealValue>> {
    let mut v = reps.to_vec();
    sort_reps(&mut v)?;
    Ok(v)
}

/// Bounded search over `M₀·G^j`, `|j| ≤ bound`, where `M₀` aligns the
/// continued-fraction tails and `G` generates the stabilizer of `ρ₀`.
pub fn flow_equivalent(p0: &DenjoyParams, p1: &DenjoyParams, bound: u64) -> Result<Decision> {
    if p0.rho.basis().is_formal() || p1.rho.basis().is_formal() {
        return Err(Error::FormalBasisUnsupported);
    }
    let Some(m0) = tail_equivalence(&p0.rho, &p1.rho)? else {
        return Ok(Decision::no("cf-tail-mismatch", "rotation numbers are not PGL₂(ℤ)-equivalent"));
    };
    if p0.n_orbits() != p1.n_orbits() {
        return Ok(Decision::no("orbit-count-mismatch", format!("{} vs {} cut orbits", p0.n_orbits(), p1.n_orbits())));
    }
    let g = pgl2_stabilizer(&p0.rho)?;
    let target = sorted(&p1.reps)?;
    let b = bound as i64;
    let mut order: Vec<i64> = (-b..=b).collect();
    order.sort_by_key(|&j| (j.abs(), j));
    for j in order {
        let m = m0.mul(&g.pow(j));
        let [_, _, c, d] = m.entries();
        let lambda = p0.rho.scale(c).add_rational(d).recip()?;
        for r in &p1.reps {
            if scaled_orbits(p0, &p1.rho, &lambda, r)? == target {
                let cert = Certificate::DenjoyFlow { matrix: m.projective(), rotation: r.clone(), power: j };
                return Ok(Decision::yes(cert));
            }
        }
    }
    Ok(Decision::unknown(Some(bound), "no stabilizer power within the bound matches the cut sets"))
}

/// Whether `M·ρ₀ ≡ ρ₁ mod ℤ`.
pub fn witness_maps_rotation(p0: &DenjoyParams, p1: &DenjoyParams, m: &Mat2) -> Result<bool> {
    Ok(apply(m, &p0.rho)?.try_sub(&p1.rho)?.is_integer())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realnum::parse_value;

    fn v(s: &str) -> RealValue {
        parse_value(s).unwrap()
    }

    fn dp(rho: &str, reps: &[&str]) -> DenjoyParams {
        normalize(&v(rho), &reps.iter().map(|r| v(r)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let p = dp("sqrt(2)-1", &["0", "sqrt(2)-1"]);
        assert_eq!(p.reps(), &[v("0")]);
        assert!(!p.origin_added());
        let p = dp("sqrt(2)-1", &["0", "1/2"]);
        assert_eq!(p.reps(), &[v("0"), v("1/2")]);
        let p = dp("sqrt(2)", &[]);
        assert!(p.origin_added());
        assert_eq!((p.reps(), p.rho()), (&[v("0")][..], &v("sqrt(2)-1")));
        let p = dp("sqrt(2)-1", &["7/2+3*sqrt(2)", "1/2"]);
        assert_eq!(p.n_orbits(), 2);
    }

    #[test]
    fn state_images() {
        let s = state_image(&dp("sqrt(2)-1", &[])).unwrap();
        assert_eq!((s.module.rank(), s.infinitesimal_rank), (2, 0));
        let s = state_image(&dp("sqrt(2)-1", &["1/2"])).unwrap();
        assert_eq!(s.module.rank(), 2);
        assert!(s.module.contains(&v("1/2")) && s.module.contains(&v("sqrt(2)")));
        assert_eq!((s.coinvariant_rank, s.infinitesimal_rank), (3, 1));
    }

    #[test]
    fn powers() {
        let p = dp("sqrt(2)-1", &[]);
        assert_eq!(power_params(&p, 1).unwrap(), p);
        let q = power_params(&p, 2).unwrap();
        assert_eq!(q.rho(), &v("2*sqrt(2)-2"));
        assert_eq!(q.n_orbits(), 2);
        assert!(q.reps().contains(&orbit_rep(q.rho(), &v("sqrt(2)-1")).unwrap()));
        let r = power_params(&p, -1).unwrap();
        assert_eq!((r.rho(), r.n_orbits()), (&v("2-sqrt(2)"), 1));
        for (m, n) in [(2i64, 3i64), (-1, 2), (3, -2), (-1, -1)] {
            let a = power_params(&power_params(&p, m).unwrap(), n).unwrap();
            assert_eq!(a, power_params(&p, m * n).unwrap());
        }
    }

    #[test]
    fn two_ai() {
        let big = dp("(sqrt(5)-1)/2", &["1/3"]);
        let small = dp("(sqrt(5)-1)/2", &[]);
        assert!(two_ai_infinitesimal(&big, &small).unwrap());
        assert!(two_ai_infinitesimal(&small, &small).unwrap());
        assert!(matches!(two_ai_infinitesimal(&small, &big), Err(Error::NotAFactor(_))));
        let fb = crate::realnum::parse_values(&["root(5,2)/2-1/2", "root(2,3)/4", "0"], 100).unwrap();
        let big = normalize(&fb[0], &fb[1..]).unwrap();
        let small = normalize(&fb[0], &fb[2..]).unwrap();
        assert!(!two_ai_infinitesimal(&big, &small).unwrap());

        let p = dp("sqrt(2)-1", &[]);
        assert_eq!(two_ai_equivalent(&p, &p).unwrap().certificate, Some(Certificate::Sign(1)));
        let q = dp("2-sqrt(2)", &[]);
        assert_eq!(two_ai_equivalent(&p, &q).unwrap().certificate, Some(Certificate::Sign(-1)));
        assert!(two_ai_equivalent(&dp("sqrt(2)-1", &["1/2"]), &p).unwrap().is_yes());
        assert!(two_ai_equivalent(&dp("sqrt(2)-1", &[]), &dp("sqrt(2)/2", &[])).unwrap().is_no());
    }

    #[test]
    fn isogeny_certificates() {
        let p = dp("sqrt(2)-1", &[]);
        assert!(verify_isogeny_certificate(&p, &p, &Mat2::identity()).unwrap());
        for m in [2i64, 3, 5] {
            let q = dp(&format!("{m}*(sqrt(2)-1)"), &[]);
            assert!(verify_isogeny_certificate(&p, &q, &Mat2::diag(m, 1)).unwrap());
        }
        let q = dp("sqrt(3)-1", &[]);
        assert!(!verify_isogeny_certificate(&p, &q, &Mat2::from_ints(1, 1, 0, 1)).unwrap());
    }

    #[test]
    fn flows() {
        let p0 = dp("sqrt(2)", &[]);
        let p1 = dp("3-sqrt(2)", &[]);
        let d = flow_equivalent(&p0, &p1, 3).unwrap();
        let m = d.matrix().unwrap().clone();
        assert_eq!(apply(&m, p0.rho()).unwrap(), *p1.rho());
        assert_eq!(m, Mat2::from_ints(1, 1, 1, 2));
        assert!(flow_equivalent(&dp("sqrt(2)/2", &[]), &dp("(3-sqrt(2))/2", &[]), 3).unwrap().is_no());
        let d = flow_equivalent(&p0, &p0, 0).unwrap();
        assert_eq!(d.matrix(), Some(&Mat2::identity()));
        let a = dp("sqrt(2)", &["1/2"]);
        let b = dp("3-sqrt(2)", &["1/2"]);
        let d = flow_equivalent(&a, &b, 3).unwrap();
        assert!(d.is_yes());
        assert!(witness_maps_rotation(&a, &b, d.matrix().unwrap()).unwrap());
        assert!(flow_equivalent(&a, &p1, 3).unwrap().is_no());
    }
}
