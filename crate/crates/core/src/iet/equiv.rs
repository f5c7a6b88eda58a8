use num_integer::Integer;

use super::{ies_factors, induced_on_cylinder, keane_check, minimal_model, rational_invariants, rauzy_path, IetSpec};
use crate::decision::{Certificate, Decision};
use crate::error::{Error, Result};
use crate::realnum::Basis;
use crate::sturmian::Word;

/// Rauzy depth used when comparing cylinder-induced systems.
const INNER_DEPTH: usize = 64;

const ITER_CAP: usize = 10_000;

fn require_keane(t: &IetSpec, depth: usize) -> Result<()> {
    let k = keane_check(t, depth)?;
    if k.is_no() {
        return Err(Error::KeaneViolation(k.obstruction.map(|o| o.detail).unwrap_or_default()));
    }
    Ok(())
}

enum Comparison {
    Equal { preperiod: usize, period: usize },
    Differ,
    Open,
}

fn compare_paths(t1: &IetSpec, t2: &IetSpec, depth: usize) -> Result<Comparison> {
    if t1.perm() != t2.perm() {
        return Ok(Comparison::Differ);
    }
    let (p1, p2) = (rauzy_path(t1, depth)?, rauzy_path(t2, depth)?);
    if p1.violation.is_some() || p2.violation.is_some() {
        return Err(Error::KeaneViolation("tie in Rauzy induction".into()));
    }
    let avail = |p: &super::RauzyPath| if p.period.is_some() { depth } else { p.steps.len() };
    let n = avail(&p1).min(avail(&p2));
    if p1.types(n) != p2.types(n) {
        return Ok(Comparison::Differ);
    }
    match (p1.period, p2.period) {
        (Some((a, x)), Some((b, y))) => {
            let (pre, per) = (a.max(b), x.lcm(&y));
            Ok(if p1.types(pre + per) == p2.types(pre + per) {
                Comparison::Equal { preperiod: pre, period: per }
            } else {
                Comparison::Differ
            })
        }
        _ => Ok(Comparison::Open),
    }
}

/// NO on diverging Rauzy paths (in both orientations), YES on identical
/// infinite, eventually periodic paths, UNKNOWN otherwise.
pub fn ies_conjugate(t1: &IetSpec, t2: &IetSpec, depth: usize) -> Result<Decision> {
    require_keane(t1, depth)?;
    require_keane(t2, depth)?;
    conjugate_unchecked(t1, t2, depth)
}

fn conjugate_unchecked(t1: &IetSpec, t2: &IetSpec, depth: usize) -> Result<Decision> {
    if t1.same_projective(t2) {
        return Ok(Decision::yes(Certificate::Identical { reflected: false }));
    }
    if t1.same_projective(&t2.reflect()) {
        return Ok(Decision::yes(Certificate::Identical { reflected: true }));
    }
    if t1.d() != t2.d() {
        return Ok(Decision::no("alphabet-size", format!("{} vs {} intervals", t1.d(), t2.d())));
    }
    let mut open = false;
    for (reflected, u) in [(false, t2.clone()), (true, t2.reflect())] {
        match compare_paths(t1, &u, depth)? {
            Comparison::Equal { preperiod, period } => {
                return Ok(Decision::yes(Certificate::RauzyPath { reflected, preperiod, period }));
            }
            Comparison::Differ => {}
            Comparison::Open => open = true,
        }
    }
    Ok(if open {
        Decision::unknown(Some(depth as u64), "Rauzy paths agree without a periodicity certificate")
    } else {
        Decision::no("rauzy-path-mismatch", "Rauzy paths differ in both orientations")
    })
}

fn words_up_to(t: &IetSpec, depth: usize) -> Result<Vec<Word>> {
    let mut out = vec![Word { alphabet: t.d() as u8, offset: 0, symbols: Vec::new() }];
    for n in 1..=depth {
        out.extend(ies_factors(t, n)?);
    }
    Ok(out)
}

/// Searches pairs of cylinder-induced systems up to word length `depth`.
pub fn ies_flow_equivalent(t1: &IetSpec, t2: &IetSpec, depth: usize) -> Result<Decision> {
    require_keane(t1, INNER_DEPTH)?;
    require_keane(t2, INNER_DEPTH)?;
    let (m1, m2) = (minimal_model(t1)?, minimal_model(t2)?);
    if m1.d() != m2.d() {
        let detail = format!("minimal models have {} and {} letters", m1.d(), m2.d());
        return Ok(Decision::no("asymptotic-pair-count", detail));
    }
    let (r1, r2) = (rational_invariants(t1)?, rational_invariants(t2)?);
    let canonical = |b: &Basis| !b.is_formal();
    if r1.span.dim() != r2.span.dim() || (canonical(&t1.basis()) && canonical(&t2.basis()) && r1.span != r2.span) {
        return Ok(Decision::no("span-class-mismatch", "projective ℚ-span classes of the lengths differ"));
    }
    let (w1, w2) = (words_up_to(t1, depth)?, words_up_to(t2, depth)?);
    let mut pairs: Vec<(&Word, &Word)> = w1.iter().flat_map(|a| w2.iter().map(move |b| (a, b))).collect();
    pairs.sort_by(|x, y| (x.0.len() + x.1.len(), x.0.len(), x.0, x.1).cmp(&(y.0.len() + y.1.len(), y.0.len(), y.0, y.1)));
    let mut cache1 = std::collections::HashMap::new();
    let mut cache2 = std::collections::HashMap::new();
    for (a, b) in pairs {
        if !cache1.contains_key(a) {
            cache1.insert(a.clone(), induced_on_cylinder(t1, a, ITER_CAP)?);
        }
        if !cache2.contains_key(b) {
            cache2.insert(b.clone(), induced_on_cylinder(t2, b, ITER_CAP)?);
        }
        let d = conjugate_unchecked(&cache1[a], &cache2[b], INNER_DEPTH)?;
        if let Some(Certificate::Identical { reflected } | Certificate::RauzyPath { reflected, .. }) = d.certificate {
            let cert = Certificate::Cylinders { left: a.symbols.clone(), right: b.symbols.clone(), reflected };
            return Ok(Decision::yes(cert));
        }
    }
    Ok(Decision::unknown(Some(depth as u64), "no conjugate pair of cylinder-induced systems within the bound"))
}
