use super::{sort_dedup, IetSpec};
use crate::error::{Error, Result};
use crate::realnum::RealValue;
use crate::sturmian::Word;

struct Piece {
    lo: RealValue,
    hi: RealValue,
    shift: RealValue,
}

/// Splits `(lo, hi]` at the given cut points lying strictly inside.
fn split(lo: &RealValue, hi: &RealValue, cuts: &[RealValue]) -> Result<Vec<(RealValue, RealValue)>> {
    let mut out = Vec::new();
    let mut left = lo.clone();
    for c in cuts {
        if c.compare(&left)?.is_gt() && c.compare(hi)?.is_lt() {
            out.push((left, c.clone()));
            left = c.clone();
        }
    }
    out.push((left, hi.clone()));
    Ok(out)
}

/// First-return map of `t` on `(a, b]`, in stored coordinates; adjacent
/// pieces sharing a return translation are merged.
pub fn induce_interval(t: &IetSpec, a: &RealValue, b: &RealValue, iter_cap: usize) -> Result<IetSpec> {
    if a.compare(b)?.is_ge() || a.signum()?.is_lt() || b.compare(&t.total())?.is_gt() {
        return Err(Error::OutOfDomain);
    }
    let alphas = t.discontinuities();
    let internal = &alphas[..t.d() - 1];
    let delta = t.translations();
    let window = [a.clone(), b.clone()];
    let zero = RealValue::zero(&t.basis());
    let mut pending = vec![Piece { lo: a.clone(), hi: b.clone(), shift: zero }];
    let mut done: Vec<Piece> = Vec::new();
    let mut rounds = 0;
    while !pending.is_empty() {
        rounds += 1;
        if rounds > iter_cap {
            return Err(Error::IterationCapExceeded { cap: iter_cap });
        }
        let mut next = Vec::new();
        for p in pending {
            for (l, h) in split(&p.lo, &p.hi, internal)? {
                let k = t.locate(&h)?;
                let (l, h) = (l.try_add(&delta[k])?, h.try_add(&delta[k])?);
                let shift = p.shift.try_add(&delta[k])?;
                for (l, h) in split(&l, &h, &window)? {
                    let inside = l.compare(a)?.is_ge() && h.compare(b)?.is_le();
                    let piece = Piece { lo: l, hi: h, shift: shift.clone() };
                    if inside {
                        done.push(piece);
                    } else {
                        next.push(piece);
                    }
                }
            }
        }
        pending = next;
    }
    // back to source coordinates
    let mut src: Vec<(RealValue, RealValue, RealValue)> = done
        .into_iter()
        .map(|p| Ok((p.lo.try_sub(&p.shift)?, p.hi.try_sub(&p.shift)?, p.shift)))
        .collect::<Result<_>>()?;
    let mut err = None;
    src.sort_by(|x, y| {
        x.0.compare(&y.0).unwrap_or_else(|e| {
            err.get_or_insert(e);
            std::cmp::Ordering::Equal
        })
    });
    if let Some(e) = err {
        return Err(e);
    }
    let mut merged: Vec<(RealValue, RealValue, RealValue)> = Vec::new();
    for (lo, hi, s) in src {
        match merged.last_mut() {
            Some(last) if last.2 == s && last.1 == lo => last.1 = hi,
            _ => merged.push((lo, hi, s)),
        }
    }
    let mut images: Vec<RealValue> = merged.iter().map(|(lo, _, s)| lo.try_add(s)).collect::<Result<_>>()?;
    let lengths: Vec<RealValue> = merged.iter().map(|(lo, hi, _)| hi.try_sub(lo)).collect::<Result<_>>()?;
    let starts = images.clone();
    sort_dedup(&mut images)?;
    let perm = starts.iter().map(|s| images.iter().position(|x| x == s).unwrap()).collect();
    IetSpec::from_parts(perm, lengths, t.scale().clone())
}

/// First-return map on the cylinder of `w`.
pub fn induced_on_cylinder(t: &IetSpec, w: &Word, iter_cap: usize) -> Result<IetSpec> {
    let n = w.len();
    if n == 0 {
        return Ok(t.clone());
    }
    let mut lo: Option<RealValue> = None;
    let mut hi: Option<RealValue> = None;
    let mut prev = RealValue::zero(&t.basis());
    for p in super::power_discontinuities(t, n as i64)? {
        let hit = super::orbit_word(t, &p, n)?.symbols == w.symbols;
        if hit && (hi.is_none() || hi.as_ref() == Some(&prev)) {
            lo.get_or_insert_with(|| prev.clone());
            hi = Some(p.clone());
        }
        prev = p;
    }
    match (lo, hi) {
        (Some(lo), Some(hi)) => induce_interval(t, &lo, &hi, iter_cap),
        _ => Err(Error::EmptyCylinder),
    }
}
