use super::{keane_check, translations_of, IetSpec};
use crate::error::{Error, Result};
use crate::realnum::{qspan_of, wedge, QSpan, RealValue, WedgeValue};

/// Drops removable discontinuities: letters `k, k+1` with
/// `π(k+1) = π(k) + 1` merge until none remain. A cyclic rotation of the
/// letters thereby collapses to the 2-letter rotation model.
pub fn minimal_model(t: &IetSpec) -> Result<IetSpec> {
    let mut perm = t.perm().to_vec();
    let mut lengths = t.lengths().to_vec();
    while let Some(k) = (0..perm.len().saturating_sub(1)).find(|&k| perm[k + 1] == perm[k] + 1) {
        let gone = perm.remove(k + 1);
        for p in perm.iter_mut() {
            if *p > gone {
                *p -= 1;
            }
        }
        let l = lengths.remove(k + 1);
        lengths[k] = lengths[k].try_add(&l)?;
    }
    IetSpec::from_parts(perm, lengths, t.scale().clone())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalInvariants {
    /// ℚ-span of the lengths, rescaled so its first canonical vector is 1
    /// whenever that vector is invertible.
    pub span: QSpan,
    /// SAF of the normalized lengths, content- and sign-normalized.
    pub saf: WedgeValue,
}

fn projective_span(lengths: &[RealValue]) -> Result<QSpan> {
    let basis = lengths[0].basis().clone();
    let span = qspan_of(&basis, lengths)?;
    let vs = span.vectors();
    match vs[0].recip() {
        Ok(inv) => qspan_of(&basis, &vs.iter().map(|v| v.mul(&inv)).collect::<Result<Vec<_>>>()?),
        Err(_) => Ok(span),
    }
}

pub fn rational_invariants(t: &IetSpec) -> Result<RationalInvariants> {
    let k = keane_check(t, 4 * t.d() + 8)?;
    if k.is_no() {
        return Err(Error::KeaneViolation(k.obstruction.map(|o| o.detail).unwrap_or_default()));
    }
    let lengths = t.lengths();
    let delta = translations_of(t.perm(), lengths);
    let basis = t.basis();
    let mut saf = WedgeValue::zero(&basis);
    for (l, dl) in lengths.iter().zip(&delta) {
        saf = saf.add(&wedge(&l.embed(&basis)?, &dl.embed(&basis)?)?);
    }
    Ok(RationalInvariants { span: projective_span(lengths)?, saf: saf.projective() })
}
