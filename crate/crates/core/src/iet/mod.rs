//! Interval exchange transformations on right-closed intervals
//! `(α_{k−1}, α_k]`.
//!
//! Permutations are 0-based internally: interval `k` lands at position
//! `perm[k]` of the image. Lengths are stored normalized to total 1 whenever
//! the total is invertible in its basis, with the original total kept as
//! `scale`; otherwise they are stored as given and `scale = 1`.

mod equiv;
mod induce;
mod invariants;
mod rauzy;

use std::collections::BTreeSet;

use crate::decision::{Certificate, Decision};
use crate::error::{Error, Result};
use crate::realnum::{qspan_of, wedge, Basis, RealValue, WedgeValue};
use crate::sturmian::Word;

pub use equiv::{ies_conjugate, ies_flow_equivalent};
pub use induce::{induce_interval, induced_on_cylinder};
pub use invariants::{minimal_model, rational_invariants, RationalInvariants};
pub use rauzy::{rauzy_path, rauzy_step, RauzyPath, RauzyStep, RauzyType};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IetSpec {
    perm: Vec<usize>,
    lengths: Vec<RealValue>,
    scale: RealValue,
}

fn common_basis(values: &[RealValue]) -> Basis {
    values.iter().map(|v| v.basis()).find(|b| **b != Basis::Rational).unwrap_or(&Basis::Rational).clone()
}

fn sum(values: &[RealValue], basis: &Basis) -> RealValue {
    values.iter().fold(RealValue::zero(basis), |acc, v| &acc + v)
}

impl IetSpec {
    /// Builds from 0-based `perm` and stored `lengths`, renormalizing and
    /// folding the removed total into `scale`.
    pub(crate) fn from_parts(perm: Vec<usize>, lengths: Vec<RealValue>, scale: RealValue) -> Result<IetSpec> {
        let basis = common_basis(&lengths);
        let lengths: Vec<RealValue> = lengths.iter().map(|l| l.embed(&basis)).collect::<Result<_>>()?;
        let total = sum(&lengths, &basis);
        Ok(match total.recip() {
            Ok(inv) => {
                let lengths = lengths.iter().map(|l| l.mul(&inv)).collect::<Result<_>>()?;
                IetSpec { perm, lengths, scale: scale.mul(&total)? }
            }
            Err(_) => IetSpec { perm, lengths, scale },
        })
    }

    pub fn d(&self) -> usize {
        self.perm.len()
    }

    /// 0-based permutation.
    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn perm_one_based(&self) -> Vec<usize> {
        self.perm.iter().map(|p| p + 1).collect()
    }

    /// Stored lengths.
    pub fn lengths(&self) -> &[RealValue] {
        &self.lengths
    }

    pub fn scale(&self) -> &RealValue {
        &self.scale
    }

    pub fn basis(&self) -> Basis {
        common_basis(&self.lengths)
    }

    /// Stored total: 1 when normalized.
    pub fn total(&self) -> RealValue {
        sum(&self.lengths, &self.basis())
    }

    pub fn is_normalized(&self) -> bool {
        self.total() == RealValue::one(&Basis::Rational)
    }

    pub fn actual_lengths(&self) -> Result<Vec<RealValue>> {
        self.lengths.iter().map(|l| l.mul(&self.scale)).collect()
    }

    /// `π⁻¹({0..k}) ≠ {0..k}` for every proper prefix.
    pub fn is_irreducible(&self) -> bool {
        let mut max = 0;
        for k in 0..self.d().saturating_sub(1) {
            max = max.max(self.perm[k]);
            if max == k {
                return false;
            }
        }
        true
    }

    pub fn inverse_perm(&self) -> Vec<usize> {
        let mut inv = vec![0; self.d()];
        for (k, &p) in self.perm.iter().enumerate() {
            inv[p] = k;
        }
        inv
    }

    /// Right endpoints `α_1, …, α_d`.
    pub fn discontinuities(&self) -> Vec<RealValue> {
        let basis = self.basis();
        let mut acc = RealValue::zero(&basis);
        self.lengths
            .iter()
            .map(|l| {
                acc = &acc + l;
                acc.clone()
            })
            .collect()
    }

    /// `δ_k = Σ_{π(l)<π(k)} λ_l − Σ_{l<k} λ_l`.
    pub fn translations(&self) -> Vec<RealValue> {
        translations_of(&self.perm, &self.lengths)
    }

    /// `T⁻¹`, again a right-closed IET.
    pub fn inverse(&self) -> IetSpec {
        let inv = self.inverse_perm();
        let lengths = inv.iter().map(|&k| self.lengths[k].clone()).collect();
        IetSpec { perm: inv, lengths, scale: self.scale.clone() }
    }

    /// Conjugate by `x ↦ L − x`.
    pub fn reflect(&self) -> IetSpec {
        let d = self.d();
        let perm = (0..d).map(|k| d - 1 - self.perm[d - 1 - k]).collect();
        let lengths = self.lengths.iter().rev().cloned().collect();
        IetSpec { perm, lengths, scale: self.scale.clone() }
    }

    /// Projective equality of `(perm, lengths)`.
    pub fn same_projective(&self, other: &IetSpec) -> bool {
        self.perm == other.perm && self.lengths == other.lengths
    }

    fn locate(&self, x: &RealValue) -> Result<usize> {
        if !x.is_positive()? {
            return Err(Error::OutOfDomain);
        }
        let mut acc = RealValue::zero(&self.basis());
        for (k, l) in self.lengths.iter().enumerate() {
            acc = &acc + l;
            if x.compare(&acc)?.is_le() {
                return Ok(k);
            }
        }
        Err(Error::OutOfDomain)
    }
}

pub(crate) fn translations_of(perm: &[usize], lengths: &[RealValue]) -> Vec<RealValue> {
    let basis = common_basis(lengths);
    let mut before = RealValue::zero(&basis);
    (0..perm.len())
        .map(|k| {
            let mut t = RealValue::zero(&basis);
            for l in 0..perm.len() {
                if perm[l] < perm[k] {
                    t = &t + &lengths[l];
                }
            }
            let out = &t - &before;
            before = &before + &lengths[k];
            out
        })
        .collect()
}

/// Validates a 1-based permutation and positive lengths.
pub fn new_iet(perm: &[usize], lengths: &[RealValue]) -> Result<IetSpec> {
    let d = perm.len();
    if d == 0 || lengths.len() != d {
        return Err(Error::InvalidArgument(format!("{} lengths for a permutation of {d}", lengths.len())));
    }
    let mut seen = vec![false; d];
    for &p in perm {
        if p == 0 || p > d || seen[p - 1] {
            return Err(Error::NotBijection);
        }
        seen[p - 1] = true;
    }
    for (index, l) in lengths.iter().enumerate() {
        if !l.is_positive()? {
            return Err(Error::NonPositiveLength { index: index + 1 });
        }
    }
    let basis = common_basis(lengths);
    IetSpec::from_parts(perm.iter().map(|p| p - 1).collect(), lengths.to_vec(), RealValue::one(&basis))
}

/// The 2-IET of rotation by `−α`: lengths `(α, 1 − α)` exchanged; its
/// coding from `x = 1` is the Sturmian word of `α` with letters exchanged.
pub fn sturmian_iet(alpha: &RealValue) -> Result<IetSpec> {
    let one = RealValue::one(alpha.basis());
    new_iet(&[2, 1], &[alpha.clone(), one.try_sub(alpha)?])
}

pub fn evaluate(t: &IetSpec, x: &RealValue) -> Result<RealValue> {
    let k = t.locate(x)?;
    x.try_add(&t.translations()[k])
}

/// Interval labels along `x, T(x), …, T^{n−1}(x)`.
pub fn orbit_word(t: &IetSpec, x: &RealValue, n: usize) -> Result<Word> {
    let delta = t.translations();
    let mut y = x.clone();
    let mut symbols = Vec::with_capacity(n);
    for i in 0..n {
        let k = t.locate(&y)?;
        symbols.push(k as u8);
        if i + 1 < n {
            y = y.try_add(&delta[k])?;
        }
    }
    Ok(Word { alphabet: t.d() as u8, offset: 0, symbols })
}

fn sort_dedup(points: &mut Vec<RealValue>) -> Result<()> {
    let mut err = None;
    points.sort_by(|a, b| {
        a.compare(b).unwrap_or_else(|e| {
            err.get_or_insert(e);
            std::cmp::Ordering::Equal
        })
    });
    points.dedup();
    err.map_or(Ok(()), Err)
}

/// Right endpoints of the continuity intervals of `T^m`, including the
/// domain's right end.
pub fn power_discontinuities(t: &IetSpec, m: i64) -> Result<Vec<RealValue>> {
    if m == 0 {
        return Err(Error::InvalidArgument("power must be nonzero".into()));
    }
    let base = if m > 0 { t.clone() } else { t.inverse() };
    let back = base.inverse();
    let alphas = base.discontinuities();
    let mut points = vec![alphas[base.d() - 1].clone()];
    for a in &alphas[..base.d() - 1] {
        let mut y = a.clone();
        points.push(y.clone());
        for _ in 1..m.unsigned_abs() {
            y = evaluate(&back, &y)?;
            points.push(y.clone());
        }
    }
    sort_dedup(&mut points)?;
    Ok(points)
}

/// Length-`n` words of the coding: one per continuity interval of `T^n`.
pub fn ies_factors(t: &IetSpec, n: usize) -> Result<BTreeSet<Word>> {
    if n == 0 {
        return Err(Error::InvalidArgument("factor length must be ≥ 1".into()));
    }
    power_discontinuities(t, n as i64)?.iter().map(|p| orbit_word(t, p, n)).collect()
}

/// `Σ λ_k ∧ δ_k` over the actual lengths.
pub fn saf(t: &IetSpec) -> Result<WedgeValue> {
    let lengths = t.actual_lengths()?;
    let delta = translations_of(&t.perm, &lengths);
    let basis = common_basis(&lengths);
    let mut acc = WedgeValue::zero(&basis);
    for (l, dl) in lengths.iter().zip(&delta) {
        acc = acc.add(&wedge(&l.embed(&basis)?, &dl.embed(&basis)?)?);
    }
    Ok(acc)
}

/// YES for irreducible `π` with ℚ-independent lengths; NO for reducible `π`
/// or a connection `T^m(α_i) = α_j` with `1 ≤ m ≤ depth`; else UNKNOWN.
pub fn keane_check(t: &IetSpec, depth: usize) -> Result<Decision> {
    if !t.is_irreducible() {
        return Ok(Decision::no("reducible", format!("permutation {:?} is reducible", t.perm_one_based())));
    }
    let lengths = t.actual_lengths()?;
    let dim = qspan_of(&common_basis(&lengths), &lengths)?.dim();
    if dim == t.d() {
        return Ok(Decision::yes(Certificate::IndependentLengths { dim }));
    }
    let alphas = t.discontinuities();
    let internal = &alphas[..t.d() - 1];
    for (i, a) in internal.iter().enumerate() {
        let mut y = a.clone();
        for m in 1..=depth {
            y = evaluate(t, &y)?;
            if let Some(j) = internal.iter().position(|b| b == &y) {
                let detail = format!("T^{m}(α_{}) = α_{}", i + 1, j + 1);
                return Ok(Decision::no_at("connection", detail, m as u64));
            }
        }
    }
    Ok(Decision::unknown(Some(depth as u64), "rationally dependent lengths without a connection"))
}
