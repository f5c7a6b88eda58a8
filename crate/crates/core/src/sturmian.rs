//! Sturmian codings of irrational rotations.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::cfrac::expand_prefix;
use crate::error::{Error, Result};
use crate::realnum::{zmodule_of, RealValue, ZModule};

/// A finite word over `{0, …, alphabet−1}` placed at position `offset`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    pub alphabet: u8,
    pub offset: i64,
    pub symbols: Vec<u8>,
}

impl Word {
    pub fn binary(symbols: Vec<u8>) -> Word {
        Word { alphabet: 2, offset: 0, symbols }
    }

    pub fn parse(text: &str, alphabet: u8) -> Result<Word> {
        let (body, offset) = match text.split_once('@') {
            Some((b, o)) => (b, o.parse().map_err(|_| Error::InvalidArgument(format!("bad offset {o:?}")))?),
            None => (text, 0),
        };
        let symbols = body
            .chars()
            .map(|c| match c.to_digit(10) {
                Some(d) if (d as u8) < alphabet => Ok(d as u8),
                _ => Err(Error::InvalidArgument(format!("bad symbol {c:?}"))),
            })
            .collect::<Result<_>>()?;
        Ok(Word { alphabet, offset, symbols })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn text(&self) -> String {
        self.symbols.iter().map(|s| char::from(b'0' + s)).collect()
    }

    /// Distinct length-`n` subwords, offsets dropped.
    pub fn subwords(&self, n: usize) -> BTreeSet<Vec<u8>> {
        self.symbols.windows(n).map(|w| w.to_vec()).collect()
    }

    pub fn contains(&self, w: &[u8]) -> bool {
        w.is_empty() || self.symbols.windows(w.len()).any(|x| x == w)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.text(), self.offset)
    }
}

#[derive(Serialize, Deserialize)]
struct WordJson {
    alphabet: u8,
    offset: i64,
    symbols: String,
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WordJson { alphabet: self.alphabet, offset: self.offset, symbols: self.text() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Word, D::Error> {
        let j = WordJson::deserialize(d)?;
        let mut w = Word::parse(&j.symbols, j.alphabet).map_err(serde::de::Error::custom)?;
        w.offset = j.offset;
        Ok(w)
    }
}

/// Rotation number of a Sturmian system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SturmianParams {
    alpha: RealValue,
}

impl SturmianParams {
    pub fn new(alpha: RealValue) -> Result<SturmianParams> {
        if alpha.is_rational() {
            return Err(Error::RationalInput);
        }
        if !alpha.is_positive()? || alpha.compare(&RealValue::one(alpha.basis()))?.is_ge() {
            return Err(Error::OutOfDomain);
        }
        Ok(SturmianParams { alpha })
    }

    pub fn alpha(&self) -> &RealValue {
        &self.alpha
    }
}

fn letter(alpha: &RealValue, n: i64) -> Result<u8> {
    let hi = alpha.scale(&crate::realnum::int(n + 1)).floor()?;
    let lo = alpha.scale(&crate::realnum::int(n)).floor()?;
    Ok((hi - lo).to_u8().expect("letter in {0,1}"))
}

/// `x_n = 1` iff `{nα} ∈ [1−α, 1)`, for `n ∈ [i, j)`.
pub fn sturmian_window(p: &SturmianParams, i: i64, j: i64) -> Result<Word> {
    if i >= j {
        return Err(Error::InvalidArgument("window needs i < j".into()));
    }
    let symbols = (i..j).map(|n| letter(&p.alpha, n)).collect::<Result<_>>()?;
    Ok(Word { alphabet: 2, offset: i, symbols })
}

/// The language in length `n`: the cell of the circle partition cut at
/// `{−kα}` whose left end is `{−kα}` codes as the window `[−k, n−k)`.
pub fn factors(p: &SturmianParams, n: usize) -> Result<BTreeSet<Word>> {
    if n == 0 {
        return Err(Error::InvalidArgument("factor length must be ≥ 1".into()));
    }
    let n = n as i64;
    let mut out = BTreeSet::new();
    for k in 0..=n {
        let mut w = sturmian_window(p, -k, n - k)?;
        w.offset = 0;
        out.insert(w);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Substitution {
    J,
    R,
    L,
}

impl std::str::FromStr for Substitution {
    type Err = Error;
    fn from_str(s: &str) -> Result<Substitution> {
        match s {
            "J" => Ok(Substitution::J),
            "R" => Ok(Substitution::R),
            "L" => Ok(Substitution::L),
            _ => Err(Error::InvalidArgument(format!("unknown substitution {s:?}"))),
        }
    }
}

impl Substitution {
    fn image(self, a: u8) -> &'static [u8] {
        match (self, a) {
            (Substitution::J, 0) => &[1],
            (Substitution::J, _) => &[0],
            (Substitution::R, 0) => &[0, 1],
            (Substitution::R, _) => &[1],
            (Substitution::L, 0) => &[0],
            (Substitution::L, _) => &[1, 0],
        }
    }
}

pub fn substitution_apply(s: Substitution, w: &Word) -> Result<Word> {
    if w.alphabet != 2 {
        return Err(Error::InvalidArgument("substitutions act on binary words".into()));
    }
    let symbols = w.symbols.iter().flat_map(|&a| s.image(a).iter().copied()).collect();
    Ok(Word { alphabet: 2, offset: w.offset, symbols })
}

fn apply_raw(s: Substitution, w: &[u8]) -> Vec<u8> {
    w.iter().flat_map(|&a| s.image(a).iter().copied()).collect()
}

/// Prefix of `0·c_α`, `c_α` the characteristic word.
///
/// With `[0; a₁, a₂, …]` and `d₁ = a₁ − 1`, `dₖ = aₖ`, the standard words are
/// `sₙ = μ̃_{d₁} ∘ ⋯ ∘ μ̃_{dₙ}(0)` where `μ_d = L^d ∘ J` and `~` reverses
/// images; so `sₙ` is the reversal of `μ_{d₁} ∘ ⋯ ∘ μ_{dₙ}(0)`.
pub fn sadic_prefix(p: &SturmianParams, len: usize) -> Result<Word> {
    if len == 0 {
        return Err(Error::InvalidArgument("prefix length must be ≥ 1".into()));
    }
    let need = len - 1;
    let mut n = 8;
    loop {
        let digits = expand_prefix(&p.alpha, n + 1)?;
        let mut ds: Vec<usize> = digits[1..]
            .iter()
            .map(|a| a.to_usize().ok_or_else(|| Error::InvalidArgument("partial quotient too large".into())))
            .collect::<Result<_>>()?;
        ds[0] -= 1;
        // |s_k| via s_k = s_{k−1}^{d_k} s_{k−2}, s_{−1} = 1, s_0 = 0
        let (mut prev, mut cur) = (1usize, 1usize);
        let mut used = 0;
        while used < ds.len() && (used == 0 || cur < need) {
            (prev, cur) = (cur, cur.saturating_mul(ds[used]).saturating_add(prev));
            used += 1;
        }
        if cur >= need {
            let mut w = vec![0u8];
            for &d in ds[..used].iter().rev() {
                w = apply_raw(Substitution::J, &w);
                for _ in 0..d {
                    w = apply_raw(Substitution::L, &w);
                }
            }
            w.reverse();
            let mut symbols = vec![0u8];
            symbols.extend_from_slice(&w[..need]);
            return Ok(Word::binary(symbols));
        }
        n *= 2;
    }
}

/// `ℤ + ℤα`.
pub fn state_image(p: &SturmianParams) -> Result<ZModule> {
    let basis = p.alpha.basis();
    zmodule_of(basis, &[RealValue::one(basis), p.alpha.clone()])
}

pub fn letter_count(w: &Word, a: u8) -> usize {
    w.symbols.iter().filter(|&&s| s == a).count()
}
