use std::collections::HashMap;
use std::fmt;

use super::IetSpec;
use crate::error::{Error, Result};
use crate::realnum::RealValue;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RauzyType {
    /// The last domain interval is the longer one.
    Top,
    Bottom,
}

impl RauzyType {
    pub fn letter(self) -> char {
        match self {
            RauzyType::Top => 'T',
            RauzyType::Bottom => 'B',
        }
    }

    pub fn flip(self) -> RauzyType {
        match self {
            RauzyType::Top => RauzyType::Bottom,
            RauzyType::Bottom => RauzyType::Top,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RauzyStep {
    pub kind: RauzyType,
    pub next: IetSpec,
    /// Stored length of the inducing interval `(0, shrink]`.
    pub shrink: RealValue,
}

/// One Rauzy–Veech step in the two-row picture: `t` ends the top row,
/// `b` ends the bottom row, and the loser is moved after the winner.
pub fn rauzy_step(t: &IetSpec) -> Result<RauzyStep> {
    let d = t.d();
    let mut top: Vec<usize> = (0..d).collect();
    let mut bottom = t.inverse_perm();
    let mut lam = t.lengths().to_vec();
    let (tl, bl) = (top[d - 1], bottom[d - 1]);
    let kind = match lam[tl].compare(&lam[bl])? {
        std::cmp::Ordering::Equal => {
            return Err(Error::KeaneViolation(format!("λ_{} = λ_{}", tl + 1, bl + 1)));
        }
        std::cmp::Ordering::Greater => {
            lam[tl] = lam[tl].try_sub(&lam[bl])?;
            bottom.pop();
            let at = bottom.iter().position(|&x| x == tl).unwrap();
            bottom.insert(at + 1, bl);
            RauzyType::Top
        }
        std::cmp::Ordering::Less => {
            lam[bl] = lam[bl].try_sub(&lam[tl])?;
            top.pop();
            let at = top.iter().position(|&x| x == bl).unwrap();
            top.insert(at + 1, tl);
            RauzyType::Bottom
        }
    };
    let mut pos = vec![0; d];
    for (p, &label) in bottom.iter().enumerate() {
        pos[label] = p;
    }
    let perm = top.iter().map(|&label| pos[label]).collect();
    let lengths: Vec<RealValue> = top.iter().map(|&label| lam[label].clone()).collect();
    let shrink = lengths.iter().skip(1).fold(lengths[0].clone(), |a, l| &a + l);
    let next = IetSpec::from_parts(perm, lengths, t.scale().clone())?;
    Ok(RauzyStep { kind, next, shrink })
}

#[derive(Clone, Debug)]
pub struct RauzyPath {
    pub steps: Vec<RauzyType>,
    /// `states[0]` is the input; `states[i + 1]` follows step `i`.
    pub states: Vec<IetSpec>,
    /// `(preperiod, period)` once a projective state recurs.
    pub period: Option<(usize, usize)>,
    /// Step index at which a tie stopped the induction.
    pub violation: Option<usize>,
}

impl RauzyPath {
    /// The first `n` step types, extended through the period if needed.
    pub fn types(&self, n: usize) -> Option<Vec<RauzyType>> {
        if n <= self.steps.len() {
            return Some(self.steps[..n].to_vec());
        }
        let (pre, per) = self.period?;
        Some((0..n).map(|i| if i < pre { self.steps[i] } else { self.steps[pre + (i - pre) % per] }).collect())
    }

    pub fn is_infinite(&self) -> bool {
        self.violation.is_none() && self.period.is_some()
    }

    pub fn text(&self) -> String {
        self.steps.iter().map(|s| s.letter()).collect()
    }
}

impl fmt::Display for RauzyPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())?;
        if let Some((p, q)) = self.period {
            write!(f, " (preperiod {p}, period {q})")?;
        }
        Ok(())
    }
}

/// Iterates [`rauzy_step`] up to `depth` times, stopping at the first
/// exactly repeated normalized state or at a tie.
pub fn rauzy_path(t: &IetSpec, depth: usize) -> Result<RauzyPath> {
    let mut seen: HashMap<(Vec<usize>, Vec<RealValue>), usize> = HashMap::new();
    let mut path = RauzyPath { steps: Vec::new(), states: vec![t.clone()], period: None, violation: None };
    let mut cur = t.clone();
    for i in 0..=depth {
        if cur.is_normalized() {
            let key = (cur.perm().to_vec(), cur.lengths().to_vec());
            if let Some(&j) = seen.get(&key) {
                path.period = Some((j, i - j));
                break;
            }
            seen.insert(key, i);
        }
        if i == depth {
            break;
        }
        match rauzy_step(&cur) {
            Ok(step) => {
                path.steps.push(step.kind);
                path.states.push(step.next.clone());
                cur = step.next;
            }
            Err(Error::KeaneViolation(_)) => {
                path.violation = Some(i);
                break;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(path)
}
