//! Three-valued verdicts with certificates, obstructions and bounds.

use std::fmt;

use num_bigint::BigInt;

use crate::moebius::Mat2;
use crate::realnum::RealValue;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Yes => "YES",
            Verdict::No => "NO",
            Verdict::Unknown => "UNKNOWN",
        }
    }

    /// 0 YES, 1 NO, 2 UNKNOWN.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Yes => 0,
            Verdict::No => 1,
            Verdict::Unknown => 2,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// `β = sign·α + shift`.
    Conjugacy { sign: i8, shift: BigInt },
    /// `apply(matrix, α) = β`.
    Matrix(Mat2),
    /// Orientation sign relating two rotation numbers.
    Sign(i8),
    /// Flow witness for Denjoy systems: `matrix` maps `ρ₀` to `ρ₁` and the
    /// scaled cut set translated by `rotation` matches; `power` is the
    /// stabilizer exponent used.
    DenjoyFlow { matrix: Mat2, rotation: RealValue, power: i64 },
    /// Cylinder words whose induced systems are conjugate.
    Cylinders { left: Vec<u8>, right: Vec<u8>, reflected: bool },
    /// Identical Rauzy type sequences, possibly after reflecting one side.
    RauzyPath { reflected: bool, preperiod: usize, period: usize },
    /// Lengths spanning a ℚ-space of full dimension.
    IndependentLengths { dim: usize },
    /// The systems are identical up to scale, possibly reflected.
    Identical { reflected: bool },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obstruction {
    pub code: &'static str,
    pub detail: String,
    /// Parameter at which the obstruction fired, when the search is indexed.
    pub at: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub verdict: Verdict,
    pub certificate: Option<Certificate>,
    pub obstruction: Option<Obstruction>,
    pub bound: Option<u64>,
    pub note: Option<String>,
}

impl Decision {
    pub fn yes(c: Certificate) -> Decision {
        Decision { verdict: Verdict::Yes, certificate: Some(c), obstruction: None, bound: None, note: None }
    }

    pub fn no(code: &'static str, detail: impl Into<String>) -> Decision {
        let o = Obstruction { code, detail: detail.into(), at: None };
        Decision { verdict: Verdict::No, certificate: None, obstruction: Some(o), bound: None, note: None }
    }

    pub fn no_at(code: &'static str, detail: impl Into<String>, at: u64) -> Decision {
        let mut d = Decision::no(code, detail);
        d.obstruction.as_mut().unwrap().at = Some(at);
        d
    }

    pub fn unknown(bound: Option<u64>, note: impl Into<String>) -> Decision {
        Decision { verdict: Verdict::Unknown, certificate: None, obstruction: None, bound, note: Some(note.into()) }
    }

    pub fn is_yes(&self) -> bool {
        self.verdict == Verdict::Yes
    }

    pub fn is_no(&self) -> bool {
        self.verdict == Verdict::No
    }

    pub fn matrix(&self) -> Option<&Mat2> {
        match self.certificate.as_ref()? {
            Certificate::Matrix(m) | Certificate::DenjoyFlow { matrix: m, .. } => Some(m),
            _ => None,
        }
    }
}
