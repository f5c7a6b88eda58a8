//! Plain-text renderings.

use num_bigint::BigInt;

use sturmkit::decision::{Certificate, Decision};
use sturmkit::denjoy::{DenjoyParams, DenjoyStateImage};
use sturmkit::iet::{IetSpec, RationalInvariants, RauzyPath};
use sturmkit::moebius::PellSolution;
use sturmkit::realnum::lattice::ZModule;
use sturmkit::realnum::wedge::WedgeValue;
use sturmkit::{Result, RealValue};

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

pub fn digits(ds: &[BigInt]) -> String {
    match ds.split_first() {
        None => "[]".into(),
        Some((a0, [])) => format!("[{a0}]"),
        Some((a0, rest)) => format!("[{a0}; {}]", join(rest, ", ")),
    }
}

pub fn certificate(c: &Certificate) -> String {
    let refl = |r: &bool| if *r { ", reflected" } else { "" };
    match c {
        Certificate::Conjugacy { sign, shift } => {
            let s = if *sign < 0 { "-α" } else { "α" };
            match shift.sign() {
                num_bigint::Sign::NoSign => format!("β = {s}"),
                num_bigint::Sign::Minus => format!("β = {s} - {}", -shift),
                num_bigint::Sign::Plus => format!("β = {s} + {shift}"),
            }
        }
        Certificate::Matrix(m) => format!("matrix {m}"),
        Certificate::Sign(s) => format!("orientation {}", if *s < 0 { "reversed" } else { "preserved" }),
        Certificate::DenjoyFlow { matrix, rotation, power } => {
            format!("matrix {matrix}, rotation {rotation}, stabilizer power {power}")
        }
        Certificate::Cylinders { left, right, reflected } => {
            let w = |s: &[u8]| s.iter().map(|c| c.to_string()).collect::<String>();
            format!("cylinders [{}] ~ [{}]{}", w(left), w(right), refl(reflected))
        }
        Certificate::RauzyPath { reflected, preperiod, period } => {
            format!("equal Rauzy paths, preperiod {preperiod}, period {period}{}", refl(reflected))
        }
        Certificate::IndependentLengths { dim } => format!("lengths span a {dim}-dimensional space"),
        Certificate::Identical { reflected } => format!("identical up to scale{}", refl(reflected)),
    }
}

pub fn decision(d: &Decision) -> String {
    let mut out = d.verdict.to_string();
    if let Some(c) = &d.certificate {
        out += &format!("\ncertificate: {}", certificate(c));
    }
    if let Some(o) = &d.obstruction {
        out += &format!("\nobstruction: {}", o.code);
        if let Some(at) = o.at {
            out += &format!(" at {at}");
        }
        if !o.detail.is_empty() {
            out += &format!(": {}", o.detail);
        }
    }
    if let Some(b) = d.bound {
        out += &format!("\nbound: {b}");
    }
    if let Some(n) = &d.note {
        out += &format!("\nnote: {n}");
    }
    out
}

pub fn pell(sols: &[PellSolution]) -> String {
    if sols.is_empty() {
        return "no solutions".into();
    }
    let lines: Vec<String> = sols
        .iter()
        .map(|p| format!("x = {}, s = {}, sign {}", p.x, p.s, if p.sign < 0 { "-" } else { "+" }))
        .collect();
    lines.join("\n")
}

pub fn zmodule(m: &ZModule) -> String {
    format!("rank {}: <{}>", m.rank(), join(&m.generators(), ", "))
}

pub fn denjoy(p: &DenjoyParams) -> String {
    format!(
        "rho = {}\nreps = {}\norigin added: {}",
        p.rho(),
        join(p.reps(), ", "),
        if p.origin_added() { "yes" } else { "no" }
    )
}

pub fn denjoy_state(s: &DenjoyStateImage) -> String {
    format!(
        "state image {}\ncoinvariant rank {}\ninfinitesimal rank {}",
        zmodule(&s.module),
        s.coinvariant_rank,
        s.infinitesimal_rank
    )
}

pub fn rauzy(p: &RauzyPath) -> String {
    let mut out = p.to_string();
    if let Some(v) = p.violation {
        out += &format!("\ntie at step {v}");
    }
    out
}

pub fn iet(t: &IetSpec) -> Result<String> {
    let lengths: Vec<RealValue> = t.actual_lengths()?;
    Ok(format!("perm {}\nlengths {}", join(&t.perm_one_based(), ","), join(&lengths, ", ")))
}

pub fn wedge(w: &WedgeValue) -> String {
    let names = w.basis.element_names();
    let mut terms = Vec::new();
    for (i, row) in w.matrix.iter().enumerate() {
        for (j, c) in row.iter().enumerate().skip(i + 1) {
            if c.numer().sign() != num_bigint::Sign::NoSign {
                terms.push(format!("{c}*({} ^ {})", names[i], names[j]));
            }
        }
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

pub fn rational_invariants(r: &RationalInvariants) -> String {
    format!("span <{}>\nsaf {}", join(&r.span.vectors(), ", "), wedge(&r.saf))
}
