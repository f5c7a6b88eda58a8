//! The number-expression grammar: rationals, `sqrt(n)`, `root(n,k)`, and
//! `+ - * /` with parentheses, e.g. `(1+sqrt(5))/4`, `3-sqrt(2)`, `7/3`.
//!
//! Products and quotients are accepted whenever the result stays inside one
//! quadratic field or one factor is rational. Distinct radicals become the
//! elements of a formal basis.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::formal::{canonical_radical, FormalElement, DEFAULT_MAX_DIGITS};
use super::{int, Basis, RealValue};
use crate::error::{Error, Result};

type Radical = (u64, u32);

#[derive(Clone, Debug, PartialEq)]
struct Sym {
    constant: BigRational,
    terms: BTreeMap<Radical, BigRational>,
}

impl Sym {
    fn constant(q: BigRational) -> Sym {
        Sym { constant: q, terms: BTreeMap::new() }
    }

    fn radical(n: u64, k: u32) -> Sym {
        let (coef, rad) = canonical_radical(n, k);
        let mut s = Sym::constant(BigRational::zero());
        match rad {
            None => s.constant = int(coef),
            Some(r) => {
                s.terms.insert(r, int(coef));
            }
        }
        s
    }

    fn as_constant(&self) -> Option<&BigRational> {
        self.terms.is_empty().then_some(&self.constant)
    }

    /// The square-root radicand when the value lies in a single `ℚ(√D)`.
    fn quadratic_core(&self) -> Option<u64> {
        match self.terms.keys().collect::<Vec<_>>()[..] {
            [&(d, 2)] => Some(d),
            _ => None,
        }
    }

    fn part(&self, r: &Radical) -> BigRational {
        self.terms.get(r).cloned().unwrap_or_else(BigRational::zero)
    }

    fn add(mut self, other: Sym, sign: i32) -> Sym {
        let s = int(sign);
        self.constant += other.constant * &s;
        for (k, v) in other.terms {
            let e = self.terms.entry(k).or_insert_with(BigRational::zero);
            *e += v * &s;
        }
        self.terms.retain(|_, v| !v.is_zero());
        self
    }

    fn scale(mut self, q: &BigRational) -> Sym {
        self.constant *= q;
        self.terms.values_mut().for_each(|v| *v *= q);
        self.terms.retain(|_, v| !v.is_zero());
        self
    }

    fn mul(self, other: Sym) -> Option<Sym> {
        if let Some(q) = other.as_constant() {
            return Some(self.scale(&q.clone()));
        }
        if let Some(q) = self.as_constant() {
            return Some(other.scale(&q.clone()));
        }
        let d = self.quadratic_core()?;
        if other.quadratic_core()? != d {
            return None;
        }
        let r = (d, 2);
        let (a, b) = (self.constant.clone(), self.part(&r));
        let (c, e) = (other.constant.clone(), other.part(&r));
        let mut out = Sym::constant(&a * &c + &b * &e * int(d));
        out.terms.insert(r, a * e + b * c);
        out.terms.retain(|_, v| !v.is_zero());
        Some(out)
    }

    fn recip(self) -> Option<Sym> {
        if let Some(q) = self.as_constant() {
            return (!q.is_zero()).then(|| Sym::constant(q.recip()));
        }
        let d = self.quadratic_core()?;
        let r = (d, 2);
        let (a, b) = (self.constant.clone(), self.part(&r));
        let n = &a * &a - &b * &b * int(d);
        let mut out = Sym::constant(&a / &n);
        out.terms.insert(r, -(b / n));
        Some(out)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push((start, Tok::Num(text[start..i].parse().unwrap())));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_alphabetic() {
                i += 1;
            }
            out.push((start, Tok::Ident(text[start..i].to_string())));
        } else if "+-*/(),".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(Error::Parse { pos: i, msg: format!("unexpected character {c:?}") });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|t| t.0).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos(), msg: msg.into() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn uint(&mut self) -> Result<u64> {
        match self.peek() {
            Some(Tok::Num(n)) => {
                let n = u64::try_from(n.clone()).or_else(|_| self.err("integer too large"))?;
                self.at += 1;
                Ok(n)
            }
            _ => self.err("expected an unsigned integer"),
        }
    }

    fn expr(&mut self) -> Result<Sym> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(self.term()?, 1);
            } else if self.eat('-') {
                acc = acc.add(self.term()?, -1);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Sym> {
        let mut acc = self.unary()?;
        loop {
            let pos = self.pos();
            if self.eat('*') {
                let rhs = self.unary()?;
                acc = acc.mul(rhs).ok_or_else(|| Error::Parse { pos, msg: "product of independent irrationals".into() })?;
            } else if self.eat('/') {
                let rhs = self.unary()?;
                let inv = rhs.recip().ok_or_else(|| Error::Parse { pos, msg: "division by zero or by an unsupported irrational".into() })?;
                acc = acc.mul(inv).ok_or_else(|| Error::Parse { pos, msg: "quotient leaves the field".into() })?;
            } else if matches!(self.peek(), Some(Tok::Ident(_)) | Some(Tok::Op('('))) {
                let rhs = self.atom()?;
                acc = acc.mul(rhs).ok_or_else(|| Error::Parse { pos, msg: "product of independent irrationals".into() })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Sym> {
        if self.eat('-') {
            return Ok(self.unary()?.scale(&-BigRational::one()));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Sym> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.at += 1;
                Ok(Sym::constant(int(n)))
            }
            Some(Tok::Op('(')) => {
                self.at += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Ident(name)) if name == "sqrt" => {
                self.at += 1;
                self.expect('(')?;
                let n = self.uint()?;
                self.expect(')')?;
                Ok(Sym::radical(n, 2))
            }
            Some(Tok::Ident(name)) if name == "root" => {
                self.at += 1;
                self.expect('(')?;
                let n = self.uint()?;
                self.expect(',')?;
                let k = self.uint()?;
                if k == 0 || k > 64 {
                    return self.err("root index must be between 1 and 64");
                }
                self.expect(')')?;
                Ok(Sym::radical(n, k as u32))
            }
            Some(Tok::Ident(name)) => self.err(format!("unknown function {name:?}")),
            Some(_) => self.err("expected a number, 'sqrt(', 'root(' or '('"),
            None => self.err("unexpected end of input"),
        }
    }
}

fn parse_sym(text: &str) -> Result<Sym> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, at: 0, end: text.len() };
    let s = p.expr()?;
    if p.at != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(s)
}

fn basis_for(radicals: &[Radical], max_digits: u32) -> Result<Basis> {
    match radicals {
        [] => Ok(Basis::Rational),
        [(d, 2)] => Basis::quadratic(*d),
        _ => Basis::formal(
            radicals.iter().map(|&(radicand, index)| FormalElement::Radical { radicand, index }).collect(),
            max_digits,
        ),
    }
}

fn sym_to_value(s: &Sym, basis: &Basis, radicals: &[Radical]) -> Result<RealValue> {
    let mut coords = vec![s.constant.clone()];
    coords.extend(radicals.iter().map(|r| s.part(r)));
    RealValue::make(basis, coords)
}

/// Parses one expression in the smallest basis containing it.
pub fn parse_value(text: &str) -> Result<RealValue> {
    Ok(parse_values(&[text], DEFAULT_MAX_DIGITS)?.remove(0))
}

/// Parses several expressions into one shared basis spanned by every
/// radical that occurs.
pub fn parse_values<S: AsRef<str>>(texts: &[S], max_digits: u32) -> Result<Vec<RealValue>> {
    let syms = texts.iter().map(|t| parse_sym(t.as_ref())).collect::<Result<Vec<_>>>()?;
    let mut radicals: Vec<Radical> = syms.iter().flat_map(|s| s.terms.keys().copied()).collect();
    radicals.sort();
    radicals.dedup();
    let basis = basis_for(&radicals, max_digits)?;
    syms.iter().map(|s| sym_to_value(s, &basis, &radicals)).collect()
}

/// Parses an expression into a prescribed basis.
pub fn parse_in(text: &str, basis: &Basis) -> Result<RealValue> {
    let v = parse_value(text)?;
    if v.basis() == basis {
        return Ok(v);
    }
    if let Some(q) = v.rational_value() {
        return Ok(RealValue::from_rational(basis, q.clone()));
    }
    if let Basis::Formal(f) = basis {
        let s = parse_sym(text)?;
        let mut coords = vec![s.constant.clone()];
        for e in &f.elements {
            coords.push(match e {
                FormalElement::Radical { radicand, index } => s.part(&(*radicand, *index)),
                FormalElement::Decimal { .. } => BigRational::zero(),
            });
        }
        let covered: usize = f.elements.iter().filter(|e| matches!(e, FormalElement::Radical { radicand, index } if s.terms.contains_key(&(*radicand, *index)))).count();
        if covered == s.terms.len() {
            return RealValue::make(basis, coords);
        }
    }
    Err(Error::BasisMismatch)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realnum::rat;

    #[test]
    fn grammar_examples() {
        let v = parse_value("(1+sqrt(5))/4").unwrap();
        assert_eq!(v, RealValue::quadratic(5, rat(1, 4), rat(1, 4)).unwrap());
        let v = parse_value("3-sqrt(2)").unwrap();
        assert_eq!(v, RealValue::quadratic(2, rat(3, 1), rat(-1, 1)).unwrap());
        let v = parse_value("7/3").unwrap();
        assert_eq!(v, RealValue::from_rational(&Basis::Rational, rat(7, 3)));
        let v = parse_value("2sqrt(8)/3").unwrap();
        assert_eq!(v, RealValue::quadratic(2, rat(0, 1), rat(4, 3)).unwrap());
        let v = parse_value("1/(1+sqrt(2))").unwrap();
        assert_eq!(v, RealValue::quadratic(2, rat(-1, 1), rat(1, 1)).unwrap());
        let v = parse_value("sqrt(2)*sqrt(2)").unwrap();
        assert_eq!(v.rational_value(), Some(&rat(2, 1)));
    }

    #[test]
    fn formal_from_mixed_radicals() {
        let vs = parse_values(&["sqrt(2)", "root(2,3)", "1/2+sqrt(3)"], 500).unwrap();
        assert_eq!(vs[0].basis().rank(), 4);
        assert_eq!(vs[1].basis().element_names(), vec!["1", "sqrt(2)", "root(2,3)", "sqrt(3)"]);
    }

    #[test]
    fn positional_errors() {
        assert_eq!(parse_value("1+").unwrap_err(), Error::Parse { pos: 2, msg: "unexpected end of input".into() });
        assert!(matches!(parse_value("sqrt(2)*sqrt(3)"), Err(Error::Parse { pos: 7, .. })));
        assert!(matches!(parse_value("2 $"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_value("1/0"), Err(Error::Parse { .. })));
        assert!(matches!(parse_value("cos(1)"), Err(Error::Parse { pos: 0, .. })));
    }
}
