//! 2×2 matrices acting on the projective line: Möbius maps, Smith
//! factorization, quadratic stabilizers and the Pell–Fermat equation.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cfrac::{convergent_matrix, expand_periodic};
use crate::error::{Error, Result};
use crate::realnum::{int, Basis, RealValue};

/// `(a b / c d)` over ℚ with nonzero determinant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat2 {
    a: BigRational,
    b: BigRational,
    c: BigRational,
    d: BigRational,
}

impl Mat2 {
    pub fn new(a: BigRational, b: BigRational, c: BigRational, d: BigRational) -> Result<Mat2> {
        let m = Mat2 { a, b, c, d };
        if m.det().is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(m)
    }

    /// Panics on a singular matrix; intended for literals.
    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Mat2 {
        Mat2::new(int(a), int(b), int(c), int(d)).expect("singular matrix literal")
    }

    pub(crate) fn from_bigints(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Mat2 {
        Mat2 { a: int(a), b: int(b), c: int(c), d: int(d) }
    }

    pub fn identity() -> Mat2 {
        Mat2::from_ints(1, 0, 0, 1)
    }

    pub fn diag(m: impl Into<BigInt>, n: impl Into<BigInt>) -> Mat2 {
        Mat2::from_bigints(m.into(), BigInt::zero(), BigInt::zero(), n.into())
    }

    pub fn entries(&self) -> [&BigRational; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn det(&self) -> BigRational {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn trace(&self) -> BigRational {
        &self.a + &self.d
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2 {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }

    pub fn inverse(&self) -> Mat2 {
        let det = self.det();
        Mat2 { a: &self.d / &det, b: -(&self.b / &det), c: -(&self.c / &det), d: &self.a / &det }
    }

    pub fn pow(&self, k: i64) -> Mat2 {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        (0..k.unsigned_abs()).fold(Mat2::identity(), |acc, _| acc.mul(&base))
    }

    pub fn scale(&self, q: &BigRational) -> Mat2 {
        Mat2 { a: &self.a * q, b: &self.b * q, c: &self.c * q, d: &self.d * q }
    }

    pub fn is_integer(&self) -> bool {
        self.entries().iter().all(|e| e.is_integer())
    }

    pub fn int_entries(&self) -> Option<[BigInt; 4]> {
        self.is_integer().then(|| self.entries().map(|e| e.to_integer()))
    }

    /// Projective representative: coprime integer entries, first nonzero entry positive.
    pub fn projective(&self) -> Mat2 {
        let l = self.entries().iter().fold(BigInt::one(), |l, e| l.lcm(e.denom()));
        let ints = self.entries().map(|e| (e * int(l.clone())).to_integer());
        let mut g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if ints.iter().find(|x| !x.is_zero()).unwrap().is_negative() {
            g = -g;
        }
        let [a, b, c, d] = ints.map(|x| x / &g);
        Mat2::from_bigints(a, b, c, d)
    }

    pub fn projectively_eq(&self, o: &Mat2) -> bool {
        self.projective() == o.projective()
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {} / {} {})", self.a, self.b, self.c, self.d)
    }
}

/// `(a·x + b)/(c·x + d)`.
pub fn apply(m: &Mat2, x: &RealValue) -> Result<RealValue> {
    let num = x.scale(&m.a).add_rational(&m.b);
    let den = x.scale(&m.c).add_rational(&m.d);
    if den.is_zero() {
        return Err(Error::PoleHit);
    }
    num.div(&den)
}

fn egcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    if !a.is_zero() && (b % a).is_zero() {
        return (a.clone(), BigInt::one(), BigInt::zero());
    }
    let e = a.extended_gcd(b);
    (e.gcd, e.x, e.y)
}

type IMat = [[BigInt; 2]; 2];

fn imul(x: &IMat, y: &IMat) -> IMat {
    let e = |i: usize, j: usize| &x[i][0] * &y[0][j] + &x[i][1] * &y[1][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn iinv_unimodular(x: &IMat) -> IMat {
    let det = &x[0][0] * &x[1][1] - &x[0][1] * &x[1][0];
    [[&x[1][1] * &det, -&x[0][1] * &det], [-&x[1][0] * &det, &x[0][0] * &det]]
}

fn imat(m: &IMat) -> Mat2 {
    Mat2::from_bigints(m[0][0].clone(), m[0][1].clone(), m[1][0].clone(), m[1][1].clone())
}

/// `M = U · diag(m, 1) · V` with `U, V ∈ SL₂(ℤ)`.
///
/// Since `det U = det V = 1`, `m = det M`; it carries the sign of the
/// determinant and `|m| = |det M|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithFactor {
    pub u: Mat2,
    pub m: BigInt,
    pub v: Mat2,
}

pub fn smith_factor(m: &Mat2) -> Result<SmithFactor> {
    let e = m.int_entries().ok_or(Error::NonIntegerMatrix)?;
    if m.det().is_zero() {
        return Err(Error::SingularMatrix);
    }
    if !e.iter().fold(BigInt::zero(), |g, x| g.gcd(x)).is_one() {
        return Err(Error::NotCoprime);
    }
    let id = || -> IMat { [[BigInt::one(), BigInt::zero()], [BigInt::zero(), BigInt::one()]] };
    let [a, b, c, d] = e;
    let mut x: IMat = [[a, b], [c, d]];
    let (mut l, mut r) = (id(), id());
    loop {
        if !x[1][0].is_zero() {
            let (g, s, t) = egcd(&x[0][0], &x[1][0]);
            let row: IMat = [[s, t], [-(&x[1][0] / &g), &x[0][0] / &g]];
            x = imul(&row, &x);
            l = imul(&row, &l);
        }
        if !x[0][1].is_zero() {
            let (g, s, t) = egcd(&x[0][0], &x[0][1]);
            let col: IMat = [[s, -(&x[0][1] / &g)], [t, &x[0][0] / &g]];
            x = imul(&x, &col);
            r = imul(&r, &col);
            continue;
        }
        if !x[1][0].is_zero() {
            continue;
        }
        if (&x[1][1] % &x[0][0]).is_zero() {
            break;
        }
        let add: IMat = [[BigInt::one(), BigInt::one()], [BigInt::zero(), BigInt::one()]];
        x = imul(&add, &x);
        l = imul(&add, &l);
    }
    // l·M·r = diag(d1, d2) with d1 = ±1
    let (d1, d2) = (x[0][0].clone(), x[1][1].clone());
    let j: IMat = [[BigInt::zero(), BigInt::one()], [BigInt::one(), BigInt::zero()]];
    let mut p = imul(&iinv_unimodular(&l), &j);
    let mut q = imul(&[[BigInt::one(), BigInt::zero()], [BigInt::zero(), d1]], &imul(&j, &iinv_unimodular(&r)));
    let flip: IMat = [[BigInt::one(), BigInt::zero()], [BigInt::zero(), -BigInt::one()]];
    let det = |y: &IMat| &y[0][0] * &y[1][1] - &y[0][1] * &y[1][0];
    if det(&p).is_negative() {
        p = imul(&p, &flip);
        q = imul(&flip, &q);
    }
    let mut mm = d2;
    if det(&q).is_negative() {
        let neg: IMat = [[-BigInt::one(), BigInt::zero()], [BigInt::zero(), BigInt::one()]];
        q = imul(&neg, &q);
        mm = -mm;
    }
    Ok(SmithFactor { u: imat(&p), m: mm, v: imat(&q) })
}

/// A solution of `x² − s²Δ = 4·sign·m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PellSolution {
    pub x: BigInt,
    pub s: BigInt,
    pub sign: i8,
}

fn check_disc(disc: &BigInt) -> Result<()> {
    let r = disc.mod_floor(&BigInt::from(4));
    if !disc.is_positive() || !(r.is_zero() || r.is_one()) || disc.sqrt().pow(2) == *disc {
        return Err(Error::InvalidArgument(format!("Δ = {disc} must be a positive non-square ≡ 0, 1 mod 4")));
    }
    Ok(())
}

/// `(σ + √Δ)/2` with `σ ≡ Δ mod 2`: the generator of the order of discriminant Δ.
fn order_generator(disc: &BigInt) -> Result<RealValue> {
    let (f, core) = crate::cfrac::square_split(disc);
    let sigma = disc.mod_floor(&BigInt::from(2));
    let core = u64::try_from(core).map_err(|_| Error::InvalidArgument("Δ too large".into()))?;
    RealValue::quadratic(core, BigRational::new(sigma, 2.into()), BigRational::new(f, 2.into()))
}

/// The PGL₂(ℤ) stabilizer generator of a quadratic surd, read off its
/// continued fraction: `C·P·C⁻¹` with `C` the preperiod convergent and `P`
/// the primitive period product (determinant ±1).
pub fn pgl2_stabilizer(x: &RealValue) -> Result<Mat2> {
    let e = expand_periodic(x)?;
    if e.is_finite() {
        return Err(Error::RationalInput);
    }
    let c = convergent_matrix(e.preperiod());
    Ok(c.mul(&convergent_matrix(e.period())).mul(&c.inverse()))
}

/// Fundamental solution `(u, v)` of `u² − v²Δ = 4` with `u, v > 0`.
pub fn pell_unit(disc: &BigInt) -> Result<(BigInt, BigInt)> {
    check_disc(disc)?;
    let w = order_generator(disc)?;
    let g = pgl2_stabilizer(&w)?;
    let f = if g.det().is_negative() { g.mul(&g) } else { g };
    let [a, _, c, d] = f.int_entries().expect("integral stabilizer");
    Ok((a + d, c))
}

/// Multiplies `(x + s√Δ)/2` by `((u + v√Δ)/2)^(±1)`.
fn unit_step(x: &BigInt, s: &BigInt, u: &BigInt, v: &BigInt, disc: &BigInt, forward: bool) -> (BigInt, BigInt) {
    let v = if forward { v.clone() } else { -v };
    ((x * u + s * &v * disc) / 2, (x * &v + s * u) / 2)
}

fn gamma_positive(x: &BigInt, s: &BigInt, disc: &BigInt) -> bool {
    if s.is_zero() || x.signum() == s.signum() || x.is_zero() {
        return x.is_positive() || s.is_positive();
    }
    if x * x > s * s * disc {
        x.is_positive()
    } else {
        s.is_positive()
    }
}

/// The class representative with `x > 0`, `s > 0` and `s` minimal.
fn canonical_solution(x: &BigInt, s: &BigInt, unit: &(BigInt, BigInt), disc: &BigInt) -> (BigInt, BigInt) {
    let (u, v) = unit;
    let (mut x, mut s) = if gamma_positive(x, s, disc) { (x.clone(), s.clone()) } else { (-x, -s) };
    while !(x.is_positive() && s.is_positive()) {
        (x, s) = unit_step(&x, &s, u, v, disc, true);
    }
    loop {
        let (px, ps) = unit_step(&x, &s, u, v, disc, false);
        if px.is_positive() && ps.is_positive() {
            (x, s) = (px, ps);
        } else {
            return (x, s);
        }
    }
}

/// Representatives of the classes of solutions of `x² − s²Δ = ±4m` under
/// multiplication by `±ε^k`, `ε` the fundamental unit of discriminant Δ.
///
/// Each solution gives `γ = (x + s√Δ)/2` of norm `±m` in the order `ℤ[ω]`,
/// so the classes come from the principal ideals of index `m`: for each
/// ideal `aℤ + (b + dω)ℤ` in Hermite form, a generator is read off a
/// PGL₂(ℤ) matrix taking `ω` to `(b + dω)/a`.
pub fn pell_fundamental(disc: &BigInt, m: &BigInt) -> Result<Vec<PellSolution>> {
    check_disc(disc)?;
    if !m.is_positive() {
        return Err(Error::InvalidArgument("m must be positive".into()));
    }
    let unit = pell_unit(disc)?;
    let omega = order_generator(disc)?;
    let (f, _) = crate::cfrac::square_split(disc);
    let sigma = disc.mod_floor(&BigInt::from(2));
    let k: BigInt = (disc - &sigma) / 4;
    let g = pgl2_stabilizer(&omega)?;
    let eta = if g.det().is_negative() {
        let [a, _, c, d] = g.int_entries().expect("integral stabilizer");
        Some((a + d, c))
    } else {
        None
    };
    let mut out: Vec<PellSolution> = Vec::new();
    let mut push = |x: BigInt, s: BigInt| {
        let n: BigInt = &x * &x - &s * &s * disc;
        let sign = if n.is_positive() { 1 } else { -1 };
        let (cx, cs) = canonical_solution(&x, &s, &unit, disc);
        let sol = PellSolution { x: cx, s: cs, sign };
        if !out.contains(&sol) {
            out.push(sol);
        }
    };
    let mut d = BigInt::one();
    while &d <= m {
        if m.is_multiple_of(&d) {
            let a = m / &d;
            let mut b = BigInt::zero();
            while b < a {
                let inside = |x: &BigInt, y: &BigInt| y.is_multiple_of(&d) && (x - &b * (y / &d)).is_multiple_of(&a);
                // closed under ω: ω·a = aω and ω·(b + dω) = dk + (b + dσ)ω
                if inside(&BigInt::zero(), &a) && inside(&(&d * &k), &(&b + &d * &sigma)) {
                    let beta = omega.scale(&BigRational::new(d.clone(), a.clone())).add_rational(&BigRational::new(b.clone(), a.clone()));
                    if let Some(w) = crate::cfrac::tail_equivalence(&omega, &beta)? {
                        let [_, _, r, t] = w.entries();
                        let gamma = RealValue::from_rational(omega.basis(), int(a.clone())).div(&omega.scale(r).add_rational(t))?;
                        let (g0, g1) = (&gamma.coords()[0], &gamma.coords()[1]);
                        let x = (g0 * int(2)).to_integer();
                        let s = (g1 * int(2) / int(f.clone())).to_integer();
                        if let Some((eu, ev)) = &eta {
                            push((&x * eu + &s * ev * disc) / 2, (&x * ev + &s * eu) / 2);
                        }
                        push(x, s);
                    }
                }
                b += 1;
            }
        }
        d += 1;
    }
    out.sort_by(|a, b| (a.s.clone(), a.x.clone(), a.sign).cmp(&(b.s.clone(), b.x.clone(), b.sign)));
    Ok(out)
}

fn stabilizer_combination(x: &RealValue, t: &BigRational, s: &BigRational) -> Result<Mat2> {
    let q = x.minimal_quadratic()?;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let (a, b, c) = (int(q.a), int(q.b), int(q.c));
    let m = Mat2 {
        a: t - s * &b * &half,
        b: -(s * &c),
        c: s * &a,
        d: t + s * &b * &half,
    };
    if m.det().is_zero() {
        return Err(Error::SingularResult);
    }
    Ok(m)
}

/// `t·I + s·(−b/2  −c / a  b/2)` for the minimal quadratic `(a, b, c)` of `x`.
pub fn rational_stabilizer_element(x: &RealValue, t: &BigRational, s: &BigRational) -> Result<Mat2> {
    if t.is_zero() && s.is_zero() {
        return Err(Error::InvalidArgument("(t, s) must be nonzero".into()));
    }
    stabilizer_combination(x, t, s)
}

/// The primitive hyperbolic `F ∈ SL₂(ℤ)` with positive trace whose
/// attracting fixed point is `x`.
pub fn stabilizer_matrix(x: &RealValue) -> Result<Mat2> {
    let q = x.minimal_quadratic()?;
    let (u, v) = pell_unit(&q.disc)?;
    let Basis::Quadratic(_) = x.basis() else { unreachable!() };
    let s = if x.coords()[1].is_positive() { v } else { -v };
    let f = stabilizer_combination(x, &BigRational::new(u, BigInt::from(2)), &int(s))?;
    if !f.is_integer() {
        return Err(Error::NonIntegerMatrix);
    }
    Ok(f)
}
