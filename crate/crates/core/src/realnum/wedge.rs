//! Exterior products `x ∧ y` over ℚ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Basis, RealValue};
use crate::error::Result;

/// An element of `Λ²_ℚ` of the basis' coordinate space, as the antisymmetric
/// matrix `W[i][j]` of coefficients of `e_i ∧ e_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WedgeValue {
    pub basis: Basis,
    pub matrix: Vec<Vec<BigRational>>,
}

impl WedgeValue {
    pub fn zero(basis: &Basis) -> WedgeValue {
        let r = basis.rank();
        WedgeValue { basis: basis.clone(), matrix: vec![vec![BigRational::zero(); r]; r] }
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(|x| x.is_zero())
    }

    /// Coefficient of `1 ∧ √D` (or of `e_0 ∧ e_1` in general).
    pub fn coefficient(&self) -> BigRational {
        self.matrix.get(0).and_then(|r| r.get(1)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, other: &WedgeValue) -> WedgeValue {
        assert_eq!(self.basis, other.basis, "wedge values of different bases");
        let matrix = self.matrix.iter().zip(&other.matrix).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect()).collect();
        WedgeValue { basis: self.basis.clone(), matrix }
    }

    pub fn scale(&self, q: &BigRational) -> WedgeValue {
        WedgeValue { basis: self.basis.clone(), matrix: self.matrix.iter().map(|r| r.iter().map(|x| x * q).collect()).collect() }
    }

    /// Representative of the class under multiplication by nonzero rationals:
    /// an integer matrix with coprime entries whose first nonzero upper
    /// entry is positive.
    pub fn projective(&self) -> WedgeValue {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.matrix.iter().flatten().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        let ints: Vec<Vec<BigInt>> =
            self.matrix.iter().map(|r| r.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect()).collect();
        let g = ints.iter().flatten().fold(BigInt::zero(), |g, x| g.gcd(x));
        let r = ints.len();
        let first = (0..r).flat_map(|i| (i + 1..r).map(move |j| (i, j))).map(|(i, j)| &ints[i][j]).find(|x| !x.is_zero()).unwrap();
        let g = if first.is_negative() { -g } else { g };
        let matrix = ints.iter().map(|row| row.iter().map(|x| BigRational::from_integer(x / &g)).collect()).collect();
        WedgeValue { basis: self.basis.clone(), matrix }
    }
}

/// `x ∧ y`, with `W[i][j] = x_i y_j − x_j y_i`.
pub fn wedge(x: &RealValue, y: &RealValue) -> Result<WedgeValue> {
    x.same_basis(y)?;
    let (a, b) = (x.coords(), y.coords());
    let r = a.len();
    let matrix = (0..r).map(|i| (0..r).map(|j| &a[i] * &b[j] - &a[j] * &b[i]).collect()).collect();
    Ok(WedgeValue { basis: x.basis().clone(), matrix })
}
