//! Canonical forms for ℤ-modules and ℚ-subspaces spanned by finitely many values.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Basis, RealValue};
use crate::error::Result;

/// A finitely generated ℤ-submodule of the basis' coordinate space, stored as
/// `(1/denominator) · rows` with `rows` in row Hermite normal form and the
/// denominator minimal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZModule {
    pub basis: Basis,
    pub denominator: BigInt,
    pub rows: Vec<Vec<BigInt>>,
}

/// A ℚ-subspace stored in reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSpan {
    pub basis: Basis,
    pub rows: Vec<Vec<BigRational>>,
}

fn embed_all(basis: &Basis, values: &[RealValue]) -> Result<Vec<RealValue>> {
    values.iter().map(|v| v.embed(basis)).collect()
}

/// Row Hermite normal form: positive pivots, entries above each pivot reduced
/// into `[0, pivot)`, zero rows dropped.
pub fn hermite_normal_form(mut rows: Vec<Vec<BigInt>>, ncols: usize) -> Vec<Vec<BigInt>> {
    let mut top = 0;
    for col in 0..ncols {
        loop {
            let pivot = (top..rows.len())
                .filter(|&i| !rows[i][col].is_zero())
                .min_by(|&i, &j| rows[i][col].abs().cmp(&rows[j][col].abs()));
            let Some(p) = pivot else { break };
            rows.swap(top, p);
            let mut done = true;
            for i in top + 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = rows[i][col].div_floor(&rows[top][col]);
                let pivot_row = rows[top].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
                if !rows[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if top < rows.len() && !rows[top][col].is_zero() {
            if rows[top][col].is_negative() {
                rows[top].iter_mut().for_each(|x| *x = -&*x);
            }
            let pivot_row = rows[top].clone();
            for i in 0..top {
                let q = rows[i][col].div_floor(&pivot_row[col]);
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
            }
            top += 1;
        }
    }
    rows.truncate(top);
    rows
}

impl ZModule {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Generators as values.
    pub fn generators(&self) -> Vec<RealValue> {
        let den = BigRational::from_integer(self.denominator.clone());
        self.rows
            .iter()
            .map(|r| {
                let coords = r.iter().map(|x| BigRational::from_integer(x.clone()) / &den).collect();
                RealValue::make(&self.basis, coords).expect("rank matches")
            })
            .collect()
    }

    pub fn contains(&self, v: &RealValue) -> bool {
        let Ok(v) = v.embed(&self.basis) else {
            return false;
        };
        let mut gens = self.generators();
        gens.push(v);
        zmodule_of(&self.basis, &gens).map(|m| &m == self).unwrap_or(false)
    }

    pub fn is_submodule_of(&self, other: &ZModule) -> bool {
        self.generators().iter().all(|g| other.contains(g))
    }

    /// The ℚ-span of the module.
    pub fn tensor_q(&self) -> QSpan {
        qspan_of(&self.basis, &self.generators()).expect("shared basis")
    }
}

/// Canonical ℤ-module generated by `values`.
pub fn zmodule_of(basis: &Basis, values: &[RealValue]) -> Result<ZModule> {
    let values = &embed_all(basis, values)?;
    let r = basis.rank();
    let mut l = BigInt::one();
    for v in values {
        for c in v.coords() {
            l = l.lcm(c.denom());
        }
    }
    let rows: Vec<Vec<BigInt>> =
        values.iter().map(|v| v.coords().iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect()).collect();
    let h = hermite_normal_form(rows, r);
    let content = h.iter().flatten().fold(BigInt::zero(), |g, x| g.gcd(x));
    if content.is_zero() {
        return Ok(ZModule { basis: basis.clone(), denominator: BigInt::one(), rows: Vec::new() });
    }
    let g = l.gcd(&content);
    let rows = h.into_iter().map(|row| row.into_iter().map(|x| x / &g).collect()).collect();
    Ok(ZModule { basis: basis.clone(), denominator: l / g, rows })
}

/// Reduced row echelon form over ℚ, zero rows dropped.
pub fn rref(mut rows: Vec<Vec<BigRational>>, ncols: usize) -> Vec<Vec<BigRational>> {
    let mut top = 0;
    for col in 0..ncols {
        let Some(p) = (top..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(top, p);
        let inv = rows[top][col].recip();
        rows[top].iter_mut().for_each(|x| *x *= &inv);
        let pivot_row = rows[top].clone();
        for i in 0..rows.len() {
            if i != top && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        top += 1;
    }
    rows.truncate(top);
    rows
}

impl QSpan {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, v: &RealValue) -> bool {
        let Ok(v) = v.embed(&self.basis) else {
            return false;
        };
        let mut rows = self.rows.clone();
        rows.push(v.coords().to_vec());
        rref(rows, self.basis.rank()).len() == self.dim()
    }

    pub fn is_subspace_of(&self, other: &QSpan) -> bool {
        self.basis == other.basis && self.vectors().iter().all(|v| other.contains(v))
    }

    pub fn vectors(&self) -> Vec<RealValue> {
        self.rows.iter().map(|r| RealValue::make(&self.basis, r.clone()).expect("rank matches")).collect()
    }
}

/// Canonical ℚ-span of `values`.
pub fn qspan_of(basis: &Basis, values: &[RealValue]) -> Result<QSpan> {
    let values = &embed_all(basis, values)?;
    let rows = values.iter().map(|v| v.coords().to_vec()).collect();
    Ok(QSpan { basis: basis.clone(), rows: rref(rows, basis.rank()) })
}
