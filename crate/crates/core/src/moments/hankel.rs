//! Hankel determinants by fraction-free elimination.

use rug::Rational;

use crate::arith::{bits_to_digits, Real};
use crate::error::{Degeneracy, Error, Result};

/// The arithmetic the elimination needs. Implemented for [`Real`] and for
/// exact rationals.
pub trait Field: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_exact_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn div(&self, other: &Self) -> Self;
}

impl Field for Real {
    fn zero_like(&self) -> Real {
        Real::zero(self.prec())
    }
    fn one_like(&self) -> Real {
        Real::one(self.prec())
    }
    fn is_exact_zero(&self) -> bool {
        self.is_zero()
    }
    fn add(&self, other: &Real) -> Real {
        self + other
    }
    fn sub(&self, other: &Real) -> Real {
        self - other
    }
    fn mul(&self, other: &Real) -> Real {
        self * other
    }
    fn div(&self, other: &Real) -> Real {
        self / other
    }
}

impl Field for Rational {
    fn zero_like(&self) -> Rational {
        Rational::new()
    }
    fn one_like(&self) -> Rational {
        Rational::from(1)
    }
    fn is_exact_zero(&self) -> bool {
        *self == 0
    }
    fn add(&self, other: &Rational) -> Rational {
        Rational::from(self + other)
    }
    fn sub(&self, other: &Rational) -> Rational {
        Rational::from(self - other)
    }
    fn mul(&self, other: &Rational) -> Rational {
        Rational::from(self * other)
    }
    fn div(&self, other: &Rational) -> Rational {
        Rational::from(self / other)
    }
}

/// Leading principal minors `D_1..D_k` of a square matrix by Bareiss
/// elimination without pivoting. Stops early (returning fewer minors) when a
/// leading minor is exactly zero; the zero minor is the last entry.
pub fn leading_minors<F: Field>(mut m: Vec<Vec<F>>) -> Vec<F> {
    let n = m.len();
    let mut out = Vec::with_capacity(n);
    if n == 0 {
        return out;
    }
    let mut prev = m[0][0].one_like();
    for k in 0..n {
        let pivot = m[k][k].clone();
        out.push(pivot.clone());
        if pivot.is_exact_zero() {
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].mul(&pivot).sub(&m[i][k].mul(&m[k][j])).div(&prev);
                m[i][j] = v;
            }
        }
        prev = pivot;
    }
    out
}

/// Determinant by Bareiss elimination with row exchanges.
pub fn determinant<F: Field>(mut m: Vec<Vec<F>>) -> F {
    let n = m.len();
    if n == 0 {
        panic!("determinant of an empty matrix");
    }
    let mut sign = false;
    let mut prev = m[0][0].one_like();
    for k in 0..n {
        if m[k][k].is_exact_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_exact_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = !sign;
                }
                None => return m[0][0].zero_like(),
            }
        }
        let pivot = m[k][k].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].mul(&pivot).sub(&m[i][k].mul(&m[k][j])).div(&prev);
                m[i][j] = v;
            }
        }
        prev = pivot;
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        d.zero_like().sub(&d)
    } else {
        d
    }
}

/// Determinant by cofactor expansion along the first row (for small checks).
pub fn cofactor_determinant<F: Field>(m: &[Vec<F>]) -> F {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = m[0][0].zero_like();
    for j in 0..n {
        let minor: Vec<Vec<F>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = m[0][j].mul(&cofactor_determinant(&minor));
        acc = if j % 2 == 0 {
            acc.add(&term)
        } else {
            acc.sub(&term)
        };
    }
    acc
}

/// The `n×n` Hankel matrix `(c_{i+j})`, with the last column advanced by
/// `shift` moments.
pub fn hankel_matrix(c: &[Real], n: usize, shift: usize) -> Vec<Vec<Real>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| c[i + j + if j + 1 == n { shift } else { 0 }].clone())
                .collect()
        })
        .collect()
}

/// How many significant digits a determinant must keep to be reported.
#[derive(Debug, Clone, Copy)]
pub struct HankelPolicy {
    pub min_significant_digits: u32,
}

impl Default for HankelPolicy {
    fn default() -> Self {
        HankelPolicy {
            min_significant_digits: 12,
        }
    }
}

/// `D_0..D_N` with a per-determinant estimate of the digits lost to
/// cancellation (log10 of the Hadamard bound over |D_n|).
#[derive(Debug, Clone)]
pub struct HankelDeterminants {
    pub values: Vec<Real>,
    pub lost_digits: Vec<f64>,
    pub working_digits: u32,
    /// First index that failed the policy, and why.
    pub stop: Option<(usize, Degeneracy)>,
}

impl HankelDeterminants {
    /// `D_n`, or the degeneracy that stopped the computation before `n`.
    pub fn get(&self, n: usize) -> Result<&Real> {
        match self.values.get(n) {
            Some(v) => Ok(v),
            None => {
                let (index, kind) = self.stop.unwrap_or((n, Degeneracy::PrecisionExhausted));
                Err(Error::DegenerateHankel { index, kind })
            }
        }
    }
}

/// Log10 of a bound on `|D_n|` for the leading `n×n` block. When the block
/// satisfies the Cauchy–Schwarz pattern of a positive measure
/// (`c_{i+j}² ≤ c_{2i}c_{2j}`) the diagonal product bounds the determinant and
/// tracks the real conditioning closely; otherwise the row-norm Hadamard bound
/// is used.
fn hadamard_log10(c: &[Real], n: usize) -> f64 {
    let diag: Vec<f64> = (0..n).map(|i| c[2 * i].log10_abs()).collect();
    let positive_pattern = (0..n).all(|i| c[2 * i] > 0.0)
        && (0..n).all(|i| (0..n).all(|j| 2.0 * c[i + j].log10_abs() <= diag[i] + diag[j] + 1e-6));
    if positive_pattern {
        return diag.iter().sum();
    }
    (0..n)
        .map(|i| {
            let row: Real = (0..n)
                .map(|j| c[i + j].square())
                .fold(Real::zero(c[0].prec()), |a, b| a + b);
            0.5 * row.log10_abs()
        })
        .sum()
}

/// Classifies and truncates a list of minors under the policy.
fn analyse(c: &[Real], minors: Vec<Real>, policy: HankelPolicy) -> HankelDeterminants {
    let working = bits_to_digits(c[0].prec());
    let budget = f64::from(working.saturating_sub(policy.min_significant_digits));
    let mut values = vec![Real::one(c[0].prec())];
    let mut lost = vec![0.0];
    let mut stop = None;
    for (i, d) in minors.into_iter().enumerate() {
        let n = i + 1;
        let loss = if d.is_zero() {
            f64::INFINITY
        } else {
            hadamard_log10(c, n) - d.log10_abs()
        };
        if loss > budget {
            // A sudden collapse after well-conditioned minors is a true zero;
            // a gradual climb into the budget is exhausted precision.
            let prev = *lost.last().unwrap_or(&0.0);
            let kind = if loss > f64::from(working) - 3.0 && prev < budget / 2.0 {
                Degeneracy::Zero
            } else {
                Degeneracy::PrecisionExhausted
            };
            stop = Some((n, kind));
            break;
        }
        values.push(d);
        lost.push(loss.max(0.0));
    }
    HankelDeterminants {
        values,
        lost_digits: lost,
        working_digits: working,
        stop,
    }
}

/// All Hankel determinants the moments `c_0..c_{2N−2}` determine, with the
/// conditioning analysis.
pub fn hankel_analysis(c: &[Real], policy: HankelPolicy) -> HankelDeterminants {
    if c.is_empty() {
        return HankelDeterminants {
            values: vec![],
            lost_digits: vec![],
            working_digits: 0,
            stop: None,
        };
    }
    let n = c.len().div_ceil(2);
    analyse(c, leading_minors(hankel_matrix(c, n, 0)), policy)
}

/// `D_0..D_N` under the default policy; fails on the first degenerate
/// determinant.
pub fn hankel_determinants(c: &[Real]) -> Result<Vec<Real>> {
    let h = hankel_analysis(c, HankelPolicy::default());
    if let Some((index, kind)) = h.stop {
        return Err(Error::DegenerateHankel { index, kind });
    }
    Ok(h.values)
}

/// `S_n`: the `n×n` Hankel determinant with its last column advanced one
/// moment (`S_0 = 0`).
pub fn shifted_hankel(c: &[Real], n: usize) -> Real {
    if n == 0 {
        return Real::zero(c[0].prec());
    }
    determinant(hankel_matrix(c, n, 1))
}
