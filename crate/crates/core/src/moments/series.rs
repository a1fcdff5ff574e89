//! Orthogonal polynomials, the Stieltjes series and the J-fraction.

use crate::arith::{Cplx, Real};
use crate::error::{domain, Error, Result};
use crate::toda::{c0_eval, CoefficientTable, TodaParams};

fn check_degree(table: &CoefficientTable, n: usize) -> Result<()> {
    if n > table.n_max + 1 {
        return Err(domain(format!(
            "degree {n} needs coefficients up to index {} (table has {})",
            n - 1,
            table.n_max
        )));
    }
    Ok(())
}

/// `P_0(x)..P_n(x)` from `P_{k+1} = (x − b_k)P_k − u_k P_{k−1}`.
pub fn polynomial_values(table: &CoefficientTable, x: &Real, n: usize) -> Result<Vec<Real>> {
    check_degree(table, n)?;
    let mut out = vec![Real::one(x.prec())];
    let mut prev = Real::zero(x.prec());
    for k in 0..n {
        let next = (x - &table.b[k]) * &out[k] - &table.u[k] * &prev;
        prev = out[k].clone();
        out.push(next);
    }
    Ok(out)
}

/// Complex-argument version of [`polynomial_values`].
pub fn polynomial_values_complex(
    table: &CoefficientTable,
    z: &Cplx,
    n: usize,
) -> Result<Vec<Cplx>> {
    check_degree(table, n)?;
    let mut out = vec![Cplx::from_real(&Real::one(z.prec()))];
    let mut prev = Cplx::zero(z.prec());
    for k in 0..n {
        let next = (z - &table.b[k]) * &out[k] - &(&prev * &table.u[k]);
        prev = out[k].clone();
        out.push(next);
    }
    Ok(out)
}

/// `P_n(x)`.
pub fn polynomial_eval(table: &CoefficientTable, x: &Real, n: usize) -> Result<Real> {
    Ok(polynomial_values(table, x, n)?.pop().expect("at least P_0"))
}

/// `P'_n(x)` by differentiating the recurrence.
pub fn polynomial_derivative(table: &CoefficientTable, x: &Real, n: usize) -> Result<Real> {
    let p = polynomial_values(table, x, n)?;
    let mut d = vec![Real::zero(x.prec()); n + 1];
    for k in 0..n {
        let prev = if k == 0 {
            Real::zero(x.prec())
        } else {
            d[k - 1].clone()
        };
        d[k + 1] = &p[k] + (x - &table.b[k]) * &d[k] - &table.u[k] * &prev;
    }
    Ok(d.pop().expect("at least P'_0"))
}

/// Monomial coefficients of `P_0..P_n` (lowest degree first), by synthetic
/// expansion of the recurrence.
pub fn polynomial_coefficients(table: &CoefficientTable, n: usize) -> Result<Vec<Vec<Real>>> {
    check_degree(table, n)?;
    let bits = table.t.prec();
    let mut out: Vec<Vec<Real>> = vec![vec![Real::one(bits)]];
    for k in 0..n {
        let mut next = vec![Real::zero(bits); k + 2];
        for (i, c) in out[k].iter().enumerate() {
            next[i + 1] += c;
            next[i] -= &(&table.b[k] * c);
        }
        if k > 0 {
            for (i, c) in out[k - 1].iter().enumerate() {
                next[i] -= &(&table.u[k] * c);
            }
        }
        out.push(next);
    }
    Ok(out)
}

/// A truncated series and the size of its last term.
#[derive(Debug, Clone)]
pub struct SeriesSum {
    pub value: Cplx,
    pub last_term: Real,
    /// The terms were still growing at the truncation point.
    pub diverging: bool,
}

/// `F(z) = Σ_{j<terms} c_j z^{−j−1}`.
pub fn stieltjes_series(c: &[Real], z: &Cplx, terms: usize) -> Result<SeriesSum> {
    if terms == 0 || terms > c.len() {
        return Err(domain(format!(
            "{terms} terms requested from {} moments",
            c.len()
        )));
    }
    if z.is_zero() {
        return Err(domain("the Stieltjes series is an expansion about z = ∞"));
    }
    let inv = z.recip();
    let mut power = inv.clone();
    let mut acc = Cplx::zero(z.prec());
    let mut last = Real::zero(z.prec());
    let mut before_last = Real::zero(z.prec());
    for cj in c.iter().take(terms) {
        let term = &power * cj;
        before_last = last;
        last = term.abs();
        acc += &term;
        power *= &inv;
    }
    let diverging = terms > 1 && last > before_last;
    Ok(SeriesSum {
        value: acc,
        last_term: last,
        diverging,
    })
}

/// The exponential generating function `Φ(p; t) = c₀(t + p)`.
pub fn e_generating(p: &TodaParams, t: &Real, shift: &Real) -> Result<Real> {
    c0_eval(&(t + shift), p)
}

/// The depth-`depth` J-fraction
/// `1/(z − b_0 − u_1/(z − b_1 − … − u_{depth−1}/(z − b_{depth−1})))`,
/// evaluated from the bottom up. It matches `F(z)/c₀` to `2·depth` terms.
pub fn jfraction_eval(table: &CoefficientTable, z: &Cplx, depth: usize) -> Result<Cplx> {
    if depth == 0 || depth > table.n_max + 1 {
        return Err(domain(format!(
            "depth {depth} outside 1..={}",
            table.n_max + 1
        )));
    }
    let tiny = Real::epsilon(z.prec()) * 16;
    let mut f = z - &table.b[depth - 1];
    for j in (0..depth - 1).rev() {
        if f.abs() < tiny {
            return Err(Error::ZeroDenominator { depth: j + 1 });
        }
        f = z - &table.b[j] - &(f.recip() * &table.u[j + 1]);
    }
    if f.abs() < tiny {
        return Err(Error::ZeroDenominator { depth: 0 });
    }
    Ok(f.recip())
}
