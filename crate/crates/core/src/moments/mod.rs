//! Exact moments, Hankel determinants and moment-derived recurrence
//! coefficients.
//!
//! The moments of a Toda solution are the derivatives `c_n(t) = dⁿc₀/dtⁿ`.
//! They are produced exactly by differentiating `c₀` inside a closed
//! differential algebra and then evaluating, so the coefficients recovered
//! from them are independent of the closed forms in [`crate::toda`].
//!
//! ```
//! use std::sync::Arc;
//! use elliptic_toda::elliptic::EllipticContext;
//! use elliptic_toda::moments::{coeffs_from_moments, moments};
//! use elliptic_toda::toda::{u_general, TodaParams};
//!
//! let ctx = Arc::new(EllipticContext::from_decimal("0.7", "0.1", 40).unwrap());
//! let p = TodaParams::case_i(ctx.clone(), ctx.real(1.0)).unwrap();
//! let t = ctx.real(0.1);
//! let table = coeffs_from_moments(&moments(&p, &t, 10).unwrap()).unwrap();
//! let u3 = u_general(3, &t, &p).unwrap();
//! assert!(((&table.u[3] - &u3) / &u3).abs() < 1e-20);
//! ```

mod algebra;
mod hankel;
mod series;

use serde::{Deserialize, Serialize};

pub use algebra::{
    scaled_derivatives, CircularExpression, CircularKind, Expression, JacobiExpression, KPoly,
    RationalExpression,
};
pub use hankel::{
    cofactor_determinant, determinant, hankel_analysis, hankel_determinants, hankel_matrix,
    leading_minors, shifted_hankel, Field, HankelDeterminants, HankelPolicy,
};
pub use series::{
    e_generating, jfraction_eval, polynomial_coefficients, polynomial_derivative, polynomial_eval,
    polynomial_values, polynomial_values_complex, stieltjes_series, SeriesSum,
};

use crate::arith::Real;
use crate::error::{domain, Error, Result};
use crate::toda::{c0_eval, CaseTag, CoefficientTable, Provenance, TodaParams};

/// Where a moment sequence came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MomentSource {
    /// Exact derivatives of an elliptic `c₀`.
    Elliptic(CaseTag),
    /// Exact derivatives of a degenerate-family `c₀`.
    Degenerate(String),
    /// Power sums of a discrete measure.
    MeasureSum,
}

/// `c_0(t)..c_{len−1}(t)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MomentSequence {
    pub t: Real,
    pub values: Vec<Real>,
    pub source: MomentSource,
}

impl MomentSequence {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// The closed-algebra representation of `c₀` for a named case:
/// `c₀(t) = factor·E(λt)`.
pub fn c0_expression(p: &TodaParams) -> Result<(JacobiExpression, Real, Real)> {
    let ctx = &p.ctx;
    let one = Real::one(ctx.bits());
    Ok(match p.case_tag {
        CaseTag::CaseI => (JacobiExpression::monomial(0, -1, 0), p.scale(), one),
        CaseTag::CaseII => (JacobiExpression::monomial(0, -1, 1), p.scale(), one),
        CaseTag::SnFamily => (JacobiExpression::monomial(1, 0, 0), p.scale(), one),
        CaseTag::CnFamily => (JacobiExpression::monomial(0, 1, 0), p.scale(), one),
        CaseTag::DnFamily => (JacobiExpression::monomial(0, 0, 1), p.scale(), one),
        // −℘'(t) = 2s^{3/2}·cn·dn/sn³(√s·t)
        CaseTag::WdotFamily => {
            let factor = ctx.sqrt_s.powi(3) * 2;
            (
                JacobiExpression::monomial(-3, 1, 1),
                ctx.sqrt_s.clone(),
                factor,
            )
        }
        CaseTag::Generic => {
            return Err(Error::Unsupported(
                "exact moments are available for the named cases only".into(),
            ))
        }
    })
}

/// `c_0(t)..c_{count−1}(t)` by exact differentiation of `c₀`.
pub fn moments(p: &TodaParams, t: &Real, count: usize) -> Result<MomentSequence> {
    if count == 0 {
        return Err(domain("at least one moment is required"));
    }
    // Pole guard and the reference value in one go.
    c0_eval(t, p)?;
    let (expr, lambda, factor) = c0_expression(p)?;
    let values = scaled_derivatives(&expr, p.ctx.as_ref(), t, &lambda, &factor, None, count)?;
    Ok(MomentSequence {
        t: t.clone(),
        values,
        source: MomentSource::Elliptic(p.case_tag),
    })
}

/// `b_n`, `u_n` for `n ≤ n_max` from the Hankel determinants:
/// `u_n = D_{n−1}D_{n+1}/D_n²` and `b_n = S_{n+1}/D_{n+1} − S_n/D_n`, where
/// `S_n` is `D_n` with its last column advanced one moment.
/// Needs `2·n_max + 2` moments.
pub fn coeffs_from_moments_upto(
    m: &MomentSequence,
    n_max: usize,
    policy: HankelPolicy,
) -> Result<CoefficientTable> {
    let c = &m.values;
    if c.len() < 2 * n_max + 2 {
        return Err(domain(format!(
            "{} moments cannot determine coefficients up to n = {n_max}",
            c.len()
        )));
    }
    let d = hankel_analysis(&c[..2 * n_max + 1], policy);
    let mut b = Vec::with_capacity(n_max + 1);
    let mut u = Vec::with_capacity(n_max + 1);
    let mut ratio_prev = Real::zero(m.t.prec());
    for n in 0..=n_max {
        let dn = d.get(n)?;
        let dn1 = d.get(n + 1)?;
        let s_next = shifted_hankel(c, n + 1);
        let ratio = &s_next / dn1;
        b.push(&ratio - &ratio_prev);
        ratio_prev = ratio;
        u.push(if n == 0 {
            Real::zero(m.t.prec())
        } else {
            d.get(n - 1)? * dn1 / dn.square()
        });
    }
    Ok(CoefficientTable::from_sequences(
        b,
        u,
        m.t.clone(),
        Provenance::MomentDerived,
    ))
}

/// [`coeffs_from_moments_upto`] with the largest `n_max` the sequence allows
/// and the default policy.
pub fn coeffs_from_moments(m: &MomentSequence) -> Result<CoefficientTable> {
    if m.len() < 2 {
        return Err(domain("at least two moments are required"));
    }
    coeffs_from_moments_upto(m, (m.len() - 2) / 2, HankelPolicy::default())
}
