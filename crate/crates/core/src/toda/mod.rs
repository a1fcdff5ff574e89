//! Closed-form solutions of the restricted Toda chain
//! `u̇_n = u_n(b_n − b_{n−1})`, `ḃ_n = u_{n+1} − u_n`, `u_0 = 0`.
//!
//! ```
//! use std::sync::Arc;
//! use elliptic_toda::elliptic::EllipticContext;
//! use elliptic_toda::toda::{u_general, b_general, TodaParams};
//!
//! let ctx = Arc::new(EllipticContext::from_decimal("0.7", "0.1", 30).unwrap());
//! let p = TodaParams::case_i(ctx.clone(), ctx.real(1.0)).unwrap();
//! let t0 = ctx.real(0.0);
//! // u_1(0) = w²(e1 − e3)
//! let u1 = u_general(1, &t0, &p).unwrap();
//! assert!((u1 - 1.5).abs() < 1e-25);
//! assert!(b_general(3, &t0, &p).unwrap().abs() < 1e-25);
//! ```

mod closed;
mod forms;
mod params;
mod special;

use serde::{Deserialize, Serialize};

pub use closed::{
    b_complex, b_general, b_lattice, c0_complex, c0_eval, h_closed, h_complex, hankel_closed,
    hankel_complex, u_general, u_lattice, u_sigma,
};
pub use params::{CaseTag, TodaParams};
pub use special::{
    coeffs, family_coeffs, rational_time_coeffs, theorem2_coeffs, wdot_coeffs, FamilyCoeffs,
    RationalTime,
};

use crate::arith::Real;
use crate::error::Result;

/// Where a coefficient table came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    ClosedForm,
    MomentDerived,
}

/// `b_0..b_{n_max}` and `u_0..u_{n_max}` at one time.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoefficientTable {
    pub n_max: usize,
    pub b: Vec<Real>,
    pub u: Vec<Real>,
    pub t: Real,
    pub provenance: Provenance,
}

impl CoefficientTable {
    /// A table from explicit sequences. `u[0]` is forced to zero.
    pub fn from_sequences(
        mut b: Vec<Real>,
        mut u: Vec<Real>,
        t: Real,
        provenance: Provenance,
    ) -> CoefficientTable {
        let n_max = b.len().min(u.len()).saturating_sub(1);
        b.truncate(n_max + 1);
        u.truncate(n_max + 1);
        if let Some(u0) = u.first_mut() {
            *u0 = Real::zero(u0.prec());
        }
        CoefficientTable {
            n_max,
            b,
            u,
            t,
            provenance,
        }
    }

    /// A table from a coefficient function `n ↦ (b_n, u_n)`.
    pub fn from_fn<F>(
        n_max: usize,
        t: &Real,
        provenance: Provenance,
        mut f: F,
    ) -> Result<CoefficientTable>
    where
        F: FnMut(usize) -> Result<(Real, Real)>,
    {
        let mut b = Vec::with_capacity(n_max + 1);
        let mut u = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            let (bn, un) = f(n)?;
            b.push(bn);
            u.push(un);
        }
        Ok(CoefficientTable::from_sequences(
            b,
            u,
            t.clone(),
            provenance,
        ))
    }

    /// The closed-form table `b_0..b_{n_max}`, `u_0..u_{n_max}` at `t`.
    pub fn closed_form(p: &TodaParams, t: &Real, n_max: usize) -> Result<CoefficientTable> {
        Self::from_fn(n_max, t, Provenance::ClosedForm, |n| coeffs(n, t, p))
    }

    /// The ℘̇ table where `b_{n_max}` sits on a pole: `b` is evaluated up to
    /// `n_max − 1` and the last entry is set to zero. Only `u_{n_max}` is
    /// meaningful at the top level (a finite measure uses `b_0..b_{N−1}`).
    pub fn wdot_truncated(p: &TodaParams, t: &Real, n_max: usize) -> Result<CoefficientTable> {
        Self::from_fn(n_max, t, Provenance::ClosedForm, |n| {
            let u = u_general(n, t, p)?;
            let b = if n < n_max {
                b_general(n, t, p)?
            } else {
                Real::zero(p.bits())
            };
            Ok((b, u))
        })
    }
}
