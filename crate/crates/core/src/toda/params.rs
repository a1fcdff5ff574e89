use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::{Cplx, Real};
use crate::elliptic::{EllipticContext, HalfPeriod, LatticePoint};
use crate::error::{domain, Error, Result};

/// Which solution a [`TodaParams`] describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseTag {
    Generic,
    CaseI,
    CaseII,
    SnFamily,
    CnFamily,
    DnFamily,
    WdotFamily,
}

impl CaseTag {
    pub fn name(self) -> &'static str {
        match self {
            CaseTag::Generic => "generic",
            CaseTag::CaseI => "case_i",
            CaseTag::CaseII => "case_ii",
            CaseTag::SnFamily => "sn_family",
            CaseTag::CnFamily => "cn_family",
            CaseTag::DnFamily => "dn_family",
            CaseTag::WdotFamily => "wdot_family",
        }
    }
}

/// Parameters of the elliptic Toda solution
/// `c₀(t) = σ(W + q)/(σ(q)σ(W))·exp(μ1·t)`, `W = w·t + w·β`.
///
/// The offset `w·β` and the shift `q` are lattice points, so every
/// Weierstrass argument stays on a line the kernel evaluates exactly.
#[derive(Debug, Clone)]
pub struct TodaParams {
    pub ctx: Arc<EllipticContext>,
    pub w: Real,
    /// The offset `w·β`.
    pub beta_w: LatticePoint,
    pub q: LatticePoint,
    /// Always zero: `μ0` only rescales `c₀`.
    pub mu0: Real,
    pub mu1: Cplx,
    pub case_tag: CaseTag,
    /// `c₀ / c₀_generic`, the constant that turns the σ-quotient into the
    /// normalized Jacobi function of the named cases.
    pub(crate) norm: Cplx,
}

impl TodaParams {
    /// The general solution with caller-chosen `w·β`, `q` and `μ1`.
    pub fn generic(
        ctx: Arc<EllipticContext>,
        w: Real,
        beta_w: LatticePoint,
        q: LatticePoint,
        mu1: Cplx,
    ) -> Result<TodaParams> {
        check_w(&w)?;
        if let Some(d) = q.pole_distance(&ctx) {
            if d < crate::elliptic::POLE_GUARD {
                return Err(domain(
                    "q must not be a lattice point (q = 0 is a degeneration)",
                ));
            }
        }
        let bits = ctx.bits();
        Ok(TodaParams {
            ctx,
            w,
            beta_w,
            q,
            mu0: Real::zero(bits),
            mu1,
            case_tag: CaseTag::Generic,
            norm: Cplx::from_real(&Real::one(bits)),
        })
    }

    /// Case (i): `β = ω1/w`, `q = ω2`, `μ1 = −w·η2`; `c₀ = 1/cn(w·sqrt(e1−e3)·t)`.
    pub fn case_i(ctx: Arc<EllipticContext>, w: Real) -> Result<TodaParams> {
        Self::half_period_case(
            ctx,
            w,
            HalfPeriod::Omega1,
            HalfPeriod::Omega2,
            CaseTag::CaseI,
        )
    }

    /// Case (ii): `β = ω1/w`, `q = ω3`, `μ1 = −w·η3`; `c₀ = dc(w·sqrt(e1−e3)·t)`.
    pub fn case_ii(ctx: Arc<EllipticContext>, w: Real) -> Result<TodaParams> {
        Self::half_period_case(
            ctx,
            w,
            HalfPeriod::Omega1,
            HalfPeriod::Omega3,
            CaseTag::CaseII,
        )
    }

    /// The sn, cn and dn families (`w = 1`, `β = ω3`, `q = ω3, ω2, ω1`).
    /// They require the normalization `e1 − e3 = 1`.
    pub fn family(ctx: Arc<EllipticContext>, tag: CaseTag) -> Result<TodaParams> {
        let q = match tag {
            CaseTag::SnFamily => HalfPeriod::Omega3,
            CaseTag::CnFamily => HalfPeriod::Omega2,
            CaseTag::DnFamily => HalfPeriod::Omega1,
            other => {
                return Err(Error::Unsupported(format!(
                    "{} is not a Jacobi family",
                    other.name()
                )))
            }
        };
        check_unit_scale(&ctx)?;
        let w = Real::one(ctx.bits());
        Self::half_period_case(ctx, w, HalfPeriod::Omega3, q, tag)
    }

    /// The solution with `c₀ = −℘'(t)` (`w = 1`, `β = q = 0`).
    pub fn wdot(ctx: Arc<EllipticContext>) -> Result<TodaParams> {
        let bits = ctx.bits();
        Ok(TodaParams {
            w: Real::one(bits),
            beta_w: LatticePoint::real(Real::zero(bits)),
            q: LatticePoint::real(Real::zero(bits)),
            mu0: Real::zero(bits),
            mu1: Cplx::zero(bits),
            case_tag: CaseTag::WdotFamily,
            norm: Cplx::from_real(&Real::one(bits)),
            ctx,
        })
    }

    fn half_period_case(
        ctx: Arc<EllipticContext>,
        w: Real,
        beta: HalfPeriod,
        q: HalfPeriod,
        tag: CaseTag,
    ) -> Result<TodaParams> {
        check_w(&w)?;
        let bits = ctx.bits();
        let w = w.with_prec(bits);
        // μ1 = −w·η_j where q = ω_j
        let mu1 = -(ctx.eta(q) * &w);
        let mut p = TodaParams {
            beta_w: beta.point(bits),
            q: q.point(bits),
            mu0: Real::zero(bits),
            mu1,
            case_tag: tag,
            norm: Cplx::from_real(&Real::one(bits)),
            w,
            ctx,
        };
        // Fix the normalization at a point where both c₀ forms are regular.
        let t_ref = match tag {
            CaseTag::CaseI | CaseTag::CaseII => Real::zero(bits),
            _ => &p.ctx.omega1 / 2,
        };
        let generic = super::closed::c0_lattice(&t_ref, &p)?;
        let named = super::closed::c0_named(&t_ref, &p)?;
        p.norm = Cplx::from_real(&named) / generic;
        Ok(p)
    }

    /// `W(t) = w·t + w·β`.
    pub fn big_w(&self, t: &Real) -> LatticePoint {
        self.beta_w.plus_real(&(&self.w * t))
    }

    /// `j·W(t) + q`.
    pub fn shifted(&self, j: i64, t: &Real) -> LatticePoint {
        self.big_w(t).scale(j).add(&self.q)
    }

    pub fn bits(&self) -> u32 {
        self.ctx.bits()
    }

    /// `w·sqrt(e1 − e3)`, the scale of the Jacobi argument `u = w·sqrt(e1−e3)·t`.
    pub fn scale(&self) -> Real {
        &self.w * &self.ctx.sqrt_s
    }

    /// The normalization constant `c₀/c₀_generic`.
    pub fn normalization(&self) -> &Cplx {
        &self.norm
    }
}

fn check_w(w: &Real) -> Result<()> {
    if *w > 0.0 {
        Ok(())
    } else {
        Err(domain(format!(
            "scale w = {} must be positive",
            w.to_decimal(12)
        )))
    }
}

fn check_unit_scale(ctx: &EllipticContext) -> Result<()> {
    let tol = 10f64.powi(-(ctx.precision_digits as i32) + 5);
    if (&ctx.s - 1).abs() > tol {
        return Err(domain(format!(
            "the sn/cn/dn families need e1 - e3 = 1 (got {}); use the k² normalization",
            ctx.s.to_decimal(12)
        )));
    }
    Ok(())
}
