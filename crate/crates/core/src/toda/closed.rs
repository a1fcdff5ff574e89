//! The closed-form solution: `u_n`, `b_n`, `c₀`, `h_n` and `D_n`.
//!
//! The lattice functions (`*_lattice`, [`u_sigma`]) evaluate the general
//! σ/℘/ζ expressions and work for every [`CaseTag`]. The dispatching
//! functions ([`u_general`], [`b_general`], [`c0_eval`]) use the Jacobi-form
//! expressions for the named cases and fall back to the lattice functions
//! otherwise.

use super::forms;
use super::params::{CaseTag, TodaParams};
use crate::arith::{Cplx, Real};
use crate::elliptic::{LatticePoint, POLE_GUARD};
use crate::error::{Degeneracy, Error, Result};

/// Keeps the real part after checking that the imaginary part is rounding
/// noise.
pub(crate) fn real_checked(z: Cplx, what: &str, digits: u32) -> Result<Real> {
    let re = z.re();
    let im = z.im();
    let tol = 10f64.powi(-(digits as i32) + 12) * re.abs().to_f64().max(1.0);
    if im.abs() > tol {
        return Err(Error::Unsupported(format!(
            "{what} is complex (imaginary part {}); use the complex-valued variant",
            im.to_decimal(6)
        )));
    }
    Ok(re)
}

fn guard_w(t: &Real, p: &TodaParams) -> Result<LatticePoint> {
    let w = p.big_w(t);
    w.guard(&p.ctx, "c₀")?;
    Ok(w)
}

/// `σ(W + q)/(σ(q)·σ(W))·exp(μ1·t)`.
pub(crate) fn c0_lattice(t: &Real, p: &TodaParams) -> Result<Cplx> {
    let ctx = &p.ctx;
    let w = guard_w(t, p)?;
    let num = ctx.sigma(&w.add(&p.q));
    let den = ctx.sigma(&p.q) * ctx.sigma(&w);
    Ok(num / den * (&p.mu1 * t).exp())
}

/// The normalized `c₀` of the named cases.
pub(crate) fn c0_named(t: &Real, p: &TodaParams) -> Result<Real> {
    let ctx = &p.ctx;
    if p.case_tag == CaseTag::WdotFamily {
        return Ok(-ctx.wp_prime(&LatticePoint::real(t.clone()))?);
    }
    guard_w(t, p)?;
    let u = p.scale() * t;
    let j = ctx.sncndn(&u);
    Ok(match p.case_tag {
        CaseTag::CaseI => j.cn.recip(),
        CaseTag::CaseII => j.dn / j.cn,
        CaseTag::SnFamily => j.sn,
        CaseTag::CnFamily => j.cn,
        CaseTag::DnFamily => j.dn,
        CaseTag::Generic | CaseTag::WdotFamily => {
            return Err(Error::Unsupported(
                "the generic solution has no named c₀".into(),
            ))
        }
    })
}

/// `c₀(t)` as a complex number (the generic solution may be complex).
pub fn c0_complex(t: &Real, p: &TodaParams) -> Result<Cplx> {
    match p.case_tag {
        CaseTag::Generic => c0_lattice(t, p),
        _ => Ok(Cplx::from_real(&c0_named(t, p)?)),
    }
}

/// `c₀(t)`: `1/cn` for case (i), `dc` for case (ii), `sn`, `cn`, `dn` for the
/// families, `−℘'` for the ℘̇ family and the σ-quotient otherwise.
pub fn c0_eval(t: &Real, p: &TodaParams) -> Result<Real> {
    real_checked(c0_complex(t, p)?, "c₀", p.ctx.precision_digits)
}

/// `u_n = w²n²(℘(W) − ℘(nW + q))`, or `(n+1)²(℘(t) − ℘((n+1)t))` for the
/// ℘̇ family.
pub fn u_lattice(n: usize, t: &Real, p: &TodaParams) -> Result<Real> {
    let ctx = &p.ctx;
    if n == 0 {
        return Ok(Real::zero(p.bits()));
    }
    let nn = n as i64;
    if p.case_tag == CaseTag::WdotFamily {
        let z = LatticePoint::real(t.clone());
        let diff = ctx.wp(&z)? - ctx.wp(&z.scale(nn + 1))?;
        return Ok(diff * ((nn + 1) * (nn + 1)) as i32);
    }
    let diff = ctx.wp(&p.big_w(t))? - ctx.wp(&p.shifted(nn, t))?;
    Ok(diff * p.w.square() * (nn * nn) as i32)
}

/// `b_n = μ1 + w(n+1)ζ((n+1)W + q) − wnζ(nW + q) − (2n+1)wζ(W)`, or the
/// ℘̇-family analogue.
pub fn b_lattice(n: usize, t: &Real, p: &TodaParams) -> Result<Cplx> {
    let ctx = &p.ctx;
    let nn = n as i64;
    if p.case_tag == CaseTag::WdotFamily {
        let z = LatticePoint::real(t.clone());
        let v = ctx.zeta(&z.scale(nn + 2))? * (nn as i32 + 2)
            - ctx.zeta(&z.scale(nn + 1))? * (nn as i32 + 1)
            - ctx.zeta(&z)? * (2 * nn as i32 + 3);
        return Ok(v);
    }
    let w = p.big_w(t);
    let upper = ctx.zeta(&p.shifted(nn + 1, t))? * (nn as i32 + 1);
    let lower = if n == 0 {
        Cplx::zero(p.bits())
    } else {
        ctx.zeta(&p.shifted(nn, t))? * nn as i32
    };
    let sum = upper - lower - ctx.zeta(&w)? * (2 * nn as i32 + 1);
    Ok(&p.mu1 + &(sum * &p.w))
}

/// `u_n` from the σ-quotient `n²w²σ((n+1)W+q)σ((n−1)W+q)/(σ²(nW+q)σ²(W))`.
pub fn u_sigma(n: usize, t: &Real, p: &TodaParams) -> Result<Cplx> {
    if p.case_tag == CaseTag::WdotFamily {
        return Err(Error::Unsupported(
            "the ℘̇ family has q = 0 and no σ-quotient form".into(),
        ));
    }
    let ctx = &p.ctx;
    let nn = n as i64;
    if n == 0 {
        return Ok(Cplx::zero(p.bits()));
    }
    let w = guard_w(t, p)?;
    let num = ctx.sigma(&p.shifted(nn + 1, t)) * ctx.sigma(&p.shifted(nn - 1, t));
    let den = ctx.sigma(&p.shifted(nn, t)).square() * ctx.sigma(&w).square();
    Ok(num / den * &(p.w.square() * (nn * nn) as i32))
}

/// `u_n(t)` along the preferred evaluation path of the case.
pub fn u_general(n: usize, t: &Real, p: &TodaParams) -> Result<Real> {
    match p.case_tag {
        CaseTag::CaseI | CaseTag::CaseII => forms::u_case(n, t, p),
        CaseTag::SnFamily | CaseTag::CnFamily | CaseTag::DnFamily => forms::u_family(n, t, p),
        CaseTag::Generic | CaseTag::WdotFamily => u_lattice(n, t, p),
    }
}

/// `b_n(t)` as a complex number along the preferred evaluation path.
pub fn b_complex(n: usize, t: &Real, p: &TodaParams) -> Result<Cplx> {
    match p.case_tag {
        CaseTag::CaseI | CaseTag::CaseII => Ok(Cplx::from_real(&forms::b_case(n, t, p)?)),
        CaseTag::SnFamily | CaseTag::CnFamily | CaseTag::DnFamily => forms::b_family(n, t, p),
        CaseTag::Generic | CaseTag::WdotFamily => b_lattice(n, t, p),
    }
}

/// `b_n(t)`, real for all named cases.
pub fn b_general(n: usize, t: &Real, p: &TodaParams) -> Result<Real> {
    real_checked(b_complex(n, t, p)?, "b_n", p.ctx.precision_digits)
}

fn factorial(n: usize, bits: u32) -> Real {
    (1..=n).fold(Real::one(bits), |acc, j| acc * j as i32)
}

fn degenerate_if_lattice(z: &LatticePoint, p: &TodaParams, index: usize) -> Result<()> {
    if let Some(d) = z.pole_distance(&p.ctx) {
        if d < POLE_GUARD {
            return Err(Error::DegenerateHankel {
                index,
                kind: Degeneracy::Zero,
            });
        }
    }
    Ok(())
}

/// `h_n` as a complex number.
pub fn h_complex(n: usize, t: &Real, p: &TodaParams) -> Result<Cplx> {
    if p.case_tag == CaseTag::WdotFamily {
        let mut h = Cplx::from_real(&c0_eval(t, p)?);
        for k in 1..=n {
            h *= &u_lattice(k, t, p)?;
        }
        return Ok(h);
    }
    let ctx = &p.ctx;
    let nn = n as i64;
    let w = guard_w(t, p)?;
    let lower = p.shifted(nn, t);
    degenerate_if_lattice(&lower, p, n)?;
    let num = ctx.sigma(&p.shifted(nn + 1, t));
    let den = ctx.sigma(&lower) * ctx.sigma(&w).powi(2 * n as i32 + 1);
    let coeff = factorial(n, p.bits()).square() * p.w.powi(2 * n as i32);
    Ok(num / den * (&p.mu1 * t).exp() * &coeff * &p.norm)
}

/// `h_n(t)`, the squared norm of the n-th monic polynomial.
pub fn h_closed(n: usize, t: &Real, p: &TodaParams) -> Result<Real> {
    real_checked(h_complex(n, t, p)?, "h_n", p.ctx.precision_digits)
}

/// `D_n` as a complex number.
pub fn hankel_complex(n: usize, t: &Real, p: &TodaParams) -> Result<Cplx> {
    let bits = p.bits();
    if n == 0 {
        return Ok(Cplx::from_real(&Real::one(bits)));
    }
    if p.case_tag == CaseTag::WdotFamily {
        let mut d = Cplx::from_real(&Real::one(bits));
        for j in 0..n {
            d *= h_complex(j, t, p)?;
        }
        return Ok(d);
    }
    let ctx = &p.ctx;
    let nn = n as i64;
    let w = guard_w(t, p)?;
    let top = p.shifted(nn, t);
    degenerate_if_lattice(&top, p, n)?;
    // κ_n = Π_{j<n} j!² · w^{n(n−1)}
    let mut kappa = p.w.powi((n * (n - 1)) as i32);
    for j in 1..n {
        kappa *= factorial(j, bits).square();
    }
    let num = ctx.sigma(&top);
    let den = ctx.sigma(&p.q) * ctx.sigma(&w).powi((n * n) as i32);
    let expo = (&p.mu1 * &(t * n as i32)).exp();
    Ok(num / den * expo * &kappa * p.norm.powi(n as i32))
}

/// `D_n(t)`, the n×n Hankel determinant of the moments.
pub fn hankel_closed(n: usize, t: &Real, p: &TodaParams) -> Result<Real> {
    real_checked(hankel_complex(n, t, p)?, "D_n", p.ctx.precision_digits)
}
