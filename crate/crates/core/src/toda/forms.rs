//! Jacobi-function forms of `u_n` and `b_n` for the named cases.
//!
//! All Jacobi arguments here are real. Where a shifted Zeta value
//! `Z(v + K)` appears it is evaluated directly at the shifted real
//! argument; the `Z(v + iK')` terms of the sn family are assembled from the
//! shift rule and carry an explicit `∓iπ/(2K)` pair, so the returned `b_n`
//! keeps the (vanishing) imaginary part visible.

use super::params::{CaseTag, TodaParams};
use crate::arith::{Cplx, Real};
use crate::elliptic::EllipticContext;
use crate::error::Result;

/// `sn, cn, dn, Z` at one argument.
struct At {
    sn: Real,
    cn: Real,
    dn: Real,
    z: Real,
}

impl At {
    fn new(ctx: &EllipticContext, v: &Real) -> At {
        let j = ctx.sncndn(v);
        At {
            sn: j.sn,
            cn: j.cn,
            dn: j.dn,
            z: ctx.jacobi_zeta(v),
        }
    }

    /// `Z(v) − sn·dn/cn(v) = Z(v + K + iK') + iπ/(2K)`.
    fn z_minus_sd_c(&self) -> Real {
        &self.z - &self.sn * &self.dn / &self.cn
    }
}

/// `Z(v + K)` evaluated at the shifted argument.
fn z_shift_k(ctx: &EllipticContext, v: &Real) -> Real {
    ctx.jacobi_zeta(&(v + &ctx.big_k))
}

fn guard(n: usize, t: &Real, p: &TodaParams) -> Result<()> {
    let nn = n as i64;
    p.big_w(t).guard(&p.ctx, "Jacobi form")?;
    p.shifted(nn, t).guard(&p.ctx, "Jacobi form")?;
    p.shifted(nn + 1, t).guard(&p.ctx, "Jacobi form")?;
    Ok(())
}

/// `u_n` for cases (i) and (ii), `u = w·sqrt(e1−e3)·t`.
pub(crate) fn u_case(n: usize, t: &Real, p: &TodaParams) -> Result<Real> {
    let ctx = &p.ctx;
    if n == 0 {
        return Ok(Real::zero(p.bits()));
    }
    guard(n, t, p)?;
    let u = p.scale() * t;
    let base = ctx.sncndn(&u);
    let arg = ctx.sncndn(&(&u * n as i32));
    let w2n2 = p.w.square() * (n * n) as i32;
    let e12 = &ctx.e1 - &ctx.e2;
    let kp2 = ctx.kprime.square();
    // (i): even → (e1−e2)(1/cn²(u) + k² sn²/dn²(nu)), odd → s(k'² sn²/cn²(u) + dn²(nu))
    // (ii): the two brackets trade places.
    let first = || &e12 * (base.cn.square().recip() + &ctx.k2 * arg.sn.square() / arg.dn.square());
    let second = || &ctx.s * (&kp2 * base.sn.square() / base.cn.square() + arg.dn.square());
    let even = n.is_multiple_of(2);
    let bracket = match (p.case_tag, even) {
        (CaseTag::CaseI, true) | (CaseTag::CaseII, false) => first(),
        _ => second(),
    };
    Ok(w2n2 * bracket)
}

/// `b_n` for cases (i) and (ii).
pub(crate) fn b_case(n: usize, t: &Real, p: &TodaParams) -> Result<Real> {
    let ctx = &p.ctx;
    guard(n, t, p)?;
    let u = p.scale() * t;
    let base = At::new(ctx, &u).z_minus_sd_c();
    let m = (n / 2) as i32;
    let val = if n.is_multiple_of(2) {
        let a = &u * (2 * m + 1);
        let b = &u * (2 * m);
        match p.case_tag {
            // (2n+1)Z((2n+1)u) − 2n·Z(2nu + K) − (4n+1)[Z − sn·dn/cn](u)
            CaseTag::CaseI => {
                ctx.jacobi_zeta(&a) * (2 * m + 1)
                    - z_shift_k(ctx, &b) * (2 * m)
                    - base * (4 * m + 1)
            }
            // (2n+1)Z((2n+1)u + K) − 2n·Z(2nu) − (4n+1)[Z − sn·dn/cn](u)
            _ => {
                z_shift_k(ctx, &a) * (2 * m + 1)
                    - ctx.jacobi_zeta(&b) * (2 * m)
                    - base * (4 * m + 1)
            }
        }
    } else {
        let a = &u * (2 * m + 2);
        let b = &u * (2 * m + 1);
        match p.case_tag {
            // 2(n+1)Z(2(n+1)u + K) − (2n+1)Z((2n+1)u) − (4n+3)[Z − sn·dn/cn](u)
            CaseTag::CaseI => {
                z_shift_k(ctx, &a) * (2 * m + 2)
                    - ctx.jacobi_zeta(&b) * (2 * m + 1)
                    - base * (4 * m + 3)
            }
            // 2(n+1)Z(2(n+1)u) − (2n+1)Z((2n+1)u + K) − (4n+3)[Z − sn·dn/cn](u)
            _ => {
                ctx.jacobi_zeta(&a) * (2 * m + 2)
                    - z_shift_k(ctx, &b) * (2 * m + 1)
                    - base * (4 * m + 3)
            }
        }
    };
    Ok(p.scale() * val)
}

/// `u_n` for the sn, cn and dn families (`w = 1`, `e1 − e3 = 1`).
pub(crate) fn u_family(n: usize, t: &Real, p: &TodaParams) -> Result<Real> {
    let ctx = &p.ctx;
    if n == 0 {
        return Ok(Real::zero(p.bits()));
    }
    guard(n, t, p)?;
    let base = ctx.sncndn(t);
    let arg = ctx.sncndn(&(t * n as i32));
    let n2 = Real::from_int((n * n) as i64, p.bits());
    let k2 = &ctx.k2;
    let kp2 = ctx.kprime.square();
    let even = n.is_multiple_of(2);
    let val = match (p.case_tag, even) {
        // 4n²k²(sn²t − sn²(2nt)), (2n+1)²(k²sn²t − 1/sn²((2n+1)t))
        (CaseTag::SnFamily, true) => k2 * (base.sn.square() - arg.sn.square()),
        (CaseTag::SnFamily, false) => k2 * base.sn.square() - arg.sn.square().recip(),
        // 4n²k²(−cn²t + k'²sn²/dn²(2nt)), (2n+1)²(−dn²t − k'²sn²/cn²((2n+1)t))
        (CaseTag::CnFamily, true) => {
            k2 * (-base.cn.square() + &kp2 * arg.sn.square() / arg.dn.square())
        }
        (CaseTag::CnFamily, false) => -base.dn.square() - &kp2 * arg.sn.square() / arg.cn.square(),
        // 4n²(−dn²t − k'²sn²/cn²(2nt)), (2n+1)²k²(−cn²t + k'²sn²/dn²((2n+1)t))
        (CaseTag::DnFamily, true) => -base.dn.square() - &kp2 * arg.sn.square() / arg.cn.square(),
        _ => k2 * (-base.cn.square() + &kp2 * arg.sn.square() / arg.dn.square()),
    };
    Ok(n2 * val)
}

/// `b_n` for the sn, cn and dn families.
pub(crate) fn b_family(n: usize, t: &Real, p: &TodaParams) -> Result<Cplx> {
    let ctx = &p.ctx;
    guard(n, t, p)?;
    let m = (n / 2) as i32;
    let zt = ctx.jacobi_zeta(t);
    // iπ/(2K)
    let i_half = Cplx::imag(&(ctx.big_k.pi_like() / (&ctx.big_k * 2)));
    // Z(v + iK') = Z(v) + cn·dn/sn(v) − iπ/(2K)
    let z_shift_ik = |v: &Real| -> Cplx {
        let a = At::new(ctx, v);
        Cplx::from_real(&(&a.z + &a.cn * &a.dn / &a.sn)) - &i_half
    };
    let (hi, lo, lin) = if n.is_multiple_of(2) {
        (2 * m + 1, 2 * m, 4 * m + 1)
    } else {
        (2 * m + 2, 2 * m + 1, 4 * m + 3)
    };
    let v_hi = t * hi;
    let v_lo = t * lo;
    let odd_hi = n.is_multiple_of(2);
    // The term at the odd multiple of t carries the special shift.
    let special = |v: &Real| -> Cplx {
        match p.case_tag {
            CaseTag::SnFamily => z_shift_ik(v) + &i_half,
            CaseTag::CnFamily => Cplx::from_real(&At::new(ctx, v).z_minus_sd_c()),
            _ => Cplx::from_real(&z_shift_k(ctx, v)),
        }
    };
    // The term at the even multiple of t.
    let plain = |v: &Real| -> Cplx {
        match p.case_tag {
            CaseTag::SnFamily => Cplx::from_real(&ctx.jacobi_zeta(v)),
            CaseTag::CnFamily => Cplx::from_real(&z_shift_k(ctx, v)),
            _ => Cplx::from_real(&At::new(ctx, v).z_minus_sd_c()),
        }
    };
    let (top, bottom) = if odd_hi {
        (special(&v_hi), plain(&v_lo))
    } else {
        (plain(&v_hi), special(&v_lo))
    };
    Ok(top * hi - bottom * lo - Cplx::from_real(&(zt * lin)))
}
