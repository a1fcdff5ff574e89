//! Coefficients at special times and for the special families.

use std::sync::Arc;

use super::closed::{b_general, b_lattice, real_checked, u_general, u_lattice};
use super::params::{CaseTag, TodaParams};
use crate::arith::{Cplx, Real};
use crate::elliptic::{EllipticContext, LatticePoint};
use crate::error::{domain, Error, Result};

/// The residue-class formulas at `t = ω1/2` with `w = 1`, `e1 − e3 = 1`.
///
/// ```
/// use elliptic_toda::arith::Real;
/// use elliptic_toda::toda::theorem2_coeffs;
///
/// let kp = Real::from_f64(0.5, 128);
/// let (b, u) = theorem2_coeffs(2, &kp).unwrap();
/// assert_eq!(u, 6.0); // (1 + k')·n²
/// assert_eq!(b, 3.0); // (3k' + 1)·n/2 + k'
/// ```
pub fn theorem2_coeffs(n: usize, kprime: &Real) -> Result<(Real, Real)> {
    if !(*kprime > 0.0 && *kprime < 1.0) {
        return Err(domain(format!(
            "k' = {} must lie in (0, 1)",
            kprime.to_decimal(12)
        )));
    }
    let kp = kprime;
    let nr = kp.int_like(n as i64);
    let half_n = &nr / 2;
    let one = kp.int_like(1);
    let b = match n % 4 {
        0 => (kp + 3) * &half_n + &one,
        1 => (kp * 3 + 1) * &half_n + (kp + 1) / 2,
        2 => (kp * 3 + 1) * &half_n + kp,
        _ => (kp + 3) * &half_n + (kp + 1) / 2,
    };
    let n2 = nr.square();
    let u = match n % 4 {
        0 => kp * &(kp + 1) * &n2,
        2 => (kp + 1) * &n2,
        _ => kp * 2 * &n2,
    };
    Ok((b, u))
}

/// The constants that generate every coefficient at the rational time
/// `t = M·ω1/(N·w)`.
///
/// Writing `m = 2N·r + j` with `0 ≤ j < 2N`, the point `m·W + q` differs from
/// `j·W + q` by `r` whole periods, so
/// `u_m = w²m²(ε0 − ε(j))` and
/// `b_m = μ1 + w[(m+1)κ(j+1) − m·κ(j) − (2m+1)ζ(W) + r·Δ]`
/// where `Δ` is the quasi-period increment of `ζ` over `2N·W`.
#[derive(Debug, Clone)]
pub struct RationalTime {
    pub m_num: u32,
    pub n_den: u32,
    /// `ε0 = ℘(W)`.
    pub eps0: Real,
    /// `ε(j) = ℘(j·W + q)` for `j = 0..2N`; `None` where `j·W + q` is a pole.
    pub eps: Vec<Option<Real>>,
    /// `κ(j) = ζ(j·W + q)` for `j = 0..=2N`; `None` at poles.
    pub kappa: Vec<Option<Cplx>>,
    /// `ζ(W)`.
    pub zeta_w: Cplx,
    /// `ζ(m·W + q + 2N·W) − ζ(m·W + q)`.
    pub delta: Cplx,
    params: TodaParams,
}

impl RationalTime {
    /// Precomputes the constants for `t = M·ω1/(N·w)`.
    ///
    /// `M = 0, N = 1` (the time origin) is accepted alongside `0 < M < N`
    /// coprime. The offset `w·β` must be a half-period combination (no real
    /// part) so every argument reduces exactly.
    pub fn new(m_num: u32, n_den: u32, p: &TodaParams) -> Result<RationalTime> {
        if p.case_tag == CaseTag::WdotFamily {
            return Err(Error::Unsupported(
                "rational times are defined for σ-quotient solutions".into(),
            ));
        }
        let origin = m_num == 0 && n_den == 1;
        if !origin && !(0 < m_num && m_num < n_den && gcd(m_num, n_den) == 1) {
            return Err(domain(format!(
                "need 0 < M < N coprime (or M = 0, N = 1); got M = {m_num}, N = {n_den}"
            )));
        }
        if !p.beta_w.x.is_zero() {
            return Err(Error::Unsupported(
                "rational times need w·β on the half-period lattice".into(),
            ));
        }
        let ctx = &p.ctx;
        let nd = i64::from(n_den);
        // W = (P/N)·ω1 + β.n·ω3 with P = M + N·β.m
        let big_p = i64::from(m_num) + nd * p.beta_w.m;
        let point = |j: i64| -> LatticePoint {
            let num = j * big_p;
            let a = num.div_euclid(nd);
            let rho = num.rem_euclid(nd);
            let x = &ctx.omega1 * rho as i32 / n_den as i32;
            LatticePoint::new(x, a, j * p.beta_w.n)
        };
        let w_pt = point(1);
        let eps0 = ctx.wp(&w_pt)?;
        let zeta_w = ctx.zeta(&w_pt)?;
        let period = 2 * nd;
        let eps = (0..period)
            .map(|j| ctx.wp(&point(j).add(&p.q)).ok())
            .collect();
        let kappa = (0..=period)
            .map(|j| ctx.zeta(&point(j).add(&p.q)).ok())
            .collect();
        let shift = point(period);
        let delta = Cplx::from_real(&(&ctx.eta1 * shift.m as i32))
            + Cplx::imag(&(&ctx.eta3 * shift.n as i32));
        debug_assert!(shift.x.is_zero() && shift.m % 2 == 0 && shift.n % 2 == 0);
        Ok(RationalTime {
            m_num,
            n_den,
            eps0,
            eps,
            kappa,
            zeta_w,
            delta,
            params: p.clone(),
        })
    }

    /// The time `M·ω1/(N·w)`.
    pub fn time(&self) -> Real {
        &self.params.ctx.omega1 * self.m_num as i32 / self.n_den as i32 / &self.params.w
    }

    fn split(&self, m: usize) -> (i64, usize) {
        let period = 2 * self.n_den as usize;
        ((m / period) as i64, m % period)
    }

    /// `u_m` from the constants.
    pub fn u(&self, m: usize) -> Result<Real> {
        let p = &self.params;
        if m == 0 {
            return Ok(Real::zero(p.bits()));
        }
        let (_, j) = self.split(m);
        let eps = self.eps[j].as_ref().ok_or_else(|| self.pole(j))?;
        Ok(p.w.square() * (m * m) as i32 * (&self.eps0 - eps))
    }

    /// `b_m` from the constants, with its imaginary part.
    pub fn b_complex(&self, m: usize) -> Result<Cplx> {
        let p = &self.params;
        let (r, j) = self.split(m);
        let k_next = self.kappa[j + 1].as_ref().ok_or_else(|| self.pole(j + 1))?;
        let lower = if m == 0 {
            Cplx::zero(p.bits())
        } else {
            self.kappa[j].as_ref().ok_or_else(|| self.pole(j))? * m as i32
        };
        let mi = m as i32;
        let bracket =
            k_next * (mi + 1) - lower - &self.zeta_w * (2 * mi + 1) + &self.delta * r as i32;
        Ok(&p.mu1 + &(bracket * &p.w))
    }

    /// `b_m`, checked to be real.
    pub fn b(&self, m: usize) -> Result<Real> {
        real_checked(self.b_complex(m)?, "b_n", self.params.ctx.precision_digits)
    }

    fn pole(&self, j: usize) -> Error {
        Error::Pole {
            location: format!("{j}·W + q at t = {}·ω1/({}·w)", self.m_num, self.n_den),
            detail: "a required lattice-fraction point is a pole".into(),
        }
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `(b_n, u_n)` at `t = M·ω1/(N·w)` through the rational-time constants.
pub fn rational_time_coeffs(
    n: usize,
    m_num: u32,
    n_den: u32,
    p: &TodaParams,
) -> Result<(Real, Real)> {
    let rt = RationalTime::new(m_num, n_den, p)?;
    Ok((rt.b(n)?, rt.u(n)?))
}

/// `b_n` (complex, the imaginary part is rounding noise) and `u_n` of a
/// Jacobi family.
#[derive(Debug, Clone)]
pub struct FamilyCoeffs {
    pub b: Cplx,
    pub u: Real,
}

/// The sn, cn or dn family coefficients; `ctx` must have `e1 − e3 = 1`.
pub fn family_coeffs(
    n: usize,
    t: &Real,
    which: CaseTag,
    ctx: Arc<EllipticContext>,
) -> Result<FamilyCoeffs> {
    let p = TodaParams::family(ctx, which)?;
    Ok(FamilyCoeffs {
        b: super::closed::b_complex(n, t, &p)?,
        u: u_general(n, t, &p)?,
    })
}

/// `(b_n, u_n)` of the solution with `c₀ = −℘'(t)`.
pub fn wdot_coeffs(n: usize, t: &Real, ctx: Arc<EllipticContext>) -> Result<(Real, Real)> {
    let p = TodaParams::wdot(ctx)?;
    let b = real_checked(b_lattice(n, t, &p)?, "b_n", p.ctx.precision_digits)?;
    Ok((b, u_lattice(n, t, &p)?))
}

/// `(b_n, u_n)` at `t` along the preferred path of `p`.
pub fn coeffs(n: usize, t: &Real, p: &TodaParams) -> Result<(Real, Real)> {
    Ok((b_general(n, t, p)?, u_general(n, t, p)?))
}
