//! Weierstrass `℘`, `ζ`, `σ` and the co-sigma functions.
//!
//! Two evaluation routes exist. The Jacobi route (used by everything
//! downstream) writes `℘` and `ζ` at `x + m·ω1 + n·ω3` through real
//! Jacobi functions of `u = sqrt(e1 − e3)·x`, choosing one of four forms by
//! `(m mod 2, n mod 2)`. The theta route evaluates the `θ1` series at a
//! complex argument and serves as the definition of `σ` and as an
//! independent check of the Jacobi route.

use super::{EllipticContext, HalfPeriod, LatticePoint};
use crate::arith::{Cplx, Real};
use crate::error::Result;

/// `θ1` and its first three derivatives at one argument.
#[derive(Debug, Clone)]
pub struct ThetaValues {
    pub theta: Cplx,
    pub d1: Cplx,
    pub d2: Cplx,
    pub d3: Cplx,
}

impl EllipticContext {
    /// `θ1(v; q)` and derivatives with the context nome `q = exp(−πK'/K)`.
    pub fn theta1(&self, v: &Cplx) -> ThetaValues {
        let bits = self.bits();
        let q = &self.nome_q;
        let q_quarter = q.sqrt().sqrt();
        let ln_q = q.ln().to_f64();
        let im_v = v.im().abs().to_f64();
        let budget = f64::from(bits) * std::f64::consts::LN_2 + 10.0;

        let mut theta = Cplx::zero(bits);
        let mut d1 = Cplx::zero(bits);
        let mut d2 = Cplx::zero(bits);
        let mut d3 = Cplx::zero(bits);
        let mut qpow = Real::one(bits); // q^{k(k+1)}
        let mut max_log = f64::NEG_INFINITY;
        for k in 0..10_000i64 {
            let odd = 2 * k + 1;
            let log_bound =
                (k * (k + 1)) as f64 * ln_q + odd as f64 * im_v + 3.0 * (odd as f64).ln();
            max_log = max_log.max(log_bound);
            if k > 0 && log_bound < max_log - budget {
                break;
            }
            let arg = v * odd as i32;
            let sin = arg.sin();
            let cos = arg.cos();
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let c = &qpow * sign;
            let o = odd as i32;
            theta += &(&sin * &c);
            d1 += &(&cos * &(&c * o));
            d2 -= &(&sin * &(&c * (o * o)));
            d3 -= &(&cos * &(&c * (o * o * o)));
            qpow *= q.powi(2 * (k as i32 + 1));
        }
        let scale = q_quarter * 2;
        ThetaValues {
            theta: theta * &scale,
            d1: d1 * &scale,
            d2: d2 * &scale,
            d3: d3 * &scale,
        }
    }

    fn theta_arg(&self, z: &Cplx) -> Cplx {
        z * &(self.omega1.pi_like() / (&self.omega1 * 2))
    }

    pub(super) fn theta_derivs(&self, v: &Cplx) -> (Cplx, Cplx) {
        let t = self.theta1(v);
        (t.theta, t.d1)
    }

    /// `σ(z)` from the theta series without argument reduction.
    pub fn sigma_theta(&self, z: &Cplx) -> Cplx {
        let v = self.theta_arg(z);
        let t = self.theta1(&v);
        let pi = self.omega1.pi_like();
        let pref = &self.omega1 * 2 / &pi;
        let gauss = (z.square() * &(&self.eta1 / (&self.omega1 * 2))).exp();
        gauss * t.theta * &(pref / &self.theta1_prime0)
    }

    /// `ζ(z) = η1·z/ω1 + (π/2ω1)·θ1'/θ1`.
    pub fn zeta_theta(&self, z: &Cplx) -> Cplx {
        let v = self.theta_arg(z);
        let t = self.theta1(&v);
        let c = self.omega1.pi_like() / (&self.omega1 * 2);
        z * &(&self.eta1 / &self.omega1) + t.d1 / t.theta * &c
    }

    /// `℘(z) = −η1/ω1 − (π/2ω1)²·(θ1θ1'' − θ1'²)/θ1²`.
    pub fn wp_theta(&self, z: &Cplx) -> Cplx {
        let v = self.theta_arg(z);
        let t = self.theta1(&v);
        let c = (self.omega1.pi_like() / (&self.omega1 * 2)).square();
        let log2 = (&t.theta * &t.d2 - t.d1.square()) / t.theta.square();
        Cplx::from_real(&(-(&self.eta1 / &self.omega1))) - log2 * &c
    }

    /// `η1` from the theta series alone: `−π²θ1'''(0)/(12ω1·θ1'(0))`.
    pub fn eta1_theta(&self) -> Real {
        let t = self.theta1(&Cplx::zero(self.bits()));
        let pi = self.omega1.pi_like();
        -(pi.square() * t.d3.re() / (&self.omega1 * 12 * t.d1.re()))
    }

    /// `℘` at a lattice point through real Jacobi functions.
    pub fn wp(&self, z: &LatticePoint) -> Result<Real> {
        z.guard(self, "℘")?;
        let u = &self.sqrt_s * &z.x;
        let j = self.sncndn(&u);
        let val = match (z.m.rem_euclid(2), z.n.rem_euclid(2)) {
            (0, 0) => &self.s / j.sn.square(),
            (1, 0) => &self.s * j.dn.square() / j.cn.square(),
            (0, 1) => &self.s * &self.k2 * j.sn.square(),
            _ => &self.s * &self.k2 * j.cn.square() / j.dn.square(),
        };
        Ok(&self.e3 + val)
    }

    /// `℘'` at a lattice point through real Jacobi functions.
    pub fn wp_prime(&self, z: &LatticePoint) -> Result<Real> {
        z.guard(self, "℘'")?;
        let u = &self.sqrt_s * &z.x;
        let j = self.sncndn(&u);
        let c = &self.s * &self.sqrt_s * 2;
        let kp2 = self.kprime.square();
        Ok(match (z.m.rem_euclid(2), z.n.rem_euclid(2)) {
            (0, 0) => -(c * &j.cn * &j.dn / j.sn.powi(3)),
            (1, 0) => c * kp2 * &j.sn * &j.dn / j.cn.powi(3),
            (0, 1) => c * &self.k2 * &j.sn * &j.cn * &j.dn,
            _ => -(c * &self.k2 * kp2 * &j.sn * &j.cn / j.dn.powi(3)),
        })
    }

    /// `ζ` at a lattice point through the Jacobi Zeta function.
    pub fn zeta(&self, z: &LatticePoint) -> Result<Cplx> {
        z.guard(self, "ζ")?;
        let m0 = z.m.rem_euclid(2);
        let n0 = z.n.rem_euclid(2);
        let u = &self.sqrt_s * &z.x;
        let j = self.sncndn(&u);
        let zz = self.jacobi_zeta(&u);
        let linear = &z.x * &self.eta1 / &self.omega1;
        let jac = match (m0, n0) {
            (0, 0) => zz + &j.cn * &j.dn / &j.sn,
            (1, 0) => zz - &j.sn * &j.dn / &j.cn,
            (0, 1) => zz,
            _ => zz - &self.k2 * &j.sn * &j.cn / &j.dn,
        };
        let re = linear + &self.sqrt_s * jac + &self.eta1 * (z.m as i32);
        let im = &self.eta3 * z.n as i32;
        Ok(Cplx::new(&re, &im))
    }

    /// `σ` at a lattice point: reduction to the fundamental cell, then the
    /// theta series.
    pub fn sigma(&self, z: &LatticePoint) -> Cplx {
        let re = z.real_part(self);
        let period = &self.omega1 * 2;
        let a = (&re / &period).round().round_to_i64();
        let n0 = z.n.rem_euclid(2);
        let b = (z.n - n0) / 2;
        let x0 = re - &period * a as i32;
        let z0 = Cplx::new(&x0, &(&self.omega3 * n0 as i32));
        let base = self.sigma_theta(&z0);
        if a == 0 && b == 0 {
            return base;
        }
        // σ(z + 2Ω) = (−1)^{a+b+ab} exp(2η_Ω (z + Ω)) σ(z), Ω = aω1 + bω3.
        let omega_big = Cplx::new(&(&self.omega1 * a as i32), &(&self.omega3 * b as i32));
        let eta_big = Cplx::new(&(&self.eta1 * a as i32), &(&self.eta3 * b as i32));
        let factor = (eta_big * &(z0 + &omega_big) * 2i32).exp();
        let signed = base * factor;
        if (a + b + a * b).rem_euclid(2) == 1 {
            -signed
        } else {
            signed
        }
    }

    /// Co-sigma `σ_α(z) = σ(z + ω_α)·exp(−z·η_α)/σ(ω_α)`.
    pub fn cosigma(&self, alpha: HalfPeriod, z: &LatticePoint) -> Cplx {
        let shifted = self.sigma(&z.plus(alpha));
        let at_half = self.sigma(&alpha.point(self.bits()));
        let expo = (-(z.to_complex(self) * self.eta(alpha))).exp();
        shifted * expo / at_half
    }
}

/// `℘(z)` on the lines the Toda formulas use.
pub fn weierstrass_p(z: &LatticePoint, ctx: &EllipticContext) -> Result<Real> {
    ctx.wp(z)
}

/// `ζ(z)` on the lines the Toda formulas use.
pub fn weierstrass_zeta(z: &LatticePoint, ctx: &EllipticContext) -> Result<Cplx> {
    ctx.zeta(z)
}

/// `σ(z)`; zero at lattice points rather than an error.
pub fn weierstrass_sigma(z: &LatticePoint, ctx: &EllipticContext) -> Cplx {
    ctx.sigma(z)
}
