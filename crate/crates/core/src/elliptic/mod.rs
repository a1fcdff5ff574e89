//! Weierstrass and Jacobi elliptic functions for a real root triple
//! `e1 > e2 > e3`, `e1 + e2 + e3 = 0`.
//!
//! The lattice is spanned by the real half-period `ω1` and the purely
//! imaginary half-period `ω3 = i·Ω3`; `ω2 = −ω1 − ω3`. The Toda formulas
//! only ever evaluate the Weierstrass functions at points
//! `x + m·ω1 + n·ω3` with real `x` and integer `m, n`, so
//! [`LatticePoint`] represents exactly those points. Every evaluation
//! reduces the integers modulo two and applies the quasi-periodicity rules,
//! which keeps all Jacobi-function arguments real.
//!
//! ```
//! use elliptic_toda::elliptic::{EllipticContext, HalfPeriod};
//!
//! let ctx = EllipticContext::from_decimal("0.7", "0.1", 30).unwrap();
//! assert!((ctx.k2.to_f64() - 0.6).abs() < 1e-15);
//! // ℘(ω_j) = e_j
//! let p2 = ctx.wp(&HalfPeriod::Omega2.point(ctx.bits())).unwrap();
//! assert!((p2 - &ctx.e2).abs() < 1e-25);
//! ```

mod jacobi;
mod weierstrass;

pub use jacobi::{complete_E, complete_K, jacobi_sncndn, jacobi_zeta, Jacobi, SnCnDn};
pub use weierstrass::{weierstrass_p, weierstrass_sigma, weierstrass_zeta, ThetaValues};

use crate::arith::{digits_to_bits, Cplx, Real};
use crate::error::{domain, Error, Result};

/// Minimum supported working precision in decimal digits.
pub const MIN_PRECISION_DIGITS: u32 = 15;

/// Distance to a lattice point below which evaluations report a pole.
pub const POLE_GUARD: f64 = 1e-8;

/// The three half-periods.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum HalfPeriod {
    Omega1,
    Omega2,
    Omega3,
}

impl HalfPeriod {
    /// Lattice coordinates `(m, n)` with `ω = m·ω1 + n·ω3`.
    pub fn coords(self) -> (i64, i64) {
        match self {
            HalfPeriod::Omega1 => (1, 0),
            HalfPeriod::Omega2 => (-1, -1),
            HalfPeriod::Omega3 => (0, 1),
        }
    }

    pub fn point(self, bits: u32) -> LatticePoint {
        let (m, n) = self.coords();
        LatticePoint::new(Real::zero(bits), m, n)
    }

    pub fn index(self) -> usize {
        match self {
            HalfPeriod::Omega1 => 1,
            HalfPeriod::Omega2 => 2,
            HalfPeriod::Omega3 => 3,
        }
    }
}

/// The point `x + m·ω1 + n·ω3`.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticePoint {
    pub x: Real,
    pub m: i64,
    pub n: i64,
}

impl LatticePoint {
    pub fn new(x: Real, m: i64, n: i64) -> LatticePoint {
        LatticePoint { x, m, n }
    }

    /// A point on the real axis.
    pub fn real(x: Real) -> LatticePoint {
        LatticePoint::new(x, 0, 0)
    }

    /// A point on the line `ℝ + ω3`.
    pub fn shifted3(x: Real) -> LatticePoint {
        LatticePoint::new(x, 0, 1)
    }

    /// `j·z`.
    pub fn scale(&self, j: i64) -> LatticePoint {
        LatticePoint::new(&self.x * j as i32, self.m * j, self.n * j)
    }

    pub fn add(&self, other: &LatticePoint) -> LatticePoint {
        LatticePoint::new(&self.x + &other.x, self.m + other.m, self.n + other.n)
    }

    pub fn sub(&self, other: &LatticePoint) -> LatticePoint {
        LatticePoint::new(&self.x - &other.x, self.m - other.m, self.n - other.n)
    }

    pub fn neg(&self) -> LatticePoint {
        LatticePoint::new(-&self.x, -self.m, -self.n)
    }

    /// Adds a half-period.
    pub fn plus(&self, h: HalfPeriod) -> LatticePoint {
        let (m, n) = h.coords();
        LatticePoint::new(self.x.clone(), self.m + m, self.n + n)
    }

    /// Adds a real offset.
    pub fn plus_real(&self, dx: &Real) -> LatticePoint {
        LatticePoint::new(&self.x + dx, self.m, self.n)
    }

    /// The point as a complex number.
    pub fn to_complex(&self, ctx: &EllipticContext) -> Cplx {
        let re = &self.x + &ctx.omega1 * self.m as i32;
        let im = &ctx.omega3 * self.n as i32;
        Cplx::new(&re, &im)
    }

    /// Real part `x + m·ω1`.
    pub fn real_part(&self, ctx: &EllipticContext) -> Real {
        &self.x + &ctx.omega1 * self.m as i32
    }

    /// Distance to the nearest lattice point `2aω1 + 2bω3` when `n` is even.
    /// `None` when the point lies on an odd `ω3` line, which carries no poles.
    pub fn pole_distance(&self, ctx: &EllipticContext) -> Option<Real> {
        if self.n.rem_euclid(2) != 0 {
            return None;
        }
        let re = self.real_part(ctx);
        let period = &ctx.omega1 * 2;
        let j = (&re / &period).round();
        Some((re - j * period).abs())
    }

    pub(crate) fn guard(&self, ctx: &EllipticContext, what: &str) -> Result<()> {
        if let Some(d) = self.pole_distance(ctx) {
            if d < POLE_GUARD {
                return Err(Error::Pole {
                    location: format!("{} + {}ω1 + {}ω3", self.x.to_decimal(12), self.m, self.n),
                    detail: format!("{what} evaluated {} from a lattice point", d.to_decimal(3)),
                });
            }
        }
        Ok(())
    }
}

/// Lattice data derived from the roots `e1 > e2 > e3`.
#[derive(Debug, Clone)]
pub struct EllipticContext {
    pub e1: Real,
    pub e2: Real,
    pub e3: Real,
    /// Real half-period.
    pub omega1: Real,
    /// Imaginary part of the half-period `ω3`.
    pub omega3: Real,
    pub eta1: Real,
    /// Imaginary part of `η3 = ζ(ω3)`.
    pub eta3: Real,
    pub k: Real,
    pub kprime: Real,
    pub k2: Real,
    pub big_k: Real,
    pub big_kprime: Real,
    pub big_e: Real,
    /// `v = exp(−πK/K')`, the decay base of the Fourier coefficients.
    pub nome_v: Real,
    /// `q = exp(−πK'/K)`, the nome of the theta series.
    pub nome_q: Real,
    pub g2: Real,
    pub g3: Real,
    /// `e1 − e3`.
    pub s: Real,
    /// `sqrt(e1 − e3)`.
    pub sqrt_s: Real,
    pub precision_digits: u32,
    jacobi: Jacobi,
    theta1_prime0: Real,
}

impl EllipticContext {
    /// Builds the context from `e1`, `e2` (`e3 = −e1 − e2`).
    pub fn new(e1: &Real, e2: &Real, precision_digits: u32) -> Result<EllipticContext> {
        if precision_digits < MIN_PRECISION_DIGITS {
            return Err(Error::Config(format!(
                "precision of {precision_digits} digits is below the minimum of {MIN_PRECISION_DIGITS}"
            )));
        }
        let bits = digits_to_bits(precision_digits);
        let e1 = e1.with_prec(bits);
        let e2 = e2.with_prec(bits);
        let e3 = -(&e1 + &e2);
        if !(e1 > e2 && e2 > e3) {
            return Err(domain(format!(
                "roots must satisfy e1 > e2 > e3 = -e1-e2; got e1 = {}, e2 = {}, e3 = {}",
                e1.to_decimal(12),
                e2.to_decimal(12),
                e3.to_decimal(12)
            )));
        }
        let s = &e1 - &e3;
        let k2 = (&e2 - &e3) / &s;
        let kp2 = (&e1 - &e2) / &s;
        Self::assemble(e1, e2, e3, s, k2, kp2, precision_digits)
    }

    /// Parses decimal `e1`, `e2` at the requested precision.
    pub fn from_decimal(e1: &str, e2: &str, precision_digits: u32) -> Result<EllipticContext> {
        let bits = digits_to_bits(precision_digits.max(MIN_PRECISION_DIGITS));
        let e1 = Real::parse(e1, bits).map_err(|e| domain(e.to_string()))?;
        let e2 = Real::parse(e2, bits).map_err(|e| domain(e.to_string()))?;
        Self::new(&e1, &e2, precision_digits)
    }

    /// The normalized context with `e1 − e3 = 1` and modulus `k²`.
    pub fn from_k2(k2: &Real, precision_digits: u32) -> Result<EllipticContext> {
        if precision_digits < MIN_PRECISION_DIGITS {
            return Err(Error::Config(format!(
                "precision of {precision_digits} digits is below the minimum of {MIN_PRECISION_DIGITS}"
            )));
        }
        if !(*k2 > 0.0 && *k2 < 1.0) {
            return Err(domain(format!(
                "k² = {} must lie in (0, 1)",
                k2.to_decimal(12)
            )));
        }
        let bits = digits_to_bits(precision_digits);
        let k2 = k2.with_prec(bits);
        let e3 = -(1 + &k2) / 3;
        let e2 = &e3 + &k2;
        let e1 = &e3 + 1;
        let kp2 = 1 - &k2;
        Self::assemble(e1, e2, e3, Real::one(bits), k2, kp2, precision_digits)
    }

    fn assemble(
        e1: Real,
        e2: Real,
        e3: Real,
        s: Real,
        k2: Real,
        kp2: Real,
        precision_digits: u32,
    ) -> Result<EllipticContext> {
        let jacobi = Jacobi::from_k2(&k2)?;
        let dual = Jacobi::from_k2(&kp2)?;
        let big_k = jacobi.big_k().clone();
        let big_kprime = dual.big_k().clone();
        let big_e = jacobi.big_e().clone();
        let k = jacobi.k().clone();
        let kprime = jacobi.kprime().clone();
        let sqrt_s = s.sqrt();
        let omega1 = &big_k / &sqrt_s;
        let omega3 = &big_kprime / &sqrt_s;
        let pi = big_k.pi_like();
        let nome_v = (-(&pi * &big_k / &big_kprime)).exp();
        let nome_q = (-(&pi * &big_kprime / &big_k)).exp();
        let eta1 = &sqrt_s * &big_e - &e1 * &omega1;
        let g2 = (e1.square() + e2.square() + e3.square()) * 2;
        let g3 = &e1 * &e2 * &e3 * 4;
        let mut ctx = EllipticContext {
            e1,
            e2,
            e3,
            omega1,
            omega3,
            eta1,
            eta3: Real::zero(k.prec()),
            k,
            kprime,
            k2,
            big_k,
            big_kprime,
            big_e,
            nome_v,
            nome_q,
            g2,
            g3,
            s,
            sqrt_s,
            precision_digits,
            jacobi,
            theta1_prime0: Real::zero(1),
        };
        ctx.theta1_prime0 = ctx.theta_derivs(&Cplx::zero(ctx.bits())).1.re();
        let eta3 = ctx.zeta_theta(&HalfPeriod::Omega3.point(ctx.bits()).to_complex(&ctx));
        ctx.eta3 = eta3.im();
        Ok(ctx)
    }

    /// Working precision in bits.
    pub fn bits(&self) -> u32 {
        self.e1.prec()
    }

    pub fn jacobi(&self) -> &Jacobi {
        &self.jacobi
    }

    /// The half-period `ω_j` as a complex number.
    pub fn omega(&self, h: HalfPeriod) -> Cplx {
        h.point(self.bits()).to_complex(self)
    }

    /// `η_j = ζ(ω_j)` as a complex number.
    pub fn eta(&self, h: HalfPeriod) -> Cplx {
        match h {
            HalfPeriod::Omega1 => Cplx::from_real(&self.eta1),
            HalfPeriod::Omega3 => Cplx::imag(&self.eta3),
            HalfPeriod::Omega2 => Cplx::new(&(-&self.eta1), &(-&self.eta3)),
        }
    }

    /// The root `e_j = ℘(ω_j)`.
    pub fn root(&self, h: HalfPeriod) -> &Real {
        match h {
            HalfPeriod::Omega1 => &self.e1,
            HalfPeriod::Omega2 => &self.e2,
            HalfPeriod::Omega3 => &self.e3,
        }
    }

    /// A real constant at working precision.
    pub fn real(&self, x: f64) -> Real {
        Real::from_f64(x, self.bits())
    }

    /// Parses a decimal constant at working precision.
    pub fn parse(&self, s: &str) -> Result<Real> {
        Real::parse(s, self.bits()).map_err(|e| domain(e.to_string()))
    }

    /// `(sn, cn, dn)` of the context modulus.
    pub fn sncndn(&self, u: &Real) -> SnCnDn {
        self.jacobi.sncndn(u)
    }

    /// Jacobi Zeta of the context modulus.
    pub fn jacobi_zeta(&self, u: &Real) -> Real {
        self.jacobi.zeta(u)
    }

    /// Residuals of the defining invariants, by name.
    pub fn invariant_residuals(&self) -> Vec<(&'static str, Real)> {
        let sum_roots = (&self.e1 + &self.e2 + &self.e3).abs();
        let k2 = (&self.k2 - (&self.e2 - &self.e3) / &self.s).abs();
        let pyth = (self.k.square() + self.kprime.square() - 1).abs();
        let big_k = (&self.big_k - &self.sqrt_s * &self.omega1).abs();
        let big_kp = (&self.big_kprime - &self.sqrt_s * &self.omega3).abs();
        let nome =
            (&self.nome_v - (-(self.big_k.pi_like() * &self.big_k / &self.big_kprime)).exp()).abs();
        let eta_sum = (self.eta(HalfPeriod::Omega1)
            + self.eta(HalfPeriod::Omega2)
            + self.eta(HalfPeriod::Omega3))
        .abs();
        // η2ω1 − η1ω2 = iπ/2
        let legendre = self.eta(HalfPeriod::Omega2) * self.omega(HalfPeriod::Omega1)
            - self.eta(HalfPeriod::Omega1) * self.omega(HalfPeriod::Omega2)
            - Cplx::imag(&(self.big_k.pi_like() / 2));
        vec![
            ("roots sum to zero", sum_roots),
            ("k^2 from roots", k2),
            ("k^2 + k'^2 = 1", pyth),
            ("K = sqrt(e1-e3) omega1", big_k),
            ("K' = sqrt(e1-e3) |omega3|", big_kp),
            ("nome v = exp(-pi K/K')", nome),
            ("eta1 + eta2 + eta3 = 0", eta_sum),
            ("Legendre relation", legendre.abs()),
        ]
    }
}

/// Builds a context from `e1`, `e2` at `precision_digits`.
pub fn build_context(e1: &Real, e2: &Real, precision_digits: u32) -> Result<EllipticContext> {
    EllipticContext::new(e1, e2, precision_digits)
}
