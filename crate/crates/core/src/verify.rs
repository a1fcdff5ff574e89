//! Verification harness.
//!
//! Each suite collects named residuals with their tolerances into a
//! [`VerificationReport`]. A failing or erroring check is recorded and the
//! suite carries on. Sample points come from a seeded ChaCha generator, so a
//! report is reproducible from its inputs and the seed in its metadata.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{bits_to_digits, Cplx, Real};
use crate::degenerate::{
    krall_laguerre_orthogonality, meixner_modified_c0, meixner_modified_measure,
    meixner_modified_orthogonality, mp_coeffs, trig_finite_measure, trig_finite_table,
    DegenerateParams,
};
use crate::elliptic::{EllipticContext, HalfPeriod, LatticePoint};
use crate::error::{Error, Result};
use crate::findiff::{derivative, second_derivative};
use crate::measure::{
    build_measure, finite_measure, measure_moments, orthogonality_gram, u_vanishes, DiscreteMeasure,
};
use crate::moments::{
    coeffs_from_moments_upto, hankel_analysis, jfraction_eval, moments, polynomial_values,
    stieltjes_series, HankelPolicy,
};
use crate::toda::{
    c0_eval, coeffs, h_closed, hankel_closed, theorem2_coeffs, CaseTag, CoefficientTable,
    TodaParams,
};

/// Default seed for sampled suites.
pub const DEFAULT_SEED: u64 = 20_240_917;

/// One residual against its tolerance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub residual: Real,
    pub tolerance: Real,
    pub pass: bool,
    /// The error that prevented evaluation, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Precision and sampling metadata.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Meta {
    /// Working precision in decimal digits.
    pub precision: u32,
    pub seed: Option<u64>,
    /// Grid points left out because they sit on a pole.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub skipped: Vec<String>,
}

/// The outcome of one or more suites.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub fixture: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    pub meta: Meta,
}

fn tol(x: f64) -> Real {
    Real::parse(&format!("{x:e}"), 64).expect("formatted float parses")
}

/// `|a − b| / max(1, |a|, |b|)`.
fn mixed_diff(a: &Real, b: &Real) -> Real {
    let scale = a.abs().max(b.abs()).max(Real::one(a.prec()));
    (a - b).abs() / scale
}

impl VerificationReport {
    pub fn new(suite: &str, bits: u32) -> VerificationReport {
        VerificationReport {
            suite: suite.to_string(),
            fixture: BTreeMap::new(),
            checks: Vec::new(),
            meta: Meta {
                precision: bits_to_digits(bits),
                seed: None,
                skipped: Vec::new(),
            },
        }
    }

    pub fn fixture(mut self, key: &str, value: impl Into<String>) -> Self {
        self.fixture.insert(key.to_string(), value.into());
        self
    }

    /// Records `residual < tolerance`.
    pub fn push(&mut self, name: impl Into<String>, residual: Real, tolerance: f64) {
        let tolerance = tol(tolerance);
        let pass = residual.is_finite() && residual < tolerance;
        self.checks.push(Check {
            name: name.into(),
            residual,
            tolerance,
            pass,
            error: None,
        });
    }

    /// Records a check that could not be evaluated.
    pub fn push_error(&mut self, name: impl Into<String>, err: &Error, tolerance: f64) {
        self.checks.push(Check {
            name: name.into(),
            residual: Real::zero(64),
            tolerance: tol(tolerance),
            pass: false,
            error: Some(err.to_string()),
        });
    }

    /// Records the residual of `f`, or its error.
    pub fn record<F: FnOnce() -> Result<Real>>(
        &mut self,
        name: impl Into<String>,
        tolerance: f64,
        f: F,
    ) {
        let name = name.into();
        match f() {
            Ok(r) => self.push(name, r, tolerance),
            Err(e) => self.push_error(name, &e, tolerance),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// Re-judges every check against one tolerance.
    pub fn with_tolerance(mut self, tolerance: &Real) -> Self {
        for c in &mut self.checks {
            c.tolerance = tolerance.clone();
            c.pass = c.error.is_none() && c.residual.is_finite() && c.residual < *tolerance;
        }
        self
    }

    /// Appends another report's checks under its suite name.
    pub fn merge(&mut self, other: VerificationReport) {
        for (k, v) in other.fixture {
            self.fixture.insert(format!("{}.{k}", other.suite), v);
        }
        for mut c in other.checks {
            c.name = format!("{}: {}", other.suite, c.name);
            self.checks.push(c);
        }
        self.meta.skipped.extend(other.meta.skipped);
        if self.meta.seed.is_none() {
            self.meta.seed = other.meta.seed;
        }
    }
}

/// A coefficient source for [`toda_residuals`].
#[derive(Debug, Clone, Copy)]
pub enum Subject<'a> {
    Elliptic(&'a TodaParams),
    Degenerate(&'a DegenerateParams),
}

impl Subject<'_> {
    fn coeffs(&self, n: usize, t: &Real) -> Result<(Real, Real)> {
        match self {
            Subject::Elliptic(p) => coeffs(n, t, p),
            Subject::Degenerate(p) => p.at(t).coeffs(n),
        }
    }

    fn name(&self) -> String {
        match self {
            Subject::Elliptic(p) => p.case_tag.name().to_string(),
            Subject::Degenerate(p) => p.family.name().to_string(),
        }
    }

    fn bits(&self) -> u32 {
        match self {
            Subject::Elliptic(p) => p.bits(),
            Subject::Degenerate(p) => p.t.prec(),
        }
    }
}

/// Residuals of `u̇_n = u_n(b_n − b_{n−1})` and `ḃ_n = u_{n+1} − u_n` by
/// central differences with step `10⁻⁵`, maximized over `n` at each grid
/// point. Grid points on a pole are skipped and listed in the metadata.
pub fn toda_residuals(
    subject: Subject<'_>,
    t_grid: &[Real],
    n_range: std::ops::RangeInclusive<usize>,
) -> VerificationReport {
    let bits = subject.bits();
    let mut report = VerificationReport::new("toda", bits)
        .fixture("subject", subject.name())
        .fixture(
            "n_range",
            format!("{}..={}", n_range.start(), n_range.end()),
        )
        .fixture(
            "t_grid",
            t_grid
                .iter()
                .map(|t| t.to_decimal(12))
                .collect::<Vec<_>>()
                .join(","),
        );
    let h = tol(1e-5).with_prec(bits);
    for t in t_grid {
        let at = t.to_decimal(8);
        let result = (|| -> Result<(Real, Real)> {
            let mut worst_u = Real::zero(bits);
            let mut worst_b = Real::zero(bits);
            for n in n_range.clone() {
                let (b, u) = subject.coeffs(n, t)?;
                let (_, u_next) = subject.coeffs(n + 1, t)?;
                let b_dot = derivative(|s: &Real| subject.coeffs(n, s).map(|c| c.0), t, &h)?;
                worst_b = worst_b.max(mixed_diff(&b_dot, &(&u_next - &u)));
                if n >= 1 {
                    let (b_prev, _) = subject.coeffs(n - 1, t)?;
                    let u_dot = derivative(|s: &Real| subject.coeffs(n, s).map(|c| c.1), t, &h)?;
                    worst_u = worst_u.max(mixed_diff(&u_dot, &(&u * (&b - &b_prev))));
                }
            }
            Ok((worst_u, worst_b))
        })();
        match result {
            Ok((ru, rb)) => {
                report.push(format!("u-equation at t = {at}"), ru, 1e-8);
                report.push(format!("b-equation at t = {at}"), rb, 1e-8);
            }
            Err(Error::Pole { location, .. }) => report
                .meta
                .skipped
                .push(format!("t = {at}: pole at {location}")),
            Err(e) => report.push_error(format!("Toda equations at t = {at}"), &e, 1e-8),
        }
    }
    report
}

fn max_rel<'a>(pairs: impl Iterator<Item = (&'a Real, &'a Real)>) -> Real {
    let mut worst: Option<Real> = None;
    for (a, b) in pairs {
        let d = mixed_diff(a, b);
        worst = Some(match worst {
            Some(w) => w.max(d),
            None => d,
        });
    }
    worst.unwrap_or_else(|| Real::zero(64))
}

fn rel(a: &Real, b: &Real) -> Real {
    (a - b).abs() / b.abs().max(Real::epsilon(b.prec()))
}

/// Closed forms against the moment-derived recurrence at one time:
/// `b_n`, `u_n` (relative `10⁻⁹`), `h_n` (`10⁻⁹`), `D_n` (`10⁻⁸`), and the
/// Sylvester relation `(ln D_n)'' = D_{n−1}D_{n+1}/D_n²` (`10⁻⁶`). At `t = 0`
/// the Stieltjes–Carlitz values are checked, and at `t = ω1/2` (case (i),
/// `e1 − e3 = 1`) the residue-class formulas.
pub fn cross_validate(p: &TodaParams, t: &Real, n_max: usize) -> Result<VerificationReport> {
    let bits = p.bits();
    let mut report = VerificationReport::new("cross", bits)
        .fixture("case", p.case_tag.name())
        .fixture("t", t.to_decimal(20))
        .fixture("n_max", n_max.to_string())
        .fixture("e1", p.ctx.e1.to_decimal(20))
        .fixture("e2", p.ctx.e2.to_decimal(20))
        .fixture("w", p.w.to_decimal(20));
    let closed = CoefficientTable::closed_form(p, t, n_max)?;
    let m = moments(p, t, 2 * n_max + 2)?;
    let derived = coeffs_from_moments_upto(&m, n_max, HankelPolicy::default())?;
    report.push(
        "b_n closed vs moments",
        max_rel(closed.b.iter().zip(&derived.b)),
        1e-9,
    );
    report.push(
        "u_n closed vs moments",
        max_rel(closed.u.iter().zip(&derived.u)),
        1e-9,
    );

    let dets = hankel_analysis(&m.values[..2 * n_max + 1], HankelPolicy::default());
    let top = (n_max + 1).min(dets.values.len() - 1);
    let mut worst_h = Real::zero(bits);
    let mut worst_d = Real::zero(bits);
    for n in 0..top {
        let h = &dets.values[n + 1] / &dets.values[n];
        worst_h = worst_h.max(rel(&h, &h_closed(n, t, p)?));
        worst_d = worst_d.max(rel(&dets.values[n + 1], &hankel_closed(n + 1, t, p)?));
    }
    report.push("h_n closed vs Hankel ratio", worst_h, 1e-9);
    report.push("D_n closed vs Hankel determinant", worst_d, 1e-8);

    report.record("Sylvester relation", 1e-6, || {
        let step = tol(1e-4).with_prec(bits);
        let mut worst = Real::zero(bits);
        for n in 1..=n_max.min(5) {
            let dd = second_derivative(
                |s: &Real| Ok::<_, Error>(hankel_closed(n, s, p)?.ln()),
                t,
                &step,
            )?;
            let d = |k| hankel_closed(k, t, p);
            let rhs = d(n - 1)? * d(n + 1)? / d(n)?.square();
            worst = worst.max(rel(&dd, &rhs));
        }
        Ok(worst)
    });

    if t.is_zero() && matches!(p.case_tag, CaseTag::CaseI | CaseTag::CaseII) {
        let ctx = &p.ctx;
        let w2 = p.w.square();
        let (even, odd) = match p.case_tag {
            CaseTag::CaseI => (&ctx.e1 - &ctx.e2, &ctx.e1 - &ctx.e3),
            _ => (&ctx.e1 - &ctx.e3, &ctx.e1 - &ctx.e2),
        };
        let mut worst = Real::zero(bits);
        for n in 0..=n_max {
            let expect = if n % 2 == 0 {
                let m = (n / 2) as i32;
                &w2 * &even * (4 * m * m)
            } else {
                &w2 * &odd * (n * n) as i32
            };
            worst = worst
                .max((&closed.u[n] - &expect).abs())
                .max(closed.b[n].abs());
            worst = worst
                .max((&derived.u[n] - &expect).abs())
                .max(derived.b[n].abs());
        }
        report.push("Stieltjes–Carlitz values at t = 0", worst, 1e-12);
    }

    let half = &p.ctx.omega1 / 2;
    let unit_spread = (&p.ctx.s - 1).abs() < 1e-30 && (&p.w - 1).abs() < 1e-30;
    if p.case_tag == CaseTag::CaseI && unit_spread && (t - &half).abs() < 1e-30 {
        report.record("residue-class formulas at t = ω1/2", 1e-10, || {
            let mut worst = Real::zero(bits);
            for n in 0..=n_max.max(20) {
                let (b, u) = theorem2_coeffs(n, &p.ctx.kprime)?;
                let (bg, ug) = coeffs(n, t, p)?;
                worst = worst.max((bg - b).abs()).max((ug - u).abs());
            }
            Ok(worst)
        });
        report.record("c0 at t = ω1/2", 1e-12, || {
            let expect = ((1 + p.ctx.kprime.clone()) / &p.ctx.kprime).sqrt();
            Ok((c0_eval(t, p)? - expect).abs())
        });
    }
    Ok(report)
}

/// The elliptic-kernel identities at `samples` seeded points, each
/// maximized over the sample, with ceiling `10⁻¹²`.
pub fn identity_suite(ctx: &EllipticContext, samples: usize, seed: u64) -> VerificationReport {
    let bits = ctx.bits();
    let mut report = VerificationReport::new("identities", bits)
        .fixture("e1", ctx.e1.to_decimal(20))
        .fixture("e2", ctx.e2.to_decimal(20))
        .fixture("samples", samples.to_string());
    report.meta.seed = Some(seed);
    const TOL: f64 = 1e-12;
    for (name, r) in ctx.invariant_residuals() {
        report.push(name, r, TOL);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = |x: f64| Real::from_f64(x, bits);
    // points in (−0.95, 0.95)·ω1 away from the origin
    let real_point = |rng: &mut ChaCha8Rng| loop {
        let x: f64 = rng.random_range(-0.95..0.95);
        if x.abs() > 0.05 {
            return &ctx.omega1 * x;
        }
    };
    let pts: Vec<(Real, Real)> = (0..samples)
        .map(|_| (real_point(&mut rng), real_point(&mut rng)))
        .collect();
    let us: Vec<(Real, Real)> = (0..samples)
        .map(|_| {
            (
                r(rng.random_range(-3.0..3.0)),
                r(rng.random_range(-3.0..3.0)),
            )
        })
        .collect();
    let one = Real::one(bits);
    let cmax = |a: Real, b: Real| a.max(b);

    report.record("wp at half-periods", TOL, || {
        let mut w = Real::zero(bits);
        for h in [HalfPeriod::Omega1, HalfPeriod::Omega2, HalfPeriod::Omega3] {
            w = cmax(w, (ctx.wp(&h.point(bits))? - ctx.root(h)).abs());
        }
        Ok(w)
    });
    report.record("half-argument values", TOL, || {
        let half = &ctx.omega1 / 2;
        let p = ctx.wp(&LatticePoint::real(half.clone()))?;
        let r1 = (p - (&ctx.e1 + &ctx.s * &ctx.kprime)).abs();
        let p3 = ctx.wp(&LatticePoint::shifted3(half.clone()))?;
        let r2 = (p3 - (&ctx.e3 * &ctx.kprime + &ctx.e2) / (1 + ctx.kprime.clone())).abs();
        let z = ctx.zeta(&LatticePoint::real(half))?;
        let r3 = (z.re() * 2 - (&ctx.eta1 + &ctx.sqrt_s * (&ctx.kprime + 1))).abs();
        Ok(r1.max(r2).max(r3))
    });
    report.record("sigma-wp identity", TOL, || {
        let mut w = Real::zero(bits);
        for (u, v) in &pts {
            if (u - v).abs() < 1e-3 || (u + v).abs() < 1e-3 {
                continue;
            }
            let s = |x: &Real| ctx.sigma(&LatticePoint::real(x.clone()));
            let lhs = s(&(u + v)) * s(&(u - v)) / (s(u).square() * s(v).square());
            let rhs =
                ctx.wp(&LatticePoint::real(v.clone()))? - ctx.wp(&LatticePoint::real(u.clone()))?;
            w = cmax(w, (lhs - Cplx::from_real(&rhs)).abs() / (rhs.abs() + &one));
        }
        Ok(w)
    });
    report.record("Jacobi Zeta addition theorem", TOL, || {
        let mut w = Real::zero(bits);
        for (u, v) in &us {
            let s = u + v;
            let lhs = ctx.jacobi_zeta(&s);
            let rhs = ctx.jacobi_zeta(u) + ctx.jacobi_zeta(v)
                - &ctx.k2 * ctx.sncndn(u).sn * ctx.sncndn(v).sn * ctx.sncndn(&s).sn;
            w = cmax(w, (lhs - rhs).abs());
        }
        Ok(w)
    });
    report.record("Jacobi Zeta shifts by K and 2K", TOL, || {
        let mut w = Real::zero(bits);
        for (u, _) in &us {
            let j = ctx.sncndn(u);
            let by_k = ctx.jacobi_zeta(&(u + &ctx.big_k))
                - (ctx.jacobi_zeta(u) - &ctx.k2 * &j.sn * &j.cn / &j.dn);
            let by_2k = ctx.jacobi_zeta(&(u + &ctx.big_k * 2)) - ctx.jacobi_zeta(u);
            w = cmax(w, by_k.abs().max(by_2k.abs()));
        }
        Ok(w)
    });
    report.record("zeta quasi-periodicity", TOL, || {
        let mut w = Real::zero(bits);
        for (x, _) in &pts {
            let z = ctx.zeta(&LatticePoint::real(x.clone()))?;
            let z1 = ctx.zeta(&LatticePoint::new(x.clone(), 2, 0))?;
            let z3 = ctx.zeta(&LatticePoint::new(x.clone(), 0, 2))?;
            let d1 = z1 - &z - Cplx::from_real(&(&ctx.eta1 * 2));
            let d3 = z3 - &z - ctx.eta(HalfPeriod::Omega3) * 2.0;
            let odd = ctx.zeta(&LatticePoint::real(-x.clone()))? + &z;
            w = cmax(w, d1.abs().max(d3.abs()).max(odd.abs()) / (z.abs() + &one));
        }
        Ok(w)
    });
    report.record("sigma quasi-periodicity", TOL, || {
        let mut w = Real::zero(bits);
        for (x, _) in &pts {
            let zc = Cplx::from_real(x);
            let s = ctx.sigma_theta(&zc);
            for h in [HalfPeriod::Omega1, HalfPeriod::Omega3] {
                let om = ctx.omega(h);
                let shifted = ctx.sigma_theta(&(&zc + &om * 2.0));
                let expect = -((&zc + &om) * ctx.eta(h) * 2.0).exp() * &s;
                w = cmax(w, (shifted - &expect).abs() / (expect.abs() + &one));
            }
        }
        Ok(w)
    });
    report.record("zeta' = -wp", TOL, || {
        let step = tol(1e-5).with_prec(bits);
        let mut w = Real::zero(bits);
        for (x, _) in pts.iter().take(20) {
            let d = derivative(
                |s: &Real| ctx.zeta(&LatticePoint::real(s.clone())).map(|z| z.re()),
                x,
                &step,
            )?;
            let p = ctx.wp(&LatticePoint::real(x.clone()))?;
            w = cmax(w, (d + &p).abs() / (p.abs() + &one));
        }
        Ok(w)
    });
    report.record("sn, cn, dn Pythagorean identities", TOL, || {
        let mut w = Real::zero(bits);
        for (u, _) in &us {
            let j = ctx.sncndn(u);
            let a = j.sn.square() + j.cn.square() - 1;
            let b = j.dn.square() - ctx.kprime.square() - &ctx.k2 * j.cn.square();
            w = cmax(w, a.abs().max(b.abs()));
        }
        Ok(w)
    });
    report
}

/// Moment reproduction (`j ≤ 12`, relative `10⁻⁸`) and Gram orthogonality
/// (off-diagonal `10⁻⁸·√(h_n h_m)`, diagonal vs closed `h_n` to `10⁻⁷`,
/// `n ≤ 6`) of the lattice measure at `t`.
pub fn measure_suite(p: &TodaParams, t: &Real, tail_eps: &Real) -> Result<VerificationReport> {
    let bits = p.bits();
    let mut report = VerificationReport::new("measure", bits)
        .fixture("case", p.case_tag.name())
        .fixture("t", t.to_decimal(20))
        .fixture("tail_eps", tail_eps.to_decimal(6));
    let mu = build_measure(p, t, tail_eps)?;
    report
        .fixture
        .insert("truncation".into(), format!("{:?}", mu.truncation));
    let sums = measure_moments(&mu, 12)?;
    let exact = moments(p, t, 13)?;
    report.push(
        "moments c_0..c_12",
        max_rel(sums.values.iter().zip(&exact.values)),
        1e-8,
    );
    let table = CoefficientTable::closed_form(p, t, 6)?;
    let g = orthogonality_gram(&mu, &table, 6)?;
    let (off, diag) = gram_residuals(&g, |n| h_closed(n, t, p))?;
    report.push("Gram off-diagonal", off, 1e-8);
    report.push("Gram diagonal vs h_n", diag, 1e-7);
    report.push("masses positive", positivity(&mu.masses), 1e-300);
    Ok(report)
}

/// `max |G_nm|/√(G_nn G_mm)` over `n ≠ m`, and `max |G_nn − h_n|/h_n`.
pub fn gram_residuals<F: FnMut(usize) -> Result<Real>>(
    g: &[Vec<Real>],
    mut h: F,
) -> Result<(Real, Real)> {
    let bits = g[0][0].prec();
    let mut off = Real::zero(bits);
    let mut diag = Real::zero(bits);
    for n in 0..g.len() {
        diag = diag.max(rel(&g[n][n], &h(n)?));
        for m in 0..n {
            off = off.max(g[n][m].abs() / (&g[n][n] * &g[m][m]).abs().sqrt());
        }
    }
    Ok((off, diag))
}

/// `0` when every entry is positive, otherwise `1 + |most negative|`.
fn positivity(values: &[Real]) -> Real {
    let bits = values.first().map(|v| v.prec()).unwrap_or(64);
    match values.iter().find(|v| !(**v > 0.0)) {
        None => Real::zero(bits),
        Some(_) => {
            let worst = values
                .iter()
                .fold(Real::zero(bits), |a, v| a.min(v.clone()));
            1 - worst
        }
    }
}

/// Gram matrix of `P_0..P_{n−1}` under a finite measure.
fn finite_gram(mu: &DiscreteMeasure, table: &CoefficientTable, n: usize) -> Result<Vec<Vec<Real>>> {
    let bits = table.t.prec();
    let mut g = vec![vec![Real::zero(bits); n]; n];
    for (x, m) in mu.points.iter().zip(&mu.masses) {
        let v = polynomial_values(table, x, n - 1)?;
        for i in 0..n {
            for j in 0..=i {
                g[i][j] += &(m * &v[i] * &v[j]);
            }
        }
    }
    for i in 0..n {
        for j in 0..i {
            g[j][i] = g[i][j].clone();
        }
    }
    Ok(g)
}

fn h_from_table(table: &CoefficientTable, c0: &Real, n: usize) -> Real {
    table.u[1..=n].iter().fold(c0.clone(), |a, u| a * u)
}

/// The finite families: the trigonometric one at `N = 2`, `τ = π/8`, and the
/// ℘̇ one at `N = 4`, `t = 2ω1/6`. Checks that `u` vanishes at the top
/// (relative `10⁻¹⁰`), that the Christoffel weights are positive, and that
/// the finite Gram matrix is diagonal with entries `h_n` (`10⁻⁹`).
pub fn finite_suite(ctx: Arc<EllipticContext>) -> VerificationReport {
    let bits = ctx.bits();
    let mut report = VerificationReport::new("finite", bits)
        .fixture("trig_N", "2")
        .fixture("wdot_N", "4");
    let mut run = |label: &str, built: Result<(CoefficientTable, Real)>| {
        let (table, c0) = match built {
            Ok(v) => v,
            Err(e) => {
                report.push_error(format!("{label}: construction"), &e, 1e-10);
                return;
            }
        };
        let n = table.n_max;
        let top = table.u[n].abs() / table.u[n - 1].abs().max(Real::one(bits));
        let vanishes = u_vanishes(&table.u[n], &table.u[n - 1]);
        report.push(format!("{label}: u_{n} vanishes"), top, 1e-10);
        match finite_measure(&table, &c0) {
            Ok(mu) => {
                report.push(
                    format!("{label}: Christoffel weights positive"),
                    positivity(&mu.masses),
                    1e-300,
                );
                let g = finite_gram(&mu, &table, n);
                match g.and_then(|g| gram_residuals(&g, |k| Ok(h_from_table(&table, &c0, k)))) {
                    Ok((off, diag)) => report.push(
                        format!("{label}: finite Gram residual"),
                        off.max(diag),
                        1e-9,
                    ),
                    Err(e) => report.push_error(format!("{label}: finite Gram residual"), &e, 1e-9),
                }
            }
            Err(e) if vanishes => report.push_error(format!("{label}: finite measure"), &e, 1e-9),
            Err(_) => {}
        }
    };
    run(
        "trig N=2",
        trig_finite_table(2, bits).map(|t| {
            let c0 = t.t.cot();
            (t, c0)
        }),
    );
    let wdot = TodaParams::wdot(ctx.clone()).and_then(|p| {
        let t = &ctx.omega1 * 2 / 6;
        let table = CoefficientTable::wdot_truncated(&p, &t, 4)?;
        let c0 = c0_eval(&t, &p)?;
        Ok((table, c0))
    });
    run("wdot N=4", wdot);
    report.record("trig N=2: three points", 1e-12, || {
        let mu = trig_finite_measure(2, bits)?;
        Ok(Real::from_int((mu.len() as i64 - 3).abs(), bits))
    });
    report
}

/// The degenerate families: continuity of case (i) towards
/// Meixner–Pollaczek at `k² = 10⁻⁸`, `t = 0.2` (`10⁻⁶`), Krall–Laguerre
/// quadrature orthogonality (`10⁻⁸`, `n ≤ 5`), and modified Meixner lattice
/// orthogonality (`10⁻⁹`) with the `c₀` reproduction identity (`10⁻¹²`).
pub fn degenerate_suite(digits: u32) -> VerificationReport {
    let bits = crate::arith::digits_to_bits(digits);
    let r = |x: f64| Real::from_f64(x, bits);
    let mut report = VerificationReport::new("degenerate", bits)
        .fixture("continuity", "case (i), w = 1, k² = 1e-8, t = 0.2, n ≤ 10")
        .fixture("krall_laguerre", "t = 0.7, q = 2")
        .fixture("meixner_modified", "w = 1, t = 0.5, q = 1, S = 300");
    report.record("case (i) to Meixner–Pollaczek continuity", 1e-6, || {
        let ctx = Arc::new(EllipticContext::from_k2(
            &Real::parse("1e-8", bits).expect("literal"),
            digits,
        )?);
        let p = TodaParams::case_i(ctx.clone(), ctx.real(1.0))?;
        let t = ctx.parse("0.2")?;
        let mut worst = Real::zero(bits);
        for n in 0..=10 {
            let (b, u) = coeffs(n, &t, &p)?;
            let (bm, um) = mp_coeffs(n, &t)?;
            worst = worst.max((b - bm).abs()).max((u - um).abs());
        }
        Ok(worst)
    });
    report.record("Krall–Laguerre orthogonality", 1e-8, || {
        let (t, q) = (r(0.7), r(2.0));
        let p = DegenerateParams::krall_laguerre(t.clone(), q.clone())?;
        let table = p.table(5)?;
        let c0 = p.c0()?;
        let g = krall_laguerre_orthogonality(5, &t, &q, &tol(1e-12).with_prec(bits))?;
        let (off, diag) = gram_residuals(&g, |n| Ok(h_from_table(&table, &c0, n)))?;
        Ok(off.max(diag))
    });
    let (w, t, q) = (r(1.0), r(0.5), r(1.0));
    report.record("modified Meixner orthogonality", 1e-9, || {
        let p = DegenerateParams::meixner_modified(w.clone(), t.clone(), q.clone())?;
        let table = p.table(5)?;
        let c0 = p.c0()?;
        let g = meixner_modified_orthogonality(5, &t, &w, &q, 300)?;
        let (off, diag) = gram_residuals(&g, |n| Ok(h_from_table(&table, &c0, n)))?;
        Ok(off.max(diag))
    });
    report.record("modified Meixner c0 reproduction", 1e-12, || {
        let mu = meixner_modified_measure(&t, &w, &q, 300, 0)?;
        Ok((mu.total_mass() - meixner_modified_c0(&t, &w, &q)?).abs())
    });
    report
}

/// `|F_N(z) − S_{2N}(z)/c₀|`: the depth-`N` J-fraction against the
/// normalized `2N`-term moment series, at each `z`.
pub fn fraction_errors(
    table: &CoefficientTable,
    c: &[Real],
    depth: usize,
    zs: &[Real],
) -> Result<Vec<Real>> {
    zs.iter()
        .map(|z| {
            let zc = Cplx::from_real(z);
            let f = jfraction_eval(table, &zc, depth)?;
            let s = stieltjes_series(c, &zc, 2 * depth)?.value * &c[0].recip();
            Ok((f - s).abs())
        })
        .collect()
}

/// Slopes of `log e(z)` against `log z` between consecutive `z`.
pub fn log_slopes(zs: &[Real], errors: &[Real]) -> Vec<f64> {
    zs.windows(2)
        .zip(errors.windows(2))
        .map(|(z, e)| (e[1].log10_abs() - e[0].log10_abs()) / (z[1].log10_abs() - z[0].log10_abs()))
        .collect()
}

/// The J-fraction consistency check for one table: the error slope in
/// `log|z|` over `z ∈ {10, 20, 40}` must not exceed `−(2N+1)`. The
/// residual is how far the steepest-allowed slope is exceeded.
pub fn fraction_suite(
    label: &str,
    table: &CoefficientTable,
    c: &[Real],
    depths: &[usize],
) -> VerificationReport {
    let bits = table.t.prec();
    let mut report = VerificationReport::new("fraction", bits).fixture("table", label);
    let zs: Vec<Real> = [10, 20, 40]
        .iter()
        .map(|&z| Real::from_int(z, bits))
        .collect();
    for &n in depths {
        match fraction_errors(table, c, n, &zs) {
            Ok(errs) => {
                for (i, slope) in log_slopes(&zs, &errs).into_iter().enumerate() {
                    let excess = (slope + (2 * n + 1) as f64).max(0.0);
                    report.push(
                        format!(
                            "{label} N={n} slope {:.3} over z in [{}, {}]",
                            slope,
                            10 << i,
                            20 << i
                        ),
                        Real::from_f64(excess, bits),
                        1e-9,
                    );
                }
            }
            Err(e) => report.push_error(format!("{label} N={n}"), &e, 1e-9),
        }
    }
    report
}
