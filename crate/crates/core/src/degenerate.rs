//! Degenerate limits of the elliptic solutions.
//!
//! When two roots of the cubic coincide the elliptic functions become
//! trigonometric or hyperbolic, and when all three coincide they become
//! rational. Each limit is an exact family with its own orthogonality
//! measure:
//!
//! | family | `c₀(t)` | measure |
//! |---|---|---|
//! | Meixner–Pollaczek | `1/cos t` | `e^{tx}/(2cosh(πx/2))` on ℝ |
//! | modified Meixner | `coth(wt) + coth q` | `2e^{−2wst}` at `−2ws`, plus `e^{−q}/sinh q` at 0 |
//! | Krall–Laguerre | `1/t + 1/q` | `e^{xt}` on `(−∞, 0]`, plus `1/q` at 0 |
//! | trigonometric | `cot(wt) + cot q` | finite, at `w = 1, q = π/2, t = π/(2(N+2))` |
//!
//! ```
//! use elliptic_toda::arith::Real;
//! use elliptic_toda::degenerate::mp_coeffs;
//!
//! let t = Real::pi(128) / 4;
//! let (b, u) = mp_coeffs(3, &t).unwrap();
//! assert!((b - 7.0).abs() < 1e-30);
//! assert!((u - 18.0).abs() < 1e-30);
//! ```

use serde::{Deserialize, Serialize};

use crate::arith::{Cplx, Real};
use crate::error::{domain, Error, Result};
use crate::measure::{finite_measure, DiscreteMeasure};
use crate::moments::{
    polynomial_coefficients, polynomial_values, scaled_derivatives, CircularExpression,
    CircularKind, MomentSequence, MomentSource, RationalExpression,
};
use crate::quadrature::tanh_sinh;
use crate::toda::{CaseTag, CoefficientTable, Provenance};

/// Which degenerate family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Mp,
    MeixnerModified,
    KrallLaguerre,
    /// The general trigonometric family (`u_n` changes sign).
    Trig,
    /// `w = 1`, `q = π/2` at `τ = π/(2(N+2))`.
    TrigFinite,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Mp => "mp",
            Family::MeixnerModified => "meixner_modified",
            Family::KrallLaguerre => "krall_laguerre",
            Family::Trig => "trig",
            Family::TrigFinite => "trig_finite",
        }
    }
}

/// Parameters of a degenerate family at one time.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DegenerateParams {
    pub family: Family,
    pub w: Real,
    pub t: Real,
    /// Mass parameter (modified Meixner, Krall–Laguerre, trigonometric).
    pub q: Option<Real>,
    /// Size parameter of the finite trigonometric family.
    pub n_finite: Option<usize>,
}

fn pole_tol(x: &Real) -> Real {
    Real::epsilon(x.prec()) * 1024
}

fn nonzero(v: Real, what: &str) -> Result<Real> {
    if v.abs() < pole_tol(&v) {
        return Err(Error::Pole {
            location: what.to_string(),
            detail: "denominator vanishes".into(),
        });
    }
    Ok(v)
}

impl DegenerateParams {
    pub fn mp(t: Real) -> Result<DegenerateParams> {
        let p = DegenerateParams {
            family: Family::Mp,
            w: Real::one(t.prec()),
            t,
            q: None,
            n_finite: None,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn meixner_modified(w: Real, t: Real, q: Real) -> Result<DegenerateParams> {
        let p = DegenerateParams {
            family: Family::MeixnerModified,
            w,
            t,
            q: Some(q),
            n_finite: None,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn krall_laguerre(t: Real, q: Real) -> Result<DegenerateParams> {
        let p = DegenerateParams {
            family: Family::KrallLaguerre,
            w: Real::one(t.prec()),
            t,
            q: Some(q),
            n_finite: None,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn trig(w: Real, t: Real, q: Real) -> Result<DegenerateParams> {
        let p = DegenerateParams {
            family: Family::Trig,
            w,
            t,
            q: Some(q),
            n_finite: None,
        };
        p.validate()?;
        Ok(p)
    }

    /// The finite family at `τ = π/(2(N+2))`, `N ≥ 2`.
    pub fn trig_finite(n: usize, bits: u32) -> Result<DegenerateParams> {
        let p = DegenerateParams {
            family: Family::TrigFinite,
            w: Real::one(bits),
            t: trig_finite_time(n, bits),
            q: Some(Real::pi(bits) / 2),
            n_finite: Some(n),
        };
        p.validate()?;
        Ok(p)
    }

    /// The same family at another time.
    pub fn at(&self, t: &Real) -> DegenerateParams {
        DegenerateParams {
            t: t.clone(),
            ..self.clone()
        }
    }

    fn q(&self) -> Result<&Real> {
        self.q
            .as_ref()
            .ok_or_else(|| domain(format!("the {} family needs q", self.family.name())))
    }

    /// Admissibility of `(w, t, q)` for the family.
    pub fn validate(&self) -> Result<()> {
        let half_pi = Real::pi(self.t.prec()) / 2;
        match self.family {
            Family::Mp => {
                if !(self.t.abs() < half_pi) {
                    return Err(domain(format!(
                        "Meixner–Pollaczek needs |t| < π/2 (t = {})",
                        self.t.to_decimal(12)
                    )));
                }
            }
            Family::MeixnerModified => {
                if !(self.w > 0.0 && self.t > 0.0 && *self.q()? > 0.0) {
                    return Err(domain("modified Meixner needs w, t, q > 0"));
                }
            }
            Family::KrallLaguerre => {
                if !(self.t > 0.0 && *self.q()? > 0.0) {
                    return Err(domain("Krall–Laguerre needs t, q > 0"));
                }
            }
            Family::Trig => {
                self.q()?;
            }
            Family::TrigFinite => {
                let n = self
                    .n_finite
                    .ok_or_else(|| domain("the finite family needs N"))?;
                if n < 2 {
                    return Err(domain(format!("the finite family needs N ≥ 2 (got {n})")));
                }
            }
        }
        Ok(())
    }

    /// `c₀(t)`.
    pub fn c0(&self) -> Result<Real> {
        match self.family {
            Family::Mp => mp_c0(&self.t),
            Family::MeixnerModified => meixner_modified_c0(&self.t, &self.w, self.q()?),
            Family::KrallLaguerre => krall_laguerre_c0(&self.t, self.q()?),
            Family::Trig | Family::TrigFinite => trig_c0(&self.t, &self.w, self.q()?),
        }
    }

    /// `(b_n, u_n)` at the stored time.
    pub fn coeffs(&self, n: usize) -> Result<(Real, Real)> {
        match self.family {
            Family::Mp => mp_coeffs(n, &self.t),
            Family::MeixnerModified => meixner_modified_coeffs(n, &self.t, &self.w, self.q()?),
            Family::KrallLaguerre => krall_laguerre_coeffs(n, &self.t, self.q()?),
            Family::Trig | Family::TrigFinite => trig_coeffs(n, &self.t, &self.w, self.q()?),
        }
    }

    /// The closed-form table up to `n_max`.
    pub fn table(&self, n_max: usize) -> Result<CoefficientTable> {
        CoefficientTable::from_fn(n_max, &self.t, Provenance::ClosedForm, |n| self.coeffs(n))
    }

    /// `c_0..c_{count−1}` by exact differentiation of `c₀`.
    pub fn moments(&self, count: usize) -> Result<MomentSequence> {
        if count == 0 {
            return Err(domain("at least one moment is required"));
        }
        self.c0()?;
        let one = Real::one(self.t.prec());
        let values = match self.family {
            Family::Mp => {
                let e = CircularExpression::monomial(CircularKind::Trig, 0, -1);
                scaled_derivatives(&e, &(), &self.t, &one, &one, None, count)?
            }
            Family::MeixnerModified => {
                let e = CircularExpression::monomial(CircularKind::Hyperbolic, -1, 1);
                let c = self.q()?.coth();
                scaled_derivatives(&e, &(), &self.t, &self.w, &one, Some(&c), count)?
            }
            Family::KrallLaguerre => {
                let e = RationalExpression::monomial(-1);
                let c = self.q()?.recip();
                scaled_derivatives(&e, &(), &self.t, &one, &one, Some(&c), count)?
            }
            Family::Trig | Family::TrigFinite => {
                let e = CircularExpression::monomial(CircularKind::Trig, -1, 1);
                let c = self.q()?.cot();
                scaled_derivatives(&e, &(), &self.t, &self.w, &one, Some(&c), count)?
            }
        };
        Ok(MomentSequence {
            t: self.t.clone(),
            values,
            source: MomentSource::Degenerate(self.family.name().into()),
        })
    }
}

// ---------------------------------------------------------------------------
// Meixner–Pollaczek

/// `1/cos t`.
pub fn mp_c0(t: &Real) -> Result<Real> {
    Ok(nonzero(t.cos(), "cos t")?.recip())
}

/// `b_n = (2n+1)tan t`, `u_n = n²/cos²t`.
pub fn mp_coeffs(n: usize, t: &Real) -> Result<(Real, Real)> {
    if !(t.abs() < Real::pi(t.prec()) / 2) {
        return Err(domain(format!(
            "Meixner–Pollaczek needs |t| < π/2 (t = {})",
            t.to_decimal(12)
        )));
    }
    let c = t.cos();
    let b = t.tan() * (2 * n as i32 + 1);
    let u = Real::from_int((n * n) as i64, t.prec()) / c.square();
    Ok((b, u))
}

/// The standard Meixner–Pollaczek coefficients for `(λ, φ)`:
/// `u_n = n(n+2λ−1)/(4sin²φ)`, `b_n = −(n+λ)/tan φ`.
pub fn mp_standard_coeffs(n: usize, lambda: &Real, phi: &Real) -> (Real, Real) {
    let nn = Real::from_int(n as i64, lambda.prec());
    let u = &nn * (&nn + lambda * 2 - 1) / (phi.sin().square() * 4);
    let b = -((&nn + lambda) / phi.tan());
    (b, u)
}

/// `P_n(x; t)` from the terminating hypergeometric form
/// `n!·iⁿe^{int}/cosⁿt · ₂F₁(−n, ½ + ix/2; 1; 1 + e^{−2it})`.
pub fn mp_polynomial_hypergeometric(n: usize, x: &Real, t: &Real) -> Cplx {
    let bits = x.prec();
    let one = Real::one(bits);
    let z = Cplx::from_real(&one) + Cplx::new(&(t * 2).cos(), &-(t * 2).sin());
    let a = Cplx::new(&(&one / 2), &(x / 2));
    let mut term = Cplx::from_real(&one);
    let mut sum = term.clone();
    for k in 0..n {
        // (−n+k)(a+k)/(k+1)² · z
        let kk = Real::from_int(k as i64, bits);
        let factor = Real::from_int(k as i64 - n as i64, bits)
            / Real::from_int(((k + 1) * (k + 1)) as i64, bits);
        term = term * &(&a + &kk) * &z * &factor;
        sum += &term;
    }
    let nt = t * n as i32;
    let phase = Cplx::new(&nt.cos(), &nt.sin());
    let i_n = match n % 4 {
        0 => Cplx::from_real(&one),
        1 => Cplx::imag(&one),
        2 => Cplx::from_real(&-one.clone()),
        _ => Cplx::imag(&-one.clone()),
    };
    let mut fact = Real::one(bits);
    for k in 2..=n {
        fact *= k as i32;
    }
    sum * &phase * &i_n * &(fact / t.cos().powi(n as i32))
}

/// `W(x; t) = e^{tx}/(2cosh(πx/2))`, normalized so `∫W = 1/cos t`.
pub fn mp_weight(x: &Real, t: &Real) -> Real {
    let half_pi_x = x * x.pi_like() / 2;
    (x * t).exp() / (half_pi_x.cosh() * 2)
}

/// Sum of absolute monomial coefficients of `P_n`, which bounds `|P_n(x)|`
/// by `A_n|x|ⁿ` for `|x| ≥ 1`.
fn coefficient_bounds(table: &CoefficientTable, n_max: usize) -> Result<Vec<Real>> {
    let bits = table.t.prec();
    Ok(polynomial_coefficients(table, n_max)?
        .iter()
        .map(|c| c.iter().fold(Real::zero(bits), |a, v| a + v.abs()))
        .collect())
}

/// Smallest `X ≥ 1` with `A·X^d·e^{−αX}/(α − d/X) < eps`, searched by doubling.
fn tail_cutoff(a: &Real, d: usize, alpha: &Real, eps: &Real) -> Result<Real> {
    let bits = alpha.prec();
    let mut x = Real::one(bits).max(Real::from_int(2 * d as i64, bits) / alpha);
    for _ in 0..40 {
        let slack = alpha - Real::from_int(d as i64, bits) / &x;
        if slack > 0.0 {
            let bound = a * x.powi(d as i32) * (-(alpha * &x)).exp() / &slack;
            if bound < *eps {
                return Ok(x);
            }
        }
        x *= 2;
    }
    Err(Error::Truncation(format!(
        "no tail cutoff reaches {} with decay rate {}",
        eps.to_decimal(3),
        alpha.to_decimal(6)
    )))
}

/// `G[n][m] = ∫ P_n P_m W dx` for `n, m ≤ n_max`, by tanh-sinh quadrature on
/// `[−X, X]` where `X` bounds the exponential tails below `eps/100`.
pub fn mp_weight_orthogonality(
    n_max: usize,
    t: &Real,
    quadrature_eps: &Real,
) -> Result<Vec<Vec<Real>>> {
    let p = DegenerateParams::mp(t.clone())?;
    let table = p.table(n_max)?;
    let bits = t.prec();
    let alpha = Real::pi(bits) / 2 - t.abs();
    let bounds = coefficient_bounds(&table, n_max)?;
    let budget = quadrature_eps / 100;
    let mut g = vec![vec![Real::zero(bits); n_max + 1]; n_max + 1];
    for n in 0..=n_max {
        for m in 0..=n {
            let a = &bounds[n] * &bounds[m] * 2;
            let x = tail_cutoff(&a, n + m, &alpha, &budget)?;
            let integrand = |y: &Real| {
                let v = polynomial_values(&table, y, n).expect("degree within table");
                &v[n] * &v[m] * mp_weight(y, t)
            };
            let zero = Real::zero(bits);
            let left = tanh_sinh(integrand, &-x.clone(), &zero, &budget, 14)?;
            let right = tanh_sinh(integrand, &zero, &x, &budget, 14)?;
            g[n][m] = left.value + right.value;
            g[m][n] = g[n][m].clone();
        }
    }
    Ok(g)
}

// ---------------------------------------------------------------------------
// Modified Meixner

/// `sinh(wt+q)/(sinh q·sinh wt) = coth(wt) + coth q`.
pub fn meixner_modified_c0(t: &Real, w: &Real, q: &Real) -> Result<Real> {
    let s = nonzero((w * t).sinh(), "sinh(wt)")?;
    Ok((w * t + q).sinh() / (nonzero(q.sinh(), "sinh q")? * s))
}

/// `b_n = w(n+1)coth(w(n+1)t+q) − wn·coth(wnt+q) − w(2n+1)coth(wt)`,
/// `u_n = w²n²·sinh(w(n+1)t+q)sinh(w(n−1)t+q)/(sinh²(wnt+q)sinh²(wt))`.
pub fn meixner_modified_coeffs(n: usize, t: &Real, w: &Real, q: &Real) -> Result<(Real, Real)> {
    let wt = w * t;
    let arg = |k: i64| &wt * k as i32 + q;
    let swt = nonzero(wt.sinh(), "sinh(wt)")?;
    let sn = nonzero(arg(n as i64).sinh(), "sinh(wnt+q)")?;
    let sn1 = nonzero(arg(n as i64 + 1).sinh(), "sinh(w(n+1)t+q)")?;
    let ni = n as i32;
    let b = w * (ni + 1) * arg(n as i64 + 1).cosh() / &sn1
        - w * ni * arg(n as i64).cosh() / &sn
        - w * (2 * ni + 1) * wt.cosh() / &swt;
    let u = if n == 0 {
        Real::zero(t.prec())
    } else {
        w.square() * (ni * ni) * &sn1 * arg(n as i64 - 1).sinh() / (sn.square() * swt.square())
    };
    Ok((b, u))
}

/// The pure Meixner limit `q → ∞`:
/// `b_n = −2w(n+1+ne^{2wt})/(e^{2wt}−1)`, `u_n = 4w²n²e^{2wt}/(e^{2wt}−1)²`.
pub fn meixner_coeffs(n: usize, t: &Real, w: &Real) -> Result<(Real, Real)> {
    let e = (w * t * 2).exp();
    let d = nonzero(&e - 1, "e^{2wt} − 1")?;
    let ni = n as i32;
    let b = -(w * 2 * (&e * ni + (ni + 1)) / &d);
    let u = w.square() * (4 * ni * ni) * &e / d.square();
    Ok((b, u))
}

/// The standard Meixner coefficients for `(β, c)`:
/// `b_n = (n+(n+β)c)/(1−c)`, `u_n = c·n(n+β−1)/(1−c)²`.
pub fn meixner_standard_coeffs(n: usize, beta: &Real, c: &Real) -> (Real, Real) {
    let nn = Real::from_int(n as i64, beta.prec());
    let one_minus = 1 - c.clone();
    let b = (&nn + (&nn + beta) * c) / &one_minus;
    let u = c * &nn * (&nn + beta - 1) / one_minus.square();
    (b, u)
}

/// The point mass `e^{−q}/sinh q` at the origin.
pub fn meixner_modified_mass(q: &Real) -> Real {
    (-q.clone()).exp() / q.sinh()
}

/// The modified Meixner measure truncated at `s ≤ S`: masses `2e^{−2wst}`
/// at `x = −2ws`, with `e^{−q}/sinh q` added at the origin. The lattice
/// factor 2 is the one that makes the total mass equal to `c₀(t)`.
/// The tail bound covers `|x|^{max_power}`.
pub fn meixner_modified_measure(
    t: &Real,
    w: &Real,
    q: &Real,
    s_max: usize,
    max_power: usize,
) -> Result<DiscreteMeasure> {
    DegenerateParams::meixner_modified(w.clone(), t.clone(), q.clone())?;
    let bits = t.prec();
    let decay = (-(w * t * 2)).exp();
    let weighted = |s: usize| -> Real {
        let x = w * 2 * s as i32;
        decay.powi(s as i32) * 2 * x.powi(max_power as i32)
    };
    let s1 = s_max + 1;
    let ratio = &decay * (Real::from_int(s1 as i64 + 1, bits) / s1 as i32).powi(max_power as i32);
    if !(ratio < 1.0) {
        return Err(Error::Truncation(format!(
            "S = {s_max} is too small for a geometric tail bound on |x|^{max_power}"
        )));
    }
    let tail = weighted(s1) / (1 - ratio);
    let mut points = Vec::with_capacity(s_max + 1);
    let mut masses = Vec::with_capacity(s_max + 1);
    for s in (0..=s_max).rev() {
        points.push(-(w * 2 * s as i32));
        let mut m = decay.powi(s as i32) * 2;
        if s == 0 {
            m += &meixner_modified_mass(q);
        }
        masses.push(m);
    }
    Ok(DiscreteMeasure {
        indices: (0..=s_max as i64).rev().collect(),
        points,
        masses,
        t: t.clone(),
        truncation: Some(s_max as i64),
        tail_bound: tail,
        max_power,
        case_tag: None,
    })
}

/// Gram matrix of the modified Meixner polynomials under the measure
/// truncated at `s ≤ S`.
pub fn meixner_modified_orthogonality(
    n_max: usize,
    t: &Real,
    w: &Real,
    q: &Real,
    s_max: usize,
) -> Result<Vec<Vec<Real>>> {
    let mu = meixner_modified_measure(t, w, q, s_max, 2 * n_max)?;
    let table =
        DegenerateParams::meixner_modified(w.clone(), t.clone(), q.clone())?.table(n_max)?;
    crate::measure::orthogonality_gram(&mu, &table, n_max)
}

// ---------------------------------------------------------------------------
// Krall–Laguerre

/// `1/t + 1/q`.
pub fn krall_laguerre_c0(t: &Real, q: &Real) -> Result<Real> {
    Ok(nonzero(t.clone(), "t")?.recip() + nonzero(q.clone(), "q")?.recip())
}

/// `b_n = −n/(nt+q) + (n+1)/((n+1)t+q) − (2n+1)/t`,
/// `u_n = (n²/t²)·((n−1)t+q)((n+1)t+q)/(nt+q)²`.
pub fn krall_laguerre_coeffs(n: usize, t: &Real, q: &Real) -> Result<(Real, Real)> {
    let ni = n as i32;
    let lin = |k: i32| t * k + q;
    let d0 = nonzero(lin(ni), "nt+q")?;
    let d1 = nonzero(lin(ni + 1), "(n+1)t+q")?;
    let tt = nonzero(t.clone(), "t")?;
    let b = -(Real::from_int(n as i64, t.prec()) / &d0)
        + Real::from_int(n as i64 + 1, t.prec()) / &d1
        - Real::from_int(2 * n as i64 + 1, t.prec()) / &tt;
    let u =
        Real::from_int((n * n) as i64, t.prec()) / tt.square() * lin(ni - 1) * &d1 / d0.square();
    Ok((b, u))
}

/// `G[n][m] = ∫_{−∞}^0 P_nP_m e^{xt}dx + P_n(0)P_m(0)/q` by tanh-sinh on
/// `[−X, 0]`.
pub fn krall_laguerre_orthogonality(
    n_max: usize,
    t: &Real,
    q: &Real,
    quadrature_eps: &Real,
) -> Result<Vec<Vec<Real>>> {
    let p = DegenerateParams::krall_laguerre(t.clone(), q.clone())?;
    let table = p.table(n_max)?;
    let bits = t.prec();
    let bounds = coefficient_bounds(&table, n_max)?;
    let budget = quadrature_eps / 100;
    let zero = Real::zero(bits);
    let at_zero = polynomial_values(&table, &zero, n_max)?;
    let mut g = vec![vec![Real::zero(bits); n_max + 1]; n_max + 1];
    for n in 0..=n_max {
        for m in 0..=n {
            let a = &bounds[n] * &bounds[m];
            let x = tail_cutoff(&a, n + m, t, &budget)?;
            let integrand = |y: &Real| {
                let v = polynomial_values(&table, y, n).expect("degree within table");
                &v[n] * &v[m] * (y * t).exp()
            };
            let integral = tanh_sinh(integrand, &-x, &zero, &budget, 14)?;
            g[n][m] = integral.value + &at_zero[n] * &at_zero[m] / q;
            g[m][n] = g[n][m].clone();
        }
    }
    Ok(g)
}

// ---------------------------------------------------------------------------
// Trigonometric

/// `sin(wt+q)/(sin q·sin wt) = cot(wt) + cot q`.
pub fn trig_c0(t: &Real, w: &Real, q: &Real) -> Result<Real> {
    let s = nonzero((w * t).sin(), "sin(wt)")?;
    Ok((w * t + q).sin() / (nonzero(q.sin(), "sin q")? * s))
}

/// `b_n = w(n+1)cot(w(n+1)t+q) − wn·cot(wnt+q) − (2n+1)w·cot(wt)`,
/// `u_n = w²n²·sin((n+1)wt+q)sin((n−1)wt+q)/(sin²(nwt+q)sin²(wt))`.
pub fn trig_coeffs(n: usize, t: &Real, w: &Real, q: &Real) -> Result<(Real, Real)> {
    let wt = w * t;
    let arg = |k: i64| &wt * k as i32 + q;
    let swt = nonzero(wt.sin(), "sin(wt)")?;
    let sn = nonzero(arg(n as i64).sin(), "sin(nwt+q)")?;
    let sn1 = nonzero(arg(n as i64 + 1).sin(), "sin((n+1)wt+q)")?;
    let ni = n as i32;
    let b = w * (ni + 1) * arg(n as i64 + 1).cos() / &sn1
        - w * ni * arg(n as i64).cos() / &sn
        - w * (2 * ni + 1) * wt.cos() / &swt;
    let u = if n == 0 {
        Real::zero(t.prec())
    } else {
        w.square() * (ni * ni) * &sn1 * arg(n as i64 - 1).sin() / (sn.square() * swt.square())
    };
    Ok((b, u))
}

/// `τ = π/(2(N+2))`.
pub fn trig_finite_time(n: usize, bits: u32) -> Real {
    Real::pi(bits) / (2 * (n as i32 + 2))
}

/// The finite family's table `n ≤ N+1` at `τ`. `u_{N+1}(τ)` vanishes and
/// `b_{N+1}` sits on a pole, so its entry is set to zero.
pub fn trig_finite_table(n: usize, bits: u32) -> Result<CoefficientTable> {
    let p = DegenerateParams::trig_finite(n, bits)?;
    let q = p.q()?.clone();
    let tau = p.t.clone();
    CoefficientTable::from_fn(n + 1, &tau, Provenance::ClosedForm, |k| {
        if k <= n {
            trig_coeffs(k, &tau, &p.w, &q)
        } else {
            // u_{N+1} = (N+1)²cos((N+2)τ)cos(Nτ)/(cos²((N+1)τ)sin²τ) with cos((N+2)τ) = 0
            let ki = k as i32;
            let u = Real::from_int((k * k) as i64, bits)
                * (&tau * (ki + 1)).cos()
                * (&tau * (ki - 1)).cos()
                / ((&tau * ki).cos().square() * tau.sin().square());
            Ok((Real::zero(bits), u))
        }
    })
}

/// The `N+1`-point measure of the finite trigonometric family: zeros of
/// `P_{N+1}(x; τ)` with Christoffel weights.
pub fn trig_finite_measure(n: usize, bits: u32) -> Result<DiscreteMeasure> {
    let table = trig_finite_table(n, bits)?;
    let tau = trig_finite_time(n, bits);
    finite_measure(&table, &tau.cot())
}

// ---------------------------------------------------------------------------
// Limits of the elliptic cases

/// Cases (i) and (ii) at `k = 1`: `c₀` becomes `cosh`, `u_{2n}` vanishes and
/// the Hankel determinants are zero for infinitely many `n`, so no
/// orthogonal polynomial family exists. Always returns the corresponding
/// error.
pub fn hyperbolic_case_limit(case: CaseTag) -> Result<()> {
    match case {
        CaseTag::CaseI | CaseTag::CaseII => Err(Error::Unsupported(format!(
            "{} at k = 1 degenerates: c₀ = cosh, u_2n = 0 and D_n = 0 for infinitely many n",
            case.name()
        ))),
        other => Err(Error::Unsupported(format!(
            "no hyperbolic limit is defined for {}",
            other.name()
        ))),
    }
}
