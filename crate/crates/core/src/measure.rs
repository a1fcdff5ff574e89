//! Discrete orthogonality measures.
//!
//! For cases (i) and (ii) the measure is an infinite lattice of point masses
//! whose Fourier-series origin makes the masses decay like `v^{|s|}`. At
//! times where `u_N` vanishes the measure is finite and is recovered from
//! the truncated recurrence (eigenvalues of the Jacobi matrix plus
//! Christoffel weights).

use serde::{Deserialize, Serialize};

use crate::arith::Real;
use crate::error::{domain, Error, Result};
use crate::moments::{polynomial_derivative, polynomial_values, MomentSequence, MomentSource};
use crate::toda::{CaseTag, CoefficientTable, TodaParams};

/// Grid points with positive masses.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiscreteMeasure {
    /// Lattice labels `s` of the points (consecutive `0..N` for finite measures).
    pub indices: Vec<i64>,
    pub points: Vec<Real>,
    pub masses: Vec<Real>,
    pub t: Real,
    /// Largest `|s|` kept, for lattice measures.
    pub truncation: Option<i64>,
    /// Bound on the neglected `Σ M_s |x_s|^max_power`.
    pub tail_bound: Real,
    /// Highest power the tail bound covers.
    pub max_power: usize,
    pub case_tag: Option<CaseTag>,
}

impl DiscreteMeasure {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `Σ M_s`.
    pub fn total_mass(&self) -> Real {
        self.masses
            .iter()
            .fold(Real::zero(self.t.prec()), |a, m| a + m)
    }
}

/// The open interval `(−K/(w√(e1−e3)), K/(w√(e1−e3)))` where the lattice
/// measures of cases (i) and (ii) converge.
pub fn admissible_interval(p: &TodaParams) -> Result<(Real, Real)> {
    match p.case_tag {
        CaseTag::CaseI | CaseTag::CaseII => {
            let hi = &p.ctx.big_k / p.scale();
            Ok((-&hi, hi))
        }
        other => Err(Error::Unsupported(format!(
            "no lattice measure for {}",
            other.name()
        ))),
    }
}

/// Default highest power covered by the tail bound (moments up to `c_24`,
/// Gram entries up to degree 12).
pub const DEFAULT_MAX_POWER: usize = 24;

/// The lattice measure at `t` with the tail bound covering `|x|^24`.
pub fn build_measure(p: &TodaParams, t: &Real, tail_eps: &Real) -> Result<DiscreteMeasure> {
    build_measure_with(p, t, tail_eps, DEFAULT_MAX_POWER)
}

/// Point `x_s` and mass `M_s(t)` of the case (i)/(ii) lattice measures.
struct Lattice<'a> {
    p: &'a TodaParams,
    t: Real,
}

impl Lattice<'_> {
    /// Case (i): `x_s = πw√s(2s−1)/(2K')`, `M_s = (π/(k'K'))e^{x_s t}/(v^{s−½} + v^{½−s})`.
    /// Case (ii): `x_s = πw√s·s/K'`, `M_s = (π/K')e^{x_s t}/(v^s + v^{−s})`.
    fn point_mass(&self, s: i64) -> (Real, Real) {
        let ctx = &self.p.ctx;
        let pi = ctx.big_k.pi_like();
        let kp = &ctx.big_kprime;
        // half-integer label h = s − ½ (case i) or integer s (case ii), doubled
        let (h2, pref) = match self.p.case_tag {
            CaseTag::CaseI => (2 * s - 1, &pi / (&ctx.kprime * kp)),
            _ => (2 * s, &pi / kp),
        };
        let x = &pi * self.p.scale() * h2 as i32 / (kp * 2);
        let hr = Real::from_int(h2, ctx.bits()) / 2;
        // v^{h} + v^{−h} = 2cosh(h·πK/K')
        let denom = (hr * &pi * &ctx.big_k / kp).cosh() * 2;
        let mass = pref * (&x * &self.t).exp() / denom;
        (x, mass)
    }
}

/// [`build_measure`] with an explicit highest power for the tail bound.
pub fn build_measure_with(
    p: &TodaParams,
    t: &Real,
    tail_eps: &Real,
    max_power: usize,
) -> Result<DiscreteMeasure> {
    let (lo, hi) = admissible_interval(p)?;
    if !(*t > lo && *t < hi) {
        return Err(domain(format!(
            "t = {} lies outside the admissible interval ({}, {})",
            t.to_decimal(15),
            lo.to_decimal(15),
            hi.to_decimal(15)
        )));
    }
    let lat = Lattice { p, t: t.clone() };
    let bits = p.bits();
    let weighted = |s: i64| -> (Real, Real, Real) {
        let (x, m) = lat.point_mass(s);
        let w = &m * x.abs().powi(max_power as i32);
        (x, m, w)
    };
    // Positive labels run 1, 2, …; the mirror side runs 0, −1, … (case i) or
    // −1, −2, … (case ii, where s = 0 is its own mirror).
    let first_neg = if p.case_tag == CaseTag::CaseI { 0 } else { -1 };
    let mut indices = Vec::new();
    let mut points = Vec::new();
    let mut masses = Vec::new();
    if p.case_tag == CaseTag::CaseII {
        let (x, m, _) = weighted(0);
        indices.push(0);
        points.push(x);
        masses.push(m);
    }
    let mut tail = Real::zero(bits);
    let mut depth = 0i64;
    for side in [1i64, -1] {
        let start = if side > 0 { 1 } else { first_neg };
        let mut s = start;
        loop {
            let (x, m, w) = weighted(s);
            let (_, _, w_next) = weighted(s + side);
            let (_, _, w_next2) = weighted(s + 2 * side);
            indices.push(s);
            points.push(x);
            masses.push(m);
            // Once the weighted terms decay with a ratio that keeps shrinking,
            // the remainder is bounded by a geometric series.
            if w_next < w && !w.is_zero() {
                let ratio = &w_next2 / &w_next;
                if ratio < 1.0 {
                    let bound = &w_next / (1 - ratio);
                    if bound < *tail_eps {
                        tail += &bound;
                        depth = depth.max((s - start).abs() + 1);
                        break;
                    }
                }
            }
            s += side;
            if (s - start).abs() > 1_000_000 {
                return Err(Error::Truncation(
                    "mass tail did not converge within 10^6 points".into(),
                ));
            }
        }
    }
    // Sort by point so sums run in a fixed order.
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| points[a].partial_cmp(&points[b]).expect("finite points"));
    Ok(DiscreteMeasure {
        indices: order.iter().map(|&i| indices[i]).collect(),
        points: order.iter().map(|&i| points[i].clone()).collect(),
        masses: order.iter().map(|&i| masses[i].clone()).collect(),
        t: t.clone(),
        truncation: Some(depth),
        tail_bound: tail,
        max_power,
        case_tag: Some(p.case_tag),
    })
}

/// `c_j = Σ M_s x_s^j` for `j = 0..=j_max`.
pub fn measure_moments(mu: &DiscreteMeasure, j_max: usize) -> Result<MomentSequence> {
    if mu.truncation.is_some() && j_max > mu.max_power {
        return Err(Error::Truncation(format!(
            "moment order {j_max} exceeds the power {} covered by the tail bound",
            mu.max_power
        )));
    }
    let bits = mu.t.prec();
    let mut values = vec![Real::zero(bits); j_max + 1];
    for (x, m) in mu.points.iter().zip(&mu.masses) {
        let mut term = m.clone();
        for v in values.iter_mut() {
            *v += &term;
            term *= x;
        }
    }
    Ok(MomentSequence {
        t: mu.t.clone(),
        values,
        source: MomentSource::MeasureSum,
    })
}

/// `G[n][m] = Σ M_s P_n(x_s)P_m(x_s)` for `n, m ≤ n_max`.
pub fn orthogonality_gram(
    mu: &DiscreteMeasure,
    table: &CoefficientTable,
    n_max: usize,
) -> Result<Vec<Vec<Real>>> {
    if mu.truncation.is_some() && 2 * n_max > mu.max_power {
        return Err(Error::Truncation(format!(
            "degree {n_max} needs powers up to {} but the tail bound covers {}",
            2 * n_max,
            mu.max_power
        )));
    }
    let bits = mu.t.prec();
    let mut g = vec![vec![Real::zero(bits); n_max + 1]; n_max + 1];
    for (x, m) in mu.points.iter().zip(&mu.masses) {
        let p = polynomial_values(table, x, n_max)?;
        for i in 0..=n_max {
            let mp = m * &p[i];
            for j in i..=n_max {
                g[i][j] += &(&mp * &p[j]);
            }
        }
    }
    for i in 0..=n_max {
        for j in 0..i {
            g[i][j] = g[j][i].clone();
        }
    }
    Ok(g)
}

/// Partial sums of `u_n^{−1/2}` and the even-index sub-sequence.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CarlemanSums {
    /// `Σ_{k=1}^{n} u_k^{−1/2}` for `n = 1..=n_max`.
    pub partial_sums: Vec<Real>,
    /// `Σ_{k=1}^{n} u_{2k}^{−1/2}` for `2n ≤ n_max`.
    pub even_partial_sums: Vec<Real>,
}

/// The Carleman partial sums; every `u_n` with `1 ≤ n ≤ n_max` must be
/// positive.
pub fn carleman_partial_sums(table: &CoefficientTable, n_max: usize) -> Result<CarlemanSums> {
    if n_max > table.n_max {
        return Err(domain(format!(
            "n_max = {n_max} exceeds the table ({})",
            table.n_max
        )));
    }
    let bits = table.t.prec();
    let mut acc = Real::zero(bits);
    let mut even = Real::zero(bits);
    let mut partial_sums = Vec::with_capacity(n_max);
    let mut even_partial_sums = Vec::new();
    for n in 1..=n_max {
        let u = &table.u[n];
        if !(*u > 0.0) {
            return Err(Error::Diagnostic {
                index: n,
                detail: format!("u_{n} = {} is not positive", u.to_decimal(12)),
            });
        }
        let term = u.sqrt().recip();
        acc += &term;
        partial_sums.push(acc.clone());
        if n % 2 == 0 {
            even += &term;
            even_partial_sums.push(even.clone());
        }
    }
    Ok(CarlemanSums {
        partial_sums,
        even_partial_sums,
    })
}

/// `A(t) = dn²(u)/(k'²cn²(u)) = 1/cn²(u) + k²/k'²` for case (i), with the
/// bound `u_{2n}(t) ≤ (2n)²w²(e1−e2)·A(t)`.
pub fn carleman_witness(p: &TodaParams, t: &Real) -> Result<Real> {
    if p.case_tag != CaseTag::CaseI {
        return Err(Error::Unsupported(
            "the Carleman witness is stated for case (i)".into(),
        ));
    }
    let j = p.ctx.sncndn(&(p.scale() * t));
    Ok(j.dn.square() / (p.ctx.kprime.square() * j.cn.square()))
}

/// Lower bound `H_n/(2w√((e1−e2)A))` on the even partial sums implied by the
/// witness, for `n = 1..=count`.
pub fn carleman_lower_bounds(p: &TodaParams, t: &Real, count: usize) -> Result<Vec<Real>> {
    let a = carleman_witness(p, t)?;
    let scale = ((&p.ctx.e1 - &p.ctx.e2) * a).sqrt() * &p.w * 2;
    let mut h = Real::zero(p.bits());
    Ok((1..=count)
        .map(|n| {
            h += &(Real::one(p.bits()) / n as i32);
            &h / &scale
        })
        .collect())
}

/// Relative tolerance under which `u_N` counts as zero.
pub fn u_vanishes(u_n: &Real, u_prev: &Real) -> bool {
    u_n.abs() < u_prev.abs().max(Real::one(u_n.prec())) * 1e-10
}

/// Eigenvalues of the symmetric tridiagonal matrix with diagonal `b_0..b_{N−1}`
/// and off-diagonal `√u_1..√u_{N−1}`, by Sturm-count bisection. They are the
/// zeros of `P_N`.
pub fn jacobi_eigenvalues(table: &CoefficientTable, n: usize) -> Result<Vec<Real>> {
    if n == 0 || n > table.n_max + 1 {
        return Err(domain(format!(
            "cannot take {n} eigenvalues from a table with n_max = {}",
            table.n_max
        )));
    }
    let bits = table.t.prec();
    let off: Vec<Real> = (1..n).map(|k| table.u[k].abs().sqrt()).collect();
    // Gershgorin bounds
    let mut lo = table.b[0].clone();
    let mut hi = table.b[0].clone();
    for k in 0..n {
        let mut r = Real::zero(bits);
        if k > 0 {
            r += &off[k - 1];
        }
        if k + 1 < n {
            r += &off[k];
        }
        lo = lo.min(&table.b[k] - &r);
        hi = hi.max(&table.b[k] + &r);
    }
    let pad = (&hi - &lo).abs() * 1e-3 + 1;
    lo -= &pad;
    hi += &pad;
    // number of eigenvalues below x (sign changes of the LDLᵀ pivots)
    let tiny = Real::epsilon(bits) * 4;
    let count_below = |x: &Real| -> usize {
        let mut count = 0;
        let mut d = Real::one(bits);
        for k in 0..n {
            let mut next = &table.b[k] - x;
            if k > 0 {
                next -= &(&table.u[k] / &d);
            }
            if next.abs() < tiny {
                next = -tiny.clone();
            }
            if next < 0.0 {
                count += 1;
            }
            d = next;
        }
        count
    };
    let mut roots = Vec::with_capacity(n);
    for i in 0..n {
        // the i-th smallest eigenvalue: count_below(x) ≤ i on the left, > i on the right
        let (mut a, mut b) = (lo.clone(), hi.clone());
        for _ in 0..(bits + 64) {
            let mid = (&a + &b) / 2;
            if count_below(&mid) > i {
                b = mid;
            } else {
                a = mid;
            }
            if (&b - &a).abs() <= tiny.clone() * (b.abs().max(Real::one(bits))) {
                break;
            }
        }
        roots.push((a + b) / 2);
    }
    Ok(roots)
}

/// The finite measure of a table with `u_N = 0`: the zeros `x_s` of `P_N`
/// carrying the Christoffel weights `h_{N−1}/(P_{N−1}(x_s)P'_N(x_s))`,
/// with `h_{N−1} = c₀u_1⋯u_{N−1}`.
pub fn finite_measure(table: &CoefficientTable, c0: &Real) -> Result<DiscreteMeasure> {
    let n = table.n_max;
    if n == 0 {
        return Err(domain("a finite measure needs u_N = 0 for some N ≥ 1"));
    }
    if !u_vanishes(&table.u[n], &table.u[n - 1]) {
        return Err(Error::Diagnostic {
            index: n,
            detail: format!("u_{n} = {} does not vanish", table.u[n].to_decimal(12)),
        });
    }
    for k in 1..n {
        if !(table.u[k] > 0.0) {
            return Err(Error::Diagnostic {
                index: k,
                detail: format!("u_{k} = {} is not positive", table.u[k].to_decimal(12)),
            });
        }
    }
    let roots = jacobi_eigenvalues(table, n)?;
    let bits = table.t.prec();
    let sep_tol = Real::epsilon(bits).sqrt();
    for w in roots.windows(2) {
        if (&w[1] - &w[0]).abs() < sep_tol.clone() * w[1].abs().max(Real::one(bits)) {
            return Err(Error::MultipleRoots(format!(
                "P_{n} has a repeated zero near {}",
                w[0].to_decimal(15)
            )));
        }
    }
    let mut h = c0.clone();
    for k in 1..n {
        h *= &table.u[k];
    }
    let mut masses = Vec::with_capacity(n);
    for x in &roots {
        let p_prev = polynomial_values(table, x, n - 1)?.pop().expect("P_{N-1}");
        let dp = polynomial_derivative(table, x, n)?;
        masses.push(&h / (p_prev * dp));
    }
    Ok(DiscreteMeasure {
        indices: (0..n as i64).collect(),
        points: roots,
        masses,
        t: table.t.clone(),
        truncation: None,
        tail_bound: Real::zero(bits),
        max_power: usize::MAX,
        case_tag: None,
    })
}
