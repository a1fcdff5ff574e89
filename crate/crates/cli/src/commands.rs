use anyhow::{bail, Result};
use clap::ValueEnum;
use elliptic_toda::arith::Real;
use elliptic_toda::degenerate::{
    hyperbolic_case_limit, krall_laguerre_orthogonality, meixner_coeffs, meixner_modified_c0,
    meixner_modified_measure, meixner_modified_orthogonality, mp_coeffs, mp_weight_orthogonality,
    Family,
};
use elliptic_toda::error::Error;
use elliptic_toda::measure::{
    admissible_interval, build_measure, orthogonality_gram, DEFAULT_MAX_POWER,
};
use elliptic_toda::moments::{
    hankel_analysis, moments as elliptic_moments, HankelPolicy, MomentSequence,
};
use elliptic_toda::toda::{c0_eval, CaseTag, CoefficientTable, TodaParams};
use elliptic_toda::verify::{self, fraction_errors, log_slopes, VerificationReport};
use serde::Serialize;

use crate::config::{CaseArg, Common, FamilyArg, Format, Subject};
use crate::output::{json, sink, Csv};

fn dec(x: &Real, digits: u32) -> String {
    x.to_decimal(digits)
}

/// Rejects times outside the open interval where the lattice measure of
/// cases (i) and (ii) exists.
fn check_interval(p: &TodaParams, t: &Real) -> Result<()> {
    if matches!(p.case_tag, CaseTag::CaseI | CaseTag::CaseII) {
        let (lo, hi) = admissible_interval(p)?;
        if !(*t > lo && *t < hi) {
            return Err(Error::OutsideInterval {
                t: dec(t, 20),
                lo: dec(&lo, 20),
                hi: dec(&hi, 20),
            }
            .into());
        }
    }
    Ok(())
}

fn table(c: &Common, n_max: usize) -> Result<CoefficientTable> {
    let t = c.t()?;
    Ok(match c.subject()? {
        Subject::Elliptic(p) => {
            check_interval(&p, &t)?;
            if p.case_tag == CaseTag::WdotFamily {
                CoefficientTable::wdot_truncated(&p, &t, n_max)?
            } else {
                CoefficientTable::closed_form(&p, &t, n_max)?
            }
        }
        Subject::Degenerate(d) => d.table(n_max)?,
    })
}

fn moment_sequence(c: &Common, count: usize) -> Result<MomentSequence> {
    let t = c.t()?;
    Ok(match c.subject()? {
        Subject::Elliptic(p) => {
            check_interval(&p, &t)?;
            elliptic_moments(&p, &t, count)?
        }
        Subject::Degenerate(d) => d.moments(count)?,
    })
}

pub fn coeffs(c: &Common) -> Result<()> {
    let tab = table(c, c.n_max)?;
    let mut w = sink(c.out.as_deref())?;
    match c.format_or(Format::Csv) {
        Format::Json => json(&mut w, &tab)?,
        Format::Csv => {
            let mut csv = Csv::new(&["n", "b_n", "u_n", "provenance"]);
            let prov = serde_json::to_value(tab.provenance)?
                .as_str()
                .unwrap_or_default()
                .to_string();
            for n in 0..=tab.n_max {
                csv.row(vec![
                    n.to_string(),
                    dec(&tab.b[n], c.digits()),
                    dec(&tab.u[n], c.digits()),
                    prov.clone(),
                ]);
            }
            csv.write(&mut w)?;
        }
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct MeasureOutput {
    measure: elliptic_toda::measure::DiscreteMeasure,
    c0: Real,
    total_mass: Real,
}

pub fn measure(c: &Common) -> Result<()> {
    let t = c.t()?;
    let (mu, c0) = match c.family {
        Some(FamilyArg::Meixner) => {
            let w = c.real("w", &c.w)?;
            let q = c.real("q", &c.q)?;
            let mu = meixner_modified_measure(&t, &w, &q, 300, DEFAULT_MAX_POWER)?;
            (mu, meixner_modified_c0(&t, &w, &q)?)
        }
        Some(f) => {
            bail!("no lattice measure for the {f:?} family; use the orthogonality subcommand")
        }
        None => {
            let p = c.elliptic()?;
            let mu = build_measure(&p, &t, &c.tail_eps()?)?;
            (mu, c0_eval(&t, &p)?)
        }
    };
    let total_mass = mu.total_mass();
    let mut w = sink(c.out.as_deref())?;
    match c.format_or(Format::Csv) {
        Format::Json => json(
            &mut w,
            &MeasureOutput {
                measure: mu,
                c0,
                total_mass,
            },
        )?,
        Format::Csv => {
            let d = c.digits();
            let mut csv = Csv::new(&["s", "x_s", "M_s"]);
            csv.comments.push(format!(
                "t = {}, truncation S = {}, tail bound = {} (powers up to {})",
                dec(&t, d),
                mu.truncation
                    .map(|s| s.to_string())
                    .unwrap_or_else(|| "none".into()),
                dec(&mu.tail_bound, 6),
                mu.max_power
            ));
            for ((s, x), m) in mu.indices.iter().zip(&mu.points).zip(&mu.masses) {
                csv.row(vec![s.to_string(), dec(x, d), dec(m, d)]);
            }
            csv.footer
                .push(format!("sum M_s = {}", dec(&total_mass, d)));
            csv.footer.push(format!("c0 = {}", dec(&c0, d)));
            csv.write(&mut w)?;
        }
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct MomentsOutput {
    moments: MomentSequence,
    /// `D_0, D_1, ...` while the determinants keep enough significant digits.
    hankel: Vec<Real>,
}

pub fn moments(c: &Common, count: Option<usize>) -> Result<()> {
    let count = count.unwrap_or(2 * c.n_max + 2);
    let m = moment_sequence(c, count)?;
    let mut w = sink(c.out.as_deref())?;
    match c.format_or(Format::Csv) {
        Format::Json => {
            let odd = m.values.len() - 1 + (m.values.len() % 2);
            let hankel = hankel_analysis(
                &m.values[..odd.min(m.values.len())],
                HankelPolicy::default(),
            )
            .values;
            json(&mut w, &MomentsOutput { moments: m, hankel })?
        }
        Format::Csv => {
            let mut csv = Csv::new(&["j", "c_j"]);
            for (j, v) in m.values.iter().enumerate() {
                csv.row(vec![j.to_string(), dec(v, c.digits())]);
            }
            csv.write(&mut w)?;
        }
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct GramEntry {
    n: usize,
    m: usize,
    value: Real,
    normalized: Real,
}

pub fn orthogonality(c: &Common, quad_eps: &str, s_max: usize) -> Result<()> {
    let t = c.t()?;
    let n_max = c.n_max;
    let gram = match c.family {
        None => {
            let p = c.elliptic()?;
            let mu = build_measure(&p, &t, &c.tail_eps()?)?;
            let tab = CoefficientTable::closed_form(&p, &t, n_max)?;
            orthogonality_gram(&mu, &tab, n_max)?
        }
        Some(FamilyArg::Mp) => mp_weight_orthogonality(n_max, &t, &c.real("quad-eps", quad_eps)?)?,
        Some(FamilyArg::Krall) => krall_laguerre_orthogonality(
            n_max,
            &t,
            &c.real("q", &c.q)?,
            &c.real("quad-eps", quad_eps)?,
        )?,
        Some(FamilyArg::Meixner) => meixner_modified_orthogonality(
            n_max,
            &t,
            &c.real("w", &c.w)?,
            &c.real("q", &c.q)?,
            s_max,
        )?,
        Some(FamilyArg::Trig) => {
            bail!("the trigonometric family has no positive weight for general t")
        }
    };
    let mut entries = Vec::new();
    for n in 0..gram.len() {
        for m in 0..gram.len() {
            let scale = (&gram[n][n] * &gram[m][m]).abs().sqrt();
            entries.push(GramEntry {
                n,
                m,
                normalized: &gram[n][m] / &scale,
                value: gram[n][m].clone(),
            });
        }
    }
    let mut w = sink(c.out.as_deref())?;
    match c.format_or(Format::Csv) {
        Format::Json => json(&mut w, &entries)?,
        Format::Csv => {
            let mut csv = Csv::new(&["n", "m", "G_nm", "G_nm/sqrt(G_nn G_mm)"]);
            for e in &entries {
                csv.row(vec![
                    e.n.to_string(),
                    e.m.to_string(),
                    dec(&e.value, c.digits()),
                    dec(&e.normalized, 12),
                ]);
            }
            csv.write(&mut w)?;
        }
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct FractionRow {
    depth: usize,
    z: Real,
    error: Real,
}

#[derive(Serialize)]
struct FractionOutput {
    rows: Vec<FractionRow>,
    /// Per depth, the slopes of log error against log z between consecutive z.
    slopes: Vec<(usize, Vec<f64>)>,
}

pub fn fraction(c: &Common, z: &[String], depths: &[usize]) -> Result<()> {
    let zs = z
        .iter()
        .map(|s| c.real("z", s))
        .collect::<Result<Vec<_>>>()?;
    let deepest = depths.iter().copied().max().unwrap_or(0);
    let tab = table(c, deepest)?;
    let m = moment_sequence(c, 2 * deepest + 1)?;
    let mut out = FractionOutput {
        rows: Vec::new(),
        slopes: Vec::new(),
    };
    for &n in depths {
        let errs = fraction_errors(&tab, &m.values, n, &zs)?;
        out.slopes.push((n, log_slopes(&zs, &errs)));
        for (zv, e) in zs.iter().zip(errs) {
            out.rows.push(FractionRow {
                depth: n,
                z: zv.clone(),
                error: e,
            });
        }
    }
    let mut w = sink(c.out.as_deref())?;
    match c.format_or(Format::Csv) {
        Format::Json => json(&mut w, &out)?,
        Format::Csv => {
            let mut csv = Csv::new(&["depth", "z", "error"]);
            for r in &out.rows {
                csv.row(vec![r.depth.to_string(), dec(&r.z, 12), dec(&r.error, 12)]);
            }
            for (n, s) in &out.slopes {
                let s: Vec<String> = s.iter().map(|v| format!("{v:.4}")).collect();
                csv.footer
                    .push(format!("depth {n}: slopes {}", s.join(" ")));
            }
            csv.write(&mut w)?;
        }
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct LimitRow {
    n: usize,
    b: Real,
    u: Real,
    b_limit: Real,
    u_limit: Real,
}

/// Meixner–Pollaczek: case (i) at the given `k²` (default `10⁻⁸`) against
/// the `k → 0` family. Modified Meixner and Krall–Laguerre: the family at
/// `q` against its `q → ∞` limit.
pub fn limits(c: &Common) -> Result<()> {
    let t = c.t()?;
    let bits = c.bits();
    let mut rows = Vec::new();
    let (label, limit_label) = match c.family {
        Some(FamilyArg::Mp) | None => {
            if let Some(k2) = &c.k2 {
                if c.real("k2", k2)? >= 1.0 {
                    hyperbolic_case_limit(CaseTag::CaseI)?;
                }
            }
            let mut cc = c.clone();
            if cc.e1.is_none() && cc.k2.is_none() {
                cc.k2 = Some("1e-8".into());
            }
            let p = TodaParams::case_i(cc.context()?, Real::one(bits))?;
            check_interval(&p, &t)?;
            for n in 0..=c.n_max {
                let (b, u) = elliptic_toda::toda::coeffs(n, &t, &p)?;
                let (b_limit, u_limit) = mp_coeffs(n, &t)?;
                rows.push(LimitRow {
                    n,
                    b,
                    u,
                    b_limit,
                    u_limit,
                });
            }
            ("case_i", Family::Mp.name())
        }
        Some(FamilyArg::Meixner) => {
            let d = c.degenerate(FamilyArg::Meixner)?;
            for n in 0..=c.n_max {
                let (b, u) = d.coeffs(n)?;
                let (b_limit, u_limit) = meixner_coeffs(n, &t, &d.w)?;
                rows.push(LimitRow {
                    n,
                    b,
                    u,
                    b_limit,
                    u_limit,
                });
            }
            (Family::MeixnerModified.name(), "meixner")
        }
        Some(FamilyArg::Krall) => {
            let d = c.degenerate(FamilyArg::Krall)?;
            for n in 0..=c.n_max {
                let (b, u) = d.coeffs(n)?;
                let nn = Real::from_int(n as i64, bits);
                let b_limit = -(Real::from_int(2 * n as i64 + 1, bits) / &t);
                let u_limit = nn.square() / t.square();
                rows.push(LimitRow {
                    n,
                    b,
                    u,
                    b_limit,
                    u_limit,
                });
            }
            (Family::KrallLaguerre.name(), "laguerre")
        }
        Some(FamilyArg::Trig) => bail!("the trigonometric family has no limit table"),
    };
    let mut w = sink(c.out.as_deref())?;
    match c.format_or(Format::Csv) {
        Format::Json => json(&mut w, &rows)?,
        Format::Csv => {
            let mut csv = Csv::new(&["n", "b_n", "u_n", "b_n_limit", "u_n_limit"]);
            csv.comments.push(format!("{label} against {limit_label}"));
            let d = c.digits();
            for r in &rows {
                csv.row(vec![
                    r.n.to_string(),
                    dec(&r.b, d),
                    dec(&r.u, d),
                    dec(&r.b_limit, d),
                    dec(&r.u_limit, d),
                ]);
            }
            csv.write(&mut w)?;
        }
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Identities,
    Cross,
    Toda,
    Measure,
    Degenerate,
    Finite,
    Fraction,
    All,
}

fn run_suite(c: &Common, suite: Suite, samples: usize) -> Result<VerificationReport> {
    let t = c.t()?;
    Ok(match suite {
        Suite::Identities => verify::identity_suite(&*c.context()?, samples, c.seed),
        Suite::Cross => verify::cross_validate(&c.elliptic()?, &t, c.n_max)?,
        Suite::Toda => match c.subject()? {
            Subject::Elliptic(p) => {
                verify::toda_residuals(verify::Subject::Elliptic(&p), &[t], 0..=c.n_max)
            }
            Subject::Degenerate(d) => {
                verify::toda_residuals(verify::Subject::Degenerate(&d), &[t], 0..=c.n_max)
            }
        },
        Suite::Measure => verify::measure_suite(&c.elliptic()?, &t, &c.tail_eps()?)?,
        Suite::Degenerate => verify::degenerate_suite(c.precision),
        Suite::Finite => verify::finite_suite(c.context()?),
        Suite::Fraction => {
            let tab = table(c, 5)?;
            let m = moment_sequence(c, 11)?;
            verify::fraction_suite(&c.subject_name(), &tab, &m.values, &[3, 5])
        }
        Suite::All => {
            let mut all = VerificationReport::new("all", c.bits());
            all.meta.seed = Some(c.seed);
            let measure_applies = c.family.is_none() && matches!(c.case, CaseArg::I | CaseArg::Ii);
            for s in [
                Suite::Identities,
                Suite::Cross,
                Suite::Toda,
                Suite::Measure,
                Suite::Degenerate,
                Suite::Finite,
                Suite::Fraction,
            ] {
                let applies = match s {
                    Suite::Cross => c.family.is_none(),
                    Suite::Measure => measure_applies,
                    _ => true,
                };
                if applies {
                    all.merge(run_suite(c, s, samples)?);
                }
            }
            all
        }
    })
}

pub fn verify(c: &Common, suite: Suite, tol: Option<&str>, samples: usize) -> Result<bool> {
    let mut report = run_suite(c, suite, samples)?;
    if let Some(tol) = tol {
        report = report.with_tolerance(&c.real("tol", tol)?);
    }
    let mut w = sink(c.out.as_deref())?;
    match c.format_or(Format::Json) {
        Format::Json => json(&mut w, &report)?,
        Format::Csv => {
            let mut csv = Csv::new(&["name", "residual", "tolerance", "pass"]);
            csv.comments.push(format!("suite {}", report.suite));
            for ch in &report.checks {
                csv.row(vec![
                    format!("\"{}\"", ch.name.replace('"', "\"\"")),
                    dec(&ch.residual, 6),
                    dec(&ch.tolerance, 3),
                    ch.pass.to_string(),
                ]);
            }
            csv.write(&mut w)?;
        }
    }
    w.flush()?;
    let failed = report.failures().count();
    if failed > 0 {
        eprintln!("{failed} of {} checks failed", report.checks.len());
    }
    Ok(report.passed())
}
