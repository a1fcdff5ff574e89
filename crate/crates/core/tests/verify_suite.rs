use std::sync::{Arc, OnceLock};

use elliptic_toda::arith::Real;
use elliptic_toda::degenerate::mp_coeffs;
use elliptic_toda::degenerate::DegenerateParams;
use elliptic_toda::elliptic::EllipticContext;
use elliptic_toda::moments::moments;
use elliptic_toda::toda::*;
use elliptic_toda::verify::*;

fn fixture() -> Arc<EllipticContext> {
    static CTX: OnceLock<Arc<EllipticContext>> = OnceLock::new();
    CTX.get_or_init(|| Arc::new(EllipticContext::from_decimal("0.7", "0.1", 40).unwrap()))
        .clone()
}

fn unit_fixture() -> Arc<EllipticContext> {
    static CTX: OnceLock<Arc<EllipticContext>> = OnceLock::new();
    CTX.get_or_init(|| {
        Arc::new(EllipticContext::from_k2(&Real::parse("0.5", 140).unwrap(), 40).unwrap())
    })
    .clone()
}

fn show_failures(r: &VerificationReport) -> String {
    r.failures()
        .map(|c| {
            format!(
                "{}: {} (tol {}) {:?}",
                c.name,
                c.residual.to_decimal(6),
                c.tolerance.to_decimal(3),
                c.error
            )
        })
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn toda_residuals_pass_for_every_elliptic_case() {
    let ctx = fixture();
    let grid: Vec<Real> = [-0.3, 0.0, 0.25].iter().map(|&x| ctx.real(x)).collect();
    for p in [
        TodaParams::case_i(ctx.clone(), ctx.real(1.0)).unwrap(),
        TodaParams::case_ii(ctx.clone(), ctx.real(0.8)).unwrap(),
    ] {
        let r = toda_residuals(Subject::Elliptic(&p), &grid, 0..=10);
        assert!(r.passed(), "{}", show_failures(&r));
        assert_eq!(r.checks.len(), 2 * grid.len());
    }
}

#[test]
fn toda_residuals_skip_poles() {
    // the trigonometric family has a pole at w t = π
    let bits = 140;
    let pi = Real::pi(bits);
    let p = DegenerateParams::trig(
        Real::one(bits),
        Real::from_f64(0.4, bits),
        Real::from_f64(0.7, bits),
    )
    .unwrap();
    let grid = vec![Real::from_f64(0.4, bits), pi];
    let r = toda_residuals(Subject::Degenerate(&p), &grid, 0..=6);
    assert!(r.passed(), "{}", show_failures(&r));
    assert_eq!(r.meta.skipped.len(), 1, "{:?}", r.meta.skipped);
}

#[test]
fn toda_residuals_pass_for_meixner_pollaczek() {
    let t = fixture().real(0.1);
    let mp = DegenerateParams::mp(t.clone()).unwrap();
    let r = toda_residuals(Subject::Degenerate(&mp), std::slice::from_ref(&t), 0..=8);
    assert!(r.passed(), "{}", show_failures(&r));
    let (_, u) = mp_coeffs(3, &t).unwrap();
    assert!(u > 0.0);
}

#[test]
fn cross_validation_passes_at_generic_and_zero_time() {
    let ctx = fixture();
    for p in [
        TodaParams::case_i(ctx.clone(), ctx.real(1.0)).unwrap(),
        TodaParams::case_ii(ctx.clone(), ctx.real(1.0)).unwrap(),
    ] {
        for t in [ctx.real(0.0), ctx.real(0.15)] {
            let r = cross_validate(&p, &t, 8).unwrap();
            assert!(r.passed(), "{}", show_failures(&r));
            let carlitz = r.checks.iter().any(|c| c.name.contains("Stieltjes"));
            assert_eq!(carlitz, t.is_zero());
        }
    }
}

#[test]
fn cross_validation_includes_residue_class_formulas_at_half_period() {
    let ctx = unit_fixture();
    let p = TodaParams::case_i(ctx.clone(), ctx.real(1.0)).unwrap();
    let t = &ctx.omega1 / 2;
    let r = cross_validate(&p, &t, 8).unwrap();
    assert!(r.passed(), "{}", show_failures(&r));
    assert!(r.checks.iter().any(|c| c.name.contains("residue-class")));
    assert!(r.checks.iter().any(|c| c.name.contains("c0 at")));
}

#[test]
fn identity_suite_passes_and_is_reproducible() {
    let ctx = fixture();
    let a = identity_suite(&ctx, 12, DEFAULT_SEED);
    assert!(a.passed(), "{}", show_failures(&a));
    let b = identity_suite(&ctx, 12, DEFAULT_SEED);
    let ra: Vec<String> = a.checks.iter().map(|c| c.residual.to_decimal(30)).collect();
    let rb: Vec<String> = b.checks.iter().map(|c| c.residual.to_decimal(30)).collect();
    assert_eq!(ra, rb);
    assert_eq!(a.meta.seed, Some(DEFAULT_SEED));
    assert!(a.checks.len() >= 9);
}

#[test]
fn identity_suite_passes_for_a_second_lattice() {
    let ctx = unit_fixture();
    let r = identity_suite(&ctx, 8, 7);
    assert!(r.passed(), "{}", show_failures(&r));
}

#[test]
fn zero_tolerance_fails_every_check() {
    let ctx = fixture();
    let r = identity_suite(&ctx, 4, 1).with_tolerance(&Real::zero(64));
    assert!(!r.checks.is_empty());
    assert!(r.checks.iter().all(|c| !c.pass));
}

#[test]
fn measure_suite_passes_for_both_cases() {
    let ctx = fixture();
    let eps = ctx.real(1e-30);
    for p in [
        TodaParams::case_i(ctx.clone(), ctx.real(1.0)).unwrap(),
        TodaParams::case_ii(ctx.clone(), ctx.real(1.0)).unwrap(),
    ] {
        for t in [-0.4, 0.0, 0.3] {
            let r = measure_suite(&p, &ctx.real(t), &eps).unwrap();
            assert!(r.passed(), "t = {t}: {}", show_failures(&r));
        }
    }
}

#[test]
fn finite_suite_passes() {
    let r = finite_suite(fixture());
    assert!(r.passed(), "{}", show_failures(&r));
    assert!(r.checks.len() >= 7);
}

#[test]
fn degenerate_suite_passes() {
    let r = degenerate_suite(40);
    assert!(r.passed(), "{}", show_failures(&r));
    assert_eq!(r.checks.len(), 4);
}

#[test]
fn fraction_slopes_meet_the_order_bound() {
    let ctx = fixture();
    let p = TodaParams::case_i(ctx.clone(), ctx.real(1.0)).unwrap();
    let t = ctx.real(0.0);
    let table = CoefficientTable::closed_form(&p, &t, 12).unwrap();
    let c = moments(&p, &t, 14).unwrap();
    let r = fraction_suite("case i", &table, &c.values, &[3, 5]);
    assert!(r.passed(), "{}", show_failures(&r));
    assert_eq!(r.checks.len(), 4);

    let mp = DegenerateParams::mp(t.clone()).unwrap();
    let table = mp.table(12).unwrap();
    let c = mp.moments(14).unwrap();
    let r = fraction_suite("mp", &table, &c.values, &[3, 5]);
    assert!(r.passed(), "{}", show_failures(&r));
}

#[test]
fn fraction_errors_shrink_with_depth() {
    let ctx = fixture();
    let p = TodaParams::case_ii(ctx.clone(), ctx.real(1.0)).unwrap();
    let t = ctx.real(0.1);
    let table = CoefficientTable::closed_form(&p, &t, 10).unwrap();
    let c = moments(&p, &t, 12).unwrap();
    let z = vec![ctx.real(30.0)];
    let e3 = fraction_errors(&table, &c.values, 3, &z).unwrap();
    let e5 = fraction_errors(&table, &c.values, 5, &z).unwrap();
    assert!(e5[0] < e3[0]);
}

#[test]
fn merged_reports_keep_every_check_and_serialize() {
    let ctx = fixture();
    let mut all = VerificationReport::new("all", ctx.bits());
    all.merge(identity_suite(&ctx, 3, 5));
    all.merge(finite_suite(ctx.clone()));
    assert!(all.checks.iter().all(|c| c.name.contains(": ")));
    let json = serde_json::to_string(&all).unwrap();
    let back: VerificationReport = serde_json::from_str(&json).unwrap();
    assert_eq!(back.checks.len(), all.checks.len());
    assert_eq!(back.passed(), all.passed());
}
