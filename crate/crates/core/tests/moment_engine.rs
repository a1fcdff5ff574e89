#![allow(clippy::needless_range_loop)]

use std::sync::{Arc, OnceLock};

use elliptic_toda::arith::{rel_diff, Cplx, Real};
use elliptic_toda::elliptic::EllipticContext;
use elliptic_toda::error::{Degeneracy, Error};
use elliptic_toda::findiff::derivative;
use elliptic_toda::moments::*;
use elliptic_toda::toda::*;
use proptest::prelude::*;
use rug::Rational;

fn fixture() -> Arc<EllipticContext> {
    static CTX: OnceLock<Arc<EllipticContext>> = OnceLock::new();
    CTX.get_or_init(|| Arc::new(EllipticContext::from_decimal("0.7", "0.1", 50).unwrap()))
        .clone()
}

fn case(which: u8) -> TodaParams {
    let ctx = fixture();
    match which {
        1 => TodaParams::case_i(ctx.clone(), ctx.real(1.0)).unwrap(),
        _ => TodaParams::case_ii(ctx.clone(), ctx.real(1.0)).unwrap(),
    }
}

fn close(a: &Real, b: &Real, tol: f64) -> bool {
    rel_diff(a, b, 1e-30) < tol
}

#[test]
fn derivative_of_reciprocal_cn() {
    let d = JacobiExpression::monomial(0, -1, 0).differentiate();
    assert_eq!(d, JacobiExpression::monomial(1, -2, 1));
}

#[test]
fn derivative_of_dc_is_kprime_squared_sn_over_cn_squared() {
    let d = JacobiExpression::monomial(0, -1, 1).differentiate();
    let terms: Vec<_> = d.terms().collect();
    assert_eq!(terms.len(), 1);
    let (key, poly) = terms[0];
    assert_eq!(*key, (1, -2, 0));
    assert_eq!(*poly, KPoly(vec![1.into(), (-1).into()]));
}

#[test]
fn second_derivative_of_reciprocal_cn_at_origin() {
    let ctx = fixture();
    let d2 = JacobiExpression::monomial(0, -1, 0)
        .differentiate()
        .differentiate();
    let v = d2.eval(&ctx.real(0.0), &ctx).unwrap();
    assert!((v - 1).abs() < 1e-45);
}

#[test]
fn term_count_grows_slowly() {
    let d = JacobiExpression::monomial(0, -1, 0).derivatives(21);
    // canonical monomials sn^{0,1}·cn^b·dn^{0,1}: at most a few per power of cn
    assert!(d[20].len() <= 4 * 22, "{}", d[20].len());
}

fn fd_check<E: Expression>(e: &E, env: &E::Env, u: f64, bits: u32) {
    let u = Real::from_f64(u, bits);
    let h = Real::parse("1e-6", bits).unwrap();
    let numeric = derivative(|x: &Real| e.eval(x, env), &u, &h).unwrap();
    let exact = e.differentiate().eval(&u, env).unwrap();
    assert!(
        rel_diff(&numeric, &exact, 1.0) < 1e-25,
        "{e}: {numeric} vs {exact}"
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn jacobi_derivative_matches_finite_difference(a in -2i32..3, b in -3i32..3, c in 0i32..3, u in 0.05f64..0.9) {
        let e = JacobiExpression::monomial(a, b, c).differentiate();
        fd_check(&e, fixture().as_ref(), u, fixture().bits());
    }

    #[test]
    fn circular_derivative_matches_finite_difference(a in -2i32..3, b in -3i32..3, hyp in any::<bool>(), u in 0.1f64..1.2) {
        let kind = if hyp { CircularKind::Hyperbolic } else { CircularKind::Trig };
        let e = CircularExpression::monomial(kind, a, b).differentiate();
        fd_check(&e, &(), u, 200);
    }

    #[test]
    fn rational_derivative_matches_finite_difference(a in -4i32..4, u in 0.3f64..2.0) {
        let e = RationalExpression::monomial(a).differentiate();
        fd_check(&e, &(), u, 200);
    }

    #[test]
    fn bareiss_matches_cofactor_expansion(entries in proptest::collection::vec(-9i64..10, 16), n in 1usize..=4) {
        let m: Vec<Vec<Rational>> = (0..n).map(|i| (0..n).map(|j| Rational::from(entries[i * 4 + j])).collect()).collect();
        prop_assert_eq!(determinant(m.clone()), cofactor_determinant(&m));
        let minors = leading_minors(m.clone());
        for (k, d) in minors.iter().enumerate() {
            let block: Vec<Vec<Rational>> = m[..=k].iter().map(|r| r[..=k].to_vec()).collect();
            prop_assert_eq!(d, &cofactor_determinant(&block));
        }
    }
}

#[test]
fn moments_at_origin() {
    let p = case(1);
    let m = moments(&p, &p.ctx.real(0.0), 6).unwrap();
    assert!((&m.values[0] - 1).abs() < 1e-45);
    assert!(m.values[1].abs() < 1e-45);
    let s = &p.ctx.e1 - &p.ctx.e3;
    assert!(close(&m.values[2], &s, 1e-45));
    assert!(m.values[3].abs() < 1e-45);
}

#[test]
fn moment_chain_rule_holds() {
    for which in [1, 2] {
        let p = case(which);
        let t = p.ctx.real(0.1);
        let m = moments(&p, &t, 5).unwrap();
        let h = p.ctx.parse("1e-6").unwrap();
        for n in 0..4 {
            let d = derivative(
                |s: &Real| Ok::<_, Error>(moments(&p, s, n + 1)?.values[n].clone()),
                &t,
                &h,
            )
            .unwrap();
            assert!(close(&d, &m.values[n + 1], 1e-30), "c_{n}");
        }
        assert!(close(&m.values[0], &c0_eval(&t, &p).unwrap(), 1e-45));
    }
}

#[test]
fn family_and_wdot_moments_match_c0() {
    let k2 = Real::parse("0.6", 200).unwrap();
    let unit = Arc::new(EllipticContext::from_k2(&k2, 50).unwrap());
    let mut all: Vec<TodaParams> = [CaseTag::SnFamily, CaseTag::CnFamily, CaseTag::DnFamily]
        .into_iter()
        .map(|tag| TodaParams::family(unit.clone(), tag).unwrap())
        .collect();
    all.push(TodaParams::wdot(fixture()).unwrap());
    for p in all {
        let t = p.ctx.real(0.4);
        let m = moments(&p, &t, 3).unwrap();
        assert!(
            close(&m.values[0], &c0_eval(&t, &p).unwrap(), 1e-40),
            "{:?}",
            p.case_tag
        );
        let h = p.ctx.parse("1e-6").unwrap();
        let d = derivative(|s: &Real| c0_eval(s, &p), &t, &h).unwrap();
        assert!(close(&d, &m.values[1], 1e-30), "{:?}", p.case_tag);
    }
}

#[test]
fn moment_derived_coefficients_match_closed_forms() {
    for which in [1, 2] {
        let p = case(which);
        for t in [0.1, -0.25] {
            let t = p.ctx.real(t);
            let m = moments(&p, &t, 18).unwrap();
            let table = coeffs_from_moments(&m).unwrap();
            assert_eq!(table.n_max, 8);
            assert_eq!(table.provenance, Provenance::MomentDerived);
            for n in 0..=8 {
                let u = u_general(n, &t, &p).unwrap();
                let b = b_general(n, &t, &p).unwrap();
                assert!(
                    (&table.u[n] - &u).abs() < &u.abs().max(Real::one(200)) * 1e-9,
                    "u_{n}"
                );
                assert!(
                    (&table.b[n] - &b).abs() < &b.abs().max(Real::one(200)) * 1e-9,
                    "b_{n}"
                );
            }
        }
    }
}

#[test]
fn first_coefficients_from_small_determinants() {
    let p = case(1);
    let t = p.ctx.real(0.2);
    let m = moments(&p, &t, 4).unwrap();
    let c = &m.values;
    let table = coeffs_from_moments(&m).unwrap();
    assert!(close(&table.b[0], &(&c[1] / &c[0]), 1e-45));
    let u1 = (&c[0] * &c[2] - c[1].square()) / c[0].square();
    assert!(close(&table.u[1], &u1, 1e-40));
}

#[test]
fn hankel_determinants_match_closed_form() {
    for which in [1, 2] {
        let p = case(which);
        let t = p.ctx.real(0.1);
        let m = moments(&p, &t, 13).unwrap();
        let d = hankel_determinants(&m.values).unwrap();
        assert_eq!(d[0], 1.0);
        assert!(close(&d[1], &m.values[0], 1e-45));
        for n in 2..=6 {
            assert!(
                close(&d[n], &hankel_closed(n, &t, &p).unwrap(), 1e-8),
                "D_{n}"
            );
        }
    }
}

#[test]
fn hankel_positive_inside_interval() {
    let p = case(1);
    let hi = &p.ctx.big_k / p.scale();
    for x in [-0.8, -0.3, 0.0, 0.5, 0.9] {
        let t = &hi * x;
        let m = moments(&p, &t, 17).unwrap();
        let d = hankel_determinants(&m.values).unwrap();
        assert!(d.iter().take(9).all(|v| *v > 0.0), "x = {x}");
    }
}

#[test]
fn degenerate_hankel_is_classified_as_zero() {
    // Moments of a two-point measure: D_3 vanishes identically.
    let bits = 200;
    let pts = [Real::from_f64(-1.0, bits), Real::from_f64(2.0, bits)];
    let c: Vec<Real> = (0..7)
        .map(|j| {
            pts.iter()
                .map(|x| x.powi(j) / 2)
                .fold(Real::zero(bits), |a, b| a + b)
        })
        .collect();
    let h = hankel_analysis(&c, HankelPolicy::default());
    assert_eq!(h.values.len(), 3);
    assert_eq!(h.stop, Some((3, Degeneracy::Zero)));
    assert!(matches!(
        hankel_determinants(&c),
        Err(Error::DegenerateHankel { index: 3, .. })
    ));
}

#[test]
fn precision_exhaustion_is_reported() {
    // Hilbert-like moments of the uniform measure on [0, 1] at low precision.
    let bits = 70;
    let c: Vec<Real> = (0..31).map(|j| Real::one(bits) / (j + 1)).collect();
    let h = hankel_analysis(&c, HankelPolicy::default());
    let (_, kind) = h.stop.expect("must stop");
    assert_eq!(kind, Degeneracy::PrecisionExhausted);
}

#[test]
fn polynomial_basics() {
    let p = case(1);
    let t = p.ctx.real(0.1);
    let table = CoefficientTable::closed_form(&p, &t, 10).unwrap();
    assert!(polynomial_eval(&table, &table.b[0], 1).unwrap().abs() < 1e-45);
    let coeffs = polynomial_coefficients(&table, 10).unwrap();
    for (n, c) in coeffs.iter().enumerate() {
        assert_eq!(c.len(), n + 1);
        assert_eq!(c[n], 1.0);
    }
    // expanded coefficients reproduce the recurrence value
    let x = p.ctx.real(0.37);
    let horner = coeffs[7]
        .iter()
        .rev()
        .fold(Real::zero(200), |acc, c| acc * &x + c);
    assert!(close(
        &horner,
        &polynomial_eval(&table, &x, 7).unwrap(),
        1e-30
    ));
}

#[test]
fn polynomial_time_derivative_law() {
    let p = case(1);
    let t = p.ctx.real(0.1);
    let h = p.ctx.parse("1e-5").unwrap();
    let x = p.ctx.real(0.8);
    for n in 1..=6 {
        let pn = |s: &Real| -> elliptic_toda::error::Result<Real> {
            let table = CoefficientTable::closed_form(&p, s, n)?;
            polynomial_eval(&table, &x, n)
        };
        let dp = derivative(pn, &t, &h).unwrap();
        let table = CoefficientTable::closed_form(&p, &t, n).unwrap();
        let rhs = -(&table.u[n] * polynomial_eval(&table, &x, n - 1).unwrap());
        assert!((&dp - &rhs).abs() < 1e-6, "n = {n}");
    }
}

#[test]
fn polynomial_derivative_matches_finite_difference() {
    let p = case(2);
    let table = CoefficientTable::closed_form(&p, &p.ctx.real(0.2), 6).unwrap();
    let x = p.ctx.real(1.3);
    let h = p.ctx.parse("1e-6").unwrap();
    let fd = derivative(|s: &Real| polynomial_eval(&table, s, 6), &x, &h).unwrap();
    assert!(close(
        &fd,
        &polynomial_derivative(&table, &x, 6).unwrap(),
        1e-25
    ));
}

#[test]
fn stieltjes_series_leading_behaviour_and_toda_law() {
    let p = case(1);
    let t = p.ctx.real(0.1);
    let m = moments(&p, &t, 30).unwrap();
    let z = Cplx::from_real(&p.ctx.real(1e8));
    let f = stieltjes_series(&m.values, &z, 10).unwrap();
    assert!(close(&(&f.value * &z).re(), &m.values[0], 1e-7));
    // Ḟ = zF − c₀ for the truncated series up to the dropped tail.
    let z = Cplx::from_real(&p.ctx.real(40.0));
    let h = p.ctx.parse("1e-5").unwrap();
    let df = derivative(
        |s: &Real| {
            Ok::<_, Error>(
                stieltjes_series(&moments(&p, s, 30)?.values, &z, 29)?
                    .value
                    .re(),
            )
        },
        &t,
        &h,
    )
    .unwrap();
    let f = stieltjes_series(&m.values, &z, 29).unwrap();
    let rhs = (&f.value * &z).re() - &m.values[0];
    assert!((df - rhs).abs() < 1e-6);
    assert!(!f.diverging);
}

#[test]
fn e_generating_function_is_a_shift() {
    let p = case(1);
    let phi = e_generating(
        &p,
        &p.ctx.parse("0.1").unwrap(),
        &p.ctx.parse("0.05").unwrap(),
    )
    .unwrap();
    assert!(close(
        &phi,
        &c0_eval(&p.ctx.parse("0.15").unwrap(), &p).unwrap(),
        1e-45
    ));
}

#[test]
fn jfraction_depth_one() {
    let p = case(1);
    let t = p.ctx.real(0.1);
    let table = CoefficientTable::closed_form(&p, &t, 3).unwrap();
    let z = Cplx::new(&p.ctx.real(3.0), &p.ctx.real(1.0));
    let f = jfraction_eval(&table, &z, 1).unwrap();
    let expect = (&z - &table.b[0]).recip();
    assert!((f - expect).abs() < 1e-45);
}

#[test]
fn jfraction_zero_denominator_is_reported() {
    let bits = 128;
    let one = Real::one(bits);
    let table = CoefficientTable::from_sequences(
        vec![Real::from_f64(2.0, bits), Real::from_f64(2.0, bits)],
        vec![Real::zero(bits), one.clone()],
        Real::zero(bits),
        Provenance::ClosedForm,
    );
    let z = Cplx::from_real(&Real::from_f64(2.0, bits));
    assert!(matches!(
        jfraction_eval(&table, &z, 2),
        Err(Error::ZeroDenominator { depth: 1 })
    ));
}

/// Laurent coefficients (in 1/z) of the depth-`n` fraction by formal power
/// series division, independent of the moment pipeline.
fn fraction_coefficients(table: &CoefficientTable, depth: usize, len: usize) -> Vec<Real> {
    let bits = table.t.prec();
    // g = z·f as a series in w = 1/z; level j: f_j = w/(1 − b_j w − u_{j+1} w·f_{j+1})
    let mut f: Vec<Real> = vec![Real::zero(bits); len + 1];
    for j in (0..depth).rev() {
        let mut den = vec![Real::zero(bits); len + 1];
        den[0] = Real::one(bits);
        den[1] -= &table.b[j];
        if j + 1 < depth {
            for i in 1..len {
                den[i + 1] -= &(&table.u[j + 1] * &f[i]);
            }
        }
        // inv = 1/den
        let mut inv = vec![Real::zero(bits); len + 1];
        inv[0] = Real::one(bits);
        for i in 1..=len {
            let mut acc = Real::zero(bits);
            for k in 1..=i {
                acc += &(&den[k] * &inv[i - k]);
            }
            inv[i] = -acc;
        }
        f = vec![Real::zero(bits); len + 1];
        f[1..=len].clone_from_slice(&inv[..len]);
    }
    f[1..].to_vec()
}

#[test]
fn jfraction_expansion_reproduces_normalized_moments() {
    let p = case(1);
    let t = p.ctx.real(0.1);
    let m = moments(&p, &t, 12).unwrap();
    let table = CoefficientTable::closed_form(&p, &t, 6).unwrap();
    for depth in [3, 5] {
        let coeffs = fraction_coefficients(&table, depth, 2 * depth);
        for j in 0..2 * depth {
            let moment = &m.values[j] / &m.values[0];
            assert!(close(&coeffs[j], &moment, 1e-12), "depth {depth} j {j}");
        }
    }
}
