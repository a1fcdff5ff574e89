use std::sync::{Arc, OnceLock};

use elliptic_toda::arith::{rel_diff, Real};
use elliptic_toda::elliptic::EllipticContext;
use elliptic_toda::error::Error;
use elliptic_toda::measure::*;
use elliptic_toda::moments::{moments, polynomial_values};
use elliptic_toda::toda::*;
use proptest::prelude::*;

fn fixture() -> Arc<EllipticContext> {
    static CTX: OnceLock<Arc<EllipticContext>> = OnceLock::new();
    CTX.get_or_init(|| Arc::new(EllipticContext::from_decimal("0.7", "0.1", 40).unwrap()))
        .clone()
}

fn case(which: u8) -> TodaParams {
    let ctx = fixture();
    match which {
        1 => TodaParams::case_i(ctx.clone(), ctx.real(1.0)).unwrap(),
        _ => TodaParams::case_ii(ctx.clone(), ctx.real(1.0)).unwrap(),
    }
}

fn eps() -> Real {
    fixture().real(1e-30)
}

#[test]
fn admissible_interval_is_symmetric_and_matches_k() {
    for which in [1, 2] {
        let p = case(which);
        let (lo, hi) = admissible_interval(&p).unwrap();
        assert_eq!((&lo + &hi).to_f64(), 0.0);
        // e1 − e3 = 1.5, w = 1
        let expected = &p.ctx.big_k / p.ctx.real(1.5).sqrt();
        assert!(rel_diff(&hi, &expected, 1e-30) < 1e-30);
    }
}

#[test]
fn unit_spread_gives_interval_minus_k_to_k() {
    // e1 − e3 = 1
    let ctx = Arc::new(EllipticContext::from_decimal("0.4", "0.2", 30).unwrap());
    let p = TodaParams::case_i(ctx.clone(), ctx.real(1.0)).unwrap();
    let (lo, hi) = admissible_interval(&p).unwrap();
    assert!(rel_diff(&hi, &ctx.big_k, 1e-25) < 1e-25);
    assert!(rel_diff(&lo, &(-&ctx.big_k), 1e-25) < 1e-25);
}

#[test]
fn c0_blows_up_at_the_interval_edge() {
    let p = case(1);
    let (_, hi) = admissible_interval(&p).unwrap();
    let near = &hi - p.ctx.real(1e-7);
    assert!(c0_eval(&near, &p).unwrap().abs() > 1e6);
}

#[test]
fn interval_is_unsupported_for_wdot() {
    let p = TodaParams::wdot(fixture()).unwrap();
    assert!(matches!(
        admissible_interval(&p),
        Err(Error::Unsupported(_))
    ));
}

#[test]
fn t_outside_interval_is_a_domain_error() {
    let p = case(2);
    let (_, hi) = admissible_interval(&p).unwrap();
    let err = build_measure(&p, &(&hi + 0.01), &eps()).unwrap_err();
    assert!(matches!(err, Error::Domain(ref m) if m.contains("admissible")));
}

#[test]
fn case_i_masses_at_origin_are_mirror_symmetric() {
    let p = case(1);
    let mu = build_measure(&p, &p.ctx.real(0.0), &eps()).unwrap();
    for (i, s) in mu.indices.iter().enumerate() {
        if let Some(j) = mu.indices.iter().position(|&r| r == 1 - s) {
            assert!(rel_diff(&mu.masses[i], &mu.masses[j], 1e-35) < 1e-35);
            assert!(rel_diff(&mu.points[i], &(-&mu.points[j]), 1e-35) < 1e-35);
        }
    }
}

#[test]
fn case_i_masses_at_origin_follow_the_nome_formula() {
    let p = case(1);
    let ctx = &p.ctx;
    let mu = build_measure(&p, &ctx.real(0.0), &eps()).unwrap();
    let v = (-(ctx.big_k.pi_like() * &ctx.big_k / &ctx.big_kprime)).exp();
    let pref = ctx.big_k.pi_like() / (&ctx.kprime * &ctx.big_kprime);
    for (s, m) in mu.indices.iter().zip(&mu.masses).take(6) {
        let h = ctx.real(*s as f64 - 0.5);
        let expected = &pref / ((&v.ln() * &h).exp() + (-(&v.ln() * &h)).exp());
        assert!(rel_diff(m, &expected, 1e-30) < 1e-30, "s = {s}");
    }
}

#[test]
fn total_mass_is_c0() {
    for which in [1, 2] {
        let p = case(which);
        for t in [0.0, 0.1, -0.3] {
            let t = p.ctx.real(t);
            let mu = build_measure(&p, &t, &eps()).unwrap();
            let c0 = c0_eval(&t, &p).unwrap();
            assert!(
                rel_diff(&mu.total_mass(), &c0, 1e-30) < 1e-28,
                "case {which}"
            );
        }
    }
}

#[test]
fn odd_moments_vanish_at_origin_case_i() {
    let p = case(1);
    let mu = build_measure(&p, &p.ctx.real(0.0), &eps()).unwrap();
    let m = measure_moments(&mu, 11).unwrap();
    for j in (1..12).step_by(2) {
        assert!(m.values[j].abs() < 1e-28, "c_{j}");
    }
}

#[test]
fn measure_moments_match_exact_moments() {
    for which in [1, 2] {
        let p = case(which);
        for t in [0.0, 0.1, -0.2] {
            let t = p.ctx.real(t);
            let mu = build_measure(&p, &t, &eps()).unwrap();
            let sums = measure_moments(&mu, 12).unwrap();
            let exact = moments(&p, &t, 13).unwrap();
            for j in 0..=12 {
                let scale = exact.values[j].abs().max(Real::one(p.bits()));
                let err = (&sums.values[j] - &exact.values[j]).abs() / scale;
                assert!(err < 1e-25, "case {which} j={j}: {}", err.to_decimal(5));
            }
        }
    }
}

#[test]
fn too_many_moments_for_the_tail_bound() {
    let p = case(1);
    let mu = build_measure_with(&p, &p.ctx.real(0.1), &eps(), 10).unwrap();
    assert!(matches!(
        measure_moments(&mu, 11),
        Err(Error::Truncation(_))
    ));
}

#[test]
fn tail_bound_is_below_request() {
    let p = case(2);
    let mu = build_measure(&p, &p.ctx.real(0.2), &eps()).unwrap();
    assert!(mu.tail_bound < eps() * 2);
    assert!(mu.truncation.unwrap() > 0);
}

#[test]
fn masses_scale_by_exponential_of_point() {
    for which in [1, 2] {
        let p = case(which);
        let t = p.ctx.real(0.15);
        let m0 = build_measure(&p, &p.ctx.real(0.0), &eps()).unwrap();
        let mt = build_measure(&p, &t, &eps()).unwrap();
        let ratio_of = |s: i64| {
            let i0 = m0.indices.iter().position(|&r| r == s).unwrap();
            let it = mt.indices.iter().position(|&r| r == s).unwrap();
            &mt.masses[it] / (&m0.masses[i0] * (&m0.points[i0] * &t).exp())
        };
        let reference = ratio_of(1);
        for s in -3..=4 {
            assert!(rel_diff(&ratio_of(s), &reference, 1e-30) < 1e-30);
        }
    }
}

#[test]
fn masses_positive_over_a_sweep() {
    for which in [1, 2] {
        let p = case(which);
        let (_, hi) = admissible_interval(&p).unwrap();
        for i in 0..20 {
            let t = &hi * ((i as f64 - 9.5) / 10.5);
            let mu = build_measure(&p, &t, &p.ctx.real(1e-20)).unwrap();
            assert!(mu.masses.iter().all(|m| *m > 0.0));
            let sums = measure_moments(&mu, 4).unwrap();
            let exact = moments(&p, &t, 5).unwrap();
            for j in 0..5 {
                assert!(
                    rel_diff(&sums.values[j], &exact.values[j], 1e-12) < 1e-12,
                    "t = {}",
                    t.to_f64()
                );
            }
        }
    }
}

#[test]
fn gram_matrix_is_diagonal_with_closed_norms() {
    for which in [1, 2] {
        let p = case(which);
        for t in [0.0, 0.1] {
            let t = p.ctx.real(t);
            let mu = build_measure(&p, &t, &eps()).unwrap();
            let table = CoefficientTable::closed_form(&p, &t, 7).unwrap();
            let g = orthogonality_gram(&mu, &table, 6).unwrap();
            assert!(rel_diff(&g[0][0], &c0_eval(&t, &p).unwrap(), 1e-28) < 1e-28);
            for n in 0..=6 {
                let h = h_closed(n, &t, &p).unwrap();
                assert!(rel_diff(&g[n][n], &h, 1e-25) < 1e-20, "h_{n}");
                for m in 0..n {
                    let scale = (&g[n][n] * &g[m][m]).sqrt();
                    assert!(g[n][m].abs() / scale < 1e-20, "G[{n}][{m}]");
                }
            }
        }
    }
}

#[test]
fn carleman_sums_dominate_the_harmonic_witness() {
    let p = case(1);
    let t = p.ctx.real(0.1);
    let table = CoefficientTable::closed_form(&p, &t, 100).unwrap();
    let sums = carleman_partial_sums(&table, 100).unwrap();
    assert_eq!(sums.partial_sums.len(), 100);
    assert_eq!(sums.even_partial_sums.len(), 50);
    let a = carleman_witness(&p, &t).unwrap();
    let spread = &p.ctx.e1 - &p.ctx.e2;
    for n in 1..=50usize {
        let bound = (&spread * &a) * ((2 * n * 2 * n) as f64);
        assert!(table.u[2 * n] <= bound, "u_{}", 2 * n);
    }
    let lower = carleman_lower_bounds(&p, &t, 50).unwrap();
    for (s, l) in sums.even_partial_sums.iter().zip(&lower) {
        assert!(s >= l);
    }
    assert!(sums.partial_sums.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn carleman_witness_equals_its_two_forms() {
    let p = case(1);
    let t = p.ctx.real(0.3);
    let a = carleman_witness(&p, &t).unwrap();
    let j = p.ctx.sncndn(&(p.scale() * &t));
    let other = j.cn.square().recip() + p.ctx.k2.clone() / p.ctx.kprime.square();
    assert!(rel_diff(&a, &other, 1e-35) < 1e-35);
}

#[test]
fn carleman_sums_grow_logarithmically_at_origin() {
    let p = case(1);
    let table = CoefficientTable::closed_form(&p, &p.ctx.real(0.0), 256).unwrap();
    let s = carleman_partial_sums(&table, 256).unwrap().partial_sums;
    // S(2n) − S(n) tends to a constant multiple of ln 2 when u_n ~ Cn²
    let inc = |n: usize| (&s[2 * n - 1] - &s[n - 1]).to_f64();
    let (a, b) = (inc(64), inc(128));
    assert!((a / b - 1.0).abs() < 0.05, "{a} vs {b}");
}

#[test]
fn carleman_rejects_nonpositive_u() {
    let bits = 64;
    let z = Real::zero(bits);
    let table = CoefficientTable::from_sequences(
        vec![z.clone(); 3],
        vec![z.clone(), Real::one(bits), -Real::one(bits)],
        z,
        Provenance::ClosedForm,
    );
    assert!(matches!(
        carleman_partial_sums(&table, 2),
        Err(Error::Diagnostic { index: 2, .. })
    ));
}

/// Discretised Stieltjes procedure: the recurrence of a finite measure,
/// computed directly from inner products.
fn stieltjes_procedure(points: &[Real], weights: &[Real], n: usize) -> (CoefficientTable, Real) {
    let bits = points[0].prec();
    let zero = Real::zero(bits);
    let mut prev = vec![zero.clone(); points.len()];
    let mut cur = vec![Real::one(bits); points.len()];
    let mut b = Vec::new();
    let mut u = vec![zero.clone()];
    let mut h_prev = Real::one(bits);
    let mut c0 = zero.clone();
    for k in 0..=n {
        let h: Real = cur
            .iter()
            .zip(weights)
            .fold(zero.clone(), |a, (p, w)| a + p.square() * w);
        let xh: Real = cur
            .iter()
            .zip(weights)
            .zip(points)
            .fold(zero.clone(), |a, ((p, w), x)| a + p.square() * w * x);
        if k == 0 {
            c0 = h.clone();
        } else {
            u.push(&h / &h_prev);
        }
        if k == n {
            b.push(zero.clone());
            break;
        }
        let bk = &xh / &h;
        let next: Vec<Real> = (0..points.len())
            .map(|i| (&points[i] - &bk) * &cur[i] - u[k].clone() * &prev[i])
            .collect();
        b.push(bk);
        prev = cur;
        cur = next;
        h_prev = h;
    }
    (
        CoefficientTable::from_sequences(b, u, zero, Provenance::MomentDerived),
        c0,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn finite_measure_recovers_points_and_weights(
        raw in prop::collection::vec((-5.0f64..5.0, 0.1f64..3.0), 2..7)
    ) {
        let bits = 200;
        let mut pts: Vec<(f64, f64)> = raw;
        pts.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        pts.dedup_by(|a, b| (a.0 - b.0).abs() < 1e-2);
        prop_assume!(pts.len() >= 2);
        let points: Vec<Real> = pts.iter().map(|p| Real::from_f64(p.0, bits)).collect();
        let weights: Vec<Real> = pts.iter().map(|p| Real::from_f64(p.1, bits)).collect();
        let (table, c0) = stieltjes_procedure(&points, &weights, points.len());
        let mu = finite_measure(&table, &c0).unwrap();
        prop_assert_eq!(mu.len(), points.len());
        for i in 0..points.len() {
            prop_assert!((&mu.points[i] - &points[i]).abs() < 1e-40);
            prop_assert!(rel_diff(&mu.masses[i], &weights[i], 1e-40) < 1e-40);
        }
    }
}

#[test]
fn finite_measure_requires_vanishing_u() {
    let p = case(1);
    let table = CoefficientTable::closed_form(&p, &p.ctx.real(0.0), 4).unwrap();
    assert!(matches!(
        finite_measure(&table, &Real::one(p.bits())),
        Err(Error::Diagnostic { index: 4, .. })
    ));
}

#[test]
fn wdot_finite_orthogonality() {
    let ctx = fixture();
    let p = TodaParams::wdot(ctx.clone()).unwrap();
    for n in [2usize, 3, 4] {
        let t = &ctx.omega1 * 2 / (n as i32 + 2);
        let table = CoefficientTable::wdot_truncated(&p, &t, n).unwrap();
        let c0 = c0_eval(&t, &p).unwrap();
        let mu = finite_measure(&table, &c0).unwrap();
        assert_eq!(mu.len(), n);
        assert!(mu.masses.iter().all(|m| *m > 0.0));
        assert!(rel_diff(&mu.total_mass(), &c0, 1e-25) < 1e-25);
        // exact moments reproduced up to order 2N − 1
        let exact = moments(&p, &t, 2 * n).unwrap();
        for j in 0..2 * n {
            let sum = mu
                .points
                .iter()
                .zip(&mu.masses)
                .fold(Real::zero(p.bits()), |a, (x, m)| a + m * x.powi(j as i32));
            let scale = exact.values[j].abs().max(Real::one(p.bits()));
            assert!(
                (&sum - &exact.values[j]).abs() / scale < 1e-20,
                "N = {n}, j = {j}"
            );
        }
        // Gram residual under the finite measure
        for i in 0..n {
            for k in 0..i {
                let g = mu
                    .points
                    .iter()
                    .zip(&mu.masses)
                    .fold(Real::zero(p.bits()), |a, (x, m)| {
                        let v = polynomial_values(&table, x, n - 1).unwrap();
                        a + m * &v[i] * &v[k]
                    });
                assert!(g.abs() < 1e-20);
            }
        }
    }
}

#[test]
fn measure_serializes_to_json() {
    let p = case(2);
    let mu = build_measure(&p, &p.ctx.real(0.0), &p.ctx.real(1e-10)).unwrap();
    let text = serde_json::to_string(&mu).unwrap();
    let back: DiscreteMeasure = serde_json::from_str(&text).unwrap();
    assert_eq!(back.indices, mu.indices);
    assert!(rel_diff(&back.masses[0], &mu.masses[0], 1e-30) < 1e-30);
}
