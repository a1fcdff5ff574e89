//! Double-exponential (tanh-sinh) quadrature in extended precision.
//!
//! The rule is applied on a finite interval. Infinite ranges are handled by
//! the caller, which truncates them using a bound on the tail of the
//! integrand. Levels halve the step until two consecutive estimates agree
//! to the requested tolerance.

use crate::arith::Real;
use crate::error::{Error, Result};

/// Result of a quadrature run.
#[derive(Debug, Clone)]
pub struct Quadrature {
    pub value: Real,
    /// Difference between the last two levels.
    pub error_estimate: Real,
    pub evaluations: usize,
}

/// Integrates `f` over `[a, b]` to absolute tolerance `tol`.
///
/// Works at the precision of `a`. Fails with [`Error::Domain`] when
/// `max_level` halvings do not reach the tolerance.
pub fn tanh_sinh<F>(mut f: F, a: &Real, b: &Real, tol: &Real, max_level: u32) -> Result<Quadrature>
where
    F: FnMut(&Real) -> Real,
{
    let bits = a.prec().max(b.prec());
    let half_pi = Real::pi(bits) / 2;
    let half_width = (b - a) / 2;
    // Nodes whose weight falls below this contribute nothing at working precision.
    let cutoff = Real::epsilon(bits).square();

    // Contribution of nodes j·h for odd j (or all j at level 0).
    let mut level_sum = |h: &Real, stride: usize, start: usize, evals: &mut usize| -> Real {
        let mut acc = Real::zero(bits);
        let mut j = start;
        loop {
            let s = h * (j as i32);
            let inner = &half_pi * s.sinh();
            let cosh_inner = inner.cosh();
            let weight = &half_pi * s.cosh() / cosh_inner.square();
            if j > 0 && weight < cutoff {
                break;
            }
            // 1 − tanh(inner) computed without cancellation.
            let complement = 2 / ((&inner * 2).exp() + 1);
            if j > 0 && complement < Real::epsilon(bits) {
                break;
            }
            let dx = &half_width * &complement;
            let right = b - &dx;
            let mut fsum = f(&right);
            *evals += 1;
            if j > 0 {
                let left = a + &dx;
                fsum += f(&left);
                *evals += 1;
            }
            acc += weight * fsum;
            j += stride;
        }
        acc
    };

    let mut evaluations = 0;
    let mut h = Real::one(bits);
    let mut sum = level_sum(&h, 1, 0, &mut evaluations);
    let mut estimate = &sum * &h * &half_width;
    for _ in 0..max_level {
        h /= 2;
        sum += level_sum(&h, 2, 1, &mut evaluations);
        let next = &sum * &h * &half_width;
        let diff = (&next - &estimate).abs();
        estimate = next;
        if diff < *tol {
            return Ok(Quadrature {
                value: estimate,
                error_estimate: diff,
                evaluations,
            });
        }
    }
    Err(Error::Domain(format!(
        "tanh-sinh quadrature did not reach tolerance {} within {max_level} levels",
        tol.to_decimal(3)
    )))
}
