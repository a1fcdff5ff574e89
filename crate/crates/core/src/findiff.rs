//! Central finite differences on extended-precision functions.
//!
//! Both stencils use nine points and are exact for polynomials of degree
//! eight, so the truncation error is `O(h^8)`. Coefficients are kept as
//! integers over a common denominator to avoid binary rounding of `1/280`
//! and friends.

use std::ops::{Add, Div, Mul};

use crate::arith::Real;

const D1_NUM: [i32; 4] = [672, -168, 32, -3];
const D1_DEN: i32 = 840;
const D2_CENTER: i32 = -14350;
const D2_NUM: [i32; 4] = [8064, -1008, 128, -9];
const D2_DEN: i32 = 5040;

/// Values that finite differences can combine.
pub trait Differentiable:
    Clone
    + for<'a> Add<&'a Self, Output = Self>
    + Mul<i32, Output = Self>
    + for<'a> Div<&'a Real, Output = Self>
{
}

impl<T> Differentiable for T where
    T: Clone
        + for<'a> Add<&'a T, Output = T>
        + Mul<i32, Output = T>
        + for<'a> Div<&'a Real, Output = T>
{
}

/// First derivative of `f` at `t` with step `h`.
pub fn derivative<T, E, F>(mut f: F, t: &Real, h: &Real) -> Result<T, E>
where
    T: Differentiable,
    F: FnMut(&Real) -> Result<T, E>,
{
    let mut acc: Option<T> = None;
    for (j, &c) in D1_NUM.iter().enumerate() {
        let step = h * (j as i32 + 1);
        let plus = f(&(t + &step))? * c;
        let minus = f(&(t - &step))? * (-c);
        let term = plus + &minus;
        acc = Some(match acc {
            None => term,
            Some(a) => a + &term,
        });
    }
    let scale = h * D1_DEN;
    Ok(acc.expect("stencil is non-empty") / &scale)
}

/// Second derivative of `f` at `t` with step `h`.
pub fn second_derivative<T, E, F>(mut f: F, t: &Real, h: &Real) -> Result<T, E>
where
    T: Differentiable,
    F: FnMut(&Real) -> Result<T, E>,
{
    let mut acc = f(t)? * D2_CENTER;
    for (j, &c) in D2_NUM.iter().enumerate() {
        let step = h * (j as i32 + 1);
        acc = acc + &(f(&(t + &step))? * c);
        acc = acc + &(f(&(t - &step))? * c);
    }
    let scale = h.square() * D2_DEN;
    Ok(acc / &scale)
}
