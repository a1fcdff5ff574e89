//! Elliptic solutions of the restricted Toda chain and the orthogonal
//! polynomials they generate, in extended precision.
//!
//! The modules build on each other: [`elliptic`] evaluates Weierstrass and
//! Jacobi functions, [`toda`] gives closed-form recurrence coefficients,
//! [`moments`] derives them again from exact moments, [`measure`] builds the
//! discrete orthogonality measures, [`degenerate`] covers the trigonometric
//! and rational limits, and [`verify`] cross-checks all of it.

// Index loops mirror the subscripts of the recurrences, and `!(x > 0.0)`
// is used on purpose so that NaN fails positivity tests.
#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod arith;
pub mod degenerate;
pub mod elliptic;
pub mod error;
pub mod findiff;
pub mod measure;
pub mod moments;
pub mod quadrature;
pub mod toda;
pub mod verify;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/elliptic.md")]
    mod elliptic {}
    #[doc = include_str!("../../../book/src/toda.md")]
    mod toda {}
    #[doc = include_str!("../../../book/src/moments.md")]
    mod moments {}
    #[doc = include_str!("../../../book/src/measures.md")]
    mod measures {}
    #[doc = include_str!("../../../book/src/degenerate.md")]
    mod degenerate {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
