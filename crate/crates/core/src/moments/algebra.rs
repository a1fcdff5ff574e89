//! Differential algebras closed under `d/du`.
//!
//! Each expression is a finite sum of monomials with exact integer
//! coefficients. Differentiation is exact; after every step the monomials
//! are rewritten to a canonical shape and like terms are merged, so the term
//! count grows only polynomially with the derivative order.

use std::collections::BTreeMap;
use std::fmt;

use rug::Integer;

use crate::arith::Real;
use crate::elliptic::EllipticContext;
use crate::error::{Error, Result};

/// An expression that can be differentiated exactly and evaluated.
pub trait Expression: Clone + PartialEq + fmt::Display {
    /// What evaluation needs besides the argument.
    type Env: ?Sized;

    fn differentiate(&self) -> Self;

    fn eval(&self, u: &Real, env: &Self::Env) -> Result<Real>;

    /// Number of monomials.
    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `self, self', …, self^{(n−1)}`.
    fn derivatives(&self, n: usize) -> Vec<Self> {
        let mut out = Vec::with_capacity(n);
        let mut cur = self.clone();
        for _ in 0..n {
            let next = cur.differentiate();
            out.push(cur);
            cur = next;
        }
        out
    }
}

fn checked(value: Real, what: &str) -> Result<Real> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Pole {
            location: what.to_string(),
            detail: "expression evaluated at a pole".into(),
        })
    }
}

fn add_to<K: Ord, C>(
    map: &mut BTreeMap<K, C>,
    key: K,
    coeff: C,
    add: impl Fn(&mut C, C),
    zero: impl Fn(&C) -> bool,
) {
    match map.entry(key) {
        std::collections::btree_map::Entry::Vacant(v) => {
            if !zero(&coeff) {
                v.insert(coeff);
            }
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            add(o.get_mut(), coeff);
            if zero(o.get()) {
                o.remove();
            }
        }
    }
}

fn superscript(p: i32) -> String {
    if p == 1 {
        String::new()
    } else {
        format!("^{p}")
    }
}

// ---------------------------------------------------------------------------
// Jacobi algebra

/// A polynomial in `k²` with integer coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct KPoly(pub Vec<Integer>);

impl KPoly {
    pub fn constant(c: i64) -> KPoly {
        KPoly(vec![Integer::from(c)]).trimmed()
    }

    fn trimmed(mut self) -> KPoly {
        while self.0.last().is_some_and(|c| *c == 0) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| *c == 0)
    }

    fn add_assign(&mut self, other: KPoly) {
        if self.0.len() < other.0.len() {
            self.0.resize(other.0.len(), Integer::new());
        }
        for (a, b) in self.0.iter_mut().zip(other.0) {
            *a += b;
        }
        let tmp = std::mem::take(self);
        *self = tmp.trimmed();
    }

    fn scaled(&self, c: i64) -> KPoly {
        KPoly(self.0.iter().map(|a| Integer::from(a * c)).collect()).trimmed()
    }

    /// Multiplies by `k²`.
    fn shifted(&self) -> KPoly {
        let mut v = vec![Integer::new()];
        v.extend(self.0.iter().cloned());
        KPoly(v).trimmed()
    }

    pub fn eval(&self, k2: &Real) -> Real {
        let bits = k2.prec();
        let mut acc = Real::zero(bits);
        for c in self.0.iter().rev() {
            acc = acc * k2 + Real::from_integer(c, bits);
        }
        acc
    }
}

impl fmt::Display for KPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 => format!("{c}k²"),
                _ => format!("{c}k^{}", 2 * i),
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + ").replace("+ -", "- "))
        }
    }
}

/// A sum of `p(k²)·sn^a·cn^b·dn^c`.
///
/// Canonical shape: `dn` appears to power 0 or 1 (`dn² = 1 − k²sn²`) and a
/// non-negative `sn` power is 0 or 1 (`sn² = 1 − cn²`). Negative powers of
/// `cn` and `sn` are allowed.
///
/// ```
/// use elliptic_toda::moments::{Expression, JacobiExpression};
///
/// // d(dn/cn) = k'²·sn/cn²
/// let e = JacobiExpression::monomial(0, -1, 1).differentiate();
/// assert_eq!(e.to_string(), "(1 - 1k²)·sn·cn^-2");
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct JacobiExpression {
    terms: BTreeMap<(i32, i32, i32), KPoly>,
}

impl JacobiExpression {
    /// `sn^a·cn^b·dn^c`.
    pub fn monomial(a: i32, b: i32, c: i32) -> JacobiExpression {
        let mut e = JacobiExpression::default();
        e.push((a, b, c), KPoly::constant(1));
        e
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i32, i32, i32), &KPoly)> {
        self.terms.iter()
    }

    fn push(&mut self, key: (i32, i32, i32), coeff: KPoly) {
        let (a, b, c) = key;
        if c >= 2 {
            // dn² = 1 − k²·sn²
            self.push((a, b, c - 2), coeff.clone());
            self.push((a + 2, b, c - 2), coeff.shifted().scaled(-1));
        } else if a >= 2 {
            // sn² = 1 − cn²
            self.push((a - 2, b, c), coeff.clone());
            self.push((a - 2, b + 2, c), coeff.scaled(-1));
        } else {
            add_to(
                &mut self.terms,
                key,
                coeff,
                |x, y| x.add_assign(y),
                KPoly::is_zero,
            );
        }
    }

    /// Evaluates at `u` with the modulus of `ctx`.
    pub fn eval_with(&self, u: &Real, ctx: &EllipticContext) -> Result<Real> {
        let j = ctx.sncndn(u);
        let mut acc = Real::zero(ctx.bits());
        for (&(a, b, c), coeff) in &self.terms {
            let term = coeff.eval(&ctx.k2) * j.sn.powi(a) * j.cn.powi(b) * j.dn.powi(c);
            acc += &term;
        }
        checked(acc, "Jacobi expression")
    }
}

impl Expression for JacobiExpression {
    type Env = EllipticContext;

    fn differentiate(&self) -> JacobiExpression {
        let mut out = JacobiExpression::default();
        for (&(a, b, c), p) in &self.terms {
            // d sn = cn·dn, d cn = −sn·dn, d dn = −k²·sn·cn
            if a != 0 {
                out.push((a - 1, b + 1, c + 1), p.scaled(i64::from(a)));
            }
            if b != 0 {
                out.push((a + 1, b - 1, c + 1), p.scaled(-i64::from(b)));
            }
            if c != 0 {
                out.push((a + 1, b + 1, c - 1), p.shifted().scaled(-i64::from(c)));
            }
        }
        out
    }

    fn eval(&self, u: &Real, env: &EllipticContext) -> Result<Real> {
        self.eval_with(u, env)
    }

    fn len(&self) -> usize {
        self.terms.len()
    }
}

impl fmt::Display for JacobiExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&(a, b, c), p)| {
                let mut factors = vec![format!("({p})")];
                for (name, pw) in [("sn", a), ("cn", b), ("dn", c)] {
                    if pw != 0 {
                        factors.push(format!("{name}{}", superscript(pw)));
                    }
                }
                factors.join("·")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

// ---------------------------------------------------------------------------
// Circular and hyperbolic algebras

/// Which pair of functions a [`CircularExpression`] uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CircularKind {
    /// `sin`, `cos`.
    Trig,
    /// `sinh`, `cosh`.
    Hyperbolic,
}

/// A sum of `n·s^a·c^b` with `(s, c) = (sin, cos)` or `(sinh, cosh)`.
/// A non-negative `s` power is kept at 0 or 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircularExpression {
    kind: CircularKind,
    terms: BTreeMap<(i32, i32), Integer>,
}

impl CircularExpression {
    pub fn monomial(kind: CircularKind, a: i32, b: i32) -> CircularExpression {
        let mut e = CircularExpression {
            kind,
            terms: BTreeMap::new(),
        };
        e.push((a, b), Integer::from(1));
        e
    }

    /// `+1` when `dc = s` (hyperbolic), `−1` when `dc = −s` (trigonometric).
    fn eps(&self) -> i64 {
        match self.kind {
            CircularKind::Trig => -1,
            CircularKind::Hyperbolic => 1,
        }
    }

    fn push(&mut self, key: (i32, i32), coeff: Integer) {
        let (a, b) = key;
        if a >= 2 {
            // s² = −ε(1 − c²)
            let e = self.eps();
            self.push((a - 2, b), Integer::from(&coeff * -e));
            self.push((a - 2, b + 2), coeff * e);
        } else {
            add_to(&mut self.terms, key, coeff, |x, y| *x += y, |x| *x == 0);
        }
    }
}

impl Expression for CircularExpression {
    type Env = ();

    fn differentiate(&self) -> CircularExpression {
        let mut out = CircularExpression {
            kind: self.kind,
            terms: BTreeMap::new(),
        };
        let e = self.eps();
        for (&(a, b), n) in &self.terms {
            if a != 0 {
                out.push((a - 1, b + 1), Integer::from(n * a));
            }
            if b != 0 {
                out.push((a + 1, b - 1), Integer::from(n * (i64::from(b) * e)));
            }
        }
        out
    }

    fn eval(&self, u: &Real, _: &()) -> Result<Real> {
        let (s, c) = match self.kind {
            CircularKind::Trig => u.sin_cos(),
            CircularKind::Hyperbolic => (u.sinh(), u.cosh()),
        };
        let bits = u.prec();
        let mut acc = Real::zero(bits);
        for (&(a, b), n) in &self.terms {
            acc += &(Real::from_integer(n, bits) * s.powi(a) * c.powi(b));
        }
        checked(acc, "circular expression")
    }

    fn len(&self) -> usize {
        self.terms.len()
    }
}

impl fmt::Display for CircularExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (sn, cn) = match self.kind {
            CircularKind::Trig => ("sin", "cos"),
            CircularKind::Hyperbolic => ("sinh", "cosh"),
        };
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&(a, b), n)| {
                let mut s = n.to_string();
                if a != 0 {
                    s += &format!("·{sn}{}", superscript(a));
                }
                if b != 0 {
                    s += &format!("·{cn}{}", superscript(b));
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

// ---------------------------------------------------------------------------
// Rational algebra

/// A Laurent polynomial `Σ n_a·u^a`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RationalExpression {
    terms: BTreeMap<i32, Integer>,
}

impl RationalExpression {
    pub fn monomial(a: i32) -> RationalExpression {
        let mut e = RationalExpression::default();
        e.terms.insert(a, Integer::from(1));
        e
    }
}

impl Expression for RationalExpression {
    type Env = ();

    fn differentiate(&self) -> RationalExpression {
        let mut out = RationalExpression::default();
        for (&a, n) in &self.terms {
            if a != 0 {
                add_to(
                    &mut out.terms,
                    a - 1,
                    Integer::from(n * a),
                    |x, y| *x += y,
                    |x| *x == 0,
                );
            }
        }
        out
    }

    fn eval(&self, u: &Real, _: &()) -> Result<Real> {
        let bits = u.prec();
        let mut acc = Real::zero(bits);
        for (&a, n) in &self.terms {
            acc += &(Real::from_integer(n, bits) * u.powi(a));
        }
        checked(acc, "rational expression")
    }

    fn len(&self) -> usize {
        self.terms.len()
    }
}

impl fmt::Display for RationalExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(a, n)| format!("{n}·u^{a}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `c_n(t) = factor·λⁿ·E^{(n)}(λt) (+ constant when n = 0)` for `n < count`.
pub fn scaled_derivatives<E: Expression>(
    expr: &E,
    env: &E::Env,
    t: &Real,
    lambda: &Real,
    factor: &Real,
    constant: Option<&Real>,
    count: usize,
) -> Result<Vec<Real>> {
    let u = lambda * t;
    let mut scale = factor.clone();
    let mut out = Vec::with_capacity(count);
    for (n, d) in expr.derivatives(count).iter().enumerate() {
        let mut v = d.eval(&u, env)? * &scale;
        if n == 0 {
            if let Some(c) = constant {
                v += c;
            }
        }
        out.push(v);
        scale *= lambda;
    }
    Ok(out)
}
