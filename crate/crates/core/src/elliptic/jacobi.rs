//! Jacobi elliptic functions, the Jacobi Zeta function and complete
//! elliptic integrals for a real modulus `0 < k < 1`.
//!
//! Everything is driven by one arithmetic-geometric-mean table
//! `a_n, b_n, c_n` started from `(1, k', k)`. The complete integrals come
//! straight from the table; `sn, cn, dn` and `Z` use the descending Landen
//! recursion on the amplitude.

use crate::arith::Real;
use crate::error::{domain, Result};

/// Values `(sn, cn, dn)` at one argument.
#[derive(Debug, Clone)]
pub struct SnCnDn {
    pub sn: Real,
    pub cn: Real,
    pub dn: Real,
}

/// Precomputed AGM data for one modulus.
#[derive(Debug, Clone)]
pub struct Jacobi {
    k: Real,
    k2: Real,
    kprime: Real,
    big_k: Real,
    big_e: Real,
    a: Vec<Real>,
    c: Vec<Real>,
}

impl Jacobi {
    /// Builds the AGM table for modulus `k` at the precision of `k`.
    pub fn new(k: &Real) -> Result<Jacobi> {
        if !(*k > 0.0 && *k < 1.0) {
            return Err(domain(format!(
                "modulus k = {} must lie in (0, 1)",
                k.to_decimal(12)
            )));
        }
        let k2 = k.square();
        let kprime = (1 - &k2).sqrt();
        Ok(Jacobi::from_parts(k.clone(), k2, kprime))
    }

    /// Builds the table from `k²`, avoiding the rounding of `k` when
    /// `k' = sqrt(1 − k²)` is tiny or `k²` is the exact input.
    pub fn from_k2(k2: &Real) -> Result<Jacobi> {
        if !(*k2 > 0.0 && *k2 < 1.0) {
            return Err(domain(format!(
                "k² = {} must lie in (0, 1)",
                k2.to_decimal(12)
            )));
        }
        Ok(Jacobi::from_parts(k2.sqrt(), k2.clone(), (1 - k2).sqrt()))
    }

    fn from_parts(k: Real, k2: Real, kprime: Real) -> Jacobi {
        let bits = k.prec();
        let eps = Real::epsilon(bits);
        let mut a = vec![Real::one(bits)];
        let mut b = kprime.clone();
        let mut c = vec![k.clone()];
        while c.last().expect("non-empty").abs() > eps && a.len() < 64 {
            let an = a.last().expect("non-empty").clone();
            let next_a = (&an + &b) / 2;
            let next_c = (&an - &b) / 2;
            b = (an * &b).sqrt();
            a.push(next_a);
            c.push(next_c);
        }
        let a_last = a.last().expect("non-empty");
        let big_k = Real::pi(bits) / (a_last * 2);
        // E = K (1 − Σ 2^{n−1} c_n²)
        let mut s = Real::zero(bits);
        let mut pow = Real::from_f64(0.5, bits);
        for cn in &c {
            s += &pow * cn.square();
            pow *= 2;
        }
        let big_e = &big_k * (1 - s);
        Jacobi {
            k,
            k2,
            kprime,
            big_k,
            big_e,
            a,
            c,
        }
    }

    pub fn k(&self) -> &Real {
        &self.k
    }

    pub fn k2(&self) -> &Real {
        &self.k2
    }

    pub fn kprime(&self) -> &Real {
        &self.kprime
    }

    /// Complete integral of the first kind `K(k)`.
    pub fn big_k(&self) -> &Real {
        &self.big_k
    }

    /// Complete integral of the second kind `E(k)`.
    pub fn big_e(&self) -> &Real {
        &self.big_e
    }

    /// Reduces `u` into `[−2K, 2K)`.
    fn reduce(&self, u: &Real) -> Real {
        let period = &self.big_k * 4;
        let j = (u / &period).round();
        u - j * period
    }

    /// Amplitudes `φ_0..φ_N` of the descending Landen recursion.
    fn amplitudes(&self, u: &Real) -> Vec<Real> {
        let u = self.reduce(u);
        let n = self.a.len() - 1;
        let mut phi = vec![Real::zero(u.prec()); n + 1];
        let scale = Real::from_int(1i64 << n, u.prec());
        phi[n] = scale * &self.a[n] * &u;
        for j in (1..=n).rev() {
            let ratio = &self.c[j] * phi[j].sin() / &self.a[j];
            phi[j - 1] = (&phi[j] + ratio.asin()) / 2;
        }
        phi
    }

    pub fn sncndn(&self, u: &Real) -> SnCnDn {
        let phi = self.amplitudes(u);
        let (sn, cn) = phi[0].sin_cos();
        let dn = (1 - &self.k2 * sn.square()).sqrt();
        SnCnDn { sn, cn, dn }
    }

    /// Jacobi Zeta function `Z(u) = E(am u) − u·E/K`.
    pub fn zeta(&self, u: &Real) -> Real {
        let phi = self.amplitudes(u);
        let mut z = Real::zero(u.prec());
        for j in 1..phi.len() {
            z += &self.c[j] * phi[j].sin();
        }
        z
    }

    /// Jacobi amplitude `am(u)` as a continuous function of real `u`.
    pub fn amplitude(&self, u: &Real) -> Real {
        let period = &self.big_k * 4;
        let j = (u / &period).round();
        let base = self.amplitudes(u).swap_remove(0);
        base + j * Real::pi(u.prec()) * 2
    }
}

/// `K(k)` by the arithmetic-geometric mean.
#[allow(non_snake_case)]
pub fn complete_K(k: &Real) -> Result<Real> {
    Ok(Jacobi::new(k)?.big_k)
}

/// `E(k)` from the same AGM table.
#[allow(non_snake_case)]
pub fn complete_E(k: &Real) -> Result<Real> {
    Ok(Jacobi::new(k)?.big_e)
}

/// `(sn, cn, dn)(u, k)` for any real `u`.
pub fn jacobi_sncndn(u: &Real, k: &Real) -> Result<SnCnDn> {
    Ok(Jacobi::new(k)?.sncndn(u))
}

/// `Z(u, k)` for any real `u`.
pub fn jacobi_zeta(u: &Real, k: &Real) -> Result<Real> {
    Ok(Jacobi::new(k)?.zeta(u))
}
