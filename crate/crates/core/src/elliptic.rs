//! Theta functions and elliptic shifted factorials.
//!
//! Everything is built on the normalised theta function
//! `θ(z) = (z;p)_∞ (p/z;p)_∞` with real nome `0 < p < 1`. Arguments are first
//! reduced into the annulus `√p ≤ |z| < 1/√p` using `θ(pz) = -θ(z)/z`, so the
//! truncated products only ever see factors of moderate size.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Upper bound on the number of product factors, whatever the nome.
pub const MAX_TRUNCATION: usize = 2000;

/// The nomes `p` (theta) and `q` (deformation), together with the
/// truncation length used for `(a;p)_∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModulusParams {
    p: f64,
    q: f64,
    trunc: usize,
    sqrt_p: f64,
    ln_q: f64,
}

impl ModulusParams {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        let open_unit = |x: f64| x > 0.0 && x < 1.0;
        if !(open_unit(p) && open_unit(q)) {
            return Err(Error::InvalidModulus { p, q });
        }
        // p^L < 1e-17 puts the truncation error below double rounding.
        let trunc = ((17.0 / -p.log10()).ceil() as usize).clamp(1, MAX_TRUNCATION);
        Ok(Self {
            p,
            q,
            trunc,
            sqrt_p: p.sqrt(),
            ln_q: q.ln(),
        })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    /// Number of factors kept in `(a;p)_∞`.
    pub fn truncation(&self) -> usize {
        self.trunc
    }

    /// `q^{2n}` by repeated multiplication, so that `q2i(n) * q2i(-n)` stays
    /// as close to 1 as the arithmetic allows and `q2i(0)` is exactly 1.
    pub fn q2i(&self, n: i32) -> f64 {
        (self.q * self.q).powi(n)
    }

    /// `q^{2e}` for a complex exponent.
    pub fn q2(&self, e: C64) -> C64 {
        (e * (2.0 * self.ln_q)).exp()
    }

    /// `(a;p)_∞`, truncated after `truncation()` factors.
    pub fn qpoch_inf(&self, a: C64) -> C64 {
        let mut prod = C64::new(1.0, 0.0);
        let mut pk = 1.0;
        for _ in 0..=self.trunc {
            prod *= C64::new(1.0, 0.0) - a * pk;
            pk *= self.p;
        }
        prod
    }

    /// `θ(z)`; fails only at the essential singularity `z = 0`.
    pub fn theta(&self, z: C64) -> Result<C64> {
        if z == C64::new(0.0, 0.0) || !z.is_finite() {
            return Err(Error::ZeroArgument);
        }
        Ok(self.th(z))
    }

    /// Infallible variant used on hot paths whose arguments are products of
    /// nonzero powers; a zero argument yields NaN.
    pub(crate) fn th(&self, z: C64) -> C64 {
        if z == C64::new(0.0, 0.0) {
            return C64::new(f64::NAN, f64::NAN);
        }
        let mut z = z;
        let mut pre = C64::new(1.0, 0.0);
        let upper = 1.0 / self.sqrt_p;
        while z.norm() >= upper {
            pre *= -z;
            z *= self.p;
        }
        while z.norm() < self.sqrt_p {
            pre *= -self.p / z;
            z /= self.p;
        }
        let one = C64::new(1.0, 0.0);
        let mut prod = one;
        let mut pk = 1.0;
        let pz = self.p / z;
        for _ in 0..=self.trunc {
            prod *= (one - z * pk) * (one - pz * pk);
            pk *= self.p;
        }
        pre * prod
    }

    /// `θ(z_1, …, z_r) = Π θ(z_i)`.
    pub fn theta_multi(&self, zs: &[C64]) -> Result<C64> {
        zs.iter()
            .try_fold(C64::new(1.0, 0.0), |acc, &z| Ok(acc * self.theta(z)?))
    }

    /// Elliptic shifted factorial `(a)_n = Π_{i=0}^{n-1} θ(a q^{2i})`.
    ///
    /// Negative `n` follows the usual extension
    /// `(a)_{-m} = 1 / Π_{i=1}^{m} θ(a q^{-2i})`, so that
    /// `(a)_{n+m} = (a)_n (a q^{2n})_m` holds for all integers.
    pub fn ell_shifted_factorial(&self, a: C64, n: i32) -> C64 {
        let mut prod = C64::new(1.0, 0.0);
        if n >= 0 {
            for i in 0..n {
                prod *= self.th(a * self.q2i(i));
            }
        } else {
            for i in 1..=-n {
                prod /= self.th(a * self.q2i(-i));
            }
        }
        prod
    }

    /// `(q^{2e})_n` with every factor formed as an exact power `q^{2(e+i)}`,
    /// so that a factor `θ(q⁰) = θ(1)` vanishes exactly.
    pub fn qpow_shifted_factorial(&self, e: i32, n: i32) -> C64 {
        let mut prod = C64::new(1.0, 0.0);
        if n >= 0 {
            for i in 0..n {
                prod *= self.th(C64::from(self.q2i(e + i)));
            }
        } else {
            for i in 1..=-n {
                prod /= self.th(C64::from(self.q2i(e - i)));
            }
        }
        prod
    }

    /// `(a_1, …, a_k)_n`.
    pub fn ell_shifted_factorial_multi(&self, a: &[C64], n: i32) -> C64 {
        a.iter().fold(C64::new(1.0, 0.0), |acc, &x| {
            acc * self.ell_shifted_factorial(x, n)
        })
    }

    /// Elliptic binomial `[k, l] = Π_{i=1}^{l} θ(q^{2(k-l+i)}) / θ(q^{2i})`,
    /// zero outside `0 ≤ l ≤ k`.
    pub fn ell_binomial(&self, k: i32, l: i32) -> C64 {
        if l < 0 || l > k {
            return C64::new(0.0, 0.0);
        }
        let mut prod = C64::new(1.0, 0.0);
        for i in 1..=l {
            prod *= cdiv(self.th(C64::from(self.q2i(k - l + i))), self.th(C64::from(self.q2i(i))));
        }
        prod
    }

    /// Distance of `x` from the zero set `p^ℤ` of `θ`, measured as
    /// `|x p^{-k} - 1|` for the nearest `k`.
    pub fn zero_distance(&self, x: C64) -> f64 {
        if x == C64::new(0.0, 0.0) {
            return 0.0;
        }
        let k = (x.norm().ln() / self.p.ln()).round() as i32;
        (x * self.p.powi(-k) - 1.0).norm()
    }
}

/// `a / b` without squaring `|b|`, which overflows once theta values of
/// tiny arguments pass 1e154 (Smith's algorithm).
pub fn cdiv(a: C64, b: C64) -> C64 {
    if b.re.abs() >= b.im.abs() {
        let r = b.im / b.re;
        let d = b.re + b.im * r;
        C64::new((a.re + a.im * r) / d, (a.im - a.re * r) / d)
    } else {
        let r = b.re / b.im;
        let d = b.re * r + b.im;
        C64::new((a.re * r + a.im) / d, (a.im * r - a.re) / d)
    }
}

impl Default for ModulusParams {
    fn default() -> Self {
        Self::new(0.2, 0.5).expect("default nomes are valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn cdiv_survives_huge_operands() {
        let a = c(3e200, -1e200);
        assert!((cdiv(a, a) - 1.0).norm() < 1e-15);
        assert!((cdiv(c(1.0, 2.0), c(3.0, -4.0)) - c(1.0, 2.0) / c(3.0, -4.0)).norm() < 1e-16);
        assert!((cdiv(c(1.0, 2.0), c(0.5, 7.0)) - c(1.0, 2.0) / c(0.5, 7.0)).norm() < 1e-16);
    }

    fn brute_theta(p: f64, z: C64, terms: usize) -> C64 {
        let one = c(1.0, 0.0);
        let mut prod = one;
        let mut pk = 1.0;
        for _ in 0..terms {
            prod *= (one - z * pk) * (one - p / z * pk);
            pk *= p;
        }
        prod
    }

    #[test]
    fn rejects_bad_nomes() {
        assert!(ModulusParams::new(0.0, 0.5).is_err());
        assert!(ModulusParams::new(0.5, 1.0).is_err());
        assert!(ModulusParams::new(-0.1, 0.5).is_err());
        assert!(ModulusParams::new(0.3, 0.4).is_ok());
    }

    #[test]
    fn truncation_is_below_rounding() {
        for p in [0.01, 0.1, 0.25, 0.5, 0.9, 0.999] {
            let m = ModulusParams::new(p, 0.5).unwrap();
            let l = m.truncation();
            assert!(l == MAX_TRUNCATION || p.powi(l as i32) <= 1.0000001e-17, "p = {p}");
        }
        let tiny = ModulusParams::new(1e-18, 0.5).unwrap();
        assert_eq!(tiny.truncation(), 1);
    }

    #[test]
    fn qpoch_inf_examples() {
        let m = ModulusParams::new(0.3, 0.5).unwrap();
        assert_eq!(m.qpoch_inf(c(0.0, 0.0)), c(1.0, 0.0));
        assert_eq!(m.qpoch_inf(c(1.0, 0.0)), c(0.0, 0.0));

        let m = ModulusParams::new(0.25, 0.5).unwrap();
        let mut direct = c(1.0, 0.0);
        for i in 0..200 {
            direct *= c(1.0, 0.0) - 0.5 * 0.25f64.powi(i);
        }
        assert!((m.qpoch_inf(c(0.5, 0.0)) - direct).norm() < 1e-14);
    }

    #[test]
    fn theta_examples() {
        let m = ModulusParams::new(0.25, 0.5).unwrap();
        assert_eq!(m.theta(c(1.0, 0.0)).unwrap(), c(0.0, 0.0));
        assert_eq!(m.theta(c(0.0, 0.0)), Err(Error::ZeroArgument));

        let z = c(0.3, 0.4);
        let reference = brute_theta(0.25, z, 500);
        assert!((m.theta(z).unwrap() - reference).norm() < 1e-14);

        let tiny = ModulusParams::new(1e-18, 0.5).unwrap();
        assert!((tiny.theta(c(-1.0, 0.0)).unwrap() - 2.0).norm() < 1e-15);
    }

    #[test]
    fn reduction_matches_unreduced_product() {
        let m = ModulusParams::new(0.2, 0.5).unwrap();
        for z in [c(3.0, 1.0), c(0.05, -0.02), c(-7.5, 0.3), c(0.3, 0.0)] {
            let reduced = m.theta(z).unwrap();
            let reference = brute_theta(0.2, z, 400);
            assert!((reduced - reference).norm() <= 1e-12 * reference.norm().max(1.0));
        }
    }

    #[test]
    fn theta_multi_examples() {
        let m = ModulusParams::new(0.2, 0.5).unwrap();
        let z = c(0.7, 0.2);
        assert_eq!(m.theta_multi(&[z]).unwrap(), m.theta(z).unwrap());
        assert_eq!(m.theta_multi(&[c(1.0, 0.0), z]).unwrap(), c(0.0, 0.0));
        let two = m.theta_multi(&[c(0.5, 0.0), c(2.0, 0.0)]).unwrap();
        let direct = m.theta(c(0.5, 0.0)).unwrap() * m.theta(c(2.0, 0.0)).unwrap();
        assert!((two - direct).norm() < 1e-15);
        assert!(m.theta_multi(&[z, c(0.0, 0.0)]).is_err());
    }

    #[test]
    fn shifted_factorial_examples() {
        let m = ModulusParams::new(0.2, 0.5).unwrap();
        let a = c(0.3, 0.1);
        assert_eq!(m.ell_shifted_factorial(a, 0), c(1.0, 0.0));
        assert_eq!(m.ell_shifted_factorial(a, 1), m.th(a));
        for r in 0..5 {
            let v = m.ell_shifted_factorial(C64::from(m.q2i(-r)), r + 1);
            assert_eq!(v, c(0.0, 0.0));
        }
        // (a)_{n+m} = (a)_n (a q^{2n})_m across the sign change
        for (n, k) in [(3, -2), (-2, 5), (-1, -3), (4, 1)] {
            let lhs = m.ell_shifted_factorial(a, n + k);
            let rhs = m.ell_shifted_factorial(a, n) * m.ell_shifted_factorial(a * m.q2i(n), k);
            assert!((lhs - rhs).norm() < 1e-12 * lhs.norm());
        }
    }

    #[test]
    fn binomial_examples() {
        let m = ModulusParams::new(0.2, 0.5).unwrap();
        assert_eq!(m.ell_binomial(5, 0), c(1.0, 0.0));
        assert_eq!(m.ell_binomial(3, -1), c(0.0, 0.0));
        assert_eq!(m.ell_binomial(3, 4), c(0.0, 0.0));
        let q = 0.5f64;
        let expect = m.th(C64::from(q.powi(6))) / m.th(C64::from(q.powi(2)));
        assert!((m.ell_binomial(3, 1) - expect).norm() < 1e-15);
        let direct = m.th(C64::from(q.powi(6))) * m.th(C64::from(q.powi(8)))
            / (m.th(C64::from(q.powi(2))) * m.th(C64::from(q.powi(4))));
        assert!((m.ell_binomial(4, 2) - direct).norm() < 1e-14 * direct.norm());
        for k in 0..8 {
            for l in 0..=k {
                let a = m.ell_binomial(k, l);
                let b = m.ell_binomial(k, k - l);
                assert!((a - b).norm() < 1e-12 * a.norm());
            }
        }
    }

    #[test]
    fn zero_distance_detects_lattice() {
        let m = ModulusParams::new(0.2, 0.5).unwrap();
        assert!(m.zero_distance(c(1.0, 0.0)) < 1e-15);
        assert!(m.zero_distance(c(0.04, 0.0)) < 1e-12);
        assert!(m.zero_distance(c(25.0, 0.0)) < 1e-12);
        assert!(m.zero_distance(c(0.5, 0.5)) > 0.1);
    }
}
