//! Dynamical R-matrices on `V ⊗ V`, `V = span{e₁, e₋₁}`, and the quantum
//! dynamical Yang–Baxter residual on `V ⊗ V ⊗ V`.
//!
//! Basis order is `(e₁⊗e₁, e₁⊗e₋₁, e₋₁⊗e₁, e₋₁⊗e₋₁)`. The entry
//! `R^{ab}_{xy}`, the coefficient of `e_x ⊗ e_y` in `R(e_a ⊗ e_b)`, sits at
//! row `(x, y)` and column `(a, b)`.

use num_complex::Complex64 as C64;

use crate::elliptic::ModulusParams;
use crate::error::{Error, Result};

/// Pole guard for the theta factors in denominators.
pub const POLE_TOL: f64 = 1e-8;

/// Weight `ω(±1) = ±1` of a basis index.
pub type Weight = i32;

/// Position of the basis vector `e_w` in `V`: `e₁ ↦ 0`, `e₋₁ ↦ 1`.
pub fn basis_index(w: Weight) -> usize {
    match w {
        1 => 0,
        -1 => 1,
        _ => panic!("basis weights are ±1, got {w}"),
    }
}

const WEIGHTS: [Weight; 2] = [1, -1];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RMatrix {
    pub m: [[C64; 4]; 4],
}

impl RMatrix {
    pub fn identity() -> Self {
        let mut m = [[C64::new(0.0, 0.0); 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = C64::new(1.0, 0.0);
        }
        Self { m }
    }

    /// `R^{ab}_{xy}` for weights `a, b, x, y ∈ {±1}`.
    pub fn entry(&self, a: Weight, b: Weight, x: Weight, y: Weight) -> C64 {
        let row = 2 * basis_index(x) + basis_index(y);
        let col = 2 * basis_index(a) + basis_index(b);
        self.m[row][col]
    }

    /// Largest entry that violates weight conservation `a + b = x + y`.
    pub fn h_invariance_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for a in WEIGHTS {
            for b in WEIGHTS {
                for x in WEIGHTS {
                    for y in WEIGHTS {
                        if a + b != x + y {
                            worst = worst.max(self.entry(a, b, x, y).norm());
                        }
                    }
                }
            }
        }
        worst
    }
}

fn guard(params: &ModulusParams, x: C64, what: &str) -> Result<()> {
    let distance = params.zero_distance(x);
    if distance < POLE_TOL {
        return Err(Error::PoleProximity {
            factor: format!("θ({what})"),
            distance,
        });
    }
    Ok(())
}

/// The four nontrivial entries of the elliptic R-matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Abcd {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub d: C64,
}

/// `a(λ,z) = θ(z, q^{2(λ+2)}) / θ(q²z, q^{2(λ+1)})`.
pub fn weight_a(m: &ModulusParams, lambda: C64, z: C64) -> C64 {
    m.th(z) * m.th(m.q2(lambda + 2.0)) / (m.th(z * m.q2i(1)) * m.th(m.q2(lambda + 1.0)))
}

/// `b(λ,z) = θ(q², q^{-2(λ+1)} z) / θ(q²z, q^{-2(λ+1)})`.
pub fn weight_b(m: &ModulusParams, lambda: C64, z: C64) -> C64 {
    let x = m.q2(-(lambda + 1.0));
    m.th(C64::from(m.q2i(1))) * m.th(x * z) / (m.th(z * m.q2i(1)) * m.th(x))
}

/// `c(λ,z) = θ(q², q^{2(λ+1)} z) / θ(q²z, q^{2(λ+1)})`.
pub fn weight_c(m: &ModulusParams, lambda: C64, z: C64) -> C64 {
    let x = m.q2(lambda + 1.0);
    m.th(C64::from(m.q2i(1))) * m.th(x * z) / (m.th(z * m.q2i(1)) * m.th(x))
}

/// `d(λ,z) = θ(z, q^{-2λ}) / θ(q²z, q^{-2(λ+1)})`.
pub fn weight_d(m: &ModulusParams, lambda: C64, z: C64) -> C64 {
    m.th(z) * m.th(m.q2(-lambda)) / (m.th(z * m.q2i(1)) * m.th(m.q2(-(lambda + 1.0))))
}

pub fn abcd(m: &ModulusParams, lambda: C64, z: C64) -> Abcd {
    Abcd {
        a: weight_a(m, lambda, z),
        b: weight_b(m, lambda, z),
        c: weight_c(m, lambda, z),
        d: weight_d(m, lambda, z),
    }
}

/// The elliptic dynamical R-matrix: corners 1, middle block
/// `[[a, b], [c, d]]`.
pub fn elliptic_r(params: &ModulusParams, lambda: C64, z: C64) -> Result<RMatrix> {
    guard(params, z * params.q2i(1), "q²z")?;
    guard(params, params.q2(lambda + 1.0), "q^{2(λ+1)}")?;
    guard(params, params.q2(-(lambda + 1.0)), "q^{-2(λ+1)}")?;
    Ok(elliptic_r_unchecked(params, lambda, z))
}

pub(crate) fn elliptic_r_unchecked(params: &ModulusParams, lambda: C64, z: C64) -> RMatrix {
    let w = abcd(params, lambda, z);
    let mut r = RMatrix::identity();
    r.m[1][1] = w.a;
    r.m[1][2] = w.b;
    r.m[2][1] = w.c;
    r.m[2][2] = w.d;
    r
}

fn rational_with_corner(lambda: C64, q: f64, corner: f64) -> Result<RMatrix> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::InvalidModulus { p: f64::NAN, q });
    }
    let x = (2.0 * (lambda + 1.0) * q.ln()).exp();
    let distance = (x - 1.0).norm();
    if distance < POLE_TOL {
        return Err(Error::PoleProximity {
            factor: "q^{2(λ+1)} - 1".into(),
            distance,
        });
    }
    let qi = 1.0 / q;
    let mut r = RMatrix::identity();
    r.m[0][0] = C64::from(q);
    r.m[1][1] = C64::from(1.0);
    r.m[1][2] = (qi - q) / (x - 1.0);
    r.m[2][1] = (qi - q) / (x.inv() - 1.0);
    r.m[2][2] = (x - q * q) * (x - qi * qi) / ((x - 1.0) * (x - 1.0));
    r.m[3][3] = C64::from(corner);
    Ok(r)
}

/// The rational dynamical R-matrix (no spectral parameter).
///
/// Both corner entries equal `q`. With the lower corner equal to 1 the
/// matrix does not satisfy the dynamical Yang–Baxter equation (see
/// [`rational_r_unit_corner`]); with `q` it does, to rounding.
pub fn rational_r(lambda: C64, q: f64) -> Result<RMatrix> {
    rational_with_corner(lambda, q, q)
}

/// Variant of [`rational_r`] with the lower corner entry set to 1. Kept for
/// comparison only; its Yang–Baxter residual is of order one.
pub fn rational_r_unit_corner(lambda: C64, q: f64) -> Result<RMatrix> {
    rational_with_corner(lambda, q, 1.0)
}

/// The multiplicative 2-form relating the elliptic R-matrix to its gauge
/// equivalent form:
/// `φ₁₂(λ) = q⁻¹ (p q^{2λ}, q^{-2(λ+1)}; p)_∞ / (q^{-2(λ+2)}, p q^{2(λ+1)}; p)_∞`.
pub fn gauge_phi12(m: &ModulusParams, lambda: C64) -> C64 {
    let p = m.p();
    let num = m.qpoch_inf(m.q2(lambda) * p) * m.qpoch_inf(m.q2(-(lambda + 1.0)));
    let den = m.qpoch_inf(m.q2(-(lambda + 2.0))) * m.qpoch_inf(m.q2(lambda + 1.0) * p);
    num / (den * m.q())
}

/// `f₂(λ) = q^{-λ} / (q^{-2(λ+2)}, p q^{2(λ+1)}; p)_∞`, so that
/// `φ₁₂(λ) = f₂(λ) / f₂(λ-1)`.
pub fn gauge_f2(m: &ModulusParams, lambda: C64) -> C64 {
    let p = m.p();
    let qpow = (-lambda * m.q().ln()).exp();
    qpow / (m.qpoch_inf(m.q2(-(lambda + 2.0))) * m.qpoch_inf(m.q2(lambda + 1.0) * p))
}

type M8 = [[C64; 8]; 8];

fn zero8() -> M8 {
    [[C64::new(0.0, 0.0); 8]; 8]
}

fn matmul8(a: &M8, b: &M8) -> M8 {
    let mut c = zero8();
    for i in 0..8 {
        for k in 0..8 {
            if a[i][k] == C64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..8 {
                c[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    c
}

fn idx3(a: usize, b: usize, c: usize) -> usize {
    4 * a + 2 * b + c
}

/// Legs on which a two-leg operator acts inside `V⊗V⊗V`.
#[derive(Clone, Copy)]
enum Legs {
    L12,
    L13,
    L23,
}

/// Embeds `R(λ - ω(spectator), z)` (or `R(λ, z)` when `shifted` is false)
/// into `End(V⊗V⊗V)`.
fn embed<F>(rfun: &F, lambda: C64, z: C64, legs: Legs, shifted: bool) -> Result<M8>
where
    F: Fn(C64, C64) -> Result<RMatrix>,
{
    let mut out = zero8();
    let mut cache: [Option<RMatrix>; 2] = [None, None];
    for s in 0..2 {
        let shift = if shifted { WEIGHTS[s] as f64 } else { 0.0 };
        cache[s] = Some(rfun(lambda - shift, z)?);
    }
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                let col = idx3(i, j, k);
                // (u, v) are the legs R acts on, s the spectator index
                let (u, v, s) = match legs {
                    Legs::L12 => (i, j, k),
                    Legs::L13 => (i, k, j),
                    Legs::L23 => (j, k, i),
                };
                let r = cache[s].as_ref().expect("filled above");
                for x in 0..2 {
                    for y in 0..2 {
                        let val = r.m[2 * x + y][2 * u + v];
                        if val == C64::new(0.0, 0.0) {
                            continue;
                        }
                        let row = match legs {
                            Legs::L12 => idx3(x, y, s),
                            Legs::L13 => idx3(x, s, y),
                            Legs::L23 => idx3(s, x, y),
                        };
                        out[row][col] += val;
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Relative residual `max|LHS − RHS| / max|LHS|` of
/// `R¹²(λ−h⁽³⁾, z₁/z₂) R¹³(λ, z₁/z₃) R²³(λ−h⁽¹⁾, z₂/z₃)
///  = R²³(λ, z₂/z₃) R¹³(λ−h⁽²⁾, z₁/z₃) R¹²(λ, z₁/z₂)`,
/// where `λ − h⁽ᵏ⁾` subtracts the weight of the basis vector in leg `k`.
pub fn qdybe_residual<F>(rfun: F, lambda: C64, z1: C64, z2: C64, z3: C64) -> Result<f64>
where
    F: Fn(C64, C64) -> Result<RMatrix>,
{
    let (z12, z13, z23) = (z1 / z2, z1 / z3, z2 / z3);
    let lhs = matmul8(
        &matmul8(
            &embed(&rfun, lambda, z12, Legs::L12, true)?,
            &embed(&rfun, lambda, z13, Legs::L13, false)?,
        ),
        &embed(&rfun, lambda, z23, Legs::L23, true)?,
    );
    let rhs = matmul8(
        &matmul8(
            &embed(&rfun, lambda, z23, Legs::L23, false)?,
            &embed(&rfun, lambda, z13, Legs::L13, true)?,
        ),
        &embed(&rfun, lambda, z12, Legs::L12, false)?,
    );
    let mut diff: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for i in 0..8 {
        for j in 0..8 {
            diff = diff.max((lhs[i][j] - rhs[i][j]).norm());
            scale = scale.max(lhs[i][j].norm());
        }
    }
    Ok(if scale == 0.0 { diff } else { diff / scale })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn elliptic_corners_and_flip() {
        let m = ModulusParams::new(0.1, 0.5).unwrap();
        let r = elliptic_r(&m, c(0.3, 0.0), c(0.7, 0.0)).unwrap();
        assert_eq!(r.entry(1, 1, 1, 1), c(1.0, 0.0));
        assert_eq!(r.entry(-1, -1, -1, -1), c(1.0, 0.0));

        let flip = elliptic_r(&m, c(0.41, 0.13), c(1.0, 0.0)).unwrap();
        assert_eq!(flip.m[1][1], c(0.0, 0.0));
        assert_eq!(flip.m[2][2], c(0.0, 0.0));
        assert!((flip.m[1][2] - 1.0).norm() < 1e-14);
        assert!((flip.m[2][1] - 1.0).norm() < 1e-14);
    }

    #[test]
    fn elliptic_entries_from_theta() {
        let m = ModulusParams::new(0.1, 0.5).unwrap();
        let (l, z) = (c(0.3, 0.0), c(0.7, 0.0));
        let r = elliptic_r(&m, l, z).unwrap();
        let q = 0.5f64;
        let t = |x: f64| m.theta(C64::from(x)).unwrap();
        let a = t(0.7) * t(q.powf(4.6)) / (t(q * q * 0.7) * t(q.powf(2.6)));
        let d = t(0.7) * t(q.powf(-0.6)) / (t(q * q * 0.7) * t(q.powf(-2.6)));
        let b = t(q * q) * t(q.powf(-2.6) * 0.7) / (t(q * q * 0.7) * t(q.powf(-2.6)));
        let cc = t(q * q) * t(q.powf(2.6) * 0.7) / (t(q * q * 0.7) * t(q.powf(2.6)));
        assert!((r.entry(1, -1, 1, -1) - a).norm() < 1e-13);
        assert!((r.entry(-1, 1, 1, -1) - b).norm() < 1e-13);
        assert!((r.entry(1, -1, -1, 1) - cc).norm() < 1e-13);
        assert!((r.entry(-1, 1, -1, 1) - d).norm() < 1e-13);
    }

    #[test]
    fn elliptic_pole_is_reported() {
        let m = ModulusParams::default();
        let z = C64::from(1.0 / m.q2i(1));
        assert!(matches!(
            elliptic_r(&m, c(0.3, 0.0), z),
            Err(Error::PoleProximity { .. })
        ));
        assert!(elliptic_r(&m, c(-1.0, 0.0), c(0.7, 0.0)).is_err());
    }

    #[test]
    fn rational_entries() {
        let q = 0.5;
        let r = rational_r(c(0.2, 0.1), q).unwrap();
        assert_eq!(r.m[0][0], c(q, 0.0));
        assert_eq!(r.m[3][3], c(q, 0.0));
        assert_eq!(rational_r_unit_corner(c(0.2, 0.1), q).unwrap().m[3][3], c(1.0, 0.0));

        // q^{2(λ+1)} = -1
        let lambda = c(0.0, std::f64::consts::PI / (2.0 * q.ln())) - 1.0;
        let r = rational_r(lambda, q).unwrap();
        let expect = (1.0 / q - q) / -2.0;
        assert!((r.m[1][2] - expect).norm() < 1e-14);
        assert!(rational_r(c(-1.0, 0.0), q).is_err());
    }

    #[test]
    fn h_invariance() {
        let m = ModulusParams::default();
        assert_eq!(elliptic_r(&m, c(0.4, 0.2), c(0.8, -0.3)).unwrap().h_invariance_defect(), 0.0);
        assert_eq!(rational_r(c(0.4, 0.2), 0.5).unwrap().h_invariance_defect(), 0.0);
    }

    #[test]
    fn qdybe_identity_is_exact() {
        let r = qdybe_residual(|_, _| Ok(RMatrix::identity()), c(0.3, 0.0), c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0))
            .unwrap();
        assert_eq!(r, 0.0);
    }

    #[test]
    fn qdybe_elliptic_and_rational() {
        let m = ModulusParams::default();
        let res = qdybe_residual(
            |l, z| elliptic_r(&m, l, z),
            c(0.37, 0.1),
            c(1.2, 0.1),
            c(0.7, -0.3),
            c(1.1, 0.5),
        )
        .unwrap();
        assert!(res < 1e-12, "elliptic residual {res}");

        let one = c(1.0, 0.0);
        let rat = qdybe_residual(|l, _| rational_r(l, 0.5), c(0.37, 0.1), one, one, one).unwrap();
        assert!(rat < 1e-13, "rational residual {rat}");
        let unit = qdybe_residual(|l, _| rational_r_unit_corner(l, 0.5), c(0.37, 0.1), one, one, one)
            .unwrap();
        assert!(unit > 1e-2, "unit-corner residual {unit}");
    }

    #[test]
    fn gauge_form_is_closed() {
        let m = ModulusParams::default();
        for l in [c(0.3, 0.1), c(0.8, -0.2), c(1.7, 0.05)] {
            let lhs = gauge_phi12(&m, l);
            let rhs = gauge_f2(&m, l) / gauge_f2(&m, l - 1.0);
            assert!((lhs - rhs).norm() < 1e-13 * lhs.norm());
        }
    }
}
