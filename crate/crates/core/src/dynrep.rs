//! The dynamical representation on `V^N = span{v_0(z), …, v_N(z)}` with
//! coefficients in meromorphic functions of `λ`, and the pairing it encodes.
//!
//! With `u = w/z` the generators act by
//!
//! ```text
//! α(w)   f v_k ↦ θ(q^{2(1−N+k)}u, q^{2(λ+N−k+2)}) / θ(q²u, q^{2(λ+2)}) · f(λ+1) v_k
//! β(w)   f v_k ↦ θ(q^{2(N−k)}, q^{−2(λ−1+N−k)}u) / θ(q²u, q^{−2λ})      · f(λ−1) v_{k+1}
//! γ(w)   f v_k ↦ θ(q^{2k}, q^{2(λ−k+3)}u) / θ(q²u, q^{2(λ+2)})          · f(λ+1) v_{k−1}
//! δ(w)   f v_k ↦ θ(q^{2(k−λ)}, q^{2(1−k)}u) / θ(q²u, q^{−2λ})           · f(λ−1) v_k
//! det⁻¹(w) f v_k ↦ q^{−N} θ(q²u) / θ(q^{2(1−N)}u)                       · f v_k
//! ```

use num_complex::Complex64 as C64;

use crate::diffop::{coeff, Coeff, ZERO_TOL};
use crate::elliptic::ModulusParams;
use crate::error::{Error, Result};
use crate::pairing::matrix::{expand_matrix_element, MatrixElementIndex};
use crate::pairing::token::{Kind, Token};
use crate::rmatrix::POLE_TOL;

/// `Σ_k f_k(λ) v_k(z)`; `None` marks an identically zero coefficient.
#[derive(Clone)]
pub struct VNVector {
    pub n: i32,
    pub spectral: C64,
    pub coeffs: Vec<Option<Coeff>>,
}

impl std::fmt::Debug for VNVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let support: Vec<usize> = (0..self.coeffs.len())
            .filter(|&k| self.coeffs[k].is_some())
            .collect();
        f.debug_struct("VNVector")
            .field("n", &self.n)
            .field("spectral", &self.spectral)
            .field("support", &support)
            .finish()
    }
}

impl VNVector {
    pub fn zero(n: i32, spectral: C64) -> Self {
        Self {
            n,
            spectral,
            coeffs: vec![None; (n + 1) as usize],
        }
    }

    /// The basis vector `v_k(z)`.
    pub fn basis(n: i32, spectral: C64, k: i32) -> Result<Self> {
        if !(0..=n).contains(&k) {
            return Err(Error::InvalidIndex(format!("v_{k} in V^{n}")));
        }
        let mut v = Self::zero(n, spectral);
        v.coeffs[k as usize] = Some(coeff(|_| C64::new(1.0, 0.0)));
        Ok(v)
    }

    pub fn coefficient(&self, k: i32, lambda: C64) -> C64 {
        match self.coeffs.get(k as usize) {
            Some(Some(f)) => f(lambda),
            _ => C64::new(0.0, 0.0),
        }
    }

    /// `μ_V(f) v`: pointwise multiplication of every coefficient.
    pub fn scale_by(&self, f: &Coeff) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                c.clone().map(|c| {
                    let f = f.clone();
                    coeff(move |l| f(l) * c(l))
                })
            })
            .collect();
        Self { coeffs, ..*self }
    }

    pub fn add(&self, other: &VNVector) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| match (a, b) {
                (None, x) | (x, None) => x.clone(),
                (Some(a), Some(b)) => {
                    let (a, b) = (a.clone(), b.clone());
                    Some(coeff(move |l| a(l) + b(l)))
                }
            })
            .collect();
        Self { coeffs, ..*self }
    }
}

/// Where a generator sends `v_k`, the λ-shift applied to the incoming
/// coefficient, and the scalar in front — evaluated even when the target
/// index falls outside `0..=N`, where the scalar vanishes.
pub fn generator_coefficient(
    params: &ModulusParams,
    x: Token,
    n: i32,
    k: i32,
    z: C64,
    lambda: C64,
) -> (i32, i32, C64) {
    let m = params;
    let u = x.spectral / z;
    let q2u = u * m.q2i(1);
    let th = |v: C64| m.th(v);
    let lq = |c: i32| m.q2(lambda + c as f64);
    let nlq = |c: i32| m.q2(-(lambda + c as f64));
    let scalar = match x.kind {
        Kind::Alpha => th(u * m.q2i(1 - n + k)) * th(lq(n - k + 2)) / (th(q2u) * th(lq(2))),
        Kind::Beta => {
            th(C64::from(m.q2i(n - k))) * th(nlq(n - k - 1) * u) / (th(q2u) * th(nlq(0)))
        }
        Kind::Gamma => th(C64::from(m.q2i(k))) * th(lq(3 - k) * u) / (th(q2u) * th(lq(2))),
        Kind::Delta => th(nlq(-k)) * th(u * m.q2i(1 - k)) / (th(q2u) * th(nlq(0))),
        Kind::DetInv => m.q().powi(-n) * th(q2u) / th(u * m.q2i(1 - n)),
    };
    let (target, shift) = target_and_shift(x.kind, k);
    (target, shift, scalar)
}

fn target_and_shift(kind: Kind, k: i32) -> (i32, i32) {
    match kind {
        Kind::Alpha => (k, 1),
        Kind::Beta => (k + 1, -1),
        Kind::Gamma => (k - 1, 1),
        Kind::Delta => (k, -1),
        Kind::DetInv => (k, 0),
    }
}

/// `π(X) v`.
pub fn act_generator(params: &ModulusParams, x: Token, v: &VNVector) -> Result<VNVector> {
    let u = x.spectral / v.spectral;
    let (what, arg) = match x.kind {
        Kind::DetInv => ("θ(q^{2(1−N)}w/z)", u * params.q2i(1 - v.n)),
        _ => ("θ(q²w/z)", u * params.q2i(1)),
    };
    let distance = params.zero_distance(arg);
    if distance < POLE_TOL {
        return Err(Error::PoleProximity {
            factor: what.into(),
            distance,
        });
    }
    let mut out = VNVector::zero(v.n, v.spectral);
    for (k, c) in v.coeffs.iter().enumerate() {
        let Some(f) = c.clone() else { continue };
        let (m, n, z, k) = (*params, v.n, v.spectral, k as i32);
        let (target, shift) = target_and_shift(x.kind, k);
        if !(0..=n).contains(&target) {
            continue;
        }
        let term = coeff(move |l| {
            let (_, _, s) = generator_coefficient(&m, x, n, k, z, l);
            s * f(l + shift as f64)
        });
        let mut single = VNVector::zero(n, z);
        single.coeffs[target as usize] = Some(term);
        out = out.add(&single);
    }
    Ok(out)
}

/// `π(t^M_{rs}(w)) v`: each summand `μ_r(g) X_1 ⋯ X_m` of the matrix element
/// acts by scaling with `g` and then applying `X_1`, `X_2`, … in turn.
pub fn act_matrix_element(params: &ModulusParams, s: &MatrixElementIndex, v: &VNVector) -> Result<VNVector> {
    let mut total = VNVector::zero(v.n, v.spectral);
    for word in expand_matrix_element(params, s) {
        let mut cur = match &word.prefactor_right {
            Some(g) => v.scale_by(g),
            None => v.clone(),
        };
        for &tok in &word.tokens {
            cur = act_generator(params, tok, &cur)?;
        }
        total = total.add(&cur);
    }
    Ok(total)
}

/// Coefficient of `v_j` in `π(t^M_{rs}(w)) v_k(z)` at `λ`; this equals the
/// coefficient of `⟨t^M_{rs}(w), t^N_{kj}(z)⟩` at `λ + 2s − M`.
pub fn rep_pairing_extract(
    params: &ModulusParams,
    s: &MatrixElementIndex,
    n: i32,
    k: i32,
    j: i32,
    z: C64,
    lambda: C64,
) -> Result<C64> {
    let v = VNVector::basis(n, z, k)?;
    if !(0..=n).contains(&j) {
        return Err(Error::InvalidIndex(format!("v_{j} in V^{n}")));
    }
    Ok(act_matrix_element(params, s, &v)?.coefficient(j, lambda))
}

/// Weight of a vector, read off from which coefficients are nonzero at the
/// given samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weight {
    Pure(i32),
    Mixed,
    Zero,
}

pub fn weight(v: &VNVector, samples: &[C64]) -> Weight {
    let support: Vec<i32> = (0..=v.n)
        .filter(|&k| samples.iter().any(|&l| v.coefficient(k, l).norm() > ZERO_TOL))
        .collect();
    match support.as_slice() {
        [] => Weight::Zero,
        [k] => Weight::Pure(2 * k - v.n),
        _ => Weight::Mixed,
    }
}

/// Weight zero, i.e. a multiple of `v_{N/2}` for even `N`.
pub fn is_spherical(v: &VNVector, samples: &[C64]) -> bool {
    weight(v, samples) == Weight::Pure(0)
}
