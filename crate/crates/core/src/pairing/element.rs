//! Elements `Σ c μ_r(f_r) μ_l(f_l) X_1⋯X_n` of the algebra, their pairing, the
//! determinant, the antipode and the `*`-structure, and the two Hopf-level
//! consistency checks built on them.

use num_complex::Complex64 as C64;

use super::engine::pair_words;
use super::token::{word_grade, Kind, Token};
use crate::diffop::{coeff, diffop_eq, sum, Coeff, DiffOp, EqOutcome};
use crate::elliptic::ModulusParams;
use crate::error::Result;

/// `c · μ_r(f_r) μ_l(f_l) · tokens`; a missing moment factor is `1`.
#[derive(Clone)]
pub struct Monomial {
    pub scalar: C64,
    pub mu_r: Option<Coeff>,
    pub mu_l: Option<Coeff>,
    pub tokens: Vec<Token>,
}

impl Monomial {
    pub fn word(tokens: Vec<Token>) -> Self {
        Self {
            scalar: C64::new(1.0, 0.0),
            mu_r: None,
            mu_l: None,
            tokens,
        }
    }

    pub fn grade(&self) -> (i32, i32) {
        word_grade(&self.tokens)
    }
}

impl std::fmt::Debug for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Monomial")
            .field("scalar", &self.scalar)
            .field("mu_r", &self.mu_r.is_some())
            .field("mu_l", &self.mu_l.is_some())
            .field("tokens", &self.tokens)
            .finish()
    }
}

/// A finite sum of monomials.
#[derive(Clone, Debug, Default)]
pub struct Element {
    pub terms: Vec<Monomial>,
}

impl Element {
    pub fn token(t: Token) -> Self {
        Self::word(vec![t])
    }

    pub fn word(tokens: Vec<Token>) -> Self {
        Self {
            terms: vec![Monomial::word(tokens)],
        }
    }

    /// Right multiplication by a token product.
    pub fn times_tokens(&self, tokens: &[Token]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|m| {
                let mut m = m.clone();
                m.tokens.extend_from_slice(tokens);
                m
            })
            .collect();
        Self { terms }
    }
}

fn eval_opt(f: &Option<Coeff>, l: C64) -> C64 {
    f.as_ref().map_or(C64::new(1.0, 0.0), |f| f(l))
}

/// Pairing of two elements. For `Y ∈ E_{a1,b1}` in the first slot and
/// `Z ∈ E_{a2,b2}` in the second with `⟨Y, Z⟩ = P T_s`:
///
/// ```text
/// ⟨c1 μ_r(fr1) μ_l(fl1) Y, c2 μ_r(fr2) μ_l(fl2) Z⟩
///   = c1 c2 fr1(λ) fl2(λ) P(λ) fl1(λ+s+a1) fr2(λ+s+b2) T_s
/// ```
pub fn pair_elements(params: &ModulusParams, x: &Element, a: &Element) -> Result<DiffOp> {
    let mut terms = Vec::new();
    for m1 in &x.terms {
        let (a1, _) = m1.grade();
        for m2 in &a.terms {
            let (_, b2) = m2.grade();
            let p = pair_words(params, &m1.tokens, &m2.tokens)?;
            let Some(pc) = p.coefficient().cloned() else {
                continue;
            };
            let s = p.shift();
            let c = m1.scalar * m2.scalar;
            let (fr1, fl1, fr2, fl2) = (
                m1.mu_r.clone(),
                m1.mu_l.clone(),
                m2.mu_r.clone(),
                m2.mu_l.clone(),
            );
            let (sa, sb) = ((s + a1) as f64, (s + b2) as f64);
            terms.push(DiffOp::from_fn(
                move |l| {
                    c * eval_opt(&fr1, l)
                        * eval_opt(&fl2, l)
                        * pc(l)
                        * eval_opt(&fl1, l + sa)
                        * eval_opt(&fr2, l + sb)
                },
                s,
            ));
        }
    }
    sum(terms)
}

/// `F(λ) = q^λ θ(q^{-2(λ+1)})`.
pub fn big_f(params: &ModulusParams, lambda: C64) -> C64 {
    params.q2(lambda / 2.0) * params.th(params.q2(-(lambda + 1.0)))
}

fn f_shifted(params: &ModulusParams, by: i32) -> Coeff {
    let m = *params;
    coeff(move |l| big_f(&m, l - by as f64))
}

fn f_inv_shifted(params: &ModulusParams, by: i32) -> Coeff {
    let m = *params;
    coeff(move |l| 1.0 / big_f(&m, l - by as f64))
}

/// `det(z) = μ_r(F) μ_l(F⁻¹) [α(z) δ(q²z) − γ(z) β(q²z)]`.
pub fn det_element(params: &ModulusParams, z: C64) -> Element {
    let zq = z * params.q2i(1);
    let mk = |scalar: f64, tokens: Vec<Token>| Monomial {
        scalar: C64::from(scalar),
        mu_r: Some(f_shifted(params, 0)),
        mu_l: Some(f_inv_shifted(params, 0)),
        tokens,
    };
    Element {
        terms: vec![
            mk(1.0, vec![Token::alpha(z), Token::delta(zq)]),
            mk(-1.0, vec![Token::gamma(z), Token::beta(zq)]),
        ],
    }
}

/// The generator paired with `L_ij` by the antipode (`α ↔ δ`, `β`, `γ`
/// fixed) and its sign.
fn antipode_partner(kind: Kind) -> (f64, Kind) {
    match kind {
        Kind::Alpha => (1.0, Kind::Delta),
        Kind::Beta => (-1.0, Kind::Beta),
        Kind::Gamma => (-1.0, Kind::Gamma),
        Kind::Delta => (1.0, Kind::Alpha),
        Kind::DetInv => (1.0, Kind::DetInv),
    }
}

/// The antipode on a token:
///
/// ```text
/// S(α(z)) = μ_r(F) μ_l(F⁻¹) det⁻¹(q⁻²z) δ(q⁻²z),   S(β(z)) = −μ_r(F) μ_l(F⁻¹) det⁻¹(q⁻²z) β(q⁻²z),
/// S(γ(z)) = −μ_r(F) μ_l(F⁻¹) det⁻¹(q⁻²z) γ(q⁻²z), S(δ(z)) = μ_r(F) μ_l(F⁻¹) det⁻¹(q⁻²z) α(q⁻²z),
/// S(det⁻¹(z)) = det(z).
/// ```
pub fn antipode_token(params: &ModulusParams, t: Token) -> Element {
    if t.kind == Kind::DetInv {
        return det_element(params, t.spectral);
    }
    let (sign, partner) = antipode_partner(t.kind);
    let zz = t.spectral * params.q2i(-1);
    Element {
        terms: vec![Monomial {
            scalar: C64::from(sign),
            mu_r: Some(f_shifted(params, 0)),
            mu_l: Some(f_inv_shifted(params, 0)),
            tokens: vec![Token::det_inv(zz), Token::new(partner, zz)],
        }],
    }
}

/// The inverse antipode on a token, which is the antipode of the
/// co-opposite algebra:
///
/// ```text
/// S⁻¹(L_ij(z)) = ± μ_r(F(λ−b)) μ_l(F(λ−a)⁻¹) Y(q²z) det⁻¹(z),   Y ∈ E_{a,b}
/// S⁻¹(det⁻¹(z)) = det(z)
/// ```
///
/// with `Y` and the sign as for the antipode.
pub fn antipode_inv_token(params: &ModulusParams, t: Token) -> Element {
    if t.kind == Kind::DetInv {
        return det_element(params, t.spectral);
    }
    let (sign, partner) = antipode_partner(t.kind);
    let (a, b) = partner.grade();
    let zz = t.spectral * params.q2i(1);
    Element {
        terms: vec![Monomial {
            scalar: C64::from(sign),
            mu_r: Some(f_shifted(params, b)),
            mu_l: Some(f_inv_shifted(params, a)),
            tokens: vec![Token::new(partner, zz), Token::det_inv(t.spectral)],
        }],
    }
}

/// `α(z)* = δ(1/z̄)`, `β(z)* = −γ(1/z̄)`, `γ(z)* = −β(1/z̄)`, `δ(z)* = α(1/z̄)`,
/// `det⁻¹(z)* = det⁻¹(q⁻²/z̄)`.
pub fn star_token(params: &ModulusParams, t: Token) -> (f64, Token) {
    let inv = 1.0 / t.spectral.conj();
    match t.kind {
        Kind::Alpha => (1.0, Token::delta(inv)),
        Kind::Beta => (-1.0, Token::gamma(inv)),
        Kind::Gamma => (-1.0, Token::beta(inv)),
        Kind::Delta => (1.0, Token::alpha(inv)),
        Kind::DetInv => (1.0, Token::det_inv(inv * params.q2i(-1))),
    }
}

fn conj_shifted(f: &Option<Coeff>, by: i32) -> Option<Coeff> {
    f.clone()
        .map(|f| coeff(move |l: C64| f((l - by as f64).conj()).conj()))
}

/// The antilinear antimultiplicative involution. Moment maps are starred as
/// `μ(f)* = μ(f̄)` with `f̄(λ) = conj(f(conj λ))` and then moved back to the
/// front of the reversed word.
pub fn star_element(params: &ModulusParams, x: &Element) -> Element {
    let terms = x
        .terms
        .iter()
        .map(|m| {
            let mut sign = 1.0;
            let tokens: Vec<Token> = m
                .tokens
                .iter()
                .rev()
                .map(|&t| {
                    let (s, t) = star_token(params, t);
                    sign *= s;
                    t
                })
                .collect();
            let (a, b) = word_grade(&tokens);
            Monomial {
                scalar: m.scalar.conj() * sign,
                mu_r: conj_shifted(&m.mu_r, b),
                mu_l: conj_shifted(&m.mu_l, a),
                tokens,
            }
        })
        .collect();
    Element { terms }
}

/// Residual of `⟨S⁻¹(X), a⟩ = S^D(⟨X, S(a)⟩)`, `S^D(f T_s) = f(λ−s) T_{−s}`.
pub fn verify_antipode_pairing(
    params: &ModulusParams,
    x: Token,
    a: Token,
    samples: &[C64],
    tol: f64,
) -> Result<EqOutcome> {
    let lhs = pair_elements(params, &antipode_inv_token(params, x), &Element::token(a))?;
    let rhs = pair_elements(params, &Element::token(x), &antipode_token(params, a))?.antipode();
    Ok(diffop_eq(&lhs, &rhs, samples, tol))
}

/// Residual of `⟨X*, a⟩ = T_{−γ} ∘ ⟨X, S(a)*⟩^* ∘ T_{−δ}` for `a ∈ E_{γδ}`.
pub fn verify_star_pairing(
    params: &ModulusParams,
    x: Token,
    a: Token,
    samples: &[C64],
    tol: f64,
) -> Result<EqOutcome> {
    let lhs = pair_elements(
        params,
        &star_element(params, &Element::token(x)),
        &Element::token(a),
    )?;
    let (g, d) = a.grade();
    let inner = pair_elements(
        params,
        &Element::token(x),
        &star_element(params, &antipode_token(params, a)),
    )?;
    let rhs = DiffOp::shift_op(-g)
        .compose(&inner.star())
        .compose(&DiffOp::shift_op(-d));
    Ok(diffop_eq(&lhs, &rhs, samples, tol))
}
