//! Matrix elements `t^N_{kj}(z)` of the spin-`N/2` corepresentation and their
//! pairings with generators and words.

use num_complex::Complex64 as C64;

use super::element::{Element, Monomial};
use super::token::{Token, Word};
use crate::diffop::{coeff, sum, DiffOp};
use crate::elliptic::ModulusParams;
use crate::error::{Error, Result};
use crate::rmatrix::POLE_TOL;

/// `t^N_{kj}(z) ∈ E_{2k−N, 2j−N}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatrixElementIndex {
    pub n: i32,
    pub k: i32,
    pub j: i32,
    pub spectral: C64,
}

impl MatrixElementIndex {
    pub fn new(n: i32, k: i32, j: i32, spectral: C64) -> Result<Self> {
        if n < 0 || !(0..=n).contains(&k) || !(0..=n).contains(&j) {
            return Err(Error::InvalidIndex(format!(
                "t^{n}_{{{k},{j}}} needs 0 ≤ k, j ≤ N"
            )));
        }
        Ok(Self { n, k, j, spectral })
    }

    /// Same corepresentation and spectral parameter, other indices.
    pub fn with_indices(&self, k: i32, j: i32) -> Self {
        Self { k, j, ..*self }
    }

    pub fn grade(&self) -> (i32, i32) {
        (2 * self.k - self.n, 2 * self.j - self.n)
    }

    /// `ε(t^N_{kj}) = δ_{kj} T_{N−2k}`.
    pub fn counit(&self) -> DiffOp {
        if self.k == self.j {
            DiffOp::shift_op(self.n - 2 * self.k)
        } else {
            DiffOp::zero()
        }
    }
}

/// The explicit expression of `t^N_{kj}(z)` as a sum over
/// `max(0, k+j−N) ≤ l ≤ min(k, j)` of
///
/// ```text
/// [k, l] [N−k, j−l] μ_r(g_l) · Π γ(q^{2e}z) · Π δ(q^{2e}z) · Π α(q^{2e}z) · Π β(q^{2e}z)
/// ```
///
/// where the exponents run downwards over `N−k−1 … N−j−k+l`,
/// `N−j−k+l−1 … 0`, `N−1 … N−l` and `N−l−1 … N−k` respectively, and
///
/// ```text
/// g_l(λ) = (q^{2(λ+N−k−2j+l+2)})_l (q^{2(λ+l−j+2)})_{j−l}
///        / ((q^{2(λ+N−2j+2)})_l (q^{2(λ+N−2j−k+2l+2)})_{j−l}).
/// ```
///
/// The binomials are folded into the prefactor.
pub fn expand_matrix_element(params: &ModulusParams, t: &MatrixElementIndex) -> Vec<Word> {
    let MatrixElementIndex { n, k, j, spectral: z } = *t;
    let m = *params;
    let at = |e: i32| z * m.q2i(e);
    let mut out = Vec::new();
    for l in (k + j - n).max(0)..=k.min(j) {
        let scalar = m.ell_binomial(k, l) * m.ell_binomial(n - k, j - l);
        let g = coeff(move |lam: C64| {
            let f = |e: C64, len: i32| m.ell_shifted_factorial(m.q2(lam + e), len);
            let fl = |x: i32| C64::from(x as f64);
            scalar * f(fl(n - k - 2 * j + l + 2), l) * f(fl(l - j + 2), j - l)
                / (f(fl(n - 2 * j + 2), l) * f(fl(n - 2 * j - k + 2 * l + 2), j - l))
        });
        let mut tokens = Vec::with_capacity(n as usize);
        tokens.extend(((n - j - k + l)..n - k).rev().map(|e| Token::gamma(at(e))));
        tokens.extend((0..n - j - k + l).rev().map(|e| Token::delta(at(e))));
        tokens.extend(((n - l)..n).rev().map(|e| Token::alpha(at(e))));
        tokens.extend(((n - k)..n - l).rev().map(|e| Token::beta(at(e))));
        out.push(Word::with_prefactor(tokens, g));
    }
    out
}

impl From<&Word> for Monomial {
    fn from(w: &Word) -> Self {
        Monomial {
            scalar: C64::new(1.0, 0.0),
            mu_r: w.prefactor_right.clone(),
            mu_l: None,
            tokens: w.tokens.clone(),
        }
    }
}

/// `t^N_{kj}(z)` as an algebra element.
pub fn matrix_element(params: &ModulusParams, t: &MatrixElementIndex) -> Element {
    Element {
        terms: expand_matrix_element(params, t)
            .iter()
            .map(Monomial::from)
            .collect(),
    }
}

fn check_pole(params: &ModulusParams, what: &str, x: C64) -> Result<()> {
    let distance = params.zero_distance(x);
    if distance < POLE_TOL {
        Err(Error::PoleProximity {
            factor: what.into(),
            distance,
        })
    } else {
        Ok(())
    }
}

/// Pairing of a token with a matrix element, `u = w/z`:
///
/// ```text
/// ⟨α(w), t^N_{kj}(z)⟩ = δ_{kj}    θ(q^{2(1−N+k)}u, q^{2(λ+N−k+1)}) / θ(q²u, q^{2(λ+1)})   T_{N−2k−1}
/// ⟨β(w), t^N_{kj}(z)⟩ = δ_{k,j−1} θ(q^{2(N−k)}, q^{−2(λ+N−k)}u) / θ(q²u, q^{−2(λ+1)})    T_{N−2k−1}
/// ⟨γ(w), t^N_{kj}(z)⟩ = δ_{j,k−1} θ(q^{2k}, q^{2(λ−k+2)}u) / θ(q²u, q^{2(λ+1)})          T_{N−2k+1}
/// ⟨δ(w), t^N_{kj}(z)⟩ = δ_{kj}    θ(q^{2(k−λ−1)}, q^{2(1−k)}u) / θ(q²u, q^{−2(λ+1)})     T_{N−2k+1}
/// ⟨det⁻¹(w), t^N_{kj}(z)⟩ = δ_{kj} q^{−N} θ(q²u) / θ(q^{2(1−N)}u)                     T_{N−2k}
/// ```
pub fn pair_gen_matrix(params: &ModulusParams, x: Token, t: &MatrixElementIndex) -> Result<DiffOp> {
    use super::token::Kind::*;
    let m = *params;
    let MatrixElementIndex { n, k, j, spectral: z } = *t;
    let u = x.spectral / z;
    let q2u = u * m.q2i(1);
    let th = move |v: C64| m.th(v);
    let lam = move |l: C64, c: i32| m.q2(l + c as f64);
    let neg = move |l: C64, c: i32| m.q2(-(l + c as f64));
    Ok(match x.kind {
        DetInv => {
            if k != j {
                return Ok(DiffOp::zero());
            }
            let d = u * m.q2i(1 - n);
            check_pole(params, "θ(q^{2(1−N)}w/z)", d)?;
            let c = m.q().powi(-n) * th(q2u) / th(d);
            DiffOp::from_fn(move |_| c, n - 2 * k)
        }
        _ => {
            check_pole(params, "θ(q²w/z)", q2u)?;
            match x.kind {
                Alpha if k == j => {
                    let a = u * m.q2i(1 - n + k);
                    DiffOp::from_fn(
                        move |l| th(a) * th(lam(l, n - k + 1)) / (th(q2u) * th(lam(l, 1))),
                        n - 2 * k - 1,
                    )
                }
                Beta if k + 1 == j => {
                    let a = C64::from(m.q2i(n - k));
                    DiffOp::from_fn(
                        move |l| th(a) * th(neg(l, n - k) * u) / (th(q2u) * th(neg(l, 1))),
                        n - 2 * k - 1,
                    )
                }
                Gamma if j + 1 == k => {
                    let a = C64::from(m.q2i(k));
                    DiffOp::from_fn(
                        move |l| th(a) * th(lam(l, 2 - k) * u) / (th(q2u) * th(lam(l, 1))),
                        n - 2 * k + 1,
                    )
                }
                Delta if k == j => {
                    let b = u * m.q2i(1 - k);
                    DiffOp::from_fn(
                        move |l| th(neg(l, 1 - k)) * th(b) / (th(q2u) * th(neg(l, 1))),
                        n - 2 * k + 1,
                    )
                }
                _ => DiffOp::zero(),
            }
        }
    })
}

/// `⟨X_1 ⋯ X_m, t^N_{kj}⟩ = Σ_p ⟨X_1, t^N_{kp}⟩ ∘ T_{2p−N} ∘ ⟨X_2 ⋯ X_m, t^N_{pj}⟩`
/// with the counit for the empty word; a right prefactor `μ_r(g)` on the
/// word composes as `g ∘ (…)`.
pub fn pair_word_matrix(params: &ModulusParams, x: &Word, t: &MatrixElementIndex) -> Result<DiffOp> {
    let bare = pair_tokens_matrix(params, &x.tokens, t)?;
    Ok(match &x.prefactor_right {
        Some(g) => bare.mul_left(g),
        None => bare,
    })
}

fn pair_tokens_matrix(params: &ModulusParams, xs: &[Token], t: &MatrixElementIndex) -> Result<DiffOp> {
    let Some((head, rest)) = xs.split_first() else {
        return Ok(t.counit());
    };
    if rest.is_empty() {
        return pair_gen_matrix(params, *head, t);
    }
    let mut terms = Vec::new();
    for p in 0..=t.n {
        let first = pair_gen_matrix(params, *head, &t.with_indices(t.k, p))?;
        if first.is_zero() {
            continue;
        }
        let tail = pair_tokens_matrix(params, rest, &t.with_indices(p, t.j))?;
        if tail.is_zero() {
            continue;
        }
        terms.push(
            first
                .compose(&DiffOp::shift_op(2 * p - t.n))
                .compose(&tail),
        );
    }
    sum(terms)
}

/// `⟨t^M_{rs}(w), t^N_{kj}(z)⟩` by expanding the first argument into words
/// and pairing each word with the matrix element.
pub fn pair_matrix_matrix_oracle(
    params: &ModulusParams,
    x: &MatrixElementIndex,
    t: &MatrixElementIndex,
) -> Result<DiffOp> {
    let terms = expand_matrix_element(params, x)
        .iter()
        .map(|w| pair_word_matrix(params, w, t))
        .collect::<Result<Vec<_>>>()?;
    sum(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffop::{diffop_eq, rel_diff};
    use crate::pairing::element::pair_elements;
    use crate::pairing::generators::pair_generators;
    use crate::pairing::token::Kind;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    const LAMBDAS: [C64; 3] = [
        C64::new(0.37, 0.1),
        C64::new(0.61, -0.2),
        C64::new(0.22, 0.05),
    ];

    fn idx(n: i32, k: i32, j: i32, z: C64) -> MatrixElementIndex {
        MatrixElementIndex::new(n, k, j, z).unwrap()
    }

    #[test]
    fn rejects_bad_indices() {
        assert!(MatrixElementIndex::new(2, 3, 0, c(1.0, 0.0)).is_err());
        assert!(MatrixElementIndex::new(2, 0, -1, c(1.0, 0.0)).is_err());
    }

    #[test]
    fn corner_expansions() {
        let m = ModulusParams::default();
        let z = c(0.8, 0.3);
        let t11 = expand_matrix_element(&m, &idx(1, 1, 1, z));
        assert_eq!(t11.len(), 1);
        assert_eq!(t11[0].tokens, vec![Token::alpha(z)]);
        let t00 = expand_matrix_element(&m, &idx(2, 0, 0, z));
        assert_eq!(t00.len(), 1);
        let kinds: Vec<Kind> = t00[0].tokens.iter().map(|t| t.kind).collect();
        assert_eq!(kinds, vec![Kind::Delta, Kind::Delta]);
        assert!(rel_diff(t00[0].tokens[0].spectral, z * m.q2i(1)) < 1e-15);
        let g = t00[0].prefactor_right.as_ref().unwrap();
        assert!(rel_diff(g(c(0.3, 0.1)), c(1.0, 0.0)) < 1e-15);
        assert_eq!(expand_matrix_element(&m, &idx(2, 1, 1, z)).len(), 2);
    }

    #[test]
    fn word_recursion_matches_engine() {
        // two independent routes: the generator-level engine on the expanded
        // element, and the recursion over the closed generator pairings
        let m = ModulusParams::default();
        let z = c(0.8, 0.3);
        let t = idx(2, 1, 1, z);
        let x = [Token::alpha(c(1.2, 0.1)), Token::delta(c(0.9, -0.2))];
        let via_engine = pair_elements(&m, &Element::word(x.to_vec()), &matrix_element(&m, &t)).unwrap();
        let via_recursion = pair_word_matrix(&m, &Word::new(x.to_vec()), &t).unwrap();
        assert!(diffop_eq(&via_engine, &via_recursion, &LAMBDAS, 1e-10).equal);
    }

    #[test]
    fn closed_formulas_match_engine() {
        let m = ModulusParams::default();
        let (w, z) = (c(1.3, 0.2), c(0.8, -0.1));
        for n in 0..=4 {
            for k in 0..=n {
                for j in 0..=n {
                    let t = idx(n, k, j, z);
                    let te = matrix_element(&m, &t);
                    for kind in Kind::ALL {
                        let x = Token::new(kind, w);
                        let closed = pair_gen_matrix(&m, x, &t).unwrap();
                        let engine = pair_elements(&m, &Element::token(x), &te).unwrap();
                        let out = diffop_eq(&closed, &engine, &LAMBDAS, 1e-10);
                        assert!(out.equal, "{kind:?} N={n} k={k} j={j}: {out:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn n1_reproduces_generator_pairings() {
        let m = ModulusParams::default();
        let (w, z) = (c(1.3, 0.2), c(0.8, -0.1));
        for x in Kind::GENERATORS {
            for a in Kind::GENERATORS {
                let (i, j) = a.indices().unwrap();
                let t = idx(1, (i + 1) / 2, (j + 1) / 2, z);
                let lhs = pair_gen_matrix(&m, Token::new(x, w), &t).unwrap();
                let rhs = pair_generators(&m, Token::new(x, w), Token::new(a, z)).unwrap();
                assert!(diffop_eq(&lhs, &rhs, &LAMBDAS, 1e-12).equal, "{x:?} {a:?}");
            }
        }
    }

    #[test]
    fn corner_shifts() {
        let m = ModulusParams::default();
        for k in 0..=4 {
            let z = c(0.8, -0.1);
            let a = pair_gen_matrix(&m, Token::alpha(c(1.3, 0.2)), &idx(k, k, k, z)).unwrap();
            assert_eq!(a.shift(), -k - 1);
            assert!(rel_diff(a.eval(LAMBDAS[0]), c(1.0, 0.0)) < 1e-12);
            let d = pair_gen_matrix(&m, Token::delta(c(1.3, 0.2)), &idx(k, 0, 0, z)).unwrap();
            assert_eq!(d.shift(), k + 1);
            assert!(rel_diff(d.eval(LAMBDAS[1]), c(1.0, 0.0)) < 1e-12);
        }
    }

    #[test]
    fn oracle_examples() {
        let m = ModulusParams::default();
        let (w, z) = (c(1.3, 0.2), c(0.8, -0.1));
        let r = pair_matrix_matrix_oracle(&m, &idx(1, 1, 1, w), &idx(1, 1, 1, z)).unwrap();
        assert_eq!(r.shift(), -2);
        assert!(rel_diff(r.eval(LAMBDAS[0]), c(1.0, 0.0)) < 1e-14);
        let zero = pair_matrix_matrix_oracle(&m, &idx(2, 0, 1, w), &idx(1, 0, 0, z)).unwrap();
        for l in LAMBDAS {
            assert!(zero.eval(l).norm() < 1e-12);
        }
    }

    #[test]
    fn empty_word_is_counit() {
        let m = ModulusParams::default();
        let t = idx(3, 1, 1, c(0.5, 0.5));
        let e = pair_word_matrix(&m, &Word::new(vec![]), &t).unwrap();
        assert_eq!(e.shift(), 1);
        assert!(pair_word_matrix(&m, &Word::new(vec![]), &t.with_indices(1, 2))
            .unwrap()
            .is_zero());
    }
}
