//! The convolution engine: pairings of arbitrary token products, reduced to
//! token pairings through the comultiplications
//!
//! ```text
//! ⟨X, a b⟩ = Σ ⟨X(1), a⟩ ∘ T_{β(X(1))} ∘ ⟨X(2), b⟩      (Δ on E^cop)
//! ⟨X Y, a⟩ = Σ ⟨X, a(1)⟩ ∘ T_{β(a(1))} ∘ ⟨Y, a(2)⟩      (Δ on E)
//! ```
//!
//! with `Δ(L_ij) = Σ_x L_ix ⊗ L_xj` on `E` and its flip on `E^cop`; the inverse
//! determinant is group-like.

use super::generators::{counit_token, counit_word, pair_tokens};
use super::token::Token;
use crate::diffop::{sum, DiffOp};
use crate::elliptic::ModulusParams;
use crate::error::Result;

/// One Sweedler term `(left, right, ρ)` with `ρ` the right weight of `left`.
pub type CoproductTerm = (Token, Token, i32);

/// `Δ^E(L_ij(z)) = Σ_x L_ix(z) ⊗ L_xj(z)`.
pub fn cop_e(t: Token) -> Vec<CoproductTerm> {
    match t.kind.indices() {
        None => vec![(t, t, 0)],
        Some((i, j)) => [1, -1]
            .into_iter()
            .map(|x| (Token::gen(i, x, t.spectral), Token::gen(x, j, t.spectral), x))
            .collect(),
    }
}

/// `Δ^{E^cop}(L_ij(z)) = Σ_x L_xj(z) ⊗ L_ix(z)`; `ρ = x` is again the right
/// weight of the left factor.
pub fn cop_u(t: Token) -> Vec<CoproductTerm> {
    match t.kind.indices() {
        None => vec![(t, t, 0)],
        Some((i, j)) => [1, -1]
            .into_iter()
            .map(|x| (Token::gen(x, j, t.spectral), Token::gen(i, x, t.spectral), x))
            .collect(),
    }
}

/// `⟨X, a_1 ⋯ a_n⟩` for a single token `X`.
pub fn pair_token_word(params: &ModulusParams, x: Token, a: &[Token]) -> Result<DiffOp> {
    match a {
        [] => Ok(counit_token(x)),
        [single] => Ok(pair_tokens(params, x, *single)),
        [head, rest @ ..] => {
            let mut terms = Vec::with_capacity(2);
            for (x1, x2, rho) in cop_u(x) {
                let first = pair_tokens(params, x1, *head);
                if first.is_zero() {
                    continue;
                }
                let tail = pair_token_word(params, x2, rest)?;
                if tail.is_zero() {
                    continue;
                }
                terms.push(first.compose(&DiffOp::shift_op(rho)).compose(&tail));
            }
            sum(terms)
        }
    }
}

/// `⟨X_1 ⋯ X_m, a_1 ⋯ a_n⟩` for token products on both sides.
pub fn pair_words(params: &ModulusParams, xs: &[Token], a: &[Token]) -> Result<DiffOp> {
    let Some((head, rest)) = xs.split_first() else {
        return Ok(counit_word(a));
    };
    if rest.is_empty() {
        return pair_token_word(params, *head, a);
    }
    let splits: Vec<Vec<CoproductTerm>> = a.iter().map(|&t| cop_e(t)).collect();
    let mut terms = Vec::new();
    let mut choice = vec![0usize; a.len()];
    loop {
        let mut left = Vec::with_capacity(a.len());
        let mut right = Vec::with_capacity(a.len());
        let mut rho = 0;
        for (opts, &c) in splits.iter().zip(&choice) {
            let (l, r, w) = opts[c];
            left.push(l);
            right.push(r);
            rho += w;
        }
        let first = pair_token_word(params, *head, &left)?;
        if !first.is_zero() {
            let tail = pair_words(params, rest, &right)?;
            if !tail.is_zero() {
                terms.push(first.compose(&DiffOp::shift_op(rho)).compose(&tail));
            }
        }
        // odometer over the per-token coproduct choices
        let mut pos = 0;
        loop {
            if pos == choice.len() {
                return sum(terms);
            }
            choice[pos] += 1;
            if choice[pos] < splits[pos].len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use super::super::token::Kind;
    use crate::diffop::rel_diff;
    use num_complex::Complex64 as C64;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn single_tokens_reduce_to_base_case() {
        let m = ModulusParams::default();
        let (w, z) = (c(1.3, 0.2), c(0.8, -0.1));
        let l = c(0.4, 0.1);
        for x in Kind::ALL {
            for a in Kind::ALL {
                let direct = pair_tokens(&m, Token::new(x, w), Token::new(a, z));
                let via = pair_words(&m, &[Token::new(x, w)], &[Token::new(a, z)]).unwrap();
                assert_eq!(direct.is_zero(), via.is_zero());
                if !direct.is_zero() {
                    assert!(rel_diff(direct.eval(l), via.eval(l)) < 1e-15);
                }
            }
        }
    }

    #[test]
    fn empty_words_give_counits() {
        let m = ModulusParams::default();
        let a = [Token::alpha(c(1.0, 0.0)), Token::delta(c(0.5, 0.0))];
        let e = pair_words(&m, &[], &a).unwrap();
        assert_eq!(e.shift(), 0);
        let x = pair_token_word(&m, Token::delta(c(1.0, 0.0)), &[]).unwrap();
        assert_eq!(x.shift(), 1);
    }

    #[test]
    fn grading_selection_rule() {
        // α only sees β through off-diagonal terms, so ⟨α, β β⟩ vanishes
        let m = ModulusParams::default();
        let w = c(1.1, 0.3);
        let z = c(0.7, 0.2);
        let r = pair_token_word(&m, Token::alpha(w), &[Token::beta(z), Token::beta(z * 0.25)]).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn alpha_pairs_with_alpha_power_as_shift() {
        let m = ModulusParams::default();
        let z = c(0.9, 0.2);
        let word = [Token::alpha(z * m.q2i(1)), Token::alpha(z)];
        let r = pair_token_word(&m, Token::alpha(c(1.4, -0.3)), &word).unwrap();
        assert_eq!(r.shift(), -3);
        assert!(rel_diff(r.eval(c(0.3, 0.2)), c(1.0, 0.0)) < 1e-15);
    }
}
