//! The left and right actions of generators on matrix elements induced by the
//! pairing, and the weak-action identities they satisfy.
//!
//! A generator `L_ij ∈ E_{i,j}` sits in the co-opposite algebra with grade
//! `(α, β) = (j, i)`. With `Δ(t^N_{kj}) = Σ_p t^N_{kp} ⊗ t^N_{pj}`:
//!
//! ```text
//! X · t^N_{kj} = Σ_p μ_r(⟨X, t^N_{pj}⟩𝟏) t^N_{kp}          ⟨Y, X·t⟩ = ⟨YX, t⟩ ∘ T_β
//! t^N_{kj} · X = Σ_p μ_l(T_α ⟨X, t^N_{kp}⟩𝟏) t^N_{pj}      ⟨Y, t·X⟩ = T_α ∘ ⟨XY, t⟩
//! ```

use num_complex::Complex64 as C64;

use super::matrix::{pair_gen_matrix, pair_word_matrix, MatrixElementIndex};
use super::token::{Kind, Token, Word};
use crate::diffop::{coeff, diffop_eq, sum, Coeff, DiffOp, EqOutcome};
use crate::elliptic::ModulusParams;
use crate::error::Result;

/// `μ_l(f) μ_r(g) t^N_{kj}(z)`; a missing factor is `1`.
#[derive(Clone)]
pub struct ComboTerm {
    pub k: i32,
    pub j: i32,
    pub left: Option<Coeff>,
    pub right: Option<Coeff>,
}

/// A finite combination of matrix elements of one corepresentation.
#[derive(Clone)]
pub struct MatrixElementCombo {
    pub n: i32,
    pub spectral: C64,
    pub terms: Vec<ComboTerm>,
}

impl std::fmt::Debug for MatrixElementCombo {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let idx: Vec<(i32, i32)> = self.terms.iter().map(|t| (t.k, t.j)).collect();
        f.debug_struct("MatrixElementCombo")
            .field("n", &self.n)
            .field("spectral", &self.spectral)
            .field("terms", &idx)
            .finish()
    }
}

impl MatrixElementCombo {
    pub fn single(t: &MatrixElementIndex) -> Self {
        Self {
            n: t.n,
            spectral: t.spectral,
            terms: vec![ComboTerm {
                k: t.k,
                j: t.j,
                left: None,
                right: None,
            }],
        }
    }

    fn index(&self, k: i32, j: i32) -> MatrixElementIndex {
        MatrixElementIndex {
            n: self.n,
            k,
            j,
            spectral: self.spectral,
        }
    }
}

/// Grade of a token in the co-opposite algebra.
pub fn cop_grade(kind: Kind) -> (i32, i32) {
    let (a, b) = kind.grade();
    (b, a)
}

fn coefficient(op: &DiffOp) -> Option<Coeff> {
    op.coefficient().cloned()
}

/// `X · t^N_{kj}`.
pub fn act_left(params: &ModulusParams, x: Token, t: &MatrixElementIndex) -> Result<MatrixElementCombo> {
    let mut terms = Vec::new();
    for p in 0..=t.n {
        let pairing = pair_gen_matrix(params, x, &t.with_indices(p, t.j))?;
        if let Some(f) = coefficient(&pairing) {
            terms.push(ComboTerm {
                k: t.k,
                j: p,
                left: None,
                right: Some(f),
            });
        }
    }
    Ok(MatrixElementCombo {
        n: t.n,
        spectral: t.spectral,
        terms,
    })
}

/// `t^N_{kj} · X`.
pub fn act_right(params: &ModulusParams, t: &MatrixElementIndex, x: Token) -> Result<MatrixElementCombo> {
    let (alpha, _) = cop_grade(x.kind);
    let mut terms = Vec::new();
    for p in 0..=t.n {
        let pairing = pair_gen_matrix(params, x, &t.with_indices(t.k, p))?;
        if let Some(f) = coefficient(&pairing) {
            let shifted = coeff(move |l| f(l + alpha as f64));
            terms.push(ComboTerm {
                k: p,
                j: t.j,
                left: Some(shifted),
                right: None,
            });
        }
    }
    Ok(MatrixElementCombo {
        n: t.n,
        spectral: t.spectral,
        terms,
    })
}

/// `⟨Y, Σ μ_l(f) μ_r(g) t_kj⟩ = Σ f ∘ ⟨Y, t_kj⟩ ∘ (T_{2j−N} g)`.
pub fn pair_word_combo(params: &ModulusParams, y: &Word, combo: &MatrixElementCombo) -> Result<DiffOp> {
    let mut terms = Vec::new();
    for term in &combo.terms {
        let base = pair_word_matrix(params, y, &combo.index(term.k, term.j))?;
        if base.is_zero() {
            continue;
        }
        let mut op = base;
        if let Some(f) = &term.left {
            op = op.mul_left(f);
        }
        if let Some(g) = &term.right {
            let g = g.clone();
            let right_weight = (2 * term.j - combo.n) as f64;
            op = op.mul_right(&coeff(move |l| g(l + right_weight)));
        }
        terms.push(op);
    }
    sum(terms)
}

/// Residual of `⟨Y, X·t⟩ = ⟨YX, t⟩ ∘ T_β`.
pub fn verify_weak_action(
    params: &ModulusParams,
    y: Token,
    x: Token,
    t: &MatrixElementIndex,
    samples: &[C64],
    tol: f64,
) -> Result<EqOutcome> {
    let lhs = pair_word_combo(params, &Word::new(vec![y]), &act_left(params, x, t)?)?;
    let (_, beta) = cop_grade(x.kind);
    let rhs = pair_word_matrix(params, &Word::new(vec![y, x]), t)?.compose(&DiffOp::shift_op(beta));
    Ok(diffop_eq(&lhs, &rhs, samples, tol))
}

/// Residual of `⟨Y, t·X⟩ = T_α ∘ ⟨XY, t⟩`.
pub fn verify_weak_action_right(
    params: &ModulusParams,
    y: Token,
    x: Token,
    t: &MatrixElementIndex,
    samples: &[C64],
    tol: f64,
) -> Result<EqOutcome> {
    let lhs = pair_word_combo(params, &Word::new(vec![y]), &act_right(params, t, x)?)?;
    let (alpha, _) = cop_grade(x.kind);
    let rhs = DiffOp::shift_op(alpha).compose(&pair_word_matrix(params, &Word::new(vec![x, y]), t)?);
    Ok(diffop_eq(&lhs, &rhs, samples, tol))
}
