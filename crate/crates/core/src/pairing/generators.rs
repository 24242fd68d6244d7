//! Pairings between single generators, the determinant and its inverse.

use num_complex::Complex64 as C64;

use super::token::{Kind, Token};
use crate::diffop::DiffOp;
use crate::elliptic::ModulusParams;
use crate::error::{Error, Result};
use crate::rmatrix::{weight_a, weight_b, weight_c, weight_d};

/// `⟨L_ij(w), L_kl(z)⟩ = R^{jl}_{ik}(λ, w/z) T_{-ω(i)-ω(k)}`: the six nonzero
/// values are `⟨α,α⟩ = T₋₂`, `⟨α,δ⟩ = a`, `⟨β,γ⟩ = b`, `⟨γ,β⟩ = c`,
/// `⟨δ,α⟩ = d`, `⟨δ,δ⟩ = T₂`.
pub fn pair_generators(params: &ModulusParams, x: Token, a: Token) -> Result<DiffOp> {
    if x.kind == Kind::DetInv || a.kind == Kind::DetInv {
        return Err(Error::InvalidIndex(
            "pair_generators takes α, β, γ, δ only; use pair_det".into(),
        ));
    }
    Ok(pair_gen_unchecked(params, x, a))
}

fn pair_gen_unchecked(params: &ModulusParams, x: Token, a: Token) -> DiffOp {
    let m = *params;
    let u = x.spectral / a.spectral;
    match (x.kind, a.kind) {
        (Kind::Alpha, Kind::Alpha) => DiffOp::shift_op(-2),
        (Kind::Delta, Kind::Delta) => DiffOp::shift_op(2),
        (Kind::Alpha, Kind::Delta) => DiffOp::from_fn(move |l| weight_a(&m, l, u), 0),
        (Kind::Beta, Kind::Gamma) => DiffOp::from_fn(move |l| weight_b(&m, l, u), 0),
        (Kind::Gamma, Kind::Beta) => DiffOp::from_fn(move |l| weight_c(&m, l, u), 0),
        (Kind::Delta, Kind::Alpha) => DiffOp::from_fn(move |l| weight_d(&m, l, u), 0),
        _ => DiffOp::zero(),
    }
}

/// One side of a determinant pairing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DetArg {
    Gen(Token),
    Det(C64),
    DetInv(C64),
}

impl DetArg {
    fn spectral(&self) -> C64 {
        match *self {
            DetArg::Gen(t) => t.spectral,
            DetArg::Det(w) | DetArg::DetInv(w) => w,
        }
    }
}

/// Shift `T_{-ω(i)}` of a diagonal generator, `None` off the diagonal.
fn diagonal_shift(kind: Kind) -> Option<i32> {
    match kind {
        Kind::Alpha => Some(-1),
        Kind::Delta => Some(1),
        _ => None,
    }
}

/// Pairings involving `det` or `det⁻¹`:
///
/// ```text
/// ⟨L_ii(w), det(z)⟩   = q θ(q⁻²w/z)/θ(w/z)     T_{-ω(i)}
/// ⟨det(w), L_ii(z)⟩   = q θ(w/z)/θ(q²w/z)      T_{-ω(i)}
/// ⟨L_ii(w), det⁻¹(z)⟩ = q⁻¹ θ(w/z)/θ(q⁻²w/z)   T_{-ω(i)}
/// ⟨det⁻¹(w), L_ii(z)⟩ = q⁻¹ θ(q²w/z)/θ(w/z)    T_{-ω(i)}
/// ⟨det⁻¹(w), det⁻¹(z)⟩ = ⟨det(w), det(z)⟩ = q² θ(q⁻²w/z)/θ(q²w/z) T_0
/// ⟨det(w), det⁻¹(z)⟩ = ⟨det⁻¹(w), det(z)⟩ = q⁻² θ(q²w/z)/θ(q⁻²w/z) T_0
/// ```
///
/// Off-diagonal generators pair to zero. The last two lines follow from
/// `det` and `det⁻¹` being group-like and mutually inverse.
pub fn pair_det(params: &ModulusParams, x: DetArg, a: DetArg) -> Result<DiffOp> {
    let m = *params;
    let u = x.spectral() / a.spectral();
    let q = m.q();
    let q2 = m.q2i(1);
    let th = move |v: C64| m.th(v);
    Ok(match (x, a) {
        (DetArg::Gen(g), DetArg::Gen(h)) => pair_gen_unchecked(params, g, h),
        (DetArg::Gen(g), DetArg::Det(_)) => match diagonal_shift(g.kind) {
            Some(s) => op(s, move || q * th(u / q2) / th(u)),
            None => DiffOp::zero(),
        },
        (DetArg::Det(_), DetArg::Gen(h)) => match diagonal_shift(h.kind) {
            Some(s) => op(s, move || q * th(u) / th(u * q2)),
            None => DiffOp::zero(),
        },
        (DetArg::Gen(g), DetArg::DetInv(_)) => match diagonal_shift(g.kind) {
            Some(s) => op(s, move || th(u) / (q * th(u / q2))),
            None => DiffOp::zero(),
        },
        (DetArg::DetInv(_), DetArg::Gen(h)) => match diagonal_shift(h.kind) {
            Some(s) => op(s, move || th(u * q2) / (q * th(u))),
            None => DiffOp::zero(),
        },
        (DetArg::DetInv(_), DetArg::DetInv(_)) | (DetArg::Det(_), DetArg::Det(_)) => {
            op(0, move || q2 * th(u / q2) / th(u * q2))
        }
        (DetArg::Det(_), DetArg::DetInv(_)) | (DetArg::DetInv(_), DetArg::Det(_)) => {
            op(0, move || th(u * q2) / (q2 * th(u / q2)))
        }
    })
}

fn op<F>(shift: i32, f: F) -> DiffOp
where
    F: Fn() -> C64 + Send + Sync + 'static,
{
    DiffOp::from_fn(move |_| f(), shift)
}

/// Pairing of two tokens (generators or `det⁻¹`): the base case of the
/// convolution engine.
pub fn pair_tokens(params: &ModulusParams, x: Token, a: Token) -> DiffOp {
    let arg = |t: Token| match t.kind {
        Kind::DetInv => DetArg::DetInv(t.spectral),
        _ => DetArg::Gen(t),
    };
    pair_det(params, arg(x), arg(a)).expect("token pairings are total")
}

/// Counit `ε(L_ij) = δ_ij T_{-ω(i)}`, `ε(det⁻¹) = T_0`.
pub fn counit_token(t: Token) -> DiffOp {
    match t.kind {
        Kind::Alpha => DiffOp::shift_op(-1),
        Kind::Delta => DiffOp::shift_op(1),
        Kind::DetInv => DiffOp::identity(),
        Kind::Beta | Kind::Gamma => DiffOp::zero(),
    }
}

/// Counit of a product of tokens.
pub fn counit_word(tokens: &[Token]) -> DiffOp {
    tokens
        .iter()
        .fold(DiffOp::identity(), |acc, &t| acc.compose(&counit_token(t)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffop::rel_diff;
    use crate::rmatrix::elliptic_r;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn generator_table_matches_r_matrix() {
        let m = ModulusParams::default();
        let (w, z) = (c(1.3, 0.2), c(0.8, -0.1));
        let lambda = c(0.37, 0.1);
        let r = elliptic_r(&m, lambda, w / z).unwrap();
        for x in Kind::GENERATORS {
            for a in Kind::GENERATORS {
                let (i, j) = x.indices().unwrap();
                let (k, l) = a.indices().unwrap();
                let expect = r.entry(j, l, i, k);
                let got = pair_generators(&m, Token::new(x, w), Token::new(a, z)).unwrap();
                if expect.norm() == 0.0 {
                    assert!(got.is_zero(), "{x:?} {a:?}");
                } else {
                    assert_eq!(got.shift(), -i - k);
                    assert!(rel_diff(got.eval(lambda), expect) < 1e-15);
                }
            }
        }
    }

    #[test]
    fn generator_examples() {
        let m = ModulusParams::new(0.1, 0.5).unwrap();
        let aa = pair_generators(&m, Token::alpha(c(1.0, 0.0)), Token::alpha(c(2.0, 0.0))).unwrap();
        assert_eq!(aa.shift(), -2);
        assert_eq!(aa.eval(c(0.3, 0.0)), c(1.0, 0.0));
        assert!(pair_generators(&m, Token::alpha(c(1.0, 0.0)), Token::beta(c(2.0, 0.0)))
            .unwrap()
            .is_zero());
        let bg = pair_generators(&m, Token::beta(c(0.6, 0.0)), Token::gamma(c(1.0, 0.0))).unwrap();
        let expect = weight_b(&m, c(0.4, 0.0), c(0.6, 0.0));
        assert_eq!(bg.shift(), 0);
        assert!(rel_diff(bg.eval(c(0.4, 0.0)), expect) < 1e-15);
        assert!(pair_generators(&m, Token::det_inv(c(1.0, 0.0)), Token::alpha(c(1.0, 0.0))).is_err());
    }

    #[test]
    fn det_examples() {
        let m = ModulusParams::default();
        let (w, z) = (c(1.3, 0.2), c(0.8, -0.1));
        let u = w / z;
        let q = m.q();
        let l = c(0.5, 0.0);
        let d = pair_det(&m, DetArg::Gen(Token::delta(w)), DetArg::DetInv(z)).unwrap();
        assert_eq!(d.shift(), 1);
        assert!(rel_diff(d.eval(l), m.th(u) / (q * m.th(u / (q * q)))) < 1e-15);
        let a = pair_det(&m, DetArg::DetInv(w), DetArg::Gen(Token::alpha(z))).unwrap();
        assert_eq!(a.shift(), -1);
        assert!(rel_diff(a.eval(l), m.th(u * q * q) / (q * m.th(u))) < 1e-15);
        assert!(pair_det(&m, DetArg::Gen(Token::beta(w)), DetArg::DetInv(z)).unwrap().is_zero());
    }

    #[test]
    fn counits() {
        let t = counit_word(&[Token::alpha(c(1.0, 0.0)), Token::alpha(c(2.0, 0.0)), Token::delta(c(1.0, 0.0))]);
        assert_eq!(t.shift(), -1);
        assert!(counit_word(&[Token::beta(c(1.0, 0.0))]).is_zero());
        assert_eq!(counit_word(&[]).shift(), 0);
    }
}
