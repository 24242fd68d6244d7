//! Closed form of the pairing between two matrix elements as a balanced
//! `₁₂V₁₁` series.
//!
//! With `n₀ = M−r−s`, `u = w/z` and `s+j = r+k`,
//!
//! ```text
//! ⟨t^M_{rs}(w), t^N_{kj}(z)⟩ = (−1)^{n₀} q^{n₀(2λ−2s+n₀+1)} · C_num / C_den
//!     · ₁₂V₁₁(a1; q^{−2r}, q^{−2s}, q^{2(λ−s+1)}, q^{2(λ+M+N−k−s−r+2)},
//!               q^{2(λ+M−k−s−r+1)}, q^{2(k−s)}/u, q^{2(M−N+k−s+1)}u) · T_{N+M−2s−2j}
//! ```
//!
//! with `a1 = q^{2(λ+M−2s−r+1)}` and
//!
//! ```text
//! C_num = (q^{2(λ+M−s−k−r+2)}u)_s (q^{2(N−k+s−r+1)})_r (q^{2(−λ−N+k+s)}u)_r
//!         (q^{2(k+s+r−λ−M)})_{n₀} (q^{2(s−k+1)}u)_{n₀}
//! C_den = (q²)_s (q^{2(λ+M−2s−r+2)})_s (q^{2(M−r−s+1)}u)_s (q^{−2(λ+M−2s)})_r
//!         (q^{2(M−r+1)}u)_r (q^{2(λ−s+1)})_{n₀} (q²u)_{n₀}
//! ```
//!
//! `n₀` may be negative. Two of the series' denominator factors,
//! `(q²a1/a8)_n = (q^{2(M−r−s+1)})_n` and `(q²a1/a10)_n = (q^{2(k−s+1)})_n`, can
//! vanish for admissible indices; they are merged with the compensating
//! `(q^{2(M−r−s+1)})_s (q^{2(k−s+1)})_s` into `(q^{2(M−r−s+1+n)})_{s−n}` and
//! `(q^{2(k−s+1+n)})_{s−n}` so that no `0·∞` is ever formed.

use num_complex::Complex64 as C64;

use super::matrix::MatrixElementIndex;
use crate::diffop::DiffOp;
use crate::ehs::VParams;
use crate::elliptic::ModulusParams;
use crate::error::{Error, Result};
use crate::rmatrix::POLE_TOL;

fn shift_of(x: &MatrixElementIndex, t: &MatrixElementIndex) -> i32 {
    t.n + x.n - 2 * x.j - 2 * t.j
}

fn admissible(x: &MatrixElementIndex, t: &MatrixElementIndex) -> bool {
    x.j + t.j == x.k + t.k
}

/// `a1` and the seven trailing parameters of the series at `λ`.
pub fn closed_form_vparams(
    params: &ModulusParams,
    x: &MatrixElementIndex,
    t: &MatrixElementIndex,
    lambda: C64,
) -> VParams {
    let (mm, r, s) = (x.n, x.k, x.j);
    let (n, k) = (t.n, t.k);
    let u = x.spectral / t.spectral;
    let lq = |c: i32| params.q2(lambda + c as f64);
    let a1 = lq(mm - 2 * s - r + 1);
    let trailing = vec![
        C64::from(params.q2i(-r)),
        C64::from(params.q2i(-s)),
        lq(1 - s),
        lq(mm + n - k - s - r + 2),
        lq(mm - k - s - r + 1),
        params.q2i(k - s) / u,
        params.q2i(mm - n + k - s + 1) * u,
    ];
    VParams::new(a1, trailing)
}

/// Shifted factorial that refuses to divide by a near-zero theta value.
fn den(params: &ModulusParams, a: C64, n: i32, what: &str) -> Result<C64> {
    let range: Vec<i32> = if n >= 0 { (0..n).collect() } else { (1..=-n).map(|i| -i).collect() };
    for i in range {
        let arg = a * params.q2i(i);
        let distance = params.zero_distance(arg);
        if distance < POLE_TOL {
            return Err(Error::PoleProximity {
                factor: what.into(),
                distance,
            });
        }
    }
    Ok(params.ell_shifted_factorial(a, n))
}

/// Coefficient of the closed form at `λ`; zero unless `s+j = r+k`.
pub fn closed_form_value(
    params: &ModulusParams,
    x: &MatrixElementIndex,
    t: &MatrixElementIndex,
    lambda: C64,
) -> Result<C64> {
    if !admissible(x, t) {
        return Ok(C64::new(0.0, 0.0));
    }
    let m = params;
    let (mm, r, s) = (x.n, x.k, x.j);
    let (n, k) = (t.n, t.k);
    let u = x.spectral / t.spectral;
    let n0 = mm - r - s;
    let lq = |c: i32| m.q2(lambda + c as f64);
    let nlq = |c: i32| m.q2(-(lambda + c as f64));
    let sf = |a: C64, len: i32| m.ell_shifted_factorial(a, len);
    let qf = |e: i32, len: i32| m.qpow_shifted_factorial(e, len);

    let sign = if n0.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    let pre = sign * m.q2((2.0 * lambda - 2.0 * s as f64 + (n0 + 1) as f64) * (n0 as f64 / 2.0));

    let c_num = sf(lq(mm - s - k - r + 2) * u, s)
        * qf(n - k + s - r + 1, r)
        * sf(nlq(n - k - s) * u, r)
        * sf(nlq(mm - k - s - r), n0)
        * sf(u * m.q2i(s - k + 1), n0);
    let c_den = qf(1, s)
        * den(m, lq(mm - 2 * s - r + 2), s, "(q^{2(λ+M−2s−r+2)})_s")?
        * den(m, u * m.q2i(mm - r - s + 1), s, "(q^{2(M−r−s+1)}w/z)_s")?
        * den(m, nlq(mm - 2 * s), r, "(q^{−2(λ+M−2s)})_r")?
        * den(m, u * m.q2i(mm - r + 1), r, "(q^{2(M−r+1)}w/z)_r")?
        * den(m, lq(1 - s), n0, "(q^{2(λ−s+1)})_{n₀}")?
        * den(m, u * m.q2i(1), n0, "(q²w/z)_{n₀}")?;

    let vp = closed_form_vparams(m, x, t, lambda);
    let a1 = vp.a1;
    let theta_a1 = m.th(a1);
    if m.zero_distance(a1) < POLE_TOL {
        return Err(Error::PoleProximity {
            factor: "θ(a1)".into(),
            distance: m.zero_distance(a1),
        });
    }
    let q2a1 = a1 * m.q2i(1);
    let mut series = C64::new(0.0, 0.0);
    for i in 0..=r.min(s) {
        let mut term = m.th(a1 * m.q2i(2 * i)) / theta_a1 * m.q2i(i) * sf(a1, i);
        for &a in &vp.trailing {
            term *= sf(a, i);
        }
        term /= qf(1, i);
        for (idx, &a) in vp.trailing.iter().enumerate() {
            if idx == 2 || idx == 4 {
                continue;
            }
            term /= den(m, q2a1 / a, i, "(q²a1/a_i)_n")?;
        }
        term *= qf(mm - r - s + 1 + i, s - i) * qf(k - s + 1 + i, s - i);
        series += term;
    }
    Ok(pre * c_num / c_den * series)
}

/// The closed form as a difference operator; poles evaluate to NaN.
pub fn pair_matrix_matrix_closed(
    params: &ModulusParams,
    x: &MatrixElementIndex,
    t: &MatrixElementIndex,
) -> DiffOp {
    if !admissible(x, t) {
        return DiffOp::zero();
    }
    let (m, x, t) = (*params, *x, *t);
    DiffOp::from_fn(
        move |l| closed_form_value(&m, &x, &t, l).unwrap_or(C64::new(f64::NAN, f64::NAN)),
        shift_of(&x, &t),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffop::{diffop_eq, rel_diff};
    use crate::ehs::balanced_residual;
    use crate::pairing::matrix::pair_matrix_matrix_oracle;
    use crate::rmatrix::weight_a;

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
    fn reduces_to_generator_pairings() {
        let m = ModulusParams::default();
        let (w, z) = (c(1.3, 0.2), c(0.8, -0.1));
        let aa = pair_matrix_matrix_closed(&m, &idx(1, 1, 1, w), &idx(1, 1, 1, z));
        assert_eq!(aa.shift(), -2);
        assert!(rel_diff(aa.eval(LAMBDAS[0]), c(1.0, 0.0)) < 1e-13);
        // t¹_{11} = α against t¹_{00} = δ
        let ad = pair_matrix_matrix_closed(&m, &idx(1, 1, 1, w), &idx(1, 0, 0, z));
        assert_eq!(ad.shift(), 0);
        for l in LAMBDAS {
            assert!(rel_diff(ad.eval(l), weight_a(&m, l, w / z)) < 1e-13);
        }
    }

    #[test]
    fn inadmissible_is_zero() {
        let m = ModulusParams::default();
        let r = pair_matrix_matrix_closed(&m, &idx(2, 0, 1, c(1.0, 0.1)), &idx(2, 0, 0, c(0.7, 0.0)));
        assert!(r.is_zero());
    }

    #[test]
    fn agrees_with_oracle_up_to_three() {
        let m = ModulusParams::default();
        let (w, z) = (c(1.3, 0.2), c(0.8, -0.1));
        for mm in 0..=3 {
            for n in 0..=3 {
                for r in 0..=mm {
                    for s in 0..=mm {
                        for k in 0..=n {
                            for j in 0..=n {
                                if s + j != r + k {
                                    continue;
                                }
                                let (x, t) = (idx(mm, r, s, w), idx(n, k, j, z));
                                let closed = pair_matrix_matrix_closed(&m, &x, &t);
                                let oracle = pair_matrix_matrix_oracle(&m, &x, &t).unwrap();
                                let out = diffop_eq(&closed, &oracle, &LAMBDAS, 1e-8);
                                assert!(out.equal, "M={mm} r={r} s={s} N={n} k={k} j={j}: {out:?}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn parameters_are_balanced() {
        let m = ModulusParams::default();
        let vp = closed_form_vparams(&m, &idx(3, 1, 2, c(1.3, 0.2)), &idx(2, 1, 0, c(0.8, -0.1)), LAMBDAS[1]);
        assert_eq!(vp.order(), 11);
        assert!(balanced_residual(&m, &vp) < 1e-12);
    }
}
