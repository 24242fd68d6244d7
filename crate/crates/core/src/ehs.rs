//! Terminating very-well-poised elliptic hypergeometric series in base `q²`
//! with argument specialised to 1:
//!
//! ```text
//! r+1V_r(a1; a6, …, a_{r+1}) = Σ_n θ(a1 q^{4n})/θ(a1) · q^{2n}
//!     · (a1, a6, …, a_{r+1})_n / (q², q²a1/a6, …, q²a1/a_{r+1})_n
//! ```

use num_complex::Complex64 as C64;

use crate::elliptic::ModulusParams;
use crate::error::{Error, Result};

/// Largest termination index searched for.
pub const MAX_TERMINATION: u32 = 64;
/// Tolerance for recognising a parameter as `q^{-2m}`.
pub const TERMINATION_TOL: f64 = 1e-10;
/// Denominator factors closer than this to a theta zero are rejected.
pub const DENOMINATOR_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct VParams {
    pub a1: C64,
    /// `a6, …, a_{r+1}`.
    pub trailing: Vec<C64>,
}

impl VParams {
    pub fn new(a1: C64, trailing: Vec<C64>) -> Self {
        Self { a1, trailing }
    }

    /// The `r` in `r+1V_r`.
    pub fn order(&self) -> usize {
        self.trailing.len() + 4
    }
}

/// Smallest `m ≤ 64` with some trailing parameter equal to `q^{-2m}`.
pub fn termination_index(params: &ModulusParams, vp: &VParams) -> Option<u32> {
    (0..=MAX_TERMINATION).find(|&m| {
        let qm = params.q2i(m as i32);
        vp.trailing
            .iter()
            .any(|&a| (a * qm - 1.0).norm() < TERMINATION_TOL)
    })
}

/// Sum of the terminating series.
pub fn v_series(params: &ModulusParams, vp: &VParams) -> Result<C64> {
    let n_max = termination_index(params, vp).ok_or(Error::NonTerminating {
        max_m: MAX_TERMINATION,
    })?;
    let q2 = params.q2i(1);
    let a1 = vp.a1;
    let theta_a1 = params.th(a1);
    if params.zero_distance(a1) < DENOMINATOR_TOL {
        return Err(Error::PoleProximity {
            factor: "θ(a1)".into(),
            distance: params.zero_distance(a1),
        });
    }
    let ratios: Vec<C64> = vp.trailing.iter().map(|&a| a1 * q2 / a).collect();

    let mut sum = C64::new(1.0, 0.0);
    // running (a1, a6, …)_n / (q², q²a1/a6, …)_n
    let mut poch = C64::new(1.0, 0.0);
    for n in 1..=n_max as i32 {
        let shift = params.q2i(n - 1);
        let mut num = params.th(a1 * shift);
        for &a in &vp.trailing {
            num *= params.th(a * shift);
        }
        if num == C64::new(0.0, 0.0) {
            break;
        }
        let mut den = params.th(C64::from(q2 * shift));
        for &b in &ratios {
            let arg = b * shift;
            let distance = params.zero_distance(arg);
            if distance < DENOMINATOR_TOL {
                return Err(Error::PoleProximity {
                    factor: format!("θ(q²a1/a_i · q^{{2·{}}})", n - 1),
                    distance,
                });
            }
            den *= params.th(arg);
        }
        poch *= num / den;
        let well_poised = params.th(a1 * params.q2i(2 * n)) / theta_a1;
        sum += well_poised * params.q2i(n) * poch;
    }
    Ok(sum)
}

/// Relative deviation from the balancing condition
/// `(a6 ⋯ a_{r+1})² q⁴ = (a1 q²)^{r-5}`.
pub fn balanced_residual(params: &ModulusParams, vp: &VParams) -> f64 {
    let prod: C64 = vp.trailing.iter().product();
    let lhs = prod * prod * params.q2i(2);
    let rhs = (vp.a1 * params.q2i(1)).powi(vp.order() as i32 - 5);
    let scale = lhs.norm().max(rhs.norm());
    if scale == 0.0 {
        0.0
    } else {
        (lhs - rhs).norm() / scale
    }
}
