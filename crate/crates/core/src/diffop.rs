//! Difference operators `f(λ)·T_s` acting on meromorphic functions of `λ`,
//! where `(T_s g)(λ) = g(λ + s)`.
//!
//! Coefficients are opaque evaluation closures; equality is decided by
//! sampling (see [`diffop_eq`]).

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// A coefficient function `λ ↦ f(λ)`.
pub type Coeff = Arc<dyn Fn(C64) -> C64 + Send + Sync>;

/// Magnitude below which a coefficient value counts as zero.
pub const ZERO_TOL: f64 = 1e-12;

/// Wraps a closure as a [`Coeff`].
pub fn coeff<F>(f: F) -> Coeff
where
    F: Fn(C64) -> C64 + Send + Sync + 'static,
{
    Arc::new(f)
}

/// The constant coefficient `c`.
pub fn constant(c: C64) -> Coeff {
    Arc::new(move |_| c)
}

/// `f·T_shift`, or the zero operator.
#[derive(Clone)]
pub struct DiffOp {
    coeff: Option<Coeff>,
    shift: i32,
}

impl DiffOp {
    pub fn new(coeff: Coeff, shift: i32) -> Self {
        Self {
            coeff: Some(coeff),
            shift,
        }
    }

    pub fn from_fn<F>(f: F, shift: i32) -> Self
    where
        F: Fn(C64) -> C64 + Send + Sync + 'static,
    {
        Self::new(Arc::new(f), shift)
    }

    pub fn zero() -> Self {
        Self {
            coeff: None,
            shift: 0,
        }
    }

    pub fn identity() -> Self {
        Self::shift_op(0)
    }

    /// The pure shift `T_s`.
    pub fn shift_op(s: i32) -> Self {
        Self::new(constant(C64::new(1.0, 0.0)), s)
    }

    /// Multiplication by `f`, i.e. `f·T_0`.
    pub fn mul(f: Coeff) -> Self {
        Self::new(f, 0)
    }

    /// True only for the structural zero (not for numerically vanishing
    /// coefficients).
    pub fn is_zero(&self) -> bool {
        self.coeff.is_none()
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    pub fn coefficient(&self) -> Option<&Coeff> {
        self.coeff.as_ref()
    }

    /// Coefficient value at `λ` (zero for the zero operator).
    pub fn eval(&self, lambda: C64) -> C64 {
        match &self.coeff {
            Some(f) => f(lambda),
            None => C64::new(0.0, 0.0),
        }
    }

    /// `(f T_a) ∘ (g T_b) = f(λ) g(λ+a) T_{a+b}`.
    pub fn compose(&self, other: &DiffOp) -> DiffOp {
        let (Some(f), Some(g)) = (&self.coeff, &other.coeff) else {
            return DiffOp::zero();
        };
        let (f, g, a) = (f.clone(), g.clone(), self.shift);
        DiffOp::from_fn(
            move |l| {
                let fl = f(l);
                if fl == C64::new(0.0, 0.0) {
                    return fl;
                }
                fl * g(l + a as f64)
            },
            self.shift + other.shift,
        )
    }

    /// `g ∘ self`, for a multiplication operator `g`.
    pub fn mul_left(&self, g: &Coeff) -> DiffOp {
        DiffOp::mul(g.clone()).compose(self)
    }

    /// `self ∘ g`, for a multiplication operator `g`.
    pub fn mul_right(&self, g: &Coeff) -> DiffOp {
        self.compose(&DiffOp::mul(g.clone()))
    }

    pub fn scale(&self, c: C64) -> DiffOp {
        match &self.coeff {
            None => DiffOp::zero(),
            Some(f) => {
                let f = f.clone();
                DiffOp::from_fn(move |l| c * f(l), self.shift)
            }
        }
    }

    /// Sum of two operators with the same shift; the zero operator is
    /// neutral for any shift.
    pub fn add(&self, other: &DiffOp) -> Result<DiffOp> {
        match (&self.coeff, &other.coeff) {
            (None, _) => Ok(other.clone()),
            (_, None) => Ok(self.clone()),
            (Some(f), Some(g)) => {
                if self.shift != other.shift {
                    return Err(Error::ShiftMismatch {
                        left: self.shift,
                        right: other.shift,
                    });
                }
                let (f, g) = (f.clone(), g.clone());
                Ok(DiffOp::from_fn(move |l| f(l) + g(l), self.shift))
            }
        }
    }

    /// `S(f T_a) = T_{-a} ∘ f = f(λ-a) T_{-a}`.
    pub fn antipode(&self) -> DiffOp {
        match &self.coeff {
            None => DiffOp::zero(),
            Some(f) => {
                let (f, a) = (f.clone(), self.shift as f64);
                DiffOp::from_fn(move |l| f(l - a), -self.shift)
            }
        }
    }

    /// `(f T_a)^* = T_{-a} ∘ f̄ = conj(f(conj(λ) - a)) T_{-a}`.
    pub fn star(&self) -> DiffOp {
        match &self.coeff {
            None => DiffOp::zero(),
            Some(f) => {
                let (f, a) = (f.clone(), self.shift as f64);
                DiffOp::from_fn(move |l| f(l.conj() - a).conj(), -self.shift)
            }
        }
    }

    /// The function `D𝟏`; since `T_s 𝟏 = 𝟏` this is the coefficient.
    pub fn apply_to_one(&self) -> Coeff {
        match &self.coeff {
            None => constant(C64::new(0.0, 0.0)),
            Some(f) => f.clone(),
        }
    }
}

impl fmt::Debug for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.coeff {
            None => write!(f, "DiffOp(0)"),
            Some(_) => write!(f, "DiffOp(f·T_{})", self.shift),
        }
    }
}

/// Sum of a list of operators, skipping structural zeros.
pub fn sum(ops: impl IntoIterator<Item = DiffOp>) -> Result<DiffOp> {
    ops.into_iter().try_fold(DiffOp::zero(), |acc, op| acc.add(&op))
}

/// Outcome of a sampled comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct EqOutcome {
    pub equal: bool,
    pub max_residual: f64,
    /// First sample at which the residual exceeded the tolerance.
    pub failed_sample: Option<C64>,
}

/// Relative difference of two values; both tiny counts as agreement.
pub fn rel_diff(a: C64, b: C64) -> f64 {
    let scale = a.norm().max(b.norm());
    if scale < ZERO_TOL {
        0.0
    } else {
        (a - b).norm() / scale
    }
}

/// Compares two operators at the given samples. Operators whose
/// coefficients vanish numerically everywhere are equal regardless of
/// shift; otherwise the shifts must agree and the maximal relative
/// coefficient difference must stay below `tol`.
pub fn diffop_eq(a: &DiffOp, b: &DiffOp, samples: &[C64], tol: f64) -> EqOutcome {
    let va: Vec<C64> = samples.iter().map(|&l| a.eval(l)).collect();
    let vb: Vec<C64> = samples.iter().map(|&l| b.eval(l)).collect();
    let vanishes = |v: &[C64]| v.iter().all(|x| x.norm() < ZERO_TOL);
    let (za, zb) = (vanishes(&va), vanishes(&vb));
    if za && zb {
        return EqOutcome {
            equal: true,
            max_residual: 0.0,
            failed_sample: None,
        };
    }
    if !za && !zb && a.shift != b.shift {
        return EqOutcome {
            equal: false,
            max_residual: f64::INFINITY,
            failed_sample: samples.first().copied(),
        };
    }
    let mut max_residual: f64 = 0.0;
    let mut failed_sample = None;
    for ((&l, &x), &y) in samples.iter().zip(&va).zip(&vb) {
        let r = rel_diff(x, y);
        if (r.is_nan() || r >= tol) && failed_sample.is_none() {
            failed_sample = Some(l);
        }
        max_residual = max_residual.max(if r.is_nan() { f64::INFINITY } else { r });
    }
    EqOutcome {
        equal: failed_sample.is_none(),
        max_residual,
        failed_sample,
    }
}
