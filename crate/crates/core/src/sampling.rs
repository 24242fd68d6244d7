//! Seeded random draws for the verification campaigns, with rejection of
//! points that land near a pole of the formulas under test.

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::elliptic::ModulusParams;
use crate::error::{Error, Result};

/// Range of integer shifts `n` in `q^{2(±λ+n)}` covered by the guard.
pub const GUARD_SHIFTS: i32 = 12;
/// Minimal distance of a guarded quantity from the theta zero set.
pub const GUARD_DISTANCE: f64 = 1e-3;
/// Draw attempts per sample before giving up.
const MAX_ATTEMPTS: usize = 64;

/// Independent stream for a check: FNV-1a over the check id, mixed into the
/// campaign seed.
pub fn stream(seed: u64, check_id: &str) -> ChaCha8Rng {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in check_id.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(seed ^ h.rotate_left(17))
}

/// Whether every factor `θ(q^{2(ελ+n)} u^δ)` with `ε, δ ∈ {−1, 0, 1}`,
/// `(ε, δ) ≠ (0, 0)` and `|n| ≤ 12` stays away from zero, for each of the
/// given ratios `u`.
pub fn pole_free(params: &ModulusParams, lambda: C64, ratios: &[C64]) -> bool {
    let mut bases: Vec<C64> = vec![params.q2(lambda), params.q2(-lambda)];
    for &u in ratios {
        bases.push(u);
        bases.push(1.0 / u);
        for eps in [lambda, -lambda] {
            let l = params.q2(eps);
            bases.push(l * u);
            bases.push(l / u);
        }
    }
    (-GUARD_SHIFTS..=GUARD_SHIFTS).all(|n| {
        let s = params.q2i(n);
        bases
            .iter()
            .all(|&b| params.zero_distance(b * s) >= GUARD_DISTANCE)
    })
}

/// A seeded sampler that counts how often it had to redraw.
pub struct Sampler {
    check: String,
    params: ModulusParams,
    rng: ChaCha8Rng,
    drawn: usize,
    resampled: usize,
}

impl Sampler {
    pub fn new(seed: u64, check: &str, params: ModulusParams) -> Self {
        Self {
            check: check.to_string(),
            params,
            rng: stream(seed, check),
            drawn: 0,
            resampled: 0,
        }
    }

    pub fn params(&self) -> &ModulusParams {
        &self.params
    }

    pub fn resampled(&self) -> usize {
        self.resampled
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.gen_range(lo..hi)
    }

    /// `λ` with real part in `[0.1, 0.9]` and imaginary part in `[−0.3, 0.3]`.
    fn raw_lambda(&mut self) -> C64 {
        C64::new(self.uniform(0.1, 0.9), self.uniform(-0.3, 0.3))
    }

    fn raw_real_lambda(&mut self) -> C64 {
        C64::new(self.uniform(0.1, 0.9), 0.0)
    }

    /// A point with modulus in `[0.6, 1.7]` and uniform phase.
    fn raw_spectral(&mut self) -> C64 {
        C64::from_polar(self.uniform(0.6, 1.7), self.uniform(0.0, std::f64::consts::TAU))
    }

    fn raw_unimodular(&mut self) -> C64 {
        C64::from_polar(1.0, self.uniform(0.0, std::f64::consts::TAU))
    }

    /// A uniform point in the annulus `√p ≤ |z| < 1/√p`.
    pub fn annulus_point(&mut self) -> C64 {
        let sp = self.params.p().sqrt().ln();
        let r = self.uniform(sp, -sp).exp();
        C64::from_polar(r, self.uniform(0.0, std::f64::consts::TAU))
    }

    /// Redraws until `accept` holds, counting redraws.
    pub fn draw_until<T>(
        &mut self,
        mut draw: impl FnMut(&mut Self) -> T,
        accept: impl Fn(&ModulusParams, &T) -> bool,
    ) -> Result<T> {
        for _ in 0..MAX_ATTEMPTS {
            self.drawn += 1;
            let v = draw(self);
            if accept(&self.params, &v) {
                return Ok(v);
            }
            self.resampled += 1;
        }
        self.budget()?;
        Err(self.budget_error())
    }

    /// `(λ, spectral parameters)` with all pairwise ratios `|w_i/w_j|` in
    /// `[0.3, 3]` and clear of the guarded poles.
    pub fn point(&mut self, spectral: usize, real_unimodular: bool) -> Result<(C64, Vec<C64>)> {
        self.draw_until(
            |s| {
                let lambda = if real_unimodular {
                    s.raw_real_lambda()
                } else {
                    s.raw_lambda()
                };
                let zs: Vec<C64> = (0..spectral)
                    .map(|_| {
                        if real_unimodular {
                            s.raw_unimodular()
                        } else {
                            s.raw_spectral()
                        }
                    })
                    .collect();
                (lambda, zs)
            },
            |m, (lambda, zs)| {
                let mut ratios = Vec::new();
                for i in 0..zs.len() {
                    for j in 0..i {
                        ratios.push(zs[i] / zs[j]);
                    }
                }
                ratios.iter().all(|u| (0.3..=3.0).contains(&u.norm()))
                    && pole_free(m, *lambda, &ratios)
            },
        )
    }

    /// Just `λ`, pole-guarded.
    pub fn lambda(&mut self) -> Result<C64> {
        Ok(self.point(0, false)?.0)
    }

    fn budget_error(&self) -> Error {
        Error::ResampleBudget {
            check: self.check.clone(),
            resampled: self.resampled,
            drawn: self.drawn,
        }
    }

    /// Fails once more than half of all draws had to be redrawn.
    pub fn budget(&self) -> Result<()> {
        if self.drawn > 0 && 2 * self.resampled > self.drawn {
            Err(self.budget_error())
        } else {
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_deterministic_and_distinct() {
        let a: Vec<u64> = (0..4).map({
            let mut r = stream(7, "theta");
            move |_| r.gen()
        }).collect();
        let b: Vec<u64> = (0..4).map({
            let mut r = stream(7, "theta");
            move |_| r.gen()
        }).collect();
        let c: Vec<u64> = (0..4).map({
            let mut r = stream(7, "qdybe");
            move |_| r.gen()
        }).collect();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn guard_rejects_poles() {
        let m = ModulusParams::default();
        // q^{2(λ+1)} = p  ⇔  λ = ln p / (2 ln q) − 1
        let lambda = C64::from(m.p().ln() / (2.0 * m.q().ln()) - 1.0);
        assert!(!pole_free(&m, lambda, &[]));
        assert!(pole_free(&m, C64::new(0.4, 0.1), &[C64::new(1.1, 0.3)]));
        assert!(!pole_free(&m, C64::new(0.4, 0.1), &[C64::from(m.q2i(-3))]));
    }

    #[test]
    fn points_respect_domain() {
        let mut s = Sampler::new(3, "x", ModulusParams::default());
        for _ in 0..20 {
            let (l, zs) = s.point(3, false).unwrap();
            assert!((0.1..0.9).contains(&l.re));
            assert!(l.im.abs() <= 0.3);
            assert!((zs[0] / zs[1]).norm() <= 3.0);
        }
        let (l, zs) = s.point(2, true).unwrap();
        assert_eq!(l.im, 0.0);
        assert!((zs[0].norm() - 1.0).abs() < 1e-15);
        s.budget().unwrap();
    }

    #[test]
    fn annulus_points_stay_inside() {
        let mut s = Sampler::new(1, "a", ModulusParams::new(0.3, 0.4).unwrap());
        for _ in 0..50 {
            let z = s.annulus_point();
            assert!(z.norm() >= 0.3f64.sqrt() - 1e-12 && z.norm() < 1.0 / 0.3f64.sqrt());
        }
    }
}
