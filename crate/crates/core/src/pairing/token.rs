use num_complex::Complex64 as C64;

use crate::diffop::Coeff;

/// The generators `α = L₁₁`, `β = L₁,₋₁`, `γ = L₋₁,₁`, `δ = L₋₁,₋₁` and the
/// inverse determinant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Alpha,
    Beta,
    Gamma,
    Delta,
    DetInv,
}

impl Kind {
    pub const GENERATORS: [Kind; 4] = [Kind::Alpha, Kind::Beta, Kind::Gamma, Kind::Delta];
    pub const ALL: [Kind; 5] = [Kind::Alpha, Kind::Beta, Kind::Gamma, Kind::Delta, Kind::DetInv];

    /// Matrix indices `(i, j)` of `L_ij`; `None` for the inverse determinant.
    pub fn indices(self) -> Option<(i32, i32)> {
        match self {
            Kind::Alpha => Some((1, 1)),
            Kind::Beta => Some((1, -1)),
            Kind::Gamma => Some((-1, 1)),
            Kind::Delta => Some((-1, -1)),
            Kind::DetInv => None,
        }
    }

    pub fn from_indices(i: i32, j: i32) -> Kind {
        match (i, j) {
            (1, 1) => Kind::Alpha,
            (1, -1) => Kind::Beta,
            (-1, 1) => Kind::Gamma,
            (-1, -1) => Kind::Delta,
            _ => panic!("generator indices are ±1, got ({i}, {j})"),
        }
    }

    /// Bigrade in `E`: `L_ij ∈ E_{ω(i), ω(j)}`, `det⁻¹ ∈ E_{0,0}`.
    pub fn grade(self) -> (i32, i32) {
        self.indices().unwrap_or((0, 0))
    }

    pub fn name(self) -> &'static str {
        match self {
            Kind::Alpha => "alpha",
            Kind::Beta => "beta",
            Kind::Gamma => "gamma",
            Kind::Delta => "delta",
            Kind::DetInv => "det_inv",
        }
    }

    pub fn parse(s: &str) -> Option<Kind> {
        match s {
            "alpha" | "a" | "α" => Some(Kind::Alpha),
            "beta" | "b" | "β" => Some(Kind::Beta),
            "gamma" | "c" | "γ" => Some(Kind::Gamma),
            "delta" | "d" | "δ" => Some(Kind::Delta),
            "det_inv" | "detinv" => Some(Kind::DetInv),
            _ => None,
        }
    }
}

/// A generator with its spectral parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Token {
    pub kind: Kind,
    pub spectral: C64,
}

impl Token {
    pub fn new(kind: Kind, spectral: C64) -> Self {
        Self { kind, spectral }
    }

    pub fn gen(i: i32, j: i32, spectral: C64) -> Self {
        Self::new(Kind::from_indices(i, j), spectral)
    }

    pub fn alpha(w: C64) -> Self {
        Self::new(Kind::Alpha, w)
    }

    pub fn beta(w: C64) -> Self {
        Self::new(Kind::Beta, w)
    }

    pub fn gamma(w: C64) -> Self {
        Self::new(Kind::Gamma, w)
    }

    pub fn delta(w: C64) -> Self {
        Self::new(Kind::Delta, w)
    }

    pub fn det_inv(w: C64) -> Self {
        Self::new(Kind::DetInv, w)
    }

    pub fn grade(&self) -> (i32, i32) {
        self.kind.grade()
    }
}

/// Componentwise sum of token bigrades.
pub fn word_grade(tokens: &[Token]) -> (i32, i32) {
    tokens.iter().fold((0, 0), |(a, b), t| {
        let (x, y) = t.grade();
        (a + x, b + y)
    })
}

/// An ordered product of tokens in `E`, optionally preceded by a right
/// moment-map factor `μ_r^E(g)`.
#[derive(Clone, Default)]
pub struct Word {
    pub tokens: Vec<Token>,
    pub prefactor_right: Option<Coeff>,
}

impl Word {
    pub fn new(tokens: Vec<Token>) -> Self {
        Self {
            tokens,
            prefactor_right: None,
        }
    }

    pub fn with_prefactor(tokens: Vec<Token>, g: Coeff) -> Self {
        Self {
            tokens,
            prefactor_right: Some(g),
        }
    }

    pub fn grade(&self) -> (i32, i32) {
        word_grade(&self.tokens)
    }
}

impl std::fmt::Debug for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Word")
            .field("tokens", &self.tokens)
            .field("prefactor_right", &self.prefactor_right.is_some())
            .finish()
    }
}
