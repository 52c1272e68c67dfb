//! Claim identifiers, default grids and seeded sampling of admissible
//! parameter sets for the randomized suites.

use std::fmt;
use std::str::FromStr;

use rand::distributions::{Distribution, Uniform};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::checks::{
    check_coefficient_logconvexity, check_confluent_sequence, check_midpoint_direction,
    check_ratio_monotone_in_k, check_ratio_monotone_in_order, check_ratio_with_confluent,
    check_sequence_ratio_direction, CheckOptions, ConfluentVariant, DEFAULT_N_MAX,
};
use super::grid::GridSpec;
use super::report::{Direction, InequalityReport};
use crate::error::{Error, Result};
use crate::series::KBesselShape;

/// Deltas used by the log-convexity suite.
pub const TURAN_DELTAS: [f64; 3] = [0.25, 0.5, 1.0];
/// Number of ν points in the default log-convexity grid.
pub const TURAN_GRID_COUNT: usize = 50;
/// Upper index for the coefficient log-convexity check.
pub const COEFFICIENT_N_MAX: usize = 20;

const MAX_DRAWS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Claim {
    #[serde(rename = "thm1")]
    Thm1,
    #[serde(rename = "thm2")]
    Thm2,
    #[serde(rename = "thm3-turan")]
    Thm3Turan,
    #[serde(rename = "thm4a")]
    Thm4a,
    #[serde(rename = "thm4b")]
    Thm4b,
    #[serde(rename = "thm4c")]
    Thm4c,
    #[serde(rename = "lemma-seq")]
    LemmaSeq,
}

impl Claim {
    pub const ALL: [Claim; 7] = [
        Claim::Thm1,
        Claim::Thm2,
        Claim::Thm3Turan,
        Claim::Thm4a,
        Claim::Thm4b,
        Claim::Thm4c,
        Claim::LemmaSeq,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Claim::Thm1 => "thm1",
            Claim::Thm2 => "thm2",
            Claim::Thm3Turan => "thm3-turan",
            Claim::Thm4a => "thm4a",
            Claim::Thm4b => "thm4b",
            Claim::Thm4c => "thm4c",
            Claim::LemmaSeq => "lemma-seq",
        }
    }

    /// Grid used when none is supplied. For `thm3-turan` this is a ν-grid
    /// and depends on δ; see [`turan_grid`].
    pub fn default_grid(self) -> Option<GridSpec> {
        let grid = match self {
            Claim::Thm1 | Claim::Thm2 | Claim::Thm4a => GridSpec::logarithmic(1e-3, 20.0, 200),
            Claim::Thm4b => GridSpec::logarithmic(1e-3, 0.999, 200),
            Claim::Thm4c => GridSpec::linear(1.0, 20.0, 200),
            Claim::Thm3Turan | Claim::LemmaSeq => return None,
        };
        Some(grid.expect("default grids are valid"))
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Claim {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Claim::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown claim {s:?}")))
    }
}

/// Default ν-grid for the midpoint check: linear on `(-1 + δ + 0.05, 5)`.
pub fn turan_grid(delta: f64) -> Result<GridSpec> {
    GridSpec::linear(-1.0 + delta + 0.05, 5.0, TURAN_GRID_COUNT)
}

/// One parameter set for one claim.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "claim")]
pub enum Case {
    #[serde(rename = "thm1")]
    Thm1 { shape: KBesselShape, mu: f64 },
    #[serde(rename = "thm2")]
    Thm2 { shape: KBesselShape, m: f64 },
    #[serde(rename = "thm3-turan")]
    Thm3Turan { k: f64, gamma: f64, lambda: f64, x: f64, delta: f64 },
    #[serde(rename = "thm4")]
    Thm4 { variant: ConfluentVariant, shape: KBesselShape },
    #[serde(rename = "lemma-seq")]
    LemmaSeq { p: KBesselShape, q: KBesselShape },
}

impl Case {
    pub fn claim(&self) -> Claim {
        match self {
            Case::Thm1 { .. } => Claim::Thm1,
            Case::Thm2 { .. } => Claim::Thm2,
            Case::Thm3Turan { .. } => Claim::Thm3Turan,
            Case::Thm4 { variant, .. } => match variant {
                ConfluentVariant::A { .. } => Claim::Thm4a,
                ConfluentVariant::B => Claim::Thm4b,
                ConfluentVariant::C => Claim::Thm4c,
            },
            Case::LemmaSeq { .. } => Claim::LemmaSeq,
        }
    }

    /// Runs the check on `grid` (or the claim's default grid).
    /// `thm3-turan` yields the midpoint report followed by the
    /// coefficient report; every other claim yields one report.
    pub fn run(&self, grid: Option<&GridSpec>, opts: &CheckOptions) -> Result<Vec<InequalityReport>> {
        let default = self.claim().default_grid();
        let ratio_grid = || grid.or(default.as_ref()).copied().expect("claim has a default grid");
        let report = match *self {
            Case::Thm1 { shape, mu } => check_ratio_monotone_in_order(&shape, mu, &ratio_grid(), opts)?,
            Case::Thm2 { shape, m } => check_ratio_monotone_in_k(&shape, m, &ratio_grid(), opts)?,
            Case::Thm4 { variant, shape } => check_ratio_with_confluent(variant, &shape, &ratio_grid(), opts)?,
            Case::LemmaSeq { p, q } => check_sequence_ratio_direction(&p, &q, DEFAULT_N_MAX, opts.direction)?,
            Case::Thm3Turan { k, gamma, lambda, x, delta } => {
                let nu_grid = match grid {
                    Some(g) => *g,
                    None => turan_grid(delta)?,
                };
                let tol = opts.turan_tol();
                let midpoint = check_midpoint_direction(k, gamma, lambda, x, &nu_grid, delta, opts)?;
                let coefficients =
                    check_coefficient_logconvexity(k, gamma, lambda, &nu_grid, delta, COEFFICIENT_N_MAX, tol)?;
                return Ok(vec![midpoint, coefficients]);
            }
        };
        Ok(vec![report])
    }

    /// The coefficient-sequence report matching a function-level ratio
    /// claim, oriented the same way as the function ratio.
    pub fn sequence_report(&self, claimed: Option<Direction>) -> Result<Option<InequalityReport>> {
        let report = match *self {
            Case::Thm1 { shape, mu } => {
                let p = KBesselShape { nu: mu, ..shape };
                check_sequence_ratio_direction(&p, &shape, DEFAULT_N_MAX, claimed)?
            }
            Case::Thm2 { shape, m } => {
                let q = KBesselShape { k: m, ..shape };
                check_sequence_ratio_direction(&shape, &q, DEFAULT_N_MAX, claimed)?
            }
            Case::Thm4 { variant, shape } => check_confluent_sequence(variant, &shape, DEFAULT_N_MAX, claimed)?,
            Case::LemmaSeq { p, q } => check_sequence_ratio_direction(&p, &q, DEFAULT_N_MAX, claimed)?,
            Case::Thm3Turan { .. } => return Ok(None),
        };
        Ok(Some(report))
    }
}

struct Draws {
    k: Uniform<f64>,
    shifted: Uniform<f64>,
    x: Uniform<f64>,
}

impl Draws {
    fn new() -> Self {
        Self {
            k: Uniform::new_inclusive(0.25, 4.0),
            shifted: Uniform::new_inclusive(0.1, 5.0),
            x: Uniform::new_inclusive(0.01, 20.0),
        }
    }

    fn shape<R: Rng>(&self, rng: &mut R) -> KBesselShape {
        let k = self.k.sample(rng);
        let lambda = self.k.sample(rng);
        let gamma = self.shifted.sample(rng);
        let nu = self.shifted.sample(rng) - 1.0;
        KBesselShape { k, nu, gamma, lambda }
    }

    fn case<R: Rng>(&self, claim: Claim, rng: &mut R) -> Option<Case> {
        let shape = self.shape(rng);
        let KBesselShape { k, nu, gamma, lambda } = shape;
        match claim {
            Claim::Thm1 => {
                let mu = self.shifted.sample(rng) - 1.0;
                (mu >= nu).then_some(Case::Thm1 { shape, mu })
            }
            Claim::Thm2 => {
                let m = self.k.sample(rng);
                (k >= lambda && lambda >= m && gamma >= nu + 1.0).then_some(Case::Thm2 { shape, m })
            }
            Claim::Thm3Turan => {
                let x = self.x.sample(rng);
                let delta = TURAN_DELTAS[rng.gen_range(0..TURAN_DELTAS.len())];
                Some(Case::Thm3Turan { k, gamma, lambda, x, delta })
            }
            Claim::Thm4a => {
                let a = self.shifted.sample(rng);
                let c = self.shifted.sample(rng);
                (a >= c && lambda >= k && gamma <= nu + 1.0).then_some(Case::Thm4 {
                    variant: ConfluentVariant::A { a, c },
                    shape,
                })
            }
            Claim::Thm4b => (k <= lambda && lambda <= nu + 1.0).then_some(Case::Thm4 {
                variant: ConfluentVariant::B,
                shape,
            }),
            Claim::Thm4c => (k <= lambda.min(nu + 1.0)).then_some(Case::Thm4 {
                variant: ConfluentVariant::C,
                shape,
            }),
            Claim::LemmaSeq => {
                let mu = self.shifted.sample(rng) - 1.0;
                (mu >= nu).then_some(Case::LemmaSeq {
                    p: KBesselShape { nu: mu, ..shape },
                    q: shape,
                })
            }
        }
    }
}

/// Draws `count` admissible parameter sets for `claim`, deterministically
/// from `seed`. Inadmissible draws are rejected and redrawn.
pub fn sample_cases(claim: Claim, count: usize, seed: u64) -> Result<Vec<Case>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draws = Draws::new();
    let mut cases = Vec::with_capacity(count);
    let mut attempts = 0;
    while cases.len() < count {
        attempts += 1;
        if attempts > MAX_DRAWS * count.max(1) {
            return Err(Error::Precondition(format!("could not draw admissible parameters for {claim}")));
        }
        if let Some(case) = draws.case(claim, &mut rng) {
            cases.push(case);
        }
    }
    Ok(cases)
}
