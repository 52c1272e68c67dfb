//! Grid checks for the monotonicity, log-convexity and ratio claims on the
//! modified k-Bessel function, and the coefficient-sequence checks that
//! drive them through the Biernacki–Krzyż lemma.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::grid::GridSpec;
use super::report::{Direction, Domain, InequalityReport, Violation, ViolationKind};
use crate::classical::ln_gamma;
use crate::error::{Error, Result};
use crate::kgamma::ln_gamma_k_unchecked;
use crate::series::{
    confluent_phi_k_with, ln_bessel_coefficient, ln_confluent_coefficient, modified_i_relative,
    EvalResult, KBesselShape, SeriesOptions, DEFAULT_MAX_TERMS, MAX_TOL, MIN_TOL,
};

/// Relative tolerance for ratio monotonicity.
pub const DEFAULT_RATIO_TOL: f64 = 1e-9;
/// Relative slack tolerance for the midpoint inequality.
pub const DEFAULT_TURAN_TOL: f64 = 1e-12;
/// Relative step tolerance for coefficient-ratio sequences.
pub const SEQUENCE_TOL: f64 = 1e-12;
/// Default sequence length.
pub const DEFAULT_N_MAX: usize = 100;

/// Tolerance and claimed direction for a check. `None` means the
/// claim's default.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CheckOptions {
    pub tol: Option<f64>,
    pub direction: Option<Direction>,
    pub max_terms: Option<usize>,
}

impl CheckOptions {
    pub fn with_tol(self, tol: f64) -> Self {
        Self { tol: Some(tol), ..self }
    }

    pub fn with_direction(self, direction: Direction) -> Self {
        Self {
            direction: Some(direction),
            ..self
        }
    }

    pub fn ratio_tol(&self) -> f64 {
        self.tol.unwrap_or(DEFAULT_RATIO_TOL)
    }

    pub fn turan_tol(&self) -> f64 {
        self.tol.unwrap_or(DEFAULT_TURAN_TOL)
    }

    fn series(&self) -> Result<SeriesOptions> {
        self.series_at((self.ratio_tol() / 100.0).clamp(MIN_TOL, MAX_TOL))
    }

    fn series_at(&self, tol: f64) -> Result<SeriesOptions> {
        SeriesOptions::with_max_terms(tol, self.max_terms.unwrap_or(DEFAULT_MAX_TERMS))
    }
}

fn precondition(msg: String) -> Error {
    Error::Precondition(msg)
}

fn aux(pairs: &[(&str, f64)]) -> BTreeMap<String, f64> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

struct RatioSample {
    x: f64,
    ratio: f64,
    bound: f64,
}

impl RatioSample {
    fn new(x: f64, num: EvalResult, den: EvalResult) -> Self {
        let ratio = num.value / den.value;
        let bound = ratio.abs() * (num.abs_error_bound / num.value.abs() + den.abs_error_bound / den.value.abs());
        Self { x, ratio, bound }
    }
}

/// Evaluates `num(x)/den(x)` on the grid and checks consecutive and
/// centered differences against `direction`.
fn ratio_report<F>(
    claim_id: &str,
    shape: &KBesselShape,
    aux: BTreeMap<String, f64>,
    grid: &GridSpec,
    direction: Direction,
    tol: f64,
    mut eval: F,
) -> Result<InequalityReport>
where
    F: FnMut(f64) -> Result<(EvalResult, EvalResult)>,
{
    let sign = match direction {
        Direction::Increasing => 1.0,
        Direction::Decreasing => -1.0,
        other => {
            return Err(Error::Parameter(format!(
                "ratio checks take increasing or decreasing, not {}",
                other.as_str()
            )))
        }
    };
    let samples = grid
        .argument_points()?
        .into_iter()
        .map(|x| eval(x).map(|(n, d)| RatioSample::new(x, n, d)))
        .collect::<Result<Vec<_>>>()?;

    let mut violations = Vec::new();
    let mut min_slack = f64::INFINITY;
    let mut record = |kind, pts: &[&RatioSample], slack: f64| {
        let delta = -slack;
        min_slack = min_slack.min(slack);
        if delta > tol {
            violations.push(Violation {
                kind,
                points: pts.iter().map(|s| s.x).collect(),
                values: pts.iter().map(|s| s.ratio).collect(),
                error_bounds: pts.iter().map(|s| s.bound).collect(),
                observed_delta: delta,
            });
        }
    };
    for w in samples.windows(2) {
        let slack = sign * (w[1].ratio - w[0].ratio) / w[0].ratio.abs();
        record(ViolationKind::Consecutive, &[&w[0], &w[1]], slack);
    }
    for w in samples.windows(3) {
        let slack = sign * (w[2].ratio - w[0].ratio) / w[1].ratio.abs();
        record(ViolationKind::Centered, &[&w[0], &w[1], &w[2]], slack);
    }
    Ok(InequalityReport::assemble(
        claim_id,
        shape.with_c(-1.0),
        aux,
        Domain::Grid(*grid),
        direction,
        tol,
        violations,
        min_slack,
    ))
}

/// `x ↦ I_{k,μ}(x) / I_{k,ν}(x)` is claimed increasing for `μ >= ν > -1`.
pub fn check_ratio_monotone_in_order(
    shape: &KBesselShape,
    mu: f64,
    grid: &GridSpec,
    opts: &CheckOptions,
) -> Result<InequalityReport> {
    shape.validate()?;
    if !(mu >= shape.nu) {
        return Err(precondition(format!("needs mu >= nu, got mu = {mu}, nu = {}", shape.nu)));
    }
    let num_shape = KBesselShape { nu: mu, ..*shape };
    let series = opts.series()?;
    ratio_report(
        "thm1",
        shape,
        aux(&[("mu", mu)]),
        grid,
        opts.direction.unwrap_or(Direction::Increasing),
        opts.ratio_tol(),
        |x| {
            Ok((
                modified_i_relative(&num_shape, x, &series)?,
                modified_i_relative(shape, x, &series)?,
            ))
        },
    )
}

/// `x ↦ I_{k,ν}(x) / I_{m,ν}(x)` is claimed increasing when
/// `k >= λ >= m > 0` and `γ >= ν + 1`. `shape.k` is the numerator's `k`.
pub fn check_ratio_monotone_in_k(
    shape: &KBesselShape,
    m: f64,
    grid: &GridSpec,
    opts: &CheckOptions,
) -> Result<InequalityReport> {
    shape.validate()?;
    let KBesselShape { k, nu, gamma, lambda } = *shape;
    if !(k >= lambda && lambda >= m && m > 0.0) {
        return Err(precondition(format!(
            "needs k >= lambda >= m > 0, got k = {k}, lambda = {lambda}, m = {m}"
        )));
    }
    if !(gamma >= nu + 1.0) {
        return Err(precondition(format!("needs gamma >= nu + 1, got gamma = {gamma}, nu = {nu}")));
    }
    let den_shape = KBesselShape { k: m, ..*shape };
    let series = opts.series()?;
    ratio_report(
        "thm2",
        shape,
        aux(&[("m", m)]),
        grid,
        opts.direction.unwrap_or(Direction::Increasing),
        opts.ratio_tol(),
        |x| {
            Ok((
                modified_i_relative(shape, x, &series)?,
                modified_i_relative(&den_shape, x, &series)?,
            ))
        },
    )
}

/// The denominator family of the confluent-ratio claims.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "lowercase")]
pub enum ConfluentVariant {
    /// `I / Φ_k(a; c; x)` on `(0, ∞)`, needs `a >= c > 0`, `λ >= k`, `0 < γ <= ν + 1`.
    A { a: f64, c: f64 },
    /// `I / Φ_k(γ; λ; x/2)` on `(0, 1)`, needs `0 < k <= λ <= ν + 1`.
    B,
    /// `I / Φ_k(γ; λ; x/2)` on `[1, ∞)`, needs `0 < k <= min(λ, ν + 1)`.
    C,
}

impl ConfluentVariant {
    pub fn claim_id(&self) -> &'static str {
        match self {
            ConfluentVariant::A { .. } => "thm4a",
            ConfluentVariant::B => "thm4b",
            ConfluentVariant::C => "thm4c",
        }
    }

    fn check_preconditions(&self, shape: &KBesselShape) -> Result<()> {
        let KBesselShape { k, nu, gamma, lambda } = *shape;
        match *self {
            ConfluentVariant::A { a, c } => {
                if !(a >= c && c > 0.0) {
                    return Err(precondition(format!("needs a >= c > 0, got a = {a}, c = {c}")));
                }
                if !(lambda >= k) {
                    return Err(precondition(format!("needs lambda >= k, got lambda = {lambda}, k = {k}")));
                }
                if !(gamma <= nu + 1.0) {
                    return Err(precondition(format!("needs 0 < gamma <= nu + 1, got gamma = {gamma}, nu = {nu}")));
                }
            }
            ConfluentVariant::B => {
                if !(k <= lambda && lambda <= nu + 1.0) {
                    return Err(precondition(format!(
                        "needs 0 < k <= lambda <= nu + 1, got k = {k}, lambda = {lambda}, nu = {nu}"
                    )));
                }
            }
            ConfluentVariant::C => {
                if !(k <= lambda.min(nu + 1.0)) {
                    return Err(precondition(format!(
                        "needs 0 < k <= min(lambda, nu + 1), got k = {k}, lambda = {lambda}, nu = {nu}"
                    )));
                }
            }
        }
        Ok(())
    }

    #[cfg(test)]
    pub(crate) fn check_preconditions_for_test(&self, shape: &KBesselShape) -> bool {
        self.check_preconditions(shape).is_ok()
    }

    fn check_grid(&self, grid: &GridSpec) -> Result<()> {
        match self {
            ConfluentVariant::B if grid.stop >= 1.0 => Err(precondition(format!(
                "thm4b grid must lie in (0, 1), stops at {}",
                grid.stop
            ))),
            ConfluentVariant::C if grid.start < 1.0 => Err(precondition(format!(
                "thm4c grid must lie in [1, ∞), starts at {}",
                grid.start
            ))),
            _ => Ok(()),
        }
    }

    fn aux(&self) -> BTreeMap<String, f64> {
        match *self {
            ConfluentVariant::A { a, c } => aux(&[("a", a), ("c_param", c)]),
            _ => BTreeMap::new(),
        }
    }

    /// `ln` of the coefficient of `xⁿ` in the denominator.
    fn ln_denominator_coefficient(&self, shape: &KBesselShape, n: f64) -> f64 {
        match *self {
            ConfluentVariant::A { a, c } => ln_confluent_coefficient(a, c, shape.k, n),
            _ => ln_confluent_coefficient(shape.gamma, shape.lambda, shape.k, n) - n * 2f64.ln(),
        }
    }
}

/// `x ↦ I_{k,ν}(x) / Φ_k(...)` is claimed decreasing on the variant's interval.
pub fn check_ratio_with_confluent(
    variant: ConfluentVariant,
    shape: &KBesselShape,
    grid: &GridSpec,
    opts: &CheckOptions,
) -> Result<InequalityReport> {
    shape.validate()?;
    variant.check_preconditions(shape)?;
    variant.check_grid(grid)?;
    let series = opts.series()?;
    let denominator = |x: f64| match variant {
        ConfluentVariant::A { a, c } => confluent_phi_k_with(a, c, shape.k, x, &series),
        _ => confluent_phi_k_with(shape.gamma, shape.lambda, shape.k, x / 2.0, &series),
    };
    ratio_report(
        variant.claim_id(),
        shape,
        variant.aux(),
        grid,
        opts.direction.unwrap_or(Direction::Decreasing),
        opts.ratio_tol(),
        |x| Ok((modified_i_relative(shape, x, &series)?, denominator(x)?)),
    )
}

fn check_turan_inputs(k: f64, gamma: f64, lambda: f64, x: f64, nu_grid: &GridSpec, delta: f64) -> Result<()> {
    KBesselShape::new(k, nu_grid.stop.max(0.0), gamma, lambda)?;
    nu_grid.validate()?;
    if !(x > 0.0 && x.is_finite()) {
        return Err(precondition(format!("needs x > 0, got {x}")));
    }
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(precondition(format!("needs delta > 0, got {delta}")));
    }
    if !(nu_grid.start - delta > -1.0) {
        return Err(precondition(format!(
            "every nu - delta must exceed -1; grid starts at {} with delta = {delta}",
            nu_grid.start
        )));
    }
    Ok(())
}

/// Midpoint log-convexity of `ν ↦ Γ_k(ν+1) I_{k,ν}(x)`:
/// `𝓘(ν)² <= 𝓘(ν-δ) 𝓘(ν+δ)` at each grid `ν`, with relative slack
/// `(𝓘(ν-δ)𝓘(ν+δ) - 𝓘(ν)²) / 𝓘(ν)²` required to be at least `-tol`.
pub fn check_logconvex_in_order(
    k: f64,
    gamma: f64,
    lambda: f64,
    x: f64,
    nu_grid: &GridSpec,
    delta: f64,
    tol: f64,
) -> Result<InequalityReport> {
    let opts = CheckOptions::default().with_tol(tol).with_direction(Direction::Convex);
    check_midpoint_direction(k, gamma, lambda, x, nu_grid, delta, &opts)
}

/// As [`check_logconvex_in_order`] with the tolerance, direction (`Convex`
/// or `Concave`) and term budget taken from `opts`.
pub fn check_midpoint_direction(
    k: f64,
    gamma: f64,
    lambda: f64,
    x: f64,
    nu_grid: &GridSpec,
    delta: f64,
    opts: &CheckOptions,
) -> Result<InequalityReport> {
    let tol = opts.turan_tol();
    let claimed = opts.direction.unwrap_or(Direction::Convex);
    let sign = match claimed {
        Direction::Convex => 1.0,
        Direction::Concave => -1.0,
        other => {
            return Err(Error::Parameter(format!(
                "midpoint checks take convex or concave, not {}",
                other.as_str()
            )))
        }
    };
    check_turan_inputs(k, gamma, lambda, x, nu_grid, delta)?;
    let series = opts.series_at(MIN_TOL)?;
    let normalized = |nu: f64| -> Result<(f64, f64)> {
        let shape = KBesselShape { k, nu, gamma, lambda };
        let r = modified_i_relative(&shape, x, &series)?;
        let scale = ln_gamma_k_unchecked(nu + 1.0, k).exp();
        Ok((r.value * scale, r.abs_error_bound * scale))
    };
    let mut violations = Vec::new();
    let mut min_slack = f64::INFINITY;
    for nu in nu_grid.points() {
        let (lo, lo_err) = normalized(nu - delta)?;
        let (mid, mid_err) = normalized(nu)?;
        let (hi, hi_err) = normalized(nu + delta)?;
        let slack = sign * (lo * hi - mid * mid) / (mid * mid);
        min_slack = min_slack.min(slack);
        if slack < -tol {
            violations.push(Violation {
                kind: ViolationKind::Midpoint,
                points: vec![nu - delta, nu, nu + delta],
                values: vec![lo, mid, hi],
                error_bounds: vec![lo_err, mid_err, hi_err],
                observed_delta: -slack,
            });
        }
    }
    Ok(InequalityReport::assemble(
        "thm3-turan",
        KBesselShape { k, nu: nu_grid.start, gamma, lambda }.with_c(-1.0),
        aux(&[("delta", delta), ("x", x)]),
        Domain::Grid(*nu_grid),
        claimed,
        tol,
        violations,
        min_slack,
    ))
}

/// Midpoint convexity of `ν ↦ ln a_n(ν)` with
/// `a_n(ν) = (γ)_{n,k} Γ_k(ν+1) / (Γ_k(λn+ν+1) (n!)²)` for `n = 1..=n_max`
/// at every grid `ν`. The second difference must be at least `-tol`.
pub fn check_coefficient_logconvexity(
    k: f64,
    gamma: f64,
    lambda: f64,
    nu_grid: &GridSpec,
    delta: f64,
    n_max: usize,
    tol: f64,
) -> Result<InequalityReport> {
    check_turan_inputs(k, gamma, lambda, 1.0, nu_grid, delta)?;
    // Only the ν-dependent part of ln a_n matters for the second difference.
    let ln_a = |n: f64, nu: f64| ln_gamma_k_unchecked(nu + 1.0, k) - ln_gamma_k_unchecked(lambda * n + nu + 1.0, k);
    let mut violations = Vec::new();
    let mut min_slack = f64::INFINITY;
    for nu in nu_grid.points() {
        for n in 1..=n_max {
            let nf = n as f64;
            let (lo, mid, hi) = (ln_a(nf, nu - delta), ln_a(nf, nu), ln_a(nf, nu + delta));
            let second = lo + hi - 2.0 * mid;
            min_slack = min_slack.min(second);
            if second < -tol {
                violations.push(Violation {
                    kind: ViolationKind::Coefficient,
                    points: vec![nf, nu - delta, nu, nu + delta],
                    values: vec![lo, mid, hi],
                    error_bounds: vec![0.0; 3],
                    observed_delta: -second,
                });
            }
        }
    }
    Ok(InequalityReport::assemble(
        "thm3-coefficients",
        KBesselShape { k, nu: nu_grid.start, gamma, lambda }.with_c(-1.0),
        aux(&[("delta", delta), ("n_max", n_max as f64)]),
        Domain::Grid(*nu_grid),
        Direction::Convex,
        tol,
        violations,
        min_slack,
    ))
}

/// Checks `ln d_n` for monotonicity. With `claimed = None` the observed
/// direction is reported and any monotone sequence passes.
fn sequence_report(
    claim_id: &str,
    shape: &KBesselShape,
    aux: BTreeMap<String, f64>,
    ln_d: &[f64],
    claimed: Option<Direction>,
) -> InequalityReport {
    let steps: Vec<f64> = ln_d.windows(2).map(|w| w[1] - w[0]).collect();
    let tol = SEQUENCE_TOL;
    let direction = claimed.unwrap_or_else(|| {
        if steps.iter().all(|s| s.abs() <= tol) {
            Direction::Constant
        } else if steps.iter().all(|&s| s >= -tol) {
            Direction::Increasing
        } else if steps.iter().all(|&s| s <= tol) {
            Direction::Decreasing
        } else if ln_d[ln_d.len() - 1] >= ln_d[0] {
            Direction::Increasing
        } else {
            Direction::Decreasing
        }
    });
    let mut violations = Vec::new();
    let mut min_slack = f64::INFINITY;
    for (n, &s) in steps.iter().enumerate() {
        // exp(s) - 1 is the relative change of d_n.
        let rel = s.exp_m1();
        let slack = match direction {
            Direction::Increasing => rel,
            Direction::Decreasing => -rel,
            _ => -rel.abs(),
        };
        min_slack = min_slack.min(slack);
        if slack < -tol {
            violations.push(Violation {
                kind: ViolationKind::Sequence,
                points: vec![n as f64, n as f64 + 1.0],
                values: vec![ln_d[n].exp(), ln_d[n + 1].exp()],
                error_bounds: vec![0.0; 2],
                observed_delta: -slack,
            });
        }
    }
    InequalityReport::assemble(
        claim_id,
        shape.with_c(-1.0),
        aux,
        Domain::Indices { n_max: ln_d.len() - 1 },
        direction,
        tol,
        violations,
        min_slack,
    )
}

fn check_n_max(n_max: usize) -> Result<()> {
    if n_max < 2 {
        return Err(Error::Parameter(format!("n_max must be >= 2, got {n_max}")));
    }
    Ok(())
}

/// Monotonicity of `d_n = a_n(p) / a_n(q)` where `a_n` are the coefficients
/// of `xⁿ` in the modified series `I`. `c` plays no role.
pub fn check_sequence_ratio_monotone(p: &KBesselShape, q: &KBesselShape, n_max: usize) -> Result<InequalityReport> {
    check_sequence_ratio_direction(p, q, n_max, None)
}

/// As [`check_sequence_ratio_monotone`] but against a claimed direction.
pub fn check_sequence_ratio_direction(
    p: &KBesselShape,
    q: &KBesselShape,
    n_max: usize,
    claimed: Option<Direction>,
) -> Result<InequalityReport> {
    p.validate()?;
    q.validate()?;
    check_n_max(n_max)?;
    let ln_d: Vec<f64> = (0..=n_max)
        .map(|n| {
            let nf = n as f64;
            ln_bessel_coefficient(p, nf) - ln_bessel_coefficient(q, nf)
        })
        .collect();
    let aux = aux(&[("q_k", q.k), ("q_nu", q.nu), ("q_gamma", q.gamma), ("q_lambda", q.lambda)]);
    Ok(sequence_report("lemma-seq", p, aux, &ln_d, claimed))
}

/// Monotonicity of the coefficient ratio behind a confluent-ratio claim:
/// coefficients of `I_{k,ν}(x)` over those of the variant's `Φ_k`.
pub fn check_confluent_sequence(
    variant: ConfluentVariant,
    shape: &KBesselShape,
    n_max: usize,
    claimed: Option<Direction>,
) -> Result<InequalityReport> {
    shape.validate()?;
    check_n_max(n_max)?;
    let ln_d: Vec<f64> = (0..=n_max)
        .map(|n| {
            let nf = n as f64;
            let ln_num = ln_bessel_coefficient(shape, nf) - 2.0 * ln_gamma(nf + 1.0) - nf * 2f64.ln();
            ln_num - variant.ln_denominator_coefficient(shape, nf)
        })
        .collect();
    Ok(sequence_report("lemma-seq", shape, variant.aux(), &ln_d, claimed))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(k: f64, nu: f64, gamma: f64, lambda: f64) -> KBesselShape {
        KBesselShape::new(k, nu, gamma, lambda).unwrap()
    }

    fn grid() -> GridSpec {
        GridSpec::linear(0.01, 20.0, 200).unwrap()
    }

    #[test]
    fn sequence_identity_is_constant() {
        let p = shape(1.3, 0.4, 2.0, 0.7);
        let r = check_sequence_ratio_monotone(&p, &p, DEFAULT_N_MAX).unwrap();
        assert!(r.pass);
        assert_eq!(r.direction, Direction::Constant);
        assert_eq!(r.domain, Domain::Indices { n_max: 100 });
    }

    #[test]
    fn sequence_direction_follows_order() {
        let p = shape(1.0, 0.5, 1.0, 1.0);
        let q = shape(1.0, 1.5, 1.0, 1.0);
        let up = check_sequence_ratio_monotone(&p, &q, DEFAULT_N_MAX).unwrap();
        assert!(up.pass);
        assert_eq!(up.direction, Direction::Increasing);
        let down = check_sequence_ratio_monotone(&q, &p, DEFAULT_N_MAX).unwrap();
        assert!(down.pass);
        assert_eq!(down.direction, Direction::Decreasing);
        let claimed = check_sequence_ratio_direction(&p, &q, DEFAULT_N_MAX, Some(Direction::Decreasing)).unwrap();
        assert!(!claimed.pass);
        assert_eq!(claimed.violations.len(), DEFAULT_N_MAX);
    }

    #[test]
    fn sequence_needs_two_steps() {
        let p = shape(1.0, 0.5, 1.0, 1.0);
        assert!(matches!(check_sequence_ratio_monotone(&p, &p, 1), Err(Error::Parameter(_))));
    }

    #[test]
    fn order_ratio_identity() {
        let s = shape(1.7, 0.2, 0.9, 2.1);
        let r = check_ratio_monotone_in_order(&s, 0.2, &grid(), &CheckOptions::default()).unwrap();
        assert!(r.pass);
        assert_eq!(r.min_slack, 0.0);
    }

    // I_{1,μ}/I_{1,ν} with μ = 1 > ν = 0.5 falls on (0, ∞): its coefficient
    // ratio Γ(n + 1.5)/Γ(n + 2) decreases. The increasing claim therefore
    // fails with witnesses, and the reversed claim holds.
    #[test]
    fn order_ratio_moves_against_the_increasing_claim() {
        let s = shape(1.0, 0.5, 1.0, 1.0);
        let opts = CheckOptions::default();
        let r = check_ratio_monotone_in_order(&s, 1.0, &grid(), &opts).unwrap();
        assert!(!r.pass);
        assert_eq!(r.direction, Direction::Increasing);
        assert!(r.violations.iter().all(|v| v.observed_delta > r.tolerance));
        assert!(r.max_violation > 1e-3);
        let reversed = check_ratio_monotone_in_order(&s, 1.0, &grid(), &opts.with_direction(Direction::Decreasing)).unwrap();
        assert!(reversed.pass);
        assert!(reversed.min_slack > 0.0);
    }

    #[test]
    fn order_ratio_gate() {
        let s = shape(1.0, 1.0, 1.0, 1.0);
        let err = check_ratio_monotone_in_order(&s, 0.5, &grid(), &CheckOptions::default()).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn k_ratio_identity_and_example() {
        let opts = CheckOptions::default();
        let s = shape(1.5, 0.5, 2.0, 1.5);
        let r = check_ratio_monotone_in_k(&s, 1.5, &grid(), &opts).unwrap();
        assert!(r.pass);
        let s = shape(2.0, 0.5, 2.0, 1.5);
        let r = check_ratio_monotone_in_k(&s, 1.0, &grid(), &opts).unwrap();
        assert!(r.pass, "{:?}", r.violations.first());
        assert_eq!(r.aux["m"], 1.0);
        let reversed = check_ratio_monotone_in_k(&s, 1.0, &grid(), &opts.with_direction(Direction::Decreasing)).unwrap();
        assert!(!reversed.pass);
    }

    #[test]
    fn k_ratio_gates() {
        let opts = CheckOptions::default();
        let s = shape(2.0, 0.5, 0.5, 1.5);
        assert!(matches!(check_ratio_monotone_in_k(&s, 1.0, &grid(), &opts), Err(Error::Precondition(_))));
        let s = shape(2.0, 0.5, 2.0, 1.5);
        assert!(matches!(check_ratio_monotone_in_k(&s, 1.6, &grid(), &opts), Err(Error::Precondition(_))));
        let s = shape(1.0, 0.5, 2.0, 1.5);
        assert!(matches!(check_ratio_monotone_in_k(&s, 1.0, &grid(), &opts), Err(Error::Precondition(_))));
    }

    #[test]
    fn midpoint_example_and_small_delta() {
        let nu_grid = GridSpec::linear(0.0, 5.0, 50).unwrap();
        let r = check_logconvex_in_order(1.0, 1.0, 1.0, 2.0, &nu_grid, 0.5, DEFAULT_TURAN_TOL).unwrap();
        assert!(r.pass);
        assert!(r.min_slack > 0.0);
        assert_eq!(r.direction, Direction::Convex);
        let r = check_logconvex_in_order(1.0, 1.0, 1.0, 2.0, &nu_grid, 1e-4, DEFAULT_TURAN_TOL).unwrap();
        assert!(r.min_slack >= -1e-10);
        let opts = CheckOptions::default().with_direction(Direction::Concave);
        let concave = check_midpoint_direction(1.0, 1.0, 1.0, 2.0, &nu_grid, 0.5, &opts).unwrap();
        assert!(!concave.pass);
    }

    #[test]
    fn midpoint_gate() {
        let nu_grid = GridSpec::linear(-0.6, 2.0, 10).unwrap();
        let err = check_logconvex_in_order(1.0, 1.0, 1.0, 2.0, &nu_grid, 0.5, DEFAULT_TURAN_TOL).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
        let nu_grid = GridSpec::linear(0.0, 2.0, 10).unwrap();
        assert!(check_logconvex_in_order(1.0, 1.0, 1.0, 0.0, &nu_grid, 0.5, DEFAULT_TURAN_TOL).is_err());
    }

    #[test]
    fn coefficients_are_log_convex_in_order() {
        let nu_grid = GridSpec::linear(-0.4, 5.0, 30).unwrap();
        for (k, lambda) in [(1.0, 1.0), (0.3, 3.5), (3.9, 0.3)] {
            let r = check_coefficient_logconvexity(k, 1.0, lambda, &nu_grid, 0.5, 20, DEFAULT_TURAN_TOL).unwrap();
            assert!(r.pass, "k={k} lambda={lambda}");
            assert!(r.min_slack > 0.0);
        }
    }

    #[test]
    fn confluent_collapse_to_exponential() {
        // Φ_k(a; a; x) = eˣ, so the ratio is I(x) e⁻ˣ.
        let s = shape(1.0, 0.5, 1.0, 1.5);
        let opts = CheckOptions::default();
        let g = GridSpec::logarithmic(0.01, 50.0, 200).unwrap();
        let r = check_ratio_with_confluent(ConfluentVariant::A { a: 1.3, c: 1.3 }, &s, &g, &opts).unwrap();
        assert!(r.pass);
        let series = SeriesOptions::new(1e-14).unwrap();
        let phi = confluent_phi_k_with(1.3, 1.3, 1.0, 2.5, &series).unwrap().value;
        assert!((phi / 2.5f64.exp() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn confluent_examples() {
        let opts = CheckOptions::default();
        let s = shape(1.0, 0.5, 1.0, 1.5);
        let g = GridSpec::logarithmic(0.01, 50.0, 200).unwrap();
        let a = ConfluentVariant::A { a: 2.0, c: 1.0 };
        let r = check_ratio_with_confluent(a, &s, &g, &opts).unwrap();
        assert!(r.pass);
        assert_eq!(r.claim_id, "thm4a");
        let reversed = check_ratio_with_confluent(a, &s, &g, &opts.with_direction(Direction::Increasing)).unwrap();
        assert!(!reversed.pass);

        let s = shape(0.5, 0.5, 1.0, 1.0);
        let g = GridSpec::linear(0.05, 0.95, 100).unwrap();
        let r = check_ratio_with_confluent(ConfluentVariant::B, &s, &g, &opts).unwrap();
        assert!(r.pass);
        let g = GridSpec::linear(1.0, 20.0, 100).unwrap();
        let r = check_ratio_with_confluent(ConfluentVariant::C, &s, &g, &opts).unwrap();
        assert!(r.pass);
    }

    #[test]
    fn confluent_gates() {
        let opts = CheckOptions::default();
        let s = shape(1.0, 0.5, 1.0, 1.5);
        let g = GridSpec::linear(0.1, 2.0, 10).unwrap();
        let a = ConfluentVariant::A { a: 1.0, c: 2.0 };
        assert!(matches!(check_ratio_with_confluent(a, &s, &g, &opts), Err(Error::Precondition(_))));
        let b = ConfluentVariant::B;
        assert!(matches!(check_ratio_with_confluent(b, &s, &g, &opts), Err(Error::Precondition(_))));
        let s = shape(2.0, 0.5, 1.0, 2.5);
        assert!(matches!(
            check_ratio_with_confluent(ConfluentVariant::C, &s, &GridSpec::linear(1.0, 2.0, 5).unwrap(), &opts),
            Err(Error::Precondition(_))
        ));
        let s = shape(0.5, 0.5, 1.0, 1.0);
        assert!(matches!(
            check_ratio_with_confluent(ConfluentVariant::C, &s, &GridSpec::linear(0.5, 2.0, 5).unwrap(), &opts),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn witnesses_carry_values_and_bounds() {
        let s = shape(1.0, 0.5, 1.0, 1.0);
        let r = check_ratio_monotone_in_order(&s, 1.0, &grid(), &CheckOptions::default()).unwrap();
        for v in &r.violations {
            assert_eq!(v.points.len(), v.values.len());
            assert_eq!(v.values.len(), v.error_bounds.len());
            assert!(v.error_bounds.iter().all(|b| *b >= 0.0 && *b < 1e-9));
        }
        assert!(r.violations.iter().any(|v| v.kind == ViolationKind::Consecutive));
        assert!(r.violations.iter().any(|v| v.kind == ViolationKind::Centered));
    }
}
