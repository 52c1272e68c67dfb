//! Acceptance criteria for the `kbessel` library, each a pinned,
//! seeded, timed check that reports a single pass/fail verdict.

use std::time::{Duration, Instant};

use kbessel::classical::ln_gamma;
use kbessel::inequalities::{sample_cases, Case, CheckOptions, Claim, Direction, TURAN_DELTAS};
use kbessel::kgamma::{
    digamma_k, digamma_k_series, gamma_k, gamma_k_integral_oracle, gamma_k_limit_oracle, log_gamma_k, trigamma_k,
    trigamma_k_series, KGammaArg,
};
use kbessel::series::{
    confluent_phi_k, hyp_pfq, modified_i_kbessel, w_kbessel, w_kbessel_with, wright_representation,
    wright_representation_with, KBesselParams, KBesselShape, RepresentationConstants, SeriesOptions,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seed shared by every randomized criterion.
pub const SEED: u64 = 42;

pub struct Criterion {
    pub id: u8,
    pub title: &'static str,
    pub budget: Duration,
    check: fn() -> Check,
}

/// Verdict of a criterion body before the runtime budget is applied.
pub struct Check {
    pub pass: bool,
    pub detail: String,
}

pub struct Outcome {
    pub id: u8,
    pub title: &'static str,
    pub pass: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl Criterion {
    pub fn run(&self) -> Outcome {
        let start = Instant::now();
        let check = (self.check)();
        let elapsed = start.elapsed();
        Outcome {
            id: self.id,
            title: self.title,
            pass: check.pass && elapsed < self.budget,
            detail: check.detail,
            elapsed,
            budget: self.budget,
        }
    }
}

impl Outcome {
    pub fn line(&self) -> String {
        format!(
            "{} criterion {:>2} {}: {} [{:.2} s of {} s]",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.detail,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs()
        )
    }
}

const fn criterion(id: u8, title: &'static str, secs: u64, check: fn() -> Check) -> Criterion {
    Criterion {
        id,
        title,
        budget: Duration::from_secs(secs),
        check,
    }
}

pub const CRITERIA: [Criterion; 11] = [
    criterion(1, "k-gamma identities", 1, gamma_identities),
    criterion(2, "integral oracle", 10, integral_oracle),
    criterion(3, "limit oracle", 30, limit_oracle),
    criterion(4, "digamma/trigamma consistency", 5, digamma_consistency),
    criterion(5, "Wright representation", 10, wright_representation_agreement),
    criterion(6, "order-ratio monotonicity suite", 60, order_ratio_suite),
    criterion(7, "k-ratio monotonicity suite", 60, k_ratio_suite),
    criterion(8, "log-convexity in order (Turan) suite", 60, turan_suite),
    criterion(9, "confluent-ratio suites a/b/c", 90, confluent_suites),
    criterion(10, "classical limit", 5, classical_limit),
    criterion(11, "error-bound soundness", 30, error_bound_soundness),
];

fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED ^ salt)
}

fn arg(x: f64, k: f64) -> KGammaArg {
    KGammaArg::new(x, k).expect("sampled inside the domain")
}

fn lgk(x: f64, k: f64) -> f64 {
    log_gamma_k(arg(x, k))
}

fn relative(a: f64, b: f64) -> f64 {
    (a / b - 1.0).abs()
}

// Values overflow f64 over much of the sampled box, so the identities are
// compared as ratios recovered from log differences.
const IDENTITY_TOL: f64 = 1e-12;
const UNIT_TOL: f64 = 1e-14;

fn gamma_identities() -> Check {
    let mut rng = rng(1);
    let (mut rec, mut scale) = (0.0f64, 0.0f64);
    for _ in 0..1000 {
        let x = rng.gen_range(0.1..50.0);
        let k = rng.gen_range(0.2..10.0);
        rec = rec.max((lgk(x + k, k) - x.ln() - lgk(x, k)).exp_m1().abs());
        scale = scale.max((lgk(x, k) - ((x / k - 1.0) * k.ln() + ln_gamma(x / k))).exp_m1().abs());
    }
    let unit = [0.25, 0.5, 1.0, 2.0, 5.0, 10.0]
        .iter()
        .map(|&k| (gamma_k(arg(k, k)).unwrap() - 1.0).abs())
        .fold(0.0, f64::max);
    Check {
        pass: rec <= IDENTITY_TOL && scale <= IDENTITY_TOL && unit <= UNIT_TOL,
        detail: format!(
            "recurrence max rel {rec:.2e}, scaling max rel {scale:.2e} (tol {IDENTITY_TOL:.0e}); \
             |Γ_k(k)-1| max {unit:.2e} (tol {UNIT_TOL:.0e})"
        ),
    }
}

const INTEGRAL_TOL: f64 = 1e-8;

fn integral_oracle() -> Check {
    let mut rng = rng(2);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let x = rng.gen_range(0.1..30.0);
        let k = rng.gen_range(0.2..8.0);
        let oracle = gamma_k_integral_oracle(arg(x, k), 1e-10).unwrap();
        worst = worst.max(relative(oracle, gamma_k(arg(x, k)).unwrap()));
    }
    Check {
        pass: worst <= INTEGRAL_TOL,
        detail: format!("100 points, max rel deviation {worst:.2e} (tol {INTEGRAL_TOL:.0e})"),
    }
}

const LIMIT_TOL: f64 = 1e-4;

fn limit_oracle() -> Check {
    let mut rng = rng(3);
    let (mut worst, mut monotone) = (0.0f64, 0);
    for _ in 0..10 {
        let x = rng.gen_range(0.1..5.0);
        let k = rng.gen_range(0.5..4.0);
        let exact = gamma_k(arg(x, k)).unwrap();
        let devs: Vec<f64> = [1_000u64, 10_000, 100_000, 1_000_000]
            .iter()
            .map(|&n| relative(gamma_k_limit_oracle(arg(x, k), n).unwrap(), exact))
            .collect();
        worst = worst.max(devs[3]);
        monotone += usize::from(devs.windows(2).all(|w| w[1] < w[0]));
    }
    Check {
        pass: worst <= LIMIT_TOL && monotone == 10,
        detail: format!(
            "n=1e6 max rel deviation {worst:.2e} (tol {LIMIT_TOL:.0e}); monotone shrink on {monotone}/10 points"
        ),
    }
}

const DIGAMMA_TOL: f64 = 1e-6;

fn digamma_consistency() -> Check {
    let mut rng = rng(4);
    let (mut worst, mut nonpositive) = (0.0f64, 0);
    for _ in 0..100 {
        let t = rng.gen_range(0.1..30.0);
        let k = rng.gen_range(0.2..8.0);
        let fast = digamma_k(t, k).unwrap();
        let series = digamma_k_series(t, k).unwrap();
        let h = 1e-5 * t;
        let fd = (lgk(t + h, k) - lgk(t - h, k)) / (2.0 * h);
        let tri = trigamma_k(t, k).unwrap();
        let tri_series = trigamma_k_series(t, k).unwrap();
        let h = 2e-6 * t;
        let tri_fd = (digamma_k(t + h, k).unwrap() - digamma_k(t - h, k).unwrap()) / (2.0 * h);
        for d in [fast - series, fast - fd, tri - tri_series, tri - tri_fd] {
            worst = worst.max(d.abs());
        }
        nonpositive += usize::from(tri <= 0.0 || tri_series <= 0.0);
    }
    Check {
        pass: worst <= DIGAMMA_TOL && nonpositive == 0,
        detail: format!(
            "100 points, max abs disagreement {worst:.2e} (tol {DIGAMMA_TOL:.0e}); nonpositive trigamma {nonpositive}"
        ),
    }
}

const REPRESENTATION_TOL: f64 = 1e-10;
const SERIES_TOL: f64 = 1e-14;

fn random_params(rng: &mut ChaCha8Rng, c_range: std::ops::Range<f64>) -> KBesselParams {
    let shape = KBesselShape::new(
        rng.gen_range(0.25..4.0),
        rng.gen_range(-0.9..4.0),
        rng.gen_range(0.1..5.0),
        rng.gen_range(0.25..4.0),
    )
    .unwrap();
    shape.with_c(rng.gen_range(c_range))
}

fn wright_representation_agreement() -> Check {
    let mut rng = rng(5);
    let opts = SeriesOptions::new(SERIES_TOL).unwrap();
    let (mut worst, mut worst_ratio) = (0.0f64, 0.0f64);
    for _ in 0..200 {
        let p = random_params(&mut rng, -2.0..0.0);
        let x = rng.gen_range(0.0..20.0);
        let series = w_kbessel(&p, x, SERIES_TOL).unwrap().value;
        let rep = wright_representation(&p, x, SERIES_TOL).unwrap().value;
        worst = worst.max(relative(rep, series));
        let printed = wright_representation_with(&p, x, &opts, RepresentationConstants::PrintedPrefactor).unwrap();
        worst_ratio = worst_ratio.max(relative(rep / printed.value, p.k * p.k));
    }
    Check {
        pass: worst <= REPRESENTATION_TOL && worst_ratio <= REPRESENTATION_TOL,
        detail: format!(
            "200 points, max rel |rep-series| {worst:.2e}; printed-prefactor ratio vs k² max rel {worst_ratio:.2e} \
             (tol {REPRESENTATION_TOL:.0e})"
        ),
    }
}

const SUITE_SIZE: usize = 50;

/// Runs `claim` on freshly sampled cases and again with the direction
/// reversed; the claim holds when every case passes and every control fails.
fn suite_check(claim: Claim) -> Check {
    let cases = sample_cases(claim, SUITE_SIZE, SEED).unwrap();
    let (mut passed, mut controls_failed) = (0, 0);
    let mut first_failure = None;
    for case in &cases {
        let report = case.run(None, &CheckOptions::default()).unwrap().remove(0);
        passed += usize::from(report.pass);
        if !report.pass && first_failure.is_none() {
            first_failure = Some(format!("{case:?} max_violation {:.2e}", report.max_violation));
        }
        let negated = CheckOptions::default().with_direction(report.direction.reversed());
        controls_failed += usize::from(!case.run(None, &negated).unwrap()[0].pass);
    }
    let n = cases.len();
    let mut detail = format!("{passed}/{n} cases pass at tol 1e-9; {controls_failed}/{n} negation controls fail");
    if let Some(f) = first_failure {
        detail += &format!("; first failing case {f}");
    }
    Check {
        pass: passed == n && controls_failed == n,
        detail,
    }
}

fn order_ratio_suite() -> Check {
    suite_check(Claim::Thm1)
}

fn k_ratio_suite() -> Check {
    suite_check(Claim::Thm2)
}

const TURAN_TOL: f64 = 1e-12;

fn turan_suite() -> Check {
    let cases = sample_cases(Claim::Thm3Turan, SUITE_SIZE, SEED).unwrap();
    let concave = CheckOptions::default().with_direction(Direction::Concave);
    let (mut runs, mut midpoint_ok, mut coefficients_ok, mut controls_failed) = (0, 0, 0, 0);
    let mut min_slack = f64::INFINITY;
    for case in &cases {
        let Case::Thm3Turan { k, gamma, lambda, x, .. } = *case else {
            unreachable!("sampled for the Turan claim")
        };
        for delta in TURAN_DELTAS {
            let case = Case::Thm3Turan { k, gamma, lambda, x, delta };
            let reports = case.run(None, &CheckOptions::default()).unwrap();
            runs += 1;
            min_slack = min_slack.min(reports[0].min_slack);
            midpoint_ok += usize::from(reports[0].min_slack >= -TURAN_TOL);
            coefficients_ok += usize::from(reports[1].pass);
            controls_failed += usize::from(!case.run(None, &concave).unwrap()[0].pass);
        }
    }
    Check {
        pass: midpoint_ok == runs && coefficients_ok == runs && controls_failed == runs,
        detail: format!(
            "{runs} (case, δ) runs: midpoint slack ≥ -{TURAN_TOL:.0e} in {midpoint_ok} (min {min_slack:.2e}); \
             coefficients n ≤ 20 log-convex in {coefficients_ok}; concave controls fail in {controls_failed}"
        ),
    }
}

const CONFLUENT_SIZE: usize = 30;

fn confluent_suites() -> Check {
    let mut pass = true;
    let mut parts = Vec::new();
    for claim in [Claim::Thm4a, Claim::Thm4b, Claim::Thm4c] {
        let cases = sample_cases(claim, CONFLUENT_SIZE, SEED).unwrap();
        let passed = cases
            .iter()
            .filter(|c| c.run(None, &CheckOptions::default()).unwrap()[0].pass)
            .count();
        pass &= passed == cases.len();
        parts.push(format!("{claim} {passed}/{}", cases.len()));
    }
    Check {
        pass,
        detail: format!("decreasing claim holds at tol 1e-9: {}", parts.join(", ")),
    }
}

const CLASSICAL_TOL: f64 = 1e-12;

/// `I_ν(x) = Σ (x/2)^{2n+ν} / (n! Γ(n + ν + 1))` by forward recurrence, seeded with
/// exact values of `1/Γ(ν + 1)`.
fn classical_i(nu: f64, inv_gamma: f64, x: f64) -> f64 {
    let q = x * x / 4.0;
    let mut term = inv_gamma * (x / 2.0).powf(nu);
    let mut sum = term;
    for n in 1..400 {
        let n = n as f64;
        term *= q / (n * (n + nu));
        sum += term;
    }
    sum
}

fn classical_limit() -> Check {
    let sqrt_pi = std::f64::consts::PI.sqrt();
    let orders = [(0.0, 1.0), (0.5, 2.0 / sqrt_pi), (1.0, 1.0), (2.5, 8.0 / (15.0 * sqrt_pi))];
    let mut worst = 0.0f64;
    for (nu, inv_gamma) in orders {
        let shape = KBesselShape::new(1.0, nu, 1.0, 1.0).unwrap();
        for i in 1..=100 {
            let x = 0.1 * i as f64;
            // The normalized series in x is (X/2)^{-ν} I_ν(X) with X = √(2x).
            let big_x = (2.0 * x).sqrt();
            let ours = modified_i_kbessel(&shape, x, SERIES_TOL / 10.0).unwrap().value * (big_x / 2.0).powf(nu);
            worst = worst.max(relative(ours, classical_i(nu, inv_gamma, big_x)));
        }
    }
    Check {
        pass: worst <= CLASSICAL_TOL,
        detail: format!("4 orders × 100 points, max rel deviation {worst:.2e} (tol {CLASSICAL_TOL:.0e})"),
    }
}

fn error_bound_soundness() -> Check {
    let mut rng = rng(11);
    let mut violations = 0;
    let mut worst = 0.0f64;
    for i in 0..500 {
        let tol = 10f64.powf(-rng.gen_range(6.0..12.0));
        let fine = SeriesOptions::new(tol / 100.0).unwrap();
        let (coarse, refined) = match i % 5 {
            0..=2 => {
                let p = random_params(&mut rng, -2.0..2.0);
                let x = rng.gen_range(0.0..20.0);
                (w_kbessel(&p, x, tol).unwrap(), w_kbessel_with(&p, x, &fine).unwrap())
            }
            3 => {
                let (a, c, k) = (rng.gen_range(0.1..5.0), rng.gen_range(0.1..5.0), rng.gen_range(0.25..4.0));
                let x = rng.gen_range(0.0..10.0);
                (confluent_phi_k(a, c, k, x, tol).unwrap(), confluent_phi_k(a, c, k, x, tol / 100.0).unwrap())
            }
            _ => {
                let upper = [rng.gen_range(0.1..5.0)];
                let lower = [rng.gen_range(0.1..5.0), rng.gen_range(0.1..5.0)];
                let z = rng.gen_range(-20.0..20.0);
                (hyp_pfq(&upper, &lower, z, tol).unwrap(), hyp_pfq(&upper, &lower, z, tol / 100.0).unwrap())
            }
        };
        let moved = (coarse.value - refined.value).abs();
        if moved > coarse.abs_error_bound {
            violations += 1;
        }
        if coarse.abs_error_bound > 0.0 {
            worst = worst.max(moved / coarse.abs_error_bound);
        }
    }
    Check {
        pass: violations == 0,
        detail: format!("500 results, {violations} moved beyond their bound; max moved/bound {worst:.2e}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn criteria_are_numbered_in_order() {
        for (i, c) in CRITERIA.iter().enumerate() {
            assert_eq!(c.id as usize, i + 1);
        }
    }

    #[test]
    fn classical_reference_at_known_point() {
        // I_0(1) = 1.2660658777520082
        assert!((classical_i(0.0, 1.0, 1.0) - 1.2660658777520082).abs() < 1e-15);
        // I_{1/2}(x) = sqrt(2/(πx)) sinh x
        let x: f64 = 3.0;
        let exact = (2.0 / (std::f64::consts::PI * x)).sqrt() * x.sinh();
        assert!(relative(classical_i(0.5, 2.0 / std::f64::consts::PI.sqrt(), x), exact) < 1e-15);
    }
}
