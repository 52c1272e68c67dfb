//! Classical log-gamma, digamma and trigamma on the positive half-line.
//!
//! `ln_gamma` uses a Taylor expansion of `ln Γ(2 + z)` on `[1.5, 2.5)`,
//! reached from below by `Γ(x + 1) = xΓ(x)`, a downward product for
//! `x < 10`, and the Stirling series with eight Bernoulli terms for `x >= 10`.
//! Callers are expected to have validated `x > 0`.

use std::f64::consts::PI;

/// Euler–Mascheroni constant γ₁.
pub const EULER_MASCHERONI: f64 = 0.577_215_664_901_532_9;

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// `(-1)^k (ζ(k) - 1) / k` for `k = 2, 3, ...`, the Taylor coefficients of
/// `ln Γ(2 + z) - (1 - γ₁) z`.
const LN_GAMMA_2_TAYLOR: [f64; 29] = [
    0.3224670334241132,
    -0.0673523010531981,
    0.020580808427784546,
    -0.007385551028673986,
    0.0028905103307415234,
    -0.001192753911703261,
    0.0005096695247430425,
    -0.00022315475845357939,
    9.945751278180853e-05,
    -4.492623673813314e-05,
    2.050721277567069e-05,
    -9.439488275268397e-06,
    4.374866789907488e-06,
    -2.039215753801366e-06,
    9.55141213040742e-07,
    -4.492469198764566e-07,
    2.1207184805554665e-07,
    -1.0043224823968099e-07,
    4.7698101693639804e-08,
    -2.2711094608943164e-08,
    1.0838659214896955e-08,
    -5.183475041970047e-09,
    2.4836745438024785e-09,
    -1.1921401405860912e-09,
    5.731367241678862e-10,
    -2.7595228851242334e-10,
    1.330476437424449e-10,
    -6.4229645638381e-11,
    3.1044247747322276e-11,
];

const ONE_MINUS_EULER: f64 = 0.42278433509846713;

/// `B_{2j} / (2j (2j - 1))`, j = 1..8.
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

/// `B_{2j}`, j = 1..7, for the digamma and trigamma asymptotic series.
const BERNOULLI: [f64; 7] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
];

const ASYMPTOTIC_FROM: f64 = 10.0;

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    if x == 1.0 || x == 2.0 {
        return 0.0;
    }
    if x >= ASYMPTOTIC_FROM {
        return stirling(x);
    }
    if x < 1.5 {
        // Shift up into [1.5, 2.5); at most two steps for x in (0, 1.5).
        let mut y = x;
        let mut prod = 1.0;
        while y < 1.5 {
            prod *= y;
            y += 1.0;
        }
        return taylor_about_two(y - 2.0) - prod.ln();
    }
    // Shift down into [1.5, 2.5).
    let mut y = x;
    let mut prod = 1.0;
    while y >= 2.5 {
        y -= 1.0;
        prod *= y;
    }
    taylor_about_two(y - 2.0) + prod.ln()
}

fn taylor_about_two(z: f64) -> f64 {
    let mut acc = 0.0;
    for &c in LN_GAMMA_2_TAYLOR.iter().rev() {
        acc = acc * z + c;
    }
    z * (ONE_MINUS_EULER + z * acc)
}

fn stirling(x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut series = 0.0;
    for &c in STIRLING.iter().rev() {
        series = series * inv2 + c;
    }
    (x - 0.5) * x.ln() - x + HALF_LN_2PI + series * inv
}

/// Classical digamma `ψ(x)` for `x > 0`.
pub fn digamma(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    let mut shift = 0.0;
    let mut y = x;
    while y < ASYMPTOTIC_FROM {
        shift += 1.0 / y;
        y += 1.0;
    }
    let inv2 = 1.0 / (y * y);
    let mut series = 0.0;
    for (j, &b) in BERNOULLI.iter().enumerate().rev() {
        series = series * inv2 + b / (2.0 * (j as f64 + 1.0));
    }
    y.ln() - 0.5 / y - series * inv2 - shift
}

/// Classical trigamma `ψ'(x)` for `x > 0`.
pub fn trigamma(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    let mut shift = 0.0;
    let mut y = x;
    while y < ASYMPTOTIC_FROM {
        shift += 1.0 / (y * y);
        y += 1.0;
    }
    let inv = 1.0 / y;
    let inv2 = inv * inv;
    let mut series = 0.0;
    for &b in BERNOULLI.iter().rev() {
        series = series * inv2 + b;
    }
    shift + inv + 0.5 * inv2 + series * inv2 * inv
}

/// `Γ(1/2) = √π`, used by tests and callers that want the exact constant.
pub fn sqrt_pi() -> f64 {
    PI.sqrt()
}
