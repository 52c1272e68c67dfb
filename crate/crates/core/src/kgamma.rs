//! The k-gamma family: `Γ_k`, `ln Γ_k`, the k-Pochhammer symbol, the
//! k-digamma and k-trigamma functions, and two slow reference evaluations
//! of `Γ_k` (its integral and its limit formula).
//!
//! Everything reduces to the classical functions through
//! `Γ_k(x) = k^{x/k - 1} Γ(x/k)`. Nonpositive arguments are rejected.

use crate::classical;
use crate::error::{Error, Result};
use crate::quadrature;
use crate::summation::CompensatedSum;

pub use crate::classical::EULER_MASCHERONI;

/// A validated argument pair `(x, k)` with `x > 0` and `k > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KGammaArg {
    x: f64,
    k: f64,
}

impl KGammaArg {
    pub fn new(x: f64, k: f64) -> Result<Self> {
        check_positive("x", x)?;
        check_positive("k", k)?;
        Ok(Self { x, k })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn k(&self) -> f64 {
        self.k
    }
}

pub(crate) fn check_positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be finite and > 0, got {v}")))
    }
}

/// `ln Γ_k(x)` without argument checks.
#[inline]
pub(crate) fn ln_gamma_k_unchecked(x: f64, k: f64) -> f64 {
    if k == 1.0 {
        return classical::ln_gamma(x);
    }
    let s = x / k;
    (s - 1.0) * k.ln() + classical::ln_gamma(s)
}

/// `ln Γ_k(x) = (x/k - 1) ln k + ln Γ(x/k)`.
pub fn log_gamma_k(arg: KGammaArg) -> f64 {
    ln_gamma_k_unchecked(arg.x, arg.k)
}

/// `Γ_k(x)`, or an overflow error when it exceeds the `f64` range.
pub fn gamma_k(arg: KGammaArg) -> Result<f64> {
    let v = log_gamma_k(arg).exp();
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow(format!(
            "Γ_k({}) with k = {} exceeds f64",
            arg.x, arg.k
        )))
    }
}

/// Products up to this length are multiplied out directly.
const DIRECT_POCHHAMMER: u64 = 64;

/// The k-Pochhammer symbol `(x)_{n,k} = x (x + k) ... (x + (n - 1) k)`.
pub fn pochhammer_k(x: f64, n: u64, k: f64) -> Result<f64> {
    check_positive("x", x)?;
    check_positive("k", k)?;
    let v = if n <= DIRECT_POCHHAMMER {
        (0..n).map(|j| x + j as f64 * k).product::<f64>()
    } else {
        (ln_gamma_k_unchecked(x + n as f64 * k, k) - ln_gamma_k_unchecked(x, k)).exp()
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow(format!("({x})_{{{n},{k}}} exceeds f64")))
    }
}

/// `ln (x)_{n,k}` evaluated through the gamma ratio.
pub(crate) fn ln_pochhammer_k_unchecked(x: f64, n: f64, k: f64) -> f64 {
    ln_gamma_k_unchecked(x + n * k, k) - ln_gamma_k_unchecked(x, k)
}

/// k-digamma `Ψ_k(t) = (ln k + ψ(t/k)) / k`.
pub fn digamma_k(t: f64, k: f64) -> Result<f64> {
    check_positive("t", t)?;
    check_positive("k", k)?;
    Ok(digamma_k_unchecked(t, k))
}

#[inline]
pub(crate) fn digamma_k_unchecked(t: f64, k: f64) -> f64 {
    (k.ln() + classical::digamma(t / k)) / k
}

/// k-trigamma `Ψ_k'(t) = ψ'(t/k) / k²`, always positive.
pub fn trigamma_k(t: f64, k: f64) -> Result<f64> {
    check_positive("t", t)?;
    check_positive("k", k)?;
    Ok(classical::trigamma(t / k) / (k * k))
}

/// Number of explicit terms summed by the series references before the
/// Euler–Maclaurin tail takes over.
const SERIES_TERMS: usize = 2000;

/// Reference `Ψ_k(t)` from its defining series
/// `(ln k - γ₁)/k - 1/t + Σ_{n≥1} t / (nk (nk + t))`.
///
/// The first `SERIES_TERMS` terms are summed explicitly; the remainder is
/// closed with Euler–Maclaurin (integral, endpoint and two derivative
/// corrections), so no digamma evaluation is involved.
pub fn digamma_k_series(t: f64, k: f64) -> Result<f64> {
    check_positive("t", t)?;
    check_positive("k", k)?;
    let s = t / k;
    // f(u) = (1/u - 1/(u + s)) / k
    let mut acc = CompensatedSum::new();
    acc.add((k.ln() - EULER_MASCHERONI) / k);
    acc.add(-1.0 / t);
    for n in 1..=SERIES_TERMS {
        let nk = n as f64 * k;
        acc.add(t / (nk * (nk + t)));
    }
    let u = SERIES_TERMS as f64;
    let f = |u: f64| (1.0 / u - 1.0 / (u + s)) / k;
    let d1 = |u: f64| (-1.0 / (u * u) + 1.0 / ((u + s) * (u + s))) / k;
    let d3 = |u: f64| (-6.0 / u.powi(4) + 6.0 / (u + s).powi(4)) / k;
    // Σ_{n>N} f(n) = ∫_N^∞ f - f(N)/2 - f'(N)/12 + f'''(N)/720 - ...
    acc.add((s / u).ln_1p() / k);
    acc.add(-0.5 * f(u));
    acc.add(-d1(u) / 12.0);
    acc.add(d3(u) / 720.0);
    Ok(acc.value())
}

/// Reference `Ψ_k'(t) = Σ_{n≥0} 1/(nk + t)²`, closed with Euler–Maclaurin.
pub fn trigamma_k_series(t: f64, k: f64) -> Result<f64> {
    check_positive("t", t)?;
    check_positive("k", k)?;
    let s = t / k;
    let mut acc = CompensatedSum::new();
    for n in 0..SERIES_TERMS {
        let d = n as f64 * k + t;
        acc.add(1.0 / (d * d));
    }
    // Σ_{n≥N} g(n) with g(u) = 1/(k²(u+s)²)
    let v = SERIES_TERMS as f64 + s;
    let k2 = k * k;
    acc.add(1.0 / (v * k2));
    acc.add(0.5 / (v * v * k2));
    acc.add(2.0 / (12.0 * v.powi(3) * k2));
    acc.add(-24.0 / (720.0 * v.powi(5) * k2));
    Ok(acc.value())
}

const QUADRATURE_MAX_INTERVALS: usize = 4000;

/// `Γ_k(x) = ∫_0^∞ t^{x-1} e^{-t^k/k} dt` by adaptive quadrature.
///
/// With `t = x^{1/k} e^w` the integrand becomes
/// `x^{x/k} e^{-x/k} · exp(x w - (x/k)(e^{kw} - 1))`, peaked at `w = 0` with
/// unit height. Each half-line is mapped onto `[0, 1)` by `w = ±σ s/(1-s)`.
pub fn gamma_k_integral_oracle(arg: KGammaArg, tol: f64) -> Result<f64> {
    if !(tol > 1e-12 && tol < 1e-2) {
        return Err(Error::Parameter(format!(
            "quadrature tolerance must lie in (1e-12, 1e-2), got {tol}"
        )));
    }
    let (x, k) = (arg.x, arg.k);
    let rate = x / k;
    let shape = move |w: f64| {
        let e = x * w - rate * (k * w).exp_m1();
        if e < -745.0 {
            0.0
        } else {
            e.exp()
        }
    };
    let width = 1.0 / (k * x).sqrt();
    let left_scale = width.max(1.0 / x);
    let mapped = |scale: f64, sign: f64| {
        move |s: f64| {
            let one_minus = 1.0 - s;
            let w = sign * scale * s / one_minus;
            let g = shape(w);
            if g == 0.0 {
                0.0
            } else {
                g * scale / (one_minus * one_minus)
            }
        }
    };
    // Split the tolerance between the halves; both are positive.
    let right = quadrature::integrate(
        mapped(width, 1.0),
        0.0,
        1.0,
        0.5 * tol,
        0.0,
        QUADRATURE_MAX_INTERVALS,
    )?;
    let left = quadrature::integrate(
        mapped(left_scale, -1.0),
        0.0,
        1.0,
        0.5 * tol,
        0.0,
        QUADRATURE_MAX_INTERVALS,
    )?;
    let log_prefactor = rate * (x.ln() - 1.0);
    let v = (left.value + right.value) * log_prefactor.exp();
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow(format!("Γ_k({x}) with k = {k} exceeds f64")))
    }
}

/// The `n`-th approximant `n! kⁿ (nk)^{x/k - 1} / (x)_{n,k}` of the limit
/// formula, evaluated as
/// `exp(ln(nk/x) + (x/k - 1) ln(nk) - Σ_{j=1}^{n-1} ln(1 + x/(jk)))`.
pub fn gamma_k_limit_oracle(arg: KGammaArg, n: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Parameter("limit approximant needs n >= 1".into()));
    }
    let (x, k) = (arg.x, arg.k);
    let nk = n as f64 * k;
    let mut acc = CompensatedSum::new();
    acc.add((nk / x).ln());
    acc.add((x / k - 1.0) * nk.ln());
    let ratio = x / k;
    for j in 1..n {
        acc.add(-(ratio / j as f64).ln_1p());
    }
    let v = acc.value().exp();
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow(format!("limit approximant at n = {n} exceeds f64")))
    }
}
