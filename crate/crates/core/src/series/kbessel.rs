//! The generalized k-Bessel series
//! `W(x) = Σ (γ)_{n,k} / Γ_k(λn + ν + 1) · (-c)ⁿ (x/2)ⁿ / (n!)²`,
//! its `I` (c = -1) and `J` (c = +1) members, and the k-confluent
//! hypergeometric series `Φ_k(a; c; x) = Σ (a)_{n,k} / ((c)_{n,k} n!) xⁿ`.

use serde::{Deserialize, Serialize};

use super::{sum_certified, sum_certified_in_units, EvalResult, SeriesOptions, Term, TermSource};
use crate::classical::ln_gamma;
use crate::error::{Error, Result};
use crate::kgamma::{check_positive, ln_gamma_k_unchecked, ln_pochhammer_k_unchecked};

/// `(k, ν, γ, λ)`: the parameters shared by `I` and `J`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KBesselShape {
    pub k: f64,
    pub nu: f64,
    pub gamma: f64,
    pub lambda: f64,
}

/// `(k, ν, γ, λ, c)` of the generalized k-Bessel function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KBesselParams {
    pub k: f64,
    pub nu: f64,
    pub gamma: f64,
    pub lambda: f64,
    pub c: f64,
}

impl KBesselShape {
    pub fn new(k: f64, nu: f64, gamma: f64, lambda: f64) -> Result<Self> {
        let s = Self { k, nu, gamma, lambda };
        s.validate()?;
        Ok(s)
    }

    /// `k > 0`, `λ > 0`, `γ > 0`, `ν > -1`, all finite.
    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            check_positive(name, v).map_err(|_| Error::Parameter(format!("{name} must be > 0, got {v}")))
        };
        positive("k", self.k)?;
        positive("lambda", self.lambda)?;
        positive("gamma", self.gamma)?;
        if !(self.nu > -1.0 && self.nu.is_finite()) {
            return Err(Error::Parameter(format!("nu must be > -1, got {}", self.nu)));
        }
        Ok(())
    }

    pub fn with_c(&self, c: f64) -> KBesselParams {
        KBesselParams {
            k: self.k,
            nu: self.nu,
            gamma: self.gamma,
            lambda: self.lambda,
            c,
        }
    }
}

impl KBesselParams {
    pub fn new(k: f64, nu: f64, gamma: f64, lambda: f64, c: f64) -> Result<Self> {
        let p = Self { k, nu, gamma, lambda, c };
        p.validate()?;
        Ok(p)
    }

    pub fn shape(&self) -> KBesselShape {
        KBesselShape {
            k: self.k,
            nu: self.nu,
            gamma: self.gamma,
            lambda: self.lambda,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.shape().validate()?;
        if !self.c.is_finite() {
            return Err(Error::Parameter(format!("c must be finite, got {}", self.c)));
        }
        Ok(())
    }
}

/// `ln [(γ)_{n,k} / Γ_k(λn + ν + 1)]`: the k-dependent part of the n-th
/// coefficient, without `(-c/2)ⁿ / (n!)²`.
pub(crate) fn ln_bessel_coefficient(shape: &KBesselShape, n: f64) -> f64 {
    let KBesselShape { k, nu, gamma, lambda } = *shape;
    ln_pochhammer_k_unchecked(gamma, n, k) - ln_gamma_k_unchecked(lambda * n + nu + 1.0, k)
}

/// `ln [(a)_{n,k} / ((c)_{n,k} n!)]`.
pub(crate) fn ln_confluent_coefficient(a: f64, c: f64, k: f64, n: f64) -> f64 {
    ln_pochhammer_k_unchecked(a, n, k) - ln_pochhammer_k_unchecked(c, n, k) - ln_gamma(n + 1.0)
}

struct BesselTerms {
    shape: KBesselShape,
    ln_base: f64,
    negative_base: bool,
}

impl TermSource for BesselTerms {
    fn term(&mut self, n: usize) -> Term {
        let nf = n as f64;
        let ln_abs = ln_bessel_coefficient(&self.shape, nf) + nf * self.ln_base
            - 2.0 * ln_gamma(nf + 1.0);
        Term::new(ln_abs, self.negative_base && n % 2 == 1)
    }

    // For m >= 1 the ratio |t_{m+1}/t_m| is the product of
    // (γ + mk)/(m + 1)², decreasing once m > 1 - 2γ/k, and
    // Γ_k(y)/Γ_k(y + λ) with y = λm + ν + 1, decreasing because Ψ_k is
    // increasing. So the observed ratio at m = n caps every later one.
    fn ratio_cap(&self, n: usize, current: Term, next: Term) -> Option<f64> {
        (n >= 1).then(|| (next.ln_abs - current.ln_abs).exp())
    }

    fn alternating(&self) -> bool {
        self.negative_base
    }
}

/// Generalized k-Bessel function `W_{k,ν,c}^{γ,λ}(x)`.
pub fn w_kbessel(params: &KBesselParams, x: f64, tol: f64) -> Result<EvalResult> {
    w_kbessel_with(params, x, &SeriesOptions::new(tol)?)
}

pub fn w_kbessel_with(params: &KBesselParams, x: f64, opts: &SeriesOptions) -> Result<EvalResult> {
    w_in_units(params, x, opts, 1.0)
}

/// `I_{k,ν}^{γ,λ}(x)` for `x >= 0` with the tolerance read relative to the
/// value. All terms are positive, so the sum is at least its first term
/// `1/Γ_k(ν+1)`, which serves as the unit.
pub(crate) fn modified_i_relative(shape: &KBesselShape, x: f64, opts: &SeriesOptions) -> Result<EvalResult> {
    let first = (-ln_gamma_k_unchecked(shape.nu + 1.0, shape.k)).exp();
    w_in_units(&shape.with_c(-1.0), x, opts, first.max(f64::MIN_POSITIVE))
}

fn w_in_units(params: &KBesselParams, x: f64, opts: &SeriesOptions, unit: f64) -> Result<EvalResult> {
    params.validate()?;
    if !x.is_finite() {
        return Err(Error::Parameter(format!("x must be finite, got {x}")));
    }
    let shape = params.shape();
    let base = -params.c * x / 2.0;
    if base == 0.0 {
        let v = (-ln_gamma_k_unchecked(shape.nu + 1.0, shape.k)).exp();
        return Ok(EvalResult::exact(v));
    }
    let mut terms = BesselTerms {
        shape,
        ln_base: base.abs().ln(),
        negative_base: base < 0.0,
    };
    sum_certified_in_units(&mut terms, opts, unit)
}

/// Modified k-Bessel function `I_{k,ν}^{γ,λ}(x) = W` with `c = -1`.
pub fn modified_i_kbessel(shape: &KBesselShape, x: f64, tol: f64) -> Result<EvalResult> {
    modified_i_kbessel_with(shape, x, &SeriesOptions::new(tol)?)
}

pub fn modified_i_kbessel_with(shape: &KBesselShape, x: f64, opts: &SeriesOptions) -> Result<EvalResult> {
    w_kbessel_with(&shape.with_c(-1.0), x, opts)
}

/// k-Bessel function of the first kind `J_{k,ν}^{γ,λ}(x) = W` with `c = +1`.
pub fn j_kbessel(shape: &KBesselShape, x: f64, tol: f64) -> Result<EvalResult> {
    j_kbessel_with(shape, x, &SeriesOptions::new(tol)?)
}

pub fn j_kbessel_with(shape: &KBesselShape, x: f64, opts: &SeriesOptions) -> Result<EvalResult> {
    w_kbessel_with(&shape.with_c(1.0), x, opts)
}

struct ConfluentTerms {
    a: f64,
    c: f64,
    k: f64,
    ln_x: f64,
    abs_x: f64,
    negative: bool,
}

impl TermSource for ConfluentTerms {
    fn term(&mut self, n: usize) -> Term {
        let nf = n as f64;
        let ln_abs = ln_confluent_coefficient(self.a, self.c, self.k, nf) + nf * self.ln_x;
        Term::new(ln_abs, self.negative && n % 2 == 1)
    }

    // (a + mk)/(c + mk) is monotone in m and tends to 1.
    fn ratio_cap(&self, n: usize, _: Term, _: Term) -> Option<f64> {
        let m = n as f64;
        let pair = ((self.a + m * self.k) / (self.c + m * self.k)).max(1.0);
        Some(pair * self.abs_x / (m + 1.0))
    }

    fn alternating(&self) -> bool {
        self.negative
    }
}

/// k-confluent hypergeometric function `Φ_k(a; c; x)`.
pub fn confluent_phi_k(a: f64, c: f64, k: f64, x: f64, tol: f64) -> Result<EvalResult> {
    confluent_phi_k_with(a, c, k, x, &SeriesOptions::new(tol)?)
}

pub fn confluent_phi_k_with(a: f64, c: f64, k: f64, x: f64, opts: &SeriesOptions) -> Result<EvalResult> {
    for (name, v) in [("a", a), ("c", c), ("k", k)] {
        check_positive(name, v).map_err(|_| Error::Parameter(format!("{name} must be > 0, got {v}")))?;
    }
    if !x.is_finite() {
        return Err(Error::Parameter(format!("x must be finite, got {x}")));
    }
    if x == 0.0 {
        return Ok(EvalResult::exact(1.0));
    }
    let mut terms = ConfluentTerms {
        a,
        c,
        k,
        ln_x: x.abs().ln(),
        abs_x: x.abs(),
        negative: x < 0.0,
    };
    sum_certified(&mut terms, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kgamma::{gamma_k, KGammaArg};
    use std::f64::consts::{E, PI};

    fn shape(k: f64, nu: f64, gamma: f64, lambda: f64) -> KBesselShape {
        KBesselShape::new(k, nu, gamma, lambda).unwrap()
    }

    /// Partial sums of Σ (-c x/2)ⁿ (γ)_n / (Γ(n+ν+1) (n!)²) for k = λ = 1,
    /// built by a plain product recurrence.
    fn brute_force_k1(nu: f64, gamma: f64, c: f64, x: f64, gamma_nu1: f64, n_max: usize) -> f64 {
        let mut term = 1.0 / gamma_nu1;
        let mut sum = term;
        for n in 0..n_max {
            let m = n as f64;
            term *= (gamma + m) * (-c * x / 2.0) / ((m + nu + 1.0) * (m + 1.0) * (m + 1.0));
            sum += term;
        }
        sum
    }

    #[test]
    fn zero_argument_keeps_only_first_term() {
        let p = KBesselParams::new(2.5, 0.3, 1.7, 0.8, -3.0).unwrap();
        let r = w_kbessel(&p, 0.0, 1e-12).unwrap();
        let g = gamma_k(KGammaArg::new(1.3, 2.5).unwrap()).unwrap();
        assert!((r.value * g - 1.0).abs() < 1e-14);
        assert_eq!(r.terms_used, 1);
        assert_eq!(r.abs_error_bound, 0.0);
    }

    #[test]
    fn classical_i0_example() {
        let p = KBesselParams::new(1.0, 0.0, 1.0, 1.0, -1.0).unwrap();
        let r = w_kbessel(&p, 0.5, 1e-14).unwrap();
        let want = brute_force_k1(0.0, 1.0, -1.0, 0.5, 1.0, 60);
        assert!((r.value - want).abs() < 1e-14);
        assert!((r.value - 1.2660658777520082).abs() < 1e-14);
    }

    #[test]
    fn sign_symmetry_in_c_and_x() {
        let p = KBesselParams::new(1.7, 0.4, 2.2, 1.3, 0.8).unwrap();
        let q = KBesselParams { c: -0.8, ..p };
        for x in [0.3, 2.0, 9.0] {
            let a = w_kbessel(&p, x, 1e-13).unwrap();
            let b = w_kbessel(&q, -x, 1e-13).unwrap();
            assert_eq!(a.value, b.value);
        }
    }

    #[test]
    fn modified_i_examples() {
        let r = modified_i_kbessel(&shape(1.0, 0.5, 1.0, 1.0), 0.0, 1e-12).unwrap();
        assert!((r.value - 2.0 / PI.sqrt()).abs() < 1e-15);
        let r = modified_i_kbessel(&shape(1.0, 0.0, 1.0, 1.0), 2.0, 1e-14).unwrap();
        assert!((r.value - 2.2795853023360673).abs() < 1e-14);
    }

    #[test]
    fn modified_i_bounded_below_by_first_term() {
        let s = shape(0.7, -0.4, 0.3, 2.5);
        let first = modified_i_kbessel(&s, 0.0, 1e-12).unwrap().value;
        for x in [1e-6, 0.1, 5.0, 30.0] {
            assert!(modified_i_kbessel(&s, x, 1e-12).unwrap().value >= first);
        }
    }

    #[test]
    fn specializations_are_bit_identical() {
        let s = shape(1.3, 0.2, 0.9, 1.6);
        for x in [0.0, 0.7, 4.0, 15.0] {
            assert_eq!(
                j_kbessel(&s, x, 1e-12).unwrap(),
                w_kbessel(&s.with_c(1.0), x, 1e-12).unwrap()
            );
            assert_eq!(
                modified_i_kbessel(&s, x, 1e-12).unwrap(),
                w_kbessel(&s.with_c(-1.0), x, 1e-12).unwrap()
            );
        }
    }

    #[test]
    fn j_series_matches_brute_force_partial_sums() {
        let s = shape(1.0, 0.0, 1.0, 1.0);
        let r = j_kbessel(&s, 2.0, 1e-13).unwrap();
        let want = brute_force_k1(0.0, 1.0, 1.0, 2.0, 1.0, 60);
        assert!((r.value - want).abs() < 1e-13);
        assert!((r.value - 0.22389077914123567).abs() < 1e-13);
        let r0 = j_kbessel(&shape(2.0, 1.5, 0.5, 3.0), 0.0, 1e-12).unwrap();
        let g = gamma_k(KGammaArg::new(2.5, 2.0).unwrap()).unwrap();
        assert!((r0.value * g - 1.0).abs() < 1e-14);
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        assert!(KBesselParams::new(0.0, 0.0, 1.0, 1.0, 1.0).is_err());
        assert!(KBesselParams::new(1.0, -1.0, 1.0, 1.0, 1.0).is_err());
        assert!(KBesselParams::new(1.0, 0.0, -1.0, 1.0, 1.0).is_err());
        assert!(KBesselParams::new(1.0, 0.0, 1.0, 0.0, 1.0).is_err());
        assert!(KBesselParams::new(1.0, 0.0, 1.0, 1.0, f64::NAN).is_err());
        let bad = KBesselParams { k: 1.0, nu: -2.0, gamma: 1.0, lambda: 1.0, c: 1.0 };
        assert!(matches!(w_kbessel(&bad, 1.0, 1e-10), Err(Error::Parameter(_))));
    }

    #[test]
    fn tiny_budget_is_a_non_convergence_error() {
        let p = KBesselParams::new(1.0, 0.0, 1.0, 1.0, -1.0).unwrap();
        let opts = SeriesOptions::with_max_terms(1e-14, 3).unwrap();
        assert!(matches!(
            w_kbessel_with(&p, 50.0, &opts),
            Err(Error::NonConvergence { max_terms: 3, .. })
        ));
    }

    #[test]
    fn confluent_examples() {
        let r = confluent_phi_k(1.3, 1.3, 1.0, 1.0, 1e-14).unwrap();
        assert!((r.value - E).abs() < 1e-14);
        let r = confluent_phi_k(1.0, 2.0, 1.0, 1.0, 1e-14).unwrap();
        assert!((r.value - (E - 1.0)).abs() < 1e-14);
        for (a, c, k) in [(0.4, 3.0, 0.5), (2.0, 0.1, 4.0)] {
            assert_eq!(confluent_phi_k(a, c, k, 0.0, 1e-10).unwrap().value, 1.0);
        }
    }

    #[test]
    fn confluent_equals_kummer_with_rescaled_parameters() {
        // Φ_k(a; c; x) = ₁F₁(a/k; c/k; x)
        let (a, c, k) = (0.9, 2.3, 1.7);
        for x in [-3.0, 0.4, 6.0] {
            let phi = confluent_phi_k(a, c, k, x, 1e-14).unwrap().value;
            let kummer = super::super::hyp_pfq(&[a / k], &[c / k], x, 1e-14).unwrap().value;
            assert!((phi - kummer).abs() < 1e-13 * phi.abs().max(1.0), "x={x}");
        }
    }
}
