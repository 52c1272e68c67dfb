//! Generalized Wright function
//! `ₚψ_q(z) = Σ Π Γ(a_i + α_i n) / Π Γ(b_j + β_j n) · zⁿ/n!` and the
//! representation of the generalized k-Bessel function as a scaled `₁ψ₂`.

use serde::{Deserialize, Serialize};

use super::{sum_certified_in_units, EvalResult, KBesselParams, SeriesOptions, Term, TermSource};
use crate::classical::ln_gamma;
use crate::error::{Error, Result};

/// Upper pairs `(a_i, α_i)` and lower pairs `(b_j, β_j)`.
///
/// Supported: nonnegative weights, and gamma arguments `a_i + α_i n`,
/// `b_j + β_j n` that stay positive for all `n >= 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WrightParams {
    pub upper: Vec<(f64, f64)>,
    pub lower: Vec<(f64, f64)>,
}

impl WrightParams {
    pub fn new(upper: Vec<(f64, f64)>, lower: Vec<(f64, f64)>) -> Result<Self> {
        let wp = Self { upper, lower };
        wp.validate()?;
        Ok(wp)
    }

    /// `Σβ_j - Σα_i`; the series converges for every z when this exceeds -1.
    pub fn weight_excess(&self) -> f64 {
        self.lower.iter().map(|p| p.1).sum::<f64>() - self.upper.iter().map(|p| p.1).sum::<f64>()
    }

    pub fn validate(&self) -> Result<()> {
        for &(v, w) in self.upper.iter().chain(&self.lower) {
            if !v.is_finite() || !w.is_finite() {
                return Err(Error::Parameter("Wright parameters must be finite".into()));
            }
            if w < 0.0 {
                return Err(Error::Parameter(format!("negative weight {w} is not supported")));
            }
        }
        let excess = self.weight_excess();
        if excess <= -1.0 {
            return Err(Error::ConvergenceCondition(excess));
        }
        check_gamma_arguments(&self.upper)?;
        check_gamma_arguments(&self.lower)?;
        Ok(())
    }
}

/// With `w >= 0` the argument `v + w n` is smallest at `n = 0` and can only
/// be nonpositive for `n <= -v / w`; any such index is either a pole or a
/// negative argument outside the supported domain.
fn check_gamma_arguments(pairs: &[(f64, f64)]) -> Result<()> {
    for &(v, w) in pairs {
        if v > 0.0 {
            continue;
        }
        let last = if w > 0.0 { (-v / w).floor() as usize } else { 0 };
        for n in 0..=last {
            let arg = v + w * n as f64;
            if arg <= 0.0 && arg.fract() == 0.0 {
                return Err(Error::Pole { argument: arg, index: n });
            }
        }
        return Err(Error::Parameter(format!(
            "gamma argument {v} + {w}·n is negative for small n; only positive arguments are supported"
        )));
    }
    Ok(())
}

struct WrightTerms<'a> {
    wp: &'a WrightParams,
    ln_z: f64,
    negative: bool,
}

impl WrightTerms<'_> {
    /// Upper bound on `sup_{m >= n} (m + 1) h'(m)`, where `h(m) = ln |t_{m+1}/t_m|`.
    ///
    /// Uses `ψ(y + α) - ψ(y) <= α ψ'(y) < α (1/y + 1/y²)` for the upper
    /// gammas, `ψ(z + β) - ψ(z) >= β ψ'(z + β) > β / (z + β)` for the lower
    /// ones, and the monotonicity of each factor `(m + 1)/(linear in m)`.
    fn slope_bound(&self, n: usize) -> f64 {
        let m = n as f64;
        let mut v = -1.0;
        for &(a, alpha) in &self.wp.upper {
            if alpha == 0.0 {
                continue;
            }
            let y = a + alpha * m;
            v += alpha * alpha * ((m + 1.0) / y).max(1.0 / alpha) * (1.0 + 1.0 / y);
        }
        for &(b, beta) in &self.wp.lower {
            if beta == 0.0 {
                continue;
            }
            let z = b + beta * m + beta;
            v -= beta * beta * ((m + 1.0) / z).min(1.0 / beta);
        }
        v
    }
}

impl TermSource for WrightTerms<'_> {
    fn term(&mut self, n: usize) -> Term {
        let nf = n as f64;
        let mut ln_abs = if n == 0 { 0.0 } else { nf * self.ln_z - ln_gamma(nf + 1.0) };
        for &(a, alpha) in &self.wp.upper {
            ln_abs += ln_gamma(a + alpha * nf);
        }
        for &(b, beta) in &self.wp.lower {
            ln_abs -= ln_gamma(b + beta * nf);
        }
        Term::new(ln_abs, self.negative && n % 2 == 1)
    }

    // Once the slope bound is nonpositive, ln|t_{m+1}/t_m| is nonincreasing
    // on [n, ∞) and the ratio observed at n caps all later ones.
    fn ratio_cap(&self, n: usize, current: Term, next: Term) -> Option<f64> {
        (self.slope_bound(n) <= 0.0).then(|| (next.ln_abs - current.ln_abs).exp())
    }

    fn alternating(&self) -> bool {
        self.negative
    }
}

/// `ₚψ_q[(a_i, α_i); (b_j, β_j) | z]`.
pub fn wright_psi(wp: &WrightParams, z: f64, tol: f64) -> Result<EvalResult> {
    wright_psi_with(wp, z, &SeriesOptions::new(tol)?)
}

pub fn wright_psi_with(wp: &WrightParams, z: f64, opts: &SeriesOptions) -> Result<EvalResult> {
    psi_in_units(wp, z, opts, 1.0)
}

fn psi_in_units(wp: &WrightParams, z: f64, opts: &SeriesOptions, unit: f64) -> Result<EvalResult> {
    wp.validate()?;
    if !z.is_finite() {
        return Err(Error::Parameter(format!("z must be finite, got {z}")));
    }
    let mut terms = WrightTerms {
        wp,
        ln_z: z.abs().ln(),
        negative: z < 0.0,
    };
    if z == 0.0 {
        return Ok(EvalResult::exact(terms.term(0).value()));
    }
    sum_certified_in_units(&mut terms, opts, unit)
}

/// Which constants to use in `W = prefactor · ₁ψ₂[...]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RepresentationConstants {
    /// Prefactor `k^{1 - (ν+1)/k} / Γ(γ/k)`, lower pair `((ν+1)/k, λ/k)`.
    /// Reproduces the defining series.
    Derived,
    /// Prefactor `k^{-(ν+k+1)/k} / Γ(γ/k)` with the derived lower pair.
    /// Equals the series divided by `k²`.
    PrintedPrefactor,
    /// Prefactor `k^{-(ν+k+1)/k} / Γ(γ/k)` and lower pair `((ν+1)/k, γ/k)`.
    Printed,
}

impl RepresentationConstants {
    fn ln_prefactor(self, p: &KBesselParams) -> f64 {
        let ln_k = p.k.ln();
        let power = match self {
            RepresentationConstants::Derived => 1.0 - (p.nu + 1.0) / p.k,
            RepresentationConstants::PrintedPrefactor | RepresentationConstants::Printed => {
                -(p.nu + p.k + 1.0) / p.k
            }
        };
        power * ln_k - ln_gamma(p.gamma / p.k)
    }

    fn lower_weight(self, p: &KBesselParams) -> f64 {
        match self {
            RepresentationConstants::Printed => p.gamma / p.k,
            _ => p.lambda / p.k,
        }
    }
}

/// `W_{k,ν,c}^{γ,λ}(x)` evaluated as a scaled `₁ψ₂` with the derived constants.
pub fn wright_representation(params: &KBesselParams, x: f64, tol: f64) -> Result<EvalResult> {
    wright_representation_with(params, x, &SeriesOptions::new(tol)?, RepresentationConstants::Derived)
}

pub fn wright_representation_with(
    params: &KBesselParams,
    x: f64,
    opts: &SeriesOptions,
    constants: RepresentationConstants,
) -> Result<EvalResult> {
    params.validate()?;
    let k = params.k;
    let wp = WrightParams::new(
        vec![(params.gamma / k, 1.0)],
        vec![((params.nu + 1.0) / k, constants.lower_weight(params)), (1.0, 1.0)],
    )?;
    let z = -params.c * x * k.powf(1.0 - params.lambda / k) / 2.0;
    // The tolerance is meant for W itself, so the ₁ψ₂ sum is certified
    // against 1/prefactor rather than 1. The derived prefactor sets the unit
    // for every variant, which keeps the sum identical when only the
    // prefactor differs.
    let unit = (-RepresentationConstants::Derived.ln_prefactor(params)).exp();
    let psi = psi_in_units(&wp, z, opts, unit)?;
    Ok(psi.scaled(constants.ln_prefactor(params).exp()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::w_kbessel;
    use std::f64::consts::E;

    #[test]
    fn exponential_and_bessel_cases() {
        let wp = WrightParams::new(vec![(1.0, 1.0)], vec![(1.0, 1.0)]).unwrap();
        assert!((wright_psi(&wp, 1.0, 1e-15).unwrap().value - E).abs() < 1e-15);

        // Σ zⁿ/(n!)² at z = 0.5 by partial sums.
        let brute: f64 = {
            let (mut t, mut s) = (1.0f64, 1.0f64);
            for n in 1..40 {
                t *= 0.5 / (n as f64 * n as f64);
                s += t;
            }
            s
        };
        let wp = WrightParams::new(vec![(1.0, 1.0)], vec![(1.0, 1.0), (1.0, 1.0)]).unwrap();
        let r = wright_psi(&wp, 0.5, 1e-15).unwrap();
        assert!((r.value - brute).abs() < 1e-15);
        assert!((r.value - 1.5660829297563503).abs() < 1e-15);
    }

    #[test]
    fn zero_argument_is_first_term() {
        let wp = WrightParams::new(vec![(2.5, 0.3)], vec![(0.5, 1.2)]).unwrap();
        let r = wright_psi(&wp, 0.0, 1e-12).unwrap();
        assert_eq!(r.value, (ln_gamma(2.5) - ln_gamma(0.5)).exp());
    }

    #[test]
    fn convergence_condition_gate() {
        let err = WrightParams::new(vec![(1.0, 2.0)], vec![(1.0, 0.5)]).unwrap_err();
        assert!(matches!(err, Error::ConvergenceCondition(e) if e == -1.5));
        let wp = WrightParams { upper: vec![(1.0, 1.0), (1.0, 1.0)], lower: vec![] };
        assert!(matches!(wright_psi(&wp, 0.1, 1e-10), Err(Error::ConvergenceCondition(_))));
    }

    #[test]
    fn poles_and_negative_arguments() {
        let wp = WrightParams { upper: vec![], lower: vec![(-2.0, 1.0)] };
        assert!(matches!(wp.validate(), Err(Error::Pole { argument, index: 0 }) if argument == -2.0));
        let wp = WrightParams { upper: vec![], lower: vec![(-1.5, 0.5)] };
        assert!(matches!(wp.validate(), Err(Error::Pole { argument, index: 1 }) if argument == -1.0));
        let wp = WrightParams { upper: vec![(-0.5, 1.0)], lower: vec![(1.0, 1.0)] };
        assert!(matches!(wp.validate(), Err(Error::Parameter(_))));
        let wp = WrightParams { upper: vec![(1.0, -1.0)], lower: vec![] };
        assert!(matches!(wp.validate(), Err(Error::Parameter(_))));
    }

    #[test]
    fn representation_reproduces_series_at_k1() {
        let p = KBesselParams::new(1.0, 0.0, 1.0, 1.0, -1.0).unwrap();
        let rep = wright_representation(&p, 0.5, 1e-14).unwrap().value;
        let w = w_kbessel(&p, 0.5, 1e-14).unwrap().value;
        assert!((rep / w - 1.0).abs() < 1e-12);
        // Both prefactors agree at k = 1.
        let opts = SeriesOptions::new(1e-14).unwrap();
        let printed =
            wright_representation_with(&p, 0.5, &opts, RepresentationConstants::PrintedPrefactor).unwrap();
        assert!((printed.value / w - 1.0).abs() < 1e-12);
    }

    #[test]
    fn representation_at_k2() {
        let p = KBesselParams::new(2.0, 0.5, 1.5, 1.0, -1.0).unwrap();
        let opts = SeriesOptions::new(1e-14).unwrap();
        let w = w_kbessel(&p, 1.0, 1e-14).unwrap().value;
        let rep = wright_representation_with(&p, 1.0, &opts, RepresentationConstants::Derived).unwrap();
        assert!((rep.value / w - 1.0).abs() < 1e-10);
        let printed =
            wright_representation_with(&p, 1.0, &opts, RepresentationConstants::PrintedPrefactor).unwrap();
        assert!((printed.value / w - 0.25).abs() < 1e-12);
        // The fully printed form (lower weight γ/k) is a different function of x.
        let full = wright_representation_with(&p, 1.0, &opts, RepresentationConstants::Printed).unwrap();
        assert!((full.value * 4.0 / w - 1.0).abs() > 1e-3);
    }
}
