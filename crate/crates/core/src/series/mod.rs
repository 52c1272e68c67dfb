//! Power series with certified truncation bounds.
//!
//! Every evaluator here feeds a [`TermSource`] to [`sum_certified`]. Terms
//! are produced as `(ln |t_n|, sign)` pairs and exponentiated once. After
//! adding `t_n` the engine asks the source for `r`, an upper bound on
//! `|t_{m+1} / t_m|` valid for *every* `m >= n + 1`. When `r < 1` the tail is
//! bounded by `|t_{n+1}| / (1 - r)` (or by `|t_{n+1}|` for alternating series)
//! and summation stops once that bound drops below half the tolerance.
//! The reported `abs_error_bound` adds `2u Σ|t_i|` for accumulation rounding.

mod hypergeometric;
mod kbessel;
mod wright;

pub use hypergeometric::{hyp_pfq, hyp_pfq_with};
pub use kbessel::{
    confluent_phi_k, confluent_phi_k_with, j_kbessel, j_kbessel_with, modified_i_kbessel,
    modified_i_kbessel_with, w_kbessel, w_kbessel_with, KBesselParams, KBesselShape,
};
pub use wright::{
    wright_psi, wright_psi_with, wright_representation, wright_representation_with,
    RepresentationConstants, WrightParams,
};

pub(crate) use kbessel::{ln_bessel_coefficient, ln_confluent_coefficient, modified_i_relative};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::summation::CompensatedSum;

/// Default term budget.
pub const DEFAULT_MAX_TERMS: usize = 10_000;

/// Smallest and largest accepted relative tolerances.
pub const MIN_TOL: f64 = 1e-15;
pub const MAX_TOL: f64 = 1e-3;

/// A series value together with its truncation certificate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalResult {
    pub value: f64,
    /// Bound on `|value - exact sum|` from truncation plus accumulation.
    pub abs_error_bound: f64,
    pub terms_used: usize,
    /// `abs_error_bound <= tol * max(1, |value|)`.
    pub converged: bool,
}

impl EvalResult {
    /// A value that needs no truncation (a single surviving term).
    pub(crate) fn exact(value: f64) -> Self {
        Self {
            value,
            abs_error_bound: 0.0,
            terms_used: 1,
            converged: true,
        }
    }

    pub(crate) fn scaled(self, factor: f64) -> Self {
        Self {
            value: self.value * factor,
            abs_error_bound: self.abs_error_bound * factor.abs(),
            ..self
        }
    }
}

/// Tolerance and term budget for one evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesOptions {
    tol: f64,
    max_terms: usize,
}

impl SeriesOptions {
    pub fn new(tol: f64) -> Result<Self> {
        Self::with_max_terms(tol, DEFAULT_MAX_TERMS)
    }

    pub fn with_max_terms(tol: f64, max_terms: usize) -> Result<Self> {
        if !(MIN_TOL..=MAX_TOL).contains(&tol) {
            return Err(Error::Parameter(format!(
                "tolerance must lie in [{MIN_TOL:e}, {MAX_TOL:e}], got {tol:e}"
            )));
        }
        if max_terms == 0 {
            return Err(Error::Parameter("max_terms must be >= 1".into()));
        }
        Ok(Self { tol, max_terms })
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }
}

/// A single series term in log-magnitude form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Term {
    pub ln_abs: f64,
    pub negative: bool,
}

impl Term {
    pub const ZERO: Term = Term {
        ln_abs: f64::NEG_INFINITY,
        negative: false,
    };

    pub fn new(ln_abs: f64, negative: bool) -> Self {
        Self { ln_abs, negative }
    }

    pub fn magnitude(&self) -> f64 {
        self.ln_abs.exp()
    }

    pub fn value(&self) -> f64 {
        let m = self.magnitude();
        if self.negative {
            -m
        } else {
            m
        }
    }
}

/// A series whose terms are requested in order `0, 1, 2, ...`.
pub(crate) trait TermSource {
    fn term(&mut self, n: usize) -> Term;

    /// An upper bound on `|t_{m+1} / t_m|` valid for all `m >= n`, given
    /// `t_n` and `t_{n+1}`; `None` when no certificate is available at `n`.
    fn ratio_cap(&self, n: usize, current: Term, next: Term) -> Option<f64>;

    /// Terms strictly alternate in sign.
    fn alternating(&self) -> bool {
        false
    }

    /// Index from which every term is exactly zero.
    fn vanishes_from(&self) -> Option<usize> {
        None
    }
}

pub(crate) fn sum_certified<S: TermSource>(source: &mut S, opts: &SeriesOptions) -> Result<EvalResult> {
    sum_certified_in_units(source, opts, 1.0)
}

/// As [`sum_certified`] for a sum that will be multiplied by `1/unit`:
/// the tolerance applies to `max(unit, |S|)` instead of `max(1, |S|)`.
pub(crate) fn sum_certified_in_units<S: TermSource>(
    source: &mut S,
    opts: &SeriesOptions,
    unit: f64,
) -> Result<EvalResult> {
    let mut cache: Vec<Term> = Vec::new();
    let mut fetch = |source: &mut S, n: usize| -> Term {
        while cache.len() <= n {
            let i = cache.len();
            cache.push(source.term(i));
        }
        cache[n]
    };
    let vanish = source.vanishes_from();
    let mut acc = CompensatedSum::new();
    let mut last_tail = f64::INFINITY;
    for n in 0..opts.max_terms {
        let t = fetch(source, n);
        let v = t.value();
        if !v.is_finite() {
            return Err(Error::Overflow(format!("series term {n} is not finite")));
        }
        acc.add(v);
        let tail = if vanish.is_some_and(|m| m <= n + 1) {
            Some(0.0)
        } else {
            let next = fetch(source, n + 1);
            let after = fetch(source, n + 2);
            source
                .ratio_cap(n + 1, next, after)
                .filter(|r| *r < 1.0)
                .map(|r| {
                    if source.alternating() {
                        next.magnitude()
                    } else {
                        next.magnitude() / (1.0 - r)
                    }
                })
        };
        let value = acc.value();
        if !value.is_finite() {
            return Err(Error::Overflow("partial sum is not finite".into()));
        }
        let scale = value.abs().max(unit);
        if let Some(tail) = tail {
            last_tail = tail;
            if tail <= 0.5 * opts.tol * scale {
                let rounding = 2.0 * f64::EPSILON * acc.abs_sum();
                let bound = tail + rounding;
                return Ok(EvalResult {
                    value,
                    abs_error_bound: bound,
                    terms_used: n + 1,
                    converged: bound <= opts.tol * scale,
                });
            }
        }
    }
    Err(Error::NonConvergence {
        max_terms: opts.max_terms,
        tail_bound: last_tail,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Σ zⁿ/n! with the exact ratio cap |z|/(n+1).
    struct Exponential {
        z: f64,
        ln_abs: f64,
    }

    impl TermSource for Exponential {
        fn term(&mut self, n: usize) -> Term {
            if n > 0 {
                self.ln_abs += self.z.abs().ln() - (n as f64).ln();
            }
            Term::new(self.ln_abs, self.z < 0.0 && n % 2 == 1)
        }
        fn ratio_cap(&self, n: usize, _: Term, _: Term) -> Option<f64> {
            Some(self.z.abs() / (n as f64 + 1.0))
        }
        fn alternating(&self) -> bool {
            self.z < 0.0
        }
    }

    #[test]
    fn exponential_series_meets_tolerance() {
        for z in [-1.0, 0.5, 3.0, 10.0] {
            let opts = SeriesOptions::new(1e-14).unwrap();
            let r = sum_certified(&mut Exponential { z, ln_abs: 0.0 }, &opts).unwrap();
            assert!(r.converged);
            let err = (r.value - f64::exp(z)).abs();
            assert!(err <= r.abs_error_bound + 4.0 * f64::EPSILON * f64::exp(z), "z={z}");
        }
    }

    #[test]
    fn cancellation_is_reported_as_unconverged() {
        // Σ|t| = e⁵ makes the rounding term alone exceed 1e-14 · max(1, e⁻⁵).
        let opts = SeriesOptions::new(1e-14).unwrap();
        let r = sum_certified(&mut Exponential { z: -5.0, ln_abs: 0.0 }, &opts).unwrap();
        assert!(!r.converged);
        assert!((r.value - f64::exp(-5.0)).abs() <= r.abs_error_bound);
    }

    #[test]
    fn budget_exhaustion_is_loud() {
        let opts = SeriesOptions::with_max_terms(1e-14, 5).unwrap();
        let err = sum_certified(&mut Exponential { z: 10.0, ln_abs: 0.0 }, &opts).unwrap_err();
        assert!(matches!(err, Error::NonConvergence { max_terms: 5, .. }));
    }

    #[test]
    fn tolerance_range_is_enforced() {
        assert!(SeriesOptions::new(1e-16).is_err());
        assert!(SeriesOptions::new(1e-2).is_err());
        assert!(SeriesOptions::new(1e-15).is_ok());
        assert!(SeriesOptions::new(1e-3).is_ok());
        assert!(SeriesOptions::with_max_terms(1e-8, 0).is_err());
    }
}
