//! Generalized hypergeometric series `ₚF_q(a; b; z) = Σ Π(a_i)_n / Π(b_j)_n · zⁿ/n!`.

use super::{sum_certified, EvalResult, SeriesOptions, Term, TermSource};
use crate::error::{Error, Result};

fn is_nonpositive_integer(v: f64) -> bool {
    v <= 0.0 && v.fract() == 0.0
}

struct PfqTerms<'a> {
    upper: &'a [f64],
    lower: &'a [f64],
    z: f64,
    ln_abs: f64,
    negative: bool,
    /// Index from which all of `a_i + m` and `b_j + m` are positive.
    positive_from: usize,
    vanishes_from: Option<usize>,
}

impl TermSource for PfqTerms<'_> {
    fn term(&mut self, n: usize) -> Term {
        if n == 0 {
            return Term::new(0.0, false);
        }
        if self.vanishes_from.is_some_and(|v| n >= v) {
            return Term::ZERO;
        }
        let m = (n - 1) as f64;
        let mut ln_ratio = self.z.abs().ln() - (n as f64).ln();
        let mut flips = self.z < 0.0;
        for &a in self.upper {
            ln_ratio += (a + m).abs().ln();
            flips ^= a + m < 0.0;
        }
        for &b in self.lower {
            ln_ratio -= (b + m).abs().ln();
            flips ^= b + m < 0.0;
        }
        self.ln_abs += ln_ratio;
        self.negative ^= flips;
        Term::new(self.ln_abs, self.negative)
    }

    // Each paired factor (a + m)/(b + m) is monotone in m with limit 1, so
    // max(1, value at n) caps it for every later m; unpaired lower factors
    // 1/(b + m) decrease. With p = q + 1 the extra upper parameter pairs with
    // the (m + 1) from n!.
    fn ratio_cap(&self, n: usize, _: Term, _: Term) -> Option<f64> {
        if n < self.positive_from {
            return None;
        }
        let m = n as f64;
        let (p, q) = (self.upper.len(), self.lower.len());
        let mut cap = self.z.abs();
        for i in 0..p.min(q) {
            cap *= ((self.upper[i] + m) / (self.lower[i] + m)).max(1.0);
        }
        if p <= q {
            cap /= m + 1.0;
            for &b in &self.lower[p..] {
                cap /= b + m;
            }
        } else {
            cap *= ((self.upper[q] + m) / (m + 1.0)).max(1.0);
        }
        Some(cap)
    }

    fn alternating(&self) -> bool {
        false
    }

    fn vanishes_from(&self) -> Option<usize> {
        self.vanishes_from
    }
}

/// `ₚF_q(upper; lower; z)` on its disc of convergence.
///
/// Terminating series (an upper parameter that is a nonpositive integer)
/// are summed exactly for any `z` and any `p`, `q`.
pub fn hyp_pfq(upper: &[f64], lower: &[f64], z: f64, tol: f64) -> Result<EvalResult> {
    hyp_pfq_with(upper, lower, z, &SeriesOptions::new(tol)?)
}

pub fn hyp_pfq_with(upper: &[f64], lower: &[f64], z: f64, opts: &SeriesOptions) -> Result<EvalResult> {
    if let Some((j, &b)) = lower.iter().enumerate().find(|(_, &b)| is_nonpositive_integer(b)) {
        return Err(Error::Parameter(format!(
            "lower parameter b_{} = {b} is zero or a negative integer",
            j + 1
        )));
    }
    if upper.iter().chain(lower).chain([&z]).any(|v| !v.is_finite()) {
        return Err(Error::Parameter("pFq parameters and argument must be finite".into()));
    }
    if z == 0.0 {
        return Ok(EvalResult::exact(1.0));
    }
    let vanishes_from = upper
        .iter()
        .filter(|&&a| is_nonpositive_integer(a))
        .map(|&a| (-a) as usize + 1)
        .min();
    let (p, q) = (upper.len(), lower.len());
    if vanishes_from.is_none() {
        if p > q + 1 {
            return Err(Error::Divergent { p, q });
        }
        if p == q + 1 && z.abs() >= 1.0 {
            return Err(Error::Radius { z });
        }
    }
    let positive_from = upper
        .iter()
        .chain(lower)
        .filter(|&&v| v <= 0.0)
        .map(|&v| (-v).floor() as usize + 1)
        .max()
        .unwrap_or(0);
    let mut terms = PfqTerms {
        upper,
        lower,
        z,
        ln_abs: 0.0,
        negative: false,
        positive_from,
        vanishes_from,
    };
    sum_certified(&mut terms, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    #[test]
    fn elementary_cases() {
        assert!((hyp_pfq(&[], &[], 1.0, 1e-15).unwrap().value - E).abs() < 1e-15);
        assert!((hyp_pfq(&[1.0], &[], 0.5, 1e-15).unwrap().value - 2.0).abs() < 1e-14);
    }

    #[test]
    fn gauss_log_case_matches_partial_sums() {
        // ₂F₁(1,1;2;z) = Σ zⁿ/(n+1)
        let z: f64 = 0.5;
        let brute: f64 = (0..200).map(|n| z.powi(n) / (n as f64 + 1.0)).sum();
        let r = hyp_pfq(&[1.0, 1.0], &[2.0], z, 1e-14).unwrap();
        assert!((r.value - brute).abs() < 1e-14);
        assert!((r.value - 2.0 * 2f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn terminating_series_is_exact() {
        // ₂F₁(-2, b; c; z) = 1 - 2bz/c + b(b+1)z²/(c(c+1))
        let (b, c, z) = (1.5, 0.7, 3.0);
        let want = 1.0 - 2.0 * b * z / c + b * (b + 1.0) * z * z / (c * (c + 1.0));
        let r = hyp_pfq(&[-2.0, b], &[c], z, 1e-14).unwrap();
        assert!((r.value - want).abs() < 1e-13 * want.abs());
        assert_eq!(r.terms_used, 3);
        // Terminating series escape the divergence and radius gates.
        assert!(hyp_pfq(&[-1.0, 2.0, 3.0], &[], 5.0, 1e-12).is_ok());
    }

    #[test]
    fn negative_noninteger_parameters() {
        // ₁F₁(-1.5; 0.5; z) by brute force
        let (a, b, z) = (-1.5, 0.5, 2.0);
        let mut term = 1.0;
        let mut sum = 1.0;
        for n in 0..80 {
            let m = n as f64;
            term *= (a + m) * z / ((b + m) * (m + 1.0));
            sum += term;
        }
        let r = hyp_pfq(&[a], &[b], z, 1e-14).unwrap();
        assert!((r.value - sum).abs() < 1e-13 * sum.abs().max(1.0));
    }

    #[test]
    fn gates() {
        assert!(matches!(hyp_pfq(&[1.0, 2.0, 3.0], &[], 0.1, 1e-10), Err(Error::Divergent { p: 3, q: 0 })));
        assert!(matches!(hyp_pfq(&[1.0, 2.0], &[3.0], 1.0, 1e-10), Err(Error::Radius { .. })));
        assert!(matches!(hyp_pfq(&[1.0], &[-2.0], 0.5, 1e-10), Err(Error::Parameter(_))));
        assert!(matches!(hyp_pfq(&[1.0], &[0.0], 0.5, 1e-10), Err(Error::Parameter(_))));
        // z = 0 is always the n = 0 term.
        assert_eq!(hyp_pfq(&[1.0, 2.0, 3.0], &[], 0.0, 1e-10).unwrap().value, 1.0);
    }
}
