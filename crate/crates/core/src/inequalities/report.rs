use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::grid::GridSpec;
use crate::series::KBesselParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Increasing,
    Decreasing,
    Convex,
    Concave,
    Constant,
}

impl Direction {
    /// The opposite claim; `Constant` is its own.
    pub fn reversed(self) -> Self {
        match self {
            Direction::Increasing => Direction::Decreasing,
            Direction::Decreasing => Direction::Increasing,
            Direction::Convex => Direction::Concave,
            Direction::Concave => Direction::Convex,
            Direction::Constant => Direction::Constant,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Increasing => "increasing",
            Direction::Decreasing => "decreasing",
            Direction::Convex => "convex",
            Direction::Concave => "concave",
            Direction::Constant => "constant",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    /// Consecutive grid pair moving against the claim.
    Consecutive,
    /// Centered difference at an interior point moving against the claim.
    Centered,
    /// Midpoint (Turán) inequality failing at a grid point.
    Midpoint,
    /// Second difference of a log-coefficient below zero.
    Coefficient,
    /// Step of a coefficient-ratio sequence against the claim.
    Sequence,
}

/// A recorded counterexample with everything needed to audit it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    /// Evaluation points (grid values, orders, or sequence indices).
    pub points: Vec<f64>,
    pub values: Vec<f64>,
    /// Certified error bound for each entry of `values`.
    pub error_bounds: Vec<f64>,
    /// Relative amount by which the claim is broken; always exceeds the tolerance.
    pub observed_delta: f64,
}

/// What a check ran over.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Domain {
    Grid(GridSpec),
    Indices { n_max: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub claim_id: String,
    pub params: KBesselParams,
    /// Claim-specific extras such as `mu`, `m`, `a`, `c_param`, `delta`, `x`.
    pub aux: BTreeMap<String, f64>,
    pub domain: Domain,
    pub direction: Direction,
    pub tolerance: f64,
    pub violations: Vec<Violation>,
    pub max_violation: f64,
    /// Smallest margin in the claimed direction over all checked pairs
    /// (negative when the claim is broken somewhere, even within tolerance).
    pub min_slack: f64,
    pub pass: bool,
}

impl InequalityReport {
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn assemble(
        claim_id: &str,
        params: KBesselParams,
        aux: BTreeMap<String, f64>,
        domain: Domain,
        direction: Direction,
        tolerance: f64,
        violations: Vec<Violation>,
        min_slack: f64,
    ) -> Self {
        let max_violation = violations
            .iter()
            .map(|v| v.observed_delta)
            .fold(0.0, f64::max);
        let pass = violations.is_empty();
        Self {
            claim_id: claim_id.to_string(),
            params,
            aux,
            domain,
            direction,
            tolerance,
            violations,
            max_violation,
            min_slack,
            pass,
        }
    }
}
