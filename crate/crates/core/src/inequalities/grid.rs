use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Linear,
    Logarithmic,
}

/// A one-dimensional sampling grid with both endpoints included.
///
/// `start` may be zero or negative for linear grids (order grids extend
/// below zero); logarithmic grids need `start > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    pub spacing: Spacing,
}

/// Argument grids never start below this value.
pub const MIN_ARGUMENT: f64 = 1e-6;

/// Number of points used when no count is given.
pub const DEFAULT_COUNT: usize = 200;

impl GridSpec {
    pub fn new(start: f64, stop: f64, count: usize, spacing: Spacing) -> Result<Self> {
        let g = Self { start, stop, count, spacing };
        g.validate()?;
        Ok(g)
    }

    pub fn linear(start: f64, stop: f64, count: usize) -> Result<Self> {
        Self::new(start, stop, count, Spacing::Linear)
    }

    pub fn logarithmic(start: f64, stop: f64, count: usize) -> Result<Self> {
        Self::new(start, stop, count, Spacing::Logarithmic)
    }

    /// 200 points, logarithmic when the range spans more than two decades.
    pub fn auto(start: f64, stop: f64) -> Result<Self> {
        let spacing = if start > 0.0 && stop / start > 100.0 {
            Spacing::Logarithmic
        } else {
            Spacing::Linear
        };
        Self::new(start, stop, DEFAULT_COUNT, spacing)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.start.is_finite() || !self.stop.is_finite() || self.start >= self.stop {
            return Err(Error::Parameter(format!(
                "grid needs finite start < stop, got [{}, {}]",
                self.start, self.stop
            )));
        }
        if self.count < 3 {
            return Err(Error::Parameter(format!("grid needs at least 3 points, got {}", self.count)));
        }
        if self.spacing == Spacing::Logarithmic && self.start <= 0.0 {
            return Err(Error::Parameter(format!(
                "logarithmic grid needs start > 0, got {}",
                self.start
            )));
        }
        Ok(())
    }

    /// Same range and spacing with twice the points.
    pub fn refined(&self) -> Self {
        Self {
            count: 2 * self.count,
            ..*self
        }
    }

    /// The grid points in increasing order; first and last are exact.
    pub fn points(&self) -> Vec<f64> {
        let last = (self.count - 1) as f64;
        let mut pts: Vec<f64> = match self.spacing {
            Spacing::Linear => {
                let step = (self.stop - self.start) / last;
                (0..self.count).map(|i| self.start + i as f64 * step).collect()
            }
            Spacing::Logarithmic => {
                let (a, b) = (self.start.ln(), self.stop.ln());
                let step = (b - a) / last;
                (0..self.count).map(|i| (a + i as f64 * step).exp()).collect()
            }
        };
        pts[0] = self.start;
        pts[self.count - 1] = self.stop;
        pts
    }

    /// Points for a function argument: `start` is raised to [`MIN_ARGUMENT`].
    pub(crate) fn argument_points(&self) -> Result<Vec<f64>> {
        if self.start < 0.0 {
            return Err(Error::Precondition(format!(
                "argument grid must lie in [0, ∞), starts at {}",
                self.start
            )));
        }
        let clamped = Self {
            start: self.start.max(MIN_ARGUMENT),
            ..*self
        };
        clamped.validate()?;
        Ok(clamped.points())
    }
}
