//! Compensated (Neumaier) accumulation.

/// Running sum with a second-order error term carried separately.
///
/// The result of adding `n` terms has error at most `2u|S| + O(n u^2) sum |t_i|`
/// where `u` is the unit roundoff.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
    abs_sum: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, term: f64) {
        let t = self.sum + term;
        if self.sum.abs() >= term.abs() {
            self.compensation += (self.sum - t) + term;
        } else {
            self.compensation += (term - t) + self.sum;
        }
        self.sum = t;
        self.abs_sum += term.abs();
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }

    /// Sum of the magnitudes of every term added so far.
    pub fn abs_sum(&self) -> f64 {
        self.abs_sum
    }
}

impl Extend<f64> for CompensatedSum {
    fn extend<I: IntoIterator<Item = f64>>(&mut self, iter: I) {
        for t in iter {
            self.add(t);
        }
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = Self::new();
        s.extend(iter);
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancelled_low_order_bits() {
        let s: CompensatedSum = [1.0, 1e100, 1.0, -1e100].into_iter().collect();
        assert_eq!(s.value(), 2.0);
        assert_eq!(s.abs_sum(), 2e100 + 2.0);
    }

    #[test]
    fn harmonic_partial_sum_matches_reverse_order() {
        let forward: CompensatedSum = (1..=100_000).map(|n| 1.0 / n as f64).collect();
        let backward: CompensatedSum = (1..=100_000).rev().map(|n| 1.0 / n as f64).collect();
        assert_eq!(forward.value(), backward.value());
    }
}
