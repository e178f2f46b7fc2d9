use crate::scalar::Scalar;

/// Right-continuous step function `F(τ) = |{i : r_i ≤ τ}| / n`.
///
/// Breakpoints are the distinct finite ratios, ascending. Counts are kept
/// as integers so profile fractions compare exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct StepCurve<T = f64> {
    tau: Vec<T>,
    counts: Vec<usize>,
    denominator: usize,
}

impl<T: Scalar> StepCurve<T> {
    /// Builds the curve from one ratio per instance. Infinite ratios never
    /// count; they only keep `F` below 1.
    pub fn from_ratios(ratios: &[T], denominator: usize) -> Self {
        let mut finite: Vec<T> = ratios.iter().copied().filter(|r| r.is_finite()).collect();
        finite.sort_by(|a, b| a.partial_cmp(b).expect("finite ratios are ordered"));
        let mut tau: Vec<T> = Vec::new();
        let mut counts: Vec<usize> = Vec::new();
        for (k, r) in finite.into_iter().enumerate() {
            if tau.last() == Some(&r) {
                *counts.last_mut().unwrap() = k + 1;
            } else {
                tau.push(r);
                counts.push(k + 1);
            }
        }
        Self {
            tau,
            counts,
            denominator,
        }
    }

    pub fn breakpoints(&self) -> &[T] {
        &self.tau
    }

    /// Cumulative instance counts at each breakpoint.
    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn denominator(&self) -> usize {
        self.denominator
    }

    /// `F` at each breakpoint.
    pub fn values(&self) -> Vec<T> {
        self.counts
            .iter()
            .map(|&c| T::fraction(c, self.denominator))
            .collect()
    }

    /// Number of instances with ratio `≤ tau`.
    pub fn count_at(&self, tau: T) -> usize {
        let k = self.tau.partition_point(|&t| t <= tau);
        if k == 0 {
            0
        } else {
            self.counts[k - 1]
        }
    }

    pub fn evaluate(&self, tau: T) -> T {
        T::fraction(self.count_at(tau), self.denominator)
    }

    /// Instances with a finite ratio.
    pub fn solved(&self) -> usize {
        self.counts.last().copied().unwrap_or(0)
    }
}
