//! Streaming summary statistics.

use serde::Serialize;

/// Running mean and variance by Welford's update.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct Welford {
    count: u64,
    mean: f64,
    m2: f64,
}

impl Welford {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    /// Zero when empty.
    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Unbiased sample variance; zero with fewer than two observations.
    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            self.m2 / (self.count - 1) as f64
        }
    }

    pub fn std_dev(&self) -> f64 {
        self.variance().sqrt()
    }

    /// Standard error of the mean.
    pub fn std_error(&self) -> f64 {
        if self.count == 0 {
            0.0
        } else {
            (self.variance() / self.count as f64).sqrt()
        }
    }
}

impl FromIterator<f64> for Welford {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut w = Welford::new();
        for x in iter {
            w.push(x);
        }
        w
    }
}

/// Standard error of the unbiased sample variance, from the sample fourth
/// central moment: `sqrt((m4 - (n-3)/(n-1) s^4) / n)`.
pub fn variance_std_error(samples: &[f64]) -> f64 {
    let n = samples.len();
    if n < 4 {
        return f64::INFINITY;
    }
    let w: Welford = samples.iter().copied().collect();
    let mean = w.mean();
    let m4 = samples.iter().map(|x| (x - mean).powi(4)).sum::<f64>() / n as f64;
    let s2 = w.variance();
    let nf = n as f64;
    ((m4 - (nf - 3.0) / (nf - 1.0) * s2 * s2) / nf).max(0.0).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_two_pass() {
        let xs = [2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0];
        let w: Welford = xs.iter().copied().collect();
        assert_eq!(w.count(), 8);
        assert!((w.mean() - 5.0).abs() < 1e-12);
        assert!((w.variance() - 32.0 / 7.0).abs() < 1e-12);
    }

    #[test]
    fn stable_with_large_offset() {
        let w: Welford = (0..1000).map(|i| 1e9 + (i % 2) as f64).collect();
        assert!((w.variance() - 0.25025025).abs() < 1e-6);
    }

    #[test]
    fn degenerate_counts() {
        let mut w = Welford::new();
        assert_eq!(w.variance(), 0.0);
        w.push(3.0);
        assert_eq!(w.mean(), 3.0);
        assert_eq!(w.variance(), 0.0);
    }

    #[test]
    fn variance_error_of_constant_is_zero() {
        assert_eq!(variance_std_error(&[1.0; 10]), 0.0);
        assert!(variance_std_error(&[1.0, 2.0]).is_infinite());
    }
}
