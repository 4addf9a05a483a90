use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StatsError {
    #[error("too few samples: {samples} over {cells} cells (need at least 5 expected per cell)")]
    TooFewSamples { samples: u64, cells: usize },
}

/// Pearson goodness of fit against the uniform distribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChiSquare {
    pub statistic: f64,
    pub p_value: f64,
    pub cells: usize,
    pub samples: u64,
}

/// Chi-square test of `counts` (one entry per cell, zeros included)
/// against uniform, with `k - 1` degrees of freedom.
pub fn chi_square_uniform(counts: &[u64]) -> Result<ChiSquare, StatsError> {
    let k = counts.len();
    let n: u64 = counts.iter().sum();
    if k < 2 || n < 5 * k as u64 {
        return Err(StatsError::TooFewSamples { samples: n, cells: k });
    }
    // Σ (O - E)² / E with E = N/k, as Σ (kO - N)² / (kN) in integers.
    let kk = k as i128;
    let sum: u128 = counts
        .iter()
        .map(|&o| {
            let d = kk * o as i128 - n as i128;
            (d * d) as u128
        })
        .sum();
    let statistic = sum as f64 / (k as f64 * n as f64);
    let dist = ChiSquared::new((k - 1) as f64).expect("positive degrees of freedom");
    let p_value = if statistic == 0.0 { 1.0 } else { dist.sf(statistic) };
    Ok(ChiSquare { statistic, p_value, cells: k, samples: n })
}

/// Exact total variation `(1/2) Σ |c_i/N - 1/k|` between the empirical
/// distribution and uniform over `k` cells. Cells beyond `counts.len()`
/// count as zero.
pub fn empirical_tv(counts: &[u64], k: usize) -> Result<BigRational, StatsError> {
    let n: u64 = counts.iter().sum();
    if n == 0 || k == 0 || counts.len() > k {
        return Err(StatsError::TooFewSamples { samples: n, cells: k });
    }
    let kk = k as i128;
    let mut sum: u128 = counts.iter().map(|&c| (kk * c as i128 - n as i128).unsigned_abs()).sum();
    sum += (k - counts.len()) as u128 * n as u128;
    Ok(BigRational::new(
        BigInt::from(sum),
        BigInt::from(2u128 * k as u128 * n as u128),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{ToPrimitive, Zero};

    #[test]
    fn balanced_counts() {
        let c = chi_square_uniform(&[10, 10, 10, 10]).unwrap();
        assert_eq!(c.statistic, 0.0);
        assert_eq!(c.p_value, 1.0);
        assert!(empirical_tv(&[10, 10, 10, 10], 4).unwrap().is_zero());
    }

    #[test]
    fn all_mass_in_one_cell() {
        let c = chi_square_uniform(&[100, 0]).unwrap();
        assert_eq!(c.statistic, 100.0);
        assert!(c.p_value < 1e-20);
        assert_eq!(empirical_tv(&[100, 0], 2).unwrap().to_f64(), Some(0.5));
        assert_eq!(empirical_tv(&[100], 2).unwrap().to_f64(), Some(0.5));
    }

    #[test]
    fn known_tail_value() {
        // 1 degree of freedom, statistic 3.841458820694124 is the 95% point.
        let c = chi_square_uniform(&[0, 0]);
        assert!(c.is_err());
        let dist = ChiSquared::new(1.0).unwrap();
        assert!((dist.sf(3.841458820694124) - 0.05).abs() < 1e-9);
    }

    #[test]
    fn too_few() {
        assert!(matches!(
            chi_square_uniform(&[3, 4, 5]),
            Err(StatsError::TooFewSamples { samples: 12, cells: 3 })
        ));
        assert!(empirical_tv(&[], 3).is_err());
    }
}
