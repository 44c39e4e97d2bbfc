//! Correlation and conditional-independence machinery: covariance, partial
//! correlation, and the Fisher z test the discovery phase is built on.

use nalgebra::DMatrix;
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{CoreError, Result};

/// Condition-number threshold beyond which the covariance submatrix gets a
/// diagonal jitter before inversion.
const CONDITION_LIMIT: f64 = 1e12;
/// Diagonal jitter applied to ill-conditioned submatrices.
const JITTER: f64 = 1e-8;

/// A Pearson correlation together with a degeneracy flag. A degenerate result
/// (constant input) carries r = 0 and is treated downstream as "no weight".
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Correlation {
    pub r: f64,
    pub degenerate: bool,
}

/// Outcome of one conditional-independence test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CiDecision {
    pub independent: bool,
    pub statistic: f64,
    pub p_value: f64,
    pub conditioning_size: usize,
}

/// Sample Pearson correlation of two equal-length vectors.
pub fn pearson(x: &[f64], y: &[f64]) -> Correlation {
    assert_eq!(x.len(), y.len(), "pearson inputs must have equal length");
    let n = x.len();
    if n < 2 {
        return Correlation { r: 0.0, degenerate: true };
    }
    let mean_x = x.iter().sum::<f64>() / n as f64;
    let mean_y = y.iter().sum::<f64>() / n as f64;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for k in 0..n {
        let dx = x[k] - mean_x;
        let dy = y[k] - mean_y;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx <= 0.0 || syy <= 0.0 {
        return Correlation { r: 0.0, degenerate: true };
    }
    let r = (sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0);
    Correlation { r, degenerate: false }
}

/// Sample covariance matrix (unbiased, n-1 denominator) over data columns.
pub fn covariance_matrix(columns: &[Vec<f64>]) -> DMatrix<f64> {
    let p = columns.len();
    let n = if p == 0 { 0 } else { columns[0].len() };
    assert!(n >= 2, "covariance needs at least two rows");
    let means: Vec<f64> = columns
        .iter()
        .map(|c| c.iter().sum::<f64>() / n as f64)
        .collect();
    let mut cov = DMatrix::zeros(p, p);
    for a in 0..p {
        for b in a..p {
            let mut s = 0.0;
            for k in 0..n {
                s += (columns[a][k] - means[a]) * (columns[b][k] - means[b]);
            }
            let v = s / (n as f64 - 1.0);
            cov[(a, b)] = v;
            cov[(b, a)] = v;
        }
    }
    cov
}

/// Partial correlation of variables `i` and `j` given the set `z`, computed by
/// inverting the principal submatrix of `cov` on `{i, j} ∪ z`.
///
/// Ill-conditioned submatrices (condition number above 1e12) are regularized
/// with a small diagonal jitter; a submatrix that stays singular is an error,
/// signalling collinear encoding.
pub fn partial_correlation(i: usize, j: usize, z: &[usize], cov: &DMatrix<f64>) -> Result<f64> {
    debug_assert!(i != j);
    debug_assert!(!z.contains(&i) && !z.contains(&j));
    let mut idx = Vec::with_capacity(z.len() + 2);
    idx.push(i);
    idx.push(j);
    idx.extend_from_slice(z);

    let m = idx.len();
    let mut sub = DMatrix::zeros(m, m);
    for a in 0..m {
        for b in 0..m {
            sub[(a, b)] = cov[(idx[a], idx[b])];
        }
    }

    if condition_number(&sub) > CONDITION_LIMIT {
        for d in 0..m {
            sub[(d, d)] += JITTER;
        }
    }

    let precision = sub
        .try_inverse()
        .ok_or(CoreError::SingularSubmatrix { i, j })?;
    let denom = precision[(0, 0)] * precision[(1, 1)];
    if !(denom > 0.0) {
        return Err(CoreError::SingularSubmatrix { i, j });
    }
    Ok((-precision[(0, 1)] / denom.sqrt()).clamp(-1.0, 1.0))
}

fn condition_number(m: &DMatrix<f64>) -> f64 {
    let svd = m.clone().svd(false, false);
    let max = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let min = svd.singular_values.iter().cloned().fold(f64::INFINITY, f64::min);
    if min <= 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

/// Fisher z test of the null "partial correlation is zero" for a correlation
/// `r` estimated from `n` samples given `cond_size` conditioning variables.
///
/// `independent` holds exactly when the two-sided p-value exceeds `alpha`.
/// A correlation at or beyond ±1 (deterministic copies) yields an infinite
/// statistic and p = 0, so the edge is always kept.
pub fn fisher_z_test(r: f64, n: usize, cond_size: usize, alpha: f64) -> Result<CiDecision> {
    if n <= cond_size + 3 {
        return Err(CoreError::TestUndefined { n, cond: cond_size });
    }
    let dof = (n - cond_size - 3) as f64;
    let statistic = if r.abs() >= 1.0 {
        f64::INFINITY
    } else {
        dof.sqrt() * 0.5 * ((1.0 + r) / (1.0 - r)).ln().abs()
    };
    let p_value = if statistic.is_infinite() {
        0.0
    } else {
        let normal = Normal::new(0.0, 1.0).expect("standard normal");
        2.0 * (1.0 - normal.cdf(statistic))
    };
    Ok(CiDecision {
        independent: p_value > alpha,
        statistic,
        p_value,
        conditioning_size: cond_size,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn pearson_self_and_negated() {
        let x = vec![0.5, 1.2, -0.3, 4.0, 2.2];
        let neg: Vec<f64> = x.iter().map(|v| -v).collect();
        assert_relative_eq!(pearson(&x, &x).r, 1.0, epsilon = 1e-12);
        assert_relative_eq!(pearson(&x, &neg).r, -1.0, epsilon = 1e-12);
    }

    #[test]
    fn pearson_reference_value() {
        // r = 11 / sqrt(5 * 26), worked out by hand from the closed form.
        let x = vec![1.0, 2.0, 3.0, 4.0];
        let y = vec![2.0, 4.0, 5.0, 9.0];
        let c = pearson(&x, &y);
        assert!(!c.degenerate);
        assert_relative_eq!(c.r, 11.0 / 130f64.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn pearson_constant_is_degenerate() {
        let x = vec![3.0; 10];
        let y: Vec<f64> = (0..10).map(|k| k as f64).collect();
        let c = pearson(&x, &y);
        assert!(c.degenerate);
        assert_eq!(c.r, 0.0);
    }

    #[test]
    fn partial_correlation_empty_set_is_pearson() {
        let x = vec![1.0, 2.0, 3.0, 4.0, 2.5, 0.5];
        let y = vec![2.0, 4.0, 5.0, 9.0, 3.0, 1.0];
        let cov = covariance_matrix(&[x.clone(), y.clone()]);
        let rho = partial_correlation(0, 1, &[], &cov).unwrap();
        assert_relative_eq!(rho, pearson(&x, &y).r, epsilon = 1e-10);
    }

    #[test]
    fn partial_correlation_symmetric_in_i_j() {
        let cols = vec![
            vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.5],
            vec![2.0, 1.0, 4.0, 3.5, 5.5, 6.0],
            vec![0.5, 0.7, 2.0, 1.0, 3.0, 2.5],
        ];
        let cov = covariance_matrix(&cols);
        let a = partial_correlation(0, 1, &[2], &cov).unwrap();
        let b = partial_correlation(1, 0, &[2], &cov).unwrap();
        assert_relative_eq!(a, b, epsilon = 1e-12);
    }

    #[test]
    fn fisher_z_reference_values() {
        // sqrt(97) * atanh(0.5) ~= 5.41: dependent at alpha = 0.01.
        let d = fisher_z_test(0.5, 100, 0, 0.01).unwrap();
        assert!(!d.independent);
        assert_relative_eq!(d.statistic, 5.410027, epsilon = 1e-5);

        let weak = fisher_z_test(0.05, 100, 0, 0.01).unwrap();
        assert!(weak.independent);

        let zero = fisher_z_test(0.0, 50, 2, 0.01).unwrap();
        assert!(zero.independent);
        assert_eq!(zero.statistic, 0.0);
    }

    #[test]
    fn fisher_z_too_few_samples_errors() {
        assert!(matches!(
            fisher_z_test(0.3, 5, 2, 0.01),
            Err(CoreError::TestUndefined { .. })
        ));
    }

    #[test]
    fn fisher_z_deterministic_copy_stays_dependent() {
        let d = fisher_z_test(1.0, 100, 0, 0.01).unwrap();
        assert!(!d.independent);
        assert_eq!(d.p_value, 0.0);
    }

    #[test]
    fn independence_invariant_under_affine_rescaling() {
        let x = vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 8.0, 1.5];
        let y = vec![1.1, 1.9, 3.2, 3.9, 5.2, 5.8, 8.1, 1.4];
        let z = vec![0.2, 0.3, 0.1, 0.5, 0.4, 0.8, 0.9, 0.2];
        let cov1 = covariance_matrix(&[x.clone(), y.clone(), z.clone()]);
        let scaled: Vec<f64> = x.iter().map(|v| 100.0 * v - 7.0).collect();
        let cov2 = covariance_matrix(&[scaled, y, z]);
        let r1 = partial_correlation(0, 1, &[2], &cov1).unwrap();
        let r2 = partial_correlation(0, 1, &[2], &cov2).unwrap();
        assert_relative_eq!(r1, r2, epsilon = 1e-9);
    }
}
