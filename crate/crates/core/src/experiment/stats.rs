use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::error::{Error, Result};

/// Ranks starting at 1, tied values sharing the mean of their positions.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        let rank = (i + j) as f64 / 2.0 + 1.0;
        for &k in &order[i..=j] {
            ranks[k] = rank;
        }
        i = j + 1;
    }
    ranks
}

fn pearson(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return f64::NAN;
    }
    sxy / (sxx * syy).sqrt()
}

/// Spearman rank correlation and its two-sided p-value from the t
/// approximation with `n - 2` degrees of freedom.
///
/// A constant input has no defined correlation and yields NaN for both.
pub fn spearman(x: &[f64], y: &[f64]) -> Result<(f64, f64)> {
    if x.len() != y.len() {
        return Err(Error::validation("samples differ in length"));
    }
    if x.len() < 3 {
        return Err(Error::validation("rank correlation needs at least 3 samples"));
    }
    let rho = pearson(&average_ranks(x), &average_ranks(y));
    if rho.is_nan() {
        return Ok((f64::NAN, f64::NAN));
    }
    let df = (x.len() - 2) as f64;
    if rho.abs() >= 1.0 {
        return Ok((rho.clamp(-1.0, 1.0), 0.0));
    }
    let t = rho * (df / (1.0 - rho * rho)).sqrt();
    let dist = StudentsT::new(0.0, 1.0, df).expect("positive degrees of freedom");
    Ok((rho, 2.0 * (1.0 - dist.cdf(t.abs()))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ties_share_ranks() {
        assert_eq!(average_ranks(&[3.0, 1.0, 3.0, 2.0]), vec![3.5, 1.0, 3.5, 2.0]);
    }

    #[test]
    fn monotone_relations() {
        let x: Vec<f64> = (0..10).map(f64::from).collect();
        let up: Vec<f64> = x.iter().map(|v| v * v).collect();
        let down: Vec<f64> = x.iter().map(|v| -v.powi(3)).collect();
        assert_eq!(spearman(&x, &up).unwrap(), (1.0, 0.0));
        assert_eq!(spearman(&x, &down).unwrap().0, -1.0);
    }

    #[test]
    fn textbook_example() {
        // rho = 1 - 6 * sum d^2 / (n (n^2 - 1)) without ties
        let x = [106.0, 86.0, 100.0, 101.0, 99.0, 103.0, 97.0, 113.0, 112.0, 110.0];
        let y = [7.0, 0.0, 27.0, 50.0, 28.0, 29.0, 20.0, 12.0, 6.0, 17.0];
        let (rho, p) = spearman(&x, &y).unwrap();
        assert!((rho - (-29.0 / 165.0)).abs() < 1e-12);
        assert!((p - 0.627_188).abs() < 1e-4);
    }

    #[test]
    fn short_or_constant_samples() {
        assert!(spearman(&[1.0, 2.0], &[2.0, 1.0]).is_err());
        assert!(spearman(&[1.0, 1.0, 1.0], &[1.0, 2.0, 3.0]).unwrap().0.is_nan());
    }
}
