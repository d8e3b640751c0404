use crate::error::{Error, Result};

use super::sweep::RunRecord;

/// Least-squares slope of `ln(mean_steps)` against `ln(size)`.
pub fn fit_scaling(points: &[(f64, f64)]) -> Result<f64> {
    if points.len() < 3 {
        return Err(Error::Degenerate(format!("need at least 3 points, got {}", points.len())));
    }
    if points.windows(2).any(|w| w[1].0 <= w[0].0) {
        return Err(Error::Degenerate("sizes must be strictly increasing".into()));
    }
    if points.iter().any(|&(x, y)| x <= 0.0 || y <= 0.0 || !x.is_finite() || !y.is_finite()) {
        return Err(Error::Degenerate("sizes and means must be positive".into()));
    }
    let k = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    Ok(sxy / sxx)
}

/// Per-point statistics of `steps_to_target` over repetitions.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSummary {
    pub n: usize,
    pub m: usize,
    pub w_max: u64,
    pub reps: usize,
    pub reached: usize,
    pub mean: f64,
    /// Standard error of the mean.
    pub stderr: f64,
    pub median: f64,
}

/// Groups records by `(n, m, w_max)` in first-seen order.
pub fn summarize(records: &[RunRecord]) -> Vec<PointSummary> {
    let mut keys: Vec<(usize, usize, u64)> = Vec::new();
    for r in records {
        let key = (r.n, r.m, r.w_max);
        if !keys.contains(&key) {
            keys.push(key);
        }
    }
    keys.into_iter()
        .map(|(n, m, w_max)| {
            let group: Vec<&RunRecord> =
                records.iter().filter(|r| (r.n, r.m, r.w_max) == (n, m, w_max)).collect();
            let mut steps: Vec<f64> = group.iter().map(|r| r.steps_to_target as f64).collect();
            let k = steps.len() as f64;
            let mean = steps.iter().sum::<f64>() / k;
            let var = if steps.len() > 1 {
                steps.iter().map(|s| (s - mean) * (s - mean)).sum::<f64>() / (k - 1.0)
            } else {
                0.0
            };
            steps.sort_by(f64::total_cmp);
            let mid = steps.len() / 2;
            let median = if steps.len().is_multiple_of(2) { (steps[mid - 1] + steps[mid]) / 2.0 } else { steps[mid] };
            PointSummary {
                n,
                m,
                w_max,
                reps: group.len(),
                reached: group.iter().filter(|r| r.target_reached).count(),
                mean,
                stderr: (var / k).sqrt(),
                median,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_laws() {
        assert!((fit_scaling(&[(2.0, 4.0), (4.0, 8.0), (8.0, 16.0)]).unwrap() - 1.0).abs() < 1e-12);
        assert!((fit_scaling(&[(2.0, 4.0), (4.0, 16.0), (8.0, 64.0)]).unwrap() - 2.0).abs() < 1e-12);
        assert!(fit_scaling(&[(10.0, 7.0), (20.0, 7.0), (40.0, 7.0)]).unwrap().abs() < 1e-12);
    }

    #[test]
    fn degenerate_inputs() {
        assert!(fit_scaling(&[(1.0, 1.0), (2.0, 2.0)]).is_err());
        assert!(fit_scaling(&[(1.0, 1.0), (1.0, 2.0), (3.0, 3.0)]).is_err());
        assert!(fit_scaling(&[(1.0, 1.0), (2.0, 0.0), (3.0, 3.0)]).is_err());
    }
}
