use super::FuzzyError;

/// Polarity values paired with non-negative aggregation weights.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedSample {
    values: Vec<f64>,
    weights: Vec<f64>,
}

impl WeightedSample {
    pub fn new(values: Vec<f64>, weights: Vec<f64>) -> Result<Self, FuzzyError> {
        if values.len() != weights.len() {
            return Err(FuzzyError::LengthMismatch {
                values: values.len(),
                weights: weights.len(),
            });
        }
        if let Some(&w) = weights.iter().find(|w| !(**w >= 0.0 && w.is_finite())) {
            return Err(FuzzyError::InvalidWeight(w));
        }
        if let Some(&x) = values.iter().find(|x| !x.is_finite()) {
            return Err(FuzzyError::NonFiniteValue(x));
        }
        if weights.iter().sum::<f64>() <= 0.0 {
            return Err(FuzzyError::ZeroTotalWeight);
        }
        Ok(Self { values, weights })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Sample size N.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Number of strictly positive weights (M).
    pub fn positive_weights(&self) -> usize {
        self.weights.iter().filter(|&&w| w > 0.0).count()
    }

    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Multiplies every weight by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self, FuzzyError> {
        Self::new(self.values.clone(), self.weights.iter().map(|w| w * factor).collect())
    }

    fn pairs(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.values.iter().copied().zip(self.weights.iter().copied())
    }
}

/// The common value when every positively weighted observation is equal.
fn constant_value(sample: &WeightedSample) -> Option<f64> {
    let mut live = sample.pairs().filter(|&(_, w)| w > 0.0).map(|(x, _)| x);
    let first = live.next()?;
    live.all(|x| x == first).then_some(first)
}

/// `Σ w·x / Σ w`.
pub fn weighted_mean(sample: &WeightedSample) -> f64 {
    if let Some(x) = constant_value(sample) {
        return x;
    }
    let num: f64 = sample.pairs().map(|(x, w)| w * x).sum();
    num / sample.total_weight()
}

/// Weighted standard deviation with the `(M - 1) / M` reliability correction,
/// where M counts the positive weights:
///
/// `sqrt( Σ w (x - mean)² / ((M - 1) / M · Σ w) )`
///
/// A single positively weighted observation has no spread, so M = 1 gives 0.
pub fn weighted_std(sample: &WeightedSample) -> f64 {
    let m = sample.positive_weights();
    if m < 2 || constant_value(sample).is_some() {
        return 0.0;
    }
    let mean = weighted_mean(sample);
    let ss: f64 = sample.pairs().map(|(x, w)| w * (x - mean).powi(2)).sum();
    let m = m as f64;
    (ss / ((m - 1.0) / m * sample.total_weight())).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(values: &[f64], weights: &[f64]) -> WeightedSample {
        WeightedSample::new(values.to_vec(), weights.to_vec()).unwrap()
    }

    /// Expanded spreadsheet-style evaluation, kept apart from the library path.
    fn std_oracle(values: &[f64], weights: &[f64]) -> f64 {
        let mut sw = 0.0;
        let mut swx = 0.0;
        let mut m = 0.0;
        for i in 0..values.len() {
            sw += weights[i];
            swx += weights[i] * values[i];
            if weights[i] > 0.0 {
                m += 1.0;
            }
        }
        let mean = swx / sw;
        let mut dev = 0.0;
        for i in 0..values.len() {
            let d = values[i] - mean;
            dev += weights[i] * d * d;
        }
        (dev * m / ((m - 1.0) * sw)).sqrt()
    }

    #[test]
    fn worked_example_mean() {
        let s = sample(&[0.5, 0.35, -0.2], &[0.5, 0.3, 0.2]);
        assert!((weighted_mean(&s) - 0.315).abs() < 1e-12);
    }

    #[test]
    fn identity_and_symmetry() {
        assert_eq!(weighted_mean(&sample(&[0.7], &[1.0])), 0.7);
        assert_eq!(weighted_mean(&sample(&[1.0, -1.0], &[0.5, 0.5])), 0.0);
    }

    #[test]
    fn worked_example_std() {
        let v = [0.5, 0.35, -0.2];
        let w = [0.5, 0.3, 0.2];
        let sigma = weighted_std(&sample(&v, &w));
        // 0.070525 / (2/3) = 0.1057875
        assert!((sigma - 0.1057875f64.sqrt()).abs() < 1e-12);
        assert!((sigma - std_oracle(&v, &w)).abs() < 1e-12);
        assert!((sigma - 0.325250).abs() < 1e-6);
    }

    #[test]
    fn equal_values_have_no_spread() {
        assert_eq!(weighted_std(&sample(&[0.4, 0.4, 0.4], &[0.1, 0.5, 0.9])), 0.0);
    }

    #[test]
    fn single_positive_weight_has_no_spread() {
        let s = sample(&[0.9, -0.5, 0.1], &[0.0, 0.7, 0.0]);
        assert_eq!(s.positive_weights(), 1);
        assert_eq!(weighted_std(&s), 0.0);
        assert_eq!(weighted_mean(&s), -0.5);
    }

    #[test]
    fn zero_weight_samples_are_ignored() {
        let a = sample(&[0.5, 0.35, -0.2, 0.9], &[0.5, 0.3, 0.2, 0.0]);
        let b = sample(&[0.5, 0.35, -0.2], &[0.5, 0.3, 0.2]);
        assert_eq!(weighted_mean(&a), weighted_mean(&b));
        assert!((weighted_std(&a) - weighted_std(&b)).abs() < 1e-15);
    }

    #[test]
    fn invalid_samples() {
        assert!(matches!(
            WeightedSample::new(vec![1.0], vec![0.0]),
            Err(FuzzyError::ZeroTotalWeight)
        ));
        assert!(matches!(
            WeightedSample::new(vec![], vec![]),
            Err(FuzzyError::ZeroTotalWeight)
        ));
        assert!(matches!(
            WeightedSample::new(vec![1.0, 2.0], vec![1.0]),
            Err(FuzzyError::LengthMismatch { .. })
        ));
        assert!(matches!(
            WeightedSample::new(vec![1.0], vec![-1.0]),
            Err(FuzzyError::InvalidWeight(_))
        ));
    }
}
