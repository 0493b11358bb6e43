use crate::{Error, Result};

/// Samples of a quantity on a strictly increasing time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries<T> {
    times: Vec<f64>,
    values: Vec<T>,
}

impl<T> TimeSeries<T> {
    pub fn new(times: Vec<f64>, values: Vec<T>) -> Result<Self> {
        if times.len() != values.len() {
            return Err(Error::LengthMismatch {
                times: times.len(),
                values: values.len(),
            });
        }
        check_increasing(&times)?;
        Ok(TimeSeries { times, values })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &T)> {
        self.times.iter().copied().zip(self.values.iter())
    }

    pub fn into_parts(self) -> (Vec<f64>, Vec<T>) {
        (self.times, self.values)
    }
}

/// Rejects grids that are not strictly increasing or contain non-finite
/// values. The error carries the first offending index.
pub fn check_increasing(times: &[f64]) -> Result<()> {
    for (i, t) in times.iter().enumerate() {
        if !t.is_finite() {
            return Err(Error::NonFinite("time grid"));
        }
        if i > 0 && times[i - 1] >= *t {
            return Err(Error::UnorderedTimes(i));
        }
    }
    Ok(())
}

/// `points` evenly spaced samples over the closed interval `[start, stop]`.
pub fn linspace(start: f64, stop: f64, points: usize) -> Vec<f64> {
    match points {
        0 => vec![],
        1 => vec![start],
        n => {
            let span = stop - start;
            let last = (n - 1) as f64;
            (0..n).map(|i| start + span * (i as f64 / last)).collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unordered() {
        assert_eq!(
            check_increasing(&[0.0, 1.0, 1.0]),
            Err(Error::UnorderedTimes(2))
        );
        assert!(TimeSeries::new(vec![0.0, 1.0], vec![1]).is_err());
    }

    #[test]
    fn linspace_hits_endpoints() {
        let t = linspace(0.0, 2.0, 5);
        assert_eq!(t, vec![0.0, 0.5, 1.0, 1.5, 2.0]);
        assert_eq!(linspace(0.0, 1.0, 0), Vec::<f64>::new());
    }

    #[test]
    fn odd_grid_samples_midpoint_exactly() {
        let t = linspace(0.0, std::f64::consts::TAU, 501);
        assert_eq!(t[250], std::f64::consts::PI);
    }
}
