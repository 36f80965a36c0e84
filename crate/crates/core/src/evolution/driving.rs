use serde::{Deserialize, Serialize};

use crate::error::{LoewnerError, Result};

/// A real driving function sampled in capacity time, read as the piecewise-linear
/// interpolant of its samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawDriving", into = "RawDriving")]
pub struct DrivingFunction {
    times: Vec<f64>,
    values: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDriving {
    t: Vec<f64>,
    w: Vec<f64>,
}

impl TryFrom<RawDriving> for DrivingFunction {
    type Error = LoewnerError;

    fn try_from(raw: RawDriving) -> Result<Self> {
        DrivingFunction::new(raw.t, raw.w)
    }
}

impl From<DrivingFunction> for RawDriving {
    fn from(w: DrivingFunction) -> Self {
        RawDriving {
            t: w.times,
            w: w.values,
        }
    }
}

impl DrivingFunction {
    pub fn new(times: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if times.len() != values.len() {
            return Err(LoewnerError::InvalidInput(format!(
                "driving function has {} time stamps but {} values",
                times.len(),
                values.len()
            )));
        }
        if times.len() < 2 {
            return Err(LoewnerError::InvalidInput(
                "driving function needs at least two samples".into(),
            ));
        }
        if times[0] != 0.0 {
            return Err(LoewnerError::InvalidInput(format!(
                "first time stamp must be 0, got {}",
                times[0]
            )));
        }
        for (k, pair) in times.windows(2).enumerate() {
            if !(pair[1] > pair[0]) || !pair[1].is_finite() {
                return Err(LoewnerError::InvalidInput(format!(
                    "time stamps must be finite and strictly increasing (index {})",
                    k + 1
                )));
            }
        }
        if let Some(k) = values.iter().position(|v| !v.is_finite()) {
            return Err(LoewnerError::InvalidInput(format!(
                "driving value at index {k} is not finite"
            )));
        }
        Ok(Self { times, values })
    }

    /// Piecewise-linear driving function through the given `(t, w)` knots.
    pub fn from_knots(knots: &[(f64, f64)]) -> Result<Self> {
        let (t, w) = knots.iter().copied().unzip();
        Self::new(t, w)
    }

    /// `w(t) = c` on `[0, horizon]`.
    pub fn constant(c: f64, horizon: f64) -> Result<Self> {
        Self::new(vec![0.0, horizon], vec![c, c])
    }

    /// `w(t) = slope * t` on `[0, horizon]`.
    pub fn linear(slope: f64, horizon: f64) -> Result<Self> {
        Self::new(vec![0.0, horizon], vec![0.0, slope * horizon])
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Total capacity `T`, the last time stamp.
    pub fn horizon(&self) -> f64 {
        *self.times.last().expect("validated non-empty")
    }

    pub fn start_value(&self) -> f64 {
        self.values[0]
    }

    pub fn end_value(&self) -> f64 {
        *self.values.last().expect("validated non-empty")
    }

    /// Value of the interpolant; constant extension outside `[0, T]`.
    pub fn eval(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return self.values[0];
        }
        if t >= self.horizon() {
            return self.end_value();
        }
        let k = self.times.partition_point(|&s| s <= t);
        let (t0, t1) = (self.times[k - 1], self.times[k]);
        let (w0, w1) = (self.values[k - 1], self.values[k]);
        w0 + (w1 - w0) * (t - t0) / (t1 - t0)
    }

    /// `t -> lambda * w(t / lambda^2)` on `[0, lambda^2 T]`.
    pub fn rescaled(&self, lambda: f64) -> Result<Self> {
        if !(lambda > 0.0) {
            return Err(LoewnerError::InvalidInput("scale must be positive".into()));
        }
        let l2 = lambda * lambda;
        Self::new(
            self.times.iter().map(|t| t * l2).collect(),
            self.values.iter().map(|w| w * lambda).collect(),
        )
    }

    pub fn translated(&self, c: f64) -> Self {
        Self {
            times: self.times.clone(),
            values: self.values.iter().map(|w| w + c).collect(),
        }
    }

    /// Sup-norm distance to `other`, evaluated at the knots of both functions
    /// over the common horizon.
    pub fn sup_distance(&self, other: &DrivingFunction) -> f64 {
        let horizon = self.horizon().min(other.horizon());
        self.times
            .iter()
            .chain(other.times.iter())
            .filter(|&&t| t <= horizon)
            .map(|&t| (self.eval(t) - other.eval(t)).abs())
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_stamps() {
        assert!(DrivingFunction::new(vec![0.0, 1.0, 1.0], vec![0.0; 3]).is_err());
        assert!(DrivingFunction::new(vec![0.1, 1.0], vec![0.0; 2]).is_err());
        assert!(DrivingFunction::new(vec![0.0, 1.0], vec![0.0, f64::NAN]).is_err());
        assert!(DrivingFunction::new(vec![0.0], vec![0.0]).is_err());
    }

    #[test]
    fn interpolates_and_extends() {
        let w = DrivingFunction::from_knots(&[(0.0, 0.0), (1.0, 1.0), (2.0, 0.0)]).unwrap();
        assert_eq!(w.eval(0.5), 0.5);
        assert_eq!(w.eval(1.5), 0.5);
        assert_eq!(w.eval(3.0), 0.0);
        assert_eq!(w.eval(-1.0), 0.0);
    }

    #[test]
    fn json_uses_t_and_w_keys() {
        let w = DrivingFunction::linear(2.0, 1.0).unwrap();
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(s, r#"{"t":[0.0,1.0],"w":[0.0,2.0]}"#);
        let back: DrivingFunction = serde_json::from_str(&s).unwrap();
        assert_eq!(back, w);
        assert!(serde_json::from_str::<DrivingFunction>(r#"{"t":[0.0,0.0],"w":[0,0]}"#).is_err());
    }
}
