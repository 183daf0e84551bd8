//! Two-objective problems with closed-form Pareto fronts, used as test oracles.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::problem::Problem;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Toy {
    /// `f1 = |x|^2`, `f2 = |x - e1|^2`; front `(t^2, (1-t)^2)`, `t in [0, 1]`.
    BiSphere,
    /// `f1 = |x|^2`, `f2 = |x - 2 e1|^2`; front `(t^2, (2-t)^2)`, `t in [0, 2]`.
    SchafferLike,
}

impl Toy {
    pub fn parse(name: &str) -> Option<Self> {
        match name.to_ascii_uppercase().as_str() {
            "BI_SPHERE" => Some(Toy::BiSphere),
            "SCHAFFER_LIKE" => Some(Toy::SchafferLike),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Toy::BiSphere => "BI_SPHERE",
            Toy::SchafferLike => "SCHAFFER_LIKE",
        }
    }

    /// Distance between the two sphere centres along the first axis.
    fn shift(self) -> f64 {
        match self {
            Toy::BiSphere => 1.0,
            Toy::SchafferLike => 2.0,
        }
    }

    fn bounds(self) -> (f64, f64) {
        match self {
            Toy::BiSphere => (-1.0, 2.0),
            Toy::SchafferLike => (-5.0, 5.0),
        }
    }

    pub fn problem(self, d: usize) -> Result<Problem> {
        if d == 0 {
            return Err(Error::DimensionTooSmall { name: self.name().into(), d, min: 1 });
        }
        let a = self.shift();
        let f = move |x: &[f64]| {
            let rest: f64 = x[1..].iter().map(|v| v * v).sum();
            vec![x[0] * x[0] + rest, (x[0] - a) * (x[0] - a) + rest]
        };
        let (lo, hi) = self.bounds();
        Problem::new(self.name(), 2, vec![lo; d], vec![hi; d], Arc::new(f))
    }

    /// `count` points of the analytic front, evenly spaced in the parameter.
    pub fn front(self, count: usize) -> Vec<Vec<f64>> {
        let a = self.shift();
        (0..count)
            .map(|i| {
                let t = a * i as f64 / (count - 1).max(1) as f64;
                vec![t * t, (a - t) * (a - t)]
            })
            .collect()
    }
}
