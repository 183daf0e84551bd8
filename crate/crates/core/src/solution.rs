//! Solutions, populations and Pareto dominance (minimization).

use rand::Rng;

use crate::error::{Error, Result};
use crate::problem::Evaluator;
use crate::rng::RandomStream;

/// `true` iff `a` is no worse than `b` everywhere and strictly better somewhere.
///
/// Panics if the vectors differ in length.
pub fn dominates(a: &[f64], b: &[f64]) -> bool {
    assert_eq!(a.len(), b.len(), "dominance between objective vectors of different length");
    let mut strictly = false;
    for (x, y) in a.iter().zip(b) {
        if x > y {
            return false;
        }
        if x < y {
            strictly = true;
        }
    }
    strictly
}

/// Indices of the non-dominated members of `points`, in input order.
pub fn non_dominated_indices(points: &[&[f64]]) -> Vec<usize> {
    (0..points.len()).filter(|&i| !points.iter().enumerate().any(|(j, q)| j != i && dominates(q, points[i]))).collect()
}

/// A decision vector together with its cached objective vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    x: Vec<f64>,
    objectives: Option<Vec<f64>>,
}

impl Solution {
    pub fn new(x: Vec<f64>) -> Self {
        Self { x, objectives: None }
    }

    pub fn with_objectives(x: Vec<f64>, objectives: Vec<f64>) -> Self {
        Self { x, objectives: Some(objectives) }
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn is_evaluated(&self) -> bool {
        self.objectives.is_some()
    }

    /// Objective vector. Panics on an unevaluated solution.
    pub fn objectives(&self) -> &[f64] {
        self.objectives.as_deref().expect("objectives requested from an unevaluated solution")
    }

    pub fn evaluate(&mut self, evaluator: &Evaluator) {
        self.objectives = Some(evaluator.evaluate(&self.x));
    }

    pub fn into_parts(self) -> (Vec<f64>, Option<Vec<f64>>) {
        (self.x, self.objectives)
    }
}

/// Ordered multiset of solutions sharing `d` and `m`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Population {
    members: Vec<Solution>,
}

impl Population {
    pub fn new(members: Vec<Solution>) -> Result<Self> {
        if let Some(first) = members.first() {
            let d = first.x.len();
            let m = first.objectives.as_ref().map(Vec::len);
            for s in &members {
                if s.x.len() != d {
                    return Err(Error::DimensionMismatch { expected: d, actual: s.x.len() });
                }
                if let (Some(m), Some(o)) = (m, s.objectives.as_ref()) {
                    if o.len() != m {
                        return Err(Error::DimensionMismatch { expected: m, actual: o.len() });
                    }
                }
            }
        }
        Ok(Self { members })
    }

    /// `n` solutions drawn uniformly inside the problem's box, all evaluated.
    pub fn random(evaluator: &Evaluator, n: usize, rng: &mut RandomStream) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!("population size must be at least 2, got {n}")));
        }
        let problem = evaluator.problem();
        let members = (0..n)
            .map(|_| {
                let x: Vec<f64> = problem
                    .lower()
                    .iter()
                    .zip(problem.upper())
                    .map(|(&lo, &hi)| lo + (hi - lo) * rng.gen::<f64>())
                    .collect();
                let objectives = evaluator.evaluate(&x);
                Solution::with_objectives(x, objectives)
            })
            .collect();
        Ok(Self { members })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Solution] {
        &self.members
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Solution> {
        self.members.iter()
    }

    pub fn into_members(self) -> Vec<Solution> {
        self.members
    }

    pub fn objectives(&self) -> Vec<&[f64]> {
        self.members.iter().map(Solution::objectives).collect()
    }

    /// Objective vectors of the non-dominated members.
    pub fn front_objectives(&self) -> Vec<Vec<f64>> {
        let objs = self.objectives();
        non_dominated_indices(&objs).into_iter().map(|i| objs[i].to_vec()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::make_problem;
    use proptest::prelude::*;

    #[test]
    fn dominance_examples() {
        assert!(dominates(&[1.0, 1.0], &[2.0, 2.0]));
        assert!(!dominates(&[1.0, 2.0], &[2.0, 1.0]));
        assert!(!dominates(&[2.0, 1.0], &[1.0, 2.0]));
        assert!(!dominates(&[1.0, 1.0], &[1.0, 1.0]));
        assert!(dominates(&[1.0, 1.0], &[1.0, 2.0]));
    }

    #[test]
    #[should_panic(expected = "different length")]
    fn dominance_length_mismatch_panics() {
        dominates(&[1.0], &[1.0, 2.0]);
    }

    fn small_vec(m: usize) -> impl Strategy<Value = Vec<f64>> {
        // coarse grid so ties and equalities actually occur
        prop::collection::vec((0i32..4).prop_map(f64::from), m)
    }

    proptest! {
        #[test]
        fn dominance_is_strict_partial_order(a in small_vec(3), b in small_vec(3), c in small_vec(3)) {
            prop_assert!(!dominates(&a, &a));
            prop_assert!(!(dominates(&a, &b) && dominates(&b, &a)));
            if dominates(&a, &b) && dominates(&b, &c) {
                prop_assert!(dominates(&a, &c));
            }
        }
    }

    #[test]
    fn random_population_is_in_bounds_and_evaluated() {
        let problem = make_problem("LSMOP1", 3, 100).unwrap();
        let ev = Evaluator::new(problem);
        let pop = Population::random(&ev, 300, &mut RandomStream::new(1)).unwrap();
        assert_eq!(pop.len(), 300);
        assert_eq!(ev.count(), 300);
        let p = ev.problem();
        for s in pop.iter() {
            assert!(s.is_evaluated());
            assert_eq!(s.objectives().len(), 3);
            for ((x, lo), hi) in s.x().iter().zip(p.lower()).zip(p.upper()) {
                assert!(lo <= x && x <= hi);
            }
        }
    }

    #[test]
    fn random_population_is_deterministic() {
        let problem = make_problem("LSMOP1", 3, 100).unwrap();
        let ev = Evaluator::new(problem);
        let a = Population::random(&ev, 10, &mut RandomStream::new(9)).unwrap();
        let b = Population::random(&ev, 10, &mut RandomStream::new(9)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn random_population_rejects_tiny_size() {
        let ev = Evaluator::new(make_problem("LSMOP1", 3, 100).unwrap());
        assert!(Population::random(&ev, 1, &mut RandomStream::new(0)).is_err());
    }

    #[test]
    fn uniform_sampling_mean_matches_midpoint() {
        let ev = Evaluator::new(crate::problems::make_toy_problem_with_dim("BI_SPHERE", 2).unwrap());
        let pop = Population::random(&ev, 100_000, &mut RandomStream::new(5)).unwrap();
        let p = ev.problem();
        for i in 0..2 {
            let mean = pop.iter().map(|s| s.x()[i]).sum::<f64>() / pop.len() as f64;
            let mid = 0.5 * (p.lower()[i] + p.upper()[i]);
            let width = p.upper()[i] - p.lower()[i];
            assert!((mean - mid).abs() <= 0.01 * width, "component {i}: mean {mean} vs {mid}");
        }
    }
}
