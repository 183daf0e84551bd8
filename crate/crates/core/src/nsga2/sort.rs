//! Fast non-dominated sorting, `O(m n^2)`.

use crate::solution::dominates;

/// Indices grouped into successive Pareto fronts; front 0 is non-dominated.
/// Indices inside a front are in increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FrontPartition {
    pub fronts: Vec<Vec<usize>>,
}

impl FrontPartition {
    /// Rank (front number) of every index.
    pub fn ranks(&self) -> Vec<usize> {
        let n = self.fronts.iter().map(Vec::len).sum();
        let mut rank = vec![0; n];
        for (r, front) in self.fronts.iter().enumerate() {
            for &i in front {
                rank[i] = r;
            }
        }
        rank
    }
}

pub fn fast_nondominated_sort<T: AsRef<[f64]>>(objectives: &[T]) -> FrontPartition {
    let n = objectives.len();
    let mut dominated_by: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut counts = vec![0usize; n];
    for p in 0..n {
        for q in p + 1..n {
            let (a, b) = (objectives[p].as_ref(), objectives[q].as_ref());
            if dominates(a, b) {
                dominated_by[p].push(q);
                counts[q] += 1;
            } else if dominates(b, a) {
                dominated_by[q].push(p);
                counts[p] += 1;
            }
        }
    }
    let mut fronts = Vec::new();
    let mut current: Vec<usize> = (0..n).filter(|&i| counts[i] == 0).collect();
    while !current.is_empty() {
        let mut next = Vec::new();
        for &p in &current {
            for &q in &dominated_by[p] {
                counts[q] -= 1;
                if counts[q] == 0 {
                    next.push(q);
                }
            }
        }
        next.sort_unstable();
        fronts.push(current);
        current = next;
    }
    FrontPartition { fronts }
}
