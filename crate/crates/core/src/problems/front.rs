//! Deterministic samples of known Pareto fronts.

use std::f64::consts::PI;

use crate::solution::non_dominated_indices;

/// End points of the two non-dominated segments of the disconnected front,
/// per position coordinate.
pub const DISCONNECTED_SEGMENTS: [(f64, f64); 2] = [(0.0, 0.251412), (0.631627, 0.859401)];

#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceFront {
    points: Vec<Vec<f64>>,
}

impl ReferenceFront {
    pub fn new(points: Vec<Vec<f64>>) -> Self {
        Self { points }
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn m(&self) -> usize {
        self.points.first().map_or(0, Vec::len)
    }

    /// Component-wise minimum and maximum over the front.
    pub fn bounds(&self) -> (Vec<f64>, Vec<f64>) {
        let m = self.m();
        let mut lo = vec![f64::INFINITY; m];
        let mut hi = vec![f64::NEG_INFINITY; m];
        for p in &self.points {
            for j in 0..m {
                lo[j] = lo[j].min(p[j]);
                hi[j] = hi[j].max(p[j]);
            }
        }
        (lo, hi)
    }
}

fn binomial(n: usize, k: usize) -> usize {
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Largest `h` such that the `(m, h)` simplex lattice has at most `count` points.
pub fn lattice_divisions(m: usize, count: usize) -> usize {
    let mut h = 1;
    while binomial(h + 1 + m - 1, m - 1) <= count {
        h += 1;
    }
    h
}

/// Das–Dennis lattice on the unit simplex: every vector `c / h` with
/// non-negative integer `c` summing to `h`. Points come in lexicographic order.
pub fn simplex_lattice(m: usize, h: usize) -> Vec<Vec<f64>> {
    fn rec(m: usize, left: usize, h: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<f64>>) {
        if cur.len() == m - 1 {
            cur.push(left);
            out.push(cur.iter().map(|&c| c as f64 / h as f64).collect());
            cur.pop();
            return;
        }
        for c in 0..=left {
            cur.push(c);
            rec(m, left - c, h, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::with_capacity(binomial(h + m - 1, m - 1));
    rec(m, h, h, &mut Vec::with_capacity(m), &mut out);
    out
}

/// Up to `count` points with `sum f = 1`.
pub fn linear_front(m: usize, count: usize) -> Vec<Vec<f64>> {
    simplex_lattice(m, lattice_divisions(m, count))
}

/// Up to `count` points with `|f|_2 = 1`, obtained by normalizing the lattice.
pub fn spherical_front(m: usize, count: usize) -> Vec<Vec<f64>> {
    linear_front(m, count)
        .into_iter()
        .map(|p| {
            let norm = p.iter().map(|v| v * v).sum::<f64>().sqrt();
            p.into_iter().map(|v| v / norm).collect()
        })
        .collect()
}

/// Grid over the `m - 1` position coordinates restricted to the two
/// non-dominated segments, with the last objective from the front equation
/// `f_m = 2 (m - sum f_i / 2 (1 + sin 3 pi f_i))`. Dominated points near the
/// segment joints are filtered out.
pub fn disconnected_front(m: usize, count: usize) -> Vec<Vec<f64>> {
    let [(a0, a1), (b0, b1)] = DISCONNECTED_SEGMENTS;
    let split = (a1 - a0) / ((b1 - b0) + (a1 - a0));
    let map = |u: f64| {
        if u <= split {
            a0 + u * (a1 - a0) / split
        } else {
            b0 + (u - split) * (b1 - b0) / (1.0 - split)
        }
    };
    let dims = m - 1;
    let mut side = 1usize;
    while (side + 1).pow(dims as u32) <= count {
        side += 1;
    }
    let total = side.pow(dims as u32);
    let points: Vec<Vec<f64>> = (0..total)
        .map(|mut idx| {
            let mut p: Vec<f64> = (0..dims)
                .map(|_| {
                    let i = idx % side;
                    idx /= side;
                    map(i as f64 / (side - 1).max(1) as f64)
                })
                .collect();
            p.reverse();
            let h: f64 = p.iter().map(|&v| v / 2.0 * (1.0 + (3.0 * PI * v).sin())).sum();
            p.push(2.0 * (m as f64 - h));
            p
        })
        .collect();
    let refs: Vec<&[f64]> = points.iter().map(Vec::as_slice).collect();
    non_dominated_indices(&refs).into_iter().map(|i| points[i].clone()).collect()
}
