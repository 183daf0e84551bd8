//! LSMOP1–LSMOP9.
//!
//! Variables `x[0..m-1]` are position variables in `[0, 1]`; the remaining
//! `d - m + 1` distance variables live in `[0, 10]` and are linked to `x[0]`
//! through a linear (LSMOP1–4) or cosine (LSMOP5–9) linkage. Distance
//! variables are split into `m` groups whose sizes follow a logistic map
//! (`c_0 = 3.8 * 0.1 * 0.9`, `c_{i+1} = 3.8 c_i (1 - c_i)`), and every group
//! into `nk` equal subcomponents. Each objective's landscape term averages a
//! basic function over the subcomponents of its own group.

use std::f64::consts::{E, FRAC_PI_2, PI};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::problem::{ObjectiveFn, Problem};

pub const DEFAULT_SUBCOMPONENTS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Landscape {
    Sphere,
    Schwefel,
    Rosenbrock,
    Rastrigin,
    Griewank,
    Ackley,
}

impl Landscape {
    pub fn eval(self, x: &[f64]) -> f64 {
        let n = x.len() as f64;
        match self {
            Landscape::Sphere => x.iter().map(|v| v * v).sum(),
            Landscape::Schwefel => x.iter().fold(0.0, |acc, v| acc.max(v.abs())),
            Landscape::Rosenbrock => {
                x.windows(2).map(|w| 100.0 * (w[0] * w[0] - w[1]).powi(2) + (w[0] - 1.0).powi(2)).sum()
            }
            Landscape::Rastrigin => x.iter().map(|v| v * v - 10.0 * (2.0 * PI * v).cos() + 10.0).sum(),
            Landscape::Griewank => {
                let sum: f64 = x.iter().map(|v| v * v).sum::<f64>() / 4000.0;
                let prod: f64 = x.iter().enumerate().map(|(i, v)| (v / ((i + 1) as f64).sqrt()).cos()).product();
                sum - prod + 1.0
            }
            Landscape::Ackley => {
                let sq = x.iter().map(|v| v * v).sum::<f64>() / n;
                let cs = x.iter().map(|v| (2.0 * PI * v).cos()).sum::<f64>() / n;
                20.0 - 20.0 * (-0.2 * sq.sqrt()).exp() - cs.exp() + E
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Linkage {
    Linear,
    Cosine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrontShape {
    /// `sum f = 1`
    Linear,
    /// `sum f^2 = 1`
    Spherical,
    Disconnected,
}

#[derive(Debug, Clone)]
pub struct Lsmop {
    index: u8,
    m: usize,
    d: usize,
    nk: usize,
    /// Variables per subcomponent, one entry per group.
    sublen: Vec<usize>,
    /// Start of each group relative to the first distance variable.
    offsets: Vec<usize>,
    odd: Landscape,
    even: Landscape,
    linkage: Linkage,
    shape: FrontShape,
}

impl Lsmop {
    pub fn new(index: u8, m: usize, d: usize) -> Result<Self> {
        Self::with_subcomponents(index, m, d, DEFAULT_SUBCOMPONENTS)
    }

    pub fn with_subcomponents(index: u8, m: usize, d: usize, nk: usize) -> Result<Self> {
        use Landscape::*;
        let (odd, even, linkage, shape) = match index {
            1 => (Sphere, Sphere, Linkage::Linear, FrontShape::Linear),
            2 => (Griewank, Schwefel, Linkage::Linear, FrontShape::Linear),
            3 => (Rastrigin, Rosenbrock, Linkage::Linear, FrontShape::Linear),
            4 => (Ackley, Griewank, Linkage::Linear, FrontShape::Linear),
            5 => (Sphere, Sphere, Linkage::Cosine, FrontShape::Spherical),
            6 => (Rosenbrock, Schwefel, Linkage::Cosine, FrontShape::Spherical),
            7 => (Ackley, Rosenbrock, Linkage::Cosine, FrontShape::Spherical),
            8 => (Griewank, Sphere, Linkage::Cosine, FrontShape::Spherical),
            9 => (Sphere, Ackley, Linkage::Cosine, FrontShape::Disconnected),
            _ => return Err(Error::UnknownProblem(format!("LSMOP{index}"))),
        };
        let name = format!("LSMOP{index}");
        if m < 2 {
            return Err(Error::UnsupportedObjectives { name, m });
        }
        if nk == 0 {
            return Err(Error::InvalidArgument("number of subcomponents must be positive".into()));
        }
        let sublen = group_sizes(m, d, nk);
        if d < m || sublen.contains(&0) {
            let min = (m..).find(|&dd| group_sizes(m, dd, nk).iter().all(|&s| s > 0)).unwrap_or(m);
            return Err(Error::DimensionTooSmall { name, d, min });
        }
        let mut offsets = Vec::with_capacity(m + 1);
        offsets.push(0);
        for s in &sublen {
            offsets.push(offsets.last().unwrap() + s * nk);
        }
        Ok(Self { index, m, d, nk, sublen, offsets, odd, even, linkage, shape })
    }

    pub fn index(&self) -> u8 {
        self.index
    }

    pub fn shape(&self) -> FrontShape {
        self.shape
    }

    pub fn subcomponent_sizes(&self) -> &[usize] {
        &self.sublen
    }

    pub fn lower(&self) -> Vec<f64> {
        vec![0.0; self.d]
    }

    pub fn upper(&self) -> Vec<f64> {
        let mut u = vec![10.0; self.d];
        u[..self.m - 1].iter_mut().for_each(|v| *v = 1.0);
        u
    }

    pub fn into_problem(self) -> Problem {
        let name = format!("LSMOP{}", self.index);
        let (m, lower, upper) = (self.m, self.lower(), self.upper());
        Problem::new(name, m, lower, upper, Arc::new(self)).expect("LSMOP bounds are valid by construction")
    }

    /// Per-group landscape values, already averaged over subcomponents.
    fn landscape_terms(&self, x: &[f64]) -> Vec<f64> {
        let (m, d) = (self.m, self.d);
        let x0 = x[0];
        let linked: Vec<f64> = (m - 1..d)
            .map(|i| {
                let ratio = (i + 1) as f64 / d as f64;
                let factor = match self.linkage {
                    Linkage::Linear => 1.0 + ratio,
                    Linkage::Cosine => 1.0 + (0.5 * PI * ratio).cos(),
                };
                factor * x[i] - 10.0 * x0
            })
            .collect();
        (0..m)
            .map(|k| {
                let f = if k % 2 == 0 { self.odd } else { self.even };
                let len = self.sublen[k];
                let total: f64 = (0..self.nk)
                    .map(|j| {
                        let start = self.offsets[k] + j * len;
                        f.eval(&linked[start..start + len])
                    })
                    .sum();
                total / len as f64 / self.nk as f64
            })
            .collect()
    }
}

impl ObjectiveFn for Lsmop {
    fn evaluate(&self, x: &[f64]) -> Vec<f64> {
        let m = self.m;
        let g = self.landscape_terms(x);
        match self.shape {
            FrontShape::Linear => (0..m)
                .map(|k| {
                    let mut v = 1.0 + g[k];
                    v *= x[..m - 1 - k].iter().product::<f64>();
                    if k > 0 {
                        v *= 1.0 - x[m - 1 - k];
                    }
                    v
                })
                .collect(),
            FrontShape::Spherical => (0..m)
                .map(|k| {
                    let next = if k + 1 < m { g[k + 1] } else { 0.0 };
                    let mut v = 1.0 + g[k] + next;
                    v *= x[..m - 1 - k].iter().map(|t| (t * FRAC_PI_2).cos()).product::<f64>();
                    if k > 0 {
                        v *= (x[m - 1 - k] * FRAC_PI_2).sin();
                    }
                    v
                })
                .collect(),
            FrontShape::Disconnected => {
                let gs = 1.0 + g.iter().sum::<f64>();
                let mut f: Vec<f64> = x[..m - 1].to_vec();
                let h: f64 = f.iter().map(|&v| v / (1.0 + gs) * (1.0 + (3.0 * PI * v).sin())).sum();
                f.push((1.0 + gs) * (m as f64 - h));
                f
            }
        }
    }
}

/// Subcomponent length of each of the `m` variable groups.
pub fn group_sizes(m: usize, d: usize, nk: usize) -> Vec<usize> {
    if d < m {
        return vec![0; m];
    }
    let mut c = Vec::with_capacity(m);
    c.push(3.8 * 0.1 * (1.0 - 0.1));
    for i in 1..m {
        let prev: f64 = c[i - 1];
        c.push(3.8 * prev * (1.0 - prev));
    }
    let sum: f64 = c.iter().sum();
    let free = (d - m + 1) as f64;
    c.iter().map(|ci| (ci / sum * free / nk as f64).floor() as usize).collect()
}
