//! Real-coded variation: simulated binary crossover and polynomial mutation.

use rand::Rng;

use crate::problem::clamp_to;

/// Spread factor for a uniform draw `u`.
pub fn sbx_spread(u: f64, eta: f64) -> f64 {
    if u <= 0.5 {
        (2.0 * u).powf(1.0 / (eta + 1.0))
    } else {
        (1.0 / (2.0 * (1.0 - u))).powf(1.0 / (eta + 1.0))
    }
}

/// One SBX recombination of a single variable for a given draw `u`.
/// The children are symmetric around the parents' mean.
pub fn sbx_pair(y1: f64, y2: f64, u: f64, eta: f64) -> (f64, f64) {
    let beta = sbx_spread(u, eta);
    (0.5 * ((1.0 + beta) * y1 + (1.0 - beta) * y2), 0.5 * ((1.0 - beta) * y1 + (1.0 + beta) * y2))
}

/// Simulated binary crossover. Each variable is recombined with probability
/// `rate`; children are clamped to the bounds.
pub fn sbx_crossover<R: Rng + ?Sized>(
    p1: &[f64],
    p2: &[f64],
    eta_c: f64,
    rate: f64,
    lower: &[f64],
    upper: &[f64],
    rng: &mut R,
) -> (Vec<f64>, Vec<f64>) {
    assert_eq!(p1.len(), p2.len(), "SBX parents must have equal length");
    debug_assert!(eta_c > 0.0);
    let mut c1 = p1.to_vec();
    let mut c2 = p2.to_vec();
    for i in 0..p1.len() {
        if rate < 1.0 && rng.gen::<f64>() >= rate {
            continue;
        }
        let u: f64 = rng.gen();
        if (p1[i] - p2[i]).abs() < 1e-14 {
            continue;
        }
        let (a, b) = sbx_pair(p1[i], p2[i], u, eta_c);
        c1[i] = a;
        c2[i] = b;
    }
    (clamp_to(&c1, lower, upper), clamp_to(&c2, lower, upper))
}

/// Bounded polynomial mutation. Each variable mutates with probability `pm`;
/// the perturbation's support is exactly `[lower - x, upper - x]`.
pub fn polynomial_mutation<R: Rng + ?Sized>(
    x: &[f64],
    eta_m: f64,
    pm: f64,
    lower: &[f64],
    upper: &[f64],
    rng: &mut R,
) -> Vec<f64> {
    debug_assert!(eta_m > 0.0 && (0.0..=1.0).contains(&pm));
    let mut y = x.to_vec();
    if pm <= 0.0 {
        return y;
    }
    let pow = 1.0 / (eta_m + 1.0);
    for i in 0..y.len() {
        if rng.gen::<f64>() >= pm {
            continue;
        }
        let (lo, hi) = (lower[i], upper[i]);
        let width = hi - lo;
        let d1 = (y[i] - lo) / width;
        let d2 = (hi - y[i]) / width;
        let u: f64 = rng.gen();
        let dq = if u <= 0.5 {
            let v = 2.0 * u + (1.0 - 2.0 * u) * (1.0 - d1).powf(eta_m + 1.0);
            v.powf(pow) - 1.0
        } else {
            let v = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * (1.0 - d2).powf(eta_m + 1.0);
            1.0 - v.powf(pow)
        };
        y[i] = (y[i] + dq * width).max(lo).min(hi);
    }
    y
}
