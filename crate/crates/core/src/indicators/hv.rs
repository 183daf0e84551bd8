//! Hypervolume: exact sweeps for two and three objectives and a Monte Carlo
//! estimator for any number of objectives.

use rand::Rng;

use crate::error::{Error, Result};
use crate::solution::non_dominated_indices;

/// Points weakly dominating `reference`, i.e. with every component `<=` it.
fn inside<T: AsRef<[f64]>>(points: &[T], reference: &[f64]) -> Vec<Vec<f64>> {
    points
        .iter()
        .map(|p| p.as_ref())
        .filter(|p| p.iter().zip(reference).all(|(a, r)| a <= r))
        .map(<[f64]>::to_vec)
        .collect()
}

/// Exact hypervolume of the region dominated by `points` and bounded by
/// `reference`. Points outside the reference box contribute nothing.
pub fn hv_exact<T: AsRef<[f64]>>(points: &[T], reference: &[f64]) -> Result<f64> {
    let m = reference.len();
    if let Some(bad) = points.iter().map(|p| p.as_ref().len()).find(|&len| len != m) {
        return Err(Error::DimensionMismatch { expected: m, actual: bad });
    }
    let pts = inside(points, reference);
    match m {
        1 => Ok(pts.iter().map(|p| reference[0] - p[0]).fold(0.0, f64::max)),
        2 => Ok(hv2(pts.iter().map(|p| (p[0], p[1])).collect(), reference[0], reference[1])),
        3 => Ok(hv3(pts, reference)),
        _ => Err(Error::UnsupportedHypervolume(m)),
    }
}

/// Area dominated by 2-D points, all assumed inside the reference box.
fn hv2(mut pts: Vec<(f64, f64)>, r0: f64, r1: f64) -> f64 {
    pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    let mut area = 0.0;
    let mut best_y = r1;
    let mut staircase: Vec<(f64, f64)> = Vec::with_capacity(pts.len());
    for (x, y) in pts {
        if y < best_y {
            staircase.push((x, y));
            best_y = y;
        }
    }
    for (i, &(x, y)) in staircase.iter().enumerate() {
        let next_x = staircase.get(i + 1).map_or(r0, |p| p.0);
        area += (next_x - x) * (r1 - y);
    }
    area
}

/// Volume dominated by 3-D points: slabs between successive third-objective
/// values, each an exact 2-D area.
fn hv3(mut pts: Vec<Vec<f64>>, reference: &[f64]) -> f64 {
    pts.sort_by(|a, b| a[2].total_cmp(&b[2]));
    let mut volume = 0.0;
    let mut slice: Vec<(f64, f64)> = Vec::with_capacity(pts.len());
    for i in 0..pts.len() {
        slice.push((pts[i][0], pts[i][1]));
        let next_z = pts.get(i + 1).map_or(reference[2], |p| p[2]);
        let depth = next_z - pts[i][2];
        if depth > 0.0 {
            volume += depth * hv2(slice.clone(), reference[0], reference[1]);
        }
    }
    volume
}

/// Monte Carlo hypervolume. Samples are drawn uniformly from the box spanned
/// by the component-wise minimum of the points and `reference`; the estimate
/// is the dominated fraction times the box volume. A degenerate box, or no
/// point inside the reference box, gives 0.
pub fn hv_monte_carlo<T: AsRef<[f64]>, R: Rng + ?Sized>(
    points: &[T],
    reference: &[f64],
    samples: usize,
    rng: &mut R,
) -> Result<f64> {
    let m = reference.len();
    if samples == 0 {
        return Err(Error::InvalidArgument("Monte Carlo hypervolume needs at least one sample".into()));
    }
    if let Some(bad) = points.iter().map(|p| p.as_ref().len()).find(|&len| len != m) {
        return Err(Error::DimensionMismatch { expected: m, actual: bad });
    }
    let mut pts = inside(points, reference);
    if pts.is_empty() {
        return Ok(0.0);
    }
    let ideal: Vec<f64> = (0..m).map(|j| pts.iter().map(|p| p[j]).fold(f64::INFINITY, f64::min)).collect();
    let widths: Vec<f64> = ideal.iter().zip(reference).map(|(lo, hi)| hi - lo).collect();
    let volume: f64 = widths.iter().product();
    if volume.is_nan() || volume <= 0.0 {
        return Ok(0.0);
    }
    // Dominated points never change the union; sorting by the first objective
    // lets each sample stop scanning at the first point beyond it.
    pts = non_dominated_indices(&pts.iter().map(Vec::as_slice).collect::<Vec<_>>())
        .into_iter()
        .map(|i| pts[i].clone())
        .collect();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]));
    let mut z = vec![0.0; m];
    let mut hits = 0usize;
    for _ in 0..samples {
        for j in 0..m {
            z[j] = ideal[j] + rng.gen::<f64>() * widths[j];
        }
        for p in &pts {
            if p[0] > z[0] {
                break;
            }
            if p[1..].iter().zip(&z[1..]).all(|(a, b)| a <= b) {
                hits += 1;
                break;
            }
        }
    }
    Ok(hits as f64 / samples as f64 * volume)
}

/// Hypervolume of `points` after mapping `ideal -> 0` and `nadir -> 1` per
/// objective, against the reference point `1.1` in every objective. Exact for
/// up to three objectives; otherwise estimated with `mc_samples` samples.
pub fn normalized_hv<T: AsRef<[f64]>, R: Rng + ?Sized>(
    points: &[T],
    ideal: &[f64],
    nadir: &[f64],
    mc_samples: usize,
    rng: &mut R,
) -> Result<f64> {
    let m = ideal.len();
    let scaled: Vec<Vec<f64>> = points
        .iter()
        .map(|p| {
            p.as_ref()
                .iter()
                .zip(ideal.iter().zip(nadir))
                .map(|(v, (lo, hi))| (v - lo) / (hi - lo).max(f64::MIN_POSITIVE))
                .collect()
        })
        .collect();
    let reference = vec![1.1; m];
    if m <= 3 {
        hv_exact(&scaled, &reference)
    } else {
        hv_monte_carlo(&scaled, &reference, mc_samples, rng)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::RandomStream;

    /// Inclusion-exclusion over all subsets; exponential, for tiny sets only.
    fn brute_force(points: &[Vec<f64>], reference: &[f64]) -> f64 {
        let n = points.len();
        let mut total = 0.0;
        for mask in 1u32..(1 << n) {
            let mut corner = vec![f64::NEG_INFINITY; reference.len()];
            for (i, p) in points.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    for (c, v) in corner.iter_mut().zip(p) {
                        *c = c.max(*v);
                    }
                }
            }
            let vol: f64 = corner.iter().zip(reference).map(|(c, r)| (r - c).max(0.0)).product();
            total += if mask.count_ones() % 2 == 1 { vol } else { -vol };
        }
        total
    }

    #[test]
    fn single_box_and_two_boxes() {
        assert!((hv_exact(&[[0.5, 0.5]], &[1.0, 1.0]).unwrap() - 0.25).abs() < 1e-15);
        let v = hv_exact(&[[0.25, 0.75], [0.75, 0.25]], &[1.0, 1.0]).unwrap();
        assert!((v - 0.3125).abs() < 1e-15);
    }

    #[test]
    fn outside_points_are_ignored() {
        let v = hv_exact(&[[0.5, 0.5], [1.5, 0.0]], &[1.0, 1.0]).unwrap();
        assert!((v - 0.25).abs() < 1e-15);
        assert_eq!(hv_exact(&[[2.0, 2.0, 2.0]], &[1.0, 1.0, 1.0]).unwrap(), 0.0);
    }

    #[test]
    fn four_objectives_unsupported() {
        assert!(matches!(hv_exact(&[[0.0; 4]], &[1.0; 4]), Err(Error::UnsupportedHypervolume(4))));
    }

    #[test]
    fn exact_matches_inclusion_exclusion() {
        let mut rng = RandomStream::new(5);
        for m in [2, 3] {
            for n in 1..=10 {
                let pts: Vec<Vec<f64>> = (0..n).map(|_| (0..m).map(|_| rng.gen::<f64>()).collect()).collect();
                let reference = vec![1.0; m];
                let a = hv_exact(&pts, &reference).unwrap();
                let b = brute_force(&pts, &reference);
                assert!((a - b).abs() < 1e-12, "m={m} n={n}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn monte_carlo_corner_cases() {
        let mut rng = RandomStream::new(1);
        let empty: Vec<Vec<f64>> = vec![];
        assert_eq!(hv_monte_carlo(&empty, &[1.0, 1.0], 100, &mut rng).unwrap(), 0.0);
        // a single point is its own ideal corner: the whole box is dominated
        let v = hv_monte_carlo(&[[0.2, 0.3, 0.1]], &[1.0, 1.0, 1.0], 1000, &mut rng).unwrap();
        assert!((v - 0.8 * 0.7 * 0.9).abs() < 1e-12);
        // zero-width box
        assert_eq!(hv_monte_carlo(&[[1.0, 0.3]], &[1.0, 1.0], 1000, &mut rng).unwrap(), 0.0);
    }

    #[test]
    fn monte_carlo_is_unbiased() {
        let mut rng = RandomStream::new(77);
        for m in [2, 3] {
            let pts: Vec<Vec<f64>> = (0..20).map(|_| (0..m).map(|_| rng.gen::<f64>()).collect()).collect();
            let reference = vec![1.0; m];
            let exact = hv_exact(&pts, &reference).unwrap();
            let est: Vec<f64> = (0..200).map(|_| hv_monte_carlo(&pts, &reference, 10_000, &mut rng).unwrap()).collect();
            let mean = est.iter().sum::<f64>() / 200.0;
            let var = est.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / 199.0;
            let se = (var / 200.0).sqrt();
            assert!((mean - exact).abs() <= 3.0 * se, "m={m}: mean {mean} exact {exact} se {se}");
        }
    }

    #[test]
    fn adding_nondominated_point_never_decreases() {
        let mut rng = RandomStream::new(3);
        for _ in 0..100 {
            let mut pts: Vec<Vec<f64>> = (0..8).map(|_| (0..3).map(|_| rng.gen::<f64>()).collect()).collect();
            let before = hv_exact(&pts, &[1.0; 3]).unwrap();
            pts.push((0..3).map(|_| rng.gen::<f64>()).collect());
            assert!(hv_exact(&pts, &[1.0; 3]).unwrap() >= before - 1e-15);
        }
    }

    #[test]
    fn normalization_maps_nadir_to_one() {
        let mut rng = RandomStream::new(0);
        let v = normalized_hv(&[[2.0, 4.0]], &[2.0, 4.0], &[4.0, 8.0], 10, &mut rng).unwrap();
        assert!((v - 1.21).abs() < 1e-12);
        let w = normalized_hv(&[[4.0, 8.0]], &[2.0, 4.0], &[4.0, 8.0], 10, &mut rng).unwrap();
        assert!((w - 0.01).abs() < 1e-12);
    }
}
