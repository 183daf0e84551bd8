use crate::error::{Error, Result};

fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Inverted generational distance: the mean, over reference points, of the
/// Euclidean distance to the nearest approximation point.
pub fn igd<A: AsRef<[f64]>, R: AsRef<[f64]>>(approx: &[A], reference: &[R]) -> Result<f64> {
    if approx.is_empty() || reference.is_empty() {
        return Err(Error::EmptySet);
    }
    let m = reference[0].as_ref().len();
    if let Some(bad) = approx.iter().map(|a| a.as_ref().len()).find(|&len| len != m) {
        return Err(Error::DimensionMismatch { expected: m, actual: bad });
    }
    let total: f64 = reference
        .iter()
        .map(|r| approx.iter().map(|a| distance(a.as_ref(), r.as_ref())).fold(f64::INFINITY, f64::min))
        .sum();
    Ok(total / reference.len() as f64)
}
