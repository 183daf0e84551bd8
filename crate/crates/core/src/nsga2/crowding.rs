use std::cmp::Ordering;

/// Crowding distance of each member of a front.
///
/// Per objective, members are sorted (stable, so ties keep index order); the
/// two extremes get `+inf` and interior members accumulate the gap between
/// their neighbours divided by the objective's range. A zero range adds 0.
pub fn crowding_distance<T: AsRef<[f64]>>(front: &[T]) -> Vec<f64> {
    let n = front.len();
    if n == 0 {
        return Vec::new();
    }
    let m = front[0].as_ref().len();
    let mut dist = vec![0.0; n];
    let mut order: Vec<usize> = (0..n).collect();
    for j in 0..m {
        let value = |i: usize| front[i].as_ref()[j];
        order.sort_by(|&a, &b| value(a).partial_cmp(&value(b)).unwrap_or(Ordering::Equal));
        dist[order[0]] = f64::INFINITY;
        dist[order[n - 1]] = f64::INFINITY;
        let range = value(order[n - 1]) - value(order[0]);
        if range <= 0.0 {
            continue;
        }
        for w in 1..n.saturating_sub(1) {
            let i = order[w];
            if dist[i].is_finite() {
                dist[i] += (value(order[w + 1]) - value(order[w - 1])) / range;
            }
        }
    }
    dist
}

/// Crowded-comparison: lower rank wins, then larger distance. `Less` means
/// `a` is preferred. Two infinite distances compare equal.
pub fn crowded_cmp(rank_a: usize, dist_a: f64, rank_b: usize, dist_b: f64) -> Ordering {
    rank_a.cmp(&rank_b).then_with(|| dist_b.partial_cmp(&dist_a).unwrap_or(Ordering::Equal))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_point_front() {
        let d = crowding_distance(&[[0.0, 2.0], [1.0, 1.0], [2.0, 0.0]]);
        assert!(d[0].is_infinite() && d[2].is_infinite());
        assert!((d[1] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn single_and_pair() {
        assert!(crowding_distance(&[[3.0, 4.0]])[0].is_infinite());
        assert!(crowding_distance(&[[0.0, 1.0], [1.0, 0.0]]).iter().all(|v| v.is_infinite()));
    }

    #[test]
    fn interior_duplicates_are_finite_and_equal() {
        let d = crowding_distance(&[[0.0, 2.0], [1.0, 1.0], [1.0, 1.0], [2.0, 0.0]]);
        assert!(d[1].is_finite() && d[2].is_finite());
        assert_eq!(d[1], d[2]);
        assert!((d[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn zero_range_objective_contributes_nothing() {
        let d = crowding_distance(&[[0.0, 5.0], [1.0, 5.0], [2.0, 5.0], [4.0, 5.0]]);
        // objective 2 is flat: extremes still infinite from objective 1
        assert!((d[1] - 0.5).abs() < 1e-15);
        assert!((d[2] - 0.75).abs() < 1e-15);
    }

    #[test]
    fn comparison_rules() {
        assert_eq!(crowded_cmp(0, 0.1, 1, 9.0), Ordering::Less);
        assert_eq!(crowded_cmp(1, 2.0, 1, 1.0), Ordering::Less);
        assert_eq!(crowded_cmp(1, f64::INFINITY, 1, f64::INFINITY), Ordering::Equal);
        assert_eq!(crowded_cmp(1, 1e300, 1, f64::INFINITY), Ordering::Greater);
    }
}
