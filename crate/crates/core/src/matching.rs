//! Minimum-cost perfect matching between two equal-size point multisets.
//!
//! Used to compare computed root sets against reference roots.

use num_complex::Complex64;

/// Hungarian algorithm (O(n³)) on a square cost matrix. Returns
/// `assignment[row] = column`.
pub fn min_cost_assignment(cost: &[Vec<f64>]) -> Vec<usize> {
    let n = cost.len();
    if n == 0 {
        return Vec::new();
    }
    // potentials and matching over 1-based indices, column 0 is a sentinel
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut row_of = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        row_of[0] = i;
        let mut j0 = 0;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = row_of[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[row_of[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if row_of[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            row_of[j0] = row_of[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut assignment = vec![0; n];
    for j in 1..=n {
        if row_of[j] > 0 {
            assignment[row_of[j] - 1] = j - 1;
        }
    }
    assignment
}

/// Largest per-pair distance under the matching that minimises total
/// distance. `None` when the sizes differ.
pub fn matched_max_error(a: &[Complex64], b: &[Complex64]) -> Option<f64> {
    if a.len() != b.len() {
        return None;
    }
    let cost: Vec<Vec<f64>> = a
        .iter()
        .map(|x| b.iter().map(|y| (x - y).norm()).collect())
        .collect();
    let assignment = min_cost_assignment(&cost);
    Some(
        assignment
            .iter()
            .enumerate()
            .map(|(i, &j)| cost[i][j])
            .fold(0.0, f64::max),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force(cost: &[Vec<f64>]) -> f64 {
        fn go(cost: &[Vec<f64>], row: usize, used: &mut Vec<bool>) -> f64 {
            if row == cost.len() {
                return 0.0;
            }
            let mut best = f64::INFINITY;
            for j in 0..cost.len() {
                if !used[j] {
                    used[j] = true;
                    best = best.min(cost[row][j] + go(cost, row + 1, used));
                    used[j] = false;
                }
            }
            best
        }
        go(cost, 0, &mut vec![false; cost.len()])
    }

    #[test]
    fn agrees_with_enumeration() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for n in 1..=6 {
            for _ in 0..50 {
                let cost: Vec<Vec<f64>> = (0..n)
                    .map(|_| (0..n).map(|_| rng.gen_range(0.0..10.0)).collect())
                    .collect();
                let a = min_cost_assignment(&cost);
                let total: f64 = a.iter().enumerate().map(|(i, &j)| cost[i][j]).sum();
                assert!((total - brute_force(&cost)).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn permuted_sets_match_exactly() {
        let a = [
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 2.0),
            Complex64::new(-3.0, 1.0),
        ];
        let b = [a[2], a[0], a[1]];
        assert_eq!(matched_max_error(&a, &b), Some(0.0));
        assert_eq!(matched_max_error(&a, &b[..2]), None);
    }
}
