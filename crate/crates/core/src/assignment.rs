//! Minimum-cost perfect matching on a square cost matrix (Hungarian method,
//! shortest augmenting paths with potentials, `O(n³)`).

use crate::scalar::Scalar;

/// Returns `perm` with `perm[row] = column` minimising `Σ cost[row][perm[row]]`.
///
/// Among optimal matchings, earlier rows prefer lower column indices, so the
/// identity wins every exact tie it takes part in.
pub fn min_cost_assignment<T: Scalar>(cost: &[Vec<T>]) -> Vec<usize> {
    let n = cost.len();
    if n == 0 {
        return Vec::new();
    }
    debug_assert!(cost.iter().all(|r| r.len() == n), "cost matrix must be square");
    let inf = T::infinity();
    // 1-based arrays; index 0 is the virtual root
    let mut u = vec![T::zero(); n + 1];
    let mut v = vec![T::zero(); n + 1];
    let mut owner = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        owner[0] = i;
        let mut j0 = 0;
        let mut minv = vec![inf; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = owner[j0];
            let mut delta = inf;
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
                    u[owner[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if owner[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            owner[j0] = owner[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut perm = vec![0; n];
    for j in 1..=n {
        perm[owner[j] - 1] = j - 1;
    }
    prefer_identity(cost, perm)
}

/// Replaces an optimal matching by the identity on every row where swapping
/// back keeps the total cost unchanged, so exact ties resolve deterministically
/// towards the current labelling.
fn prefer_identity<T: Scalar>(cost: &[Vec<T>], mut perm: Vec<usize>) -> Vec<usize> {
    let n = perm.len();
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..n {
            let j = perm[i];
            if j == i {
                continue;
            }
            // row k currently holds column i; swap so row i takes column i
            let k = perm.iter().position(|&c| c == i).expect("bijection");
            let before = cost[i][j] + cost[k][i];
            let after = cost[i][i] + cost[k][j];
            if after <= before {
                perm[i] = i;
                perm[k] = j;
                changed = true;
            }
        }
    }
    perm
}

/// Total cost of a matching.
pub fn assignment_cost<T: Scalar>(cost: &[Vec<T>], perm: &[usize]) -> T {
    perm.iter().enumerate().map(|(i, &j)| cost[i][j]).sum()
}

/// Cost matrix `|a_i − b_j|` between two value vectors.
pub fn displacement_costs<T: Scalar>(a: &[T], b: &[T]) -> Vec<Vec<T>> {
    a.iter().map(|&x| b.iter().map(|&y| (x - y).abs()).collect()).collect()
}
