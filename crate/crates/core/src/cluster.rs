//! Recursive cluster reduction of a root configuration.
//!
//! At a point where the dominant invariant is positive the centred roots are
//! normalised to unit length, split into groups separated by large gaps, and
//! each group is recentred and reduced again. Reassembling the tree applies
//! `shift + scale · (children)` level by level and reproduces the roots.

use serde::{Deserialize, Serialize};

use crate::curve::CoeffCurve;
use crate::error::{LiftError, Result};
use crate::scalar::{fmax, total_cmp, Scalar};

/// Default separation, in normalised units, between adjacent clusters.
pub const DEFAULT_GAP_FACTOR: f64 = 0.5;

/// Grid cells per side used to find the neighbourhood of the base point.
const NEIGHBOURHOOD_STEPS: usize = 1024;

/// One level of the reduction.
///
/// `roots` are sorted and expressed in the parent's normalised frame (the
/// original roots at the top). A node with no children is a leaf: a single
/// root or a cluster that has collapsed to its centre.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClusterTree<T> {
    /// Neighbourhood of the base point on which no two clusters collide.
    pub interval: Option<[T; 2]>,
    pub roots: Vec<T>,
    /// Mean of `roots`.
    pub shift: T,
    /// Euclidean norm of the centred roots.
    pub scale: T,
    /// Index sets into `roots`, in increasing order.
    pub clusters: Vec<Vec<usize>>,
    pub children: Vec<ClusterTree<T>>,
}

impl<T: Scalar> ClusterTree<T> {
    /// Number of roots carried by the node.
    pub fn degree(&self) -> usize {
        self.roots.len()
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// Levels below and including this node.
    pub fn depth(&self) -> usize {
        1 + self.children.iter().map(ClusterTree::depth).max().unwrap_or(0)
    }

    /// Sizes of the leaves, left to right.
    pub fn leaf_sizes(&self) -> Vec<usize> {
        if self.is_leaf() {
            vec![self.degree()]
        } else {
            self.children.iter().flat_map(ClusterTree::leaf_sizes).collect()
        }
    }

    /// Rebuilds the roots of this node from its children.
    pub fn reassemble(&self) -> Vec<T> {
        if self.is_leaf() {
            return vec![self.shift; self.degree()];
        }
        self.children
            .iter()
            .flat_map(ClusterTree::reassemble)
            .map(|v| self.shift + self.scale * v)
            .collect()
    }
}

/// Cluster tree of a bare root configuration.
pub fn cluster_roots<T: Scalar>(roots: &[T], gap_factor: T) -> Result<ClusterTree<T>> {
    if roots.is_empty() {
        return Err(LiftError::InvalidInput("no roots to cluster".into()));
    }
    if roots.iter().any(|r| !r.is_finite()) {
        return Err(LiftError::InvalidInput("roots must be finite".into()));
    }
    if !(gap_factor > T::zero()) {
        return Err(LiftError::InvalidParameter(format!("gap factor must be positive, got {gap_factor}")));
    }
    let mut sorted = roots.to_vec();
    sorted.sort_by(total_cmp);
    Ok(build(sorted, gap_factor))
}

fn build<T: Scalar>(roots: Vec<T>, gap: T) -> ClusterTree<T> {
    let k = roots.len();
    let shift = roots.iter().copied().sum::<T>() / T::from_index(k);
    let scale = roots.iter().map(|&r| (r - shift) * (r - shift)).sum::<T>().sqrt();
    let magnitude = roots.iter().fold(T::one(), |m, r| fmax(m, r.abs()));
    let mut node = ClusterTree { interval: None, roots, shift, scale, clusters: Vec::new(), children: Vec::new() };
    if k == 1 || scale <= T::lit(1e-12) * magnitude {
        return node;
    }
    let normalised: Vec<T> = node.roots.iter().map(|&r| (r - shift) / scale).collect();
    let clusters = partition(&normalised, gap);
    node.children = clusters
        .iter()
        .map(|idx| build(idx.iter().map(|&i| normalised[i]).collect(), gap))
        .collect();
    node.clusters = clusters;
    node
}

/// Splits sorted values at gaps larger than `gap`. A configuration with no
/// such gap is split at its largest gap so every level shrinks the degree.
fn partition<T: Scalar>(v: &[T], gap: T) -> Vec<Vec<usize>> {
    let mut cuts: Vec<usize> = (1..v.len()).filter(|&i| v[i] - v[i - 1] > gap).collect();
    if cuts.is_empty() {
        let widest = (1..v.len()).fold(1, |best, i| if v[i] - v[i - 1] > v[best] - v[best - 1] { i } else { best });
        cuts.push(widest);
    }
    let mut out = Vec::with_capacity(cuts.len() + 1);
    let mut start = 0;
    for c in cuts.into_iter().chain(std::iter::once(v.len())) {
        out.push((start..c).collect());
        start = c;
    }
    out
}

/// Cluster tree of the roots of `curve` at `t0`, which must not be a zero of
/// the dominant invariant. The top node records the neighbourhood of `t0`
/// on which roots from different top-level clusters stay apart.
pub fn cluster_reduce<T: Scalar>(curve: &CoeffCurve<T>, t0: T, gap_factor: T) -> Result<ClusterTree<T>> {
    let dom = curve.to_dominant();
    let c = dom.values_at(t0)?;
    let magnitude = c.iter().fold(T::one(), |m, v| fmax(m, v.abs()));
    if c[0] <= curve.tol() * magnitude {
        return Err(LiftError::CannotReduceAtZero { t: t0.as_f64(), c1: c[0].as_f64() });
    }
    let roots = curve.roots_at(t0)?.into_vec();
    let mut tree = cluster_roots(&roots, gap_factor)?;
    tree.interval = Some(neighbourhood(curve, t0, &tree.clusters)?);
    Ok(tree)
}

fn neighbourhood<T: Scalar>(curve: &CoeffCurve<T>, t0: T, clusters: &[Vec<usize>]) -> Result<[T; 2]> {
    let (a, b) = curve.interval();
    let step = (b - a) / T::from_index(NEIGHBOURHOOD_STEPS);
    let boundaries: Vec<usize> = clusters.iter().skip(1).map(|c| c[0]).collect();
    let separated = |t: T| -> Result<bool> {
        let r = curve.roots_at(t)?.into_vec();
        let tiny = T::lit(1e-12) * r.iter().fold(T::one(), |m, v| fmax(m, v.abs()));
        Ok(boundaries.iter().all(|&i| r[i] - r[i - 1] > tiny))
    };
    let mut reach = [t0, t0];
    for (side, dir) in [(0, -T::one()), (1, T::one())] {
        let mut k = 1usize;
        loop {
            let t = t0 + dir * step * T::from_index(k);
            let t = if dir < T::zero() { t.max(a) } else { t.min(b) };
            if !separated(t)? {
                break;
            }
            reach[side] = t;
            if t == a || t == b {
                break;
            }
            k += 1;
        }
    }
    Ok(reach)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;

    #[test]
    fn near_pair_and_far_root() {
        let t = cluster_roots(&[-1.0, -0.99, 5.0], 0.5).unwrap();
        assert_eq!(t.clusters, vec![vec![0, 1], vec![2]]);
        assert_eq!(t.leaf_sizes(), vec![1, 1, 1]);
    }

    #[test]
    fn equal_roots_collapse() {
        let t = cluster_roots(&[2.0, 2.0, 2.0], 0.5).unwrap();
        assert_eq!(t.depth(), 1);
        assert!(t.is_leaf());
        assert_eq!(t.scale, 0.0);
        assert_eq!(t.reassemble(), vec![2.0; 3]);
    }

    #[test]
    fn separated_roots_are_singletons() {
        let t = cluster_roots(&[3.0, 1.0, 2.0], 0.5).unwrap();
        assert_eq!(t.clusters, vec![vec![0], vec![1], vec![2]]);
        assert!(t.children.iter().all(ClusterTree::is_leaf));
    }

    #[test]
    fn reassembly_round_trip() {
        let roots = [-3.1f64, -3.0, -2.999, 0.2, 0.25, 4.0];
        let t = cluster_roots(&roots, 0.5).unwrap();
        let back = t.reassemble();
        for (a, b) in back.iter().zip(&roots) {
            assert!((a - b).abs() <= 1e-10 * t.scale, "{back:?}");
        }
        fn degrees_shrink(t: &ClusterTree<f64>) {
            for c in &t.children {
                assert!(c.degree() < t.degree());
                degrees_shrink(c);
            }
        }
        degrees_shrink(&t);
    }

    #[test]
    fn reduce_on_curve() {
        // roots t - 1, t + 1 and 3t: well separated near t = 0.5
        let c = CoeffCurve::from_root_polys(
            (-1.0, 1.0),
            &[Poly::new(vec![-1.0, 1.0]), Poly::new(vec![1.0, 1.0]), Poly::new(vec![0.0, 3.0])],
        )
        .unwrap();
        let tree = cluster_reduce(&c, 0.0, 0.5).unwrap();
        let [lo, hi]: [f64; 2] = tree.interval.unwrap();
        // 3t meets t + 1 at t = 0.5 and t − 1 at t = −0.5
        assert!((lo + 0.5).abs() < 3e-3 && (hi - 0.5).abs() < 3e-3, "{lo} {hi}");
        let z = CoeffCurve::elementary((-1.0, 1.0), vec![Poly::zero(), Poly::new(vec![0.0, 0.0, -1.0])]).unwrap();
        assert!(matches!(cluster_reduce(&z, 0.0, 0.5), Err(LiftError::CannotReduceAtZero { .. })));
    }
}
