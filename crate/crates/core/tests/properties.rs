//! Property tests across modules.

mod common;

use common::*;
use hyperlift::norms::uniform_grid;
use hyperlift::sqrt::NonnegFunction;
use hyperlift::*;
use proptest::prelude::*;
use rand::Rng;

fn rel_err(a: &[f64], b: &[f64]) -> f64 {
    let scale = b.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    a.iter().zip(b).fold(0.0f64, |m, (x, y)| m.max((x - y).abs())) / scale
}

fn one_family(seed: u64, min_n: usize) -> (Vec<Poly64>, Curve64) {
    random_families(seed, 1, min_n, 6, 4).pop().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn roots_reproduce_their_polynomial(roots in prop::collection::vec(-10.0f64..10.0, 1..8)) {
        let set = RootMultiset64::new(roots.clone()).unwrap();
        let p = HyperbolicPoly64::from_roots(&set).unwrap();
        let found = p.roots(1e-9).unwrap();
        prop_assert!(rel_err(&elementary(found.values()), p.elem()) <= 1e-10);
        let mut reversed = roots;
        reversed.reverse();
        let q = HyperbolicPoly64::from_roots(&RootMultiset64::new(reversed).unwrap()).unwrap();
        prop_assert!(rel_err(q.elem(), p.elem()) <= 1e-12);
    }

    #[test]
    fn newton_identities_round_trip(roots in prop::collection::vec(-3.0f64..3.0, 1..8)) {
        let e = elementary(&roots);
        let back = power_sums_to_elementary(&elementary_to_power_sums(&e));
        prop_assert!(rel_err(&back, &e) <= 1e-9, "{back:?} vs {e:?}");
    }

    #[test]
    fn sorted_lift_matches_oracle(seed in any::<u64>()) {
        let (_, curve) = one_family(seed, 1);
        let oracle = brute_force_lift(&curve, 1500).unwrap();
        let lift = lift_sorted_on(&curve, &oracle.grid).unwrap();
        for (a, b) in oracle.branches.iter().zip(&lift.branches) {
            let mut a = a.clone();
            a.sort_by(f64::total_cmp);
            prop_assert_eq!(&a, b);
        }
        let lip = empirical_lip(&oracle, LipMode::Consecutive).unwrap();
        prop_assert!(lift.empirical_lip <= lip + 1e-9);
    }

    #[test]
    fn lifts_reconstruct_the_curve(seed in any::<u64>()) {
        let (_, curve) = one_family(seed, 1);
        for lift in [lift_sorted(&curve, 600).unwrap(), lift_c1(&curve, 600).unwrap()] {
            for (t, row) in lift.grid.iter().zip(&lift.branches) {
                prop_assert!(rel_err(&elementary(row), &curve.values_at(*t).unwrap()) <= 1e-8);
            }
        }
    }

    #[test]
    fn gluing_keeps_the_lipschitz_constant(seed in any::<u64>()) {
        let (_, curve) = one_family(seed, 2);
        let grid = uniform_grid(-1.0, 1.0, 801);
        let left = lift_sorted_on(&curve, &grid[..500]).unwrap();
        let right = lift_sorted_on(&curve, &grid[300..]).unwrap();
        let glued = glue(&left, &right, (grid[300], grid[499])).unwrap();
        prop_assert_eq!(glued.grid.len(), 801);
        prop_assert!(glued.empirical_lip <= left.empirical_lip.max(right.empirical_lip) + 1e-9);
    }

    #[test]
    fn c1_and_sorted_lifts_agree_as_multisets(seed in any::<u64>()) {
        let (_, curve) = one_family(seed, 2);
        let c1 = lift_c1(&curve, 800).unwrap();
        let sorted = lift_sorted_on(&curve, &c1.grid).unwrap();
        for (a, b) in c1.branches.iter().zip(&sorted.branches) {
            let mut a = a.clone();
            a.sort_by(f64::total_cmp);
            prop_assert_eq!(&a, b);
        }
    }

    #[test]
    fn scaling_scales_the_roots(seed in any::<u64>(), lambda in 0.1f64..10.0) {
        let (_, curve) = one_family(seed, 1);
        let scaled = curve.scale_roots(lambda);
        for t in [-0.7, 0.1, 0.9] {
            let r: Vec<f64> = curve.roots_at(t).unwrap().values().iter().map(|v| v * lambda).collect();
            let s = scaled.roots_at(t).unwrap();
            prop_assert!(rel_err(&elementary(s.values()), &elementary(&r)) <= 1e-9);
        }
    }

    #[test]
    fn square_roots_are_lipschitz(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (dp, dq) = (r.gen_range(0..=4), r.gen_range(0..=4));
        let squares = vec![random_poly(&mut r, dp), random_poly(&mut r, dq)];
        let f = NonnegFunction::Squares { interval: (-1.0, 1.0), squares };
        let g = sqrt_lift(&f, 2000).unwrap();
        let sup = g.values.iter().fold(0.0f64, |m, v| m.max(v * v));
        prop_assert!(g.residual <= 1e-10 * (1.0 + sup));
        prop_assert!(g.lip_ok && g.empirical_lip <= g.lip_bound + 1e-6);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, ..ProptestConfig::default() })]

    #[test]
    fn charpoly_agrees_with_eigensolver(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = r.gen_range(1..=6);
        let (a, a1) = random_pencil(&mut r, m);
        let curve = charpoly_curve(&a).unwrap();
        for _ in 0..100 {
            let t = r.gen_range(-1.0..=1.0);
            let direct = a.eigenvalues_at(t);
            let via = curve.roots_at(t).unwrap();
            for (x, y) in direct.iter().zip(via.values()) {
                prop_assert!((x - y).abs() <= 1e-8 * (1.0 + x.abs()), "t = {t}: {direct:?} vs {via:?}");
            }
        }
        let lift = eigen_lift(&a, 1000).unwrap();
        prop_assert!(lift.weyl_ok);
        prop_assert!(lift.lift.empirical_lip <= spectral_norm(&a1) * (1.0 + 1e-6));
    }

    #[test]
    fn seminorms_match_dense_sampling(seed in any::<u64>()) {
        let (_, curve) = one_family(seed, 1);
        let k = (-0.8, 0.6);
        let dense = uniform_grid(k.0, k.1, 65_536);
        let est = curve.seminorms(k, 3).unwrap();
        let Some(comps) = (0..curve.n()).map(|i| curve.component_derivative(i, 0)).collect::<Option<Vec<_>>>() else {
            return Ok(());
        };
        for (e, p) in est.iter().zip(&comps) {
            let mut d = p.clone();
            for order in 0..=3 {
                let sampled = dense.iter().fold(0.0f64, |m, &t| m.max(d.at(t).abs()));
                let reported = if order < 3 { e.derivative_sups[order] } else { e.lip };
                prop_assert!(reported >= sampled * (1.0 - 1e-12));
                prop_assert!(reported <= sampled * (1.0 + 1e-6) + 1e-12, "order {order}: {reported} vs {sampled}");
                d = d.derivative();
            }
        }
    }
}

#[test]
fn cluster_reassembly_on_random_configurations() {
    let mut r = rng(7);
    for _ in 0..200 {
        let n = r.gen_range(1..=8);
        let centres: Vec<f64> = (0..3).map(|_| r.gen_range(-5.0..5.0)).collect();
        let roots: Vec<f64> = (0..n).map(|_| centres[r.gen_range(0..3)] + r.gen_range(-1e-3..1e-3)).collect();
        let tree = cluster_roots(&roots, 0.5).unwrap();
        let mut sorted = roots.clone();
        sorted.sort_by(f64::total_cmp);
        for (a, b) in tree.reassemble().iter().zip(&sorted) {
            assert!((a - b).abs() <= 1e-10 * tree.scale.max(1e-300) + 1e-12 * b.abs().max(1.0));
        }
    }
}

#[test]
fn matrix_files_mirror_the_upper_triangle() {
    let text = r#"{"m": 2, "interval": [-1, 1], "entries": [[[1], [0, 1]], [[-1]]]}"#;
    let a: MatrixCurve64 = MatrixFile::from_json(text).unwrap().into_curve().unwrap();
    let lift = eigen_lift(&a, 201).unwrap();
    assert!(lift.weyl_ok);
    for (t, row) in lift.lift.grid.iter().zip(&lift.lift.branches) {
        let r = (1.0 + t * t).sqrt();
        assert!((row[0] + r).abs() < 1e-9 && (row[1] - r).abs() < 1e-9);
    }
}

#[test]
fn csv_round_trip() {
    let curve = family(&[Poly64::new(vec![0.0, 1.0]), Poly64::new(vec![0.5, -1.0])]);
    let lift = lift_sorted_on(&curve, &uniform_grid(-1.0, 1.0, 33)).unwrap();
    let text = io::branches_csv(&lift).unwrap();
    let (grid, rows): (Vec<f64>, Vec<Vec<f64>>) = io::read_branches_csv(text.as_bytes()).unwrap();
    assert_eq!(grid, lift.grid);
    assert_eq!(rows, lift.branches);
}
