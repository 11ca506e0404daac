//! Acceptance criteria. Runs as a plain binary so that every criterion
//! prints one PASS/FAIL line; the process fails if any criterion fails.

mod common;

use std::time::Instant;

use common::*;
use hyperlift::bounds::compute_bounds;
use hyperlift::sqrt::NonnegFunction;
use hyperlift::*;
use rand::Rng;

type Outcome = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn fail<E: std::fmt::Display>(context: &str) -> impl Fn(E) -> String + '_ {
    move |e| format!("{context}: {e}")
}

/// Families shared by reconstruction, refinement stability and the oracle.
fn shared_families() -> Vec<(Vec<Poly64>, Curve64)> {
    random_families(0x5eed_0001, 200, 1, 6, 4)
}

fn reconstruction() -> Outcome {
    let mut worst = 0.0f64;
    for (idx, (_, curve)) in shared_families().iter().enumerate() {
        let lift = lift_sorted(curve, 4096).map_err(fail(&format!("family {idx}")))?;
        for (t, row) in lift.grid.iter().zip(&lift.branches) {
            let c = curve.values_at(*t).map_err(fail("evaluation"))?;
            let scale = c.iter().fold(1.0f64, |m, v| m.max(v.abs()));
            let back = elementary(row);
            let err = back.iter().zip(&c).fold(0.0f64, |m, (a, b)| m.max((a - b).abs())) / scale;
            worst = worst.max(err);
        }
    }
    ensure(worst <= 1e-8, format!("200 families, worst relative error {worst:.2e} (limit 1e-8)"))
}

fn refinement_stability() -> Outcome {
    let mut worst = 0.0f64;
    let mut at = 0;
    for (idx, (_, curve)) in shared_families().iter().enumerate() {
        let coarse = lift_sorted(curve, 10_000).map_err(fail("grid 1e4"))?.empirical_lip;
        let fine = lift_sorted(curve, 100_000).map_err(fail("grid 1e5"))?.empirical_lip;
        let change = if fine == 0.0 && coarse == 0.0 { 0.0 } else { (fine - coarse).abs() / fine.max(coarse) };
        if change > worst {
            worst = change;
            at = idx;
        }
    }
    ensure(worst < 0.01, format!("largest relative change {worst:.2e} (family {at}, limit 1e-2)"))
}

fn scaling_invariance() -> Outcome {
    let families = random_families(0x5eed_0003, 20, 2, 6, 4);
    let (i0, i1) = ((-0.5, 0.5), (-0.9, 0.9));
    let mut worst = 0.0f64;
    for (idx, (_, curve)) in families.iter().enumerate() {
        let base = compute_bounds(curve, i0, i1).map_err(fail(&format!("family {idx}")))?;
        let r0 = base.ratio.ok_or(format!("family {idx}: bound expression vanishes"))?;
        for lambda in [0.5, 2.0, 10.0] {
            let scaled = compute_bounds(&curve.scale_roots(lambda), i0, i1).map_err(fail("scaled family"))?;
            let r = scaled.ratio.ok_or(format!("family {idx}, λ = {lambda}: bound expression vanishes"))?;
            worst = worst.max((r - r0).abs() / r0.abs());
        }
    }
    ensure(worst <= 1e-6, format!("20 families × λ ∈ {{1/2, 2, 10}}, worst relative drift {worst:.2e} (limit 1e-6)"))
}

fn pm_t() -> Curve64 {
    Curve64::from_root_polys((-2.0, 2.0), &[Poly64::new(vec![0.0, 1.0]), Poly64::new(vec![0.0, -1.0])]).unwrap()
}

fn worked_bound() -> Outcome {
    let r = compute_bounds(&pm_t(), (-1.0, 1.0), (-2.0, 2.0)).map_err(fail("bounds"))?;
    let expected = 12.0 * 2f64.sqrt();
    let err = (r.a0 - expected).abs();
    ensure(err <= 1e-9, format!("A0 = {:.12} vs 12√2 = {expected:.12}, error {err:.1e}", r.a0))
}

fn glaeser_suite() -> Outcome {
    let mut r = rng(0x5eed_0005);
    let mut checked = 0;
    let mut violations = 0;
    for _ in 0..100 {
        let (dg, dh) = (r.gen_range(0..=4), r.gen_range(0..=4));
        let (g, h) = (random_poly(&mut r, dg), random_poly(&mut r, dh));
        let f = &(&g * &g) + &(&h * &h);
        let lip = hyperlift::norms::sup_abs_poly(&f.nth_derivative(2), -1.0, 1.0, 20_001);
        if lip == 0.0 {
            continue;
        }
        let rep = glaeser_check_poly(&f, (-1.0, 1.0), lip.sqrt(), 4096).map_err(fail("glaeser"))?;
        checked += rep.checked;
        violations += rep.violations;
    }
    ensure(violations == 0, format!("100 functions, {checked} windows checked, {violations} violations"))
}

fn lagrange_suite() -> Outcome {
    let mut r = rng(0x5eed_0006);
    let mut failures = 0;
    let mut tightest = f64::INFINITY;
    for _ in 0..100 {
        let m = r.gen_range(1..=6);
        let deg = r.gen_range(0..=m);
        let p = random_poly(&mut r, deg);
        for b in [0.5, 1.0, 2.0] {
            let a = hyperlift::norms::sup_abs_poly(&p, 0.0, b, 20_001) * (1.0 + 1e-12);
            let rep = lagrange_coeff_check(&p, m, a, b).map_err(fail("lagrange"))?;
            if !rep.holds {
                failures += 1;
            }
            for (margin, bound) in rep.margins.iter().zip(&rep.bounds) {
                tightest = tightest.min(margin / bound);
            }
        }
    }
    ensure(failures == 0, format!("300 cases, {failures} failures, smallest relative margin {tightest:.3}"))
}

fn weyl_suite() -> Outcome {
    let mut r = rng(0x5eed_0007);
    let mut worst = 0.0f64;
    for idx in 0..50 {
        let m = r.gen_range(1..=8);
        let (curve, a1) = random_pencil(&mut r, m);
        let lift = eigen_lift(&curve, 4096).map_err(fail(&format!("pencil {idx}")))?;
        let norm = spectral_norm(&a1);
        worst = worst.max(lift.lift.empirical_lip / norm);
    }
    ensure(worst <= 1.0 + 1e-6, format!("50 pencils, max empirical_lip / ‖A1‖ = {worst:.9} (limit 1 + 1e-6)"))
}

fn c1_lift() -> Outcome {
    let mut r = rng(0x5eed_0008);
    let mut worst = 0.0f64;
    for idx in 0..20 {
        // linear parts with well separated slopes keep every crossing transversal
        let n = r.gen_range(2..=5);
        let slopes: Vec<f64> = (0..n).map(|k| -2.0 + 4.0 * k as f64 / (n - 1) as f64).collect();
        let roots: Vec<Poly64> = slopes
            .iter()
            .map(|&s| Poly64::new(vec![r.gen_range(-0.5..=0.5), s, r.gen_range(-0.2..=0.2)]))
            .collect();
        let lift = lift_c1(&family(&roots), 100_000).map_err(fail(&format!("family {idx}")))?;
        let data = lift.derivative_data.ok_or("no derivative data")?;
        worst = worst.max(data.max_jump);
    }
    let lift = lift_c1(&family(&[Poly64::new(vec![0.0, 1.0]), Poly64::new(vec![0.0, -1.0])]), 100_000)
        .map_err(fail("{t, -t}"))?;
    let pm = lift.grid.iter().zip(&lift.branches).fold(0.0f64, |m, (t, row)| {
        m.max((row[0] - t).abs()).max((row[1] + t).abs())
    });
    ensure(
        worst <= 1e-4 && pm <= 1e-9,
        format!("20 families, max derivative jump {worst:.2e} (limit 1e-4); (t, -t) deviation {pm:.1e} (limit 1e-9)"),
    )
}

fn oracle_equivalence() -> Outcome {
    let mut mismatched = 0;
    for (idx, (_, curve)) in shared_families().iter().take(50).enumerate() {
        let oracle = brute_force_lift(curve, 4096).map_err(fail(&format!("family {idx} oracle")))?;
        let lift = lift_sorted(curve, 4096).map_err(fail(&format!("family {idx} lift")))?;
        let mut k = 0;
        for (t, row) in oracle.grid.iter().zip(&oracle.branches) {
            while lift.grid[k] != *t {
                k += 1;
            }
            let mut sorted = row.clone();
            sorted.sort_by(f64::total_cmp);
            if sorted != lift.branches[k] {
                mismatched += 1;
            }
        }
    }
    ensure(mismatched == 0, format!("50 families, {mismatched} mismatched rows"))
}

fn flat_decay() -> Outcome {
    let curve = Curve64::from_root_polys((-2.0, 2.0), &[Poly64::new(vec![0.0, 0.0, 1.0]), Poly64::new(vec![0.0, 0.0, -1.0])])
        .unwrap();
    let mut a0 = Vec::new();
    for d in [1.0, 0.1, 0.01] {
        a0.push(compute_bounds(&curve, (-d, d), (-2.0 * d, 2.0 * d)).map_err(fail("bounds"))?.a0);
    }
    let ok = a0[0] > a0[1] && a0[1] > a0[2] && a0[2] < a0[0] / 10.0;
    ensure(ok, format!("A0 at δ = 1, 0.1, 0.01: {:.4e}, {:.4e}, {:.4e}", a0[0], a0[1], a0[2]))
}

fn sos_suite() -> Outcome {
    let mut r = rng(0x5eed_0011);
    let (mut worst_res, mut worst_excess) = (0.0f64, f64::NEG_INFINITY);
    for idx in 0..50 {
        let (dp, dq) = (r.gen_range(1..=4), r.gen_range(0..=4));
        let squares = vec![random_poly(&mut r, dp), random_poly(&mut r, dq)];
        let f = NonnegFunction::Squares { interval: (-1.0, 1.0), squares };
        let g = sqrt_lift(&f, 4096).map_err(fail(&format!("function {idx}")))?;
        let sup = g.values.iter().fold(0.0f64, |m, v| m.max(v * v));
        worst_res = worst_res.max(g.residual / (1.0 + sup));
        worst_excess = worst_excess.max(g.empirical_lip - g.lip_bound);
    }
    ensure(
        worst_res <= 1e-10 && worst_excess <= 1e-6,
        format!("50 functions, relative residual {worst_res:.1e} (limit 1e-10), max Lip excess {worst_excess:.2e} (limit 1e-6)"),
    )
}

fn planar_examples() -> Outcome {
    let axis = hyperlift::norms::uniform_grid(-1.0, 1.0, 41);
    let examples = [
        ("roots ±(x+y)", Grid2d64::from_fn(2, axis.clone(), axis.clone(), |x, y| vec![0.0, -(x + y) * (x + y)])),
        ("constant", Grid2d64::from_fn(3, axis.clone(), axis.clone(), |_, _| vec![6.0, 11.0, 6.0])),
        ("roots {x, y}", Grid2d64::from_fn(2, axis.clone(), axis.clone(), |x, y| vec![x + y, x * y])),
    ];
    let mut parts = Vec::new();
    let mut ok = true;
    for (name, f) in &examples {
        let r = lift_grid_2d(f).map_err(fail(name))?;
        let limit = r.lip_x.max(r.lip_y) * 2f64.sqrt() * (1.0 + 1e-6);
        ok &= r.lip_2d <= limit;
        parts.push(format!("{name}: {:.6} ≤ {:.6}", r.lip_2d, limit));
    }
    ensure(ok, parts.join("; "))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("reconstruction", reconstruction),
        ("refinement stability", refinement_stability),
        ("scaling invariance", scaling_invariance),
        ("worked bound value", worked_bound),
        ("glaeser suite", glaeser_suite),
        ("lagrange suite", lagrange_suite),
        ("weyl suite", weyl_suite),
        ("c1 lift", c1_lift),
        ("oracle equivalence", oracle_equivalence),
        ("flat-point decay", flat_decay),
        ("square root lift", sos_suite),
        ("planar lift", planar_examples),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} [{secs:.1}s]: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name} [{secs:.1}s]: {detail}", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
