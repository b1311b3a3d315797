use std::f64::consts::PI;

use lagmut::geometry::{
    integrate_lambda_n, is_admissible, is_valid_mutation_pair, lagrangian_residual,
    primitive_along_path, standard_loop_action, torus_point_coordinates, winding_number,
    hamiltonian_isotopy_test, GeometryContext, PlanarPath, Segment, TorusPoint,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn ctx(n: u32) -> GeometryContext {
    GeometryContext::new(n, 1e-10).unwrap()
}

/// −1 → −a → bump of height `height` → a → 1, a polyline through the upper half plane.
fn bump(a: f64, height: f64) -> PlanarPath {
    PlanarPath::polyline(vec![
        c(-1.0, 0.0),
        c(-a, 0.0),
        c(-a + 0.1, height),
        c(a - 0.1, height),
        c(a, 0.0),
        c(1.0, 0.0),
    ])
    .unwrap()
}

/// −1 → −a → triangular peak of height `height` → a → 1.
fn peak(a: f64, height: f64) -> PlanarPath {
    PlanarPath::polyline(vec![c(-1.0, 0.0), c(-a, 0.0), c(0.0, height), c(a, 0.0), c(1.0, 0.0)]).unwrap()
}

/// On |z| = r the form reduces to r^2 dθ / (2 r^{2(n-1)/n}) = r^{2/n} dθ / 2.
fn arc_value(n: u32, r: f64, sweep: f64) -> f64 {
    r.powf(2.0 / n as f64) * sweep / 2.0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn arc_integral_matches_closed_form(
        n in 2u32..=6,
        r in 0.05f64..5.0,
        theta0 in -PI..PI,
        sweep in -6.0f64..6.0,
    ) {
        prop_assume!(sweep.abs() > 1e-6);
        let arc = PlanarPath::arc(c(0.0, 0.0), r, theta0, theta0 + sweep).unwrap();
        let v = integrate_lambda_n(&arc, &ctx(n)).unwrap();
        prop_assert!((v - arc_value(n, r, sweep)).abs() < 1e-8);
    }

    #[test]
    fn reversal_flips_the_sign(
        n in 2u32..=5,
        pts in prop::collection::vec((0.2f64..3.0, -3.0f64..3.0), 2..6),
    ) {
        // Points in the right half plane keep every segment away from 0.
        let path = PlanarPath::polyline(pts.iter().map(|(x, y)| c(*x, *y)).collect()).unwrap();
        let forward = integrate_lambda_n(&path, &ctx(n)).unwrap();
        let backward = integrate_lambda_n(&path.reversed(), &ctx(n)).unwrap();
        prop_assert!((forward + backward).abs() < 1e-9);
    }

    #[test]
    fn real_segments_carry_nothing(n in 2u32..=6, a in 0.01f64..10.0, b in 0.01f64..10.0, neg in any::<bool>()) {
        let s = if neg { -1.0 } else { 1.0 };
        let line = PlanarPath::line(c(s * a, 0.0), c(s * b, 0.0)).unwrap();
        prop_assert!(integrate_lambda_n(&line, &ctx(n)).unwrap().abs() < 1e-12);
    }

    #[test]
    fn winding_ignores_start_and_refinement(start in 0.0f64..(2.0 * PI), r in 0.1f64..3.0, dx in -5.0f64..5.0, pieces in 1usize..6) {
        prop_assume!((dx.abs() - r).abs() > 1e-3);
        let centre = c(dx, 0.0);
        let step = 2.0 * PI / pieces as f64;
        let segments: Vec<Segment> = (0..pieces)
            .map(|k| Segment::Arc { center: centre, radius: r, theta0: start + k as f64 * step, theta1: start + (k + 1) as f64 * step })
            .collect();
        let split = PlanarPath::new(segments, true).unwrap();
        let whole = PlanarPath::circle(centre, r, true).unwrap();
        let expected = if dx.abs() < r { 1 } else { 0 };
        prop_assert_eq!(winding_number(&split, c(0.0, 0.0)).unwrap(), expected);
        prop_assert_eq!(winding_number(&whole, c(0.0, 0.0)).unwrap(), expected);
    }

    #[test]
    fn torus_points_satisfy_the_defining_relations(
        n in 2u32..=6,
        re in -3.0f64..3.0,
        im in -3.0f64..3.0,
        angles in prop::collection::vec(-10.0f64..10.0, 5),
    ) {
        prop_assume!(re.abs() + im.abs() > 1e-3);
        let base = c(re, im);
        let p = TorusPoint::new(base, angles[..n as usize - 1].to_vec()).unwrap();
        let z = torus_point_coordinates(&p, &ctx(n)).unwrap();
        let product = z.iter().fold(c(1.0, 0.0), |acc, w| acc * w);
        prop_assert!((product - base).norm() <= 1e-10 * base.norm());
        let m = base.norm().powf(1.0 / n as f64);
        prop_assert!(z.iter().all(|w| (w.norm() - m).abs() < 1e-12 * m.max(1.0)));
    }

    #[test]
    fn standard_loops_are_exact(
        n in 2u32..=5,
        re in -3.0f64..3.0,
        im in 0.01f64..3.0,
        angles in prop::collection::vec(-3.0f64..3.0, 4),
        j in 0usize..4,
    ) {
        let p = TorusPoint::new(c(re, im), angles[..n as usize - 1].to_vec()).unwrap();
        let j = j % (n as usize - 1);
        prop_assert!(standard_loop_action(&p, j, &ctx(n)).unwrap().abs() < 1e-10);
    }

    #[test]
    fn primitive_is_additive(n in 2u32..=5, height in 0.05f64..0.3, split in 1usize..5) {
        let path = bump(0.4, height);
        let f = primitive_along_path(&path, &[], &ctx(n)).unwrap();
        let total = integrate_lambda_n(&path, &ctx(n)).unwrap();
        prop_assert!((f.last().unwrap().1 - total).abs() < 1e-9);
        // Splitting at a breakpoint: the two halves add up.
        let head = PlanarPath::new(
            path.pieces()[..split].iter().map(|p| match *p {
                lagmut::geometry::Piece::Line { from, to } => Segment::Line { from, to },
                lagmut::geometry::Piece::Arc { center, radius, theta0, theta1 } => Segment::Arc { center, radius, theta0, theta1 },
            }).collect(),
            false,
        ).unwrap();
        prop_assert!((f[split].1 - integrate_lambda_n(&head, &ctx(n)).unwrap()).abs() < 1e-9);
    }
}

#[test]
fn semicircle_pair_and_radius_two_control() {
    for n in 2..=6 {
        let upper = PlanarPath::arc(c(0.0, 0.0), 1.0, 0.0, PI).unwrap();
        let lower = PlanarPath::arc(c(0.0, 0.0), 1.0, PI, 2.0 * PI).unwrap();
        let good = is_valid_mutation_pair(&upper, &lower, &ctx(n)).unwrap();
        assert!(good.ok && good.winding.abs() == 1 && good.area_defect.abs() < 1e-9, "{good:?}");

        let wide = PlanarPath::new(
            vec![
                Segment::Line { from: c(-1.0, 0.0), to: c(-2.0, 0.0) },
                Segment::Arc { center: c(0.0, 0.0), radius: 2.0, theta0: PI, theta1: 2.0 * PI },
                Segment::Line { from: c(2.0, 0.0), to: c(1.0, 0.0) },
            ],
            false,
        )
        .unwrap();
        let bad = is_valid_mutation_pair(&upper, &wide, &ctx(n)).unwrap();
        let expected = (2f64.powf(2.0 / n as f64) - 1.0) * PI / 2.0;
        assert!(!bad.ok);
        assert!((bad.area_defect - expected).abs() < 1e-8, "{} vs {expected}", bad.area_defect);
    }
}

#[test]
fn mutation_pair_rejects_mismatched_ends() {
    let upper = PlanarPath::arc(c(0.0, 0.0), 1.0, 0.0, PI).unwrap();
    let other = PlanarPath::arc(c(0.0, 0.0), 2.0, PI, 2.0 * PI).unwrap();
    assert!(is_valid_mutation_pair(&upper, &other, &ctx(2)).is_err());
}

#[test]
fn equal_area_reshaping_is_an_isotopy() {
    let ctx = ctx(3);
    let g0 = bump(0.4, 0.2);
    let target = integrate_lambda_n(&g0, &ctx).unwrap();
    // Solve for the height of a triangular peak with the same λₙ-integral.
    let (mut lo, mut hi) = (0.01, 0.39);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        // Clockwise travel over the upper half plane gives a negative integral
        // whose size grows with the height.
        if integrate_lambda_n(&peak(0.4, mid), &ctx).unwrap() > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let g1 = peak(0.4, 0.5 * (lo + hi));
    assert!(hamiltonian_isotopy_test(&g0, &g1, &ctx).unwrap());
    assert!(!hamiltonian_isotopy_test(&g0, &peak(0.4, 0.5 * (lo + hi) + 0.05), &ctx).unwrap());
    assert!(is_admissible(&g1, 1.0, 0.6, &ctx).ok);
}

#[test]
fn lagrangian_residual_converges_at_second_order() {
    let path = bump(0.35, 0.2);
    for n in 2..=4 {
        let ctx = ctx(n);
        let angles: Vec<f64> = (0..n - 1).map(|j| 0.3 + j as f64).collect();
        // The error term vanishes at the symmetric midpoint t = 2.5, so sample off it.
        for t in [1.3, 2.3, 3.6] {
            let coarse = lagrangian_residual(&path, t, &angles, 1e-3, &ctx).unwrap();
            let fine = lagrangian_residual(&path, t, &angles, 5e-4, &ctx).unwrap();
            let tiny = lagrangian_residual(&path, t, &angles, 1e-4, &ctx).unwrap();
            assert!(tiny < 1e-6);
            let ratio = coarse / fine;
            assert!((3.5..=4.5).contains(&ratio), "n={n} t={t} ratio {ratio}");
        }
    }
}
