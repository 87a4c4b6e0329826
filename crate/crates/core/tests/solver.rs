use dsa2d::solver::{incident_boundary_fields, uniform_angles, GridSpec};
use dsa2d::validation::{compare_with_mie, cylinder_problem};
use dsa2d::{CfieConfig, Complex64, Contour, Error, Medium, PlaneWave, Point, Region, ScatteringProblem};
use proptest::prelude::*;
use std::f64::consts::PI;

fn square(mesh: f64, eps_r: f64, wave: PlaneWave) -> ScatteringProblem {
    ScatteringProblem::single(
        Contour::rectangle(Point::ORIGIN, 1.0, 1.0, mesh).unwrap(),
        Medium::dielectric(eps_r).unwrap(),
        Medium::VACUUM,
        wave,
    )
}

fn rel_max(a: &[Complex64], b: &[Complex64]) -> f64 {
    let scale = b.iter().map(|v| v.norm()).fold(0.0, f64::max);
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm() / scale)
        .fold(0.0, f64::max)
}

#[test]
fn coarse_cylinder_tracks_mie() {
    let problem = cylinder_problem(4.0, 300.0e6, 0.2).unwrap();
    let e = compare_with_mie(&problem, &problem.solve().unwrap()).unwrap();
    assert!(e.field.rms < 0.05, "rms {}", e.field.rms);
    assert!(e.rcs_l2 < 0.1, "rcs {}", e.rcs_l2);
}

/// Interior points of `solution` on a 0.05 m grid.
fn interior_points(solution: &dsa2d::Solution, radius: f64) -> Vec<Point> {
    GridSpec::square(Point::ORIGIN, 2.0, 0.05)
        .points()
        .into_iter()
        .filter(|p| p.norm() < radius && solution.classify(*p).0 == Region::Interior)
        .collect()
}

#[test]
fn green_identity_reproduces_a_source_free_field() {
    let problem = cylinder_problem(1.0, 300.0e6, 0.025).unwrap();
    let mut solution = problem.solve().unwrap();
    let (e, h) = incident_boundary_fields(&problem.scatterers[0].contour, &problem.wave, &Medium::VACUUM);
    solution.objects[0].e = e;
    solution.objects[0].h_t = h;
    // four segment lengths clear of the boundary
    let points = interior_points(&solution, 0.9);
    let inside = solution.interior_field(&points).unwrap();
    let incident: Vec<Complex64> = points.iter().map(|p| problem.wave.field_at(&Medium::VACUUM, *p)).collect();
    assert!(rel_max(&inside, &incident) < 1e-3, "{}", rel_max(&inside, &incident));
}

#[test]
fn null_contrast_interior_error_shrinks_with_mesh() {
    let mut errors = Vec::new();
    for mesh in [0.1, 0.05, 0.025] {
        let problem = cylinder_problem(1.0, 300.0e6, mesh).unwrap();
        let solution = problem.solve().unwrap();
        assert!(solution.all_currents().norm() == 0.0);
        let points = interior_points(&solution, 1.0);
        let inside = solution.interior_field(&points).unwrap();
        let incident: Vec<Complex64> = points.iter().map(|p| problem.wave.field_at(&Medium::VACUUM, *p)).collect();
        errors.push(rel_max(&inside, &incident));
    }
    assert!(errors.windows(2).all(|w| w[1] < 0.6 * w[0]), "{errors:?}");
}

#[test]
fn scattered_field_approaches_far_pattern() {
    let problem = cylinder_problem(4.0, 300.0e6, 0.1).unwrap();
    let solution = problem.solve().unwrap();
    let k0 = solution.k0().re;
    let wavelength = 2.0 * std::f64::consts::PI / k0;
    // sqrt(rho) exp(i k0 rho) E_s = F + O(1/rho); one Richardson step removes the O(1/rho) term
    let normalized = |phi: f64, rho: f64| {
        let p = Point::new(rho * phi.cos(), rho * phi.sin());
        solution.radiated_field(&[p]).unwrap()[0] * Complex64::new(0.0, k0 * rho).exp() * rho.sqrt()
    };
    for phi in [0.0, 0.7, 2.0, 3.1] {
        let rho = 200.0 * wavelength;
        let extrapolated = normalized(phi, 2.0 * rho) * 2.0 - normalized(phi, rho);
        let far = solution.far_field(&[phi])[0];
        assert!((extrapolated - far).norm() < 1e-3 * far.norm(), "phi {phi}: {extrapolated} vs {far}");
    }
}

#[test]
fn square_is_mirror_symmetric_for_axis_incidence() {
    let wave = PlaneWave::new(1.0, 0.0, 300.0e6).unwrap();
    let solution = square(0.1, 4.0, wave).solve().unwrap();
    let angles = uniform_angles(72);
    let pattern = solution.far_field(&angles);
    let n = angles.len();
    for i in 1..n {
        let (a, b) = (pattern[i].norm(), pattern[n - i].norm());
        assert!((a - b).abs() <= 1e-10 * a.max(b), "angle {} {a} {b}", angles[i]);
    }
    let upper: Vec<Point> = GridSpec::square(Point::ORIGIN, 2.0, 0.1).points();
    let lower: Vec<Point> = upper.iter().map(|p| p.mirror_y()).collect();
    let a = solution.total_field(&upper).unwrap();
    let b = solution.total_field(&lower).unwrap();
    assert_eq!(a.mask(), b.mask());
    let keep = |g: &dsa2d::FieldGrid| -> Vec<Complex64> {
        g.values.iter().zip(g.mask()).filter(|(_, m)| !m).map(|(v, _)| *v).collect()
    };
    assert!(rel_max(&keep(&a), &keep(&b)) < 1e-8);
}

#[test]
fn square_reciprocity_defect_shrinks_with_mesh() {
    let (a, b) = (-0.17, 1.4);
    let mut defects = Vec::new();
    for mesh in [0.1, 0.05, 0.025] {
        let at = |angle: f64, phi: f64| {
            square(mesh, 4.0, PlaneWave::new(1.0, angle, 300.0e6).unwrap())
                .solve()
                .unwrap()
                .far_field(&[phi])[0]
        };
        let (forward, reverse) = (at(a, b), at(b + PI, a + PI));
        defects.push((forward - reverse).norm() / forward.norm());
    }
    assert!(defects.windows(2).all(|w| w[1] < 0.6 * w[0]), "{defects:?}");
}

#[test]
fn optical_theorem_on_the_reference_cylinder() {
    let solution = cylinder_problem(4.0, 300.0e6, 0.05).unwrap().solve().unwrap();
    let scattering = dsa2d::solver::total_scattering_width(&solution.rcs(&uniform_angles(360)));
    let extinction = solution.extinction_width();
    assert!((scattering - extinction).abs() <= 0.02 * extinction);
}

#[test]
fn combined_and_field_only_rows_agree_off_resonance() {
    let problem = cylinder_problem(4.0, 300.0e6, 0.1).unwrap();
    let ops = problem.operator_sets().unwrap();
    let reference = problem.solve_with(&ops).unwrap().all_currents();
    for alpha in [0.2, 0.8, 1.0] {
        let other = problem
            .clone()
            .with_config(CfieConfig::with_alpha(alpha))
            .solve_with(&ops)
            .unwrap()
            .all_currents();
        let gap = (&other - &reference).norm() / reference.norm();
        assert!(gap < 0.05, "alpha {alpha}: {gap}");
    }
}

#[test]
fn fields_scale_with_amplitude() {
    let base = cylinder_problem(2.0, 200.0e6, 0.1).unwrap();
    let mut doubled = base.clone();
    doubled.wave.amplitude = 2.0;
    let ops = base.operator_sets().unwrap();
    let a = base.solve_with(&ops).unwrap();
    let b = doubled.solve_with(&ops).unwrap();
    let (ea, eb) = (&a.objects[0].e, &b.objects[0].e);
    assert!((eb - ea * Complex64::new(2.0, 0.0)).norm() <= 1e-12 * eb.norm());
    let (ra, rb) = (a.rcs(&[0.3]).sigma[0], b.rcs(&[0.3]).sigma[0]);
    assert!((ra - rb).abs() <= 1e-12 * ra);
}

#[test]
fn overlapping_scatterers_are_rejected() {
    let mut problem = cylinder_problem(4.0, 300.0e6, 0.2).unwrap();
    let mut other = problem.scatterers[0].clone();
    other.contour = Contour::circle(Point::new(1.5, 0.0), 1.0, 0.2).unwrap();
    problem.scatterers.push(other);
    assert!(matches!(problem.solve(), Err(Error::Geometry(_))));
}

#[test]
fn grid_regions_and_mask() {
    let solution = cylinder_problem(4.0, 300.0e6, 0.2).unwrap().solve().unwrap();
    let points = [Point::ORIGIN, Point::new(1.0, 0.0), Point::new(1.9, 0.0)];
    let grid = solution.total_field(&points).unwrap();
    assert_eq!(grid.regions, vec![Region::Interior, Region::NearBoundary, Region::Exterior]);
    assert_eq!(grid.mask(), vec![false, true, false]);
    assert!(grid.values.iter().all(|v| v.re.is_finite() && v.im.is_finite()));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn null_contrast_for_any_circle_and_wave(
        radius in 0.3f64..1.5,
        frequency in 30.0e6f64..300.0e6,
        angle in -3.1f64..3.1,
        x in -2.0f64..2.0,
    ) {
        let contour = Contour::circle(Point::new(x, 0.5), radius, 0.15).unwrap();
        let wave = PlaneWave::new(1.0, angle, frequency).unwrap();
        let problem = ScatteringProblem::single(contour, Medium::VACUUM, Medium::VACUUM, wave);
        let ops = problem.operator_sets().unwrap();
        prop_assert!(ops[0].y_s.norm() <= 1e-12 * ops[0].y.norm());
        let solution = problem.solve_with(&ops).unwrap();
        prop_assert!(solution.all_currents().norm() <= 1e-10);
        prop_assert!(solution.rcs(&[0.0, 1.0]).sigma.iter().all(|s| *s <= 1e-20));
    }

    #[test]
    fn scattering_width_is_translation_invariant(dx in -3.0f64..3.0, dy in -3.0f64..3.0) {
        let wave = PlaneWave::new(1.0, 0.4, 150.0e6).unwrap();
        let at = |c: Point| {
            ScatteringProblem::single(
                Contour::circle(c, 0.6, 0.15).unwrap(),
                Medium::dielectric(3.0).unwrap(),
                Medium::VACUUM,
                wave,
            )
            .solve()
            .unwrap()
            .rcs(&uniform_angles(24))
            .sigma
        };
        let (a, b) = (at(Point::ORIGIN), at(Point::new(dx, dy)));
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() <= 1e-8 * x.max(*y));
        }
    }

    #[test]
    fn far_field_is_reciprocal_on_uniform_circles(
        incidence in -3.1f64..3.1,
        observation in -3.1f64..3.1,
        eps_r in 1.5f64..8.0,
        cx in -1.0f64..1.0,
    ) {
        // a uniform chord mesh gives circulant operators, so discrete reciprocity is exact
        let solve = |angle: f64, at: f64| {
            ScatteringProblem::single(
                Contour::circle(Point::new(cx, 0.3), 0.7, 0.1).unwrap(),
                Medium::dielectric(eps_r).unwrap(),
                Medium::VACUUM,
                PlaneWave::new(1.0, angle, 300.0e6).unwrap(),
            )
            .solve()
            .unwrap()
            .far_field(&[at])[0]
        };
        // incoming along a, observed along b  <->  incoming along -b, observed along -a
        let forward = solve(incidence, observation);
        let reverse = solve(observation + PI, incidence + PI);
        prop_assert!((forward - reverse).norm() <= 1e-10 * forward.norm().max(reverse.norm()),
            "{forward} vs {reverse}");
    }

    #[test]
    fn lossy_objects_absorb(sigma in 1e-3f64..0.1, eps_r in 1.5f64..6.0) {
        let medium = Medium::new(eps_r, 1.0, sigma).unwrap();
        let wave = PlaneWave::new(1.0, 0.0, 150.0e6).unwrap();
        let problem = ScatteringProblem::single(
            Contour::circle(Point::ORIGIN, 0.8, 0.1).unwrap(),
            medium,
            Medium::VACUUM,
            wave,
        );
        let solution = problem.solve().unwrap();
        let scattering = dsa2d::solver::total_scattering_width(&solution.rcs(&uniform_angles(360)));
        let extinction = solution.extinction_width();
        prop_assert!(extinction - scattering > -0.02 * extinction, "{extinction} vs {scattering}");
    }
}
