//! Acceptance checks against the Mie series and physical invariants.
//!
//! Each check returns a [`CriterionReport`] instead of panicking, so the same
//! suite backs the `acceptance` test target and `dsa2d validate`.

use crate::geometry::{Contour, Point};
use crate::medium::{Medium, SPEED_OF_LIGHT};
use crate::operators::QuadratureRule;
use crate::oracle::{first_bessel_zero, MieSolution};
use crate::solver::{
    assemble_k, assemble_k_y_hat, assemble_l, error_metrics, rcs_relative_l2, total_scattering_width, uniform_angles,
    CfieConfig, ErrorMetrics, ExteriorOperators, ExteriorRepresentation, GridSpec, PlaneWave, ScatteringProblem,
    Scatterer, Solution,
};
use crate::specfun::{self, reference, seams};
use crate::{Complex64, Result};
use rayon::prelude::*;
use std::f64::consts::PI;
use std::time::{Duration, Instant};

/// Frequency of the reference cylinder scenarios.
pub const REFERENCE_FREQUENCY: f64 = 300.0e6;
/// Default observation grid: 4 m square at 0.04 m spacing.
pub const GRID_EXTENT: f64 = 4.0;
pub const GRID_SPACING: f64 = 0.04;
/// Angles of the bistatic scattering-width curves.
pub const RCS_ANGLES: usize = 360;

#[derive(Debug, Clone, PartialEq)]
pub struct CriterionReport {
    pub id: u32,
    pub title: &'static str,
    pub passed: bool,
    /// Measured values, one per line; informational lines are prefixed `info:`.
    pub details: Vec<String>,
}

impl CriterionReport {
    fn new(id: u32, title: &'static str) -> Self {
        Self {
            id,
            title,
            passed: true,
            details: Vec::new(),
        }
    }

    /// Records a bounded quantity and folds it into the verdict.
    fn check(&mut self, ok: bool, line: String) {
        self.passed &= ok;
        let tag = if ok { "ok" } else { "VIOLATED" };
        self.details.push(format!("{line} [{tag}]"));
    }

    fn info(&mut self, line: String) {
        self.details.push(format!("info: {line}"));
    }

    fn fail_with(mut self, err: &crate::Error) -> Self {
        self.passed = false;
        self.details.push(format!("error: {err}"));
        self
    }

    /// One-line summary `C<id> PASS|FAIL title`.
    pub fn headline(&self) -> String {
        format!(
            "C{} {} {}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.title
        )
    }
}

fn finish(report: CriterionReport, run: impl FnOnce(&mut CriterionReport) -> Result<()>) -> CriterionReport {
    let mut report = report;
    match run(&mut report) {
        Ok(()) => report,
        Err(e) => report.fail_with(&e),
    }
}

/// Field and scattering-width errors of one cylinder solve against Mie.
#[derive(Debug, Clone, Copy)]
pub struct CylinderErrors {
    pub field: ErrorMetrics,
    pub rcs_l2: f64,
    pub unknowns: usize,
    pub condition: f64,
}

/// Unit-amplitude x-directed plane wave.
pub fn reference_wave(frequency: f64) -> Result<PlaneWave> {
    PlaneWave::new(1.0, 0.0, frequency)
}

/// Centered unit-radius dielectric cylinder in vacuum.
pub fn cylinder_problem(eps_r: f64, frequency: f64, mesh: f64) -> Result<ScatteringProblem> {
    let contour = Contour::circle(Point::ORIGIN, 1.0, mesh)?;
    Ok(ScatteringProblem::single(
        contour,
        Medium::dielectric(eps_r)?,
        Medium::VACUUM,
        reference_wave(frequency)?,
    ))
}

/// Compares a solved centered unit cylinder with its Mie series on the
/// default grid (near-boundary band masked) and over the full circle of
/// scattering angles.
pub fn compare_with_mie(problem: &ScatteringProblem, solution: &Solution) -> Result<CylinderErrors> {
    let scatterer = &problem.scatterers[0];
    let mie = MieSolution::centered(1.0, scatterer.medium, problem.background, problem.wave)?;
    let points = GridSpec::square(Point::ORIGIN, GRID_EXTENT, GRID_SPACING).points();
    let grid = solution.total_field(&points)?;
    let reference = points.par_iter().map(|&p| mie.field(p)).collect::<Result<Vec<_>>>()?;
    let field = error_metrics(&reference, &grid.values, &grid.mask())?;
    let angles = uniform_angles(RCS_ANGLES);
    let rcs_l2 = rcs_relative_l2(&mie.scattering_width(&angles).sigma, &solution.rcs(&angles).sigma)?;
    Ok(CylinderErrors {
        field,
        rcs_l2,
        unknowns: solution.diagnostics.unknowns,
        condition: solution.diagnostics.condition_system,
    })
}

pub fn cylinder_errors(problem: &ScatteringProblem) -> Result<CylinderErrors> {
    let solution = problem.solve()?;
    compare_with_mie(problem, &solution)
}

fn single_threaded<T: Send>(run: impl FnOnce() -> T + Send) -> T {
    match rayon::ThreadPoolBuilder::new().num_threads(1).build() {
        Ok(pool) => pool.install(run),
        Err(_) => run(),
    }
}

/// Cylinder accuracy: max relative total-field error at mesh 0.1 m.
pub fn cylinder_accuracy() -> CriterionReport {
    finish(CriterionReport::new(1, "cylinder accuracy vs Mie (eps_r 4, 300 MHz, mesh 0.1 m)"), |r| {
        let problem = cylinder_problem(4.0, REFERENCE_FREQUENCY, 0.1)?;
        let points = GridSpec::square(Point::ORIGIN, GRID_EXTENT, GRID_SPACING).points();
        let start = Instant::now();
        let (solution, grid) = single_threaded(|| -> Result<_> {
            let solution = problem.solve()?;
            let grid = solution.total_field(&points)?;
            Ok((solution, grid))
        })?;
        let elapsed = start.elapsed();
        let e = compare_with_mie(&problem, &solution)?;
        debug_assert_eq!(grid.len(), points.len());
        r.check(e.field.max_rel <= 0.05, format!("max_rel {:.4e} <= 5e-2", e.field.max_rel));
        r.check(
            elapsed < Duration::from_secs(5),
            format!(
                "single-threaded solve + grid ({} unknowns, {} points) {:.2} s < 5 s",
                e.unknowns,
                points.len(),
                elapsed.as_secs_f64()
            ),
        );
        r.info(format!("rms {:.4e}, rcs L2 {:.4e}", e.field.rms, e.rcs_l2));
        Ok(())
    })
}

/// Mesh refinement: strictly decreasing RMS error, at most 2% on the finest mesh.
pub fn mesh_refinement() -> CriterionReport {
    finish(CriterionReport::new(2, "mesh refinement {0.2, 0.1, 0.05} m"), |r| {
        let meshes = [0.2, 0.1, 0.05];
        let mut rms = Vec::new();
        for mesh in meshes {
            let e = cylinder_errors(&cylinder_problem(4.0, REFERENCE_FREQUENCY, mesh)?)?;
            r.info(format!("mesh {mesh} m: N {}, rms {:.4e}", e.unknowns, e.field.rms));
            rms.push(e.field.rms);
        }
        let decreasing = rms.windows(2).all(|w| w[1] < w[0]);
        r.check(decreasing, format!("rms strictly decreasing [{}]", sci(&rms)));
        r.check(rms[2] <= 0.02, format!("rms at 0.05 m {:.4e} <= 2e-2", rms[2]));
        Ok(())
    })
}

/// Permittivity stability over eps_r in {1.1, 2, 4, 8, 15}.
pub fn permittivity_stability() -> CriterionReport {
    finish(CriterionReport::new(3, "permittivity sweep 1.1..15 (mesh 0.05 m)"), |r| {
        let eps = [1.1, 2.0, 4.0, 8.0, 15.0];
        let mut rms = Vec::new();
        for &eps_r in &eps {
            let e = cylinder_errors(&cylinder_problem(eps_r, REFERENCE_FREQUENCY, 0.05)?)?;
            let finite = e.field.rms.is_finite() && e.rcs_l2.is_finite();
            let bound = if eps_r <= 4.0 { 0.03 } else if eps_r >= 15.0 { 0.10 } else { f64::INFINITY };
            let ok = finite && e.field.rms <= bound;
            if bound.is_finite() {
                r.check(ok, format!("eps_r {eps_r}: rms {:.4e} <= {bound:.0e}", e.field.rms));
            } else {
                r.check(finite, format!("eps_r {eps_r}: rms {:.4e} finite", e.field.rms));
            }
            rms.push(e.field.rms);
        }
        let (first, last) = (rms[0], rms[rms.len() - 1]);
        r.check(first < last, format!("rms(1.1) {first:.4e} < rms(15) {last:.4e}"));
        Ok(())
    })
}

/// Ten log-spaced frequencies in [lo, hi].
pub fn log_frequencies(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64))
        .collect()
}

/// Wideband scattering width against Mie, 15 to 150 MHz.
pub fn wideband_rcs() -> CriterionReport {
    finish(CriterionReport::new(4, "wideband scattering width 15..150 MHz (mesh 0.05 m)"), |r| {
        let angles = uniform_angles(RCS_ANGLES);
        for f in log_frequencies(15.0e6, 150.0e6, 10) {
            let problem = cylinder_problem(4.0, f, 0.05)?;
            let solution = problem.solve()?;
            let mie = MieSolution::centered(1.0, problem.scatterers[0].medium, Medium::VACUUM, problem.wave)?;
            let l2 = rcs_relative_l2(&mie.scattering_width(&angles).sigma, &solution.rcs(&angles).sigma)?;
            r.check(l2 <= 0.05, format!("{:.3} MHz: rcs L2 {l2:.4e} <= 5e-2", f / 1e6));
        }
        Ok(())
    })
}

/// Null contrast: the equivalent current and its field vanish.
pub fn null_contrast() -> CriterionReport {
    finish(CriterionReport::new(5, "null contrast (object = background)"), |r| {
        let problem = cylinder_problem(1.0, REFERENCE_FREQUENCY, 0.1)?;
        let ops = problem.operator_sets()?;
        let ratio = ops[0].y_s.norm() / ops[0].y.norm();
        r.check(ratio <= 1e-12, format!("|Y_s|_F / |Y|_F {ratio:.3e} <= 1e-12"));
        let solution = problem.solve_with(&ops)?;
        let points = GridSpec::square(Point::ORIGIN, GRID_EXTENT, GRID_SPACING).points();
        let scattered = solution.equivalent_current_field(&points)?;
        let peak = scattered.iter().map(|v| v.norm()).fold(0.0, f64::max);
        let bound = 1e-10 * problem.wave.amplitude;
        r.check(
            peak <= bound,
            format!("max |E_s| over {} points {peak:.3e} <= {bound:.0e}", points.len()),
        );
        Ok(())
    })
}

/// Frequency at which the unit cylinder sits on the first zero of `J0(k0 R)`.
pub fn resonant_frequency() -> Result<f64> {
    Ok(first_bessel_zero()? * SPEED_OF_LIGHT / (2.0 * PI))
}

/// Internal-resonance robustness at `k0 R = j01`.
pub fn resonance_robustness() -> CriterionReport {
    finish(CriterionReport::new(6, "internal resonance k0 R = j01 (alpha 0.5, mesh 0.1 m)"), |r| {
        let f = resonant_frequency()?;
        let scales = [0.95, 1.0, 1.05];
        let rms_at = |config: CfieConfig, representation: ExteriorRepresentation| -> Result<Vec<f64>> {
            scales
                .iter()
                .map(|s| {
                    let problem = cylinder_problem(4.0, f * s, 0.1)?
                        .with_config(config)
                        .with_representation(representation);
                    Ok(cylinder_errors(&problem)?.field.rms)
                })
                .collect()
        };
        let combined = rms_at(CfieConfig::default(), ExteriorRepresentation::default())?;
        let neighbours = combined[0].max(combined[2]);
        r.check(
            combined[1] <= 2.0 * neighbours,
            format!(
                "rms at f {:.4e} <= 2 x max(rms 0.95f {:.4e}, rms 1.05f {:.4e})",
                combined[1], combined[0], combined[2]
            ),
        );
        let efie = rms_at(CfieConfig::with_alpha(1.0), ExteriorRepresentation::default())?;
        r.info(format!(
            "alpha 1.0: rms 0.95f {:.4e}, f {:.4e}, 1.05f {:.4e}",
            efie[0], efie[1], efie[2]
        ));
        let green = rms_at(CfieConfig::default(), ExteriorRepresentation::Green)?;
        r.info(format!(
            "alpha 0.5, Green representation: rms 0.95f {:.4e}, f {:.4e}, 1.05f {:.4e}",
            green[0], green[1], green[2]
        ));
        Ok(())
    })
}

fn square_problem(mesh: f64) -> Result<ScatteringProblem> {
    let contour = Contour::rectangle(Point::ORIGIN, 1.0, 1.0, mesh)?;
    Ok(ScatteringProblem::single(
        contour,
        Medium::dielectric(4.0)?,
        Medium::VACUUM,
        reference_wave(REFERENCE_FREQUENCY)?,
    ))
}

/// Largest `|s(phi) - s(-phi)| / max(s(phi), s(-phi))` on a uniform full-circle curve.
pub fn mirror_asymmetry(sigma: &[f64]) -> f64 {
    let n = sigma.len();
    (1..n)
        .map(|i| {
            let (a, b) = (sigma[i], sigma[n - i]);
            let scale = a.abs().max(b.abs());
            if scale == 0.0 {
                0.0
            } else {
                (a - b).abs() / scale
            }
        })
        .fold(0.0, f64::max)
}

/// Square cylinder: symmetry, self-convergence and optical theorem.
pub fn cuboid() -> CriterionReport {
    finish(CriterionReport::new(7, "square cylinder (side 1 m, eps_r 4, 300 MHz)"), |r| {
        let coarse_problem = square_problem(0.05)?;
        let fine_problem = square_problem(0.025)?;
        let coarse = coarse_problem.solve()?;
        let fine = fine_problem.solve()?;

        let angles = uniform_angles(RCS_ANGLES);
        let curve = coarse.rcs(&angles);
        let asym = mirror_asymmetry(&curve.sigma);
        r.check(asym <= 1e-6, format!("sigma(phi) vs sigma(-phi) {asym:.3e} <= 1e-6"));

        let points = GridSpec::square(Point::ORIGIN, GRID_EXTENT, GRID_SPACING).points();
        let grid_coarse = coarse.total_field(&points)?;
        let grid_fine = fine.total_field(&points)?;
        // near-boundary masks agree: the geometry is the same square
        let diff = error_metrics(&grid_fine.values, &grid_coarse.values, &grid_fine.mask())?;
        r.check(
            diff.rms <= 0.03,
            format!("rms difference mesh 0.05 vs 0.025 {:.4e} <= 3e-2", diff.rms),
        );

        let scattering = total_scattering_width(&curve);
        let extinction = coarse.extinction_width();
        let gap = (scattering - extinction).abs() / extinction.abs();
        r.check(
            gap <= 0.02,
            format!("scattering {scattering:.6e} m vs extinction {extinction:.6e} m: {gap:.3e} <= 2e-2"),
        );
        Ok(())
    })
}

fn sci(values: &[f64]) -> String {
    values.iter().map(|v| format!("{v:.4e}")).collect::<Vec<_>>().join(", ")
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    log_frequencies(lo, hi, n)
}

/// Special functions: reference values, Wronskian, recurrence and branch seams.
pub fn special_functions() -> CriterionReport {
    finish(CriterionReport::new(8, "special functions"), |r| {
        let start = Instant::now();
        let c = |re: f64, im: f64| Complex64::new(re, im);

        let mut worst = 0.0f64;
        for &(n, x, want) in reference::J_REAL {
            worst = worst.max(((specfun::bessel_j(n, c(x, 0.0))?.re - want) / want).abs());
        }
        for &(n, x, want) in reference::Y_REAL {
            worst = worst.max(((specfun::bessel_y(n, x)? - want) / want).abs());
        }
        r.check(worst <= 1e-10, format!("real J, Y spot values {worst:.3e} <= 1e-10"));

        let mut worst = 0.0f64;
        for &(n, (zr, zi), (wr, wi)) in reference::J_COMPLEX {
            worst = worst.max(rel(specfun::bessel_j(n, c(zr, zi))?, c(wr, wi)));
        }
        for &(n, (zr, zi), (wr, wi)) in reference::H2_COMPLEX {
            worst = worst.max(rel(specfun::hankel2(n, c(zr, zi))?, c(wr, wi)));
        }
        r.check(worst <= 1e-8, format!("complex J, H2 spot values {worst:.3e} <= 1e-8"));

        let mut worst = 0.0f64;
        let mut xs = log_grid(1e-3, 100.0, 20);
        xs.extend([0.5, 3.0, 20.0]);
        for x in xs {
            let js = specfun::bessel_j_orders(7, x)?;
            let ys = specfun::bessel_y_orders(7, x)?;
            for n in [0usize, 5] {
                let w = js[n + 1] * ys[n] - js[n] * ys[n + 1];
                let want = 2.0 / (PI * x);
                worst = worst.max(((w - want) / want).abs());
            }
        }
        r.check(worst <= 1e-10, format!("Wronskian {worst:.3e} <= 1e-10"));

        let mut worst = 0.0f64;
        for x in log_grid(1e-2, 100.0, 25) {
            let js = specfun::bessel_j_orders(40, x)?;
            // high orders overflow Y at small x; the check covers what exists
            let ys = specfun::bessel_y_orders(40, x).unwrap_or_default();
            for n in 1..40usize {
                let factor = 2.0 * n as f64 / x;
                if js[n].abs() > 1e-280 {
                    let scale = js[n - 1].abs().max(js[n + 1].abs()).max((factor * js[n]).abs());
                    worst = worst.max((js[n - 1] + js[n + 1] - factor * js[n]).abs() / scale);
                }
                if let (Some(a), Some(b), Some(m)) = (ys.get(n - 1), ys.get(n + 1), ys.get(n)) {
                    if m.abs() > 1e-280 && b.is_finite() {
                        let scale = a.abs().max(b.abs()).max((factor * m).abs());
                        worst = worst.max((a + b - factor * m).abs() / scale);
                    }
                }
            }
        }
        r.check(worst <= 1e-9, format!("three-term recurrence {worst:.3e} <= 1e-9"));

        let mut worst = 0.0f64;
        for angle in [0.0, -0.1, -0.3, 0.2] {
            let z = Complex64::from_polar(specfun::SWITCH_RADIUS, angle);
            let a = seams::recurrence_jy01(z);
            let b = seams::asymptotic(z);
            for (x, y) in [(a.0, b.0), (a.1, b.1), (a.2, b.2), (a.3, b.3)] {
                worst = worst.max(rel(x, y));
            }
        }
        for re in [0.5, 4.0, 12.0, 19.0] {
            let z = c(re, specfun::DAMPED_IM);
            let (a0, a1) = seams::integral_h(z);
            let (b0, b1) = seams::difference_h(z);
            worst = worst.max(rel(a0, b0)).max(rel(a1, b1));
        }
        r.check(worst <= 1e-8, format!("branch seams {worst:.3e} <= 1e-8"));

        let elapsed = start.elapsed();
        r.check(
            elapsed < Duration::from_secs(1),
            format!("runtime {:.3} s < 1 s", elapsed.as_secs_f64()),
        );
        Ok(())
    })
}

/// Edge-to-edge gaps of the two-cylinder study, in background wavelengths.
pub const TWO_CYLINDER_GAPS: [f64; 3] = [2.0, 5.0, 10.0];

/// Two unit cylinders centred at `(0, +-(1 + gap / 2))`.
pub fn two_cylinder_problem(gap: f64, mesh: f64) -> Result<ScatteringProblem> {
    let offset = 1.0 + 0.5 * gap;
    let medium = Medium::dielectric(4.0)?;
    let scatterers = [offset, -offset]
        .into_iter()
        .map(|y| {
            Ok(Scatterer {
                contour: Contour::circle(Point::new(0.0, y), 1.0, mesh)?,
                medium,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut problem = cylinder_problem(4.0, REFERENCE_FREQUENCY, mesh)?;
    problem.scatterers = scatterers;
    Ok(problem)
}

/// Largest relative mismatch between each segment's current and the current
/// on its mirror image in the other object.
fn mirror_current_mismatch(solution: &Solution) -> f64 {
    let (upper, lower) = (&solution.objects[0], &solution.objects[1]);
    let scale = upper.j_s.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let mut worst = 0.0f64;
    for (i, seg) in upper.contour.segments().iter().enumerate() {
        let image = seg.midpoint.mirror_y();
        let (j, _) = lower
            .contour
            .segments()
            .iter()
            .enumerate()
            .map(|(j, s)| (j, s.midpoint.distance(image)))
            .fold((0, f64::INFINITY), |a, b| if b.1 < a.1 { b } else { a });
        worst = worst.max((upper.j_s[i] - lower.j_s[j]).norm() / scale);
    }
    worst
}

/// Largest `|E(x, y) - E(x, -y)|` relative to the peak total field, over a
/// grid around the upper object and its image.
fn mirror_field_mismatch(solution: &Solution, upper_centre: Point) -> Result<f64> {
    let upper = GridSpec::square(upper_centre, 3.0, 0.25).points();
    let lower: Vec<Point> = upper.iter().map(|p| p.mirror_y()).collect();
    let a = solution.total_field(&upper)?;
    let b = solution.total_field(&lower)?;
    let scale = a.values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    Ok(a.values
        .iter()
        .zip(&b.values)
        .map(|(x, y)| (x - y).norm() / scale)
        .fold(0.0, f64::max))
}

/// Multi-object sanity: weak-coupling trend, mirror symmetry and the
/// single-object degenerate case.
pub fn multi_object() -> CriterionReport {
    finish(CriterionReport::new(9, "multi-object coupling and degenerate equality"), |r| {
        let mesh = 0.1;
        let wavelength = SPEED_OF_LIGHT / REFERENCE_FREQUENCY;
        let mut deviations = Vec::new();
        for gap in TWO_CYLINDER_GAPS {
            let problem = two_cylinder_problem(gap * wavelength, mesh)?;
            let pair = problem.solve()?;
            let mut deviation = 0.0f64;
            for (object, scatterer) in pair.objects.iter().zip(&problem.scatterers) {
                let mut alone = problem.clone();
                alone.scatterers = vec![scatterer.clone()];
                let isolated = alone.solve()?;
                let reference = &isolated.objects[0].j_s;
                deviation = deviation.max((&object.j_s - reference).norm() / reference.norm());
            }
            let mirror = mirror_current_mismatch(&pair).max(mirror_field_mismatch(&pair, problem.scatterers[0].contour.centroid())?);
            r.check(
                mirror <= 1e-8,
                format!("gap {gap} wavelengths: mirror current and field mismatch {mirror:.3e} <= 1e-8"),
            );
            r.info(format!("gap {gap} wavelengths: |J_s - J_isolated| / |J_isolated| {deviation:.4e}"));
            // first-order coupling estimate: the isolated scattered field arriving at the partner
            let isolated = MieSolution::centered(1.0, problem.scatterers[0].medium, problem.background, problem.wave)?;
            let arriving = isolated.scattered_field(Point::new(0.0, 2.0 + gap * wavelength))?.norm() / problem.wave.amplitude;
            r.info(format!("gap {gap} wavelengths: isolated |E_s| / E0 at partner centre {arriving:.4e}"));
            deviations.push(deviation);
        }
        let trend = deviations.windows(2).all(|w| w[1] < w[0]);
        r.check(trend, format!("coupling deviation decreasing with gap [{}]", sci(&deviations)));
        let last = deviations[deviations.len() - 1];
        r.check(last <= 0.05, format!("deviation at 10 wavelengths {last:.4e} <= 5e-2"));

        let problem = cylinder_problem(4.0, REFERENCE_FREQUENCY, mesh)?;
        let ops = problem.operator_sets()?;
        let contour = &problem.scatterers[0].contour;
        let omega = problem.wave.omega();
        let rule = QuadratureRule::default();
        let ext = ExteriorOperators::assemble(&[contour], &ops, &Medium::VACUUM, omega, rule)?;
        let same = ext.l == assemble_l(contour, &Medium::VACUUM, omega, rule)?
            && ext.k == assemble_k(contour, &Medium::VACUUM, omega, rule)?
            && ext.k_y_hat == assemble_k_y_hat(contour, &Medium::VACUUM, omega, rule)?;
        r.check(same, "single-object multi-path operators bitwise equal to single-object path".into());
        Ok(())
    })
}

/// Every criterion in order.
pub fn run_all() -> Vec<CriterionReport> {
    vec![
        cylinder_accuracy(),
        mesh_refinement(),
        permittivity_stability(),
        wideband_rcs(),
        null_contrast(),
        resonance_robustness(),
        cuboid(),
        special_functions(),
        multi_object(),
    ]
}
