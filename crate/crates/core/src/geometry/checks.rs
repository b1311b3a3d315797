//! Admissibility, winding, mutation-pair and isotopy tests for planar paths.

use num_complex::Complex64;
use serde::Serialize;

use super::lambda::integrate_lambda_n;
use super::path::{Piece, PlanarPath, JOIN_TOL};
use super::GeometryContext;
use crate::error::{Error, Result};

const SAMPLES_PER_PIECE: usize = 256;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdmissibilityReport {
    pub ok: bool,
    pub violations: Vec<String>,
}

fn is_real_piece(p: &Piece, tol: f64) -> bool {
    match *p {
        Piece::Line { from, to } => from.im.abs() <= tol && to.im.abs() <= tol,
        Piece::Arc { .. } => false,
    }
}

/// Checks the three clauses of an admissible path γ : (−t, t) → ℂ*: identity
/// outside (−eps, eps), middle portion inside the disc of radius t − eps, and
/// nothing below the real axis.
pub fn is_admissible(path: &PlanarPath, t: f64, eps: f64, ctx: &GeometryContext) -> AdmissibilityReport {
    let tol = ctx.tol;
    let mut violations = Vec::new();
    if !(0.0 < eps && eps < t) {
        violations.push(format!("requires 0 < eps < t, got eps = {eps}, t = {t}"));
        return AdmissibilityReport { ok: false, violations };
    }
    let start = path.start();
    let end = path.end();
    if (start - Complex64::new(-t, 0.0)).norm() > tol || (end - Complex64::new(t, 0.0)).norm() > tol {
        violations.push(format!(
            "path must run from -t to t on the real axis, runs from {start} to {end}"
        ));
    }

    let pieces = path.pieces();
    let lead = pieces.iter().take_while(|p| is_real_piece(p, tol)).count();
    let trail = if lead == pieces.len() {
        0
    } else {
        pieces.iter().rev().take_while(|p| is_real_piece(p, tol)).count()
    };
    let increasing = |p: &Piece| match *p {
        Piece::Line { from, to } => to.re > from.re,
        Piece::Arc { .. } => false,
    };
    let runs_ok = pieces[..lead].iter().chain(&pieces[pieces.len() - trail..]).all(increasing);
    if !runs_ok {
        violations.push("real portion does not run monotonically left to right, so gamma(x) = x fails".into());
    }
    if lead < pieces.len() {
        let departure = pieces[lead].start();
        let arrival = pieces[pieces.len() - trail - 1].end();
        if departure.re < -eps - tol || departure.im.abs() > tol {
            violations.push(format!(
                "gamma(x) = x fails on (-t, -eps): path leaves the real axis at {departure}"
            ));
        }
        if arrival.re > eps + tol || arrival.im.abs() > tol {
            violations.push(format!(
                "gamma(x) = x fails on (eps, t): path rejoins the real axis at {arrival}"
            ));
        }
        let middle = &pieces[lead..pieces.len() - trail];
        let radius = t - eps;
        let widest = middle.iter().map(Piece::max_modulus).fold(0.0, f64::max);
        if widest > radius + tol {
            violations.push(format!(
                "middle portion leaves the disc of radius t - eps = {radius}: reaches modulus {widest}"
            ));
        }
    }
    let lowest = pieces
        .iter()
        .flat_map(|p| (0..=SAMPLES_PER_PIECE).map(move |k| p.point(k as f64 / SAMPLES_PER_PIECE as f64)))
        .min_by(|a, b| a.im.total_cmp(&b.im))
        .expect("path has points");
    if lowest.im < -tol {
        violations.push(format!("path leaves the upper half plane at {lowest}"));
    }
    AdmissibilityReport {
        ok: violations.is_empty(),
        violations,
    }
}

fn piece_turning(p: &Piece, about: Complex64, s0: f64, s1: f64, depth: u32) -> f64 {
    let a = p.point(s0) - about;
    let b = p.point(s1) - about;
    let step = (b / a).arg();
    if step.abs() < 0.25 || depth > 40 {
        return step;
    }
    let mid = 0.5 * (s0 + s1);
    piece_turning(p, about, s0, mid, depth + 1) + piece_turning(p, about, mid, s1, depth + 1)
}

/// Winding number of a closed path about a point, from summed argument increments.
pub fn winding_number(path: &PlanarPath, about: Complex64) -> Result<i64> {
    if !path.is_closed() {
        return Err(Error::Structural("winding number needs a closed path".into()));
    }
    if path.pieces().iter().any(|p| p.distance_to(about) <= JOIN_TOL) {
        return Err(Error::Domain(format!("path passes through {about}")));
    }
    let mut total = 0.0;
    for p in path.pieces() {
        let steps = 64;
        for k in 0..steps {
            let s0 = k as f64 / steps as f64;
            let s1 = (k + 1) as f64 / steps as f64;
            total += piece_turning(p, about, s0, s1, 0);
        }
    }
    Ok((total / (2.0 * std::f64::consts::PI)).round() as i64)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MutationPairReport {
    pub ok: bool,
    /// Winding about 0 of the glued loop c ∪ c′.
    pub winding: i64,
    /// ∫_{c′} λₙ − ∫_c λₙ with c′ running from the end of c back to its start.
    pub area_defect: f64,
    /// ∫_c λₙ − ∫_{c′} λₙ with c′ run in the same direction as c.
    pub same_direction_defect: f64,
    pub tangents_agree: bool,
    pub integral_c: f64,
    pub integral_c_prime: f64,
}

/// Tests conditions (1), (2), (4) and the splice-tangent proxy for (3).
/// `c_prime` may be given in either direction; it is oriented to close the loop.
pub fn is_valid_mutation_pair(
    c: &PlanarPath,
    c_prime: &PlanarPath,
    ctx: &GeometryContext,
) -> Result<MutationPairReport> {
    if c.is_closed() || c_prime.is_closed() {
        return Err(Error::Structural("mutation pair paths must be open".into()));
    }
    let near = |a: Complex64, b: Complex64| (a - b).norm() <= ctx.tol;
    let closing = if near(c_prime.start(), c.end()) && near(c_prime.end(), c.start()) {
        c_prime.clone()
    } else if near(c_prime.start(), c.start()) && near(c_prime.end(), c.end()) {
        c_prime.reversed()
    } else {
        return Err(Error::Structural(format!(
            "endpoints differ: c runs {} -> {}, c' runs {} -> {}",
            c.start(),
            c.end(),
            c_prime.start(),
            c_prime.end()
        )));
    };
    let glued = c.concat(&closing)?;
    let glued = if glued.is_closed() {
        glued
    } else {
        PlanarPath::new(glued.segments().to_vec(), true)?
    };
    let winding = winding_number(&glued, Complex64::new(0.0, 0.0))?;
    let integral_c = integrate_lambda_n(c, ctx)?;
    let integral_c_prime = integrate_lambda_n(&closing, ctx)?;
    let area_defect = integral_c_prime - integral_c;
    let tangents_agree = (c.end_tangent() - closing.start_tangent()).norm() <= ctx.tol
        && (closing.end_tangent() - c.start_tangent()).norm() <= ctx.tol;
    Ok(MutationPairReport {
        ok: winding.abs() == 1 && area_defect.abs() < ctx.tol && tangents_agree,
        winding,
        area_defect,
        same_direction_defect: integral_c + integral_c_prime,
        tangents_agree,
        integral_c,
        integral_c_prime,
    })
}

/// Endpoints, end tangents and λₙ-integrals agree within tolerance.
pub fn hamiltonian_isotopy_test(g0: &PlanarPath, g1: &PlanarPath, ctx: &GeometryContext) -> Result<bool> {
    let tol = ctx.tol;
    let ends = (g0.start() - g1.start()).norm() <= tol && (g0.end() - g1.end()).norm() <= tol;
    let tangents = (g0.start_tangent() - g1.start_tangent()).norm() <= tol
        && (g0.end_tangent() - g1.end_tangent()).norm() <= tol;
    if !(ends && tangents) {
        return Ok(false);
    }
    let a = integrate_lambda_n(g0, ctx)?;
    let b = integrate_lambda_n(g1, ctx)?;
    Ok((a - b).abs() <= tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn ctx() -> GeometryContext {
        GeometryContext::new(2, 1e-9).unwrap()
    }

    #[test]
    fn winding_examples() {
        let o = c(0.0, 0.0);
        assert_eq!(winding_number(&PlanarPath::circle(o, 1.0, true).unwrap(), o).unwrap(), 1);
        assert_eq!(winding_number(&PlanarPath::circle(o, 1.0, false).unwrap(), o).unwrap(), -1);
        assert_eq!(winding_number(&PlanarPath::circle(c(5.0, 0.0), 1.0, true).unwrap(), o).unwrap(), 0);
        let open = PlanarPath::line(c(1.0, 0.0), c(2.0, 0.0)).unwrap();
        assert!(matches!(winding_number(&open, o), Err(Error::Structural(_))));
    }

    #[test]
    fn bump_is_admissible_and_dip_is_not() {
        let bump = PlanarPath::polyline(vec![
            c(-1.0, 0.0),
            c(-0.35, 0.0),
            c(-0.25, 0.2),
            c(0.25, 0.2),
            c(0.35, 0.0),
            c(1.0, 0.0),
        ])
        .unwrap();
        let report = is_admissible(&bump, 1.0, 0.6, &ctx());
        assert!(report.ok, "{:?}", report.violations);
        let dip = PlanarPath::polyline(vec![c(-1.0, 0.0), c(-0.3, 0.0), c(0.0, -0.1), c(0.3, 0.0), c(1.0, 0.0)])
            .unwrap();
        let report = is_admissible(&dip, 1.0, 0.6, &ctx());
        assert!(!report.ok);
        assert!(report.violations.iter().any(|v| v.contains("upper half plane")));
    }

    #[test]
    fn semicircles_form_a_mutation_pair() {
        let upper = PlanarPath::arc(c(0.0, 0.0), 1.0, 0.0, PI).unwrap();
        let lower = PlanarPath::arc(c(0.0, 0.0), 1.0, PI, 2.0 * PI).unwrap();
        let r = is_valid_mutation_pair(&upper, &lower, &ctx()).unwrap();
        assert!(r.ok, "{r:?}");
        assert_eq!(r.winding.abs(), 1);
        assert!(r.area_defect.abs() < 1e-9);
        let same = is_valid_mutation_pair(&upper, &upper, &ctx()).unwrap();
        assert_eq!(same.winding, 0);
        assert!(!same.ok);
    }

    #[test]
    fn isotopy_needs_equal_integrals() {
        let g0 = PlanarPath::arc(c(0.0, 0.0), 1.0, 0.0, PI).unwrap();
        assert!(hamiltonian_isotopy_test(&g0, &g0, &ctx()).unwrap());
        let g1 = PlanarPath::arc(c(0.0, 0.0), 1.0, 0.0, PI + 0.2).unwrap();
        assert!(!hamiltonian_isotopy_test(&g0, &g1, &ctx()).unwrap());
    }
}
