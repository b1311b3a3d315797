//! Helpers and numerical oracles shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use lagmut::elementary::{evaluate_section, product, ElementarySection};
use lagmut::geometry::PlanarPath;
use num_complex::Complex64;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn all_sections(n: u32, eps: f64, theta: &[f64]) -> Vec<ElementarySection> {
    let mut out = vec![ElementarySection::upper(n, eps, theta.to_vec()).unwrap()];
    for k in 1..=n {
        out.push(ElementarySection::lower(n, eps, k, theta.to_vec()).unwrap());
    }
    out
}

/// −1 → −a → bump of height `height` → a → 1, a polyline through the upper half plane.
pub fn bump(a: f64, height: f64) -> PlanarPath {
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

/// Maslov index and weighted intersection with ∞ of the linear projection
/// z_1⋯z_n of a section, read off numerically from its boundary values.
///
/// The half-plane above the line Im = c is parametrised from the unit disc by
/// w ↦ ic + i(1 + w)/(1 − w). μ is twice the winding of the projection about the
/// interior point ic + i, measured through a Möbius map; w counts boundary
/// passes through ∞, spotted as local maxima of |z_1⋯z_n| above a threshold.
pub fn projection_data(s: &ElementarySection) -> (i64, u64) {
    let line = s.boundary_line();
    let centre = c(0.0, line + 1.0);
    let mirror = c(0.0, line - 1.0);
    let m = 4000;
    let mut turning = 0.0;
    let mut prev: Option<Complex64> = None;
    let mut first: Option<Complex64> = None;
    let mut moduli = Vec::with_capacity(m);
    for j in 1..m {
        let t = 2.0 * PI * j as f64 / m as f64;
        let w = Complex64::from_polar(1.0, t);
        let z = c(0.0, line) + Complex64::i() * (1.0 + w) / (1.0 - w);
        let z = c(z.re, line);
        let u = evaluate_section(s, z).unwrap();
        let p = product(&u);
        moduli.push(p.norm());
        let phi = (p - centre) / (p - mirror);
        if let Some(q) = prev {
            turning += (phi / q).arg();
        } else {
            first = Some(phi);
        }
        prev = Some(phi);
    }
    // Close the loop across w = 1, where φ → 1.
    turning += (c(1.0, 0.0) / prev.unwrap()).arg() + (first.unwrap() / c(1.0, 0.0)).arg();
    let winding = (turning / (2.0 * PI)).round() as i64;
    let threshold = 100.0;
    let len = moduli.len();
    // The ends of the sample list sit next to w = 1 from either side.
    let mut passes = 0;
    if moduli[0] > threshold && moduli[len - 1] > threshold {
        passes += 1;
    }
    for i in 1..len - 1 {
        if moduli[i] > threshold && moduli[i] >= moduli[i - 1] && moduli[i] >= moduli[i + 1] {
            passes += 1;
        }
    }
    (2 * winding, passes)
}
