//! The one-form λₙ = (x dy − y dx) / (2 (x² + y²)^{(n−1)/n}) and its path integrals.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::path::{Piece, PlanarPath};
use super::quadrature::integrate;
use super::GeometryContext;
use crate::error::{Error, Result};

/// Distance from the origin below which λₙ is treated as singular.
pub const SINGULAR_RADIUS: f64 = 1e-12;

/// λₙ evaluated on the tangent vector `dz` at `z`.
pub fn lambda_n(n: u32, z: Complex64, dz: Complex64) -> f64 {
    let r2 = z.norm_sqr();
    let exponent = (n as f64 - 1.0) / n as f64;
    (z.re * dz.im - z.im * dz.re) / (2.0 * r2.powf(exponent))
}

/// r^{2/n}·Δθ/2, the λₙ-integral over an arc of radius r centred at 0.
pub fn arc_closed_form(n: u32, radius: f64, sweep: f64) -> f64 {
    radius.powf(2.0 / n as f64) * sweep / 2.0
}

fn piece_integral(piece: &Piece, n: u32, tol: f64, upto: f64) -> Result<f64> {
    if piece.distance_to(Complex64::new(0.0, 0.0)) <= SINGULAR_RADIUS {
        return Err(Error::Singularity("path passes through the origin".into()));
    }
    let f = |s: f64| lambda_n(n, piece.point(s), piece.derivative(s));
    integrate(&f, 0.0, upto, tol)
}

/// ∫_path λₙ by adaptive Gauss–Kronrod quadrature, piece by piece.
pub fn integrate_lambda_n(path: &PlanarPath, ctx: &GeometryContext) -> Result<f64> {
    let pieces = path.pieces();
    let tol = ctx.tol / pieces.len() as f64;
    let mut parts = Vec::with_capacity(pieces.len());
    for p in pieces {
        parts.push(piece_integral(p, ctx.n, tol, 1.0)?);
    }
    Ok(pairwise_sum(&parts))
}

fn pairwise_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        len => pairwise_sum(&values[..len / 2]) + pairwise_sum(&values[len / 2..]),
    }
}

/// Cumulative λₙ-integral `f(t)` at every piece breakpoint and at each requested
/// global parameter in `samples`, sorted by parameter.
pub fn primitive_along_path(
    path: &PlanarPath,
    samples: &[f64],
    ctx: &GeometryContext,
) -> Result<Vec<(f64, f64)>> {
    let m = path.piece_count();
    for &t in samples {
        if !(0.0..=m as f64).contains(&t) {
            return Err(Error::Domain(format!("parameter {t} outside [0, {m}]")));
        }
    }
    let tol = ctx.tol / (m + samples.len()).max(1) as f64;
    let mut cumulative = vec![0.0];
    for p in path.pieces() {
        let last = *cumulative.last().expect("non-empty");
        cumulative.push(last + piece_integral(p, ctx.n, tol, 1.0)?);
    }
    let mut out: Vec<(f64, f64)> = cumulative
        .iter()
        .enumerate()
        .map(|(i, v)| (i as f64, *v))
        .collect();
    for &t in samples {
        let i = (t.floor() as usize).min(m - 1);
        let s = t - i as f64;
        let value = cumulative[i] + piece_integral(&path.pieces()[i], ctx.n, tol, s)?;
        out.push((t, value));
    }
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    out.dedup_by(|a, b| a.0 == b.0);
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AreaSign {
    Plus,
    Minus,
}

/// scale·(π/n ± delta_f).
pub fn elementary_disc_area(n: u32, delta_f: f64, sign: AreaSign, scale: f64) -> Result<f64> {
    if !(scale > 0.0) {
        return Err(Error::Domain(format!("scale must be positive, got {scale}")));
    }
    if n == 0 {
        return Err(Error::Domain("n must be positive".into()));
    }
    let signed = match sign {
        AreaSign::Plus => delta_f,
        AreaSign::Minus => -delta_f,
    };
    Ok(scale * (PI / n as f64 + signed))
}
