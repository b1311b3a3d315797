//! Points of torus segments T_γ = {|z_1| = … = |z_n|, z_1⋯z_n ∈ γ} and numerical
//! symplectic checks on them.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::path::PlanarPath;
use super::quadrature::integrate;
use super::GeometryContext;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct TorusPoint {
    pub base: Complex64,
    pub angles: Vec<f64>,
}

impl TorusPoint {
    pub fn new(base: Complex64, angles: Vec<f64>) -> Result<Self> {
        if base.norm() == 0.0 || !base.is_finite() {
            return Err(Error::Domain("torus point base must be a nonzero finite number".into()));
        }
        Ok(TorusPoint { base, angles })
    }
}

/// The point with all moduli |base|^{1/n}, phases θ_j for j < n and arg(base) − Σθ last.
pub fn torus_point_coordinates(p: &TorusPoint, ctx: &GeometryContext) -> Result<Vec<Complex64>> {
    let n = ctx.n as usize;
    if p.angles.len() + 1 != n {
        return Err(Error::Structural(format!(
            "expected {} fiber angles for n = {n}, got {}",
            n - 1,
            p.angles.len()
        )));
    }
    if p.base.norm() == 0.0 {
        return Err(Error::Domain("base must be nonzero".into()));
    }
    Ok(coordinates(p.base, &p.angles, n))
}

fn coordinates(base: Complex64, angles: &[f64], n: usize) -> Vec<Complex64> {
    let modulus = base.norm().powf(1.0 / n as f64);
    let mut z: Vec<Complex64> = angles.iter().map(|&a| Complex64::from_polar(modulus, a)).collect();
    z.push(Complex64::from_polar(modulus, base.arg() - angles.iter().sum::<f64>()));
    z
}

/// ω₀(u, v) = Σ_j Im(conj(u_j)·v_j), the standard form Σ dx_j ∧ dy_j.
pub fn omega0(u: &[Complex64], v: &[Complex64]) -> f64 {
    u.iter().zip(v).map(|(a, b)| (a.conj() * b).im).sum()
}

fn central_difference(plus: &[Complex64], minus: &[Complex64], h: f64) -> Vec<Complex64> {
    plus.iter().zip(minus).map(|(a, b)| (a - b) / (2.0 * h)).collect()
}

/// Largest |ω₀| over pairs of the central-difference tangent frame of T_γ at the
/// point over global parameter `t` with fiber `angles`.
pub fn lagrangian_residual(
    path: &PlanarPath,
    t: f64,
    angles: &[f64],
    h: f64,
    ctx: &GeometryContext,
) -> Result<f64> {
    let n = ctx.n as usize;
    if angles.len() + 1 != n {
        return Err(Error::Structural(format!("expected {} fiber angles", n - 1)));
    }
    if !(h > 0.0) {
        return Err(Error::Domain("finite-difference step must be positive".into()));
    }
    let m = path.piece_count();
    if !(0.0..=m as f64).contains(&t) {
        return Err(Error::Domain(format!("parameter {t} outside [0, {m}]")));
    }
    // Differentiate inside one piece; its formula extends smoothly past the ends.
    let i = (t.floor() as usize).min(m - 1);
    let piece = path.pieces()[i];
    let s = t - i as f64;
    let base = piece.point(s);
    if base.norm() == 0.0 {
        return Err(Error::Singularity("point over the origin".into()));
    }
    let mut frame = Vec::with_capacity(n);
    frame.push(central_difference(
        &coordinates(piece.point(s + h), angles, n),
        &coordinates(piece.point(s - h), angles, n),
        h,
    ));
    for j in 0..n - 1 {
        let mut up = angles.to_vec();
        let mut down = angles.to_vec();
        up[j] += h;
        down[j] -= h;
        frame.push(central_difference(
            &coordinates(base, &up, n),
            &coordinates(base, &down, n),
            h,
        ));
    }
    Ok(pair_maximum(&frame, 0))
}

/// Residual of the fiber directions alone at a fixed base.
pub fn fiber_residual(p: &TorusPoint, h: f64, ctx: &GeometryContext) -> Result<f64> {
    let n = ctx.n as usize;
    torus_point_coordinates(p, ctx)?;
    let frame: Vec<Vec<Complex64>> = (0..n - 1)
        .map(|j| {
            let mut up = p.angles.clone();
            let mut down = p.angles.clone();
            up[j] += h;
            down[j] -= h;
            central_difference(&coordinates(p.base, &up, n), &coordinates(p.base, &down, n), h)
        })
        .collect();
    Ok(pair_maximum(&frame, 0))
}

fn pair_maximum(frame: &[Vec<Complex64>], from: usize) -> f64 {
    let mut worst: f64 = 0.0;
    for a in from..frame.len() {
        for b in a + 1..frame.len() {
            worst = worst.max(omega0(&frame[a], &frame[b]).abs());
        }
    }
    worst
}

/// ∫ λ₀ with λ₀ = Σ ½(x dy − y dx) along the j-th standard fiber loop through `p`.
pub fn standard_loop_action(p: &TorusPoint, j: usize, ctx: &GeometryContext) -> Result<f64> {
    let n = ctx.n as usize;
    torus_point_coordinates(p, ctx)?;
    if j + 1 >= n {
        return Err(Error::Structural(format!("loop index {j} out of range for n = {n}")));
    }
    let f = |theta: f64| {
        let mut angles = p.angles.clone();
        angles[j] += theta;
        let z = coordinates(p.base, &angles, n);
        // Along the loop dz_j = i z_j dθ and dz_n = −i z_n dθ.
        let mut dz = vec![Complex64::new(0.0, 0.0); n];
        dz[j] = Complex64::i() * z[j];
        dz[n - 1] = -Complex64::i() * z[n - 1];
        0.5 * omega0(&z, &dz)
    };
    integrate(&f, 0.0, 2.0 * PI, ctx.tol)
}
