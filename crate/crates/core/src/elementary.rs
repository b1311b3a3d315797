//! The elementary holomorphic sections of π_m(z) = z_1⋯z_n over the half-planes
//! ℍ ± iε, their numerical verification, and Reeb-chord combinatorics.
//!
//! Over ℍ + iε every finite-energy section is θ.(z^{1/n}, …, z^{1/n}). Over ℍ − iε
//! there are n families, the k-th replacing coordinate k by z/(z+2iε)·(z+2iε)^{1/n}
//! and every other coordinate by (z+2iε)^{1/n}.
//!
//! Convention: θ = 0 corresponds to the Reeb chord through (1, …, 1)/√n.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::{disc_index, single_puncture_index, IndexData};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// Sections over ℍ + iε with boundary on ℝ + iε.
    Upper,
    /// Sections over ℍ − iε with boundary on ℝ − iε.
    Lower,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ElementarySection {
    pub n: u32,
    pub eps: f64,
    pub side: Side,
    /// Which coordinate vanishes at 0; ignored on the upper side.
    #[serde(default = "one")]
    pub k: u32,
    pub theta: Vec<f64>,
}

fn one() -> u32 {
    1
}

impl ElementarySection {
    pub fn upper(n: u32, eps: f64, theta: Vec<f64>) -> Result<Self> {
        let s = ElementarySection { n, eps, side: Side::Upper, k: 1, theta };
        s.validate()?;
        Ok(s)
    }

    pub fn lower(n: u32, eps: f64, k: u32, theta: Vec<f64>) -> Result<Self> {
        let s = ElementarySection { n, eps, side: Side::Lower, k, theta };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::Domain(format!("n must be at least 2, got {}", self.n)));
        }
        if !(self.eps > 0.0 && self.eps.is_finite()) {
            return Err(Error::Domain(format!("eps must be positive, got {}", self.eps)));
        }
        if self.side == Side::Lower && !(1..=self.n).contains(&self.k) {
            return Err(Error::Domain(format!("k must lie in [1, {}], got {}", self.n, self.k)));
        }
        if self.theta.len() + 1 != self.n as usize {
            return Err(Error::Structural(format!(
                "theta needs {} entries for n = {}, got {}",
                self.n - 1,
                self.n,
                self.theta.len()
            )));
        }
        if self.theta.iter().any(|t| !t.is_finite()) {
            return Err(Error::Domain("theta entries must be finite".into()));
        }
        Ok(())
    }

    /// Imaginary part of the boundary line ℝ ± iε.
    pub fn boundary_line(&self) -> f64 {
        match self.side {
            Side::Upper => self.eps,
            Side::Lower => -self.eps,
        }
    }

    /// The argument of the n-th root: z on the upper side, z + 2iε on the lower.
    fn root_argument(&self, z: Complex64) -> Complex64 {
        match self.side {
            Side::Upper => z,
            Side::Lower => z + Complex64::new(0.0, 2.0 * self.eps),
        }
    }

    pub fn in_domain(&self, z: Complex64) -> bool {
        z.is_finite() && z.im >= self.boundary_line()
    }
}

/// w^{1/n} with arg w in (−π/2, 3π/2], cut along the closed negative imaginary axis.
pub fn nth_root(w: Complex64, n: u32) -> Result<Complex64> {
    if w.re == 0.0 && w.im <= 0.0 {
        return Err(Error::Branch(format!("{w} lies on the cut of the {n}-th root")));
    }
    let mut arg = w.arg();
    if arg <= -PI / 2.0 {
        arg += 2.0 * PI;
    }
    Ok(Complex64::from_polar(w.norm().powf(1.0 / n as f64), arg / n as f64))
}

/// Distance from w to the cut {Re w = 0, Im w ≤ 0}.
fn distance_to_cut(w: Complex64) -> f64 {
    if w.im <= 0.0 {
        w.re.abs()
    } else {
        w.norm()
    }
}

/// θ.(z_1, …, z_n) = (e^{iθ_1}z_1, …, e^{iθ_{n−1}}z_{n−1}, e^{−iΣθ}z_n).
pub fn phase_action(theta: &[f64], z: &[Complex64]) -> Result<Vec<Complex64>> {
    if theta.len() + 1 != z.len() {
        return Err(Error::Structural(format!(
            "phase action of T^{} on C^{}",
            theta.len(),
            z.len()
        )));
    }
    let total: f64 = theta.iter().sum();
    Ok(z.iter()
        .enumerate()
        .map(|(j, w)| {
            let phase = if j < theta.len() { theta[j] } else { -total };
            Complex64::from_polar(1.0, phase) * w
        })
        .collect())
}

/// The formula alone, with no domain check. Defined wherever the root is.
pub fn evaluate_formula(s: &ElementarySection, z: Complex64) -> Result<Vec<Complex64>> {
    s.validate()?;
    let n = s.n as usize;
    let w = s.root_argument(z);
    let r = nth_root(w, s.n)?;
    let mut coords = vec![r; n];
    if s.side == Side::Lower {
        coords[s.k as usize - 1] = z / w * r;
    }
    phase_action(&s.theta, &coords)
}

/// The section at z, which must lie in the closed half-plane Im z ≥ ±ε.
pub fn evaluate_section(s: &ElementarySection, z: Complex64) -> Result<Vec<Complex64>> {
    s.validate()?;
    if !s.in_domain(z) {
        return Err(Error::Domain(format!(
            "{z} is outside the half-plane Im z >= {}",
            s.boundary_line()
        )));
    }
    evaluate_formula(s, z)
}

/// ξ = e^{iπ/n}, so π_m(ξu) = −π_m(u).
pub fn xi(n: u32) -> Complex64 {
    Complex64::from_polar(1.0, PI / n as f64)
}

/// The section over the opposite half-plane −(ℍ ± iε): z ↦ ξ·s(−z).
pub fn reflected_section(s: &ElementarySection, z: Complex64) -> Result<Vec<Complex64>> {
    let xi = xi(s.n);
    Ok(evaluate_section(s, -z)?.into_iter().map(|w| xi * w).collect())
}

pub fn product(z: &[Complex64]) -> Complex64 {
    z.iter().fold(Complex64::new(1.0, 0.0), |acc, w| acc * w)
}

/// A rectangle of sample points and the finite-difference step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
    pub nx: usize,
    pub ny: usize,
    pub h: f64,
}

impl GridSpec {
    /// 50×50 points over Re ∈ [−2, 2], Im ∈ [line + 0.5, line + 2.5].
    pub fn default_for(s: &ElementarySection, h: f64) -> Self {
        let line = s.boundary_line();
        GridSpec {
            re_min: -2.0,
            re_max: 2.0,
            im_min: line + 0.5,
            im_max: line + 2.5,
            nx: 50,
            ny: 50,
            h,
        }
    }

    pub fn points(&self) -> Vec<Complex64> {
        let step = |lo: f64, hi: f64, m: usize, i: usize| {
            if m <= 1 {
                lo
            } else {
                lo + (hi - lo) * i as f64 / (m - 1) as f64
            }
        };
        let mut out = Vec::with_capacity(self.nx * self.ny);
        for i in 0..self.nx {
            for j in 0..self.ny {
                out.push(Complex64::new(
                    step(self.re_min, self.re_max, self.nx, i),
                    step(self.im_min, self.im_max, self.ny, j),
                ));
            }
        }
        out
    }

    fn validate(&self) -> Result<()> {
        let finite = [self.re_min, self.re_max, self.im_min, self.im_max, self.h]
            .iter()
            .all(|v| v.is_finite());
        if !finite || self.h <= 0.0 || self.nx == 0 || self.ny == 0 {
            return Err(Error::Domain("grid needs finite bounds, h > 0 and at least one point".into()));
        }
        if self.re_min > self.re_max || self.im_min > self.im_max {
            return Err(Error::Domain("grid bounds are reversed".into()));
        }
        Ok(())
    }
}

/// max |∂u/∂x + i ∂u/∂y| over grid points and coordinates of any vector-valued map,
/// by central differences with step `grid.h`.
pub fn cr_residual_of<F>(f: F, grid: &GridSpec) -> Result<f64>
where
    F: Fn(Complex64) -> Result<Vec<Complex64>>,
{
    grid.validate()?;
    let h = grid.h;
    let dx = Complex64::new(h, 0.0);
    let dy = Complex64::new(0.0, h);
    let mut worst: f64 = 0.0;
    for z in grid.points() {
        let (xp, xm, yp, ym) = (f(z + dx)?, f(z - dx)?, f(z + dy)?, f(z - dy)?);
        for j in 0..xp.len() {
            let ux = (xp[j] - xm[j]) / (2.0 * h);
            let uy = (yp[j] - ym[j]) / (2.0 * h);
            worst = worst.max((ux + Complex64::i() * uy).norm());
        }
    }
    Ok(worst)
}

/// Cauchy–Riemann residual of a section on a grid kept at least 2h from the cut.
pub fn cr_residual(s: &ElementarySection, grid: &GridSpec) -> Result<f64> {
    s.validate()?;
    grid.validate()?;
    if let Some(z) = grid
        .points()
        .into_iter()
        .find(|&z| distance_to_cut(s.root_argument(z)) < 2.0 * grid.h)
    {
        return Err(Error::Branch(format!("grid point {z} is within 2h of the branch cut")));
    }
    cr_residual_of(|z| evaluate_formula(s, z), grid)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SectionSamples {
    pub interior: Vec<Complex64>,
    pub boundary: Vec<Complex64>,
}

impl SectionSamples {
    /// `count` uniform points in [−R, R] × [line, line + R] and `count` on the line,
    /// R = 5.
    pub fn random(s: &ElementarySection, count: usize, seed: u64) -> Self {
        const R: f64 = 5.0;
        let line = s.boundary_line();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let interior = (0..count)
            .map(|_| Complex64::new(rng.gen_range(-R..R), line + rng.gen_range(0.0..R)))
            .collect();
        let boundary = (0..count).map(|_| Complex64::new(rng.gen_range(-R..R), line)).collect();
        SectionSamples { interior, boundary }
    }
}

pub const SECTION_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SectionReport {
    /// max |π_m(s(z)) − z| over interior samples.
    pub identity_residual: f64,
    /// max over boundary samples of max_j |z_j| − min_j |z_j|.
    pub modulus_spread: f64,
    pub valid: bool,
}

pub fn verify_section_properties(s: &ElementarySection, samples: &SectionSamples) -> Result<SectionReport> {
    let mut identity_residual: f64 = 0.0;
    for &z in &samples.interior {
        identity_residual = identity_residual.max((product(&evaluate_section(s, z)?) - z).norm());
    }
    let mut modulus_spread: f64 = 0.0;
    for &z in &samples.boundary {
        let u = evaluate_section(s, z)?;
        let (lo, hi) = u
            .iter()
            .map(|w| w.norm())
            .fold((f64::INFINITY, 0.0f64), |(lo, hi), m| (lo.min(m), hi.max(m)));
        modulus_spread = modulus_spread.max(hi - lo);
    }
    Ok(SectionReport {
        identity_residual,
        modulus_spread,
        valid: identity_residual < SECTION_TOL && modulus_spread < SECTION_TOL,
    })
}

/// Elementary disc counts with a minimal chord; mutation swaps 1 and n.
pub fn elementary_count(side: Side, mutated: bool, n: u32) -> Result<u64> {
    if n < 2 {
        return Err(Error::Domain(format!("n must be at least 2, got {n}")));
    }
    let upper_has_one = (side == Side::Upper) != mutated;
    Ok(if upper_has_one { 1 } else { n as u64 })
}

/// Rotating every coordinate by lπ/n multiplies the product by (−1)^l.
pub fn reeb_endpoint_sign(start: Sign, l: u32) -> Result<Sign> {
    if l == 0 {
        return Err(Error::Domain("chord multiplicity must be positive".into()));
    }
    Ok(if l % 2 == 0 { start } else { start.flip() })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReebChord {
    pub multiplicity: u32,
    pub start_sign: Sign,
    pub start_angles: Vec<f64>,
}

impl ReebChord {
    pub fn new(multiplicity: u32, start_sign: Sign, start_angles: Vec<f64>) -> Result<Self> {
        if multiplicity == 0 {
            return Err(Error::Domain("chord multiplicity must be positive".into()));
        }
        Ok(ReebChord {
            multiplicity,
            start_sign,
            start_angles,
        })
    }

    pub fn n(&self) -> u32 {
        self.start_angles.len() as u32 + 1
    }

    /// Length lπ/n of the chord.
    pub fn length(&self) -> f64 {
        self.multiplicity as f64 * PI / self.n() as f64
    }

    /// θ.(ρ, …, ρ)/√n with ρ = 1 on T_+ and ρ = e^{iπ/n} on T_−.
    pub fn start_point(&self) -> Vec<Complex64> {
        let n = self.n();
        let rho = match self.start_sign {
            Sign::Plus => Complex64::new(1.0, 0.0),
            Sign::Minus => xi(n),
        };
        let base = vec![rho / (n as f64).sqrt(); n as usize];
        phase_action(&self.start_angles, &base).expect("angles match n by construction")
    }

    /// The start point flowed by the diagonal rotation e^{ilπ/n}.
    pub fn end_point(&self) -> Vec<Complex64> {
        let rot = Complex64::from_polar(1.0, self.length());
        self.start_point().into_iter().map(|w| rot * w).collect()
    }

    pub fn end_sign(&self) -> Sign {
        reeb_endpoint_sign(self.start_sign, self.multiplicity).expect("multiplicity is positive")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IndexWitness {
    pub maslov: i64,
    pub weighted_infinity: u64,
    pub index: i64,
}

/// (μ, w) = (2, 1) for every elementary section; the index is checked against the
/// single-puncture formula with k = 1.
pub fn elementary_index_witness(n: u32) -> Result<IndexWitness> {
    let data = IndexData::new(n, 2, 1, vec![])?;
    let index = disc_index(&data);
    let expected = single_puncture_index(n, 1)?;
    if index != expected {
        return Err(Error::Inconsistent(format!(
            "disc index {index} disagrees with single-puncture index {expected}"
        )));
    }
    Ok(IndexWitness {
        maslov: data.maslov,
        weighted_infinity: data.weighted_infinity,
        index,
    })
}
