//! Fredholm index and virtual-dimension bookkeeping.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Inputs to the index formula of a disc with boundary on a torus segment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexData {
    pub n: u32,
    pub maslov: i64,
    /// Interior intersections with ∞ count twice, boundary intersections once.
    pub weighted_infinity: u64,
    #[serde(default)]
    pub critical_touches: Vec<Vec<u32>>,
}

impl IndexData {
    pub fn new(n: u32, maslov: i64, weighted_infinity: u64, critical_touches: Vec<Vec<u32>>) -> Result<Self> {
        let d = IndexData {
            n,
            maslov,
            weighted_infinity,
            critical_touches,
        };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 1 {
            return Err(Error::Structural("n must be positive".into()));
        }
        for (i, touch) in self.critical_touches.iter().enumerate() {
            if touch.len() < 2 {
                return Err(Error::Structural(format!(
                    "touch {i} lists {} vanishing orders; a critical point has at least 2",
                    touch.len()
                )));
            }
            if touch.len() > self.n as usize {
                return Err(Error::Structural(format!(
                    "touch {i} lists {} vanishing orders, more than n = {}",
                    touch.len(),
                    self.n
                )));
            }
            if touch.iter().any(|&m| m == 0) {
                return Err(Error::Structural(format!("touch {i} has a zero vanishing order")));
            }
            if touch.windows(2).any(|w| w[0] > w[1]) {
                return Err(Error::Structural(format!("touch {i} is not sorted")));
            }
        }
        Ok(())
    }
}

/// m_c: for each touch, the sum of all vanishing orders except the largest.
pub fn critical_multiplicity(d: &IndexData) -> Result<u64> {
    d.validate()?;
    Ok(d
        .critical_touches
        .iter()
        .map(|t| t[..t.len() - 1].iter().map(|&m| m as u64).sum::<u64>())
        .sum())
}

/// n + μ − w.
pub fn disc_index(d: &IndexData) -> i64 {
    d.n as i64 + d.maslov - d.weighted_infinity as i64
}

/// Index of a disc with one puncture at a chord of length kπ/n.
pub fn single_puncture_index(n: u32, k: u32) -> Result<i64> {
    if n < 2 || k < 1 {
        return Err(Error::Domain(format!("need n >= 2 and k >= 1, got n = {n}, k = {k}")));
    }
    Ok(n as i64 + k as i64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SplitIndices {
    pub vertical: i64,
    pub horizontal: i64,
}

/// Vertical n − 1 + 2m_c and horizontal 1 + μ − w − 2m_c.
pub fn split_indices(d: &IndexData) -> Result<SplitIndices> {
    let mc = critical_multiplicity(d)? as i64;
    Ok(SplitIndices {
        vertical: d.n as i64 - 1 + 2 * mc,
        horizontal: 1 + d.maslov - d.weighted_infinity as i64 - 2 * mc,
    })
}

/// ind − |P|(n − 1) − aut.
pub fn virtual_dimension(ind: i64, punctures: u64, n: u32, aut: u64) -> i64 {
    ind - punctures as i64 * (n as i64 - 1) - aut as i64
}

/// The open interval (0, π/n) of admissible exponential weights.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeightWindow {
    pub lower: f64,
    pub upper: f64,
}

impl WeightWindow {
    pub fn contains(&self, delta: f64) -> bool {
        self.lower < delta && delta < self.upper
    }
}

pub fn sobolev_weight_window(n: u32) -> Result<WeightWindow> {
    if n < 2 {
        return Err(Error::Domain(format!("n must be at least 2, got {n}")));
    }
    Ok(WeightWindow {
        lower: 0.0,
        upper: PI / n as f64,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscClass {
    #[serde(with = "crate::algebra::scalar::rational_text")]
    pub area: BigRational,
    pub maslov: i64,
    #[serde(default)]
    pub boundary_class: Vec<i64>,
}

impl DiscClass {
    pub fn new(area: BigRational, maslov: i64) -> Self {
        DiscClass {
            area,
            maslov,
            boundary_class: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonotonicityMode {
    /// 2·area = τ·μ for strips and discs of a monotone pair.
    Pair,
    /// area = λ·μ for discs on a monotone Lagrangian.
    Lagrangian,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonotonicityReport {
    #[serde(with = "crate::algebra::scalar::opt_rational_text")]
    pub constant: Option<BigRational>,
    pub consistent: bool,
}

impl MonotonicityReport {
    fn inconsistent() -> Self {
        MonotonicityReport {
            constant: None,
            consistent: false,
        }
    }
}

/// Solves for τ or λ from the first class with nonzero Maslov index and checks the rest exactly.
pub fn monotonicity_constant(classes: &[DiscClass], mode: MonotonicityMode) -> Result<MonotonicityReport> {
    if classes.is_empty() {
        return Err(Error::Structural("no disc classes given".into()));
    }
    let weight = |c: &DiscClass| match mode {
        MonotonicityMode::Pair => &c.area * BigRational::from_integer(BigInt::from(2)),
        MonotonicityMode::Lagrangian => c.area.clone(),
    };
    let Some(first) = classes.iter().find(|c| c.maslov != 0) else {
        return Ok(MonotonicityReport::inconsistent());
    };
    let constant = weight(first) / BigRational::from_integer(BigInt::from(first.maslov));
    let holds = classes
        .iter()
        .all(|c| weight(c) == &constant * BigRational::from_integer(BigInt::from(c.maslov)));
    if !holds || !constant.is_positive() {
        return Ok(MonotonicityReport::inconsistent());
    }
    Ok(MonotonicityReport {
        constant: Some(constant),
        consistent: true,
    })
}
