//! Floer complexes of a pair (L, K) with rank-one local systems.
//!
//! A strip u from p to q contributes count·x_K^{c_K(u)}·x_L^{−c_L(u)} to the (q, p)
//! entry of the coboundary. Entries live in the combined variable list, the L
//! holonomy variables first and the K variables after them.

mod complex;
mod fixture;
mod linalg;

pub use complex::{
    AssignmentJson, FloerComplex, FloerComplexJson, HolonomyAssignment, StripDatum, StripJson,
};
pub use fixture::{build_consistent_fixture, random_assignment, FixtureFamily, FixtureSpec};
pub use linalg::exact_rank;

use serde::Serialize;

use crate::algebra::{apply_mutation, apply_mutation_rational, Direction, MutationRule, RationalFunction, Scalar};
use crate::error::{Error, Result};

/// Square matrix of rational functions indexed by generators, entry [q][p].
pub type Matrix = Vec<Vec<RationalFunction>>;

/// The coboundary of a complex with its potentials embedded in the combined variables.
#[derive(Debug, Clone, PartialEq)]
pub struct CoboundaryData {
    pub generators: Vec<String>,
    pub variables: Vec<String>,
    pub matrix: Matrix,
    pub potential_l: RationalFunction,
    pub potential_k: RationalFunction,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DSquaredReport {
    pub ok: bool,
    /// M² − (W_L − W_K)·Id.
    pub defect: Matrix,
}

impl DSquaredReport {
    /// Nonzero defect entries as (row, column, value) for reporting.
    pub fn nonzero_entries(&self) -> Vec<(usize, usize, String)> {
        let mut out = Vec::new();
        for (i, row) in self.defect.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if !e.is_zero() {
                    out.push((i, j, e.to_string()));
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HfRank {
    pub rank_d: usize,
    pub hf_dim: usize,
}

pub fn coboundary_matrix(c: &FloerComplex) -> Result<Matrix> {
    Ok(c.coboundary()?.matrix)
}

fn mat_mul(a: &Matrix, b: &Matrix, zero: &RationalFunction) -> Result<Matrix> {
    let m = a.len();
    let mut out = vec![vec![zero.clone(); m]; m];
    for i in 0..m {
        for k in 0..m {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..m {
                if b[k][j].is_zero() {
                    continue;
                }
                out[i][j] = out[i][j].add(&a[i][k].mul(&b[k][j])?)?;
            }
        }
    }
    Ok(out)
}

impl CoboundaryData {
    fn zero(&self) -> RationalFunction {
        self.potential_l.sub(&self.potential_l).expect("same variables")
    }

    pub fn verify_d_squared(&self) -> Result<DSquaredReport> {
        let zero = self.zero();
        let mut defect = mat_mul(&self.matrix, &self.matrix, &zero)?;
        let shift = self.potential_l.sub(&self.potential_k)?;
        for (i, row) in defect.iter_mut().enumerate() {
            row[i] = row[i].sub(&shift)?;
        }
        let ok = defect.iter().flatten().all(RationalFunction::is_zero);
        Ok(DSquaredReport { ok, defect })
    }

    /// Rank of ∂ at a point, by exact elimination over ℚ(i).
    pub fn hf_rank(&self, assign: &HolonomyAssignment) -> Result<HfRank> {
        let point = assign.point_for(&self.variables)?;
        let values = self
            .matrix
            .iter()
            .map(|row| row.iter().map(|e| e.eval(&point)).collect::<Result<Vec<Scalar>>>())
            .collect::<Result<Vec<_>>>()?;
        let m = values.len();
        for i in 0..m {
            for j in 0..m {
                let mut acc = crate::algebra::scalar::from_int(0);
                for k in 0..m {
                    acc = acc + values[i][k].clone() * values[k][j].clone();
                }
                if acc != crate::algebra::scalar::from_int(0) {
                    return Err(Error::Inconsistent(format!(
                        "coboundary does not square to zero at the point (entry {i},{j})"
                    )));
                }
            }
        }
        let rank_d = exact_rank(values);
        Ok(HfRank {
            rank_d,
            hf_dim: m - 2 * rank_d,
        })
    }
}

pub fn verify_d_squared(c: &FloerComplex) -> Result<DSquaredReport> {
    c.coboundary()?.verify_d_squared()
}

pub fn hf_rank(c: &FloerComplex, assign: &HolonomyAssignment) -> Result<HfRank> {
    c.coboundary()?.hf_rank(assign)
}

/// Forward substitution applied to every entry and to W_L; W_K is untouched.
/// `rule` is stated over the L variables.
pub fn mutate_complex(c: &FloerComplex, rule: &MutationRule) -> Result<CoboundaryData> {
    if rule.variables() != c.potential_l.variables() {
        return Err(Error::Structural(format!(
            "rule variables {:?} are not the L block {:?}",
            rule.variables(),
            c.potential_l.variables()
        )));
    }
    let data = c.coboundary()?;
    let placement: Vec<usize> = (0..c.rank_l).collect();
    let lifted = rule.lift(&data.variables, &placement)?;
    let matrix = data
        .matrix
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| apply_mutation_rational(e, &lifted, Direction::Forward))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let wl = c.potential_l.embed(&data.variables, &placement);
    Ok(CoboundaryData {
        potential_l: apply_mutation(&wl, &lifted, Direction::Forward)?,
        matrix,
        ..data
    })
}
