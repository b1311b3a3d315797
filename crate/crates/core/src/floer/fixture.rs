//! Deterministic test complexes that satisfy ∂² = (W_L − W_K)·Id.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::complex::{FloerComplex, HolonomyAssignment, StripDatum};
use super::verify_d_squared;
use crate::algebra::scalar::{from_int, gaussian, rational};
use crate::algebra::{LaurentPolynomial, MutationRule, Scalar};
use crate::error::{Error, Result};

const MAX_ATTEMPTS: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FixtureFamily {
    /// Equal constant potentials; strips only from degree 0 to degree 1, so ∂² = 0.
    Graded,
    /// Independent potentials; pairs of generators with ∂ = [[0, 1], [W_L − W_K, 0]].
    Koszul,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureSpec {
    pub generators: usize,
    pub rank_l: usize,
    pub rank_k: usize,
    pub family: FixtureFamily,
}

impl FixtureSpec {
    pub fn graded(generators: usize, rank_l: usize, rank_k: usize) -> Self {
        FixtureSpec { generators, rank_l, rank_k, family: FixtureFamily::Graded }
    }

    pub fn koszul(generators: usize, rank_l: usize, rank_k: usize) -> Self {
        FixtureSpec { generators, rank_l, rank_k, family: FixtureFamily::Koszul }
    }

    pub fn l_variables(&self) -> Vec<String> {
        (1..=self.rank_l).map(|i| format!("z{i}")).collect()
    }

    pub fn k_variables(&self) -> Vec<String> {
        (1..=self.rank_k).map(|i| format!("w{i}")).collect()
    }
}

fn nonzero(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    let v = rng.gen_range(1..=bound);
    if rng.gen_bool(0.5) {
        v
    } else {
        -v
    }
}

fn small_vec(rng: &mut ChaCha8Rng, len: usize) -> Vec<i32> {
    (0..len).map(|_| rng.gen_range(-1..=1)).collect()
}

fn labels(m: usize) -> Vec<String> {
    (1..=m).map(|i| format!("p{i}")).collect()
}

fn draw_graded(seed: u64, spec: &FixtureSpec, rng: &mut ChaCha8Rng) -> Result<FloerComplex> {
    let lv = spec.l_variables();
    let kv = spec.k_variables();
    let gens = labels(spec.generators);
    // Seed 0 with two generators is the minimal triangular complex.
    if seed == 0 && spec.generators == 2 {
        let strip = StripDatum {
            from: gens[0].clone(),
            to: gens[1].clone(),
            count: 1,
            class_l: vec![0; spec.rank_l],
            class_k: vec![0; spec.rank_k],
        };
        return FloerComplex::new(gens, vec![strip], LaurentPolynomial::zero(&lv), LaurentPolynomial::zero(&kv));
    }
    let constant = if seed == 0 { 0 } else { nonzero(rng, 5) };
    let mut strips = Vec::new();
    if spec.generators >= 2 {
        let split = rng.gen_range(1..spec.generators);
        for p in &gens[..split] {
            for q in &gens[split..] {
                if !rng.gen_bool(0.7) {
                    continue;
                }
                for _ in 0..rng.gen_range(1..=2) {
                    strips.push(StripDatum {
                        from: p.clone(),
                        to: q.clone(),
                        count: nonzero(rng, 3),
                        class_l: small_vec(rng, spec.rank_l),
                        class_k: small_vec(rng, spec.rank_k),
                    });
                }
            }
        }
    }
    FloerComplex::new(
        gens,
        strips,
        LaurentPolynomial::constant(&lv, from_int(constant)),
        LaurentPolynomial::constant(&kv, from_int(constant)),
    )
}

fn random_potential(rng: &mut ChaCha8Rng, vars: &[String]) -> Result<LaurentPolynomial> {
    let terms: Vec<(Vec<i32>, Scalar)> = (0..rng.gen_range(1..=3))
        .map(|_| (small_vec(rng, vars.len()), from_int(nonzero(rng, 3))))
        .collect();
    LaurentPolynomial::from_terms(vars, terms)
}

fn draw_koszul(spec: &FixtureSpec, rng: &mut ChaCha8Rng) -> Result<FloerComplex> {
    if spec.generators % 2 != 0 {
        return Err(Error::Generation("the koszul family needs an even number of generators".into()));
    }
    let wl = random_potential(rng, &spec.l_variables())?;
    let wk = random_potential(rng, &spec.k_variables())?;
    let gens = labels(spec.generators);
    let mut strips = Vec::new();
    for pair in gens.chunks(2) {
        let (p, q) = (&pair[0], &pair[1]);
        strips.push(StripDatum {
            from: q.clone(),
            to: p.clone(),
            count: 1,
            class_l: vec![0; spec.rank_l],
            class_k: vec![0; spec.rank_k],
        });
        // Entry (q, p) is W_L − W_K, one strip per monomial.
        for (e, c) in wl.terms() {
            strips.push(StripDatum {
                from: p.clone(),
                to: q.clone(),
                count: integer(c)?,
                class_l: e.iter().map(|x| -x).collect(),
                class_k: vec![0; spec.rank_k],
            });
        }
        for (e, c) in wk.terms() {
            strips.push(StripDatum {
                from: p.clone(),
                to: q.clone(),
                count: -integer(c)?,
                class_l: vec![0; spec.rank_l],
                class_k: e.clone(),
            });
        }
    }
    FloerComplex::new(gens, strips, wl, wk)
}

fn integer(c: &Scalar) -> Result<i64> {
    use num_traits::ToPrimitive;
    if c.im != rational(0, 1) || !c.re.is_integer() {
        return Err(Error::Generation(format!("coefficient {c} is not an integer")));
    }
    c.re.to_integer().to_i64().ok_or_else(|| Error::Generation("coefficient overflow".into()))
}

/// Draws from `spec.family` with a ChaCha stream seeded by `seed` and accepts the
/// first complex whose ∂² identity holds symbolically.
pub fn build_consistent_fixture(seed: u64, spec: &FixtureSpec) -> Result<FloerComplex> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let c = match spec.family {
            FixtureFamily::Graded => draw_graded(seed, spec, &mut rng)?,
            FixtureFamily::Koszul => draw_koszul(spec, &mut rng)?,
        };
        if verify_d_squared(&c)?.ok {
            return Ok(c);
        }
    }
    Err(Error::Generation(format!("no consistent complex after {MAX_ATTEMPTS} draws")))
}

fn small_gaussian(rng: &mut ChaCha8Rng) -> Scalar {
    loop {
        let re = rational(rng.gen_range(-6..=6), rng.gen_range(1..=4));
        let im = rational(rng.gen_range(-6..=6), rng.gen_range(1..=4));
        let v = gaussian(re, im);
        if v != from_int(0) {
            return v;
        }
    }
}

/// Random nonzero Gaussian rationals for `variables`. With a rule, points where the
/// wall factor 1 + Σ fiber values vanishes are redrawn.
pub fn random_assignment(
    variables: &[String],
    seed: u64,
    rule: Option<&MutationRule>,
) -> Result<HolonomyAssignment> {
    if let Some(v) = rule.and_then(|r| r.variables().iter().find(|v| !variables.contains(v))) {
        return Err(Error::Structural(format!("rule variable {v} is not being assigned")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let values: BTreeMap<String, Scalar> =
            variables.iter().map(|v| (v.clone(), small_gaussian(&mut rng))).collect();
        if let Some(rule) = rule {
            let wall = rule
                .fiber_indices()
                .iter()
                .map(|&i| values[&rule.variables()[i]].clone())
                .fold(from_int(1), |acc, x| acc + x);
            if wall == from_int(0) {
                continue;
            }
        }
        return HolonomyAssignment::new(values);
    }
}
