//! The mutation substitution `x_n ↦ x_n (1 + x_1 + … + x_{n-1})` and its inverse.
//!
//! Applied to holonomies it turns a local system `ρ` on `L` into the local
//! system `ρ^μ` on the mutated Lagrangian; applied to potentials in the
//! inverse direction it gives `W ∘ μ^{-1}`, so that `W_μ(ρ^μ) = W(ρ)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::laurent::LaurentPolynomial;
use super::rational::RationalFunction;
use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Inverse,
}

/// Basis data of a mutation: which variable is `x_n`, which are the fiber
/// variables `x_1 … x_{n-1}` and which are left alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MutationRule {
    variables: Arc<[String]>,
    n: usize,
    mutated: usize,
    fiber: Vec<usize>,
    passive: Vec<usize>,
}

/// `{ "n": int, "mutated": "x2", "fiber": ["x1"], "passive": ["y1"] }`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MutationRuleJson {
    pub n: usize,
    pub mutated: String,
    pub fiber: Vec<String>,
    #[serde(default)]
    pub passive: Vec<String>,
}

impl MutationRule {
    /// Positions refer to `variables`. The three index sets must partition it.
    pub fn new<S: AsRef<str>>(
        variables: &[S],
        n: usize,
        mutated: usize,
        fiber: Vec<usize>,
        passive: Vec<usize>,
    ) -> Result<Self> {
        let variables: Arc<[String]> = variables.iter().map(|s| s.as_ref().to_string()).collect();
        if n < 1 {
            return Err(Error::Structural("n must be positive".into()));
        }
        if fiber.len() + 1 != n {
            return Err(Error::Structural(format!(
                "expected {} fiber variables for n = {n}, got {}",
                n - 1,
                fiber.len()
            )));
        }
        let mut seen = vec![false; variables.len()];
        for &i in std::iter::once(&mutated).chain(&fiber).chain(&passive) {
            if i >= variables.len() {
                return Err(Error::Structural(format!("variable index {i} out of range")));
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::Structural(format!(
                    "variable {} used twice in the rule",
                    variables[i]
                )));
            }
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(Error::Structural(format!(
                "variable {} not covered by the rule",
                variables[i]
            )));
        }
        Ok(MutationRule {
            variables,
            n,
            mutated,
            fiber,
            passive,
        })
    }

    /// Resolves the JSON names against a variable list.
    pub fn from_json<S: AsRef<str>>(json: &MutationRuleJson, variables: &[S]) -> Result<Self> {
        let find = |name: &str| {
            variables
                .iter()
                .position(|v| v.as_ref() == name)
                .ok_or_else(|| Error::Structural(format!("rule names unknown variable {name:?}")))
        };
        let mutated = find(&json.mutated)?;
        let fiber = json.fiber.iter().map(|s| find(s)).collect::<Result<Vec<_>>>()?;
        let passive = json.passive.iter().map(|s| find(s)).collect::<Result<Vec<_>>>()?;
        Self::new(variables, json.n, mutated, fiber, passive)
    }

    pub fn to_json(&self) -> MutationRuleJson {
        MutationRuleJson {
            n: self.n,
            mutated: self.variables[self.mutated].clone(),
            fiber: self.fiber.iter().map(|&i| self.variables[i].clone()).collect(),
            passive: self.passive.iter().map(|&i| self.variables[i].clone()).collect(),
        }
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mutated_index(&self) -> usize {
        self.mutated
    }

    pub fn fiber_indices(&self) -> &[usize] {
        &self.fiber
    }

    pub fn passive_indices(&self) -> &[usize] {
        &self.passive
    }

    /// Extends the rule to a larger variable list; new variables become passive.
    pub fn lift(&self, target: &[String], placement: &[usize]) -> Result<Self> {
        let mutated = placement[self.mutated];
        let fiber: Vec<usize> = self.fiber.iter().map(|&i| placement[i]).collect();
        let passive: Vec<usize> = (0..target.len())
            .filter(|i| *i != mutated && !fiber.contains(i))
            .collect();
        Self::new(target, self.n, mutated, fiber, passive)
    }

    fn check(&self, w: &LaurentPolynomial) -> Result<()> {
        if w.variables() == &*self.variables {
            Ok(())
        } else {
            Err(Error::Structural(format!(
                "potential variables {:?} do not match rule variables {:?}",
                w.variables(),
                self.variables
            )))
        }
    }

    /// `1 + Σ fiber variables`.
    pub fn wall_factor(&self) -> LaurentPolynomial {
        let mut s = LaurentPolynomial::constant_in(self.variables.clone(), Scalar::one());
        for &i in &self.fiber {
            let mut exp = vec![0; self.variables.len()];
            exp[i] = 1;
            s.add_term(exp, Scalar::one());
        }
        s
    }

    /// Forward image of a holonomy point: `z_n ↦ z_n (1 + Σ z_i)`.
    pub fn mutate_point(&self, point: &[Scalar]) -> Result<Vec<Scalar>> {
        if point.len() != self.variables.len() {
            return Err(Error::Structural("point has the wrong number of coordinates".into()));
        }
        let mut factor = Scalar::one();
        for &i in &self.fiber {
            factor = factor + point[i].clone();
        }
        let mut image = point.to_vec();
        image[self.mutated] = image[self.mutated].clone() * factor;
        Ok(image)
    }
}

/// Substitutes `x_n ↦ x_n·S` (forward) or `x_n ↦ x_n·S^{-1}` (inverse), `S = 1 + Σ fiber x_i`.
pub fn apply_mutation(
    w: &LaurentPolynomial,
    rule: &MutationRule,
    direction: Direction,
) -> Result<RationalFunction> {
    rule.check(w)?;
    let vars = rule.variables.clone();
    let s = rule.wall_factor();
    let xn = rule.mutated;

    // Group terms by the exponent of x_n, then W = Σ_e P_e x_n^e  ↦  Σ_e P_e x_n^e S^{±e}.
    let mut by_power: BTreeMap<i32, LaurentPolynomial> = BTreeMap::new();
    for (exp, c) in w.terms() {
        by_power
            .entry(exp[xn])
            .or_insert_with(|| LaurentPolynomial::zero_in(vars.clone()))
            .add_term(exp.clone(), c.clone());
    }
    if by_power.is_empty() {
        return Ok(RationalFunction::zero_in(vars));
    }
    let signed = |e: i32| match direction {
        Direction::Forward => e,
        Direction::Inverse => -e,
    };
    // Clear the most negative power of S over a common denominator S^k.
    let k = by_power
        .keys()
        .map(|&e| -signed(e))
        .max()
        .unwrap_or(0)
        .max(0);
    let mut numerator = LaurentPolynomial::zero_in(vars.clone());
    for (e, part) in &by_power {
        let power = signed(*e) + k;
        debug_assert!(power >= 0);
        numerator = &numerator + &(part * &s.pow(power as u32));
    }
    let den = s.pow(k as u32);
    RationalFunction::with_factors(numerator, den, vec![s])
}

/// Result of transporting a potential across the mutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MutatedPotential {
    pub value: RationalFunction,
    pub is_laurent: bool,
    pub laurent: Option<LaurentPolynomial>,
}

/// `W ∘ μ^{-1}`: the potential of the mutated Lagrangian in its own holonomy variables.
pub fn mutate_potential(w: &LaurentPolynomial, rule: &MutationRule) -> Result<MutatedPotential> {
    let value = apply_mutation(w, rule, Direction::Inverse)?;
    let laurent = value.as_laurent();
    Ok(MutatedPotential {
        is_laurent: laurent.is_some(),
        laurent,
        value,
    })
}

/// Applies a forward substitution to a rational function (numerator and denominator separately).
pub fn apply_mutation_rational(
    f: &RationalFunction,
    rule: &MutationRule,
    direction: Direction,
) -> Result<RationalFunction> {
    let num = apply_mutation(f.numerator(), rule, direction)?;
    let den = apply_mutation(f.denominator(), rule, direction)?;
    if den.is_zero() {
        return Err(Error::Domain("denominator vanishes after substitution".into()));
    }
    // The wall factor is fixed by the substitution, as is any factor free of x_n.
    let mut factors = vec![rule.wall_factor()];
    factors.extend(
        f.factors()
            .iter()
            .filter(|h| h.terms().all(|(e, _)| e[rule.mutated] == 0))
            .cloned(),
    );
    RationalFunction::with_factors(
        num.numerator() * den.denominator(),
        num.denominator() * den.numerator(),
        factors,
    )
}

/// Checks `μ(μ^{-1}(W)) = W` by exact cross-multiplication.
pub fn verify_invariance(w: &LaurentPolynomial, rule: &MutationRule) -> Result<bool> {
    let mutated = mutate_potential(w, rule)?;
    let back = apply_mutation_rational(&mutated.value, rule, Direction::Forward)?;
    Ok(back.cross_equal(&RationalFunction::from_laurent(w.clone())))
}

/// Exact evaluation of `f` at a named point. Every variable must be assigned a nonzero value.
pub fn eval_at(f: &RationalFunction, point: &BTreeMap<String, Scalar>) -> Result<Scalar> {
    let coords = f
        .variables()
        .iter()
        .map(|v| {
            let value = point
                .get(v)
                .cloned()
                .ok_or_else(|| Error::Structural(format!("no value for variable {v}")))?;
            if value.is_zero() {
                return Err(Error::Domain(format!("variable {v} is zero")));
            }
            Ok(value)
        })
        .collect::<Result<Vec<_>>>()?;
    f.eval(&coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::from_int;

    fn vars() -> Vec<&'static str> {
        vec!["x1", "x2"]
    }

    fn rule2() -> MutationRule {
        MutationRule::new(&vars(), 2, 1, vec![0], vec![]).unwrap()
    }

    fn p(terms: &[(&[i32], i64)]) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(&vars(), terms.iter().map(|(e, c)| (e.to_vec(), from_int(*c)))).unwrap()
    }

    #[test]
    fn forward_mutates_x_n() {
        let f = apply_mutation(&p(&[(&[0, 1], 1)]), &rule2(), Direction::Forward).unwrap();
        assert_eq!(f.as_laurent().unwrap(), p(&[(&[0, 1], 1), (&[1, 1], 1)]));
        assert!(f.denominator().is_constant());
    }

    #[test]
    fn fixed_generator_is_untouched() {
        let f = apply_mutation(&p(&[(&[1, 0], 1)]), &rule2(), Direction::Forward).unwrap();
        assert_eq!(f.as_laurent().unwrap(), p(&[(&[1, 0], 1)]));
    }

    #[test]
    fn forward_of_inverse_generator_leaves_laurent_ring() {
        let f = apply_mutation(&p(&[(&[0, -1], 1)]), &rule2(), Direction::Forward).unwrap();
        assert_eq!(f.numerator(), &p(&[(&[0, 0], 1)]));
        assert_eq!(f.denominator(), &p(&[(&[0, 1], 1), (&[1, 1], 1)]));
        assert!(!f.is_laurent());
    }

    #[test]
    fn mutate_potential_examples() {
        let m = mutate_potential(&p(&[(&[0, 1], 1), (&[1, 1], 1)]), &rule2()).unwrap();
        assert!(m.is_laurent);
        assert_eq!(m.laurent.unwrap(), p(&[(&[0, 1], 1)]));

        let m = mutate_potential(&p(&[(&[1, 0], 1)]), &rule2()).unwrap();
        assert_eq!(m.laurent.unwrap(), p(&[(&[1, 0], 1)]));

        let m = mutate_potential(&p(&[(&[0, -1], 1)]), &rule2()).unwrap();
        assert!(m.is_laurent);
        assert_eq!(m.laurent.unwrap(), p(&[(&[0, -1], 1), (&[1, -1], 1)]));
    }

    #[test]
    fn invariance_examples() {
        assert!(verify_invariance(&p(&[]), &rule2()).unwrap());
        assert!(verify_invariance(&p(&[(&[0, 1], 1), (&[-1, -1], 1)]), &rule2()).unwrap());
    }

    #[test]
    fn rule_must_partition_variables() {
        assert!(MutationRule::new(&vars(), 2, 1, vec![1], vec![]).is_err());
        assert!(MutationRule::new(&vars(), 3, 1, vec![0], vec![]).is_err());
        assert!(MutationRule::new(&["a", "b", "c"], 2, 1, vec![0], vec![]).is_err());
    }

    #[test]
    fn variable_mismatch_is_structural() {
        let w = LaurentPolynomial::var(&["x1", "y"], 0);
        assert!(matches!(
            apply_mutation(&w, &rule2(), Direction::Forward),
            Err(Error::Structural(_))
        ));
    }

    #[test]
    fn eval_examples() {
        let f = RationalFunction::from_laurent(p(&[(&[0, 1], 1), (&[1, 1], 1)]));
        let point: BTreeMap<String, Scalar> =
            [("x1".to_string(), from_int(1)), ("x2".to_string(), from_int(2))].into();
        assert_eq!(eval_at(&f, &point).unwrap(), from_int(4));

        let g = RationalFunction::new(p(&[(&[0, 0], 1)]), p(&[(&[0, 0], 1), (&[1, 0], 1)])).unwrap();
        let point: BTreeMap<String, Scalar> =
            [("x1".to_string(), from_int(-1)), ("x2".to_string(), from_int(1))].into();
        assert!(matches!(eval_at(&g, &point), Err(Error::Wall(_))));

        let h = RationalFunction::from_laurent(p(&[(&[1, 0], 1), (&[0, 1], 1), (&[-1, -1], 1)]));
        let point: BTreeMap<String, Scalar> =
            [("x1".to_string(), from_int(1)), ("x2".to_string(), from_int(1))].into();
        assert_eq!(eval_at(&h, &point).unwrap(), from_int(3));

        let point: BTreeMap<String, Scalar> =
            [("x1".to_string(), from_int(0)), ("x2".to_string(), from_int(1))].into();
        assert!(matches!(eval_at(&h, &point), Err(Error::Domain(_))));
    }
}
