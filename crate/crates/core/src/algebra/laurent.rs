//! Sparse multivariate Laurent polynomials over ℚ(i).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::scalar::{self, Scalar};
use crate::error::{Error, Result};

/// Exponent vector, one slot per declared variable; negative entries allowed.
pub type Exponent = Vec<i32>;

/// A Laurent polynomial in an ordered, named set of variables.
///
/// Terms with zero coefficient are never stored, so two polynomials are equal
/// exactly when their term maps are equal.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPolynomial {
    variables: Arc<[String]>,
    terms: BTreeMap<Exponent, Scalar>,
}

/// Graded lexicographic comparison: total degree first, then the earliest
/// variable with a differing exponent decides.
pub fn grlex_cmp(a: &[i32], b: &[i32]) -> Ordering {
    let da: i64 = a.iter().map(|&e| e as i64).sum();
    let db: i64 = b.iter().map(|&e| e as i64).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

impl LaurentPolynomial {
    pub fn zero<S: AsRef<str>>(variables: &[S]) -> Self {
        Self::zero_in(variables.iter().map(|s| s.as_ref().to_string()).collect())
    }

    pub(crate) fn zero_in(variables: Arc<[String]>) -> Self {
        LaurentPolynomial {
            variables,
            terms: BTreeMap::new(),
        }
    }

    /// Builds from `(exponents, coefficient)` pairs, merging repeats and dropping zeros.
    pub fn from_terms<S, I>(variables: &[S], terms: I) -> Result<Self>
    where
        S: AsRef<str>,
        I: IntoIterator<Item = (Exponent, Scalar)>,
    {
        let mut poly = Self::zero(variables);
        let mut seen = std::collections::BTreeSet::new();
        for name in poly.variables.iter() {
            if !seen.insert(name.clone()) {
                return Err(Error::Structural(format!("duplicate variable {name:?}")));
            }
        }
        for (exp, coeff) in terms {
            if exp.len() != poly.variables.len() {
                return Err(Error::Structural(format!(
                    "exponent vector of length {} for {} variables",
                    exp.len(),
                    poly.variables.len()
                )));
            }
            poly.add_term(exp, coeff);
        }
        Ok(poly)
    }

    pub fn constant<S: AsRef<str>>(variables: &[S], value: Scalar) -> Self {
        let mut poly = Self::zero(variables);
        let arity = poly.arity();
        poly.add_term(vec![0; arity], value);
        poly
    }

    pub fn one<S: AsRef<str>>(variables: &[S]) -> Self {
        Self::constant(variables, Scalar::one())
    }

    /// The generator at position `index`.
    pub fn var<S: AsRef<str>>(variables: &[S], index: usize) -> Self {
        let mut exp = vec![0; variables.len()];
        exp[index] = 1;
        let mut poly = Self::zero(variables);
        poly.add_term(exp, Scalar::one());
        poly
    }

    pub(crate) fn monomial_in(variables: Arc<[String]>, exp: Exponent, coeff: Scalar) -> Self {
        let mut poly = Self::zero_in(variables);
        poly.add_term(exp, coeff);
        poly
    }

    pub(crate) fn constant_in(variables: Arc<[String]>, value: Scalar) -> Self {
        let arity = variables.len();
        Self::monomial_in(variables, vec![0; arity], value)
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub(crate) fn variables_arc(&self) -> Arc<[String]> {
        self.variables.clone()
    }

    pub fn arity(&self) -> usize {
        self.variables.len()
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exp: &[i32]) -> Scalar {
        self.terms.get(exp).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, exp: Exponent, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                let sum = scalar::add(slot.get(), &coeff);
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn same_variables(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.variables, &other.variables) || self.variables == other.variables
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.same_variables(other) {
            Ok(())
        } else {
            Err(Error::Structural(format!(
                "variable lists differ: {:?} vs {:?}",
                self.variables, other.variables
            )))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self * other)
    }

    pub fn scale(&self, factor: &Scalar) -> Self {
        let mut out = Self::zero_in(self.variables.clone());
        if factor.is_zero() {
            return out;
        }
        for (exp, c) in &self.terms {
            out.terms.insert(exp.clone(), scalar::mul(c, factor));
        }
        out
    }

    /// Multiplies every term by `x^shift`.
    pub fn shift(&self, shift: &[i32]) -> Self {
        let mut out = Self::zero_in(self.variables.clone());
        for (exp, c) in &self.terms {
            let moved: Exponent = exp.iter().zip(shift).map(|(a, b)| a + b).collect();
            out.terms.insert(moved, c.clone());
        }
        out
    }

    pub fn pow(&self, power: u32) -> Self {
        let mut result = Self::constant_in(self.variables.clone(), Scalar::one());
        let mut base = self.clone();
        let mut p = power;
        while p > 0 {
            if p & 1 == 1 {
                result = &result * &base;
            }
            p >>= 1;
            if p > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 if self.is_constant() => self.terms.values().next().cloned(),
            _ => None,
        }
    }

    /// `Some((exponent, coefficient))` when the polynomial has exactly one term.
    pub fn as_monomial(&self) -> Option<(&Exponent, &Scalar)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// True when no exponent is negative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x >= 0))
    }

    /// Entrywise minimum exponent over all terms (zero vector for the zero polynomial).
    pub fn min_exponents(&self) -> Exponent {
        let mut mins: Option<Exponent> = None;
        for exp in self.terms.keys() {
            mins = Some(match mins {
                None => exp.clone(),
                Some(m) => m.iter().zip(exp).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        mins.unwrap_or_else(|| vec![0; self.arity()])
    }

    pub fn degree_in(&self, var: usize) -> Option<i32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    pub fn min_degree_in(&self, var: usize) -> Option<i32> {
        self.terms.keys().map(|e| e[var]).min()
    }

    /// Leading term under graded lexicographic order.
    pub fn leading_term(&self) -> Option<(&Exponent, &Scalar)> {
        self.terms.iter().max_by(|a, b| grlex_cmp(a.0, b.0))
    }

    pub fn leading_coefficient(&self) -> Option<&Scalar> {
        self.leading_term().map(|(_, c)| c)
    }

    /// Exact evaluation at a point of the algebraic torus.
    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.arity() {
            return Err(Error::Structural(format!(
                "point has {} coordinates, polynomial has {} variables",
                point.len(),
                self.arity()
            )));
        }
        let mut total = Scalar::zero();
        for (exp, coeff) in &self.terms {
            let mut value = coeff.clone();
            for (i, &e) in exp.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if point[i].is_zero() {
                    return Err(Error::Domain(format!(
                        "coordinate {} is zero",
                        self.variables[i]
                    )));
                }
                value = value * point[i].powi(e);
            }
            total = total + value;
        }
        Ok(total)
    }

    /// Re-embeds into a larger variable list; `placement[i]` is the new slot of variable `i`.
    pub fn embed(&self, target: &[String], placement: &[usize]) -> Self {
        let target: Arc<[String]> = target.to_vec().into();
        let mut out = Self::zero_in(target.clone());
        for (exp, c) in &self.terms {
            let mut moved = vec![0; target.len()];
            for (i, &e) in exp.iter().enumerate() {
                moved[placement[i]] += e;
            }
            out.add_term(moved, c.clone());
        }
        out
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    /// Panics on mismatched variable lists; use [`LaurentPolynomial::checked_add`] for a `Result`.
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        assert!(self.same_variables(rhs), "variable lists differ");
        let mut out = self.clone();
        for (exp, c) in &rhs.terms {
            out.add_term(exp.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        assert!(self.same_variables(rhs), "variable lists differ");
        let mut out = self.clone();
        for (exp, c) in &rhs.terms {
            out.add_term(exp.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        assert!(self.same_variables(rhs), "variable lists differ");
        let mut out = LaurentPolynomial::zero_in(self.variables.clone());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exp: Exponent = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exp, scalar::mul(ca, cb));
            }
        }
        out
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn neg(self) -> LaurentPolynomial {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered.sort_by(|a, b| grlex_cmp(b.0, a.0));
        for (k, (exp, c)) in ordered.into_iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let coeff = if scalar::is_real(c) {
                format!("{}", c.re)
            } else {
                format!("({} + {}i)", c.re, c.im)
            };
            let mut mono = Vec::new();
            for (name, &e) in self.variables.iter().zip(exp) {
                match e {
                    0 => {}
                    1 => mono.push(name.clone()),
                    _ => mono.push(format!("{name}^{e}")),
                }
            }
            if mono.is_empty() {
                write!(f, "{coeff}")?;
            } else if c.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{coeff}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}
