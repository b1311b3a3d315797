//! Rational functions in the Laurent variables, kept in a canonical reduced form.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::gcd::{exact_div, monic, polynomial_gcd};
use super::laurent::LaurentPolynomial;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// `numerator / denominator` with both parts polynomials (no negative exponents),
/// coprime (including monomial factors), and the denominator's grlex leading
/// coefficient equal to 1. Equal values therefore have identical representations.
#[derive(Clone)]
pub struct RationalFunction {
    numerator: LaurentPolynomial,
    denominator: LaurentPolynomial,
    // Irreducible polynomials known to be likely factors; they are cancelled by
    // trial division before the general gcd runs on what is left.
    factors: Vec<LaurentPolynomial>,
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        self.numerator == other.numerator && self.denominator == other.denominator
    }
}

impl Eq for RationalFunction {}

/// Divides out `h` as often as it goes; returns the cofactor and the multiplicity.
fn strip(p: &LaurentPolynomial, h: &LaurentPolynomial) -> (LaurentPolynomial, u32) {
    let mut rest = p.clone();
    let mut count = 0;
    while let Some(q) = exact_div(&rest, h) {
        rest = q;
        count += 1;
    }
    (rest, count)
}

fn merge_factors(a: &[LaurentPolynomial], b: &[LaurentPolynomial]) -> Vec<LaurentPolynomial> {
    let mut out = a.to_vec();
    for h in b {
        if !out.contains(h) {
            out.push(h.clone());
        }
    }
    out
}

impl RationalFunction {
    pub fn new(numerator: LaurentPolynomial, denominator: LaurentPolynomial) -> Result<Self> {
        Self::with_factors(numerator, denominator, Vec::new())
    }

    /// As [`RationalFunction::new`], with irreducible `factors` tried first when cancelling.
    pub(crate) fn with_factors(
        numerator: LaurentPolynomial,
        denominator: LaurentPolynomial,
        factors: Vec<LaurentPolynomial>,
    ) -> Result<Self> {
        if !numerator.same_variables(&denominator) {
            return Err(Error::Structural(
                "numerator and denominator use different variables".into(),
            ));
        }
        if denominator.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        let factors = factors
            .iter()
            .filter(|h| h.same_variables(&numerator) && h.as_monomial().is_none() && !h.is_zero())
            .map(monic)
            .fold(Vec::new(), |acc, h| merge_factors(&acc, &[h]));
        Ok(Self::normalized(numerator, denominator, factors))
    }

    pub fn from_laurent(p: LaurentPolynomial) -> Self {
        let one = LaurentPolynomial::constant_in(p.variables_arc(), Scalar::one());
        Self::normalized(p, one, Vec::new())
    }

    pub fn zero_in(variables: Arc<[String]>) -> Self {
        Self::from_laurent(LaurentPolynomial::zero_in(variables))
    }

    pub fn constant_in(variables: Arc<[String]>, value: Scalar) -> Self {
        Self::from_laurent(LaurentPolynomial::constant_in(variables, value))
    }

    fn normalized(
        num: LaurentPolynomial,
        den: LaurentPolynomial,
        factors: Vec<LaurentPolynomial>,
    ) -> Self {
        let vars = num.variables_arc();
        if num.is_zero() {
            return RationalFunction {
                numerator: num,
                denominator: LaurentPolynomial::constant_in(vars, Scalar::one()),
                factors,
            };
        }
        // Move every negative power across the bar and cancel shared monomials.
        let mn = num.min_exponents();
        let md = den.min_exponents();
        let shift_num: Vec<i32> = mn.iter().zip(&md).map(|(a, b)| -a.min(b)).collect();
        let mut num = num.shift(&shift_num);
        let mut den = den.shift(&shift_num);
        // Now min over num ∪ den is zero per variable; drop monomial factors common to both.
        let mn = num.min_exponents();
        let md = den.min_exponents();
        let common: Vec<i32> = mn.iter().zip(&md).map(|(a, b)| -a.min(b)).collect();
        num = num.shift(&common);
        den = den.shift(&common);

        if den.as_monomial().is_none() && num.as_monomial().is_none() {
            // Cancel the known factors, then look for anything else in the cofactors.
            let mut num_powers = Vec::new();
            let mut den_powers = Vec::new();
            for h in &factors {
                let (n_rest, i) = strip(&num, h);
                let (d_rest, j) = strip(&den, h);
                let c = i.min(j);
                num = n_rest;
                den = d_rest;
                num_powers.push(i - c);
                den_powers.push(j - c);
            }
            if den.as_monomial().is_none() && num.as_monomial().is_none() {
                let g = polynomial_gcd(&num, &den);
                if !g.is_constant() {
                    num = exact_div(&num, &g).expect("gcd divides numerator");
                    den = exact_div(&den, &g).expect("gcd divides denominator");
                }
            }
            for (h, (i, j)) in factors.iter().zip(num_powers.into_iter().zip(den_powers)) {
                if i > 0 {
                    num = &num * &h.pow(i);
                }
                if j > 0 {
                    den = &den * &h.pow(j);
                }
            }
        }
        let lc = den
            .leading_coefficient()
            .cloned()
            .expect("denominator is nonzero");
        if !lc.is_one() {
            let inv = Scalar::one() / lc;
            num = num.scale(&inv);
            den = monic(&den);
        }
        RationalFunction {
            numerator: num,
            denominator: den,
            factors,
        }
    }

    pub fn numerator(&self) -> &LaurentPolynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &LaurentPolynomial {
        &self.denominator
    }

    pub fn variables(&self) -> &[String] {
        self.numerator.variables()
    }

    pub(crate) fn variables_arc(&self) -> Arc<[String]> {
        self.numerator.variables_arc()
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// The Laurent form when the reduced denominator is a single monomial.
    pub fn as_laurent(&self) -> Option<LaurentPolynomial> {
        let (exp, coeff) = self.denominator.as_monomial()?;
        let inv_exp: Vec<i32> = exp.iter().map(|e| -e).collect();
        Some(
            self.numerator
                .shift(&inv_exp)
                .scale(&(Scalar::one() / coeff.clone())),
        )
    }

    pub fn is_laurent(&self) -> bool {
        self.denominator.as_monomial().is_some()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.numerator.same_variables(&other.numerator) {
            Ok(())
        } else {
            Err(Error::Structural("variable lists differ".into()))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let factors = merge_factors(&self.factors, &other.factors);
        if self.denominator == other.denominator {
            return Ok(Self::normalized(
                &self.numerator + &other.numerator,
                self.denominator.clone(),
                factors,
            ));
        }
        let num = &(&self.numerator * &other.denominator) + &(&other.numerator * &self.denominator);
        Ok(Self::normalized(
            num,
            &self.denominator * &other.denominator,
            factors,
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero_in(self.variables_arc()));
        }
        Ok(Self::normalized(
            &self.numerator * &other.numerator,
            &self.denominator * &other.denominator,
            merge_factors(&self.factors, &other.factors),
        ))
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            numerator: -&self.numerator,
            denominator: self.denominator.clone(),
            factors: self.factors.clone(),
        }
    }

    pub fn scale(&self, factor: &Scalar) -> Self {
        if factor.is_zero() {
            return Self::zero_in(self.variables_arc());
        }
        RationalFunction {
            numerator: self.numerator.scale(factor),
            denominator: self.denominator.clone(),
            factors: self.factors.clone(),
        }
    }

    /// Cross-multiplied comparison; independent of the normal form.
    pub fn cross_equal(&self, other: &Self) -> bool {
        self.numerator.same_variables(&other.numerator)
            && &self.numerator * &other.denominator == &other.numerator * &self.denominator
    }

    /// Exact value at a point of the algebraic torus.
    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar> {
        let den = self.denominator.eval(point)?;
        if den.is_zero() {
            return Err(Error::Wall(format!(
                "denominator {} vanishes at the point",
                self.denominator
            )));
        }
        Ok(self.numerator.eval(point)? / den)
    }

    pub(crate) fn factors(&self) -> &[LaurentPolynomial] {
        &self.factors
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator.is_constant() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({}) / ({})", self.numerator, self.denominator)
        }
    }
}

impl From<LaurentPolynomial> for RationalFunction {
    fn from(p: LaurentPolynomial) -> Self {
        RationalFunction::from_laurent(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{from_int, gaussian, rational};

    fn p(terms: &[(&[i32], i64)]) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(
            &["x1", "x2"],
            terms.iter().map(|(e, c)| (e.to_vec(), from_int(*c))),
        )
        .unwrap()
    }

    #[test]
    fn negative_powers_move_to_denominator() {
        let f = RationalFunction::from_laurent(p(&[(&[1, -1], 1), (&[-1, 0], 2)]));
        assert_eq!(f.denominator(), &p(&[(&[1, 1], 1)]));
        assert_eq!(f.numerator(), &p(&[(&[2, 0], 1), (&[0, 1], 2)]));
        assert_eq!(f.as_laurent().unwrap(), p(&[(&[1, -1], 1), (&[-1, 0], 2)]));
    }

    #[test]
    fn common_factors_cancel_and_denominator_is_monic() {
        let s = p(&[(&[0, 0], 1), (&[1, 0], 1)]);
        let num = &s * &p(&[(&[0, 1], 3)]);
        let den = &s.scale(&from_int(2)) * &p(&[(&[0, 0], 1), (&[0, 1], 1)]);
        let f = RationalFunction::new(num, den).unwrap();
        assert_eq!(f.denominator(), &p(&[(&[0, 0], 1), (&[0, 1], 1)]));
        assert_eq!(
            f.numerator(),
            &p(&[(&[0, 1], 1)]).scale(&gaussian(rational(3, 2), rational(0, 1)))
        );
    }

    #[test]
    fn equal_values_share_representation() {
        let s = p(&[(&[0, 0], 1), (&[1, 0], 1)]);
        let a = RationalFunction::new(p(&[(&[0, 1], 1)]), s.clone()).unwrap();
        let b = RationalFunction::new(&p(&[(&[0, 1], 1)]) * &s, &s * &s).unwrap();
        assert_eq!(a, b);
        assert!(a.cross_equal(&b));
    }

    #[test]
    fn zero_denominator_rejected() {
        let zero = p(&[]);
        assert!(RationalFunction::new(p(&[(&[0, 0], 1)]), zero).is_err());
    }

    #[test]
    fn evaluation_hits_the_wall() {
        let f = RationalFunction::new(p(&[(&[0, 0], 1)]), p(&[(&[0, 0], 1), (&[1, 0], 1)])).unwrap();
        let pt = [from_int(-1), from_int(3)];
        assert!(matches!(f.eval(&pt), Err(Error::Wall(_))));
        let pt = [from_int(1), from_int(3)];
        assert_eq!(f.eval(&pt).unwrap(), gaussian(rational(1, 2), rational(0, 1)));
    }
}
