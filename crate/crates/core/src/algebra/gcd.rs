//! Multivariate polynomial GCD over ℚ(i) by recursive primitive remainder sequences.
//!
//! Inputs are Laurent polynomials whose exponents are all non-negative; the
//! caller strips monomial content before and after.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::laurent::LaurentPolynomial;
use super::scalar::{self, Scalar};

/// Divides by the grlex leading coefficient. The zero polynomial stays zero.
pub fn monic(p: &LaurentPolynomial) -> LaurentPolynomial {
    match p.leading_coefficient() {
        Some(lc) if !lc.is_one() => p.scale(&(Scalar::one() / lc.clone())),
        _ => p.clone(),
    }
}

/// Exact quotient `a / b` of polynomials, or `None` when `b` does not divide `a`.
pub fn exact_div(a: &LaurentPolynomial, b: &LaurentPolynomial) -> Option<LaurentPolynomial> {
    let (lead_exp, lead_coeff) = b.leading_term()?;
    let lead_exp = lead_exp.clone();
    let inv_lead = Scalar::one() / lead_coeff.clone();
    let vars = a.variables_arc();
    if a.is_zero() {
        return Some(LaurentPolynomial::zero_in(vars));
    }
    // Every quotient exponent lies in [mindeg a - mindeg b, deg a - deg b] per variable.
    let mut lo = Vec::with_capacity(a.arity());
    let mut hi = Vec::with_capacity(a.arity());
    for v in 0..a.arity() {
        let l = a.min_degree_in(v)? - b.min_degree_in(v)?;
        let h = a.degree_in(v)? - b.degree_in(v)?;
        if l > h {
            return None;
        }
        lo.push(l);
        hi.push(h);
    }
    // Remainder keyed by (total degree, exponent), so the grlex leading term is the last entry.
    let key = |e: &[i32]| (e.iter().map(|&x| x as i64).sum::<i64>(), e.to_vec());
    let mut rem: BTreeMap<(i64, Vec<i32>), Scalar> =
        a.terms().map(|(e, c)| (key(e), c.clone())).collect();
    let tail: Vec<(&Vec<i32>, &Scalar)> = b.terms().filter(|(e, _)| **e != lead_exp).collect();
    let mut quot = LaurentPolynomial::zero_in(vars);
    while let Some(((_, exp), coeff)) = rem.pop_last() {
        let shift: Vec<i32> = exp.iter().zip(&lead_exp).map(|(x, y)| x - y).collect();
        if shift
            .iter()
            .zip(lo.iter().zip(&hi))
            .any(|(s, (l, h))| s < l || s > h)
        {
            return None;
        }
        let factor = scalar::mul(&coeff, &inv_lead);
        for (e, c) in &tail {
            let moved: Vec<i32> = e.iter().zip(&shift).map(|(x, y)| x + y).collect();
            let delta = scalar::mul(c, &factor);
            match rem.entry(key(&moved)) {
                Entry::Vacant(slot) => {
                    slot.insert(-delta);
                }
                Entry::Occupied(mut slot) => {
                    let v = scalar::sub(slot.get(), &delta);
                    if v.is_zero() {
                        slot.remove();
                    } else {
                        *slot.get_mut() = v;
                    }
                }
            }
        }
        quot.add_term(shift, factor);
    }
    Some(quot)
}

fn split_by(p: &LaurentPolynomial, var: usize) -> BTreeMap<i32, LaurentPolynomial> {
    let mut parts: BTreeMap<i32, LaurentPolynomial> = BTreeMap::new();
    let vars = p.variables_arc();
    for (exp, c) in p.terms() {
        let mut reduced = exp.clone();
        let d = reduced[var];
        reduced[var] = 0;
        parts
            .entry(d)
            .or_insert_with(|| LaurentPolynomial::zero_in(vars.clone()))
            .add_term(reduced, c.clone());
    }
    parts
}

fn var_power(p: &LaurentPolynomial, var: usize, power: i32) -> Vec<i32> {
    let mut shift = vec![0; p.arity()];
    shift[var] = power;
    shift
}

fn content(p: &LaurentPolynomial, var: usize) -> LaurentPolynomial {
    let mut acc: Option<LaurentPolynomial> = None;
    for coeff in split_by(p, var).into_values() {
        acc = Some(match acc {
            None => monic(&coeff),
            Some(g) => {
                if g.is_constant() {
                    return g;
                }
                polynomial_gcd(&g, &coeff)
            }
        });
    }
    acc.unwrap_or_else(|| LaurentPolynomial::zero_in(p.variables_arc()))
}

fn primitive_part(p: &LaurentPolynomial, var: usize) -> LaurentPolynomial {
    let c = content(p, var);
    if c.is_constant() {
        return monic(p);
    }
    monic(&exact_div(p, &c).expect("content divides its polynomial"))
}

/// Pseudo-remainder of `a` by `b` with respect to `var`.
fn pseudo_remainder(a: &LaurentPolynomial, b: &LaurentPolynomial, var: usize) -> LaurentPolynomial {
    let db = b.degree_in(var).unwrap_or(0);
    let lc_b = split_by(b, var).remove(&db).expect("leading coefficient exists");
    let mut r = a.clone();
    while let Some(dr) = r.degree_in(var) {
        if dr < db || r.is_zero() {
            break;
        }
        let lc_r = split_by(&r, var).remove(&dr).expect("leading coefficient exists");
        let lifted = (&lc_r * b).shift(&var_power(b, var, dr - db));
        r = &(&lc_b * &r) - &lifted;
        // Keep coefficients small; scaling by a unit does not change the sequence.
        r = monic(&r);
    }
    r
}

fn occurs(p: &LaurentPolynomial, var: usize) -> bool {
    p.terms().any(|(e, _)| e[var] != 0)
}

/// GCD of two polynomials (non-negative exponents), normalised to grlex leading coefficient 1.
pub fn polynomial_gcd(a: &LaurentPolynomial, b: &LaurentPolynomial) -> LaurentPolynomial {
    if a.is_zero() {
        return monic(b);
    }
    if b.is_zero() {
        return monic(a);
    }
    let vars = a.variables_arc();
    let one = LaurentPolynomial::constant_in(vars, Scalar::one());
    if a.is_constant() || b.is_constant() {
        return one;
    }

    // Monomial content first.
    let ma = a.min_exponents();
    let mb = b.min_exponents();
    let common: Vec<i32> = ma.iter().zip(&mb).map(|(x, y)| *x.min(y)).collect();
    let neg = |m: &[i32]| m.iter().map(|x| -x).collect::<Vec<_>>();
    let a0 = a.shift(&neg(&ma));
    let b0 = b.shift(&neg(&mb));
    monic(&gcd_without_monomials(&a0, &b0).shift(&common))
}

fn gcd_without_monomials(a: &LaurentPolynomial, b: &LaurentPolynomial) -> LaurentPolynomial {
    let one = LaurentPolynomial::constant_in(a.variables_arc(), Scalar::one());
    if a.is_constant() || b.is_constant() {
        return one;
    }
    if exact_div(a, b).is_some() {
        return monic(b);
    }
    if exact_div(b, a).is_some() {
        return monic(a);
    }

    let arity = a.arity();
    // A variable of `a` absent from `b` (or vice versa) can be eliminated by taking content.
    for var in 0..arity {
        match (occurs(a, var), occurs(b, var)) {
            (true, false) => return polynomial_gcd(&content(a, var), b),
            (false, true) => return polynomial_gcd(a, &content(b, var)),
            _ => {}
        }
    }

    // Main variable: the shared one with the smallest degree in either argument.
    let var = (0..arity)
        .filter(|&v| occurs(a, v))
        .min_by_key(|&v| {
            let da = a.degree_in(v).unwrap_or(0);
            let db = b.degree_in(v).unwrap_or(0);
            (da.min(db), da.max(db))
        })
        .expect("non-constant polynomial has a variable");

    let c = polynomial_gcd(&content(a, var), &content(b, var));
    let mut p = primitive_part(a, var);
    let mut q = primitive_part(b, var);
    if p.degree_in(var) < q.degree_in(var) {
        std::mem::swap(&mut p, &mut q);
    }
    let g = loop {
        let r = pseudo_remainder(&p, &q, var);
        if r.is_zero() {
            break q;
        }
        if !occurs(&r, var) {
            break one.clone();
        }
        p = q;
        q = primitive_part(&r, var);
    };
    monic(&(&c * &primitive_part(&g, var)))
}
