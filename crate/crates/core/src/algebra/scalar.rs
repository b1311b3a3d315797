//! Gaussian rationals: exact complex numbers with rational real and imaginary parts.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of ℚ(i).
pub type Scalar = Complex<BigRational>;

pub fn rational(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn from_int(value: i64) -> Scalar {
    Complex::new(BigRational::from_integer(value.into()), BigRational::zero())
}

pub fn from_rational(value: BigRational) -> Scalar {
    Complex::new(value, BigRational::zero())
}

pub fn gaussian(re: BigRational, im: BigRational) -> Scalar {
    Complex::new(re, im)
}

pub fn imaginary_unit() -> Scalar {
    Complex::new(BigRational::zero(), BigRational::one())
}

pub fn is_real(value: &Scalar) -> bool {
    value.im.is_zero()
}

fn qmul(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_integer() && b.is_integer() {
        BigRational::from_integer(a.numer() * b.numer())
    } else {
        a * b
    }
}

fn qadd(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_integer() && b.is_integer() {
        BigRational::from_integer(a.numer() + b.numer())
    } else {
        a + b
    }
}

fn qsub(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_integer() && b.is_integer() {
        BigRational::from_integer(a.numer() - b.numer())
    } else {
        a - b
    }
}

/// Product with shortcuts for units, real operands and integer parts.
pub fn mul(a: &Scalar, b: &Scalar) -> Scalar {
    if a.is_one() {
        return b.clone();
    }
    if b.is_one() {
        return a.clone();
    }
    match (a.im.is_zero(), b.im.is_zero()) {
        (true, true) => Complex::new(qmul(&a.re, &b.re), BigRational::zero()),
        (true, false) => Complex::new(qmul(&a.re, &b.re), qmul(&a.re, &b.im)),
        (false, true) => Complex::new(qmul(&a.re, &b.re), qmul(&a.im, &b.re)),
        (false, false) => Complex::new(
            qsub(&qmul(&a.re, &b.re), &qmul(&a.im, &b.im)),
            qadd(&qmul(&a.re, &b.im), &qmul(&a.im, &b.re)),
        ),
    }
}

pub fn add(a: &Scalar, b: &Scalar) -> Scalar {
    Complex::new(qadd(&a.re, &b.re), qadd(&a.im, &b.im))
}

pub fn sub(a: &Scalar, b: &Scalar) -> Scalar {
    Complex::new(qsub(&a.re, &b.re), qsub(&a.im, &b.im))
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let text = text.trim();
    let parsed: BigRational = text
        .parse()
        .map_err(|_| Error::Parse(format!("not an exact rational: {text:?}")))?;
    Ok(parsed)
}

/// Always emits the `p/q` form, with `q > 0`.
pub fn format_rational(value: &BigRational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Approximate conversion used only for reporting and numerical cross-checks.
pub fn to_f64(value: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    value.to_f64().unwrap_or(f64::NAN)
}

pub fn to_complex_f64(value: &Scalar) -> Complex<f64> {
    Complex::new(to_f64(&value.re), to_f64(&value.im))
}

/// Wire format for a Gaussian rational: `{ "re": "p/q", "im": "p/q" }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarJson {
    pub re: String,
    #[serde(default = "zero_string")]
    pub im: String,
}

fn zero_string() -> String {
    "0/1".to_string()
}

impl ScalarJson {
    pub fn to_scalar(&self) -> Result<Scalar> {
        Ok(Complex::new(parse_rational(&self.re)?, parse_rational(&self.im)?))
    }
}

impl From<&Scalar> for ScalarJson {
    fn from(value: &Scalar) -> Self {
        ScalarJson {
            re: format_rational(&value.re),
            im: format_rational(&value.im),
        }
    }
}

/// Serde adapter writing a rational as `"p/q"`.
pub mod rational_text {
    use super::{format_rational, parse_rational};
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

/// As [`rational_text`] for optional values; `None` is written as `null`.
pub mod opt_rational_text {
    use super::{format_rational, parse_rational};
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
        match value {
            Some(v) => s.serialize_some(&format_rational(v)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigRational>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|t| parse_rational(&t).map_err(serde::de::Error::custom))
            .transpose()
    }
}
