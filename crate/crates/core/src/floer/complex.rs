use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::CoboundaryData;
use crate::algebra::json::PotentialJson;
use crate::algebra::scalar::{from_int, ScalarJson};
use crate::algebra::{LaurentPolynomial, RationalFunction, Scalar};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StripDatum {
    pub from: String,
    pub to: String,
    /// Signed rigid count.
    pub count: i64,
    pub class_l: Vec<i32>,
    pub class_k: Vec<i32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FloerComplex {
    pub generators: Vec<String>,
    pub strips: Vec<StripDatum>,
    pub rank_l: usize,
    pub rank_k: usize,
    pub potential_l: LaurentPolynomial,
    pub potential_k: LaurentPolynomial,
}

impl FloerComplex {
    pub fn new(
        generators: Vec<String>,
        strips: Vec<StripDatum>,
        potential_l: LaurentPolynomial,
        potential_k: LaurentPolynomial,
    ) -> Result<Self> {
        let c = FloerComplex {
            generators,
            strips,
            rank_l: potential_l.arity(),
            rank_k: potential_k.arity(),
            potential_l,
            potential_k,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for g in &self.generators {
            if !seen.insert(g.as_str()) {
                return Err(Error::Structural(format!("generator {g} is declared twice")));
            }
        }
        if self.potential_l.arity() != self.rank_l || self.potential_k.arity() != self.rank_k {
            return Err(Error::Structural(format!(
                "potentials have {} and {} variables, ranks are {} and {}",
                self.potential_l.arity(),
                self.potential_k.arity(),
                self.rank_l,
                self.rank_k
            )));
        }
        let l: BTreeSet<&String> = self.potential_l.variables().iter().collect();
        if let Some(v) = self.potential_k.variables().iter().find(|v| l.contains(v)) {
            return Err(Error::Structural(format!("variable {v} appears in both the L and K blocks")));
        }
        for (i, s) in self.strips.iter().enumerate() {
            for end in [&s.from, &s.to] {
                if !seen.contains(end.as_str()) {
                    return Err(Error::Structural(format!("strip {i} references undeclared generator {end}")));
                }
            }
            if s.class_l.len() != self.rank_l || s.class_k.len() != self.rank_k {
                return Err(Error::Structural(format!(
                    "strip {i} has classes of length {} and {}, expected {} and {}",
                    s.class_l.len(),
                    s.class_k.len(),
                    self.rank_l,
                    self.rank_k
                )));
            }
        }
        Ok(())
    }

    /// L variables followed by K variables.
    pub fn variables(&self) -> Vec<String> {
        self.potential_l
            .variables()
            .iter()
            .chain(self.potential_k.variables())
            .cloned()
            .collect()
    }

    pub(super) fn coboundary(&self) -> Result<CoboundaryData> {
        self.validate()?;
        let variables = self.variables();
        let index: BTreeMap<&str, usize> =
            self.generators.iter().enumerate().map(|(i, g)| (g.as_str(), i)).collect();
        let m = self.generators.len();
        let mut entries = vec![vec![LaurentPolynomial::zero(&variables); m]; m];
        for s in &self.strips {
            let exp: Vec<i32> = s.class_l.iter().map(|e| -e).chain(s.class_k.iter().copied()).collect();
            entries[index[s.to.as_str()]][index[s.from.as_str()]].add_term(exp, from_int(s.count));
        }
        let l_slots: Vec<usize> = (0..self.rank_l).collect();
        let k_slots: Vec<usize> = (self.rank_l..self.rank_l + self.rank_k).collect();
        Ok(CoboundaryData {
            generators: self.generators.clone(),
            matrix: entries
                .into_iter()
                .map(|row| row.into_iter().map(RationalFunction::from_laurent).collect())
                .collect(),
            potential_l: self.potential_l.embed(&variables, &l_slots).into(),
            potential_k: self.potential_k.embed(&variables, &k_slots).into(),
            variables,
        })
    }

    /// Changes the trivialization at each generator g by t_g = x_K^{k_g}·x_L^{−l_g},
    /// which conjugates the coboundary by diag(t_g).
    pub fn retrivialize(&self, offsets: &BTreeMap<String, (Vec<i32>, Vec<i32>)>) -> Result<Self> {
        self.validate()?;
        let zero = (vec![0; self.rank_l], vec![0; self.rank_k]);
        let get = |g: &String| -> Result<&(Vec<i32>, Vec<i32>)> {
            let o = offsets.get(g).unwrap_or(&zero);
            if o.0.len() != self.rank_l || o.1.len() != self.rank_k {
                return Err(Error::Structural(format!("offset for {g} has the wrong length")));
            }
            Ok(o)
        };
        let strips = self
            .strips
            .iter()
            .map(|s| {
                let (lp, kp) = get(&s.from)?;
                let (lq, kq) = get(&s.to)?;
                Ok(StripDatum {
                    class_l: (0..self.rank_l).map(|i| s.class_l[i] + lq[i] - lp[i]).collect(),
                    class_k: (0..self.rank_k).map(|i| s.class_k[i] + kq[i] - kp[i]).collect(),
                    ..s.clone()
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FloerComplex { strips, ..self.clone() })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StripJson {
    pub from: String,
    pub to: String,
    pub count: i64,
    #[serde(rename = "class_L", default)]
    pub class_l: Vec<i32>,
    #[serde(rename = "class_K", default)]
    pub class_k: Vec<i32>,
}

/// `{ "generators", "rank_L", "rank_K", "strips", "W_L", "W_K" }`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FloerComplexJson {
    pub generators: Vec<String>,
    #[serde(rename = "rank_L")]
    pub rank_l: usize,
    #[serde(rename = "rank_K")]
    pub rank_k: usize,
    #[serde(default)]
    pub strips: Vec<StripJson>,
    #[serde(rename = "W_L")]
    pub potential_l: PotentialJson,
    #[serde(rename = "W_K")]
    pub potential_k: PotentialJson,
}

impl FloerComplexJson {
    pub fn to_complex(&self) -> Result<FloerComplex> {
        let c = FloerComplex {
            generators: self.generators.clone(),
            strips: self
                .strips
                .iter()
                .map(|s| StripDatum {
                    from: s.from.clone(),
                    to: s.to.clone(),
                    count: s.count,
                    class_l: s.class_l.clone(),
                    class_k: s.class_k.clone(),
                })
                .collect(),
            rank_l: self.rank_l,
            rank_k: self.rank_k,
            potential_l: self.potential_l.to_polynomial()?,
            potential_k: self.potential_k.to_polynomial()?,
        };
        c.validate()?;
        Ok(c)
    }
}

impl From<&FloerComplex> for FloerComplexJson {
    fn from(c: &FloerComplex) -> Self {
        FloerComplexJson {
            generators: c.generators.clone(),
            rank_l: c.rank_l,
            rank_k: c.rank_k,
            strips: c
                .strips
                .iter()
                .map(|s| StripJson {
                    from: s.from.clone(),
                    to: s.to.clone(),
                    count: s.count,
                    class_l: s.class_l.clone(),
                    class_k: s.class_k.clone(),
                })
                .collect(),
            potential_l: (&c.potential_l).into(),
            potential_k: (&c.potential_k).into(),
        }
    }
}

/// Nonzero exact values for holonomy variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HolonomyAssignment(BTreeMap<String, Scalar>);

/// `{ "z1": { "re": "p/q", "im": "p/q" }, ... }`
pub type AssignmentJson = BTreeMap<String, ScalarJson>;

impl HolonomyAssignment {
    pub fn new(values: BTreeMap<String, Scalar>) -> Result<Self> {
        if let Some((v, _)) = values.iter().find(|(_, x)| x.is_zero()) {
            return Err(Error::Domain(format!("holonomy of {v} must be nonzero")));
        }
        Ok(HolonomyAssignment(values))
    }

    pub fn from_json(json: &AssignmentJson) -> Result<Self> {
        Self::new(
            json.iter()
                .map(|(k, v)| Ok((k.clone(), v.to_scalar()?)))
                .collect::<Result<_>>()?,
        )
    }

    pub fn to_json(&self) -> AssignmentJson {
        self.0.iter().map(|(k, v)| (k.clone(), v.into())).collect()
    }

    pub fn values(&self) -> &BTreeMap<String, Scalar> {
        &self.0
    }

    pub(super) fn point_for(&self, variables: &[String]) -> Result<Vec<Scalar>> {
        variables
            .iter()
            .map(|v| {
                self.0
                    .get(v)
                    .cloned()
                    .ok_or_else(|| Error::Structural(format!("no holonomy given for {v}")))
            })
            .collect()
    }
}
