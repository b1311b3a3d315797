//! `{ "variables": [...], "terms": [ { "exponents": [...], "coeff": { "re": "p/q", "im": "p/q" } } ] }`

use serde::{Deserialize, Serialize};

use super::laurent::{grlex_cmp, LaurentPolynomial};
use super::scalar::ScalarJson;
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exponents: Vec<i32>,
    pub coeff: ScalarJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PotentialJson {
    pub variables: Vec<String>,
    pub terms: Vec<TermJson>,
}

impl PotentialJson {
    pub fn to_polynomial(&self) -> Result<LaurentPolynomial> {
        let terms = self
            .terms
            .iter()
            .map(|t| Ok((t.exponents.clone(), t.coeff.to_scalar()?)))
            .collect::<Result<Vec<_>>>()?;
        LaurentPolynomial::from_terms(&self.variables, terms)
    }
}

impl From<&LaurentPolynomial> for PotentialJson {
    /// Terms are emitted in descending grlex order so output is deterministic.
    fn from(p: &LaurentPolynomial) -> Self {
        let mut terms: Vec<_> = p.terms().collect();
        terms.sort_by(|a, b| grlex_cmp(b.0, a.0));
        PotentialJson {
            variables: p.variables().to_vec(),
            terms: terms
                .into_iter()
                .map(|(e, c)| TermJson {
                    exponents: e.clone(),
                    coeff: c.into(),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_wire_format() {
        let text = r#"{"variables":["x1","x2"],"terms":[
            {"exponents":[0,1],"coeff":{"re":"1/1","im":"0/1"}},
            {"exponents":[1,-1],"coeff":{"re":"-3/2","im":"1/3"}}]}"#;
        let json: PotentialJson = serde_json::from_str(text).unwrap();
        let p = json.to_polynomial().unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(PotentialJson::from(&p).to_polynomial().unwrap(), p);
    }
}
