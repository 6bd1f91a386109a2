//! JSON tensor files.
//!
//! ```json
//! {"n": 2, "d": 3, "convention": "monomial",
//!  "coeffs": [{"j": [3, 0], "re": 0.31, "im": 0.0}]}
//! ```
//!
//! With `"monomial"` each entry is the coefficient of `x^j`; with `"fj"` it is
//! the tensor entry `f_j`, so the monomial coefficient is `c(j) f_j`.

use std::collections::HashSet;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use symnorm::tensor::{MultiIndex, SymTensor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    Monomial,
    Fj,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Coeff {
    pub j: Vec<i64>,
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorFile {
    pub n: usize,
    pub d: usize,
    pub convention: Convention,
    pub coeffs: Vec<Coeff>,
}

#[derive(Debug)]
pub struct ParseError(pub String);

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ParseError {}

impl TensorFile {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let file: TensorFile = serde_json::from_str(text).map_err(|e| ParseError(format!("tensor file: {e}")))?;
        file.to_tensor()?;
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn to_tensor(&self) -> Result<SymTensor, ParseError> {
        let mut seen = HashSet::new();
        let mut items = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            if !c.re.is_finite() || !c.im.is_finite() {
                return Err(ParseError(format!("non-finite coefficient at {:?}", c.j)));
            }
            if !seen.insert(c.j.clone()) {
                return Err(ParseError(format!("duplicate index {:?}", c.j)));
            }
            let j = MultiIndex::from_signed(&c.j).map_err(|e| ParseError(e.to_string()))?;
            items.push((j, Complex64::new(c.re, c.im)));
        }
        let t = match self.convention {
            Convention::Monomial => SymTensor::from_monomial_coefficients(self.n, self.d, items),
            Convention::Fj => SymTensor::from_fj(self.n, self.d, items),
        };
        t.map_err(|e| ParseError(e.to_string()))
    }

    /// Nonzero monomial coefficients of `t`.
    pub fn from_tensor(t: &SymTensor) -> Self {
        let coeffs = t
            .indices()
            .iter()
            .zip(t.monomial_coeffs())
            .filter(|(_, a)| a.norm() > 0.0)
            .map(|(j, a)| Coeff { j: j.j.iter().map(|&v| v as i64).collect(), re: a.re, im: a.im })
            .collect();
        TensorFile { n: t.n(), d: t.d(), convention: Convention::Monomial, coeffs }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EX2: &str = r#"{"n":2,"d":3,"convention":"monomial","coeffs":[{"j":[2,1],"re":1.5,"im":0},{"j":[0,3],"re":-0.5,"im":0}]}"#;

    #[test]
    fn parses_both_conventions() {
        let t = TensorFile::parse(EX2).unwrap().to_tensor().unwrap();
        assert!((t.entry(&MultiIndex::new(vec![2, 1])).unwrap().re - 0.5).abs() < 1e-15);
        let fj = EX2.replace("monomial", "fj");
        let u = TensorFile::parse(&fj).unwrap().to_tensor().unwrap();
        assert!((u.entry(&MultiIndex::new(vec![2, 1])).unwrap().re - 1.5).abs() < 1e-15);
    }

    #[test]
    fn rejections() {
        let dup = EX2.replace("[0,3]", "[2,1]");
        assert!(TensorFile::parse(&dup).unwrap_err().0.contains("duplicate"));
        let unknown = EX2.replace("\"d\":3", "\"d\":3,\"extra\":1");
        assert!(TensorFile::parse(&unknown).is_err());
        let neg = EX2.replace("[0,3]", "[-1,4]");
        assert!(TensorFile::parse(&neg).is_err());
        let deg = EX2.replace("[0,3]", "[0,2]");
        assert!(TensorFile::parse(&deg).is_err());
        let conv = EX2.replace("monomial", "packed");
        assert!(TensorFile::parse(&conv).is_err());
        let no_im = EX2.replace(",\"im\":0}", "}");
        assert!(TensorFile::parse(&no_im).is_err());
    }

    #[test]
    fn round_trip() {
        let f = TensorFile::parse(EX2).unwrap();
        assert_eq!(TensorFile::parse(&f.to_json()).unwrap(), f);
    }
}
