//! Run configuration, read from TOML and validated before any computation.

use std::path::PathBuf;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::kernel::parse::{param_index, parse_scalar};
use crate::kernel::Scalar;

/// A scalar literal as written in TOML: an integer or a string in the scalar
/// grammar.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Lit {
    Int(i64),
    Text(String),
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    pub n: Option<usize>,
    pub params: Option<Vec<String>>,
    pub alpha: Option<Vec<Lit>>,
    pub lambda: Option<Vec<Lit>>,
    pub gamma: Option<Vec<Lit>>,
    pub mu: Option<Vec<Lit>>,
    pub a: Option<Vec<Lit>>,
    pub degree: Option<u32>,
    pub radius: Option<i32>,
    pub seed: Option<u64>,
    pub output: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub n: usize,
    pub params: Vec<String>,
    /// Weight of the induced weight modules.
    pub alpha: Vec<Scalar>,
    /// Highest weight of a finite-dimensional `gl_n`-module.
    pub lambda: Vec<Scalar>,
    /// Reference weight for the block separation check.
    pub gamma: Vec<Scalar>,
    /// Exponent of `P(mu)`.
    pub mu: Vec<Scalar>,
    /// Twist of `A^a`.
    pub a: Vec<Scalar>,
    /// Truncation degree `D`.
    pub degree: u32,
    /// Window radius `R`.
    pub radius: i32,
    pub seed: u64,
    pub output: Option<PathBuf>,
}

impl Default for Config {
    fn default() -> Self {
        RawConfig::default().validate().expect("defaults are valid")
    }
}

impl Config {
    pub fn from_toml(text: &str) -> Result<Self> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        raw.validate()
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {}", path.display(), e)))?;
        Self::from_toml(&text)
    }

    pub fn nparams(&self) -> usize {
        self.params.len()
    }
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

impl RawConfig {
    pub fn validate(self) -> Result<Config> {
        let n = self.n.unwrap_or(2);
        if !(1..=4).contains(&n) {
            return Err(bad(format!("n = {} is outside 1..4", n)));
        }
        let params = self.params.unwrap_or_else(|| (1..=n).map(|k| format!("a{}", k)).collect());
        for (k, p) in params.iter().enumerate() {
            if param_index(p) != Some(k) {
                return Err(bad(format!("parameter {} must be named a{}, found '{}'", k + 1, k + 1, p)));
            }
        }
        let np = params.len();
        let vector = |name: &str, lits: Option<Vec<Lit>>, default: Vec<Scalar>| -> Result<Vec<Scalar>> {
            let Some(lits) = lits else {
                return Ok(default);
            };
            if lits.len() != n {
                return Err(bad(format!("{} has length {}, expected n = {}", name, lits.len(), n)));
            }
            lits.into_iter()
                .map(|l| match l {
                    Lit::Int(v) => Ok(Scalar::int(v)),
                    Lit::Text(s) => parse_scalar(&s, Some(np)).map_err(|e| bad(format!("{}: '{}': {}", name, s, e))),
                })
                .collect()
        };
        let symbolic: Vec<Scalar> = (0..n)
            .map(|k| match np {
                0 => Scalar::ratio(1, 2),
                _ => Scalar::param(k.min(np - 1)),
            })
            .collect();
        let mut natural = vec![Scalar::zero(); n];
        natural[0] = Scalar::one();
        let alpha = vector("alpha", self.alpha, symbolic.clone())?;
        let lambda = vector("lambda", self.lambda, natural)?;
        let gamma = vector("gamma", self.gamma, vec![symbolic[0].clone(); n])?;
        let mu = vector("mu", self.mu, symbolic.clone())?;
        let a = vector("a", self.a, symbolic)?;
        for w in lambda.windows(2) {
            let ok = (&w[0] - &w[1]).as_i64().is_some_and(|d| d >= 0);
            if !ok {
                return Err(bad(format!("lambda is not dominant integral: {} - {}", w[0], w[1])));
            }
        }
        if lambda.last().and_then(Scalar::as_i64).is_none() {
            return Err(bad("lambda must have integer entries"));
        }
        let degree = self.degree.unwrap_or(3);
        if degree < 1 {
            return Err(bad("degree must be at least 1"));
        }
        let radius = self.radius.unwrap_or(2);
        if radius < 1 {
            return Err(bad("radius must be at least 1"));
        }
        Ok(Config {
            n,
            params,
            alpha,
            lambda,
            gamma,
            mu,
            a,
            degree,
            radius,
            seed: self.seed.unwrap_or(0),
            output: self.output,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let c = Config::default();
        assert_eq!((c.n, c.degree, c.radius, c.seed), (2, 3, 2, 0));
        assert_eq!(c.alpha, vec![Scalar::param(0), Scalar::param(1)]);
        assert_eq!(c.gamma, vec![Scalar::param(0), Scalar::param(0)]);
        assert_eq!(c.lambda, vec![Scalar::one(), Scalar::zero()]);
    }

    #[test]
    fn parses_literals() {
        let c = Config::from_toml("n = 2\nalpha = [\"a1 + 1/2\", 3]\nseed = 7\n").unwrap();
        assert_eq!(c.alpha[1], Scalar::int(3));
        assert_eq!(c.alpha[0], &Scalar::param(0) + &Scalar::ratio(1, 2));
        assert_eq!(c.seed, 7);
    }

    #[test]
    fn rejects_malformed() {
        for text in [
            "n = 5",
            "n = 2\nalpha = [\"a1\"]",
            "degree = 0",
            "radius = 0",
            "lambda = [0, 1]",
            "lambda = [\"1/2\", \"1/2\"]",
            "alpha = [\"a3\", 0]",
            "params = [\"b\"]",
            "colour = 1",
            "n = \"two\"",
        ] {
            assert!(matches!(Config::from_toml(text), Err(Error::Config(_))), "{}", text);
        }
    }
}
