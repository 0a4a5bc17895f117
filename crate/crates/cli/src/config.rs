//! Problem configuration: parsing, flag overrides and validation.

use std::path::Path;

use eqcurve_core::curves::SearchConfig;
use eqcurve_core::field::is_prime;
use eqcurve_core::poly::poly_from_json;
use eqcurve_core::{AmbientPoly, CyclicAction, Rationals};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::CliError;

pub const DEFAULT_PRIMES: [u64; 2] = [5, 7];
pub const DEFAULT_TRIALS: u32 = 20;

#[derive(Clone, Debug, Default, Deserialize, Serialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct SearchSettings {
    #[serde(alias = "maxDegree", skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// The configuration file as written by the user.
#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ProblemConfig {
    pub n: usize,
    pub d: u32,
    pub l: u64,
    pub weights: Vec<i64>,
    #[serde(rename = "F", default, skip_serializing_if = "Option::is_none")]
    pub f: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair: Option<(usize, usize)>,
    #[serde(alias = "prime", default, skip_serializing_if = "Option::is_none")]
    pub primes: Option<Vec<u64>>,
    #[serde(default)]
    pub search: SearchSettings,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<u32>,
    /// Eigenvalue of the invariant system when `F` is absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eigenvalue: Option<u64>,
    #[serde(alias = "allowSmallDegree", default)]
    pub allow_small_degree: bool,
}

/// Command-line values that take precedence over the file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub pair: Option<(usize, usize)>,
    pub primes: Option<Vec<u64>>,
    pub max_degree: Option<u32>,
    pub budget: Option<u64>,
    pub seed: Option<u64>,
    pub trials: Option<u32>,
}

/// A validated configuration.
#[derive(Clone, Debug)]
pub struct Problem {
    pub config: ProblemConfig,
    pub action: CyclicAction,
    pub f: Option<AmbientPoly<Rationals>>,
    pub eigenvalue: u64,
    pub pair: Option<(usize, usize)>,
    pub primes: Vec<u64>,
    pub search: SearchConfig,
    pub trials: u32,
    pub notices: Vec<String>,
}

fn invalid(field: &str, message: impl Into<String>) -> CliError {
    CliError::Invalid {
        field: field.to_string(),
        message: message.into(),
    }
}

impl ProblemConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| invalid("config", e.to_string()))
    }

    pub fn apply(&mut self, o: &Overrides) {
        if o.pair.is_some() {
            self.pair = o.pair;
        }
        if o.primes.is_some() {
            self.primes.clone_from(&o.primes);
        }
        if o.max_degree.is_some() {
            self.search.max_degree = o.max_degree;
        }
        if o.budget.is_some() {
            self.search.budget = o.budget;
        }
        if o.seed.is_some() {
            self.search.seed = o.seed;
        }
        if o.trials.is_some() {
            self.trials = o.trials;
        }
    }

    pub fn validate(self) -> Result<Problem, CliError> {
        let mut notices = Vec::new();
        if self.l == 0 {
            return Err(invalid("l", "group order must be positive"));
        }
        if self.weights.len() != self.n + 1 {
            return Err(invalid(
                "weights",
                format!(
                    "expected n + 1 = {} weights, found {}",
                    self.n + 1,
                    self.weights.len()
                ),
            ));
        }
        if self.d < 3 && !self.allow_small_degree {
            return Err(invalid(
                "d",
                format!("degree {} < 3; set allow_small_degree to override", self.d),
            ));
        }
        if self.d == 0 {
            return Err(invalid("d", "degree must be positive"));
        }
        let action = CyclicAction::new(self.l, &self.weights)
            .map_err(|e| invalid("weights", e.to_string()))?;
        if action
            .weights()
            .iter()
            .zip(&self.weights)
            .any(|(&r, &w)| r as i64 != w)
        {
            notices.push(format!(
                "weights reduced modulo {} to {:?}",
                self.l,
                action.weights()
            ));
        }
        if !action.faithful() {
            return Err(invalid(
                "weights",
                "the action is not faithful on projective space",
            ));
        }

        let f = match &self.f {
            None => None,
            Some(v) => {
                let f = poly_from_json(&Rationals, self.n + 1, v)
                    .map_err(|e| invalid("F", e.to_string()))?;
                if f.degree() != self.d {
                    return Err(invalid(
                        "F",
                        format!("degree {} does not match d = {}", f.degree(), self.d),
                    ));
                }
                if f.is_zero() {
                    return Err(invalid("F", "polynomial is zero"));
                }
                Some(f)
            }
        };
        let eigenvalue = match (&f, self.eigenvalue) {
            (Some(f), given) => {
                let c = action
                    .eigenvalue(f)
                    .map_err(|e| invalid("F", format!("not an eigenvector of the action: {e}")))?;
                if given.is_some_and(|g| g % self.l != c) {
                    return Err(invalid("eigenvalue", format!("F has eigenvalue {c}")));
                }
                c
            }
            (None, Some(c)) => c % self.l,
            (None, None) => {
                notices.push("no F and no eigenvalue given; using eigenvalue 0".to_string());
                0
            }
        };
        if let Some((i, j)) = self.pair {
            if i == j || i > self.n || j > self.n {
                return Err(invalid(
                    "pair",
                    format!(
                        "({i}, {j}) is not a pair of distinct indices in 0..={}",
                        self.n
                    ),
                ));
            }
        }
        let primes = self
            .primes
            .clone()
            .unwrap_or_else(|| DEFAULT_PRIMES.to_vec());
        if primes.is_empty() {
            return Err(invalid("primes", "at least one prime is required"));
        }
        if let Some(p) = primes.iter().find(|&&p| !is_prime(p)) {
            return Err(invalid("primes", format!("{p} is not prime")));
        }
        let defaults = SearchConfig::default();
        let search = SearchConfig {
            max_degree: self.search.max_degree.unwrap_or(defaults.max_degree),
            budget: self.search.budget.unwrap_or(defaults.budget),
            seed: self.search.seed.unwrap_or(defaults.seed),
            primes: primes.clone(),
        };
        Ok(Problem {
            action,
            f,
            eigenvalue,
            pair: self.pair,
            primes,
            search,
            trials: self.trials.unwrap_or(DEFAULT_TRIALS),
            notices,
            config: self,
        })
    }
}

impl Problem {
    pub fn nvars(&self) -> usize {
        self.config.n + 1
    }

    pub fn degree(&self) -> u32 {
        self.config.d
    }

    pub fn require_f(&self) -> Result<&AmbientPoly<Rationals>, CliError> {
        self.f
            .as_ref()
            .ok_or_else(|| invalid("F", "this command needs the polynomial F"))
    }

    pub fn require_pair(&self) -> Result<(usize, usize), CliError> {
        self.pair
            .ok_or_else(|| invalid("pair", "this command needs a pair (config or --pair i,j)"))
    }

    /// The configuration with defaults filled in, echoed into reports.
    pub fn echo(&self) -> Value {
        let mut c = self.config.clone();
        c.weights = self.action.weights().iter().map(|&w| w as i64).collect();
        c.primes = Some(self.primes.clone());
        c.search = SearchSettings {
            max_degree: Some(self.search.max_degree),
            budget: Some(self.search.budget),
            seed: Some(self.search.seed),
        };
        c.trials = Some(self.trials);
        c.eigenvalue = Some(self.eigenvalue);
        if let Some(f) = &self.f {
            c.f = Some(f.to_json());
        }
        serde_json::to_value(c).expect("serializable config")
    }
}
