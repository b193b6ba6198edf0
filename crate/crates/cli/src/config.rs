use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use koszul_bar::homology::{MAX_BAR_LENGTH, MAX_WEIGHT};

/// Largest `m + n` the sweeps accept.
pub const MAX_ARITY: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    RelationsK,
    RelationsKV,
    TensorClosure,
    BarEquivalence,
    MuMorphism,
    Homotopy,
    PhiTheorem,
    Homology,
    QuasiIso,
    All,
}

impl Suite {
    pub const EACH: [Suite; 9] = [
        Suite::RelationsK,
        Suite::RelationsKV,
        Suite::TensorClosure,
        Suite::BarEquivalence,
        Suite::MuMorphism,
        Suite::Homotopy,
        Suite::PhiTheorem,
        Suite::Homology,
        Suite::QuasiIso,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::RelationsK => "relations-K",
            Suite::RelationsKV => "relations-KV",
            Suite::TensorClosure => "tensor-closure",
            Suite::BarEquivalence => "bar-equivalence",
            Suite::MuMorphism => "mu-morphism",
            Suite::Homotopy => "homotopy",
            Suite::PhiTheorem => "phi-theorem",
            Suite::Homology => "homology",
            Suite::QuasiIso => "quasi-iso",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, ConfigError> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| ConfigError::UnknownSuite(s.to_string()))
    }
}

/// Deliberate defects for negative controls.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Injection {
    /// Negates `m^{2,1}` of `K` on linear inputs.
    FlipM21,
    /// Drops the permutation sign from `Φ`.
    DropPhiSign,
    /// Replaces `Φ` by zero in the homology comparison.
    ZeroMorphism,
}

impl Injection {
    pub fn as_str(self) -> &'static str {
        match self {
            Injection::FlipM21 => "flip-m21",
            Injection::DropPhiSign => "drop-phi-sign",
            Injection::ZeroMorphism => "zero-morphism",
        }
    }
}

impl FromStr for Injection {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, ConfigError> {
        [Injection::FlipM21, Injection::DropPhiSign, Injection::ZeroMorphism]
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| ConfigError::UnknownInjection(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub suite: Suite,
    pub dim: usize,
    /// Bound on the weight of each algebra entry and of each module word.
    pub max_weight: u32,
    /// Bound on `m + n`.
    pub max_arity: usize,
    pub max_bar_length: usize,
    /// Inputs drawn per sweep when `dim > 2`.
    pub samples: usize,
    pub seed: u64,
    pub format: ReportFormat,
    pub inject: Option<Injection>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            suite: Suite::All,
            dim: 2,
            max_weight: 3,
            max_arity: 4,
            max_bar_length: 3,
            samples: 500,
            seed: 0,
            format: ReportFormat::Text,
            inject: None,
        }
    }
}

impl SuiteConfig {
    pub fn new(suite: Suite) -> Self {
        SuiteConfig {
            suite,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let over = |what: &str, v: usize, cap: usize| {
            if v == 0 || v > cap {
                Err(ConfigError::BoundOverflow(format!("{what} = {v} outside 1..={cap}")))
            } else {
                Ok(())
            }
        };
        over("dim", self.dim, koszul_bar::MAX_DIM)?;
        over("max_weight", self.max_weight as usize, MAX_WEIGHT as usize)?;
        over("max_arity", self.max_arity, MAX_ARITY)?;
        over("max_bar_length", self.max_bar_length, MAX_BAR_LENGTH)?;
        over("samples", self.samples, 1_000_000)
    }

    /// Whether sweeps enumerate every input or draw seeded samples.
    pub fn exhaustive(&self) -> bool {
        self.dim <= 2
    }

    pub fn params(&self) -> Params {
        Params {
            dim: self.dim,
            max_weight: self.max_weight,
            max_arity: self.max_arity,
            max_bar_length: self.max_bar_length,
            samples: self.samples,
            seed: self.seed,
            sweep: if self.exhaustive() { "exhaustive" } else { "sampled" }.to_string(),
            inject: self.inject.map(|i| i.as_str().to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Params {
    pub dim: usize,
    pub max_weight: u32,
    pub max_arity: usize,
    pub max_bar_length: usize,
    pub samples: usize,
    pub seed: u64,
    pub sweep: String,
    pub inject: Option<String>,
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("unknown injection {0:?}")]
    UnknownInjection(String),
    #[error("bound overflow: {0}")]
    BoundOverflow(String),
    #[error(transparent)]
    Core(#[from] koszul_bar::Error),
}
