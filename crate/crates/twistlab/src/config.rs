//! Experiment configuration: defaults, then a JSON config file, then
//! environment overrides, then command-line flags.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use twistlab_core::action::level_horizon;
use twistlab_core::growth::DEFAULT_GRADE_BUDGET;
use twistlab_core::ring::DEFAULT_CERT_BOUND;
use twistlab_core::tower::DEFAULT_ORDER_BUDGET;
use twistlab_core::{ActionConfig, Construction, Error, Result, Tower, TowerConfig};

use crate::formats::ActionJson;

pub const ORDER_BUDGET_ENV: &str = "TWISTLAB_ORDER_BUDGET";
pub const GRADE_BUDGET_ENV: &str = "TWISTLAB_GRADE_BUDGET";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Every field is optional so that a config file and flags can be layered.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub p: Option<u32>,
    pub q: Option<u32>,
    pub n: Option<usize>,
    pub k_max: Option<usize>,
    pub seed: Option<u64>,
    pub cert_bound: Option<u64>,
    pub order_budget: Option<u64>,
    pub grade_budget: Option<usize>,
    /// Digit positions of each exponent; defaults to the squares rule.
    pub exponents: Option<Vec<Vec<u32>>>,
    pub k: Option<usize>,
    pub degree: Option<usize>,
    pub trials: Option<u64>,
    pub n_max: Option<usize>,
    pub element: Option<String>,
    pub denominator: Option<String>,
    pub allow_large: Option<bool>,
    pub output: Option<PathBuf>,
    pub format: Option<Format>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| Error::Usage(format!("config {}: {e}", path.display())))
    }

    /// Fields set in `over` win.
    pub fn merge(self, over: ConfigFile) -> ConfigFile {
        macro_rules! pick {
            ($($f:ident),*) => { ConfigFile { $($f: over.$f.or(self.$f)),* } };
        }
        pick!(
            p,
            q,
            n,
            k_max,
            seed,
            cert_bound,
            order_budget,
            grade_budget,
            exponents,
            k,
            degree,
            trials,
            n_max,
            element,
            denominator,
            allow_large,
            output,
            format
        )
    }

    /// Budget overrides from the environment.
    pub fn from_env() -> Result<ConfigFile> {
        fn read<T: std::str::FromStr>(name: &str) -> Result<Option<T>> {
            match std::env::var(name) {
                Ok(v) => v
                    .trim()
                    .parse()
                    .map(Some)
                    .map_err(|_| Error::Usage(format!("{name}={v:?} is not a number"))),
                Err(_) => Ok(None),
            }
        }
        Ok(ConfigFile {
            order_budget: read(ORDER_BUDGET_ENV)?,
            grade_budget: read(GRADE_BUDGET_ENV)?,
            ..ConfigFile::default()
        })
    }
}

/// The resolved configuration; embedded verbatim in every report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub p: u32,
    pub q: u32,
    pub n: usize,
    pub k_max: usize,
    pub seed: u64,
    pub cert_bound: u64,
    pub order_budget: u64,
    pub grade_budget: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exponents: Option<Vec<Vec<u32>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_max: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub element: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub denominator: Option<String>,
    pub allow_large: bool,
    #[serde(skip)]
    pub output: Option<PathBuf>,
    pub format: Format,
}

pub const DEFAULT_SEED: u64 = 1;

impl ExperimentConfig {
    /// Fills defaults and validates; `default_format` depends on the command.
    pub fn resolve(file: ConfigFile, default_format: Format) -> Result<Self> {
        let k_max = match (file.k_max, file.k) {
            (Some(km), Some(k)) if k > km => {
                return Err(Error::InvalidConfig(format!(
                    "level k = {k} exceeds k_max = {km}"
                )))
            }
            (Some(km), _) => km,
            (None, k) => k.unwrap_or(0).max(2),
        };
        let cfg = ExperimentConfig {
            p: file.p.unwrap_or(2),
            q: file.q.unwrap_or(2),
            n: file
                .n
                .or(file.exponents.as_ref().map(Vec::len))
                .unwrap_or(2),
            k_max,
            seed: file.seed.unwrap_or(DEFAULT_SEED),
            cert_bound: file.cert_bound.unwrap_or(DEFAULT_CERT_BOUND),
            order_budget: file.order_budget.unwrap_or(DEFAULT_ORDER_BUDGET),
            grade_budget: file.grade_budget.unwrap_or(DEFAULT_GRADE_BUDGET),
            exponents: file.exponents,
            k: file.k,
            degree: file.degree,
            trials: file.trials,
            n_max: file.n_max,
            element: file.element,
            denominator: file.denominator,
            allow_large: file.allow_large.unwrap_or(false),
            output: file.output,
            format: file.format.unwrap_or(default_format),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Cheap checks that run before any table is built.
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidConfig("rank n must be at least 1".into()));
        }
        if self.cert_bound == 0 {
            return Err(Error::InvalidConfig(
                "certificate bound must be positive".into(),
            ));
        }
        self.tower_config().validate()
    }

    pub fn tower_config(&self) -> TowerConfig {
        TowerConfig::new(self.p, self.q, self.k_max).with_budget(self.order_budget)
    }

    pub fn construction(&self) -> Result<Construction> {
        let tower = Tower::build(self.tower_config())?;
        let action = match &self.exponents {
            None => ActionConfig::default_for(self.p, self.n)?,
            Some(exponents) => ActionJson {
                n: self.n,
                p: self.p,
                horizon: level_horizon(self.p),
                exponents: exponents.clone(),
            }
            .to_action()?,
        };
        Construction::new(tower, action, self.cert_bound)
    }

    /// The working level: `k` if given, else 1 when materialized.
    pub fn level(&self) -> usize {
        self.k.unwrap_or(1.min(self.k_max))
    }
}
