//! Optional `--config` file.
//!
//! ```toml
//! [train]
//! positive_weight = 3.0
//! l2 = 1e-4
//! epochs = 2000
//! balance = true
//!
//! [baseline]
//! k = 10
//! min_frequency = 0
//!
//! [fusion]
//! strict = false
//! trust = { wikidata = 1, yago = 3 }
//! ```

use std::collections::BTreeMap;

use serde::Deserialize;
use tkgraph::timeline::{TrainConfig, TmConfig};

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CliConfig {
    #[serde(default)]
    pub train: TrainSection,
    #[serde(default)]
    pub baseline: BaselineSection,
    #[serde(default)]
    pub fusion: FusionSection,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrainSection {
    pub positive_weight: Option<f64>,
    pub l2: Option<f64>,
    pub epochs: Option<usize>,
    pub balance: Option<bool>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaselineSection {
    pub k: Option<usize>,
    pub min_frequency: Option<u64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FusionSection {
    pub strict: Option<bool>,
    #[serde(default)]
    pub trust: BTreeMap<String, u32>,
}

impl CliConfig {
    pub fn parse(text: &str) -> Result<Self, toml::de::Error> {
        toml::from_str(text)
    }

    pub fn train_config(&self, seed: u64) -> TrainConfig {
        let d = TrainConfig::default();
        TrainConfig {
            positive_weight: self.train.positive_weight.unwrap_or(d.positive_weight),
            l2: self.train.l2.unwrap_or(d.l2),
            epochs: self.train.epochs.unwrap_or(d.epochs),
            balance: self.train.balance.unwrap_or(d.balance),
            seed,
        }
    }

    pub fn tm_config(&self) -> TmConfig {
        TmConfig { min_frequency: self.baseline.min_frequency.unwrap_or(0) }
    }
}
