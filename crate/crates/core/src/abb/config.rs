use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{CostModel, EnvName, NetworkEnv};
use crate::error::{Error, Result};

/// Tunable constants of the simulated ABB, loadable from TOML:
///
/// ```toml
/// c_round = 3
/// c_bits = 128
/// ring_width = 64
///
/// [env.HBHL]
/// latency_ms = 20.0
/// ```
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AbbConfig {
    pub c_round: u64,
    pub c_bits: u64,
    /// Share ring is Z/2^ring_width.
    pub ring_width: u32,
    pub env: BTreeMap<EnvName, EnvOverride>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EnvOverride {
    pub latency_ms: Option<f64>,
    pub bandwidth_bps: Option<f64>,
}

impl Default for AbbConfig {
    fn default() -> Self {
        let m = CostModel::default();
        AbbConfig {
            c_round: m.c_round,
            c_bits: m.c_bits,
            ring_width: 64,
            env: BTreeMap::new(),
        }
    }
}

impl AbbConfig {
    pub fn from_toml_str(s: &str) -> Result<Self> {
        let cfg: AbbConfig = toml::from_str(s).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(2..=64).contains(&self.ring_width) {
            return Err(Error::Config(format!(
                "ring_width must be in 2..=64, got {}",
                self.ring_width
            )));
        }
        for (name, o) in &self.env {
            if o.bandwidth_bps.is_some_and(|b| b <= 0.0) || o.latency_ms.is_some_and(|l| l < 0.0)
            {
                return Err(Error::Config(format!("invalid override for {name}")));
            }
        }
        Ok(())
    }

    pub fn cost_model(&self) -> CostModel {
        CostModel {
            c_round: self.c_round,
            c_bits: self.c_bits,
        }
    }

    pub fn environment(&self, name: EnvName) -> NetworkEnv {
        let mut env = NetworkEnv::standard(name);
        if let Some(o) = self.env.get(&name) {
            if let Some(l) = o.latency_ms {
                env.latency_ms = l;
            }
            if let Some(b) = o.bandwidth_bps {
                env.bandwidth_bps = b;
            }
        }
        env
    }

    pub fn environments(&self) -> Vec<NetworkEnv> {
        EnvName::ALL.iter().map(|&n| self.environment(n)).collect()
    }
}
