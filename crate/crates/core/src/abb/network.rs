//! Latency/bandwidth time model for the three benchmark deployments.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::CostLedger;
use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EnvName {
    /// High bandwidth, low latency.
    #[serde(rename = "HBLL")]
    Hbll,
    /// High bandwidth, high latency.
    #[serde(rename = "HBHL")]
    Hbhl,
    /// Low bandwidth, high latency.
    #[serde(rename = "LBHL")]
    Lbhl,
}

impl EnvName {
    pub const ALL: [EnvName; 3] = [EnvName::Hbll, EnvName::Hbhl, EnvName::Lbhl];

    pub fn as_str(self) -> &'static str {
        match self {
            EnvName::Hbll => "HBLL",
            EnvName::Hbhl => "HBHL",
            EnvName::Lbhl => "LBHL",
        }
    }
}

impl fmt::Display for EnvName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EnvName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_uppercase().as_str() {
            "HBLL" => Ok(EnvName::Hbll),
            "HBHL" => Ok(EnvName::Hbhl),
            "LBHL" => Ok(EnvName::Lbhl),
            _ => Err(Error::InvalidArgument(format!("unknown network environment {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NetworkEnv {
    pub name: EnvName,
    /// Added delay per communication round.
    pub latency_ms: f64,
    pub bandwidth_bps: f64,
}

impl NetworkEnv {
    pub fn standard(name: EnvName) -> Self {
        let (latency_ms, bandwidth_bps) = match name {
            EnvName::Hbll => (0.0, 1e9),
            EnvName::Hbhl => (40.0, 1e9),
            EnvName::Lbhl => (40.0, 100e6),
        };
        NetworkEnv {
            name,
            latency_ms,
            bandwidth_bps,
        }
    }

    pub fn standard_table() -> Vec<NetworkEnv> {
        EnvName::ALL.iter().map(|&n| NetworkEnv::standard(n)).collect()
    }
}

/// Modelled communication time in seconds: `rounds·latency + bits/bandwidth`.
/// Local computation is not included.
pub fn estimate_time(ledger: &CostLedger, env: &NetworkEnv) -> f64 {
    ledger.rounds() as f64 * env.latency_ms / 1000.0 + ledger.bits() as f64 / env.bandwidth_bps
}
