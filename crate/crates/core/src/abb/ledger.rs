use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Per-operation cost constants of the comparison protocol.
///
/// The addition protocol is local and never appears here.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostModel {
    /// Rounds of one batched compare-and-choose, independent of batch size.
    pub c_round: u64,
    /// Bits exchanged per compared element.
    pub c_bits: u64,
}

impl Default for CostModel {
    fn default() -> Self {
        CostModel {
            c_round: 3,
            c_bits: 128,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpStats {
    pub invocations: u64,
    pub rounds: u64,
    pub bits: u64,
}

/// Communication counters, charged once per batched ABB operation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostLedger {
    rounds: u64,
    bits: u64,
    ops: BTreeMap<String, OpStats>,
}

impl CostLedger {
    pub fn new() -> Self {
        Self::default()
    }

    /// A ledger with only totals, for feeding the time model directly.
    pub fn from_totals(rounds: u64, bytes: u64) -> Self {
        let mut l = CostLedger::new();
        l.charge("external", rounds, bytes * 8);
        l
    }

    pub fn rounds(&self) -> u64 {
        self.rounds
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn bytes(&self) -> f64 {
        self.bits as f64 / 8.0
    }

    pub fn ops(&self) -> &BTreeMap<String, OpStats> {
        &self.ops
    }

    pub fn op(&self, name: &str) -> OpStats {
        self.ops.get(name).copied().unwrap_or_default()
    }

    pub fn charge(&mut self, op: &str, rounds: u64, bits: u64) {
        self.rounds += rounds;
        self.bits += bits;
        let e = self.ops.entry(op.to_string()).or_default();
        e.invocations += 1;
        e.rounds += rounds;
        e.bits += bits;
    }

    /// Totals equal the sum over the histogram.
    pub fn is_consistent(&self) -> bool {
        let (r, b) = self
            .ops
            .values()
            .fold((0, 0), |(r, b), s| (r + s.rounds, b + s.bits));
        r == self.rounds && b == self.bits
    }

    /// Multiplies every counter by `factor`; used to extrapolate sampled runs.
    pub fn scaled(&self, factor: u64) -> CostLedger {
        CostLedger {
            rounds: self.rounds * factor,
            bits: self.bits * factor,
            ops: self
                .ops
                .iter()
                .map(|(k, s)| {
                    (
                        k.clone(),
                        OpStats {
                            invocations: s.invocations * factor,
                            rounds: s.rounds * factor,
                            bits: s.bits * factor,
                        },
                    )
                })
                .collect(),
        }
    }

    /// Counters accumulated since `earlier`, which must be a prefix snapshot.
    pub fn since(&self, earlier: &CostLedger) -> CostLedger {
        let mut ops = BTreeMap::new();
        for (k, s) in &self.ops {
            let e = earlier.op(k);
            let d = OpStats {
                invocations: s.invocations - e.invocations,
                rounds: s.rounds - e.rounds,
                bits: s.bits - e.bits,
            };
            if d.invocations > 0 {
                ops.insert(k.clone(), d);
            }
        }
        CostLedger {
            rounds: self.rounds - earlier.rounds,
            bits: self.bits - earlier.bits,
            ops,
        }
    }
}
