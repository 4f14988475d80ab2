use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use sha2::{Digest, Sha256};

use tropath::{estimate_time, AbbConfig, CostLedger, DistanceVector, EnvName};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GraphDescriptor {
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rows: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cols: Option<usize>,
    pub vertices: usize,
    pub edges: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl GraphDescriptor {
    pub fn label(&self) -> String {
        match (self.rows, self.cols) {
            (Some(r), Some(c)) => format!("{r}x{c} grid, {} edges", self.edges),
            _ => format!("{} vertices, {} edges", self.vertices, self.edges),
        }
    }
}

/// One protocol run. Model times are derived from the ledger totals.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub protocol: &'static str,
    pub domain: String,
    pub graph: GraphDescriptor,
    pub source: usize,
    pub distances: String,
    pub digest: String,
    /// `None` when no oracle check was requested.
    pub verified: Option<bool>,
    pub rounds: u64,
    pub bytes: f64,
    /// True when the cost is projected from a partial Bellman-Ford run.
    pub extrapolated: bool,
    pub model_seconds: BTreeMap<EnvName, f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweeps: Option<usize>,
}

pub fn digest(d: &DistanceVector) -> String {
    let mut h = Sha256::new();
    h.update(d.to_string().as_bytes());
    format!("sha256:{}", hex::encode(h.finalize()))
}

pub fn model_seconds(ledger: &CostLedger, cfg: &AbbConfig, envs: &[EnvName]) -> BTreeMap<EnvName, f64> {
    envs.iter()
        .map(|&e| (e, estimate_time(ledger, &cfg.environment(e))))
        .collect()
}

pub fn to_json_line(r: &impl Serialize) -> String {
    serde_json::to_string(r).expect("report serializes")
}

fn verified_text(v: Option<bool>) -> &'static str {
    match v {
        None => "not checked",
        Some(true) => "yes",
        Some(false) => "NO",
    }
}

pub fn render_run(r: &RunReport) -> String {
    let mut rows: Vec<(String, String)> = vec![
        ("protocol".into(), r.protocol.into()),
        ("domain".into(), r.domain.clone()),
        ("graph".into(), r.graph.label()),
        ("source".into(), r.source.to_string()),
        ("distances".into(), r.distances.clone()),
        ("digest".into(), r.digest.clone()),
        ("verified".into(), verified_text(r.verified).into()),
    ];
    if let Some(d) = r.depth {
        rows.push(("depth".into(), d.to_string()));
    }
    if let Some(s) = r.sweeps {
        rows.push(("sweeps".into(), s.to_string()));
    }
    let suffix = if r.extrapolated { " (extrapolated)" } else { "" };
    rows.push(("rounds".into(), format!("{}{suffix}", r.rounds)));
    rows.push(("bytes".into(), format!("{}{suffix}", r.bytes)));
    for (env, secs) in &r.model_seconds {
        rows.push((format!("model {env}"), format!("{secs:.3} s")));
    }
    let width = rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in rows {
        writeln!(out, "{k:<width$}  {v}").unwrap();
    }
    out
}

/// One row of the comparison table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub side: usize,
    pub protocol: &'static str,
    pub rounds: u64,
    pub bytes: f64,
    pub extrapolated: bool,
    pub model_seconds: BTreeMap<EnvName, f64>,
    /// BF model time over this protocol's model time, per environment.
    pub speedup: BTreeMap<EnvName, f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
}

pub fn render_bench(rows: &[BenchRow], envs: &[EnvName]) -> String {
    let mut header = vec!["size".to_string(), "protocol".into(), "depth".into(), "rounds".into(), "bytes".into()];
    for e in envs {
        header.push(format!("{e} model s"));
    }
    for e in envs {
        header.push(format!("speedup {e}"));
    }
    let mut table = vec![header];
    for r in rows {
        let mut line = vec![
            format!("{0}x{0}", r.side),
            format!("{}{}", r.protocol, if r.extrapolated { "*" } else { "" }),
            r.depth.map_or("-".into(), |d| d.to_string()),
            r.rounds.to_string(),
            format!("{}", r.bytes),
        ];
        for e in envs {
            line.push(format!("{:.3}", r.model_seconds[e]));
        }
        for e in envs {
            line.push(format!("{:.2}x", r.speedup[e]));
        }
        table.push(line);
    }
    let widths: Vec<usize> = (0..table[0].len())
        .map(|i| table.iter().map(|l| l[i].len()).max().unwrap())
        .collect();
    let mut out = String::new();
    for line in &table {
        let cells: Vec<String> = line
            .iter()
            .zip(&widths)
            .enumerate()
            .map(|(i, (c, w))| if i < 2 { format!("{c:<w$}") } else { format!("{c:>w$}") })
            .collect();
        writeln!(out, "{}", cells.join("  ").trim_end()).unwrap();
    }
    if rows.iter().any(|r| r.extrapolated) {
        out.push_str("* cost projected from a partial run\n");
    }
    out
}
