use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};

use tropath::graph_io::{random_edge_list, GraphFile};
use tropath::separator::adjacency_sparse;
use tropath::sparse::MatrixText;
use tropath::{
    bellman_ford_public, build_separator_plan, dijkstra_oracle, grid_generate, sssd_apc, Abb,
    AbbConfig, Domain, EdgeListGraph, EnvName,
};

use crate::args::{BenchArgs, GenArgs, GraphSource, Protocol, RunArgs, VerifyArgs};
use crate::report::{
    digest, model_seconds, render_bench, render_run, to_json_line, BenchRow, GraphDescriptor,
    RunReport,
};

/// How a command ended, when it did not error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success,
    VerificationFailed,
}

const SHARE_SEED: u64 = 0x5eed;

fn pair(v: &[usize], what: &str) -> Result<(usize, usize)> {
    match v {
        [a, b] => Ok((*a, *b)),
        _ => bail!("{what} takes two values"),
    }
}

fn describe(g: &GraphFile, seed: Option<u64>) -> GraphDescriptor {
    GraphDescriptor {
        kind: if g.as_grid().is_some() { "grid" } else { "edges" },
        rows: g.as_grid().map(|g| g.rows),
        cols: g.as_grid().map(|g| g.cols),
        vertices: g.num_vertices(),
        edges: g.edges().len(),
        seed,
    }
}

pub fn load_graph(src: &GraphSource) -> Result<(GraphFile, GraphDescriptor)> {
    if let Some(dims) = &src.grid {
        let (r, c) = pair(dims, "--grid")?;
        let g = GraphFile::Grid(grid_generate(r, c, src.low, src.high, src.seed)?);
        let d = describe(&g, Some(src.seed));
        return Ok((g, d));
    }
    let Some(path) = &src.graph else {
        bail!("pass --grid R C or --graph FILE");
    };
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let g: GraphFile = text.parse().with_context(|| format!("parsing {}", path.display()))?;
    let d = describe(&g, None);
    Ok((g, d))
}

pub fn load_config(path: Option<&Path>) -> Result<AbbConfig> {
    let Some(path) = path else {
        return Ok(AbbConfig::default());
    };
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    AbbConfig::from_toml_str(&text).with_context(|| format!("loading {}", path.display()))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

pub struct Job<'a> {
    pub cfg: &'a AbbConfig,
    pub protocol: Protocol,
    pub domain: Domain,
    pub source: usize,
    pub max_sweeps: Option<usize>,
    pub verify: bool,
    pub envs: &'a [EnvName],
}

/// Runs one protocol on a fresh black box.
pub fn run_protocol(job: &Job<'_>, g: &GraphFile, desc: &GraphDescriptor) -> Result<RunReport> {
    let mut abb = Abb::new(job.domain, job.cfg, SHARE_SEED)?;
    let n = g.num_vertices();
    if job.source >= n {
        bail!("source {} outside 0..{n}", job.source);
    }
    let (distances, ledger, extrapolated, depth, sweeps) = match job.protocol {
        Protocol::Apc => {
            let Some(grid) = g.as_grid() else {
                bail!("the apc protocol runs on grid graphs only; use --grid or a grid file");
            };
            let run = sssd_apc(&mut abb, grid, job.source)?;
            (run.distances, run.ledger, false, Some(run.depth), None)
        }
        Protocol::Bf => {
            let el = EdgeListGraph::from_arcs(&mut abb, n, &g.arcs())?;
            let run = bellman_ford_public(&mut abb, &el, job.source, job.max_sweeps)?;
            let ledger = run.projected_ledger();
            (run.distances.clone(), ledger, !run.is_complete(), None, Some(run.sweeps))
        }
    };
    let verified = if job.verify {
        Some(dijkstra_oracle(n, &g.arcs(), job.source)? == distances)
    } else {
        None
    };
    Ok(RunReport {
        protocol: job.protocol.as_str(),
        domain: job.domain.to_string(),
        graph: desc.clone(),
        source: job.source,
        distances: distances.to_string(),
        digest: digest(&distances),
        verified,
        rounds: ledger.rounds(),
        bytes: ledger.bytes(),
        extrapolated,
        model_seconds: model_seconds(&ledger, job.cfg, job.envs),
        depth,
        sweeps,
    })
}

pub fn gen(args: &GenArgs, out: &mut dyn Write) -> Result<Status> {
    let g = match (&args.grid, &args.random) {
        (Some(dims), _) => {
            let (r, c) = pair(dims, "--grid")?;
            GraphFile::Grid(grid_generate(r, c, args.low, args.high, args.seed)?)
        }
        (None, Some(nm)) => {
            let (n, m) = pair(nm, "--random")?;
            if n == 0 {
                bail!("a graph needs at least one vertex");
            }
            GraphFile::EdgeList {
                n,
                edges: random_edge_list(n, m, args.low, args.high, args.seed)?,
            }
        }
        (None, None) => bail!("pass --grid R C or --random N M"),
    };
    let text = g.to_string();
    match &args.out {
        Some(p) => write_file(p, &text)?,
        None => out.write_all(text.as_bytes())?,
    }
    if args.plan_out.is_some() || args.matrix_out.is_some() {
        let Some(grid) = g.as_grid() else {
            bail!("--plan-out and --matrix-out need a grid");
        };
        let plan = build_separator_plan(grid.rows, grid.cols)?;
        if let Some(p) = &args.plan_out {
            write_file(p, &plan.to_string())?;
        }
        if let Some(p) = &args.matrix_out {
            let mut abb = Abb::clear();
            let a = adjacency_sparse(&mut abb, grid, &plan)?;
            let text = MatrixText {
                num_rows: a.num_rows(),
                num_cols: a.num_cols(),
                entries: a.reveal_triplets(&mut abb),
            };
            write_file(p, &text.to_string())?;
        }
    }
    Ok(Status::Success)
}

pub fn run(cfg: &AbbConfig, args: &RunArgs, out: &mut dyn Write) -> Result<Status> {
    let (g, desc) = load_graph(&args.source_graph)?;
    let envs = args.env.names();
    let job = Job {
        cfg,
        protocol: args.protocol,
        domain: args.domain.into(),
        source: args.source,
        max_sweeps: args.max_sweeps,
        verify: args.verify,
        envs: &envs,
    };
    let report = run_protocol(&job, &g, &desc)?;
    let line = to_json_line(&report);
    if let Some(p) = &args.out {
        write_file(p, &format!("{line}\n"))?;
    }
    if args.json {
        writeln!(out, "{line}")?;
    } else {
        out.write_all(render_run(&report).as_bytes())?;
    }
    Ok(match report.verified {
        Some(false) => Status::VerificationFailed,
        _ => Status::Success,
    })
}

pub fn bench(cfg: &AbbConfig, args: &BenchArgs, out: &mut dyn Write) -> Result<Status> {
    let envs = args.env.names();
    let mut rows = Vec::new();
    for &side in &args.sizes {
        let g = GraphFile::Grid(grid_generate(side, side, 1, 100, args.seed)?);
        let desc = describe(&g, Some(args.seed));
        let mut pair = Vec::new();
        for protocol in [Protocol::Apc, Protocol::Bf] {
            let job = Job {
                cfg,
                protocol,
                domain: args.domain.into(),
                source: 0,
                max_sweeps: args.max_sweeps,
                verify: false,
                envs: &envs,
            };
            pair.push(run_protocol(&job, &g, &desc)?);
        }
        let bf_secs = pair[1].model_seconds.clone();
        for r in pair {
            let speedup = r
                .model_seconds
                .iter()
                .map(|(e, s)| (*e, if *s > 0.0 { bf_secs[e] / s } else { 1.0 }))
                .collect();
            rows.push(BenchRow {
                side,
                protocol: r.protocol,
                rounds: r.rounds,
                bytes: r.bytes,
                extrapolated: r.extrapolated,
                model_seconds: r.model_seconds,
                speedup,
                depth: r.depth,
            });
        }
    }
    if let Some(p) = &args.out {
        let text: String = rows.iter().map(|r| to_json_line(r) + "\n").collect();
        write_file(p, &text)?;
    }
    out.write_all(render_bench(&rows, &envs).as_bytes())?;
    Ok(Status::Success)
}

pub fn verify(cfg: &AbbConfig, args: &VerifyArgs, out: &mut dyn Write) -> Result<Status> {
    let (g, desc) = load_graph(&args.source_graph)?;
    let protocols = match args.protocol {
        Some(p) => vec![p],
        None if g.as_grid().is_some() => vec![Protocol::Apc, Protocol::Bf],
        None => vec![Protocol::Bf],
    };
    let sources: Vec<usize> = match &args.source {
        Some(s) => s.clone(),
        None => (0..g.num_vertices()).collect(),
    };
    let mut failures = 0;
    for &protocol in &protocols {
        for &source in &sources {
            let job = Job {
                cfg,
                protocol,
                domain: args.domain.into(),
                source,
                max_sweeps: None,
                verify: true,
                envs: &[],
            };
            let r = run_protocol(&job, &g, &desc)?;
            if r.verified != Some(true) {
                failures += 1;
                writeln!(out, "MISMATCH {} source {source}: {}", protocol.as_str(), r.distances)?;
            }
        }
    }
    let runs = protocols.len() * sources.len();
    writeln!(out, "{}: {runs} runs, {failures} mismatches", desc.label())?;
    Ok(if failures == 0 {
        Status::Success
    } else {
        Status::VerificationFailed
    })
}
