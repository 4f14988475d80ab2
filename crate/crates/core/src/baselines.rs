//! Bellman-Ford with public edges, and cleartext oracles.
//!
//! The graph's endpoints are public and only the weights are private, so
//! reading `D[S[j]]` is a local gather. Each sweep is one batched addition
//! and one segmented minimum over the in-edges of every vertex.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::abb::{Abb, CostLedger, SecretVector};
use crate::error::{Error, Result};
use crate::separator::GridGraph;
use crate::weight::{DistanceVector, Weight};

/// Arcs sorted by target, with private weights.
#[derive(Clone, Debug)]
pub struct EdgeListGraph {
    n: usize,
    sources: Vec<usize>,
    targets: Vec<usize>,
    weights: SecretVector,
}

impl EdgeListGraph {
    pub fn new(n: usize, sources: Vec<usize>, targets: Vec<usize>, weights: SecretVector) -> Result<Self> {
        if sources.len() != targets.len() || sources.len() != weights.len() {
            return Err(Error::Structure(format!(
                "edge streams disagree: {} sources, {} targets, {} weights",
                sources.len(),
                targets.len(),
                weights.len()
            )));
        }
        if let Some(&v) = sources.iter().chain(&targets).find(|&&v| v >= n) {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        if targets.windows(2).any(|t| t[0] > t[1]) {
            return Err(Error::NotNormalized("targets sorted nondecreasing"));
        }
        Ok(EdgeListGraph {
            n,
            sources,
            targets,
            weights,
        })
    }

    /// Shares the weights of directed `(source, target, weight)` arcs after a
    /// stable sort by target.
    pub fn from_arcs(abb: &mut Abb, n: usize, arcs: &[(usize, usize, Weight)]) -> Result<Self> {
        let mut arcs = arcs.to_vec();
        arcs.sort_by_key(|a| a.1);
        let w: Vec<Weight> = arcs.iter().map(|a| a.2).collect();
        let weights = abb.share(&w)?;
        EdgeListGraph::new(
            n,
            arcs.iter().map(|a| a.0).collect(),
            arcs.iter().map(|a| a.1).collect(),
            weights,
        )
    }

    /// Undirected edges, entered in both orientations.
    pub fn from_undirected(abb: &mut Abb, n: usize, edges: &[(usize, usize, Weight)]) -> Result<Self> {
        let arcs: Vec<_> = edges.iter().flat_map(|&(u, v, w)| [(u, v, w), (v, u, w)]).collect();
        EdgeListGraph::from_arcs(abb, n, &arcs)
    }

    pub fn from_grid(abb: &mut Abb, g: &GridGraph) -> Result<Self> {
        EdgeListGraph::from_arcs(abb, g.num_vertices(), &g.arcs())
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn num_arcs(&self) -> usize {
        self.targets.len()
    }

    pub fn sources(&self) -> &[usize] {
        &self.sources
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    pub fn weights(&self) -> &SecretVector {
        &self.weights
    }

    pub fn max_in_degree(&self) -> usize {
        let mut deg = vec![0; self.n];
        for &t in &self.targets {
            deg[t] += 1;
        }
        deg.into_iter().max().unwrap_or(0)
    }
}

/// Gather order and segment lengths that put `D[v]` in front of the
/// relaxed in-edge values of `v`, for every `v`.
fn sweep_layout(g: &EdgeListGraph) -> (Vec<usize>, Vec<usize>) {
    let n = g.n;
    let mut order = Vec::with_capacity(n + g.num_arcs());
    let mut segments = Vec::with_capacity(n);
    let mut j = 0;
    for v in 0..n {
        order.push(v);
        let start = j;
        while j < g.targets.len() && g.targets[j] == v {
            order.push(n + j);
            j += 1;
        }
        segments.push(1 + j - start);
    }
    (order, segments)
}

/// One relaxation sweep: `D'[v] = min(D[v], min_{S[j]→v} D[S[j]] + W[j])`.
pub(crate) fn relax(abb: &mut Abb, g: &EdgeListGraph, d: &SecretVector, layout: &(Vec<usize>, Vec<usize>)) -> Result<SecretVector> {
    let reach = d.gather(&g.sources);
    let cand = abb.add(&reach, &g.weights)?;
    let pool = abb.concat(&[d, &cand]).gather(&layout.0);
    abb.min_segmented(&pool, &layout.1)
}

#[derive(Clone, Debug)]
pub struct BfRun {
    pub distances: DistanceVector,
    /// Sweeps actually executed.
    pub sweeps: usize,
    /// Sweeps a full run needs: `n - 1`.
    pub full_sweeps: usize,
    /// Cost of the executed sweeps.
    pub ledger: CostLedger,
    /// Cost of one sweep; every sweep costs the same.
    pub per_sweep: CostLedger,
}

impl BfRun {
    pub fn is_complete(&self) -> bool {
        self.sweeps == self.full_sweeps
    }

    /// The executed cost scaled up to a full run. Every sweep costs the same,
    /// so this is exact for a sampled run.
    pub fn projected_ledger(&self) -> CostLedger {
        if self.is_complete() {
            return self.ledger.clone();
        }
        self.per_sweep.scaled(self.full_sweeps as u64)
    }
}

/// Single-source shortest distances by `n - 1` sweeps, or at most
/// `max_sweeps` when sampling cost. Declassifies exactly once.
pub fn bellman_ford_public(
    abb: &mut Abb,
    g: &EdgeListGraph,
    source: usize,
    max_sweeps: Option<usize>,
) -> Result<BfRun> {
    let n = g.n;
    if source >= n {
        return Err(Error::VertexOutOfRange { vertex: source, n });
    }
    let before = abb.ledger().clone();
    let mut init = vec![Weight::INF; n];
    init[source] = Weight::ZERO;
    let mut d = abb.constant(&init);
    let full = n - 1;
    let sweeps = max_sweeps.map_or(full, |m| m.min(full));
    let layout = sweep_layout(g);
    abb.observe("bf.sources", &g.sources);
    abb.observe("bf.segments", &layout.1);
    let mut per_sweep = CostLedger::new();
    for i in 0..sweeps {
        d = relax(abb, g, &d, &layout)?;
        if i == 0 {
            per_sweep = abb.ledger().since(&before);
        }
    }
    let distances = abb.reveal(&d);
    Ok(BfRun {
        distances: DistanceVector(distances),
        sweeps,
        full_sweeps: full,
        ledger: abb.ledger().since(&before),
        per_sweep,
    })
}

/// Cleartext Dijkstra over directed arcs.
pub fn dijkstra_oracle(n: usize, arcs: &[(usize, usize, Weight)], source: usize) -> Result<DistanceVector> {
    if source >= n {
        return Err(Error::VertexOutOfRange { vertex: source, n });
    }
    let mut adj = vec![Vec::new(); n];
    for &(u, v, w) in arcs {
        if u >= n || v >= n {
            return Err(Error::VertexOutOfRange { vertex: u.max(v), n });
        }
        adj[u].push((v, w));
    }
    let mut dist = vec![Weight::INF; n];
    dist[source] = Weight::ZERO;
    let mut heap = BinaryHeap::from([Reverse((Weight::ZERO, source))]);
    while let Some(Reverse((d, u))) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        for &(v, w) in &adj[u] {
            let nd = d.times(w);
            if nd < dist[v] {
                dist[v] = nd;
                heap.push(Reverse((nd, v)));
            }
        }
    }
    Ok(DistanceVector(dist))
}

/// Textbook Floyd-Warshall closure; the diagonal becomes zero.
pub fn dense_closure_oracle(grid: &[Vec<Weight>]) -> Result<Vec<Vec<Weight>>> {
    let n = grid.len();
    if grid.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension("closure of a non-square grid".into()));
    }
    let mut d = grid.to_vec();
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = Weight::ZERO;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k].times(d[k][j]);
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    Ok(d)
}

/// Textbook min-plus product.
pub fn dense_minplus_oracle(a: &[Vec<Weight>], b: &[Vec<Weight>]) -> Result<Vec<Vec<Weight>>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    if a.iter().any(|r| r.len() != inner) || b.iter().any(|r| r.len() != cols) {
        return Err(Error::Dimension("min-plus product of incompatible grids".into()));
    }
    Ok(a
        .iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner)
                        .map(|k| row[k].times(b[k][j]))
                        .fold(Weight::INF, Weight::plus)
                })
                .collect()
        })
        .collect())
}
