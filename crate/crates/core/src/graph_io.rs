//! Plain-text graph files.
//!
//! Two layouts share one reader. A grid file starts with `grid R C m`, an
//! edge-list file with `n m`; both continue with `m` lines `u v w`. Edges
//! are undirected. Blank lines and `#` comments are skipped.
//!
//! ```text
//! grid 1 2 1
//! 0 1 7
//! ```

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::separator::{grid_generate, GridGraph};
use crate::weight::Weight;

pub type Edge = (usize, usize, Weight);

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphFile {
    Grid(GridGraph),
    EdgeList { n: usize, edges: Vec<Edge> },
}

impl GraphFile {
    pub fn num_vertices(&self) -> usize {
        match self {
            GraphFile::Grid(g) => g.num_vertices(),
            GraphFile::EdgeList { n, .. } => *n,
        }
    }

    /// Undirected edges.
    pub fn edges(&self) -> Vec<Edge> {
        match self {
            GraphFile::Grid(g) => g
                .edges
                .iter()
                .zip(&g.weights)
                .map(|(&(u, v), &w)| (u, v, w))
                .collect(),
            GraphFile::EdgeList { edges, .. } => edges.clone(),
        }
    }

    /// Both orientations of every edge.
    pub fn arcs(&self) -> Vec<Edge> {
        self.edges()
            .into_iter()
            .flat_map(|(u, v, w)| [(u, v, w), (v, u, w)])
            .collect()
    }

    pub fn as_grid(&self) -> Option<&GridGraph> {
        match self {
            GraphFile::Grid(g) => Some(g),
            GraphFile::EdgeList { .. } => None,
        }
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn field<T: FromStr>(line: usize, tok: &str, what: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("bad {what} {tok:?}")))
}

impl FromStr for GraphFile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hl, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
        let head: Vec<&str> = header.split_whitespace().collect();
        let (grid, n, m) = match head[..] {
            ["grid", r, c, m] => {
                let r: usize = field(hl, r, "row count")?;
                let c: usize = field(hl, c, "column count")?;
                if r == 0 || c == 0 {
                    return Err(parse_err(hl, "grid needs at least one row and column"));
                }
                (Some((r, c)), r * c, field(hl, m, "edge count")?)
            }
            [n, m] => (None, field(hl, n, "vertex count")?, field(hl, m, "edge count")?),
            _ => return Err(parse_err(hl, "header must be `grid R C m` or `n m`")),
        };
        let mut edges = Vec::with_capacity(m);
        for (ln, l) in lines {
            let t: Vec<&str> = l.split_whitespace().collect();
            let [u, v, w] = t[..] else {
                return Err(parse_err(ln, "edge must be `u v w`"));
            };
            let u: usize = field(ln, u, "endpoint")?;
            let v: usize = field(ln, v, "endpoint")?;
            let w: Weight = w.parse().map_err(|e: Error| parse_err(ln, e.to_string()))?;
            if u >= n || v >= n {
                return Err(parse_err(ln, format!("endpoint outside 0..{n}")));
            }
            if w.is_inf() {
                return Err(parse_err(ln, "edge weight must be finite"));
            }
            edges.push((ln, u, v, w));
        }
        if edges.len() != m {
            return Err(parse_err(hl, format!("header announces {m} edges, found {}", edges.len())));
        }
        let Some((rows, cols)) = grid else {
            return Ok(GraphFile::EdgeList {
                n,
                edges: edges.into_iter().map(|(_, u, v, w)| (u, v, w)).collect(),
            });
        };
        let mut g = grid_generate(rows, cols, 1, 1, 0)?;
        let slot: HashMap<(usize, usize), usize> =
            g.edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut seen = vec![false; g.edges.len()];
        for (ln, u, v, w) in edges {
            let i = *slot
                .get(&(u.min(v), u.max(v)))
                .ok_or_else(|| parse_err(ln, format!("{u}-{v} is not a grid edge")))?;
            if std::mem::replace(&mut seen[i], true) {
                return Err(parse_err(ln, format!("grid edge {u}-{v} listed twice")));
            }
            g.weights[i] = w;
        }
        if seen.iter().any(|s| !s) {
            return Err(parse_err(hl, "grid file misses edges"));
        }
        Ok(GraphFile::Grid(g))
    }
}

impl fmt::Display for GraphFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphFile::Grid(g) => writeln!(f, "grid {} {} {}", g.rows, g.cols, g.num_edges())?,
            GraphFile::EdgeList { n, edges } => writeln!(f, "{n} {}", edges.len())?,
        }
        for (u, v, w) in self.edges() {
            writeln!(f, "{u} {v} {w}")?;
        }
        Ok(())
    }
}

/// `m` distinct undirected edges without self-loops on `n` vertices, weights
/// uniform in `[low, high]`. Deterministic per seed.
pub fn random_edge_list(n: usize, m: usize, low: u64, high: u64, seed: u64) -> Result<Vec<Edge>> {
    let max = n * n.saturating_sub(1) / 2;
    if m > max {
        return Err(Error::InvalidArgument(format!("{m} edges do not fit {n} vertices")));
    }
    if low > high || high >= Weight::INF.raw() {
        return Err(Error::InvalidArgument(format!("invalid weight range [{low}, {high}]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(usize, usize)> = if 2 * m > max {
        let mut all: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        all.shuffle(&mut rng);
        all.truncate(m);
        all
    } else {
        let mut seen = HashSet::with_capacity(m);
        let mut out = Vec::with_capacity(m);
        while out.len() < m {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u != v && seen.insert((u.min(v), u.max(v))) {
                out.push((u, v));
            }
        }
        out
    };
    Ok(pairs
        .into_iter()
        .map(|(u, v)| (u, v, Weight::new(rng.gen_range(low..=high))))
        .collect())
}
