//! Grid graphs and the public separator-tree plan.
//!
//! The plan is computed from public structure only. A region of the grid is
//! bisected by its central row or column (alternating with recursion depth)
//! until parts hold at most `n0` vertices. Every tree node owns one block of
//! vertices: a leaf owns its whole region, an inner node owns its separator
//! line. A node's level is its height in the tree, so all leaves are
//! eliminated first and a separator is eliminated one level after the
//! tallest subtree it separates. Blocks on one level never touch each other
//! in the partially eliminated matrix, which is what makes the
//! block-diagonal quasi-inverse exact.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::abb::Abb;
use crate::error::{Error, Result};
use crate::sparse::SparseMatrix;
use crate::weight::Weight;

pub const DEFAULT_LEAF_SIZE: usize = 3;

/// An undirected 4-neighbour `rows × cols` grid. Vertex `(r, c)` has id
/// `r · cols + c`. Weights are the data owners' plaintext inputs, aligned
/// with `edges`; they enter the black box when a protocol shares them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridGraph {
    pub rows: usize,
    pub cols: usize,
    pub edges: Vec<(usize, usize)>,
    pub weights: Vec<Weight>,
}

impl GridGraph {
    pub fn num_vertices(&self) -> usize {
        self.rows * self.cols
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Both orientations of every edge, as `(source, target, weight)`.
    pub fn arcs(&self) -> Vec<(usize, usize, Weight)> {
        self.edges
            .iter()
            .zip(&self.weights)
            .flat_map(|(&(u, v), &w)| [(u, v, w), (v, u, w)])
            .collect()
    }

    /// The same grid with every weight replaced; the structure is unchanged.
    pub fn with_weights(&self, weights: Vec<Weight>) -> Result<GridGraph> {
        if weights.len() != self.edges.len() {
            return Err(Error::LengthMismatch {
                left: weights.len(),
                right: self.edges.len(),
            });
        }
        Ok(GridGraph {
            weights,
            ..self.clone()
        })
    }
}

/// Deterministic grid with weights drawn uniformly from `[low, high]`.
pub fn grid_generate(rows: usize, cols: usize, low: u64, high: u64, seed: u64) -> Result<GridGraph> {
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidArgument(format!("grid {rows}x{cols} has no vertices")));
    }
    if low == 0 || low > high || high >= Weight::INF.raw() {
        return Err(Error::InvalidArgument(format!("invalid weight range [{low}, {high}]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::with_capacity(2 * rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                edges.push((v, v + 1));
            }
            if r + 1 < rows {
                edges.push((v, v + cols));
            }
        }
    }
    let weights = edges
        .iter()
        .map(|_| Weight::new(rng.gen_range(low..=high)))
        .collect();
    Ok(GridGraph {
        rows,
        cols,
        edges,
        weights,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// The separator is one grid row.
    Row,
    /// The separator is one grid column.
    Column,
}

/// An axis-aligned sub-rectangle of the grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Region {
    pub row: usize,
    pub col: usize,
    pub rows: usize,
    pub cols: usize,
}

impl Region {
    pub fn size(&self) -> usize {
        self.rows * self.cols
    }

    fn vertices(&self, grid_cols: usize) -> Vec<usize> {
        (self.row..self.row + self.rows)
            .flat_map(|r| (self.col..self.col + self.cols).map(move |c| r * grid_cols + c))
            .collect()
    }
}

/// One bisection step, kept for inspecting balance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cut {
    pub region: Region,
    pub orientation: Orientation,
    pub separator: usize,
    pub parts: [usize; 2],
    pub level: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatorPlan {
    pub rows: usize,
    pub cols: usize,
    pub leaf_size: usize,
    /// `order[p]` is the vertex placed at row/column `p` of the permuted
    /// matrix.
    pub order: Vec<usize>,
    /// Inverse of `order`.
    pub position: Vec<usize>,
    /// Vertices eliminated at each level; the last entry is the terminal
    /// block.
    pub separator_sizes: Vec<usize>,
    /// Diagonal block sizes, level by level.
    pub block_sizes: Vec<usize>,
    /// Number of levels the main recursion executes, terminal level included.
    pub depth: usize,
    pub cuts: Vec<Cut>,
}

struct Node {
    level: usize,
    block: Vec<usize>,
}

fn bisect(
    region: Region,
    parity: usize,
    grid_cols: usize,
    leaf_size: usize,
    nodes: &mut Vec<Node>,
    cuts: &mut Vec<Cut>,
) -> usize {
    if region.size() <= leaf_size {
        nodes.push(Node {
            level: 0,
            block: region.vertices(grid_cols),
        });
        return 0;
    }
    // Alternate by depth, but never cut along a dimension of extent one.
    let orientation = match (parity % 2 == 0, region.rows, region.cols) {
        (true, 1, _) => Orientation::Column,
        (false, _, 1) => Orientation::Row,
        (true, _, _) => Orientation::Row,
        (false, _, _) => Orientation::Column,
    };
    let (sep, first, second) = match orientation {
        Orientation::Row => {
            let mid = (region.rows - 1) / 2;
            (
                Region { row: region.row + mid, rows: 1, ..region },
                Region { rows: mid, ..region },
                Region {
                    row: region.row + mid + 1,
                    rows: region.rows - mid - 1,
                    ..region
                },
            )
        }
        Orientation::Column => {
            let mid = (region.cols - 1) / 2;
            (
                Region { col: region.col + mid, cols: 1, ..region },
                Region { cols: mid, ..region },
                Region {
                    col: region.col + mid + 1,
                    cols: region.cols - mid - 1,
                    ..region
                },
            )
        }
    };
    let slot = nodes.len();
    nodes.push(Node {
        level: 0,
        block: sep.vertices(grid_cols),
    });
    let cut_slot = cuts.len();
    cuts.push(Cut {
        region,
        orientation,
        separator: sep.size(),
        parts: [first.size(), second.size()],
        level: 0,
    });
    let mut height = 0;
    for part in [first, second] {
        if part.size() > 0 {
            height = height.max(bisect(part, parity + 1, grid_cols, leaf_size, nodes, cuts));
        }
    }
    nodes[slot].level = height + 1;
    cuts[cut_slot].level = height + 1;
    height + 1
}

/// Plan with the default leaf size.
pub fn build_separator_plan(rows: usize, cols: usize) -> Result<SeparatorPlan> {
    build_separator_plan_with(rows, cols, DEFAULT_LEAF_SIZE)
}

pub fn build_separator_plan_with(rows: usize, cols: usize, leaf_size: usize) -> Result<SeparatorPlan> {
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidArgument(format!("grid {rows}x{cols} has no vertices")));
    }
    if leaf_size == 0 {
        return Err(Error::InvalidArgument("leaf size must be at least 1".into()));
    }
    let mut nodes = Vec::new();
    let mut cuts = Vec::new();
    let root = Region { row: 0, col: 0, rows, cols };
    let top = bisect(root, 0, cols, leaf_size, &mut nodes, &mut cuts);
    let depth = top + 1;

    // Stable: blocks of one level keep depth-first order.
    nodes.sort_by_key(|n| n.level);
    let mut order = Vec::with_capacity(rows * cols);
    let mut separator_sizes = vec![0; depth];
    let mut block_sizes = Vec::with_capacity(nodes.len());
    for n in &nodes {
        order.extend_from_slice(&n.block);
        separator_sizes[n.level] += n.block.len();
        block_sizes.push(n.block.len());
    }
    let mut position = vec![0; order.len()];
    for (p, &v) in order.iter().enumerate() {
        position[v] = p;
    }
    Ok(SeparatorPlan {
        rows,
        cols,
        leaf_size,
        order,
        position,
        separator_sizes,
        block_sizes,
        depth,
        cuts,
    })
}

impl SeparatorPlan {
    pub fn num_vertices(&self) -> usize {
        self.rows * self.cols
    }
}

impl fmt::Display for SeparatorPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
        writeln!(f, "grid {} {}", self.rows, self.cols)?;
        writeln!(f, "leaf_size {}", self.leaf_size)?;
        writeln!(f, "depth {}", self.depth)?;
        writeln!(f, "perm {}", join(&self.order))?;
        writeln!(f, "ST {}", join(&self.separator_sizes))?;
        writeln!(f, "BS {}", join(&self.block_sizes))
    }
}

/// Symmetric adjacency matrix of `g` relabelled by the plan's permutation,
/// with an explicit zero on the diagonal. Normalized.
pub fn adjacency_sparse(abb: &mut Abb, g: &GridGraph, plan: &SeparatorPlan) -> Result<SparseMatrix> {
    if plan.rows != g.rows || plan.cols != g.cols {
        return Err(Error::Dimension(format!(
            "plan for {}x{} applied to {}x{} grid",
            plan.rows, plan.cols, g.rows, g.cols
        )));
    }
    let n = g.num_vertices();
    let m = g.num_edges();
    let edge_w = abb.share(&g.weights)?;
    let zeros = abb.constant(&vec![Weight::ZERO; n]);
    let pool = abb.concat(&[&zeros, &edge_w]);
    let mut entries: Vec<(usize, usize, usize)> = Vec::with_capacity(n + 2 * m);
    entries.extend((0..n).map(|v| (plan.position[v], plan.position[v], v)));
    for (i, &(u, v)) in g.edges.iter().enumerate() {
        let (pu, pv) = (plan.position[u], plan.position[v]);
        entries.push((pu, pv, n + i));
        entries.push((pv, pu, n + i));
    }
    entries.sort_unstable();
    let weights = pool.gather(&entries.iter().map(|e| e.2).collect::<Vec<_>>());
    SparseMatrix::new(
        n,
        n,
        entries.iter().map(|e| e.0).collect(),
        entries.iter().map(|e| e.1).collect(),
        weights,
    )
}
