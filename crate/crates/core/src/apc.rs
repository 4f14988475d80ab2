//! Algebraic path computation over the min-plus semiring.
//!
//! The permuted adjacency matrix is eliminated one separator level at a
//! time. With the current matrix split as `[[X, Yᵀ], [Y, Z]]`, where `X`
//! holds the vertices of the current level, the closure factors as
//!
//! ```text
//! A* = [[I, X*Yᵀ], [O, I]] · diag(X*, A'*) · [[I, O], [Y X*, I]]
//! A' = Z ⊕ Y X* Yᵀ
//! ```
//!
//! `X` is block diagonal by construction of the plan, so `X*` is a batch of
//! small dense closures. Only the source row is ever multiplied through, so
//! the work per level is a handful of sparse products plus one closure
//! batch.

use crate::abb::{Abb, CostLedger, SecretVector};
use crate::error::{Error, Result};
use crate::separator::{adjacency_sparse, build_separator_plan, GridGraph, SeparatorPlan};
use crate::sparse::{
    concat_entries, first_normalize, get_lower, get_slice, get_upper, normalize, overlap, overlay,
    transpose, DenseGrid, SparseMatrix,
};
use crate::weight::{DistanceVector, Weight};

/// The four quadrants of a square matrix split after `k` rows and columns.
#[derive(Clone, Debug)]
pub struct FactorBlocks {
    /// `A[0..k, 0..k]`
    pub x: SparseMatrix,
    /// `A[0..k, k..n]`
    pub yt: SparseMatrix,
    /// `A[k..n, 0..k]`
    pub y: SparseMatrix,
    /// `A[k..n, k..n]`
    pub z: SparseMatrix,
}

pub fn factorize(a: &SparseMatrix, k: usize) -> Result<FactorBlocks> {
    let n = a.num_rows();
    if a.num_cols() != n {
        return Err(Error::Dimension(format!("factorize needs a square matrix, got {}x{}", n, a.num_cols())));
    }
    if k > n {
        return Err(Error::Dimension(format!("split {k} exceeds order {n}")));
    }
    Ok(FactorBlocks {
        x: get_slice(a, 0, 0, k, k)?,
        yt: get_slice(a, 0, k, k, n - k)?,
        y: get_slice(a, k, 0, n - k, k)?,
        z: get_slice(a, k, k, n - k, n - k)?,
    })
}

/// Min-plus product `X ⊗ Y`.
///
/// `X` is viewed column-major (transpose, then sort) and merged against the
/// rows of `Y`. Every matching pair becomes one candidate entry; all
/// candidates are added in one batch and folded by normalization.
pub fn sum_sparse(abb: &mut Abb, x: &SparseMatrix, y: &SparseMatrix) -> Result<SparseMatrix> {
    if x.num_cols() != y.num_rows() {
        return Err(Error::Dimension(format!(
            "product of {}x{} and {}x{}",
            x.num_rows(),
            x.num_cols(),
            y.num_rows(),
            y.num_cols()
        )));
    }
    if !x.is_normalized() || !y.is_normalized() {
        return Err(Error::NotNormalized("normalized operands"));
    }
    let xt = first_normalize(&transpose(x));
    let (xk, xi) = (xt.rows(), xt.cols());
    let (yk, yj) = (y.rows(), y.cols());
    let mut left = Vec::new();
    let mut right = Vec::new();
    let mut rows = Vec::new();
    let mut cols = Vec::new();
    let (mut p, mut q) = (0, 0);
    while p < xk.len() && q < yk.len() {
        if xk[p] < yk[q] {
            p += 1;
        } else if xk[p] > yk[q] {
            q += 1;
        } else {
            let key = xk[p];
            let p_end = p + xk[p..].iter().take_while(|&&v| v == key).count();
            let q_end = q + yk[q..].iter().take_while(|&&v| v == key).count();
            for (a, &i) in (p..p_end).zip(&xi[p..p_end]) {
                for (b, &j) in (q..q_end).zip(&yj[q..q_end]) {
                    left.push(a);
                    right.push(b);
                    rows.push(i);
                    cols.push(j);
                }
            }
            p = p_end;
            q = q_end;
        }
    }
    let weights = abb.add(&xt.weights().gather(&left), &y.weights().gather(&right))?;
    let candidates = SparseMatrix::new(x.num_rows(), y.num_cols(), rows, cols, weights)?;
    normalize(abb, &candidates)
}

/// Pointwise `X ⊕ Y`.
pub fn min_sparse(abb: &mut Abb, x: &SparseMatrix, y: &SparseMatrix) -> Result<SparseMatrix> {
    if x.num_rows() != y.num_rows() || x.num_cols() != y.num_cols() {
        return Err(Error::Dimension(format!(
            "min of {}x{} and {}x{}",
            x.num_rows(),
            x.num_cols(),
            y.num_rows(),
            y.num_cols()
        )));
    }
    let joined = concat_entries(abb, x, y);
    normalize(abb, &joined)
}

/// Batched closure of square blocks packed back to back in `cells`.
///
/// Pivot `p` is one comparison batch across every block larger than `p`.
/// Diagonal cells are pinned to zero (weights are nonnegative) and the
/// pivot's own row and column cannot change, so they are left out.
fn closure_packed(abb: &mut Abb, mut cells: SecretVector, sizes: &[usize]) -> Result<SecretVector> {
    let offsets: Vec<usize> = sizes
        .iter()
        .scan(0, |acc, &s| {
            let o = *acc;
            *acc += s * s;
            Some(o)
        })
        .collect();
    // Zero the diagonals.
    let zero = abb.constant(&[Weight::ZERO]);
    let mut pick: Vec<usize> = (0..cells.len()).collect();
    for (&s, &o) in sizes.iter().zip(&offsets) {
        for d in 0..s {
            pick[o + d * s + d] = cells.len();
        }
    }
    cells = abb.concat(&[&cells, &zero]).gather(&pick);

    let largest = sizes.iter().copied().max().unwrap_or(0);
    for p in 0..largest {
        let (mut tgt, mut via_l, mut via_r) = (Vec::new(), Vec::new(), Vec::new());
        for (&s, &o) in sizes.iter().zip(&offsets) {
            if p >= s {
                continue;
            }
            for i in (0..s).filter(|&i| i != p) {
                for j in (0..s).filter(|&j| j != p && j != i) {
                    tgt.push(o + i * s + j);
                    via_l.push(o + i * s + p);
                    via_r.push(o + p * s + j);
                }
            }
        }
        if tgt.is_empty() {
            continue;
        }
        let through = abb.add(&cells.gather(&via_l), &cells.gather(&via_r))?;
        let relaxed = abb.min_pairwise_as("floyd_warshall", &cells.gather(&tgt), &through)?;
        let mut pick: Vec<usize> = (0..cells.len()).collect();
        for (k, &t) in tgt.iter().enumerate() {
            pick[t] = cells.len() + k;
        }
        cells = abb.concat(&[&cells, &relaxed]).gather(&pick);
    }
    Ok(cells)
}

/// Min-plus closure of every block, all blocks advancing one pivot per
/// batch. Rounds depend on the largest block only.
pub fn floyd_warshall_batch(abb: &mut Abb, blocks: &[DenseGrid]) -> Result<Vec<DenseGrid>> {
    if let Some(b) = blocks.iter().find(|b| b.num_rows != b.num_cols) {
        return Err(Error::Dimension(format!("non-square block {}x{}", b.num_rows, b.num_cols)));
    }
    let sizes: Vec<usize> = blocks.iter().map(|b| b.num_rows).collect();
    let parts: Vec<&SecretVector> = blocks.iter().map(|b| &b.cells).collect();
    let packed = abb.concat(&parts);
    let closed = closure_packed(abb, packed, &sizes)?;
    let mut start = 0;
    Ok(sizes
        .iter()
        .map(|&s| {
            let idx: Vec<usize> = (start..start + s * s).collect();
            start += s * s;
            DenseGrid {
                num_rows: s,
                num_cols: s,
                cells: closed.gather(&idx),
            }
        })
        .collect())
}

/// Closure of a block-diagonal matrix with the given public block sizes.
///
/// Each block is densified, closed in one batch, and packed back into
/// sparse form. The output keeps exactly the pairs that are connected in
/// the block's public sparsity pattern (plus the diagonal), so its
/// structure never depends on weights.
pub fn block_diag_quasi_inverse(abb: &mut Abb, a: &SparseMatrix, block_sizes: &[usize]) -> Result<SparseMatrix> {
    let n = a.num_rows();
    if a.num_cols() != n {
        return Err(Error::Dimension(format!("closure of non-square {}x{}", n, a.num_cols())));
    }
    if block_sizes.iter().sum::<usize>() != n {
        return Err(Error::Plan(format!(
            "block sizes sum to {}, matrix order is {n}",
            block_sizes.iter().sum::<usize>()
        )));
    }
    if !a.is_normalized() {
        return Err(Error::NotNormalized("normalized operand"));
    }
    let mut block_of = Vec::with_capacity(n);
    let mut start = Vec::with_capacity(block_sizes.len());
    for (b, &s) in block_sizes.iter().enumerate() {
        start.push(block_of.len());
        block_of.extend(std::iter::repeat(b).take(s));
    }
    let offsets: Vec<usize> = block_sizes
        .iter()
        .scan(0, |acc, &s| {
            let o = *acc;
            *acc += s * s;
            Some(o)
        })
        .collect();
    let total: usize = block_sizes.iter().map(|s| s * s).sum();
    let cell = |r: usize, c: usize| {
        let b = block_of[r];
        let s = block_sizes[b];
        offsets[b] + (r - start[b]) * s + (c - start[b])
    };

    let mut pick = vec![a.nnz(); total];
    let mut reach = vec![false; total];
    for (i, (r, c)) in a.coords().enumerate() {
        if block_of[r] != block_of[c] {
            return Err(Error::Structure(format!("entry ({r}, {c}) lies outside the diagonal blocks")));
        }
        pick[cell(r, c)] = i;
        reach[cell(r, c)] = true;
    }
    let inf = abb.constant(&[Weight::INF]);
    let packed = abb.concat(&[a.weights(), &inf]).gather(&pick);
    let closed = closure_packed(abb, packed, block_sizes)?;

    // Public reachability inside each block decides the output pattern.
    for (&s, &o) in block_sizes.iter().zip(&offsets) {
        for d in 0..s {
            reach[o + d * s + d] = true;
        }
        for p in 0..s {
            for i in 0..s {
                if reach[o + i * s + p] {
                    for j in 0..s {
                        if reach[o + p * s + j] {
                            reach[o + i * s + j] = true;
                        }
                    }
                }
            }
        }
    }
    let (mut rows, mut cols, mut keep) = (Vec::new(), Vec::new(), Vec::new());
    for r in 0..n {
        let b = block_of[r];
        for c in start[b]..start[b] + block_sizes[b] {
            if reach[cell(r, c)] {
                rows.push(r);
                cols.push(c);
                keep.push(cell(r, c));
            }
        }
    }
    SparseMatrix::new(n, n, rows, cols, closed.gather(&keep))
}

/// Public facts about one elimination level.
#[derive(Clone, Debug)]
pub struct LevelTrace {
    pub level: usize,
    /// Order of the matrix entering the level.
    pub order: usize,
    pub eliminated: usize,
    pub blocks: Vec<usize>,
    pub nnz: usize,
    /// Ledger rounds charged while the level's own work ran, excluding the
    /// deeper levels.
    pub rounds: u64,
    /// The reduced matrix handed to the next level, kept only on request.
    pub schur: Option<SparseMatrix>,
}

/// Elimination schedule and bookkeeping for one run.
struct Recursion<'a> {
    separator_sizes: &'a [usize],
    block_sizes: &'a [usize],
    cursor: usize,
    keep_schur: bool,
    levels: Vec<LevelTrace>,
}

impl Recursion<'_> {
    fn take_blocks(&mut self, level: usize) -> Result<Vec<usize>> {
        let want = self.separator_sizes[level];
        let mut blocks = Vec::new();
        let mut acc = 0;
        while acc < want {
            let b = *self.block_sizes.get(self.cursor).ok_or_else(|| {
                Error::Plan(format!("block sizes exhausted at level {level}"))
            })?;
            self.cursor += 1;
            acc += b;
            blocks.push(b);
        }
        if acc != want {
            return Err(Error::Plan(format!(
                "blocks at level {level} cover {acc} vertices, expected {want}"
            )));
        }
        Ok(blocks)
    }

    fn run(&mut self, abb: &mut Abb, level: usize, a: &SparseMatrix, v: &SparseMatrix) -> Result<SparseMatrix> {
        let n = a.num_rows();
        let mark = abb.ledger().rounds();
        let slot = self.levels.len();
        let blocks = self.take_blocks(level)?;
        self.levels.push(LevelTrace {
            level,
            order: n,
            eliminated: self.separator_sizes[level],
            blocks: blocks.clone(),
            nnz: a.nnz(),
            rounds: 0,
            schur: None,
        });

        if level + 1 == self.separator_sizes.len() {
            if self.separator_sizes[level] != n {
                return Err(Error::Plan(format!(
                    "terminal level covers {} of {n} vertices",
                    self.separator_sizes[level]
                )));
            }
            let closed = block_diag_quasi_inverse(abb, a, &[n])?;
            let out = sum_sparse(abb, v, &closed)?;
            self.levels[slot].rounds = abb.ledger().rounds() - mark;
            return Ok(out);
        }

        let col = self.separator_sizes[level];
        let f = factorize(a, col)?;
        let x_star = block_diag_quasi_inverse(abb, &f.x, &blocks)?;
        let wh = sum_sparse(abb, &f.y, &x_star)?;
        let res2 = first_normalize(&transpose(&wh));
        let res3 = sum_sparse(abb, &wh, &f.yt)?;
        let ah = min_sparse(abb, &f.z, &res3)?;
        let upper = get_upper(abb, n, &res2)?;
        let lower = get_lower(abb, n, &wh)?;
        let v1 = sum_sparse(abb, v, &upper)?;
        let v1_head = get_slice(&v1, 0, 0, 1, col)?;
        let v1_tail = get_slice(&v1, 0, col, 1, n - col)?;
        let v2_head = sum_sparse(abb, &v1_head, &x_star)?;
        if self.keep_schur {
            self.levels[slot].schur = Some(ah.clone());
        }
        let own = abb.ledger().rounds() - mark;

        let v2_tail = self.run(abb, level + 1, &ah, &v1_tail)?;

        let mark = abb.ledger().rounds();
        let v2 = overlap(
            abb,
            &overlay(&v2_head, 0, v1.num_cols() - col),
            &overlay(&v2_tail, col, 0),
        )?;
        let out = sum_sparse(abb, &v2, &lower)?;
        self.levels[slot].rounds = own + abb.ledger().rounds() - mark;
        Ok(out)
    }
}

/// `v ⊗ A*` for a row vector `v`, following the elimination schedule
/// `separator_sizes` / `block_sizes`. Returns the product and one trace
/// entry per level.
pub fn algebraic_paths(
    abb: &mut Abb,
    a: &SparseMatrix,
    v: &SparseMatrix,
    separator_sizes: &[usize],
    block_sizes: &[usize],
    keep_schur: bool,
) -> Result<(SparseMatrix, Vec<LevelTrace>)> {
    let n = a.num_rows();
    if a.num_cols() != n || !a.is_normalized() {
        return Err(Error::Structure("path matrix must be square and normalized".into()));
    }
    if v.num_rows() != 1 || v.num_cols() != n {
        return Err(Error::Dimension(format!(
            "path vector is {}x{}, expected 1x{n}",
            v.num_rows(),
            v.num_cols()
        )));
    }
    if separator_sizes.is_empty() || separator_sizes.iter().sum::<usize>() != n {
        return Err(Error::Plan(format!(
            "level sizes sum to {}, matrix order is {n}",
            separator_sizes.iter().sum::<usize>()
        )));
    }
    let mut rec = Recursion {
        separator_sizes,
        block_sizes,
        cursor: 0,
        keep_schur,
        levels: Vec::new(),
    };
    let out = rec.run(abb, 0, a, v)?;
    if rec.cursor != block_sizes.len() {
        return Err(Error::Plan(format!(
            "{} block sizes left unused",
            block_sizes.len() - rec.cursor
        )));
    }
    Ok((out, rec.levels))
}

#[derive(Clone, Debug)]
pub struct ApcRun {
    pub distances: DistanceVector,
    pub depth: usize,
    /// Cost of the protocol proper; input sharing is not metered.
    pub ledger: CostLedger,
    pub levels: Vec<LevelTrace>,
}

/// Single-source shortest distances on a grid. Declassifies exactly once.
pub fn sssd_apc(abb: &mut Abb, g: &GridGraph, source: usize) -> Result<ApcRun> {
    let plan = build_separator_plan(g.rows, g.cols)?;
    sssd_apc_with_plan(abb, g, &plan, source, false)
}

pub fn sssd_apc_with_plan(
    abb: &mut Abb,
    g: &GridGraph,
    plan: &SeparatorPlan,
    source: usize,
    keep_schur: bool,
) -> Result<ApcRun> {
    let n = g.num_vertices();
    if source >= n {
        return Err(Error::VertexOutOfRange { vertex: source, n });
    }
    let before = abb.ledger().clone();
    let a = adjacency_sparse(abb, g, plan)?;
    let unit = abb.constant(&[Weight::ZERO]);
    let v = SparseMatrix::new(1, n, vec![0], vec![plan.position[source]], unit)?;
    let (row, levels) = algebraic_paths(abb, &a, &v, &plan.separator_sizes, &plan.block_sizes, keep_schur)?;
    abb.observe("apc.result", row.cols());
    let values = abb.reveal(row.weights());
    let mut distances = vec![Weight::INF; n];
    for (&p, w) in row.cols().iter().zip(values) {
        distances[plan.order[p]] = w;
    }
    Ok(ApcRun {
        distances: DistanceVector(distances),
        depth: plan.depth,
        ledger: abb.ledger().since(&before),
        levels,
    })
}
