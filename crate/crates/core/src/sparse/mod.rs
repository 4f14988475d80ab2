//! Coordinate-form matrices with public structure and private weights.
//!
//! A [`SparseMatrix`] stores three aligned sequences: public row indices,
//! public column indices and a private [`SecretVector`] of weights. Absent
//! coordinates mean `INF`; a stored zero is a real entry. Every reshaping
//! operation here works on the public indices alone and moves the weights
//! with a public permutation or selection, so none of them communicates.
//! The one exception is [`second_normalize`], which folds duplicate
//! coordinates with a segmented minimum.

mod text;

pub use text::MatrixText;

use crate::abb::{Abb, SecretVector};
use crate::error::{Error, Result};
use crate::weight::Weight;

#[derive(Clone, Debug)]
pub struct SparseMatrix {
    rows: Vec<usize>,
    cols: Vec<usize>,
    weights: SecretVector,
    num_rows: usize,
    num_cols: usize,
}

impl SparseMatrix {
    pub fn new(
        num_rows: usize,
        num_cols: usize,
        rows: Vec<usize>,
        cols: Vec<usize>,
        weights: SecretVector,
    ) -> Result<Self> {
        if rows.len() != cols.len() || rows.len() != weights.len() {
            return Err(Error::Structure(format!(
                "coordinate streams disagree: {} rows, {} cols, {} weights",
                rows.len(),
                cols.len(),
                weights.len()
            )));
        }
        if let Some(i) = (0..rows.len()).find(|&i| rows[i] >= num_rows || cols[i] >= num_cols) {
            return Err(Error::Structure(format!(
                "entry ({}, {}) outside {num_rows}x{num_cols}",
                rows[i], cols[i]
            )));
        }
        Ok(SparseMatrix {
            rows,
            cols,
            weights,
            num_rows,
            num_cols,
        })
    }

    pub fn empty(abb: &mut Abb, num_rows: usize, num_cols: usize) -> Self {
        SparseMatrix {
            rows: Vec::new(),
            cols: Vec::new(),
            weights: abb.empty(),
            num_rows,
            num_cols,
        }
    }

    /// Shares plaintext `(row, col, weight)` triplets, in the given order.
    pub fn from_triplets(
        abb: &mut Abb,
        num_rows: usize,
        num_cols: usize,
        entries: &[(usize, usize, Weight)],
    ) -> Result<Self> {
        let w: Vec<Weight> = entries.iter().map(|e| e.2).collect();
        let weights = abb.share(&w)?;
        SparseMatrix::new(
            num_rows,
            num_cols,
            entries.iter().map(|e| e.0).collect(),
            entries.iter().map(|e| e.1).collect(),
            weights,
        )
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    pub fn weights(&self) -> &SecretVector {
        &self.weights
    }

    pub fn num_rows(&self) -> usize {
        self.num_rows
    }

    pub fn num_cols(&self) -> usize {
        self.num_cols
    }

    pub fn nnz(&self) -> usize {
        self.rows.len()
    }

    pub fn coords(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows.iter().copied().zip(self.cols.iter().copied())
    }

    /// Sorted by (row, column); duplicates allowed.
    pub fn is_first_normalized(&self) -> bool {
        self.coords()
            .zip(self.coords().skip(1))
            .all(|(a, b)| a <= b)
    }

    /// Strictly sorted by (row, column).
    pub fn is_normalized(&self) -> bool {
        self.coords().zip(self.coords().skip(1)).all(|(a, b)| a < b)
    }

    /// Opens the weights and returns plaintext triplets. Counts as a
    /// declassification.
    pub fn reveal_triplets(&self, abb: &mut Abb) -> Vec<(usize, usize, Weight)> {
        let w = abb.reveal(&self.weights);
        self.coords().zip(w).map(|((r, c), w)| (r, c, w)).collect()
    }

    /// Reorders entries by a public permutation.
    fn permuted(&self, order: &[usize]) -> SparseMatrix {
        SparseMatrix {
            rows: order.iter().map(|&i| self.rows[i]).collect(),
            cols: order.iter().map(|&i| self.cols[i]).collect(),
            weights: self.weights.gather(order),
            num_rows: self.num_rows,
            num_cols: self.num_cols,
        }
    }
}

/// A dense weight grid in row-major order; the private counterpart of a
/// `Vec<Vec<Weight>>`.
#[derive(Clone, Debug)]
pub struct DenseGrid {
    pub num_rows: usize,
    pub num_cols: usize,
    pub cells: SecretVector,
}

impl DenseGrid {
    pub fn reveal(&self, abb: &mut Abb) -> Vec<Vec<Weight>> {
        let flat = abb.reveal(&self.cells);
        if self.num_cols == 0 {
            return vec![Vec::new(); self.num_rows];
        }
        flat.chunks(self.num_cols).map(<[Weight]>::to_vec).collect()
    }
}

/// Stable sort of the entries by (row, column).
pub fn first_normalize(a: &SparseMatrix) -> SparseMatrix {
    if a.is_first_normalized() {
        return a.clone();
    }
    let mut order: Vec<usize> = (0..a.nnz()).collect();
    order.sort_by_key(|&i| (a.rows[i], a.cols[i]));
    a.permuted(&order)
}

/// Folds duplicate coordinates of a first-normalized matrix into a single
/// entry holding the minimum of their weights.
///
/// Runs of equal coordinates are found on the public key
/// `row · numC + col + 1` and reduced with one batched segmented minimum.
pub fn second_normalize(abb: &mut Abb, a: &SparseMatrix) -> Result<SparseMatrix> {
    if !a.is_first_normalized() {
        return Err(Error::NotNormalized("first-normalized"));
    }
    if a.nnz() == 0 {
        return Ok(a.clone());
    }
    let key: Vec<usize> = a
        .coords()
        .map(|(r, c)| r * a.num_cols + c + 1)
        .collect();
    let mut rows = Vec::new();
    let mut cols = Vec::new();
    let mut segments = Vec::new();
    for i in 0..key.len() {
        if i == 0 || key[i] != key[i - 1] {
            rows.push(a.rows[i]);
            cols.push(a.cols[i]);
            segments.push(0);
        }
        *segments.last_mut().unwrap() += 1;
    }
    let weights = abb.min_segmented(&a.weights, &segments)?;
    Ok(SparseMatrix {
        rows,
        cols,
        weights,
        num_rows: a.num_rows,
        num_cols: a.num_cols,
    })
}

/// Full normalization: sort, then fold duplicates.
pub fn normalize(abb: &mut Abb, a: &SparseMatrix) -> Result<SparseMatrix> {
    second_normalize(abb, &first_normalize(a))
}

/// Swaps the coordinate streams and dimensions. The result is not re-sorted.
pub fn transpose(a: &SparseMatrix) -> SparseMatrix {
    SparseMatrix {
        rows: a.cols.clone(),
        cols: a.rows.clone(),
        weights: a.weights.clone(),
        num_rows: a.num_cols,
        num_cols: a.num_rows,
    }
}

/// Keeps the `rows_keep × cols_keep` window starting at
/// `(rows_remove, cols_remove)` and re-indexes it to the origin.
pub fn get_slice(
    a: &SparseMatrix,
    rows_remove: usize,
    cols_remove: usize,
    rows_keep: usize,
    cols_keep: usize,
) -> Result<SparseMatrix> {
    if rows_remove + rows_keep > a.num_rows || cols_remove + cols_keep > a.num_cols {
        return Err(Error::Dimension(format!(
            "window ({rows_remove}, {cols_remove}) + {rows_keep}x{cols_keep} exceeds {}x{}",
            a.num_rows, a.num_cols
        )));
    }
    let keep: Vec<usize> = (0..a.nnz())
        .filter(|&i| {
            let (r, c) = (a.rows[i], a.cols[i]);
            r >= rows_remove
                && r < rows_remove + rows_keep
                && c >= cols_remove
                && c < cols_remove + cols_keep
        })
        .collect();
    Ok(SparseMatrix {
        rows: keep.iter().map(|&i| a.rows[i] - rows_remove).collect(),
        cols: keep.iter().map(|&i| a.cols[i] - cols_remove).collect(),
        weights: a.weights.gather(&keep),
        num_rows: rows_keep,
        num_cols: cols_keep,
    })
}

/// Embeds `m` at `(row_off, col_off)` of an `n × n` matrix whose diagonal is
/// zero and whose other cells are absent.
fn embed_with_identity(
    abb: &mut Abb,
    n: usize,
    m: &SparseMatrix,
    row_off: usize,
    col_off: usize,
) -> SparseMatrix {
    let zeros = abb.constant(&vec![Weight::ZERO; n]);
    let pool = abb.concat(&[&m.weights, &zeros]);
    let mut entries: Vec<(usize, usize, usize)> = m
        .coords()
        .enumerate()
        .map(|(i, (r, c))| (r + row_off, c + col_off, i))
        .collect();
    entries.extend((0..n).map(|d| (d, d, m.nnz() + d)));
    entries.sort_unstable();
    SparseMatrix {
        rows: entries.iter().map(|e| e.0).collect(),
        cols: entries.iter().map(|e| e.1).collect(),
        weights: pool.gather(&entries.iter().map(|e| e.2).collect::<Vec<_>>()),
        num_rows: n,
        num_cols: n,
    }
}

/// `[[I, M], [O, I]]`: `m` in the upper-right quadrant of an `n × n` matrix
/// with a zero diagonal. The quadrant must lie strictly above the diagonal.
pub fn get_upper(abb: &mut Abb, n: usize, m: &SparseMatrix) -> Result<SparseMatrix> {
    if m.num_rows + m.num_cols > n {
        return Err(Error::Dimension(format!(
            "{}x{} block does not fit the upper quadrant of {n}x{n}",
            m.num_rows, m.num_cols
        )));
    }
    Ok(embed_with_identity(abb, n, m, 0, n - m.num_cols))
}

/// `[[I, O], [M, I]]`: `m` in the lower-left quadrant.
pub fn get_lower(abb: &mut Abb, n: usize, m: &SparseMatrix) -> Result<SparseMatrix> {
    if m.num_rows + m.num_cols > n {
        return Err(Error::Dimension(format!(
            "{}x{} block does not fit the lower quadrant of {n}x{n}",
            m.num_rows, m.num_cols
        )));
    }
    Ok(embed_with_identity(abb, n, m, n - m.num_rows, 0))
}

/// Shifts columns right by `col_offset` and widens the matrix by
/// `col_offset + extra_cols`. Rows and weights are untouched.
pub fn overlay(v: &SparseMatrix, col_offset: usize, extra_cols: usize) -> SparseMatrix {
    SparseMatrix {
        rows: v.rows.clone(),
        cols: v.cols.iter().map(|c| c + col_offset).collect(),
        weights: v.weights.clone(),
        num_rows: v.num_rows,
        num_cols: v.num_cols + col_offset + extra_cols,
    }
}

/// Union of two equally sized matrices with disjoint coordinate sets.
/// Like [`crate::apc::min_sparse`] without the minimum: no comparisons.
pub fn overlap(abb: &mut Abb, x: &SparseMatrix, y: &SparseMatrix) -> Result<SparseMatrix> {
    if x.num_rows != y.num_rows || x.num_cols != y.num_cols {
        return Err(Error::Dimension(format!(
            "overlap of {}x{} and {}x{}",
            x.num_rows, x.num_cols, y.num_rows, y.num_cols
        )));
    }
    let joined = concat_entries(abb, x, y);
    let sorted = first_normalize(&joined);
    if let Some((r, c)) = sorted
        .coords()
        .zip(sorted.coords().skip(1))
        .find(|(a, b)| a == b)
        .map(|(a, _)| a)
    {
        return Err(Error::Structure(format!(
            "overlap operands both hold coordinate ({r}, {c})"
        )));
    }
    Ok(sorted)
}

/// Entries of `x` followed by entries of `y`, with `x`'s dimensions.
pub(crate) fn concat_entries(abb: &mut Abb, x: &SparseMatrix, y: &SparseMatrix) -> SparseMatrix {
    SparseMatrix {
        rows: x.rows.iter().chain(&y.rows).copied().collect(),
        cols: x.cols.iter().chain(&y.cols).copied().collect(),
        weights: abb.concat(&[&x.weights, &y.weights]),
        num_rows: x.num_rows,
        num_cols: x.num_cols,
    }
}

/// Scatters the entries into a dense grid; absent cells become `INF`.
/// Duplicate coordinates keep the last entry, so normalize first.
pub fn to_dense(abb: &mut Abb, a: &SparseMatrix) -> DenseGrid {
    let cells = a.num_rows * a.num_cols;
    let inf = abb.constant(&[Weight::INF]);
    let pool = abb.concat(&[&a.weights, &inf]);
    let mut pick = vec![a.nnz(); cells];
    for (i, (r, c)) in a.coords().enumerate() {
        pick[r * a.num_cols + c] = i;
    }
    DenseGrid {
        num_rows: a.num_rows,
        num_cols: a.num_cols,
        cells: pool.gather(&pick),
    }
}

/// Shares a plaintext grid, dropping `INF` cells. The result is normalized.
pub fn from_dense(abb: &mut Abb, grid: &[Vec<Weight>]) -> Result<SparseMatrix> {
    let num_rows = grid.len();
    let num_cols = grid.first().map_or(0, Vec::len);
    if grid.iter().any(|r| r.len() != num_cols) {
        return Err(Error::Dimension("ragged dense grid".into()));
    }
    let entries: Vec<(usize, usize, Weight)> = grid
        .iter()
        .enumerate()
        .flat_map(|(r, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, w)| !w.is_inf())
                .map(move |(c, &w)| (r, c, w))
        })
        .collect();
    SparseMatrix::from_triplets(abb, num_rows, num_cols, &entries)
}

#[cfg(test)]
mod tests;
