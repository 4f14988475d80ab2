//! Deterministic inputs shared by the benchmark targets.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tropath::sparse::from_dense;
use tropath::{Abb, DenseGrid, SparseMatrix, Weight};

/// A `rows × cols` grid with roughly `density` finite cells.
pub fn random_cells(rows: usize, cols: usize, density: f64, seed: u64) -> Vec<Vec<Weight>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| {
                    if rng.gen_bool(density) {
                        Weight::new(rng.gen_range(1..100))
                    } else {
                        Weight::INF
                    }
                })
                .collect()
        })
        .collect()
}

pub fn random_sparse(abb: &mut Abb, n: usize, density: f64, seed: u64) -> SparseMatrix {
    from_dense(abb, &random_cells(n, n, density, seed)).expect("rectangular grid")
}

/// `count` dense blocks of side `side`, each with a zero diagonal.
pub fn random_blocks(abb: &mut Abb, count: usize, side: usize, seed: u64) -> Vec<DenseGrid> {
    (0..count)
        .map(|i| {
            let mut cells = random_cells(side, side, 0.5, seed + i as u64);
            for (d, row) in cells.iter_mut().enumerate() {
                row[d] = Weight::ZERO;
            }
            DenseGrid {
                num_rows: side,
                num_cols: side,
                cells: abb.share(&cells.concat()).expect("weights fit the ring"),
            }
        })
        .collect()
}
