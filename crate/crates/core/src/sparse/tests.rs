use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::abb::Abb;

const INF: Weight = Weight::INF;

fn w(v: u64) -> Weight {
    Weight::new(v)
}

fn random_triplets(
    rng: &mut ChaCha8Rng,
    max_dim: usize,
    max_nnz: usize,
) -> (usize, usize, Vec<(usize, usize, Weight)>) {
    let r = rng.gen_range(1..=max_dim);
    let c = rng.gen_range(1..=max_dim);
    let nnz = rng.gen_range(0..=max_nnz);
    let e = (0..nnz)
        .map(|_| (rng.gen_range(0..r), rng.gen_range(0..c), w(rng.gen_range(0..50))))
        .collect();
    (r, c, e)
}

/// Dense image with duplicates folded by minimum.
fn dedupe_by_min(r: usize, c: usize, entries: &[(usize, usize, Weight)]) -> Vec<Vec<Weight>> {
    let mut g = vec![vec![INF; c]; r];
    for &(i, j, x) in entries {
        g[i][j] = g[i][j].plus(x);
    }
    g
}

fn dense(abb: &mut Abb, m: &SparseMatrix) -> Vec<Vec<Weight>> {
    to_dense(abb, m).reveal(abb)
}

#[test]
fn first_normalize_sorts_row_major() {
    let mut abb = Abb::clear();
    let a = SparseMatrix::from_triplets(
        &mut abb,
        2,
        3,
        &[(1, 0, w(1)), (0, 2, w(2)), (0, 1, w(3))],
    )
    .unwrap();
    let n = first_normalize(&a);
    assert_eq!(n.reveal_triplets(&mut abb), vec![(0, 1, w(3)), (0, 2, w(2)), (1, 0, w(1))]);
    let again = first_normalize(&n);
    assert_eq!(again.reveal_triplets(&mut abb), n.reveal_triplets(&mut abb));
    assert_eq!(abb.ledger().rounds(), 0);
}

#[test]
fn first_normalize_is_stable_for_duplicates() {
    let mut abb = Abb::clear();
    let a = SparseMatrix::from_triplets(
        &mut abb,
        1,
        2,
        &[(0, 1, w(9)), (0, 0, w(1)), (0, 1, w(4))],
    )
    .unwrap();
    let n = first_normalize(&a);
    assert_eq!(n.reveal_triplets(&mut abb), vec![(0, 0, w(1)), (0, 1, w(9)), (0, 1, w(4))]);
}

#[test]
fn first_normalize_preserves_dense_image() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut abb = Abb::clear();
    let r = 20;
    let c = 20;
    // Distinct coordinates so the dense image is unambiguous before dedupe.
    let mut cells: Vec<(usize, usize)> = (0..r).flat_map(|i| (0..c).map(move |j| (i, j))).collect();
    for i in (1..cells.len()).rev() {
        cells.swap(i, rng.gen_range(0..=i));
    }
    let entries: Vec<_> = cells[..200].iter().map(|&(i, j)| (i, j, w(rng.gen_range(0..99)))).collect();
    let a = SparseMatrix::from_triplets(&mut abb, r, c, &entries).unwrap();
    let n = first_normalize(&a);
    assert!(n.is_normalized());
    assert_eq!(dense(&mut abb, &n), dedupe_by_min(r, c, &entries));
}

#[test]
fn second_normalize_folds_by_min() {
    let mut abb = Abb::clear();
    let a = SparseMatrix::from_triplets(
        &mut abb,
        3,
        2,
        &[(0, 1, w(5)), (0, 1, w(3)), (2, 0, w(7))],
    )
    .unwrap();
    let n = second_normalize(&mut abb, &a).unwrap();
    assert_eq!(n.reveal_triplets(&mut abb), vec![(0, 1, w(3)), (2, 0, w(7))]);
    assert_eq!((n.num_rows(), n.num_cols()), (3, 2));
}

#[test]
fn second_normalize_without_duplicates_is_identity_and_free() {
    let mut abb = Abb::shared();
    let t = [(0, 0, w(1)), (0, 2, w(2)), (1, 1, w(3))];
    let a = SparseMatrix::from_triplets(&mut abb, 2, 3, &t).unwrap();
    let n = second_normalize(&mut abb, &a).unwrap();
    assert_eq!(n.reveal_triplets(&mut abb), t.to_vec());
    assert_eq!(abb.ledger().rounds(), 0);
}

#[test]
fn second_normalize_edge_cases() {
    let mut abb = Abb::clear();
    let e = SparseMatrix::empty(&mut abb, 4, 5);
    let n = second_normalize(&mut abb, &e).unwrap();
    assert_eq!((n.nnz(), n.num_rows(), n.num_cols()), (0, 4, 5));

    let unsorted =
        SparseMatrix::from_triplets(&mut abb, 2, 2, &[(1, 0, w(1)), (0, 0, w(1))]).unwrap();
    assert!(matches!(
        second_normalize(&mut abb, &unsorted),
        Err(Error::NotNormalized(_))
    ));
}

#[test]
fn second_normalize_matches_dense_oracle_and_is_idempotent() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for trial in 0..500 {
        let mut abb = if trial % 3 == 0 { Abb::shared() } else { Abb::clear() };
        let (r, c, e) = random_triplets(&mut rng, 12, 60);
        let a = SparseMatrix::from_triplets(&mut abb, r, c, &e).unwrap();
        let once = normalize(&mut abb, &a).unwrap();
        assert!(once.is_normalized());
        assert_eq!(dense(&mut abb, &once), dedupe_by_min(r, c, &e));

        let snap = abb.ledger().clone();
        let twice = second_normalize(&mut abb, &once).unwrap();
        assert_eq!(abb.ledger(), &snap, "second pass must not compare anything");
        assert_eq!(twice.reveal_triplets(&mut abb), once.reveal_triplets(&mut abb));
    }
}

#[test]
fn second_normalize_charges_exactly_one_segmented_min() {
    let mut abb = Abb::clear();
    let a = SparseMatrix::from_triplets(
        &mut abb,
        2,
        2,
        &[(0, 0, w(3)), (0, 0, w(1)), (0, 0, w(2)), (1, 1, w(0)), (1, 1, w(4))],
    )
    .unwrap();
    second_normalize(&mut abb, &a).unwrap();
    let op = abb.ledger().op("min_segmented");
    assert_eq!(op.invocations, 1);
    // longest run 3 -> two levels
    assert_eq!(abb.ledger().rounds(), 6);
    assert_eq!(abb.ledger().ops().len(), 1);
}

#[test]
fn transpose_examples() {
    let mut abb = Abb::clear();
    let a = SparseMatrix::from_triplets(&mut abb, 1, 2, &[(0, 1, w(4))]).unwrap();
    let t = transpose(&a);
    assert_eq!((t.num_rows(), t.num_cols()), (2, 1));
    assert_eq!(t.reveal_triplets(&mut abb), vec![(1, 0, w(4))]);
    let tt = transpose(&t);
    assert_eq!(tt.reveal_triplets(&mut abb), a.reveal_triplets(&mut abb));
    assert_eq!((tt.num_rows(), tt.num_cols()), (1, 2));
}

#[test]
fn transpose_keeps_symmetric_dense_image() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut abb = Abb::clear();
    for _ in 0..100 {
        let n = rng.gen_range(1..10);
        let mut e = Vec::new();
        for i in 0..n {
            for j in i..n {
                if rng.gen_bool(0.4) {
                    let x = w(rng.gen_range(0..20));
                    e.push((i, j, x));
                    if i != j {
                        e.push((j, i, x));
                    }
                }
            }
        }
        let a = SparseMatrix::from_triplets(&mut abb, n, n, &e).unwrap();
        let t = first_normalize(&transpose(&a));
        assert_eq!(dense(&mut abb, &t), dense(&mut abb, &first_normalize(&a)));
    }
}

#[test]
fn get_slice_examples() {
    let mut abb = Abb::clear();
    let a = SparseMatrix::from_triplets(&mut abb, 3, 3, &[(0, 0, w(1)), (1, 2, w(2)), (2, 1, w(3))])
        .unwrap();
    let full = get_slice(&a, 0, 0, 3, 3).unwrap();
    assert_eq!(full.reveal_triplets(&mut abb), a.reveal_triplets(&mut abb));

    let empty = get_slice(&a, 1, 0, 1, 2).unwrap();
    assert_eq!((empty.nnz(), empty.num_rows(), empty.num_cols()), (0, 1, 2));

    let sub = get_slice(&a, 1, 1, 2, 2).unwrap();
    assert_eq!(sub.reveal_triplets(&mut abb), vec![(0, 1, w(2)), (1, 0, w(3))]);

    assert!(matches!(get_slice(&a, 2, 0, 2, 1), Err(Error::Dimension(_))));
    assert!(matches!(get_slice(&a, 0, 1, 1, 3), Err(Error::Dimension(_))));
}

#[test]
fn get_slice_matches_dense_submatrix() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut abb = Abb::clear();
    for _ in 0..200 {
        let (_, _, e) = random_triplets(&mut rng, 10, 50);
        let raw = SparseMatrix::from_triplets(&mut abb, 10, 10, &e).unwrap();
        let a = normalize(&mut abb, &raw).unwrap();
        let s = get_slice(&a, 2, 3, 4, 4).unwrap();
        let g = dedupe_by_min(10, 10, &e);
        let expect: Vec<Vec<Weight>> = (2..6).map(|i| g[i][3..7].to_vec()).collect();
        assert_eq!(dense(&mut abb, &s), expect);
        assert!(s.is_normalized());
    }
}

#[test]
fn upper_and_lower_embeddings() {
    let mut abb = Abb::clear();
    let m = SparseMatrix::from_triplets(&mut abb, 1, 1, &[(0, 0, w(7))]).unwrap();
    let u = get_upper(&mut abb, 2, &m).unwrap();
    assert_eq!(u.reveal_triplets(&mut abb), vec![(0, 0, w(0)), (0, 1, w(7)), (1, 1, w(0))]);
    let l = get_lower(&mut abb, 2, &m).unwrap();
    assert_eq!(l.reveal_triplets(&mut abb), vec![(0, 0, w(0)), (1, 0, w(7)), (1, 1, w(0))]);
    assert!(u.is_normalized() && l.is_normalized());

    let big = SparseMatrix::empty(&mut abb, 2, 1);
    assert!(get_upper(&mut abb, 2, &big).is_err());
    assert!(get_lower(&mut abb, 2, &big).is_err());
    assert_eq!(abb.ledger().rounds(), 0);
}

#[test]
fn embeddings_match_dense_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut abb = Abb::clear();
    for _ in 0..100 {
        let n = 6;
        let k = rng.gen_range(0..=n);
        let e: Vec<_> = (0..rng.gen_range(0..12))
            .filter(|_| k > 0 && k < n)
            .map(|_| (rng.gen_range(0..k), rng.gen_range(0..n - k), w(rng.gen_range(1..30))))
            .collect();
        let raw = SparseMatrix::from_triplets(&mut abb, k, n - k, &e).unwrap();
        let m = normalize(&mut abb, &raw).unwrap();
        let md = dedupe_by_min(k, n - k, &e);
        let up = get_upper(&mut abb, n, &m).unwrap();
        let u = dense(&mut abb, &up);
        let lt = first_normalize(&transpose(&m));
        let low = get_lower(&mut abb, n, &lt).unwrap();
        let l = dense(&mut abb, &low);
        for i in 0..n {
            for j in 0..n {
                let up = if i == j {
                    w(0)
                } else if i < k && j >= k {
                    md[i][j - k]
                } else {
                    INF
                };
                assert_eq!(u[i][j], up);
                let lo = if i == j {
                    w(0)
                } else if i >= k && j < k {
                    md[j][i - k]
                } else {
                    INF
                };
                assert_eq!(l[i][j], lo);
            }
        }
    }
}

#[test]
fn overlay_examples() {
    let mut abb = Abb::clear();
    let v = SparseMatrix::from_triplets(&mut abb, 1, 2, &[(0, 1, w(6))]).unwrap();
    let same = overlay(&v, 0, 0);
    assert_eq!(same.num_cols(), 2);
    assert_eq!(same.reveal_triplets(&mut abb), v.reveal_triplets(&mut abb));
    let wide = overlay(&v, 3, 1);
    assert_eq!((wide.num_rows(), wide.num_cols()), (1, 6));
    assert_eq!(wide.reveal_triplets(&mut abb), vec![(0, 4, w(6))]);
    let g = dense(&mut abb, &wide);
    assert_eq!(g, vec![vec![INF, INF, INF, INF, w(6), INF]]);
}

#[test]
fn overlap_examples() {
    let mut abb = Abb::clear();
    let v = SparseMatrix::from_triplets(&mut abb, 2, 2, &[(1, 1, w(2)), (0, 1, w(5))]).unwrap();
    let e = SparseMatrix::empty(&mut abb, 2, 2);
    let o = overlap(&mut abb, &v, &e).unwrap();
    assert_eq!(o.reveal_triplets(&mut abb), first_normalize(&v).reveal_triplets(&mut abb));

    let a = SparseMatrix::from_triplets(&mut abb, 2, 2, &[(1, 1, w(2))]).unwrap();
    let b = SparseMatrix::from_triplets(&mut abb, 2, 2, &[(0, 0, w(1))]).unwrap();
    let o = overlap(&mut abb, &a, &b).unwrap();
    assert_eq!(o.reveal_triplets(&mut abb), vec![(0, 0, w(1)), (1, 1, w(2))]);

    assert!(matches!(overlap(&mut abb, &a, &v), Err(Error::Structure(_))));
    let wrong = SparseMatrix::empty(&mut abb, 2, 3);
    assert!(matches!(overlap(&mut abb, &a, &wrong), Err(Error::Dimension(_))));
    assert_eq!(abb.ledger().rounds(), 0);
}

#[test]
fn dense_round_trip() {
    let mut abb = Abb::clear();
    let e = SparseMatrix::empty(&mut abb, 2, 3);
    assert_eq!(dense(&mut abb, &e), vec![vec![INF; 3]; 2]);

    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for trial in 0..500 {
        let mut abb = if trial % 4 == 0 { Abb::shared() } else { Abb::clear() };
        let (r, c, e) = random_triplets(&mut rng, 9, 40);
        let a = SparseMatrix::from_triplets(&mut abb, r, c, &e).unwrap();
        let na = normalize(&mut abb, &a).unwrap();
        let g = dense(&mut abb, &na);
        let back = from_dense(&mut abb, &g).unwrap();
        let direct = normalize(&mut abb, &a).unwrap();
        assert!(back.is_normalized());
        assert_eq!(back.reveal_triplets(&mut abb), direct.reveal_triplets(&mut abb));
    }
}

#[test]
fn structural_zero_is_not_absent() {
    let mut abb = Abb::clear();
    let a = from_dense(&mut abb, &[vec![w(0), INF], vec![INF, w(0)]]).unwrap();
    assert_eq!(a.nnz(), 2);
}

#[test]
fn construction_validates_streams() {
    let mut abb = Abb::clear();
    let wv = abb.share(&[w(1)]).unwrap();
    assert!(SparseMatrix::new(2, 2, vec![0, 1], vec![0], wv.clone()).is_err());
    assert!(SparseMatrix::new(2, 2, vec![2], vec![0], wv.clone()).is_err());
    assert!(SparseMatrix::new(2, 2, vec![1], vec![1], wv).is_ok());
    assert!(from_dense(&mut abb, &[vec![w(1)], vec![]]).is_err());
}

#[test]
fn public_outputs_do_not_depend_on_weights() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let (r, c, e) = random_triplets(&mut rng, 8, 30);
        let e2: Vec<_> = e.iter().map(|&(i, j, _)| (i, j, w(rng.gen_range(0..1000)))).collect();
        let run = |entries: &[(usize, usize, Weight)]| {
            let mut abb = Abb::shared();
            let a = SparseMatrix::from_triplets(&mut abb, r, c, entries).unwrap();
            let n = normalize(&mut abb, &a).unwrap();
            let t = first_normalize(&transpose(&n));
            let s = get_slice(&t, 0, 0, c.min(3), r.min(3)).unwrap();
            let coords: Vec<(usize, usize)> = n.coords().chain(t.coords()).chain(s.coords()).collect();
            (coords, abb.ledger().clone(), abb.trace_digest())
        };
        assert_eq!(run(&e), run(&e2));
    }
}
