#![allow(dead_code)]

//! Shared generators for the property and acceptance suites: random filtered
//! complexes with exact square-zero differentials (built from elementary
//! pieces and filtration-compatible shears) and random first-quadrant double
//! complexes (tensor products of a strand and a fat complex).

use cohomolab::exactalg::IntMatrix;
use cohomolab::simplicial::SimplicialComplex;
use cohomolab::spectral::{DoubleComplex, FilteredComplex};
use num_bigint::BigInt;
use rand::Rng;
use std::collections::BTreeMap;

/// Random filtered cochain complex: at most `max_gens` generators over
/// degrees 0..=3, filtration values below `length`.
pub fn random_filtered_complex<R: Rng>(
    rng: &mut R,
    max_gens: usize,
    length: usize,
) -> FilteredComplex {
    let degrees = 4usize;
    let mut ranks = vec![0usize; degrees];
    let mut filt: Vec<Vec<usize>> = vec![vec![]; degrees];
    // (degree, index) pairs with a differential entry.
    let mut arrows: Vec<(usize, usize, usize, i64)> = Vec::new();
    let mut total = 0usize;
    while total + 1 < max_gens {
        if rng.gen_bool(0.45) {
            // Single free generator.
            let n = rng.gen_range(0..degrees);
            let p = rng.gen_range(0..length);
            ranks[n] += 1;
            filt[n].push(p);
            total += 1;
        } else {
            // A pair connected by multiplication by k.
            let n = rng.gen_range(0..degrees - 1);
            let p_src = rng.gen_range(0..length);
            let p_tgt = rng.gen_range(p_src..length);
            let k = *[1i64, 1, 2, 3].get(rng.gen_range(0..4)).unwrap();
            let src = ranks[n];
            let tgt = ranks[n + 1];
            ranks[n] += 1;
            ranks[n + 1] += 1;
            filt[n].push(p_src);
            filt[n + 1].push(p_tgt);
            arrows.push((n, src, tgt, k));
            total += 2;
        }
    }
    let mut diffs: Vec<IntMatrix> = (0..degrees)
        .map(|n| {
            let rows = if n + 1 < degrees { ranks[n + 1] } else { 0 };
            IntMatrix::zeros(rows, ranks[n])
        })
        .collect();
    for (n, src, tgt, k) in arrows {
        diffs[n][(tgt, src)] = BigInt::from(k);
    }
    // Filtration-compatible shears: add a multiple of a higher-filtration
    // generator to another one in the same degree.
    for _ in 0..3 * max_gens {
        let n = rng.gen_range(0..degrees);
        if ranks[n] < 2 {
            continue;
        }
        let i = rng.gen_range(0..ranks[n]);
        let j = rng.gen_range(0..ranks[n]);
        if i == j || filt[n][j] < filt[n][i] {
            continue;
        }
        let c = BigInt::from(rng.gen_range(-2i64..=2));
        if num_traits::Zero::is_zero(&c) {
            continue;
        }
        // Source side of d_n: col_i += c * col_j.
        if n + 1 < degrees {
            for r in 0..ranks[n + 1] {
                let add = &diffs[n][(r, j)] * &c;
                diffs[n][(r, i)] += add;
            }
        }
        // Target side of d_{n-1}: row_j -= c * row_i.
        if n >= 1 {
            for col in 0..ranks[n - 1] {
                let sub = &diffs[n - 1][(i, col)] * &c;
                diffs[n - 1][(j, col)] -= sub;
            }
        }
    }
    FilteredComplex::new(0, ranks, diffs, filt).expect("construction preserves the invariants")
}

/// A rank-at-most-one strand over `positions` degrees with differentials on
/// alternating degree pairs (for rank-one strands composable nonzero
/// differentials are impossible anyway, so this loses no generality).
fn random_strand<R: Rng>(rng: &mut R, positions: usize) -> (Vec<usize>, Vec<IntMatrix>) {
    let ranks: Vec<usize> = (0..positions).map(|_| rng.gen_range(0..=1)).collect();
    let mut diffs: Vec<IntMatrix> = (0..positions)
        .map(|n| {
            let rows = if n + 1 < positions { ranks[n + 1] } else { 0 };
            IntMatrix::zeros(rows, ranks[n])
        })
        .collect();
    for n in (0..positions.saturating_sub(1)).step_by(2) {
        for r in 0..ranks[n + 1] {
            for c in 0..ranks[n] {
                if rng.gen_bool(0.5) {
                    diffs[n][(r, c)] = BigInt::from(rng.gen_range(-2i64..=2));
                }
            }
        }
    }
    (ranks, diffs)
}

/// A genuinely mixed cochain strip: elementary connected pairs plus basis
/// shears, so the differentials are dense and the square-zero condition
/// involves real cancellation.
fn random_strip<R: Rng>(
    rng: &mut R,
    positions: usize,
    max_rank: usize,
) -> (Vec<usize>, Vec<IntMatrix>) {
    let mut ranks = vec![0usize; positions];
    let mut arrows = Vec::new();
    for _ in 0..2 * positions {
        let n = rng.gen_range(0..positions);
        if rng.gen_bool(0.4) || n + 1 >= positions {
            if ranks[n] < max_rank {
                ranks[n] += 1;
            }
        } else if ranks[n] < max_rank && ranks[n + 1] < max_rank {
            arrows.push((n, ranks[n], ranks[n + 1], rng.gen_range(1..=3i64)));
            ranks[n] += 1;
            ranks[n + 1] += 1;
        }
    }
    let mut diffs: Vec<IntMatrix> = (0..positions)
        .map(|n| {
            let rows = if n + 1 < positions { ranks[n + 1] } else { 0 };
            IntMatrix::zeros(rows, ranks[n])
        })
        .collect();
    for (n, src, tgt, k) in arrows {
        diffs[n][(tgt, src)] = BigInt::from(k);
    }
    for _ in 0..4 * positions {
        let n = rng.gen_range(0..positions);
        if ranks[n] < 2 {
            continue;
        }
        let i = rng.gen_range(0..ranks[n]);
        let j = rng.gen_range(0..ranks[n]);
        if i == j {
            continue;
        }
        let c = BigInt::from(rng.gen_range(-2i64..=2));
        if num_traits::Zero::is_zero(&c) {
            continue;
        }
        if n + 1 < positions {
            for r in 0..ranks[n + 1] {
                let add = &diffs[n][(r, j)] * &c;
                diffs[n][(r, i)] += add;
            }
        }
        if n >= 1 {
            for col in 0..ranks[n - 1] {
                let sub = &diffs[n - 1][(i, col)] * &c;
                diffs[n - 1][(j, col)] -= sub;
            }
        }
    }
    (ranks, diffs)
}

/// Random first-quadrant double complex with support within
/// `width x height` and ranks <= 3: the tensor product of a horizontal
/// complex and a vertical strand (or the transpose), with the anticommuting
/// twist applied to the vertical maps.
pub fn random_double_complex<R: Rng>(rng: &mut R, width: usize, height: usize) -> DoubleComplex {
    let horizontal_fat = rng.gen_bool(0.5);
    let (fat_len, strand_len) = if horizontal_fat {
        (width, height)
    } else {
        (height, width)
    };
    let (fat_ranks, fat_diffs) = random_strip(rng, fat_len, 3);
    let (strand_ranks, strand_diffs) = random_strand(rng, strand_len);
    let mut ranks = BTreeMap::new();
    let mut d1 = BTreeMap::new();
    let mut d2 = BTreeMap::new();
    for a in 0..fat_len {
        for b in 0..strand_len {
            let (p, q) = if horizontal_fat { (a, b) } else { (b, a) };
            let rank = fat_ranks[a] * strand_ranks[b];
            if rank > 0 {
                ranks.insert((p, q), rank);
            }
            // Horizontal map(s): fat differential when the fat axis is p,
            // strand differential otherwise; vertical the other way.
            let fat_d = &fat_diffs[a];
            let strand_d = &strand_diffs[b];
            let scale_strand = strand_ranks[b];
            let kron_fat = kron(fat_d, scale_strand); // acts on the fat index
            let kron_strand = kron_scalar(strand_d, fat_ranks[a]);
            if horizontal_fat {
                if kron_fat.rows() > 0 && kron_fat.cols() > 0 {
                    d1.insert((p, q), kron_fat);
                }
                if kron_strand.rows() > 0 && kron_strand.cols() > 0 {
                    d2.insert((p, q), kron_strand);
                }
            } else {
                if kron_strand.rows() > 0 && kron_strand.cols() > 0 {
                    d1.insert((p, q), kron_strand);
                }
                if kron_fat.rows() > 0 && kron_fat.cols() > 0 {
                    d2.insert((p, q), kron_fat);
                }
            }
        }
    }
    DoubleComplex::from_commuting(ranks, d1, d2).expect("tensor data commutes")
}

/// a tensor identity: block structure (fat index major, strand index minor).
fn kron(a: &IntMatrix, copies: usize) -> IntMatrix {
    let mut out = IntMatrix::zeros(a.rows() * copies, a.cols() * copies);
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            if num_traits::Zero::is_zero(&a[(i, j)]) {
                continue;
            }
            for k in 0..copies {
                out[(i * copies + k, j * copies + k)] = a[(i, j)].clone();
            }
        }
    }
    out
}

/// identity tensor a: the strand index is minor.
fn kron_scalar(a: &IntMatrix, copies: usize) -> IntMatrix {
    let mut out = IntMatrix::zeros(copies * a.rows(), copies * a.cols());
    for k in 0..copies {
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                if !num_traits::Zero::is_zero(&a[(i, j)]) {
                    out[(k * a.rows() + i, k * a.cols() + j)] = a[(i, j)].clone();
                }
            }
        }
    }
    out
}

/// Random small face-closed simplicial complex on up to `max_vertices`.
pub fn random_complex<R: Rng>(rng: &mut R, max_vertices: usize) -> SimplicialComplex {
    let n = rng.gen_range(2..=max_vertices);
    let mut sims: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let count = rng.gen_range(1..=2 * n);
    for _ in 0..count {
        let dim = rng.gen_range(1..=3.min(n - 1));
        let mut verts: Vec<usize> = (0..n).collect();
        for k in (1..n).rev() {
            let swap = rng.gen_range(0..=k);
            verts.swap(k, swap);
        }
        let mut s: Vec<usize> = verts[..=dim].to_vec();
        s.sort_unstable();
        sims.push(s);
    }
    SimplicialComplex::from_simplices(n, &sims).expect("face closure")
}
