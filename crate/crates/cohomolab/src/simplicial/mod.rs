//! Finite simplicial complexes, pairs and maps; boundary and coboundary
//! matrices in the increasing-vertex-order sign convention; cones,
//! suspensions and compactified pairs for Borel-Moore homology; barycentric
//! subdivision and prism products; and a catalog of triangulated surfaces
//! with orientation double covers.

pub mod surfaces;

use crate::complexes::{ChainComplex, ChainMap, Coefficients, ComplexError};
use crate::exactalg::{FPAbelianGroup, IntMatrix};
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimplicialError {
    #[error("simplex {0:?} has a face that is not in the complex")]
    NotFaceClosed(Vec<usize>),
    #[error("simplex {0:?} is invalid (not strictly increasing or out of range)")]
    BadSimplex(Vec<usize>),
    #[error("subcomplex contains a simplex missing from the total complex")]
    NotASubcomplex,
    #[error("vertex map does not send simplices to simplices")]
    NotSimplicial,
    #[error("unsupported surface kind")]
    UnsupportedKind,
    #[error("surface is already orientable")]
    AlreadyOrientable,
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// A finite simplicial complex: strictly increasing vertex tuples, closed
/// under faces, stored per dimension in sorted order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    by_dim: Vec<Vec<Vec<usize>>>,
}

fn faces_of(simplex: &[usize]) -> Vec<Vec<usize>> {
    (0..simplex.len())
        .map(|k| {
            let mut f = simplex.to_vec();
            f.remove(k);
            f
        })
        .collect()
}

impl SimplicialComplex {
    /// Build from a generating set of simplices, closing under faces.
    pub fn from_simplices(
        vertex_count: usize,
        simplices: &[Vec<usize>],
    ) -> Result<SimplicialComplex, SimplicialError> {
        let mut sets: Vec<BTreeSet<Vec<usize>>> = Vec::new();
        let mut queue: Vec<Vec<usize>> = simplices.to_vec();
        while let Some(s) = queue.pop() {
            if s.is_empty()
                || s.windows(2).any(|w| w[0] >= w[1])
                || *s.last().unwrap() >= vertex_count
            {
                return Err(SimplicialError::BadSimplex(s));
            }
            let d = s.len() - 1;
            while sets.len() <= d {
                sets.push(BTreeSet::new());
            }
            if sets[d].insert(s.clone()) && d > 0 {
                queue.extend(faces_of(&s));
            }
        }
        Ok(SimplicialComplex {
            vertex_count,
            by_dim: sets.into_iter().map(|s| s.into_iter().collect()).collect(),
        })
    }

    pub fn empty() -> SimplicialComplex {
        SimplicialComplex {
            vertex_count: 0,
            by_dim: vec![],
        }
    }

    /// The boundary of the full n-simplex: the standard S^{n-1} model.
    pub fn sphere(n: usize) -> SimplicialComplex {
        let all: Vec<usize> = (0..=n + 1).collect();
        let facets = faces_of(&all);
        SimplicialComplex::from_simplices(n + 2, &facets).expect("sphere model")
    }

    /// The full n-simplex.
    pub fn full_simplex(n: usize) -> SimplicialComplex {
        let all: Vec<usize> = (0..=n).collect();
        SimplicialComplex::from_simplices(n + 1, &[all]).expect("full simplex")
    }

    pub fn point() -> SimplicialComplex {
        SimplicialComplex::from_simplices(1, &[vec![0]]).expect("point")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn dim(&self) -> i64 {
        self.by_dim.len() as i64 - 1
    }

    pub fn simplices(&self, d: usize) -> &[Vec<usize>] {
        static EMPTY: Vec<Vec<usize>> = Vec::new();
        self.by_dim.get(d).map_or(&EMPTY, Vec::as_slice)
    }

    pub fn simplex_index(&self, d: usize, simplex: &[usize]) -> Option<usize> {
        self.by_dim
            .get(d)?
            .binary_search_by(|s| s.as_slice().cmp(simplex))
            .ok()
    }

    pub fn contains(&self, simplex: &[usize]) -> bool {
        !simplex.is_empty() && self.simplex_index(simplex.len() - 1, simplex).is_some()
    }

    /// All simplices of every dimension.
    pub fn all_simplices(&self) -> Vec<Vec<usize>> {
        self.by_dim.iter().flatten().cloned().collect()
    }

    pub fn skeleton(&self, p: i64) -> SimplicialComplex {
        if p < 0 {
            return SimplicialComplex {
                vertex_count: self.vertex_count,
                by_dim: vec![],
            };
        }
        SimplicialComplex {
            vertex_count: self.vertex_count,
            by_dim: self
                .by_dim
                .iter()
                .take(p as usize + 1)
                .cloned()
                .collect(),
        }
    }

    /// Boundary matrices in the one-indexed face-sign convention: for an
    /// n-simplex the k-th face (removing the k-th vertex of the increasing
    /// tuple, counting from one) enters with sign (-1)^k.
    pub fn chain_complex(&self) -> ChainComplex {
        let dims = self.by_dim.len();
        let mut ranks = Vec::with_capacity(dims);
        let mut boundaries = Vec::with_capacity(dims);
        for d in 0..dims {
            ranks.push(self.simplices(d).len());
            let below = if d == 0 { 0 } else { self.simplices(d - 1).len() };
            let mut m = IntMatrix::zeros(below, self.simplices(d).len());
            if d > 0 {
                for (j, s) in self.simplices(d).iter().enumerate() {
                    for (k0, f) in faces_of(s).into_iter().enumerate() {
                        let i = self
                            .simplex_index(d - 1, &f)
                            .expect("complex is face-closed by construction");
                        let sign = if (k0 + 1) % 2 == 0 { 1 } else { -1 };
                        m[(i, j)] += BigInt::from(sign);
                    }
                }
            }
            boundaries.push(m);
        }
        ChainComplex::new(0, ranks, boundaries)
    }

    /// Coboundary matrix on chains in degree n: rows are (n+1)-simplices,
    /// columns n-simplices, coface signs by removed-vertex position. Always
    /// equal to the transpose of the boundary one degree up; asserted.
    pub fn coboundary(&self, n: usize) -> IntMatrix {
        let rows = self.simplices(n + 1).len();
        let cols = self.simplices(n).len();
        let mut m = IntMatrix::zeros(rows, cols);
        for (r, coface) in self.simplices(n + 1).iter().enumerate() {
            for (k0, f) in faces_of(coface).into_iter().enumerate() {
                if let Some(c) = self.simplex_index(n, &f) {
                    let sign = if (k0 + 1) % 2 == 0 { 1 } else { -1 };
                    m[(r, c)] += BigInt::from(sign);
                }
            }
        }
        debug_assert_eq!(
            m,
            self.chain_complex().boundary(n as i64 + 1).transpose(),
            "coboundary must match the transposed boundary"
        );
        m
    }

    pub fn homology(&self, n: i64, k: Coefficients) -> Result<FPAbelianGroup, ComplexError> {
        self.chain_complex().homology(n, k)
    }

    pub fn reduced_homology(
        &self,
        n: i64,
        k: Coefficients,
    ) -> Result<FPAbelianGroup, ComplexError> {
        self.chain_complex().augmented().homology(n, k)
    }

    /// Join with one new vertex appended after all existing ones.
    pub fn cone(&self) -> SimplicialComplex {
        let apex = self.vertex_count;
        let mut sims: Vec<Vec<usize>> = self.all_simplices();
        for s in self.all_simplices() {
            let mut c = s.clone();
            c.push(apex);
            sims.push(c);
        }
        sims.push(vec![apex]);
        SimplicialComplex::from_simplices(self.vertex_count + 1, &sims).expect("cone")
    }

    /// Join with two new vertices (the unreduced suspension).
    pub fn unreduced_suspension(&self) -> SimplicialComplex {
        let north = self.vertex_count;
        let south = self.vertex_count + 1;
        let mut sims: Vec<Vec<usize>> = self.all_simplices();
        for s in self.all_simplices() {
            let mut a = s.clone();
            a.push(north);
            sims.push(a);
            let mut b = s.clone();
            b.push(south);
            sims.push(b);
        }
        sims.push(vec![north]);
        sims.push(vec![south]);
        SimplicialComplex::from_simplices(self.vertex_count + 2, &sims).expect("suspension")
    }

    /// Barycentric subdivision. Also returns, per subdivision vertex, the
    /// carrier simplex `(dim, index)` of the original complex.
    pub fn barycentric_subdivision(&self) -> (SimplicialComplex, Vec<(usize, usize)>) {
        // Subdivision vertices are the simplices of self, ordered by
        // (dim, index); subdivision simplices are strict inclusion chains.
        let mut carrier = Vec::new();
        let mut vertex_of = vec![Vec::new(); self.by_dim.len()];
        for (d, sims) in self.by_dim.iter().enumerate() {
            for (i, _) in sims.iter().enumerate() {
                vertex_of[d].push(carrier.len());
                carrier.push((d, i));
            }
        }
        let mut chains: Vec<Vec<usize>> = Vec::new();
        // Enumerate chains ending at each simplex by recursing over faces.
        fn extend(
            complex: &SimplicialComplex,
            vertex_of: &[Vec<usize>],
            d: usize,
            idx: usize,
            chain: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            chain.push(vertex_of[d][idx]);
            let mut sorted = chain.clone();
            sorted.sort_unstable();
            out.push(sorted);
            if d > 0 {
                for f in faces_of(&complex.simplices(d)[idx]) {
                    let fi = complex.simplex_index(d - 1, &f).expect("face-closed");
                    extend(complex, vertex_of, d - 1, fi, chain, out);
                }
            }
            chain.pop();
        }
        for (d, sims) in self.by_dim.iter().enumerate() {
            for i in 0..sims.len() {
                extend(self, &vertex_of, d, i, &mut Vec::new(), &mut chains);
            }
        }
        let sd = SimplicialComplex::from_simplices(carrier.len(), &chains)
            .expect("subdivision is simplicial");
        (sd, carrier)
    }

    /// Staircase triangulation of `self x I`: bottom copy keeps vertex ids,
    /// the top copy is shifted by the vertex count.
    pub fn prism_product(&self) -> SimplicialComplex {
        let shift = self.vertex_count;
        let mut sims = Vec::new();
        for s in self.all_simplices() {
            for i in 0..s.len() {
                let mut cell: Vec<usize> = s[..=i].to_vec();
                cell.extend(s[i..].iter().map(|&v| v + shift));
                sims.push(cell);
            }
        }
        SimplicialComplex::from_simplices(2 * shift, &sims).expect("prism product")
    }

    /// Euler characteristic of the underlying complex.
    pub fn euler_characteristic(&self) -> i64 {
        self.by_dim
            .iter()
            .enumerate()
            .map(|(d, s)| if d % 2 == 0 { s.len() as i64 } else { -(s.len() as i64) })
            .sum()
    }
}

/// A pair (total, sub) with the subcomplex included by vertex identity.
#[derive(Debug, Clone)]
pub struct SimplicialPair {
    pub total: SimplicialComplex,
    pub sub: SimplicialComplex,
}

impl SimplicialPair {
    pub fn new(
        total: SimplicialComplex,
        sub: SimplicialComplex,
    ) -> Result<SimplicialPair, SimplicialError> {
        for s in sub.all_simplices() {
            if !total.contains(&s) {
                return Err(SimplicialError::NotASubcomplex);
            }
        }
        Ok(SimplicialPair { total, sub })
    }

    /// The quotient complex C(total)/C(sub): generators are the simplices of
    /// the total complex not in the subcomplex.
    pub fn quotient_complex(&self) -> ChainComplex {
        let dims = self.total.by_dim.len();
        let mut kept: Vec<Vec<usize>> = Vec::with_capacity(dims);
        for d in 0..dims {
            kept.push(
                (0..self.total.simplices(d).len())
                    .filter(|&i| !self.sub.contains(&self.total.simplices(d)[i]))
                    .collect(),
            );
        }
        let full = self.total.chain_complex();
        let mut ranks = Vec::with_capacity(dims);
        let mut boundaries = Vec::with_capacity(dims);
        for d in 0..dims {
            ranks.push(kept[d].len());
            let b = if d == 0 {
                IntMatrix::zeros(0, kept[0].len())
            } else {
                full.boundary(d as i64)
                    .select_rows(&kept[d - 1])
                    .select_cols(&kept[d])
            };
            boundaries.push(b);
        }
        ChainComplex::new(0, ranks, boundaries)
    }

    /// Relative homology; with `reduced` set and an empty subcomplex this is
    /// reduced homology of the total complex.
    pub fn homology(
        &self,
        n: i64,
        k: Coefficients,
        reduced: bool,
    ) -> Result<FPAbelianGroup, SimplicialError> {
        let complex = if reduced && self.sub.all_simplices().is_empty() {
            self.total.chain_complex().augmented()
        } else {
            self.quotient_complex()
        };
        Ok(complex.homology(n, k)?)
    }
}

/// Packages a compactification presentation `(K̄, L)` whose relative
/// homology is declared the Borel-Moore homology of the complement of `L`.
pub fn one_point_pair(
    compactification: SimplicialComplex,
    infinity_locus: SimplicialComplex,
) -> Result<SimplicialPair, SimplicialError> {
    SimplicialPair::new(compactification, infinity_locus)
}

/// Borel-Moore homology of the space presented by a compactified pair: the
/// relative homology of the pair. With an empty infinity locus this is
/// ordinary homology of a compact space.
pub fn borel_moore(
    pair: &SimplicialPair,
    n: i64,
    k: Coefficients,
) -> Result<FPAbelianGroup, SimplicialError> {
    pair.homology(n, k, false)
}

/// A simplicial map given on vertices; images of simplices may be
/// degenerate, in which case they contribute zero to the chain map.
#[derive(Debug, Clone)]
pub struct SimplicialMap {
    pub source: SimplicialComplex,
    pub target: SimplicialComplex,
    pub vertex_map: Vec<usize>,
}

impl SimplicialMap {
    pub fn new(
        source: SimplicialComplex,
        target: SimplicialComplex,
        vertex_map: Vec<usize>,
    ) -> Result<SimplicialMap, SimplicialError> {
        assert_eq!(vertex_map.len(), source.vertex_count());
        for s in source.all_simplices() {
            let mut img: Vec<usize> = s.iter().map(|&v| vertex_map[v]).collect();
            img.sort_unstable();
            img.dedup();
            if !target.contains(&img) {
                return Err(SimplicialError::NotSimplicial);
            }
        }
        Ok(SimplicialMap {
            source,
            target,
            vertex_map,
        })
    }

    /// The induced chain map (degenerate simplices map to zero; otherwise
    /// the sign is the parity of the permutation sorting the image tuple).
    pub fn chain_map(&self) -> Result<ChainMap, SimplicialError> {
        let dims = self.source.by_dim.len();
        let mut components = Vec::with_capacity(dims);
        for d in 0..dims {
            let mut m = IntMatrix::zeros(
                self.target.simplices(d).len(),
                self.source.simplices(d).len(),
            );
            for (j, s) in self.source.simplices(d).iter().enumerate() {
                let img: Vec<usize> = s.iter().map(|&v| self.vertex_map[v]).collect();
                let mut sorted = img.clone();
                sorted.sort_unstable();
                if sorted.windows(2).any(|w| w[0] == w[1]) {
                    continue; // degenerate
                }
                let sign = permutation_sign(&img);
                let i = self
                    .target
                    .simplex_index(d, &sorted)
                    .expect("validated at construction");
                m[(i, j)] = BigInt::from(sign);
            }
            components.push(m);
        }
        Ok(ChainMap::new(
            self.source.chain_complex(),
            self.target.chain_complex(),
            0,
            components,
        )?)
    }
}

fn permutation_sign(tuple: &[usize]) -> i64 {
    let mut sign = 1i64;
    for i in 0..tuple.len() {
        for j in (i + 1)..tuple.len() {
            if tuple[i] > tuple[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// A 1-cycle given as consecutive directed edges. Returns the chain vector
/// in C_1 of `complex`, or None if some edge is missing or the steps do not
/// connect.
pub fn edge_cycle_chain(complex: &SimplicialComplex, path: &[(usize, usize)]) -> Option<Vec<BigInt>> {
    let mut chain = vec![BigInt::zero(); complex.simplices(1).len()];
    for w in path.windows(2) {
        if w[0].1 != w[1].0 {
            return None;
        }
    }
    for &(u, v) in path {
        let (key, sign) = if u < v { ([u, v], 1) } else { ([v, u], -1) };
        let idx = complex.simplex_index(1, &key)?;
        chain[idx] += BigInt::from(sign);
    }
    Some(chain)
}
