//! First-quadrant double complexes with anticommuting differentials, the
//! associated total complex, and the bridge from the commuting convention
//! (vertical maps twisted by (-1)^p).

use super::{FilteredComplex, SpectralError};
use crate::exactalg::IntMatrix;
use std::collections::BTreeMap;

/// Which filtration to put on the total complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TotalFiltration {
    /// By the first (horizontal) index p.
    First,
    /// By the second (vertical) index q.
    Second,
}

/// Finitely supported first-quadrant double complex. Stored data
/// anticommutes: d1 d2 + d2 d1 = 0.
#[derive(Debug, Clone)]
pub struct DoubleComplex {
    ranks: BTreeMap<(usize, usize), usize>,
    /// d1 at (p,q): K^{p,q} -> K^{p+1,q}.
    d1: BTreeMap<(usize, usize), IntMatrix>,
    /// d2 at (p,q): K^{p,q} -> K^{p,q+1}.
    d2: BTreeMap<(usize, usize), IntMatrix>,
}

impl DoubleComplex {
    pub fn new(
        ranks: BTreeMap<(usize, usize), usize>,
        d1: BTreeMap<(usize, usize), IntMatrix>,
        d2: BTreeMap<(usize, usize), IntMatrix>,
    ) -> Result<DoubleComplex, SpectralError> {
        let dc = DoubleComplex { ranks, d1, d2 };
        for (&(p, q), &r) in &dc.ranks {
            let _ = r;
            let h = dc.horizontal(p, q);
            let v = dc.vertical(p, q);
            if h.cols() != dc.rank(p, q)
                || h.rows() != dc.rank(p + 1, q)
                || v.cols() != dc.rank(p, q)
                || v.rows() != dc.rank(p, q + 1)
            {
                return Err(SpectralError::NotADoubleComplex(format!(
                    "differential shape mismatch at ({p}, {q})"
                )));
            }
            if !dc.horizontal(p + 1, q).mul(&h).is_zero() {
                return Err(SpectralError::NotADoubleComplex(format!(
                    "d1^2 != 0 at ({p}, {q})"
                )));
            }
            if !dc.vertical(p, q + 1).mul(&v).is_zero() {
                return Err(SpectralError::NotADoubleComplex(format!(
                    "d2^2 != 0 at ({p}, {q})"
                )));
            }
            let mixed = dc
                .vertical(p + 1, q)
                .mul(&h)
                .add(&dc.horizontal(p, q + 1).mul(&v));
            if !mixed.is_zero() {
                return Err(SpectralError::NotADoubleComplex(format!(
                    "d1 d2 + d2 d1 != 0 at ({p}, {q})"
                )));
            }
        }
        Ok(dc)
    }

    /// Bridge from the commuting convention: multiplies each vertical map in
    /// column p by (-1)^p, after which the data anticommutes.
    pub fn from_commuting(
        ranks: BTreeMap<(usize, usize), usize>,
        d1: BTreeMap<(usize, usize), IntMatrix>,
        d2: BTreeMap<(usize, usize), IntMatrix>,
    ) -> Result<DoubleComplex, SpectralError> {
        let twisted = d2
            .into_iter()
            .map(|((p, q), m)| {
                let m = if p % 2 == 1 { m.neg() } else { m };
                ((p, q), m)
            })
            .collect();
        DoubleComplex::new(ranks, d1, twisted)
    }

    pub fn rank(&self, p: usize, q: usize) -> usize {
        *self.ranks.get(&(p, q)).unwrap_or(&0)
    }

    pub fn support(&self) -> Vec<(usize, usize)> {
        self.ranks
            .iter()
            .filter(|(_, &r)| r > 0)
            .map(|(&k, _)| k)
            .collect()
    }

    pub fn horizontal(&self, p: usize, q: usize) -> IntMatrix {
        self.d1
            .get(&(p, q))
            .cloned()
            .unwrap_or_else(|| IntMatrix::zeros(self.rank(p + 1, q), self.rank(p, q)))
    }

    pub fn vertical(&self, p: usize, q: usize) -> IntMatrix {
        self.d2
            .get(&(p, q))
            .cloned()
            .unwrap_or_else(|| IntMatrix::zeros(self.rank(p, q + 1), self.rank(p, q)))
    }

    /// The total complex `T^n = ⊕_{p+q=n} K^{p,q}` with `d = d1 + d2` and
    /// the chosen filtration attached.
    pub fn total_complex(&self, which: TotalFiltration) -> Result<FilteredComplex, SpectralError> {
        let support = self.support();
        let max_n = support.iter().map(|&(p, q)| p + q).max().unwrap_or(0);
        // Block layout per total degree, ordered by p.
        let blocks_at = |n: usize| -> Vec<(usize, usize)> {
            (0..=n)
                .map(|p| (p, n - p))
                .filter(|&(p, q)| self.rank(p, q) > 0)
                .collect()
        };
        let offset_of = |blocks: &[(usize, usize)], target: (usize, usize)| -> Option<usize> {
            let mut off = 0;
            for &b in blocks {
                if b == target {
                    return Some(off);
                }
                off += self.rank(b.0, b.1);
            }
            None
        };
        let mut ranks = Vec::new();
        let mut diffs = Vec::new();
        let mut filtration = Vec::new();
        for n in 0..=max_n {
            let blocks = blocks_at(n);
            let total: usize = blocks.iter().map(|&(p, q)| self.rank(p, q)).sum();
            ranks.push(total);
            let mut filt = Vec::with_capacity(total);
            for &(p, q) in &blocks {
                let value = match which {
                    TotalFiltration::First => p,
                    TotalFiltration::Second => q,
                };
                filt.extend(std::iter::repeat_n(value, self.rank(p, q)));
            }
            filtration.push(filt);

            let next_blocks = blocks_at(n + 1);
            let next_total: usize = next_blocks.iter().map(|&(p, q)| self.rank(p, q)).sum();
            let mut d = IntMatrix::zeros(next_total, total);
            let mut col_off = 0usize;
            for &(p, q) in &blocks {
                let r = self.rank(p, q);
                for (mat, tgt) in [
                    (self.horizontal(p, q), (p + 1, q)),
                    (self.vertical(p, q), (p, q + 1)),
                ] {
                    if let Some(row_off) = offset_of(&next_blocks, tgt) {
                        for i in 0..mat.rows() {
                            for j in 0..r {
                                if !num_traits::Zero::is_zero(&mat[(i, j)]) {
                                    d[(row_off + i, col_off + j)] = mat[(i, j)].clone();
                                }
                            }
                        }
                    }
                }
                col_off += r;
            }
            diffs.push(d);
        }
        // For the second filtration the roles of p and q swap; reuse the
        // same layout but with filtration by q, which the loop above did.
        FilteredComplex::new(0, ranks, diffs, filtration)
    }
}
