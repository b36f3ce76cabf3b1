//! The Atiyah-Hirzebruch spectral sequence of a skeleton filtration. With an
//! ordinary constant coefficient group the full axiomatic engine runs on
//! exact relative simplicial cohomology. With a 2-periodic tabular theory
//! (point groups only) the first page is cellular cochains with table
//! coefficients, the differential is the simplicial coboundary, and pages
//! beyond E_2 are refused unless no higher differential has room.

use super::axiomatic::{AxiomaticSystem, FilteredModuleData};
use super::SpectralError;
use crate::exactalg::{kernel, subquotient, FPAbelianGroup, IntMatrix};
use crate::simplicial::SimplicialComplex;
use std::collections::BTreeMap;

/// Coefficient data for the AHSS.
#[derive(Debug, Clone)]
pub enum CoefficientTheory {
    /// Ordinary cohomology with a constant coefficient group.
    Ordinary(FPAbelianGroup),
    /// A 2-periodic graded table of point groups `[G^0, G^1]` (for complex
    /// K-theory: `[Z, 0]`). Only the first two pages are available.
    Tabular([FPAbelianGroup; 2]),
}

/// Result of building the AHSS: ordinary theories yield a full axiomatic
/// system; tabular theories yield the restricted two-page engine.
#[derive(Debug, Clone)]
pub enum AhssSystem {
    Ordinary(AxiomaticSystem),
    Tabular(TabularAhss),
}

/// Kronecker product `a ⊗ I_w` in the index order (cell, copy).
fn kron_with_identity(a: &IntMatrix, w: usize) -> IntMatrix {
    let mut out = IntMatrix::zeros(a.rows() * w, a.cols() * w);
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            if num_traits::Zero::is_zero(&a[(i, j)]) {
                continue;
            }
            for k in 0..w {
                out[(i * w + k, j * w + k)] = a[(i, j)].clone();
            }
        }
    }
    out
}

fn coefficient_relations(cells: usize, g: &FPAbelianGroup) -> IntMatrix {
    let w = g.generator_count();
    let t = g.torsion().len();
    let mut rel = IntMatrix::zeros(cells * w, cells * t);
    for c in 0..cells {
        for (j, o) in g.torsion().iter().enumerate() {
            rel[(c * w + j, c * t + j)] = o.clone();
        }
    }
    rel
}

/// Build the AHSS of the skeleton filtration of `x` for the given theory.
pub fn ahss(
    x: &SimplicialComplex,
    theory: &CoefficientTheory,
) -> Result<AhssSystem, SpectralError> {
    match theory {
        CoefficientTheory::Ordinary(g) => {
            let m = x.dim().max(0);
            let w = g.generator_count();
            let count = (m + 1) as usize;
            let mut ambient = Vec::with_capacity(count);
            let mut diffs = Vec::with_capacity(count);
            let mut filt = Vec::with_capacity(count);
            let mut relations = Vec::with_capacity(count);
            for n in 0..count {
                let cells = x.simplices(n).len();
                ambient.push(cells * w);
                diffs.push(kron_with_identity(&x.coboundary(n), w));
                // Cochains supported on dimension >= p form F^p; every
                // degree-n generator has filtration value n.
                filt.push(vec![n; cells * w]);
                relations.push(coefficient_relations(cells, g));
            }
            let data = FilteredModuleData {
                lo: 0,
                ambient,
                diffs,
                filt,
                relations,
                length: count,
            };
            Ok(AhssSystem::Ordinary(AxiomaticSystem::from_module_data(
                &data,
            )?))
        }
        CoefficientTheory::Tabular(table) => Ok(AhssSystem::Tabular(TabularAhss::new(
            x.clone(),
            table.clone(),
        )?)),
    }
}

/// The tabular (K-theory style) AHSS: `E_1^{p,s} = C^p(X, G^s)` with the
/// simplicial coboundary as `d_1`, periodic in `s` with period 2.
#[derive(Debug, Clone)]
pub struct TabularAhss {
    complex: SimplicialComplex,
    table: [FPAbelianGroup; 2],
    e2: BTreeMap<(usize, usize), FPAbelianGroup>,
}

impl TabularAhss {
    fn new(
        complex: SimplicialComplex,
        table: [FPAbelianGroup; 2],
    ) -> Result<TabularAhss, SpectralError> {
        let dim = complex.dim().max(0) as usize;
        let mut e2 = BTreeMap::new();
        for (sigma, g) in table.iter().enumerate() {
            let w = g.generator_count();
            if w == 0 {
                continue;
            }
            for p in 0..=dim {
                let cells = complex.simplices(p).len();
                let d_out = kron_with_identity(&complex.coboundary(p), w);
                let d_in = if p == 0 {
                    IntMatrix::zeros(cells * w, 0)
                } else {
                    kron_with_identity(&complex.coboundary(p - 1), w)
                };
                let rel_here = coefficient_relations(cells, g);
                let rel_up = coefficient_relations(complex.simplices(p + 1).len(), g);
                // Numerator: {x : d x in relations}; denominator: image + relations.
                let stacked = d_out.hstack(&rel_up);
                let k = kernel(&stacked);
                let num = k.select_rows(&(0..cells * w).collect::<Vec<_>>());
                let den = d_in.hstack(&rel_here);
                let group = subquotient(&num, &den)
                    .map_err(SpectralError::from)?
                    .group()
                    .clone();
                e2.insert((p, sigma), group);
            }
        }
        Ok(TabularAhss { complex, table, e2 })
    }

    pub fn table(&self) -> &[FPAbelianGroup; 2] {
        &self.table
    }

    /// `E_1^{p,sigma} = C^p(X, G^sigma)`: one copy of the table group per
    /// p-simplex (wedge-of-spheres additivity of the point groups).
    pub fn e1(&self, p: usize, sigma: usize) -> FPAbelianGroup {
        let g = &self.table[sigma % 2];
        let mut acc = FPAbelianGroup::trivial();
        for _ in 0..self.complex.simplices(p).len() {
            acc = acc.direct_sum(g);
        }
        acc
    }

    /// `d_1`: the simplicial coboundary tensored with the identity of the
    /// table group.
    pub fn d1(&self, p: usize, sigma: usize) -> IntMatrix {
        let w = self.table[sigma % 2].generator_count();
        kron_with_identity(&self.complex.coboundary(p), w)
    }

    pub fn e2(&self, p: usize, sigma: usize) -> FPAbelianGroup {
        self.e2
            .get(&(p, sigma % 2))
            .cloned()
            .unwrap_or_else(FPAbelianGroup::trivial)
    }

    /// Whether some differential `d_r` with `r >= 2` could be nonzero on
    /// dimensional grounds: a nonzero `E_2` source with a nonzero `E_2`
    /// target `r` columns to the right on the other parity row.
    pub fn has_room_for_higher_differentials(&self) -> bool {
        let dim = self.complex.dim().max(0) as usize;
        for r in 2..=dim {
            for p in 0..=dim {
                for sigma in 0..2usize {
                    if self.e2(p, sigma).is_trivial() {
                        continue;
                    }
                    let target_sigma = (sigma + 1 + r) % 2;
                    if p + r <= dim && !self.e2(p + r, target_sigma).is_trivial() {
                        return true;
                    }
                }
            }
        }
        false
    }

    /// Pages: r = 1 and r = 2 are exact; for r > 2 the table alone cannot
    /// determine the differentials, so the call is refused unless the
    /// dimension of the complex leaves no room for any of them, in which
    /// case `E_infinity = E_2` up to extensions.
    pub fn page_groups(
        &self,
        r: usize,
    ) -> Result<BTreeMap<(usize, usize), FPAbelianGroup>, SpectralError> {
        let dim = self.complex.dim().max(0) as usize;
        let mut out = BTreeMap::new();
        match r {
            0 => return Err(SpectralError::InsufficientData),
            1 => {
                for p in 0..=dim {
                    for sigma in 0..2usize {
                        out.insert((p, sigma), self.e1(p, sigma));
                    }
                }
            }
            2 => {
                for p in 0..=dim {
                    for sigma in 0..2usize {
                        out.insert((p, sigma), self.e2(p, sigma));
                    }
                }
            }
            _ => {
                if self.has_room_for_higher_differentials() {
                    return Err(SpectralError::InsufficientData);
                }
                return self.page_groups(2);
            }
        }
        Ok(out)
    }

    /// Whether `page_groups(r)` for large r reports `E_infinity = E_2`; the
    /// reassembled groups are then correct only up to extension ambiguity.
    pub fn collapse_is_up_to_extensions(&self) -> bool {
        !self.has_room_for_higher_differentials()
    }

    /// Graded pieces contributing to the degree-n theory group (n mod 2),
    /// assembled from `E_infinity = E_2` when the sequence collapses.
    pub fn assembled_graded(&self, n: usize) -> Result<Vec<FPAbelianGroup>, SpectralError> {
        if self.has_room_for_higher_differentials() {
            return Err(SpectralError::InsufficientData);
        }
        let dim = self.complex.dim().max(0) as usize;
        let mut parts = Vec::new();
        for p in 0..=dim {
            let sigma = (n + 2 * dim - p) % 2; // n - p mod 2
            let g = self.e2(p, sigma);
            if !g.is_trivial() {
                parts.push(g);
            }
        }
        Ok(parts)
    }
}
