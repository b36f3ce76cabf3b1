//! Spectral sequences of finitely filtered cochain complexes via explicit
//! lattice subquotients, double complexes with both filtrations, an
//! axiomatized engine over quotient-cohomology data, and the
//! Atiyah-Hirzebruch instance over a skeleton filtration.

pub mod ahss;
pub mod axiomatic;
pub mod double_complex;

pub use ahss::{ahss, AhssSystem, CoefficientTheory, TabularAhss};
pub use axiomatic::AxiomaticSystem;
pub use double_complex::{DoubleComplex, TotalFiltration};

use crate::exactalg::{
    kernel, lattice_intersect_coordinate_kernel, solve, subquotient, ExactAlgError,
    FPAbelianGroup, GroupHom, IntMatrix, Presentation,
};
use crate::par;
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpectralError {
    #[error("differential does not preserve the filtration at degree {0}, generator {1}")]
    FiltrationNotPreserved(i64, usize),
    #[error("differential squares to a nonzero map at degree {0}")]
    NotAComplex(i64),
    #[error("not a double complex: {0}")]
    NotADoubleComplex(String),
    #[error("no page entry at ({0}, {1})")]
    OutOfRange(i64, i64),
    #[error("turn_page verification failed at ({0}, {1})")]
    PageMismatch(i64, i64),
    #[error("axiom violation: {0}")]
    AxiomViolation(String),
    #[error("tabular theory cannot produce differentials beyond d_1")]
    InsufficientData,
    #[error(transparent)]
    Algebra(#[from] ExactAlgError),
}

/// A cochain complex of free abelian groups with a finite filtration given
/// per generator: `F^p` in each degree is spanned by the generators with
/// filtration value at least `p`. Values lie in `0..length`, so
/// `F^0 = everything` and `F^length = 0`.
#[derive(Debug, Clone)]
pub struct FilteredComplex {
    lo: i64,
    ranks: Vec<usize>,
    /// `diffs[i]` is `d: C^{lo+i} -> C^{lo+i+1}`; the last one has 0 rows.
    diffs: Vec<IntMatrix>,
    filtration: Vec<Vec<usize>>,
    length: usize,
}

impl FilteredComplex {
    pub fn new(
        lo: i64,
        ranks: Vec<usize>,
        diffs: Vec<IntMatrix>,
        filtration: Vec<Vec<usize>>,
    ) -> Result<FilteredComplex, SpectralError> {
        assert_eq!(ranks.len(), diffs.len());
        assert_eq!(ranks.len(), filtration.len());
        for (i, d) in diffs.iter().enumerate() {
            let above = if i + 1 < ranks.len() { ranks[i + 1] } else { 0 };
            assert_eq!(d.cols(), ranks[i], "differential {i} column mismatch");
            assert_eq!(d.rows(), above, "differential {i} row mismatch");
            assert_eq!(filtration[i].len(), ranks[i], "filtration length mismatch");
        }
        let length = filtration
            .iter()
            .flatten()
            .max()
            .map_or(1, |&m| m + 1);
        let fc = FilteredComplex {
            lo,
            ranks,
            diffs,
            filtration,
            length,
        };
        // d^2 = 0.
        for n in fc.lo..fc.hi() {
            if !fc.diff(n + 1).mul(&fc.diff(n)).is_zero() {
                return Err(SpectralError::NotAComplex(n));
            }
        }
        // d preserves the filtration.
        for n in fc.lo..=fc.hi() {
            let d = fc.diff(n);
            for (j, &p) in fc.filt(n).iter().enumerate() {
                for i in 0..d.rows() {
                    if !d[(i, j)].is_zero() && fc.filt(n + 1)[i] < p {
                        return Err(SpectralError::FiltrationNotPreserved(n, j));
                    }
                }
            }
        }
        Ok(fc)
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.ranks.len() as i64 - 1
    }

    /// Filtration length l: values run in `0..l`, `F^l = 0`.
    pub fn length(&self) -> usize {
        self.length
    }

    pub fn rank(&self, n: i64) -> usize {
        if n < self.lo || n > self.hi() {
            0
        } else {
            self.ranks[(n - self.lo) as usize]
        }
    }

    pub fn filt(&self, n: i64) -> &[usize] {
        static EMPTY: Vec<usize> = Vec::new();
        if n < self.lo || n > self.hi() {
            &EMPTY
        } else {
            &self.filtration[(n - self.lo) as usize]
        }
    }

    /// `d: C^n -> C^{n+1}`.
    pub fn diff(&self, n: i64) -> IntMatrix {
        if n < self.lo || n > self.hi() {
            return IntMatrix::zeros(self.rank(n + 1), self.rank(n));
        }
        let idx = (n - self.lo) as usize;
        if idx + 1 == self.ranks.len() {
            IntMatrix::zeros(self.rank(n + 1), self.rank(n))
        } else {
            self.diffs[idx].clone()
        }
    }

    fn indices_ge(&self, n: i64, p: i64) -> Vec<usize> {
        self.filt(n)
            .iter()
            .enumerate()
            .filter(|&(_, &f)| f as i64 >= p)
            .map(|(i, _)| i)
            .collect()
    }

    fn indices_lt(&self, n: i64, p: i64) -> Vec<usize> {
        self.filt(n)
            .iter()
            .enumerate()
            .filter(|&(_, &f)| (f as i64) < p)
            .map(|(i, _)| i)
            .collect()
    }

    /// Inclusion matrix of `F^p` in degree n (columns are basis vectors).
    fn inclusion(&self, n: i64, p: i64) -> IntMatrix {
        let idx = self.indices_ge(n, p);
        let mut m = IntMatrix::zeros(self.rank(n), idx.len());
        for (j, &i) in idx.iter().enumerate() {
            m[(i, j)] = BigInt::from(1);
        }
        m
    }

    /// Lattice of generalized cocycles: `{a in F^p K^n : d a in F^{p+r}}`,
    /// as columns in the ambient degree-n lattice.
    fn z_lattice(&self, n: i64, p: i64, target: i64) -> IntMatrix {
        let cols = self.indices_ge(n, p);
        let rows = self.indices_lt(n + 1, target);
        let d_sub = self.diff(n).select_rows(&rows).select_cols(&cols);
        let k = kernel(&d_sub);
        let mut out = IntMatrix::zeros(self.rank(n), k.cols());
        for (jj, &i) in cols.iter().enumerate() {
            for c in 0..k.cols() {
                out[(i, c)] = k[(jj, c)].clone();
            }
        }
        out
    }
}

/// One page entry: the canonical group together with representative lifts
/// of its generators inside the ambient complex (columns of `lifts`).
#[derive(Debug, Clone)]
pub struct PageEntry {
    pub presentation: Presentation,
    pub lifts: IntMatrix,
}

impl PageEntry {
    pub fn group(&self) -> &FPAbelianGroup {
        self.presentation.group()
    }
}

/// A spectral sequence page: entries and differentials of bidegree
/// `(r, 1-r)` keyed by `(p, q)`.
#[derive(Debug, Clone)]
pub struct Page {
    pub r: usize,
    entries: BTreeMap<(i64, i64), PageEntry>,
    differentials: BTreeMap<(i64, i64), GroupHom>,
}

impl Page {
    pub fn entry(&self, p: i64, q: i64) -> FPAbelianGroup {
        self.entries
            .get(&(p, q))
            .map_or_else(FPAbelianGroup::trivial, |e| e.group().clone())
    }

    pub fn entry_detail(&self, p: i64, q: i64) -> Option<&PageEntry> {
        self.entries.get(&(p, q))
    }

    pub fn differential(&self, p: i64, q: i64) -> GroupHom {
        self.differentials.get(&(p, q)).cloned().unwrap_or_else(|| {
            GroupHom::zero(
                &self.entry(p, q),
                &self.entry(p + self.r as i64, q - self.r as i64 + 1),
            )
        })
    }

    pub fn slots(&self) -> Vec<(i64, i64)> {
        self.entries.keys().cloned().collect()
    }

    /// All nontrivial entries.
    pub fn nonzero(&self) -> Vec<((i64, i64), FPAbelianGroup)> {
        self.entries
            .iter()
            .filter(|(_, e)| !e.group().is_trivial())
            .map(|(k, e)| (*k, e.group().clone()))
            .collect()
    }
}

fn page_slots(f: &FilteredComplex) -> Vec<(i64, i64)> {
    let l = f.length() as i64;
    let mut out = Vec::new();
    for p in 0..=l {
        for n in f.lo()..=f.hi() {
            out.push((p, n - p));
        }
    }
    out
}

fn page_entry(f: &FilteredComplex, r: usize, p: i64, q: i64) -> Result<PageEntry, SpectralError> {
    let n = p + q;
    let z = f.z_lattice(n, p, p + r as i64);
    let fp1 = f.inclusion(n, p + 1);
    let zbar = z.hstack(&fp1);
    // B-bar = (d F^{p-r+1} + F^{p+1}) ∩ F^p.
    let src = f.inclusion(n - 1, p - r as i64 + 1);
    let image = f.diff(n - 1).mul(&src);
    let w = image.hstack(&fp1);
    let bbar = lattice_intersect_coordinate_kernel(&w, &f.indices_lt(n, p));
    let presentation = subquotient(&zbar, &bbar)?;

    // Replace each generator representative by one inside the Z-lattice
    // (subtract the F^{p+1} component) so the differential is just `d`.
    let stacked = z.hstack(&fp1);
    let gcount = presentation.group().generator_count();
    let mut lifts = IntMatrix::zeros(f.rank(n), gcount);
    for gi in 0..gcount {
        let g = presentation.generator(gi);
        let c = solve(&stacked, &g).expect("generators lie in the numerator lattice");
        let zc: Vec<BigInt> = c[..z.cols()].to_vec();
        let rep = z.mul_vec(&zc);
        for i in 0..f.rank(n) {
            lifts[(i, gi)] = rep[i].clone();
        }
    }
    Ok(PageEntry {
        presentation,
        lifts,
    })
}

/// The page `E_r` of a filtered complex, entries computed as lattice
/// subquotients of generalized cocycles over coboundaries.
pub fn page(f: &FilteredComplex, r: usize) -> Result<Page, SpectralError> {
    page_with(f, r, true)
}

/// Sequential variant of [`page`], for benchmarking the parallel feature.
pub fn page_sequential(f: &FilteredComplex, r: usize) -> Result<Page, SpectralError> {
    page_with(f, r, false)
}

fn page_with(f: &FilteredComplex, r: usize, parallel: bool) -> Result<Page, SpectralError> {
    let slots = page_slots(f);
    let compute = |&(p, q): &(i64, i64)| -> Result<((i64, i64), PageEntry), SpectralError> {
        Ok(((p, q), page_entry(f, r, p, q)?))
    };
    let results: Vec<_> = if parallel {
        par::map_items(slots.clone(), |s| compute(&s))
    } else {
        par::map_seq(slots.clone(), |s| compute(&s))
    };
    let mut entries = BTreeMap::new();
    for res in results {
        let (k, e) = res?;
        entries.insert(k, e);
    }

    let mut differentials = BTreeMap::new();
    for &(p, q) in &slots {
        let src = &entries[&(p, q)];
        let n = p + q;
        let tgt_key = (p + r as i64, q - r as i64 + 1);
        let target_group = entries
            .get(&tgt_key)
            .map_or_else(FPAbelianGroup::trivial, |e| e.group().clone());
        let gcount = src.group().generator_count();
        if gcount == 0 || target_group.is_trivial() {
            differentials.insert(
                (p, q),
                GroupHom::zero(src.group(), &target_group),
            );
            continue;
        }
        let tgt = &entries[&tgt_key];
        let mut cols = Vec::with_capacity(gcount);
        for gi in 0..gcount {
            let dz = f.diff(n).mul_vec(&src.lifts.column(gi));
            let coords = tgt
                .presentation
                .express(&dz)
                .expect("d of a generalized cocycle lands in the target lattice");
            cols.push(coords);
        }
        let matrix = IntMatrix::from_columns(target_group.generator_count(), &cols);
        differentials.insert(
            (p, q),
            GroupHom::new(src.group().clone(), target_group, matrix)?,
        );
    }
    Ok(Page {
        r,
        entries,
        differentials,
    })
}

/// The differential `d_r` out of `(p, q)` as a standalone hom.
pub fn differential(
    f: &FilteredComplex,
    r: usize,
    p: i64,
    q: i64,
) -> Result<GroupHom, SpectralError> {
    let pg = page(f, r)?;
    if pg.entry_detail(p, q).is_none() {
        return Err(SpectralError::OutOfRange(p, q));
    }
    Ok(pg.differential(p, q))
}

/// Compute `E_{r+1}` from `E_r` and verify entrywise that it equals
/// `ker d_r / im d_r` (both sides computed independently). A mismatch
/// signals an implementation bug, not bad input.
pub fn turn_page(current: &Page, f: &FilteredComplex) -> Result<Page, SpectralError> {
    let r = current.r;
    let next = page(f, r + 1)?;
    for (p, q) in next.slots() {
        let incoming = current.differential(p - r as i64, q + r as i64 - 1);
        let outgoing = current.differential(p, q);
        let homology = crate::exactalg::hom_homology(&incoming, &outgoing)?;
        if homology != next.entry(p, q) {
            return Err(SpectralError::PageMismatch(p, q));
        }
    }
    Ok(next)
}

/// Rows of the limit comparison: `(p, q, E_infinity entry, graded piece of
/// the total cohomology)`.
#[derive(Debug, Clone)]
pub struct LimitReport {
    pub rows: Vec<(i64, i64, FPAbelianGroup, FPAbelianGroup)>,
    pub pass: bool,
}

/// Compare `E_infinity = page(f, l+1)` against the independently computed
/// graded pieces of the filtration on the cohomology of the underlying
/// complex.
pub fn limit_vs_total(f: &FilteredComplex) -> Result<LimitReport, SpectralError> {
    let l = f.length();
    let e_inf = page(f, l + 1)?;
    let mut rows = Vec::new();
    let mut pass = true;
    for n in f.lo()..=f.hi() {
        let cocycles = kernel(&f.diff(n));
        let boundaries = f.diff(n - 1);
        let zp = |p: i64| -> IntMatrix {
            lattice_intersect_coordinate_kernel(&cocycles, &f.indices_lt(n, p))
        };
        for p in 0..=l as i64 {
            let num = zp(p).hstack(&boundaries);
            let den = zp(p + 1).hstack(&boundaries);
            let graded = subquotient(&num, &den)?.group().clone();
            let entry = e_inf.entry(p, n - p);
            if graded != entry {
                pass = false;
            }
            rows.push((p, n - p, entry, graded));
        }
    }
    Ok(LimitReport { rows, pass })
}
