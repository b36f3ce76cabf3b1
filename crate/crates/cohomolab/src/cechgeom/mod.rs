//! Discrete Cech-de Rham geometry over a simplicial base: covers by
//! subcomplexes, real-valued hypercochains, line-bundle and gerbe
//! hypercocycles in the logarithm convention (g = e^{2 pi i rho}), Bockstein
//! Chern classes, curvature, and holonomy of loops, paths and surfaces.
//!
//! Sign dictionary used throughout (one of the two orientations the source
//! material alternates between; fixed so that holonomy is invariant under
//! chart reassignment and gauge transformation):
//!   line cocycle      A_beta - A_alpha = d rho_{alpha beta}
//!   line gauge        rho += cech_delta(g), A += d g
//!   gerbe cocycle     delta Lambda = d rho3,  B_beta - B_alpha = d Lambda_{alpha beta}
//!   gerbe gauge       rho3 += cech_delta(h), Lambda += d h + cech_delta(a), B += d a

pub mod fixtures;
pub mod holonomy;
pub mod subdivide;

#[cfg(test)]
mod tests;

pub use holonomy::{
    holonomy_loop, holonomy_loops, holonomy_loops_sequential, holonomy_open_surface,
    holonomy_path, holonomy_surface, ChartedLoop, ChartedPath, ChartedSurface,
};

use crate::complexes::Coefficients;
use crate::exactalg::IntMatrix;
use crate::simplicial::SimplicialComplex;
use crate::spectral::{DoubleComplex, SpectralError};
use num_bigint::BigInt;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CechError {
    #[error("cover is invalid: {0}")]
    BadCover(String),
    #[error("chart assignment incompatible: {0}")]
    ChartIncompatible(String),
    #[error("surface is not closed")]
    NotClosed,
    #[error("not a trivialization: {0}")]
    NotATrivialization(String),
    #[error("not a cocycle: {0}")]
    NotACocycle(String),
    #[error("curvature gluing mismatch: {0}")]
    GluingMismatch(String),
    #[error("cochain bidegree mismatch")]
    BidegreeMismatch,
    #[error("coboundary is not vertex-constant on an overlap")]
    NotConstantCoboundary,
}

/// A cover of a simplicial base by subcomplexes, with the nerve of nonempty
/// intersections (closed under subtuples by construction).
#[derive(Debug, Clone)]
pub struct Cover {
    base: SimplicialComplex,
    charts: Vec<SimplicialComplex>,
    nerve: Vec<Vec<usize>>,
}

impl Cover {
    pub fn new(base: SimplicialComplex, charts: Vec<SimplicialComplex>) -> Result<Cover, CechError> {
        if charts.len() > 16 {
            return Err(CechError::BadCover(format!(
                "{} charts; the nerve enumeration supports at most 16",
                charts.len()
            )));
        }
        for (i, u) in charts.iter().enumerate() {
            for s in u.all_simplices() {
                if !base.contains(&s) {
                    return Err(CechError::BadCover(format!(
                        "chart {i} contains {s:?} missing from the base"
                    )));
                }
            }
        }
        for s in base.all_simplices() {
            if !charts.iter().any(|u| u.contains(&s)) {
                return Err(CechError::BadCover(format!("simplex {s:?} is uncovered")));
            }
        }
        let mut nerve = Vec::new();
        let n = charts.len();
        for mask in 1u32..(1 << n) {
            let tuple: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            let nonempty = base
                .all_simplices()
                .iter()
                .any(|s| tuple.iter().all(|&a| charts[a].contains(s)));
            if nonempty {
                nerve.push(tuple);
            }
        }
        nerve.sort_by_key(|t| (t.len(), t.clone()));
        Ok(Cover {
            base,
            charts,
            nerve,
        })
    }

    pub fn base(&self) -> &SimplicialComplex {
        &self.base
    }

    pub fn chart_count(&self) -> usize {
        self.charts.len()
    }

    pub fn chart(&self, alpha: usize) -> &SimplicialComplex {
        &self.charts[alpha]
    }

    /// Sorted tuples of every arity with nonempty intersection.
    pub fn nerve(&self) -> &[Vec<usize>] {
        &self.nerve
    }

    pub fn nerve_tuples(&self, arity: usize) -> Vec<Vec<usize>> {
        self.nerve
            .iter()
            .filter(|t| t.len() == arity)
            .cloned()
            .collect()
    }

    pub fn in_intersection(&self, tuple: &[usize], simplex: &[usize]) -> bool {
        tuple.iter().all(|&a| self.charts[a].contains(simplex))
    }

    /// d-simplices of the base lying in the intersection of the tuple.
    pub fn intersection_simplices(&self, tuple: &[usize], d: usize) -> Vec<Vec<usize>> {
        self.base
            .simplices(d)
            .iter()
            .filter(|s| self.in_intersection(tuple, s))
            .cloned()
            .collect()
    }

    pub fn charts_containing(&self, simplex: &[usize]) -> Vec<usize> {
        (0..self.charts.len())
            .filter(|&a| self.charts[a].contains(simplex))
            .collect()
    }

    /// Good-cover diagnostic: every chart and every nonempty intersection is
    /// acyclic (trivial reduced homology). Not a precondition for any
    /// formula; the invariance theorems assume it.
    pub fn is_good(&self) -> bool {
        for tuple in &self.nerve {
            let sims: Vec<Vec<usize>> = self
                .base
                .all_simplices()
                .into_iter()
                .filter(|s| self.in_intersection(tuple, s))
                .collect();
            if sims.is_empty() {
                return false;
            }
            let sub = SimplicialComplex::from_simplices(self.base.vertex_count(), &sims)
                .expect("intersection of subcomplexes is a complex");
            let top = sub.dim().max(0);
            for n in 0..=top {
                let h = sub
                    .chain_complex()
                    .augmented()
                    .homology(n, Coefficients::Integers)
                    .expect("valid complex");
                if !h.is_trivial() {
                    return false;
                }
            }
        }
        true
    }

    /// The integer Cech-simplicial double complex of the cover:
    /// K^{p,q} = direct sum over (p+1)-tuples of the q-cochains of the
    /// intersection, with the Cech differential horizontal and the
    /// simplicial coboundary vertical (built commuting, stored
    /// anticommuting).
    pub fn double_complex(&self) -> Result<DoubleComplex, SpectralError> {
        let max_arity = self.nerve.iter().map(Vec::len).max().unwrap_or(0);
        let top_dim = self.base.dim().max(0) as usize;
        let block = |tuple: &[usize], q: usize| self.intersection_simplices(tuple, q);
        let mut ranks = BTreeMap::new();
        let mut d1 = BTreeMap::new();
        let mut d2 = BTreeMap::new();
        for p in 0..max_arity {
            let tuples = self.nerve_tuples(p + 1);
            for q in 0..=top_dim {
                let rank: usize = tuples.iter().map(|t| block(t, q).len()).sum();
                if rank > 0 {
                    ranks.insert((p, q), rank);
                }
            }
        }
        let rank_at = |p: usize, q: usize| -> usize { *ranks.get(&(p, q)).unwrap_or(&0) };
        let offset = |tuples: &[Vec<usize>], t: &[usize], q: usize| -> usize {
            let mut off = 0;
            for u in tuples {
                if u.as_slice() == t {
                    break;
                }
                off += block(u, q).len();
            }
            off
        };
        for p in 0..max_arity {
            let tuples = self.nerve_tuples(p + 1);
            let next_tuples = self.nerve_tuples(p + 2);
            for q in 0..=top_dim {
                if rank_at(p, q) == 0 {
                    continue;
                }
                // Horizontal: alternating sum over the facets of each tuple.
                let mut h = IntMatrix::zeros(rank_at(p + 1, q), rank_at(p, q));
                for big in &next_tuples {
                    let row_off = offset(&next_tuples, big, q);
                    let rows = block(big, q);
                    for (i, _) in big.iter().enumerate() {
                        let mut small = big.clone();
                        small.remove(i);
                        if !self.nerve.contains(&small) {
                            continue;
                        }
                        let col_off = offset(&tuples, &small, q);
                        let cols = block(&small, q);
                        let sign = if i % 2 == 0 { 1 } else { -1 };
                        for (ri, s) in rows.iter().enumerate() {
                            if let Some(ci) = cols.iter().position(|c| c == s) {
                                h[(row_off + ri, col_off + ci)] += BigInt::from(sign);
                            }
                        }
                    }
                }
                d1.insert((p, q), h);
                // Vertical: simplicial coboundary within each intersection.
                if q < top_dim && rank_at(p, q + 1) > 0 {
                    let cob = self.base.coboundary(q);
                    let mut v = IntMatrix::zeros(rank_at(p, q + 1), rank_at(p, q));
                    for t in &tuples {
                        let row_off = offset(&tuples, t, q + 1);
                        let col_off = offset(&tuples, t, q);
                        let rows = block(t, q + 1);
                        let cols = block(t, q);
                        for (ri, rs) in rows.iter().enumerate() {
                            let gi = self.base.simplex_index(q + 1, rs).expect("in base");
                            for (ci, cs) in cols.iter().enumerate() {
                                let gj = self.base.simplex_index(q, cs).expect("in base");
                                if !num_traits::Zero::is_zero(&cob[(gi, gj)]) {
                                    v[(row_off + ri, col_off + ci)] = cob[(gi, gj)].clone();
                                }
                            }
                        }
                    }
                    d2.insert((p, q), v);
                }
            }
        }
        DoubleComplex::from_commuting(ranks, d1, d2)
    }
}

/// A Cech-de Rham cochain of bidegree (p, q): real-valued simplicial
/// q-cochains on the (p+1)-fold intersections, stored on sorted chart
/// tuples and sorted simplices; signs for other orderings come from
/// permutation parity.
#[derive(Debug, Clone, PartialEq)]
pub struct CDCochain {
    p: usize,
    q: usize,
    values: BTreeMap<Vec<usize>, BTreeMap<Vec<usize>, f64>>,
}

fn parity_sign(tuple: &[usize]) -> f64 {
    let mut sign = 1.0;
    for i in 0..tuple.len() {
        for j in (i + 1)..tuple.len() {
            if tuple[i] > tuple[j] {
                sign = -sign;
            }
        }
    }
    sign
}

impl CDCochain {
    pub fn zero(p: usize, q: usize) -> CDCochain {
        CDCochain {
            p,
            q,
            values: BTreeMap::new(),
        }
    }

    pub fn bidegree(&self) -> (usize, usize) {
        (self.p, self.q)
    }

    /// Set the value on a sorted chart tuple and sorted simplex.
    pub fn set(&mut self, tuple: &[usize], simplex: &[usize], value: f64) {
        assert_eq!(tuple.len(), self.p + 1, "tuple arity mismatch");
        assert_eq!(simplex.len(), self.q + 1, "simplex dimension mismatch");
        assert!(tuple.windows(2).all(|w| w[0] < w[1]), "tuple must be sorted");
        assert!(
            simplex.windows(2).all(|w| w[0] < w[1]),
            "simplex must be sorted"
        );
        if value == 0.0 {
            if let Some(m) = self.values.get_mut(tuple) {
                m.remove(simplex);
            }
            return;
        }
        self.values
            .entry(tuple.to_vec())
            .or_default()
            .insert(simplex.to_vec(), value);
    }

    pub fn add_to(&mut self, tuple: &[usize], simplex: &[usize], value: f64) {
        let cur = self.value_sorted(tuple, simplex);
        self.set(tuple, simplex, cur + value);
    }

    fn value_sorted(&self, tuple: &[usize], simplex: &[usize]) -> f64 {
        self.values
            .get(tuple)
            .and_then(|m| m.get(simplex))
            .copied()
            .unwrap_or(0.0)
    }

    /// Value on an arbitrarily ordered tuple and oriented simplex; repeated
    /// chart indices give zero.
    pub fn value(&self, tuple: &[usize], simplex: &[usize]) -> f64 {
        let mut t = tuple.to_vec();
        t.sort_unstable();
        if t.windows(2).any(|w| w[0] == w[1]) {
            return 0.0;
        }
        let mut s = simplex.to_vec();
        s.sort_unstable();
        if s.windows(2).any(|w| w[0] == w[1]) {
            return 0.0;
        }
        parity_sign(tuple) * parity_sign(simplex) * self.value_sorted(&t, &s)
    }

    /// Iterate stored (tuple, simplex, value).
    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &Vec<usize>, f64)> {
        self.values
            .iter()
            .flat_map(|(t, m)| m.iter().map(move |(s, &v)| (t, s, v)))
    }

    pub fn scaled(&self, k: f64) -> CDCochain {
        let mut out = self.clone();
        for m in out.values.values_mut() {
            for v in m.values_mut() {
                *v *= k;
            }
        }
        out
    }

    pub fn plus(&self, other: &CDCochain) -> Result<CDCochain, CechError> {
        if self.bidegree() != other.bidegree() {
            return Err(CechError::BidegreeMismatch);
        }
        let mut out = self.clone();
        for (t, s, v) in other.entries() {
            out.add_to(t, s, v);
        }
        Ok(out)
    }

    /// Every stored value must be supported on the tuple's intersection.
    pub fn validate_support(&self, cover: &Cover) -> Result<(), CechError> {
        for (t, s, _) in self.entries() {
            if !cover.in_intersection(t, s) {
                return Err(CechError::ChartIncompatible(format!(
                    "value on {s:?} outside the intersection of {t:?}"
                )));
            }
        }
        Ok(())
    }

    /// Cech differential: (delta c)_{a_0..a_{p+1}} = sum_i (-1)^i c with a_i
    /// omitted, restricted to the smaller intersection.
    pub fn cech_delta(&self, cover: &Cover) -> CDCochain {
        let mut out = CDCochain::zero(self.p + 1, self.q);
        for tuple in cover.nerve_tuples(self.p + 2) {
            for simplex in cover.intersection_simplices(&tuple, self.q) {
                let mut acc = 0.0;
                for i in 0..tuple.len() {
                    let mut sub = tuple.clone();
                    sub.remove(i);
                    let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
                    acc += sign * self.value_sorted(&sub, &simplex);
                }
                if acc != 0.0 {
                    out.set(&tuple, &simplex, acc);
                }
            }
        }
        out
    }

    /// Simplicial coboundary on each intersection, in the Stokes
    /// orientation: on an edge it is value(head) - value(tail), so chart
    /// sums emulate integrals of exact forms.
    pub fn simplicial_d(&self, cover: &Cover) -> CDCochain {
        let mut out = CDCochain::zero(self.p, self.q + 1);
        for tuple in cover.nerve_tuples(self.p + 1) {
            for simplex in cover.intersection_simplices(&tuple, self.q + 1) {
                let mut acc = 0.0;
                for k in 0..simplex.len() {
                    let mut face = simplex.clone();
                    face.remove(k);
                    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                    acc += sign * self.value_sorted(&tuple, &face);
                }
                if acc != 0.0 {
                    out.set(&tuple, &simplex, acc);
                }
            }
        }
        out
    }
}

/// Sign convention for the total differential of the Cech-de Rham
/// bicomplex. The stored maps (Cech delta, simplicial d) commute, so one of
/// the two terms carries a sign for the total to square to zero; the two
/// choices present the same bicomplex with commuting or anticommuting data.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TotalConvention {
    /// Vertical term twisted: D = delta + (-1)^p d.
    Commuting,
    /// Cech term twisted so the stored pair anticommutes:
    /// D = (-1)^q delta + d.
    Anticommuting,
}

/// A sum of cochains of fixed total degree, keyed by p.
#[derive(Debug, Clone, Default)]
pub struct HyperCochain {
    pub parts: BTreeMap<usize, CDCochain>,
}

impl HyperCochain {
    pub fn from_parts(parts: Vec<CDCochain>) -> Result<HyperCochain, CechError> {
        let mut map = BTreeMap::new();
        let mut degree = None;
        for c in parts {
            let (p, q) = c.bidegree();
            match degree {
                None => degree = Some(p + q),
                Some(n) if n == p + q => {}
                _ => return Err(CechError::BidegreeMismatch),
            }
            map.insert(p, c);
        }
        Ok(HyperCochain { parts: map })
    }

    pub fn part(&self, p: usize, q: usize) -> CDCochain {
        self.parts
            .get(&p)
            .filter(|c| c.bidegree() == (p, q))
            .cloned()
            .unwrap_or_else(|| CDCochain::zero(p, q))
    }
}

/// Total differential of a single cochain: Cech part at (p+1, q) plus the
/// (possibly twisted) simplicial part at (p, q+1). Squares to zero.
pub fn total_differential(
    c: &CDCochain,
    cover: &Cover,
    convention: TotalConvention,
) -> HyperCochain {
    let (p, q) = c.bidegree();
    let mut cech = c.cech_delta(cover);
    let mut vertical = c.simplicial_d(cover);
    match convention {
        TotalConvention::Commuting => {
            if p % 2 == 1 {
                vertical = vertical.scaled(-1.0);
            }
        }
        TotalConvention::Anticommuting => {
            if q % 2 == 1 {
                cech = cech.scaled(-1.0);
            }
        }
    }
    HyperCochain::from_parts(vec![cech, vertical]).expect("matching total degree")
}

/// Total differential of a hypercochain.
pub fn total_differential_hyper(
    c: &HyperCochain,
    cover: &Cover,
    convention: TotalConvention,
) -> HyperCochain {
    let mut acc: BTreeMap<usize, CDCochain> = BTreeMap::new();
    for part in c.parts.values() {
        let d = total_differential(part, cover, convention);
        for (p, piece) in d.parts {
            match acc.get_mut(&p) {
                Some(existing) => {
                    *existing = existing.plus(&piece).expect("matching bidegree");
                }
                None => {
                    acc.insert(p, piece);
                }
            }
        }
    }
    HyperCochain { parts: acc }
}

/// Line bundle data: chosen logarithms rho_{alpha beta} of the transition
/// functions (bidegree (1,0)) and local connection cochains A_alpha
/// (bidegree (0,1)), all in units where g = e^{2 pi i rho}.
#[derive(Debug, Clone)]
pub struct LineData {
    pub rho: CDCochain,
    pub a: CDCochain,
}

impl LineData {
    pub fn zero() -> LineData {
        LineData {
            rho: CDCochain::zero(1, 0),
            a: CDCochain::zero(0, 1),
        }
    }

    pub fn plus(&self, other: &LineData) -> Result<LineData, CechError> {
        Ok(LineData {
            rho: self.rho.plus(&other.rho)?,
            a: self.a.plus(&other.a)?,
        })
    }
}

/// Gerbe data: rho3_{abc} (2,0), Lambda_{ab} (1,1), B_a (0,2).
#[derive(Debug, Clone)]
pub struct GerbeData {
    pub rho3: CDCochain,
    pub lambda: CDCochain,
    pub b: CDCochain,
}

impl GerbeData {
    pub fn zero() -> GerbeData {
        GerbeData {
            rho3: CDCochain::zero(2, 0),
            lambda: CDCochain::zero(1, 1),
            b: CDCochain::zero(0, 2),
        }
    }

    pub fn plus(&self, other: &GerbeData) -> Result<GerbeData, CechError> {
        Ok(GerbeData {
            rho3: self.rho3.plus(&other.rho3)?,
            lambda: self.lambda.plus(&other.lambda)?,
            b: self.b.plus(&other.b)?,
        })
    }
}

/// A validation report: the listed violations are human-readable.
#[derive(Debug, Clone, Default)]
pub struct CocycleReport {
    pub violations: Vec<String>,
}

impl CocycleReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

fn is_near_integer(x: f64, tol: f64) -> bool {
    (x - x.round()).abs() < tol
}

/// Check the line hypercocycle conditions: the Cech coboundary of rho is
/// integer-valued on every triple-overlap vertex, and the connections glue
/// by A_beta - A_alpha = d rho_{alpha beta} on every double overlap.
pub fn validate_line_cocycle(cover: &Cover, data: &LineData, tol: f64) -> CocycleReport {
    let mut report = CocycleReport::default();
    if data.rho.bidegree() != (1, 0) || data.a.bidegree() != (0, 1) {
        report.violations.push("wrong bidegrees".into());
        return report;
    }
    if let Err(e) = data
        .rho
        .validate_support(cover)
        .and_then(|_| data.a.validate_support(cover))
    {
        report.violations.push(format!("{e}"));
    }
    let drho = data.rho.cech_delta(cover);
    for tuple in cover.nerve_tuples(3) {
        for v in cover.intersection_simplices(&tuple, 0) {
            let c = drho.value_sorted(&tuple, &v);
            if !is_near_integer(c, tol) {
                report.violations.push(format!(
                    "delta rho = {c} not an integer at vertex {v:?} of {tuple:?}"
                ));
            }
        }
    }
    for pair in cover.nerve_tuples(2) {
        let (alpha, beta) = (pair[0], pair[1]);
        for e in cover.intersection_simplices(&pair, 1) {
            let lhs = data.a.value(&[beta], &e) - data.a.value(&[alpha], &e);
            let drho_e =
                data.rho.value(&pair, &[e[1]]) - data.rho.value(&pair, &[e[0]]);
            if (lhs - drho_e).abs() > tol {
                report.violations.push(format!(
                    "A_{beta} - A_{alpha} != d rho on edge {e:?}: {lhs} vs {drho_e}"
                ));
            }
        }
    }
    report
}

/// The Bockstein first Chern class: the integer value of delta rho per
/// triple overlap. Requires the coboundary to be integral and constant on
/// each triple intersection.
pub fn chern_class(
    cover: &Cover,
    data: &LineData,
    tol: f64,
) -> Result<BTreeMap<Vec<usize>, i64>, CechError> {
    let drho = data.rho.cech_delta(cover);
    let mut class = BTreeMap::new();
    for tuple in cover.nerve_tuples(3) {
        let verts = cover.intersection_simplices(&tuple, 0);
        let mut value: Option<i64> = None;
        for v in verts {
            let c = drho.value_sorted(&tuple, &v);
            if !is_near_integer(c, tol) {
                return Err(CechError::NotACocycle(format!(
                    "delta rho not integral at {v:?} of {tuple:?}"
                )));
            }
            let ci = c.round() as i64;
            match value {
                None => value = Some(ci),
                Some(prev) if prev == ci => {}
                Some(prev) => {
                    return Err(CechError::NotACocycle(format!(
                        "delta rho not constant on {tuple:?}: {prev} vs {ci}"
                    )))
                }
            }
        }
        class.insert(tuple, value.unwrap_or(0));
    }
    Ok(class)
}

/// Pairing of a Chern class with a 2-cycle of the nerve (sorted triples with
/// integer coefficients).
pub fn chern_pairing(class: &BTreeMap<Vec<usize>, i64>, cycle: &[(i64, Vec<usize>)]) -> i64 {
    cycle
        .iter()
        .map(|(k, t)| k * class.get(t).copied().unwrap_or(0))
        .sum()
}

/// The curvature: a global 2-cochain F with F = dA_alpha on any covering
/// chart; the gluing consistency across charts is asserted.
pub fn curvature(
    cover: &Cover,
    data: &LineData,
    tol: f64,
) -> Result<BTreeMap<Vec<usize>, f64>, CechError> {
    let mut f = BTreeMap::new();
    for t in cover.base().simplices(2) {
        let charts = cover.charts_containing(t);
        if charts.is_empty() {
            return Err(CechError::BadCover(format!("triangle {t:?} uncovered")));
        }
        let da = |alpha: usize| -> f64 {
            let mut acc = 0.0;
            for k in 0..t.len() {
                let mut face = t.clone();
                face.remove(k);
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                acc += sign * data.a.value(&[alpha], &face);
            }
            acc
        };
        let first = da(charts[0]);
        for &other in &charts[1..] {
            if (da(other) - first).abs() > tol {
                return Err(CechError::GluingMismatch(format!(
                    "dA differs across charts {} and {} on {t:?}",
                    charts[0], other
                )));
            }
        }
        f.insert(t.clone(), first);
    }
    Ok(f)
}

/// Pair a global 2-cochain against a 2-cycle of the base.
pub fn curvature_pairing(f: &BTreeMap<Vec<usize>, f64>, cycle: &[(i64, Vec<usize>)]) -> f64 {
    cycle
        .iter()
        .map(|(k, t)| *k as f64 * f.get(t).copied().unwrap_or(0.0))
        .sum()
}

/// Gauge transform of line data by a (0,0)-cochain g:
/// rho += cech delta(g), A += d g. Holonomy on closed loops is unchanged.
pub fn line_gauge_transform(cover: &Cover, data: &LineData, g: &CDCochain) -> Result<LineData, CechError> {
    if g.bidegree() != (0, 0) {
        return Err(CechError::BidegreeMismatch);
    }
    Ok(LineData {
        rho: data.rho.plus(&g.cech_delta(cover))?,
        a: data.a.plus(&g.simplicial_d(cover))?,
    })
}

/// Gauge transform of gerbe data by a degree-1 hypercochain (h, a):
/// rho3 += cech delta(h), Lambda += d h + cech delta(a), B += d a.
pub fn gerbe_gauge_transform(
    cover: &Cover,
    data: &GerbeData,
    h: &CDCochain,
    a: &CDCochain,
) -> Result<GerbeData, CechError> {
    if h.bidegree() != (1, 0) || a.bidegree() != (0, 1) {
        return Err(CechError::BidegreeMismatch);
    }
    Ok(GerbeData {
        rho3: data.rho3.plus(&h.cech_delta(cover))?,
        lambda: data
            .lambda
            .plus(&h.simplicial_d(cover))?
            .plus(&a.cech_delta(cover))?,
        b: data.b.plus(&a.simplicial_d(cover))?,
    })
}

/// Check the gerbe hypercocycle conditions: delta rho3 integral on quadruple
/// overlaps, delta Lambda = d rho3 on triple overlaps, delta B = d Lambda on
/// double overlaps.
pub fn validate_gerbe_cocycle(cover: &Cover, data: &GerbeData, tol: f64) -> CocycleReport {
    let mut report = CocycleReport::default();
    if data.rho3.bidegree() != (2, 0)
        || data.lambda.bidegree() != (1, 1)
        || data.b.bidegree() != (0, 2)
    {
        report.violations.push("wrong bidegrees".into());
        return report;
    }
    for c in [&data.rho3, &data.lambda, &data.b] {
        if let Err(e) = c.validate_support(cover) {
            report.violations.push(format!("{e}"));
        }
    }
    let drho3 = data.rho3.cech_delta(cover);
    for tuple in cover.nerve_tuples(4) {
        for v in cover.intersection_simplices(&tuple, 0) {
            let c = drho3.value_sorted(&tuple, &v);
            if !is_near_integer(c, tol) {
                report.violations.push(format!(
                    "delta rho3 = {c} not integral at {v:?} of {tuple:?}"
                ));
            }
        }
    }
    let dlam = data.lambda.cech_delta(cover);
    let drho3_d = data.rho3.simplicial_d(cover);
    for tuple in cover.nerve_tuples(3) {
        for e in cover.intersection_simplices(&tuple, 1) {
            let lhs = dlam.value_sorted(&tuple, &e);
            let rhs = drho3_d.value_sorted(&tuple, &e);
            if (lhs - rhs).abs() > tol {
                report.violations.push(format!(
                    "delta Lambda != d rho3 on edge {e:?} of {tuple:?}: {lhs} vs {rhs}"
                ));
            }
        }
    }
    let db = data.b.cech_delta(cover);
    let dlam_d = data.lambda.simplicial_d(cover);
    for tuple in cover.nerve_tuples(2) {
        for t in cover.intersection_simplices(&tuple, 2) {
            let lhs = db.value_sorted(&tuple, &t);
            let rhs = dlam_d.value_sorted(&tuple, &t);
            if (lhs - rhs).abs() > tol {
                report.violations.push(format!(
                    "delta B != d Lambda on triangle {t:?} of {tuple:?}: {lhs} vs {rhs}"
                ));
            }
        }
    }
    report
}

/// The real Chern class of a trivialization: a (1,0)-cochain h whose Cech
/// coboundary is vertex-constant on each triple overlap defines a real
/// 2-class [delta h]; when the values lie in (1/n)Z, n times the class is
/// integral. An accompanying flat connection a with a_beta - a_alpha =
/// d h_{alpha beta} has dA agreeing with the class (checked when supplied).
pub struct RealChernClass {
    pub values: BTreeMap<Vec<usize>, f64>,
    /// Smallest n <= 64 with n*c integral for every triple, if any.
    pub fractionality: Option<u32>,
}

pub fn real_chern_of_trivialization(
    cover: &Cover,
    h: &CDCochain,
    flat_connection: Option<&CDCochain>,
    tol: f64,
) -> Result<RealChernClass, CechError> {
    if h.bidegree() != (1, 0) {
        return Err(CechError::BidegreeMismatch);
    }
    let dh = h.cech_delta(cover);
    let mut values = BTreeMap::new();
    for tuple in cover.nerve_tuples(3) {
        let mut value: Option<f64> = None;
        for v in cover.intersection_simplices(&tuple, 0) {
            let c = dh.value_sorted(&tuple, &v);
            match value {
                None => value = Some(c),
                Some(prev) if (prev - c).abs() <= tol => {}
                Some(_) => return Err(CechError::NotConstantCoboundary),
            }
        }
        values.insert(tuple, value.unwrap_or(0.0));
    }
    let fractionality = (1..=64u32).find(|n| {
        values
            .values()
            .all(|&c| is_near_integer(c * *n as f64, tol * *n as f64))
    });
    if let Some(a) = flat_connection {
        if a.bidegree() != (0, 1) {
            return Err(CechError::BidegreeMismatch);
        }
        // a_beta - a_alpha = d h_{alpha beta} and F = d a is flat/glues.
        for pair in cover.nerve_tuples(2) {
            let (alpha, beta) = (pair[0], pair[1]);
            for e in cover.intersection_simplices(&pair, 1) {
                let lhs = a.value(&[beta], &e) - a.value(&[alpha], &e);
                let rhs = h.value(&pair, &[e[1]]) - h.value(&pair, &[e[0]]);
                if (lhs - rhs).abs() > tol {
                    return Err(CechError::NotATrivialization(format!(
                        "flat connection does not match d h on edge {e:?}"
                    )));
                }
            }
        }
    }
    Ok(RealChernClass {
        values,
        fractionality,
    })
}

/// Reduce to [0, 1).
pub fn mod_one(x: f64) -> f64 {
    let r = x.rem_euclid(1.0);
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

/// Distance in R/Z.
pub fn mod_one_distance(x: f64, y: f64) -> f64 {
    let d = mod_one(x - y);
    d.min(1.0 - d)
}
