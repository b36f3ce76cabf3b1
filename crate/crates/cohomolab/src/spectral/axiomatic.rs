//! The axiomatized spectral-sequence engine: groups h^n(p,t) with
//! restriction maps and connecting maps satisfying the exact-triangle
//! axioms, pages defined as images of the restriction maps, and
//! differentials as restricted connecting maps.

use super::{FilteredComplex, SpectralError};
use crate::exactalg::{
    hom_homology, image_subgroup, induced_hom, kernel, ExactAlgError, FPAbelianGroup, GroupHom,
    IntMatrix, Presentation,
};
use crate::par;
use num_bigint::BigInt;
use num_traits::One;
use std::collections::BTreeMap;

/// Groups `h^n(p,t)` for `0 <= p <= t <= l` (with the conventions
/// `h(p,t) = h(0,t)` for `p <= 0` and `h(p,t) = h(p,l)` for `t >= l`),
/// together with all restriction maps Psi and connecting maps Delta.
#[derive(Debug, Clone)]
pub struct AxiomaticSystem {
    length: usize,
    lo: i64,
    hi: i64,
    groups: BTreeMap<(i64, usize, usize), Presentation>,
    psi: BTreeMap<(i64, usize, usize, usize, usize), GroupHom>,
    delta: BTreeMap<(i64, usize, usize, usize), GroupHom>,
}

/// Internal description of a filtered complex of presented modules: free
/// ambient lattices with per-generator filtration values plus a relation
/// lattice per degree. Plain filtered complexes have empty relations; the
/// ordinary-coefficient AHSS uses torsion relations from the coefficient
/// group.
pub(crate) struct FilteredModuleData {
    pub lo: i64,
    pub ambient: Vec<usize>,
    pub diffs: Vec<IntMatrix>,
    pub filt: Vec<Vec<usize>>,
    pub relations: Vec<IntMatrix>,
    pub length: usize,
}

impl FilteredModuleData {
    fn hi(&self) -> i64 {
        self.lo + self.ambient.len() as i64 - 1
    }

    fn rank(&self, n: i64) -> usize {
        if n < self.lo || n > self.hi() {
            0
        } else {
            self.ambient[(n - self.lo) as usize]
        }
    }

    fn diff(&self, n: i64) -> IntMatrix {
        if n < self.lo || n >= self.hi() {
            return IntMatrix::zeros(self.rank(n + 1), self.rank(n));
        }
        self.diffs[(n - self.lo) as usize].clone()
    }

    fn filt_at(&self, n: i64) -> &[usize] {
        static EMPTY: Vec<usize> = Vec::new();
        if n < self.lo || n > self.hi() {
            &EMPTY
        } else {
            &self.filt[(n - self.lo) as usize]
        }
    }

    fn relations_at(&self, n: i64) -> IntMatrix {
        if n < self.lo || n > self.hi() {
            return IntMatrix::zeros(self.rank(n), 0);
        }
        self.relations[(n - self.lo) as usize].clone()
    }

    fn indices_lt(&self, n: i64, p: i64) -> Vec<usize> {
        self.filt_at(n)
            .iter()
            .enumerate()
            .filter(|&(_, &f)| (f as i64) < p)
            .map(|(i, _)| i)
            .collect()
    }

    fn inclusion_ge(&self, n: i64, p: i64) -> IntMatrix {
        let idx: Vec<usize> = self
            .filt_at(n)
            .iter()
            .enumerate()
            .filter(|&(_, &f)| f as i64 >= p)
            .map(|(i, _)| i)
            .collect();
        let mut m = IntMatrix::zeros(self.rank(n), idx.len());
        for (j, &i) in idx.iter().enumerate() {
            m[(i, j)] = BigInt::one();
        }
        m
    }

    /// Presentation of `H^n(F^p M / F^t M)` as a subquotient of the ambient
    /// degree-n lattice.
    fn quotient_cohomology(&self, n: i64, p: usize, t: usize) -> Result<Presentation, ExactAlgError> {
        let ambient = self.rank(n);
        if p >= t || ambient == 0 {
            return Ok(Presentation::trivial(ambient));
        }
        let cols0 = self.inclusion_ge(n, p as i64).hstack(&self.relations_at(n));
        // Numerator: columns c of cols0-span with d * c in F^t + relations.
        let low = self.indices_lt(n + 1, t as i64);
        let proj_d = self.diff(n).mul(&cols0).select_rows(&low);
        let proj_rel = self.relations_at(n + 1).select_rows(&low);
        let k = kernel(&proj_d.hstack(&proj_rel));
        let k_c = k.select_rows(&(0..cols0.cols()).collect::<Vec<_>>());
        let numerator = cols0.mul(&k_c);
        // Denominator: d(F^p at n-1) + F^t + relations.
        let image = self.diff(n - 1).mul(&self.inclusion_ge(n - 1, p as i64));
        let denominator = image
            .hstack(&self.inclusion_ge(n, t as i64))
            .hstack(&self.relations_at(n));
        crate::exactalg::subquotient(&numerator, &denominator)
    }
}

impl AxiomaticSystem {
    pub(crate) fn from_module_data(data: &FilteredModuleData) -> Result<AxiomaticSystem, SpectralError> {
        let l = data.length;
        let lo = data.lo;
        let hi = data.hi();
        let mut groups = BTreeMap::new();
        for n in lo..=hi + 1 {
            for p in 0..l {
                for t in (p + 1)..=l {
                    groups.insert((n, p, t), data.quotient_cohomology(n, p, t)?);
                }
            }
        }
        let get = |groups: &BTreeMap<(i64, usize, usize), Presentation>, n: i64, p: usize, t: usize| {
            groups
                .get(&(n, p, t))
                .cloned()
                .unwrap_or_else(|| Presentation::trivial(data.rank(n)))
        };
        let mut psi = BTreeMap::new();
        let mut delta = BTreeMap::new();
        for n in lo..=hi + 1 {
            let identity = IntMatrix::identity(data.rank(n));
            for p in 0..l {
                for t in (p + 1)..=l {
                    let src = get(&groups, n, p, t);
                    // Psi into every smaller window.
                    for p2 in 0..=p {
                        for t2 in (p2 + 1)..=t {
                            let dst = get(&groups, n, p2, t2);
                            let hom = induced_hom(&identity, &src, &dst)?;
                            psi.insert((n, p, t, p2, t2), hom);
                        }
                    }
                    // Delta into every window starting at t.
                    for u in (t + 1)..=l {
                        let dst = get(&groups, n + 1, t, u);
                        let hom = induced_hom(&data.diff(n), &src, &dst)?;
                        delta.insert((n, p, t, u), hom);
                    }
                }
            }
        }
        Ok(AxiomaticSystem {
            length: l,
            lo,
            hi: hi + 1,
            groups,
            psi,
            delta,
        })
    }

    /// Instance computing `h^n(p,t) = H^n(F^p K / F^t K)` of a filtered
    /// complex, with Psi induced by inclusions and Delta the Bockstein of
    /// the quotient sequence.
    pub fn from_filtered(f: &FilteredComplex) -> Result<AxiomaticSystem, SpectralError> {
        let count = (f.hi() - f.lo() + 1) as usize;
        let data = FilteredModuleData {
            lo: f.lo(),
            ambient: (0..count).map(|i| f.rank(f.lo() + i as i64)).collect(),
            diffs: (0..count).map(|i| f.diff(f.lo() + i as i64)).collect(),
            filt: (0..count).map(|i| f.filt(f.lo() + i as i64).to_vec()).collect(),
            relations: (0..count)
                .map(|i| IntMatrix::zeros(f.rank(f.lo() + i as i64), 0))
                .collect(),
            length: f.length(),
        };
        Self::from_module_data(&data)
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn degree_range(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    fn clamp(&self, p: i64, t: i64) -> (usize, usize) {
        let l = self.length as i64;
        let p = p.clamp(0, l) as usize;
        let t = t.clamp(0, l) as usize;
        (p, t.max(p))
    }

    /// `h^n(p,t)` with the clamping conventions applied.
    pub fn group(&self, n: i64, p: i64, t: i64) -> FPAbelianGroup {
        let (p, t) = self.clamp(p, t);
        if p >= t {
            return FPAbelianGroup::trivial();
        }
        self.groups
            .get(&(n, p, t))
            .map_or_else(FPAbelianGroup::trivial, |pr| pr.group().clone())
    }

    /// Restriction `Psi: h^n(p,t) -> h^n(p2,t2)` for `p2 <= p`, `t2 <= t`.
    pub fn psi(&self, n: i64, from: (i64, i64), to: (i64, i64)) -> GroupHom {
        let (p, t) = self.clamp(from.0, from.1);
        let (p2, t2) = self.clamp(to.0, to.1);
        if let Some(h) = self.psi.get(&(n, p, t, p2, t2)) {
            return h.clone();
        }
        GroupHom::zero(&self.group(n, p as i64, t as i64), &self.group(n, p2 as i64, t2 as i64))
    }

    /// Connecting map `Delta: h^n(p,t) -> h^{n+1}(t,u)`.
    pub fn delta(&self, n: i64, p: i64, t: i64, u: i64) -> GroupHom {
        let (p, t) = self.clamp(p, t);
        let (_, u) = self.clamp(t as i64, u);
        if let Some(h) = self.delta.get(&(n, p, t, u)) {
            return h.clone();
        }
        GroupHom::zero(
            &self.group(n, p as i64, t as i64),
            &self.group(n + 1, t as i64, u as i64),
        )
    }

    /// Verify axioms 1-4: identities, Psi composition, the Psi/Delta square,
    /// and exactness of every defined triangle.
    pub fn verify_axioms(&self) -> Result<(), SpectralError> {
        let l = self.length;
        // Axiom 1 and 2: identity and composition of Psi.
        for n in self.lo..=self.hi {
            for p in 0..l {
                for t in (p + 1)..=l {
                    let id = self.psi(n, (p as i64, t as i64), (p as i64, t as i64));
                    if id != GroupHom::identity(id.domain()) {
                        return Err(SpectralError::AxiomViolation(format!(
                            "Psi is not the identity at n={n}, ({p},{t})"
                        )));
                    }
                    for p1 in 0..=p {
                        for t1 in (p1 + 1)..=t {
                            for p2 in 0..=p1 {
                                for t2 in (p2 + 1)..=t1 {
                                    let a = self.psi(n, (p as i64, t as i64), (p1 as i64, t1 as i64));
                                    let b =
                                        self.psi(n, (p1 as i64, t1 as i64), (p2 as i64, t2 as i64));
                                    let direct =
                                        self.psi(n, (p as i64, t as i64), (p2 as i64, t2 as i64));
                                    if b.compose(&a)? != direct {
                                        return Err(SpectralError::AxiomViolation(format!(
                                            "Psi composition fails at n={n} ({p},{t})->({p1},{t1})->({p2},{t2})"
                                        )));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        // Axiom 3: the Psi/Delta square commutes.
        for n in self.lo..self.hi {
            for p1 in 0..l {
                for t1 in (p1 + 1)..=l {
                    for u1 in (t1 + 1)..=l {
                        for p in 0..=p1 {
                            for t in (p + 1)..=t1 {
                                for u in (t + 1)..=u1 {
                                    if t > t1 || u > u1 {
                                        continue;
                                    }
                                    let top = self.delta(n, p1 as i64, t1 as i64, u1 as i64);
                                    let right =
                                        self.psi(n + 1, (t1 as i64, u1 as i64), (t as i64, u as i64));
                                    let left = self.psi(n, (p1 as i64, t1 as i64), (p as i64, t as i64));
                                    let bottom = self.delta(n, p as i64, t as i64, u as i64);
                                    let lhs = right.compose(&top)?;
                                    let rhs = bottom.compose(&left)?;
                                    if lhs != rhs {
                                        return Err(SpectralError::AxiomViolation(format!(
                                            "Psi/Delta square fails at n={n} ({p1},{t1},{u1}) vs ({p},{t},{u})"
                                        )));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        // Axiom 4: triangles are exact.
        let mut triangles = Vec::new();
        for n in self.lo..self.hi {
            for p in 0..l {
                for t in p..=l {
                    for u in t..=l {
                        triangles.push((n, p, t, u));
                    }
                }
            }
        }
        let failures: Vec<String> = par::map_items(triangles, |(n, p, t, u)| {
            self.check_triangle(n, p as i64, t as i64, u as i64)
                .err()
                .map(|e| format!("{e}"))
        })
        .into_iter()
        .flatten()
        .collect();
        if let Some(first) = failures.first() {
            return Err(SpectralError::AxiomViolation(first.clone()));
        }
        Ok(())
    }

    fn check_triangle(&self, n: i64, p: i64, t: i64, u: i64) -> Result<(), SpectralError> {
        // ... -> h^n(t,u) -> h^n(p,u) -> h^n(p,t) -> h^{n+1}(t,u) -> ...
        let psi_tu_pu = self.psi(n, (t, u), (p, u));
        let psi_pu_pt = self.psi(n, (p, u), (p, t));
        let delta_up = self.delta(n - 1, p, t, u); // into h^n(t,u)
        let delta_down = self.delta(n, p, t, u); // out of h^n(p,t)
        let psi_next = self.psi(n + 1, (t, u), (p, u));
        let checks = [
            ("at h(t,u)", hom_homology(&delta_up, &psi_tu_pu)),
            ("at h(p,u)", hom_homology(&psi_tu_pu, &psi_pu_pt)),
            ("at h(p,t)", hom_homology(&psi_pu_pt, &delta_down)),
            ("at h(t,u)[+1]", hom_homology(&delta_down, &psi_next)),
        ];
        for (site, res) in checks {
            let h = res.map_err(SpectralError::from)?;
            if !h.is_trivial() {
                return Err(SpectralError::AxiomViolation(format!(
                    "triangle (p={p}, t={t}, u={u}) at n={n} not exact {site}: homology {h}"
                )));
            }
        }
        Ok(())
    }

    /// The page `E_r` (r >= 1): entries are images of Psi, differentials are
    /// restrictions of Delta.
    pub fn pages(&self, r: usize) -> Result<AxiomaticPage, SpectralError> {
        if r == 0 {
            return Err(SpectralError::InsufficientData);
        }
        let ri = r as i64;
        let l = self.length as i64;
        let mut entries = BTreeMap::new();
        for p in 0..=l {
            for n in self.lo..=self.hi {
                let q = n - p;
                let hom = self.psi(n, (p, p + ri), (p - ri + 1, p + 1));
                let pres = image_subgroup(&hom);
                entries.insert((p, q), pres);
            }
        }
        let mut differentials = BTreeMap::new();
        for (&(p, q), pres) in &entries {
            let n = p + q;
            let d = self.delta(n, p - ri + 1, p + 1, p + ri + 1);
            let target_key = (p + ri, q - ri + 1);
            let target = entries.get(&target_key);
            let tgt_group = target.map_or_else(FPAbelianGroup::trivial, |t| t.group().clone());
            let gcount = pres.group().generator_count();
            if gcount == 0 || tgt_group.is_trivial() {
                differentials.insert((p, q), GroupHom::zero(pres.group(), &tgt_group));
                continue;
            }
            let target = target.expect("nontrivial target stored");
            let mut cols = Vec::with_capacity(gcount);
            for gi in 0..gcount {
                let img = d.apply(&pres.generator(gi));
                let coords = target.express(&img).ok_or_else(|| {
                    SpectralError::AxiomViolation(format!(
                        "Delta image leaves the page entry at ({p},{q}), r={r}"
                    ))
                })?;
                cols.push(coords);
            }
            let matrix = IntMatrix::from_columns(tgt_group.generator_count(), &cols);
            differentials.insert(
                (p, q),
                GroupHom::new(pres.group().clone(), tgt_group, matrix)
                    .map_err(SpectralError::from)?,
            );
        }
        Ok(AxiomaticPage {
            r,
            entries,
            differentials,
        })
    }
}

/// A page of the axiomatic engine; entries live inside the groups
/// `h^{p+q}(p-r+1, p+1)`.
#[derive(Debug, Clone)]
pub struct AxiomaticPage {
    pub r: usize,
    entries: BTreeMap<(i64, i64), Presentation>,
    differentials: BTreeMap<(i64, i64), GroupHom>,
}

impl AxiomaticPage {
    pub fn entry(&self, p: i64, q: i64) -> FPAbelianGroup {
        self.entries
            .get(&(p, q))
            .map_or_else(FPAbelianGroup::trivial, |e| e.group().clone())
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

    pub fn nonzero(&self) -> Vec<((i64, i64), FPAbelianGroup)> {
        self.entries
            .iter()
            .filter(|(_, e)| !e.group().is_trivial())
            .map(|(k, e)| (*k, e.group().clone()))
            .collect()
    }
}
