//! Barycentric subdivision of a cover together with its line/gerbe data,
//! loops and surfaces. The cochain data is pulled back by vertex averaging,
//! which preserves the cocycle conditions exactly and the holonomy of every
//! subdivided loop or surface on the nose.

use super::holonomy::{ChartedLoop, ChartedSurface};
use super::{CDCochain, CechError, Cover, GerbeData, LineData};
use crate::simplicial::SimplicialComplex;
use std::collections::BTreeMap;

/// A cover subdivision: the subdivided base and charts, plus the carrier
/// data identifying each subdivision vertex with an original simplex.
#[derive(Debug, Clone)]
pub struct SubdividedCover {
    pub cover: Cover,
    /// Subdivision vertex -> (dimension, index) of its carrier simplex.
    pub carrier: Vec<(usize, usize)>,
    base: SimplicialComplex,
}

/// Subdivide the base once barycentrically; each chart becomes the full
/// subcomplex of subdivision simplices whose carriers all lie in the chart.
pub fn subdivide_cover(cover: &Cover) -> Result<SubdividedCover, CechError> {
    let base = cover.base().clone();
    let (sd, carrier) = base.barycentric_subdivision();
    let carrier_simplex =
        |v: usize| -> Vec<usize> { base.simplices(carrier[v].0)[carrier[v].1].clone() };
    let mut charts = Vec::with_capacity(cover.chart_count());
    for alpha in 0..cover.chart_count() {
        let sims: Vec<Vec<usize>> = sd
            .all_simplices()
            .into_iter()
            .filter(|s| {
                s.iter()
                    .all(|&v| cover.chart(alpha).contains(&carrier_simplex(v)))
            })
            .collect();
        charts.push(
            SimplicialComplex::from_simplices(sd.vertex_count(), &sims)
                .expect("chart subdivision is a complex"),
        );
    }
    Ok(SubdividedCover {
        cover: Cover::new(sd, charts)?,
        carrier,
        base,
    })
}

impl SubdividedCover {
    fn carrier_vertices(&self, sd_vertex: usize) -> Vec<usize> {
        let (d, i) = self.carrier[sd_vertex];
        self.base.simplices(d)[i].clone()
    }

    /// Average of the signed evaluation of a q-cochain over all vertex
    /// choices in the carriers; this is the exact discrete pullback.
    fn averaged_value(&self, c: &CDCochain, tuple: &[usize], sd_simplex: &[usize]) -> f64 {
        let carriers: Vec<Vec<usize>> = sd_simplex
            .iter()
            .map(|&v| self.carrier_vertices(v))
            .collect();
        let mut total = 0.0;
        let mut count = 0usize;
        let mut choice = vec![0usize; carriers.len()];
        loop {
            let picked: Vec<usize> = choice
                .iter()
                .enumerate()
                .map(|(i, &k)| carriers[i][k])
                .collect();
            count += 1;
            let mut sorted = picked.clone();
            sorted.sort_unstable();
            let distinct = sorted.windows(2).all(|w| w[0] < w[1]);
            if distinct {
                total += c.value(tuple, &picked);
            }
            // Advance the mixed-radix counter.
            let mut pos = 0;
            loop {
                if pos == carriers.len() {
                    let avg = total / count as f64;
                    return avg;
                }
                choice[pos] += 1;
                if choice[pos] < carriers[pos].len() {
                    break;
                }
                choice[pos] = 0;
                pos += 1;
            }
        }
    }

    /// Pull a cochain back to the subdivided cover.
    pub fn pullback(&self, c: &CDCochain) -> CDCochain {
        let (p, q) = c.bidegree();
        let mut out = CDCochain::zero(p, q);
        for tuple in self.cover.nerve_tuples(p + 1) {
            for s in self.cover.intersection_simplices(&tuple, q) {
                let v = self.averaged_value(c, &tuple, &s);
                if v != 0.0 {
                    out.set(&tuple, &s, v);
                }
            }
        }
        out
    }

    pub fn pullback_line(&self, data: &LineData) -> LineData {
        LineData {
            rho: self.pullback(&data.rho),
            a: self.pullback(&data.a),
        }
    }

    pub fn pullback_gerbe(&self, data: &GerbeData) -> GerbeData {
        GerbeData {
            rho3: self.pullback(&data.rho3),
            lambda: self.pullback(&data.lambda),
            b: self.pullback(&data.b),
        }
    }

    fn sd_vertex_of(&self, d: usize, simplex: &[usize]) -> usize {
        let idx = self
            .base
            .simplex_index(d, simplex)
            .expect("carrier simplex exists");
        self.carrier
            .iter()
            .position(|&(cd, ci)| cd == d && ci == idx)
            .expect("every simplex has a barycenter")
    }

    /// Subdivide a loop: each step passes through the edge barycenter,
    /// inheriting the step's chart.
    pub fn subdivide_loop(&self, gamma: &ChartedLoop) -> Result<ChartedLoop, CechError> {
        let mut edges = Vec::with_capacity(gamma.edges.len() * 2);
        let mut charts = Vec::with_capacity(gamma.edges.len() * 2);
        for (i, &(u, v)) in gamma.edges.iter().enumerate() {
            let key = if u < v { vec![u, v] } else { vec![v, u] };
            let mid = self.sd_vertex_of(1, &key);
            let su = self.sd_vertex_of(0, &[u]);
            let sv = self.sd_vertex_of(0, &[v]);
            edges.push((su, mid));
            edges.push((mid, sv));
            charts.push(gamma.charts[i]);
            charts.push(gamma.charts[i]);
        }
        ChartedLoop::new(&self.cover, edges, charts)
    }

    /// Subdivide a charted surface into six coherently oriented triangles
    /// per face, all inheriting the face's chart.
    pub fn subdivide_surface(&self, surface: &ChartedSurface) -> Result<ChartedSurface, CechError> {
        let mut triangles = Vec::with_capacity(surface.triangles.len() * 6);
        let mut charts = Vec::with_capacity(surface.triangles.len() * 6);
        for (ti, t) in surface.triangles.iter().enumerate() {
            let mut sorted = t.to_vec();
            sorted.sort_unstable();
            let center = self.sd_vertex_of(2, &sorted);
            for (u, v) in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
                let key = if u < v { vec![u, v] } else { vec![v, u] };
                let mid = self.sd_vertex_of(1, &key);
                let su = self.sd_vertex_of(0, &[u]);
                let sv = self.sd_vertex_of(0, &[v]);
                triangles.push([su, mid, center]);
                triangles.push([mid, sv, center]);
                charts.push(surface.charts[ti]);
                charts.push(surface.charts[ti]);
            }
        }
        ChartedSurface::new(&self.cover, triangles, charts)
    }
}

/// Convenience: a map from base 2-cycles to subdivided 2-cycles (each
/// triangle splits into its six oriented pieces). Used to compare pairings.
pub fn subdivide_two_cycle(
    sub: &SubdividedCover,
    cycle: &[(i64, Vec<usize>)],
) -> Vec<(i64, Vec<usize>)> {
    let mut out: BTreeMap<Vec<usize>, i64> = BTreeMap::new();
    for (coeff, t) in cycle {
        let center = sub.sd_vertex_of(2, t);
        for (u, v) in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
            let key = if u < v { vec![u, v] } else { vec![v, u] };
            let mid = sub.sd_vertex_of(1, &key);
            let su = sub.sd_vertex_of(0, &[u]);
            let sv = sub.sd_vertex_of(0, &[v]);
            for tri in [[su, mid, center], [mid, sv, center]] {
                let mut sorted = tri.to_vec();
                sorted.sort_unstable();
                let sign = permutation_parity(&tri);
                *out.entry(sorted).or_insert(0) += coeff * sign;
            }
        }
    }
    out.into_iter().map(|(t, c)| (c, t)).collect()
}

fn permutation_parity(tuple: &[usize]) -> i64 {
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
