//! Holonomy of line bundles over charted loops and paths, and of gerbes
//! over charted surfaces, as R/Z-valued chart sums.

use super::{mod_one, CDCochain, CechError, Cover, GerbeData, LineData};
use crate::par;

/// A closed edge loop in the base with a chart per step; consecutive steps
/// share their vertex, cyclically.
#[derive(Debug, Clone)]
pub struct ChartedLoop {
    /// Directed edges (tail, head).
    pub edges: Vec<(usize, usize)>,
    /// Chart assignment per edge.
    pub charts: Vec<usize>,
}

/// An open edge path with a chart per step.
#[derive(Debug, Clone)]
pub struct ChartedPath {
    pub edges: Vec<(usize, usize)>,
    pub charts: Vec<usize>,
}

fn check_steps(
    cover: &Cover,
    edges: &[(usize, usize)],
    charts: &[usize],
    cyclic: bool,
) -> Result<(), CechError> {
    if edges.is_empty() || edges.len() != charts.len() {
        return Err(CechError::ChartIncompatible(
            "empty loop or chart count mismatch".into(),
        ));
    }
    let count = if cyclic { edges.len() } else { edges.len() - 1 };
    for i in 0..count {
        let j = (i + 1) % edges.len();
        if edges[i].1 != edges[j].0 {
            return Err(CechError::ChartIncompatible(format!(
                "steps {i} and {j} do not share a vertex"
            )));
        }
    }
    for (i, &(u, v)) in edges.iter().enumerate() {
        let key = if u < v { vec![u, v] } else { vec![v, u] };
        if !cover.chart(charts[i]).contains(&key) {
            return Err(CechError::ChartIncompatible(format!(
                "edge {i} not inside chart {}",
                charts[i]
            )));
        }
    }
    for i in 0..count {
        let j = (i + 1) % edges.len();
        let shared = edges[i].1;
        let pair = [charts[i], charts[j]];
        if !cover.chart(pair[0]).contains(&[shared]) || !cover.chart(pair[1]).contains(&[shared]) {
            return Err(CechError::ChartIncompatible(format!(
                "shared vertex {shared} not in both charts at step {i}"
            )));
        }
    }
    Ok(())
}

impl ChartedLoop {
    pub fn new(
        cover: &Cover,
        edges: Vec<(usize, usize)>,
        charts: Vec<usize>,
    ) -> Result<ChartedLoop, CechError> {
        check_steps(cover, &edges, &charts, true)?;
        Ok(ChartedLoop { edges, charts })
    }
}

impl ChartedPath {
    pub fn new(
        cover: &Cover,
        edges: Vec<(usize, usize)>,
        charts: Vec<usize>,
    ) -> Result<ChartedPath, CechError> {
        check_steps(cover, &edges, &charts, false)?;
        Ok(ChartedPath { edges, charts })
    }
}

fn a_term(data: &CDCochain, chart: usize, (u, v): (usize, usize)) -> f64 {
    data.value(&[chart], &[u, v])
}

/// Wilson loop of a line bundle: sum over steps of the connection on the
/// edge plus the transition logarithm at the joint vertex, reduced mod 1.
pub fn holonomy_loop(cover: &Cover, data: &LineData, gamma: &ChartedLoop) -> Result<f64, CechError> {
    check_steps(cover, &gamma.edges, &gamma.charts, true)?;
    let l = gamma.edges.len();
    let mut acc = 0.0;
    for i in 0..l {
        let j = (i + 1) % l;
        acc += a_term(&data.a, gamma.charts[i], gamma.edges[i]);
        acc += data
            .rho
            .value(&[gamma.charts[i], gamma.charts[j]], &[gamma.edges[i].1]);
    }
    Ok(mod_one(acc))
}

/// Batch evaluation (parallel when the `parallel` feature is enabled).
pub fn holonomy_loops(
    cover: &Cover,
    data: &LineData,
    loops: &[ChartedLoop],
) -> Result<Vec<f64>, CechError> {
    par::map_items(loops.to_vec(), |g| holonomy_loop(cover, data, &g))
        .into_iter()
        .collect()
}

/// Always-sequential batch evaluation, for benchmarking against
/// [`holonomy_loops`].
pub fn holonomy_loops_sequential(
    cover: &Cover,
    data: &LineData,
    loops: &[ChartedLoop],
) -> Result<Vec<f64>, CechError> {
    par::map_seq(loops.to_vec(), |g| holonomy_loop(cover, data, &g))
        .into_iter()
        .collect()
}

/// Wilson line of a trivialized line bundle over an open path. The
/// trivialization is a (0,0)-cochain with
/// `rho_{alpha beta} = triv_alpha - triv_beta (mod 1)` on shared vertices;
/// closing the path then reproduces [`holonomy_loop`] term by term.
pub fn holonomy_path(
    cover: &Cover,
    data: &LineData,
    trivialization: &CDCochain,
    gamma: &ChartedPath,
    tol: f64,
) -> Result<f64, CechError> {
    check_steps(cover, &gamma.edges, &gamma.charts, false)?;
    if trivialization.bidegree() != (0, 0) {
        return Err(CechError::BidegreeMismatch);
    }
    for pair in cover.nerve_tuples(2) {
        let (alpha, beta) = (pair[0], pair[1]);
        for v in cover.intersection_simplices(&pair, 0) {
            let lhs = data.rho.value(&pair, &v);
            let rhs = trivialization.value(&[alpha], &v) - trivialization.value(&[beta], &v);
            let d = super::mod_one_distance(lhs, rhs);
            if d > tol {
                return Err(CechError::NotATrivialization(format!(
                    "rho != triv_a - triv_b at vertex {v:?} of {pair:?} (distance {d})"
                )));
            }
        }
    }
    let l = gamma.edges.len();
    let mut acc = 0.0;
    for i in 0..l {
        acc += a_term(&data.a, gamma.charts[i], gamma.edges[i]);
        if i + 1 < l {
            let j = i + 1;
            acc += data
                .rho
                .value(&[gamma.charts[i], gamma.charts[j]], &[gamma.edges[i].1]);
        }
    }
    let start = gamma.edges[0].0;
    let end = gamma.edges[l - 1].1;
    acc += trivialization.value(&[gamma.charts[l - 1]], &[end]);
    acc -= trivialization.value(&[gamma.charts[0]], &[start]);
    Ok(mod_one(acc))
}

/// An oriented triangulated surface mapped into the base: oriented triangles
/// (coherently oriented: every interior edge is induced with opposite
/// orientations by its two triangles), a chart per triangle, and the derived
/// edge/vertex incidence data.
#[derive(Debug, Clone)]
pub struct ChartedSurface {
    /// Oriented triangles (vertex triples of the base, orientation up to
    /// even permutation).
    pub triangles: Vec<[usize; 3]>,
    /// Chart per triangle.
    pub charts: Vec<usize>,
    /// Interior edges: oriented edge (tail, head) as induced by `plus`,
    /// with `minus` inducing the reverse.
    interior_edges: Vec<InteriorEdge>,
    boundary_edges: Vec<((usize, usize), usize)>,
    /// Vertex stars: triangle indices in the orientation walk order,
    /// starting at the smallest incident triangle index (cyclic for
    /// interior vertices).
    stars: Vec<(usize, Vec<usize>, bool)>,
}

#[derive(Debug, Clone)]
struct InteriorEdge {
    edge: (usize, usize),
    plus: usize,
    minus: usize,
}

fn oriented_boundary(t: &[usize; 3]) -> [(usize, usize); 3] {
    [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])]
}

impl ChartedSurface {
    pub fn new(
        cover: &Cover,
        triangles: Vec<[usize; 3]>,
        charts: Vec<usize>,
    ) -> Result<ChartedSurface, CechError> {
        if triangles.len() != charts.len() || triangles.is_empty() {
            return Err(CechError::ChartIncompatible(
                "triangle/chart count mismatch".into(),
            ));
        }
        for (i, t) in triangles.iter().enumerate() {
            let mut s = t.to_vec();
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(CechError::ChartIncompatible(format!(
                    "degenerate triangle {t:?}"
                )));
            }
            if !cover.chart(charts[i]).contains(&s) {
                return Err(CechError::ChartIncompatible(format!(
                    "triangle {t:?} not inside chart {}",
                    charts[i]
                )));
            }
        }
        // Pair up the oriented edges.
        use std::collections::BTreeMap;
        let mut by_edge: BTreeMap<(usize, usize), Vec<(usize, bool)>> = BTreeMap::new();
        for (ti, t) in triangles.iter().enumerate() {
            for (u, v) in oriented_boundary(t) {
                let key = (u.min(v), u.max(v));
                by_edge.entry(key).or_default().push((ti, u < v));
            }
        }
        let mut interior_edges = Vec::new();
        let mut boundary_edges = Vec::new();
        for ((u, v), incident) in &by_edge {
            match incident.as_slice() {
                [(t1, up1)] => {
                    let oriented = if *up1 { (*u, *v) } else { (*v, *u) };
                    boundary_edges.push((oriented, *t1));
                }
                [(t1, up1), (t2, up2)] => {
                    if up1 == up2 {
                        return Err(CechError::ChartIncompatible(format!(
                            "edge ({u},{v}) induced with equal orientations; surface not coherently oriented"
                        )));
                    }
                    let (plus, minus) = if *up1 { (*t1, *t2) } else { (*t2, *t1) };
                    interior_edges.push(InteriorEdge {
                        edge: (*u, *v),
                        plus,
                        minus,
                    });
                }
                _ => {
                    return Err(CechError::ChartIncompatible(format!(
                        "edge ({u},{v}) lies in {} triangles",
                        incident.len()
                    )))
                }
            }
        }
        // Vertex stars by the orientation walk: the successor of triangle
        // (v, a, b) around v is the triangle across the edge {v, b}.
        let mut stars = Vec::new();
        let mut verts: Vec<usize> = triangles.iter().flat_map(|t| t.iter().copied()).collect();
        verts.sort_unstable();
        verts.dedup();
        for &v in &verts {
            let incident: Vec<usize> = (0..triangles.len())
                .filter(|&ti| triangles[ti].contains(&v))
                .collect();
            let rotate = |ti: usize| -> (usize, usize) {
                let t = &triangles[ti];
                let pos = t.iter().position(|&x| x == v).expect("incident");
                (t[(pos + 1) % 3], t[(pos + 2) % 3])
            };
            let across = |ti: usize, w: usize| -> Option<usize> {
                incident
                    .iter()
                    .copied()
                    .find(|&tj| tj != ti && triangles[tj].contains(&w))
            };
            // Walk forward from an arbitrary incident triangle.
            let start = incident[0];
            let mut order = vec![start];
            let mut cur = start;
            let mut closed = false;
            loop {
                let (_, b) = rotate(cur);
                match across(cur, b) {
                    Some(next) if next == start => {
                        closed = true;
                        break;
                    }
                    Some(next) => {
                        if order.contains(&next) {
                            return Err(CechError::ChartIncompatible(format!(
                                "vertex {v} star is not a single cycle or path"
                            )));
                        }
                        order.push(next);
                        cur = next;
                    }
                    None => break,
                }
            }
            if !closed {
                // Walk backward to find the true start of the path.
                let mut cur = start;
                loop {
                    let (a, _) = rotate(cur);
                    match across(cur, a) {
                        Some(prev) => {
                            if order.contains(&prev) {
                                return Err(CechError::ChartIncompatible(format!(
                                    "vertex {v} star is not a single cycle or path"
                                )));
                            }
                            order.insert(0, prev);
                            cur = prev;
                        }
                        None => break,
                    }
                }
            }
            if order.len() != incident.len() {
                return Err(CechError::ChartIncompatible(format!(
                    "vertex {v} star is disconnected"
                )));
            }
            if closed {
                // Start the cyclic order at the smallest triangle index (the
                // base-triangle choice; provably immaterial, and tested).
                let min_pos = order
                    .iter()
                    .enumerate()
                    .min_by_key(|&(_, &t)| t)
                    .map(|(i, _)| i)
                    .expect("nonempty star");
                order.rotate_left(min_pos);
            }
            stars.push((v, order, closed));
        }
        Ok(ChartedSurface {
            triangles,
            charts,
            interior_edges,
            boundary_edges,
            stars,
        })
    }

    pub fn is_closed(&self) -> bool {
        self.boundary_edges.is_empty()
    }

    pub fn boundary_edge_count(&self) -> usize {
        self.boundary_edges.len()
    }
}

/// Gerbe holonomy over a closed charted surface: triangle B terms, interior
/// edge Lambda terms over the chart pairs induced by the orientations, and
/// vertex rho3 terms over star triads anchored at the base triangle.
pub fn holonomy_surface(
    cover: &Cover,
    data: &GerbeData,
    surface: &ChartedSurface,
) -> Result<f64, CechError> {
    if surface.charts.iter().any(|&c| c >= cover.chart_count()) {
        return Err(CechError::ChartIncompatible(
            "chart id out of range for this cover".into(),
        ));
    }
    if !surface.is_closed() {
        return Err(CechError::NotClosed);
    }
    let mut acc = 0.0;
    for (ti, t) in surface.triangles.iter().enumerate() {
        acc += data.b.value(&[surface.charts[ti]], t);
    }
    for e in &surface.interior_edges {
        let pair = [surface.charts[e.plus], surface.charts[e.minus]];
        acc += data.lambda.value(&pair, &[e.edge.0, e.edge.1]);
    }
    for (v, order, closed) in &surface.stars {
        debug_assert!(*closed, "closed surface has cyclic stars");
        let k = order.len();
        let base = surface.charts[order[0]];
        for j in 0..k {
            let t1 = surface.charts[order[(j + 1) % k]];
            let t0 = surface.charts[order[j]];
            acc += data.rho3.value(&[base, t1, t0], &[*v]);
        }
    }
    Ok(mod_one(acc))
}

/// Gerbe holonomy over a surface with boundary, relative to a
/// trivialization (h, a) with `delta h = rho3 (mod 1)` on triple-overlap
/// vertices and `Lambda_{ab} - d h_{ab} = a_a - a_b` on double-overlap
/// edges: per-triangle B terms plus the trivialization connection around
/// each triangle boundary. Interior contributions cancel against the
/// transition data; only boundary-edge terms survive mod 1.
pub fn holonomy_open_surface(
    cover: &Cover,
    data: &GerbeData,
    trivialization: (&CDCochain, &CDCochain),
    surface: &ChartedSurface,
    tol: f64,
) -> Result<f64, CechError> {
    let (h, a) = trivialization;
    if h.bidegree() != (1, 0) || a.bidegree() != (0, 1) {
        return Err(CechError::BidegreeMismatch);
    }
    // Trivialization conditions.
    let dh = h.cech_delta(cover);
    for tuple in cover.nerve_tuples(3) {
        for v in cover.intersection_simplices(&tuple, 0) {
            let lhs = dh.value(&tuple, &v);
            let rhs = data.rho3.value(&tuple, &v);
            if super::mod_one_distance(lhs, rhs) > tol {
                return Err(CechError::NotATrivialization(format!(
                    "delta h != rho3 at vertex {v:?} of {tuple:?}"
                )));
            }
        }
    }
    for pair in cover.nerve_tuples(2) {
        let (alpha, beta) = (pair[0], pair[1]);
        for e in cover.intersection_simplices(&pair, 1) {
            let lam = data.lambda.value(&pair, &e);
            let dh_e = h.value(&pair, &[e[1]]) - h.value(&pair, &[e[0]]);
            let rhs = a.value(&[alpha], &e) - a.value(&[beta], &e);
            if (lam - dh_e - rhs).abs() > tol {
                return Err(CechError::NotATrivialization(format!(
                    "Lambda - d h != a_a - a_b on edge {e:?} of {pair:?}"
                )));
            }
        }
    }
    let mut acc = 0.0;
    for (ti, t) in surface.triangles.iter().enumerate() {
        let chart = surface.charts[ti];
        acc += data.b.value(&[chart], t);
        for (u, v) in oriented_boundary(t) {
            acc += a.value(&[chart], &[u, v]);
        }
    }
    Ok(mod_one(acc))
}

/// Batch surface holonomy.
pub fn holonomy_surfaces(
    cover: &Cover,
    data: &GerbeData,
    surfaces: &[ChartedSurface],
) -> Result<Vec<f64>, CechError> {
    par::map_items(surfaces.to_vec(), |s| holonomy_surface(cover, data, &s))
        .into_iter()
        .collect()
}
