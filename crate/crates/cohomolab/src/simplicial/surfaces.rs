//! Triangulated surface catalog: sphere, orientable genus-g surfaces,
//! projective plane, Klein bottle, their cross-cap sums, Moebius strip and
//! cylinder, each with marked 1-cycles; orientation double covers via the
//! local-orientation cocycle of the top simplices.

use super::{edge_cycle_chain, SimplicialComplex, SimplicialError, SimplicialMap};
use crate::complexes::Coefficients;
use crate::exactalg::FPAbelianGroup;
use num_bigint::BigInt;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurfaceKind {
    /// S^2 (boundary of the 3-simplex).
    Sphere,
    /// Orientable surface of genus g.
    OrientableGenus(usize),
    /// RP^2, the 6-vertex triangulation.
    ProjectivePlane,
    /// Klein bottle.
    KleinBottle,
    /// Connected sum of g tori and RP^2.
    CrossCapOne(usize),
    /// Connected sum of g tori and the Klein bottle.
    CrossCapTwo(usize),
    /// Moebius strip (with boundary).
    Moebius,
    /// Cylinder (with boundary).
    Cylinder,
}

/// A named 1-cycle: consecutive directed edges forming a loop.
pub type MarkedCycle = (String, Vec<(usize, usize)>);

#[derive(Debug, Clone)]
pub struct SurfaceModel {
    pub kind: SurfaceKind,
    pub complex: SimplicialComplex,
    pub marked_cycles: Vec<MarkedCycle>,
}

impl SurfaceModel {
    /// Every edge must lie in exactly two triangles (closed) or one or two
    /// (with boundary); marked cycles must be genuine 1-cycles.
    pub fn validate(&self) -> Result<(), SimplicialError> {
        let closed = !matches!(self.kind, SurfaceKind::Moebius | SurfaceKind::Cylinder);
        for (i, e) in self.complex.simplices(1).iter().enumerate() {
            let count = self
                .complex
                .simplices(2)
                .iter()
                .filter(|t| e.iter().all(|v| t.contains(v)))
                .count();
            let ok = if closed { count == 2 } else { count == 1 || count == 2 };
            if !ok {
                return Err(SimplicialError::BadSimplex(
                    self.complex.simplices(1)[i].clone(),
                ));
            }
        }
        for (_, cycle) in &self.marked_cycles {
            let chain = edge_cycle_chain(&self.complex, cycle)
                .ok_or(SimplicialError::NotASubcomplex)?;
            let boundary = self.complex.chain_complex().boundary(1).mul_vec(&chain);
            if boundary.iter().any(|x| !num_traits::Zero::is_zero(x)) {
                return Err(SimplicialError::NotASubcomplex);
            }
        }
        Ok(())
    }
}

/// The catalog entry point.
pub fn surface_model(kind: SurfaceKind) -> Result<SurfaceModel, SimplicialError> {
    let model = match kind {
        SurfaceKind::Sphere => SurfaceModel {
            kind,
            complex: SimplicialComplex::sphere(2),
            marked_cycles: vec![],
        },
        SurfaceKind::OrientableGenus(0) => SurfaceModel {
            kind,
            complex: SimplicialComplex::sphere(2),
            marked_cycles: vec![],
        },
        SurfaceKind::OrientableGenus(1) => grid_torus(3, 3),
        SurfaceKind::OrientableGenus(g) => {
            let mut acc = grid_torus(3, 3);
            for _ in 1..g {
                acc = connected_sum(&acc, &grid_torus(3, 3), kind)?;
            }
            acc.kind = kind;
            acc
        }
        SurfaceKind::ProjectivePlane => projective_plane(),
        SurfaceKind::KleinBottle => grid_klein(4, 3),
        SurfaceKind::CrossCapOne(g) => {
            let mut acc = projective_plane();
            for _ in 0..g {
                acc = connected_sum(&grid_torus(3, 3), &acc, kind)?;
            }
            acc.kind = kind;
            acc
        }
        SurfaceKind::CrossCapTwo(g) => {
            let mut acc = grid_klein(4, 3);
            for _ in 0..g {
                acc = connected_sum(&grid_torus(3, 3), &acc, kind)?;
            }
            acc.kind = kind;
            acc
        }
        SurfaceKind::Moebius => grid_moebius(4, 3),
        SurfaceKind::Cylinder => grid_cylinder(3, 3),
    };
    model.validate()?;
    Ok(model)
}

fn grid_quads<F>(cells_x: usize, cells_y: usize, resolve: F) -> Vec<Vec<usize>>
where
    F: Fn(usize, usize) -> usize,
{
    let mut tris = Vec::new();
    for i in 0..cells_x {
        for j in 0..cells_y {
            let v00 = resolve(i, j);
            let v10 = resolve(i + 1, j);
            let v01 = resolve(i, j + 1);
            let v11 = resolve(i + 1, j + 1);
            let mut t1 = vec![v00, v10, v11];
            let mut t2 = vec![v00, v11, v01];
            t1.sort_unstable();
            t2.sort_unstable();
            tris.push(t1);
            tris.push(t2);
        }
    }
    tris
}

/// Torus on an n x m vertex grid (both directions periodic).
pub fn grid_torus(n: usize, m: usize) -> SurfaceModel {
    let resolve = move |i: usize, j: usize| (i % n) + n * (j % m);
    let tris = grid_quads(n, m, resolve);
    let complex = SimplicialComplex::from_simplices(n * m, &tris).expect("torus grid");
    let a: Vec<(usize, usize)> = (0..n).map(|i| (resolve(i, 0), resolve(i + 1, 0))).collect();
    let b: Vec<(usize, usize)> = (0..m).map(|j| (resolve(0, j), resolve(0, j + 1))).collect();
    SurfaceModel {
        kind: SurfaceKind::OrientableGenus(1),
        complex,
        marked_cycles: vec![("a".into(), a), ("b".into(), b)],
    }
}

/// Klein bottle: x-direction straight-periodic, y-direction glued with a
/// flip. The straight loop `a` is the 2-torsion class; the flipped loop `b`
/// is the free one.
pub fn grid_klein(n: usize, m: usize) -> SurfaceModel {
    let resolve = move |i: usize, j: usize| {
        if j == m {
            (n - (i % n)) % n
        } else {
            (i % n) + n * j
        }
    };
    let tris = grid_quads(n, m, resolve);
    let complex = SimplicialComplex::from_simplices(n * m, &tris).expect("klein grid");
    let a: Vec<(usize, usize)> = (0..n).map(|i| (resolve(i, 0), resolve(i + 1, 0))).collect();
    let b: Vec<(usize, usize)> = (0..m).map(|j| (resolve(0, j), resolve(0, j + 1))).collect();
    SurfaceModel {
        kind: SurfaceKind::KleinBottle,
        complex,
        marked_cycles: vec![("a".into(), a), ("b".into(), b)],
    }
}

/// Cylinder: x periodic, y free.
pub fn grid_cylinder(n: usize, m: usize) -> SurfaceModel {
    let resolve = move |i: usize, j: usize| (i % n) + n * j;
    let tris = grid_quads(n, m, resolve);
    let complex = SimplicialComplex::from_simplices(n * (m + 1), &tris).expect("cylinder grid");
    let a: Vec<(usize, usize)> = (0..n).map(|i| (resolve(i, 0), resolve(i + 1, 0))).collect();
    SurfaceModel {
        kind: SurfaceKind::Cylinder,
        complex,
        marked_cycles: vec![("a".into(), a)],
    }
}

/// Moebius strip: x glued with a flip in y, y free.
pub fn grid_moebius(n: usize, m: usize) -> SurfaceModel {
    let rows = m + 1;
    let resolve = move |i: usize, j: usize| {
        if i == n {
            // (n, j) ~ (0, m - j)
            (m - j) * n
        } else {
            i + n * j
        }
    };
    let tris = grid_quads(n, m, resolve);
    let complex = SimplicialComplex::from_simplices(n * rows, &tris).expect("moebius grid");
    // Core loop: middle row requires odd m for exact centering; mark the
    // bottom row path closed through the flip instead.
    let a: Vec<(usize, usize)> = (0..n)
        .map(|i| (resolve(i, 0), resolve(i + 1, 0)))
        .chain((0..n).map(|i| (resolve(i, m), resolve(i + 1, m))))
        .collect();
    SurfaceModel {
        kind: SurfaceKind::Moebius,
        complex,
        marked_cycles: vec![("core".into(), a)],
    }
}

/// The 6-vertex projective plane (antipodal quotient of the icosahedron).
pub fn projective_plane() -> SurfaceModel {
    let faces: Vec<Vec<usize>> = vec![
        vec![0, 1, 4],
        vec![0, 1, 5],
        vec![0, 2, 3],
        vec![0, 2, 5],
        vec![0, 3, 4],
        vec![1, 2, 3],
        vec![1, 2, 4],
        vec![1, 3, 5],
        vec![2, 4, 5],
        vec![3, 4, 5],
    ];
    let complex = SimplicialComplex::from_simplices(6, &faces).expect("RP2");
    SurfaceModel {
        kind: SurfaceKind::ProjectivePlane,
        complex,
        marked_cycles: vec![("w".into(), vec![(0, 1), (1, 2), (2, 0)])],
    }
}

/// Connected sum: remove one triangle from each summand (away from the
/// marked cycles) and glue the boundary triangles vertexwise.
pub fn connected_sum(
    a: &SurfaceModel,
    b: &SurfaceModel,
    kind: SurfaceKind,
) -> Result<SurfaceModel, SimplicialError> {
    let marked_vertices = |m: &SurfaceModel| -> BTreeSet<usize> {
        m.marked_cycles
            .iter()
            .flat_map(|(_, c)| c.iter().flat_map(|&(u, v)| [u, v]))
            .collect()
    };
    let pick = |m: &SurfaceModel| -> Vec<usize> {
        let marked = marked_vertices(m);
        m.complex
            .simplices(2)
            .iter()
            .find(|t| t.iter().all(|v| !marked.contains(v)))
            .expect("a triangle away from the marked cycles exists")
            .clone()
    };
    let ta = pick(a);
    let tb = pick(b);

    // Relabel B: glued vertices onto A's triangle, the rest shifted past A.
    let a_count = a.complex.vertex_count();
    let mut relabel: BTreeMap<usize, usize> = BTreeMap::new();
    for (x, y) in tb.iter().zip(ta.iter()) {
        relabel.insert(*x, *y);
    }
    let mut next = a_count;
    for v in 0..b.complex.vertex_count() {
        relabel.entry(v).or_insert_with(|| {
            let id = next;
            next += 1;
            id
        });
    }
    let mut tris: Vec<Vec<usize>> = a
        .complex
        .simplices(2)
        .iter()
        .filter(|t| **t != ta)
        .cloned()
        .collect();
    for t in b.complex.simplices(2) {
        if *t == tb {
            continue;
        }
        let mut img: Vec<usize> = t.iter().map(|v| relabel[v]).collect();
        img.sort_unstable();
        tris.push(img);
    }
    let before = tris.len();
    tris.sort();
    tris.dedup();
    if tris.len() != before {
        return Err(SimplicialError::NotASubcomplex);
    }
    let complex = SimplicialComplex::from_simplices(next, &tris)?;
    let mut marked = a.marked_cycles.clone();
    for (name, cycle) in &b.marked_cycles {
        marked.push((
            format!("{name}'"),
            cycle.iter().map(|&(u, v)| (relabel[&u], relabel[&v])).collect(),
        ));
    }
    Ok(SurfaceModel {
        kind,
        complex,
        marked_cycles: marked,
    })
}

/// A lifted marked cycle: name, directed edges upstairs, and whether the
/// lift had to traverse the base cycle twice to close up.
pub type LiftedCycle = (String, Vec<(usize, usize)>, bool);

/// Result of the orientation double cover construction.
#[derive(Debug, Clone)]
pub struct DoubleCover {
    pub cover: SimplicialComplex,
    pub projection: SimplicialMap,
    pub involution: SimplicialMap,
    pub lifted_cycles: Vec<LiftedCycle>,
}

/// Orientation double cover of a closed non-orientable surface, built from
/// the sign cocycle of arbitrarily chosen local orientations of the
/// triangles. Errors with `AlreadyOrientable` when the orientations can be
/// made globally consistent.
pub fn double_cover(model: &SurfaceModel) -> Result<DoubleCover, SimplicialError> {
    let complex = &model.complex;
    let triangles = complex.simplices(2).to_vec();
    let edges = complex.simplices(1).to_vec();
    let boundary2 = complex.chain_complex().boundary(2);

    // Adjacency with the compatibility sign: eps = +1 when the two local
    // orientations induce opposite orientations on the shared edge.
    let mut adjacent: Vec<Vec<(usize, i64)>> = vec![Vec::new(); triangles.len()];
    for (ei, _e) in edges.iter().enumerate() {
        let incident: Vec<usize> = (0..triangles.len())
            .filter(|&t| !boundary2[(ei, t)].eq(&BigInt::from(0)))
            .collect();
        if incident.len() != 2 {
            continue; // boundary edge; closed surfaces will not hit this
        }
        let s1 = &boundary2[(ei, incident[0])];
        let s2 = &boundary2[(ei, incident[1])];
        let eps = if s1 == &(-s2.clone()) { 1 } else { -1 };
        adjacent[incident[0]].push((incident[1], eps));
        adjacent[incident[1]].push((incident[0], eps));
    }

    // Orientability test: propagate signs over the dual graph.
    let mut sign = vec![0i64; triangles.len()];
    let mut orientable = true;
    for start in 0..triangles.len() {
        if sign[start] != 0 {
            continue;
        }
        sign[start] = 1;
        let mut stack = vec![start];
        while let Some(t) = stack.pop() {
            for &(t2, eps) in &adjacent[t] {
                let want = sign[t] * eps;
                if sign[t2] == 0 {
                    sign[t2] = want;
                    stack.push(t2);
                } else if sign[t2] != want {
                    orientable = false;
                }
            }
        }
    }
    if orientable {
        return Err(SimplicialError::AlreadyOrientable);
    }

    // Cover vertices: classes of (vertex, triangle, sheet) glued across
    // shared edges; sheet flips exactly when eps = -1.
    let vic = |v: usize, t: usize, s: usize| -> usize {
        let pos = triangles[t].iter().position(|&x| x == v).expect("v in t");
        (t * 3 + pos) * 2 + s
    };
    let mut uf = UnionFind::new(triangles.len() * 6);
    for (ei, e) in edges.iter().enumerate() {
        let incident: Vec<usize> = (0..triangles.len())
            .filter(|&t| !boundary2[(ei, t)].eq(&BigInt::from(0)))
            .collect();
        if incident.len() != 2 {
            continue;
        }
        let (t1, t2) = (incident[0], incident[1]);
        let eps = adjacent[t1]
            .iter()
            .find(|&&(t, _)| t == t2)
            .map(|&(_, e)| e)
            .expect("adjacent");
        for &v in e {
            for s in 0..2usize {
                let s2 = if eps == 1 { s } else { 1 - s };
                uf.join(vic(v, t1, s), vic(v, t2, s2));
            }
        }
    }

    // Two classes per base vertex; give them contiguous ids.
    let mut class_id: BTreeMap<usize, usize> = BTreeMap::new();
    let mut class_base: Vec<usize> = Vec::new();
    let mut classes_over: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    let mut class_of = vec![usize::MAX; triangles.len() * 6];
    for t in 0..triangles.len() {
        for &v in &triangles[t].clone() {
            for s in 0..2usize {
                let root = uf.find(vic(v, t, s));
                let id = *class_id.entry(root).or_insert_with(|| {
                    class_base.push(v);
                    class_base.len() - 1
                });
                classes_over.entry(v).or_default().insert(id);
                class_of[vic(v, t, s)] = id;
            }
        }
    }
    for set in classes_over.values() {
        assert_eq!(set.len(), 2, "orientation cover has two sheets per vertex");
    }

    let cover_tris: Vec<Vec<usize>> = (0..triangles.len())
        .flat_map(|t| (0..2usize).map(move |s| (t, s)))
        .map(|(t, s)| {
            let mut tri: Vec<usize> = triangles[t]
                .iter()
                .map(|&v| class_of[vic(v, t, s)])
                .collect();
            tri.sort_unstable();
            tri
        })
        .collect();
    let cover = SimplicialComplex::from_simplices(class_base.len(), &cover_tris)?;

    let projection = SimplicialMap::new(cover.clone(), complex.clone(), class_base.clone())?;
    let deck: Vec<usize> = (0..class_base.len())
        .map(|c| {
            let v = class_base[c];
            *classes_over[&v]
                .iter()
                .find(|&&other| other != c)
                .expect("two classes per vertex")
        })
        .collect();
    let involution = SimplicialMap::new(cover.clone(), cover.clone(), deck)?;

    // Lift the marked cycles; wind twice when the single lift does not close.
    let step = |cu: usize, u: usize, w: usize| -> usize {
        let key = if u < w { vec![u, w] } else { vec![w, u] };
        for t in 0..triangles.len() {
            if !key.iter().all(|v| triangles[t].contains(v)) {
                continue;
            }
            for s in 0..2usize {
                if class_of[vic(u, t, s)] == cu {
                    return class_of[vic(w, t, s)];
                }
            }
        }
        panic!("edge not liftable");
    };
    let mut lifted_cycles = Vec::new();
    for (name, cycle) in &model.marked_cycles {
        let start_base = cycle[0].0;
        let start = *classes_over[&start_base].iter().next().unwrap();
        let mut lift = Vec::new();
        let mut cur = start;
        for &(u, w) in cycle {
            let nxt = step(cur, u, w);
            lift.push((cur, nxt));
            cur = nxt;
        }
        let mut wound = false;
        if cur != start {
            wound = true;
            for &(u, w) in cycle {
                let nxt = step(cur, u, w);
                lift.push((cur, nxt));
                cur = nxt;
            }
            assert_eq!(cur, start, "deck group has order two");
        }
        lifted_cycles.push((name.clone(), lift, wound));
    }

    Ok(DoubleCover {
        cover,
        projection,
        involution,
        lifted_cycles,
    })
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }
    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }
    fn join(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// Convenience: H_1 of a model with the requested coefficients.
pub fn first_homology(model: &SurfaceModel, k: Coefficients) -> FPAbelianGroup {
    model
        .complex
        .homology(1, k)
        .expect("surface complexes are valid")
}

/// Coherently oriented triangle tuples of a closed orientable surface, read
/// off a generator of H_2 (coefficients are +-1 on every triangle).
pub fn oriented_triangles(complex: &SimplicialComplex) -> Option<Vec<[usize; 3]>> {
    let pres = complex
        .chain_complex()
        .homology_presentation(2, Coefficients::Integers)
        .ok()?;
    if pres.group() != &FPAbelianGroup::free(1) {
        return None;
    }
    let gen = pres.generator(0);
    let mut out = Vec::with_capacity(gen.len());
    for (i, c) in gen.iter().enumerate() {
        let t = &complex.simplices(2)[i];
        let tri = if *c == BigInt::from(1) {
            [t[0], t[1], t[2]]
        } else if *c == BigInt::from(-1) {
            [t[0], t[2], t[1]]
        } else {
            return None;
        };
        out.push(tri);
    }
    Some(out)
}

/// The fundamental 2-cycle matching [`oriented_triangles`]: coefficient per
/// sorted triangle.
pub fn fundamental_two_cycle(complex: &SimplicialComplex) -> Option<Vec<(i64, Vec<usize>)>> {
    let pres = complex
        .chain_complex()
        .homology_presentation(2, Coefficients::Integers)
        .ok()?;
    if pres.group() != &FPAbelianGroup::free(1) {
        return None;
    }
    let gen = pres.generator(0);
    Some(
        gen.iter()
            .enumerate()
            .map(|(i, c)| {
                (
                    i64::try_from(c).expect("small coefficient"),
                    complex.simplices(2)[i].clone(),
                )
            })
            .collect(),
    )
}
