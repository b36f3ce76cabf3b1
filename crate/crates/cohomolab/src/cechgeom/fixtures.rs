//! Shared constructions used by tests, the acceptance suite and the CLI:
//! a three-chart circle cover with a flat datum, the vertex-star cover of
//! the subdivided sphere with its monopole datum, and a four-chart band
//! cover of the torus.

use super::{CDCochain, Cover, LineData};
use crate::simplicial::surfaces::{grid_torus, SurfaceModel};
use crate::simplicial::SimplicialComplex;
use num_bigint::BigInt;

/// Hexagonal circle with three overlapping arc charts; each chart holds
/// three consecutive edges, overlapping its neighbors in one edge. No
/// triple overlaps.
pub fn circle_three_chart_cover() -> Cover {
    let edges: Vec<Vec<usize>> = (0..6).map(|i| {
        let mut e = vec![i, (i + 1) % 6];
        e.sort_unstable();
        e
    }).collect();
    let base = SimplicialComplex::from_simplices(6, &edges).expect("hexagon");
    let arc = |idx: [usize; 3]| {
        let sims: Vec<Vec<usize>> = idx.iter().map(|&i| edges[i].clone()).collect();
        SimplicialComplex::from_simplices(6, &sims).expect("arc")
    };
    // Edge i connects vertices i and i+1.
    let charts = vec![arc([0, 1, 2]), arc([2, 3, 4]), arc([4, 5, 0])];
    Cover::new(base, charts).expect("circle cover")
}

/// The flat circle datum with transition value c from chart 2 back to
/// chart 0 (constant on their overlap), zero elsewhere; A = 0.
pub fn flat_circle_datum(c: f64) -> LineData {
    let mut rho = CDCochain::zero(1, 0);
    // rho_{2,0} = c means the stored value on the sorted pair (0,2) is -c;
    // the overlap of charts 0 and 2 is the edge (0,1) with its vertices.
    for v in [0usize, 1] {
        rho.set(&[0, 2], &[v], -c);
    }
    LineData {
        rho,
        a: CDCochain::zero(0, 1),
    }
}

/// The standard loop around the circle with each edge in its obvious chart.
pub fn circle_loop_steps() -> (Vec<(usize, usize)>, Vec<usize>) {
    let edges: Vec<(usize, usize)> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
    let charts = vec![0, 0, 1, 1, 2, 2];
    (edges, charts)
}

/// The vertex-star cover of the barycentrically subdivided boundary of the
/// 3-simplex: chart i consists of the subdivision simplices whose smallest
/// carrier contains the original vertex i. A good cover with nerve equal to
/// the boundary of the 3-simplex.
pub struct SphereStarCover {
    pub cover: Cover,
    /// Subdivision vertex of each original simplex, keyed by (dim, index).
    pub sd: SimplicialComplex,
    pub carrier: Vec<(usize, usize)>,
    pub original: SimplicialComplex,
}

pub fn sphere_star_cover() -> SphereStarCover {
    let original = SimplicialComplex::sphere(2);
    let (sd, carrier) = original.barycentric_subdivision();
    let carrier_simplex = |v: usize| -> Vec<usize> {
        original.simplices(carrier[v].0)[carrier[v].1].clone()
    };
    let mut charts = Vec::new();
    for i in 0..4usize {
        let sims: Vec<Vec<usize>> = sd
            .all_simplices()
            .into_iter()
            .filter(|s| {
                // Smallest carrier of the chain is the carrier of the
                // smallest subdivision vertex id (ids sort by dimension).
                let v0 = *s.iter().min().expect("nonempty");
                carrier_simplex(v0).contains(&i)
            })
            .collect();
        charts.push(SimplicialComplex::from_simplices(sd.vertex_count(), &sims).expect("star"));
    }
    SphereStarCover {
        cover: Cover::new(sd.clone(), charts).expect("star cover"),
        sd,
        carrier,
        original,
    }
}

impl SphereStarCover {
    pub fn sd_vertex(&self, d: usize, simplex: &[usize]) -> usize {
        let idx = self.original.simplex_index(d, simplex).expect("carrier");
        self.carrier
            .iter()
            .position(|&(cd, ci)| cd == d && ci == idx)
            .expect("barycenter exists")
    }

    /// The nerve 2-cycle corresponding to the fundamental class of the
    /// subdivided base: push the fundamental cycle forward along the
    /// smallest-carrier-vertex map, with the degree-2 comparison sign of
    /// the Cech-de Rham zig-zag (so that pairing the Bockstein class
    /// against it equals the curvature pairing on the base cycle exactly).
    pub fn nerve_fundamental_cycle(&self) -> Vec<(i64, Vec<usize>)> {
        use crate::simplicial::surfaces::fundamental_two_cycle;
        let base_cycle = fundamental_two_cycle(&self.sd).expect("sphere is orientable");
        let to_chart = |v: usize| -> usize {
            let (d, i) = self.carrier[v];
            *self.original.simplices(d)[i].iter().min().expect("nonempty")
        };
        let mut acc: std::collections::BTreeMap<Vec<usize>, i64> = Default::default();
        for (coeff, t) in base_cycle {
            let img: Vec<usize> = t.iter().map(|&v| to_chart(v)).collect();
            let mut sorted = img.clone();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                continue; // degenerate
            }
            let mut sign = -1i64; // comparison sign at cochain degree 2
            for i in 0..img.len() {
                for j in (i + 1)..img.len() {
                    if img[i] > img[j] {
                        sign = -sign;
                    }
                }
            }
            *acc.entry(sorted).or_insert(0) += coeff * sign;
        }
        acc.into_iter()
            .filter(|(_, c)| *c != 0)
            .map(|(t, c)| (c, t))
            .collect()
    }

    /// A monopole datum: the Bockstein class pairs to +1 against the nerve
    /// fundamental cycle. All transition logarithms vanish except on one
    /// pair of charts at the barycenter of one original triangle.
    pub fn monopole_datum(&self) -> LineData {
        let nerve_cycle = self.nerve_fundamental_cycle();
        let (coeff, _triple) = nerve_cycle
            .iter()
            .find(|(_, t)| t == &vec![0usize, 1, 2])
            .cloned()
            .expect("triple (0,1,2) is in the nerve cycle");
        // delta rho on (0,1,2) at the barycenter must equal 1/coeff = coeff.
        let b012 = self.sd_vertex(2, &[0, 1, 2]);
        let mut rho = CDCochain::zero(1, 0);
        rho.set(&[1, 2], &[b012], coeff as f64);
        // A_alpha(e) = d rho_{min(e), alpha}(e) on every edge e of U_alpha,
        // where min(e) is the smallest chart containing e.
        let mut a = CDCochain::zero(0, 1);
        for alpha in 0..self.cover.chart_count() {
            for e in self.cover.chart(alpha).simplices(1) {
                let charts = self.cover.charts_containing(e);
                let gamma = charts[0];
                if gamma == alpha {
                    continue;
                }
                let value = rho.value(&[gamma, alpha], &[e[1]])
                    - rho.value(&[gamma, alpha], &[e[0]]);
                if value != 0.0 {
                    a.set(&[alpha], e, value);
                }
            }
        }
        LineData { rho, a }
    }
}

/// A nine-chart cover of the 6x6 grid torus by 4x4 vertex windows at
/// stride 2 (wrapped). Neighboring windows overlap in bands two vertices
/// wide, so plenty of triangles lie in two or more charts and triple and
/// quadruple overlaps are nonempty.
pub struct TorusBandCover {
    pub cover: Cover,
    pub model: SurfaceModel,
}

pub fn torus_band_cover() -> TorusBandCover {
    let model = grid_torus(6, 6);
    let n = 6usize;
    let vid = |i: usize, j: usize| (i % n) + n * (j % n);
    let mut charts = Vec::new();
    for a in 0..3usize {
        for b in 0..3usize {
            let xs: Vec<usize> = (0..4).map(|k| (2 * a + k) % n).collect();
            let ys: Vec<usize> = (0..4).map(|k| (2 * b + k) % n).collect();
            let allowed: std::collections::BTreeSet<usize> = xs
                .iter()
                .flat_map(|&x| ys.iter().map(move |&y| vid(x, y)))
                .collect();
            let sims: Vec<Vec<usize>> = model
                .complex
                .all_simplices()
                .into_iter()
                .filter(|s| s.iter().all(|v| allowed.contains(v)))
                .collect();
            charts.push(
                SimplicialComplex::from_simplices(model.complex.vertex_count(), &sims)
                    .expect("window chart"),
            );
        }
    }
    TorusBandCover {
        cover: Cover::new(model.complex.clone(), charts).expect("torus cover"),
        model,
    }
}

/// Deterministic pseudo-random real cochain supported everywhere the
/// bidegree allows, with values in (-0.5, 0.5).
pub fn random_cochain<R: rand::Rng>(
    cover: &Cover,
    p: usize,
    q: usize,
    rng: &mut R,
) -> CDCochain {
    let mut c = CDCochain::zero(p, q);
    for tuple in cover.nerve_tuples(p + 1) {
        for s in cover.intersection_simplices(&tuple, q) {
            c.set(&tuple, &s, rng.gen_range(-0.5..0.5));
        }
    }
    c
}

/// Integer-valued random cochain (for flat parts that must stay integral).
pub fn random_integer_cochain<R: rand::Rng>(
    cover: &Cover,
    p: usize,
    q: usize,
    rng: &mut R,
) -> CDCochain {
    let mut c = CDCochain::zero(p, q);
    for tuple in cover.nerve_tuples(p + 1) {
        for s in cover.intersection_simplices(&tuple, q) {
            c.set(&tuple, &s, rng.gen_range(-2i64..=2) as f64);
        }
    }
    c
}

/// Coefficient of a sorted simplex inside an integral chain vector.
pub fn chain_coefficient(chain: &[BigInt], idx: usize) -> i64 {
    i64::try_from(&chain[idx]).expect("small coefficients")
}
