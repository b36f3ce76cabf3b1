//! Matrix representations of small Clifford algebras over exact complex
//! rationals: the classical low-dimensional identifications, the two
//! periodicity isomorphisms checked on full blade bases, and the gamma
//! matrices of the (1,3) signature with their chirality product.

use super::{CRational, CliffordElement, Scalar, Signature};
use num_bigint::BigInt;
use num_rational::BigRational;

pub type CMatrix = Vec<Vec<CRational>>;

fn cz() -> CRational {
    <CRational as Scalar>::zero()
}

fn cq(n: i64, d: i64) -> CRational {
    CRational::new(
        BigRational::new(BigInt::from(n), BigInt::from(d)),
        <BigRational as Scalar>::zero(),
    )
}

fn ci(n: i64, d: i64) -> CRational {
    CRational::new(
        <BigRational as Scalar>::zero(),
        BigRational::new(BigInt::from(n), BigInt::from(d)),
    )
}

pub fn mat_mul(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    let mut out = vec![vec![cz(); m]; n];
    for i in 0..n {
        for t in 0..k {
            if Scalar::is_zero(&a[i][t]) {
                continue;
            }
            for j in 0..m {
                let add = a[i][t].clone() * b[t][j].clone();
                out[i][j] = out[i][j].clone() + add;
            }
        }
    }
    out
}

pub fn mat_add(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x.clone() + y.clone()).collect())
        .collect()
}

pub fn mat_scale(a: &CMatrix, k: &CRational) -> CMatrix {
    a.iter()
        .map(|r| r.iter().map(|x| x.clone() * k.clone()).collect())
        .collect()
}

pub fn mat_eye(n: usize) -> CMatrix {
    let mut m = vec![vec![cz(); n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = cq(1, 1);
    }
    m
}

pub fn mat_eq(a: &CMatrix, b: &CMatrix) -> bool {
    a == b
}

pub fn kronecker(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (ar, ac) = (a.len(), a[0].len());
    let (br, bc) = (b.len(), b[0].len());
    let mut out = vec![vec![cz(); ac * bc]; ar * br];
    for i in 0..ar {
        for j in 0..ac {
            for k in 0..br {
                for l in 0..bc {
                    out[i * br + k][j * bc + l] = a[i][j].clone() * b[k][l].clone();
                }
            }
        }
    }
    out
}

/// A matrix representation: images of the generators, verified to satisfy
/// the Clifford relations of the signature.
#[derive(Debug, Clone)]
pub struct MatrixRep {
    pub signature: Signature,
    pub dimension: usize,
    pub generator_images: Vec<CMatrix>,
}

impl MatrixRep {
    /// {g_i, g_j} = 2 diag_i delta_ij I, exactly.
    pub fn relations_hold(&self) -> bool {
        let n = self.signature.dim();
        let eye = mat_eye(self.dimension);
        for i in 0..n {
            for j in 0..n {
                let gi = &self.generator_images[i];
                let gj = &self.generator_images[j];
                let anti = mat_add(&mat_mul(gi, gj), &mat_mul(gj, gi));
                let expected = if i == j {
                    mat_scale(&eye, &cq(2 * self.signature.square(i) as i64, 1))
                } else {
                    mat_scale(&eye, &cz())
                };
                if !mat_eq(&anti, &expected) {
                    return false;
                }
            }
        }
        true
    }

    /// Image of a basis blade (ascending product of generator images).
    pub fn blade_image(&self, mask: u32) -> CMatrix {
        let mut acc = mat_eye(self.dimension);
        for i in 0..self.signature.dim() {
            if mask & (1 << i) != 0 {
                acc = mat_mul(&acc, &self.generator_images[i]);
            }
        }
        acc
    }

    /// Full multiplicativity over the blade basis: the linear extension of
    /// the generator assignment is an algebra homomorphism.
    pub fn multiplicative_on_basis(&self) -> bool {
        let n = self.signature.dim();
        let count = 1u32 << n;
        for a in 0..count {
            for b in 0..count {
                let lhs = mat_mul(&self.blade_image(a), &self.blade_image(b));
                // e_a * e_b in the algebra, then mapped.
                let ea = CliffordElement::<CRational>::blade(&self.signature, a, cq(1, 1));
                let eb = CliffordElement::blade(&self.signature, b, cq(1, 1));
                let prod = ea.product(&eb).expect("same signature");
                let mut rhs = mat_scale(&mat_eye(self.dimension), &cz());
                for (blade, coeff) in prod.terms() {
                    rhs = mat_add(&rhs, &mat_scale(&self.blade_image(blade), coeff));
                }
                if !mat_eq(&lhs, &rhs) {
                    return false;
                }
            }
        }
        true
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SmallRepCase {
    /// Cl(1) with e^2 = -1, inside C.
    Cl1C,
    /// Cl(1,0) with e^2 = +1: the split algebra R + R as diagonal matrices.
    Cl10RR,
    /// Cl(2) all-negative: the quaternions as 2x2 complex matrices.
    Cl2H,
    /// Cl(1,1): the real 2x2 matrices.
    Cl11M2R,
    /// Complexified Cl(1): C + C via the idempotents (1 -+ i e)/2.
    CCl1,
    /// Complexified Cl(2) as M(2, C).
    CCl2,
    /// CCl(n+2) = CCl(n) tensor CCl(2) on generator images (n = 2).
    PeriodicityCC,
    /// Cl(p+1,q+1) = Cl(p,q) tensor Cl(1,1) on generator images
    /// ((p,q) = (1,1)).
    Periodicity11,
    /// Cl(1,3): the 4x4 gamma matrices and their chirality product.
    Cl13M2H,
}

pub const ALL_SMALL_REP_CASES: [SmallRepCase; 9] = [
    SmallRepCase::Cl1C,
    SmallRepCase::Cl10RR,
    SmallRepCase::Cl2H,
    SmallRepCase::Cl11M2R,
    SmallRepCase::CCl1,
    SmallRepCase::CCl2,
    SmallRepCase::PeriodicityCC,
    SmallRepCase::Periodicity11,
    SmallRepCase::Cl13M2H,
];

/// Verification report: named checks beyond the generator relations.
#[derive(Debug, Clone)]
pub struct RepReport {
    pub relations_ok: bool,
    pub checks: Vec<(String, bool)>,
}

impl RepReport {
    pub fn all_ok(&self) -> bool {
        self.relations_ok && self.checks.iter().all(|(_, ok)| *ok)
    }
}

fn ccl2_rep() -> MatrixRep {
    // e_0 -> [[i,0],[0,-i]], e_1 -> [[0,1],[-1,0]], both squaring to -1.
    MatrixRep {
        signature: Signature::negative(2),
        dimension: 2,
        generator_images: vec![
            vec![vec![ci(1, 1), cz()], vec![cz(), ci(-1, 1)]],
            vec![vec![cz(), cq(1, 1)], vec![cq(-1, 1), cz()]],
        ],
    }
}

fn cl11_rep() -> MatrixRep {
    // e_1 -> [[-1,0],[0,1]], e_2 -> [[0,1],[-1,0]]: e_1^2 = 1, e_2^2 = -1.
    MatrixRep {
        signature: Signature::pq(1, 1),
        dimension: 2,
        generator_images: vec![
            vec![vec![cq(-1, 1), cz()], vec![cz(), cq(1, 1)]],
            vec![vec![cz(), cq(1, 1)], vec![cq(-1, 1), cz()]],
        ],
    }
}

pub fn small_rep(case: SmallRepCase) -> (MatrixRep, RepReport) {
    match case {
        SmallRepCase::Cl1C => {
            let rep = MatrixRep {
                signature: Signature::negative(1),
                dimension: 1,
                generator_images: vec![vec![vec![ci(1, 1)]]],
            };
            let report = RepReport {
                relations_ok: rep.relations_hold(),
                checks: vec![("multiplicative".into(), rep.multiplicative_on_basis())],
            };
            (rep, report)
        }
        SmallRepCase::Cl10RR => {
            let rep = MatrixRep {
                signature: Signature::positive(1),
                dimension: 2,
                generator_images: vec![vec![vec![cq(-1, 1), cz()], vec![cz(), cq(1, 1)]]],
            };
            // The idempotents (1 +- e)/2 split the algebra into R + R.
            let e = &rep.generator_images[0];
            let eye = mat_eye(2);
            let plus = mat_scale(&mat_add(&eye, e), &cq(1, 2));
            let minus = mat_scale(&mat_add(&eye, &mat_scale(e, &cq(-1, 1))), &cq(1, 2));
            let idempotent = mat_eq(&mat_mul(&plus, &plus), &plus)
                && mat_eq(&mat_mul(&minus, &minus), &minus)
                && mat_eq(&mat_mul(&plus, &minus), &mat_scale(&eye, &cz()));
            let report = RepReport {
                relations_ok: rep.relations_hold(),
                checks: vec![
                    ("multiplicative".into(), rep.multiplicative_on_basis()),
                    ("idempotent splitting".into(), idempotent),
                ],
            };
            (rep, report)
        }
        SmallRepCase::Cl2H => {
            // e_1 -> [[i,0],[0,-i]], e_2 -> [[0,1],[-1,0]]: the quaternions
            // i, j; their product is k and all square to -1.
            let rep = ccl2_rep();
            let qi = rep.blade_image(0b01);
            let qj = rep.blade_image(0b10);
            let qk = rep.blade_image(0b11);
            let eye = mat_eye(2);
            let minus_eye = mat_scale(&eye, &cq(-1, 1));
            let quaternion = mat_eq(&mat_mul(&qi, &qi), &minus_eye)
                && mat_eq(&mat_mul(&qj, &qj), &minus_eye)
                && mat_eq(&mat_mul(&qk, &qk), &minus_eye)
                && mat_eq(&mat_mul(&qi, &qj), &qk)
                && mat_eq(&mat_mul(&mat_mul(&qi, &qj), &qk), &minus_eye);
            let report = RepReport {
                relations_ok: rep.relations_hold(),
                checks: vec![
                    ("multiplicative".into(), rep.multiplicative_on_basis()),
                    ("quaternion relations i j k".into(), quaternion),
                    ("(e1 e2)^2 = -1".into(), mat_eq(&mat_mul(&qk, &qk), &minus_eye)),
                ],
            };
            (rep, report)
        }
        SmallRepCase::Cl11M2R => {
            let rep = cl11_rep();
            // Real entries span all of M(2, R): 1, e1, e2, e1e2 are linearly
            // independent over R (checked by the basis being 4-dimensional).
            let blades = [0b00u32, 0b01, 0b10, 0b11].map(|m| rep.blade_image(m));
            let independent = {
                // The 4x4 coordinate matrix of the blades must be invertible
                // over Q; verified by an explicit determinant expansion.
                let coords: Vec<Vec<CRational>> = blades
                    .iter()
                    .map(|m| vec![m[0][0].clone(), m[0][1].clone(), m[1][0].clone(), m[1][1].clone()])
                    .collect();
                let det = det4(&coords);
                !Scalar::is_zero(&det)
            };
            let report = RepReport {
                relations_ok: rep.relations_hold(),
                checks: vec![
                    ("multiplicative".into(), rep.multiplicative_on_basis()),
                    ("blades span M(2,R)".into(), independent),
                ],
            };
            (rep, report)
        }
        SmallRepCase::CCl1 => {
            let rep = MatrixRep {
                signature: Signature::negative(1),
                dimension: 2,
                generator_images: vec![vec![vec![ci(1, 1), cz()], vec![cz(), ci(-1, 1)]]],
            };
            // Idempotents (1 -+ i e)/2 exhibit CCl(1) = C + C.
            let e = &rep.generator_images[0];
            let eye = mat_eye(2);
            let p_plus = mat_add(&eye, &mat_scale(e, &ci(-1, 1)));
            let p_plus = mat_scale(&p_plus, &cq(1, 2));
            let p_minus = mat_add(&eye, &mat_scale(e, &ci(1, 1)));
            let p_minus = mat_scale(&p_minus, &cq(1, 2));
            let idempotent = mat_eq(&mat_mul(&p_plus, &p_plus), &p_plus)
                && mat_eq(&mat_mul(&p_minus, &p_minus), &p_minus)
                && mat_eq(&mat_mul(&p_plus, &p_minus), &mat_scale(&eye, &cz()))
                && mat_eq(&mat_add(&p_plus, &p_minus), &eye);
            let report = RepReport {
                relations_ok: rep.relations_hold(),
                checks: vec![
                    ("multiplicative".into(), rep.multiplicative_on_basis()),
                    ("idempotent splitting C + C".into(), idempotent),
                ],
            };
            (rep, report)
        }
        SmallRepCase::CCl2 => {
            let rep = ccl2_rep();
            // Dimension audit: dim CCl(2) = 4 = dim M(2, C).
            let audit = 4usize == rep.dimension * rep.dimension;
            let report = RepReport {
                relations_ok: rep.relations_hold(),
                checks: vec![
                    ("multiplicative".into(), rep.multiplicative_on_basis()),
                    ("dimension audit 4 = 2^2".into(), audit),
                ],
            };
            (rep, report)
        }
        SmallRepCase::PeriodicityCC => {
            // CCl(4) from CCl(2) tensor CCl(2): f_j -> e_j tensor (i e'_1 e'_2)
            // for j = 1,2 and f_3 -> 1 tensor e'_1, f_4 -> 1 tensor e'_2.
            let inner = ccl2_rep();
            let eye = mat_eye(2);
            let twist = mat_scale(&inner.blade_image(0b11), &ci(1, 1));
            let mut generator_images = Vec::new();
            for j in 0..2 {
                generator_images.push(kronecker(&inner.generator_images[j], &twist));
            }
            for j in 0..2 {
                generator_images.push(kronecker(&eye, &inner.generator_images[j]));
            }
            let rep = MatrixRep {
                signature: Signature::negative(4),
                dimension: 4,
                generator_images,
            };
            let report = RepReport {
                relations_ok: rep.relations_hold(),
                checks: vec![(
                    "homomorphism on all blade products".into(),
                    rep.multiplicative_on_basis(),
                )],
            };
            (rep, report)
        }
        SmallRepCase::Periodicity11 => {
            // Cl(2,2) from Cl(1,1) tensor Cl(1,1): the mixing factor is
            // eps'_0 e'_0 (squaring to +1), tensored against the positive
            // and negative generators; the last two map to 1 tensor eps'_0
            // and 1 tensor e'_0. Signature order (+, +, -, -).
            let inner = cl11_rep();
            // eps_0 = the +1 generator is index 0 in cl11_rep? cl11_rep has
            // e_1^2 = +1 at index 0 and e_2^2 = -1 at index 1.
            let eps = &inner.generator_images[0];
            let em = &inner.generator_images[1];
            let mix = mat_mul(eps, em);
            let eye = mat_eye(2);
            let generator_images = vec![
                kronecker(eps, &mix),
                kronecker(&eye, eps),
                kronecker(em, &mix),
                kronecker(&eye, em),
            ];
            let rep = MatrixRep {
                signature: Signature::new(vec![1, 1, -1, -1]),
                dimension: 4,
                generator_images,
            };
            let report = RepReport {
                relations_ok: rep.relations_hold(),
                checks: vec![(
                    "homomorphism on all blade products".into(),
                    rep.multiplicative_on_basis(),
                )],
            };
            (rep, report)
        }
        SmallRepCase::Cl13M2H => {
            // The four gamma matrices of Cl(1,3) built from
            // Cl(1,1) tensor Cl(0,2), and the chirality product.
            let g0 = vec![
                vec![cq(1, 1), cz(), cz(), cz()],
                vec![cz(), cq(1, 1), cz(), cz()],
                vec![cz(), cz(), cq(-1, 1), cz()],
                vec![cz(), cz(), cz(), cq(-1, 1)],
            ];
            let g1 = vec![
                vec![cz(), cz(), cq(1, 1), cz()],
                vec![cz(), cz(), cz(), cq(1, 1)],
                vec![cq(-1, 1), cz(), cz(), cz()],
                vec![cz(), cq(-1, 1), cz(), cz()],
            ];
            let g2 = vec![
                vec![cz(), cz(), ci(1, 1), cz()],
                vec![cz(), cz(), cz(), ci(-1, 1)],
                vec![ci(1, 1), cz(), cz(), cz()],
                vec![cz(), ci(-1, 1), cz(), cz()],
            ];
            let g3 = vec![
                vec![cz(), cz(), cz(), ci(1, 1)],
                vec![cz(), cz(), ci(1, 1), cz()],
                vec![cz(), ci(1, 1), cz(), cz()],
                vec![ci(1, 1), cz(), cz(), cz()],
            ];
            let rep = MatrixRep {
                signature: Signature::pq(1, 3),
                dimension: 4,
                generator_images: vec![g0, g1, g2, g3],
            };
            let chirality = rep.blade_image(0b1111);
            let expected = vec![
                vec![cz(), cz(), cz(), cq(-1, 1)],
                vec![cz(), cz(), cq(1, 1), cz()],
                vec![cz(), cq(-1, 1), cz(), cz()],
                vec![cq(1, 1), cz(), cz(), cz()],
            ];
            let report = RepReport {
                relations_ok: rep.relations_hold(),
                checks: vec![
                    ("multiplicative".into(), rep.multiplicative_on_basis()),
                    ("chirality matrix".into(), mat_eq(&chirality, &expected)),
                ],
            };
            (rep, report)
        }
    }
}

fn det4(rows: &[Vec<CRational>]) -> CRational {
    fn det(rows: &[Vec<CRational>]) -> CRational {
        let n = rows.len();
        if n == 1 {
            return rows[0][0].clone();
        }
        let mut acc = cz();
        for j in 0..n {
            let minor: Vec<Vec<CRational>> = rows[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let term = rows[0][j].clone() * det(&minor);
            acc = if j % 2 == 0 { acc + term } else { acc - term };
        }
        acc
    }
    det(rows)
}

/// The dimension audit for the complexified algebras: iterate the
/// periodicity construction to a representation of CCl(2k) on 2^k
/// dimensions and verify the generator relations, for k = 1..=max_k.
pub fn complex_dimension_audit(max_k: usize) -> bool {
    let mut rep = ccl2_rep();
    if !rep.relations_hold() {
        return false;
    }
    for _k in 2..=max_k {
        let n = rep.signature.dim();
        let base = ccl2_rep();
        let twist = mat_scale(&base.blade_image(0b11), &ci(1, 1));
        let eye_inner = mat_eye(2);
        let mut generator_images: Vec<CMatrix> = rep
            .generator_images
            .iter()
            .map(|g| kronecker(g, &twist))
            .collect();
        generator_images.push(kronecker(&mat_eye(rep.dimension), &base.generator_images[0]));
        generator_images.push(kronecker(&mat_eye(rep.dimension), &base.generator_images[1]));
        let _ = eye_inner;
        rep = MatrixRep {
            signature: Signature::negative(n + 2),
            dimension: rep.dimension * 2,
            generator_images,
        };
        if !rep.relations_hold() {
            return false;
        }
        // dim CCl(2k) = 4^k must equal dim M(2^k, C) = (2^k)^2.
        let k = rep.signature.dim() / 2;
        if 4usize.pow(k as u32) != rep.dimension * rep.dimension {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_small_reps_verify() {
        for case in ALL_SMALL_REP_CASES {
            let (_, report) = small_rep(case);
            assert!(report.relations_ok, "{case:?} relations");
            for (name, ok) in &report.checks {
                assert!(ok, "{case:?}: {name}");
            }
        }
    }

    #[test]
    fn dimension_audit_up_to_k3() {
        assert!(complex_dimension_audit(3));
    }
}
