use super::matrix::{kernel, smith_normal_form, unimodular_inverse, IntMatrix};
use super::ExactAlgError;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::fmt;

/// Finitely presented abelian group in canonical form: a free rank plus a
/// divisibility-sorted torsion list. Two groups are equal iff field-wise
/// equal; generator systems live in [`Presentation`] and never enter
/// equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FPAbelianGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl FPAbelianGroup {
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Self {
        for w in torsion.windows(2) {
            assert!((&w[1] % &w[0]).is_zero(), "torsion must be divisibility-sorted");
        }
        assert!(
            torsion.iter().all(|t| t >= &BigInt::from(2)),
            "torsion coefficients must be at least 2"
        );
        FPAbelianGroup { free_rank, torsion }
    }

    pub fn trivial() -> Self {
        FPAbelianGroup::new(0, vec![])
    }

    pub fn free(rank: usize) -> Self {
        FPAbelianGroup::new(rank, vec![])
    }

    pub fn cyclic(order: u64) -> Self {
        FPAbelianGroup::new(0, vec![BigInt::from(order)])
    }

    /// `r` copies of Z/2; the crate-wide encoding of a Z_2-vector space of
    /// dimension `r`.
    pub fn z2_vector_space(dim: usize) -> Self {
        FPAbelianGroup::new(0, vec![BigInt::from(2); dim])
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Number of generators in the canonical generator system.
    pub fn generator_count(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    /// Generator orders, torsion first (in torsion order) then 0 for each
    /// free generator. This fixes the row/column convention of [`GroupHom`].
    pub fn orders(&self) -> Vec<BigInt> {
        let mut o = self.torsion.clone();
        o.extend(std::iter::repeat_n(BigInt::zero(), self.free_rank));
        o
    }

    /// Relation matrix on the canonical generators: one column `order * e_i`
    /// per torsion generator.
    pub fn relation_matrix(&self) -> IntMatrix {
        let g = self.generator_count();
        let mut m = IntMatrix::zeros(g, self.torsion.len());
        for (j, t) in self.torsion.iter().enumerate() {
            m[(j, j)] = t.clone();
        }
        m
    }

    pub fn direct_sum(&self, other: &FPAbelianGroup) -> FPAbelianGroup {
        // Canonicalize the combined torsion via SNF of the diagonal matrix.
        let all: Vec<BigInt> = self
            .torsion
            .iter()
            .chain(other.torsion.iter())
            .cloned()
            .collect();
        let n = all.len();
        let mut diag = IntMatrix::zeros(n, n);
        for (i, t) in all.iter().enumerate() {
            diag[(i, i)] = t.clone();
        }
        let snf = smith_normal_form(&diag);
        let torsion = snf
            .divisors()
            .into_iter()
            .filter(|d| d > &BigInt::one())
            .collect();
        FPAbelianGroup::new(self.free_rank + other.free_rank, torsion)
    }
}

impl fmt::Display for FPAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z_{t}"));
        }
        write!(f, "{}", parts.join(" (+) "))
    }
}

impl fmt::Debug for FPAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A subquotient `span(Z)/span(B)` of an ambient lattice, with a fixed
/// generator system so induced maps have a stable basis. The generator
/// system is an implementation detail: equality of the computed groups goes
/// through [`FPAbelianGroup`].
#[derive(Clone, Debug)]
pub struct Presentation {
    ambient_dim: usize,
    group: FPAbelianGroup,
    /// Ambient representatives of the canonical generators (torsion first).
    generators: IntMatrix,
    /// Denominator lattice (needed to check well-definedness of maps).
    denominator: IntMatrix,
    // Coordinate machinery: for v in span(Z), coords are
    // reduce(uc * diag(1/dz) * uz * v) on the kept indices.
    uz: IntMatrix,
    dz: Vec<BigInt>,
    uc: IntMatrix,
    /// Order per internal index: the SNF divisor (0 = free, 1 = killed).
    internal_orders: Vec<BigInt>,
    /// Internal indices of the kept generators, torsion first then free.
    kept: Vec<usize>,
}

impl Presentation {
    pub fn group(&self) -> &FPAbelianGroup {
        &self.group
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Ambient representative of generator `i` (torsion first, then free).
    pub fn generator(&self, i: usize) -> Vec<BigInt> {
        self.generators.column(i)
    }

    pub fn generators(&self) -> &IntMatrix {
        &self.generators
    }

    /// Trivial presentation over an ambient lattice.
    pub fn trivial(ambient_dim: usize) -> Presentation {
        subquotient(
            &IntMatrix::zeros(ambient_dim, 0),
            &IntMatrix::zeros(ambient_dim, 0),
        )
        .expect("trivial subquotient")
    }

    /// Canonical coordinates of an ambient vector lying in the numerator
    /// lattice; torsion coordinates are reduced mod their order. `None` when
    /// the vector is not an integer combination of the numerator.
    pub fn express(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.ambient_dim, "ambient dimension mismatch");
        let w = self.uz.mul_vec(v);
        let r = self.dz.len();
        for entry in w.iter().skip(r) {
            if !entry.is_zero() {
                return None;
            }
        }
        let mut a = Vec::with_capacity(r);
        for (wi, di) in w.iter().take(r).zip(&self.dz) {
            let (q, rem) = wi.div_rem(di);
            if !rem.is_zero() {
                return None;
            }
            a.push(q);
        }
        let c = self.uc.mul_vec(&a);
        let coords = self
            .kept
            .iter()
            .map(|&i| {
                let o = &self.internal_orders[i];
                if o.is_zero() {
                    c[i].clone()
                } else {
                    c[i].mod_floor(o)
                }
            })
            .collect();
        Some(coords)
    }

    /// Whether an ambient vector represents the zero class.
    pub fn is_zero_class(&self, v: &[BigInt]) -> Option<bool> {
        self.express(v).map(|c| c.iter().all(Zero::is_zero))
    }
}

/// Canonical presentation of `span(Z)/span(B)`. Errors when a column of `B`
/// is not an integer combination of the columns of `Z`.
pub fn subquotient(z: &IntMatrix, b: &IntMatrix) -> Result<Presentation, ExactAlgError> {
    assert_eq!(z.rows(), b.rows(), "ambient dimension mismatch");
    let m = z.rows();
    let snf_z = smith_normal_form(z);
    let r = snf_z.rank();
    let dz = snf_z.divisors();

    // Coordinates of the B-columns in the basis d_k * (Uz^{-1} e_k) of span(Z).
    let mut c = IntMatrix::zeros(r, b.cols());
    for j in 0..b.cols() {
        let w = snf_z.u.mul_vec(&b.column(j));
        for (i, entry) in w.iter().enumerate() {
            if i < r {
                let (q, rem) = entry.div_rem(&dz[i]);
                if !rem.is_zero() {
                    return Err(ExactAlgError::ContainmentViolation(j));
                }
                c[(i, j)] = q;
            } else if !entry.is_zero() {
                return Err(ExactAlgError::ContainmentViolation(j));
            }
        }
    }

    let snf_c = smith_normal_form(&c);
    let rc = snf_c.rank();
    let mut internal_orders = vec![BigInt::zero(); r];
    for (i, d) in snf_c.divisors().into_iter().enumerate() {
        internal_orders[i] = d;
    }

    let torsion: Vec<BigInt> = internal_orders
        .iter()
        .filter(|o| **o > BigInt::one())
        .cloned()
        .collect();
    let free_rank = r - rc;
    let group = FPAbelianGroup::new(free_rank, torsion);

    let kept: Vec<usize> = (0..r)
        .filter(|&i| internal_orders[i] > BigInt::one())
        .chain((0..r).filter(|&i| internal_orders[i].is_zero()))
        .collect();

    // Ambient generators: W * Uc^{-1} restricted to the kept columns, where
    // W has columns d_k * (Uz^{-1} e_k).
    let uz_inv = unimodular_inverse(&snf_z.u);
    let mut w_mat = IntMatrix::zeros(m, r);
    for k in 0..r {
        for i in 0..m {
            w_mat[(i, k)] = &uz_inv[(i, k)] * &dz[k];
        }
    }
    let uc_inv = unimodular_inverse(&snf_c.u);
    let gens_all = w_mat.mul(&uc_inv);
    let generators = gens_all.select_cols(&kept);

    Ok(Presentation {
        ambient_dim: m,
        group,
        generators,
        denominator: b.clone(),
        uz: snf_z.u,
        dz,
        uc: snf_c.u,
        internal_orders,
        kept,
    })
}

/// A homomorphism between finitely presented abelian groups, stored as a
/// matrix on the canonical generator systems (torsion generators first).
#[derive(Clone, PartialEq, Eq)]
pub struct GroupHom {
    domain: FPAbelianGroup,
    codomain: FPAbelianGroup,
    matrix: IntMatrix,
}

impl fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GroupHom {} -> {} via {:?}",
            self.domain, self.codomain, self.matrix
        )
    }
}

impl GroupHom {
    /// Build a hom, reducing torsion rows and checking that torsion orders
    /// are respected.
    pub fn new(
        domain: FPAbelianGroup,
        codomain: FPAbelianGroup,
        matrix: IntMatrix,
    ) -> Result<GroupHom, ExactAlgError> {
        if matrix.rows() != codomain.generator_count() || matrix.cols() != domain.generator_count()
        {
            return Err(ExactAlgError::DimensionMismatch(format!(
                "hom matrix {}x{} for {} -> {}",
                matrix.rows(),
                matrix.cols(),
                domain,
                codomain
            )));
        }
        let matrix = reduce_matrix(&codomain, matrix);
        let dom_orders = domain.orders();
        let cod_orders = codomain.orders();
        for (j, mj) in dom_orders.iter().enumerate() {
            if mj.is_zero() {
                continue;
            }
            for (i, oi) in cod_orders.iter().enumerate() {
                let v = mj * &matrix[(i, j)];
                let ok = if oi.is_zero() {
                    v.is_zero()
                } else {
                    (&v % oi).is_zero()
                };
                if !ok {
                    return Err(ExactAlgError::TorsionIncompatible);
                }
            }
        }
        Ok(GroupHom {
            domain,
            codomain,
            matrix,
        })
    }

    pub fn identity(group: &FPAbelianGroup) -> GroupHom {
        GroupHom::new(
            group.clone(),
            group.clone(),
            IntMatrix::identity(group.generator_count()),
        )
        .expect("identity is always compatible")
    }

    pub fn zero(domain: &FPAbelianGroup, codomain: &FPAbelianGroup) -> GroupHom {
        GroupHom::new(
            domain.clone(),
            codomain.clone(),
            IntMatrix::zeros(codomain.generator_count(), domain.generator_count()),
        )
        .expect("zero is always compatible")
    }

    pub fn domain(&self) -> &FPAbelianGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &FPAbelianGroup {
        &self.codomain
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &GroupHom) -> Result<GroupHom, ExactAlgError> {
        if self.domain != other.codomain {
            return Err(ExactAlgError::DimensionMismatch(
                "composition domain/codomain mismatch".into(),
            ));
        }
        GroupHom::new(
            other.domain.clone(),
            self.codomain.clone(),
            self.matrix.mul(&other.matrix),
        )
    }

    /// Apply to an element given in domain coordinates.
    pub fn apply(&self, coords: &[BigInt]) -> Vec<BigInt> {
        reduce_coords(&self.codomain, self.matrix.mul_vec(coords))
    }
}

fn reduce_coords(group: &FPAbelianGroup, mut coords: Vec<BigInt>) -> Vec<BigInt> {
    for (i, t) in group.torsion().iter().enumerate() {
        coords[i] = coords[i].mod_floor(t);
    }
    coords
}

fn reduce_matrix(codomain: &FPAbelianGroup, mut m: IntMatrix) -> IntMatrix {
    for (i, t) in codomain.torsion().iter().enumerate() {
        for j in 0..m.cols() {
            m[(i, j)] = m[(i, j)].mod_floor(t);
        }
    }
    m
}

/// The hom induced on presentations by an ambient matrix. Checks that the
/// denominator maps into the denominator (well-definedness) and that every
/// generator image lies in the target numerator.
pub fn induced_hom(
    f: &IntMatrix,
    source: &Presentation,
    target: &Presentation,
) -> Result<GroupHom, ExactAlgError> {
    if f.rows() != target.ambient_dim() || f.cols() != source.ambient_dim() {
        return Err(ExactAlgError::DimensionMismatch(format!(
            "ambient map {}x{} between ambients {} and {}",
            f.rows(),
            f.cols(),
            source.ambient_dim(),
            target.ambient_dim()
        )));
    }
    for j in 0..source.denominator.cols() {
        let img = f.mul_vec(&source.denominator.column(j));
        match target.is_zero_class(&img) {
            Some(true) => {}
            _ => return Err(ExactAlgError::NotWellDefined),
        }
    }
    let gcount = source.group().generator_count();
    let mut cols = Vec::with_capacity(gcount);
    for i in 0..gcount {
        let img = f.mul_vec(&source.generator(i));
        let coords = target.express(&img).ok_or(ExactAlgError::NotWellDefined)?;
        cols.push(coords);
    }
    let matrix = IntMatrix::from_columns(target.group().generator_count(), &cols);
    GroupHom::new(source.group().clone(), target.group().clone(), matrix)
}

/// Spec-level entry point: the map of canonical subquotients induced by `f`.
pub fn hom_on_subquotients(
    f: &IntMatrix,
    source: (&IntMatrix, &IntMatrix),
    target: (&IntMatrix, &IntMatrix),
) -> Result<(GroupHom, Presentation, Presentation), ExactAlgError> {
    let src = subquotient(source.0, source.1)?;
    let dst = subquotient(target.0, target.1)?;
    let hom = induced_hom(f, &src, &dst)?;
    Ok((hom, src, dst))
}

/// The image of a hom as a presentation inside the codomain's coordinate
/// lattice (ambient = canonical generators of the codomain).
pub fn image_subgroup(h: &GroupHom) -> Presentation {
    let rel = h.codomain().relation_matrix();
    let z = h.matrix().hstack(&rel);
    subquotient(&z, &rel).expect("relations are contained in the image lattice")
}

/// Homology `ker(f) / im(g)` at the middle group of a composable pair
/// `g: P -> M`, `f: M -> N` with `f ∘ g = 0`.
pub fn hom_homology(g: &GroupHom, f: &GroupHom) -> Result<FPAbelianGroup, ExactAlgError> {
    if g.codomain() != f.domain() {
        return Err(ExactAlgError::DimensionMismatch(
            "hom_homology: maps are not composable".into(),
        ));
    }
    if !f.compose(g)?.is_zero() {
        return Err(ExactAlgError::NotWellDefined);
    }
    let rel_m = f.domain().relation_matrix();
    let rel_n = f.codomain().relation_matrix();
    // Numerator: x with F x in span(rel_n); the x-part of ker [F | rel_n].
    let stacked = f.matrix().hstack(&rel_n);
    let k = kernel(&stacked);
    let m_dim = f.domain().generator_count();
    let numerator = k.select_rows(&(0..m_dim).collect::<Vec<_>>());
    let denominator = g.matrix().hstack(&rel_m);
    Ok(subquotient(&numerator, &denominator)?.group().clone())
}
