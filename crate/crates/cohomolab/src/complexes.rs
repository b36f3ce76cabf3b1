//! Chain complexes of finitely generated free abelian groups, their homology
//! with Z, Q and Z_2 coefficients, chain maps and induced maps, Euler
//! characteristics and degrees of sphere self-maps.

use crate::exactalg::{
    induced_hom, kernel, smith_normal_form, solve, subquotient, unimodular_inverse, ExactAlgError,
    FPAbelianGroup, GroupHom, IntMatrix, Presentation,
};
use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("boundary composite does not vanish at degree {0}")]
    InvalidComplex(i64),
    #[error("components do not commute with the boundaries at degree {0}")]
    NotChainMap(i64),
    #[error("H_{0} is not infinite cyclic; not a sphere model")]
    NotASphere(i64),
    #[error(transparent)]
    Algebra(#[from] ExactAlgError),
}

/// Coefficient choices for (co)homology. Rational and mod-2 results are
/// computed by reducing/extending the integral complex; mod-2 groups are
/// reported as torsion [2, ..., 2] with the number of 2s the Z_2-dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Coefficients {
    Integers,
    Rationals,
    Mod2,
}

/// A chain complex concentrated in a contiguous degree range; degrees
/// outside the range are rank 0. `boundary(n)` is the matrix of
/// `∂_n: C_n -> C_{n-1}`.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    lo: i64,
    ranks: Vec<usize>,
    boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    /// `ranks[i]` is the rank in degree `lo + i`; `boundaries[i]` maps degree
    /// `lo + i` down to `lo + i - 1` (the lowest one has 0 rows).
    pub fn new(lo: i64, ranks: Vec<usize>, boundaries: Vec<IntMatrix>) -> Self {
        assert_eq!(ranks.len(), boundaries.len());
        for (i, b) in boundaries.iter().enumerate() {
            let below = if i == 0 { 0 } else { ranks[i - 1] };
            assert_eq!(b.cols(), ranks[i], "boundary {i} column mismatch");
            assert_eq!(b.rows(), below, "boundary {i} row mismatch");
        }
        ChainComplex {
            lo,
            ranks,
            boundaries,
        }
    }

    pub fn empty() -> Self {
        ChainComplex::new(0, vec![], vec![])
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.ranks.len() as i64 - 1
    }

    pub fn rank(&self, n: i64) -> usize {
        if n < self.lo || n > self.hi() {
            0
        } else {
            self.ranks[(n - self.lo) as usize]
        }
    }

    pub fn boundary(&self, n: i64) -> IntMatrix {
        if n <= self.lo || n > self.hi() {
            return IntMatrix::zeros(self.rank(n - 1), self.rank(n));
        }
        self.boundaries[(n - self.lo) as usize].clone()
    }

    /// True iff all composites `∂_n ∘ ∂_{n+1}` vanish; `Err` carries the
    /// first offending degree.
    pub fn validate(&self) -> Result<(), ComplexError> {
        for n in self.lo..=self.hi() {
            let down = self.boundary(n);
            let up = self.boundary(n + 1);
            if !down.mul(&up).is_zero() {
                return Err(ComplexError::InvalidComplex(n + 1));
            }
        }
        Ok(())
    }

    /// Append an augmentation row (all ones) below the lowest degree; used
    /// for reduced homology of simplicial complexes.
    pub fn augmented(&self) -> ChainComplex {
        if self.ranks.is_empty() {
            return self.clone();
        }
        let mut ranks = vec![1usize];
        ranks.extend_from_slice(&self.ranks);
        let mut boundaries = vec![IntMatrix::zeros(0, 1)];
        let eps = IntMatrix::from_entries(1, self.ranks[0], vec![BigInt::one(); self.ranks[0]]);
        boundaries.push(eps);
        boundaries.extend_from_slice(&self.boundaries[1..]);
        ChainComplex::new(self.lo - 1, ranks, boundaries)
    }

    /// Presentation of `H_n` over the chosen coefficients, with ambient
    /// lattice `C_n`.
    pub fn homology_presentation(
        &self,
        n: i64,
        k: Coefficients,
    ) -> Result<Presentation, ComplexError> {
        self.validate()?;
        let dn = self.boundary(n);
        let dn1 = self.boundary(n + 1);
        let ambient = self.rank(n);
        let pres = match k {
            Coefficients::Integers => {
                let z = kernel(&dn);
                subquotient(&z, &dn1)?
            }
            Coefficients::Mod2 => {
                // {x : ∂x ∈ 2 C_{n-1}} / (im ∂ + 2 C_n)
                let two_below = IntMatrix::identity(self.rank(n - 1)).scale(&BigInt::from(2));
                let stacked = dn.hstack(&two_below);
                let kern = kernel(&stacked);
                let z = kern.select_rows(&(0..ambient).collect::<Vec<_>>());
                let two_here = IntMatrix::identity(ambient).scale(&BigInt::from(2));
                subquotient(&z, &dn1.hstack(&two_here))?
            }
            Coefficients::Rationals => {
                let z = kernel(&dn);
                // Saturate the image inside the kernel so torsion vanishes.
                let mut coords = Vec::new();
                for col in dn1.columns() {
                    let c =
                        solve(&z, &col).expect("image lies in the kernel of a valid complex");
                    coords.push(c);
                }
                let m = IntMatrix::from_columns(z.cols(), &coords);
                let snf = smith_normal_form(&m);
                let uinv = unimodular_inverse(&snf.u);
                let sat_cols: Vec<usize> = (0..snf.rank()).collect();
                let sat = z.mul(&uinv.select_cols(&sat_cols));
                subquotient(&z, &sat)?
            }
        };
        Ok(pres)
    }

    pub fn homology(&self, n: i64, k: Coefficients) -> Result<FPAbelianGroup, ComplexError> {
        Ok(self.homology_presentation(n, k)?.group().clone())
    }

    /// The dual cochain complex stored with negated degrees: the returned
    /// complex has `D_{-n} = C^n` with boundary `δ^n = (∂_{n+1})^T`, so
    /// `H^n(C) = H_{-n}(dual)`.
    pub fn cochain_dual(&self) -> ChainComplex {
        if self.ranks.is_empty() {
            return ChainComplex::empty();
        }
        let lo = -self.hi();
        let count = self.ranks.len();
        let mut ranks = Vec::with_capacity(count);
        let mut boundaries = Vec::with_capacity(count);
        for i in 0..count {
            // Degree m = lo + i of the dual holds C^{-m}.
            let n = -(lo + i as i64);
            ranks.push(self.rank(n));
            if i == 0 {
                boundaries.push(IntMatrix::zeros(0, self.rank(n)));
            } else {
                boundaries.push(self.boundary(n + 1).transpose());
            }
        }
        ChainComplex::new(lo, ranks, boundaries)
    }

    /// `H^n` over the chosen coefficients, via the dual complex.
    pub fn cohomology(&self, n: i64, k: Coefficients) -> Result<FPAbelianGroup, ComplexError> {
        self.cochain_dual().homology(-n, k)
    }

    pub fn cohomology_presentation(
        &self,
        n: i64,
        k: Coefficients,
    ) -> Result<Presentation, ComplexError> {
        self.cochain_dual().homology_presentation(-n, k)
    }

    /// Alternating sum of ranks; equals the alternating sum of Betti numbers.
    pub fn euler_characteristic(&self) -> Result<i64, ComplexError> {
        self.validate()?;
        let mut chi = 0i64;
        for n in self.lo..=self.hi() {
            let sign = if n.rem_euclid(2) == 0 { 1 } else { -1 };
            chi += sign * self.rank(n) as i64;
        }
        Ok(chi)
    }
}

/// A degree-wise map of chain complexes, checked against the boundaries at
/// construction.
#[derive(Debug, Clone)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    lo: i64,
    components: Vec<IntMatrix>,
}

impl ChainMap {
    pub fn new(
        source: ChainComplex,
        target: ChainComplex,
        lo: i64,
        components: Vec<IntMatrix>,
    ) -> Result<ChainMap, ComplexError> {
        let map = ChainMap {
            source,
            target,
            lo,
            components,
        };
        for n in map.source.lo()..=map.source.hi() {
            let lhs = map.target.boundary(n).mul(&map.component(n));
            let rhs = map.component(n - 1).mul(&map.source.boundary(n));
            if lhs != rhs {
                return Err(ComplexError::NotChainMap(n));
            }
        }
        Ok(map)
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    pub fn component(&self, n: i64) -> IntMatrix {
        let idx = n - self.lo;
        if idx < 0 || idx as usize >= self.components.len() {
            return IntMatrix::zeros(self.target.rank(n), self.source.rank(n));
        }
        self.components[idx as usize].clone()
    }

    /// The well-defined induced map `H_n(source) -> H_n(target)`.
    pub fn induced(&self, n: i64, k: Coefficients) -> Result<GroupHom, ComplexError> {
        let src = self.source.homology_presentation(n, k)?;
        let dst = self.target.homology_presentation(n, k)?;
        Ok(induced_hom(&self.component(n), &src, &dst)?)
    }
}

/// Degree of a map between two n-sphere models: the integer `d` with
/// `f_*(gen) = d * gen` on `H_n`, relative to the canonical generators of
/// the two models. Errors when either `H_n` is not infinite cyclic.
pub fn degree_of_map(f: &ChainMap, n: i64) -> Result<i64, ComplexError> {
    let z = FPAbelianGroup::free(1);
    let hom = f.induced(n, Coefficients::Integers)?;
    if hom.domain() != &z || hom.codomain() != &z {
        return Err(ComplexError::NotASphere(n));
    }
    let d = hom.matrix()[(0, 0)].clone();
    Ok(i64::try_from(&d).expect("sphere degrees fit in i64"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_complex_is_valid_and_trivial() {
        let c = ChainComplex::empty();
        assert!(c.validate().is_ok());
        assert!(c.homology(0, Coefficients::Integers).unwrap().is_trivial());
        assert!(c.homology(3, Coefficients::Mod2).unwrap().is_trivial());
        assert!(c.cochain_dual().validate().is_ok());
    }

    #[test]
    fn invalid_complex_reports_degree() {
        let c = ChainComplex::new(
            0,
            vec![1, 1, 1],
            vec![
                IntMatrix::zeros(0, 1),
                IntMatrix::from_rows_i64(&[vec![1]]),
                IntMatrix::from_rows_i64(&[vec![1]]),
            ],
        );
        assert_eq!(c.validate(), Err(ComplexError::InvalidComplex(2)));
        assert!(c.homology(1, Coefficients::Integers).is_err());
    }

    #[test]
    fn dual_of_a_sphere_complex() {
        use crate::simplicial::SimplicialComplex;
        let c = SimplicialComplex::sphere(2).chain_complex();
        assert_eq!(
            c.cohomology(0, Coefficients::Integers).unwrap(),
            FPAbelianGroup::free(1)
        );
        assert!(c.cohomology(1, Coefficients::Integers).unwrap().is_trivial());
        assert_eq!(
            c.cohomology(2, Coefficients::Integers).unwrap(),
            FPAbelianGroup::free(1)
        );
        assert!(c.cochain_dual().validate().is_ok());
    }

    #[test]
    fn point_complex() {
        let c = ChainComplex::new(0, vec![1], vec![IntMatrix::zeros(0, 1)]);
        assert_eq!(
            c.homology(0, Coefficients::Integers).unwrap(),
            FPAbelianGroup::free(1)
        );
        assert_eq!(c.euler_characteristic().unwrap(), 1);
        // Reduced homology of the point is trivial everywhere.
        let aug = c.augmented();
        assert!(aug.homology(0, Coefficients::Integers).unwrap().is_trivial());
    }
}
