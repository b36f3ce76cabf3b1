//! Clifford algebras over diagonal signatures (e_i^2 = +-1 per generator),
//! with exact rational or floating scalars: blade products, grade
//! involutions, chirality, the so(p,q) embedding, Pin elements with the
//! twisted adjoint covering map, small-dimension matrix representations,
//! two-dimensional spin tables, and the pin-structure lift-square catalog.

pub mod lift;
pub mod pin;
pub mod reps;
pub mod tables;

pub use lift::{dtau_square, LiftCase, PinSign};
pub use pin::{covering_matrix, random_unit_vector, PinElement};
pub use reps::{small_rep, MatrixRep, RepReport, SmallRepCase};
pub use tables::{spin2_tables, SpinTableKind, SpinTableReport};

use num_bigint::BigInt;
use num_rational::BigRational;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliffordError {
    #[error("signatures do not match")]
    SignatureMismatch,
    #[error("chirality requires an even number of generators")]
    OddDimension,
    #[error("factor {0} is not a unit vector")]
    NotInPin(usize),
    #[error("generator indices must satisfy i < j")]
    IndexOrder,
}

/// Diagonal signature: `diag[i]` is the square of the i-th generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    diag: Vec<i8>,
}

impl Signature {
    pub fn new(diag: Vec<i8>) -> Signature {
        assert!(diag.iter().all(|&d| d == 1 || d == -1));
        Signature { diag }
    }

    /// All generators squaring to -1 (the euclidean-negative convention).
    pub fn negative(n: usize) -> Signature {
        Signature::new(vec![-1; n])
    }

    /// All generators squaring to +1.
    pub fn positive(n: usize) -> Signature {
        Signature::new(vec![1; n])
    }

    /// p generators squaring to +1 followed by q squaring to -1.
    pub fn pq(p: usize, q: usize) -> Signature {
        let mut d = vec![1i8; p];
        d.extend(std::iter::repeat_n(-1i8, q));
        Signature::new(d)
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn square(&self, i: usize) -> i8 {
        self.diag[i]
    }

    pub fn positives(&self) -> usize {
        self.diag.iter().filter(|&&d| d == 1).count()
    }

    /// The symmetric form eta(v, w) with eta(e_i, e_i) the i-th diagonal sign.
    pub fn eta<S: Scalar>(&self, v: &[S], w: &[S]) -> S {
        let mut acc = S::zero();
        for i in 0..self.dim() {
            let term = v[i].mul(&w[i]);
            let signed = if self.diag[i] == 1 { term } else { term.neg() };
            acc = acc.add(&signed);
        }
        acc
    }
}

/// Scalar coefficients for Clifford elements.
pub trait Scalar: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(x: i64) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn is_zero(&self) -> bool;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(x: i64) -> Self {
        x as f64
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
}

impl Scalar for BigRational {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn from_i64(x: i64) -> Self {
        BigRational::from_integer(BigInt::from(x))
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
}

/// Exact complex rationals, for chirality and the complex representations.
pub type CRational = num_complex::Complex<BigRational>;

impl Scalar for CRational {
    fn zero() -> Self {
        CRational::new(Scalar::zero(), Scalar::zero())
    }
    fn one() -> Self {
        CRational::new(<BigRational as Scalar>::one(), Scalar::zero())
    }
    fn from_i64(x: i64) -> Self {
        CRational::new(<BigRational as Scalar>::from_i64(x), Scalar::zero())
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(&self.re) && Scalar::is_zero(&self.im)
    }
}

pub fn crational_i() -> CRational {
    CRational::new(Scalar::zero(), <BigRational as Scalar>::one())
}

/// A sparse Clifford-algebra element: blade bitmask -> coefficient.
#[derive(Clone, PartialEq)]
pub struct CliffordElement<S: Scalar> {
    signature: Signature,
    coeffs: BTreeMap<u32, S>,
}

impl<S: Scalar> fmt::Debug for CliffordElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .map(|(blade, c)| {
                let mut name = String::new();
                for i in 0..self.signature.dim() {
                    if blade & (1 << i) != 0 {
                        name.push_str(&format!("e{}", i + 1));
                    }
                }
                if name.is_empty() {
                    format!("{c:?}")
                } else {
                    format!("{c:?} {name}")
                }
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl<S: Scalar> CliffordElement<S> {
    pub fn zero(signature: &Signature) -> Self {
        CliffordElement {
            signature: signature.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn scalar(signature: &Signature, value: S) -> Self {
        let mut out = Self::zero(signature);
        out.add_term(0, value);
        out
    }

    pub fn one(signature: &Signature) -> Self {
        Self::scalar(signature, S::one())
    }

    pub fn generator(signature: &Signature, i: usize) -> Self {
        assert!(i < signature.dim());
        let mut out = Self::zero(signature);
        out.add_term(1 << i, S::one());
        out
    }

    pub fn vector(signature: &Signature, coords: &[S]) -> Self {
        assert_eq!(coords.len(), signature.dim());
        let mut out = Self::zero(signature);
        for (i, c) in coords.iter().enumerate() {
            out.add_term(1 << i, c.clone());
        }
        out
    }

    /// Blade e_{i1} ... e_{ik} for ascending indices encoded as a bitmask.
    pub fn blade(signature: &Signature, mask: u32, coeff: S) -> Self {
        let mut out = Self::zero(signature);
        out.add_term(mask, coeff);
        out
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn add_term(&mut self, blade: u32, value: S) {
        if value.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(blade).or_insert_with(S::zero);
        *entry = entry.add(&value);
        if entry.is_zero() {
            self.coeffs.remove(&blade);
        }
    }

    pub fn coefficient(&self, blade: u32) -> S {
        self.coeffs.get(&blade).cloned().unwrap_or_else(S::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &S)> {
        self.coeffs.iter().map(|(&b, c)| (b, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True when the element is `value * 1`.
    pub fn is_scalar(&self) -> bool {
        self.coeffs.keys().all(|&b| b == 0)
    }

    pub fn add(&self, other: &Self) -> Result<Self, CliffordError> {
        if self.signature != other.signature {
            return Err(CliffordError::SignatureMismatch);
        }
        let mut out = self.clone();
        for (b, c) in other.terms() {
            out.add_term(b, c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(&self.signature);
        for (b, c) in self.terms() {
            out.add_term(b, c.neg());
        }
        out
    }

    pub fn scale(&self, k: &S) -> Self {
        let mut out = Self::zero(&self.signature);
        for (b, c) in self.terms() {
            out.add_term(b, c.mul(k));
        }
        out
    }

    /// The Clifford product: bilinear, associative, e_i e_j = -e_j e_i for
    /// i != j and e_i^2 = diag_i.
    pub fn product(&self, other: &Self) -> Result<Self, CliffordError> {
        if self.signature != other.signature {
            return Err(CliffordError::SignatureMismatch);
        }
        let mut out = Self::zero(&self.signature);
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                let (blade, sign) = blade_product(a, b, &self.signature);
                let mut c = ca.mul(cb);
                if sign < 0 {
                    c = c.neg();
                }
                out.add_term(blade, c);
            }
        }
        Ok(out)
    }

    /// Grade involutions: reversal flips blade order (sign
    /// (-1)^{k(k-1)/2} in grade k); parity negates odd grades.
    pub fn involution(&self, kind: Involution) -> Self {
        let mut out = Self::zero(&self.signature);
        for (b, c) in self.terms() {
            let k = b.count_ones() as i64;
            let flip = match kind {
                Involution::Reversal => (k * (k - 1) / 2) % 2 == 1,
                Involution::Parity => k % 2 == 1,
            };
            out.add_term(b, if flip { c.neg() } else { c.clone() });
        }
        out
    }

    /// Even part (the +1 eigenspace of parity).
    pub fn even_part(&self) -> Self {
        let mut out = Self::zero(&self.signature);
        for (b, c) in self.terms() {
            if b.count_ones() % 2 == 0 {
                out.add_term(b, c.clone());
            }
        }
        out
    }

    pub fn odd_part(&self) -> Self {
        let mut out = Self::zero(&self.signature);
        for (b, c) in self.terms() {
            if b.count_ones() % 2 == 1 {
                out.add_term(b, c.clone());
            }
        }
        out
    }

    /// Grade-1 coordinates, if the element is a pure vector.
    pub fn vector_part(&self) -> Option<Vec<S>> {
        if self.coeffs.keys().any(|b| b.count_ones() != 1) {
            return None;
        }
        Some(
            (0..self.signature.dim())
                .map(|i| self.coefficient(1 << i))
                .collect(),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Involution {
    Reversal,
    Parity,
}

/// Product of basis blades: iterate the ascending generators of `b`,
/// anticommuting each past the higher generators of the accumulated blade
/// and contracting equal indices by the signature square.
fn blade_product(a: u32, b: u32, signature: &Signature) -> (u32, i8) {
    let mut acc = a;
    let mut sign = 1i8;
    for i in 0..signature.dim() as u32 {
        if b & (1 << i) == 0 {
            continue;
        }
        let higher = (acc >> (i + 1)).count_ones();
        if higher % 2 == 1 {
            sign = -sign;
        }
        if acc & (1 << i) != 0 {
            sign *= signature.square(i as usize);
            acc &= !(1 << i);
        } else {
            acc |= 1 << i;
        }
    }
    (acc, sign)
}

/// The chirality element i^{k+p} e_1 ... e_{2k} of an even-dimensional
/// signature with p positive squares: squares to 1 and anticommutes with
/// every generator.
pub fn chirality(signature: &Signature) -> Result<CliffordElement<CRational>, CliffordError> {
    let n = signature.dim();
    if !n.is_multiple_of(2) {
        return Err(CliffordError::OddDimension);
    }
    let k = n / 2;
    let p = signature.positives();
    let mut coeff = <CRational as Scalar>::one();
    for _ in 0..(k + p) % 4 {
        coeff = coeff.mul(&crational_i());
    }
    let mask = if n == 0 { 0 } else { (1u32 << n) - 1 };
    Ok(CliffordElement::blade(signature, mask, coeff))
}

/// The so(p,q) embedding: the generator for the index pair (i, j) is
/// (1/2) e_i e_j, for i < j.
pub fn so_generator(
    signature: &Signature,
    i: usize,
    j: usize,
) -> Result<CliffordElement<BigRational>, CliffordError> {
    if i >= j || j >= signature.dim() {
        return Err(CliffordError::IndexOrder);
    }
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    Ok(CliffordElement::blade(
        signature,
        (1 << i) | (1 << j),
        half,
    ))
}

/// Commutator ab - ba.
pub fn commutator<S: Scalar>(
    a: &CliffordElement<S>,
    b: &CliffordElement<S>,
) -> Result<CliffordElement<S>, CliffordError> {
    a.product(b)?.add(&b.product(a)?.neg())
}
