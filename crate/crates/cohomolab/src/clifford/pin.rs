//! Pin elements as explicit products of unit vectors, and the twisted
//! adjoint covering map onto the eta-orthogonal group.

use super::{CliffordElement, CliffordError, Signature};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A Pin-group element: an ordered product of eta-unit vectors with a
/// global sign; the underlying algebra element is the ordered product.
#[derive(Debug, Clone, PartialEq)]
pub struct PinElement {
    signature: Signature,
    factors: Vec<Vec<BigRational>>,
    negative: bool,
}

impl PinElement {
    pub fn new(
        signature: Signature,
        factors: Vec<Vec<BigRational>>,
        negative: bool,
    ) -> Result<PinElement, CliffordError> {
        for (k, v) in factors.iter().enumerate() {
            if v.len() != signature.dim() {
                return Err(CliffordError::NotInPin(k));
            }
            let norm = signature.eta(v, v);
            if !(norm.clone() - BigRational::one()).is_zero()
                && !(norm + BigRational::one()).is_zero()
            {
                return Err(CliffordError::NotInPin(k));
            }
        }
        Ok(PinElement {
            signature,
            factors,
            negative,
        })
    }

    pub fn identity(signature: Signature) -> PinElement {
        PinElement {
            signature,
            factors: vec![],
            negative: false,
        }
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn factor_count(&self) -> usize {
        self.factors.len()
    }

    pub fn negated(&self) -> PinElement {
        PinElement {
            signature: self.signature.clone(),
            factors: self.factors.clone(),
            negative: !self.negative,
        }
    }

    pub fn times(&self, other: &PinElement) -> Result<PinElement, CliffordError> {
        if self.signature != other.signature {
            return Err(CliffordError::SignatureMismatch);
        }
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        Ok(PinElement {
            signature: self.signature.clone(),
            factors,
            negative: self.negative ^ other.negative,
        })
    }

    /// The ordered product in the algebra.
    pub fn element(&self) -> CliffordElement<BigRational> {
        let mut acc = CliffordElement::one(&self.signature);
        for f in &self.factors {
            let v = CliffordElement::vector(&self.signature, f);
            acc = acc.product(&v).expect("matching signatures");
        }
        if self.negative {
            acc.neg()
        } else {
            acc
        }
    }
}

/// Twisted adjoint of a single vector: w -> -v w v^{-1}, the reflection in
/// the hyperplane orthogonal to v.
fn reflect(
    signature: &Signature,
    v: &[BigRational],
    w: &CliffordElement<BigRational>,
) -> CliffordElement<BigRational> {
    let ev = CliffordElement::vector(signature, v);
    let norm = signature.eta(v, v);
    let inv_scale = BigRational::one() / norm;
    let ev_inv = ev.scale(&inv_scale);
    ev.product(w)
        .and_then(|x| x.product(&ev_inv))
        .expect("matching signatures")
        .neg()
}

/// The covering map: the matrix of the twisted adjoint action on the basis
/// vectors. It preserves eta exactly, has determinant (-1)^{#factors}, and
/// kills the global sign.
pub fn covering_matrix(x: &PinElement) -> Result<Vec<Vec<BigRational>>, CliffordError> {
    let sig = x.signature();
    let n = sig.dim();
    for (k, v) in x.factors.iter().enumerate() {
        let norm = sig.eta(v, v);
        if !(norm.clone() - BigRational::one()).is_zero()
            && !(norm + BigRational::one()).is_zero()
        {
            return Err(CliffordError::NotInPin(k));
        }
    }
    let mut columns = Vec::with_capacity(n);
    for j in 0..n {
        let mut w = CliffordElement::generator(sig, j);
        for v in x.factors.iter().rev() {
            w = reflect(sig, v, &w);
        }
        let coords = w.vector_part().expect("twisted adjoint preserves vectors");
        columns.push(coords);
    }
    let mut matrix = vec![vec![BigRational::zero(); n]; n];
    for j in 0..n {
        for i in 0..n {
            matrix[i][j] = columns[j][i].clone();
        }
    }
    Ok(matrix)
}

pub fn matrix_mul(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = a.len();
    let mut out = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    out
}

/// Determinant of a small rational matrix (Laplace expansion).
pub fn matrix_det(a: &[Vec<BigRational>]) -> BigRational {
    let n = a.len();
    if n == 0 {
        return BigRational::one();
    }
    if n == 1 {
        return a[0][0].clone();
    }
    let mut det = BigRational::zero();
    for j in 0..n {
        if a[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigRational>> = a[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = &a[0][j] * matrix_det(&minor);
        det += if j % 2 == 0 { term } else { -term };
    }
    det
}

/// Whether M^T diag M = diag exactly.
pub fn preserves_eta(signature: &Signature, m: &[Vec<BigRational>]) -> bool {
    let n = signature.dim();
    for i in 0..n {
        for j in 0..n {
            let mut acc = BigRational::zero();
            for (k, row) in m.iter().enumerate() {
                let d = BigRational::from_integer(BigInt::from(signature.square(k)));
                acc += &row[i] * d * &row[j];
            }
            let expected = if i == j {
                BigRational::from_integer(BigInt::from(signature.square(i)))
            } else {
                BigRational::zero()
            };
            if acc != expected {
                return false;
            }
        }
    }
    true
}

/// Random rational unit vector of either eta-norm: rational points on the
/// definite spheres via stereographic parametrization, mixed across the
/// signature blocks by a rational hyperbolic pair.
pub fn random_unit_vector<R: rand::Rng>(signature: &Signature, rng: &mut R) -> Vec<BigRational> {
    let q = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
    let rational_sphere_point = |dim: usize, rng: &mut R| -> Vec<BigRational> {
        // Stereographic: x = (2t, 1 - |t|^2) / (1 + |t|^2).
        if dim == 0 {
            return vec![];
        }
        let t: Vec<BigRational> = (0..dim - 1)
            .map(|_| q(rng.gen_range(-3..=3), rng.gen_range(1..=3)))
            .collect();
        let norm2: BigRational = t.iter().map(|x| x * x).fold(BigRational::zero(), |a, b| a + b);
        let denom = BigRational::one() + &norm2;
        let mut v: Vec<BigRational> = t.iter().map(|x| q(2, 1) * x / &denom).collect();
        v.push((BigRational::one() - &norm2) / &denom);
        v
    };
    let pos: Vec<usize> = (0..signature.dim()).filter(|&i| signature.square(i) == 1).collect();
    let neg: Vec<usize> = (0..signature.dim()).filter(|&i| signature.square(i) == -1).collect();
    let want_positive_norm = if pos.is_empty() {
        false
    } else if neg.is_empty() {
        true
    } else {
        rng.gen_bool(0.5)
    };
    // r^2 - s^2 = 1 rationally: r = (1+t^2)/(1-t^2), s = 2t/(1-t^2).
    let (r, s) = if pos.is_empty() || neg.is_empty() {
        (BigRational::one(), BigRational::zero())
    } else {
        let t = q(rng.gen_range(-2..=2), rng.gen_range(3..=5));
        let d = BigRational::one() - &t * &t;
        ((BigRational::one() + &t * &t) / &d, q(2, 1) * &t / &d)
    };
    let u = rational_sphere_point(pos.len(), rng);
    let w = rational_sphere_point(neg.len(), rng);
    let mut v = vec![BigRational::zero(); signature.dim()];
    // eta = (pos scale)^2 - (neg scale)^2.
    let (pos_scale, neg_scale) = if want_positive_norm {
        (r, s)
    } else {
        (s, r)
    };
    for (k, &i) in pos.iter().enumerate() {
        v[i] = &pos_scale * &u[k];
    }
    for (k, &i) in neg.iter().enumerate() {
        v[i] = &neg_scale * &w[k];
    }
    let norm = signature.eta(&v, &v);
    debug_assert!(
        (norm.clone() - BigRational::one()).is_zero() || (norm + BigRational::one()).is_zero()
    );
    v
}

/// Random Pin element with up to `max_factors` unit-vector factors.
pub fn random_pin_element<R: rand::Rng>(
    signature: &Signature,
    max_factors: usize,
    rng: &mut R,
) -> PinElement {
    let count = rng.gen_range(0..=max_factors);
    let factors = (0..count)
        .map(|_| random_unit_vector(signature, rng))
        .collect();
    PinElement::new(signature.clone(), factors, rng.gen_bool(0.5)).expect("unit factors")
}
