//! Lift squares of quotient involutions on surfaces: the square of the
//! lifted differential is an explicit Clifford expression, evaluated
//! symbolically at sampled angles, angle-independent, and equal to +1 or -1
//! depending on which of the two sign choices of the algebra is used.

use super::{CliffordElement, Signature};

/// Which double cover of the orthogonal group: the sign is the common
/// square of the generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PinSign {
    Plus,
    Minus,
}

/// The catalog of lift-square computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiftCase {
    /// Antipodal involution on the sphere: -sin^2 e1^2 - cos^2 e2^2.
    SphereAntipodal,
    /// Torus over the Klein bottle, untwisted structure: e2^2.
    TorusKleinXi0,
    /// First twisted structure: -e2^2.
    TorusKleinXi1,
    /// Second twisted structure: e2^2.
    TorusKleinXi2,
    /// Third twisted structure: -e2^2.
    TorusKleinXi3,
    /// Torus over the Moebius double, untwisted: e1^2.
    MoebiusTau4Xi0,
    /// Twisted by the reflected coordinate: e1^2.
    MoebiusTau4Xi1,
    /// Twisted by the straight coordinate: -e1^2.
    MoebiusTau4Xi2,
}

pub const ALL_LIFT_CASES: [LiftCase; 8] = [
    LiftCase::SphereAntipodal,
    LiftCase::TorusKleinXi0,
    LiftCase::TorusKleinXi1,
    LiftCase::TorusKleinXi2,
    LiftCase::TorusKleinXi3,
    LiftCase::MoebiusTau4Xi0,
    LiftCase::MoebiusTau4Xi1,
    LiftCase::MoebiusTau4Xi2,
];

struct Algebra {
    sig: Signature,
}

impl Algebra {
    fn new(pin: PinSign) -> Algebra {
        let sig = match pin {
            PinSign::Plus => Signature::positive(2),
            PinSign::Minus => Signature::negative(2),
        };
        Algebra { sig }
    }

    fn e(&self, i: usize) -> CliffordElement<f64> {
        CliffordElement::generator(&self.sig, i)
    }

    /// Lift of the rotation by t: cos(t/2) + sin(t/2) e1 e2.
    fn rot(&self, t: f64) -> CliffordElement<f64> {
        let mut out = CliffordElement::scalar(&self.sig, (t / 2.0).cos());
        out.add_term(0b11, (t / 2.0).sin());
        out
    }

    fn mul(&self, parts: &[CliffordElement<f64>]) -> CliffordElement<f64> {
        let mut acc = CliffordElement::one(&self.sig);
        for p in parts {
            acc = acc.product(p).expect("one algebra");
        }
        acc
    }
}

/// The lift-square expression at a sampled pair of angles. The torus and
/// Moebius cases depend on one of the two coordinates only; the sphere case
/// uses the polar angle.
fn square_at(case: LiftCase, alg: &Algebra, theta: f64, phi: f64) -> CliffordElement<f64> {
    let e1 = alg.e(0);
    let e2 = alg.e(1);
    match case {
        LiftCase::SphereAntipodal => {
            // Lift factor at angle t: -sin t e1 + cos t e2 along the equator.
            let u = |t: f64| {
                CliffordElement::vector(&alg.sig, &[-t.sin(), t.cos()])
            };
            alg.mul(&[u(theta + std::f64::consts::PI), u(theta)])
        }
        LiftCase::TorusKleinXi0 => alg.mul(&[e2.clone(), e2]),
        LiftCase::TorusKleinXi1 => {
            let pi = std::f64::consts::PI;
            let f = |t: f64| alg.mul(&[alg.rot(-t - pi), e2.clone(), alg.rot(t)]);
            alg.mul(&[f(theta + pi), f(theta)])
        }
        LiftCase::TorusKleinXi2 => {
            let f = |p: f64| alg.mul(&[alg.rot(p), e2.clone(), alg.rot(p)]);
            alg.mul(&[f(-phi), f(phi)])
        }
        LiftCase::TorusKleinXi3 => {
            let pi = std::f64::consts::PI;
            let f = |t: f64, p: f64| {
                alg.mul(&[alg.rot(-t - pi + p), e2.clone(), alg.rot(t + p)])
            };
            alg.mul(&[f(theta + pi, -phi), f(theta, phi)])
        }
        LiftCase::MoebiusTau4Xi0 => alg.mul(&[e1.clone(), e1]),
        LiftCase::MoebiusTau4Xi1 => {
            let pi = std::f64::consts::PI;
            let f = |t: f64| alg.mul(&[alg.rot(t - pi), e1.clone(), alg.rot(t)]);
            alg.mul(&[f(-theta + pi), f(theta)])
        }
        LiftCase::MoebiusTau4Xi2 => {
            let pi = std::f64::consts::PI;
            let f = |p: f64| alg.mul(&[alg.rot(-p - pi), e1.clone(), alg.rot(p)]);
            alg.mul(&[f(phi + pi), f(phi)])
        }
    }
}

const ANGLE_SAMPLES: usize = 32;
const ANGLE_TOLERANCE: f64 = 1e-12;

/// Evaluate the lift-square of the case at 32 sampled angles in the chosen
/// algebra, assert the result is an angle-independent scalar, and return
/// its sign.
pub fn dtau_square(case: LiftCase, pin: PinSign) -> i8 {
    let alg = Algebra::new(pin);
    let mut value: Option<f64> = None;
    for k in 0..ANGLE_SAMPLES {
        let theta = 0.19741 * k as f64 - 2.9;
        let phi = -0.3347 * k as f64 + 1.1;
        let sq = square_at(case, &alg, theta, phi);
        // Must be a pure scalar up to numerical dust.
        let mut scalar = 0.0;
        for (blade, c) in sq.terms() {
            if blade == 0 {
                scalar = *c;
            } else {
                assert!(
                    c.abs() < ANGLE_TOLERANCE,
                    "{case:?}: non-scalar component {c} on blade {blade:#b}"
                );
            }
        }
        match value {
            None => value = Some(scalar),
            Some(prev) => assert!(
                (prev - scalar).abs() < ANGLE_TOLERANCE,
                "{case:?}: angle dependence {prev} vs {scalar}"
            ),
        }
    }
    let v = value.expect("samples evaluated");
    assert!(
        (v - 1.0).abs() < ANGLE_TOLERANCE || (v + 1.0).abs() < ANGLE_TOLERANCE,
        "{case:?}: square is {v}, not +-1"
    );
    if v > 0.0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_square_is_plus_one_only_for_pin_minus() {
        assert_eq!(dtau_square(LiftCase::SphereAntipodal, PinSign::Minus), 1);
        assert_eq!(dtau_square(LiftCase::SphereAntipodal, PinSign::Plus), -1);
    }

    #[test]
    fn torus_klein_table() {
        for (case, plus_value) in [
            (LiftCase::TorusKleinXi0, 1),
            (LiftCase::TorusKleinXi1, -1),
            (LiftCase::TorusKleinXi2, 1),
            (LiftCase::TorusKleinXi3, -1),
        ] {
            assert_eq!(dtau_square(case, PinSign::Plus), plus_value, "{case:?}");
            assert_eq!(dtau_square(case, PinSign::Minus), -plus_value, "{case:?}");
        }
    }

    #[test]
    fn moebius_table() {
        // xi0 and xi1 give e1^2, xi2 gives -e1^2.
        for (case, plus_value) in [
            (LiftCase::MoebiusTau4Xi0, 1),
            (LiftCase::MoebiusTau4Xi1, 1),
            (LiftCase::MoebiusTau4Xi2, -1),
        ] {
            assert_eq!(dtau_square(case, PinSign::Plus), plus_value, "{case:?}");
            assert_eq!(dtau_square(case, PinSign::Minus), -plus_value, "{case:?}");
        }
    }
}
