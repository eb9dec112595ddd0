//! The matrix A = M⁻¹D²U in reduced coordinates, the product of its
//! nontrivial modified-Hessian eigenvalues, and the mass-free function F.

use nalgebra::Matrix4;
use serde::Serialize;

use crate::cc::lambda_hat;
use crate::domain::{inv_cube, mutual_distances_reduced, MassTriple, ReducedShape, GON};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HessianReport {
    pub a: [[f64; 4]; 4],
    pub lambda_hat: f64,
    pub product: f64,
    pub index_sign: i8,
}

pub fn build_a(shape: ReducedShape, masses: MassTriple) -> Matrix4<f64> {
    let (x, y) = (shape.xhat, shape.yhat);
    let (m1, m3, m) = (masses.m1, masses.m3, masses.m);
    let d = mutual_distances_reduced(shape);
    let s13 = inv_cube(d.r13);
    let s24 = inv_cube(d.r24);
    let p12 = inv_cube(d.r12) / (d.r12 * d.r12);
    let p23 = inv_cube(d.r23) / (d.r23 * d.r23);
    let alpha1 = 2.0 * x * x - 1.0;
    let alpha2 = 2.0 * y * y - 1.0;
    let lam = lambda_hat(shape, masses);

    let zeta1 = m * p12 * alpha1 + 2.0 * m3 * s13;
    let zeta2 = m * p23 * alpha2 + 2.0 * m1 * s13;
    let zeta3 = m1 * p12 * alpha1 + m3 * p23 * alpha2;
    let zeta4 = 3.0 * m1 * p12 + 3.0 * m3 * p23 + 3.0 * m * s24 - lam;
    let e = 3.0 * m1 * x * p12 - 3.0 * m3 * y * p23;

    Matrix4::new(
        zeta1,
        2.0 * m3 * s13,
        m * p12 * alpha1,
        3.0 * m * x * p12,
        2.0 * m1 * s13,
        zeta2,
        -m * p23 * alpha2,
        3.0 * m * y * p23,
        m1 * p12 * alpha1,
        -m3 * p23 * alpha2,
        zeta3,
        e,
        3.0 * m1 * x * p12,
        3.0 * m3 * y * p23,
        e,
        zeta4,
    )
}

/// ½[(tr A)² − tr(A²)] − λ̂ tr A + 3λ̂², the product of the two nontrivial
/// eigenvalues of A + λ̂I at a central configuration.
pub fn nontrivial_product(shape: ReducedShape, masses: MassTriple) -> f64 {
    let a = build_a(shape, masses);
    let lam = lambda_hat(shape, masses);
    let tr = a.trace();
    let tr2 = (a * a).trace();
    0.5 * (tr * tr - tr2) - lam * tr + 3.0 * lam * lam
}

/// F = F1 + F2 + F3 + F4, a positive multiple of the nontrivial product
/// on 𝒞 with the masses eliminated.
pub fn f_value(shape: ReducedShape) -> f64 {
    let (x, y) = (shape.xhat, shape.yhat);
    let d = mutual_distances_reduced(shape);
    let (r12, r13, r23) = (d.r12, d.r13, d.r23);
    let r12_2 = r12 * r12;
    let r23_2 = r23 * r23;
    let r12_3 = r12_2 * r12;
    let r23_3 = r23_2 * r23;
    let r13_3 = r13 * r13 * r13;
    let r12_5 = r12_3 * r12_2;
    let r23_5 = r23_3 * r23_2;
    let alpha1 = 2.0 * x * x - 1.0;
    let alpha2 = 2.0 * y * y - 1.0;
    let beta1 = 4.0 * x * x + 1.0;
    let beta2 = 4.0 * y * y + 1.0;

    let f1 = r13 * (r13_3 - r12_3) * (r13_3 - r23_3) * (r12_5 + 8.0 * alpha1) * (r23_5 + 8.0 * alpha2);
    let f2 = y
        * r23_2
        * (r13_3 - r23_3)
        * (8.0 - r23_3)
        * (r13_3 * (r12_5 + 6.0 * x * x * r12_3 - 8.0 * beta1) + 2.0 * r12_3 * (r12_5 + 8.0 * alpha1));
    let f3 = x
        * r12_2
        * (r13_3 - r12_3)
        * (8.0 - r12_3)
        * (r13_3 * (r23_5 + 6.0 * y * y * r23_3 - 8.0 * beta2) + 2.0 * r23_3 * (r23_5 + 8.0 * alpha2));
    let r13_7 = r13_3 * r13_3 * r13;
    let f4 = 9.0 * x * y * r13_7 * (8.0 - r12_3) * (8.0 - r23_3);
    f1 + f2 + f3 + f4
}

/// Sign of (r13³ − r12³)(r13³ − r23³), the only factor of
/// F / product = 64 r12⁵ r23⁵ r13 (r13³−r12³)(r13³−r23³) / m² that can be
/// negative. It is +1 on 𝒞 and 𝒞𝒱₁ and −1 on 𝒞𝒱₂, so there sign(F) = −index.
pub fn index_factor_sign(shape: ReducedShape) -> i8 {
    let d = mutual_distances_reduced(shape);
    let r13_3 = d.r13 * d.r13 * d.r13;
    let v = (r13_3 - d.r12 * d.r12 * d.r12) * (r13_3 - d.r23 * d.r23 * d.r23);
    if v > 0.0 {
        1
    } else if v < 0.0 {
        -1
    } else {
        0
    }
}

/// Default degeneracy tolerance 1e-9 λ̂².
pub fn default_index_tol(shape: ReducedShape, masses: MassTriple) -> f64 {
    let lam = lambda_hat(shape, masses);
    1e-9 * lam * lam
}

/// +1 / −1 from the sign of the nontrivial product, 0 within `tol`
/// (default 1e-9 λ̂²).
pub fn index_sign(shape: ReducedShape, masses: MassTriple, tol: Option<f64>) -> i8 {
    let tol = tol.unwrap_or_else(|| default_index_tol(shape, masses));
    let p = nontrivial_product(shape, masses);
    if p > tol {
        1
    } else if p < -tol {
        -1
    } else {
        0
    }
}

pub fn hessian_report(shape: ReducedShape, masses: MassTriple) -> HessianReport {
    let a = build_a(shape, masses);
    let mut rows = [[0.0; 4]; 4];
    for (i, row) in rows.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = a[(i, j)];
        }
    }
    HessianReport {
        a: rows,
        lambda_hat: lambda_hat(shape, masses),
        product: nontrivial_product(shape, masses),
        index_sign: index_sign(shape, masses, None),
    }
}

/// Masses of the 1+3-gon with central mass m3 = 1 − 3m/2 and m1 = m/2.
/// Not validated, so the endpoints m = 0 and m = 1 are usable for fitting.
pub fn gon_masses(m: f64) -> MassTriple {
    MassTriple {
        m1: m / 2.0,
        m3: 1.0 - 1.5 * m,
        m,
    }
}

/// Coefficients (c2, c1, c0) of the nontrivial product at the 1+3-gon as a
/// quadratic in m, fitted through m = 0, 1/2, 1.
pub fn gon_product_quadratic() -> [f64; 3] {
    let p0 = nontrivial_product(GON, gon_masses(0.0));
    let ph = nontrivial_product(GON, gon_masses(0.5));
    let p1 = nontrivial_product(GON, gon_masses(1.0));
    let c0 = p0;
    let c2 = 2.0 * (p1 - 2.0 * ph + p0);
    let c1 = p1 - p0 - c2;
    [c2, c1, c0]
}

/// The central-mass parameter in (0, 1) at which the 1+3-gon is degenerate.
pub fn degenerate_gon_mass() -> f64 {
    let [c2, c1, c0] = gon_product_quadratic();
    let disc = (c1 * c1 - 4.0 * c2 * c0).max(0.0).sqrt();
    let q = -0.5 * (c1 + disc.copysign(c1));
    let roots = [q / c2, if q != 0.0 { c0 / q } else { 0.0 }];
    roots
        .into_iter()
        .filter(|r| *r > 0.0 && *r < 1.0)
        .fold(f64::NAN, |acc, r| if acc.is_nan() || r > acc { r } else { acc })
}
