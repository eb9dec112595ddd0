//! Central-configuration equations in reduced coordinates and the mass map.

use serde::Serialize;

use crate::domain::{
    inv_cube, mutual_distances_reduced, MassTriple, MutualDistances, ReducedShape, GON, SQRT3,
};
use crate::error::{KiteError, MassComponent, Result};

/// Residuals of the two reduced cc equations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CCResidual {
    pub g1: f64,
    pub g2: f64,
}

impl CCResidual {
    pub fn max_abs(&self) -> f64 {
        self.g1.abs().max(self.g2.abs())
    }
}

/// λ̂ = m1 s12 + m3 s23 + m s24 at d = 1.
pub fn lambda_hat(shape: ReducedShape, masses: MassTriple) -> f64 {
    let s = mutual_distances_reduced(shape).inverse_cubes();
    masses.m1 * s.s12 + masses.m3 * s.s23 + masses.m * s.s24
}

pub fn cc_residual(shape: ReducedShape, masses: MassTriple) -> CCResidual {
    let (x, y) = (shape.xhat, shape.yhat);
    let s = mutual_distances_reduced(shape).inverse_cubes();
    let lam = masses.m1 * s.s12 + masses.m3 * s.s23 + masses.m * s.s24;
    CCResidual {
        g1: masses.m * x * (s.s12 - lam) - masses.m3 * (x + y) * (lam - s.s13),
        g2: masses.m * y * (s.s23 - lam) - masses.m1 * (x + y) * (lam - s.s13),
    }
}

/// Size of the largest term in the cc equations, for relative residual checks.
pub fn cc_residual_scale(shape: ReducedShape, masses: MassTriple) -> f64 {
    let (x, y) = (shape.xhat, shape.yhat);
    let s = mutual_distances_reduced(shape).inverse_cubes();
    let lam = masses.m1 * s.s12 + masses.m3 * s.s23 + masses.m * s.s24;
    let r13 = x + y;
    [
        masses.m * x.abs() * s.s12,
        masses.m * x.abs() * lam,
        masses.m * y.abs() * s.s23,
        masses.m * y.abs() * lam,
        masses.m3.max(masses.m1) * r13 * lam,
        masses.m3.max(masses.m1) * r13 * s.s13,
    ]
    .into_iter()
    .fold(0.0, f64::max)
}

/// (λ̂−s12)(λ̂−s23) − (λ̂−s13)(λ̂−s24).
pub fn dziobek_residual(shape: ReducedShape, masses: MassTriple) -> f64 {
    let s = mutual_distances_reduced(shape).inverse_cubes();
    let lam = masses.m1 * s.s12 + masses.m3 * s.s23 + masses.m * s.s24;
    (lam - s.s12) * (lam - s.s23) - (lam - s.s13) * (lam - s.s24)
}

/// λ from the distances alone, (s12 s23 − s13 s24)/(s12 + s23 − s13 − s24).
pub fn lambda_from_distances(d: &MutualDistances) -> Result<f64> {
    let s = d.inverse_cubes();
    let denominator = s.s12 + s.s23 - s.s13 - s.s24;
    if denominator.abs() < 1e-14 {
        return Err(KiteError::DegenerateDistances { denominator });
    }
    Ok((s.s12 * s.s23 - s.s13 * s.s24) / denominator)
}

/// The unique normalized masses making `shape` central.
pub fn mass_map(shape: ReducedShape) -> Result<MassTriple> {
    if shape.distance(&GON) < 1e-10 {
        return Err(KiteError::UndefinedAtGon);
    }
    let (x, y) = (shape.xhat, shape.yhat);
    if !(x.is_finite() && y.is_finite()) || x + y <= 0.0 {
        return Err(KiteError::InvalidShape(format!(
            "xhat + yhat = {} must be positive",
            x + y
        )));
    }
    let s = mutual_distances_reduced(shape).inverse_cubes();
    let r13 = x + y;
    // m1/m = p1/q1 and m3/m = p3/q3, combined over a common denominator
    let p1 = y * (s.s23 - s.s24);
    let q1 = r13 * (s.s12 - s.s13);
    let p3 = x * (s.s12 - s.s24);
    let q3 = r13 * (s.s23 - s.s13);
    let den = q1 * q3 + p1 * q3 + p3 * q1;
    let m1 = p1 * q3 / den;
    let m3 = p3 * q1 / den;
    let m = q1 * q3 / den;
    for (component, value) in [
        (MassComponent::M1, m1),
        (MassComponent::M3, m3),
        (MassComponent::M, m),
    ] {
        if !(value > 0.0) {
            return Err(KiteError::NonPositiveMass { component, value });
        }
    }
    Ok(MassTriple { m1, m3, m })
}

/// Central-difference Jacobian of (m1, m3) with respect to (x̂, ŷ).
pub fn mass_map_jacobian(shape: ReducedShape, h: f64) -> Result<[[f64; 2]; 2]> {
    let at = |dx: f64, dy: f64| {
        mass_map(ReducedShape {
            xhat: shape.xhat + dx,
            yhat: shape.yhat + dy,
        })
    };
    let xp = at(h, 0.0)?;
    let xm = at(-h, 0.0)?;
    let yp = at(0.0, h)?;
    let ym = at(0.0, -h)?;
    let inv = 0.5 / h;
    Ok([
        [(xp.m1 - xm.m1) * inv, (yp.m1 - ym.m1) * inv],
        [(xp.m3 - xm.m3) * inv, (yp.m3 - ym.m3) * inv],
    ])
}

/// Richardson-extrapolated central differences, (4 D(h/2) − D(h)) / 3,
/// accurate to O(h⁴); resolves the rank drop on the degeneracy curve.
pub fn mass_map_jacobian_extrapolated(shape: ReducedShape, h: f64) -> Result<[[f64; 2]; 2]> {
    let coarse = mass_map_jacobian(shape, h)?;
    let fine = mass_map_jacobian(shape, 0.5 * h)?;
    let mut j = [[0.0; 2]; 2];
    for r in 0..2 {
        for c in 0..2 {
            j[r][c] = (4.0 * fine[r][c] - coarse[r][c]) / 3.0;
        }
    }
    Ok(j)
}

/// 2-norm condition number of a 2×2 matrix.
pub fn cond2(j: [[f64; 2]; 2]) -> f64 {
    let b11 = j[0][0] * j[0][0] + j[1][0] * j[1][0];
    let b22 = j[0][1] * j[0][1] + j[1][1] * j[1][1];
    let b12 = j[0][0] * j[0][1] + j[1][0] * j[1][1];
    let det = (j[0][0] * j[1][1] - j[0][1] * j[1][0]).abs();
    let smax = (0.5 * (b11 + b22) + ((0.5 * (b11 - b22)).powi(2) + b12 * b12).sqrt()).sqrt();
    if det == 0.0 {
        return f64::INFINITY;
    }
    // σmin = |det| / σmax avoids cancellation in the small eigenvalue of JᵀJ
    smax * smax / det
}

/// Limit of the mass map at the 1+3-gon along a line of slope `k < −2/3`.
pub fn limit_masses_13gon(k: f64) -> Result<MassTriple> {
    if !(k < -2.0 / 3.0) || !k.is_finite() {
        return Err(KiteError::InvalidSlope(k));
    }
    let den = 18.0 - SQRT3 + 27.0 * k;
    let m1 = (6.0 + 9.0 * k) / den;
    let m3 = -SQRT3 / den;
    Ok(MassTriple {
        m1,
        m3,
        m: 1.0 - m1 - m3,
    })
}

/// Gradient of U with respect to z = (a, b, c, d), written in (x, y, d).
pub fn gradient_u_xyd(x: f64, y: f64, d: f64, masses: MassTriple) -> Result<[f64; 4]> {
    let r12 = x.hypot(d);
    let r23 = y.hypot(d);
    let r13 = x + y;
    let r24 = 2.0 * d;
    let rmin = r12.min(r23).min(r13).min(r24);
    if !(rmin >= 1e-13) {
        return Err(KiteError::Collision(rmin));
    }
    let (m1, m3, m) = (masses.m1, masses.m3, masses.m);
    let (s12, s13, s23, s24) = (inv_cube(r12), inv_cube(r13), inv_cube(r23), inv_cube(r24));
    Ok([
        -m * m1 * s12 * x - m1 * m3 * s13 * r13,
        -m * m3 * s23 * y - m1 * m3 * s13 * r13,
        -m * m1 * s12 * x + m * m3 * s23 * y,
        -m * d * (m1 * s12 + m3 * s23 + m * s24),
    ])
}

/// Collinear boundary faces of the convex normalized space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Face {
    /// x = 0: bodies 1, 2, 4 collinear.
    X,
    /// y = 0: bodies 2, 3, 4 collinear.
    Y,
    /// d = 0: bodies 2, 4 collide.
    D,
}

/// Outward normal ŵ on a boundary face, in z = (a, b, c, d).
pub fn outward_normal(face: Face, masses: MassTriple) -> [f64; 4] {
    match face {
        Face::X => [-masses.m, 0.0, -masses.m1, 0.0],
        Face::Y => [0.0, -masses.m, masses.m3, 0.0],
        Face::D => [0.0, 0.0, 0.0, -1.0],
    }
}

/// Directional derivative DU·ŵ at a point (x, y, d) of a face.
pub fn boundary_derivative(face: Face, x: f64, y: f64, d: f64, masses: MassTriple) -> Result<f64> {
    let g = gradient_u_xyd(x, y, d, masses)?;
    let w = outward_normal(face, masses);
    Ok((0..4).map(|i| g[i] * w[i]).sum())
}

/// Newtonian potential U = Σ m_i m_j / r_ij of a kite.
pub fn potential(d: &MutualDistances, masses: MassTriple) -> f64 {
    let (m1, m3, m) = (masses.m1, masses.m3, masses.m);
    m * m1 / d.r12 + m * m3 / d.r23 + m1 * m3 / d.r13 + m * m / (4.0 * d.r24)
}
