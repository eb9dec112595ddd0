//! Linear stability of kite relative equilibria: the 8×8 matrix Λ_W on the
//! nontrivial invariant subspace, spectrum classification, and the Krein
//! boundary of the stable strip in 𝒞.

use nalgebra::{DMatrix, SMatrix, SVector};
use rayon::prelude::*;

use crate::cc::{cc_residual, cc_residual_scale, mass_map, potential};
use crate::domain::{
    convex_lower, shape_to_normalized, FullConfig, MassTriple, ReducedShape, INV_SQRT3, SQRT3,
};
use crate::error::{KiteError, Result};
use crate::numkit::{char_poly, eig_dense, solve_quartic_real_coeffs, Complex};

pub type Mat8 = SMatrix<f64, 8, 8>;
pub type Vec8 = SVector<f64, 8>;

pub const DEFAULT_REAL_TOL: f64 = 1e-10;
pub const DEFAULT_GAP_TOL: f64 = 1e-8;

/// Relative cc-residual threshold for accepting a configuration as central.
pub const CENTRAL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedBasis {
    pub u1hat: [f64; 8],
    pub u2hat: [f64; 8],
    /// Oriented areas (Δ1, Δ2, Δ3, Δ4).
    pub areas: [f64; 4],
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumReport {
    /// Eigenvalues divided by ω, as ± pairs.
    pub eigenvalues: Vec<Complex>,
    /// (fully complex, real, pure imaginary)
    pub klass: (usize, usize, usize),
    pub max_real: f64,
    pub stable: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaW {
    pub matrix: Mat8,
    pub omega: f64,
    pub a_hat: SMatrix<f64, 4, 4>,
}

fn mass_diag(masses: &MassTriple) -> [f64; 8] {
    let b = masses.bodies();
    [b[0], b[0], b[1], b[1], b[2], b[2], b[3], b[3]]
}

/// K = diag(J, J, J, J) with J = [[0, 1], [−1, 0]].
pub fn apply_k(v: &[f64; 8]) -> [f64; 8] {
    let mut out = [0.0; 8];
    for i in 0..4 {
        out[2 * i] = v[2 * i + 1];
        out[2 * i + 1] = -v[2 * i];
    }
    out
}

fn neg(v: [f64; 8]) -> [f64; 8] {
    v.map(|x| -x)
}

/// Mass inner product vᵀ M w.
pub fn m_inner(v: &[f64; 8], w: &[f64; 8], masses: &MassTriple) -> f64 {
    let md = mass_diag(masses);
    (0..8).map(|i| v[i] * md[i] * w[i]).sum()
}

fn xi4() -> [f64; 8] {
    [1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0]
}

pub fn reduced_basis(config: &FullConfig, masses: &MassTriple) -> Result<ReducedBasis> {
    let (a, b, c, d) = (config.a, config.b, config.c, config.d);
    let bodies = masses.bodies();
    let areas = [-d * (b - c), 0.5 * d * (a + b), -d * (a + c), 0.5 * d * (a + b)];
    let mut u1 = [0.0; 8];
    for i in 0..4 {
        u1[2 * i] = areas[i] / bodies[i];
    }

    let q = config.planar;
    let xi = xi4();
    let against = [q, apply_k(&q), xi, apply_k(&xi), u1, neg(apply_k(&u1))];
    let mut u2 = [0.0; 8];
    u2[0] = 1.0;
    let v = u2;
    for w in &against {
        let coef = m_inner(&v, w, masses) / m_inner(w, w, masses);
        for k in 0..8 {
            u2[k] -= coef * w[k];
        }
    }
    let n2 = m_inner(&u2, &u2, masses).sqrt();
    if !(n2 >= 1e-12) {
        return Err(KiteError::DegenerateBasis(n2));
    }
    let n1 = m_inner(&u1, &u1, masses).sqrt();
    Ok(ReducedBasis {
        u1hat: u1.map(|x| x / n1),
        u2hat: u2.map(|x| x / n2),
        areas,
    })
}

/// Hessian D²U(q) of the planar potential, 8×8.
pub fn planar_hessian(q: &[f64; 8], masses: &MassTriple) -> Mat8 {
    let bodies = masses.bodies();
    let mut h = Mat8::zeros();
    for i in 0..4 {
        for j in 0..4 {
            if i == j {
                continue;
            }
            let dx = q[2 * j] - q[2 * i];
            let dy = q[2 * j + 1] - q[2 * i + 1];
            let r2 = dx * dx + dy * dy;
            let r = r2.sqrt();
            let r3 = r2 * r;
            let r5 = r3 * r2;
            let mm = bodies[i] * bodies[j];
            let block = [
                [mm * (1.0 / r3 - 3.0 * dx * dx / r5), mm * (-3.0 * dx * dy / r5)],
                [mm * (-3.0 * dx * dy / r5), mm * (1.0 / r3 - 3.0 * dy * dy / r5)],
            ];
            for p in 0..2 {
                for s in 0..2 {
                    h[(2 * i + p, 2 * j + s)] = block[p][s];
                    h[(2 * i + p, 2 * i + s)] -= block[p][s];
                }
            }
        }
    }
    h
}

fn check_central(config: &FullConfig, masses: &MassTriple) -> Result<()> {
    let shape = config.reduced();
    let rel = cc_residual(shape, *masses).max_abs() / cc_residual_scale(shape, *masses);
    if !(rel <= CENTRAL_TOL) {
        return Err(KiteError::NotCentral(rel));
    }
    Ok(())
}

/// ω and the configuration rescaled to I = 1.
fn normalized_and_omega(config: &FullConfig, masses: &MassTriple) -> (FullConfig, f64) {
    let z = config.normalized(masses);
    let omega = potential(&z.distances(), *masses).sqrt();
    (z, omega)
}

/// Λ_W = [[ωK, I], [Â, ωK]] in the basis (û1, −Kû1, û2, −Kû2).
pub fn lambda_w(config: &FullConfig, masses: &MassTriple) -> Result<LambdaW> {
    check_central(config, masses)?;
    let (z, omega) = normalized_and_omega(config, masses);
    let basis = reduced_basis(&z, masses)?;
    let h = planar_hessian(&z.planar, masses);
    let vecs = [
        basis.u1hat,
        neg(apply_k(&basis.u1hat)),
        basis.u2hat,
        neg(apply_k(&basis.u2hat)),
    ];
    let mut a_hat = SMatrix::<f64, 4, 4>::zeros();
    for i in 0..4 {
        let vi = Vec8::from_row_slice(&vecs[i]);
        for j in 0..4 {
            let vj = Vec8::from_row_slice(&vecs[j]);
            a_hat[(i, j)] = vi.dot(&(h * vj));
        }
    }
    let mut m = Mat8::zeros();
    for blk in 0..2 {
        // ωK on both diagonal blocks
        for p in 0..2 {
            let o = 4 * blk + 2 * p;
            m[(o, o + 1)] = omega;
            m[(o + 1, o)] = -omega;
        }
    }
    for i in 0..4 {
        m[(i, 4 + i)] = 1.0;
        for j in 0..4 {
            m[(4 + i, j)] = a_hat[(i, j)];
        }
    }
    Ok(LambdaW {
        matrix: m,
        omega,
        a_hat,
    })
}

/// Full 16×16 linearization [[ωK, M⁻¹], [D²U, ωK]] (test oracle).
pub fn full_stability_matrix(config: &FullConfig, masses: &MassTriple) -> Result<(DMatrix<f64>, f64)> {
    check_central(config, masses)?;
    let (z, omega) = normalized_and_omega(config, masses);
    let h = planar_hessian(&z.planar, masses);
    let md = mass_diag(masses);
    let mut m = DMatrix::zeros(16, 16);
    for blk in 0..2 {
        for p in 0..4 {
            let o = 8 * blk + 2 * p;
            m[(o, o + 1)] = omega;
            m[(o + 1, o)] = -omega;
        }
    }
    for i in 0..8 {
        m[(i, 8 + i)] = 1.0 / md[i];
        for j in 0..8 {
            m[(8 + i, j)] = h[(i, j)];
        }
    }
    Ok((m, omega))
}

/// Eigenvalues of Λ_W/ω from its even characteristic polynomial: the
/// quartic in μ = s² built from the even coefficients, then s = ±√μ.
pub fn lambda_w_eigenvalues(matrix: &Mat8, omega: f64) -> Result<Vec<Complex>> {
    if !(omega > 0.0) {
        return Err(KiteError::EigenFailure(format!("omega = {omega} must be positive")));
    }
    if matrix.iter().any(|v| !v.is_finite()) {
        return Err(KiteError::EigenFailure("non-finite entry".into()));
    }
    let scaled = DMatrix::from_fn(8, 8, |i, j| matrix[(i, j)] / omega);
    let cp = char_poly(&scaled);
    let quartic = [cp[0], cp[2], cp[4], cp[6], cp[8]];
    let mut eig = Vec::with_capacity(8);
    for mu in solve_quartic_real_coeffs(quartic) {
        let s = if mu.im == 0.0 {
            if mu.re >= 0.0 {
                Complex::new(mu.re.sqrt(), 0.0)
            } else {
                Complex::new(0.0, (-mu.re).sqrt())
            }
        } else {
            mu.sqrt()
        };
        eig.push(s);
        eig.push(-s);
    }
    if eig.iter().any(|e| !(e.re.is_finite() && e.im.is_finite())) {
        // coefficients overflow when some mass is tiny
        return lambda_w_eigenvalues_dense(matrix, omega);
    }
    eig.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    Ok(eig)
}

/// Dense-QR eigenvalues of Λ_W/ω (cross-check path).
pub fn lambda_w_eigenvalues_dense(matrix: &Mat8, omega: f64) -> Result<Vec<Complex>> {
    let scaled = DMatrix::from_fn(8, 8, |i, j| matrix[(i, j)] / omega);
    eig_dense(&scaled)
}

/// Classifies already ω-normalized eigenvalues.
pub fn classify_eigenvalues(eigenvalues: Vec<Complex>, real_tol: f64, gap_tol: f64) -> SpectrumReport {
    let (mut nc, mut nr, mut ni) = (0, 0, 0);
    let mut imag_parts = Vec::new();
    for e in &eigenvalues {
        if e.re.abs() < real_tol {
            ni += 1;
            imag_parts.push(e.im);
        } else if e.im.abs() < real_tol {
            nr += 1;
        } else {
            nc += 1;
        }
    }
    let max_real = eigenvalues.iter().map(|e| e.re).fold(f64::NEG_INFINITY, f64::max);
    imag_parts.sort_by(f64::total_cmp);
    let distinct = imag_parts.windows(2).all(|w| w[1] - w[0] > gap_tol);
    let stable = nc == 0 && nr == 0 && ni == eigenvalues.len() && distinct;
    SpectrumReport {
        eigenvalues,
        klass: (nc, nr, ni),
        max_real,
        stable,
    }
}

pub fn classify_spectrum(matrix: &Mat8, omega: f64, real_tol: f64, gap_tol: f64) -> Result<SpectrumReport> {
    let eig = lambda_w_eigenvalues(matrix, omega)?;
    Ok(classify_eigenvalues(eig, real_tol, gap_tol))
}

/// Spectrum report of the relative equilibrium of `shape` with `masses`.
pub fn stability_report(
    shape: ReducedShape,
    masses: MassTriple,
    real_tol: f64,
    gap_tol: f64,
) -> Result<SpectrumReport> {
    let z = shape_to_normalized(shape, masses)?;
    let lw = lambda_w(&z, &masses)?;
    classify_spectrum(&lw.matrix, lw.omega, real_tol, gap_tol)
}

/// Spectrum report for a shape in one of the open regions, masses from the mass map.
pub fn shape_stability(shape: ReducedShape, real_tol: f64, gap_tol: f64) -> Result<SpectrumReport> {
    stability_report(shape, mass_map(shape)?, real_tol, gap_tol)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryOptions {
    /// Offset above the lower boundary that must be stable.
    pub inset: f64,
    /// Offset above the lower boundary that must be unstable.
    pub window: f64,
    /// Bisection tolerance in ŷ.
    pub ytol: f64,
    pub real_tol: f64,
    pub gap_tol: f64,
}

impl Default for BoundaryOptions {
    fn default() -> Self {
        Self {
            inset: 1e-6,
            window: 0.005,
            ytol: 1e-9,
            real_tol: DEFAULT_REAL_TOL,
            gap_tol: DEFAULT_GAP_TOL,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryPoint {
    pub xhat: f64,
    pub yhat: f64,
    /// Dominant-mass ratio m1 / (m2 + m3 + m4).
    pub psi: f64,
}

fn is_stable(shape: ReducedShape, opts: &BoundaryOptions) -> bool {
    shape_stability(shape, opts.real_tol, opts.gap_tol)
        .map(|r| r.stable)
        .unwrap_or(false)
}

/// Boundary of the stable strip above 𝒞's lower boundary at one x̂.
pub fn boundary_point(xhat: f64, opts: &BoundaryOptions) -> Result<BoundaryPoint> {
    let fail = |reason: &str| KiteError::BracketFailure {
        xhat,
        reason: reason.to_string(),
    };
    if !(xhat > INV_SQRT3 && xhat < SQRT3) {
        return Err(fail("xhat outside (1/sqrt3, sqrt3)"));
    }
    let lower = convex_lower(xhat);
    let lo = lower + opts.inset;
    let hi = lower + opts.window;
    let pred = |y: f64| is_stable(ReducedShape { xhat, yhat: y }, opts);
    if !pred(lo) {
        return Err(fail("inset point is not stable"));
    }
    if pred(hi) {
        return Err(fail("window top is still stable"));
    }
    let mut a = lo;
    let mut b = hi;
    while b - a > opts.ytol {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        if pred(mid) {
            a = mid;
        } else {
            b = mid;
        }
    }
    let yhat = 0.5 * (a + b);
    let m1 = mass_map(ReducedShape { xhat, yhat })?.m1;
    Ok(BoundaryPoint {
        xhat,
        yhat,
        psi: m1 / (1.0 - m1),
    })
}

/// Boundary points for each x̂ in ascending order; the first bracket failure aborts.
pub fn trace_stability_boundary(xhat_grid: &[f64], opts: &BoundaryOptions) -> Result<Vec<BoundaryPoint>> {
    let mut grid = xhat_grid.to_vec();
    grid.sort_by(f64::total_cmp);
    let pts: Vec<Result<BoundaryPoint>> = grid.par_iter().map(|&x| boundary_point(x, opts)).collect();
    pts.into_iter().collect()
}

/// n interior abscissae evenly spaced strictly inside (1/√3, √3).
pub fn interior_grid(n: usize) -> Vec<f64> {
    (1..=n)
        .map(|i| INV_SQRT3 + (SQRT3 - INV_SQRT3) * i as f64 / (n + 1) as f64)
        .collect()
}

/// Estimate of the x̂ → 1/√3 limit of ψ along the boundary: boundary points
/// at δ, 2δ, 4δ from the corner with a tight ŷ tolerance, extrapolated to
/// δ = 0 by the interpolating quadratic.
pub fn psi_limit_estimate(delta: f64, opts: &BoundaryOptions) -> Result<f64> {
    let tight = BoundaryOptions { ytol: 1e-14, ..*opts };
    let psi: Vec<f64> = [1.0, 2.0, 4.0]
        .par_iter()
        .map(|k| boundary_point(INV_SQRT3 + k * delta, &tight).map(|p| p.psi))
        .collect::<Result<_>>()?;
    Ok(8.0 / 3.0 * psi[0] - 2.0 * psi[1] + psi[2] / 3.0)
}

/// Routh-type limiting ratio (25 + 3√69)/2.
pub fn psi_infimum_exact() -> f64 {
    (25.0 + 3.0 * 69f64.sqrt()) / 2.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::shape_to_full;
    use approx::assert_abs_diff_eq;

    fn shape(x: f64, y: f64) -> ReducedShape {
        ReducedShape::new(x, y).unwrap()
    }

    fn cc(x: f64, y: f64) -> (FullConfig, MassTriple) {
        let s = shape(x, y);
        let m = mass_map(s).unwrap();
        (shape_to_normalized(s, m).unwrap(), m)
    }

    #[test]
    fn square_areas() {
        let m = MassTriple::new(0.25, 0.25, 0.5).unwrap();
        let z = shape_to_full(shape(1.0, 1.0), m, 1.0).unwrap();
        let b = reduced_basis(&z, &m).unwrap();
        assert_eq!(b.areas, [-1.0, 1.0, -1.0, 1.0]);
    }

    #[test]
    fn basis_orthonormal() {
        for (x, y) in [(1.2, 0.9), (1.0, 0.5), (2.0, -1.0), (1.5, -0.2)] {
            let (z, m) = cc(x, y);
            let b = reduced_basis(&z, &m).unwrap();
            let q = z.planar;
            let xi = xi4();
            let fixed = [q, apply_k(&q), xi, apply_k(&xi)];
            let ours = [b.u1hat, neg(apply_k(&b.u1hat)), b.u2hat, neg(apply_k(&b.u2hat))];
            for (i, u) in ours.iter().enumerate() {
                assert_abs_diff_eq!(m_inner(u, u, &m), 1.0, epsilon = 1e-14);
                for w in &fixed {
                    assert!(m_inner(u, w, &m).abs() < 1e-12);
                }
                for v in &ours[i + 1..] {
                    assert!(m_inner(u, v, &m).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn u2_closed_form() {
        let (z, m) = cc(1.2, 0.9);
        let (a, b, c, d) = (z.a, z.b, z.c, z.d);
        let bodies = m.bodies();
        let dl = [-d * (b - c), 0.5 * d * (a + b), -d * (a + c), 0.5 * d * (a + b)];
        let uu: f64 = (0..4).map(|i| dl[i] * dl[i] / bodies[i]).sum();
        let m1 = m.m1;
        let want = [
            1.0 - m1 * a * a - m1 - dl[0] * dl[0] / (bodies[0] * uu),
            0.0,
            m1 * a * c - m1 - dl[0] * dl[1] / (bodies[1] * uu),
            -m1 * a * d,
            m1 * a * b - m1 - dl[0] * dl[2] / (bodies[2] * uu),
            0.0,
            m1 * a * c - m1 - dl[0] * dl[3] / (bodies[3] * uu),
            m1 * a * d,
        ];
        let nw = m_inner(&want, &want, &m).sqrt();
        let got = reduced_basis(&z, &m).unwrap().u2hat;
        for k in 0..8 {
            assert_abs_diff_eq!(got[k], want[k] / nw, epsilon = 1e-12);
        }
    }

    #[test]
    fn hessian_matches_potential_differences() {
        let (z, m) = cc(1.2, 0.9);
        let h = planar_hessian(&z.planar, &m);
        let bodies = m.bodies();
        let u = |q: &[f64; 8]| {
            let mut s = 0.0;
            for i in 0..4 {
                for j in i + 1..4 {
                    let r = (q[2 * i] - q[2 * j]).hypot(q[2 * i + 1] - q[2 * j + 1]);
                    s += bodies[i] * bodies[j] / r;
                }
            }
            s
        };
        let e = 1e-4;
        for i in 0..8 {
            for j in 0..8 {
                let shift = |di: f64, dj: f64| {
                    let mut q = z.planar;
                    q[i] += di;
                    q[j] += dj;
                    u(&q)
                };
                let fd = (shift(e, e) - shift(e, -e) - shift(-e, e) + shift(-e, -e)) / (4.0 * e * e);
                assert_abs_diff_eq!(h[(i, j)], fd, epsilon = 1e-6);
            }
        }
    }

    #[test]
    fn checkerboard_and_even_polynomial() {
        for (x, y) in [(1.2, 0.9), (1.0, 0.5), (2.0, -1.0), (1.5, -0.2)] {
            let (z, m) = cc(x, y);
            let lw = lambda_w(&z, &m).unwrap();
            let an = lw.a_hat.norm();
            for i in 0..4 {
                for j in 0..4 {
                    if (i + j) % 2 == 1 {
                        assert!(lw.a_hat[(i, j)].abs() < 1e-11 * an);
                    }
                }
            }
            let scaled = DMatrix::from_fn(8, 8, |i, j| lw.matrix[(i, j)] / lw.omega);
            let cp = char_poly(&scaled);
            let cmax = cp.iter().fold(0.0f64, |a, v| a.max(v.abs()));
            for k in [1, 3, 5, 7] {
                assert!(cp[k].abs() < 1e-10 * cmax, "{x} {y} c{k} = {}", cp[k]);
            }
        }
    }

    #[test]
    fn quartic_path_matches_dense() {
        for (x, y) in [(1.0, 1.0), (1.2, 0.9), (1.0, 0.4143), (2.0, -1.0), (1.5, -0.2), (3.0, -1.5)] {
            let (z, m) = cc(x, y);
            let lw = lambda_w(&z, &m).unwrap();
            let a = lambda_w_eigenvalues(&lw.matrix, lw.omega).unwrap();
            let b = lambda_w_eigenvalues_dense(&lw.matrix, lw.omega).unwrap();
            for e in &a {
                let d = b.iter().map(|f| (e - f).norm()).fold(f64::INFINITY, f64::min);
                assert!(d < 1e-9 * (1.0 + e.norm()), "{x} {y}: {e} off by {d:e}");
            }
        }
    }

    #[test]
    fn square_is_unstable() {
        let r = stability_report(shape(1.0, 1.0), MassTriple::new(0.25, 0.25, 0.5).unwrap(), 1e-10, 1e-8).unwrap();
        assert!(!r.stable);
        assert!(r.max_real > 0.0);
    }

    #[test]
    fn lower_inset_is_stable() {
        let s = shape(1.0, -1.0 + 2f64.sqrt() + 1e-4);
        let r = shape_stability(s, 1e-10, 1e-8).unwrap();
        assert!(r.stable, "{r:?}");
        assert_eq!(r.klass, (0, 0, 8));
    }

    #[test]
    fn gon_is_unstable() {
        for m in [0.2, 0.5, 0.6] {
            let masses = crate::index::gon_masses(m);
            let r = stability_report(crate::domain::GON, masses, 1e-10, 1e-8).unwrap();
            assert!(!r.stable, "m = {m}");
        }
    }

    #[test]
    fn not_central_rejected() {
        let m = MassTriple::new(0.5, 0.2, 0.3).unwrap();
        let z = shape_to_normalized(shape(1.0, 1.0), m).unwrap();
        assert!(matches!(lambda_w(&z, &m), Err(KiteError::NotCentral(_))));
    }

    #[test]
    fn classification_rules() {
        let i = |b: f64| Complex::new(0.0, b);
        let eig = vec![i(1.0), i(-1.0), i(2.0), i(-2.0), i(3.0), i(-3.0), i(4.0), i(-4.0)];
        let r = classify_eigenvalues(eig.clone(), 1e-10, 1e-8);
        assert!(r.stable);
        assert_eq!(r.klass, (0, 0, 8));
        let mut rep = eig.clone();
        rep[2] = i(1.0 + 1e-9);
        rep[3] = i(-1.0 - 1e-9);
        assert!(!classify_eigenvalues(rep, 1e-10, 1e-8).stable);
        let mixed = vec![
            Complex::new(0.5, 0.0),
            Complex::new(-0.5, 0.0),
            Complex::new(0.1, 1.0),
            Complex::new(-0.1, 1.0),
            Complex::new(0.1, -1.0),
            Complex::new(-0.1, -1.0),
            i(2.0),
            i(-2.0),
        ];
        let r = classify_eigenvalues(mixed, 1e-10, 1e-8);
        assert_eq!(r.klass, (4, 2, 2));
        assert!(!r.stable);
        assert_eq!(r.max_real, 0.5);
    }

    #[test]
    fn boundary_strip_is_thin() {
        for x in [0.8, 1.0, 1.4] {
            let p = boundary_point(x, &BoundaryOptions::default()).unwrap();
            let off = p.yhat - convex_lower(x);
            assert!(off > 0.0 && off < 0.004, "{x}: {off}");
        }
    }

    #[test]
    fn tiny_masses_fall_back_to_dense() {
        // near the (√3, √3) corner m1 = m3 ≈ 8e-7 and the characteristic
        // polynomial overflows
        let c = SQRT3 - 1e-6;
        let rep = shape_stability(ReducedShape { xhat: c, yhat: c }, DEFAULT_REAL_TOL, DEFAULT_GAP_TOL).unwrap();
        assert!(rep.eigenvalues.iter().all(|e| e.re.is_finite() && e.im.is_finite()));
        assert!(rep.max_real.is_finite());
        assert_eq!(rep.klass.0 + rep.klass.1 + rep.klass.2, 8);
        assert!(!rep.stable);
    }
}
