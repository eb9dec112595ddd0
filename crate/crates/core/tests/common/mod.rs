//! Independent oracles shared by the integration tests. Apart from the
//! reduced spectrum that `oracle_gap` compares against, nothing here calls
//! into the library's geometry or dynamics code.
#![allow(dead_code)]

use kite_core::domain::{classify_region, shape_to_normalized, MassTriple, ReducedShape, Region};
use kite_core::stability::{lambda_w, lambda_w_eigenvalues};
use nalgebra::DMatrix;
use rand::Rng;

pub const SQRT3: f64 = 1.732_050_807_568_877_2;

pub fn bodies(m: &MassTriple) -> [f64; 4] {
    [m.m1, m.m / 2.0, m.m3, m.m / 2.0]
}

/// Planar positions (q1..q4) of the kite with d = 1 before normalization,
/// translated to the center of mass and scaled to unit inertia Σ mᵢ|qᵢ|².
pub fn planar_q(x: f64, y: f64, masses: &MassTriple) -> [f64; 8] {
    // body 1 at (p, 0), body 3 at (p − (x + y), 0), bodies 2, 4 at (p − x, ±1)
    let w = bodies(masses);
    let raw = [(0.0, 0.0), (-x, 1.0), (-(x + y), 0.0), (-x, -1.0)];
    let mtot: f64 = w.iter().sum();
    let cx = raw.iter().zip(w).map(|(p, mi)| mi * p.0).sum::<f64>() / mtot;
    let cy = raw.iter().zip(w).map(|(p, mi)| mi * p.1).sum::<f64>() / mtot;
    let mut q = [0.0; 8];
    for (k, p) in raw.iter().enumerate() {
        q[2 * k] = p.0 - cx;
        q[2 * k + 1] = p.1 - cy;
    }
    let inertia: f64 = (0..4).map(|k| w[k] * (q[2 * k].powi(2) + q[2 * k + 1].powi(2))).sum();
    let s = inertia.sqrt();
    q.map(|v| v / s)
}

fn pair(q: &[f64; 8], i: usize, j: usize) -> (f64, f64, f64) {
    let dx = q[2 * i] - q[2 * j];
    let dy = q[2 * i + 1] - q[2 * j + 1];
    (dx, dy, (dx * dx + dy * dy).sqrt())
}

pub fn potential(q: &[f64; 8], masses: &MassTriple) -> f64 {
    let w = bodies(masses);
    let mut u = 0.0;
    for i in 0..4 {
        for j in i + 1..4 {
            u += w[i] * w[j] / pair(q, i, j).2;
        }
    }
    u
}

pub fn gradient(q: &[f64; 8], masses: &MassTriple) -> [f64; 8] {
    let w = bodies(masses);
    let mut g = [0.0; 8];
    for i in 0..4 {
        for j in 0..4 {
            if i == j {
                continue;
            }
            let (dx, dy, r) = pair(q, i, j);
            let c = -w[i] * w[j] / (r * r * r);
            g[2 * i] += c * dx;
            g[2 * i + 1] += c * dy;
        }
    }
    g
}

pub fn hessian(q: &[f64; 8], masses: &MassTriple) -> [[f64; 8]; 8] {
    let w = bodies(masses);
    let mut h = [[0.0; 8]; 8];
    for i in 0..4 {
        for j in 0..4 {
            if i == j {
                continue;
            }
            let (dx, dy, r) = pair(q, i, j);
            let d = [dx, dy];
            let c = w[i] * w[j];
            for a in 0..2 {
                for b in 0..2 {
                    let delta = if a == b { 1.0 } else { 0.0 };
                    let blk = c * (3.0 * d[a] * d[b] / r.powi(5) - delta / r.powi(3));
                    h[2 * i + a][2 * i + b] += blk;
                    h[2 * i + a][2 * j + b] -= blk;
                }
            }
        }
    }
    h
}

/// max |∇U + λMq| / max|∇U| with λ = U/I.
pub fn cc_defect(q: &[f64; 8], masses: &MassTriple) -> f64 {
    let w = bodies(masses);
    let inertia: f64 = (0..8).map(|k| w[k / 2] * q[k] * q[k]).sum();
    let lam = potential(q, masses) / inertia;
    let g = gradient(q, masses);
    let scale = g.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    (0..8).map(|k| (g[k] + lam * w[k / 2] * q[k]).abs()).fold(0.0, f64::max) / scale
}

/// The s_ij/S form of the mass map, written independently of the library's
/// product form.
pub fn mass_map_s_form(x: f64, y: f64) -> (f64, f64, f64) {
    let s12 = (x * x + 1.0).powf(-1.5);
    let s23 = (y * y + 1.0).powf(-1.5);
    let s13 = (x + y).powi(-3);
    let s24 = 0.125;
    let big_s = s13 + s24 - s12 - s23;
    let inner = x * (s13 - s12) + y * (s13 - s23);
    let m1 = y * (s23 - s24) * (s23 - s13) / (big_s * inner);
    let m3 = x * (s12 - s24) * (s12 - s13) / (big_s * inner);
    (m1, m3, 1.0 - m1 - m3)
}

/// z = (a, b, c, d) from (x, y, d) through the linear map.
pub fn z_from_xyd(x: f64, y: f64, d: f64, masses: &MassTriple) -> [f64; 4] {
    let (m1, m3) = (masses.m1, masses.m3);
    [(1.0 - m1) * x + m3 * y, m1 * x + (1.0 - m3) * y, m1 * x - m3 * y, d]
}

/// Uniform on the simplex m1 + m3 + m = 1.
pub fn random_masses<R: Rng>(rng: &mut R) -> MassTriple {
    loop {
        let (u, v): (f64, f64) = (rng.random(), rng.random());
        let (a, b) = (u.min(v), u.max(v));
        if let Ok(m) = MassTriple::new(a, b - a, 1.0 - b) {
            return m;
        }
    }
}

/// Uniform over the region by rejection from its bounding box.
pub fn random_shape<R: Rng>(rng: &mut R, region: Region) -> ReducedShape {
    let ((x0, x1), (y0, y1)) = region.bounding_box().unwrap();
    loop {
        let s = ReducedShape {
            xhat: rng.random_range(x0..x1),
            yhat: rng.random_range(y0..y1),
        };
        if classify_region(s) == region {
            return s;
        }
    }
}

/// Greedy nearest matching of two equally sized complex multisets; returns
/// the largest matched distance.
pub fn match_multisets(a: &[(f64, f64)], b: &[(f64, f64)]) -> f64 {
    assert_eq!(a.len(), b.len());
    let mut used = vec![false; b.len()];
    let mut worst = 0.0f64;
    for p in a {
        let (k, d) = b
            .iter()
            .enumerate()
            .filter(|(k, _)| !used[*k])
            .map(|(k, q)| (k, (p.0 - q.0).hypot(p.1 - q.1)))
            .min_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap();
        used[k] = true;
        worst = worst.max(d);
    }
    worst
}

/// Λ = [[ωK, M⁻¹], [D²U, ωK]] built from the pairwise oracle, and ω.
pub fn oracle_lambda(s: ReducedShape, masses: &MassTriple) -> (DMatrix<f64>, f64) {
    let q = planar_q(s.xhat, s.yhat, masses);
    let omega = potential(&q, masses).sqrt();
    let h = hessian(&q, masses);
    let w = bodies(masses);
    let mut m = DMatrix::zeros(16, 16);
    for blk in [0, 8] {
        for k in 0..4 {
            m[(blk + 2 * k, blk + 2 * k + 1)] = omega;
            m[(blk + 2 * k + 1, blk + 2 * k)] = -omega;
        }
    }
    for i in 0..8 {
        m[(i, 8 + i)] = 1.0 / w[i / 2];
        for j in 0..8 {
            m[(8 + i, j)] = h[i][j];
        }
    }
    (m, omega)
}

/// Largest deviation between the oracle's 16 eigenvalues and
/// {0, 0, ±i, ±i, ±i} ∪ spec(Λ_W), all divided by ω. The defective trivial
/// clusters are compared by their means.
pub fn oracle_gap(s: ReducedShape, masses: &MassTriple) -> f64 {
    let (m, omega) = oracle_lambda(s, masses);
    let mut pool: Vec<(f64, f64)> = m
        .complex_eigenvalues()
        .iter()
        .map(|e| (e.re / omega, e.im / omega))
        .collect();
    let lw = lambda_w(&shape_to_normalized(s, *masses).unwrap(), masses).unwrap();
    let nontrivial = lambda_w_eigenvalues(&lw.matrix, lw.omega).unwrap();
    let mut worst = 0.0f64;
    for e in &nontrivial {
        let (k, d) = pool
            .iter()
            .enumerate()
            .map(|(k, p)| (k, (p.0 - e.re).hypot(p.1 - e.im)))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        worst = worst.max(d);
        pool.remove(k);
    }
    for (target, count) in [((0.0, 0.0), 2), ((0.0, 1.0), 3), ((0.0, -1.0), 3)] {
        pool.sort_by(|a, b| {
            let da = (a.0 - target.0).hypot(a.1 - target.1);
            let db = (b.0 - target.0).hypot(b.1 - target.1);
            da.total_cmp(&db)
        });
        let cluster: Vec<(f64, f64)> = pool.drain(..count).collect();
        let mean = (
            cluster.iter().map(|p| p.0).sum::<f64>() / count as f64,
            cluster.iter().map(|p| p.1).sum::<f64>() / count as f64,
        );
        worst = worst.max((mean.0 - target.0).hypot(mean.1 - target.1));
    }
    worst
}
