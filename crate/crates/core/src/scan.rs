//! Grid scans over the reduced regions and continuation of the degeneracy curve.

use rayon::prelude::*;
use serde::Serialize;

use crate::cc::mass_map;
use crate::domain::{classify_region, MassTriple, ReducedShape, Region, GON};
use crate::error::{KiteError, Result};
use crate::index::{f_value, index_sign};
use crate::stability::shape_stability;

/// Offset of scan grids from the bounding-box edges.
pub const GRID_INSET: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum What {
    Index,
    Stability,
    Masses,
}

impl std::str::FromStr for What {
    type Err = KiteError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "index" => Ok(What::Index),
            "stability" => Ok(What::Stability),
            "masses" => Ok(What::Masses),
            _ => Err(KiteError::InvalidArgument(format!(
                "unknown scan quantity '{s}' (expected index, stability or masses)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanRow {
    pub xhat: f64,
    pub yhat: f64,
    pub in_region: bool,
    pub masses: Option<MassTriple>,
    #[serde(rename = "F")]
    pub f: f64,
    pub index: Option<i8>,
    pub klass: Option<(usize, usize, usize)>,
    pub max_real: Option<f64>,
    pub stable: Option<bool>,
}

/// Abscissae and ordinates of the n×n grid over a region's bounding box.
pub fn region_grid(region: Region, n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if n < 2 {
        return Err(KiteError::InvalidArgument(format!("grid size {n} must be at least 2")));
    }
    let ((x0, x1), (y0, y1)) = region.bounding_box().ok_or_else(|| {
        KiteError::InvalidArgument(format!("region {region} cannot be scanned"))
    })?;
    let axis = |a: f64, b: f64| -> Vec<f64> {
        let (a, b) = (a + GRID_INSET, b - GRID_INSET);
        (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
    };
    Ok((axis(x0, x1), axis(y0, y1)))
}

fn scan_cell(region: Region, shape: ReducedShape, what: What, real_tol: f64, gap_tol: f64) -> ScanRow {
    let in_region = classify_region(shape) == region;
    let mut row = ScanRow {
        xhat: shape.xhat,
        yhat: shape.yhat,
        in_region,
        masses: None,
        f: if shape.xhat + shape.yhat > 0.0 { f_value(shape) } else { f64::NAN },
        index: None,
        klass: None,
        max_real: None,
        stable: None,
    };
    if !in_region {
        return row;
    }
    let Ok(masses) = mass_map(shape) else {
        return row;
    };
    row.masses = Some(masses);
    if what != What::Masses {
        row.index = Some(index_sign(shape, masses, None));
    }
    if what == What::Stability {
        if let Ok(rep) = shape_stability(shape, real_tol, gap_tol) {
            row.klass = Some(rep.klass);
            row.max_real = Some(rep.max_real);
            row.stable = Some(rep.stable);
        }
    }
    row
}

/// n×n scan of a region's bounding box (inset 1e-6), x̂ outer and ŷ inner.
/// Cells outside the region are kept and marked so grids align across runs.
pub fn scan_region(region: Region, n: usize, what: What) -> Result<Vec<ScanRow>> {
    scan_region_with(region, n, what, crate::stability::DEFAULT_REAL_TOL, crate::stability::DEFAULT_GAP_TOL)
}

pub fn scan_region_with(region: Region, n: usize, what: What, real_tol: f64, gap_tol: f64) -> Result<Vec<ScanRow>> {
    let (xs, ys) = region_grid(region, n)?;
    let cells: Vec<ReducedShape> = xs
        .iter()
        .flat_map(|&x| ys.iter().map(move |&y| ReducedShape { xhat: x, yhat: y }))
        .collect();
    Ok(cells
        .par_iter()
        .map(|&s| scan_cell(region, s, what, real_tol, gap_tol))
        .collect())
}

/// Mass-map image along `lines` vertical lines through a region, `n` samples each.
pub fn mass_lines(region: Region, lines: usize, n: usize) -> Result<Vec<ScanRow>> {
    if lines == 0 || n < 2 {
        return Err(KiteError::InvalidArgument("need at least one line and two samples".into()));
    }
    let ((x0, x1), _) = region
        .bounding_box()
        .ok_or_else(|| KiteError::InvalidArgument(format!("region {region} cannot be scanned")))?;
    let mut cells = Vec::with_capacity(lines * n);
    for k in 1..=lines {
        let x = x0 + (x1 - x0) * k as f64 / (lines + 1) as f64;
        let (lo, hi) = region.y_limits(x).expect("open region");
        let (lo, hi) = (lo + GRID_INSET, hi - GRID_INSET);
        for j in 0..n {
            cells.push(ReducedShape {
                xhat: x,
                yhat: lo + (hi - lo) * j as f64 / (n - 1) as f64,
            });
        }
    }
    Ok(cells
        .par_iter()
        .map(|&s| scan_cell(region, s, What::Masses, 0.0, 0.0))
        .collect())
}

/// Vertex tolerance on |F| along the traced degeneracy curve.
pub const DEGENERACY_TOL: f64 = 1e-8;

fn f_at(x: f64, y: f64) -> f64 {
    f_value(ReducedShape { xhat: x, yhat: y })
}

fn grad_f(x: f64, y: f64) -> (f64, f64) {
    let h = 1e-7;
    (
        (f_at(x + h, y) - f_at(x - h, y)) / (2.0 * h),
        (f_at(x, y + h) - f_at(x, y - h)) / (2.0 * h),
    )
}

// Newton projection onto F = 0 along the gradient.
fn correct(mut p: (f64, f64)) -> Option<(f64, f64)> {
    let mut f = f_at(p.0, p.1);
    for _ in 0..30 {
        let g = grad_f(p.0, p.1);
        let g2 = g.0 * g.0 + g.1 * g.1;
        if !(g2 > 0.0) {
            return None;
        }
        let next = (p.0 - f * g.0 / g2, p.1 - f * g.1 / g2);
        let fnext = f_at(next.0, next.1);
        if !fnext.is_finite() {
            return None;
        }
        if fnext.abs() >= f.abs() {
            break;
        }
        p = next;
        f = fnext;
    }
    (f.abs() < DEGENERACY_TOL).then_some(p)
}

// First zero crossing of F on the circle of radius r about the gon whose
// bracketing samples lie in `region`.
fn seed_on_circle(region: Region, r: f64) -> Option<(f64, f64)> {
    let n = 3600;
    let point = |t: f64| (GON.xhat + r * t.cos(), GON.yhat + r * t.sin());
    let inside = |p: (f64, f64)| classify_region(ReducedShape { xhat: p.0, yhat: p.1 }) == region;
    let two_pi = std::f64::consts::TAU;
    for k in 0..n {
        let (t0, t1) = (two_pi * k as f64 / n as f64, two_pi * (k + 1) as f64 / n as f64);
        let (p0, p1) = (point(t0), point(t1));
        if !(inside(p0) && inside(p1)) {
            continue;
        }
        let (f0, f1) = (f_at(p0.0, p0.1), f_at(p1.0, p1.1));
        if f0.signum() == f1.signum() {
            continue;
        }
        let neg0 = f0 < 0.0;
        let t = crate::numkit::bisect(
            |t| {
                let p = point(t);
                (f_at(p.0, p.1) < 0.0) == neg0
            },
            t0,
            t1,
            1e-15,
        )
        .ok()?;
        return correct(point(t));
    }
    None
}

/// Vertices of the degeneracy curve keep this distance from the region edge,
/// so a finite-difference stencil about each one stays in the region.
pub const EDGE_MARGIN: f64 = 1e-5;

fn inside_with_margin(region: Region, q: (f64, f64)) -> bool {
    [(0.0, 0.0), (EDGE_MARGIN, 0.0), (-EDGE_MARGIN, 0.0), (0.0, EDGE_MARGIN), (0.0, -EDGE_MARGIN)]
        .iter()
        .all(|(dx, dy)| classify_region(ReducedShape { xhat: q.0 + dx, yhat: q.1 + dy }) == region)
}

fn trace_branch(region: Region, start: (f64, f64), step: f64) -> Vec<ReducedShape> {
    let mut pts = vec![ReducedShape {
        xhat: start.0,
        yhat: start.1,
    }];
    let mut p = start;
    let mut dir = {
        let (dx, dy) = (p.0 - GON.xhat, p.1 - GON.yhat);
        let n = dx.hypot(dy);
        (dx / n, dy / n)
    };
    let max_steps = (50.0 / step) as usize;
    for _ in 0..max_steps {
        let g = grad_f(p.0, p.1);
        let gn = g.0.hypot(g.1);
        if !(gn > 0.0) {
            break;
        }
        let mut t = (-g.1 / gn, g.0 / gn);
        if t.0 * dir.0 + t.1 * dir.1 < 0.0 {
            t = (-t.0, -t.1);
        }
        let mut h = step;
        let mut next = None;
        for _ in 0..6 {
            if let Some(q) = correct((p.0 + h * t.0, p.1 + h * t.1)) {
                next = Some(q);
                break;
            }
            h *= 0.5;
        }
        let Some(q) = next else { break };
        let shape = ReducedShape { xhat: q.0, yhat: q.1 };
        if !inside_with_margin(region, q) {
            break;
        }
        let (dx, dy) = (q.0 - p.0, q.1 - p.1);
        let n = dx.hypot(dy);
        if !(n > 0.0) {
            break;
        }
        dir = (dx / n, dy / n);
        p = q;
        pts.push(shape);
    }
    pts
}

/// Predictor-corrector continuation of {F = 0} through both concave
/// regions, seeded on a circle of radius `step` about the 1+3-gon. The
/// polyline runs from the 𝒞𝒱₂ end through the gon to the 𝒞𝒱₁ end.
pub fn trace_degeneracy_curve(step: f64) -> Result<Vec<ReducedShape>> {
    if !(step > 0.0 && step <= 0.1) {
        return Err(KiteError::InvalidArgument(format!("step {step} must lie in (0, 0.1]")));
    }
    let seed2 = seed_on_circle(Region::Concave2, step);
    let seed1 = seed_on_circle(Region::Concave1, step);
    if seed1.is_none() && seed2.is_none() {
        return Err(KiteError::SeedFailure);
    }
    let mut out: Vec<ReducedShape> = match seed2 {
        Some(s) => trace_branch(Region::Concave2, s, step).into_iter().rev().collect(),
        None => Vec::new(),
    };
    out.push(GON);
    if let Some(s) = seed1 {
        out.extend(trace_branch(Region::Concave1, s, step));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cc::{cond2, mass_map_jacobian, mass_map_jacobian_extrapolated};
    use crate::domain::SQRT3;

    #[test]
    fn grid_shape_and_order() {
        let rows = scan_region(Region::Concave2, 5, What::Masses).unwrap();
        assert_eq!(rows.len(), 25);
        assert!(rows[0].xhat < rows[5].xhat);
        assert!(rows[0].yhat < rows[1].yhat);
        for r in &rows {
            assert_eq!(r.masses.is_some(), r.in_region);
            assert!(r.index.is_none() && r.klass.is_none());
        }
        assert!(scan_region(Region::Concave2, 1, What::Index).is_err());
        assert!(scan_region(Region::Outside, 5, What::Index).is_err());
    }

    #[test]
    fn grids_align_across_quantities() {
        let a = scan_region(Region::Concave1, 7, What::Index).unwrap();
        let b = scan_region(Region::Concave1, 7, What::Stability).unwrap();
        for (p, q) in a.iter().zip(&b) {
            assert_eq!((p.xhat, p.yhat, p.in_region), (q.xhat, q.yhat, q.in_region));
            assert_eq!(p.index, q.index);
            assert_eq!(q.klass.is_some(), q.in_region);
        }
    }

    #[test]
    fn convex_index_scan() {
        let rows = scan_region(Region::ConvexC, 40, What::Index).unwrap();
        assert!(rows.iter().filter(|r| r.in_region).all(|r| r.index == Some(1) && r.f > 0.0));
    }

    #[test]
    fn degeneracy_curve() {
        let step = 0.01;
        let curve = trace_degeneracy_curve(step).unwrap();
        assert!(curve.len() > 20);
        let gi = curve.iter().position(|p| *p == GON).unwrap();
        assert!(gi > 0 && gi + 1 < curve.len());
        assert!(curve[gi - 1].distance(&GON) <= step * 1.01);
        assert!(curve[gi + 1].distance(&GON) <= step * 1.01);
        for (i, p) in curve.iter().enumerate() {
            assert!(f_value(*p).abs() < DEGENERACY_TOL, "{p:?}");
            if i != gi {
                let r = classify_region(*p);
                assert_eq!(r, if i < gi { Region::Concave2 } else { Region::Concave1 });
                assert!(mass_map(*p).unwrap().m1 <= 0.42345 + 1e-3);
            }
        }
        let j = mass_map_jacobian(curve[gi + 5], 1e-6).unwrap();
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        let fro2 = j.iter().flatten().map(|v| v * v).sum::<f64>();
        assert!(det.abs() < 1e-6 * fro2);
        for (i, p) in curve.iter().enumerate() {
            if i != gi {
                assert!(cond2(mass_map_jacobian_extrapolated(*p, 1e-6).unwrap()) > 1e8);
            }
        }
        assert!(trace_degeneracy_curve(0.0).is_err());
        assert!(trace_degeneracy_curve(0.2).is_err());
        assert!(curve.iter().all(|p| p.xhat > 1.0 && p.xhat < 2.0 + SQRT3));
    }

    #[test]
    fn mass_lines_cover_region() {
        let rows = mass_lines(Region::Concave1, 20, 10).unwrap();
        assert_eq!(rows.len(), 200);
        assert!(rows.iter().all(|r| r.in_region && r.masses.is_some()));
    }
}
