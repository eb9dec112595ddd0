//! Inverse of the mass map: all kite central configurations of a given type
//! for prescribed masses.

use rayon::prelude::*;
use serde::Serialize;

use crate::cc::{cc_residual, mass_map, mass_map_jacobian};
use crate::domain::{classify_region, MassTriple, ReducedShape, Region, GON};
use crate::error::{KiteError, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    /// Seeds per axis in each region.
    pub seeds: usize,
    /// Distance of the seed grid from the region boundary.
    pub inset: f64,
    /// Newton tolerance on the mass mismatch (max norm).
    pub tol: f64,
    pub max_iter: usize,
    /// Central-difference step for the mass-map Jacobian.
    pub fd_step: f64,
    /// Condition number above which the step is damped (Levenberg).
    pub cond_switch: f64,
    pub dedup_radius: f64,
    /// Acceptance threshold on the cc residual.
    pub residual_tol: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            seeds: 40,
            inset: 1e-3,
            tol: 1e-12,
            max_iter: 50,
            fd_step: 1e-6,
            cond_switch: 1e10,
            dedup_radius: 1e-7,
            residual_tol: 1e-10,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Solution {
    pub shape: ReducedShape,
    pub residual: f64,
    pub region: Region,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct SolveResult {
    pub solutions: Vec<ReducedShape>,
    /// max |cc_residual| per solution
    pub residuals: Vec<f64>,
    pub regions: Vec<Region>,
}

impl SolveResult {
    fn from_solutions(sols: Vec<Solution>) -> Self {
        Self {
            solutions: sols.iter().map(|s| s.shape).collect(),
            residuals: sols.iter().map(|s| s.residual).collect(),
            regions: sols.iter().map(|s| s.region).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.solutions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.solutions.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Solution> + '_ {
        (0..self.len()).map(|i| Solution {
            shape: self.solutions[i],
            residual: self.residuals[i],
            region: self.regions[i],
        })
    }
}

/// The unique convex kite c.c. for `masses`.
pub fn solve_convex(masses: MassTriple) -> Result<SolveResult> {
    solve_convex_with(masses, &SolveOptions::default())
}

pub fn solve_convex_with(masses: MassTriple, opts: &SolveOptions) -> Result<SolveResult> {
    if masses.m3 > masses.m1 {
        let swapped = solve_convex_with(masses.swapped(), opts)?;
        let mut sols: Vec<Solution> = swapped
            .iter()
            .map(|s| Solution {
                shape: s.shape.swapped(),
                residual: cc_residual(s.shape.swapped(), masses).max_abs(),
                region: s.region,
            })
            .collect();
        sort_solutions(&mut sols);
        return Ok(SolveResult::from_solutions(sols));
    }
    let sols = multistart(masses, &[Region::ConvexC], opts);
    if sols.is_empty() {
        return Err(KiteError::ConvergenceFailure);
    }
    Ok(SolveResult::from_solutions(sols))
}

/// All concave kite c.c.'s for `masses` (body 3 interior).
pub fn solve_concave(masses: MassTriple) -> SolveResult {
    solve_concave_with(masses, &SolveOptions::default())
}

pub fn solve_concave_with(masses: MassTriple, opts: &SolveOptions) -> SolveResult {
    let mut sols = multistart(masses, &[Region::Concave1, Region::Concave2], opts);
    // the 1+3-gon is central for every m1 = m/2 but sits at the 0/0 point of
    // the mass map, where Newton cannot land
    if (masses.m1 - masses.m / 2.0).abs() < 1e-12 {
        sols.push(Solution {
            shape: GON,
            residual: cc_residual(GON, masses).max_abs(),
            region: Region::OnePlusThreeGon,
        });
        sort_solutions(&mut sols);
        sols = dedup(sols, opts.dedup_radius);
    }
    SolveResult::from_solutions(sols)
}

/// Seeds filling a region column by column between its boundary curves.
pub fn region_seeds(region: Region, n: usize, inset: f64) -> Vec<ReducedShape> {
    let Some(((x0, x1), _)) = region.bounding_box() else {
        return Vec::new();
    };
    let lerp = |a: f64, b: f64, i: usize| {
        if n == 1 {
            0.5 * (a + b)
        } else {
            a + (b - a) * i as f64 / (n - 1) as f64
        }
    };
    let mut seeds = Vec::with_capacity(n * n);
    for i in 0..n {
        let x = lerp(x0 + inset, x1 - inset, i);
        let (lo, hi) = region.y_limits(x).expect("open region");
        if hi - lo <= 2.0 * inset {
            continue;
        }
        for j in 0..n {
            seeds.push(ReducedShape {
                xhat: x,
                yhat: lerp(lo + inset, hi - inset, j),
            });
        }
    }
    seeds
}

fn multistart(masses: MassTriple, regions: &[Region], opts: &SolveOptions) -> Vec<Solution> {
    let target = (masses.m1, masses.m3);
    let jobs: Vec<(Region, ReducedShape)> = regions
        .iter()
        .flat_map(|&r| region_seeds(r, opts.seeds, opts.inset).into_iter().map(move |s| (r, s)))
        .collect();
    let found: Vec<Solution> = jobs
        .par_iter()
        .filter_map(|&(region, seed)| {
            let shape = newton(seed, target, region, opts)?;
            if classify_region(shape) != region {
                return None;
            }
            let residual = cc_residual(shape, masses).max_abs();
            (residual < opts.residual_tol).then_some(Solution {
                shape,
                residual,
                region,
            })
        })
        .collect();
    let mut found = found;
    sort_solutions(&mut found);
    dedup(found, opts.dedup_radius)
}

fn sort_solutions(sols: &mut [Solution]) {
    sols.sort_by(|a, b| {
        a.shape
            .xhat
            .total_cmp(&b.shape.xhat)
            .then(a.shape.yhat.total_cmp(&b.shape.yhat))
    });
}

// Clusters of nearby shapes collapse to their best-residual member; the
// input must be sorted by x.
fn dedup(sols: Vec<Solution>, radius: f64) -> Vec<Solution> {
    let mut out: Vec<Solution> = Vec::new();
    for s in sols {
        match out.iter_mut().find(|o| o.shape.distance(&s.shape) < radius) {
            Some(o) => {
                if s.residual < o.residual {
                    *o = s;
                }
            }
            None => out.push(s),
        }
    }
    sort_solutions(&mut out);
    out
}

fn mismatch(shape: ReducedShape, target: (f64, f64)) -> Option<(f64, f64)> {
    let t = mass_map(shape).ok()?;
    let f = (t.m1 - target.0, t.m3 - target.1);
    (f.0.is_finite() && f.1.is_finite()).then_some(f)
}

fn norm_inf(f: (f64, f64)) -> f64 {
    f.0.abs().max(f.1.abs())
}

fn in_box(shape: ReducedShape, region: Region) -> bool {
    let ((x0, x1), (y0, y1)) = region.bounding_box().expect("open region");
    (x0..=x1).contains(&shape.xhat) && (y0..=y1).contains(&shape.yhat)
}

/// Damped Newton on the mass mismatch from one seed; `None` if it stalls.
pub fn newton(
    seed: ReducedShape,
    target: (f64, f64),
    region: Region,
    opts: &SolveOptions,
) -> Option<ReducedShape> {
    let mut x = seed;
    let mut f = mismatch(x, target)?;
    let mut polish = 0;
    for _ in 0..opts.max_iter + 3 {
        let converged = norm_inf(f) < opts.tol;
        if converged {
            if polish == 3 {
                break;
            }
            polish += 1;
        }
        let j = mass_map_jacobian(x, opts.fd_step).ok()?;
        let step = newton_step(j, f, opts.cond_switch)?;
        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..40 {
            let cand = ReducedShape {
                xhat: x.xhat + t * step.0,
                yhat: x.yhat + t * step.1,
            };
            if in_box(cand, region) {
                if let Some(fc) = mismatch(cand, target) {
                    if norm_inf(fc) < norm_inf(f) {
                        x = cand;
                        f = fc;
                        accepted = true;
                        break;
                    }
                }
            }
            t *= 0.5;
        }
        if !accepted {
            if converged {
                break;
            }
            return None;
        }
    }
    (norm_inf(f) < opts.tol).then_some(x)
}

fn newton_step(j: [[f64; 2]; 2], f: (f64, f64), cond_switch: f64) -> Option<(f64, f64)> {
    // JᵀJ and its eigenvalues give the 2-norm condition number
    let b11 = j[0][0] * j[0][0] + j[1][0] * j[1][0];
    let b22 = j[0][1] * j[0][1] + j[1][1] * j[1][1];
    let b12 = j[0][0] * j[0][1] + j[1][0] * j[1][1];
    let tr = b11 + b22;
    let det_j = j[0][0] * j[1][1] - j[0][1] * j[1][0];
    let gap = ((0.5 * (b11 - b22)).powi(2) + b12 * b12).sqrt();
    let lmax = 0.5 * tr + gap;
    let lmin = (det_j * det_j / lmax).max(0.0);
    let cond = if lmin > 0.0 { (lmax / lmin).sqrt() } else { f64::INFINITY };
    if !(tr > 0.0) {
        return None;
    }
    if cond <= cond_switch {
        let dx = (-f.0 * j[1][1] + f.1 * j[0][1]) / det_j;
        let dy = (-f.1 * j[0][0] + f.0 * j[1][0]) / det_j;
        return Some((dx, dy));
    }
    // Levenberg: (JᵀJ + μI) δ = −Jᵀf
    let mu = 1e-10 * tr;
    let g0 = j[0][0] * f.0 + j[1][0] * f.1;
    let g1 = j[0][1] * f.0 + j[1][1] * f.1;
    let (a11, a22) = (b11 + mu, b22 + mu);
    let det = a11 * a22 - b12 * b12;
    Some(((-g0 * a22 + g1 * b12) / det, (-g1 * a11 + g0 * b12) / det))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cc::dziobek_residual;
    use approx::assert_abs_diff_eq;

    fn shape(x: f64, y: f64) -> ReducedShape {
        ReducedShape::new(x, y).unwrap()
    }

    #[test]
    fn seeds_inside_regions() {
        for r in [Region::ConvexC, Region::Concave1, Region::Concave2] {
            let seeds = region_seeds(r, 40, 1e-3);
            assert!(seeds.len() > 1000);
            assert!(seeds.iter().all(|s| classify_region(*s) == r));
        }
    }

    #[test]
    fn square() {
        let res = solve_convex(MassTriple::new(0.25, 0.25, 0.5).unwrap()).unwrap();
        assert_eq!(res.len(), 1);
        assert_abs_diff_eq!(res.solutions[0].xhat, 1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(res.solutions[0].yhat, 1.0, epsilon = 1e-10);
        assert_eq!(res.regions[0], Region::ConvexC);
    }

    #[test]
    fn convex_round_trip() {
        let target = shape(1.2, 0.9);
        let res = solve_convex(mass_map(target).unwrap()).unwrap();
        assert_eq!(res.len(), 1);
        assert!(res.solutions[0].distance(&target) < 1e-9);
        assert!(res.residuals[0] < 1e-10);
    }

    #[test]
    fn convex_swap_symmetry() {
        let m = MassTriple::new(0.1, 0.3, 0.6).unwrap();
        let a = solve_convex(m).unwrap();
        let b = solve_convex(m.swapped()).unwrap();
        assert_eq!(a.len(), 1);
        assert_eq!(b.len(), 1);
        assert!(a.solutions[0].distance(&b.solutions[0].swapped()) < 1e-10);
        assert!(a.solutions[0].yhat > a.solutions[0].xhat);
    }

    #[test]
    fn concave_two_to_one() {
        let target = shape(2.0, -1.0);
        let res = solve_concave(mass_map(target).unwrap());
        assert_eq!(res.len(), 2, "{res:?}");
        assert!(res.solutions.iter().any(|s| s.distance(&target) < 1e-9));
        for s in res.iter() {
            assert!(s.residual < 1e-10);
            assert!(dziobek_residual(s.shape, mass_map(target).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn concave_empty() {
        let res = solve_concave(MassTriple::new(0.25, 0.4, 0.35).unwrap());
        assert!(res.is_empty(), "{res:?}");
    }

    #[test]
    fn concave_gon_masses() {
        let m = 0.6;
        let res = solve_concave(MassTriple::new(m / 2.0, 1.0 - 1.5 * m, m).unwrap());
        assert!(res.regions.contains(&Region::OnePlusThreeGon));
    }
}
