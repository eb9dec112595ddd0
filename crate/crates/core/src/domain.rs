//! Masses, kite shapes, full configurations and the reduced regions.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{KiteError, Result};

pub const SQRT3: f64 = 1.732_050_807_568_877_2;
pub const INV_SQRT3: f64 = 0.577_350_269_189_625_8;

/// Tolerance for membership on the defining boundary curves.
pub const BOUNDARY_TOL: f64 = 1e-12;

/// The 1+3-gon in reduced coordinates.
pub const GON: ReducedShape = ReducedShape {
    xhat: SQRT3,
    yhat: -INV_SQRT3,
};

/// Normalized masses with m2 = m4 = m/2 and m1 + m3 + m = 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MassTriple {
    pub m1: f64,
    pub m3: f64,
    pub m: f64,
}

impl MassTriple {
    /// Validates positivity and rescales so the sum is exactly 1 in
    /// floating point (up to one rounding).
    pub fn new(m1: f64, m3: f64, m: f64) -> Result<Self> {
        if !(m1.is_finite() && m3.is_finite() && m.is_finite()) {
            return Err(KiteError::InvalidMasses("non-finite mass".into()));
        }
        if m1 <= 0.0 || m3 <= 0.0 || m <= 0.0 {
            return Err(KiteError::InvalidMasses(format!(
                "masses must be positive, got m1={m1}, m3={m3}, m={m}"
            )));
        }
        let total = m1 + m3 + m;
        if (total - 1.0).abs() > 1e-9 {
            return Err(KiteError::InvalidMasses(format!(
                "m1 + m3 + m = {total}, expected 1"
            )));
        }
        let (m1, m3) = (m1 / total, m3 / total);
        let m = 1.0 - m1 - m3;
        if m <= 0.0 || m >= 1.0 {
            return Err(KiteError::InvalidMasses(format!("m = {m} not in (0, 1)")));
        }
        Ok(Self { m1, m3, m })
    }

    /// m inferred as 1 - m1 - m3.
    pub fn from_m1_m3(m1: f64, m3: f64) -> Result<Self> {
        Self::new(m1, m3, 1.0 - m1 - m3)
    }

    pub fn m2(&self) -> f64 {
        self.m / 2.0
    }

    pub fn m4(&self) -> f64 {
        self.m / 2.0
    }

    /// Body masses in planar order (m1, m2, m3, m4).
    pub fn bodies(&self) -> [f64; 4] {
        [self.m1, self.m / 2.0, self.m3, self.m / 2.0]
    }

    pub fn swapped(&self) -> Self {
        Self {
            m1: self.m3,
            m3: self.m1,
            m: self.m,
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.m1 - other.m1)
            .abs()
            .max((self.m3 - other.m3).abs())
            .max((self.m - other.m).abs())
    }
}

/// A kite with the off-axis pair at (0, ±1): body 1 at (x̂, 0), body 3 at (−ŷ, 0).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReducedShape {
    pub xhat: f64,
    pub yhat: f64,
}

impl ReducedShape {
    pub fn new(xhat: f64, yhat: f64) -> Result<Self> {
        if !(xhat.is_finite() && yhat.is_finite()) {
            return Err(KiteError::InvalidShape("non-finite coordinate".into()));
        }
        if xhat + yhat <= 0.0 {
            return Err(KiteError::InvalidShape(format!(
                "xhat + yhat = {} must be positive",
                xhat + yhat
            )));
        }
        Ok(Self { xhat, yhat })
    }

    pub fn swapped(&self) -> Self {
        Self {
            xhat: self.yhat,
            yhat: self.xhat,
        }
    }

    pub fn distance(&self, other: &Self) -> f64 {
        (self.xhat - other.xhat).hypot(self.yhat - other.yhat)
    }
}

/// Region tags of the reduced plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Region {
    ConvexC,
    Concave1,
    Concave2,
    OnePlusThreeGon,
    BoundaryRhombus,
    BoundaryRestricted,
    BoundaryOnePlusThree,
    Outside,
}

impl Region {
    /// One of the three open regions where the mass map is defined.
    pub fn is_open_region(self) -> bool {
        matches!(self, Region::ConvexC | Region::Concave1 | Region::Concave2)
    }

    pub fn is_concave(self) -> bool {
        matches!(self, Region::Concave1 | Region::Concave2)
    }

    pub fn name(self) -> &'static str {
        match self {
            Region::ConvexC => "convex",
            Region::Concave1 => "cv1",
            Region::Concave2 => "cv2",
            Region::OnePlusThreeGon => "gon",
            Region::BoundaryRhombus => "boundary-rhombus",
            Region::BoundaryRestricted => "boundary-restricted",
            Region::BoundaryOnePlusThree => "boundary-1+3",
            Region::Outside => "outside",
        }
    }

    /// Axis-aligned bounding box ((xmin, xmax), (ymin, ymax)) of an open region.
    pub fn bounding_box(self) -> Option<((f64, f64), (f64, f64))> {
        match self {
            Region::ConvexC => Some(((INV_SQRT3, SQRT3), (2.0 - SQRT3, SQRT3))),
            Region::Concave1 => Some(((SQRT3, 2.0 + SQRT3), (-SQRT3, -INV_SQRT3))),
            Region::Concave2 => Some(((1.0, SQRT3), (-INV_SQRT3, 0.0))),
            _ => None,
        }
    }

    /// Lower and upper y-limits of an open region at abscissa `x`.
    pub fn y_limits(self, x: f64) -> Option<(f64, f64)> {
        match self {
            Region::ConvexC => Some((convex_lower(x), x)),
            Region::Concave1 => Some((-SQRT3, concave_divider(x))),
            Region::Concave2 => Some((concave_divider(x), 0.0)),
            _ => None,
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Region {
    type Err = KiteError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "convex" | "c" | "convexc" => Ok(Region::ConvexC),
            "cv1" | "concave1" => Ok(Region::Concave1),
            "cv2" | "concave2" => Ok(Region::Concave2),
            _ => Err(KiteError::InvalidArgument(format!(
                "unknown region '{s}' (expected convex, cv1 or cv2)"
            ))),
        }
    }
}

/// Lower boundary of 𝒞: r13 = r12.
pub fn convex_lower(x: f64) -> f64 {
    -x + (x * x + 1.0).sqrt()
}

/// Quadratic envelope (lower, upper) of √(t²+1) over the convex region's range.
pub fn quadratic_bounds(t: f64) -> (f64, f64) {
    let base = t * t / 6.0 + t / 3.0;
    (base + 8.0 / 9.0, base + 17.0 / 18.0)
}

/// Curve r12 = r24 (equivalently r23 = r13) separating the concave regions'
/// admissible sides: y = −(x − 1/x)/2.
pub fn concave_divider(x: f64) -> f64 {
    -0.5 * (x - 1.0 / x)
}

fn near(a: f64, b: f64) -> bool {
    (a - b).abs() <= BOUNDARY_TOL
}

fn within(v: f64, lo: f64, hi: f64) -> bool {
    v >= lo - BOUNDARY_TOL && v <= hi + BOUNDARY_TOL
}

/// Region membership of a reduced shape. Points within 1e-12 of a defining
/// curve get a boundary tag.
pub fn classify_region(shape: ReducedShape) -> Region {
    let (x, y) = (shape.xhat, shape.yhat);
    if !(x.is_finite() && y.is_finite()) || x + y <= 0.0 {
        return Region::Outside;
    }
    if near(x, GON.xhat) && near(y, GON.yhat) {
        return Region::OnePlusThreeGon;
    }

    let lower = convex_lower(x);
    if within(x, INV_SQRT3, SQRT3) && within(y, lower, x) {
        if (near(x, INV_SQRT3) && near(y, INV_SQRT3)) || (near(x, SQRT3) && near(y, SQRT3)) {
            return Region::BoundaryRhombus;
        }
        if near(y, lower) {
            return Region::BoundaryOnePlusThree;
        }
        if near(x, SQRT3) || near(x, INV_SQRT3) {
            return Region::BoundaryRestricted;
        }
        return Region::ConvexC;
    }

    let divider = concave_divider(x);
    if within(x, 1.0, SQRT3) && within(y, divider, 0.0) {
        if near(y, divider) {
            return Region::BoundaryOnePlusThree;
        }
        if near(y, 0.0) || near(x, SQRT3) || near(x, 1.0) {
            return Region::BoundaryRestricted;
        }
        return Region::Concave2;
    }
    if within(x, SQRT3, 2.0 + SQRT3) && within(y, -SQRT3, divider) {
        if near(y, divider) {
            return Region::BoundaryOnePlusThree;
        }
        if near(y, -SQRT3) || near(x, SQRT3) {
            return Region::BoundaryRestricted;
        }
        return Region::Concave1;
    }
    Region::Outside
}

/// Mutual distances of a kite; r14 = r12 and r34 = r23 by symmetry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MutualDistances {
    pub r12: f64,
    pub r13: f64,
    pub r23: f64,
    pub r24: f64,
}

/// Inverse cubes s_ij = r_ij⁻³.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InverseCubes {
    pub s12: f64,
    pub s13: f64,
    pub s23: f64,
    pub s24: f64,
}

pub(crate) fn inv_cube(r: f64) -> f64 {
    1.0 / (r * r * r)
}

impl MutualDistances {
    pub fn inverse_cubes(&self) -> InverseCubes {
        InverseCubes {
            s12: inv_cube(self.r12),
            s13: inv_cube(self.r13),
            s23: inv_cube(self.r23),
            s24: inv_cube(self.r24),
        }
    }

    pub fn min(&self) -> f64 {
        self.r12.min(self.r13).min(self.r23).min(self.r24)
    }
}

pub fn mutual_distances_reduced(shape: ReducedShape) -> MutualDistances {
    let (x, y) = (shape.xhat, shape.yhat);
    MutualDistances {
        r12: (x * x + 1.0).sqrt(),
        r13: x + y,
        r23: (y * y + 1.0).sqrt(),
        r24: 2.0,
    }
}

/// A kite z = (a, b, c, d) with its planar embedding
/// q = (a, 0, −c, d, −b, 0, −c, −d).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FullConfig {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub planar: [f64; 8],
}

impl FullConfig {
    pub fn from_z(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self {
            a,
            b,
            c,
            d,
            planar: [a, 0.0, -c, d, -b, 0.0, -c, -d],
        }
    }

    pub fn z(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// C(z) = m1 a − m3 b − m c.
    pub fn center_of_mass(&self, masses: &MassTriple) -> f64 {
        masses.m1 * self.a - masses.m3 * self.b - masses.m * self.c
    }

    /// Î(z) = m1 a² + m3 b² + m c² + m d².
    pub fn inertia(&self, masses: &MassTriple) -> f64 {
        masses.m1 * self.a * self.a
            + masses.m3 * self.b * self.b
            + masses.m * (self.c * self.c + self.d * self.d)
    }

    pub fn distances(&self) -> MutualDistances {
        MutualDistances {
            r12: (self.a + self.c).hypot(self.d),
            r13: self.a + self.b,
            r23: (self.b - self.c).hypot(self.d),
            r24: 2.0 * self.d,
        }
    }

    /// Rescaled copy with Î = 1.
    pub fn normalized(&self, masses: &MassTriple) -> Self {
        let k = 1.0 / self.inertia(masses).sqrt();
        Self::from_z(k * self.a, k * self.b, k * self.c, k * self.d)
    }

    /// Reduced shape (x/d, y/d) with x = a + c, y = b − c.
    pub fn reduced(&self) -> ReducedShape {
        ReducedShape {
            xhat: (self.a + self.c) / self.d,
            yhat: (self.b - self.c) / self.d,
        }
    }
}

/// Applies the linear map from (x, y, d) = scale·(x̂, ŷ, 1) to z.
pub fn shape_to_full(shape: ReducedShape, masses: MassTriple, scale: f64) -> Result<FullConfig> {
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(KiteError::InvalidShape(format!("scale {scale} must be positive")));
    }
    let x = scale * shape.xhat;
    let y = scale * shape.yhat;
    let d = scale;
    let a = (1.0 - masses.m1) * x + masses.m3 * y;
    let b = masses.m1 * x + (1.0 - masses.m3) * y;
    let c = masses.m1 * x - masses.m3 * y;
    if a <= 0.0 || a + b <= 0.0 {
        return Err(KiteError::NonPositiveGeometry { a, a_plus_b: a + b });
    }
    Ok(FullConfig::from_z(a, b, c, d))
}

/// The configuration of `shape` on the normalized space (Î = 1, C = 0).
pub fn shape_to_normalized(shape: ReducedShape, masses: MassTriple) -> Result<FullConfig> {
    let unit = shape_to_full(shape, masses, 1.0)?;
    shape_to_full(shape, masses, 1.0 / unit.inertia(&masses).sqrt())
}
