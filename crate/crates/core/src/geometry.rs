//! Convex hard bodies: balls, disks and spherocylinders.
//!
//! Every supported body is a sphere-swept segment (a ball or disk is a swept
//! point), so overlap reduces to a closed-form segment distance. Bodies live
//! in a body frame centered at the origin with the spherocylinder axis along
//! +z; planar bodies occupy the z = 0 plane.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use nalgebra::{Unit, UnitQuaternion, Vector3};
use rand::Rng;
use rand_distr::StandardNormal;

use crate::tolerances;
use crate::{Error, Result};

pub type Point = Vector3<f64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ShapeKind {
    Ball,
    Disk,
    Spherocylinder,
}

impl ShapeKind {
    pub fn name(self) -> &'static str {
        match self {
            ShapeKind::Ball => "ball",
            ShapeKind::Disk => "disk",
            ShapeKind::Spherocylinder => "spherocylinder",
        }
    }
}

/// A convex hard body. Construct through [`Shape::ball`], [`Shape::disk`],
/// [`Shape::spherocylinder`] or by parsing the `kind:key=value` grammar.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Shape {
    kind: ShapeKind,
    radius: f64,
    length: f64,
}

fn check_radius(radius: f64) -> Result<()> {
    if radius.is_finite() && radius > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!("radius must be finite and > 0, got {radius}")))
    }
}

impl Shape {
    pub fn ball(radius: f64) -> Result<Self> {
        check_radius(radius)?;
        Ok(Self {
            kind: ShapeKind::Ball,
            radius,
            length: 0.0,
        })
    }

    pub fn disk(radius: f64) -> Result<Self> {
        check_radius(radius)?;
        Ok(Self {
            kind: ShapeKind::Disk,
            radius,
            length: 0.0,
        })
    }

    pub fn spherocylinder(radius: f64, length: f64) -> Result<Self> {
        check_radius(radius)?;
        if !(length.is_finite() && length >= 0.0) {
            return Err(Error::invalid(format!("length must be finite and >= 0, got {length}")));
        }
        Ok(Self {
            kind: ShapeKind::Spherocylinder,
            radius,
            length,
        })
    }

    pub fn kind(&self) -> ShapeKind {
        self.kind
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Cylinder length of a spherocylinder; zero otherwise.
    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn dim(&self) -> u8 {
        match self.kind {
            ShapeKind::Disk => 2,
            ShapeKind::Ball | ShapeKind::Spherocylinder => 3,
        }
    }

    /// Radius of the smallest ball about the center containing the body.
    pub fn bounding_radius(&self) -> f64 {
        self.radius + 0.5 * self.length
    }

    /// Whether orientation matters for overlap.
    pub fn is_anisotropic(&self) -> bool {
        self.length > 0.0
    }

    /// Isotropic shapes with a single radius (balls, disks, zero-length
    /// spherocylinders).
    pub fn is_round(&self) -> bool {
        self.length == 0.0
    }

    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if !(factor.is_finite() && factor > 0.0) {
            return Err(Error::invalid(format!("scale factor must be > 0, got {factor}")));
        }
        Ok(Self {
            kind: self.kind,
            radius: self.radius * factor,
            length: self.length * factor,
        })
    }

    /// Body-frame segment endpoints of the swept core.
    fn core(&self) -> (Point, Point) {
        let h = 0.5 * self.length;
        (Vector3::new(0.0, 0.0, -h), Vector3::new(0.0, 0.0, h))
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ShapeKind::Spherocylinder => write!(f, "spherocylinder:r={},l={}", self.radius, self.length),
            kind => write!(f, "{}:r={}", kind.name(), self.radius),
        }
    }
}

impl FromStr for Shape {
    type Err = Error;

    /// `ball:r=<f>`, `disk:r=<f>`, `spherocylinder:r=<f>,l=<f>`; no whitespace.
    fn from_str(spec: &str) -> Result<Self> {
        let (kind_str, params) = spec
            .split_once(':')
            .ok_or_else(|| Error::parse(0, spec, "expected `<kind>:<key>=<value>,...`"))?;
        let kind = match kind_str {
            "ball" => ShapeKind::Ball,
            "disk" => ShapeKind::Disk,
            "spherocylinder" => ShapeKind::Spherocylinder,
            other => return Err(Error::parse(0, other, "unsupported shape kind")),
        };
        let allowed: &[&str] = match kind {
            ShapeKind::Spherocylinder => &["r", "l"],
            _ => &["r"],
        };

        let mut radius = None;
        let mut length = None;
        let mut offset = kind_str.len() + 1;
        for item in params.split(',') {
            let position = offset;
            offset += item.len() + 1;
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::parse(position, item, "expected `<key>=<value>`"))?;
            if !allowed.contains(&key) {
                return Err(Error::parse(position, item, format!("unknown key `{key}` for {}", kind.name())));
            }
            let is_decimal = !value.is_empty()
                && value
                    .chars()
                    .all(|c| c.is_ascii_digit() || matches!(c, '.' | '-' | '+' | 'e' | 'E'));
            let number: f64 = match value.parse() {
                Ok(v) if is_decimal => v,
                _ => return Err(Error::parse(position, item, "value is not a decimal number")),
            };
            let slot = if key == "r" { &mut radius } else { &mut length };
            if slot.replace(number).is_some() {
                return Err(Error::parse(position, item, format!("duplicate key `{key}`")));
            }
            match key {
                "r" if !(number > 0.0 && number.is_finite()) => {
                    return Err(Error::parse(position, item, "radius must be > 0"));
                }
                "l" if !(number >= 0.0 && number.is_finite()) => {
                    return Err(Error::parse(position, item, "length must be >= 0"));
                }
                _ => {}
            }
        }

        let radius = radius.ok_or_else(|| Error::parse(spec.len(), spec, "missing key `r`"))?;
        match kind {
            ShapeKind::Ball => Shape::ball(radius),
            ShapeKind::Disk => Shape::disk(radius),
            ShapeKind::Spherocylinder => {
                let length = length.ok_or_else(|| Error::parse(spec.len(), spec, "missing key `l`"))?;
                Shape::spherocylinder(radius, length)
            }
        }
    }
}

/// Position and orientation of a body. Planar poses rotate about +z and keep
/// z = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pose {
    pub position: Point,
    pub orientation: UnitQuaternion<f64>,
}

impl Default for Pose {
    fn default() -> Self {
        Self::identity()
    }
}

impl Pose {
    pub fn identity() -> Self {
        Self {
            position: Vector3::zeros(),
            orientation: UnitQuaternion::identity(),
        }
    }

    pub fn new(position: Point, orientation: UnitQuaternion<f64>) -> Self {
        Self { position, orientation }
    }

    pub fn at(x: f64, y: f64, z: f64) -> Self {
        Self::new(Vector3::new(x, y, z), UnitQuaternion::identity())
    }

    pub fn planar(x: f64, y: f64, angle: f64) -> Self {
        Self::new(
            Vector3::new(x, y, 0.0),
            UnitQuaternion::from_axis_angle(&Vector3::z_axis(), angle),
        )
    }

    /// Pose whose body +z axis points along `axis`.
    pub fn with_axis(position: Point, axis: Point) -> Result<Self> {
        let axis = Unit::try_new(axis, 1e-300).ok_or_else(|| Error::invalid("zero axis vector"))?;
        let rotation = UnitQuaternion::rotation_between_axis(&Vector3::z_axis(), &axis)
            .unwrap_or_else(|| UnitQuaternion::from_axis_angle(&Vector3::x_axis(), PI));
        Ok(Self::new(position, rotation))
    }

    pub fn transform(&self, body_point: &Point) -> Point {
        self.position + self.orientation * body_point
    }
}

/// World-frame swept segment of a posed body.
pub(crate) fn posed_core(shape: &Shape, pose: &Pose) -> (Point, Point) {
    let (a, b) = shape.core();
    (pose.transform(&a), pose.transform(&b))
}

fn normalized_direction(shape: &Shape, direction: &Point) -> Result<Point> {
    let d = if shape.dim() == 2 {
        Vector3::new(direction.x, direction.y, 0.0)
    } else {
        *direction
    };
    let norm = d.norm();
    if !(norm > 0.0 && norm.is_finite()) {
        return Err(Error::invalid("support direction must be a non-zero finite vector"));
    }
    Ok(d / norm)
}

/// Point of the posed body with maximal projection on `direction`.
pub fn support_point(shape: &Shape, pose: &Pose, direction: &Point) -> Result<Point> {
    let d = normalized_direction(shape, direction)?;
    let (a, b) = posed_core(shape, pose);
    let end = if (b - a).dot(&d) >= 0.0 { b } else { a };
    Ok(end + shape.radius * d)
}

/// Squared distance between segments [p1, q1] and [p2, q2].
pub fn segment_distance_sq(p1: &Point, q1: &Point, p2: &Point, q2: &Point) -> f64 {
    let d1 = q1 - p1;
    let d2 = q2 - p2;
    let r = p1 - p2;
    let a = d1.norm_squared();
    let e = d2.norm_squared();
    let f = d2.dot(&r);
    const EPS: f64 = 1e-300;

    let (s, t) = if a <= EPS && e <= EPS {
        (0.0, 0.0)
    } else if a <= EPS {
        (0.0, (f / e).clamp(0.0, 1.0))
    } else {
        let c = d1.dot(&r);
        if e <= EPS {
            ((-c / a).clamp(0.0, 1.0), 0.0)
        } else {
            let b = d1.dot(&d2);
            let denom = a * e - b * b;
            let mut s = if denom > 0.0 {
                ((b * f - c * e) / denom).clamp(0.0, 1.0)
            } else {
                0.0
            };
            let mut t = (b * s + f) / e;
            if t < 0.0 {
                t = 0.0;
                s = (-c / a).clamp(0.0, 1.0);
            } else if t > 1.0 {
                t = 1.0;
                s = ((b - c) / a).clamp(0.0, 1.0);
            }
            (s, t)
        }
    };
    let c1 = p1 + d1 * s;
    let c2 = p2 + d2 * t;
    (c1 - c2).norm_squared()
}

/// True iff the interiors of the two posed bodies intersect. Tangent bodies
/// do not overlap.
pub fn overlap(a: &Shape, pa: &Pose, b: &Shape, pb: &Pose) -> Result<bool> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(a.dim(), b.dim()));
    }
    let (a0, a1) = posed_core(a, pa);
    let (b0, b1) = posed_core(b, pb);
    let contact = a.radius + b.radius;
    Ok(segment_distance_sq(&a0, &a1, &b0, &b1) < contact * contact)
}

/// Result of the support-function separation search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SupportTest {
    /// A unit direction `n` with `max_A n·x < min_B n·x`, and the gap.
    Separated { direction: Point, gap: f64 },
    /// No separating direction exists (the search reached the origin of the
    /// Minkowski difference).
    Overlapping,
}

/// Overlap decided only through support points, by Gilbert's descent on the
/// Minkowski difference A − B. Independent of the closed-form segment test
/// used by [`overlap`] and kept as its cross-check.
pub fn support_separation(a: &Shape, pa: &Pose, b: &Shape, pb: &Pose) -> Result<SupportTest> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(a.dim(), b.dim()));
    }
    let diff_support = |d: &Point| -> Result<Point> { Ok(support_point(a, pa, d)? - support_point(b, pb, &-d)?) };
    let scale = a.bounding_radius() + b.bounding_radius();
    let eps = 1e-12 * scale;

    let mut x = pa.position - pb.position;
    if x.norm() <= eps {
        x = diff_support(&Vector3::x())?;
    }
    for _ in 0..100_000 {
        let norm = x.norm();
        if norm <= eps {
            return Ok(SupportTest::Overlapping);
        }
        // w minimizes x·z over z ∈ A − B
        let w = diff_support(&-x)?;
        let lower = x.dot(&w) / norm;
        if lower > 0.0 {
            // every z ∈ A − B satisfies n·z ≥ lower with n = x/|x|, so n
            // points from B towards A; report the direction from A to B.
            return Ok(SupportTest::Separated {
                direction: -x / norm,
                gap: lower,
            });
        }
        let step = x - w;
        let denom = step.norm_squared();
        if denom <= 0.0 {
            return Ok(SupportTest::Overlapping);
        }
        let t = (x.dot(&step) / denom).clamp(0.0, 1.0);
        x -= step * t;
    }
    Ok(SupportTest::Overlapping)
}

/// Closed-form intrinsic-volume data of a body.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinkowskiData {
    /// Volume (3D) or area (2D).
    pub volume: f64,
    /// Surface area (3D) or perimeter (2D).
    pub surface: f64,
    /// ∫H dA with H = (κ1 + κ2)/2; 3D only.
    pub mean_curvature_integral: Option<f64>,
    /// ∫K dA in 3D, ∫κ ds in 2D.
    pub euler_integral: f64,
}

pub fn minkowski_functionals(shape: &Shape) -> MinkowskiData {
    let r = shape.radius;
    let l = shape.length;
    match shape.kind {
        ShapeKind::Disk => MinkowskiData {
            volume: PI * r * r,
            surface: 2.0 * PI * r,
            mean_curvature_integral: None,
            euler_integral: 2.0 * PI,
        },
        ShapeKind::Ball | ShapeKind::Spherocylinder => MinkowskiData {
            volume: PI * r * r * l + 4.0 / 3.0 * PI * r * r * r,
            surface: 2.0 * PI * r * l + 4.0 * PI * r * r,
            // mantle: H = 1/(2r) over 2πrl; caps: H = 1/r over 4πr²
            mean_curvature_integral: Some(PI * l + 4.0 * PI * r),
            euler_integral: 4.0 * PI,
        },
    }
}

/// Principal curvatures at a body-frame surface point (outward normal
/// convention). Three-dimensional bodies return two values, disks one.
pub fn principal_curvatures(shape: &Shape, surface_point: &Point) -> Result<Vec<f64>> {
    let r = shape.radius;
    let tol = tolerances::SURFACE * r;
    let h = 0.5 * shape.length;
    if shape.dim() == 2 && surface_point.z.abs() > tol {
        return Err(Error::invalid("point is off the plane of a planar body"));
    }
    let t = surface_point.z.clamp(-h, h);
    let axial = Vector3::new(0.0, 0.0, t);
    let dist = (surface_point - axial).norm();
    if (dist - r).abs() > tol {
        return Err(Error::invalid(format!(
            "point is not on the surface (distance {:e} from it)",
            (dist - r).abs()
        )));
    }
    Ok(match shape.dim() {
        2 => vec![1.0 / r],
        _ if surface_point.z.abs() < h => vec![1.0 / r, 0.0],
        _ => vec![1.0 / r, 1.0 / r],
    })
}

/// A surface point drawn uniformly with respect to area.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceSample {
    pub point: Point,
    pub normal: Point,
    /// Total surface measure (area in 3D, perimeter in 2D); carried exactly.
    pub total_measure: f64,
}

fn unit_sphere_point<R: Rng + ?Sized>(rng: &mut R) -> Point {
    loop {
        let v = Vector3::new(
            rng.sample::<f64, _>(StandardNormal),
            rng.sample::<f64, _>(StandardNormal),
            rng.sample::<f64, _>(StandardNormal),
        );
        let n = v.norm();
        if n > 1e-12 {
            return v / n;
        }
    }
}

/// Body-frame surface sample with outward normal.
pub fn surface_sample<R: Rng + ?Sized>(shape: &Shape, rng: &mut R) -> SurfaceSample {
    let r = shape.radius;
    let total_measure = minkowski_functionals(shape).surface;
    match shape.kind {
        ShapeKind::Disk => {
            let phi = rng.random::<f64>() * 2.0 * PI;
            let normal = Vector3::new(phi.cos(), phi.sin(), 0.0);
            SurfaceSample {
                point: normal * r,
                normal,
                total_measure,
            }
        }
        ShapeKind::Ball | ShapeKind::Spherocylinder => {
            let l = shape.length;
            let mantle = 2.0 * PI * r * l;
            if rng.random::<f64>() * total_measure < mantle {
                let phi = rng.random::<f64>() * 2.0 * PI;
                let z = (rng.random::<f64>() - 0.5) * l;
                let normal = Vector3::new(phi.cos(), phi.sin(), 0.0);
                SurfaceSample {
                    point: normal * r + Vector3::new(0.0, 0.0, z),
                    normal,
                    total_measure,
                }
            } else {
                let normal = unit_sphere_point(rng);
                let shift = 0.5 * l * normal.z.signum();
                SurfaceSample {
                    point: normal * r + Vector3::new(0.0, 0.0, shift),
                    normal,
                    total_measure,
                }
            }
        }
    }
}

/// Angle between the outward normals of two spherical (or circular) surfaces
/// along their intersection, `arccos[(Ra² + Rb² − d²) / (2 Ra Rb)]`.
///
/// Tangent configurations (d = Ra + Rb or d = |Ra − Rb|) are accepted and give
/// π and 0 respectively.
pub fn intersection_angle(a: &Shape, pa: &Pose, b: &Shape, pb: &Pose) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(a.dim(), b.dim()));
    }
    if !a.is_round() || !b.is_round() {
        return Err(Error::invalid("intersection angle is defined for balls and disks only"));
    }
    let (ra, rb) = (a.radius, b.radius);
    let d = (pa.position - pb.position).norm();
    let rel = 1e-12 * (ra + rb);
    if d <= 0.0 || d > ra + rb + rel || d < (ra - rb).abs() - rel {
        return Err(Error::NoIntersection {
            distance: d,
            radius_a: ra,
            radius_b: rb,
        });
    }
    let cos = (ra * ra + rb * rb - d * d) / (2.0 * ra * rb);
    Ok(cos.clamp(-1.0, 1.0).acos())
}

/// Haar-uniform orientation: Gaussian quaternions in 3D, a uniform angle
/// about +z in 2D.
pub fn random_orientation<R: Rng + ?Sized>(dim: u8, rng: &mut R) -> UnitQuaternion<f64> {
    if dim == 2 {
        let angle = rng.random::<f64>() * 2.0 * PI;
        return UnitQuaternion::from_axis_angle(&Vector3::z_axis(), angle);
    }
    loop {
        let q = nalgebra::Quaternion::new(
            rng.sample::<f64, _>(StandardNormal),
            rng.sample::<f64, _>(StandardNormal),
            rng.sample::<f64, _>(StandardNormal),
            rng.sample::<f64, _>(StandardNormal),
        );
        if q.norm() > 1e-12 {
            return UnitQuaternion::from_quaternion(q);
        }
    }
}
