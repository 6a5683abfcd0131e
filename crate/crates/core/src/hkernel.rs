//! Hyperboloid-model primitives in Minkowski space ℝ^{2,1}.
//!
//! The bilinear form has signature (+,+,−):
//!
//! ```text
//! ⟨u,v⟩ = u_x v_x + u_y v_y − u_z v_z
//! ```
//!
//! A point of H² is a vector with ⟨v,v⟩ = −1 and z > 0. A geodesic is encoded by
//! its unit space-like pole u (⟨u,u⟩ = +1); the geodesic is u^⊥ ∩ H². Poles are
//! also the vector form of strictly hyperideal vertices.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Normalization tolerance for points and poles.
pub const NORM_TOL: f64 = 1e-12;
/// Inputs to arccosh within this distance below 1 are clamped to 1.
pub const ACOSH_CLAMP: f64 = 1e-10;
/// |trace − 3| below this separates parabolic (or identity) from hyperbolic.
pub const PARABOLIC_TOL: f64 = 1e-9;
/// Entrywise tolerance on MᵀJM = J.
pub const ISOMETRY_TOL: f64 = 1e-10;

/// The Minkowski form J = diag(1, 1, −1).
pub fn form_matrix() -> Matrix3<f64> {
    Matrix3::from_diagonal(&Vector3::new(1.0, 1.0, -1.0))
}

/// A vector of ℝ^{2,1}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, schemars::JsonSchema)]
pub struct HVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl HVector {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    /// The base point (0,0,1) of the hyperboloid.
    pub const fn origin() -> Self {
        Self::new(0.0, 0.0, 1.0)
    }

    pub fn dot(&self, other: &HVector) -> f64 {
        self.x * other.x + self.y * other.y - self.z * other.z
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    /// Vector n with ⟨n,w⟩ = det(self, other, w); orthogonal to both arguments.
    pub fn cross(&self, other: &HVector) -> HVector {
        let c = self.to_vector().cross(&other.to_vector());
        HVector::new(c.x, c.y, -c.z)
    }

    pub fn scale(&self, s: f64) -> HVector {
        HVector::new(self.x * s, self.y * s, self.z * s)
    }

    pub fn to_vector(self) -> Vector3<f64> {
        Vector3::new(self.x, self.y, self.z)
    }

    pub fn from_vector(v: &Vector3<f64>) -> Self {
        Self::new(v.x, v.y, v.z)
    }

    /// Scale of the rounding error in ⟨v,v⟩: the squared size of the coordinates.
    fn norm_scale(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).max(1.0)
    }

    /// ⟨v,v⟩ = −1 and z > 0, up to NORM_TOL relative to the coordinate size.
    pub fn is_point(&self) -> bool {
        (self.norm_sq() + 1.0).abs() <= NORM_TOL * self.norm_scale() && self.z > 0.0
    }

    /// ⟨v,v⟩ = 1, up to NORM_TOL relative to the coordinate size.
    pub fn is_pole(&self) -> bool {
        (self.norm_sq() - 1.0).abs() <= NORM_TOL * self.norm_scale()
    }

    /// Rescale a time-like vector onto the upper sheet of the hyperboloid.
    pub fn normalize_point(&self) -> Result<HVector> {
        let q = self.norm_sq();
        if !(q < 0.0) {
            return Err(Error::Domain(format!("vector {self:?} is not time-like")));
        }
        let s = (-q).sqrt();
        let s = if self.z < 0.0 { -s } else { s };
        Ok(self.scale(1.0 / s))
    }

    /// Rescale a space-like vector to a unit pole, keeping its direction.
    pub fn normalize_pole(&self) -> Result<HVector> {
        let q = self.norm_sq();
        if !(q > 0.0) {
            return Err(Error::Domain(format!("vector {self:?} is not space-like")));
        }
        Ok(self.scale(1.0 / q.sqrt()))
    }

    fn check_point(&self, what: &str) -> Result<()> {
        if self.is_point() {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "{what} {self:?} is not a normalized point (⟨v,v⟩ = {})",
                self.norm_sq()
            )))
        }
    }

    fn check_pole(&self, what: &str) -> Result<()> {
        if self.is_pole() {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "{what} {self:?} is not a normalized pole (⟨v,v⟩ = {})",
                self.norm_sq()
            )))
        }
    }
}

impl Add for HVector {
    type Output = HVector;
    fn add(self, o: HVector) -> HVector {
        HVector::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for HVector {
    type Output = HVector;
    fn sub(self, o: HVector) -> HVector {
        HVector::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for HVector {
    type Output = HVector;
    fn neg(self) -> HVector {
        HVector::new(-self.x, -self.y, -self.z)
    }
}

/// arccosh with inputs in [1 − ACOSH_CLAMP, 1) clamped to 1.
pub fn acosh_clamped(x: f64) -> Result<f64> {
    if x >= 1.0 {
        Ok(x.acosh())
    } else if x >= 1.0 - ACOSH_CLAMP {
        Ok(0.0)
    } else {
        Err(Error::Domain(format!("arccosh argument {x} is below 1")))
    }
}

pub fn dist_point_point(p: &HVector, q: &HVector) -> Result<f64> {
    p.check_point("first point")?;
    q.check_point("second point")?;
    acosh_clamped(-p.dot(q))
}

pub fn dist_point_line(p: &HVector, u: &HVector) -> Result<f64> {
    p.check_point("point")?;
    u.check_pole("pole")?;
    Ok(p.dot(u).abs().asinh())
}

/// Relative position of two geodesics given by their poles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "relation", content = "value", rename_all = "snake_case")]
pub enum LineRelation {
    /// Angle in (0, π/2].
    Intersecting(f64),
    Asymptotic,
    /// Length of the common perpendicular.
    Ultraparallel(f64),
}

pub fn line_line_relation(u: &HVector, v: &HVector) -> Result<LineRelation> {
    u.check_pole("first pole")?;
    v.check_pole("second pole")?;
    if (*u - *v).to_vector().norm() < 1e-12 || (*u + *v).to_vector().norm() < 1e-12 {
        return Err(Error::Degenerate("poles are equal up to sign".into()));
    }
    let c = u.dot(v).abs();
    if (c - 1.0).abs() <= ACOSH_CLAMP {
        Ok(LineRelation::Asymptotic)
    } else if c < 1.0 {
        Ok(LineRelation::Intersecting(c.acos()))
    } else {
        Ok(LineRelation::Ultraparallel(c.acosh()))
    }
}

/// Intersection point of two crossing geodesics.
pub fn line_intersection(u: &HVector, v: &HVector) -> Result<HVector> {
    u.cross(v).normalize_point()
}

/// Interior angle at `p` of the triangle with vertices p, q, r.
pub fn vertex_angle(p: &HVector, q: &HVector, r: &HVector) -> Result<f64> {
    for v in [p, q, r] {
        v.check_point("vertex")?;
    }
    let u = *q + p.scale(p.dot(q));
    let w = *r + p.scale(p.dot(r));
    let (nu, nw) = (u.norm_sq(), w.norm_sq());
    if nu <= 0.0 || nw <= 0.0 {
        return Err(Error::Degenerate("coincident triangle vertices".into()));
    }
    Ok((u.dot(&w) / (nu * nw).sqrt()).clamp(-1.0, 1.0).acos())
}

/// Area of a hyperbolic triangle with the given interior angles.
pub fn triangle_area(angles: [f64; 3]) -> Result<f64> {
    for a in angles {
        if !(0.0..PI).contains(&a) {
            return Err(Error::Domain(format!("angle {a} is outside [0, π)")));
        }
    }
    let sum: f64 = angles.iter().sum();
    if sum >= PI {
        return Err(Error::NotHyperbolic { sum });
    }
    Ok(PI - sum)
}

/// Conjugacy type of an orientation-preserving isometry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IsometryKind {
    Identity,
    Elliptic,
    Parabolic,
    Hyperbolic,
}

impl std::fmt::Display for IsometryKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            IsometryKind::Identity => "identity",
            IsometryKind::Elliptic => "elliptic",
            IsometryKind::Parabolic => "parabolic",
            IsometryKind::Hyperbolic => "hyperbolic",
        };
        f.write_str(s)
    }
}

/// An element of SO⁺(2,1), acting on column vectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Isometry(pub Matrix3<f64>);

impl Isometry {
    pub fn rows(&self) -> [[f64; 3]; 3] {
        let m = &self.0;
        [0, 1, 2].map(|i| [m[(i, 0)], m[(i, 1)], m[(i, 2)]])
    }
}

impl schemars::JsonSchema for Isometry {
    fn schema_name() -> std::borrow::Cow<'static, str> {
        "Isometry".into()
    }

    fn json_schema(generator: &mut schemars::SchemaGenerator) -> schemars::Schema {
        <[[f64; 3]; 3]>::json_schema(generator)
    }
}

/// Serialized as a row-major 3×3 array.
impl serde::Serialize for Isometry {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

impl Isometry {
    pub fn identity() -> Self {
        Isometry(Matrix3::identity())
    }

    /// Checks MᵀJM = J, that the upper sheet is preserved and that det M > 0.
    ///
    /// The form defect is measured relative to the squared entry size, so long
    /// products of accurate factors are accepted.
    pub fn new(m: Matrix3<f64>) -> Result<Self> {
        let checked = Self::check_form(m)?;
        if m.determinant() <= 0.0 {
            return Err(Error::Domain("matrix reverses orientation".into()));
        }
        Ok(checked)
    }

    fn check_form(m: Matrix3<f64>) -> Result<Self> {
        let j = form_matrix();
        let scale = m.abs().max().powi(2).max(1.0);
        let defect = (m.transpose() * j * m - j).abs().max() / scale;
        if !(defect <= ISOMETRY_TOL) {
            return Err(Error::Domain(format!(
                "matrix does not preserve the Minkowski form (defect {defect:e})"
            )));
        }
        if m[(2, 2)] <= 0.0 {
            return Err(Error::Domain("matrix swaps the sheets of the hyperboloid".into()));
        }
        Ok(Isometry(m))
    }

    /// Translation by `t` along the x-axis geodesic {y = 0}, moving o toward +x.
    pub fn translate_x(t: f64) -> Self {
        let (c, s) = (t.cosh(), t.sinh());
        Isometry(Matrix3::new(c, 0.0, s, 0.0, 1.0, 0.0, s, 0.0, c))
    }

    /// Translation by `t` along the y-axis geodesic {x = 0}, moving o toward +y.
    pub fn translate_y(t: f64) -> Self {
        let (c, s) = (t.cosh(), t.sinh());
        Isometry(Matrix3::new(1.0, 0.0, 0.0, 0.0, c, s, 0.0, s, c))
    }

    /// Counterclockwise rotation by `phi` about o.
    pub fn rotate(phi: f64) -> Self {
        let (c, s) = (phi.cos(), phi.sin());
        Isometry(Matrix3::new(c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0))
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.0
    }

    pub fn apply(&self, v: &HVector) -> HVector {
        HVector::from_vector(&(self.0 * v.to_vector()))
    }

    pub fn compose(&self, other: &Isometry) -> Isometry {
        Isometry(self.0 * other.0)
    }

    /// Inverse via J Mᵀ J, exact for form-preserving matrices.
    pub fn inverse(&self) -> Isometry {
        let j = form_matrix();
        Isometry(j * self.0.transpose() * j)
    }

    pub fn trace(&self) -> f64 {
        self.0.trace()
    }

    pub fn kind(&self) -> IsometryKind {
        let t = self.trace();
        if (t - 3.0).abs() < PARABOLIC_TOL {
            if (self.0 - Matrix3::identity()).abs().max() < 1e-9 {
                IsometryKind::Identity
            } else {
                IsometryKind::Parabolic
            }
        } else if t < 3.0 {
            IsometryKind::Elliptic
        } else {
            IsometryKind::Hyperbolic
        }
    }
}

impl Mul for Isometry {
    type Output = Isometry;
    fn mul(self, o: Isometry) -> Isometry {
        self.compose(&o)
    }
}

/// Translation length together with the conjugacy type.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Translation {
    pub length: f64,
    pub kind: IsometryKind,
}

/// Translation length from the trace.
///
/// Only form preservation and the sheet are re-checked: for long products the
/// determinant is dominated by cancellation error, while the trace stays accurate.
pub fn translation_length(m: &Isometry) -> Result<Translation> {
    let checked = Isometry::check_form(m.0)?;
    let kind = checked.kind();
    let length = match kind {
        IsometryKind::Hyperbolic => ((checked.trace() - 1.0) / 2.0).acosh(),
        _ => 0.0,
    };
    Ok(Translation { length, kind })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn right_angle_at_origin() {
        let o = HVector::origin();
        let a = HVector::new(1f64.sinh(), 0.0, 1f64.cosh());
        let b = HVector::new(0.0, 2f64.sinh(), 2f64.cosh());
        assert_abs_diff_eq!(vertex_angle(&o, &a, &b).unwrap(), std::f64::consts::FRAC_PI_2, epsilon = 1e-12);
        // cos C = tanh a / tanh c in a right triangle; c from the hyperbolic Pythagoras law
        let c = (1f64.cosh() * 2f64.cosh()).acosh();
        assert_abs_diff_eq!(vertex_angle(&a, &o, &b).unwrap().cos(), 1f64.tanh() / c.tanh(), epsilon = 1e-12);
    }

    #[test]
    fn point_point_examples() {
        let o = HVector::origin();
        assert_eq!(dist_point_point(&o, &o).unwrap(), 0.0);
        let q = HVector::new(0.0, 1f64.sinh(), 1f64.cosh());
        assert_abs_diff_eq!(dist_point_point(&o, &q).unwrap(), 1.0, epsilon = 1e-12);
        let p = HVector::new(2f64.sinh(), 0.0, 2f64.cosh());
        assert_abs_diff_eq!(dist_point_point(&p, &o).unwrap(), 2.0, epsilon = 1e-12);
    }

    #[test]
    fn point_line_examples() {
        let o = HVector::origin();
        let u = HVector::new(1.0, 0.0, 0.0);
        assert_eq!(dist_point_line(&o, &u).unwrap(), 0.0);
        let u1 = HVector::new(1f64.cosh(), 0.0, 1f64.sinh());
        assert_abs_diff_eq!(dist_point_line(&o, &u1).unwrap(), 1.0, epsilon = 1e-12);
        let p = HVector::new(0.0, 1f64.sinh(), 1f64.cosh());
        assert_abs_diff_eq!(dist_point_line(&p, &u).unwrap(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn unnormalized_inputs_are_rejected() {
        let bad = HVector::new(0.0, 0.0, 2.0);
        assert!(matches!(dist_point_point(&bad, &HVector::origin()), Err(Error::Domain(_))));
        assert!(matches!(
            dist_point_line(&HVector::origin(), &HVector::new(2.0, 0.0, 0.0)),
            Err(Error::Domain(_))
        ));
        // lower sheet
        let lower = HVector::new(0.0, 0.0, -1.0);
        assert!(dist_point_point(&lower, &HVector::origin()).is_err());
    }

    #[test]
    fn line_relations() {
        let ex = HVector::new(1.0, 0.0, 0.0);
        let ey = HVector::new(0.0, 1.0, 0.0);
        match line_line_relation(&ex, &ey).unwrap() {
            LineRelation::Intersecting(a) => assert_abs_diff_eq!(a, PI / 2.0, epsilon = 1e-15),
            r => panic!("{r:?}"),
        }
        let u = HVector::new(0.5f64.cosh(), 0.0, 0.5f64.sinh());
        let v = HVector::new(-(0.5f64.cosh()), 0.0, 0.5f64.sinh());
        match line_line_relation(&u, &v).unwrap() {
            LineRelation::Ultraparallel(d) => assert_abs_diff_eq!(d, 1.0, epsilon = 1e-12),
            r => panic!("{r:?}"),
        }
        // pole with ⟨u,v⟩ = √2: (√2, 0, 1) has norm 2 − 1 = 1
        let w = HVector::new(2f64.sqrt(), 0.0, 1.0);
        match line_line_relation(&ex, &w).unwrap() {
            LineRelation::Ultraparallel(d) => {
                assert_abs_diff_eq!(d, 2f64.sqrt().acosh(), epsilon = 1e-12);
                assert_abs_diff_eq!(d, 0.881373587019543, epsilon = 1e-12);
            }
            r => panic!("{r:?}"),
        }
        assert!(matches!(line_line_relation(&ex, &-ex), Err(Error::Degenerate(_))));
        // asymptotic: poles (1,0,0) and (1, 1, 1)/… share an ideal endpoint
        let a = HVector::new(1.0, 1.0, 1.0);
        assert!(a.is_pole());
        assert_eq!(line_line_relation(&ey, &a).unwrap(), LineRelation::Asymptotic);
    }

    #[test]
    fn translation_length_examples() {
        let id = translation_length(&Isometry::identity()).unwrap();
        assert_eq!(id.length, 0.0);
        assert_eq!(id.kind, IsometryKind::Identity);

        let m = Isometry::translate_y(2.0);
        let t = translation_length(&m).unwrap();
        assert_eq!(t.kind, IsometryKind::Hyperbolic);
        assert_abs_diff_eq!(t.length, 2.0, epsilon = 1e-12);

        let r = translation_length(&Isometry::rotate(PI)).unwrap();
        assert_eq!(r.kind, IsometryKind::Elliptic);
        assert_eq!(r.length, 0.0);

        let bad = Isometry(Matrix3::new(2.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0));
        assert!(matches!(translation_length(&bad), Err(Error::Domain(_))));
    }

    #[test]
    fn parabolic_classification() {
        // rotation generator plus boost generator is nilpotent
        let n = Matrix3::new(0.0, -1.0, 1.0, 1.0, 0.0, 0.0, 1.0, 0.0, 0.0);
        let m = Matrix3::identity() + n * 0.3 + n * n * 0.045;
        let iso = Isometry::new(m).unwrap();
        assert_eq!(iso.kind(), IsometryKind::Parabolic);
        assert_eq!(translation_length(&iso).unwrap().length, 0.0);
    }

    #[test]
    fn triangle_area_examples() {
        assert_abs_diff_eq!(triangle_area([PI / 4.0; 3]).unwrap(), PI / 4.0, epsilon = 1e-15);
        assert_eq!(triangle_area([0.0; 3]).unwrap(), PI);
        assert!(matches!(triangle_area([PI / 3.0; 3]), Err(Error::NotHyperbolic { .. })));
    }

    #[test]
    fn cross_is_orthogonal() {
        let a = HVector::new(0.3, -1.2, 0.4);
        let b = HVector::new(2.0, 0.1, 1.7);
        let c = a.cross(&b);
        assert_abs_diff_eq!(c.dot(&a), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(c.dot(&b), 0.0, epsilon = 1e-12);
    }
}
