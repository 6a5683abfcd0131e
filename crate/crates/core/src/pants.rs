//! Singular pairs of pants as doubled truncated triangles.
//!
//! A leg is either a geodesic boundary of length L or a cone point of angle θ.
//! The half-pants is the extended triangle with a hyperideal vertex of truncation
//! length L/2 for each boundary leg and a usual vertex of angle θ/2 for each cone
//! leg; the pants is two copies glued along the three seams (the triangle's edges).
//!
//! Leg frames: every leg carries a one-parameter family of frames. The standard
//! frame sits at o with the seam leaving along +x. For a boundary leg the leg is
//! the y-axis geodesic and sliding by `s` walks along it with the pants on the
//! left; for a cone leg sliding turns the frame clockwise about the cone point.
//! Consecutive seam feet on a leg are half a leg apart.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hkernel::{HVector, Isometry};
use crate::triangle::{self, edge_between, ExtendedTriangle, VertexKind};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, schemars::JsonSchema)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Leg {
    Boundary { length: f64 },
    Cone { angle: f64 },
}

impl Leg {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Leg::Boundary { length } if !(length > 0.0 && length.is_finite()) => {
                Err(Error::Domain(format!("boundary length {length} must be positive")))
            }
            Leg::Cone { angle } if !(angle > 0.0 && angle < PI) => {
                Err(Error::Domain(format!("cone angle {angle} is outside (0, π)")))
            }
            _ => Ok(()),
        }
    }

    /// Parses `boundary:<L>` or `cone:<θ>` (also `b:`/`c:`).
    pub fn parse(s: &str) -> Result<Leg> {
        let (kind, value) = s
            .split_once(':')
            .ok_or_else(|| Error::Domain(format!("leg `{s}` is not of the form kind:value")))?;
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| Error::Domain(format!("leg `{s}` has a non-numeric value")))?;
        match kind.trim().to_ascii_lowercase().as_str() {
            "boundary" | "b" => Ok(Leg::Boundary { length: value }),
            "cone" | "c" => Ok(Leg::Cone { angle: value }),
            other => Err(Error::Domain(format!("unknown leg kind `{other}`"))),
        }
    }

    pub fn vertex_kind(&self) -> VertexKind {
        match self {
            Leg::Boundary { .. } => VertexKind::Hyperideal,
            Leg::Cone { .. } => VertexKind::Usual,
        }
    }

    /// Boundary length or cone angle.
    pub fn size(&self) -> f64 {
        match *self {
            Leg::Boundary { length } => length,
            Leg::Cone { angle } => angle,
        }
    }

    pub fn is_boundary(&self) -> bool {
        matches!(self, Leg::Boundary { .. })
    }

    /// Frame motion by `delta` along the leg.
    pub fn slide(&self, delta: f64) -> Isometry {
        match self {
            Leg::Boundary { .. } => Isometry::translate_y(-delta),
            Leg::Cone { .. } => Isometry::rotate(-delta),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, schemars::JsonSchema)]
pub struct SingularPants {
    pub legs: [Leg; 3],
    /// The half-pants; vertex i corresponds to leg i.
    pub triangle: ExtendedTriangle,
    /// Seam i joins legs i+1 and i+2.
    pub seams: [f64; 3],
}

pub fn build_pants(legs: [Leg; 3]) -> Result<SingularPants> {
    for leg in &legs {
        leg.validate()?;
    }
    let kinds = legs.map(|l| l.vertex_kind());
    let data = legs.map(|l| l.size() / 2.0);
    let triangle = triangle::solve_from_angles(kinds, data)?;
    let seams = triangle.edge_lengths;
    Ok(SingularPants { legs, triangle, seams })
}

pub fn leg_invariants(p: &SingularPants) -> [Leg; 3] {
    p.legs
}

pub fn seam_lengths(p: &SingularPants) -> [f64; 3] {
    p.seams
}

impl SingularPants {
    /// Leg invariants read back from the developed triangle.
    pub fn recomputed_legs(&self) -> Result<[Leg; 3]> {
        let mut out = self.legs;
        for (j, seg) in self
            .triangle
            .truncated_boundary()?
            .into_iter()
            .filter_map(|s| match s.kind {
                triangle::SegmentKind::TruncationArc(j) => Some((j, s)),
                _ => None,
            })
        {
            out[j] = Leg::Boundary { length: 2.0 * seg.length };
        }
        for j in 0..3 {
            if let Leg::Cone { .. } = self.legs[j] {
                out[j] = Leg::Cone { angle: 2.0 * self.triangle.angle_data[j] };
            }
        }
        Ok(out)
    }

    /// Length of the seam joining legs `a` and `b`.
    pub fn seam(&self, a: usize, b: usize) -> f64 {
        self.seams[edge_between(a, b)]
    }

    pub fn area(&self) -> f64 {
        2.0 * self.triangle.truncated_area()
    }

    /// Endpoint on leg `leg` of the seam toward leg `toward`, in the developed half-pants.
    pub fn seam_foot(&self, leg: usize, toward: usize) -> Result<HVector> {
        self.triangle.edge_end(edge_between(leg, toward), leg)
    }

    /// Frame change along the seam from leg `from` to leg `to`.
    ///
    /// The arriving frame faces back along the seam, so this is a translation by the
    /// seam length followed by a half turn.
    pub fn hop(&self, from: usize, to: usize) -> Isometry {
        Isometry::translate_x(self.seam(from, to)) * Isometry::rotate(PI)
    }

    /// Frame of leg `leg` at the foot of the seam toward `toward`, read off the
    /// developed half-pants: o goes to the foot and +x to the seam direction.
    pub fn developed_frame(&self, leg: usize, toward: usize) -> Result<Isometry> {
        let base = self.seam_foot(leg, toward)?;
        let far = self.seam_foot(toward, leg)?;
        let tangent = (far + base.scale(base.dot(&far))).normalize_pole()?;
        let mut normal = base.cross(&tangent);
        let m = nalgebra::Matrix3::from_columns(&[
            tangent.to_vector(),
            normal.to_vector(),
            base.to_vector(),
        ]);
        if m.determinant() < 0.0 {
            normal = -normal;
        }
        Isometry::new(nalgebra::Matrix3::from_columns(&[
            tangent.to_vector(),
            normal.to_vector(),
            base.to_vector(),
        ]))
    }
}
