//! Bookkeeping for the doubled convex core: singular-locus inventory, orbifold
//! starting angles, the linear deformation path of bending angles, and the
//! hypothesis check for bending data (weights below π, filling certificate).

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::surface::SCHEMA_VERSION;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, schemars::JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct Particle {
    pub angle: f64,
    /// Length of the particle's intersection with the convex core.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub segment_length: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, schemars::JsonSchema)]
pub enum Side {
    #[serde(rename = "+")]
    Upper,
    #[serde(rename = "-")]
    Lower,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, schemars::JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct Pleating {
    pub curve: String,
    pub side: Side,
    pub weight: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize, schemars::JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct BendingData {
    #[serde(default)]
    pub particles: Vec<Particle>,
    #[serde(default)]
    pub pleating: Vec<Pleating>,
}

fn open_interval_violations(b: &BendingData) -> Vec<String> {
    let mut v = Vec::new();
    for (i, p) in b.particles.iter().enumerate() {
        if !(p.angle > 0.0 && p.angle < PI) {
            v.push(format!("particle {i}: angle {} is outside (0, π)", p.angle));
        }
        if let Some(s) = p.segment_length {
            if !(s > 0.0 && s.is_finite()) {
                v.push(format!("particle {i}: segment length {s} must be positive"));
            }
        }
    }
    for (j, c) in b.pleating.iter().enumerate() {
        if !(c.weight > 0.0 && c.weight < PI) {
            v.push(format!("pleating curve {j} (`{}`): weight {} is outside (0, π)", c.curve, c.weight));
        }
    }
    v
}

impl BendingData {
    pub fn validate(&self) -> Result<()> {
        let v = open_interval_violations(self);
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::Bending(v))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, schemars::JsonSchema)]
#[serde(rename_all = "snake_case")]
pub enum LocusKind {
    Particle,
    Pleating,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, schemars::JsonSchema)]
pub struct SingularCurve {
    pub kind: LocusKind,
    /// Index of the particle or pleating curve it comes from.
    pub source: usize,
    pub angle: f64,
    /// Length for particle-type curves (pleating-type curves keep the length of
    /// their pleating curve, which is not part of the bending data).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub length: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize, schemars::JsonSchema)]
pub struct DoubledLocus {
    pub curves: Vec<SingularCurve>,
}

/// Singular curves of the double of the convex core: each particle gives a closed
/// curve of the same angle and twice its segment length; each pleating curve of
/// weight α gives a closed curve of angle 2α.
pub fn double_singular_locus(b: &BendingData) -> Result<DoubledLocus> {
    b.validate()?;
    let mut curves = Vec::new();
    for (i, p) in b.particles.iter().enumerate() {
        let s = p
            .segment_length
            .ok_or_else(|| Error::Domain(format!("particle {i} has no segment length")))?;
        curves.push(SingularCurve {
            kind: LocusKind::Particle,
            source: i,
            angle: p.angle,
            length: Some(2.0 * s),
        });
    }
    for (j, c) in b.pleating.iter().enumerate() {
        curves.push(SingularCurve { kind: LocusKind::Pleating, source: j, angle: 2.0 * c.weight, length: None });
    }
    Ok(DoubledLocus { curves })
}

impl DoubledLocus {
    /// Halves pleating angles and particle lengths; `template` supplies curve names and sides.
    pub fn halve(&self, template: &BendingData) -> BendingData {
        let mut out = template.clone();
        for c in &self.curves {
            match c.kind {
                LocusKind::Particle => {
                    out.particles[c.source] = Particle {
                        angle: c.angle,
                        segment_length: c.length.map(|l| l / 2.0),
                    }
                }
                LocusKind::Pleating => out.pleating[c.source].weight = c.angle / 2.0,
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, schemars::JsonSchema)]
pub struct StartAngle {
    /// kᵢ for particles, lⱼ for pleating curves.
    pub order: u64,
    pub angle: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, schemars::JsonSchema)]
pub struct OrbifoldStart {
    /// θ′ᵢ = π/kᵢ with kᵢ minimal subject to π/kᵢ ≤ θᵢ.
    pub particles: Vec<StartAngle>,
    /// α′ⱼ = π/(2lⱼ) with lⱼ minimal subject to π/(2lⱼ) ≤ αⱼ/2.
    pub pleating: Vec<StartAngle>,
}

/// Smallest integer k ≥ 1 with π/k ≤ x.
fn min_order(x: f64) -> u64 {
    let mut k = (PI / x).ceil().max(1.0) as u64;
    while k > 1 && PI / (k - 1) as f64 <= x {
        k -= 1;
    }
    while PI / k as f64 > x {
        k += 1;
    }
    k
}

pub fn orbifold_start(b: &BendingData) -> Result<OrbifoldStart> {
    b.validate()?;
    let particles = b
        .particles
        .iter()
        .map(|p| {
            let k = min_order(p.angle);
            StartAngle { order: k, angle: PI / k as f64 }
        })
        .collect();
    let pleating = b
        .pleating
        .iter()
        .map(|c| {
            // π/(2l) ≤ α/2 is π/l ≤ α
            let l = min_order(c.weight);
            StartAngle { order: l, angle: PI / (2 * l) as f64 }
        })
        .collect();
    Ok(OrbifoldStart { particles, pleating })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, schemars::JsonSchema)]
pub struct ScheduleRow {
    pub t: f64,
    /// Bending angles α_{j,t} = (1 − t)α′ⱼ + tαⱼ.
    pub angles: Vec<f64>,
    /// Cone angles 2α_{j,t} of the doubled manifold.
    pub doubled_angles: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, schemars::JsonSchema)]
pub struct Schedule {
    pub schema: String,
    pub rows: Vec<ScheduleRow>,
    /// Rows where some α_{j,t} ≥ π/2; reported, not rejected.
    pub warnings: Vec<String>,
}

pub fn deformation_path(start: &[f64], target: &[f64], steps: usize) -> Result<Schedule> {
    if steps < 2 {
        return Err(Error::Domain(format!("a path needs at least 2 steps, got {steps}")));
    }
    if start.len() != target.len() {
        return Err(Error::Domain(format!(
            "{} start angles but {} targets",
            start.len(),
            target.len()
        )));
    }
    for (j, (&a0, &a1)) in start.iter().zip(target).enumerate() {
        if !(a0 >= 0.0 && a0 <= a1 && a1.is_finite()) {
            return Err(Error::Domain(format!(
                "curve {j}: start angle {a0} must lie in [0, target {a1}]"
            )));
        }
    }
    let mut rows = Vec::with_capacity(steps);
    let mut warnings = Vec::new();
    for i in 0..steps {
        let angles: Vec<f64> = start
            .iter()
            .zip(target)
            .map(|(&a0, &a1)| match i {
                0 => a0,
                _ if i == steps - 1 => a1,
                _ => {
                    let t = i as f64 / (steps - 1) as f64;
                    (1.0 - t) * a0 + t * a1
                }
            })
            .collect();
        let t = if i == steps - 1 { 1.0 } else { i as f64 / (steps - 1) as f64 };
        for (j, a) in angles.iter().enumerate() {
            if *a >= FRAC_PI_2 {
                warnings.push(format!("t = {t}: curve {j} has bending angle {a} >= π/2"));
            }
        }
        let doubled_angles = angles.iter().map(|a| 2.0 * a).collect();
        rows.push(ScheduleRow { t, angles, doubled_angles });
    }
    Ok(Schedule { schema: SCHEMA_VERSION.into(), rows, warnings })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, schemars::JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct Face {
    pub disk: bool,
    #[serde(default)]
    pub marked_points: usize,
}

/// Complementary regions of λ₋ ∪ λ₊ as supplied by the user.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, schemars::JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct FillingCertificate {
    pub genus: u32,
    /// Number of crossings of λ₋ with λ₊.
    pub crossings: usize,
    pub faces: Vec<Face>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BendingCertificate {
    pub schema: String,
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub euler_characteristic: i64,
}

/// Accepts the data iff all angles and weights lie in (0, π), the certificate
/// satisfies V − E + F = χ(S) with E = 2V, every face is a disk with at most one
/// marked point, and the faces hold exactly the particles.
pub fn validate_bending_data(b: &BendingData, cert: &FillingCertificate) -> Result<BendingCertificate> {
    let mut v = open_interval_violations(b);
    let vertices = cert.crossings;
    let edges = 2 * vertices;
    let faces = cert.faces.len();
    let chi = 2 - 2 * cert.genus as i64;
    let euler = vertices as i64 - edges as i64 + faces as i64;
    if euler != chi {
        v.push(format!("Euler count V - E + F = {euler} differs from χ(S) = {chi}"));
    }
    for (i, f) in cert.faces.iter().enumerate() {
        if !f.disk {
            v.push(format!("face {i} is not a disk"));
        }
        if f.marked_points > 1 {
            v.push(format!("face {i} contains {} marked points", f.marked_points));
        }
    }
    let marked: usize = cert.faces.iter().map(|f| f.marked_points).sum();
    if marked != b.particles.len() {
        v.push(format!("faces hold {marked} marked points but there are {} particles", b.particles.len()));
    }
    if v.is_empty() {
        Ok(BendingCertificate {
            schema: SCHEMA_VERSION.into(),
            vertices,
            edges,
            faces,
            euler_characteristic: chi,
        })
    } else {
        Err(Error::Bending(v))
    }
}
