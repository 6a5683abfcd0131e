//! Marked cone surfaces, pants decompositions, Fenchel-Nielsen coordinates and
//! assembly of the glued geometry.
//!
//! A decomposition lists internal curves by name and pieces as triples of leg
//! references. Each curve appears in exactly two leg slots; the first occurrence
//! (in piece order, then slot order) is side A and the second is side B.
//!
//! Twist convention. Every boundary leg carries a position coordinate measured in
//! the leg-frame model of [`crate::pants`]. Position 0 is the reference seam foot:
//! the foot toward the other side of the same curve when both sides lie in one
//! piece, and otherwise the foot toward the next slot (cyclically). The other seam
//! foot on the leg sits at half the boundary length. A point at position `t` on
//! side A is glued to the point at position `-d - t` on side B, so a twist equal
//! to the curve length is one full Dehn twist.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hkernel::Isometry;
use crate::pants::{build_pants, Leg, SingularPants};

/// Schema tag written into every file.
pub const SCHEMA_VERSION: &str = "st-1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, schemars::JsonSchema)]
pub struct MarkedSurface {
    pub genus: u32,
    pub cone_angles: Vec<f64>,
}

impl MarkedSurface {
    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64
    }

    pub fn cone_count(&self) -> usize {
        self.cone_angles.len()
    }
}

/// Gauss-Bonnet area Σ(2π − θᵢ) − 2πχ(S) of any admissible metric.
pub fn admissible_area(s: &MarkedSurface) -> Result<f64> {
    for (i, &t) in s.cone_angles.iter().enumerate() {
        if !(t > 0.0 && t < PI) {
            return Err(Error::Domain(format!("cone angle x{} = {t} is outside (0, π)", i + 1)));
        }
    }
    let defect: f64 = s.cone_angles.iter().map(|t| 2.0 * PI - t).sum();
    let area = defect - 2.0 * PI * s.euler_characteristic() as f64;
    if area > 0.0 {
        Ok(area)
    } else {
        Err(Error::Inadmissible { area })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LegRef {
    /// Index into the curve list.
    Curve(usize),
    /// Index into the cone-point list (0-based; written `x1` for index 0).
    Cone(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Piece {
    pub legs: [LegRef; 3],
}

#[derive(Debug, Clone, PartialEq)]
pub struct PantsDecomposition {
    pub curves: Vec<String>,
    pub pieces: Vec<Piece>,
}

/// A leg slot of a piece.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, schemars::JsonSchema)]
pub struct SlotRef {
    pub piece: usize,
    pub slot: usize,
}

impl PantsDecomposition {
    /// Slots referencing `curve`, in side order.
    pub fn sides(&self, curve: usize) -> Vec<SlotRef> {
        let mut out = Vec::new();
        for (piece, p) in self.pieces.iter().enumerate() {
            for (slot, leg) in p.legs.iter().enumerate() {
                if *leg == LegRef::Curve(curve) {
                    out.push(SlotRef { piece, slot });
                }
            }
        }
        out
    }

    /// The slot across the curve at `at`, if `at` is a curve side.
    pub fn other_side(&self, at: SlotRef) -> Option<SlotRef> {
        let LegRef::Curve(c) = self.leg(at)? else {
            return None;
        };
        self.sides(c).into_iter().find(|s| *s != at)
    }

    pub fn leg(&self, at: SlotRef) -> Option<LegRef> {
        self.pieces.get(at.piece).and_then(|p| p.legs.get(at.slot)).copied()
    }

    pub fn curve_index(&self, name: &str) -> Option<usize> {
        self.curves.iter().position(|c| c == name)
    }

    /// Slot whose seam foot is position 0 on the leg at `at`.
    pub fn reference_foot(&self, at: SlotRef) -> usize {
        if let Some(other) = self.other_side(at) {
            if other.piece == at.piece {
                return other.slot;
            }
        }
        (at.slot + 1) % 3
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum TopologyViolation {
    CurveCount { expected: i64, found: usize },
    PieceCount { expected: i64, found: usize },
    SlotCount { slots: usize, curve_sides: usize, cones: usize },
    CurveSides { curve: String, sides: usize },
    ConeUsage { cone: usize, uses: usize },
    UnknownCone { piece: usize, index: usize },
    UnknownCurve { piece: usize, index: usize },
    PieceType { piece: usize, cones: usize },
    Disconnected,
}

impl fmt::Display for TopologyViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::CurveCount { expected, found } => {
                write!(f, "expected {expected} internal curves, found {found}")
            }
            Self::PieceCount { expected, found } => {
                write!(f, "expected {expected} pieces, found {found}")
            }
            Self::SlotCount { slots, curve_sides, cones } => write!(
                f,
                "{slots} leg slots but 2N + n0 = {}",
                curve_sides + cones
            ),
            Self::CurveSides { curve, sides } => {
                write!(f, "curve `{curve}` has {sides} sides instead of 2")
            }
            Self::ConeUsage { cone, uses } => {
                write!(f, "cone point x{} is used {uses} times instead of once", cone + 1)
            }
            Self::UnknownCone { piece, index } => {
                write!(f, "piece {piece} references missing cone point x{}", index + 1)
            }
            Self::UnknownCurve { piece, index } => {
                write!(f, "piece {piece} references missing curve #{index}")
            }
            Self::PieceType { piece, cones } => {
                write!(f, "piece {piece} has {cones} cone points; at most two are allowed")
            }
            Self::Disconnected => write!(f, "the pieces do not form a connected surface"),
        }
    }
}

/// Checks count identities, piece types, cone usage and connectivity.
pub fn validate_topology(d: &PantsDecomposition, s: &MarkedSurface) -> Result<()> {
    let mut v = Vec::new();
    let g = s.genus as i64;
    let n0 = s.cone_count();
    let expected_p = 2 * g - 2 + n0 as i64;
    let expected_n = 3 * g - 3 + n0 as i64;
    if expected_n != d.curves.len() as i64 {
        v.push(TopologyViolation::CurveCount { expected: expected_n, found: d.curves.len() });
    }
    if expected_p != d.pieces.len() as i64 {
        v.push(TopologyViolation::PieceCount { expected: expected_p, found: d.pieces.len() });
    }
    if 3 * d.pieces.len() != 2 * d.curves.len() + n0 {
        v.push(TopologyViolation::SlotCount {
            slots: 3 * d.pieces.len(),
            curve_sides: 2 * d.curves.len(),
            cones: n0,
        });
    }
    let mut curve_uses = vec![0usize; d.curves.len()];
    let mut cone_uses = vec![0usize; n0];
    for (pi, piece) in d.pieces.iter().enumerate() {
        let mut cones = 0;
        for leg in piece.legs {
            match leg {
                LegRef::Curve(c) if c < d.curves.len() => curve_uses[c] += 1,
                LegRef::Curve(c) => v.push(TopologyViolation::UnknownCurve { piece: pi, index: c }),
                LegRef::Cone(k) if k < n0 => {
                    cone_uses[k] += 1;
                    cones += 1;
                }
                LegRef::Cone(k) => v.push(TopologyViolation::UnknownCone { piece: pi, index: k }),
            }
        }
        if cones > 2 {
            v.push(TopologyViolation::PieceType { piece: pi, cones });
        }
    }
    for (c, &uses) in curve_uses.iter().enumerate() {
        if uses != 2 {
            v.push(TopologyViolation::CurveSides { curve: d.curves[c].clone(), sides: uses });
        }
    }
    for (k, &uses) in cone_uses.iter().enumerate() {
        if uses != 1 {
            v.push(TopologyViolation::ConeUsage { cone: k, uses });
        }
    }
    if !d.pieces.is_empty() && !is_connected(d) {
        v.push(TopologyViolation::Disconnected);
    }
    if v.is_empty() {
        Ok(())
    } else {
        Err(Error::Topology(v))
    }
}

fn is_connected(d: &PantsDecomposition) -> bool {
    let n = d.pieces.len();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(p) = stack.pop() {
        for leg in d.pieces[p].legs {
            if let LegRef::Curve(c) = leg {
                for side in d.sides(c) {
                    if !seen[side.piece] {
                        seen[side.piece] = true;
                        stack.push(side.piece);
                    }
                }
            }
        }
    }
    seen.into_iter().all(|x| x)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, schemars::JsonSchema)]
pub struct FnCoordinates {
    pub lengths: Vec<f64>,
    pub twists: Vec<f64>,
}

impl FnCoordinates {
    fn validate(&self, n: usize) -> Result<()> {
        if self.lengths.len() != n || self.twists.len() != n {
            return Err(Error::Domain(format!(
                "expected {n} lengths and twists, got {} and {}",
                self.lengths.len(),
                self.twists.len()
            )));
        }
        if let Some(l) = self.lengths.iter().find(|l| !(**l > 0.0 && l.is_finite())) {
            return Err(Error::Domain(format!("curve length {l} must be positive")));
        }
        if self.twists.iter().any(|d| !d.is_finite()) {
            return Err(Error::Domain("twists must be finite".into()));
        }
        Ok(())
    }
}

/// Gluing record for one internal curve.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Gluing {
    pub curve: usize,
    pub side_a: SlotRef,
    pub side_b: SlotRef,
    /// The twist dᵢ.
    pub offset: f64,
    /// Frame change from the reference frame of side A to that of side B.
    pub isometry: Isometry,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurfaceGeometry {
    pub surface: MarkedSurface,
    #[serde(skip)]
    pub decomposition: PantsDecomposition,
    pub fn_coords: FnCoordinates,
    pub pieces: Vec<SingularPants>,
    pub gluings: Vec<Gluing>,
}

pub fn build_surface(
    d: &PantsDecomposition,
    s: &MarkedSurface,
    fn_coords: &FnCoordinates,
) -> Result<SurfaceGeometry> {
    validate_topology(d, s)?;
    admissible_area(s)?;
    fn_coords.validate(d.curves.len())?;
    let pieces = d
        .pieces
        .iter()
        .map(|p| {
            build_pants(p.legs.map(|leg| match leg {
                LegRef::Curve(c) => Leg::Boundary { length: fn_coords.lengths[c] },
                LegRef::Cone(k) => Leg::Cone { angle: s.cone_angles[k] },
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut geom = SurfaceGeometry {
        surface: s.clone(),
        decomposition: d.clone(),
        fn_coords: fn_coords.clone(),
        pieces,
        gluings: Vec::new(),
    };
    geom.gluings = geom.compute_gluings();
    Ok(geom)
}

impl SurfaceGeometry {
    fn compute_gluings(&self) -> Vec<Gluing> {
        (0..self.decomposition.curves.len())
            .map(|c| {
                let sides = self.decomposition.sides(c);
                let (side_a, side_b) = (sides[0], sides[1]);
                let offset = self.fn_coords.twists[c];
                let leg_b = self.pieces[side_b.piece].legs[side_b.slot];
                Gluing {
                    curve: c,
                    side_a,
                    side_b,
                    offset,
                    isometry: leg_b.slide(self.gluing_constant(c, 0)) * Isometry::rotate(PI),
                }
            })
            .collect()
    }

    /// Same pieces, new twists.
    pub fn with_twists(&self, twists: Vec<f64>) -> Result<SurfaceGeometry> {
        let fn_coords = FnCoordinates { lengths: self.fn_coords.lengths.clone(), twists };
        fn_coords.validate(self.decomposition.curves.len())?;
        let mut g = self.clone();
        g.fn_coords = fn_coords;
        g.gluings = g.compute_gluings();
        Ok(g)
    }

    /// Positions on the two sides of curve `c` that are glued satisfy t_A + t_B = σ,
    /// with σ = −(d + k·l) when the crossing carries `winding` k.
    pub fn gluing_constant(&self, c: usize, winding: i64) -> f64 {
        -(self.fn_coords.twists[c] + winding as f64 * self.fn_coords.lengths[c])
    }

    pub fn leg(&self, at: SlotRef) -> Leg {
        self.pieces[at.piece].legs[at.slot]
    }

    /// Position of the seam foot toward `toward` on the leg at `at`.
    pub fn foot_position(&self, at: SlotRef, toward: usize) -> f64 {
        if self.decomposition.reference_foot(at) == toward {
            0.0
        } else {
            self.leg(at).size() / 2.0
        }
    }

    pub fn total_area(&self) -> f64 {
        self.pieces.iter().map(|p| p.area()).sum()
    }
}

/// On-disk surface description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, schemars::JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct SurfaceFile {
    #[serde(default = "schema_version")]
    pub schema: String,
    pub genus: u32,
    #[serde(default)]
    pub cone_angles: Vec<f64>,
    #[serde(default)]
    pub curves: Vec<String>,
    pub pieces: Vec<PieceFile>,
    #[serde(rename = "fn")]
    pub fn_coords: FnCoordinates,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, schemars::JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct PieceFile {
    /// Curve names, or `x1`, `x2`, ... for cone points.
    pub legs: [String; 3],
}

fn schema_version() -> String {
    SCHEMA_VERSION.to_string()
}

fn cone_label(s: &str) -> Option<usize> {
    let digits = s.strip_prefix('x')?;
    let k: usize = digits.parse().ok()?;
    (k >= 1).then(|| k - 1)
}

impl SurfaceFile {
    pub fn resolve(&self) -> Result<(MarkedSurface, PantsDecomposition, FnCoordinates)> {
        if self.schema != SCHEMA_VERSION {
            return Err(Error::Domain(format!(
                "unsupported schema `{}`, expected `{SCHEMA_VERSION}`",
                self.schema
            )));
        }
        let mut names = BTreeMap::new();
        for (i, c) in self.curves.iter().enumerate() {
            if cone_label(c).is_some() {
                return Err(Error::Domain(format!("curve name `{c}` clashes with cone labels")));
            }
            if names.insert(c.as_str(), i).is_some() {
                return Err(Error::Domain(format!("duplicate curve name `{c}`")));
            }
        }
        let mut pieces = Vec::new();
        for p in &self.pieces {
            let mut legs = [LegRef::Cone(0); 3];
            for (slot, name) in p.legs.iter().enumerate() {
                legs[slot] = if let Some(k) = cone_label(name) {
                    LegRef::Cone(k)
                } else if let Some(&c) = names.get(name.as_str()) {
                    LegRef::Curve(c)
                } else {
                    return Err(Error::UnknownCurve(name.clone()));
                };
            }
            pieces.push(Piece { legs });
        }
        Ok((
            MarkedSurface { genus: self.genus, cone_angles: self.cone_angles.clone() },
            PantsDecomposition { curves: self.curves.clone(), pieces },
            self.fn_coords.clone(),
        ))
    }

    pub fn build(&self) -> Result<SurfaceGeometry> {
        let (s, d, f) = self.resolve()?;
        build_surface(&d, &s, &f)
    }

    pub fn from_parts(s: &MarkedSurface, d: &PantsDecomposition, f: &FnCoordinates) -> Self {
        let label = |leg: LegRef| match leg {
            LegRef::Curve(c) => d.curves[c].clone(),
            LegRef::Cone(k) => format!("x{}", k + 1),
        };
        SurfaceFile {
            schema: schema_version(),
            genus: s.genus,
            cone_angles: s.cone_angles.clone(),
            curves: d.curves.clone(),
            pieces: d.pieces.iter().map(|p| PieceFile { legs: p.legs.map(label) }).collect(),
            fn_coords: f.clone(),
        }
    }
}

/// Standard surface families used by the examples and the estimate harness.
pub mod families {
    use super::*;

    fn curves(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    /// Genus one with one cone point: a single piece with legs (γ₁, γ₁, x₁).
    pub fn torus_with_cone(l: f64, d: f64, theta: f64) -> SurfaceFile {
        SurfaceFile::from_parts(
            &MarkedSurface { genus: 1, cone_angles: vec![theta] },
            &PantsDecomposition {
                curves: curves(&["g1"]),
                pieces: vec![Piece { legs: [LegRef::Curve(0), LegRef::Curve(0), LegRef::Cone(0)] }],
            },
            &FnCoordinates { lengths: vec![l], twists: vec![d] },
        )
    }

    /// Sphere with four cone points: pieces (γ₁, x₁, x₂) and (γ₁, x₃, x₄).
    pub fn four_cone_sphere(l: f64, d: f64, thetas: [f64; 4]) -> SurfaceFile {
        SurfaceFile::from_parts(
            &MarkedSurface { genus: 0, cone_angles: thetas.to_vec() },
            &PantsDecomposition {
                curves: curves(&["g1"]),
                pieces: vec![
                    Piece { legs: [LegRef::Curve(0), LegRef::Cone(0), LegRef::Cone(1)] },
                    Piece { legs: [LegRef::Curve(0), LegRef::Cone(2), LegRef::Cone(3)] },
                ],
            },
            &FnCoordinates { lengths: vec![l], twists: vec![d] },
        )
    }

    /// Closed genus two, both pieces bounded by γ₁, γ₂, γ₃.
    pub fn genus_two_theta(lengths: [f64; 3], twists: [f64; 3]) -> SurfaceFile {
        let legs = [LegRef::Curve(0), LegRef::Curve(1), LegRef::Curve(2)];
        SurfaceFile::from_parts(
            &MarkedSurface { genus: 2, cone_angles: vec![] },
            &PantsDecomposition {
                curves: curves(&["g1", "g2", "g3"]),
                pieces: vec![Piece { legs }, Piece { legs }],
            },
            &FnCoordinates { lengths: lengths.to_vec(), twists: twists.to_vec() },
        )
    }

    /// Closed genus two cut along a separating γ₂: pieces (γ₁, γ₁, γ₂), (γ₃, γ₃, γ₂).
    pub fn genus_two_dumbbell(lengths: [f64; 3], twists: [f64; 3]) -> SurfaceFile {
        SurfaceFile::from_parts(
            &MarkedSurface { genus: 2, cone_angles: vec![] },
            &PantsDecomposition {
                curves: curves(&["g1", "g2", "g3"]),
                pieces: vec![
                    Piece { legs: [LegRef::Curve(0), LegRef::Curve(0), LegRef::Curve(1)] },
                    Piece { legs: [LegRef::Curve(2), LegRef::Curve(2), LegRef::Curve(1)] },
                ],
            },
            &FnCoordinates { lengths: lengths.to_vec(), twists: twists.to_vec() },
        )
    }

    /// Genus one with two cone points: pieces (γ₁, γ₂, x₁) and (γ₁, γ₂, x₂).
    pub fn torus_with_two_cones(lengths: [f64; 2], twists: [f64; 2], thetas: [f64; 2]) -> SurfaceFile {
        SurfaceFile::from_parts(
            &MarkedSurface { genus: 1, cone_angles: thetas.to_vec() },
            &PantsDecomposition {
                curves: curves(&["g1", "g2"]),
                pieces: vec![
                    Piece { legs: [LegRef::Curve(0), LegRef::Curve(1), LegRef::Cone(0)] },
                    Piece { legs: [LegRef::Curve(0), LegRef::Curve(1), LegRef::Cone(1)] },
                ],
            },
            &FnCoordinates { lengths: lengths.to_vec(), twists: twists.to_vec() },
        )
    }
}
