//! Extended and truncated hyperbolic triangles.
//!
//! Vertices are either usual points of H² or strictly hyperideal. A hyperideal
//! vertex is stored as its unit pole, oriented outward: the truncated triangle lies
//! in {x : ⟨x,v⟩ ≤ 0}. With that orientation every off-diagonal Gram entry is
//! negative:
//!
//! | kinds of v_j, v_k | ⟨v_j,v_k⟩   |
//! |-------------------|-------------|
//! | usual, usual      | −cosh l_i   |
//! | usual, hyperideal | −sinh l_i   |
//! | hyperideal, both  | −cosh l_i   |
//!
//! where edge i joins v_j and v_k. Edge poles e_i are oriented the same way, so
//! their Gram matrix (the dual Gram) has unit diagonal and off-diagonal entries
//! −cos α_i at a usual vertex and −cosh a_i at a hyperideal one, a_i being the
//! length of the truncation arc. The two Gram matrices are related by
//! D = H G⁻¹ H with H = diag(⟨v_i,e_i⟩).

use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::{Matrix3, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hkernel::{self, HVector, NORM_TOL};

/// Eigenvalues closer to zero than this make a Gram matrix marginal.
pub const GRAM_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, schemars::JsonSchema)]
pub enum VertexKind {
    #[serde(rename = "U", alias = "usual")]
    Usual,
    #[serde(rename = "H", alias = "hyperideal")]
    Hyperideal,
}

impl VertexKind {
    /// Parses `U`/`H` (or the full words).
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "u" | "usual" => Ok(VertexKind::Usual),
            "h" | "hyperideal" => Ok(VertexKind::Hyperideal),
            other => Err(Error::Domain(format!("unknown vertex kind `{other}`"))),
        }
    }

    fn sign(self) -> f64 {
        match self {
            VertexKind::Usual => -1.0,
            VertexKind::Hyperideal => 1.0,
        }
    }
}

/// Which admissible range was applied to the angle data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, schemars::JsonSchema)]
#[serde(rename_all = "snake_case")]
pub enum AngleRule {
    /// Three usual vertices: each angle in (0, π) with sum below π.
    Classical,
    /// At least one hyperideal vertex: usual angles in (0, π/2), arcs in (0, ∞).
    Restricted,
}

pub fn angle_rule(kinds: &[VertexKind; 3]) -> AngleRule {
    if kinds.iter().all(|k| *k == VertexKind::Usual) {
        AngleRule::Classical
    } else {
        AngleRule::Restricted
    }
}

/// The two vertices joined by edge `i`.
pub const fn edge_ends(i: usize) -> (usize, usize) {
    ((i + 1) % 3, (i + 2) % 3)
}

/// The edge joining vertices `j` and `k`.
pub fn edge_between(j: usize, k: usize) -> usize {
    debug_assert!(j != k && j < 3 && k < 3);
    3 - j - k
}

#[derive(Debug, Clone, PartialEq, Serialize, schemars::JsonSchema)]
pub struct ExtendedTriangle {
    pub kinds: [VertexKind; 3],
    pub vertices: [HVector; 3],
    /// Edge i joins vertices i+1 and i+2 (mod 3).
    pub edge_lengths: [f64; 3],
    /// Interior angle at a usual vertex, truncation-arc length at a hyperideal one.
    pub angle_data: [f64; 3],
    /// Outward unit poles of the edge lines.
    pub edge_poles: [HVector; 3],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, schemars::JsonSchema)]
#[serde(tag = "type", content = "index", rename_all = "snake_case")]
pub enum SegmentKind {
    Edge(usize),
    TruncationArc(usize),
}

#[derive(Debug, Clone, PartialEq, Serialize, schemars::JsonSchema)]
pub struct Segment {
    pub kind: SegmentKind,
    pub start: HVector,
    pub end: HVector,
    pub length: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TriangleData {
    pub lengths: [f64; 3],
    pub angle_data: [f64; 3],
    pub truncated_boundary: Vec<Segment>,
}

pub fn gram_from_lengths(kinds: &[VertexKind; 3], lengths: &[f64; 3]) -> Matrix3<f64> {
    let mut g = Matrix3::zeros();
    for i in 0..3 {
        g[(i, i)] = kinds[i].sign();
        let (j, k) = edge_ends(i);
        let l = lengths[i];
        let v = match (kinds[j], kinds[k]) {
            (VertexKind::Usual, VertexKind::Usual) => -l.cosh(),
            (VertexKind::Hyperideal, VertexKind::Hyperideal) => -l.cosh(),
            _ => -l.sinh(),
        };
        g[(j, k)] = v;
        g[(k, j)] = v;
    }
    g
}

pub fn dual_gram_from_angles(kinds: &[VertexKind; 3], angle_data: &[f64; 3]) -> Matrix3<f64> {
    let mut d = Matrix3::identity();
    for i in 0..3 {
        let (j, k) = edge_ends(i);
        let v = match kinds[i] {
            VertexKind::Usual => -angle_data[i].cos(),
            VertexKind::Hyperideal => -angle_data[i].cosh(),
        };
        d[(j, k)] = v;
        d[(k, j)] = v;
    }
    d
}

/// Number of (positive, negative) eigenvalues; marginal if any is within GRAM_TOL of zero.
fn signature(m: &Matrix3<f64>, what: &str) -> Result<(usize, usize)> {
    let eig = SymmetricEigen::new(*m).eigenvalues;
    if eig.iter().any(|e| e.abs() < GRAM_TOL) {
        return Err(Error::Marginal(format!("{what} is nearly singular (eigenvalues {eig:?})")));
    }
    let pos = eig.iter().filter(|e| **e > 0.0).count();
    Ok((pos, 3 - pos))
}

fn check_lengths(lengths: &[f64; 3]) -> Result<()> {
    for l in lengths {
        if !(l.is_finite() && *l > 0.0) {
            return Err(Error::Domain(format!("edge length {l} must be positive and finite")));
        }
    }
    Ok(())
}

/// Vertex j placed on the y-axis geodesic at distance `l` from o, pointing away.
fn on_axis(kind: VertexKind, l: f64) -> HVector {
    match kind {
        VertexKind::Usual => HVector::new(0.0, l.sinh(), l.cosh()),
        VertexKind::Hyperideal => HVector::new(0.0, l.cosh(), l.sinh()),
    }
}

/// Realize the triangle with the given vertex kinds and edge lengths.
///
/// Canonical position: the foot of vertex 1 on edge 3 is o (vertex 1 is o itself
/// when usual, the pole (0,−1,0) when hyperideal), edge 3 runs along the y-axis
/// geodesic toward +y, and vertex 3 lies in x > 0.
pub fn solve_from_lengths(kinds: [VertexKind; 3], lengths: [f64; 3]) -> Result<ExtendedTriangle> {
    check_lengths(&lengths)?;
    let g = gram_from_lengths(&kinds, &lengths);
    let (pos, neg) = signature(&g, "Gram matrix")?;
    if (pos, neg) != (2, 1) {
        return Err(Error::NonRealizable(format!(
            "Gram matrix has signature ({pos},{neg}) instead of (2,1)"
        )));
    }

    let v1 = match kinds[0] {
        VertexKind::Usual => HVector::origin(),
        VertexKind::Hyperideal => HVector::new(0.0, -1.0, 0.0),
    };
    let v2 = on_axis(kinds[1], lengths[2]);

    // ⟨v1,v3⟩ = G13 and ⟨v2,v3⟩ = G23 are linear in (y, z) because v1, v2 have x = 0.
    let (a1, b1) = (v1.y, v1.z);
    let (a2, b2) = (v2.y, v2.z);
    let (r1, r2) = (g[(0, 2)], g[(1, 2)]);
    let det = -a1 * b2 + a2 * b1;
    let y = (-r1 * b2 + r2 * b1) / det;
    let z = (a1 * r2 - a2 * r1) / det;
    let x_sq = g[(2, 2)] - y * y + z * z;
    if !(x_sq > 0.0) {
        return Err(Error::NonRealizable(format!(
            "third vertex has no real position (x² = {x_sq})"
        )));
    }
    let v3 = HVector::new(x_sq.sqrt(), y, z);
    let v3 = match kinds[2] {
        VertexKind::Usual => {
            if v3.z <= 0.0 {
                return Err(Error::NonRealizable("third vertex lies on the lower sheet".into()));
            }
            v3.normalize_point()?
        }
        VertexKind::Hyperideal => v3.normalize_pole()?,
    };
    let mut tri = assemble(kinds, [v1, v2, v3])?;
    tri.angle_data = angles_from_lengths(&kinds, &lengths);
    Ok(tri)
}

/// Angle data straight from the edge lengths.
///
/// With (C, S) = (cosh l, sinh l) on an edge joining like vertices and (sinh l, cosh l)
/// otherwise, the inward edge poles at vertex i satisfy
/// 1 ∓ c_i = (S_b S_c ∓ C_b C_c ± κ_i C_a) / (S_b S_c), and S_b S_c ∓ C_b C_c collapses to a
/// single cosh or sinh of b ∓ c. This keeps full relative precision for thin triangles
/// whose far vertices are poorly resolved in coordinates.
fn angles_from_lengths(kinds: &[VertexKind; 3], lengths: &[f64; 3]) -> [f64; 3] {
    let mixed = |e: usize| {
        let (p, q) = edge_ends(e);
        kinds[p] != kinds[q]
    };
    let cs = |e: usize| {
        let l = lengths[e];
        if mixed(e) { (l.sinh(), l.cosh()) } else { (l.cosh(), l.sinh()) }
    };
    [0, 1, 2].map(|i| {
        let (j, k) = edge_ends(i);
        let (b, c) = (lengths[j], lengths[k]);
        let (_, sb) = cs(j);
        let (_, sc) = cs(k);
        let (ca, _) = cs(i);
        let d_minus = match (mixed(j), mixed(k)) {
            (false, false) => -(b - c).cosh(),
            (true, true) => (b - c).cosh(),
            (false, true) => (b - c).sinh(),
            (true, false) => (c - b).sinh(),
        };
        let d_plus = if mixed(j) == mixed(k) { (b + c).cosh() } else { (b + c).sinh() };
        let tt = sb * sc;
        match kinds[i] {
            VertexKind::Usual => {
                let one_minus = ((d_minus + ca) / tt).max(0.0);
                let one_plus = ((d_plus - ca) / tt).max(0.0);
                2.0 * one_minus.sqrt().atan2(one_plus.sqrt())
            }
            VertexKind::Hyperideal => {
                let c_minus_one = (-(d_minus - ca) / tt).max(0.0);
                2.0 * (c_minus_one / 2.0).sqrt().asinh()
            }
        }
    })
}

/// Compute edge poles and angle data from placed vertices, validating the shape.
fn assemble(kinds: [VertexKind; 3], vertices: [HVector; 3]) -> Result<ExtendedTriangle> {
    let mut edge_poles = [HVector::origin(); 3];
    for i in 0..3 {
        let (j, k) = edge_ends(i);
        let mut e = vertices[j].cross(&vertices[k]).normalize_pole().map_err(|_| {
            Error::NonRealizable(format!("edge {} does not meet the hyperbolic plane", i + 1))
        })?;
        let h = vertices[i].dot(&e);
        if h > 0.0 {
            e = -e;
        }
        let h = -h.abs();
        match kinds[i] {
            VertexKind::Usual if h.abs() < GRAM_TOL => {
                return Err(Error::Marginal(format!("vertex {} lies on its opposite edge", i + 1)))
            }
            VertexKind::Hyperideal if (h + 1.0).abs() < GRAM_TOL => {
                return Err(Error::Marginal(format!(
                    "dual line of vertex {} is asymptotic to the opposite edge",
                    i + 1
                )))
            }
            VertexKind::Hyperideal if h > -1.0 => {
                return Err(Error::NonRealizable(format!(
                    "dual line of vertex {} crosses the opposite edge",
                    i + 1
                )))
            }
            _ => {}
        }
        edge_poles[i] = e;
    }

    let mut angle_data = [0.0; 3];
    for i in 0..3 {
        let (j, k) = edge_ends(i);
        let c = -edge_poles[j].dot(&edge_poles[k]);
        // ⟨n,n⟩ = ⟨e_j,e_k⟩² − 1 for unit poles: −sin²α or sinh²a, without the
        // cancellation of acos/acosh near 1.
        let n = edge_poles[j].cross(&edge_poles[k]).norm_sq();
        angle_data[i] = match kinds[i] {
            VertexKind::Usual => {
                if !(c.abs() < 1.0) {
                    return Err(Error::NonRealizable(format!(
                        "edges through usual vertex {} do not cross",
                        i + 1
                    )));
                }
                (-n).max(0.0).sqrt().atan2(c)
            }
            VertexKind::Hyperideal => {
                if (c - 1.0).abs() < GRAM_TOL {
                    return Err(Error::Marginal(format!(
                        "truncation arc at vertex {} degenerates",
                        i + 1
                    )));
                }
                if c < 1.0 {
                    return Err(Error::NonRealizable(format!(
                        "edges through hyperideal vertex {} are not ultraparallel on the inner side",
                        i + 1
                    )));
                }
                n.max(0.0).sqrt().asinh()
            }
        };
    }

    let mut edge_lengths = [0.0; 3];
    for i in 0..3 {
        let (j, k) = edge_ends(i);
        edge_lengths[i] = vertex_distance(kinds[j], &vertices[j], kinds[k], &vertices[k])?;
    }

    Ok(ExtendedTriangle { kinds, vertices, edge_lengths, angle_data, edge_poles })
}

/// Edge length between two typed vertices, via the hkernel distances.
pub fn vertex_distance(ka: VertexKind, a: &HVector, kb: VertexKind, b: &HVector) -> Result<f64> {
    use VertexKind::*;
    match (ka, kb) {
        (Usual, Usual) => hkernel::dist_point_point(a, b),
        (Usual, Hyperideal) => hkernel::dist_point_line(a, b),
        (Hyperideal, Usual) => hkernel::dist_point_line(b, a),
        (Hyperideal, Hyperideal) => match hkernel::line_line_relation(a, b)? {
            hkernel::LineRelation::Ultraparallel(d) => Ok(d),
            r => Err(Error::NonRealizable(format!("dual lines are {r:?}, not ultraparallel"))),
        },
    }
}

fn check_angle_ranges(kinds: &[VertexKind; 3], angle_data: &[f64; 3]) -> Result<AngleRule> {
    let rule = angle_rule(kinds);
    for (kind, a) in kinds.iter().zip(angle_data) {
        if !a.is_finite() {
            return Err(Error::Domain(format!("angle datum {a} is not finite")));
        }
        let ok = match (rule, kind) {
            (AngleRule::Classical, _) => *a > 0.0 && *a < PI,
            (AngleRule::Restricted, VertexKind::Usual) => *a > 0.0 && *a < FRAC_PI_2,
            (AngleRule::Restricted, VertexKind::Hyperideal) => *a > 0.0,
        };
        if !ok {
            let range = match (rule, kind) {
                (AngleRule::Classical, _) => "(0, π)",
                (AngleRule::Restricted, VertexKind::Usual) => "(0, π/2)",
                (AngleRule::Restricted, VertexKind::Hyperideal) => "(0, ∞)",
            };
            return Err(Error::Domain(format!(
                "angle datum {a} at a {kind:?} vertex is outside {range}"
            )));
        }
    }
    if rule == AngleRule::Classical {
        let sum: f64 = angle_data.iter().sum();
        if sum >= PI {
            return Err(Error::NotHyperbolic { sum });
        }
    }
    Ok(rule)
}

/// Realize the triangle with the given vertex kinds and angle data.
pub fn solve_from_angles(kinds: [VertexKind; 3], angle_data: [f64; 3]) -> Result<ExtendedTriangle> {
    check_angle_ranges(&kinds, &angle_data)?;
    let d = dual_gram_from_angles(&kinds, &angle_data);
    let (pos, neg) = signature(&d, "dual Gram matrix")?;
    if (pos, neg) != (2, 1) {
        return Err(Error::NonRealizable(format!(
            "dual Gram matrix has signature ({pos},{neg}) instead of (2,1)"
        )));
    }
    let inv = d
        .try_inverse()
        .ok_or_else(|| Error::Marginal("dual Gram matrix is singular".into()))?;
    for i in 0..3 {
        if inv[(i, i)].signum() != kinds[i].sign() {
            return Err(Error::NonRealizable(format!(
                "angle data force vertex {} to be of the other kind",
                i + 1
            )));
        }
    }
    // Normalized cofactors of the dual Gram matrix, with sin α and sinh a taken
    // directly rather than as sqrt(1 − c²), which loses digits for small angles.
    let c = [0, 1, 2].map(|i| match kinds[i] {
        VertexKind::Usual => angle_data[i].cos(),
        VertexKind::Hyperideal => angle_data[i].cosh(),
    });
    let s = [0, 1, 2].map(|i| match kinds[i] {
        VertexKind::Usual => angle_data[i].sin(),
        VertexKind::Hyperideal => angle_data[i].sinh(),
    });
    let mut lengths = [0.0; 3];
    for i in 0..3 {
        let (j, k) = edge_ends(i);
        let m = (c[i] + c[j] * c[k]) / (s[j] * s[k]);
        lengths[i] = match (kinds[j], kinds[k]) {
            (VertexKind::Usual, VertexKind::Hyperideal)
            | (VertexKind::Hyperideal, VertexKind::Usual) => {
                if !(m > 0.0) {
                    return Err(Error::NonRealizable(format!("edge {} has no length", i + 1)));
                }
                m.asinh()
            }
            _ => {
                if !(m > 1.0) {
                    return Err(Error::NonRealizable(format!("edge {} has no length", i + 1)));
                }
                m.acosh()
            }
        };
    }
    solve_from_lengths(kinds, lengths)
}

impl ExtendedTriangle {
    /// Endpoint of edge `i` at its vertex `j`: the vertex itself, or the foot on the dual line.
    pub fn edge_end(&self, i: usize, j: usize) -> Result<HVector> {
        match self.kinds[j] {
            VertexKind::Usual => Ok(self.vertices[j]),
            VertexKind::Hyperideal => hkernel::line_intersection(&self.edge_poles[i], &self.vertices[j]),
        }
    }

    /// Area of the truncated triangle: π minus the angles at usual vertices.
    pub fn truncated_area(&self) -> f64 {
        PI - self
            .kinds
            .iter()
            .zip(&self.angle_data)
            .filter(|(k, _)| **k == VertexKind::Usual)
            .map(|(_, a)| a)
            .sum::<f64>()
    }

    pub fn angle_rule(&self) -> AngleRule {
        angle_rule(&self.kinds)
    }

    /// Boundary of the truncated triangle, counterclockwise from vertex 1:
    /// optional arc at v1, edge 3, optional arc at v2, edge 1, optional arc at v3, edge 2.
    pub fn truncated_boundary(&self) -> Result<Vec<Segment>> {
        let mut out = Vec::with_capacity(6);
        for j in 0..3 {
            let next = (j + 1) % 3;
            let prev = (j + 2) % 3;
            let incoming = edge_between(prev, j);
            let outgoing = edge_between(j, next);
            if self.kinds[j] == VertexKind::Hyperideal {
                let a = self.edge_end(incoming, j)?;
                let b = self.edge_end(outgoing, j)?;
                out.push(Segment {
                    kind: SegmentKind::TruncationArc(j),
                    start: a,
                    end: b,
                    length: hkernel::dist_point_point(&a, &b)?,
                });
            }
            let a = self.edge_end(outgoing, j)?;
            let b = self.edge_end(outgoing, next)?;
            out.push(Segment {
                kind: SegmentKind::Edge(outgoing),
                start: a,
                end: b,
                length: hkernel::dist_point_point(&a, &b)?,
            });
        }
        Ok(out)
    }

    /// Largest disagreement between stored data and data recomputed from the vertices.
    pub fn consistency_defect(&self) -> Result<f64> {
        let mut defect: f64 = 0.0;
        for (k, v) in self.kinds.iter().zip(&self.vertices) {
            let target = match k {
                VertexKind::Usual => -1.0,
                VertexKind::Hyperideal => 1.0,
            };
            defect = defect.max((v.norm_sq() - target).abs());
        }
        for i in 0..3 {
            let (j, k) = edge_ends(i);
            let l = vertex_distance(self.kinds[j], &self.vertices[j], self.kinds[k], &self.vertices[k])?;
            defect = defect.max((l - self.edge_lengths[i]).abs());
        }
        for seg in self.truncated_boundary()? {
            let stored = match seg.kind {
                SegmentKind::Edge(i) => self.edge_lengths[i],
                SegmentKind::TruncationArc(j) => self.angle_data[j],
            };
            defect = defect.max((seg.length - stored).abs());
        }
        for j in 0..3 {
            if self.kinds[j] == VertexKind::Usual {
                let (a, b) = (edge_between(j, (j + 1) % 3), edge_between(j, (j + 2) % 3));
                let c = -self.edge_poles[a].dot(&self.edge_poles[b]);
                defect = defect.max((c.acos() - self.angle_data[j]).abs());
            }
        }
        Ok(defect)
    }

    pub fn gram(&self) -> Matrix3<f64> {
        let mut g = Matrix3::zeros();
        for i in 0..3 {
            for j in 0..3 {
                g[(i, j)] = self.vertices[i].dot(&self.vertices[j]);
            }
        }
        g
    }
}

pub fn extract_data(tri: &ExtendedTriangle) -> Result<TriangleData> {
    Ok(TriangleData {
        lengths: tri.edge_lengths,
        angle_data: tri.angle_data,
        truncated_boundary: tri.truncated_boundary()?,
    })
}

/// Whether a vector is normalized for the given kind.
pub fn is_normalized(kind: VertexKind, v: &HVector) -> bool {
    match kind {
        VertexKind::Usual => v.is_point(),
        VertexKind::Hyperideal => (v.norm_sq() - 1.0).abs() <= NORM_TOL,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use VertexKind::{Hyperideal as H, Usual as U};

    // cosh a = cos α / (1 − cos α) for an equilateral triangle
    fn equilateral_side(alpha: f64) -> f64 {
        (alpha.cos() / (1.0 - alpha.cos())).acosh()
    }

    #[test]
    fn regular_hexagon_from_lengths() {
        let l = 2f64.acosh();
        let t = solve_from_lengths([H, H, H], [l; 3]).unwrap();
        for a in t.angle_data {
            assert_abs_diff_eq!(a, 1.3169578969248166, epsilon = 1e-9);
        }
        let b = t.truncated_boundary().unwrap();
        assert_eq!(b.len(), 6);
        for (n, seg) in b.iter().enumerate() {
            assert_eq!(matches!(seg.kind, SegmentKind::TruncationArc(_)), n % 2 == 0);
            assert_abs_diff_eq!(seg.length, l, epsilon = 1e-9);
        }
        assert!(t.consistency_defect().unwrap() < 1e-9);
    }

    #[test]
    fn equilateral_from_lengths_and_angles() {
        let side = equilateral_side(PI / 4.0);
        assert_abs_diff_eq!(side, 1.528571, epsilon = 1e-6);
        let t = solve_from_lengths([U, U, U], [side; 3]).unwrap();
        for a in t.angle_data {
            assert_abs_diff_eq!(a, PI / 4.0, epsilon = 1e-12);
        }
        let b = t.truncated_boundary().unwrap();
        assert_eq!(b.len(), 3);
        assert!(b.iter().all(|s| matches!(s.kind, SegmentKind::Edge(_))));

        let t2 = solve_from_angles([U, U, U], [PI / 4.0; 3]).unwrap();
        for l in t2.edge_lengths {
            assert_abs_diff_eq!(l, side, epsilon = 1e-12);
        }
        assert_eq!(t2.angle_rule(), AngleRule::Classical);
    }

    #[test]
    fn triangle_inequality_failure_is_not_realizable() {
        assert!(matches!(
            solve_from_lengths([U, U, U], [5.0, 1.0, 1.0]),
            Err(Error::NonRealizable(_))
        ));
    }

    #[test]
    fn hexagon_is_self_dual() {
        let a = 2f64.acosh();
        let t = solve_from_angles([H, H, H], [a; 3]).unwrap();
        for l in t.edge_lengths {
            assert_abs_diff_eq!(l, a, epsilon = 1e-9);
        }
    }

    #[test]
    fn restricted_range_applies_with_hyperideal_vertex() {
        let r = solve_from_angles([H, U, U], [1.0, FRAC_PI_2, PI / 3.0]);
        assert!(matches!(r, Err(Error::Domain(_))));
        // the same usual angle is fine when all vertices are usual
        assert!(solve_from_angles([U, U, U], [0.2, FRAC_PI_2, 0.3]).is_ok());
        assert!(matches!(
            solve_from_angles([U, U, U], [1.0, 1.0, 1.2]),
            Err(Error::NotHyperbolic { .. })
        ));
    }

    #[test]
    fn mixed_truncation_arc_matches_recomputation() {
        let t = solve_from_lengths([H, U, U], [2.0, 2.0, 1.0]).unwrap();
        let b = t.truncated_boundary().unwrap();
        let arc = b.iter().find(|s| s.kind == SegmentKind::TruncationArc(0)).unwrap();
        // feet of edges 2 and 3 on the dual line of v1
        let f2 = hkernel::line_intersection(&t.edge_poles[1], &t.vertices[0]).unwrap();
        let f3 = hkernel::line_intersection(&t.edge_poles[2], &t.vertices[0]).unwrap();
        assert_abs_diff_eq!(f2.dot(&t.vertices[0]), 0.0, epsilon = 1e-12);
        let d = hkernel::dist_point_point(&f2, &f3).unwrap();
        assert_abs_diff_eq!(arc.length, d, epsilon = 1e-9);
        assert_abs_diff_eq!(t.angle_data[0], d, epsilon = 1e-9);
    }

    #[test]
    fn canonical_position() {
        let t = solve_from_lengths([U, H, U], [0.9, 1.4, 0.7]).unwrap();
        assert_eq!(t.vertices[0], HVector::origin());
        assert_eq!(t.vertices[1].x, 0.0);
        assert!(t.vertices[2].x > 0.0);
        let t = solve_from_angles([H, U, H], [0.8, 1.0, 0.9]).unwrap();
        assert_eq!(t.vertices[0], HVector::new(0.0, -1.0, 0.0));
    }

    #[test]
    fn gram_matches_vertices() {
        let kinds = [H, U, H];
        let lengths = [1.1, 0.6, 0.8];
        let t = solve_from_lengths(kinds, lengths).unwrap();
        let g = gram_from_lengths(&kinds, &lengths);
        assert!((t.gram() - g).abs().max() < 1e-9);
    }

    #[test]
    fn nonpositive_lengths_rejected() {
        assert!(matches!(solve_from_lengths([U, U, U], [0.0, 1.0, 1.0]), Err(Error::Domain(_))));
        assert!(matches!(solve_from_angles([H, H, H], [0.0, 1.0, 1.0]), Err(Error::Domain(_))));
    }

    #[test]
    fn area_below_every_edge() {
        let t = solve_from_lengths([U, U, U], [0.8, 0.9, 1.0]).unwrap();
        let area = hkernel::triangle_area(t.angle_data).unwrap();
        assert_abs_diff_eq!(area, t.truncated_area(), epsilon = 1e-14);
        for l in t.edge_lengths {
            assert!(area < l);
        }
    }
}
