//! Closed curves on a pants decomposition given as words, their holonomy and
//! geodesic lengths, and intersection numbers with rational laminations.
//!
//! A step enters a piece through a curve leg (`enter` slot), traverses it and
//! leaves through a curve leg (`exit` slot), crossing that curve with `winding`
//! extra turns along it. A step with `enter == exit` must carry an `around`
//! clause: the path loops `turns` times around the third leg `leg` before leaving.
//! Cone legs are never entered or exited.
//!
//! Holonomy is developed in leg frames (see [`crate::pants`]): for step i with
//! entry leg p and exit leg q,
//!
//! ```text
//! slide_p(pos(p, first) − σ_prev) · core · slide_q(−pos(q, last)) · R_π
//! ```
//!
//! where `core` is the seam hop p→q, or hop p→r · slide_r(turns·size_r) · hop r→p
//! for a loop around r, and σ_prev is the gluing constant of the previous crossing.

use std::collections::HashSet;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hkernel::{translation_length, Isometry, IsometryKind};
use crate::surface::{LegRef, PantsDecomposition, SlotRef, SurfaceGeometry};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, schemars::JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct Around {
    pub leg: usize,
    #[serde(default = "one")]
    pub turns: i64,
}

fn one() -> i64 {
    1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, schemars::JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct Step {
    pub piece: usize,
    pub enter: usize,
    pub exit: usize,
    #[serde(default)]
    pub winding: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub around: Option<Around>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, schemars::JsonSchema)]
#[serde(untagged)]
pub enum CurveWord {
    /// The pants curve itself.
    PantsCurve { pants_curve: String },
    /// A cyclic sequence of steps.
    Steps(Vec<Step>),
}

impl CurveWord {
    pub fn empty() -> Self {
        CurveWord::Steps(Vec::new())
    }

    /// The same word started at step `k`.
    pub fn rotated(&self, k: usize) -> Self {
        match self {
            CurveWord::Steps(s) if !s.is_empty() => {
                let mut s = s.clone();
                let n = s.len();
                s.rotate_left(k % n);
                CurveWord::Steps(s)
            }
            other => other.clone(),
        }
    }

    /// The word traversed backwards.
    pub fn inverse(&self) -> Self {
        match self {
            CurveWord::Steps(s) if !s.is_empty() => {
                let n = s.len();
                // step i's exit crossing becomes the exit crossing of reversed step i+1
                let steps = (0..n)
                    .map(|j| {
                        let orig = s[n - 1 - j];
                        let next_winding = s[(2 * n - 2 - j) % n].winding;
                        Step {
                            piece: orig.piece,
                            enter: orig.exit,
                            exit: orig.enter,
                            winding: next_winding,
                            around: orig.around.map(|a| Around { leg: a.leg, turns: -a.turns }),
                        }
                    })
                    .collect();
                CurveWord::Steps(steps)
            }
            other => other.clone(),
        }
    }

    /// Adds `k` windings to every crossing of curve `curve`.
    pub fn wound(&self, d: &PantsDecomposition, curve: usize, k: i64) -> Self {
        match self {
            CurveWord::Steps(s) => CurveWord::Steps(
                s.iter()
                    .map(|st| {
                        let mut st = *st;
                        if d.pieces[st.piece].legs[st.exit] == LegRef::Curve(curve) {
                            st.winding += k;
                        }
                        st
                    })
                    .collect(),
            ),
            other => other.clone(),
        }
    }
}

/// The curve index crossed at the end of each step, after validation.
pub fn crossings(d: &PantsDecomposition, w: &CurveWord) -> Result<Vec<usize>> {
    let steps = match w {
        CurveWord::PantsCurve { pants_curve } => {
            d.curve_index(pants_curve)
                .ok_or_else(|| Error::Word(format!("unknown pants curve `{pants_curve}`")))?;
            return Ok(Vec::new());
        }
        CurveWord::Steps(s) => s,
    };
    let mut out = Vec::with_capacity(steps.len());
    for (i, st) in steps.iter().enumerate() {
        let piece = d
            .pieces
            .get(st.piece)
            .ok_or_else(|| Error::Word(format!("step {i}: no piece {}", st.piece)))?;
        if st.enter > 2 || st.exit > 2 {
            return Err(Error::Word(format!("step {i}: slots must be 0, 1 or 2")));
        }
        let LegRef::Curve(_) = piece.legs[st.enter] else {
            return Err(Error::Word(format!("step {i}: enters through a cone point")));
        };
        let LegRef::Curve(c) = piece.legs[st.exit] else {
            return Err(Error::Word(format!("step {i}: exits through a cone point")));
        };
        match (st.enter == st.exit, st.around) {
            (true, None) => {
                return Err(Error::Word(format!(
                    "step {i}: enters and exits through the same leg without an around clause"
                )))
            }
            (false, Some(_)) => {
                return Err(Error::Word(format!(
                    "step {i}: an around clause needs enter == exit"
                )))
            }
            (true, Some(a)) if a.leg > 2 || a.leg == st.enter || a.turns == 0 => {
                return Err(Error::Word(format!("step {i}: invalid around clause")))
            }
            _ => {}
        }
        let next = steps[(i + 1) % steps.len()];
        let landing = d.other_side(SlotRef { piece: st.piece, slot: st.exit });
        if landing != Some(SlotRef { piece: next.piece, slot: next.enter }) {
            return Err(Error::Word(format!(
                "step {i}: crossing does not lead into piece {} slot {}",
                next.piece, next.enter
            )));
        }
        out.push(c);
    }
    Ok(out)
}

/// Frame change of a step's piece traversal, from the foot on the entry leg
/// toward the first target to the foot on the exit leg toward the last target.
pub(crate) struct Traversal {
    pub core: Isometry,
    pub first: f64,
    pub last: f64,
}

pub(crate) fn traversal(geom: &SurfaceGeometry, st: &Step) -> Traversal {
    let pants = &geom.pieces[st.piece];
    let p = SlotRef { piece: st.piece, slot: st.enter };
    let q = SlotRef { piece: st.piece, slot: st.exit };
    match st.around {
        Some(a) => {
            let r = a.leg;
            let leg = pants.legs[r];
            Traversal {
                core: pants.hop(st.enter, r)
                    * leg.slide(a.turns as f64 * leg.size())
                    * pants.hop(r, st.enter),
                first: geom.foot_position(p, r),
                last: geom.foot_position(q, r),
            }
        }
        None => Traversal {
            core: pants.hop(st.enter, st.exit),
            first: geom.foot_position(p, st.exit),
            last: geom.foot_position(q, st.enter),
        },
    }
}

pub fn holonomy(geom: &SurfaceGeometry, w: &CurveWord) -> Result<Isometry> {
    let d = &geom.decomposition;
    let cross = crossings(d, w)?;
    match w {
        CurveWord::PantsCurve { pants_curve } => {
            let c = d.curve_index(pants_curve).expect("validated");
            Ok(pants_curve_holonomy(geom, c))
        }
        CurveWord::Steps(steps) => {
            let n = steps.len();
            let mut m = Isometry::identity();
            for (i, st) in steps.iter().enumerate() {
                let prev = (i + n - 1) % n;
                let sigma_prev = geom.gluing_constant(cross[prev], steps[prev].winding);
                let tr = traversal(geom, st);
                let pants = &geom.pieces[st.piece];
                m = m
                    * pants.legs[st.enter].slide(tr.first - sigma_prev)
                    * tr.core
                    * pants.legs[st.exit].slide(-tr.last)
                    * Isometry::rotate(PI);
            }
            Ok(m)
        }
    }
}

/// The curve γ as the product of the peripheral loops around the two other legs
/// q, r of a piece bounded by γ, based at the foot on q toward r.
///
/// Only the seam between q and r is crossed. That seam stays short when γ is
/// short, while the seams adjacent to γ grow like log(1/l), so this base point
/// keeps the entries of the product small. Of the two sides of γ, the one with
/// the shorter crossing seam is used.
fn pants_curve_holonomy(geom: &SurfaceGeometry, c: usize) -> Isometry {
    let crossed = |at: &SlotRef| geom.pieces[at.piece].seams[at.slot];
    let at = geom
        .decomposition
        .sides(c)
        .into_iter()
        .min_by(|a, b| crossed(a).total_cmp(&crossed(b)))
        .expect("every curve has two sides");
    let pants = &geom.pieces[at.piece];
    let (q, r) = ((at.slot + 1) % 3, (at.slot + 2) % 3);
    let (lq, lr) = (pants.legs[q], pants.legs[r]);
    lq.slide(-lq.size()) * pants.hop(q, r) * lr.slide(-lr.size()) * pants.hop(r, q)
}

pub fn geodesic_length(geom: &SurfaceGeometry, w: &CurveWord) -> Result<f64> {
    let m = holonomy(geom, w)?;
    let t = translation_length(&m)?;
    match t.kind {
        IsometryKind::Hyperbolic => Ok(t.length),
        kind => Err(Error::NonGeodesic { kind: kind.to_string() }),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, schemars::JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct LaminationEntry {
    pub curve: String,
    pub weight: f64,
}

/// Weighted pants curves. Zero weights are accepted and contribute nothing.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize, schemars::JsonSchema)]
#[serde(transparent)]
pub struct RationalLamination(pub Vec<LaminationEntry>);

impl RationalLamination {
    pub fn single(curve: &str, weight: f64) -> Self {
        RationalLamination(vec![LaminationEntry { curve: curve.into(), weight }])
    }

    /// Per-curve weights on `d`, checking names, signs and distinctness.
    pub fn weights(&self, d: &PantsDecomposition) -> Result<Vec<f64>> {
        let mut out = vec![0.0; d.curves.len()];
        let mut seen = HashSet::new();
        for e in &self.0 {
            let c = d.curve_index(&e.curve).ok_or_else(|| Error::UnknownCurve(e.curve.clone()))?;
            if !(e.weight >= 0.0 && e.weight.is_finite()) {
                return Err(Error::Domain(format!("weight {} on `{}` must be nonnegative", e.weight, e.curve)));
            }
            if !seen.insert(c) {
                return Err(Error::Domain(format!("curve `{}` listed twice", e.curve)));
            }
            out[c] = e.weight;
        }
        Ok(out)
    }
}

/// Σ wᵢ · (number of crossings of γᵢ by the word).
pub fn intersection_number(
    d: &PantsDecomposition,
    lam: &RationalLamination,
    w: &CurveWord,
) -> Result<f64> {
    let weights = lam.weights(d)?;
    Ok(crossings(d, w)?.into_iter().map(|c| weights[c]).sum())
}

/// Words for the standard families in [`crate::surface::families`].
pub mod words {
    use super::*;

    /// On the torus with one cone point: the curve dual to γ₁, crossing it once.
    pub fn torus_dual(winding: i64) -> CurveWord {
        CurveWord::Steps(vec![Step { piece: 0, enter: 1, exit: 0, winding, around: None }])
    }

    /// On the four-cone sphere: loops around x₁ in one piece and x₃ in the other.
    pub fn four_cone_delta(winding: i64) -> CurveWord {
        let step = |piece| Step {
            piece,
            enter: 0,
            exit: 0,
            winding,
            around: Some(Around { leg: 1, turns: 1 }),
        };
        CurveWord::Steps(vec![step(0), step(1)])
    }

    pub fn pants_curve(name: &str) -> CurveWord {
        CurveWord::PantsCurve { pants_curve: name.to_string() }
    }
}
