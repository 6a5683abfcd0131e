//! Numerical verification harness for the length inequalities, plus closed-form
//! safety radii and Fenchel-Nielsen comparison diagnostics.
//!
//! Each suite draws its samples from a ChaCha8 stream keyed by (seed, sample
//! index), so a report depends only on its configuration and is independent of
//! the number of worker threads.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curves::{geodesic_length, intersection_number, words, CurveWord, RationalLamination};
use crate::deform::{earthquake, graft_length};
use crate::error::{Error, Result};
use crate::hkernel::{dist_point_point, triangle_area, vertex_angle, HVector};
use crate::surface::{admissible_area, families, FnCoordinates, SurfaceFile, SurfaceGeometry, SCHEMA_VERSION};

/// Reports with slack below this are flagged for audit against optimizer tolerance.
pub const NEAR_VIOLATION: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, schemars::JsonSchema)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    TorusWithCone,
    FourConeSphere,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, schemars::JsonSchema)]
#[serde(deny_unknown_fields, default)]
pub struct CheckConfig {
    pub samples: usize,
    pub seed: u64,
    pub families: Vec<Family>,
    /// Range for pants-curve lengths.
    pub lengths: (f64, f64),
    /// Range for twists.
    pub twists: (f64, f64),
    /// Range for cone angles (clipped to (0, π)).
    pub cone_angles: (f64, f64),
    /// Range for lamination weights.
    pub weights: (f64, f64),
    /// Probability that a sample uses weight zero.
    pub zero_weight_rate: f64,
    /// Allowed numerical slack before a sample counts as a violation.
    pub tolerance: f64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            samples: 1000,
            seed: 0,
            families: vec![Family::TorusWithCone, Family::FourConeSphere],
            lengths: (0.3, 4.0),
            twists: (-3.0, 3.0),
            cone_angles: (0.1, 3.0),
            weights: (0.0, 2.0),
            zero_weight_rate: 0.05,
            tolerance: 1e-9,
        }
    }
}

impl CheckConfig {
    fn validate(&self) -> Result<()> {
        let range_ok = |(a, b): (f64, f64)| a.is_finite() && b.is_finite() && a <= b;
        if self.families.is_empty() {
            return Err(Error::Domain("no sample families selected".into()));
        }
        if !(range_ok(self.lengths) && self.lengths.0 > 0.0) {
            return Err(Error::Domain("length range must be positive and ordered".into()));
        }
        if !range_ok(self.twists) {
            return Err(Error::Domain("twist range must be finite and ordered".into()));
        }
        if !(range_ok(self.cone_angles) && self.cone_angles.0 > 0.0 && self.cone_angles.1 < PI) {
            return Err(Error::Domain("cone angle range must lie in (0, π)".into()));
        }
        if !(range_ok(self.weights) && self.weights.0 >= 0.0) {
            return Err(Error::Domain("weight range must be nonnegative and ordered".into()));
        }
        if !(0.0..=1.0).contains(&self.zero_weight_rate) || !(self.tolerance >= 0.0) {
            return Err(Error::Domain("zero_weight_rate must be in [0,1], tolerance >= 0".into()));
        }
        Ok(())
    }
}

/// One randomized (surface, lamination, word) triple.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Sample {
    pub family: Family,
    pub surface: SurfaceFile,
    pub lamination: RationalLamination,
    pub word_label: String,
    pub word: CurveWord,
}

fn rng_for(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

fn uniform(rng: &mut ChaCha8Rng, (a, b): (f64, f64)) -> f64 {
    if a == b {
        a
    } else {
        rng.gen_range(a..b)
    }
}

/// Draws sample `index` of the configuration.
pub fn draw_sample(cfg: &CheckConfig, index: usize) -> Sample {
    let mut rng = rng_for(cfg.seed, index);
    let family = cfg.families[rng.gen_range(0..cfg.families.len())];
    let l = uniform(&mut rng, cfg.lengths);
    let d = uniform(&mut rng, cfg.twists);
    let weight = if rng.gen_bool(cfg.zero_weight_rate) { 0.0 } else { uniform(&mut rng, cfg.weights) };
    let winding: i64 = rng.gen_range(-1..=1);
    let pants_word = rng.gen_bool(0.1);
    let (surface, word, label) = match family {
        Family::TorusWithCone => {
            let theta = uniform(&mut rng, cfg.cone_angles);
            let (w, label) = if pants_word {
                (words::pants_curve("g1"), "g1".to_string())
            } else {
                (words::torus_dual(winding), format!("torus_dual({winding})"))
            };
            (families::torus_with_cone(l, d, theta), w, label)
        }
        Family::FourConeSphere => {
            let thetas = [0; 4].map(|_| uniform(&mut rng, cfg.cone_angles));
            let (w, label) = if pants_word {
                (words::pants_curve("g1"), "g1".to_string())
            } else {
                (words::four_cone_delta(winding), format!("four_cone_delta({winding})"))
            };
            (families::four_cone_sphere(l, d, thetas), w, label)
        }
    };
    Sample {
        family,
        surface,
        lamination: RationalLamination::single("g1", weight),
        word_label: label,
        word,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleRecord {
    pub index: usize,
    pub label: String,
    pub inputs: serde_json::Value,
    pub left: f64,
    pub middle: f64,
    pub right: f64,
    /// Smallest margin of the two inequalities left ≤ middle ≤ right.
    pub slack: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Aggregate {
    pub samples: usize,
    pub violations: usize,
    pub near_violations: usize,
    pub min_slack: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub schema: String,
    pub check: String,
    pub inequality: String,
    pub config: serde_json::Value,
    pub aggregate: Aggregate,
    pub samples: Vec<SampleRecord>,
}

impl BoundReport {
    fn new(check: &str, inequality: &str, config: serde_json::Value, seed: u64, samples: Vec<SampleRecord>) -> Self {
        let aggregate = Aggregate {
            samples: samples.len(),
            violations: samples.iter().filter(|s| !s.pass).count(),
            near_violations: samples.iter().filter(|s| s.slack < NEAR_VIOLATION).count(),
            min_slack: samples.iter().map(|s| s.slack).fold(f64::INFINITY, f64::min),
            seed,
        };
        BoundReport {
            schema: SCHEMA_VERSION.into(),
            check: check.into(),
            inequality: inequality.into(),
            config,
            aggregate,
            samples,
        }
    }

    pub fn passed(&self) -> bool {
        self.aggregate.violations == 0
    }

    /// One row per sample.
    pub fn write_csv<W: std::io::Write>(&self, w: W) -> Result<()> {
        #[derive(Serialize)]
        struct Row<'a> {
            index: usize,
            label: &'a str,
            left: f64,
            middle: f64,
            right: f64,
            slack: f64,
            residual: Option<f64>,
            pass: bool,
        }
        let mut out = csv::Writer::from_writer(w);
        for s in &self.samples {
            out.serialize(Row {
                index: s.index,
                label: &s.label,
                left: s.left,
                middle: s.middle,
                right: s.right,
                slack: s.slack,
                residual: s.residual,
                pass: s.pass,
            })
            .map_err(|e| Error::Domain(format!("csv: {e}")))?;
        }
        out.flush().map_err(|e| Error::Domain(format!("csv: {e}")))?;
        Ok(())
    }
}

fn record(index: usize, label: String, inputs: serde_json::Value, lmr: [f64; 3], tol: f64) -> SampleRecord {
    let [left, middle, right] = lmr;
    let slack = (middle - left).min(right - middle);
    SampleRecord {
        index,
        label,
        inputs,
        left,
        middle,
        right,
        slack,
        residual: None,
        error: None,
        pass: slack >= -tol && slack.is_finite(),
    }
}

fn failed(index: usize, label: String, inputs: serde_json::Value, e: Error) -> SampleRecord {
    SampleRecord {
        index,
        label,
        inputs,
        left: f64::NAN,
        middle: f64::NAN,
        right: f64::NAN,
        slack: f64::NEG_INFINITY,
        residual: None,
        error: Some(e.to_string()),
        pass: false,
    }
}

fn sample_inputs(s: &Sample) -> serde_json::Value {
    serde_json::json!({
        "surface": s.surface,
        "lamination": s.lamination,
        "word": s.word,
    })
}

/// |L_g(γ) − L_g′(γ)| ≤ i(ν, γ) ≤ L_g(γ) + L_g′(γ) for g′ the earthquake of g along ν.
pub fn quake_triple(s: &Sample) -> Result<[f64; 3]> {
    let g = s.surface.build()?;
    let e = earthquake(&g, &s.lamination)?;
    let l0 = geodesic_length(&g, &s.word)?;
    let l1 = geodesic_length(&e, &s.word)?;
    let i = intersection_number(&g.decomposition, &s.lamination, &s.word)?;
    Ok([(l0 - l1).abs(), i, l0 + l1])
}

pub fn check_quake_bounds(cfg: &CheckConfig) -> Result<BoundReport> {
    cfg.validate()?;
    let records = (0..cfg.samples)
        .into_par_iter()
        .map(|k| {
            let s = draw_sample(cfg, k);
            let inputs = sample_inputs(&s);
            match quake_triple(&s) {
                Ok(t) => record(k, s.word_label, inputs, t, cfg.tolerance),
                Err(e) => failed(k, s.word_label, inputs, e),
            }
        })
        .collect();
    Ok(BoundReport::new(
        "quake",
        "|L - L'| <= i(nu, gamma) <= L + L'",
        serde_json::to_value(cfg).expect("config serializes"),
        cfg.seed,
        records,
    ))
}

/// L_m(γ) ≤ L_{G_λ(m)}(γ) ≤ L_m(γ) + i(λ, γ), with the optimizer residual.
pub fn graft_triple(s: &Sample) -> Result<([f64; 3], f64)> {
    let g = s.surface.build()?;
    let l = geodesic_length(&g, &s.word)?;
    let path = graft_length(&g, &s.lamination, &s.word)?;
    let i = intersection_number(&g.decomposition, &s.lamination, &s.word)?;
    Ok(([l, path.length, l + i], path.residual))
}

pub fn check_graft_bounds(cfg: &CheckConfig) -> Result<BoundReport> {
    cfg.validate()?;
    let records = (0..cfg.samples)
        .into_par_iter()
        .map(|k| {
            let s = draw_sample(cfg, k);
            let inputs = sample_inputs(&s);
            match graft_triple(&s) {
                Ok((t, residual)) => {
                    let mut r = record(k, s.word_label, inputs, t, cfg.tolerance);
                    r.residual = Some(residual);
                    r.pass &= residual < 1e-7;
                    r
                }
                Err(e) => failed(k, s.word_label, inputs, e),
            }
        })
        .collect();
    Ok(BoundReport::new(
        "graft",
        "L <= L_G <= L + i(lambda, gamma)",
        serde_json::to_value(cfg).expect("config serializes"),
        cfg.seed,
        records,
    ))
}

/// Random point at distance at most `radius` from o.
fn random_point(rng: &mut ChaCha8Rng, radius: f64) -> HVector {
    let r = rng.gen_range(0.0..radius);
    let phi = rng.gen_range(0.0..2.0 * PI);
    HVector::new(r.sinh() * phi.cos(), r.sinh() * phi.sin(), r.cosh())
}

/// Area of a random triangle against its shortest edge (area < every edge).
pub fn triangle_area_triple(seed: u64, index: usize) -> Result<([f64; 3], [HVector; 3])> {
    let mut rng = rng_for(seed, index);
    let pts = [0; 3].map(|_| random_point(&mut rng, 3.0));
    let angles = [
        vertex_angle(&pts[0], &pts[1], &pts[2])?,
        vertex_angle(&pts[1], &pts[2], &pts[0])?,
        vertex_angle(&pts[2], &pts[0], &pts[1])?,
    ];
    let area = triangle_area(angles)?;
    let edges = [
        dist_point_point(&pts[1], &pts[2])?,
        dist_point_point(&pts[2], &pts[0])?,
        dist_point_point(&pts[0], &pts[1])?,
    ];
    let min_edge = edges.into_iter().fold(f64::INFINITY, f64::min);
    // left ≤ middle is the strict bound; the right column repeats the edge
    Ok(([area, min_edge, min_edge], pts))
}

/// Random surface from every family, for the Gauss-Bonnet comparison.
fn random_surface(rng: &mut ChaCha8Rng) -> SurfaceFile {
    let l = |rng: &mut ChaCha8Rng| rng.gen_range(0.2..4.0);
    let d = |rng: &mut ChaCha8Rng| rng.gen_range(-3.0..3.0);
    let t = |rng: &mut ChaCha8Rng| rng.gen_range(0.05..3.1);
    match rng.gen_range(0..5) {
        0 => families::torus_with_cone(l(rng), d(rng), t(rng)),
        1 => families::four_cone_sphere(l(rng), d(rng), [t(rng), t(rng), t(rng), t(rng)]),
        2 => families::genus_two_theta([l(rng), l(rng), l(rng)], [d(rng), d(rng), d(rng)]),
        3 => families::genus_two_dumbbell([l(rng), l(rng), l(rng)], [d(rng), d(rng), d(rng)]),
        _ => families::torus_with_two_cones([l(rng), l(rng)], [d(rng), d(rng)], [t(rng), t(rng)]),
    }
}

/// Triangle area bound and Gauss-Bonnet piece sums.
///
/// Triangle records carry (area, shortest edge, shortest edge) and must have
/// positive slack. Surface records carry (sum of piece areas, Gauss-Bonnet area,
/// sum + 1e-8) so that a pass means agreement to 1e-8.
pub fn check_area(samples: usize, seed: u64) -> Result<BoundReport> {
    let mut records: Vec<SampleRecord> = (0..samples)
        .into_par_iter()
        .map(|k| match triangle_area_triple(seed, k) {
            Ok((t, pts)) => {
                let mut r = record(k, "triangle".into(), serde_json::json!({ "vertices": pts }), t, 0.0);
                r.slack = t[1] - t[0];
                r.pass = r.slack > 0.0;
                r
            }
            Err(e) => failed(k, "triangle".into(), serde_json::Value::Null, e),
        })
        .collect();
    let surfaces: Vec<SampleRecord> = (0..samples)
        .into_par_iter()
        .map(|k| {
            let mut rng = rng_for(seed ^ 0x5eed_a2ea, k);
            let file = random_surface(&mut rng);
            let inputs = serde_json::to_value(&file).expect("surface serializes");
            let idx = samples + k;
            match file.build().and_then(|g| Ok((g.total_area(), admissible_area(&g.surface)?))) {
                Ok((sum, area)) => {
                    let gap = (sum - area).abs();
                    let mut r = record(idx, "gauss_bonnet".into(), inputs, [sum, area, sum], 0.0);
                    r.slack = 1e-8 - gap;
                    r.pass = gap <= 1e-8;
                    r
                }
                Err(e) => failed(idx, "gauss_bonnet".into(), inputs, e),
            }
        })
        .collect();
    records.extend(surfaces);
    Ok(BoundReport::new(
        "area",
        "triangle area < shortest edge; sum of piece areas = Gauss-Bonnet area",
        serde_json::json!({ "samples": samples, "seed": seed }),
        seed,
        records,
    ))
}

/// Radius ρ with tanh ρ = tanh ε · cos(θ/2).
pub fn safe_radius(theta: f64, eps: f64) -> Result<f64> {
    if !(theta > 0.0 && theta < PI) {
        return Err(Error::Domain(format!("cone angle {theta} is outside (0, π)")));
    }
    if !(eps > 0.0) {
        return Err(Error::Domain(format!("radius {eps} must be positive")));
    }
    Ok((eps.tanh() * (theta / 2.0).cos()).atanh())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FnComparison {
    /// max over curves of max(l/l′, l′/l).
    pub length_ratio: f64,
    /// max over curves of |d − d′| / (|log l| + 1), with l taken from the first metric.
    pub twist_gap: f64,
}

pub fn fn_comparison(a: &FnCoordinates, b: &FnCoordinates) -> Result<FnComparison> {
    let n = a.lengths.len();
    if b.lengths.len() != n || a.twists.len() != n || b.twists.len() != n {
        return Err(Error::Domain("coordinates live on different curve sets".into()));
    }
    if a.lengths.iter().chain(&b.lengths).any(|l| !(*l > 0.0)) {
        return Err(Error::Domain("lengths must be positive".into()));
    }
    let mut out = FnComparison { length_ratio: 1.0, twist_gap: 0.0 };
    for i in 0..n {
        let (l, lp) = (a.lengths[i], b.lengths[i]);
        out.length_ratio = out.length_ratio.max((l / lp).max(lp / l));
        let gap = (a.twists[i] - b.twists[i]).abs() / (l.ln().abs() + 1.0);
        out.twist_gap = out.twist_gap.max(gap);
    }
    Ok(out)
}

/// One row of the earthquake-length probe.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeRow {
    pub index: usize,
    pub length: f64,
    pub twist_gap: f64,
    pub length_ratio: f64,
    /// Length of the earthquake lamination carrying the first metric to the second.
    pub lamination_length: f64,
}

/// Samples pairs of torus-with-cone metrics at bounded FN distance that differ by
/// an earthquake along γ₁ and records the lamination length l·|Δd|. No threshold is
/// asserted.
pub fn max_length_probe(samples: usize, seed: u64, max_gap: f64) -> Result<Vec<ProbeRow>> {
    if !(max_gap > 0.0) {
        return Err(Error::Domain("max_gap must be positive".into()));
    }
    (0..samples)
        .into_par_iter()
        .map(|k| {
            let mut rng = rng_for(seed, k);
            let l: f64 = rng.gen_range(0.05..5.0);
            let d: f64 = rng.gen_range(-3.0..3.0);
            let shift = rng.gen_range(-1.0..1.0) * max_gap * (l.ln().abs() + 1.0);
            let a = FnCoordinates { lengths: vec![l], twists: vec![d] };
            let b = FnCoordinates { lengths: vec![l], twists: vec![d + shift] };
            let cmp = fn_comparison(&a, &b)?;
            Ok(ProbeRow {
                index: k,
                length: l,
                twist_gap: cmp.twist_gap,
                length_ratio: cmp.length_ratio,
                lamination_length: l * shift.abs(),
            })
        })
        .collect()
}

/// Builds the surface of a sample (exposed for examples).
pub fn sample_geometry(s: &Sample) -> Result<SurfaceGeometry> {
    s.surface.build()
}
