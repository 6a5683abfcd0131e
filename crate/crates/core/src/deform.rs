//! Earthquakes and grafting along rational laminations supported on pants curves.
//!
//! An earthquake shifts the twist of every weighted curve by its weight.
//!
//! Grafting inserts a flat annulus of width w and circumference l along each
//! weighted curve. The grafted length of a word is found by minimizing, over the
//! crossing positions, the length of the closed path that alternates hyperbolic
//! segments through the pieces with straight segments across the flat strips:
//!
//! ```text
//! Σᵢ arccosh(cosh of segment i) + Σ_weighted √(wᵢ² + (s_{i+1} + tᵢ − σᵢ)²)
//! ```
//!
//! Here tᵢ is the exit position of step i, s_{i+1} the entry position of the next
//! step and σᵢ the gluing constant of the crossing. At an unweighted crossing the
//! strip has width zero and s_{i+1} = σᵢ − tᵢ is eliminated. The objective is
//! convex; it is minimized by coordinate sweeps followed by damped Newton steps.

use nalgebra::{DMatrix, DVector, Vector3};
use serde::Serialize;

use crate::curves::{crossings, geodesic_length, traversal, CurveWord, RationalLamination};
use crate::error::{Error, Result};
use crate::surface::SurfaceGeometry;

/// Right earthquake: dᵢ ↦ dᵢ + wᵢ.
pub fn earthquake(geom: &SurfaceGeometry, lam: &RationalLamination) -> Result<SurfaceGeometry> {
    let weights = lam.weights(&geom.decomposition)?;
    let twists = geom.fn_coords.twists.iter().zip(&weights).map(|(d, w)| d + w).collect();
    geom.with_twists(twists)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GraftOptions {
    /// Stop once an iteration improves the length by less than this.
    pub length_tol: f64,
    /// Maximal allowed gradient entry at the returned configuration.
    pub residual_tol: f64,
    pub max_iterations: usize,
}

impl Default for GraftOptions {
    fn default() -> Self {
        GraftOptions { length_tol: 1e-9, residual_tol: 1e-7, max_iterations: 10_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PathSegment {
    Hyperbolic { step: usize, length: f64 },
    Flat { curve: usize, width: f64, shear: f64, length: f64 },
    /// The whole path is a pants curve (or the core of its flat annulus).
    Core { curve: usize, length: f64 },
}

impl PathSegment {
    pub fn length(&self) -> f64 {
        match *self {
            PathSegment::Hyperbolic { length, .. }
            | PathSegment::Flat { length, .. }
            | PathSegment::Core { length, .. } => length,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossingOffsets {
    pub curve: usize,
    /// Position where the path leaves the piece.
    pub exit: f64,
    /// Position where it enters the next piece.
    pub entry: f64,
    pub width: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraftedPath {
    pub word: CurveWord,
    pub crossings: Vec<CrossingOffsets>,
    pub segments: Vec<PathSegment>,
    pub length: f64,
    /// Largest gradient entry at the returned configuration.
    pub residual: f64,
    pub iterations: usize,
}

pub fn graft_length(
    geom: &SurfaceGeometry,
    lam: &RationalLamination,
    w: &CurveWord,
) -> Result<GraftedPath> {
    graft_length_with(geom, lam, w, &GraftOptions::default())
}

pub fn graft_length_with(
    geom: &SurfaceGeometry,
    lam: &RationalLamination,
    w: &CurveWord,
    opts: &GraftOptions,
) -> Result<GraftedPath> {
    let weights = lam.weights(&geom.decomposition)?;
    let cross = crossings(&geom.decomposition, w)?;
    if let CurveWord::PantsCurve { pants_curve } = w {
        let c = geom.decomposition.curve_index(pants_curve).expect("validated");
        let length = geom.fn_coords.lengths[c];
        return Ok(GraftedPath {
            word: w.clone(),
            crossings: Vec::new(),
            segments: vec![PathSegment::Core { curve: c, length }],
            length,
            residual: 0.0,
            iterations: 0,
        });
    }
    if cross.is_empty() {
        // the empty word: report the non-geodesic class
        geodesic_length(geom, w)?;
    }
    let problem = Problem::new(geom, w, &cross, &weights);

    // Start from the ungrafted closed geodesic, then open the strips.
    let unweighted = Problem::new(geom, w, &cross, &vec![0.0; weights.len()]);
    let (x0, it0) = minimize(&unweighted, DVector::zeros(unweighted.dim), opts)?;
    let start = problem.lift(&unweighted, &x0);
    let (x, it1) = if problem.dim == unweighted.dim {
        (x0, 0)
    } else {
        minimize(&problem, start, opts)?
    };
    let iterations = it0 + it1;
    let (_, grad, _) = problem.eval(&x, true);
    let residual = grad.amax();
    if !(residual < opts.residual_tol) {
        return Err(Error::Convergence { residual, iterations });
    }
    Ok(problem.report(w, &x, residual, iterations))
}

/// s = offset + sign · x[var] (or a constant when `var` is None).
#[derive(Debug, Clone, Copy)]
struct Affine {
    var: Option<usize>,
    offset: f64,
    sign: f64,
}

impl Affine {
    fn at(&self, x: &DVector<f64>) -> f64 {
        self.offset + self.var.map_or(0.0, |k| self.sign * x[k])
    }
}

struct Segment {
    core: nalgebra::Matrix3<f64>,
    first: f64,
    last: f64,
    entry: Affine,
    exit: usize,
}

struct Strip {
    width: f64,
    sigma: f64,
    exit: usize,
    entry: usize,
}

struct Problem {
    dim: usize,
    segments: Vec<Segment>,
    strips: Vec<Strip>,
    curves: Vec<usize>,
    sigmas: Vec<f64>,
    widths: Vec<f64>,
    /// Variable index of the entry position after crossing i, if free.
    entry_vars: Vec<Option<usize>>,
}

fn v(u: f64) -> Vector3<f64> {
    Vector3::new(0.0, u.sinh(), u.cosh())
}

fn dv(u: f64) -> Vector3<f64> {
    Vector3::new(0.0, u.cosh(), u.sinh())
}

impl Problem {
    fn new(geom: &SurfaceGeometry, w: &CurveWord, cross: &[usize], weights: &[f64]) -> Problem {
        let CurveWord::Steps(steps) = w else { unreachable!("pants curves handled earlier") };
        let n = steps.len();
        // variables: t_0..t_{n-1}, then one entry variable per weighted crossing
        let mut dim = n;
        let mut entry_vars = vec![None; n];
        let sigmas: Vec<f64> =
            (0..n).map(|i| geom.gluing_constant(cross[i], steps[i].winding)).collect();
        let widths: Vec<f64> = cross.iter().map(|&c| weights[c]).collect();
        for i in 0..n {
            if widths[i] > 0.0 {
                entry_vars[i] = Some(dim);
                dim += 1;
            }
        }
        let mut segments = Vec::with_capacity(n);
        for (i, st) in steps.iter().enumerate() {
            let prev = (i + n - 1) % n;
            let tr = traversal(geom, st);
            let entry = match entry_vars[prev] {
                Some(k) => Affine { var: Some(k), offset: 0.0, sign: 1.0 },
                None => Affine { var: Some(prev), offset: sigmas[prev], sign: -1.0 },
            };
            segments.push(Segment { core: tr.core.0, first: tr.first, last: tr.last, entry, exit: i });
        }
        let strips = (0..n)
            .filter_map(|i| {
                entry_vars[i].map(|k| Strip {
                    width: widths[i],
                    sigma: sigmas[i],
                    exit: i,
                    entry: k,
                })
            })
            .collect();
        Problem { dim, segments, strips, curves: cross.to_vec(), sigmas, widths, entry_vars }
    }

    /// Embeds a configuration of `other` (same word, fewer free entries) into this problem.
    fn lift(&self, other: &Problem, x: &DVector<f64>) -> DVector<f64> {
        let mut out = DVector::zeros(self.dim);
        let n = self.segments.len();
        for i in 0..n {
            out[i] = x[i];
        }
        for i in 0..n {
            if let Some(k) = self.entry_vars[i] {
                let seg = &other.segments[(i + 1) % n];
                out[k] = seg.entry.at(x);
            }
        }
        out
    }

    fn segment_length(&self, seg: &Segment, x: &DVector<f64>) -> f64 {
        let s = seg.entry.at(x);
        let t = x[seg.exit];
        let f = v(s - seg.first).dot(&(seg.core * v(seg.last - t)));
        f.max(1.0).acosh()
    }

    /// Objective, gradient and (optionally) Hessian.
    fn eval(&self, x: &DVector<f64>, hessian: bool) -> (f64, DVector<f64>, DMatrix<f64>) {
        let mut total = 0.0;
        let mut g = DVector::zeros(self.dim);
        let mut h = if hessian { DMatrix::zeros(self.dim, self.dim) } else { DMatrix::zeros(0, 0) };
        for seg in &self.segments {
            let s = seg.entry.at(x);
            let t = x[seg.exit];
            let (a, b) = (s - seg.first, seg.last - t);
            let cb = seg.core * v(b);
            let cdb = seg.core * dv(b);
            let f = v(a).dot(&cb);
            let fs = dv(a).dot(&cb);
            let ft = -v(a).dot(&cdb);
            let fss = f;
            let ftt = f;
            let fst = -dv(a).dot(&cdb);
            let q = (f * f - 1.0).max(1e-300);
            let r = q.sqrt();
            total += f.max(1.0).acosh();
            let gs = fs / r;
            let gt = ft / r;
            let svar = seg.entry.var.expect("entry is never constant");
            let sgn = seg.entry.sign;
            g[svar] += sgn * gs;
            g[seg.exit] += gt;
            if hessian {
                let k = f / (q * r);
                let hss = fss / r - k * fs * fs;
                let htt = ftt / r - k * ft * ft;
                let hst = fst / r - k * fs * ft;
                h[(svar, svar)] += hss;
                h[(seg.exit, seg.exit)] += htt;
                h[(svar, seg.exit)] += sgn * hst;
                h[(seg.exit, svar)] += sgn * hst;
            }
        }
        for st in &self.strips {
            let delta = x[st.entry] + x[st.exit] - st.sigma;
            let len = (st.width * st.width + delta * delta).sqrt();
            total += len;
            let d1 = delta / len;
            g[st.entry] += d1;
            g[st.exit] += d1;
            if hessian {
                let d2 = st.width * st.width / (len * len * len);
                for a in [st.entry, st.exit] {
                    for b in [st.entry, st.exit] {
                        h[(a, b)] += d2;
                    }
                }
            }
        }
        (total, g, h)
    }

    fn value(&self, x: &DVector<f64>) -> f64 {
        let mut total: f64 = self.segments.iter().map(|s| self.segment_length(s, x)).sum();
        for st in &self.strips {
            let delta = x[st.entry] + x[st.exit] - st.sigma;
            total += (st.width * st.width + delta * delta).sqrt();
        }
        total
    }

    fn report(&self, w: &CurveWord, x: &DVector<f64>, residual: f64, iterations: usize) -> GraftedPath {
        let n = self.segments.len();
        let mut segments = Vec::new();
        let mut crossings = Vec::new();
        for i in 0..n {
            segments.push(PathSegment::Hyperbolic {
                step: i,
                length: self.segment_length(&self.segments[i], x),
            });
            let entry = self.segments[(i + 1) % n].entry.at(x);
            let width = self.widths[i];
            if width > 0.0 {
                let shear = entry + x[i] - self.sigmas[i];
                segments.push(PathSegment::Flat {
                    curve: self.curves[i],
                    width,
                    shear,
                    length: (width * width + shear * shear).sqrt(),
                });
            }
            crossings.push(CrossingOffsets { curve: self.curves[i], exit: x[i], entry, width });
        }
        let length = segments.iter().map(|s| s.length()).sum();
        GraftedPath { word: w.clone(), crossings, segments, length, residual, iterations }
    }
}

const GOLDEN: f64 = 0.381_966_011_250_105_1;

/// Minimizes `f` on a bracket [a, c] around b by golden-section search with
/// parabolic steps.
fn brent(f: impl Fn(f64) -> f64, mut a: f64, b: f64, mut c: f64, tol: f64) -> (f64, f64) {
    let (mut x, mut w, mut v) = (b, b, b);
    let (mut fx, mut fw, mut fv) = (f(b), f(b), f(b));
    let (mut d, mut e): (f64, f64) = (0.0, 0.0);
    for _ in 0..200 {
        let m = 0.5 * (a + c);
        let tol1 = tol * x.abs() + 1e-12;
        let tol2 = 2.0 * tol1;
        if (x - m).abs() <= tol2 - 0.5 * (c - a) {
            break;
        }
        let mut golden = true;
        if e.abs() > tol1 {
            let r = (x - w) * (fx - fv);
            let mut q = (x - v) * (fx - fw);
            let mut p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if q > 0.0 {
                p = -p;
            }
            q = q.abs();
            if p.abs() < (0.5 * q * e).abs() && p > q * (a - x) && p < q * (c - x) {
                e = d;
                d = p / q;
                let u = x + d;
                if u - a < tol2 || c - u < tol2 {
                    d = if x < m { tol1 } else { -tol1 };
                }
                golden = false;
            }
        }
        if golden {
            e = if x >= m { a - x } else { c - x };
            d = GOLDEN * e;
        }
        let u = if d.abs() >= tol1 { x + d } else { x + tol1.copysign(d) };
        let fu = f(u);
        if fu <= fx {
            if u >= x {
                a = x;
            } else {
                c = x;
            }
            (v, fv, w, fw, x, fx) = (w, fw, x, fx, u, fu);
        } else {
            if u < x {
                a = u;
            } else {
                c = u;
            }
            if fu <= fw || w == x {
                (v, fv, w, fw) = (w, fw, u, fu);
            } else if fu <= fv || v == x || v == w {
                (v, fv) = (u, fu);
            }
        }
    }
    (x, fx)
}

/// One-dimensional minimization of a convex function starting at `x0`.
fn line_min(f: impl Fn(f64) -> f64, x0: f64) -> f64 {
    let f0 = f(x0);
    let mut step = 0.5;
    let (mut lo, mut hi);
    if f(x0 + 1e-7) < f0 {
        lo = x0;
        hi = x0 + step;
        while f(hi) < f0 && step < 1e6 {
            lo = hi - step;
            step *= 2.0;
            hi = x0 + step;
        }
        lo = lo.min(x0);
    } else if f(x0 - 1e-7) < f0 {
        hi = x0;
        lo = x0 - step;
        while f(lo) < f0 && step < 1e6 {
            hi = lo + step;
            step *= 2.0;
            lo = x0 - step;
        }
        hi = hi.max(x0);
    } else {
        return x0;
    }
    brent(&f, lo, x0.clamp(lo, hi), hi, 1e-10).0
}

fn minimize(p: &Problem, mut x: DVector<f64>, opts: &GraftOptions) -> Result<(DVector<f64>, usize)> {
    let mut iterations = 0;
    let mut fx = p.value(&x);
    // coarse coordinate sweeps
    for _ in 0..20 {
        let before = fx;
        for k in 0..p.dim {
            let best = line_min(
                |u| {
                    let mut y = x.clone();
                    y[k] = u;
                    p.value(&y)
                },
                x[k],
            );
            x[k] = best;
            iterations += 1;
        }
        fx = p.value(&x);
        if before - fx < 1e-6 {
            break;
        }
    }
    // damped Newton polish
    loop {
        let (f, g, h) = p.eval(&x, true);
        if g.amax() < opts.residual_tol * 1e-3 {
            break;
        }
        if iterations >= opts.max_iterations {
            return Err(Error::Convergence { residual: g.amax(), iterations });
        }
        iterations += 1;
        let mut mu = 0.0;
        let dir = loop {
            let reg = &h + DMatrix::identity(p.dim, p.dim) * mu;
            match reg.cholesky() {
                Some(ch) => break -ch.solve(&g),
                None => mu = if mu == 0.0 { 1e-8 } else { mu * 10.0 },
            }
        };
        let mut step = 1.0;
        let slope = g.dot(&dir);
        let mut accepted = false;
        while step > 1e-12 {
            let trial = &x + &dir * step;
            let ft = p.value(&trial);
            if ft <= f + 1e-4 * step * slope {
                let improvement = f - ft;
                x = trial;
                accepted = true;
                if improvement < opts.length_tol * 1e-3 && (&dir * step).amax() < 1e-10 {
                    return Ok((x, iterations));
                }
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            // no further decrease is representable
            break;
        }
    }
    Ok((x, iterations))
}
