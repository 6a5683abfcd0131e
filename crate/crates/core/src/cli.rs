//! The `st` command line: JSON in, JSON out.
//!
//! Results go to standard output (or `--output`) wrapped in an envelope carrying
//! the schema version; human summaries go to standard error. Exit codes: 0 on
//! success, 2 on usage, domain or JSON errors, 3 when a check finds violations.
//! `ST_THREADS` caps the worker threads used by the check suites.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::curves::{geodesic_length, holonomy, intersection_number, CurveWord, RationalLamination};
use crate::deform::{earthquake, graft_length};
use crate::doubling::{
    deformation_path, double_singular_locus, orbifold_start, validate_bending_data, BendingData,
    FillingCertificate,
};
use crate::error::Error;
use crate::estimates::{self, CheckConfig};
use crate::hkernel::translation_length;
use crate::pants::{build_pants, Leg};
use crate::surface::{admissible_area, SurfaceFile, SCHEMA_VERSION};
use crate::triangle::{self, VertexKind};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "st", version, about = "Hyperbolic cone surfaces: triangles, pants, lengths, earthquakes, grafting")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Args)]
struct Common {
    /// Write the result here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Print the JSON schema for this subcommand and exit.
    #[arg(long)]
    schema: bool,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Realize an extended triangle from edge lengths or angle data.
    TriangleSolve {
        /// Vertex kinds, e.g. `UHH`.
        #[arg(long, required_unless_present = "schema")]
        kinds: Option<String>,
        /// Three comma-separated edge lengths.
        #[arg(long, conflicts_with = "angles", required_unless_present_any = ["angles", "schema"])]
        lengths: Option<String>,
        /// Three comma-separated angles (usual) or truncation arcs (hyperideal).
        #[arg(long)]
        angles: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Build a singular pair of pants from `boundary:L` / `cone:θ` legs.
    PantsBuild {
        /// Three comma-separated legs, e.g. `boundary:1.2,cone:2.1,cone:2.1`.
        #[arg(long, required_unless_present = "schema")]
        legs: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Validate and assemble a surface file.
    SurfaceBuild {
        /// JSON file path or inline JSON text.
        #[arg(long, required_unless_present = "schema")]
        input: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Geodesic length of a curve word.
    Length {
        /// Surface file: path or inline JSON.
        #[arg(long, required_unless_present = "schema")]
        surface: Option<String>,
        /// Curve word: path or inline JSON.
        #[arg(long, required_unless_present = "schema")]
        word: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Right earthquake along a lamination; emits the new surface file.
    Quake {
        /// Surface file: path or inline JSON.
        #[arg(long, required_unless_present = "schema")]
        surface: Option<String>,
        /// Rational lamination: path or inline JSON.
        #[arg(long, required_unless_present = "schema")]
        lamination: Option<String>,
        /// Also report the length of this word before and after.
        #[arg(long)]
        word: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Length of a word in the grafted metric.
    Graft {
        /// Surface file: path or inline JSON.
        #[arg(long, required_unless_present = "schema")]
        surface: Option<String>,
        /// Rational lamination: path or inline JSON.
        #[arg(long, required_unless_present = "schema")]
        lamination: Option<String>,
        /// Curve word: path or inline JSON.
        #[arg(long, required_unless_present = "schema")]
        word: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Verification suites.
    Check {
        #[command(subcommand)]
        suite: CheckCmd,
    },
    /// Radius of the disk around a cone point met by every convex set reaching distance eps.
    SafeRadius {
        /// Cone angle in (0, π).
        #[arg(long, required_unless_present = "schema", allow_negative_numbers = true)]
        theta: Option<f64>,
        #[arg(long, required_unless_present = "schema", allow_negative_numbers = true)]
        eps: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Doubled singular locus, orbifold start angles and the deformation schedule.
    DoublePlan {
        /// JSON file path or inline JSON text.
        #[arg(long, required_unless_present = "schema")]
        input: Option<String>,
        /// Number of schedule rows.
        #[arg(long, default_value_t = 11)]
        steps: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Check bending data against the weight bound and a filling certificate.
    ValidateBending {
        /// JSON file path or inline JSON text.
        #[arg(long, required_unless_present = "schema")]
        input: Option<String>,
        /// Filling certificate: path or inline JSON.
        #[arg(long, required_unless_present = "schema")]
        certificate: Option<String>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Args)]
struct CheckArgs {
    /// Number of random samples.
    #[arg(long)]
    samples: Option<usize>,
    /// Seed for the sample generator.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// JSON configuration; flags override its fields.
    #[arg(long)]
    config: Option<String>,
    /// A sample fails when its slack is below minus this value.
    #[arg(long)]
    tolerance: Option<f64>,
    /// Also write one CSV row per sample.
    #[arg(long)]
    csv: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Subcommand)]
enum CheckCmd {
    /// |L - L'| <= i(nu, gamma) <= L + L' for earthquakes.
    Quake(CheckArgs),
    /// L <= L_G <= L + i(lambda, gamma) for grafting.
    Graft(CheckArgs),
    /// Triangle area below every edge; piece areas sum to the Gauss-Bonnet area.
    Area(CheckArgs),
    /// Earthquake-lamination length under bounded twist distortion (no threshold).
    MaxLength {
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1.0)]
        max_gap: f64,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug)]
enum CliError {
    Domain(Error),
    Input(String),
    Violations(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

type CliResult = std::result::Result<(), CliError>;

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
        }
    };
    let outcome = match thread_pool() {
        Ok(Some(pool)) => pool.install(|| dispatch(cli.cmd)),
        Ok(None) => dispatch(cli.cmd),
        Err(e) => Err(e),
    };
    match outcome {
        Ok(()) => EXIT_OK,
        Err(CliError::Domain(e)) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            EXIT_ERROR
        }
        Err(CliError::Violations(msg)) => {
            eprintln!("check failed: {msg}");
            EXIT_VIOLATION
        }
    }
}

fn thread_pool() -> std::result::Result<Option<rayon::ThreadPool>, CliError> {
    let Ok(v) = std::env::var("ST_THREADS") else { return Ok(None) };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| CliError::Input(format!("ST_THREADS=`{v}` is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .map(Some)
        .map_err(|e| CliError::Input(format!("cannot start {n} threads: {e}")))
}

fn required<T>(v: Option<T>, flag: &str) -> std::result::Result<T, CliError> {
    v.ok_or_else(|| CliError::Input(format!("missing --{flag}")))
}

fn parse_list(s: &str, flag: &str) -> std::result::Result<[f64; 3], CliError> {
    let v: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| CliError::Input(format!("--{flag}: `{s}` is not a list of numbers")))?;
    v.try_into()
        .map_err(|_| CliError::Input(format!("--{flag}: expected three values")))
}

/// Reads JSON from a file, or inline when the argument starts with `{` or `[`.
fn read_json<T: DeserializeOwned>(source: &str) -> std::result::Result<T, CliError> {
    let trimmed = source.trim_start();
    let (text, label) = if trimmed.starts_with('{') || trimmed.starts_with('[') {
        (source.to_string(), "inline JSON".to_string())
    } else {
        let text = fs::read_to_string(source)
            .map_err(|e| CliError::Input(format!("cannot read `{source}`: {e}")))?;
        (text, format!("`{source}`"))
    };
    let de = &mut serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        CliError::Input(format!("{label}: {} (at `{path}`)", e.into_inner()))
    })
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema: &'static str,
    command: &'a str,
    result: T,
}

fn emit<T: Serialize>(command: &str, result: &T, common: &Common) -> CliResult {
    let bytes = to_json_bytes(&Envelope { schema: SCHEMA_VERSION, command, result });
    write_out(&bytes, common.output.as_deref())
}

fn write_out(bytes: &[u8], path: Option<&Path>) -> CliResult {
    match path {
        Some(p) => fs::write(p, bytes)
            .map_err(|e| CliError::Input(format!("cannot write `{}`: {e}", p.display()))),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(bytes)
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Input(format!("cannot write output: {e}")))
        }
    }
}

fn emit_schema<T: schemars::JsonSchema>() -> CliResult {
    let schema = schemars::schema_for!(T);
    let mut text = serde_json::to_string_pretty(&schema).expect("schemas serialize");
    text.push('\n');
    write_out(text.as_bytes(), None)
}

/// Serializes with every float written to 17 significant digits.
pub fn to_json_bytes<T: Serialize>(value: &T) -> Vec<u8> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Digits17::default());
    value.serialize(&mut ser).expect("results serialize");
    buf.push(b'\n');
    buf
}

/// Formats a finite float with 17 significant digits.
pub fn format_f64(x: f64) -> String {
    if !x.is_finite() {
        return "null".into();
    }
    if x == 0.0 {
        return "0.0".into();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..=15).contains(&exp) {
        format!("{:.*}", (16 - exp) as usize, x)
    } else {
        format!("{x:.16e}")
    }
}

/// Pretty JSON whose floats carry 17 significant digits.
#[derive(Default)]
struct Digits17 {
    inner: serde_json::ser::PrettyFormatter<'static>,
}

impl serde_json::ser::Formatter for Digits17 {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        w.write_all(format_f64(value).as_bytes())
    }
    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }
    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_array(w)
    }
    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_array(w)
    }
    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.inner.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_array_value(w)
    }
    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_object(w)
    }
    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_object(w)
    }
    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.inner.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_object_value(w)
    }
}

#[derive(Serialize, schemars::JsonSchema)]
struct TriangleOutput {
    triangle: triangle::ExtendedTriangle,
    truncated_boundary: Vec<triangle::Segment>,
    truncated_area: f64,
}

#[derive(Serialize, schemars::JsonSchema)]
struct PantsOutput {
    pants: crate::pants::SingularPants,
    seams: [f64; 3],
    area: f64,
}

#[derive(Serialize, schemars::JsonSchema)]
struct SafeRadiusOutput {
    theta: f64,
    eps: f64,
    rho: f64,
}

#[derive(Serialize)]
struct LengthOutput {
    word: CurveWord,
    length: f64,
    kind: String,
    holonomy: crate::hkernel::Isometry,
}

#[derive(Serialize)]
struct WordLengths {
    before: f64,
    after: f64,
    intersection: f64,
}

#[derive(Serialize)]
struct QuakeOutput {
    surface: SurfaceFile,
    #[serde(skip_serializing_if = "Option::is_none")]
    word: Option<WordLengths>,
}

#[derive(Serialize)]
struct GraftOutput {
    geodesic_length: f64,
    intersection: f64,
    path: crate::deform::GraftedPath,
}

#[derive(Serialize)]
struct PlanOutput {
    locus: Option<crate::doubling::DoubledLocus>,
    start: crate::doubling::OrbifoldStart,
    schedule: crate::doubling::Schedule,
}

#[derive(schemars::JsonSchema)]
#[allow(dead_code)]
struct WordInputs {
    surface: SurfaceFile,
    word: CurveWord,
}

#[derive(schemars::JsonSchema)]
#[allow(dead_code)]
struct QuakeInputs {
    surface: SurfaceFile,
    lamination: RationalLamination,
    word: Option<CurveWord>,
}

#[derive(schemars::JsonSchema)]
#[allow(dead_code)]
struct BendingInputs {
    input: BendingData,
    certificate: FillingCertificate,
}

fn dispatch(cmd: Cmd) -> CliResult {
    match cmd {
        Cmd::TriangleSolve { kinds, lengths, angles, common } => {
            if common.schema {
                return emit_schema::<TriangleOutput>();
            }
            let kinds_str = required(kinds, "kinds")?;
            let chars: Vec<String> = kinds_str.chars().map(|c| c.to_string()).collect();
            if chars.len() != 3 {
                return Err(CliError::Input("--kinds needs three letters U/H".into()));
            }
            let kinds = [
                VertexKind::parse(&chars[0])?,
                VertexKind::parse(&chars[1])?,
                VertexKind::parse(&chars[2])?,
            ];
            let tri = match (lengths, angles) {
                (Some(l), None) => triangle::solve_from_lengths(kinds, parse_list(&l, "lengths")?)?,
                (None, Some(a)) => triangle::solve_from_angles(kinds, parse_list(&a, "angles")?)?,
                _ => return Err(CliError::Input("give exactly one of --lengths, --angles".into())),
            };
            eprintln!("edge lengths {:?}, angle data {:?}", tri.edge_lengths, tri.angle_data);
            let out = TriangleOutput {
                truncated_boundary: tri.truncated_boundary()?,
                truncated_area: tri.truncated_area(),
                triangle: tri,
            };
            emit("triangle-solve", &out, &common)
        }
        Cmd::PantsBuild { legs, common } => {
            if common.schema {
                return emit_schema::<PantsOutput>();
            }
            let legs_str = required(legs, "legs")?;
            let parsed: Vec<Leg> = legs_str.split(',').map(Leg::parse).collect::<Result<_, _>>()?;
            let legs: [Leg; 3] = parsed
                .try_into()
                .map_err(|_| CliError::Input("--legs needs exactly three legs".into()))?;
            let p = build_pants(legs)?;
            eprintln!("seams {:?}", p.seams);
            let out = PantsOutput { seams: p.seams, area: p.area(), pants: p };
            emit("pants-build", &out, &common)
        }
        Cmd::SurfaceBuild { input, common } => {
            if common.schema {
                return emit_schema::<SurfaceFile>();
            }
            let file: SurfaceFile = read_json(&required(input, "input")?)?;
            let g = file.build()?;
            let area = admissible_area(&g.surface)?;
            eprintln!("{} pieces, area {area}", g.pieces.len());
            emit("surface-build", &serde_json::json!({ "geometry": g, "admissible_area": area }), &common)
        }
        Cmd::Length { surface, word, common } => {
            if common.schema {
                return emit_schema::<WordInputs>();
            }
            let g = read_json::<SurfaceFile>(&required(surface, "surface")?)?.build()?;
            let w: CurveWord = read_json(&required(word, "word")?)?;
            let m = holonomy(&g, &w)?;
            let t = translation_length(&m)?;
            let length = geodesic_length(&g, &w)?;
            eprintln!("length {length}");
            let out = LengthOutput { word: w, length, kind: t.kind.to_string(), holonomy: m };
            emit("length", &out, &common)
        }
        Cmd::Quake { surface, lamination, word, common } => {
            if common.schema {
                return emit_schema::<QuakeInputs>();
            }
            let g = read_json::<SurfaceFile>(&required(surface, "surface")?)?.build()?;
            let lam: RationalLamination = read_json(&required(lamination, "lamination")?)?;
            let e = earthquake(&g, &lam)?;
            let word = match word {
                Some(src) => {
                    let w: CurveWord = read_json(&src)?;
                    Some(WordLengths {
                        before: geodesic_length(&g, &w)?,
                        after: geodesic_length(&e, &w)?,
                        intersection: intersection_number(&g.decomposition, &lam, &w)?,
                    })
                }
                None => None,
            };
            let out = QuakeOutput {
                surface: SurfaceFile::from_parts(&e.surface, &e.decomposition, &e.fn_coords),
                word,
            };
            emit("quake", &out, &common)
        }
        Cmd::Graft { surface, lamination, word, common } => {
            if common.schema {
                return emit_schema::<QuakeInputs>();
            }
            let g = read_json::<SurfaceFile>(&required(surface, "surface")?)?.build()?;
            let lam: RationalLamination = read_json(&required(lamination, "lamination")?)?;
            let w: CurveWord = read_json(&required(word, "word")?)?;
            let path = graft_length(&g, &lam, &w)?;
            let out = GraftOutput {
                geodesic_length: geodesic_length(&g, &w)?,
                intersection: intersection_number(&g.decomposition, &lam, &w)?,
                path,
            };
            eprintln!("grafted length {} (geodesic {})", out.path.length, out.geodesic_length);
            emit("graft", &out, &common)
        }
        Cmd::Check { suite } => run_check(suite),
        Cmd::SafeRadius { theta, eps, common } => {
            if common.schema {
                return emit_schema::<SafeRadiusOutput>();
            }
            let (theta, eps) = (required(theta, "theta")?, required(eps, "eps")?);
            let rho = estimates::safe_radius(theta, eps)?;
            eprintln!("rho = {rho}");
            emit("safe-radius", &SafeRadiusOutput { theta, eps, rho }, &common)
        }
        Cmd::DoublePlan { input, steps, common } => {
            if common.schema {
                return emit_schema::<BendingData>();
            }
            let b: BendingData = read_json(&required(input, "input")?)?;
            let locus = if b.particles.iter().all(|p| p.segment_length.is_some()) {
                Some(double_singular_locus(&b)?)
            } else {
                eprintln!("particle segment lengths missing: skipping the doubled locus");
                None
            };
            let start = orbifold_start(&b)?;
            let from: Vec<f64> = start.pleating.iter().map(|s| s.angle).collect();
            let to: Vec<f64> = b.pleating.iter().map(|p| p.weight).collect();
            let schedule = deformation_path(&from, &to, steps)?;
            for w in &schedule.warnings {
                eprintln!("warning: {w}");
            }
            emit("double-plan", &PlanOutput { locus, start, schedule }, &common)
        }
        Cmd::ValidateBending { input, certificate, common } => {
            if common.schema {
                return emit_schema::<BendingInputs>();
            }
            let b: BendingData = read_json(&required(input, "input")?)?;
            let cert: FillingCertificate = read_json(&required(certificate, "certificate")?)?;
            match validate_bending_data(&b, &cert) {
                Ok(c) => emit("validate-bending", &c, &common),
                Err(Error::Bending(v)) => {
                    emit(
                        "validate-bending",
                        &serde_json::json!({ "ok": false, "violations": v }),
                        &common,
                    )?;
                    Err(CliError::Violations(v.join("; ")))
                }
                Err(e) => Err(e.into()),
            }
        }
    }
}

fn check_config(args: &CheckArgs) -> std::result::Result<CheckConfig, CliError> {
    let mut cfg: CheckConfig = match &args.config {
        Some(src) => read_json(src)?,
        None => CheckConfig::default(),
    };
    if let Some(n) = args.samples {
        cfg.samples = n;
    }
    if args.config.is_none() || args.seed != 0 {
        cfg.seed = args.seed;
    }
    if let Some(t) = args.tolerance {
        cfg.tolerance = t;
    }
    Ok(cfg)
}

fn finish_report(report: &estimates::BoundReport, args: &CheckArgs) -> CliResult {
    emit(&format!("check {}", report.check), report, &args.common)?;
    if let Some(path) = &args.csv {
        let file = fs::File::create(path)
            .map_err(|e| CliError::Input(format!("cannot write `{}`: {e}", path.display())))?;
        report.write_csv(file)?;
    }
    let a = &report.aggregate;
    eprintln!(
        "{}: {} samples, {} violations, {} near violations, min slack {:e}",
        report.check, a.samples, a.violations, a.near_violations, a.min_slack + 0.0
    );
    if report.passed() {
        Ok(())
    } else {
        Err(CliError::Violations(format!("{} of {} samples violate {}", a.violations, a.samples, report.inequality)))
    }
}

fn run_check(suite: CheckCmd) -> CliResult {
    match suite {
        CheckCmd::Quake(args) => {
            if args.common.schema {
                return emit_schema::<CheckConfig>();
            }
            let cfg = check_config(&args)?;
            finish_report(&estimates::check_quake_bounds(&cfg)?, &args)
        }
        CheckCmd::Graft(args) => {
            if args.common.schema {
                return emit_schema::<CheckConfig>();
            }
            let cfg = check_config(&args)?;
            finish_report(&estimates::check_graft_bounds(&cfg)?, &args)
        }
        CheckCmd::Area(args) => {
            if args.common.schema {
                return emit_schema::<CheckConfig>();
            }
            let cfg = check_config(&args)?;
            finish_report(&estimates::check_area(cfg.samples, cfg.seed)?, &args)
        }
        CheckCmd::MaxLength { samples, seed, max_gap, common } => {
            if common.schema {
                return emit_schema::<CheckConfig>();
            }
            let rows = estimates::max_length_probe(samples, seed, max_gap)?;
            let worst = rows.iter().map(|r| r.lamination_length).fold(0.0, f64::max);
            eprintln!("max-length probe: {samples} samples, largest lamination length {worst}");
            emit("check max-length", &rows, &common)
        }
    }
}
