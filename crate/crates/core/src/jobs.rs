//! JSON job specs and the runner behind the command-line tool.
//!
//! A job file is a flat object with a `"schema"` version and a `"command"`
//! tag; every other field belongs to that command. Randomised checks take a
//! seed whose default is fixed, so a spec fully determines its output.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::path::{Path, PathBuf};

use crate::correspondence::{group_orbit_check, tuple_check};
use crate::cusp::{cusp_type, quad_cusp_report, FormalSeries};
use crate::error::{Error, Result};
use crate::external::{ecalle_height, markov_partition};
use crate::numerics::SpherePoint;
use crate::quadrature::{QuadratureScene, SceneSpec};
use crate::render::{render_julia, render_lifted, render_schwarz, JuliaModel, RenderConfig, RenderMode};
use crate::verify::{
    drift_agreement, verify_correspondence, verify_cusp, verify_external, verify_quadrature, CheckReport, Suite,
    VerifyOptions,
};

pub const JOB_SCHEMA: &str = "antiholo.job.v1";
pub const SUMMARY_SCHEMA: &str = "antiholo.summary.v1";

fn default_samples() -> usize {
    500
}
fn default_seed() -> u64 {
    7
}
fn default_tol() -> f64 {
    1e-8
}
fn default_max_iter() -> u32 {
    200
}
fn default_word_len() -> usize {
    3
}
fn origin() -> Vec<[f64; 2]> {
    vec![[0.0, 0.0]]
}

/// Julia models addressable from a job file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase", deny_unknown_fields)]
pub enum ModelSpec {
    /// `z̄^d + c_d`.
    Parabolic { d: usize },
    /// `B_d`.
    Blaschke { d: usize },
}

impl ModelSpec {
    pub fn build(&self) -> Result<JuliaModel> {
        match *self {
            ModelSpec::Parabolic { d } => JuliaModel::parabolic(d),
            ModelSpec::Blaschke { d } => JuliaModel::blaschke(d),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Job {
    Render {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        scene: Option<PathBuf>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        model: Option<ModelSpec>,
        config: RenderConfig,
        /// Output stem; `.ppm`, `.png` and `.json` are appended.
        out: PathBuf,
    },
    ClassifyCusp {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        scene: Option<PathBuf>,
        /// Germ coefficients `C₁, C₂, …` as `[re, im]`, used without a scene.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        germ: Option<Vec<[f64; 2]>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        out: Option<PathBuf>,
    },
    Verify {
        suite: Suite,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        scene: Option<PathBuf>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        d: Option<usize>,
        #[serde(default = "default_samples")]
        samples: usize,
        #[serde(default = "default_seed")]
        seed: u64,
        #[serde(default = "default_tol")]
        tol: f64,
        #[serde(default = "default_max_iter")]
        max_iter: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        out: Option<PathBuf>,
    },
    OrbitCheck {
        scene: PathBuf,
        start: [f64; 2],
        #[serde(default = "default_word_len")]
        word_len: usize,
        #[serde(default = "default_tol")]
        tol: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        out: Option<PathBuf>,
    },
    Markov {
        d: usize,
        /// CSV of the pieces and transition matrix.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        out: Option<PathBuf>,
    },
    Ecalle {
        d: usize,
        #[serde(default = "origin")]
        points: Vec<[f64; 2]>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        out: Option<PathBuf>,
    },
    TupleCheck {
        scene: PathBuf,
        value: [f64; 2],
        #[serde(default = "default_tol")]
        tol: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        out: Option<PathBuf>,
    },
}

impl Job {
    pub fn command(&self) -> &'static str {
        match self {
            Job::Render { .. } => "render",
            Job::ClassifyCusp { .. } => "classify-cusp",
            Job::Verify { .. } => "verify",
            Job::OrbitCheck { .. } => "orbit-check",
            Job::Markov { .. } => "markov",
            Job::Ecalle { .. } => "ecalle",
            Job::TupleCheck { .. } => "tuple-check",
        }
    }
}

/// A versioned job.
#[derive(Clone, Debug, PartialEq)]
pub struct JobSpec {
    pub job: Job,
}

impl JobSpec {
    pub fn new(job: Job) -> Self {
        JobSpec { job }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let mut v: Value = serde_json::from_str(text).map_err(|e| Error::Schema(format!("job file: {e}")))?;
        let obj = v
            .as_object_mut()
            .ok_or_else(|| Error::Schema("job file must be a JSON object".into()))?;
        match obj.remove("schema") {
            Some(Value::String(s)) if s == JOB_SCHEMA => {}
            Some(other) => {
                return Err(Error::Schema(format!(
                    "unsupported schema {other}, expected {JOB_SCHEMA:?}"
                )))
            }
            None => return Err(Error::Schema("missing \"schema\" field".into())),
        }
        let job = serde_json::from_value(v).map_err(|e| Error::Schema(format!("job file: {e}")))?;
        Ok(JobSpec { job })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> Result<String> {
        let mut v = serde_json::to_value(&self.job)?;
        if let Value::Object(m) = &mut v {
            m.insert("schema".into(), Value::String(JOB_SCHEMA.into()));
        }
        Ok(serde_json::to_string_pretty(&v)?)
    }
}

/// Per-run summary: checks, artifacts and the command's own result.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub schema: String,
    pub command: String,
    pub passed: bool,
    pub checks: Vec<CheckReport>,
    pub artifacts: Vec<PathBuf>,
    pub result: Value,
}

impl Summary {
    fn new(command: &str, checks: Vec<CheckReport>, artifacts: Vec<PathBuf>, result: Value) -> Self {
        Summary {
            schema: SUMMARY_SCHEMA.into(),
            command: command.into(),
            passed: checks.iter().all(|c| c.passed),
            checks,
            artifacts,
            result,
        }
    }

    /// 0 when every check passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }
}

/// Loads a scene file, falling back to a bundled scene of the same stem
/// (`cubic.json` → `cubic`) when the path does not exist.
pub fn load_scene(path: &Path) -> Result<QuadratureScene> {
    if path.exists() {
        return QuadratureScene::load(path);
    }
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default();
    match crate::scenes::by_name(stem) {
        Some(spec) => QuadratureScene::from_spec(&spec),
        None => Err(Error::InvalidConfig(format!("scene file {} not found", path.display()))),
    }
}

fn need_scene(scene: &Option<PathBuf>, command: &str) -> Result<QuadratureScene> {
    match scene {
        Some(p) => load_scene(p),
        None => Err(Error::InvalidConfig(format!("{command} needs a scene"))),
    }
}

fn write_summary(out: &Option<PathBuf>, s: &mut Summary) -> Result<()> {
    if let Some(p) = out {
        if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir)?;
        }
        s.artifacts.push(p.clone());
        std::fs::write(p, serde_json::to_string_pretty(s)?)?;
    }
    Ok(())
}

/// Runs a job. Errors carry their own exit codes; a returned summary exits
/// with [`Summary::exit_code`].
pub fn run(spec: &JobSpec) -> Result<Summary> {
    let job = &spec.job;
    let cmd = job.command();
    match job {
        Job::Render {
            scene,
            model,
            config,
            out,
        } => {
            let img = match config.mode {
                RenderMode::SchwarzTiles => render_schwarz(&need_scene(scene, cmd)?, config)?,
                RenderMode::LiftedPartition => render_lifted(&need_scene(scene, cmd)?, config)?,
                RenderMode::AntiRationalJulia => {
                    let m = model
                        .as_ref()
                        .ok_or_else(|| Error::InvalidConfig("julia render needs a model".into()))?;
                    render_julia(&m.build()?, config)?
                }
            };
            let artifacts = img.write_all(out)?;
            let side = img.sidecar();
            let frac = side.indeterminate_fraction;
            let checks = vec![CheckReport::single("indeterminate_fraction", frac, frac < 0.005)];
            Ok(Summary::new(cmd, checks, artifacts, serde_json::to_value(&side)?))
        }
        Job::ClassifyCusp { scene, germ, out } => {
            let (report, checks) = match (scene, germ) {
                (Some(p), None) => {
                    let s = load_scene(p)?;
                    let c = quad_cusp_report(&s)?;
                    (c.report, vec![drift_agreement(&s)])
                }
                (None, Some(g)) => {
                    let f = FormalSeries::polynomial(g.iter().map(|c| Complex64::new(c[0], c[1])).collect());
                    (cusp_type(&f)?, Vec::new())
                }
                _ => {
                    return Err(Error::InvalidConfig(
                        "classify-cusp needs exactly one of scene, germ".into(),
                    ))
                }
            };
            let mut s = Summary::new(cmd, checks, Vec::new(), serde_json::to_value(&report)?);
            write_summary(out, &mut s)?;
            Ok(s)
        }
        Job::Verify {
            suite,
            scene,
            d,
            samples,
            seed,
            tol,
            max_iter,
            out,
        } => {
            let opts = VerifyOptions {
                samples: *samples,
                seed: *seed,
                tol: *tol,
                max_iter: *max_iter,
            };
            let rep = match suite {
                Suite::Correspondence => verify_correspondence(&need_scene(scene, cmd)?, &opts),
                Suite::Quadrature => verify_quadrature(&need_scene(scene, cmd)?, &opts),
                Suite::External => verify_external(
                    d.ok_or_else(|| Error::InvalidConfig("external suite needs d".into()))?,
                    &opts,
                )?,
                Suite::Cusp => match scene {
                    Some(p) => verify_cusp(Some(&load_scene(p)?), &opts),
                    None => verify_cusp(None, &opts),
                },
            };
            let mut s = Summary::new(cmd, rep.checks.clone(), Vec::new(), serde_json::to_value(&rep)?);
            write_summary(out, &mut s)?;
            Ok(s)
        }
        Job::OrbitCheck {
            scene,
            start,
            word_len,
            tol,
            out,
        } => {
            let s = load_scene(scene)?;
            let z = SpherePoint::Finite(Complex64::new(start[0], start[1]));
            let rep = group_orbit_check(&s, z, *word_len, *tol)?;
            let checks = vec![CheckReport {
                check: "group_orbit".into(),
                samples: rep.points_visited,
                max_residual: rep.max_set_distance,
                failures: rep.invariance_failures + rep.rank_violations,
                skipped: rep.inconclusive,
                passed: rep.passed,
            }];
            let mut sum = Summary::new(cmd, checks, Vec::new(), serde_json::to_value(&rep)?);
            write_summary(out, &mut sum)?;
            Ok(sum)
        }
        Job::Markov { d, out } => {
            let m = markov_partition(*d)?;
            let mut artifacts = Vec::new();
            if let Some(p) = out {
                if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                    std::fs::create_dir_all(dir)?;
                }
                std::fs::write(p, m.to_csv())?;
                artifacts.push(p.clone());
            }
            let checks = vec![
                CheckReport::single("piece_count", m.pieces.len() as f64, m.pieces.len() == d * d),
                CheckReport::single("primitive", 0.0, m.primitive),
            ];
            Ok(Summary::new(cmd, checks, artifacts, serde_json::to_value(&m)?))
        }
        Job::Ecalle { d, points, out } => {
            let mut heights = Vec::new();
            for p in points {
                let z = Complex64::new(p[0], p[1]);
                heights.push(serde_json::json!({ "point": p, "height": ecalle_height(*d, z)? }));
            }
            let result = serde_json::json!({ "d": d, "heights": heights });
            let mut s = Summary::new(cmd, Vec::new(), Vec::new(), result);
            write_summary(out, &mut s)?;
            Ok(s)
        }
        Job::TupleCheck { scene, value, tol, out } => {
            let s = load_scene(scene)?;
            let rep = tuple_check(&s, SpherePoint::Finite(Complex64::new(value[0], value[1])), *tol)?;
            let checks = vec![CheckReport::single("tuple_map", rep.max_distance, rep.passed)];
            let mut sum = Summary::new(cmd, checks, Vec::new(), serde_json::to_value(&rep)?);
            write_summary(out, &mut sum)?;
            Ok(sum)
        }
    }
}

/// Bundled scene specs written as files, e.g. for `--scene` paths.
pub fn write_bundled_scenes(dir: impl AsRef<Path>) -> Result<Vec<PathBuf>> {
    let dir = dir.as_ref();
    std::fs::create_dir_all(dir)?;
    let mut out = Vec::new();
    for spec in crate::scenes::all() {
        let name = spec.name.clone().unwrap_or_else(|| "scene".into());
        let p = dir.join(format!("{name}.json"));
        std::fs::write(&p, serde_json::to_string_pretty(&spec)?)?;
        out.push(p);
    }
    Ok(out)
}

/// Parses a scene spec from JSON text, mapping failures to schema errors.
pub fn parse_scene(text: &str) -> Result<SceneSpec> {
    serde_json::from_str(text).map_err(|e| Error::Schema(format!("scene file: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let spec = JobSpec::new(Job::Markov { d: 3, out: None });
        let text = spec.to_json().unwrap();
        assert!(text.contains("\"schema\": \"antiholo.job.v1\""));
        assert!(text.contains("\"command\": \"markov\""));
        assert_eq!(JobSpec::from_json(&text).unwrap(), spec);
    }

    #[test]
    fn schema_errors() {
        for bad in [
            r#"{"command": "markov", "d": 2}"#,
            r#"{"schema": "antiholo.job.v0", "command": "markov", "d": 2}"#,
            r#"{"schema": "antiholo.job.v1", "command": "markov", "d": 2, "extra": 1}"#,
            r#"{"schema": "antiholo.job.v1", "command": "dance"}"#,
            r#"[1, 2]"#,
        ] {
            let e = JobSpec::from_json(bad).unwrap_err();
            assert!(matches!(e, Error::Schema(_)), "{bad}: {e:?}");
            assert_eq!(e.exit_code(), 2);
        }
    }

    #[test]
    fn defaults_fill_in() {
        let s = JobSpec::from_json(
            r#"{"schema": "antiholo.job.v1", "command": "verify", "suite": "correspondence", "scene": "cubic.json"}"#,
        )
        .unwrap();
        match s.job {
            Job::Verify { samples, seed, tol, .. } => {
                assert_eq!((samples, seed, tol), (500, 7, 1e-8));
            }
            j => panic!("{j:?}"),
        }
    }

    #[test]
    fn markov_job() {
        let s = run(&JobSpec::new(Job::Markov { d: 3, out: None })).unwrap();
        assert!(s.passed);
        assert_eq!(s.result["pieces"].as_array().unwrap().len(), 9);
    }

    #[test]
    fn classify_bundled_cubic() {
        let s = run(&JobSpec::new(Job::ClassifyCusp {
            scene: Some("cubic.json".into()),
            germ: None,
            out: None,
        }))
        .unwrap();
        assert!(s.passed);
        assert_eq!(s.result["n"], 3);
    }

    #[test]
    fn missing_scene_is_usage_error() {
        let e = run(&JobSpec::new(Job::TupleCheck {
            scene: "/nonexistent/nowhere.json".into(),
            value: [1.0, 0.0],
            tol: 1e-8,
            out: None,
        }))
        .unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }
}
