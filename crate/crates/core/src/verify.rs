//! Seeded batch checks of the structural identities, grouped into suites.
//!
//! Samples are drawn sequentially from a ChaCha stream and evaluated in
//! parallel; reductions are order-independent, so reports are reproducible.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use crate::correspondence::{backward_images, distinguished_branch, forward_images, tuple_check};
use crate::cusp::{
    axis_drift, cusp_normalize, cusp_type, quad_cusp_report, schwarz_germ, AxisCharacter, Coeff, CuspReport, Exact,
    FormalSeries, LocalCuspModel,
};
use crate::error::{Error, Result};
use crate::external::{
    blaschke, boundary_conjugacy, ecalle_height, markov_partition, parabolic_model_data, AntiHecke, GroupWord,
};
use crate::numerics::{eta, rel_dist, SpherePoint};
use crate::quadrature::{QuadratureScene, SingularKind, TileLabel};

pub const SCHEMA: &str = "antiholo.verify.v1";

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub samples: usize,
    pub max_residual: f64,
    pub failures: usize,
    /// Samples excluded as ramified, indeterminate or inconclusive.
    pub skipped: usize,
    pub passed: bool,
}

impl CheckReport {
    fn from_residuals(check: &str, tol: f64, outcomes: Vec<Outcome>) -> Self {
        let samples = outcomes.len();
        let mut max_residual: f64 = 0.0;
        let (mut failures, mut skipped) = (0, 0);
        for o in outcomes {
            match o {
                Outcome::Residual(r) => {
                    max_residual = max_residual.max(r);
                    if r.is_nan() || r >= tol {
                        failures += 1;
                    }
                }
                Outcome::Failed => failures += 1,
                Outcome::Skipped => skipped += 1,
            }
        }
        CheckReport {
            check: check.into(),
            samples,
            max_residual,
            failures,
            skipped,
            passed: failures == 0 && skipped < samples.max(1),
        }
    }

    pub fn single(check: &str, residual: f64, passed: bool) -> Self {
        CheckReport {
            check: check.into(),
            samples: 1,
            max_residual: residual,
            failures: usize::from(!passed),
            skipped: 0,
            passed,
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum Outcome {
    Residual(f64),
    Failed,
    Skipped,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Correspondence,
    Quadrature,
    External,
    Cusp,
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "correspondence" => Ok(Suite::Correspondence),
            "quadrature" => Ok(Suite::Quadrature),
            "external" => Ok(Suite::External),
            "cusp" => Ok(Suite::Cusp),
            _ => Err(Error::InvalidConfig(format!("unknown suite {s:?}"))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Suite::Correspondence => "correspondence",
            Suite::Quadrature => "quadrature",
            Suite::External => "external",
            Suite::Cusp => "cusp",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    pub max_iter: u32,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            samples: 500,
            seed: 7,
            tol: 1e-8,
            max_iter: 200,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema: String,
    pub suite: Suite,
    /// Scene hash or model description.
    pub subject: String,
    pub options: VerifyOptions,
    pub checks: Vec<CheckReport>,
    pub passed: bool,
}

impl SuiteReport {
    fn new(suite: Suite, subject: String, options: VerifyOptions, checks: Vec<CheckReport>) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        SuiteReport {
            schema: SCHEMA.into(),
            suite,
            subject,
            options,
            checks,
            passed,
        }
    }

    pub fn check(&self, name: &str) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.check == name)
    }
}

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn in_disk(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    let r = radius * rng.random::<f64>().sqrt();
    Complex64::from_polar(r, TAU * rng.random::<f64>())
}

fn min_dist(p: SpherePoint, set: &[SpherePoint]) -> f64 {
    set.iter().map(|&q| rel_dist(p, q)).fold(f64::INFINITY, f64::min)
}

/// Escaping vs non-escaping, `None` when the label is not trustworthy.
fn status(l: TileLabel, max_iter: u32) -> Option<bool> {
    match l {
        TileLabel::TileRank(n) if n + 2 < max_iter => Some(true),
        TileLabel::NonEscaping(_) => Some(false),
        _ => None,
    }
}

// ---- correspondence --------------------------------------------------------

/// Sampling radius for points of the lifted plane.
const LIFT_RADIUS: f64 = 3.0;

pub fn reversibility(scene: &QuadratureScene, opts: &VerifyOptions) -> CheckReport {
    let mut r = rng(opts.seed, 1);
    let pts: Vec<Complex64> = (0..opts.samples).map(|_| in_disk(&mut r, LIFT_RADIUS)).collect();
    let out = pts
        .par_iter()
        .map(|&z| {
            let z = SpherePoint::Finite(z);
            let Ok(fw) = forward_images(scene, z) else {
                return Outcome::Failed;
            };
            let mut worst: f64 = 0.0;
            for &w in &fw.images {
                match forward_images(scene, eta(w)) {
                    Ok(back) => worst = worst.max(min_dist(eta(z), &back.images)),
                    Err(_) => return Outcome::Failed,
                }
            }
            Outcome::Residual(worst)
        })
        .collect();
    CheckReport::from_residuals("reversibility", opts.tol, out)
}

pub fn tuple_map(scene: &QuadratureScene, opts: &VerifyOptions) -> CheckReport {
    let mut r = rng(opts.seed, 2);
    let pts: Vec<Complex64> = (0..opts.samples).map(|_| in_disk(&mut r, LIFT_RADIUS)).collect();
    let out = pts
        .par_iter()
        .map(|&u| {
            let Ok(v) = scene.image(u) else {
                return Outcome::Failed;
            };
            match tuple_check(scene, v, opts.tol) {
                Ok(rep) => Outcome::Residual(rep.max_distance),
                Err(Error::RamifiedTuple(_)) => Outcome::Skipped,
                Err(_) => Outcome::Failed,
            }
        })
        .collect();
    CheckReport::from_residuals("tuple_map", opts.tol, out)
}

/// `z = η(a)` with `a` a non-disk preimage of `f(w₁)`: the distinguished
/// branch must return `w₁`, and `f(branch z) = σ(f z)`.
pub fn branch_conjugacy(scene: &QuadratureScene, opts: &VerifyOptions) -> CheckReport {
    let mut r = rng(opts.seed, 3);
    let samples: Vec<(Complex64, usize)> = (0..opts.samples)
        .map(|_| (in_disk(&mut r, 0.999), r.random_range(0..scene.d())))
        .collect();
    let out = samples
        .par_iter()
        .map(|&(w1, k)| {
            let Ok(fib) = scene.map().fiber(SpherePoint::Finite(w1)) else {
                return Outcome::Failed;
            };
            let Some(a) = fib.others.get(k).and_then(|p| p.finite()) else {
                return Outcome::Skipped;
            };
            let z = match eta(SpherePoint::Finite(a)).finite() {
                Some(z) if z.norm() < 1.0 => z,
                _ => return Outcome::Skipped,
            };
            let Ok(b) = distinguished_branch(scene, z) else {
                return Outcome::Failed;
            };
            let (Ok(fb), Ok(fz)) = (scene.image(b), scene.image(z)) else {
                return Outcome::Failed;
            };
            let Ok(sfz) = scene.schwarz(fz) else {
                return Outcome::Failed;
            };
            let res = rel_dist(SpherePoint::Finite(b), SpherePoint::Finite(w1)).max(rel_dist(fb, sfz));
            Outcome::Residual(res)
        })
        .collect();
    CheckReport::from_residuals("branch_conjugacy", opts.tol, out)
}

pub fn partition_invariance(scene: &QuadratureScene, opts: &VerifyOptions) -> CheckReport {
    let mut r = rng(opts.seed, 4);
    let pts: Vec<Complex64> = (0..opts.samples).map(|_| in_disk(&mut r, LIFT_RADIUS)).collect();
    let out = pts
        .par_iter()
        .map(|&z| {
            let z = SpherePoint::Finite(z);
            let Some(s) = status(scene.lifted_label(z, opts.max_iter), opts.max_iter) else {
                return Outcome::Skipped;
            };
            let (Ok(fw), Ok(bw)) = (forward_images(scene, z), backward_images(scene, z)) else {
                return Outcome::Failed;
            };
            let mut inconclusive = false;
            for &w in fw.images.iter().chain(&bw.images) {
                match status(scene.lifted_label(w, opts.max_iter), opts.max_iter) {
                    Some(t) if t != s => return Outcome::Failed,
                    Some(_) => {}
                    None => inconclusive = true,
                }
            }
            if inconclusive {
                Outcome::Skipped
            } else {
                Outcome::Residual(0.0)
            }
        })
        .collect();
    CheckReport::from_residuals("partition_invariance", opts.tol, out)
}

pub fn verify_correspondence(scene: &QuadratureScene, opts: &VerifyOptions) -> SuiteReport {
    let checks = vec![
        reversibility(scene, opts),
        tuple_map(scene, opts),
        branch_conjugacy(scene, opts),
        partition_invariance(scene, opts),
    ];
    SuiteReport::new(Suite::Correspondence, scene.hash(), *opts, checks)
}

// ---- quadrature ------------------------------------------------------------

/// `σ(f(w)) = f(η(w))` for `w ∈ 𝔻`.
pub fn schwarz_commutation(scene: &QuadratureScene, opts: &VerifyOptions) -> CheckReport {
    let mut r = rng(opts.seed, 5);
    let pts: Vec<Complex64> = (0..opts.samples).map(|_| in_disk(&mut r, 0.999)).collect();
    let out = pts
        .par_iter()
        .map(|&w| {
            let (Ok(z), Ok(want)) = (scene.image(w), scene.map().eval(eta(SpherePoint::Finite(w)))) else {
                return Outcome::Failed;
            };
            match scene.schwarz(z) {
                Ok(s) => Outcome::Residual(rel_dist(s, want)),
                Err(Error::Indeterminate { .. }) => Outcome::Skipped,
                Err(_) => Outcome::Failed,
            }
        })
        .collect();
    CheckReport::from_residuals("schwarz_commutation", opts.tol, out)
}

pub fn verify_quadrature(scene: &QuadratureScene, opts: &VerifyOptions) -> SuiteReport {
    let u = scene.univalence();
    let doubles = scene
        .singular_points()
        .iter()
        .filter(|p| p.kind == SingularKind::DoubleCandidate)
        .count();
    let cusps_ok = scene.cusps().len() == scene.circle_critical_points().len();
    let checks = vec![
        CheckReport::single("univalence", u.min_boundary_gap, u.passed && doubles == 0),
        CheckReport::single("cusp_images", 0.0, cusps_ok),
        schwarz_commutation(scene, opts),
    ];
    SuiteReport::new(Suite::Quadrature, scene.hash(), *opts, checks)
}

// ---- external models -------------------------------------------------------

/// Angle derivative of `θ ↦ arg B_d(B_d(e^{iθ}))` at `θ = 0`.
pub fn blaschke_circle_derivative(d: usize) -> f64 {
    let h = 1e-5;
    let arg = |t: f64| {
        let z = blaschke(d, blaschke(d, SpherePoint::Finite(Complex64::from_polar(1.0, t))));
        z.finite().map_or(f64::NAN, |z| z.arg())
    };
    (arg(h) - arg(-h)) / (2.0 * h)
}

/// Smallest pairwise distance between images of a base point under the
/// distinct reduced words of length `≤ max_len`.
pub fn word_separation(g: &AntiHecke, base: Complex64, max_len: usize) -> f64 {
    let words = GroupWord::reduced_words(g.d(), max_len);
    let pts: Vec<SpherePoint> = words.iter().map(|w| g.apply(w, SpherePoint::Finite(base))).collect();
    (0..pts.len())
        .into_par_iter()
        .map(|i| {
            pts[i + 1..]
                .iter()
                .map(|&q| rel_dist(pts[i], q))
                .fold(f64::INFINITY, f64::min)
        })
        .reduce(|| f64::INFINITY, f64::min)
}

pub fn verify_external(d: usize, opts: &VerifyOptions) -> Result<SuiteReport> {
    crate::external::check_degree(d)?;
    let mut checks = Vec::new();

    let p = parabolic_model_data(d)?;
    checks.push(CheckReport::single(
        "parabolic_fixed_point",
        p.fixed_residual,
        p.fixed_residual < 1e-12,
    ));
    let dev = (p.second_iterate_derivative - 1.0).norm();
    checks.push(CheckReport::single("parabolic_multiplier", dev, dev < 1e-5));

    let one = SpherePoint::Finite(Complex64::new(1.0, 0.0));
    checks.push(CheckReport::single("blaschke_fixes_one", 0.0, blaschke(d, one) == one));
    let dev = (blaschke_circle_derivative(d) - 1.0).abs();
    checks.push(CheckReport::single("blaschke_multiplier", dev, dev < 1e-5));
    if d <= 3 {
        match ecalle_height(d, Complex64::new(0.0, 0.0)) {
            Ok(h) => checks.push(CheckReport::single("ecalle_height_zero", h.abs(), h.abs() < 1e-3)),
            Err(_) => checks.push(CheckReport::single("ecalle_height_zero", f64::MAX, false)),
        }
    }

    let g = AntiHecke::new(d)?;
    let mut r = rng(opts.seed, 6);
    let pts: Vec<Complex64> = (0..opts.samples).map(|_| in_disk(&mut r, 0.99)).collect();
    let rel = pts.iter().map(|&z| Outcome::Residual(g.relation_residual(z))).collect();
    checks.push(CheckReport::from_residuals("hecke_relations", 1e-12, rel));
    let sep = word_separation(&g, Complex64::new(0.1, 0.05), 6);
    checks.push(CheckReport::single("word_separation", sep, sep > 1e-6));

    let c1 = Complex64::new(1.0, 0.0);
    let fix = g.anti_farey(c1).map_or(f64::MAX, |v| (v - c1).norm());
    let crit = g
        .anti_farey(g.rho1(Complex64::new(0.0, 0.0)))
        .map_or(f64::MAX, |v| v.norm());
    checks.push(CheckReport::single("anti_farey_fixed_point", fix, fix < 1e-12));
    checks.push(CheckReport::single("anti_farey_critical_value", crit, crit < 1e-12));

    let m = markov_partition(d)?;
    checks.push(CheckReport::single(
        "markov_partition",
        0.0,
        m.pieces.len() == d * d && m.primitive,
    ));

    let depth = (1..=8).rev().find(|&k| d.pow(k as u32) <= 4096).unwrap_or(1);
    let bc = boundary_conjugacy(d, depth)?;
    let h1 = bc.eval(0.0).abs();
    checks.push(CheckReport::single(
        "boundary_conjugacy",
        bc.max_residual,
        bc.order_violations == 0 && h1 < 1e-12 && bc.max_residual < 1e-9,
    ));
    Ok(SuiteReport::new(Suite::External, format!("d={d}"), *opts, checks))
}

// ---- cusp calculus ---------------------------------------------------------

fn small_rational(r: &mut ChaCha8Rng) -> Exact {
    let den = r.random_range(1..=6);
    crate::cusp::exact(r.random_range(-9..=9), r.random_range(-9..=9), den)
}

fn nonzero_real(r: &mut ChaCha8Rng) -> i64 {
    let k = r.random_range(1..=9);
    if r.random::<bool>() {
        k
    } else {
        -k
    }
}

/// Random normalized germ `w² + Σ C_k w^k` of type `(n,2)`, with rational
/// coefficients and `top` terms in all.
pub fn random_germ(r: &mut ChaCha8Rng, n: usize, top: usize) -> FormalSeries<Exact> {
    let mut c = vec![crate::cusp::exact(0, 0, 1), crate::cusp::exact(1, 0, 1)];
    for k in 3..=top.max(n + 1) {
        let x = if k < n {
            // A_k = 0: odd k needs Re C_k = 0, even k needs Im C_k = 0
            let v = r.random_range(-9..=9);
            if k % 2 == 1 {
                crate::cusp::exact(0, v, r.random_range(1..=6))
            } else {
                crate::cusp::exact(v, 0, r.random_range(1..=6))
            }
        } else if k == n {
            let v = nonzero_real(r);
            let other = r.random_range(-9..=9);
            if k % 2 == 1 {
                crate::cusp::exact(v, other, r.random_range(1..=6))
            } else {
                crate::cusp::exact(other, v, r.random_range(1..=6))
            }
        } else {
            small_rational(r)
        };
        c.push(x);
    }
    FormalSeries::polynomial(c)
}

/// Exact check of `C₂(P) = -C₃/2` and the next-coefficient formula on
/// `count` random germs of types 3 and 5.
pub fn coefficient_identities(opts: &VerifyOptions, count: usize) -> CheckReport {
    let mut r = rng(opts.seed, 7);
    let germs: Vec<(usize, FormalSeries<Exact>)> = (0..count)
        .map(|i| {
            let n = if i % 2 == 0 { 3 } else { 5 };
            (n, random_germ(&mut r, n, n + 2))
        })
        .collect();
    let out = germs
        .iter()
        .map(|(n, f)| {
            let two = Exact::from_i64(2);
            let Ok(p) = crate::cusp::inverse_puiseux(f, 3) else {
                return Outcome::Failed;
            };
            let c3 = f.coeff(3).unwrap();
            if p.coeff(2).unwrap() != -(c3.clone() / two.clone()) {
                return Outcome::Failed;
            }
            let Ok(germ) = schwarz_germ(f, n + 1) else {
                return Outcome::Failed;
            };
            let alt = |k: usize| {
                let c = f.coeff(k).unwrap();
                let s = if k.is_multiple_of(2) { c.clone() } else { -c.clone() };
                s - c.conj()
            };
            let want = alt(n + 1) - Exact::from_i64(*n as i64) * c3.conj() * alt(*n) / two;
            let got = germ.coeff(n + 1).unwrap();
            Outcome::Residual((got - want).to_c64().norm())
        })
        .collect();
    CheckReport::from_residuals("coefficient_identities", 1e-12, out)
}

/// Parity rules of the classification on one report.
pub fn parity_rules_hold(r: &CuspReport) -> bool {
    let odd = r.n % 2 == 1;
    let a_ok = if odd {
        r.a_n.im == 0.0 && r.a_n.re != 0.0
    } else {
        r.a_n.re == 0.0 && r.a_n.im != 0.0
    };
    let dirs_ok = if odd {
        r.directions == r.n - 2 && !r.directions_lower_bound
    } else {
        r.directions == r.n - 1 && r.directions_lower_bound
    };
    let axis_ok = match r.n % 4 {
        3 => r.axis == AxisCharacter::Repelling,
        1 => r.axis == AxisCharacter::Attracting,
        _ => true,
    };
    a_ok && dirs_ok && axis_ok && r.has_attracting == (r.n > 3)
}

pub fn classification_table(opts: &VerifyOptions, count: usize) -> CheckReport {
    let e = |a, b| crate::cusp::exact(a, b, 1);
    let z = e(0, 0);
    let cubic = FormalSeries::polynomial(vec![z.clone(), e(1, 0), e(1, 0)]);
    let quintic = FormalSeries::polynomial(vec![z.clone(), e(1, 0), e(0, 1), z.clone(), e(1, 0)]);
    let mut ok = match (cusp_type(&cubic), cusp_type(&quintic)) {
        (Ok(a), Ok(b)) => {
            a.n == 3
                && a.axis == AxisCharacter::Repelling
                && !a.has_attracting
                && a.directions == 1
                && b.n == 5
                && b.axis == AxisCharacter::Attracting
                && b.directions == 3
        }
        _ => false,
    };
    let mut r = rng(opts.seed, 8);
    let mut failures = usize::from(!ok);
    for _ in 0..count {
        let n = r.random_range(3..=8);
        let f = random_germ(&mut r, n, n + 2);
        let good = cusp_type(&f).is_ok_and(|rep| rep.n == n && parity_rules_hold(&rep));
        if !good {
            failures += 1;
            ok = false;
        }
    }
    CheckReport {
        check: "classification_table".into(),
        samples: count + 2,
        max_residual: 0.0,
        failures,
        skipped: 0,
        passed: ok,
    }
}

/// Residuals `|β σ β⁻¹(ζ) - ζ̄ - 1/2|` for `w² + w³` along rays, and the
/// least-squares log-log slope in `|ζ|`.
pub fn normalization_decay() -> Result<(Vec<(f64, f64)>, f64)> {
    let c = |re: f64| Complex64::new(re, 0.0);
    let f = FormalSeries::polynomial(vec![c(0.0), c(1.0), c(1.0)]);
    let model = LocalCuspModel::new(&f)?;
    let nrm = cusp_normalize(&f)?;
    let mut pts = Vec::new();
    for k in 0..=8 {
        let t = 10f64.powf(2.0 + 0.25 * k as f64);
        let mut worst: f64 = 0.0;
        for a in [0.0, 0.3, -0.6] {
            let zeta = Complex64::from_polar(t, a);
            let s = model.sigma(nrm.beta_inv(zeta))?;
            worst = worst.max((nrm.beta(s) - zeta.conj() - 0.5).norm());
        }
        pts.push((t, worst));
    }
    let xs: Vec<f64> = pts.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = pts.iter().map(|p| p.1.ln()).collect();
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    Ok((pts, sxy / sxx))
}

/// Drift of `σ` along the normal-form axis agrees with the report.
pub fn drift_agreement(scene: &QuadratureScene) -> CheckReport {
    let Ok(c) = quad_cusp_report(scene) else {
        return CheckReport::single("drift_agreement", f64::MAX, false);
    };
    let mut out = Vec::new();
    for delta in [1e-3, 1e-4, 1e-5] {
        out.push(match axis_drift(scene, &c, delta) {
            Ok(d) => {
                let seen = if d > 0.0 {
                    AxisCharacter::Repelling
                } else {
                    AxisCharacter::Attracting
                };
                if seen == c.report.axis {
                    Outcome::Residual(0.0)
                } else {
                    Outcome::Failed
                }
            }
            Err(_) => Outcome::Failed,
        });
    }
    CheckReport::from_residuals("drift_agreement", 1.0, out)
}

pub fn verify_cusp(scene: Option<&QuadratureScene>, opts: &VerifyOptions) -> SuiteReport {
    let mut checks = vec![coefficient_identities(opts, 50), classification_table(opts, 20)];
    match normalization_decay() {
        Ok((_, slope)) => checks.push(CheckReport::single("normalization_slope", slope, slope <= -0.9)),
        Err(_) => checks.push(CheckReport::single("normalization_slope", f64::MAX, false)),
    }
    let subject = match scene {
        Some(s) => {
            checks.push(drift_agreement(s));
            s.hash()
        }
        None => "germs".into(),
    };
    SuiteReport::new(Suite::Cusp, subject, *opts, checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenes;

    fn opts(samples: usize) -> VerifyOptions {
        VerifyOptions {
            samples,
            ..Default::default()
        }
    }

    #[test]
    fn correspondence_suite_on_cardioid() {
        let s = QuadratureScene::from_spec(&scenes::cardioid()).unwrap();
        let rep = verify_correspondence(&s, &opts(60));
        for c in &rep.checks {
            assert!(c.passed, "{c:?}");
        }
    }

    #[test]
    fn deterministic_reports() {
        let s = QuadratureScene::from_spec(&scenes::cubic()).unwrap();
        let a = verify_correspondence(&s, &opts(30));
        let b = verify_correspondence(&s, &opts(30));
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    #[test]
    fn external_suite_d4() {
        let rep = verify_external(4, &opts(50)).unwrap();
        assert!(rep.passed, "{rep:#?}");
        assert!(rep.check("ecalle_height_zero").is_none());
    }

    #[test]
    fn random_germs_have_requested_type() {
        let mut r = rng(1, 0);
        for n in 3..=8 {
            let f = random_germ(&mut r, n, n + 2);
            let rep = cusp_type(&f).unwrap();
            assert_eq!(rep.n, n);
            assert!(parity_rules_hold(&rep), "{rep:?}");
        }
    }

    #[test]
    fn cusp_suite_without_scene() {
        let rep = verify_cusp(None, &opts(10));
        assert!(rep.passed, "{rep:#?}");
    }

    #[test]
    fn suite_names_round_trip() {
        for s in [Suite::Correspondence, Suite::Quadrature, Suite::External, Suite::Cusp] {
            assert_eq!(s.to_string().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }
}
