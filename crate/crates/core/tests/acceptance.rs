//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line
//! with its timing; the run exits nonzero if any criterion fails.
//!
//! Runs without the libtest harness so the table is always printed.

use std::time::Instant;

use antiholo::cusp::{
    axis_drift, cusp_type, exact, inverse_puiseux, quad_cusp_report, schwarz_germ_composed, AxisCharacter, Coeff,
    Exact, FormalSeries,
};
use antiholo::external::{
    blaschke, boundary_conjugacy, ecalle_height, markov_partition, parabolic_model_data, AntiHecke, GroupWord, Letter,
};
use antiholo::numerics::rel_dist;
use antiholo::render::{lifted_labels, lifted_structure, render_schwarz, RenderConfig, RenderMode};
use antiholo::verify::{normalization_decay, random_germ, verify_correspondence, word_separation, VerifyOptions};
use antiholo::{scenes, QuadratureScene, SpherePoint};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

struct Line {
    id: usize,
    name: &'static str,
    passed: bool,
    detail: String,
    secs: f64,
    limit: f64,
}

fn criterion(id: usize, name: &'static str, limit: f64, f: impl FnOnce() -> (bool, String)) -> Line {
    let t = Instant::now();
    let (ok, detail) = f();
    let secs = t.elapsed().as_secs_f64();
    let line = Line {
        id,
        name,
        passed: ok && secs < limit,
        detail,
        secs,
        limit,
    };
    println!(
        "criterion {:>2} {:<28} {}  {:.2}s (limit {}s)  {}",
        line.id,
        line.name,
        if line.passed { "PASS" } else { "FAIL" },
        line.secs,
        line.limit,
        line.detail
    );
    line
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn parabolic_constants() -> (bool, String) {
    let mut worst_fix: f64 = 0.0;
    let mut worst_der: f64 = 0.0;
    for d in 2..=6u32 {
        let df = d as f64;
        let cd = (df - 1.0) * df.powf(-df / (df - 1.0));
        let z0 = df.powf(-1.0 / (df - 1.0));
        let m = parabolic_model_data(d as usize).unwrap();
        if (m.c - cd).abs() > 1e-15 || (m.z0 - z0).abs() > 1e-15 {
            return (false, format!("d = {d}: constants differ"));
        }
        let p = |z: Complex64| z.conj().powu(d) + cd;
        let z = c(z0, 0.0);
        worst_fix = worst_fix.max((p(z) - z).norm());
        let h = 1e-6;
        let der = (p(p(z + h)) - p(p(z - h))) / (2.0 * h);
        worst_der = worst_der
            .max((der - 1.0).norm())
            .max((m.second_iterate_derivative - 1.0).norm());
    }
    (
        worst_fix < 1e-12 && worst_der < 1e-5,
        format!("max |p(z0)-z0| = {worst_fix:.1e}, max |(p∘p)'(z0)-1| = {worst_der:.1e}"),
    )
}

fn blaschke_parabolic() -> (bool, String) {
    let one = SpherePoint::Finite(c(1.0, 0.0));
    let mut ok = true;
    let mut worst_der: f64 = 0.0;
    for d in [2usize, 3] {
        ok &= blaschke(d, one) == one;
        let arg = |t: f64| {
            let w = blaschke(d, blaschke(d, SpherePoint::Finite(Complex64::from_polar(1.0, t))));
            w.finite().unwrap().arg()
        };
        let h = 1e-6;
        worst_der = worst_der.max(((arg(h) - arg(-h)) / (2.0 * h) - 1.0).abs());
    }
    let mut heights = Vec::new();
    for d in [2usize, 3] {
        heights.push(ecalle_height(d, c(0.0, 0.0)).unwrap_or(f64::NAN));
    }
    ok &= worst_der < 1e-5 && heights.iter().all(|h| h.abs() < 1e-3);
    (
        ok,
        format!("B_d(1) = 1 exactly, circle derivative error {worst_der:.1e}, heights {heights:?}"),
    )
}

fn a_term(f: &FormalSeries<Exact>, k: usize) -> Exact {
    let ck = f.coeff(k).unwrap();
    let s = if k.is_multiple_of(2) { ck.clone() } else { -ck.clone() };
    s - ck.conj()
}

fn coefficient_identities() -> (bool, String) {
    let mut r = ChaCha8Rng::seed_from_u64(2024);
    let two = exact(2, 0, 1);
    let mut exact_ok = true;
    let mut worst: f64 = 0.0;
    for i in 0..50 {
        let n = if i % 2 == 0 { 3 } else { 5 };
        let f = random_germ(&mut r, n, n + 3);
        let c3 = f.coeff(3).unwrap();
        let p = inverse_puiseux(&f, 3).unwrap();
        exact_ok &= p.coeff(2).unwrap() == -(c3.clone() / two.clone());
        // reflection germ by direct composition f(-P̄), not the closed formula
        let germ = schwarz_germ_composed(&f, n + 1).unwrap();
        let want = a_term(&f, n + 1) - exact(n as i64, 0, 1) * c3.conj() * a_term(&f, n) / two.clone();
        worst = worst.max((germ.coeff(n + 1).unwrap() - want).to_c64().norm());
    }
    (
        exact_ok && worst < 1e-12,
        format!("C2(P) = -C3/2 exact: {exact_ok}, next-coefficient residual {worst:.1e}"),
    )
}

fn classification_table() -> (bool, String) {
    let e = |a, b| exact(a, b, 1);
    let z = e(0, 0);
    let cubic = cusp_type(&FormalSeries::polynomial(vec![z.clone(), e(1, 0), e(1, 0)])).unwrap();
    let quintic = cusp_type(&FormalSeries::polynomial(vec![
        z.clone(),
        e(1, 0),
        e(0, 1),
        z.clone(),
        e(1, 0),
    ]))
    .unwrap();
    let mut ok = cubic.n == 3
        && cubic.axis == AxisCharacter::Repelling
        && !cubic.has_attracting
        && quintic.n == 5
        && quintic.axis == AxisCharacter::Attracting
        && quintic.has_attracting
        && quintic.directions == 3;
    let mut r = ChaCha8Rng::seed_from_u64(99);
    let mut bad = 0;
    for _ in 0..20 {
        let n = rand::Rng::random_range(&mut r, 3..=8usize);
        let f = random_germ(&mut r, n, n + 2);
        let rep = cusp_type(&f).unwrap();
        let expect_axis = if n % 2 == 1 {
            if n % 4 == 3 {
                AxisCharacter::Repelling
            } else {
                AxisCharacter::Attracting
            }
        } else {
            // the next coefficient of the reflection germ decides even types
            let g = schwarz_germ_composed(&f, n + 1).unwrap();
            let re = g.coeff(n + 1).unwrap().to_c64().re;
            if re < 0.0 {
                AxisCharacter::Attracting
            } else if re > 0.0 {
                AxisCharacter::Repelling
            } else {
                AxisCharacter::Neutral
            }
        };
        let dirs = if n % 2 == 1 { n - 2 } else { n - 1 };
        let good = rep.n == n && rep.axis == expect_axis && rep.directions == dirs && rep.has_attracting == (n > 3);
        if !good {
            bad += 1;
        }
    }
    ok &= bad == 0;
    (
        ok,
        format!("table rows as expected, {bad} of 20 random germs misclassified"),
    )
}

fn normalization() -> (bool, String) {
    match normalization_decay() {
        Ok((pts, slope)) => (
            slope <= -0.9,
            format!(
                "slope {slope:.3} over |zeta| in [{:.0}, {:.0}]",
                pts[0].0,
                pts[pts.len() - 1].0
            ),
        ),
        Err(e) => (false, e.to_string()),
    }
}

fn correspondence() -> (bool, String) {
    let opts = VerifyOptions {
        samples: 500,
        seed: 7,
        ..VerifyOptions::default()
    };
    let mut ok = true;
    let mut parts = Vec::new();
    for spec in [scenes::cubic(), scenes::cardioid()] {
        let s = QuadratureScene::from_spec(&spec).unwrap();
        let rep = verify_correspondence(&s, &opts);
        let worst = rep.checks.iter().map(|c| c.max_residual).fold(0.0, f64::max);
        let skipped: usize = rep.checks.iter().map(|c| c.skipped).sum();
        ok &= rep.passed && worst < 1e-8 && rep.checks.len() == 4;
        parts.push(format!(
            "{}: max {worst:.1e}, {skipped} skipped",
            spec.name.unwrap_or_default()
        ));
    }
    (ok, parts.join("; "))
}

fn is_primitive(m: &[Vec<u8>]) -> bool {
    let n = m.len();
    let mut p: Vec<Vec<u64>> = m.iter().map(|r| r.iter().map(|&x| x as u64).collect()).collect();
    for _ in 0..(n * n) {
        if p.iter().all(|r| r.iter().all(|&x| x > 0)) {
            return true;
        }
        let mut q = vec![vec![0u64; n]; n];
        for i in 0..n {
            for k in 0..n {
                for j in 0..n {
                    q[i][j] = (q[i][j] + p[i][k] * m[k][j] as u64).min(1);
                }
            }
        }
        p = q;
    }
    false
}

fn anti_hecke() -> (bool, String) {
    let mut ok = true;
    let mut worst_rel: f64 = 0.0;
    let mut sep = f64::INFINITY;
    let mut worst_farey: f64 = 0.0;
    for d in 2..=4usize {
        let g = AntiHecke::new(d).unwrap();
        for z in [c(0.1, 0.05), c(-0.3, 0.4), c(0.6, -0.2)] {
            let p = SpherePoint::Finite(z);
            let rr = g.apply(&GroupWord(vec![Letter::R, Letter::R]), p);
            let rot = g.apply(&GroupWord(vec![Letter::T(1); d + 1]), p);
            worst_rel = worst_rel.max(rel_dist(rr, p)).max(rel_dist(rot, p));
        }
        sep = sep.min(word_separation(&g, c(0.1, 0.05), 6));
        let one = c(1.0, 0.0);
        worst_farey = worst_farey
            .max((g.anti_farey(one).unwrap() - one).norm())
            .max(g.anti_farey(g.rho1(c(0.0, 0.0))).unwrap().norm());
        let m = markov_partition(d).unwrap();
        ok &= m.pieces.len() == d * d && is_primitive(&m.transition);
    }
    ok &= worst_rel < 1e-12 && sep > 1e-6 && worst_farey < 1e-12;
    (
        ok,
        format!(
            "relations {worst_rel:.1e}, word separation {sep:.2e}, anti-Farey {worst_farey:.1e}, d² pieces primitive"
        ),
    )
}

fn conjugacy() -> (bool, String) {
    let h = boundary_conjugacy(2, 8).unwrap();
    let sorted = h.target.windows(2).all(|p| p[0] < p[1]);
    let ok = h.order_violations == 0 && sorted && h.target[0] == 0.0 && h.eval(0.0) == 0.0 && h.target.len() == 256;
    (
        ok,
        format!(
            "{} samples, {} order violations, h(1) = 1, residual {:.1e}",
            h.target.len(),
            h.order_violations,
            h.max_residual
        ),
    )
}

fn rendering() -> (bool, String) {
    let scene = QuadratureScene::from_spec(&scenes::cubic()).unwrap();
    let mut cfg = RenderConfig::new(RenderMode::SchwarzTiles, c(0.5, 0.0), 3.2, 1024, 1024);
    cfg.threads = 8;
    let t = Instant::now();
    let eight = render_schwarz(&scene, &cfg).unwrap();
    let t8 = t.elapsed().as_secs_f64();
    cfg.threads = 1;
    let one = render_schwarz(&scene, &cfg).unwrap();
    let same = one.to_ppm() == eight.to_ppm();
    let frac = eight.stats.indeterminate as f64 / (1024.0 * 1024.0);

    let lcfg = RenderConfig::new(RenderMode::LiftedPartition, c(-1.2, 0.0), 6.0, 512, 512);
    let structure = lifted_structure(&lifted_labels(&scene, &lcfg).unwrap(), &lcfg, 3.0);
    let ok = same && t8 < 60.0 && frac < 0.005 && structure.matches_figure();
    (
        ok,
        format!(
            "8 threads {t8:.1}s, byte-equal {same}, indeterminate {:.3}%, lifted rank-0 regions {}, K inside/outside {}/{}",
            100.0 * frac,
            structure.rank0_regions,
            structure.k_inside,
            structure.k_outside
        ),
    )
}

fn drift_consistency() -> (bool, String) {
    let mut ok = true;
    let mut parts = Vec::new();
    for spec in scenes::all() {
        let name = spec.name.clone().unwrap_or_default();
        let scene = QuadratureScene::from_spec(&spec).unwrap();
        let rep = quad_cusp_report(&scene).unwrap();
        let mut agree = 0;
        for delta in [1e-3, 1e-4, 1e-5] {
            // step along the axis by hand and reflect once
            let z = rep.cusp + rep.g2 * delta;
            let s = scene.schwarz(SpherePoint::Finite(z)).unwrap().finite().unwrap();
            let drift = ((s - rep.cusp) / rep.g2).re - delta;
            let seen = if drift > 0.0 {
                AxisCharacter::Repelling
            } else {
                AxisCharacter::Attracting
            };
            let lib = axis_drift(&scene, &rep, delta).unwrap();
            if seen == rep.report.axis && (lib - drift).abs() <= 1e-9 * delta {
                agree += 1;
            }
        }
        ok &= agree == 3;
        parts.push(format!("{name} {:?} {agree}/3", rep.report.axis));
    }
    (ok && parts.len() == 5, parts.join(", "))
}

fn main() {
    let lines = vec![
        criterion(1, "parabolic constants", 1.0, parabolic_constants),
        criterion(2, "B_d parabolicity, height", 10.0, blaschke_parabolic),
        criterion(3, "coefficient identities", 1.0, coefficient_identities),
        criterion(4, "cusp classification", 1.0, classification_table),
        criterion(5, "normalization decay", 5.0, normalization),
        criterion(6, "correspondence structure", 30.0, correspondence),
        criterion(7, "anti-Hecke / anti-Farey", 30.0, anti_hecke),
        criterion(8, "boundary conjugacy", 10.0, conjugacy),
        criterion(9, "rendering", 120.0, rendering),
        criterion(10, "cusp drift consistency", 60.0, drift_consistency),
    ];
    let failed: Vec<usize> = lines.iter().filter(|l| !l.passed).map(|l| l.id).collect();
    println!("{} of {} criteria passed", lines.len() - failed.len(), lines.len());
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
