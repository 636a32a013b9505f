//! Every example runs and produces the numbers it advertises.

#[path = "../examples/quadrature_scene.rs"]
mod quadrature_scene;

#[path = "../examples/correspondence_branches.rs"]
mod correspondence_branches;

#[path = "../examples/anti_farey_markov.rs"]
mod anti_farey_markov;

#[path = "../examples/boundary_conjugacy.rs"]
mod boundary_conjugacy;

#[path = "../examples/hecke_orbit.rs"]
mod hecke_orbit;

#[path = "../examples/ecalle_height.rs"]
mod ecalle_height;

#[path = "../examples/cusp_classification.rs"]
mod cusp_classification;

#[path = "../examples/render_tiles.rs"]
mod render_tiles;

#[path = "../examples/job_spec.rs"]
mod job_spec;

use antiholo::cusp::AxisCharacter;
use antiholo::quadrature::Membership;
use antiholo::TileLabel;

#[test]
fn quadrature_scene_runs() {
    let (scene, probes) = quadrature_scene::run_example().unwrap();
    assert_eq!(scene.d(), 2);
    assert_eq!(probes[0].point, num_complex::Complex64::new(0.0, 0.0));
    assert_eq!(probes[0].membership, Membership::Inside);
    assert_eq!(probes[0].label, TileLabel::TileRank(1));
    assert!(matches!(probes[1].label, TileLabel::NonEscaping(_)));
    assert_eq!(probes.last().unwrap().label, TileLabel::TileRank(0));
}

#[test]
fn correspondence_branches_runs() {
    let out = correspondence_branches::run_example().unwrap();
    assert!(out.branch_residual < 1e-10);
    assert!(out.conjugacy_residual < 1e-10);
    assert!(out.tuple.passed);
    assert!(out.orbit.passed);
}

#[test]
fn anti_farey_markov_runs() {
    let ms = anti_farey_markov::run_example().unwrap();
    for m in ms {
        assert_eq!(m.pieces.len(), m.d * m.d);
        assert!(m.primitive);
    }
}

#[test]
fn boundary_conjugacy_runs() {
    let h = boundary_conjugacy::run_example().unwrap();
    assert_eq!(h.source.len(), 256);
    assert_eq!(h.order_violations, 0);
    assert_eq!(h.eval(0.0), 0.0);
}

#[test]
fn hecke_orbit_runs() {
    let out = hecke_orbit::run_example().unwrap();
    assert!(out.relation_residual < 1e-12);
    assert!(out.separation > 1e-6);
    assert!(out.fixed_residual < 1e-12);
    assert!(out.words > 0);
}

#[test]
fn ecalle_height_runs() {
    let out = ecalle_height::run_example().unwrap();
    assert_eq!(out.models.len(), 5);
    for m in &out.models {
        assert!(m.fixed_residual < 1e-12);
        assert!((m.second_iterate_derivative - 1.0).norm() < 1e-5);
    }
    assert!(out.heights_at_zero.iter().all(|h| h.abs() < 1e-3));
    assert!(out.functional_residual < 1e-5);
}

#[test]
fn cusp_classification_runs() {
    let out = cusp_classification::run_example().unwrap();
    assert_eq!((out.table[0].n, out.table[0].axis), (3, AxisCharacter::Repelling));
    assert!(!out.table[0].has_attracting);
    assert_eq!((out.table[1].n, out.table[1].axis), (5, AxisCharacter::Attracting));
    assert_eq!(out.table[1].directions, 3);
    assert!(out.decay_slope <= -0.9);
    assert_eq!(out.scene_reports.len(), 5);
    assert!(out.scene_reports.iter().all(|(_, r, agree)| r.n == 3 && *agree));
}

#[test]
fn render_tiles_runs() {
    let dir = std::env::temp_dir().join(format!("antiholo-examples-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = render_tiles::run_example(&dir).unwrap();
    assert!(out.files.iter().all(|f| f.exists()));
    assert!(out.tiles.non_escaping > 0);
    assert!(out.structure.matches_figure(), "{:?}", out.structure);
}

#[test]
fn job_spec_runs() {
    let s = job_spec::run_example().unwrap();
    assert!(s.passed);
    assert_eq!(s.exit_code(), 0);
    assert_eq!(s.checks.len(), 4);
}
