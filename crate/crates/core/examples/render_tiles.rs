//! Tile, lifted-partition and Julia pictures, written as PPM, PNG and a
//! JSON sidecar. Pass an output directory, or the system temp dir is used.

use antiholo::render::{
    lifted_labels, lifted_structure, render_julia, render_lifted, render_schwarz, JuliaModel, LiftedStructure,
    RenderConfig, RenderMode, RenderStats,
};
use antiholo::{scenes, QuadratureScene, Result};
use num_complex::Complex64;
use std::path::{Path, PathBuf};

pub struct Output {
    pub files: Vec<PathBuf>,
    pub tiles: RenderStats,
    pub structure: LiftedStructure,
}

pub fn run_example(dir: &Path) -> Result<Output> {
    let scene = QuadratureScene::from_spec(&scenes::cubic())?;
    let mut files = Vec::new();

    let cfg = RenderConfig::new(RenderMode::SchwarzTiles, Complex64::new(0.5, 0.0), 3.2, 256, 256);
    let img = render_schwarz(&scene, &cfg)?;
    println!("tiles: {:?}, sha256 {}", img.stats, &img.sha256()[..16]);
    files.extend(img.write_all(dir.join("cubic-tiles"))?);
    let tiles = img.stats.clone();

    let cfg = RenderConfig::new(RenderMode::LiftedPartition, Complex64::new(-1.2, 0.0), 6.0, 256, 256);
    files.extend(render_lifted(&scene, &cfg)?.write_all(dir.join("cubic-lifted"))?);
    let structure = lifted_structure(&lifted_labels(&scene, &cfg)?, &cfg, 3.0);
    println!("lifted structure: {structure:?}");

    let cfg = RenderConfig::new(RenderMode::AntiRationalJulia, Complex64::new(0.0, 0.0), 4.0, 256, 256);
    files.extend(render_julia(&JuliaModel::blaschke(2)?, &cfg)?.write_all(dir.join("blaschke-2"))?);
    files.extend(render_julia(&JuliaModel::parabolic(3)?, &cfg)?.write_all(dir.join("parabolic-3"))?);

    for f in &files {
        println!("wrote {}", f.display());
    }
    Ok(Output {
        files,
        tiles,
        structure,
    })
}

#[allow(dead_code)]
fn main() -> Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("antiholo-render"));
    std::fs::create_dir_all(&dir)?;
    run_example(&dir).map(|_| ())
}
