//! Escape-time pictures: tile ranks of `σ`, the lifted partition and Julia
//! sets of anti-rational models.
//!
//! Every pixel is a pure function of the config and the scene, so output
//! is byte-identical for any thread count.

mod components;
mod image;
mod julia;

pub use components::{components, lifted_structure, Component, LiftedStructure, FRAGMENT_FRACTION};
pub use image::{ImageBuffer, RenderStats, Sidecar};
pub use julia::{JuliaLabel, JuliaModel, PARABOLIC_TRAP};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::time::Instant;

use crate::error::{Error, Result};
use crate::numerics::SpherePoint;
use crate::quadrature::{QuadratureScene, TileLabel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RenderMode {
    SchwarzTiles,
    LiftedPartition,
    AntiRationalJulia,
}

/// Named colour schemes. Ranks cycle mod 8.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Palette {
    #[default]
    Classic,
    Gray,
}

const CLASSIC: [[u8; 3]; 8] = [
    [255, 255, 255],
    [250, 200, 90],
    [235, 120, 60],
    [200, 70, 90],
    [140, 70, 150],
    [80, 110, 190],
    [70, 170, 170],
    [120, 190, 100],
];

impl Palette {
    pub fn rank(self, n: u32) -> [u8; 3] {
        match self {
            Palette::Classic => CLASSIC[(n % 8) as usize],
            Palette::Gray => {
                let v = 255 - 24 * (n % 8) as u8;
                [v, v, v]
            }
        }
    }

    pub fn non_escaping(self) -> [u8; 3] {
        match self {
            Palette::Classic => [20, 30, 110],
            Palette::Gray => [0, 0, 0],
        }
    }

    pub fn indeterminate(self) -> [u8; 3] {
        [255, 0, 255]
    }

    pub fn overlay(self) -> [u8; 3] {
        match self {
            Palette::Classic => [0, 0, 0],
            Palette::Gray => [255, 0, 0],
        }
    }

    pub fn tile(self, l: TileLabel) -> [u8; 3] {
        match l {
            TileLabel::TileRank(n) => self.rank(n),
            TileLabel::NonEscaping(_) => self.non_escaping(),
            TileLabel::Indeterminate => self.indeterminate(),
        }
    }
}

fn default_max_iter() -> u32 {
    200
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RenderConfig {
    pub center: [f64; 2],
    /// Width of the view in the plane; the height follows the aspect ratio.
    pub width: f64,
    pub resolution: [usize; 2],
    #[serde(default = "default_max_iter")]
    pub max_iter: u32,
    #[serde(default)]
    pub palette: Palette,
    pub mode: RenderMode,
    /// Worker threads; 0 uses the global pool. Does not affect output.
    #[serde(default, skip_serializing_if = "is_zero")]
    pub threads: usize,
}

fn is_zero(n: &usize) -> bool {
    *n == 0
}

impl RenderConfig {
    pub fn new(mode: RenderMode, center: Complex64, width: f64, px: usize, py: usize) -> Self {
        RenderConfig {
            center: [center.re, center.im],
            width,
            resolution: [px, py],
            max_iter: default_max_iter(),
            palette: Palette::default(),
            mode,
            threads: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let [px, py] = self.resolution;
        if px < 16 || py < 16 {
            return Err(Error::InvalidConfig(format!("resolution {px}x{py} below 16x16")));
        }
        if !(self.width > 0.0 && self.width.is_finite()) {
            return Err(Error::InvalidConfig(format!("width {} must be positive", self.width)));
        }
        if self.max_iter < 1 {
            return Err(Error::InvalidConfig("max_iter must be at least 1".into()));
        }
        if !self.center.iter().all(|c| c.is_finite()) {
            return Err(Error::InvalidConfig("center must be finite".into()));
        }
        Ok(())
    }

    fn expect_mode(&self, mode: RenderMode) -> Result<()> {
        self.validate()?;
        if self.mode != mode {
            return Err(Error::InvalidConfig(format!(
                "config mode {:?}, expected {mode:?}",
                self.mode
            )));
        }
        Ok(())
    }

    /// Side length of one pixel.
    pub fn pixel_size(&self) -> f64 {
        self.width / self.resolution[0] as f64
    }

    /// Centre of pixel `(i, j)`, row `j = 0` at the top.
    pub fn point(&self, i: usize, j: usize) -> Complex64 {
        let h = self.pixel_size();
        let [px, py] = self.resolution;
        Complex64::new(
            self.center[0] + (i as f64 + 0.5 - px as f64 / 2.0) * h,
            self.center[1] - (j as f64 + 0.5 - py as f64 / 2.0) * h,
        )
    }

    /// Pixel containing `z`, if on screen.
    pub fn pixel_of(&self, z: Complex64) -> Option<(usize, usize)> {
        let h = self.pixel_size();
        let [px, py] = self.resolution;
        let i = ((z.re - self.center[0]) / h + px as f64 / 2.0).floor();
        let j = (-(z.im - self.center[1]) / h + py as f64 / 2.0).floor();
        (i >= 0.0 && j >= 0.0 && (i as usize) < px && (j as usize) < py).then_some((i as usize, j as usize))
    }
}

/// Per-pixel labels in row-major order.
#[derive(Clone, Debug, PartialEq)]
pub struct LabelGrid<L> {
    pub width: usize,
    pub height: usize,
    pub labels: Vec<L>,
}

impl<L: Copy> LabelGrid<L> {
    pub fn get(&self, i: usize, j: usize) -> L {
        self.labels[j * self.width + i]
    }

    pub fn count(&self, pred: impl Fn(L) -> bool) -> usize {
        self.labels.iter().filter(|&&l| pred(l)).count()
    }

    pub fn fraction(&self, pred: impl Fn(L) -> bool) -> f64 {
        self.count(pred) as f64 / self.labels.len() as f64
    }
}

/// Evaluates `kernel` at every pixel centre, one row per task.
pub fn label_grid<L, F>(cfg: &RenderConfig, kernel: F) -> Result<LabelGrid<L>>
where
    L: Send + Copy + Default,
    F: Fn(Complex64) -> L + Sync,
{
    cfg.validate()?;
    let [px, py] = cfg.resolution;
    let mut labels = vec![L::default(); px * py];
    let fill = |labels: &mut [L]| {
        labels.par_chunks_mut(px).enumerate().for_each(|(j, row)| {
            for (i, out) in row.iter_mut().enumerate() {
                *out = kernel(cfg.point(i, j));
            }
        })
    };
    if cfg.threads == 0 {
        fill(&mut labels);
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.threads)
            .build()
            .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;
        pool.install(|| fill(&mut labels));
    }
    Ok(LabelGrid {
        width: px,
        height: py,
        labels,
    })
}

pub fn schwarz_labels(scene: &QuadratureScene, cfg: &RenderConfig) -> Result<LabelGrid<TileLabel>> {
    label_grid(cfg, |z| scene.tile_rank(SpherePoint::Finite(z), cfg.max_iter))
}

pub fn lifted_labels(scene: &QuadratureScene, cfg: &RenderConfig) -> Result<LabelGrid<TileLabel>> {
    label_grid(cfg, |z| scene.lifted_label(SpherePoint::Finite(z), cfg.max_iter))
}

fn colourize<L: Copy>(grid: &LabelGrid<L>, colour: impl Fn(L) -> [u8; 3]) -> Vec<u8> {
    grid.labels.iter().flat_map(|&l| colour(l)).collect()
}

fn finish(cfg: &RenderConfig, hash: String, pixels: Vec<u8>, stats: RenderStats) -> ImageBuffer {
    ImageBuffer {
        width: cfg.resolution[0],
        height: cfg.resolution[1],
        pixels,
        config: cfg.clone(),
        scene_hash: hash,
        stats,
    }
}

fn tile_stats(grid: &LabelGrid<TileLabel>, start: Instant) -> RenderStats {
    let mut s = RenderStats::default();
    for &l in &grid.labels {
        match l {
            TileLabel::TileRank(n) => {
                s.escaped += 1;
                s.max_rank = s.max_rank.max(n);
            }
            TileLabel::NonEscaping(_) => s.non_escaping += 1,
            TileLabel::Indeterminate => s.indeterminate += 1,
        }
    }
    s.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    s
}

/// Tile-rank picture of `σ`.
pub fn render_schwarz(scene: &QuadratureScene, cfg: &RenderConfig) -> Result<ImageBuffer> {
    cfg.expect_mode(RenderMode::SchwarzTiles)?;
    let t = Instant::now();
    let grid = schwarz_labels(scene, cfg)?;
    let pixels = colourize(&grid, |l| cfg.palette.tile(l));
    Ok(finish(cfg, scene.hash(), pixels, tile_stats(&grid, t)))
}

/// Lifted partition: pixel `z` coloured by the tile rank of `f(z)`,
/// with the unit circle drawn over it.
pub fn render_lifted(scene: &QuadratureScene, cfg: &RenderConfig) -> Result<ImageBuffer> {
    cfg.expect_mode(RenderMode::LiftedPartition)?;
    let t = Instant::now();
    let grid = lifted_labels(scene, cfg)?;
    let mut pixels = colourize(&grid, |l| cfg.palette.tile(l));
    let h = cfg.pixel_size();
    for j in 0..grid.height {
        for i in 0..grid.width {
            if (cfg.point(i, j).norm() - 1.0).abs() < 0.5 * h {
                let k = 3 * (j * grid.width + i);
                pixels[k..k + 3].copy_from_slice(&cfg.palette.overlay());
            }
        }
    }
    Ok(finish(cfg, scene.hash(), pixels, tile_stats(&grid, t)))
}

pub fn julia_labels(model: &JuliaModel, cfg: &RenderConfig) -> Result<LabelGrid<JuliaLabel>> {
    label_grid(cfg, |z| model.classify(z, cfg.max_iter))
}

/// Escape-time picture of an anti-rational model with a parabolic trap.
pub fn render_julia(model: &JuliaModel, cfg: &RenderConfig) -> Result<ImageBuffer> {
    cfg.expect_mode(RenderMode::AntiRationalJulia)?;
    let t = Instant::now();
    let grid = julia_labels(model, cfg)?;
    let pixels = colourize(&grid, |l| match l {
        JuliaLabel::Escaped(n) => cfg.palette.rank(n),
        JuliaLabel::Converging(_) => cfg.palette.non_escaping(),
        JuliaLabel::Undecided => cfg.palette.indeterminate(),
    });
    let mut s = RenderStats::default();
    for &l in &grid.labels {
        match l {
            JuliaLabel::Escaped(n) => {
                s.escaped += 1;
                s.max_rank = s.max_rank.max(n);
            }
            JuliaLabel::Converging(_) => s.non_escaping += 1,
            JuliaLabel::Undecided => s.indeterminate += 1,
        }
    }
    s.elapsed_ms = t.elapsed().as_secs_f64() * 1e3;
    Ok(finish(cfg, model.hash(), pixels, s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenes;

    fn cfg(mode: RenderMode, c: Complex64, w: f64, n: usize) -> RenderConfig {
        RenderConfig::new(mode, c, w, n, n)
    }

    #[test]
    fn config_validation() {
        let mut c = cfg(RenderMode::SchwarzTiles, Complex64::new(0.0, 0.0), 1.0, 8);
        assert!(matches!(c.validate(), Err(Error::InvalidConfig(_))));
        c.resolution = [16, 16];
        assert!(c.validate().is_ok());
        c.width = 0.0;
        assert!(c.validate().is_err());
        c.width = 1.0;
        c.max_iter = 0;
        assert!(c.validate().is_err());
    }

    #[test]
    fn pixel_geometry() {
        let c = RenderConfig::new(RenderMode::SchwarzTiles, Complex64::new(1.0, -1.0), 4.0, 40, 20);
        let z = c.point(0, 0);
        assert!((z - Complex64::new(-0.95, 0.0 - 1.0 + 0.95)).norm() < 1e-12);
        for (i, j) in [(0, 0), (39, 19), (17, 3)] {
            assert_eq!(c.pixel_of(c.point(i, j)), Some((i, j)));
        }
        assert_eq!(c.pixel_of(Complex64::new(10.0, 0.0)), None);
    }

    #[test]
    fn outside_frame_is_rank_zero() {
        let s = QuadratureScene::from_spec(&scenes::cardioid()).unwrap();
        let c = cfg(RenderMode::SchwarzTiles, Complex64::new(6.0, 6.0), 1.0, 16);
        let g = schwarz_labels(&s, &c).unwrap();
        assert!(g.labels.iter().all(|&l| l == TileLabel::TileRank(0)));
        let img = render_schwarz(&s, &c).unwrap();
        assert!(img.pixels.chunks(3).all(|p| p == Palette::Classic.rank(0)));
    }

    #[test]
    fn mode_mismatch_rejected() {
        let s = QuadratureScene::from_spec(&scenes::cardioid()).unwrap();
        let c = cfg(RenderMode::LiftedPartition, Complex64::new(0.0, 0.0), 1.0, 16);
        assert!(render_schwarz(&s, &c).is_err());
    }

    #[test]
    fn thread_count_does_not_change_bytes() {
        let s = QuadratureScene::from_spec(&scenes::cubic()).unwrap();
        let mut c = cfg(RenderMode::SchwarzTiles, Complex64::new(0.5, 0.0), 3.2, 48);
        c.threads = 1;
        let a = render_schwarz(&s, &c).unwrap();
        c.threads = 3;
        let b = render_schwarz(&s, &c).unwrap();
        assert_eq!(a.pixels, b.pixels);
    }

    #[test]
    fn cusp_pixel_neighbourhood_non_escaping() {
        let s = QuadratureScene::from_spec(&scenes::cubic()).unwrap();
        let y = s.cusps()[0];
        let c = cfg(RenderMode::SchwarzTiles, y, 1e-9, 16);
        let g = schwarz_labels(&s, &c).unwrap();
        assert!(g.count(|l| matches!(l, TileLabel::NonEscaping(_))) > 0);
    }
}
