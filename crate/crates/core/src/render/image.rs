use serde::{Deserialize, Serialize};
use std::io::Write;
use std::path::{Path, PathBuf};

use super::RenderConfig;
use crate::error::Result;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RenderStats {
    pub escaped: usize,
    pub non_escaping: usize,
    pub indeterminate: usize,
    pub max_rank: u32,
    /// Wall time; the only field that varies between identical runs.
    pub elapsed_ms: f64,
}

/// RGB pixels, row-major, with the config and scene hash that produced them.
#[derive(Clone, Debug, PartialEq)]
pub struct ImageBuffer {
    pub width: usize,
    pub height: usize,
    pub pixels: Vec<u8>,
    pub config: RenderConfig,
    pub scene_hash: String,
    pub stats: RenderStats,
}

/// Contents of the `.json` file written next to an image.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sidecar {
    pub schema: String,
    pub config: RenderConfig,
    pub scene_hash: String,
    pub image_sha256: String,
    pub stats: RenderStats,
    pub indeterminate_fraction: f64,
}

impl ImageBuffer {
    pub fn pixel(&self, i: usize, j: usize) -> [u8; 3] {
        let k = 3 * (j * self.width + i);
        [self.pixels[k], self.pixels[k + 1], self.pixels[k + 2]]
    }

    /// Binary `P6` encoding.
    pub fn to_ppm(&self) -> Vec<u8> {
        let mut out = format!("P6\n{} {}\n255\n", self.width, self.height).into_bytes();
        out.extend_from_slice(&self.pixels);
        out
    }

    pub fn sha256(&self) -> String {
        use sha2::{Digest, Sha256};
        Sha256::digest(&self.pixels)
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }

    pub fn sidecar(&self) -> Sidecar {
        Sidecar {
            schema: "antiholo.render.v1".into(),
            config: self.config.clone(),
            scene_hash: self.scene_hash.clone(),
            image_sha256: self.sha256(),
            stats: self.stats.clone(),
            indeterminate_fraction: self.stats.indeterminate as f64 / (self.width * self.height) as f64,
        }
    }

    pub fn write_ppm(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
        f.write_all(&self.to_ppm())?;
        f.flush()?;
        Ok(())
    }

    #[cfg(feature = "png")]
    pub fn write_png(&self, path: impl AsRef<Path>) -> Result<()> {
        image::save_buffer(
            path,
            &self.pixels,
            self.width as u32,
            self.height as u32,
            image::ExtendedColorType::Rgb8,
        )
        .map_err(|e| crate::error::Error::Io(std::io::Error::other(e)))
    }

    /// Writes `<stem>.ppm`, `<stem>.png` when available, and `<stem>.json`.
    /// Returns the paths written.
    pub fn write_all(&self, stem: impl AsRef<Path>) -> Result<Vec<PathBuf>> {
        let stem = stem.as_ref();
        if let Some(dir) = stem.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir)?;
        }
        let mut written = Vec::new();
        let ppm = stem.with_extension("ppm");
        self.write_ppm(&ppm)?;
        written.push(ppm);
        #[cfg(feature = "png")]
        {
            let png = stem.with_extension("png");
            self.write_png(&png)?;
            written.push(png);
        }
        let json = stem.with_extension("json");
        std::fs::write(&json, serde_json::to_string_pretty(&self.sidecar())?)?;
        written.push(json);
        Ok(written)
    }
}

#[cfg(test)]
mod tests {
    use super::super::{RenderConfig, RenderMode};
    use super::*;
    use num_complex::Complex64;

    fn tiny() -> ImageBuffer {
        let config = RenderConfig::new(RenderMode::SchwarzTiles, Complex64::new(0.0, 0.0), 1.0, 16, 16);
        ImageBuffer {
            width: 16,
            height: 16,
            pixels: (0..16 * 16 * 3).map(|k| (k % 251) as u8).collect(),
            config,
            scene_hash: "x".into(),
            stats: RenderStats::default(),
        }
    }

    #[test]
    fn ppm_header() {
        let img = tiny();
        let ppm = img.to_ppm();
        assert!(ppm.starts_with(b"P6\n16 16\n255\n"));
        assert_eq!(ppm.len(), 13 + 16 * 16 * 3);
        assert_eq!(img.pixel(1, 0), [3, 4, 5]);
    }

    #[test]
    fn writes_files() {
        let dir = std::env::temp_dir().join(format!("antiholo-img-{}", std::process::id()));
        let paths = tiny().write_all(dir.join("pic")).unwrap();
        assert!(paths.iter().all(|p| p.exists()));
        let side: Sidecar = serde_json::from_str(&std::fs::read_to_string(dir.join("pic.json")).unwrap()).unwrap();
        assert_eq!(side.schema, "antiholo.render.v1");
        assert_eq!(side.image_sha256, tiny().sha256());
        std::fs::remove_dir_all(dir).ok();
    }
}
