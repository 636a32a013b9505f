use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};
use std::fmt;

use super::check_degree;
use crate::error::{Error, Result};
use crate::numerics::SpherePoint;

/// Generators of `Γ_d = ⟨ρ₁⟩ * ⟨M_ω⟩ ≅ ℤ/2 * ℤ/(d+1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Letter {
    /// The circle reflection `ρ₁`.
    R,
    /// The rotation `z ↦ ω^k z`, `1 ≤ k ≤ d`.
    T(u8),
}

/// A word `l₁ l₂ … l_n` acting as `l₁ ∘ l₂ ∘ … ∘ l_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct GroupWord(pub Vec<Letter>);

impl GroupWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Letters alternate between `R` and rotations.
    pub fn is_reduced(&self) -> bool {
        self.0
            .windows(2)
            .all(|w| !matches!((w[0], w[1]), (Letter::R, Letter::R) | (Letter::T(_), Letter::T(_))))
    }

    /// Every reduced word of length at most `max_len` over `Γ_d`.
    pub fn reduced_words(d: usize, max_len: usize) -> Vec<GroupWord> {
        let mut out = vec![GroupWord::default()];
        let mut layer = vec![GroupWord::default()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &layer {
                let last = w.0.last().copied();
                if !matches!(last, Some(Letter::R)) {
                    let mut v = w.clone();
                    v.0.push(Letter::R);
                    next.push(v);
                }
                if !matches!(last, Some(Letter::T(_))) {
                    for k in 1..=d as u8 {
                        let mut v = w.clone();
                        v.0.push(Letter::T(k));
                        next.push(v);
                    }
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "id");
        }
        for l in &self.0 {
            match l {
                Letter::R => write!(f, "R")?,
                Letter::T(k) => write!(f, "T{k}")?,
            }
        }
        Ok(())
    }
}

/// The anti-Hecke group acting on the closed unit disk.
#[derive(Clone, Debug)]
pub struct AntiHecke {
    d: usize,
    width: f64,
    omega: Complex64,
    centres: Vec<Complex64>,
    radius: f64,
}

impl AntiHecke {
    pub fn new(d: usize) -> Result<Self> {
        check_degree(d)?;
        let n = (d + 1) as f64;
        let half = PI / n;
        let centres = (1..=d + 1)
            .map(|j| Complex64::from_polar(1.0 / half.cos(), PI * (2 * j - 1) as f64 / n))
            .collect();
        Ok(AntiHecke {
            d,
            width: TAU / n,
            omega: Complex64::from_polar(1.0, TAU / n),
            centres,
            radius: half.tan(),
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Angular width `2π/(d+1)` of the fundamental sector.
    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn omega(&self) -> Complex64 {
        self.omega
    }

    /// Centre of the circle `C_j`, `1 ≤ j ≤ d+1`.
    pub fn centre(&self, j: usize) -> Complex64 {
        self.centres[j - 1]
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Reflection `ρ_j(z) = c_j + r² / conj(z - c_j)` in `C_j`.
    pub fn rho(&self, j: usize, z: SpherePoint) -> SpherePoint {
        let c = self.centres[j - 1];
        match z {
            SpherePoint::Infinity => SpherePoint::Finite(c),
            SpherePoint::Finite(w) => {
                let u = w - c;
                if u.norm_sqr() == 0.0 {
                    SpherePoint::Infinity
                } else {
                    SpherePoint::from_complex(c + self.radius * self.radius / u.conj())
                }
            }
        }
    }

    pub fn rho1(&self, z: Complex64) -> Complex64 {
        let c = self.centres[0];
        c + self.radius * self.radius / (z - c).conj()
    }

    /// `z ↦ ω^k z`.
    pub fn rotate(&self, k: i64, z: SpherePoint) -> SpherePoint {
        let m = k.rem_euclid(self.d as i64 + 1) as f64;
        match z {
            SpherePoint::Infinity => SpherePoint::Infinity,
            SpherePoint::Finite(w) => SpherePoint::Finite(w * Complex64::from_polar(1.0, m * self.width)),
        }
    }

    pub fn apply_letter(&self, l: Letter, z: SpherePoint) -> SpherePoint {
        match l {
            Letter::R => self.rho(1, z),
            Letter::T(k) => self.rotate(k as i64, z),
        }
    }

    pub fn apply(&self, word: &GroupWord, z: SpherePoint) -> SpherePoint {
        word.0.iter().rev().fold(z, |acc, &l| self.apply_letter(l, acc))
    }

    fn in_sector(&self, z: Complex64) -> bool {
        let t = z.arg();
        (-1e-13..=self.width + 1e-13).contains(&t)
    }

    /// Representative of `z` modulo rotations, with argument in `[0, 2π/(d+1)]`.
    ///
    /// Idempotent. Points already in the closed sector are returned unchanged.
    pub fn canonicalize(&self, z: Complex64) -> Complex64 {
        if z.norm_sqr() == 0.0 || self.in_sector(z) {
            return z;
        }
        let t = z.arg().rem_euclid(TAU);
        let k = (t / self.width).floor();
        let mut s = t - k * self.width;
        if s >= self.width {
            s -= self.width;
        }
        Complex64::from_polar(z.norm(), s.max(0.0))
    }

    /// The anti-Farey map `ℛ_d`: `ρ₁` on the closed disk cut off by `C₁`,
    /// followed by rotation back into the sector.
    pub fn anti_farey(&self, z: Complex64) -> Result<Complex64> {
        if z.norm() > 1.0 + 1e-12 {
            return Err(Error::Precondition(format!("{z} lies outside the closed disk")));
        }
        let q = self.canonicalize(z);
        if (q - self.centres[0]).norm() > self.radius * (1.0 + 1e-12) {
            return Err(Error::InRankZeroTile);
        }
        Ok(self.canonicalize(self.rho1(q)))
    }

    /// Residuals of the defining relations at `z`: `ρ_j² = id`,
    /// `M_ω^{d+1} = id` and `ρ_j = M_ω^{j-1} ρ₁ M_ω^{1-j}`.
    pub fn relation_residual(&self, z: Complex64) -> f64 {
        let p = SpherePoint::Finite(z);
        let dist = |a: SpherePoint, b: SpherePoint| crate::numerics::rel_dist(a, b);
        let mut worst: f64 = 0.0;
        for j in 1..=self.d + 1 {
            worst = worst.max(dist(self.rho(j, self.rho(j, p)), p));
            let conj = self.rotate(j as i64 - 1, self.rho(1, self.rotate(1 - j as i64, p)));
            worst = worst.max(dist(conj, self.rho(j, p)));
        }
        let mut r = p;
        for _ in 0..=self.d {
            r = self.rotate(1, r);
        }
        worst.max(dist(r, p))
    }

    /// Generic base point inside the ideal polygon, off every symmetry axis.
    pub fn base_point(&self) -> Complex64 {
        Complex64::from_polar(0.2, 0.37 * self.width)
    }
}
